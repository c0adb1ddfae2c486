//! Independent feasibility checking of schedule traces.
//!
//! Everything here recomputes from the trace rows alone, so a bug in the
//! engine's bookkeeping cannot hide itself: the validator and the metrics
//! oracle share no state with the simulation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::{ExtendedInstance, JobId, MachineId};
use crate::sim::{Metrics, ScheduleTrace, TraceRow};

/// Feasibility rule a trace can break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// An operation appears more than once.
    DuplicateOperation,
    /// An operation never executed.
    MissingOperation,
    /// An operation ran on a machine outside its compatible set.
    IncompatibleAssignment,
    /// end != start + the chosen alternative's processing time.
    ProcessingSpanMismatch,
    /// setup_start <= start <= end violated within a row.
    DisorderedRow,
    /// Two occupations of one machine overlap.
    MachineOverlap,
    /// An operation started before its predecessor finished, or before
    /// the job arrived.
    PrecedenceViolation,
    /// A negative timestamp.
    NegativeTime,
    /// An operation ends after the reported makespan.
    MakespanExceeded,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::DuplicateOperation => "duplicate-operation",
            ViolationKind::MissingOperation => "missing-operation",
            ViolationKind::IncompatibleAssignment => "incompatible-assignment",
            ViolationKind::ProcessingSpanMismatch => "processing-span-mismatch",
            ViolationKind::DisorderedRow => "disordered-row",
            ViolationKind::MachineOverlap => "machine-overlap",
            ViolationKind::PrecedenceViolation => "precedence-violation",
            ViolationKind::NegativeTime => "negative-time",
            ViolationKind::MakespanExceeded => "makespan-exceeded",
        }
    }
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One broken rule with its location.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub job: Option<JobId>,
    pub op: Option<usize>,
    pub machine: Option<MachineId>,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(j) = self.job {
            write!(f, " job {j}")?;
        }
        if let Some(k) = self.op {
            write!(f, " op {k}")?;
        }
        if let Some(m) = self.machine {
            write!(f, " machine {m}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// Validation outcome: hard violations plus informational notes.
#[derive(Debug, Clone, Default)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ViolationReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(
        &mut self,
        kind: ViolationKind,
        job: Option<JobId>,
        op: Option<usize>,
        machine: Option<MachineId>,
        detail: String,
    ) {
        self.violations.push(Violation {
            kind,
            job,
            op,
            machine,
            detail,
        });
    }
}

/// Check a trace against its instance. Unknown job, operation, or machine
/// ids are structural errors; everything else is reported as violations.
pub fn validate(trace: &ScheduleTrace, inst: &ExtendedInstance) -> Result<ViolationReport> {
    let n = inst.job_count();
    let m = inst.base.machine_count;
    if trace.arrivals.len() != n || trace.due_dates.len() != n {
        return Err(Error::Trace(format!(
            "trace covers {} jobs, instance has {n}",
            trace.arrivals.len()
        )));
    }
    for row in &trace.rows {
        let jx = row.job.0 as usize;
        if jx == 0 || jx > n {
            return Err(Error::Trace(format!("trace references unknown job {}", row.job)));
        }
        let ops = inst.base.job(row.job).operations.len();
        if row.op == 0 || row.op > ops {
            return Err(Error::Trace(format!(
                "trace references unknown op {} of job {} ({} ops)",
                row.op, row.job, ops
            )));
        }
        let mid = row.machine.0 as usize;
        if mid == 0 || mid > m {
            return Err(Error::Trace(format!(
                "trace references unknown machine {}",
                row.machine
            )));
        }
    }

    let mut report = ViolationReport::default();
    let makespan = trace.completions.iter().copied().fold(0.0, f64::max);

    // Coverage: each operation exactly once.
    let mut seen: HashMap<(JobId, usize), usize> = HashMap::new();
    for row in &trace.rows {
        *seen.entry((row.job, row.op)).or_insert(0) += 1;
    }
    for job in &inst.base.jobs {
        for k in 1..=job.operations.len() {
            match seen.get(&(job.id, k)).copied().unwrap_or(0) {
                0 => report.push(
                    ViolationKind::MissingOperation,
                    Some(job.id),
                    Some(k),
                    None,
                    "never executed".into(),
                ),
                1 => {}
                c => report.push(
                    ViolationKind::DuplicateOperation,
                    Some(job.id),
                    Some(k),
                    None,
                    format!("executed {c} times"),
                ),
            }
        }
    }

    // Per-row checks.
    for row in &trace.rows {
        if row.setup_start < 0.0 || row.start < 0.0 || row.end < 0.0 {
            report.push(
                ViolationKind::NegativeTime,
                Some(row.job),
                Some(row.op),
                Some(row.machine),
                format!("({}, {}, {})", row.setup_start, row.start, row.end),
            );
        }
        if !(row.setup_start <= row.start && row.start <= row.end) {
            report.push(
                ViolationKind::DisorderedRow,
                Some(row.job),
                Some(row.op),
                Some(row.machine),
                format!(
                    "setup_start {} start {} end {}",
                    row.setup_start, row.start, row.end
                ),
            );
        }
        let op = &inst.base.job(row.job).operations[row.op - 1];
        match op.ptime_on(row.machine) {
            None => report.push(
                ViolationKind::IncompatibleAssignment,
                Some(row.job),
                Some(row.op),
                Some(row.machine),
                "machine not in the compatible set".into(),
            ),
            Some(ptime) => {
                if row.end != row.start + ptime {
                    report.push(
                        ViolationKind::ProcessingSpanMismatch,
                        Some(row.job),
                        Some(row.op),
                        Some(row.machine),
                        format!("span {} vs ptime {ptime}", row.end - row.start),
                    );
                }
            }
        }
        if row.end > makespan {
            report.push(
                ViolationKind::MakespanExceeded,
                Some(row.job),
                Some(row.op),
                Some(row.machine),
                format!("end {} past makespan {makespan}", row.end),
            );
        }
    }

    // Machine exclusivity over [setup_start, end].
    let mut by_machine: HashMap<MachineId, Vec<&TraceRow>> = HashMap::new();
    for row in &trace.rows {
        by_machine.entry(row.machine).or_default().push(row);
    }
    let mut machine_ids: Vec<MachineId> = by_machine.keys().copied().collect();
    machine_ids.sort_by_key(|m| m.0);
    for mid in &machine_ids {
        let rows = by_machine.get_mut(mid).unwrap();
        rows.sort_by(|a, b| {
            a.setup_start
                .total_cmp(&b.setup_start)
                .then(a.end.total_cmp(&b.end))
        });
        for pair in rows.windows(2) {
            if pair[1].setup_start < pair[0].end {
                report.push(
                    ViolationKind::MachineOverlap,
                    Some(pair[1].job),
                    Some(pair[1].op),
                    Some(*mid),
                    format!(
                        "starts setup at {} while job {} op {} runs until {}",
                        pair[1].setup_start, pair[0].job, pair[0].op, pair[0].end
                    ),
                );
            }
        }
    }

    // Precedence within each job, and release at arrival.
    let mut by_job: HashMap<JobId, Vec<&TraceRow>> = HashMap::new();
    for row in &trace.rows {
        by_job.entry(row.job).or_default().push(row);
    }
    for job in &inst.base.jobs {
        let Some(rows) = by_job.get_mut(&job.id) else {
            continue;
        };
        rows.sort_by_key(|r| r.op);
        let arrival = trace.arrivals[(job.id.0 - 1) as usize];
        if let Some(first) = rows.iter().find(|r| r.op == 1) {
            if first.setup_start < arrival {
                report.push(
                    ViolationKind::PrecedenceViolation,
                    Some(job.id),
                    Some(1),
                    Some(first.machine),
                    format!("setup at {} before arrival {arrival}", first.setup_start),
                );
            }
        }
        for pair in rows.windows(2) {
            if pair[1].op == pair[0].op + 1 && pair[1].setup_start < pair[0].end {
                report.push(
                    ViolationKind::PrecedenceViolation,
                    Some(job.id),
                    Some(pair[1].op),
                    Some(pair[1].machine),
                    format!(
                        "setup at {} before op {} ends at {}",
                        pair[1].setup_start, pair[0].op, pair[0].end
                    ),
                );
            }
        }
    }

    // Informational: how the routing spread work over the machines.
    for mid in &machine_ids {
        let rows = &by_machine[mid];
        let busy: f64 = rows.iter().map(|r| r.end - r.setup_start).sum();
        report.notes.push(format!(
            "machine {mid}: {} operations, busy {busy}",
            rows.len()
        ));
    }

    Ok(report)
}

/// Recompute run metrics from the trace rows alone.
///
/// Completions are the per-job maximum end time; a job with no rows is an
/// error because its completion is undefined.
pub fn metrics_oracle(
    trace: &ScheduleTrace,
    arrivals: &[f64],
    due_dates: &[f64],
) -> Result<Metrics> {
    let n = arrivals.len();
    if n == 0 || due_dates.len() != n {
        return Err(Error::Stats(
            "metrics need matching non-empty arrival and due-date lists".into(),
        ));
    }
    let mut completions = vec![f64::NEG_INFINITY; n];
    for row in &trace.rows {
        let jx = (row.job.0 as usize).wrapping_sub(1);
        if jx >= n {
            return Err(Error::Trace(format!(
                "trace references unknown job {}",
                row.job
            )));
        }
        completions[jx] = completions[jx].max(row.end);
    }
    for (jx, &c) in completions.iter().enumerate() {
        if c == f64::NEG_INFINITY {
            return Err(Error::Trace(format!(
                "job {} has no operations in the trace",
                jx + 1
            )));
        }
    }

    let nf = n as f64;
    let makespan = completions.iter().copied().fold(0.0, f64::max);
    let mut flow_sum = 0.0;
    let mut tardy_sum = 0.0;
    let mut max_tardiness: f64 = 0.0;
    let mut late_jobs = 0;
    for jx in 0..n {
        flow_sum += completions[jx] - arrivals[jx];
        let tardiness = (completions[jx] - due_dates[jx]).max(0.0);
        tardy_sum += tardiness;
        if tardiness > 0.0 {
            late_jobs += 1;
        }
        max_tardiness = max_tardiness.max(tardiness);
    }
    Ok(Metrics {
        makespan,
        mean_flow_time: flow_sum / nf,
        mean_tardiness: tardy_sum / nf,
        max_tardiness,
        late_jobs,
    })
}
