//! Problem instances: parsing, generation, extensions.
//!
//! The on-disk format is the Brandimarte flexible-job-shop text layout:
//! a header `n m [avg-flex]`, then one line per job holding the operation
//! count followed, per operation, by the number of alternatives and the
//! `(machine, ptime)` pairs. Machine indices are 1-based.
//!
//! Benchmark files carry no due dates or setup times; those arrive either
//! through seeded generation within declared ranges or through a sidecar
//! CSV pinning exact values.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// 1-based job identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JobId(pub u32);

/// 1-based machine identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MachineId(pub u32);

impl fmt::Display for JobId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for MachineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One eligible (machine, processing time) pair for an operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alternative {
    pub machine: MachineId,
    pub ptime: f64,
}

/// One operation with its compatible machine set.
#[derive(Debug, Clone, PartialEq)]
pub struct Operation {
    pub alternatives: Vec<Alternative>,
}

impl Operation {
    /// Smallest processing time over the compatible set.
    pub fn min_ptime(&self) -> f64 {
        self.alternatives
            .iter()
            .map(|a| a.ptime)
            .fold(f64::INFINITY, f64::min)
    }

    /// Mean processing time over the compatible set.
    pub fn mean_ptime(&self) -> f64 {
        let sum: f64 = self.alternatives.iter().map(|a| a.ptime).sum();
        sum / self.alternatives.len() as f64
    }

    pub fn ptime_on(&self, machine: MachineId) -> Option<f64> {
        self.alternatives
            .iter()
            .find(|a| a.machine == machine)
            .map(|a| a.ptime)
    }
}

/// A job: an ordered chain of operations.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub id: JobId,
    pub operations: Vec<Operation>,
}

/// Static shop description.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub machine_count: usize,
    pub jobs: Vec<Job>,
}

impl Instance {
    pub fn new(machine_count: usize, jobs: Vec<Job>) -> Result<Self> {
        let inst = Instance {
            machine_count,
            jobs,
        };
        inst.check()?;
        Ok(inst)
    }

    fn check(&self) -> Result<()> {
        if self.machine_count == 0 {
            return Err(Error::Instance("machine count must be at least 1".into()));
        }
        if self.jobs.is_empty() {
            return Err(Error::Instance("job count must be at least 1".into()));
        }
        for (jx, job) in self.jobs.iter().enumerate() {
            if job.id.0 as usize != jx + 1 {
                return Err(Error::Instance(format!(
                    "job ids must be 1..n in order, found {} at position {}",
                    job.id,
                    jx + 1
                )));
            }
            if job.operations.is_empty() {
                return Err(Error::Instance(format!("job {} has no operations", job.id)));
            }
            for (k, op) in job.operations.iter().enumerate() {
                if op.alternatives.is_empty() {
                    return Err(Error::Instance(format!(
                        "job {} operation {} has no alternatives",
                        job.id,
                        k + 1
                    )));
                }
                let mut seen = vec![false; self.machine_count + 1];
                for alt in &op.alternatives {
                    let m = alt.machine.0 as usize;
                    if m == 0 || m > self.machine_count {
                        return Err(Error::Instance(format!(
                            "job {} operation {} references machine {} outside 1..{}",
                            job.id,
                            k + 1,
                            alt.machine,
                            self.machine_count
                        )));
                    }
                    if seen[m] {
                        return Err(Error::Instance(format!(
                            "job {} operation {} lists machine {} twice",
                            job.id,
                            k + 1,
                            alt.machine
                        )));
                    }
                    seen[m] = true;
                    if !(alt.ptime > 0.0) {
                        return Err(Error::Instance(format!(
                            "job {} operation {} has non-positive ptime {}",
                            job.id,
                            k + 1,
                            alt.ptime
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn job_count(&self) -> usize {
        self.jobs.len()
    }

    pub fn job(&self, id: JobId) -> &Job {
        &self.jobs[(id.0 - 1) as usize]
    }

    pub fn total_operations(&self) -> usize {
        self.jobs.iter().map(|j| j.operations.len()).sum()
    }

    /// Sum of minimal alternative ptimes of one job (route-free lower bound).
    pub fn min_route_work(&self, id: JobId) -> f64 {
        self.job(id).operations.iter().map(|o| o.min_ptime()).sum()
    }

    /// Sum of min_route_work over all jobs.
    pub fn total_min_work(&self) -> f64 {
        self.jobs.iter().map(|j| self.min_route_work(j.id)).sum()
    }
}

/// Parsed instance plus the per-job extensions the benchmark files omit.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedInstance {
    pub base: Instance,
    /// Per-job due date, indexed by job position.
    pub due_dates: Vec<f64>,
    /// Per-job uniform setup range `[lo, hi]`, drawn per operation at service start.
    pub setup_ranges: Vec<(f64, f64)>,
    /// Optional fixed arrival times overriding any arrival pattern.
    pub arrival_profile: Option<Vec<f64>>,
}

impl ExtendedInstance {
    pub fn new(
        base: Instance,
        due_dates: Vec<f64>,
        setup_ranges: Vec<(f64, f64)>,
    ) -> Result<Self> {
        let ext = ExtendedInstance {
            base,
            due_dates,
            setup_ranges,
            arrival_profile: None,
        };
        ext.check()?;
        Ok(ext)
    }

    pub fn job_count(&self) -> usize {
        self.base.job_count()
    }

    pub fn mean_setup(&self, id: JobId) -> f64 {
        let (lo, hi) = self.setup_ranges[(id.0 - 1) as usize];
        (lo + hi) / 2.0
    }

    fn check(&self) -> Result<()> {
        if self.due_dates.len() != self.base.job_count()
            || self.setup_ranges.len() != self.base.job_count()
        {
            return Err(Error::Instance(
                "extension arrays must cover every job".into(),
            ));
        }
        for (jx, &d) in self.due_dates.iter().enumerate() {
            if !(d > 0.0) {
                return Err(Error::Instance(format!(
                    "job {} has non-positive due date {d}",
                    jx + 1
                )));
            }
        }
        for (jx, &(lo, hi)) in self.setup_ranges.iter().enumerate() {
            if !(0.0 <= lo && lo <= hi) {
                return Err(Error::Instance(format!(
                    "job {} has invalid setup range [{lo}, {hi}]",
                    jx + 1
                )));
            }
        }
        Ok(())
    }
}

fn parse_token<T: std::str::FromStr>(
    tokens: &mut std::str::SplitWhitespace<'_>,
    line_no: usize,
    what: &str,
) -> Result<T> {
    let tok = tokens.next().ok_or_else(|| Error::Parse {
        line: line_no,
        message: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("malformed {what} `{tok}`"),
    })
}

/// Parse the Brandimarte text format.
pub fn parse_fjs(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(ix, l)| (ix + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_no, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let mut toks = header.split_whitespace();
    let n: usize = parse_token(&mut toks, header_no, "job count")?;
    let m: usize = parse_token(&mut toks, header_no, "machine count")?;
    // Optional trailing average-flexibility figure; informational only.
    if let Some(tok) = toks.next() {
        tok.parse::<f64>().map_err(|_| Error::Parse {
            line: header_no,
            message: format!("malformed average flexibility `{tok}`"),
        })?;
    }
    if n == 0 || m == 0 {
        return Err(Error::Parse {
            line: header_no,
            message: "job and machine counts must be positive".into(),
        });
    }

    let mut jobs = Vec::with_capacity(n);
    for job_ix in 1..=n {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: header_no,
            message: format!("expected {n} job lines, found {}", job_ix - 1),
        })?;
        let mut toks = line.split_whitespace();
        let op_count: usize = parse_token(&mut toks, line_no, "operation count")?;
        if op_count == 0 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("job {job_ix} declares zero operations"),
            });
        }
        let mut operations = Vec::with_capacity(op_count);
        for op_ix in 1..=op_count {
            let alt_count: usize = parse_token(
                &mut toks,
                line_no,
                &format!("alternative count of operation {op_ix}"),
            )?;
            if alt_count == 0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("operation {op_ix} of job {job_ix} has zero alternatives"),
                });
            }
            let mut alternatives = Vec::with_capacity(alt_count);
            for _ in 0..alt_count {
                let machine: u32 = parse_token(&mut toks, line_no, "machine index")?;
                let ptime: f64 = parse_token(&mut toks, line_no, "processing time")?;
                if machine == 0 || machine as usize > m {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("machine index {machine} outside 1..{m}"),
                    });
                }
                alternatives.push(Alternative {
                    machine: MachineId(machine),
                    ptime,
                });
            }
            operations.push(Operation { alternatives });
        }
        if let Some(extra) = toks.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected trailing token `{extra}`"),
            });
        }
        jobs.push(Job {
            id: JobId(job_ix as u32),
            operations,
        });
    }

    Instance::new(m, jobs)
}

fn fmt_ptime(p: f64) -> String {
    if p.fract() == 0.0 && p.abs() < 1e15 {
        format!("{}", p as i64)
    } else {
        format!("{p}")
    }
}

/// Serialize back to the text format; `parse_fjs` round-trips it.
pub fn to_fjs_string(inst: &Instance) -> String {
    let mut out = String::new();
    let mean_alts: f64 = inst
        .jobs
        .iter()
        .flat_map(|j| j.operations.iter())
        .map(|o| o.alternatives.len() as f64)
        .sum::<f64>()
        / inst.total_operations() as f64;
    out.push_str(&format!(
        "{} {} {}\n",
        inst.job_count(),
        inst.machine_count,
        mean_alts.round() as i64
    ));
    for job in &inst.jobs {
        let mut fields: Vec<String> = vec![job.operations.len().to_string()];
        for op in &job.operations {
            fields.push(op.alternatives.len().to_string());
            for alt in &op.alternatives {
                fields.push(alt.machine.to_string());
                fields.push(fmt_ptime(alt.ptime));
            }
        }
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

/// Draw per-job due dates and fix the setup range, reproducibly under `seed`.
pub fn attach_extensions(
    inst: Instance,
    due_range: (f64, f64),
    setup_range: (f64, f64),
    seed: u64,
) -> Result<ExtendedInstance> {
    let (dlo, dhi) = due_range;
    let (slo, shi) = setup_range;
    if !(0.0 < dlo && dlo <= dhi) {
        return Err(Error::Instance(format!(
            "invalid due-date range [{dlo}, {dhi}]"
        )));
    }
    if !(0.0 <= slo && slo <= shi) {
        return Err(Error::Instance(format!(
            "invalid setup range [{slo}, {shi}]"
        )));
    }
    let n = inst.job_count();
    let mut due_dates = Vec::with_capacity(n);
    for job_ix in 1..=n as u64 {
        let mut rng = rng::stream(seed, "due-date", &[job_ix]);
        let d = if dlo == dhi {
            dlo
        } else {
            rng.gen_range(dlo..=dhi)
        };
        due_dates.push(d);
    }
    let ext = ExtendedInstance {
        base: inst,
        due_dates,
        setup_ranges: vec![(slo, shi); n],
        arrival_profile: None,
    };
    ext.check()?;
    Ok(ext)
}

/// Sidecar CSV (`job_id,due_date,setup_lo,setup_hi`) pinning exact extensions.
pub fn parse_extension_sidecar(inst: Instance, text: &str) -> Result<ExtendedInstance> {
    let n = inst.job_count();
    let mut due_dates = vec![None; n];
    let mut setup_ranges = vec![None; n];
    for (ix, line) in text.lines().enumerate() {
        let line_no = ix + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || (ix == 0 && trimmed.starts_with("job_id")) {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let job: usize = fields[0].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("malformed job id `{}`", fields[0]),
        })?;
        if job == 0 || job > n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("job id {job} outside 1..{n}"),
            });
        }
        let parse_f = |s: &str, what: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("malformed {what} `{s}`"),
            })
        };
        due_dates[job - 1] = Some(parse_f(fields[1], "due date")?);
        setup_ranges[job - 1] = Some((
            parse_f(fields[2], "setup lower bound")?,
            parse_f(fields[3], "setup upper bound")?,
        ));
    }
    let due_dates: Vec<f64> = due_dates
        .into_iter()
        .enumerate()
        .map(|(jx, d)| {
            d.ok_or_else(|| Error::Instance(format!("sidecar misses job {}", jx + 1)))
        })
        .collect::<Result<_>>()?;
    let setup_ranges: Vec<(f64, f64)> = setup_ranges
        .into_iter()
        .enumerate()
        .map(|(jx, s)| {
            s.ok_or_else(|| Error::Instance(format!("sidecar misses job {}", jx + 1)))
        })
        .collect::<Result<_>>()?;
    let ext = ExtendedInstance {
        base: inst,
        due_dates,
        setup_ranges,
        arrival_profile: None,
    };
    ext.check()?;
    Ok(ext)
}

pub fn extension_sidecar_string(ext: &ExtendedInstance) -> String {
    let mut out = String::from("job_id,due_date,setup_lo,setup_hi\n");
    for (jx, (&d, &(lo, hi))) in ext
        .due_dates
        .iter()
        .zip(ext.setup_ranges.iter())
        .enumerate()
    {
        out.push_str(&format!("{},{d},{lo},{hi}\n", jx + 1));
    }
    out
}

/// Shape parameters for synthetic instances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthSpec {
    pub jobs: usize,
    pub machines: usize,
    /// Inclusive per-job operation-count range.
    pub ops_range: (usize, usize),
    /// Inclusive per-operation alternative-count range; upper bound ≤ machines.
    pub alt_range: (usize, usize),
    /// Inclusive integer processing-time range.
    pub ptime_range: (u32, u32),
    pub due_range: (f64, f64),
    pub setup_range: (f64, f64),
    /// Optional exact total operation count; per-job counts are adjusted
    /// deterministically inside `ops_range` to hit it.
    pub total_ops: Option<usize>,
}

/// Generate a synthetic instance, deterministic under `seed`.
pub fn generate_synthetic(spec: &SynthSpec, seed: u64) -> Result<ExtendedInstance> {
    let SynthSpec {
        jobs: n,
        machines: m,
        ops_range: (ops_lo, ops_hi),
        alt_range: (alt_lo, alt_hi),
        ptime_range: (pt_lo, pt_hi),
        due_range,
        setup_range,
        total_ops,
    } = *spec;
    if n == 0 || m == 0 {
        return Err(Error::Instance("need at least one job and machine".into()));
    }
    if !(1 <= ops_lo && ops_lo <= ops_hi) {
        return Err(Error::Instance(format!(
            "invalid operation-count range [{ops_lo}, {ops_hi}]"
        )));
    }
    if !(1 <= alt_lo && alt_lo <= alt_hi) || alt_hi > m {
        return Err(Error::Instance(format!(
            "invalid alternative-count range [{alt_lo}, {alt_hi}] for {m} machines"
        )));
    }
    if !(1 <= pt_lo && pt_lo <= pt_hi) {
        return Err(Error::Instance(format!(
            "invalid ptime range [{pt_lo}, {pt_hi}]"
        )));
    }
    if let Some(total) = total_ops {
        if total < n * ops_lo || total > n * ops_hi {
            return Err(Error::Instance(format!(
                "total operation count {total} unreachable with {n} jobs in [{ops_lo}, {ops_hi}]"
            )));
        }
    }

    let mut op_counts: Vec<usize> = (1..=n as u64)
        .map(|jx| {
            let mut r = rng::stream(seed, "synth-ops", &[jx]);
            r.gen_range(ops_lo..=ops_hi)
        })
        .collect();
    if let Some(total) = total_ops {
        // Deterministic repair: walk jobs round-robin, nudging counts toward
        // the target while staying inside the declared range.
        let mut current: isize = op_counts.iter().sum::<usize>() as isize;
        let target = total as isize;
        let mut jx = 0;
        while current != target {
            if current < target && op_counts[jx] < ops_hi {
                op_counts[jx] += 1;
                current += 1;
            } else if current > target && op_counts[jx] > ops_lo {
                op_counts[jx] -= 1;
                current -= 1;
            }
            jx = (jx + 1) % n;
        }
    }

    let mut jobs_vec = Vec::with_capacity(n);
    for (jx, &ops) in op_counts.iter().enumerate() {
        let job_no = jx as u64 + 1;
        let mut operations = Vec::with_capacity(ops);
        for k in 1..=ops as u64 {
            let mut r = rng::stream(seed, "synth-op", &[job_no, k]);
            let alt_count = r.gen_range(alt_lo..=alt_hi.min(m));
            // Draw a machine subset without replacement.
            let mut pool: Vec<u32> = (1..=m as u32).collect();
            let mut alternatives = Vec::with_capacity(alt_count);
            for _ in 0..alt_count {
                let pick = r.gen_range(0..pool.len());
                let machine = pool.swap_remove(pick);
                let ptime = r.gen_range(pt_lo..=pt_hi) as f64;
                alternatives.push(Alternative {
                    machine: MachineId(machine),
                    ptime,
                });
            }
            alternatives.sort_by_key(|a| a.machine);
            operations.push(Operation { alternatives });
        }
        jobs_vec.push(Job {
            id: JobId(job_no as u32),
            operations,
        });
    }

    attach_extensions(Instance::new(m, jobs_vec)?, due_range, setup_range, seed)
}

/// Compatible-set statistics of an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct FlexibilityReport {
    /// Operations able to run on each machine, indexed by machine position.
    pub per_machine_ops: Vec<usize>,
    pub mean_alternatives: f64,
    /// mean alternatives / machine count, in (0, 1].
    pub ratio: f64,
}

pub fn flexibility_report(inst: &Instance) -> FlexibilityReport {
    let mut per_machine_ops = vec![0usize; inst.machine_count];
    let mut alt_sum = 0usize;
    for job in &inst.jobs {
        for op in &job.operations {
            alt_sum += op.alternatives.len();
            for alt in &op.alternatives {
                per_machine_ops[(alt.machine.0 - 1) as usize] += 1;
            }
        }
    }
    let mean_alternatives = alt_sum as f64 / inst.total_operations() as f64;
    FlexibilityReport {
        per_machine_ops,
        mean_alternatives,
        ratio: mean_alternatives / inst.machine_count as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = "1 1\n1 1 1 5\n";

    #[test]
    fn parses_minimal_instance() {
        let inst = parse_fjs(MINI).unwrap();
        assert_eq!(inst.job_count(), 1);
        assert_eq!(inst.machine_count, 1);
        assert_eq!(inst.jobs[0].operations.len(), 1);
        assert_eq!(
            inst.jobs[0].operations[0].alternatives[0],
            Alternative {
                machine: MachineId(1),
                ptime: 5.0
            }
        );
    }

    #[test]
    fn header_with_flexibility_is_accepted() {
        let inst = parse_fjs("2 3 2.5\n2 1 1 4 1 2 6\n1 2 1 3 3 9\n").unwrap();
        assert_eq!(inst.job_count(), 2);
        assert_eq!(inst.total_operations(), 3);
    }

    #[test]
    fn op_count_mismatch_is_an_error() {
        // Declares two operations but lists one.
        let err = parse_fjs("1 1\n2 1 1 5\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn machine_out_of_range_is_an_error() {
        let err = parse_fjs("1 2\n1 1 3 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn trailing_tokens_are_an_error() {
        let err = parse_fjs("1 1\n1 1 1 5 9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn roundtrip_through_text() {
        let text = "2 3 2\n2 2 1 4 2 6 1 3 9\n1 1 2 7\n";
        let inst = parse_fjs(text).unwrap();
        let again = parse_fjs(&to_fjs_string(&inst)).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn extensions_stay_in_range_and_are_deterministic() {
        let inst = parse_fjs("3 2\n1 1 1 4\n1 2 1 3 2 5\n1 1 2 6\n").unwrap();
        let a = attach_extensions(inst.clone(), (16.0, 42.0), (0.35, 1.14), 1).unwrap();
        let b = attach_extensions(inst, (16.0, 42.0), (0.35, 1.14), 1).unwrap();
        assert_eq!(a, b);
        for &d in &a.due_dates {
            assert!((16.0..=42.0).contains(&d));
        }
        for &(lo, hi) in &a.setup_ranges {
            assert_eq!((lo, hi), (0.35, 1.14));
        }
    }

    #[test]
    fn degenerate_due_range_pins_every_job() {
        let inst = parse_fjs(MINI).unwrap();
        let ext = attach_extensions(inst, (30.0, 30.0), (0.0, 0.0), 9).unwrap();
        assert_eq!(ext.due_dates, vec![30.0]);
    }

    #[test]
    fn sidecar_roundtrip() {
        let inst = parse_fjs("2 2\n1 1 1 4\n1 1 2 3\n").unwrap();
        let ext = attach_extensions(inst.clone(), (10.0, 20.0), (0.5, 1.0), 3).unwrap();
        let text = extension_sidecar_string(&ext);
        let back = parse_extension_sidecar(inst, &text).unwrap();
        assert_eq!(ext.due_dates, back.due_dates);
        assert_eq!(ext.setup_ranges, back.setup_ranges);
    }

    #[test]
    fn sidecar_missing_job_is_an_error() {
        let inst = parse_fjs("2 2\n1 1 1 4\n1 1 2 3\n").unwrap();
        let err = parse_extension_sidecar(inst, "job_id,due_date,setup_lo,setup_hi\n1,10,0,1\n")
            .unwrap_err();
        assert!(matches!(err, Error::Instance(_)), "{err:?}");
    }

    #[test]
    fn synthetic_matches_requested_shape() {
        let spec = SynthSpec {
            jobs: 114,
            machines: 28,
            ops_range: (1, 14),
            alt_range: (3, 5),
            ptime_range: (2, 32),
            due_range: (120.0, 360.0),
            setup_range: (0.12, 0.48),
            total_ops: Some(245),
        };
        let ext = generate_synthetic(&spec, 7).unwrap();
        assert_eq!(ext.base.job_count(), 114);
        assert_eq!(ext.base.machine_count, 28);
        assert_eq!(ext.base.total_operations(), 245);
        for job in &ext.base.jobs {
            assert!((1..=14).contains(&job.operations.len()));
        }
    }

    #[test]
    fn synthetic_single_cell() {
        let spec = SynthSpec {
            jobs: 1,
            machines: 1,
            ops_range: (1, 1),
            alt_range: (1, 1),
            ptime_range: (4, 4),
            due_range: (10.0, 10.0),
            setup_range: (0.0, 0.0),
            total_ops: None,
        };
        let ext = generate_synthetic(&spec, 1).unwrap();
        assert_eq!(ext.base.total_operations(), 1);
        assert_eq!(ext.base.jobs[0].operations[0].alternatives.len(), 1);
    }

    #[test]
    fn synthetic_is_deterministic() {
        let spec = SynthSpec {
            jobs: 10,
            machines: 6,
            ops_range: (5, 7),
            alt_range: (2, 4),
            ptime_range: (1, 7),
            due_range: (16.0, 42.0),
            setup_range: (0.35, 1.14),
            total_ops: Some(55),
        };
        let a = generate_synthetic(&spec, 11).unwrap();
        let b = generate_synthetic(&spec, 11).unwrap();
        assert_eq!(to_fjs_string(&a.base), to_fjs_string(&b.base));
        assert_eq!(a, b);
    }

    #[test]
    fn synthetic_alt_bound_above_machines_is_an_error() {
        let spec = SynthSpec {
            jobs: 1,
            machines: 2,
            ops_range: (1, 1),
            alt_range: (1, 3),
            ptime_range: (1, 1),
            due_range: (1.0, 1.0),
            setup_range: (0.0, 0.0),
            total_ops: None,
        };
        assert!(generate_synthetic(&spec, 0).is_err());
    }

    #[test]
    fn flexibility_of_total_shop_is_one() {
        let inst = parse_fjs("1 2\n1 2 1 4 2 5\n").unwrap();
        let rep = flexibility_report(&inst);
        assert_eq!(rep.ratio, 1.0);
        assert_eq!(rep.per_machine_ops, vec![1, 1]);
    }

    #[test]
    fn flexibility_single_alternative() {
        // Four machines, every op pinned to one machine: ratio 1/4.
        let inst = parse_fjs("2 4\n1 1 1 2\n1 1 3 5\n").unwrap();
        let rep = flexibility_report(&inst);
        assert_eq!(rep.mean_alternatives, 1.0);
        assert_eq!(rep.ratio, 0.25);
    }

    #[test]
    fn min_route_work_uses_fastest_alternative() {
        let inst = parse_fjs("1 2\n2 2 1 4 2 6 1 1 3\n").unwrap();
        assert_eq!(inst.min_route_work(JobId(1)), 7.0);
        assert_eq!(inst.total_min_work(), 7.0);
    }
}
