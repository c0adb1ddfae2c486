//! Deterministic discrete-event engine for the flexible job shop.
//!
//! Jobs arrive per an arrival plan, route each operation to the compatible
//! machine with the least estimated queue time, and wait in per-machine
//! queues ordered by the active priority rule. Dispatch happens after every
//! event, so simultaneous arrivals are offered to machines in event order.
//! A (instance, rule, plan, seed) tuple fully determines the trace.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::criteria::{CriteriaWeights, JobState, WorkEstimate};
use crate::error::{Error, Result};
use crate::instance::{ExtendedInstance, JobId, MachineId};
use crate::mcdm::McdmOptions;
use crate::rng::stream;
use crate::rules::{cdr_priority, mcdm_priority, primitives, simple_priority, RuleId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArrivalPattern {
    Static,
    EqualInterval,
    Increasing,
    Decreasing,
    Random,
}

impl ArrivalPattern {
    pub const ALL: [ArrivalPattern; 5] = [
        ArrivalPattern::Static,
        ArrivalPattern::EqualInterval,
        ArrivalPattern::Increasing,
        ArrivalPattern::Decreasing,
        ArrivalPattern::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ArrivalPattern::Static => "static",
            ArrivalPattern::EqualInterval => "equal-interval",
            ArrivalPattern::Increasing => "increasing",
            ArrivalPattern::Decreasing => "decreasing",
            ArrivalPattern::Random => "random",
        }
    }

    pub fn parse(s: &str) -> Result<ArrivalPattern> {
        let key = s.trim().to_ascii_lowercase();
        ArrivalPattern::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::Simulation(format!("unknown arrival pattern `{s}`")))
    }
}

impl std::fmt::Display for ArrivalPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ArrivalPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<ArrivalPattern> {
        ArrivalPattern::parse(s)
    }
}

/// Arrival times for every job, indexed by job position.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalPlan {
    pub pattern: ArrivalPattern,
    pub horizon: f64,
    pub times: Vec<f64>,
}

/// Build the arrival plan for `n` jobs over horizon `t`.
pub fn arrival_times(
    pattern: ArrivalPattern,
    n: usize,
    t: f64,
    seed: u64,
) -> Result<ArrivalPlan> {
    if n == 0 {
        return Err(Error::Simulation("an arrival plan needs at least one job".into()));
    }
    if pattern != ArrivalPattern::Static && !(t > 0.0) {
        return Err(Error::Simulation(format!(
            "{pattern} arrivals need a positive horizon, got {t}"
        )));
    }
    let frac = |j: usize| j as f64 / n as f64;
    let times: Vec<f64> = match pattern {
        ArrivalPattern::Static => vec![0.0; n],
        ArrivalPattern::EqualInterval => (1..=n).map(|j| j as f64 * (t / n as f64)).collect(),
        ArrivalPattern::Increasing => (1..=n).map(|j| t * frac(j).sqrt()).collect(),
        ArrivalPattern::Decreasing => (1..=n).map(|j| t * frac(j).powi(3)).collect(),
        ArrivalPattern::Random => {
            let mut rng = stream(seed, "arrivals", &[]);
            let mut draws: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=t)).collect();
            draws.sort_by(f64::total_cmp);
            draws
        }
    };
    Ok(ArrivalPlan {
        pattern,
        horizon: t,
        times,
    })
}

impl ArrivalPlan {
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("job,arrival\n");
        for (ix, t) in self.times.iter().enumerate() {
            out.push_str(&format!("{},{t}\n", ix + 1));
        }
        out
    }

    /// Reload a plan from its CSV; the pattern is inferred (all-zero times
    /// read back as static, anything else as random).
    pub fn from_csv_str(text: &str) -> Result<ArrivalPlan> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "job,arrival" => {}
            _ => return Err(Error::Trace("arrival CSV must start with `job,arrival`".into())),
        }
        let mut times = Vec::new();
        for line in lines {
            let mut parts = line.trim().split(',');
            let job: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Trace(format!("bad arrival row `{line}`")))?;
            let t: f64 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Trace(format!("bad arrival row `{line}`")))?;
            if parts.next().is_some() || job != times.len() + 1 {
                return Err(Error::Trace(format!("bad arrival row `{line}`")));
            }
            times.push(t);
        }
        if times.is_empty() {
            return Err(Error::Trace("arrival CSV has no rows".into()));
        }
        let pattern = if times.iter().all(|&t| t == 0.0) {
            ArrivalPattern::Static
        } else {
            ArrivalPattern::Random
        };
        let horizon = times.iter().copied().fold(0.0, f64::max);
        Ok(ArrivalPlan {
            pattern,
            horizon,
            times,
        })
    }
}

/// Which queues are re-ranked on each event. Selection always re-ranks the
/// serving queue at dispatch time, so both scopes produce identical traces;
/// the switch exists to measure the bookkeeping cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RerankScope {
    #[default]
    PerMachine,
    Global,
}

/// Engine knobs; the default reproduces the baseline study setup.
#[derive(Debug, Clone, Copy, Default)]
pub struct SimConfig {
    pub work_estimate: WorkEstimate,
    pub rerank: RerankScope,
    /// Fixed flow-allowance factor; `None` keeps flow due date = due date.
    pub fdd_factor: Option<f64>,
    pub mcdm: McdmOptions,
}

/// One executed operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub job: JobId,
    /// 1-based operation index.
    pub op: usize,
    pub machine: MachineId,
    pub setup_start: f64,
    pub start: f64,
    pub end: f64,
}

/// Full record of a run: executed operations in start order plus per-job
/// arrival, due date, and completion.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleTrace {
    pub rows: Vec<TraceRow>,
    pub arrivals: Vec<f64>,
    pub due_dates: Vec<f64>,
    pub completions: Vec<f64>,
}

const TRACE_HEADER: &str = "job,op,machine,setup_start,start,end";

impl ScheduleTrace {
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from(TRACE_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.job, r.op, r.machine, r.setup_start, r.start, r.end
            ));
        }
        out
    }

    /// Rebuild a trace from its CSV plus the per-job arrivals and due dates
    /// it was run with. Completions are recomputed from the rows; a job
    /// without rows gets completion 0 and is left for validation to flag.
    pub fn from_csv_str(text: &str, arrivals: Vec<f64>, due_dates: Vec<f64>) -> Result<Self> {
        if arrivals.len() != due_dates.len() {
            return Err(Error::Trace(
                "arrival and due-date lists must have equal length".into(),
            ));
        }
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == TRACE_HEADER => {}
            _ => {
                return Err(Error::Trace(format!(
                    "trace CSV must start with `{TRACE_HEADER}`"
                )))
            }
        }
        let mut rows = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.trim().split(',').collect();
            if parts.len() != 6 {
                return Err(Error::Trace(format!("bad trace row `{line}`")));
            }
            let parse_u32 = |s: &str| -> Result<u32> {
                s.parse()
                    .map_err(|_| Error::Trace(format!("bad trace row `{line}`")))
            };
            let parse_f64 = |s: &str| -> Result<f64> {
                s.parse()
                    .map_err(|_| Error::Trace(format!("bad trace row `{line}`")))
            };
            rows.push(TraceRow {
                job: JobId(parse_u32(parts[0])?),
                op: parse_u32(parts[1])? as usize,
                machine: MachineId(parse_u32(parts[2])?),
                setup_start: parse_f64(parts[3])?,
                start: parse_f64(parts[4])?,
                end: parse_f64(parts[5])?,
            });
        }
        let mut completions: Vec<f64> = vec![0.0; arrivals.len()];
        for r in &rows {
            let jx = (r.job.0 as usize).wrapping_sub(1);
            if jx >= completions.len() {
                return Err(Error::Trace(format!("trace references unknown job {}", r.job)));
            }
            completions[jx] = completions[jx].max(r.end);
        }
        Ok(ScheduleTrace {
            rows,
            arrivals,
            due_dates,
            completions,
        })
    }
}

/// Aggregate performance of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub makespan: f64,
    pub mean_flow_time: f64,
    pub mean_tardiness: f64,
    pub max_tardiness: f64,
    pub late_jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EventKind {
    Arrival(JobId),
    Completion(MachineId),
}

impl EventKind {
    /// Arrivals sort before completions at equal timestamps.
    fn class(self) -> u8 {
        match self {
            EventKind::Arrival(_) => 0,
            EventKind::Completion(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    seq: u64,
    kind: EventKind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time
            .total_cmp(&other.time)
            .then(self.kind.class().cmp(&other.kind.class()))
            .then(self.seq.cmp(&other.seq))
    }
}

#[derive(Debug, Clone, Copy)]
struct QueueEntry {
    job: JobId,
    entered_seq: u64,
}

#[derive(Debug)]
struct MachineRt {
    id: MachineId,
    busy_until: f64,
    in_service: Option<(JobId, usize)>,
    queue: Vec<QueueEntry>,
    busy_time: f64,
}

#[derive(Debug)]
struct JobRt {
    state: JobState,
    op_estimates: Vec<f64>,
    completion: Option<f64>,
}

struct Engine<'a> {
    inst: &'a ExtendedInstance,
    rule: RuleId,
    weights: &'a CriteriaWeights,
    config: &'a SimConfig,
    setup_seed: u64,
    arrivals: Vec<f64>,
    machines: Vec<MachineRt>,
    jobs: Vec<JobRt>,
    rows: Vec<TraceRow>,
    calendar: BinaryHeap<std::cmp::Reverse<Event>>,
    seq: u64,
}

fn job_index(job: JobId) -> usize {
    (job.0 - 1) as usize
}

impl<'a> Engine<'a> {
    fn new(
        inst: &'a ExtendedInstance,
        rule: RuleId,
        plan: &ArrivalPlan,
        setup_seed: u64,
        weights: &'a CriteriaWeights,
        config: &'a SimConfig,
    ) -> Result<Self> {
        let n = inst.job_count();
        let arrivals: Vec<f64> = match &inst.arrival_profile {
            Some(p) => p.clone(),
            None => plan.times.clone(),
        };
        if arrivals.len() != n {
            return Err(Error::Simulation(format!(
                "arrival plan covers {} jobs, instance has {n}",
                arrivals.len()
            )));
        }
        for &t in &arrivals {
            if !t.is_finite() || t < 0.0 {
                return Err(Error::Simulation(format!("invalid arrival time {t}")));
            }
        }

        let jobs: Vec<JobRt> = inst
            .base
            .jobs
            .iter()
            .enumerate()
            .map(|(jx, job)| {
                let op_estimates: Vec<f64> = job
                    .operations
                    .iter()
                    .map(|o| match config.work_estimate {
                        WorkEstimate::Min => o.min_ptime(),
                        WorkEstimate::Mean => o.mean_ptime(),
                    })
                    .collect();
                let total_ops = job.operations.len();
                let state = JobState {
                    job_id: job.id,
                    arrival: arrivals[jx],
                    due_date: inst.due_dates[jx],
                    next_op: 0,
                    total_ops,
                    remaining_ops: total_ops,
                    imminent_estimate: op_estimates[0],
                    work_beyond_imminent: op_estimates[1..].iter().sum(),
                    total_work: op_estimates.iter().sum(),
                    setup_estimate: inst.mean_setup(job.id),
                    completed: false,
                };
                JobRt {
                    state,
                    op_estimates,
                    completion: None,
                }
            })
            .collect();

        let machines: Vec<MachineRt> = (1..=inst.base.machine_count)
            .map(|id| MachineRt {
                id: MachineId(id as u32),
                busy_until: 0.0,
                in_service: None,
                queue: Vec::new(),
                busy_time: 0.0,
            })
            .collect();

        let mut engine = Engine {
            inst,
            rule,
            weights,
            config,
            setup_seed,
            arrivals,
            machines,
            jobs,
            rows: Vec::with_capacity(inst.base.total_operations()),
            calendar: BinaryHeap::new(),
            seq: 0,
        };
        for jx in 0..n {
            let time = engine.arrivals[jx];
            engine.push_event(time, EventKind::Arrival(JobId(jx as u32 + 1)));
        }
        Ok(engine)
    }

    fn push_event(&mut self, time: f64, kind: EventKind) {
        self.seq += 1;
        self.calendar.push(std::cmp::Reverse(Event {
            time,
            seq: self.seq,
            kind,
        }));
    }

    /// Least-queue-time machine for the job's imminent operation:
    /// in-service remainder plus queued work with mean setups, ties going
    /// to the lowest machine id.
    fn route_index(&self, job: JobId, now: f64) -> usize {
        let state = &self.jobs[job_index(job)].state;
        let op = &self.inst.base.job(job).operations[state.next_op];
        let mut best: Option<(f64, usize)> = None;
        for alt in &op.alternatives {
            let mx = (alt.machine.0 - 1) as usize;
            let m = &self.machines[mx];
            let mut est = (m.busy_until - now).max(0.0);
            for entry in &m.queue {
                let q = &self.jobs[job_index(entry.job)].state;
                let q_op = &self.inst.base.job(entry.job).operations[q.next_op];
                let p = q_op
                    .ptime_on(m.id)
                    .expect("queued job must be compatible with its machine");
                est += p + q.setup_estimate;
            }
            let better = match best {
                None => true,
                Some((b, bx)) => est < b || (est == b && mx < bx),
            };
            if better {
                best = Some((est, mx));
            }
        }
        best.expect("operation has at least one alternative").1
    }

    fn queue_states(&self, mx: usize) -> Vec<JobState> {
        self.machines[mx]
            .queue
            .iter()
            .map(|e| self.jobs[job_index(e.job)].state)
            .collect()
    }

    /// Queue position of the job to serve next under the active rule.
    fn select_next(&self, mx: usize, now: f64) -> Result<usize> {
        let queue = &self.machines[mx].queue;
        if queue.len() == 1 {
            return Ok(0);
        }
        if self.rule.is_mcdm() {
            let states = self.queue_states(mx);
            let ranking = mcdm_priority(self.rule, &states, now, self.weights, &self.config.mcdm)?;
            let top = ranking.first();
            return Ok(queue
                .iter()
                .position(|e| e.job == top)
                .expect("ranked job must be in the queue"));
        }
        let machine_id = self.machines[mx].id;
        let mut best: Option<(f64, u64, usize)> = None;
        for (ix, entry) in queue.iter().enumerate() {
            let state = &self.jobs[job_index(entry.job)].state;
            let op = &self.inst.base.job(entry.job).operations[state.next_op];
            let ptime = op
                .ptime_on(machine_id)
                .expect("queued job must be compatible with its machine");
            let prims = primitives(state, ptime, now, self.config.fdd_factor)?;
            let value = if self.rule.is_cdr() {
                cdr_priority(self.rule, &prims)?.value
            } else {
                simple_priority(self.rule, &prims)?
            };
            let better = match best {
                None => true,
                Some((bv, bseq, _)) => match value.total_cmp(&bv) {
                    Ordering::Less => true,
                    Ordering::Equal => entry.entered_seq < bseq,
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((value, entry.entered_seq, ix));
            }
        }
        Ok(best.expect("queue checked non-empty").2)
    }

    /// Reorder every stored queue by current priority, stable on entry
    /// order. Selection recomputes at dispatch, so this is observationally
    /// inert; it exists to exercise the global-refresh configuration.
    fn resort_all(&mut self, now: f64) -> Result<()> {
        for mx in 0..self.machines.len() {
            let len = self.machines[mx].queue.len();
            if len < 2 {
                continue;
            }
            let mut keyed: Vec<(f64, u64, QueueEntry)> = if self.rule.is_mcdm() {
                let states = self.queue_states(mx);
                let ranking =
                    mcdm_priority(self.rule, &states, now, self.weights, &self.config.mcdm)?;
                self.machines[mx]
                    .queue
                    .iter()
                    .map(|e| {
                        let rank = ranking.rank_of(e.job).expect("queued job ranked") as f64;
                        (rank, e.entered_seq, *e)
                    })
                    .collect()
            } else {
                let machine_id = self.machines[mx].id;
                let mut keyed = Vec::with_capacity(len);
                for entry in &self.machines[mx].queue {
                    let state = &self.jobs[job_index(entry.job)].state;
                    let op = &self.inst.base.job(entry.job).operations[state.next_op];
                    let ptime = op
                        .ptime_on(machine_id)
                        .expect("queued job must be compatible with its machine");
                    let prims = primitives(state, ptime, now, self.config.fdd_factor)?;
                    let value = if self.rule.is_cdr() {
                        cdr_priority(self.rule, &prims)?.value
                    } else {
                        simple_priority(self.rule, &prims)?
                    };
                    keyed.push((value, entry.entered_seq, *entry));
                }
                keyed
            };
            keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            self.machines[mx].queue = keyed.into_iter().map(|(_, _, e)| e).collect();
        }
        Ok(())
    }

    /// Begin service on `mx` if it is idle with a non-empty queue: pick the
    /// top-ranked job, draw its setup, occupy the machine, emit the row.
    fn start_if_free(&mut self, mx: usize, now: f64) -> Result<()> {
        if self.machines[mx].in_service.is_some() || self.machines[mx].queue.is_empty() {
            return Ok(());
        }
        let pick = self.select_next(mx, now)?;
        let entry = self.machines[mx].queue.remove(pick);
        let jx = job_index(entry.job);
        let op_ix = self.jobs[jx].state.next_op;
        let machine_id = self.machines[mx].id;
        let ptime = self.inst.base.job(entry.job).operations[op_ix]
            .ptime_on(machine_id)
            .expect("queued job must be compatible with its machine");
        let (lo, hi) = self.inst.setup_ranges[jx];
        // Per-(job, op) substream keeps setup draws identical across rules.
        let setup = stream(
            self.setup_seed,
            "setup",
            &[entry.job.0 as u64, op_ix as u64],
        )
        .gen_range(lo..=hi);
        let start = now + setup;
        let end = start + ptime;
        self.rows.push(TraceRow {
            job: entry.job,
            op: op_ix + 1,
            machine: machine_id,
            setup_start: now,
            start,
            end,
        });
        let m = &mut self.machines[mx];
        m.busy_until = end;
        m.in_service = Some((entry.job, op_ix));
        m.busy_time += end - now;
        self.push_event(end, EventKind::Completion(machine_id));
        Ok(())
    }

    /// Advance a job past its finished operation.
    fn advance_job(&mut self, jx: usize, now: f64) {
        let job = &mut self.jobs[jx];
        job.state.next_op += 1;
        job.state.remaining_ops -= 1;
        if job.state.remaining_ops == 0 {
            job.state.completed = true;
            job.state.imminent_estimate = 0.0;
            job.state.work_beyond_imminent = 0.0;
            job.completion = Some(now);
        } else {
            let nx = job.state.next_op;
            job.state.imminent_estimate = job.op_estimates[nx];
            job.state.work_beyond_imminent = job.op_estimates[nx + 1..].iter().sum();
        }
    }

    fn run_to_end(mut self) -> Result<(ScheduleTrace, Metrics)> {
        let mut last_time = 0.0;
        while let Some(std::cmp::Reverse(event)) = self.calendar.pop() {
            let now = event.time;
            debug_assert!(now >= last_time, "event time went backwards");
            last_time = now;
            let mut affected: Vec<usize> = Vec::with_capacity(2);
            match event.kind {
                EventKind::Arrival(job) => {
                    let mx = self.route_index(job, now);
                    self.seq += 1;
                    let entered_seq = self.seq;
                    self.machines[mx].queue.push(QueueEntry { job, entered_seq });
                    affected.push(mx);
                }
                EventKind::Completion(machine_id) => {
                    let mx = (machine_id.0 - 1) as usize;
                    let (job, _) = self.machines[mx]
                        .in_service
                        .take()
                        .expect("completion event on an idle machine");
                    let jx = job_index(job);
                    self.advance_job(jx, now);
                    if !self.jobs[jx].state.completed {
                        let nx = self.route_index(job, now);
                        self.seq += 1;
                        let entered_seq = self.seq;
                        self.machines[nx].queue.push(QueueEntry { job, entered_seq });
                        affected.push(nx);
                    }
                    affected.push(mx);
                }
            }
            if self.config.rerank == RerankScope::Global {
                self.resort_all(now)?;
            }
            affected.sort_unstable();
            affected.dedup();
            for mx in affected {
                self.start_if_free(mx, now)?;
            }
        }

        let mut completions = Vec::with_capacity(self.jobs.len());
        for job in &self.jobs {
            match job.completion {
                Some(c) => completions.push(c),
                None => {
                    return Err(Error::Simulation(format!(
                        "job {} never completed",
                        job.state.job_id
                    )))
                }
            }
        }
        for m in &self.machines {
            let logged: f64 = self
                .rows
                .iter()
                .filter(|r| r.machine == m.id)
                .map(|r| r.end - r.setup_start)
                .sum();
            debug_assert!((logged - m.busy_time).abs() < 1e-9);
        }

        let n = completions.len() as f64;
        let makespan = completions.iter().copied().fold(0.0, f64::max);
        let mean_flow_time = completions
            .iter()
            .zip(&self.arrivals)
            .map(|(c, a)| c - a)
            .sum::<f64>()
            / n;
        let tardies: Vec<f64> = completions
            .iter()
            .zip(&self.inst.due_dates)
            .map(|(c, d)| (c - d).max(0.0))
            .collect();
        let metrics = Metrics {
            makespan,
            mean_flow_time,
            mean_tardiness: tardies.iter().sum::<f64>() / n,
            max_tardiness: tardies.iter().copied().fold(0.0, f64::max),
            late_jobs: tardies.iter().filter(|&&t| t > 0.0).count(),
        };
        let trace = ScheduleTrace {
            rows: self.rows,
            arrivals: self.arrivals,
            due_dates: self.inst.due_dates.clone(),
            completions,
        };
        Ok((trace, metrics))
    }
}

/// Simulate one run to completion.
pub fn run(
    inst: &ExtendedInstance,
    rule: RuleId,
    plan: &ArrivalPlan,
    setup_seed: u64,
    weights: &CriteriaWeights,
    config: &SimConfig,
) -> Result<(ScheduleTrace, Metrics)> {
    Engine::new(inst, rule, plan, setup_seed, weights, config)?.run_to_end()
}

/// Run one replication per seed. Each seed fixes both the arrival plan and
/// the setup substreams, so different rules on the same seed face common
/// random numbers.
pub fn replicate(
    inst: &ExtendedInstance,
    rule: RuleId,
    pattern: ArrivalPattern,
    horizon: f64,
    seeds: &[u64],
    weights: &CriteriaWeights,
    config: &SimConfig,
) -> Result<Vec<Metrics>> {
    if seeds.is_empty() {
        return Err(Error::Simulation("replicate needs at least one seed".into()));
    }
    seeds
        .iter()
        .map(|&seed| {
            let plan = arrival_times(pattern, inst.job_count(), horizon, seed)?;
            run(inst, rule, &plan, seed, weights, config).map(|(_, m)| m)
        })
        .collect()
}
