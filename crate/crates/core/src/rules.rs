//! Priority rules: the eight composite dispatching rules, the four
//! multi-criteria rules built on the rankers, and three simple baselines.
//!
//! Composite and simple rules yield a numeric index per job, smaller first.
//! Multi-criteria rules rank a whole queue at once. Both orientations meet
//! in the engine, which always processes the top-ranked job next.

use serde::{Deserialize, Serialize};

use crate::criteria::{build_decision_matrix, CriteriaWeights, JobState};
use crate::error::{Error, Result};
use crate::mcdm::{rank_with, McdmOptions, Method, Ranking};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
    C12,
    Spt,
    Edd,
    Fifo,
}

impl RuleId {
    /// Every registered rule, baselines last.
    pub const ALL: [RuleId; 15] = [
        RuleId::C1,
        RuleId::C2,
        RuleId::C3,
        RuleId::C4,
        RuleId::C5,
        RuleId::C6,
        RuleId::C7,
        RuleId::C8,
        RuleId::C9,
        RuleId::C10,
        RuleId::C11,
        RuleId::C12,
        RuleId::Spt,
        RuleId::Edd,
        RuleId::Fifo,
    ];

    /// The twelve composite and multi-criteria rules under study.
    pub const COMPOSITE: [RuleId; 12] = [
        RuleId::C1,
        RuleId::C2,
        RuleId::C3,
        RuleId::C4,
        RuleId::C5,
        RuleId::C6,
        RuleId::C7,
        RuleId::C8,
        RuleId::C9,
        RuleId::C10,
        RuleId::C11,
        RuleId::C12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::C1 => "C1",
            RuleId::C2 => "C2",
            RuleId::C3 => "C3",
            RuleId::C4 => "C4",
            RuleId::C5 => "C5",
            RuleId::C6 => "C6",
            RuleId::C7 => "C7",
            RuleId::C8 => "C8",
            RuleId::C9 => "C9",
            RuleId::C10 => "C10",
            RuleId::C11 => "C11",
            RuleId::C12 => "C12",
            RuleId::Spt => "SPT",
            RuleId::Edd => "EDD",
            RuleId::Fifo => "FIFO",
        }
    }

    pub fn parse(s: &str) -> Result<RuleId> {
        let key = s.trim().to_ascii_uppercase();
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == key)
            .ok_or_else(|| Error::Rule(format!("unknown rule `{s}`")))
    }

    /// The ranking method behind C9..C12, if any.
    pub fn mcdm_method(self) -> Option<Method> {
        match self {
            RuleId::C9 => Some(Method::Topsis),
            RuleId::C10 => Some(Method::Edas),
            RuleId::C11 => Some(Method::Cp),
            RuleId::C12 => Some(Method::Promethee),
            _ => None,
        }
    }

    pub fn is_mcdm(self) -> bool {
        self.mcdm_method().is_some()
    }

    pub fn is_cdr(self) -> bool {
        matches!(
            self,
            RuleId::C1
                | RuleId::C2
                | RuleId::C3
                | RuleId::C4
                | RuleId::C5
                | RuleId::C6
                | RuleId::C7
                | RuleId::C8
        )
    }

    pub fn is_simple(self) -> bool {
        matches!(self, RuleId::Spt | RuleId::Edd | RuleId::Fifo)
    }

    /// Printable formula or method behind the rule.
    pub fn description(self) -> &'static str {
        match self {
            RuleId::C1 => "2*PT + LWR + FDD",
            RuleId::C2 => "2*PT + LWR + Slack",
            RuleId::C3 => "PT + LWR + Slack",
            RuleId::C4 => "2*PT + LWR + EDD",
            RuleId::C5 => "7*LTWC + 11*SPT + 12*(LNOP + AT)",
            RuleId::C6 => "LTWC / (3 + LNOP - LRNOP)",
            RuleId::C7 => "ODD + RT",
            RuleId::C8 => "[EDD + ((LRNOP + LTWC)/(LRWC - LTWC))*LNOP] * LRNOP",
            RuleId::C9 => "fuzzy-weighted TOPSIS ranking",
            RuleId::C10 => "fuzzy-weighted EDAS ranking",
            RuleId::C11 => "fuzzy-weighted compromise-programming ranking",
            RuleId::C12 => "fuzzy-weighted PROMETHEE II ranking",
            RuleId::Spt => "shortest imminent processing time",
            RuleId::Edd => "earliest due date",
            RuleId::Fifo => "queue entry order",
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RuleId> {
        RuleId::parse(s)
    }
}

/// Per-job attribute snapshot feeding the composite formulas.
///
/// `pt` is the imminent operation's processing time on the machine whose
/// queue is being ranked, so the same job can score differently per queue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveValues {
    /// Imminent-operation processing time on the assigned machine.
    pub pt: f64,
    /// Work remaining after the imminent operation.
    pub rt: f64,
    /// Work remaining including the imminent operation.
    pub lwr: f64,
    /// Whole-job total work content.
    pub ltwc: f64,
    /// Total operation count.
    pub lnop: f64,
    /// Remaining operation count.
    pub lrnop: f64,
    /// Arrival time.
    pub at: f64,
    /// Due date.
    pub edd: f64,
    /// Due date minus now minus remaining work.
    pub slack: f64,
    /// Flow due date.
    pub fdd: f64,
    /// Operational due date of the imminent operation.
    pub odd: f64,
}

impl PrimitiveValues {
    pub fn spt(&self) -> f64 {
        self.pt
    }

    pub fn lrwc(&self) -> f64 {
        self.lwr
    }
}

/// Evaluate the rule primitives for a queued job at time `now`.
///
/// `fdd_factor` overrides the flow-allowance factor; by default the factor
/// is chosen per job so the flow due date equals the due date.
pub fn primitives(
    state: &JobState,
    imminent_ptime: f64,
    now: f64,
    fdd_factor: Option<f64>,
) -> Result<PrimitiveValues> {
    if state.completed || state.remaining_ops == 0 {
        return Err(Error::Rule(format!(
            "job {} is complete; no primitives to evaluate",
            state.job_id
        )));
    }
    let pt = imminent_ptime;
    let rt = state.work_beyond_imminent;
    let lwr = pt + rt;
    let fdd = match fdd_factor {
        Some(c) => state.arrival + c * state.total_work,
        None => state.due_date,
    };
    let k = (state.total_ops - state.remaining_ops + 1) as f64;
    let big_k = state.total_ops as f64;
    let odd = state.arrival + (k / big_k) * (state.due_date - state.arrival);
    Ok(PrimitiveValues {
        pt,
        rt,
        lwr,
        ltwc: state.total_work,
        lnop: state.total_ops as f64,
        lrnop: state.remaining_ops as f64,
        at: state.arrival,
        edd: state.due_date,
        slack: state.due_date - now - lwr,
        fdd,
        odd,
    })
}

/// A composite-rule index; smaller means serve sooner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdrValue {
    pub value: f64,
    /// C8's ratio denominator was zero and the term was dropped.
    pub degenerate_ratio: bool,
}

/// Evaluate one of the eight composite formulas.
pub fn cdr_priority(rule: RuleId, p: &PrimitiveValues) -> Result<CdrValue> {
    let mut degenerate_ratio = false;
    let value = match rule {
        RuleId::C1 => 2.0 * p.pt + p.lwr + p.fdd,
        RuleId::C2 => 2.0 * p.pt + p.lwr + p.slack,
        RuleId::C3 => p.pt + p.lwr + p.slack,
        RuleId::C4 => 2.0 * p.pt + p.lwr + p.edd,
        RuleId::C5 => 7.0 * p.ltwc + 11.0 * p.spt() + 12.0 * (p.lnop + p.at),
        RuleId::C6 => p.ltwc / (3.0 + p.lnop - p.lrnop),
        RuleId::C7 => p.odd + p.rt,
        RuleId::C8 => {
            let denom = p.lrwc() - p.ltwc;
            let ratio = if denom == 0.0 {
                degenerate_ratio = true;
                0.0
            } else {
                (p.lrnop + p.ltwc) / denom
            };
            (p.edd + ratio * p.lnop) * p.lrnop
        }
        _ => {
            return Err(Error::Rule(format!(
                "{rule} is not a composite formula rule"
            )))
        }
    };
    Ok(CdrValue {
        value,
        degenerate_ratio,
    })
}

/// Index for the baseline rules; smaller means serve sooner.
///
/// FIFO scores by arrival time; the engine's stable tie-break on queue
/// entry order resolves simultaneous arrivals.
pub fn simple_priority(rule: RuleId, p: &PrimitiveValues) -> Result<f64> {
    match rule {
        RuleId::Spt => Ok(p.pt),
        RuleId::Edd => Ok(p.edd),
        RuleId::Fifo => Ok(p.at),
        _ => Err(Error::Rule(format!("{rule} is not a baseline rule"))),
    }
}

/// Rank a queue with the method behind C9..C12.
///
/// A single-job queue ranks first immediately with a unit score, skipping
/// the matrix entirely.
pub fn mcdm_priority(
    rule: RuleId,
    queue: &[JobState],
    now: f64,
    weights: &CriteriaWeights,
    opts: &McdmOptions,
) -> Result<Ranking> {
    let method = rule
        .mcdm_method()
        .ok_or_else(|| Error::Rule(format!("{rule} is not a ranking rule")))?;
    if let [only] = queue {
        return Ok(Ranking {
            method,
            entries: vec![crate::mcdm::RankedJob {
                job: only.job_id,
                score: 1.0,
                rank: 1,
            }],
            tied_groups: Vec::new(),
        });
    }
    let matrix = build_decision_matrix(queue, now, weights)?;
    rank_with(method, &matrix, opts)
}
