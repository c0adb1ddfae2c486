//! Dynamic job attributes and decision-matrix construction.
//!
//! The five ranking criteria are the job's remaining processing time, its
//! due date, its remaining operation count, its expected setup time and its
//! slack per remaining operation. All five default to cost orientation:
//! smaller values mean higher priority.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::JobId;

/// Optimization direction of a criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Cost,
    Benefit,
}

/// How remaining work aggregates an unstarted operation's alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WorkEstimate {
    /// Minimum ptime over the compatible set (route-free lower estimate).
    #[default]
    Min,
    /// Mean ptime over the compatible set.
    Mean,
}

/// The built-in criteria of the decision matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    ProcessTime,
    DueDate,
    Operations,
    SetupTime,
    Strop,
}

impl CriterionKind {
    pub const ALL: [CriterionKind; 5] = [
        CriterionKind::ProcessTime,
        CriterionKind::DueDate,
        CriterionKind::Operations,
        CriterionKind::SetupTime,
        CriterionKind::Strop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriterionKind::ProcessTime => "process_time",
            CriterionKind::DueDate => "due_date",
            CriterionKind::Operations => "operations",
            CriterionKind::SetupTime => "setup_time",
            CriterionKind::Strop => "strop",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        CriterionKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Weights(format!("unknown criterion `{name}`")))
    }
}

/// One criterion's weight entry.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionWeight {
    pub kind: CriterionKind,
    /// Triangular fuzzy source, when weights arrived fuzzy.
    pub fuzzy: Option<(f64, f64, f64)>,
    pub crisp: f64,
    pub normalized: f64,
    pub direction: Direction,
}

/// Per-criterion weights; normalized entries sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaWeights {
    entries: Vec<CriterionWeight>,
}

impl CriteriaWeights {
    /// Defuzzify triangular weights: crisp = l + m + u, then normalize.
    pub fn from_fuzzy(items: &[(CriterionKind, (f64, f64, f64), Direction)]) -> Result<Self> {
        for &(kind, (l, m, u), _) in items {
            if !(l <= m && m <= u) {
                return Err(Error::Weights(format!(
                    "{}: fuzzy triple ({l}, {m}, {u}) is not ordered",
                    kind.name()
                )));
            }
        }
        let crisp: Vec<f64> = items.iter().map(|&(_, (l, m, u), _)| l + m + u).collect();
        let entries = items
            .iter()
            .zip(&crisp)
            .map(|(&(kind, triple, direction), &c)| CriterionWeight {
                kind,
                fuzzy: Some(triple),
                crisp: c,
                normalized: 0.0,
                direction,
            })
            .collect();
        Self::normalize(entries)
    }

    /// Accept crisp weights directly.
    pub fn from_crisp(items: &[(CriterionKind, f64, Direction)]) -> Result<Self> {
        let entries = items
            .iter()
            .map(|&(kind, crisp, direction)| CriterionWeight {
                kind,
                fuzzy: None,
                crisp,
                normalized: 0.0,
                direction,
            })
            .collect();
        Self::normalize(entries)
    }

    fn normalize(mut entries: Vec<CriterionWeight>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Weights("no criteria given".into()));
        }
        for e in &entries {
            if !(e.crisp >= 0.0) || !e.crisp.is_finite() {
                return Err(Error::Weights(format!(
                    "{}: crisp weight {} is not a non-negative number",
                    e.kind.name(),
                    e.crisp
                )));
            }
        }
        let sum: f64 = entries.iter().map(|e| e.crisp).sum();
        if sum == 0.0 {
            return Err(Error::Weights("crisp weights sum to zero".into()));
        }
        for e in &mut entries {
            e.normalized = e.crisp / sum;
        }
        Ok(CriteriaWeights { entries })
    }

    pub fn entries(&self) -> &[CriterionWeight] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn normalized(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.normalized).collect()
    }

    pub fn directions(&self) -> Vec<Direction> {
        self.entries.iter().map(|e| e.direction).collect()
    }

    /// Replace normalized weights, keeping kinds and directions. Used by
    /// weight-sensitivity sweeps.
    pub fn with_normalized(&self, normalized: &[f64]) -> Result<Self> {
        if normalized.len() != self.entries.len() {
            return Err(Error::Weights(format!(
                "expected {} weights, got {}",
                self.entries.len(),
                normalized.len()
            )));
        }
        let items: Vec<(CriterionKind, f64, Direction)> = self
            .entries
            .iter()
            .zip(normalized)
            .map(|(e, &w)| (e.kind, w, e.direction))
            .collect();
        Self::from_crisp(&items)
    }
}

/// Dynamic state of one job during simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JobState {
    pub job_id: JobId,
    pub arrival: f64,
    pub due_date: f64,
    /// 0-based index of the imminent (unstarted) operation.
    pub next_op: usize,
    pub total_ops: usize,
    pub remaining_ops: usize,
    /// Estimated work of the imminent operation under the active convention.
    pub imminent_estimate: f64,
    /// Estimated work of the operations after the imminent one.
    pub work_beyond_imminent: f64,
    /// Whole-job work content under the active convention.
    pub total_work: f64,
    /// Expected setup of the next service (midpoint of the job's range).
    pub setup_estimate: f64,
    pub completed: bool,
}

impl JobState {
    /// Remaining work including the imminent operation.
    pub fn remaining_work(&self) -> f64 {
        if self.completed {
            0.0
        } else {
            self.imminent_estimate + self.work_beyond_imminent
        }
    }
}

/// Slack time remaining per operation: (due − now − remaining work) / remaining ops.
pub fn strop(state: &JobState, now: f64) -> Result<f64> {
    if state.remaining_ops == 0 {
        return Err(Error::Ranking(format!(
            "job {} is completed and cannot be ranked",
            state.job_id
        )));
    }
    Ok((state.due_date - now - state.remaining_work()) / state.remaining_ops as f64)
}

/// Criterion values of queued jobs, one row per job.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix {
    pub rows: Vec<JobId>,
    pub values: Vec<Vec<f64>>,
    pub weights: CriteriaWeights,
}

impl DecisionMatrix {
    pub fn new(rows: Vec<JobId>, values: Vec<Vec<f64>>, weights: CriteriaWeights) -> Result<Self> {
        if rows.len() != values.len() {
            return Err(Error::Ranking(format!(
                "{} row ids for {} value rows",
                rows.len(),
                values.len()
            )));
        }
        let k = weights.len();
        for (row, vals) in rows.iter().zip(&values) {
            if vals.len() != k {
                return Err(Error::Ranking(format!(
                    "job {row}: expected {k} criterion values, got {}",
                    vals.len()
                )));
            }
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(Error::Ranking(format!("job {row}: non-finite value")));
            }
        }
        let mut seen = rows.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != rows.len() {
            return Err(Error::Ranking("duplicate job id in matrix rows".into()));
        }
        Ok(DecisionMatrix {
            rows,
            values,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |row| row[j])
    }
}

/// Build the matrix for a queue snapshot at time `now`.
pub fn build_decision_matrix(
    queue: &[JobState],
    now: f64,
    weights: &CriteriaWeights,
) -> Result<DecisionMatrix> {
    if queue.is_empty() {
        return Err(Error::EmptyQueue);
    }
    let mut rows = Vec::with_capacity(queue.len());
    let mut values = Vec::with_capacity(queue.len());
    for state in queue {
        let mut row = Vec::with_capacity(weights.len());
        for entry in weights.entries() {
            let v = match entry.kind {
                CriterionKind::ProcessTime => state.remaining_work(),
                CriterionKind::DueDate => state.due_date,
                CriterionKind::Operations => state.remaining_ops as f64,
                CriterionKind::SetupTime => state.setup_estimate,
                CriterionKind::Strop => strop(state, now)?,
            };
            row.push(v);
        }
        rows.push(state.job_id);
        values.push(row);
    }
    DecisionMatrix::new(rows, values, weights.clone())
}
