//! The four multi-criteria ranking methods.
//!
//! Each ranker is a pure function `DecisionMatrix -> (Ranking, trace)`.
//! Traces expose every intermediate quantity for audit dumps. Scores are
//! oriented per method; the shared sort breaks ties by ascending job id.

use serde::{Deserialize, Serialize};

use crate::criteria::{DecisionMatrix, Direction};
use crate::error::{Error, Result};
use crate::instance::JobId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Topsis,
    Edas,
    Cp,
    Promethee,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Topsis => "topsis",
            Method::Edas => "edas",
            Method::Cp => "cp",
            Method::Promethee => "promethee",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ascending,
    Descending,
}

/// One ranked alternative.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedJob {
    pub job: JobId,
    pub score: f64,
    pub rank: usize,
}

/// A total order over the ranked jobs, rank 1 first.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub method: Method,
    pub entries: Vec<RankedJob>,
    /// Jobs whose scores tied exactly, in rank order; ties were broken by id.
    pub tied_groups: Vec<Vec<JobId>>,
}

impl Ranking {
    pub fn first(&self) -> JobId {
        self.entries[0].job
    }

    pub fn rank_of(&self, job: JobId) -> Option<usize> {
        self.entries.iter().find(|e| e.job == job).map(|e| e.rank)
    }

    /// Ranks in the order of `rows` (the matrix row order).
    pub fn rank_vector(&self, rows: &[JobId]) -> Vec<usize> {
        rows.iter()
            .map(|&j| self.rank_of(j).expect("job missing from ranking"))
            .collect()
    }
}

/// Stable sort by score under `orientation`, ties by ascending job id.
pub fn rank_from_scores(
    method: Method,
    scores: &[(JobId, f64)],
    orientation: Orientation,
) -> Result<Ranking> {
    for &(job, s) in scores {
        if s.is_nan() {
            return Err(Error::Ranking(format!("job {job} scored NaN")));
        }
    }
    // Collapse -0.0 so equal-valued scores tie regardless of sign bit.
    let mut order: Vec<(JobId, f64)> = scores
        .iter()
        .map(|&(j, s)| (j, if s == 0.0 { 0.0 } else { s }))
        .collect();
    order.sort_by(|a, b| {
        let by_score = match orientation {
            Orientation::Ascending => a.1.total_cmp(&b.1),
            Orientation::Descending => b.1.total_cmp(&a.1),
        };
        by_score.then(a.0.cmp(&b.0))
    });
    let entries: Vec<RankedJob> = order
        .iter()
        .enumerate()
        .map(|(ix, &(job, score))| RankedJob {
            job,
            score,
            rank: ix + 1,
        })
        .collect();
    let mut tied_groups = Vec::new();
    let mut ix = 0;
    while ix < entries.len() {
        let mut j = ix + 1;
        while j < entries.len() && entries[j].score == entries[ix].score {
            j += 1;
        }
        if j - ix > 1 {
            tied_groups.push(entries[ix..j].iter().map(|e| e.job).collect());
        }
        ix = j;
    }
    Ok(Ranking {
        method,
        entries,
        tied_groups,
    })
}

/// Intermediate quantities of a TOPSIS run.
#[derive(Debug, Clone)]
pub struct TopsisTrace {
    pub normalized: Vec<Vec<f64>>,
    pub weighted: Vec<Vec<f64>>,
    pub ideal: Vec<f64>,
    pub anti_ideal: Vec<f64>,
    pub separation_plus: Vec<f64>,
    pub separation_minus: Vec<f64>,
    pub closeness: Vec<f64>,
    /// Columns whose vector norm was zero; they contribute nothing.
    pub zero_norm_columns: Vec<usize>,
}

/// Closeness to the ideal point in weighted, vector-normalized space.
///
/// Scores are `S− / (S+ + S−)` ranked descending, which orders identically
/// to the ascending complement.
pub fn topsis_rank(matrix: &DecisionMatrix) -> Result<(Ranking, TopsisTrace)> {
    let n = matrix.n();
    let k = matrix.k();
    if n == 0 {
        return Err(Error::EmptyQueue);
    }
    let weights = matrix.weights.normalized();
    let directions = matrix.weights.directions();

    let mut zero_norm_columns = Vec::new();
    let mut normalized = vec![vec![0.0; k]; n];
    for j in 0..k {
        let norm = matrix.column(j).map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            zero_norm_columns.push(j);
            continue;
        }
        for (i, v) in matrix.column(j).enumerate() {
            normalized[i][j] = v / norm;
        }
    }
    let weighted: Vec<Vec<f64>> = normalized
        .iter()
        .map(|row| row.iter().zip(&weights).map(|(r, w)| r * w).collect())
        .collect();

    let mut ideal = vec![0.0; k];
    let mut anti_ideal = vec![0.0; k];
    for j in 0..k {
        let col = weighted.iter().map(|row| row[j]);
        let min = col.clone().fold(f64::INFINITY, f64::min);
        let max = weighted
            .iter()
            .map(|row| row[j])
            .fold(f64::NEG_INFINITY, f64::max);
        match directions[j] {
            Direction::Cost => {
                ideal[j] = min;
                anti_ideal[j] = max;
            }
            Direction::Benefit => {
                ideal[j] = max;
                anti_ideal[j] = min;
            }
        }
    }

    let dist = |row: &[f64], point: &[f64]| -> f64 {
        row.iter()
            .zip(point)
            .map(|(v, p)| (v - p) * (v - p))
            .sum::<f64>()
            .sqrt()
    };
    let separation_plus: Vec<f64> = weighted.iter().map(|r| dist(r, &ideal)).collect();
    let separation_minus: Vec<f64> = weighted.iter().map(|r| dist(r, &anti_ideal)).collect();
    let closeness: Vec<f64> = separation_plus
        .iter()
        .zip(&separation_minus)
        .map(|(&sp, &sm)| {
            if sp + sm == 0.0 {
                // Indistinguishable alternatives; a lone row is its own ideal.
                if n == 1 {
                    1.0
                } else {
                    0.5
                }
            } else {
                sm / (sp + sm)
            }
        })
        .collect();

    let scores: Vec<(JobId, f64)> = matrix.rows.iter().copied().zip(closeness.clone()).collect();
    let ranking = rank_from_scores(Method::Topsis, &scores, Orientation::Descending)?;
    Ok((
        ranking,
        TopsisTrace {
            normalized,
            weighted,
            ideal,
            anti_ideal,
            separation_plus,
            separation_minus,
            closeness,
            zero_norm_columns,
        },
    ))
}

/// Which appraisal-score combination EDAS uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdasVariant {
    /// AS = (NSP + NSN) / 2, the method's published definition.
    #[default]
    Standard,
    /// AS = (NSP − NSN) × 0.5, kept for comparison runs.
    Paper,
}

#[derive(Debug, Clone)]
pub struct EdasTrace {
    pub averages: Vec<f64>,
    pub pda: Vec<Vec<f64>>,
    pub nda: Vec<Vec<f64>>,
    pub sp: Vec<f64>,
    pub sn: Vec<f64>,
    pub nsp: Vec<f64>,
    pub nsn: Vec<f64>,
    pub appraisal: Vec<f64>,
    /// max SP was zero, so NSP collapsed to 0 for every row.
    pub degenerate_sp: bool,
    /// max SN was zero, so NSN collapsed to 1 for every row.
    pub degenerate_sn: bool,
}

/// Weighted positive/negative distances from the column-average solution.
///
/// Averages may be negative; distances are scaled by |average| so PDA and
/// NDA stay non-negative.
pub fn edas_rank(matrix: &DecisionMatrix, variant: EdasVariant) -> Result<(Ranking, EdasTrace)> {
    let n = matrix.n();
    let k = matrix.k();
    if n == 0 {
        return Err(Error::EmptyQueue);
    }
    let weights = matrix.weights.normalized();
    let directions = matrix.weights.directions();

    let mut averages = vec![0.0; k];
    for (j, avg) in averages.iter_mut().enumerate() {
        *avg = matrix.column(j).sum::<f64>() / n as f64;
        if *avg == 0.0 {
            return Err(Error::Ranking(format!(
                "criterion `{}` has zero column average",
                matrix.weights.entries()[j].kind.name()
            )));
        }
    }

    let mut pda = vec![vec![0.0; k]; n];
    let mut nda = vec![vec![0.0; k]; n];
    for i in 0..n {
        for j in 0..k {
            let x = matrix.values[i][j];
            let avg = averages[j];
            let scale = avg.abs();
            let (p, q) = match directions[j] {
                Direction::Benefit => ((x - avg).max(0.0), (avg - x).max(0.0)),
                Direction::Cost => ((avg - x).max(0.0), (x - avg).max(0.0)),
            };
            pda[i][j] = p / scale;
            nda[i][j] = q / scale;
        }
    }

    let weighted_sum = |rows: &[Vec<f64>]| -> Vec<f64> {
        rows.iter()
            .map(|row| row.iter().zip(&weights).map(|(v, w)| v * w).sum())
            .collect()
    };
    let sp = weighted_sum(&pda);
    let sn = weighted_sum(&nda);
    let max_sp = sp.iter().copied().fold(0.0, f64::max);
    let max_sn = sn.iter().copied().fold(0.0, f64::max);
    let degenerate_sp = max_sp == 0.0;
    let degenerate_sn = max_sn == 0.0;
    let nsp: Vec<f64> = sp
        .iter()
        .map(|&v| if degenerate_sp { 0.0 } else { v / max_sp })
        .collect();
    let nsn: Vec<f64> = sn
        .iter()
        .map(|&v| if degenerate_sn { 1.0 } else { 1.0 - v / max_sn })
        .collect();
    let appraisal: Vec<f64> = nsp
        .iter()
        .zip(&nsn)
        .map(|(&p, &q)| match variant {
            EdasVariant::Standard => (p + q) / 2.0,
            EdasVariant::Paper => (p - q) * 0.5,
        })
        .collect();

    let scores: Vec<(JobId, f64)> = matrix.rows.iter().copied().zip(appraisal.clone()).collect();
    let ranking = rank_from_scores(Method::Edas, &scores, Orientation::Descending)?;
    Ok((
        ranking,
        EdasTrace {
            averages,
            pda,
            nda,
            sp,
            sn,
            nsp,
            nsn,
            appraisal,
            degenerate_sp,
            degenerate_sn,
        },
    ))
}

/// Distance parameter of compromise programming.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CpExponent {
    Finite(f64),
    Infinity,
}

impl Default for CpExponent {
    fn default() -> Self {
        CpExponent::Finite(2.0)
    }
}

#[derive(Debug, Clone)]
pub struct CpTrace {
    pub ideal: Vec<f64>,
    pub anti_ideal: Vec<f64>,
    pub exponent: CpExponent,
    pub distances: Vec<f64>,
    /// Columns with ideal == anti-ideal; they contribute nothing.
    pub constant_columns: Vec<usize>,
}

/// Weighted Lp distance to the per-criterion ideal, ranked ascending.
pub fn cp_rank(matrix: &DecisionMatrix, exponent: CpExponent) -> Result<(Ranking, CpTrace)> {
    let n = matrix.n();
    let k = matrix.k();
    if n == 0 {
        return Err(Error::EmptyQueue);
    }
    if let CpExponent::Finite(p) = exponent {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::Ranking(format!("invalid Lp exponent {p}")));
        }
    }
    let weights = matrix.weights.normalized();
    let directions = matrix.weights.directions();

    let mut ideal = vec![0.0; k];
    let mut anti_ideal = vec![0.0; k];
    let mut constant_columns = Vec::new();
    for j in 0..k {
        let min = matrix.column(j).fold(f64::INFINITY, f64::min);
        let max = matrix.column(j).fold(f64::NEG_INFINITY, f64::max);
        match directions[j] {
            Direction::Cost => {
                ideal[j] = min;
                anti_ideal[j] = max;
            }
            Direction::Benefit => {
                ideal[j] = max;
                anti_ideal[j] = min;
            }
        }
        if ideal[j] == anti_ideal[j] {
            constant_columns.push(j);
        }
    }

    let distances: Vec<f64> = matrix
        .values
        .iter()
        .map(|row| {
            let deviations = row.iter().enumerate().filter_map(|(j, &x)| {
                if ideal[j] == anti_ideal[j] {
                    None
                } else {
                    Some((j, ((ideal[j] - x) / (ideal[j] - anti_ideal[j])).abs()))
                }
            });
            match exponent {
                CpExponent::Finite(p) => deviations
                    .map(|(j, d)| weights[j] * d.powf(p))
                    .sum::<f64>()
                    .powf(1.0 / p),
                CpExponent::Infinity => deviations
                    .map(|(j, d)| weights[j] * d)
                    .fold(0.0, f64::max),
            }
        })
        .collect();

    let scores: Vec<(JobId, f64)> = matrix.rows.iter().copied().zip(distances.clone()).collect();
    let ranking = rank_from_scores(Method::Cp, &scores, Orientation::Ascending)?;
    Ok((
        ranking,
        CpTrace {
            ideal,
            anti_ideal,
            exponent,
            distances,
            constant_columns,
        },
    ))
}

/// Pairwise preference shape.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum PreferenceFunction {
    /// P = 1 whenever the deviation is strictly positive.
    #[default]
    Usual,
    /// P ramps linearly from the indifference threshold `q` to the strict
    /// preference threshold `s`; `q == s` degenerates to a step at `q`.
    Linear { indifference: f64, preference: f64 },
}

impl PreferenceFunction {
    fn evaluate(self, d: f64) -> Result<f64> {
        Ok(match self {
            PreferenceFunction::Usual => {
                if d > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            PreferenceFunction::Linear {
                indifference: q,
                preference: s,
            } => {
                if !(0.0 <= q && q <= s) {
                    return Err(Error::Ranking(format!(
                        "linear preference needs 0 <= q <= s, got q={q}, s={s}"
                    )));
                }
                if d <= q {
                    0.0
                } else if d >= s || s == q {
                    1.0
                } else {
                    (d - q) / (s - q)
                }
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct PrometheeTrace {
    /// Direction-adjusted deviations d_j(a, b), indexed [a][b][j].
    pub deviations: Vec<Vec<Vec<f64>>>,
    /// Preference values P_j(a, b), indexed [a][b][j].
    pub preferences: Vec<Vec<Vec<f64>>>,
    /// Aggregated preference index pi(a, b).
    pub index: Vec<Vec<f64>>,
    pub phi_plus: Vec<f64>,
    pub phi_minus: Vec<f64>,
    pub phi: Vec<f64>,
}

/// Net outranking flow over pairwise comparisons, ranked descending.
///
/// Cost criteria are negated before taking deviations; flows are plain sums
/// over the other alternatives, so net flows always sum to zero.
pub fn promethee_rank(
    matrix: &DecisionMatrix,
    preference: PreferenceFunction,
) -> Result<(Ranking, PrometheeTrace)> {
    let n = matrix.n();
    let k = matrix.k();
    if n == 0 {
        return Err(Error::EmptyQueue);
    }
    let weights = matrix.weights.normalized();
    let directions = matrix.weights.directions();

    let adjusted: Vec<Vec<f64>> = matrix
        .values
        .iter()
        .map(|row| {
            row.iter()
                .zip(&directions)
                .map(|(&v, d)| match d {
                    Direction::Benefit => v,
                    Direction::Cost => -v,
                })
                .collect()
        })
        .collect();

    let mut deviations = vec![vec![vec![0.0; k]; n]; n];
    let mut preferences = vec![vec![vec![0.0; k]; n]; n];
    let mut index = vec![vec![0.0; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut pi = 0.0;
            for j in 0..k {
                let d = adjusted[a][j] - adjusted[b][j];
                let p = preference.evaluate(d)?;
                deviations[a][b][j] = d;
                preferences[a][b][j] = p;
                pi += weights[j] * p;
            }
            index[a][b] = pi;
        }
    }

    let phi_plus: Vec<f64> = (0..n).map(|a| (0..n).map(|b| index[a][b]).sum()).collect();
    let phi_minus: Vec<f64> = (0..n).map(|a| (0..n).map(|b| index[b][a]).sum()).collect();
    let phi: Vec<f64> = phi_plus
        .iter()
        .zip(&phi_minus)
        .map(|(&p, &m)| p - m)
        .collect();

    let scores: Vec<(JobId, f64)> = matrix.rows.iter().copied().zip(phi.clone()).collect();
    let ranking = rank_from_scores(Method::Promethee, &scores, Orientation::Descending)?;
    Ok((
        ranking,
        PrometheeTrace {
            deviations,
            preferences,
            index,
            phi_plus,
            phi_minus,
            phi,
        },
    ))
}

/// Method options threaded from configuration.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct McdmOptions {
    pub cp_exponent: CpExponent,
    pub edas_variant: EdasVariant,
    pub preference: PreferenceFunction,
}

/// Run the chosen method on a matrix.
pub fn rank_with(method: Method, matrix: &DecisionMatrix, opts: &McdmOptions) -> Result<Ranking> {
    Ok(match method {
        Method::Topsis => topsis_rank(matrix)?.0,
        Method::Edas => edas_rank(matrix, opts.edas_variant)?.0,
        Method::Cp => cp_rank(matrix, opts.cp_exponent)?.0,
        Method::Promethee => promethee_rank(matrix, opts.preference)?.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{CriteriaWeights, CriterionKind, DecisionMatrix, Direction};

    pub(crate) const FIXTURE_ROWS: [[f64; 5]; 10] = [
        [27.0, 49.5, 6.0, 1.3, 3.8],
        [20.0, 37.5, 5.0, 1.2, 3.5],
        [27.0, 48.0, 5.0, 1.6, 4.2],
        [22.0, 40.5, 5.0, 1.3, 3.7],
        [34.0, 60.0, 6.0, 1.7, 4.3],
        [26.0, 45.0, 6.0, 1.3, 3.2],
        [17.0, 33.0, 5.0, 1.2, 3.2],
        [33.0, 49.5, 5.0, 1.6, 3.3],
        [24.0, 45.0, 6.0, 1.2, 3.5],
        [25.0, 46.5, 6.0, 1.2, 3.6],
    ];

    pub(crate) fn fixture_matrix() -> DecisionMatrix {
        let weights = CriteriaWeights::from_crisp(&[
            (CriterionKind::ProcessTime, 0.10, Direction::Cost),
            (CriterionKind::DueDate, 0.26, Direction::Cost),
            (CriterionKind::Operations, 0.15, Direction::Cost),
            (CriterionKind::SetupTime, 0.04, Direction::Cost),
            (CriterionKind::Strop, 0.45, Direction::Cost),
        ])
        .unwrap();
        let rows: Vec<JobId> = (1..=10).map(JobId).collect();
        let values = FIXTURE_ROWS.iter().map(|r| r.to_vec()).collect();
        DecisionMatrix::new(rows, values, weights).unwrap()
    }

    fn matrix(values: Vec<Vec<f64>>, directions: &[Direction], weights: &[f64]) -> DecisionMatrix {
        let kinds = [
            CriterionKind::ProcessTime,
            CriterionKind::DueDate,
            CriterionKind::Operations,
            CriterionKind::SetupTime,
            CriterionKind::Strop,
        ];
        let items: Vec<_> = directions
            .iter()
            .zip(weights)
            .enumerate()
            .map(|(ix, (&d, &w))| (kinds[ix], w, d))
            .collect();
        let rows: Vec<JobId> = (1..=values.len() as u32).map(JobId).collect();
        DecisionMatrix::new(rows, values, CriteriaWeights::from_crisp(&items).unwrap()).unwrap()
    }

    #[test]
    fn topsis_fixture_scores_and_ranks() {
        let (ranking, trace) = topsis_rank(&fixture_matrix()).unwrap();
        // Frozen from an independent implementation of the same formulas.
        let expected_cc = [
            0.41400795835165966,
            0.7881898913511662,
            0.33734885073532755,
            0.6500563290875622,
            0.0,
            0.668739189460595,
            1.0,
            0.5526220569607977,
            0.6127958521567288,
            0.5486308209500482,
        ];
        for (got, want) in trace.closeness.iter().zip(expected_cc) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
        let rows: Vec<JobId> = (1..=10).map(JobId).collect();
        assert_eq!(
            ranking.rank_vector(&rows),
            vec![8, 2, 9, 4, 10, 3, 1, 6, 5, 7]
        );
        assert_eq!(ranking.first(), JobId(7));
        for cc in &trace.closeness {
            assert!((0.0..=1.0).contains(cc));
        }
    }

    #[test]
    fn topsis_symmetric_pair_ties_by_id() {
        let m = matrix(
            vec![vec![1.0, 2.0], vec![2.0, 1.0]],
            &[Direction::Cost, Direction::Cost],
            &[0.5, 0.5],
        );
        let (ranking, _) = topsis_rank(&m).unwrap();
        assert_eq!(ranking.entries[0].job, JobId(1));
        assert_eq!(ranking.entries[1].job, JobId(2));
        assert_eq!(ranking.entries[0].score, ranking.entries[1].score);
        assert_eq!(ranking.tied_groups, vec![vec![JobId(1), JobId(2)]]);
    }

    #[test]
    fn topsis_identical_rows_rank_by_id() {
        let m = matrix(
            vec![vec![3.0, 4.0]; 3],
            &[Direction::Cost, Direction::Benefit],
            &[0.6, 0.4],
        );
        let (ranking, _) = topsis_rank(&m).unwrap();
        let ranks: Vec<usize> = ranking.entries.iter().map(|e| e.rank).collect();
        assert_eq!(ranks, vec![1, 2, 3]);
        let jobs: Vec<JobId> = ranking.entries.iter().map(|e| e.job).collect();
        assert_eq!(jobs, vec![JobId(1), JobId(2), JobId(3)]);
    }

    #[test]
    fn topsis_single_row_scores_one() {
        let m = matrix(vec![vec![5.0]], &[Direction::Cost], &[1.0]);
        let (ranking, trace) = topsis_rank(&m).unwrap();
        assert_eq!(trace.closeness, vec![1.0]);
        assert_eq!(ranking.entries[0].rank, 1);
    }

    #[test]
    fn topsis_zero_norm_column_is_flagged() {
        let m = matrix(
            vec![vec![0.0, 1.0], vec![0.0, 2.0]],
            &[Direction::Cost, Direction::Cost],
            &[0.5, 0.5],
        );
        let (ranking, trace) = topsis_rank(&m).unwrap();
        assert_eq!(trace.zero_norm_columns, vec![0]);
        assert_eq!(ranking.first(), JobId(1));
    }

    #[test]
    fn edas_fixture_scores_and_ranks() {
        let (ranking, trace) = edas_rank(&fixture_matrix(), EdasVariant::Standard).unwrap();
        let expected_as = [
            0.3622124831375117,
            0.788035446481986,
            0.31879689534644096,
            0.6435700446425658,
            0.0,
            0.6286451330005232,
            1.0,
            0.5212179300711827,
            0.5525421626717509,
            0.4854799905186559,
        ];
        for (got, want) in trace.appraisal.iter().zip(expected_as) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
        let rows: Vec<JobId> = (1..=10).map(JobId).collect();
        assert_eq!(
            ranking.rank_vector(&rows),
            vec![8, 2, 9, 3, 10, 4, 1, 6, 5, 7]
        );
        assert_eq!(ranking.first(), JobId(7));
    }

    #[test]
    fn edas_pda_nda_are_exclusive() {
        let (_, trace) = edas_rank(&fixture_matrix(), EdasVariant::Standard).unwrap();
        for (prow, nrow) in trace.pda.iter().zip(&trace.nda) {
            for (&p, &q) in prow.iter().zip(nrow) {
                assert!(p >= 0.0 && q >= 0.0);
                assert_eq!(p * q, 0.0);
            }
        }
    }

    #[test]
    fn edas_average_row_scores_from_nsn_only() {
        // Row 2 sits exactly on the column averages.
        let m = matrix(
            vec![vec![1.0, 10.0], vec![2.0, 20.0], vec![3.0, 30.0]],
            &[Direction::Cost, Direction::Cost],
            &[0.5, 0.5],
        );
        let (_, trace) = edas_rank(&m, EdasVariant::Standard).unwrap();
        assert_eq!(trace.pda[1], vec![0.0, 0.0]);
        assert_eq!(trace.nda[1], vec![0.0, 0.0]);
        assert_eq!(trace.appraisal[1], 0.5); // NSP 0, NSN 1
    }

    #[test]
    fn edas_cost_order_small_first() {
        let m = matrix(
            vec![vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]],
            &[Direction::Cost, Direction::Cost],
            &[0.5, 0.5],
        );
        let (ranking, trace) = edas_rank(&m, EdasVariant::Standard).unwrap();
        assert_eq!(trace.appraisal, vec![1.0, 0.5, 0.0]);
        let jobs: Vec<JobId> = ranking.entries.iter().map(|e| e.job).collect();
        assert_eq!(jobs, vec![JobId(1), JobId(2), JobId(3)]);
    }

    #[test]
    fn edas_zero_average_is_an_error() {
        let m = matrix(
            vec![vec![-1.0, 1.0], vec![1.0, 2.0]],
            &[Direction::Cost, Direction::Cost],
            &[0.5, 0.5],
        );
        let err = edas_rank(&m, EdasVariant::Standard).unwrap_err();
        assert!(
            matches!(&err, Error::Ranking(msg) if msg.contains("process_time")),
            "{err:?}"
        );
    }

    #[test]
    fn cp_fixture_distances_and_ranks() {
        let (ranking, trace) = cp_rank(&fixture_matrix(), CpExponent::Finite(2.0)).unwrap();
        let expected_l = [
            0.6458987065146727,
            0.20930237326317772,
            0.7157861525281805,
            0.35112313230229353,
            1.0,
            0.48060972353070186,
            0.0,
            0.46367994195938034,
            0.5017809446088616,
            0.5446553597928953,
        ];
        for (got, want) in trace.distances.iter().zip(expected_l) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
        let rows: Vec<JobId> = (1..=10).map(JobId).collect();
        assert_eq!(
            ranking.rank_vector(&rows),
            vec![8, 2, 9, 3, 10, 5, 1, 4, 6, 7]
        );
        assert_eq!(ranking.first(), JobId(7));
        // J7 sits at the ideal point in every criterion.
        assert_eq!(trace.distances[6], 0.0);
    }

    #[test]
    fn cp_infinity_takes_max_weighted_deviation() {
        let (ranking, trace) = cp_rank(&fixture_matrix(), CpExponent::Infinity).unwrap();
        let expected = [
            0.2454545454545454,
            0.1227272727272727,
            0.4090909090909092,
            0.2045454545454546,
            0.45,
            0.15,
            0.0,
            0.1588888888888889,
            0.15,
            0.16363636363636364,
        ];
        for (got, want) in trace.distances.iter().zip(expected) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
        let rows: Vec<JobId> = (1..=10).map(JobId).collect();
        assert_eq!(
            ranking.rank_vector(&rows),
            vec![8, 2, 9, 7, 10, 3, 1, 5, 4, 6]
        );
    }

    #[test]
    fn cp_two_point_line() {
        let m = matrix(vec![vec![1.0], vec![3.0]], &[Direction::Cost], &[1.0]);
        let (ranking, trace) = cp_rank(&m, CpExponent::Finite(1.0)).unwrap();
        assert_eq!(trace.distances, vec![0.0, 1.0]);
        assert_eq!(ranking.rank_of(JobId(1)), Some(1));
        assert_eq!(ranking.rank_of(JobId(2)), Some(2));
    }

    #[test]
    fn cp_constant_column_contributes_nothing() {
        let m = matrix(
            vec![vec![4.0, 1.0], vec![4.0, 2.0]],
            &[Direction::Cost, Direction::Cost],
            &[0.9, 0.1],
        );
        let (_, trace) = cp_rank(&m, CpExponent::Finite(2.0)).unwrap();
        assert_eq!(trace.constant_columns, vec![0]);
        assert!((trace.distances[1] - (0.1f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn cp_rejects_exponent_below_one() {
        let m = matrix(vec![vec![1.0]], &[Direction::Cost], &[1.0]);
        assert!(cp_rank(&m, CpExponent::Finite(0.5)).is_err());
    }

    #[test]
    fn promethee_three_alternative_chain() {
        let m = matrix(
            vec![vec![1.0], vec![2.0], vec![3.0]],
            &[Direction::Cost],
            &[1.0],
        );
        let (ranking, trace) = promethee_rank(&m, PreferenceFunction::Usual).unwrap();
        assert_eq!(trace.phi, vec![2.0, 0.0, -2.0]);
        assert!(trace.phi.iter().sum::<f64>().abs() < 1e-12);
        let jobs: Vec<JobId> = ranking.entries.iter().map(|e| e.job).collect();
        assert_eq!(jobs, vec![JobId(1), JobId(2), JobId(3)]);
    }

    #[test]
    fn promethee_identical_pair_ties() {
        let m = matrix(
            vec![vec![2.0, 3.0], vec![2.0, 3.0]],
            &[Direction::Cost, Direction::Benefit],
            &[0.5, 0.5],
        );
        let (ranking, trace) = promethee_rank(&m, PreferenceFunction::Usual).unwrap();
        assert_eq!(trace.phi, vec![0.0, 0.0]);
        assert_eq!(ranking.entries[0].job, JobId(1));
        assert_eq!(ranking.tied_groups.len(), 1);
    }

    #[test]
    fn promethee_fixture_flows() {
        // Fixture matrix with the four due-date/setup adjustments of the
        // worked example variant.
        let mut values: Vec<Vec<f64>> = FIXTURE_ROWS.iter().map(|r| r.to_vec()).collect();
        values[0][1] = 50.0;
        values[0][3] = 1.4;
        values[1][1] = 38.0;
        values[3][1] = 41.0;
        values[5][3] = 1.4;
        values[6][3] = 1.0;
        values[7][1] = 50.0;
        values[7][3] = 1.7;
        values[9][1] = 47.0;
        values[9][3] = 1.3;
        let m = matrix(
            values,
            &[Direction::Cost; 5],
            &[0.10, 0.26, 0.15, 0.04, 0.45],
        );
        let (ranking, trace) = promethee_rank(&m, PreferenceFunction::Usual).unwrap();
        let expected_phi = [
            -5.04, 4.41, -3.78, 1.28, -8.36, 3.19, 7.95, 0.42, 1.21, -1.28,
        ];
        for (got, want) in trace.phi.iter().zip(expected_phi) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
        let rows: Vec<JobId> = (1..=10).map(JobId).collect();
        assert_eq!(
            ranking.rank_vector(&rows),
            vec![9, 2, 8, 4, 10, 3, 1, 6, 5, 7]
        );
        assert_eq!(ranking.first(), JobId(7));
    }

    #[test]
    fn promethee_single_row_gets_zero_flow() {
        let m = matrix(vec![vec![1.0]], &[Direction::Cost], &[1.0]);
        let (ranking, trace) = promethee_rank(&m, PreferenceFunction::Usual).unwrap();
        assert_eq!(trace.phi, vec![0.0]);
        assert_eq!(ranking.entries[0].rank, 1);
    }

    #[test]
    fn promethee_linear_preference_ramps() {
        let pref = PreferenceFunction::Linear {
            indifference: 1.0,
            preference: 3.0,
        };
        assert_eq!(pref.evaluate(0.5).unwrap(), 0.0);
        assert_eq!(pref.evaluate(1.0).unwrap(), 0.0);
        assert_eq!(pref.evaluate(2.0).unwrap(), 0.5);
        assert_eq!(pref.evaluate(4.0).unwrap(), 1.0);
        let step = PreferenceFunction::Linear {
            indifference: 1.0,
            preference: 1.0,
        };
        assert_eq!(step.evaluate(1.0).unwrap(), 0.0);
        assert_eq!(step.evaluate(1.1).unwrap(), 1.0);
    }

    #[test]
    fn promethee_invalid_thresholds_error() {
        let m = matrix(vec![vec![1.0], vec![2.0]], &[Direction::Cost], &[1.0]);
        let bad = PreferenceFunction::Linear {
            indifference: 2.0,
            preference: 1.0,
        };
        assert!(promethee_rank(&m, bad).is_err());
    }

    #[test]
    fn all_four_methods_agree_on_fixture_leader() {
        let m = fixture_matrix();
        let opts = McdmOptions::default();
        for method in [Method::Topsis, Method::Edas, Method::Cp, Method::Promethee] {
            let ranking = rank_with(method, &m, &opts).unwrap();
            assert_eq!(ranking.first(), JobId(7), "{method}");
        }
    }

    #[test]
    fn rank_from_scores_basics() {
        let scores = [(JobId(1), 0.3), (JobId(2), 0.7)];
        let r = rank_from_scores(Method::Topsis, &scores, Orientation::Descending).unwrap();
        assert_eq!(r.rank_of(JobId(2)), Some(1));
        assert_eq!(r.rank_of(JobId(1)), Some(2));

        let tied = [(JobId(1), 0.5), (JobId(2), 0.5)];
        let r = rank_from_scores(Method::Topsis, &tied, Orientation::Descending).unwrap();
        assert_eq!(r.rank_of(JobId(1)), Some(1));
        assert_eq!(r.rank_of(JobId(2)), Some(2));

        let nan = [(JobId(1), f64::NAN)];
        assert!(rank_from_scores(Method::Topsis, &nan, Orientation::Ascending).is_err());
    }

    #[test]
    fn rank_from_scores_matches_naive_sort() {
        let scores = [
            (JobId(4), 0.21),
            (JobId(1), 0.78),
            (JobId(5), 0.21),
            (JobId(2), 0.95),
            (JobId(3), 0.05),
        ];
        let r = rank_from_scores(Method::Cp, &scores, Orientation::Ascending).unwrap();
        let mut naive: Vec<(JobId, f64)> = scores.to_vec();
        naive.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        for (ix, (job, _)) in naive.iter().enumerate() {
            assert_eq!(r.rank_of(*job), Some(ix + 1));
        }
    }
}
