//! Rule-by-pattern sweeps, weight-sensitivity sweeps, and the grouped
//! statistics that compare the MCDM rules against the CDR pool.

use anyhow::{bail, Context, Result};

use pfjss_core::criteria::{CriteriaWeights, CriterionKind};
use pfjss_core::rules::RuleId;
use pfjss_core::sim::{arrival_times, run, ArrivalPattern, Metrics};
use pfjss_core::stats::{independent_t_test, one_way_anova, AnovaResult, TTestResult};
use pfjss_core::validate::validate;

use crate::config::Scenario;

/// The four reported performance measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Makespan,
    MeanFlowTime,
    MeanTardiness,
    MaxTardiness,
}

impl Measure {
    pub const ALL: [Measure; 4] = [
        Measure::Makespan,
        Measure::MeanFlowTime,
        Measure::MeanTardiness,
        Measure::MaxTardiness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Makespan => "makespan",
            Measure::MeanFlowTime => "mean_flow_time",
            Measure::MeanTardiness => "mean_tardiness",
            Measure::MaxTardiness => "max_tardiness",
        }
    }

    pub fn of(self, m: &Metrics) -> f64 {
        match self {
            Measure::Makespan => m.makespan,
            Measure::MeanFlowTime => m.mean_flow_time,
            Measure::MeanTardiness => m.mean_tardiness,
            Measure::MaxTardiness => m.max_tardiness,
        }
    }

    pub fn of_mean(self, m: &MeanMetrics) -> f64 {
        match self {
            Measure::Makespan => m.makespan,
            Measure::MeanFlowTime => m.mean_flow_time,
            Measure::MeanTardiness => m.mean_tardiness,
            Measure::MaxTardiness => m.max_tardiness,
        }
    }
}

/// Metrics averaged over replications; `late_jobs` becomes a mean count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanMetrics {
    pub makespan: f64,
    pub mean_flow_time: f64,
    pub mean_tardiness: f64,
    pub max_tardiness: f64,
    pub late_jobs: f64,
}

pub fn mean_metrics(samples: &[Metrics]) -> MeanMetrics {
    let n = samples.len() as f64;
    MeanMetrics {
        makespan: samples.iter().map(|m| m.makespan).sum::<f64>() / n,
        mean_flow_time: samples.iter().map(|m| m.mean_flow_time).sum::<f64>() / n,
        mean_tardiness: samples.iter().map(|m| m.mean_tardiness).sum::<f64>() / n,
        max_tardiness: samples.iter().map(|m| m.max_tardiness).sum::<f64>() / n,
        late_jobs: samples.iter().map(|m| m.late_jobs as f64).sum::<f64>() / n,
    }
}

/// One (pattern, rule) sweep cell with its replication results.
#[derive(Debug, Clone)]
pub struct Cell {
    pub pattern: ArrivalPattern,
    pub rule: RuleId,
    pub per_seed: Vec<(u64, Metrics)>,
    pub mean: MeanMetrics,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub scenario: String,
    pub patterns: Vec<ArrivalPattern>,
    pub rules: Vec<RuleId>,
    /// Pattern-major, rule-minor; same order as the config lists.
    pub cells: Vec<Cell>,
}

impl ExperimentReport {
    /// Smallest mean of `measure` among a pattern's rules.
    pub fn best(&self, pattern: ArrivalPattern, measure: Measure) -> f64 {
        self.cells
            .iter()
            .filter(|c| c.pattern == pattern)
            .map(|c| measure.of_mean(&c.mean))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Percentage above the per-pattern best; equal values count as 0 even when
/// the best is 0.
pub fn deviation_pct(value: f64, best: f64) -> f64 {
    if value == best {
        0.0
    } else if best == 0.0 {
        f64::INFINITY
    } else {
        (value - best) / best * 100.0
    }
}

/// Run the full rule-by-pattern sweep. Every trace is validated before its
/// metrics count; any violation aborts the experiment.
pub fn run_experiment(scenario: &Scenario) -> Result<ExperimentReport> {
    run_experiment_with_weights(scenario, &scenario.weights)
}

fn run_experiment_with_weights(
    scenario: &Scenario,
    weights: &CriteriaWeights,
) -> Result<ExperimentReport> {
    let n = scenario.instance.job_count();
    let mut cells = Vec::with_capacity(scenario.patterns.len() * scenario.rules.len());
    for &pattern in &scenario.patterns {
        for &rule in &scenario.rules {
            let mut per_seed = Vec::with_capacity(scenario.seeds.len());
            for &seed in &scenario.seeds {
                let plan = arrival_times(pattern, n, scenario.horizon, seed)?;
                let (trace, metrics) =
                    run(&scenario.instance, rule, &plan, seed, weights, &scenario.sim)
                        .with_context(|| format!("rule {rule}, pattern {pattern}, seed {seed}"))?;
                let report = validate(&trace, &scenario.instance)?;
                if !report.is_feasible() {
                    let detail: Vec<String> =
                        report.violations.iter().map(|v| v.to_string()).collect();
                    bail!(
                        "rule {rule}, pattern {pattern}, seed {seed} produced an invalid \
                         schedule:\n{}",
                        detail.join("\n")
                    );
                }
                per_seed.push((seed, metrics));
            }
            let samples: Vec<Metrics> = per_seed.iter().map(|&(_, m)| m).collect();
            cells.push(Cell {
                pattern,
                rule,
                mean: mean_metrics(&samples),
                per_seed,
            });
        }
    }
    Ok(ExperimentReport {
        scenario: scenario.name.clone(),
        patterns: scenario.patterns.clone(),
        rules: scenario.rules.clone(),
        cells,
    })
}

/// Per-replication rows.
pub fn metrics_csv(report: &ExperimentReport) -> String {
    let mut out = String::from(
        "scenario,pattern,rule,seed,makespan,mean_flow_time,mean_tardiness,max_tardiness,late_jobs\n",
    );
    for cell in &report.cells {
        for &(seed, m) in &cell.per_seed {
            out.push_str(&format!(
                "{},{},{},{seed},{},{},{},{},{}\n",
                report.scenario,
                cell.pattern,
                cell.rule,
                m.makespan,
                m.mean_flow_time,
                m.mean_tardiness,
                m.max_tardiness,
                m.late_jobs
            ));
        }
    }
    out
}

/// Aggregated rows with per-pattern best annotations and deviations.
pub fn report_csv(report: &ExperimentReport) -> String {
    let mut out = String::from(
        "scenario,pattern,rule,replications,makespan,makespan_dev_pct,mean_flow_time,\
         mean_flow_time_dev_pct,mean_tardiness,mean_tardiness_dev_pct,max_tardiness,\
         max_tardiness_dev_pct,late_jobs,best\n",
    );
    for cell in &report.cells {
        let mut best_at: Vec<&str> = Vec::new();
        let mut measure_fields = String::new();
        for measure in Measure::ALL {
            let value = measure.of_mean(&cell.mean);
            let best = report.best(cell.pattern, measure);
            if value == best {
                best_at.push(measure.name());
            }
            measure_fields.push_str(&format!("{value},{},", deviation_pct(value, best)));
        }
        out.push_str(&format!(
            "{},{},{},{},{measure_fields}{},{}\n",
            report.scenario,
            cell.pattern,
            cell.rule,
            cell.per_seed.len(),
            cell.mean.late_jobs,
            best_at.join(";")
        ));
    }
    out
}

/// Re-normalized weights for one sweep level: the target criterion takes
/// `level`, the rest split the remainder equally.
pub fn swept_weights(
    base: &CriteriaWeights,
    target: CriterionKind,
    level: f64,
) -> Result<CriteriaWeights> {
    let k = base.len();
    if k < 2 {
        bail!("weight sweep needs at least two criteria");
    }
    if !(level > 0.0 && level < 1.0) {
        bail!("sweep level {level} outside (0, 1)");
    }
    if !base.entries().iter().any(|e| e.kind == target) {
        bail!("criterion `{}` is not configured", target.name());
    }
    let rest = (1.0 - level) / (k - 1) as f64;
    let normalized: Vec<f64> = base
        .entries()
        .iter()
        .map(|e| if e.kind == target { level } else { rest })
        .collect();
    Ok(base.with_normalized(&normalized)?)
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub level: f64,
    pub others: f64,
    pub rule: RuleId,
    pub pattern: ArrivalPattern,
    pub replications: usize,
    pub mean: MeanMetrics,
}

/// Weight-sensitivity sweep over the configured MCDM rules.
pub fn weight_sweep(
    scenario: &Scenario,
    target: CriterionKind,
    levels: &[f64],
) -> Result<Vec<SweepRow>> {
    if levels.is_empty() {
        bail!("no sweep levels given");
    }
    let mcdm_rules: Vec<RuleId> = scenario
        .rules
        .iter()
        .copied()
        .filter(|r| r.is_mcdm())
        .collect();
    if mcdm_rules.is_empty() {
        bail!("weight sweep needs at least one MCDM rule (C9..C12) in the rule list");
    }
    let mut rows = Vec::new();
    for &level in levels {
        let weights = swept_weights(&scenario.weights, target, level)?;
        let others = (1.0 - level) / (scenario.weights.len() - 1) as f64;
        let sub = Scenario {
            rules: mcdm_rules.clone(),
            ..scenario.clone()
        };
        let report = run_experiment_with_weights(&sub, &weights)?;
        for cell in &report.cells {
            rows.push(SweepRow {
                level,
                others,
                rule: cell.rule,
                pattern: cell.pattern,
                replications: cell.per_seed.len(),
                mean: cell.mean,
            });
        }
    }
    Ok(rows)
}

pub fn sweep_csv(scenario: &str, target: CriterionKind, rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "scenario,criterion,level,others_weight,rule,pattern,replications,makespan,\
         mean_flow_time,mean_tardiness,max_tardiness\n",
    );
    for row in rows {
        out.push_str(&format!(
            "{scenario},{},{},{},{},{},{},{},{},{},{}\n",
            target.name(),
            row.level,
            row.others,
            row.rule,
            row.pattern,
            row.replications,
            row.mean.makespan,
            row.mean.mean_flow_time,
            row.mean.mean_tardiness,
            row.mean.max_tardiness
        ));
    }
    out
}

/// One statistical comparison: the CDR pool against each MCDM rule.
#[derive(Debug, Clone)]
pub struct StatsReport {
    pub scenario: String,
    /// (measure, ANOVA over CDR pool + one group per MCDM rule).
    pub anova: Vec<(Measure, AnovaResult)>,
    /// (measure, MCDM rule, t-test of that rule against the CDR pool).
    pub ttests: Vec<(Measure, RuleId, TTestResult)>,
    /// Per-rule observation counts and means, every rule separate.
    pub group_means: Vec<(RuleId, usize, MeanMetrics)>,
}

/// Pool the non-MCDM rules into one "CDR" group, keep each MCDM rule as its
/// own group, then run ANOVA and per-MCDM t-tests on every measure. The
/// observations are the per-replication metrics across all patterns.
pub fn compare_rules(report: &ExperimentReport) -> Result<StatsReport> {
    let cdr_rules: Vec<RuleId> = report.rules.iter().copied().filter(|r| !r.is_mcdm()).collect();
    let mcdm_rules: Vec<RuleId> = report.rules.iter().copied().filter(|r| r.is_mcdm()).collect();
    if cdr_rules.is_empty() || mcdm_rules.is_empty() {
        bail!("comparison needs the CDR pool and at least one MCDM rule");
    }

    let observations = |rules: &[RuleId], measure: Measure| -> Vec<f64> {
        let mut values = Vec::new();
        for cell in &report.cells {
            if rules.contains(&cell.rule) {
                values.extend(cell.per_seed.iter().map(|(_, m)| measure.of(m)));
            }
        }
        values
    };

    let mut anova = Vec::new();
    let mut ttests = Vec::new();
    for measure in Measure::ALL {
        let cdr_pool = observations(&cdr_rules, measure);
        let mut groups: Vec<Vec<f64>> = vec![cdr_pool.clone()];
        for &rule in &mcdm_rules {
            groups.push(observations(&[rule], measure));
        }
        let result = one_way_anova(&groups)
            .with_context(|| format!("ANOVA on {}", measure.name()))?;
        anova.push((measure, result));
        for &rule in &mcdm_rules {
            let t = independent_t_test(&observations(&[rule], measure), &cdr_pool)
                .with_context(|| format!("t-test {} on {}", rule, measure.name()))?;
            ttests.push((measure, rule, t));
        }
    }

    let mut group_means = Vec::new();
    for &rule in &report.rules {
        let mut samples = Vec::new();
        for cell in &report.cells {
            if cell.rule == rule {
                samples.extend(cell.per_seed.iter().map(|&(_, m)| m));
            }
        }
        group_means.push((rule, samples.len(), mean_metrics(&samples)));
    }

    Ok(StatsReport {
        scenario: report.scenario.clone(),
        anova,
        ttests,
        group_means,
    })
}

pub fn anova_csv(stats: &StatsReport) -> String {
    let mut out = String::from("scenario,measure,source,sum_sq,df,mean_sq,f,sig\n");
    for (measure, a) in &stats.anova {
        let name = measure.name();
        out.push_str(&format!(
            "{0},{name},between_groups,{1},{2},{3},{4},{5}\n",
            stats.scenario, a.ss_between, a.df_between, a.ms_between, a.f_stat, a.p_value
        ));
        out.push_str(&format!(
            "{0},{name},within_groups,{1},{2},{3},,\n",
            stats.scenario, a.ss_within, a.df_within, a.ms_within
        ));
        out.push_str(&format!(
            "{0},{name},total,{1},{2},,,\n",
            stats.scenario,
            a.ss_between + a.ss_within,
            a.df_between + a.df_within
        ));
    }
    out
}

pub fn ttests_csv(stats: &StatsReport) -> String {
    let mut out = String::from(
        "scenario,measure,rule,mean_rule,mean_cdr,pooled_t,pooled_df,pooled_p,welch_t,\
         welch_df,welch_p\n",
    );
    for (measure, rule, t) in &stats.ttests {
        out.push_str(&format!(
            "{},{},{rule},{},{},{},{},{},{},{},{}\n",
            stats.scenario,
            measure.name(),
            t.mean_a,
            t.mean_b,
            t.pooled_t,
            t.pooled_df,
            t.pooled_p,
            t.welch_t,
            t.welch_df,
            t.welch_p
        ));
    }
    out
}

pub fn group_means_csv(stats: &StatsReport) -> String {
    let mut out = String::from(
        "scenario,rule,observations,makespan,mean_flow_time,mean_tardiness,max_tardiness,\
         late_jobs\n",
    );
    for (rule, count, mean) in &stats.group_means {
        out.push_str(&format!(
            "{},{rule},{count},{},{},{},{},{}\n",
            stats.scenario,
            mean.makespan,
            mean.mean_flow_time,
            mean.mean_tardiness,
            mean.max_tardiness,
            mean.late_jobs
        ));
    }
    out
}
