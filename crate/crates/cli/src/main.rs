//! `pfjss`: batch runner for the dispatching-rule simulator.

mod config;
mod experiment;
mod gantt;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pfjss_core::criteria::CriterionKind;
use pfjss_core::instance::{
    extension_sidecar_string, flexibility_report, generate_synthetic, to_fjs_string, SynthSpec,
};
use pfjss_core::rules::RuleId;
use pfjss_core::sim::{arrival_times, run, ArrivalPlan, ScheduleTrace};
use pfjss_core::validate::{metrics_oracle, validate};

use config::{parse_range, Overrides, Scenario};
use experiment::Measure;

/// Line printer that exits quietly when the reader closes the pipe, so
/// `pfjss ... | head` ends without a panic.
fn say_line(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let written = out.write_fmt(args).and_then(|()| out.write_all(b"\n"));
    if let Err(e) = written {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

macro_rules! say {
    ($($arg:tt)*) => { crate::say_line(format_args!($($arg)*)) };
}

#[derive(Parser)]
#[command(
    name = "pfjss",
    version,
    about = "Dispatching-rule experiments for partially flexible job shops"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Run the configured rule-by-pattern sweep and write metrics + report CSVs.
    Run(RunArgs),
    /// Sensitivity sweep: vary one criterion weight, splitting the rest equally.
    SweepWeights(SweepArgs),
    /// Check a trace CSV against an instance and print violations.
    Validate(ValidateArgs),
    /// Simulate one cell and export an SVG Gantt chart with its CSV twin.
    Gantt(GanttArgs),
    /// Run the sweep, then ANOVA + t-tests of each MCDM rule vs the CDR pool.
    Compare(CompareArgs),
    /// List the built-in dispatching rules.
    ListRules,
    /// Generate a synthetic instance file plus its extension sidecar.
    Synth(SynthArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Scenario TOML file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Instance file (Brandimarte text format); overrides the config.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Comma-separated rule ids (C1..C12, SPT, EDD, FIFO); overrides the config.
    #[arg(long)]
    rules: Option<String>,
    /// Comma-separated arrival patterns; overrides the config.
    #[arg(long)]
    pattern: Option<String>,
    /// Single replication seed; overrides the config seed list.
    #[arg(long)]
    seed: Option<u64>,
    /// Due-date range `lo,hi` when the instance has no sidecar.
    #[arg(long, value_parser = parse_range)]
    due_range: Option<(f64, f64)>,
    /// Setup-time range `lo,hi` when the instance has no sidecar.
    #[arg(long, value_parser = parse_range)]
    setup_range: Option<(f64, f64)>,
    /// Arrival horizon for the dynamic patterns.
    #[arg(long)]
    horizon: Option<f64>,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

impl CommonArgs {
    fn scenario(&self) -> Result<Scenario> {
        let overrides = Overrides {
            instance: self.instance.clone(),
            rules: self.rules.clone(),
            patterns: self.pattern.clone(),
            seed: self.seed,
            due_range: self.due_range,
            setup_range: self.setup_range,
            horizon: self.horizon,
        };
        Scenario::resolve(self.config.as_deref(), &overrides)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Criterion to sweep (process_time, due_date, operations, setup_time, strop).
    #[arg(long)]
    criterion: String,
    /// Comma-separated levels in (0, 1); default 0.1 through 0.9.
    #[arg(long)]
    levels: Option<String>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Trace CSV produced by `gantt` (or any `job,op,machine,...` trace).
    #[arg(long)]
    trace: PathBuf,
    /// Arrival CSV (`job,arrival`) matching the trace.
    #[arg(long)]
    arrivals: PathBuf,
}

#[derive(Args)]
struct GanttArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    jobs: usize,
    #[arg(long)]
    machines: usize,
    /// Per-job operation count range `lo,hi`.
    #[arg(long)]
    ops: String,
    /// Per-operation alternative count range `lo,hi`.
    #[arg(long)]
    alts: String,
    /// Integer processing-time range `lo,hi`.
    #[arg(long)]
    ptime: String,
    /// Due-date range `lo,hi`.
    #[arg(long, value_parser = parse_range)]
    due: (f64, f64),
    /// Setup-time range `lo,hi`.
    #[arg(long, value_parser = parse_range)]
    setup: (f64, f64),
    /// Exact total operation count across all jobs.
    #[arg(long)]
    total_ops: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output path stem; writes `<stem>.fjs` and `<stem>.ext.csv`.
    #[arg(long)]
    out: PathBuf,
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory `{}`", dir.display()))?;
    let path = dir.join(name);
    std::fs::write(&path, content).with_context(|| format!("writing `{}`", path.display()))?;
    Ok(path)
}

fn parse_usize_range(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = parse_range(text)?;
    if lo.fract() != 0.0 || hi.fract() != 0.0 || lo < 0.0 || hi < 0.0 {
        bail!("expected non-negative integers, got `{text}`");
    }
    Ok((lo as usize, hi as usize))
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let scenario = args.common.scenario()?;
    let report = experiment::run_experiment(&scenario)?;
    let metrics = write_file(
        &args.common.out_dir,
        "metrics.csv",
        &experiment::metrics_csv(&report),
    )?;
    let summary = write_file(
        &args.common.out_dir,
        "report.csv",
        &experiment::report_csv(&report),
    )?;
    say!(
        "{}: {} cells x {} seeds",
        report.scenario,
        report.cells.len(),
        scenario.seeds.len()
    );
    for &pattern in &report.patterns {
        for measure in Measure::ALL {
            let best = report.best(pattern, measure);
            let holder = report
                .cells
                .iter()
                .find(|c| c.pattern == pattern && measure.of_mean(&c.mean) == best)
                .expect("best value comes from some cell");
            say!("  {pattern} best {}: {} ({best:.3})", measure.name(), holder.rule);
        }
    }
    say!("wrote {}", metrics.display());
    say!("wrote {}", summary.display());
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let scenario = args.common.scenario()?;
    let criterion = CriterionKind::parse(args.criterion.trim())?;
    let levels: Vec<f64> = match &args.levels {
        Some(text) => text
            .split(',')
            .map(|s| s.trim().parse::<f64>().context("malformed sweep level"))
            .collect::<Result<_>>()?,
        None => (1..=9).map(|ix| ix as f64 / 10.0).collect(),
    };
    let rows = experiment::weight_sweep(&scenario, criterion, &levels)?;
    let path = write_file(
        &args.common.out_dir,
        "sweep.csv",
        &experiment::sweep_csv(&scenario.name, criterion, &rows),
    )?;
    say!(
        "swept {} over {} levels, {} rows",
        criterion.name(),
        levels.len(),
        rows.len()
    );
    say!("wrote {}", path.display());
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<()> {
    let scenario = args.common.scenario()?;
    let arrivals_text = std::fs::read_to_string(&args.arrivals)
        .with_context(|| format!("reading arrivals `{}`", args.arrivals.display()))?;
    let plan = ArrivalPlan::from_csv_str(&arrivals_text)?;
    let trace_text = std::fs::read_to_string(&args.trace)
        .with_context(|| format!("reading trace `{}`", args.trace.display()))?;
    let trace = ScheduleTrace::from_csv_str(
        &trace_text,
        plan.times.clone(),
        scenario.instance.due_dates.clone(),
    )?;
    let report = validate(&trace, &scenario.instance)?;
    if report.is_feasible() {
        let metrics = metrics_oracle(&trace, &trace.arrivals, &trace.due_dates)?;
        say!("feasible: {} rows", trace.rows.len());
        say!(
            "makespan {} mean_flow_time {} mean_tardiness {} max_tardiness {} late_jobs {}",
            metrics.makespan,
            metrics.mean_flow_time,
            metrics.mean_tardiness,
            metrics.max_tardiness,
            metrics.late_jobs
        );
        for note in &report.notes {
            say!("note: {note}");
        }
        Ok(())
    } else {
        for violation in &report.violations {
            eprintln!("violation: {violation}");
        }
        bail!("{} violations", report.violations.len());
    }
}

fn cmd_gantt(args: &GanttArgs) -> Result<()> {
    let scenario = args.common.scenario()?;
    let rule = scenario.rules[0];
    let pattern = scenario.patterns[0];
    let seed = scenario.seeds[0];
    let plan = arrival_times(pattern, scenario.instance.job_count(), scenario.horizon, seed)?;
    let (trace, metrics) = run(
        &scenario.instance,
        rule,
        &plan,
        seed,
        &scenario.weights,
        &scenario.sim,
    )?;
    let title = format!(
        "{}  rule {rule}, pattern {pattern}, seed {seed}, makespan {:.2}",
        scenario.name, metrics.makespan
    );
    let svg = gantt::render_svg(&trace, &scenario.instance, &title)?;
    let svg_path = write_file(&args.common.out_dir, "gantt.svg", &svg)?;
    let csv_path = write_file(&args.common.out_dir, "gantt.csv", &gantt::twin_csv(&trace))?;
    let arrivals_path = write_file(
        &args.common.out_dir,
        "arrivals.csv",
        &plan.to_csv_string(),
    )?;
    say!(
        "{}: rule {rule}, pattern {pattern}, seed {seed}, {} rows, makespan {}",
        scenario.name,
        trace.rows.len(),
        metrics.makespan
    );
    say!("wrote {}", svg_path.display());
    say!("wrote {}", csv_path.display());
    say!("wrote {}", arrivals_path.display());
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let scenario = args.common.scenario()?;
    let report = experiment::run_experiment(&scenario)?;
    let stats = experiment::compare_rules(&report)?;
    let paths = [
        write_file(
            &args.common.out_dir,
            "metrics.csv",
            &experiment::metrics_csv(&report),
        )?,
        write_file(
            &args.common.out_dir,
            "report.csv",
            &experiment::report_csv(&report),
        )?,
        write_file(&args.common.out_dir, "anova.csv", &experiment::anova_csv(&stats))?,
        write_file(&args.common.out_dir, "ttests.csv", &experiment::ttests_csv(&stats))?,
        write_file(
            &args.common.out_dir,
            "group_means.csv",
            &experiment::group_means_csv(&stats),
        )?,
    ];
    for (measure, a) in &stats.anova {
        say!(
            "{}: F({}, {}) = {:.4}, sig = {:.4}",
            measure.name(),
            a.df_between,
            a.df_within,
            a.f_stat,
            a.p_value
        );
    }
    for path in &paths {
        say!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_list_rules() {
    say!("{:<6} {:<10} description", "rule", "kind");
    for rule in RuleId::ALL {
        let kind = if rule.is_mcdm() {
            "mcdm"
        } else if rule.is_cdr() {
            "composite"
        } else {
            "simple"
        };
        say!("{:<6} {kind:<10} {}", rule.name(), rule.description());
    }
}

fn cmd_synth(args: &SynthArgs) -> Result<()> {
    let spec = SynthSpec {
        jobs: args.jobs,
        machines: args.machines,
        ops_range: parse_usize_range(&args.ops)?,
        alt_range: parse_usize_range(&args.alts)?,
        ptime_range: {
            let (lo, hi) = parse_usize_range(&args.ptime)?;
            (lo as u32, hi as u32)
        },
        due_range: args.due,
        setup_range: args.setup,
        total_ops: args.total_ops,
    };
    let ext = generate_synthetic(&spec, args.seed)?;
    let dir = args
        .out
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating `{}`", dir.display()))?;
    let stem = args.out.display();
    let fjs_path = PathBuf::from(format!("{stem}.fjs"));
    let ext_path = PathBuf::from(format!("{stem}.ext.csv"));
    std::fs::write(&fjs_path, to_fjs_string(&ext.base))?;
    std::fs::write(&ext_path, extension_sidecar_string(&ext))?;
    let flex = flexibility_report(&ext.base);
    say!(
        "{} jobs x {} machines, {} operations, flexibility {:.2}",
        ext.base.job_count(),
        ext.base.machine_count,
        ext.base.total_operations(),
        flex.mean_alternatives
    );
    say!("wrote {}", fjs_path.display());
    say!("wrote {}", ext_path.display());
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.verb {
        Verb::Run(args) => cmd_run(args),
        Verb::SweepWeights(args) => cmd_sweep(args),
        Verb::Validate(args) => cmd_validate(args),
        Verb::Gantt(args) => cmd_gantt(args),
        Verb::Compare(args) => cmd_compare(args),
        Verb::ListRules => {
            cmd_list_rules();
            Ok(())
        }
        Verb::Synth(args) => cmd_synth(args),
    }
}
