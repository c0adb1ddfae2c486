//! Scenario files: a flat TOML document describing the instance, the sweep
//! axes, the criterion weights, and the engine options.
//!
//! ```toml
//! [instance]
//! path = "data/mk01.fjs"
//! due_range = [16.0, 42.0]     # or sidecar = "data/mk01.ext.csv"
//! setup_range = [0.35, 1.14]
//! extension_seed = 0           # optional, default 0
//!
//! # alternative to `path`: generate on the fly
//! # [instance.synthetic]
//! # jobs = 10
//! # machines = 6
//! # ops_range = [5, 7]
//! # alt_range = [2, 4]
//! # ptime_range = [1, 7]
//! # due_range = [16.0, 42.0]
//! # setup_range = [0.35, 1.14]
//! # total_ops = 55             # optional
//! # seed = 1
//!
//! [experiment]
//! rules = ["C1", "C9"]
//! patterns = ["static", "random"]
//! horizon = 100.0              # optional, default 100
//! seeds = [1, 2, 3]
//!
//! [weights]                    # optional, defaults to the built-in table
//! process_time = { weight = 0.10, direction = "cost" }
//! due_date = { fuzzy = [0.7, 0.8, 0.9], direction = "cost" }
//!
//! [options]                    # every key optional
//! work_estimate = "min"        # or "mean"
//! edas_variant = "standard"    # or "paper"; `edas_as` is an accepted alias
//! cp_exponent = 2.0            # or "infinity"
//! preference = "usual"         # or { indifference = 0.1, preference = 0.5 }
//! fdd_factor = 1.5
//! rerank = "per-machine"       # or "global"
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use pfjss_core::criteria::{CriteriaWeights, CriterionKind, Direction, WorkEstimate};
use pfjss_core::instance::{
    attach_extensions, generate_synthetic, parse_extension_sidecar, parse_fjs, ExtendedInstance,
    SynthSpec,
};
use pfjss_core::mcdm::{CpExponent, EdasVariant, PreferenceFunction};
use pfjss_core::rules::RuleId;
use pfjss_core::sim::{ArrivalPattern, RerankScope, SimConfig};

/// A fully resolved experiment definition.
#[derive(Debug, Clone)]
pub struct Scenario {
    /// Instance file stem or "synthetic"; labels every output row.
    pub name: String,
    pub instance: ExtendedInstance,
    pub rules: Vec<RuleId>,
    pub patterns: Vec<ArrivalPattern>,
    pub horizon: f64,
    pub seeds: Vec<u64>,
    pub weights: CriteriaWeights,
    pub sim: SimConfig,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub instance: Option<PathBuf>,
    pub rules: Option<String>,
    pub patterns: Option<String>,
    pub seed: Option<u64>,
    pub due_range: Option<(f64, f64)>,
    pub setup_range: Option<(f64, f64)>,
    pub horizon: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    instance: Option<InstanceSection>,
    experiment: Option<ExperimentSection>,
    #[serde(default)]
    weights: BTreeMap<String, WeightEntry>,
    #[serde(default)]
    options: OptionsSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceSection {
    path: Option<PathBuf>,
    sidecar: Option<PathBuf>,
    due_range: Option<(f64, f64)>,
    setup_range: Option<(f64, f64)>,
    extension_seed: Option<u64>,
    synthetic: Option<SyntheticSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SyntheticSection {
    jobs: usize,
    machines: usize,
    ops_range: (usize, usize),
    alt_range: (usize, usize),
    ptime_range: (u32, u32),
    due_range: (f64, f64),
    setup_range: (f64, f64),
    total_ops: Option<usize>,
    #[serde(default)]
    seed: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentSection {
    rules: Option<Vec<String>>,
    patterns: Option<Vec<String>>,
    horizon: Option<f64>,
    seeds: Option<Vec<u64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightEntry {
    weight: Option<f64>,
    fuzzy: Option<(f64, f64, f64)>,
    direction: Option<Direction>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptionsSection {
    work_estimate: Option<WorkEstimate>,
    #[serde(alias = "edas_as")]
    edas_variant: Option<EdasVariant>,
    cp_exponent: Option<CpExponentToml>,
    preference: Option<PreferenceToml>,
    fdd_factor: Option<f64>,
    rerank: Option<RerankScope>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum CpExponentToml {
    Number(f64),
    Name(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PreferenceToml {
    Name(String),
    Linear { indifference: f64, preference: f64 },
}

/// The crisp weight table used when a scenario does not configure weights.
pub fn default_weights() -> CriteriaWeights {
    CriteriaWeights::from_crisp(&[
        (CriterionKind::ProcessTime, 0.10, Direction::Cost),
        (CriterionKind::DueDate, 0.26, Direction::Cost),
        (CriterionKind::Operations, 0.15, Direction::Cost),
        (CriterionKind::SetupTime, 0.04, Direction::Cost),
        (CriterionKind::Strop, 0.45, Direction::Cost),
    ])
    .expect("builtin weight table is valid")
}

pub fn parse_rule_list(text: &str) -> Result<Vec<RuleId>> {
    let mut rules = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        rules.push(RuleId::parse(part)?);
    }
    if rules.is_empty() {
        bail!("empty rule list");
    }
    Ok(rules)
}

pub fn parse_pattern_list(text: &str) -> Result<Vec<ArrivalPattern>> {
    let mut patterns = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        patterns.push(ArrivalPattern::parse(part)?);
    }
    if patterns.is_empty() {
        bail!("empty pattern list");
    }
    Ok(patterns)
}

/// `lo,hi` pair for range-valued flags.
pub fn parse_range(text: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        bail!("expected `lo,hi`, got `{text}`");
    }
    let lo: f64 = parts[0].parse().context("range low bound")?;
    let hi: f64 = parts[1].parse().context("range high bound")?;
    Ok((lo, hi))
}

fn build_weights(entries: &BTreeMap<String, WeightEntry>) -> Result<CriteriaWeights> {
    if entries.is_empty() {
        return Ok(default_weights());
    }
    let mut items: Vec<(CriterionKind, (f64, f64, f64), Direction)> = Vec::new();
    let mut any_fuzzy = false;
    for kind in CriterionKind::ALL {
        let Some(entry) = entries.get(kind.name()) else {
            continue;
        };
        let direction = entry.direction.unwrap_or(Direction::Cost);
        let triple = match (entry.weight, entry.fuzzy) {
            (Some(_), Some(_)) => {
                bail!("criterion `{}` sets both `weight` and `fuzzy`", kind.name())
            }
            // A crisp value mixed into a fuzzy table acts as the degenerate
            // triangle (w, w, w).
            (Some(w), None) => (w, w, w),
            (None, Some(f)) => {
                any_fuzzy = true;
                f
            }
            (None, None) => bail!("criterion `{}` needs `weight` or `fuzzy`", kind.name()),
        };
        items.push((kind, triple, direction));
    }
    if items.len() != entries.len() {
        let known: Vec<&str> = CriterionKind::ALL.iter().map(|k| k.name()).collect();
        bail!("unknown criterion key in [weights]; known: {}", known.join(", "));
    }
    let weights = if any_fuzzy {
        CriteriaWeights::from_fuzzy(&items)?
    } else {
        let crisp: Vec<(CriterionKind, f64, Direction)> =
            items.iter().map(|&(k, (_, m, _), d)| (k, m, d)).collect();
        CriteriaWeights::from_crisp(&crisp)?
    };
    Ok(weights)
}

fn build_sim_config(options: &OptionsSection) -> Result<SimConfig> {
    let mut sim = SimConfig::default();
    if let Some(we) = options.work_estimate {
        sim.work_estimate = we;
    }
    if let Some(scope) = options.rerank {
        sim.rerank = scope;
    }
    sim.fdd_factor = options.fdd_factor;
    if let Some(variant) = options.edas_variant {
        sim.mcdm.edas_variant = variant;
    }
    match &options.cp_exponent {
        Some(CpExponentToml::Number(p)) => sim.mcdm.cp_exponent = CpExponent::Finite(*p),
        Some(CpExponentToml::Name(name)) => {
            if name.eq_ignore_ascii_case("infinity") {
                sim.mcdm.cp_exponent = CpExponent::Infinity;
            } else {
                bail!("cp_exponent must be a number or \"infinity\", got `{name}`");
            }
        }
        None => {}
    }
    match &options.preference {
        Some(PreferenceToml::Name(name)) => {
            if name.eq_ignore_ascii_case("usual") {
                sim.mcdm.preference = PreferenceFunction::Usual;
            } else {
                bail!("preference must be \"usual\" or a q/s table, got `{name}`");
            }
        }
        Some(PreferenceToml::Linear {
            indifference,
            preference,
        }) => {
            sim.mcdm.preference = PreferenceFunction::Linear {
                indifference: *indifference,
                preference: *preference,
            };
        }
        None => {}
    }
    Ok(sim)
}

fn load_instance(
    section: &InstanceSection,
    overrides: &Overrides,
) -> Result<(String, ExtendedInstance)> {
    if let Some(spec) = &section.synthetic {
        if section.path.is_some() || overrides.instance.is_some() {
            bail!("[instance] cannot set both `path` and `synthetic`");
        }
        let synth = SynthSpec {
            jobs: spec.jobs,
            machines: spec.machines,
            ops_range: spec.ops_range,
            alt_range: spec.alt_range,
            ptime_range: spec.ptime_range,
            due_range: spec.due_range,
            setup_range: spec.setup_range,
            total_ops: spec.total_ops,
        };
        let inst = generate_synthetic(&synth, spec.seed)?;
        return Ok(("synthetic".into(), inst));
    }

    let path = overrides
        .instance
        .as_ref()
        .or(section.path.as_ref())
        .context("no instance: pass --instance or set [instance] path/synthetic")?;
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading instance `{}`", path.display()))?;
    let base = parse_fjs(&text)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());

    let due_range = overrides.due_range.or(section.due_range);
    let setup_range = overrides.setup_range.or(section.setup_range);
    let ext = match (&section.sidecar, due_range, setup_range) {
        (Some(sidecar), None, None) => {
            let sidecar_text = std::fs::read_to_string(sidecar)
                .with_context(|| format!("reading sidecar `{}`", sidecar.display()))?;
            parse_extension_sidecar(base, &sidecar_text)?
        }
        (Some(_), _, _) => bail!("set either `sidecar` or due/setup ranges, not both"),
        (None, Some(due), Some(setup)) => {
            let seed = section.extension_seed.unwrap_or(0);
            attach_extensions(base, due, setup, seed)?
        }
        (None, _, _) => {
            // Convention: a sibling `<stem>.ext.csv` pins the extensions.
            let implied = path.with_extension("ext.csv");
            if implied.is_file() {
                let sidecar_text = std::fs::read_to_string(&implied)
                    .with_context(|| format!("reading sidecar `{}`", implied.display()))?;
                parse_extension_sidecar(base, &sidecar_text)?
            } else {
                bail!(
                    "instance `{}` has no due/setup data: set due_range and setup_range, \
                     a sidecar, or create `{}`",
                    path.display(),
                    implied.display()
                );
            }
        }
    };
    Ok((name, ext))
}

impl Scenario {
    /// Load `config_path` (when given) and apply command-line overrides.
    pub fn resolve(config_path: Option<&Path>, overrides: &Overrides) -> Result<Scenario> {
        let file: ConfigFile = match config_path {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config `{}`", path.display()))?;
                toml::from_str(&text)
                    .with_context(|| format!("parsing config `{}`", path.display()))?
            }
            None => ConfigFile {
                instance: None,
                experiment: None,
                weights: BTreeMap::new(),
                options: OptionsSection::default(),
            },
        };

        let instance_section = file.instance.unwrap_or_default();
        let (name, instance) = load_instance(&instance_section, overrides)?;

        let experiment = file.experiment.unwrap_or(ExperimentSection {
            rules: None,
            patterns: None,
            horizon: None,
            seeds: None,
        });
        let rules = match (&overrides.rules, &experiment.rules) {
            (Some(text), _) => parse_rule_list(text)?,
            (None, Some(list)) => parse_rule_list(&list.join(","))?,
            (None, None) => RuleId::COMPOSITE.to_vec(),
        };
        let patterns = match (&overrides.patterns, &experiment.patterns) {
            (Some(text), _) => parse_pattern_list(text)?,
            (None, Some(list)) => parse_pattern_list(&list.join(","))?,
            (None, None) => vec![ArrivalPattern::Static],
        };
        let seeds = match overrides.seed {
            Some(seed) => vec![seed],
            None => experiment.seeds.unwrap_or_else(|| vec![1]),
        };
        if seeds.is_empty() {
            bail!("experiment needs at least one seed");
        }
        let horizon = overrides.horizon.or(experiment.horizon).unwrap_or(100.0);

        Ok(Scenario {
            name,
            instance,
            rules,
            patterns,
            horizon,
            seeds,
            weights: build_weights(&file.weights)?,
            sim: build_sim_config(&file.options)?,
        })
    }
}
