//! Simulation core for partially flexible job shops: instance model,
//! criteria engine, multi-criteria rankers, dispatching rules, the
//! discrete-event engine, and schedule validation and statistics.

pub mod criteria;
pub mod error;
pub mod instance;
pub mod mcdm;
pub mod rng;
pub mod rules;
pub mod sim;
pub mod stats;
pub mod validate;

pub use criteria::{
    build_decision_matrix, CriteriaWeights, CriterionKind, CriterionWeight, DecisionMatrix,
    Direction, JobState, WorkEstimate,
};
pub use error::{Error, Result};
pub use instance::{
    attach_extensions, extension_sidecar_string, flexibility_report, generate_synthetic,
    parse_extension_sidecar, parse_fjs, to_fjs_string, Alternative, ExtendedInstance,
    FlexibilityReport, Instance, Job, JobId, MachineId, Operation, SynthSpec,
};
pub use mcdm::{
    cp_rank, edas_rank, promethee_rank, rank_from_scores, rank_with, CpExponent, EdasVariant,
    McdmOptions, Method, Orientation, PreferenceFunction, Ranking,
};
pub use rules::{cdr_priority, mcdm_priority, primitives, simple_priority, PrimitiveValues, RuleId};
pub use sim::{
    arrival_times, replicate, run, ArrivalPattern, ArrivalPlan, Metrics, RerankScope,
    ScheduleTrace, SimConfig, TraceRow,
};
pub use stats::{independent_t_test, one_way_anova, AnovaResult, TTestResult};
pub use validate::{metrics_oracle, validate, Violation, ViolationKind, ViolationReport};
