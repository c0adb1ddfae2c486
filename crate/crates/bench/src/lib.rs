//! Shared fixtures for the criterion benchmarks.

use pfjss_core::criteria::{CriteriaWeights, CriterionKind, DecisionMatrix, Direction};
use pfjss_core::instance::{generate_synthetic, ExtendedInstance, JobId, SynthSpec};

pub fn crisp_weights() -> CriteriaWeights {
    CriteriaWeights::from_crisp(&[
        (CriterionKind::ProcessTime, 0.10, Direction::Cost),
        (CriterionKind::DueDate, 0.26, Direction::Cost),
        (CriterionKind::Operations, 0.15, Direction::Cost),
        (CriterionKind::SetupTime, 0.04, Direction::Cost),
        (CriterionKind::Strop, 0.45, Direction::Cost),
    ])
    .expect("builtin weight table is valid")
}

/// Deterministic n-row decision matrix over all five criteria.
pub fn matrix(n: usize) -> DecisionMatrix {
    let rows: Vec<JobId> = (1..=n as u32).map(JobId).collect();
    let values: Vec<Vec<f64>> = (0..n)
        .map(|ix| {
            let base = ix as f64;
            vec![
                17.0 + (base * 7.3) % 23.0,
                33.0 + (base * 11.9) % 41.0,
                5.0 + (base * 3.1) % 4.0,
                1.2 + (base * 0.37) % 0.8,
                3.2 + (base * 1.21) % 1.9,
            ]
        })
        .collect();
    DecisionMatrix::new(rows, values, crisp_weights()).expect("fixture matrix is valid")
}

/// A mid-size shop: 15 jobs on 8 machines, 10 operations each.
pub fn shop() -> ExtendedInstance {
    let spec = SynthSpec {
        jobs: 15,
        machines: 8,
        ops_range: (10, 10),
        alt_range: (4, 6),
        ptime_range: (1, 20),
        due_range: (42.0, 84.0),
        setup_range: (6.24, 10.23),
        total_ops: Some(150),
    };
    generate_synthetic(&spec, 3).expect("fixture instance is valid")
}
