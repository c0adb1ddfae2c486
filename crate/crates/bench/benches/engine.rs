use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use pfjss_bench::{crisp_weights, shop};
use pfjss_core::rules::RuleId;
use pfjss_core::sim::{arrival_times, run, ArrivalPattern, SimConfig};

fn bench_engine(c: &mut Criterion) {
    let inst = shop();
    let weights = crisp_weights();
    let config = SimConfig::default();
    let plan = arrival_times(ArrivalPattern::Random, inst.job_count(), 100.0, 1).unwrap();

    let mut group = c.benchmark_group("engine");
    for rule in [RuleId::Spt, RuleId::C5, RuleId::C9, RuleId::C12] {
        group.bench_with_input(BenchmarkId::new("run", rule.name()), &rule, |b, &rule| {
            b.iter(|| {
                run(
                    black_box(&inst),
                    rule,
                    black_box(&plan),
                    1,
                    &weights,
                    &config,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_engine);
criterion_main!(benches);
