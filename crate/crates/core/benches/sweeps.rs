use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nvs_core::auto::MultAuto;
use nvs_core::canonical::{is_multiplicative, to_theta_id, verify_iso};
use nvs_core::space::{quasi_kernel_bruteforce, SpaceSpec};
use nvs_core::{BaseStructure, Config, Exec};

fn specs() -> Vec<(&'static str, SpaceSpec)> {
    let gf7 = BaseStructure::galois(7, 1).unwrap();
    let d9 = BaseStructure::dickson9();
    let id = MultAuto::identity(&d9);
    vec![
        ("gf7_dim6", SpaceSpec::theta_powers(gf7, &[1, 5, 5, 1, 5, 1]).unwrap()),
        (
            "dickson9_dim4",
            SpaceSpec::indexed(
                d9.clone(),
                vec![
                    id.clone(),
                    MultAuto::Inner(nvs_core::Scalar::Fin(3)).compose(&id, &d9).unwrap(),
                    id.clone(),
                    id.clone(),
                ],
                vec![id.clone(); 4],
            )
            .unwrap(),
        ),
    ]
}

fn schedules() -> [(&'static str, Config); 2] {
    [
        ("sequential", Config::default().with_exec(Exec::Sequential)),
        ("parallel", Config::default().with_exec(Exec::Parallel)),
    ]
}

fn bruteforce(c: &mut Criterion) {
    let mut group = c.benchmark_group("quasi_kernel_bruteforce");
    group.sample_size(10);
    for (name, spec) in specs() {
        for (mode, cfg) in schedules() {
            group.bench_with_input(BenchmarkId::new(mode, name), &spec, |b, s| {
                b.iter(|| quasi_kernel_bruteforce(s, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn iso_and_certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_checks");
    group.sample_size(10);
    let spec = SpaceSpec::theta_powers(BaseStructure::galois(5, 1).unwrap(), &[1, 3, 3, 1]).unwrap();
    let (_, map) = to_theta_id(&spec).unwrap();
    for (mode, cfg) in schedules() {
        group.bench_function(BenchmarkId::new("verify_iso", mode), |b| {
            b.iter(|| verify_iso(&map, 0, &cfg).unwrap())
        });
        group.bench_function(BenchmarkId::new("is_multiplicative", mode), |b| {
            b.iter(|| is_multiplicative(&spec, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bruteforce, iso_and_certificates);
criterion_main!(benches);
