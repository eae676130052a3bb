use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use intform_core::combinatorics::LabelConfig;
use intform_core::identities::{
    check_commutation, product_part, CheckName, CheckSpec, Checker, Profile,
};
use intform_core::pbw::PresetKind;

fn spec(ck: &Checker, name: CheckName, bounds: &[(&str, u32)]) -> CheckSpec {
    let mut s = CheckSpec::for_profile(name, Profile::Desk, ck.labels());
    for (k, v) in bounds {
        s.set_bound(k, *v).unwrap();
    }
    s
}

// jobs = 1 runs the sequential path; 0 uses the global rayon pool when the
// `parallel` feature is on. A fresh checker per iteration keeps memo caches cold.
fn checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("checks");
    group.sample_size(10);
    for (label, jobs) in [("sequential", 1), ("parallel", 0)] {
        group.bench_with_input(
            BenchmarkId::new("products-sl2", label),
            &jobs,
            |b, &jobs| {
                b.iter(|| {
                    let ck = Checker::new(LabelConfig::polynomial(1), jobs);
                    let s = spec(&ck, CheckName::Integrality, &[("order", 3), ("length", 3)]);
                    let r = product_part(&ck, &s, PresetKind::Sl2).unwrap();
                    assert!(r.pass);
                })
            },
        );
        group.bench_with_input(BenchmarkId::new("commutation", label), &jobs, |b, &jobs| {
            b.iter(|| {
                let ck = Checker::new(LabelConfig::polynomial(1), jobs);
                let s = spec(&ck, CheckName::Commutation, &[("size", 2), ("r", 2)]);
                let r = check_commutation(&ck, &s).unwrap();
                assert!(r.pass);
            })
        });
    }
    group.finish();
}

criterion_group!(benches, checks);
criterion_main!(benches);
