//! Sequential against parallel execution on the enumeration-heavy scans.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use unireg_core::constructions::{bergman_witness, lamgift_scan, rewriting_examples_suite};
use unireg_core::matring::RingSpec;
use unireg_core::par::Exec;
use unireg_core::predicates::Profiler;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn scans(c: &mut Criterion) {
    let mut g = c.benchmark_group("scans");
    g.sample_size(10);
    let m2f3 = RingSpec::parse("M2(F3)").unwrap().build(1 << 12, Exec::Parallel).unwrap();
    let m3f2 = RingSpec::parse("M3(F2)").unwrap().build(1 << 12, Exec::Parallel).unwrap();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("toeplitz-window-r2", name), &exec, |b, &e| {
            b.iter(|| bergman_witness(2, false, e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("six-conditions-M2F3", name), &exec, |b, &e| {
            b.iter(|| Profiler::new(&m2f3, e).profile_all(e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("unit-corner-M3F2", name), &exec, |b, &e| {
            b.iter(|| lamgift_scan(&m3f2, 5, e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("monomial-probe-L8", name), &exec, |b, &e| {
            b.iter(|| rewriting_examples_suite(&[1], 4, 8, false, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
