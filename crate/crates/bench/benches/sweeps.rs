//! Benchmarks for the hot paths: exhaustive enumeration, predicate
//! sweeps, theorem audits, and proof replay.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use semikit::classify::classify;
use semikit::construct::{brandt_b2, count_semigroups, cyclic_group, heisenberg_mod};
use semikit::decompose::decompose_semilattice;
use semikit::proofcheck::{audit_script_soundness, bundled_scripts, check_proof, ProofScript};
use semikit::verify::{audit_theorem, AuditParams, TheoremClaim};

fn bundled(name: &str) -> ProofScript {
    bundled_scripts()
        .unwrap()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, s)| s)
        .unwrap()
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("count order 3", |b| {
        b.iter(|| count_semigroups(black_box(3), 1).unwrap())
    });
    c.bench_function("count order 4", |b| {
        b.iter(|| count_semigroups(black_box(4), 1).unwrap())
    });
}

fn classification(c: &mut Criterion) {
    let b2 = brandt_b2();
    c.bench_function("classify brandt b2", |b| {
        b.iter(|| classify(black_box(&b2)).unwrap())
    });
    let h3 = heisenberg_mod(3).unwrap();
    c.bench_function("classify heisenberg 3", |b| {
        b.iter(|| classify(black_box(&h3)).unwrap())
    });
}

fn decomposition(c: &mut Criterion) {
    let z12 = cyclic_group(12).unwrap();
    c.bench_function("decompose cyclic 12", |b| {
        b.iter(|| decompose_semilattice(black_box(&z12)).unwrap())
    });
    let b2 = brandt_b2();
    c.bench_function("decompose brandt b2", |b| {
        b.iter(|| decompose_semilattice(black_box(&b2)).unwrap())
    });
}

fn audits(c: &mut Criterion) {
    let params = AuditParams {
        p: Some(2),
        q: Some(3),
        ..AuditParams::default()
    };
    c.bench_function("audit main1 order 3", |b| {
        b.iter(|| audit_theorem(TheoremClaim::Main1, black_box(3), &params).unwrap())
    });
}

fn replay(c: &mut Criterion) {
    let script = bundled("lemma31_k3");
    c.bench_function("replay lemma31 k3", |b| {
        b.iter(|| check_proof(black_box(&script)).unwrap())
    });
    let prop11 = bundled("prop11");
    c.bench_function("soundness prop11 order 3", |b| {
        b.iter(|| audit_script_soundness(black_box(&prop11), 3).unwrap())
    });
}

criterion_group!(
    benches,
    enumeration,
    classification,
    decomposition,
    audits,
    replay
);
criterion_main!(benches);
