use criterion::{criterion_group, criterion_main, Criterion};

use coxcfg::axioms::{check_miquel, MiquelVariant, DEFAULT_MIQUEL_BUDGET};
use coxcfg::builders::{cox, gras2cox};
use coxcfg::realization::{realize, DEFAULT_SEED};
use coxcfg::symmetry::brute_force_automorphisms;

fn bench_builders(c: &mut Criterion) {
    c.bench_function("cox(10) build", |b| b.iter(|| cox(10).unwrap()));
    c.bench_function("gras2cox(6) completion", |b| b.iter(|| gras2cox(6).unwrap()));
}

fn bench_checks(c: &mut Criterion) {
    let c5 = cox(5).unwrap();
    c.bench_function("miquel strong on cox(5)", |b| {
        b.iter(|| check_miquel(&c5, MiquelVariant::Strong, DEFAULT_MIQUEL_BUDGET))
    });
}

fn bench_groups(c: &mut Criterion) {
    let c4 = cox(4).unwrap();
    c.bench_function("brute-force automorphisms of cox(4)", |b| {
        b.iter(|| brute_force_automorphisms(&c4).unwrap())
    });
}

fn bench_realization(c: &mut Criterion) {
    c.bench_function("realize(6) exact", |b| {
        b.iter(|| realize(6, DEFAULT_SEED).unwrap())
    });
    let r = realize(6, DEFAULT_SEED).unwrap();
    c.bench_function("verify realize(6)", |b| b.iter(|| r.verify()));
}

criterion_group!(benches, bench_builders, bench_checks, bench_groups, bench_realization);
criterion_main!(benches);
