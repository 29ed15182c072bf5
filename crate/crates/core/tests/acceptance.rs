//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime (visible with `--nocapture`) and enforcing its time budget.

use std::time::{Duration, Instant};

use coxcfg::axioms::{
    check_condition, check_miquel, Condition, MiquelVariant, DEFAULT_MIQUEL_BUDGET,
};
use coxcfg::builders::{cox, decompose, gras2cox, k_dagger};
use coxcfg::export::{incidence_csv, LabelMode};
use coxcfg::graph::{hypercube, levi_graph};
use coxcfg::incidence::{signature, Label};
use coxcfg::iso::find_isomorphism;
use coxcfg::realization::{cross_ratio, extend, realize, InvPoint, DEFAULT_SEED};
use coxcfg::subset::FiniteSubset;
use coxcfg::symmetry::{
    brute_force_automorphisms, brute_force_correlations, flag_orbit,
    generator_collineation_actions, generator_correlation_actions, stabilizer_of_empty,
};

fn pass(criterion: u32, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("ACCEPTANCE {criterion:2}: PASS ({elapsed:.2?}) — {what}");
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

fn set(n: u8, elems: &[u8]) -> FiniteSubset {
    FiniteSubset::from_elems(n, elems)
}

#[test]
fn acceptance_01_structure_counts() {
    let t = Instant::now();
    for n in 3..=10u8 {
        let sig = signature(&cox(n).unwrap()).unwrap();
        assert!(sig.uniform, "cox({n}) must be uniform");
        assert_eq!(
            (sig.v, sig.r, sig.b, sig.k),
            (1 << (n - 1), n as usize, 1 << (n - 1), n as usize),
            "cox({n}) signature"
        );
    }
    pass(1, "signature(cox(n)) = (2^(n-1), n, 2^(n-1), n) for n = 3..10", t, Duration::from_secs(1));
}

#[test]
fn acceptance_02_table_reproduction() {
    let t = Instant::now();
    let expected = "\
,q_A,q_12,q_13,q_14,q_23,q_24,q_34,q_B
A_1,1,1,1,1,0,0,0,0
A_2,1,1,0,0,1,1,0,0
A_3,1,0,1,0,1,0,1,0
A_4,1,0,0,1,0,1,1,0
B_1,0,0,0,0,1,1,1,1
B_2,0,0,1,1,0,0,1,1
B_3,0,1,0,1,0,1,0,1
B_4,0,1,1,0,1,0,0,1
";
    let got = incidence_csv(&cox(4).unwrap(), LabelMode::SteinerMiquel).unwrap();
    assert_eq!(got, expected, "classical incidence table must match bit for bit");
    let ones: usize = got
        .lines()
        .skip(1)
        .map(|row| row.split(',').skip(1).filter(|cell| *cell == "1").count())
        .sum();
    assert_eq!(ones, 32);
    pass(2, "cox(4) incidence matrix equals the classical table", t, Duration::from_secs(1));
}

#[test]
fn acceptance_03_axioms() {
    let t = Instant::now();
    for n in 3..=7u8 {
        let c = cox(n).unwrap();
        for cond in Condition::ALL {
            assert!(
                check_condition(&c, cond).passed(),
                "cox({n}) fails condition {cond}"
            );
        }
    }
    // a single deleted flag produces a re-validating counterexample
    let c4 = cox(4).unwrap();
    let p = c4.set_point_index(&set(4, &[])).unwrap();
    let b = c4.set_block_index(&set(4, &[1])).unwrap();
    let mutant = c4.delete_flag(p, b);
    match check_condition(&mutant, Condition::I) {
        coxcfg::axioms::ConditionOutcome::Violated(v) => assert!(v.revalidate(&mutant)),
        coxcfg::axioms::ConditionOutcome::Pass => panic!("mutant must fail condition I"),
    }
    pass(3, "conditions I..V pass for n = 3..7; mutant witness re-validates", t, Duration::from_secs(10));
}

#[test]
fn acceptance_04_miquel() {
    let t = Instant::now();
    for n in [4u8, 5] {
        let check = check_miquel(&cox(n).unwrap(), MiquelVariant::Strong, DEFAULT_MIQUEL_BUDGET);
        assert!(check.passed(), "cox({n}) must satisfy the strong Miquel axiom");
        assert!(!check.capped, "budget must not be hit at n = {n}");
    }
    // deleting the block {1,2,4} exposes the classical schema instance
    let c4 = cox(4).unwrap();
    let mutant = c4.delete_block(&Label::Set(set(4, &[1, 2, 4]))).unwrap();
    let check = check_miquel(&mutant, MiquelVariant::Strong, DEFAULT_MIQUEL_BUDGET);
    assert!(!check.passed());
    let lbl = |i: usize| mutant.point_label(i).to_string();
    let blk = |i: usize| mutant.block_label(i).to_string();
    let expected_a: std::collections::BTreeSet<String> =
        ["{}", "{1,3}", "{2,3}", "{3,4}"].iter().map(|s| s.to_string()).collect();
    let expected_b: std::collections::BTreeSet<String> =
        ["{1,4}", "{1,2}", "{2,4}", "{1,2,3,4}"].iter().map(|s| s.to_string()).collect();
    let expected_sides: std::collections::BTreeSet<String> =
        ["{1}", "{2}", "{2,3,4}", "{1,3,4}"].iter().map(|s| s.to_string()).collect();
    let found = check.counterexamples.iter().any(|ce| {
        let a: std::collections::BTreeSet<String> = ce.instance.a.iter().map(|&i| lbl(i)).collect();
        let bset: std::collections::BTreeSet<String> = ce.instance.b.iter().map(|&i| lbl(i)).collect();
        let sides: std::collections::BTreeSet<String> =
            ce.instance.sides.iter().map(|&i| blk(i)).collect();
        a == expected_a
            && bset == expected_b
            && sides == expected_sides
            && blk(ce.instance.horizontal) == "{3}"
            && ce.revalidate(&mutant)
    });
    assert!(found, "the classical counterexample instance must be reported");
    pass(4, "strong Miquel passes at n = 4, 5; deletion yields the classical instance", t, Duration::from_secs(60));
}

#[test]
fn acceptance_05_group_oracle_equivalence() {
    let t = Instant::now();
    let expected_autos = [24usize, 192, 1920];
    for (i, n) in (3..=5u8).enumerate() {
        let c = cox(n).unwrap();
        let autos = brute_force_automorphisms(&c).unwrap();
        let cors = brute_force_correlations(&c).unwrap();
        assert_eq!(autos.len(), expected_autos[i], "collineation count at n = {n}");
        assert_eq!(
            autos.len() + cors.len(),
            2 * expected_autos[i],
            "full group count at n = {n}"
        );
    }
    for n in 3..=4u8 {
        let c = cox(n).unwrap();
        assert_eq!(
            brute_force_automorphisms(&c).unwrap(),
            generator_collineation_actions(n),
            "collineations differ from the generator description at n = {n}"
        );
        assert_eq!(
            brute_force_correlations(&c).unwrap(),
            generator_correlation_actions(n),
            "correlations differ from the generator description at n = {n}"
        );
    }
    pass(5, "brute-force groups match n!*2^(n-1) / n!*2^n and the generator description", t, Duration::from_secs(300));
}

#[test]
fn acceptance_06_k_dagger_group() {
    let t = Instant::now();
    let kd = k_dagger(6, 3).unwrap();
    let autos = brute_force_automorphisms(&kd).unwrap();
    assert_eq!(autos.len(), 1440, "Aut(K-dagger(6,3)) must have order 2*6!");
    pass(6, "brute-force automorphism count of the (20_6 30_4) clique structure is 1440", t, Duration::from_secs(300));
}

#[test]
fn acceptance_07_flag_transitivity_and_stabilizer() {
    let t = Instant::now();
    for n in 3..=6u8 {
        let orbit = flag_orbit(n, (set(n, &[]), set(n, &[1])));
        assert_eq!(orbit.len(), (n as usize) << (n - 1), "flag orbit size at n = {n}");
    }
    for n in 3..=4u8 {
        let report = stabilizer_of_empty(n).unwrap();
        assert!(report.equals_lifted_permutations, "stabilizer at n = {n}");
    }
    pass(7, "flag orbits have size n*2^(n-1); the stabilizer of the empty set is S_n lifted", t, Duration::from_secs(60));
}

#[test]
fn acceptance_08_realization_exactness() {
    let t = Instant::now();
    for n in 4..=8u8 {
        let r = realize(n, DEFAULT_SEED).unwrap();
        let report = r.verify();
        assert!(report.clean(), "realize({n}) not clean: {}", report.summary());
        assert_eq!(report.flags_checked, (n as usize) << (n - 1), "flag count at n = {n}");
        assert!(report.flag_violations.is_empty());
        assert!(report.accidental_incidences.is_empty());
        assert!(report.duplicate_points.is_empty() && report.duplicate_circles.is_empty());
    }
    pass(8, "realize(n) exact with zero defects for n = 4..8 (1024 flags at n = 8)", t, Duration::from_secs(120));
}

#[test]
fn acceptance_09_incremental_extension() {
    let t = Instant::now();
    let mut r = realize(3, DEFAULT_SEED).unwrap();
    for step in 3..8u8 {
        let next = extend(&r, DEFAULT_SEED).unwrap();
        assert!(next.is_verified(), "extension to {} must verify", step + 1);
        for (l, p) in r.points() {
            let lifted = FiniteSubset::from_bits(step + 1, l.bits()).unwrap();
            assert_eq!(next.point(&lifted).unwrap(), p, "old point {l} moved");
        }
        for (l, c) in r.circles() {
            let lifted = FiniteSubset::from_bits(step + 1, l.bits()).unwrap();
            assert_eq!(next.circle(&lifted).unwrap(), c, "old circle {l} moved");
        }
        r = next;
    }
    assert_eq!(r.n(), 8);
    pass(9, "extension chain 3 -> 8 stays exact and fixes old labels", t, Duration::from_secs(120));
}

#[test]
fn acceptance_10_isomorphism_oracles() {
    let t = Instant::now();
    for n in 4..=6u8 {
        let built = gras2cox(n).unwrap();
        assert!(
            find_isomorphism(&built.structure, &cox(n).unwrap()).is_some(),
            "gras2cox({n}) must be isomorphic to cox({n})"
        );
    }
    for n in 3..=10u8 {
        let levi = levi_graph(&cox(n).unwrap()).unwrap();
        assert!(
            levi.labeled_eq(&hypercube(n)),
            "levi(cox({n})) must equal the {n}-hypercube as labelled graphs"
        );
    }
    pass(10, "gras2cox(n) isomorphic to cox(n) for n = 4..6; Levi graphs equal hypercubes for n = 3..10", t, Duration::from_secs(60));
}

/// (n, X1, X2, expected family sizes)
type DecomposeCase = (u8, &'static [u8], &'static [u8], usize, usize);

#[test]
fn acceptance_11_decomposition() {
    let t = Instant::now();
    let cases: [DecomposeCase; 3] = [
        (8, &[1, 2, 3, 4], &[5, 6, 7, 8], 16, 16),
        (6, &[1, 2, 3], &[4, 5, 6], 8, 8),
        (9, &[1, 2, 3, 4], &[5, 6, 7, 8, 9], 32, 16),
    ];
    for (n, x1, x2, f1, f2) in cases {
        let d = decompose(n, &set(n, x1), &set(n, x2)).unwrap();
        assert_eq!((d.family1.len(), d.family2.len()), (f1, f2), "family sizes at n = {n}");
        assert!(d.flag_cover_unique, "flags must belong to exactly one member at n = {n}");
        assert!(d.transversal, "families must be mutually transversal at n = {n}");
    }
    pass(11, "decompositions have sizes 32 / 16 / 32+16 with unique flag ownership", t, Duration::from_secs(30));
}

#[test]
fn acceptance_12_cross_ratio_obstruction() {
    let t = Instant::now();
    let r = realize(5, DEFAULT_SEED).unwrap();
    // the permutation (3 4), fixing 1, 2, 5
    let phi = |e: u8| -> u8 {
        match e {
            3 => 4,
            4 => 3,
            other => other,
        }
    };
    let point = |a: u8, b: u8| r.point(&set(5, &[a, b])).unwrap();
    let infinity = InvPoint::Infinity;
    let mut witness = false;
    for i in 1..=5u8 {
        let others: Vec<u8> = (1..=5).filter(|&j| j != i).collect();
        for a in 0..others.len() {
            for b in (a + 1)..others.len() {
                for c in (b + 1)..others.len() {
                    let (j1, j2, j3) = (others[a], others[b], others[c]);
                    let before =
                        cross_ratio(&infinity, point(i, j1), point(i, j2), point(i, j3)).unwrap();
                    let after = cross_ratio(
                        &infinity,
                        point(phi(i), phi(j1)),
                        point(phi(i), phi(j2)),
                        point(phi(i), phi(j3)),
                    )
                    .unwrap();
                    if before != after {
                        witness = true;
                    }
                }
            }
        }
    }
    assert!(
        witness,
        "relabelling by (3 4) must change at least one cross ratio on some line"
    );
    pass(12, "the transposition (3 4) changes a cross ratio: no geometric extension", t, Duration::from_secs(1));
}
