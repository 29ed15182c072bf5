//! Cross-module invariants: property tests over random inputs plus the
//! exhaustive group-law checks that are feasible at small sizes.

use proptest::prelude::*;

use num::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use coxcfg::builders::cox;
use coxcfg::incidence::{closure, signature, IncidenceStructure, Label};
use coxcfg::iso::find_isomorphism;
use coxcfg::perm::Perm;
use coxcfg::realization::{circle_through, cross_ratio, second_intersection, InvPoint};
use coxcfg::subset::FiniteSubset;
use coxcfg::symmetry::{
    brute_force_automorphisms, brute_force_correlations, generator_collineation_actions,
    generator_correlation_actions, CoxGroup, CoxMap,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #[test]
    fn subset_display_parse_round_trip(bits in 0u16..(1 << 7)) {
        let s = FiniteSubset::from_bits(7, bits).unwrap();
        prop_assert_eq!(FiniteSubset::parse(7, &s.to_string()).unwrap(), s);
    }

    #[test]
    fn sym_diff_is_a_group_operation(a in 0u16..256, b in 0u16..256, c in 0u16..256) {
        let (a, b, c) = (
            FiniteSubset::from_bits(8, a).unwrap(),
            FiniteSubset::from_bits(8, b).unwrap(),
            FiniteSubset::from_bits(8, c).unwrap(),
        );
        prop_assert_eq!(a.sym_diff(&b).sym_diff(&c), a.sym_diff(&b.sym_diff(&c)));
        prop_assert_eq!(a.sym_diff(&a), FiniteSubset::empty(8));
        prop_assert_eq!(a.sym_diff(&b), b.sym_diff(&a));
    }

    #[test]
    fn dual_is_an_involution(flags in proptest::collection::vec((0usize..5, 0usize..5), 0..12)) {
        let points: Vec<Label> = (0..5).map(|i| Label::from(format!("p{i}").as_str())).collect();
        let blocks: Vec<Label> = (0..5).map(|i| Label::from(format!("B{i}").as_str())).collect();
        let s = IncidenceStructure::new(points, blocks, flags).unwrap();
        prop_assert_eq!(s.dual().dual(), s);
    }

    #[test]
    fn closure_is_monotone_and_idempotent(
        seed_pts in proptest::collection::btree_set(0usize..8, 0..4),
        extra in 0usize..8,
        seed_blks in proptest::collection::btree_set(0usize..8, 0..4),
    ) {
        let c4 = cox(4).unwrap();
        let pts: Vec<usize> = seed_pts.iter().copied().collect();
        let blks: Vec<usize> = seed_blks.iter().copied().collect();
        let (p1, b1) = closure(&c4, &pts, &blks, 3, 2);
        let mut bigger = pts.clone();
        bigger.push(extra);
        let (p2, b2) = closure(&c4, &bigger, &blks, 3, 2);
        prop_assert!(p1.is_subset(&p2) && b1.is_subset(&b2));
        let (p3, b3) = closure(
            &c4,
            &p1.iter().copied().collect::<Vec<_>>(),
            &b1.iter().copied().collect::<Vec<_>>(),
            3,
            2,
        );
        prop_assert_eq!((p1, b1), (p3, b3));
    }

    #[test]
    fn circle_through_satisfies_all_three_inputs(
        coords in proptest::collection::vec((-40i64..40, 1i64..20), 6)
    ) {
        let pts: Vec<InvPoint> = coords
            .chunks(2)
            .map(|c| InvPoint::finite(rat(c[0].0, c[0].1), rat(c[1].0, c[1].1)))
            .collect();
        prop_assume!(pts[0] != pts[1] && pts[0] != pts[2] && pts[1] != pts[2]);
        let c = circle_through(&pts[0], &pts[1], &pts[2]).unwrap();
        for p in &pts {
            prop_assert!(c.contains(p));
        }
    }

    #[test]
    fn second_intersection_lies_on_both(
        coords in proptest::collection::vec((-30i64..30, 1i64..15), 10)
    ) {
        let mk = |i: usize| InvPoint::finite(rat(coords[2 * i].0, coords[2 * i].1), rat(coords[2 * i + 1].0, coords[2 * i + 1].1));
        let known = mk(0);
        let (q1, q2, q3, q4) = (mk(1), mk(2), mk(3), mk(4));
        prop_assume!(known != q1 && known != q2 && q1 != q2);
        prop_assume!(known != q3 && known != q4 && q3 != q4);
        let c1 = circle_through(&known, &q1, &q2);
        let c2 = circle_through(&known, &q3, &q4);
        prop_assume!(c1.is_ok() && c2.is_ok());
        let (c1, c2) = (c1.unwrap(), c2.unwrap());
        prop_assume!(c1 != c2);
        match second_intersection(&c1, &c2, &known) {
            Ok(p) => {
                prop_assert!(c1.contains(&p) && c2.contains(&p));
                prop_assert_ne!(p, known);
            }
            Err(coxcfg::realization::GeomError::TangentAtKnown) => {}
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
        }
    }

    #[test]
    fn cross_ratio_is_similarity_invariant(
        ts in proptest::collection::vec(-30i64..30, 4),
        scale in (1i64..20, 1i64..10),
        rot in (-10i64..10, 1i64..10),
        shift in (-20i64..20, -20i64..20),
    ) {
        // four distinct points on a line, moved by z -> (s + r i) z + t
        let mut t = ts.clone();
        t.sort_unstable();
        t.dedup();
        prop_assume!(t.len() == 4);
        let base: Vec<InvPoint> = t
            .iter()
            .map(|&k| InvPoint::finite(rat(k, 1) * rat(3, 2), rat(k, 1) * rat(-1, 3) + rat(5, 7)))
            .collect();
        let before = cross_ratio(&base[0], &base[1], &base[2], &base[3]).unwrap();
        let (sre, sim) = (rat(scale.0, scale.1), rat(rot.0, rot.1));
        prop_assume!(!(sre.clone() * sre.clone() + sim.clone() * sim.clone()).numer().eq(&0.into()));
        let moved: Vec<InvPoint> = base
            .iter()
            .map(|p| match p {
                InvPoint::Finite { x, y } => InvPoint::finite(
                    &sre * x - &sim * y + rat(shift.0, 1),
                    &sre * y + &sim * x + rat(shift.1, 1),
                ),
                InvPoint::Infinity => InvPoint::Infinity,
            })
            .collect();
        let after = cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3]).unwrap();
        prop_assert_eq!(before, after);
    }
}

#[test]
fn cox_is_self_dual_up_to_six() {
    for n in 3..=6u8 {
        let c = cox(n).unwrap();
        assert!(find_isomorphism(&c, &c.dual()).is_some(), "cox({n}) self-duality");
    }
}

/// Exhaustive group-law check at n = 5 via action tables on all 32 subsets.
#[test]
fn homomorphism_exhaustive_n5() {
    let n = 5u8;
    let group = CoxGroup::new(n);
    let elements: Vec<CoxMap> = group.elements().collect();
    assert_eq!(elements.len(), 3840);
    let subsets = FiniteSubset::all(n);
    let index_of = |s: &FiniteSubset| s.bits() as usize;
    // table[e][i] = index of e(subset with bits i)
    let mut key_of = std::collections::HashMap::new();
    let mut tables: Vec<Vec<u8>> = Vec::with_capacity(elements.len());
    for (ei, e) in elements.iter().enumerate() {
        let mut row = vec![0u8; 32];
        for s in &subsets {
            row[index_of(s)] = e.apply(s).bits() as u8;
        }
        key_of.insert(e.clone(), ei);
        tables.push(row);
    }
    for (i, g1) in elements.iter().enumerate() {
        for (j, g2) in elements.iter().enumerate() {
            let composed = key_of[&g1.compose(g2)];
            let (tc, t1, t2) = (&tables[composed], &tables[i], &tables[j]);
            for s in 0..32usize {
                assert_eq!(tc[s], t1[t2[s] as usize], "law fails at ({i},{j},{s})");
            }
        }
    }
}

/// Randomized triples for the larger ground sets.
#[test]
fn homomorphism_randomized_up_to_n10() {
    let mut rng = StdRng::seed_from_u64(42);
    for n in [6u8, 8, 10] {
        for _ in 0..10_000 {
            let random_map = |rng: &mut StdRng| {
                let mut img: Vec<u8> = (1..=n).collect();
                for i in (1..img.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    img.swap(i, j);
                }
                let bits = rng.gen_range(0..(1u32 << n)) as u16;
                CoxMap::new(Perm::from_images(img), FiniteSubset::from_bits(n, bits).unwrap())
            };
            let g1 = random_map(&mut rng);
            let g2 = random_map(&mut rng);
            let a = FiniteSubset::from_bits(n, rng.gen_range(0..(1u32 << n)) as u16).unwrap();
            assert_eq!(g1.compose(&g2).apply(&a), g1.apply(&g2.apply(&a)));
        }
    }
}

/// Element-by-element oracle equivalence at n = 5 (n = 3, 4 run in the
/// acceptance suite).
#[test]
fn oracle_equivalence_n5() {
    let c5 = cox(5).unwrap();
    assert_eq!(brute_force_automorphisms(&c5).unwrap(), generator_collineation_actions(5));
    assert_eq!(brute_force_correlations(&c5).unwrap(), generator_correlation_actions(5));
}

/// The lifted-permutation map is injective and multiplicative on all of S_n
/// for n <= 5.
#[test]
fn lifting_monomorphism_full() {
    for n in 3..=5u8 {
        let perms = Perm::all(n);
        let mut seen = std::collections::BTreeSet::new();
        for phi in &perms {
            let lift = CoxMap::from_perm(phi.clone());
            let table: Vec<u16> = FiniteSubset::all(n).iter().map(|s| lift.apply(s).bits()).collect();
            assert!(seen.insert(table), "lift not injective at n = {n}");
        }
        for phi in &perms {
            for psi in &perms {
                assert_eq!(
                    CoxMap::from_perm(phi.compose(psi)),
                    CoxMap::from_perm(phi.clone()).compose(&CoxMap::from_perm(psi.clone()))
                );
            }
        }
    }
}

#[test]
fn signature_flag_double_count() {
    for n in 3..=8u8 {
        let sig = signature(&cox(n).unwrap()).unwrap();
        assert!(sig.uniform);
        assert_eq!(sig.v * sig.r, sig.b * sig.k);
    }
}
