//! The collineation/correlation group of a Cox configuration.
//!
//! Elements are pairs (φ, A) acting by `a ↦ φ(a) △ A` — permute, then
//! translate by symmetric difference. Even-sized A gives a collineation,
//! odd-sized a correlation. The generator-described group is checked against
//! an independent brute-force search over the Levi graph.

use std::collections::BTreeSet;

use crate::builders::cox;
use crate::incidence::{IncidenceStructure, Label};
use crate::iso::{self, SearchError, StructureIso};
use crate::perm::Perm;
use crate::subset::FiniteSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Collineation,
    Correlation,
}

/// One symmetry of the subset lattice: permutation φ of the ground set
/// followed by translation with the subset A.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxMap {
    phi: Perm,
    shift: FiniteSubset,
}

impl CoxMap {
    pub fn new(phi: Perm, shift: FiniteSubset) -> Self {
        assert_eq!(phi.degree(), shift.ground_size(), "degree mismatch");
        CoxMap { phi, shift }
    }

    pub fn identity(n: u8) -> Self {
        CoxMap::new(Perm::identity(n), FiniteSubset::empty(n))
    }

    /// The lifted permutation φ̃ = (φ, ∅).
    pub fn from_perm(phi: Perm) -> Self {
        let n = phi.degree();
        CoxMap::new(phi, FiniteSubset::empty(n))
    }

    /// The translation τ_A = (id, A).
    pub fn translation(shift: FiniteSubset) -> Self {
        CoxMap::new(Perm::identity(shift.ground_size()), shift)
    }

    pub fn phi(&self) -> &Perm {
        &self.phi
    }

    pub fn shift(&self) -> &FiniteSubset {
        &self.shift
    }

    pub fn ground_size(&self) -> u8 {
        self.shift.ground_size()
    }

    pub fn kind(&self) -> MapKind {
        if self.shift.is_even() {
            MapKind::Collineation
        } else {
            MapKind::Correlation
        }
    }

    pub fn apply(&self, a: &FiniteSubset) -> FiniteSubset {
        self.phi.apply_subset(a).sym_diff(&self.shift)
    }

    /// `self ∘ other`: apply `other` first. The translation conjugates to
    /// `(φ₁φ₂, A₁ △ φ₁(A₂))`.
    pub fn compose(&self, other: &CoxMap) -> CoxMap {
        CoxMap {
            phi: self.phi.compose(&other.phi),
            shift: self.shift.sym_diff(&self.phi.apply_subset(&other.shift)),
        }
    }

    pub fn inverse(&self) -> CoxMap {
        let phi_inv = self.phi.inverse();
        let shift = phi_inv.apply_subset(&self.shift);
        CoxMap { phi: phi_inv, shift }
    }

    /// The action on a Cox configuration as index maps. For collineations
    /// `point_map` targets points; for correlations it targets blocks.
    pub fn action_on(&self, s: &IncidenceStructure) -> StructureIso {
        let image_point = |l: &Label| -> usize {
            let set = l.as_set().expect("cox labels are subsets");
            let img = self.apply(set);
            match self.kind() {
                MapKind::Collineation => s.set_point_index(&img).expect("image is a point"),
                MapKind::Correlation => s.set_block_index(&img).expect("image is a block"),
            }
        };
        let image_block = |l: &Label| -> usize {
            let set = l.as_set().expect("cox labels are subsets");
            let img = self.apply(set);
            match self.kind() {
                MapKind::Collineation => s.set_block_index(&img).expect("image is a block"),
                MapKind::Correlation => s.set_point_index(&img).expect("image is a point"),
            }
        };
        StructureIso {
            point_map: s.point_labels().iter().map(image_point).collect(),
            block_map: s.block_labels().iter().map(image_block).collect(),
        }
    }
}

impl std::fmt::Display for CoxMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(phi={}, A={})", self.phi, self.shift)
    }
}

/// The full group S_n ⋉ C_2^n of collineations and correlations of `cox(n)`.
#[derive(Clone, Copy, Debug)]
pub struct CoxGroup {
    n: u8,
}

impl CoxGroup {
    pub fn new(n: u8) -> Self {
        assert!((3..=16).contains(&n));
        CoxGroup { n }
    }

    pub fn ground_size(&self) -> u8 {
        self.n
    }

    pub fn order(&self) -> u128 {
        factorial(self.n) << self.n
    }

    pub fn collineation_order(&self) -> u128 {
        factorial(self.n) << (self.n - 1)
    }

    /// Lazy iteration over all pairs (φ, A); usable up to n = 10.
    pub fn elements(&self) -> impl Iterator<Item = CoxMap> + '_ {
        assert!(self.n <= 10, "full iteration capped at n = 10");
        let n = self.n;
        Perm::all(n).into_iter().flat_map(move |phi| {
            (0..(1u32 << n)).map(move |mask| {
                CoxMap::new(phi.clone(), FiniteSubset::from_bits(n, mask as u16).unwrap())
            })
        })
    }

    pub fn collineations(&self) -> impl Iterator<Item = CoxMap> + '_ {
        self.elements().filter(|g| g.kind() == MapKind::Collineation)
    }

    /// Transpositions plus one singleton translation generate everything.
    pub fn generators(&self) -> Vec<CoxMap> {
        let n = self.n;
        let mut gens: Vec<CoxMap> = (1..n)
            .map(|i| CoxMap::from_perm(Perm::transposition(n, i, i + 1)))
            .collect();
        gens.push(CoxMap::translation(FiniteSubset::singleton(n, 1)));
        gens
    }
}

fn factorial(n: u8) -> u128 {
    (1..=n as u128).product()
}

/// Exhaustive incidence-preserving point/block bijections, via refinement
/// and backtracking on the Levi graph.
pub fn brute_force_automorphisms(s: &IncidenceStructure) -> Result<Vec<StructureIso>, SearchError> {
    iso::automorphisms(s)
}

/// Exhaustive point↔block bijections preserving incidence.
pub fn brute_force_correlations(s: &IncidenceStructure) -> Result<Vec<StructureIso>, SearchError> {
    iso::correlations(s)
}

/// Actions of the generator-described collineations on `cox(n)`, sorted.
pub fn generator_collineation_actions(n: u8) -> Vec<StructureIso> {
    let s = cox(n).expect("valid n");
    let mut out: Vec<StructureIso> = CoxGroup::new(n)
        .collineations()
        .map(|g| g.action_on(&s))
        .collect();
    out.sort();
    out
}

/// Actions of the generator-described correlations on `cox(n)`, sorted.
pub fn generator_correlation_actions(n: u8) -> Vec<StructureIso> {
    let s = cox(n).expect("valid n");
    let mut out: Vec<StructureIso> = CoxGroup::new(n)
        .elements()
        .filter(|g| g.kind() == MapKind::Correlation)
        .map(|g| g.action_on(&s))
        .collect();
    out.sort();
    out
}

/// Orbit of a flag under the collineation group.
pub fn flag_orbit(
    n: u8,
    flag: (FiniteSubset, FiniteSubset),
) -> BTreeSet<(FiniteSubset, FiniteSubset)> {
    let s = cox(n).expect("valid n");
    assert!(
        s.set_point_index(&flag.0).is_some() && s.set_block_index(&flag.1).is_some(),
        "not a flag of cox({n})"
    );
    let p = s.set_point_index(&flag.0).unwrap();
    let b = s.set_block_index(&flag.1).unwrap();
    assert!(s.is_flag(p, b), "not a flag of cox({n})");
    CoxGroup::new(n)
        .collineations()
        .map(|g| (g.apply(&flag.0), g.apply(&flag.1)))
        .collect()
}

/// Orbit of a point under the collineation group.
pub fn point_orbit(n: u8, p: FiniteSubset) -> BTreeSet<FiniteSubset> {
    CoxGroup::new(n).collineations().map(|g| g.apply(&p)).collect()
}

/// Automorphisms fixing the point ∅, compared with the lifted permutations.
#[derive(Debug)]
pub struct StabilizerReport {
    pub elements: Vec<StructureIso>,
    /// The stabilizer coincides, as maps, with `{φ̃ : φ ∈ S_n}`.
    pub equals_lifted_permutations: bool,
}

pub fn stabilizer_of_empty(n: u8) -> Result<StabilizerReport, SearchError> {
    let s = cox(n).expect("valid n");
    let empty_ix = s.set_point_index(&FiniteSubset::empty(n)).unwrap();
    let autos = brute_force_automorphisms(&s)?;
    let elements: Vec<StructureIso> = autos
        .into_iter()
        .filter(|a| a.point_map[empty_ix] == empty_ix)
        .collect();
    let mut lifted: Vec<StructureIso> = Perm::all(n)
        .into_iter()
        .map(|phi| CoxMap::from_perm(phi).action_on(&s))
        .collect();
    lifted.sort();
    let equals = elements == lifted;
    Ok(StabilizerReport { elements, equals_lifted_permutations: equals })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u8, elems: &[u8]) -> FiniteSubset {
        FiniteSubset::from_elems(n, elems)
    }

    #[test]
    fn apply_examples() {
        let g = CoxMap::translation(set(4, &[1, 2]));
        assert_eq!(g.apply(&set(4, &[])), set(4, &[1, 2]));
        assert_eq!(g.kind(), MapKind::Collineation);

        let t1 = CoxMap::translation(set(4, &[1]));
        assert_eq!(t1.apply(&set(4, &[])), set(4, &[1]));
        assert_eq!(t1.kind(), MapKind::Correlation);

        let swap = CoxMap::from_perm(Perm::transposition(4, 1, 2));
        assert_eq!(swap.apply(&set(4, &[1, 3])), set(4, &[2, 3]));
    }

    #[test]
    fn translations_preserve_parity_iff_even() {
        for n in [4u8, 5] {
            for mask in 0..(1u32 << n) {
                let a = FiniteSubset::from_bits(n, mask as u16).unwrap();
                let g = CoxMap::translation(a);
                let preserves = FiniteSubset::all(n)
                    .iter()
                    .all(|s| g.apply(s).is_even() == s.is_even());
                assert_eq!(preserves, a.is_even());
            }
        }
    }

    #[test]
    fn conjugation_identity() {
        // φ̃ ∘ τ_A ∘ φ̃⁻¹ = τ_{φ(A)} over all of S_4 × 2^4
        for phi in Perm::all(4) {
            let lift = CoxMap::from_perm(phi.clone());
            for mask in 0..16u16 {
                let a = FiniteSubset::from_bits(4, mask).unwrap();
                let lhs = lift.compose(&CoxMap::translation(a)).compose(&lift.inverse());
                let rhs = CoxMap::translation(phi.apply_subset(&a));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn compose_identity_and_inverse() {
        let g = CoxMap::new(Perm::transposition(5, 2, 4), set(5, &[1, 3]));
        let id = CoxMap::identity(5);
        assert_eq!(g.compose(&id), g);
        assert_eq!(id.compose(&g), g);
        assert_eq!(g.compose(&g.inverse()), id);
    }

    #[test]
    fn compose_agrees_with_pointwise_application() {
        // exhaustive at n = 4: apply(compose(g1,g2), a) = apply(g1, apply(g2, a))
        let group = CoxGroup::new(4);
        let elements: Vec<CoxMap> = group.elements().collect();
        let subsets = FiniteSubset::all(4);
        for g1 in &elements {
            for g2 in &elements {
                let comp = g1.compose(g2);
                for a in &subsets {
                    assert_eq!(comp.apply(a), g1.apply(&g2.apply(a)));
                }
            }
        }
    }

    #[test]
    fn parity_law_for_composition() {
        let group = CoxGroup::new(4);
        let sample: Vec<CoxMap> = group.elements().step_by(7).collect();
        for g1 in &sample {
            for g2 in &sample {
                let expected = if g1.kind() == g2.kind() {
                    MapKind::Collineation
                } else {
                    MapKind::Correlation
                };
                assert_eq!(g1.compose(g2).kind(), expected);
            }
        }
    }

    #[test]
    fn group_orders() {
        let g4 = CoxGroup::new(4);
        assert_eq!(g4.order(), 384);
        assert_eq!(g4.collineation_order(), 192);
        assert_eq!(g4.elements().count(), 384);
        assert_eq!(g4.collineations().count(), 192);
        assert_eq!(CoxGroup::new(3).collineation_order(), 24);
    }

    #[test]
    fn even_shifts_form_a_subgroup() {
        // closure of the even-size subsets under symmetric difference
        for a in FiniteSubset::all(5).iter().filter(|s| s.is_even()) {
            for b in FiniteSubset::all(5).iter().filter(|s| s.is_even()) {
                assert!(a.sym_diff(b).is_even());
            }
        }
    }

    #[test]
    fn brute_force_counts_match_formulas_small() {
        let c3 = cox(3).unwrap();
        let autos = brute_force_automorphisms(&c3).unwrap();
        assert_eq!(autos.len(), 24);
        let cors = brute_force_correlations(&c3).unwrap();
        assert_eq!(cors.len(), 24);

        // element-by-element oracle equality at n = 3
        assert_eq!(autos, generator_collineation_actions(3));
        assert_eq!(cors, generator_correlation_actions(3));
    }

    #[test]
    fn tau_singleton_is_a_brute_force_correlation() {
        let c3 = cox(3).unwrap();
        let t1 = CoxMap::translation(set(3, &[1]));
        let action = t1.action_on(&c3);
        assert!(brute_force_correlations(&c3).unwrap().contains(&action));
    }

    #[test]
    fn flag_orbit_sizes() {
        assert_eq!(flag_orbit(3, (set(3, &[]), set(3, &[1]))).len(), 12);
        assert_eq!(flag_orbit(4, (set(4, &[]), set(4, &[1]))).len(), 32);
    }

    #[test]
    fn point_orbit_is_everything() {
        for n in 3..=5u8 {
            assert_eq!(point_orbit(n, FiniteSubset::empty(n)).len(), 1 << (n - 1));
        }
    }

    #[test]
    fn stabilizer_of_empty_matches_lifted_permutations() {
        for n in 3..=4u8 {
            let report = stabilizer_of_empty(n).unwrap();
            assert_eq!(report.elements.len(), factorial(n) as usize);
            assert!(report.equals_lifted_permutations);
        }
    }

    #[test]
    fn point_stabilizers_are_conjugate() {
        // conjugating the stabilizer of ∅ by τ_{1,2} lands on the stabilizer
        // of {1,2}, elementwise
        let n = 4u8;
        let s = cox(n).unwrap();
        let tau = CoxMap::translation(set(n, &[1, 2]));
        let p12 = s.set_point_index(&set(n, &[1, 2])).unwrap();
        let autos = brute_force_automorphisms(&s).unwrap();
        let stab12: BTreeSet<StructureIso> = autos
            .into_iter()
            .filter(|a| a.point_map[p12] == p12)
            .collect();
        let conjugated: BTreeSet<StructureIso> = Perm::all(n)
            .into_iter()
            .map(|phi| tau.compose(&CoxMap::from_perm(phi)).compose(&tau.inverse()).action_on(&s))
            .collect();
        assert_eq!(stab12, conjugated);
    }

    #[test]
    fn lifting_is_injective_and_multiplicative() {
        for n in 3..=5u8 {
            let s = cox(n).unwrap();
            let perms = Perm::all(n);
            let mut seen = BTreeSet::new();
            for phi in &perms {
                assert!(seen.insert(CoxMap::from_perm(phi.clone()).action_on(&s)));
            }
            for phi in perms.iter().take(24) {
                for psi in perms.iter().take(24) {
                    let lhs = CoxMap::from_perm(phi.compose(psi));
                    let rhs = CoxMap::from_perm(phi.clone()).compose(&CoxMap::from_perm(psi.clone()));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
