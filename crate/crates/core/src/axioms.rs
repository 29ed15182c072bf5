//! Decision procedures for the chain-geometry conditions (I)–(V), weak chain
//! structures, and the Miquel axiom in its strong and weak-thesis forms.

use std::collections::BTreeSet;
use std::fmt;

use crate::incidence::IncidenceStructure;

/// Default cap on Miquel enumeration work.
pub const DEFAULT_MIQUEL_BUDGET: u64 = 10_000_000;

/// The five incidence conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// Through any pair of points pass either 0 or 2 blocks.
    I,
    /// No three points are in two blocks.
    II,
    /// Each block has at least three points.
    III,
    /// A triple of points pairwise on a block is on a block.
    IV,
    /// A triple of pairwise intersecting blocks has a common point.
    V,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::I => "I",
            Condition::II => "II",
            Condition::III => "III",
            Condition::IV => "IV",
            Condition::V => "V",
        };
        write!(f, "{s}")
    }
}

impl Condition {
    pub const ALL: [Condition; 5] =
        [Condition::I, Condition::II, Condition::III, Condition::IV, Condition::V];

    pub fn parse(s: &str) -> Option<Condition> {
        match s.trim().to_uppercase().as_str() {
            "I" | "1" => Some(Condition::I),
            "II" | "2" => Some(Condition::II),
            "III" | "3" => Some(Condition::III),
            "IV" | "4" => Some(Condition::IV),
            "V" | "5" => Some(Condition::V),
            _ => None,
        }
    }
}

/// A minimal witness violating one of the conditions; always re-checkable
/// through [`ConditionViolation::revalidate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionViolation {
    pub condition: Condition,
    pub points: Vec<usize>,
    pub blocks: Vec<usize>,
}

impl ConditionViolation {
    /// Plug the witness back into the definition and confirm the violation.
    pub fn revalidate(&self, s: &IncidenceStructure) -> bool {
        match self.condition {
            Condition::I => {
                let [p, q] = self.points[..] else { return false };
                let c = s.blocks_through_pair(p, q).len();
                c != 0 && c != 2
            }
            Condition::II => {
                let [p, q, r] = self.points[..] else { return false };
                let [b1, b2] = self.blocks[..] else { return false };
                b1 != b2
                    && [p, q, r].iter().all(|&x| s.is_flag(x, b1) && s.is_flag(x, b2))
            }
            Condition::III => {
                let [b] = self.blocks[..] else { return false };
                s.points_of_block(b).len() < 3
            }
            Condition::IV => {
                let [p, q, r] = self.points[..] else { return false };
                let pairwise = [(p, q), (p, r), (q, r)]
                    .iter()
                    .all(|&(x, y)| !s.blocks_through_pair(x, y).is_empty());
                let joint = (0..s.num_blocks())
                    .any(|b| s.is_flag(p, b) && s.is_flag(q, b) && s.is_flag(r, b));
                pairwise && !joint
            }
            Condition::V => {
                let [b1, b2, b3] = self.blocks[..] else { return false };
                let pairwise = [(b1, b2), (b1, b3), (b2, b3)]
                    .iter()
                    .all(|&(x, y)| !s.points_on_both(x, y).is_empty());
                let joint = (0..s.num_points())
                    .any(|p| s.is_flag(p, b1) && s.is_flag(p, b2) && s.is_flag(p, b3));
                pairwise && !joint
            }
        }
    }

    pub fn describe(&self, s: &IncidenceStructure) -> String {
        let pts: Vec<String> = self.points.iter().map(|&p| s.point_label(p).to_string()).collect();
        let blks: Vec<String> = self.blocks.iter().map(|&b| s.block_label(b).to_string()).collect();
        format!(
            "condition {} violated at points [{}], blocks [{}]",
            self.condition,
            pts.join(", "),
            blks.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionOutcome {
    Pass,
    Violated(ConditionViolation),
}

impl ConditionOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, ConditionOutcome::Pass)
    }
}

/// Blocks-per-point bitmask rows for fast triple checks.
fn block_masks(s: &IncidenceStructure) -> Vec<Vec<u64>> {
    let words = s.num_blocks().div_ceil(64).max(1);
    (0..s.num_points())
        .map(|p| {
            let mut row = vec![0u64; words];
            for &b in s.blocks_of_point(p) {
                row[b / 64] |= 1 << (b % 64);
            }
            row
        })
        .collect()
}

fn and_rows(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn any_bit(row: &[u64]) -> bool {
    row.iter().any(|&w| w != 0)
}

/// Decide one condition, returning the first violating witness in scan order.
pub fn check_condition(s: &IncidenceStructure, condition: Condition) -> ConditionOutcome {
    match condition {
        Condition::I => {
            for p in 0..s.num_points() {
                for q in (p + 1)..s.num_points() {
                    let common = s.blocks_through_pair(p, q);
                    if !common.is_empty() && common.len() != 2 {
                        return ConditionOutcome::Violated(ConditionViolation {
                            condition,
                            points: vec![p, q],
                            blocks: common,
                        });
                    }
                }
            }
            ConditionOutcome::Pass
        }
        Condition::II => {
            for b1 in 0..s.num_blocks() {
                for b2 in (b1 + 1)..s.num_blocks() {
                    let common = s.points_on_both(b1, b2);
                    if common.len() >= 3 {
                        return ConditionOutcome::Violated(ConditionViolation {
                            condition,
                            points: common[..3].to_vec(),
                            blocks: vec![b1, b2],
                        });
                    }
                }
            }
            ConditionOutcome::Pass
        }
        Condition::III => {
            for b in 0..s.num_blocks() {
                if s.points_of_block(b).len() < 3 {
                    return ConditionOutcome::Violated(ConditionViolation {
                        condition,
                        points: vec![],
                        blocks: vec![b],
                    });
                }
            }
            ConditionOutcome::Pass
        }
        Condition::IV => {
            let masks = block_masks(s);
            for p in 0..s.num_points() {
                for q in (p + 1)..s.num_points() {
                    let pq = and_rows(&masks[p], &masks[q]);
                    if !any_bit(&pq) {
                        continue;
                    }
                    for r in (q + 1)..s.num_points() {
                        if !any_bit(&and_rows(&masks[p], &masks[r]))
                            || !any_bit(&and_rows(&masks[q], &masks[r]))
                        {
                            continue;
                        }
                        if !any_bit(&and_rows(&pq, &masks[r])) {
                            return ConditionOutcome::Violated(ConditionViolation {
                                condition,
                                points: vec![p, q, r],
                                blocks: vec![],
                            });
                        }
                    }
                }
            }
            ConditionOutcome::Pass
        }
        Condition::V => {
            // dual of IV
            let dual = s.dual();
            match check_condition(&dual, Condition::IV) {
                ConditionOutcome::Pass => ConditionOutcome::Pass,
                ConditionOutcome::Violated(v) => ConditionOutcome::Violated(ConditionViolation {
                    condition,
                    points: v.blocks,
                    blocks: v.points,
                }),
            }
        }
    }
}

/// Conjunction of conditions (II), (III), (IV) with per-condition witnesses.
#[derive(Clone, Debug)]
pub struct WeakChainReport {
    pub ii: ConditionOutcome,
    pub iii: ConditionOutcome,
    pub iv: ConditionOutcome,
}

impl WeakChainReport {
    pub fn is_weak_chain(&self) -> bool {
        self.ii.passed() && self.iii.passed() && self.iv.passed()
    }
}

pub fn is_weak_chain_structure(s: &IncidenceStructure) -> WeakChainReport {
    WeakChainReport {
        ii: check_condition(s, Condition::II),
        iii: check_condition(s, Condition::III),
        iv: check_condition(s, Condition::IV),
    }
}

/// One instance of the Miquel schema: eight distinct points `a_1..a_4`,
/// `b_1..b_4` and five distinct chains — the horizontal chain through the
/// `a_i`, and side chains `C_i ⊇ {a_i, b_i, a_{i+1}, b_{i+1}}` (indices
/// mod 4). Stored in canonical form under the schema's dihedral symmetry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MiquelInstance {
    pub a: [usize; 4],
    pub b: [usize; 4],
    pub horizontal: usize,
    pub sides: [usize; 4],
}

impl MiquelInstance {
    /// Apply one of the eight schema symmetries: index maps `i ↦ i + t` and
    /// `i ↦ t − i` (mod 4); reflections shift the side chains by one.
    fn transformed(&self, t: usize, reflect: bool) -> MiquelInstance {
        let sigma = |i: usize| -> usize {
            if reflect { (t + 8 - i) % 4 } else { (i + t) % 4 }
        };
        let mut a = [0; 4];
        let mut b = [0; 4];
        let mut sides = [0; 4];
        for i in 0..4 {
            a[i] = self.a[sigma(i)];
            b[i] = self.b[sigma(i)];
            sides[i] = if reflect {
                self.sides[(sigma(i) + 3) % 4]
            } else {
                self.sides[sigma(i)]
            };
        }
        MiquelInstance { a, b, horizontal: self.horizontal, sides }
    }

    pub fn canonical(&self) -> MiquelInstance {
        let mut best = self.clone();
        for t in 0..4 {
            for reflect in [false, true] {
                let cand = self.transformed(t, reflect);
                if cand < best {
                    best = cand;
                }
            }
        }
        best
    }

    /// The hypothesis of the schema holds in `s` for this tuple.
    pub fn hypothesis_holds(&self, s: &IncidenceStructure) -> bool {
        let mut elems: BTreeSet<usize> = self.a.iter().copied().collect();
        elems.extend(self.b.iter().copied());
        if elems.len() != 8 {
            return false;
        }
        let mut chains: BTreeSet<usize> = self.sides.iter().copied().collect();
        chains.insert(self.horizontal);
        if chains.len() != 5 {
            return false;
        }
        if !self.a.iter().all(|&p| s.is_flag(p, self.horizontal)) {
            return false;
        }
        (0..4).all(|i| {
            let c = self.sides[i];
            s.is_flag(self.a[i], c)
                && s.is_flag(self.b[i], c)
                && s.is_flag(self.a[(i + 1) % 4], c)
                && s.is_flag(self.b[(i + 1) % 4], c)
        })
    }

    pub fn describe(&self, s: &IncidenceStructure) -> String {
        let lab_p = |i: usize| s.point_label(i).to_string();
        let lab_b = |i: usize| s.block_label(i).to_string();
        format!(
            "a=[{}] b=[{}] horizontal={} sides=[{}]",
            self.a.map(lab_p).join(", "),
            self.b.map(lab_p).join(", "),
            lab_b(self.horizontal),
            self.sides.map(lab_b).join(", "),
        )
    }
}

/// Result of a Miquel-instance enumeration.
#[derive(Clone, Debug)]
pub struct MiquelScan {
    pub instances: Vec<MiquelInstance>,
    pub candidates_examined: u64,
    pub capped: bool,
    /// Order of the schema symmetry group used for deduplication.
    pub symmetry_order: usize,
}

struct ScanState {
    budget: u64,
    examined: u64,
    capped: bool,
    out: Vec<MiquelInstance>,
}

impl ScanState {
    fn charge(&mut self) -> bool {
        self.examined += 1;
        if self.examined > self.budget {
            self.capped = true;
        }
        self.capped
    }
}

/// Enumerate all instances of the Miquel schema in `s` (which should satisfy
/// condition (II)). With `dedup`, instances are produced once per symmetry
/// class, in canonical form; without it every labelled occurrence is kept.
pub fn enumerate_miquel_instances(s: &IncidenceStructure, budget: u64, dedup: bool) -> MiquelScan {
    let mut scan = ScanState { budget, examined: 0, capped: false, out: Vec::new() };

    'outer: for horizontal in 0..s.num_blocks() {
        let pts = s.points_of_block(horizontal);
        if pts.len() < 4 {
            continue;
        }
        // ordered 4-tuples of distinct points of the horizontal chain
        let m = pts.len();
        let mut idx = [0usize; 4];
        let mut stack = 0usize;
        idx[0] = 0;
        loop {
            if idx[stack] == m {
                if stack == 0 {
                    break;
                }
                stack -= 1;
                idx[stack] += 1;
                continue;
            }
            if idx[..stack].contains(&idx[stack]) {
                idx[stack] += 1;
                continue;
            }
            if stack < 3 {
                stack += 1;
                idx[stack] = 0;
                continue;
            }
            // full tuple
            let a = [pts[idx[0]], pts[idx[1]], pts[idx[2]], pts[idx[3]]];
            if scan.charge() {
                break 'outer;
            }
            let probe = MiquelInstance { a, b: [0; 4], horizontal, sides: [0; 4] };
            let canonical_tuple = !dedup
                || (0..4).all(|t| {
                    [false, true].iter().all(|&r| probe.transformed(t, r).a >= a)
                });
            if canonical_tuple {
                let search = InstanceSearch {
                    s,
                    horizontal,
                    a,
                    side_cands: std::array::from_fn(|i| {
                        s.blocks_through_pair(a[i], a[(i + 1) % 4])
                            .into_iter()
                            .filter(|&c| c != horizontal)
                            .collect()
                    }),
                };
                search.pick_sides(&mut [0; 4], 0, &mut scan);
                if scan.capped {
                    break 'outer;
                }
            }
            idx[stack] += 1;
        }
    }
    if dedup {
        scan.out = scan.out.into_iter().map(|i| i.canonical()).collect();
        scan.out.sort();
        scan.out.dedup();
    }
    MiquelScan {
        instances: scan.out,
        candidates_examined: scan.examined,
        capped: scan.capped,
        symmetry_order: 8,
    }
}

/// Completion of a fixed horizontal tuple: choose the four side chains, then
/// read off the `b` points from consecutive side-chain intersections.
struct InstanceSearch<'a> {
    s: &'a IncidenceStructure,
    horizontal: usize,
    a: [usize; 4],
    side_cands: [Vec<usize>; 4],
}

impl InstanceSearch<'_> {
    fn pick_sides(&self, sides: &mut [usize; 4], depth: usize, scan: &mut ScanState) {
        if scan.capped {
            return;
        }
        if depth == 4 {
            self.pick_bs(sides, &mut [0; 4], 0, scan);
            return;
        }
        for &c in &self.side_cands[depth] {
            if sides[..depth].contains(&c) {
                continue;
            }
            sides[depth] = c;
            self.pick_sides(sides, depth + 1, scan);
        }
    }

    fn pick_bs(&self, sides: &[usize; 4], b: &mut [usize; 4], depth: usize, scan: &mut ScanState) {
        if scan.capped {
            return;
        }
        if depth == 4 {
            if !scan.charge() {
                scan.out.push(MiquelInstance {
                    a: self.a,
                    b: *b,
                    horizontal: self.horizontal,
                    sides: *sides,
                });
            }
            return;
        }
        // b_i lies on both the incoming and outgoing side chains
        let prev = sides[(depth + 3) % 4];
        let cur = sides[depth];
        for p in self.s.points_on_both(prev, cur) {
            if self.a.contains(&p) || b[..depth].contains(&p) {
                continue;
            }
            b[depth] = p;
            self.pick_bs(sides, b, depth + 1, scan);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MiquelVariant {
    /// Some chain must contain all four `b_i`.
    Strong,
    /// Whenever `b_1, b_2, b_3` lie on a chain, `b_4` lies on it too.
    Weak,
}

impl MiquelVariant {
    pub fn parse(s: &str) -> Option<MiquelVariant> {
        match s.trim().to_lowercase().as_str() {
            "strong" => Some(MiquelVariant::Strong),
            "weak" => Some(MiquelVariant::Weak),
            _ => None,
        }
    }
}

/// A schema instance whose thesis fails, plus the offending chain for the
/// weak variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiquelCounterexample {
    pub instance: MiquelInstance,
    pub variant: MiquelVariant,
    pub witness_chain: Option<usize>,
}

impl MiquelCounterexample {
    pub fn revalidate(&self, s: &IncidenceStructure) -> bool {
        if !self.instance.hypothesis_holds(s) {
            return false;
        }
        let b = &self.instance.b;
        match self.variant {
            MiquelVariant::Strong => {
                !(0..s.num_blocks()).any(|c| b.iter().all(|&p| s.is_flag(p, c)))
            }
            MiquelVariant::Weak => match self.witness_chain {
                Some(c) => {
                    b[..3].iter().all(|&p| s.is_flag(p, c)) && !s.is_flag(b[3], c)
                }
                None => false,
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct MiquelCheck {
    pub variant: MiquelVariant,
    pub instances_checked: usize,
    pub candidates_examined: u64,
    pub capped: bool,
    pub counterexamples: Vec<MiquelCounterexample>,
}

impl MiquelCheck {
    /// Pass means every instance closed *and* the enumeration was complete.
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && !self.capped
    }
}

/// Check the Miquel axiom over every schema instance of `s`.
pub fn check_miquel(s: &IncidenceStructure, variant: MiquelVariant, budget: u64) -> MiquelCheck {
    let scan = enumerate_miquel_instances(s, budget, true);
    let mut counterexamples = Vec::new();
    for inst in &scan.instances {
        match variant {
            MiquelVariant::Strong => {
                let closes = (0..s.num_blocks()).any(|c| inst.b.iter().all(|&p| s.is_flag(p, c)));
                if !closes {
                    counterexamples.push(MiquelCounterexample {
                        instance: inst.clone(),
                        variant,
                        witness_chain: None,
                    });
                }
            }
            MiquelVariant::Weak => {
                for c in 0..s.num_blocks() {
                    if inst.b[..3].iter().all(|&p| s.is_flag(p, c)) && !s.is_flag(inst.b[3], c) {
                        counterexamples.push(MiquelCounterexample {
                            instance: inst.clone(),
                            variant,
                            witness_chain: Some(c),
                        });
                    }
                }
            }
        }
    }
    MiquelCheck {
        variant,
        instances_checked: scan.instances.len(),
        candidates_examined: scan.candidates_examined,
        capped: scan.capped,
        counterexamples,
    }
}
