//! Constructors for the named structures: Cox configurations, combinatorial
//! Grassmannians and their clique structures, the Grassmannian-to-Cox
//! completion, residuals, Miquel substructures, and translation decompositions.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::incidence::{IncidenceStructure, Label};
use crate::subset::{FiniteSubset, MAX_GROUND};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("{0} is not a block of the structure")]
    NotABlock(String),
    #[error("{0} is not a point of the structure")]
    NotAPoint(String),
    #[error("X1 and X2 must partition the ground set")]
    NotAPartition,
    #[error("maximal clique {0} is neither a star nor a top")]
    CliqueClassification(String),
}

/// The Cox configuration on `{1, …, n}`: even-cardinality subsets as points,
/// odd-cardinality subsets as blocks, incidence when one covers the other.
pub fn cox(n: u8) -> Result<IncidenceStructure, BuildError> {
    if !(3..=MAX_GROUND).contains(&n) {
        return Err(BuildError::BadParameter(format!(
            "cox requires 3 <= n <= {MAX_GROUND}, got {n}"
        )));
    }
    let points: Vec<FiniteSubset> = FiniteSubset::all(n).into_iter().filter(|s| s.is_even()).collect();
    let blocks: Vec<FiniteSubset> = FiniteSubset::all(n).into_iter().filter(|s| !s.is_even()).collect();
    Ok(IncidenceStructure::from_subsets(points, blocks, |p, b| p.adjacent(b)))
}

/// The classical labelling of `cox(4)`: circle names `A_i`, `B_i` and point
/// names `q_A`, `q_ij`, `q_B`, each paired with the subset it stands for,
/// in the column/row order of the classical incidence table.
pub struct SteinerMiquelLabels {
    pub points: Vec<(String, FiniteSubset)>,
    pub blocks: Vec<(String, FiniteSubset)>,
}

pub fn steiner_miquel_labels() -> SteinerMiquelLabels {
    let n = 4;
    let mut points = vec![("q_A".to_string(), FiniteSubset::empty(n))];
    for i in 1..=4u8 {
        for j in (i + 1)..=4u8 {
            points.push((format!("q_{i}{j}"), FiniteSubset::from_elems(n, &[i, j])));
        }
    }
    points.push(("q_B".to_string(), FiniteSubset::full(n)));
    let mut blocks = Vec::new();
    for i in 1..=4u8 {
        blocks.push((format!("A_{i}"), FiniteSubset::singleton(n, i)));
    }
    for i in 1..=4u8 {
        blocks.push((format!("B_{i}"), FiniteSubset::singleton(n, i).complement()));
    }
    SteinerMiquelLabels { points, blocks }
}

fn check_grassmann_params(n: u8, k: u32) -> Result<(), BuildError> {
    if n > MAX_GROUND || !(1 < k + 1 && k + 1 < n as u32) {
        return Err(BuildError::BadParameter(format!(
            "grassmannian requires 1 < k+1 < n <= {MAX_GROUND}, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// The combinatorial Grassmannian G(n, k): points are the k-subsets, blocks
/// are the tops T(b) of the (k+1)-subsets.
pub fn grassmannian(n: u8, k: u32) -> Result<IncidenceStructure, BuildError> {
    check_grassmann_params(n, k)?;
    let points = FiniteSubset::all_of_card(n, k);
    let blocks = FiniteSubset::all_of_card(n, k + 1);
    Ok(IncidenceStructure::from_subsets(points, blocks, |p, b| p.is_subset_of(b)))
}

/// K†(n, k): the k-subsets with both tops and stars as blocks — the maximal
/// clique structure of G(n, k). Tops are labelled by their (k+1)-set, stars
/// by their (k−1)-set core.
pub fn k_dagger(n: u8, k: u32) -> Result<IncidenceStructure, BuildError> {
    check_grassmann_params(n, k)?;
    let points = FiniteSubset::all_of_card(n, k);
    let mut blocks = FiniteSubset::all_of_card(n, k - 1); // stars S(h)
    blocks.extend(FiniteSubset::all_of_card(n, k + 1)); // tops T(b)
    blocks.sort();
    Ok(IncidenceStructure::from_subsets(points, blocks, |p, b| {
        p.adjacent(b) && (b.is_subset_of(p) || p.is_subset_of(b))
    }))
}

/// A maximal clique of the collinearity graph on the (k+1)-subsets,
/// classified per its shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueKind {
    /// All members contain the k-set: the bundle of lines through a point.
    Star(FiniteSubset),
    /// All members lie inside the (k+2)-set: a plane.
    Top(FiniteSubset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannClique {
    pub members: Vec<FiniteSubset>,
    pub kind: CliqueKind,
}

/// Deterministic Bron–Kerbosch enumeration of all maximal cliques.
fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn bk(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
            return;
        }
        // pivot on the vertex covering most of p
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| (p.iter().filter(|&&v| adj[u][v]).count(), std::cmp::Reverse(u)))
            .unwrap();
        let mut p_active = p.clone();
        let mut x_active = x;
        let branch: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        for v in branch {
            let np: Vec<usize> = p_active.iter().copied().filter(|&u| adj[v][u]).collect();
            let nx: Vec<usize> = x_active.iter().copied().filter(|&u| adj[v][u]).collect();
            r.push(v);
            bk(adj, r, np, nx, out);
            r.pop();
            p_active.retain(|&u| u != v);
            x_active.push(v);
        }
    }
    let mut out = Vec::new();
    bk(adj, &mut Vec::new(), (0..adj.len()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

/// All maximal cliques of the collinearity graph on the (k+1)-subsets
/// (adjacent when they share a k-set), each tagged as a star or a top.
pub fn max_cliques_grassmann(n: u8, k: u32) -> Result<Vec<GrassmannClique>, BuildError> {
    check_grassmann_params(n, k)?;
    let verts = FiniteSubset::all_of_card(n, k + 1);
    let adj: Vec<Vec<bool>> = verts
        .iter()
        .map(|a| verts.iter().map(|b| a != b && a.intersect(b).card() == k).collect())
        .collect();
    let mut out = Vec::new();
    for clique in maximal_cliques(&adj) {
        let members: Vec<FiniteSubset> = clique.iter().map(|&i| verts[i]).collect();
        let inter = members.iter().skip(1).fold(members[0], |acc, m| acc.intersect(m));
        let union = members.iter().skip(1).fold(members[0], |acc, m| acc.union(m));
        let kind = if members.len() >= 2 && inter.card() == k {
            CliqueKind::Star(inter)
        } else if union.card() == k + 2 {
            CliqueKind::Top(union)
        } else {
            return Err(BuildError::CliqueClassification(format!(
                "{members:?}"
            )));
        };
        out.push(GrassmannClique { members, kind });
    }
    Ok(out)
}

/// Trace of one completion step: how many planes / clique families were
/// found on a layer (recorded even when empty).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Gras2CoxLayer {
    pub direction: &'static str,
    pub layer_card: u32,
    pub new_points: usize,
    pub new_blocks: usize,
}

pub struct Gras2CoxResult {
    pub structure: IncidenceStructure,
    pub layers: Vec<Gras2CoxLayer>,
}

/// Incremental builder used by the completion: labels are subsets, flags are
/// discovered structurally from clique families, never read off the labels.
struct SubsetBuilder {
    points: Vec<FiniteSubset>,
    blocks: Vec<FiniteSubset>,
    point_ix: HashMap<FiniteSubset, usize>,
    block_ix: HashMap<FiniteSubset, usize>,
    point_blocks: Vec<BTreeSet<usize>>,
    block_points: Vec<BTreeSet<usize>>,
}

impl SubsetBuilder {
    fn new() -> Self {
        SubsetBuilder {
            points: Vec::new(),
            blocks: Vec::new(),
            point_ix: HashMap::new(),
            block_ix: HashMap::new(),
            point_blocks: Vec::new(),
            block_points: Vec::new(),
        }
    }

    fn add_point(&mut self, s: FiniteSubset) -> usize {
        *self.point_ix.entry(s).or_insert_with(|| {
            self.points.push(s);
            self.point_blocks.push(BTreeSet::new());
            self.points.len() - 1
        })
    }

    fn add_block(&mut self, s: FiniteSubset) -> usize {
        *self.block_ix.entry(s).or_insert_with(|| {
            self.blocks.push(s);
            self.block_points.push(BTreeSet::new());
            self.blocks.len() - 1
        })
    }

    fn add_flag(&mut self, p: usize, b: usize) {
        self.point_blocks[p].insert(b);
        self.block_points[b].insert(p);
    }

    fn common_point(&self, blocks: &[usize]) -> Option<usize> {
        let mut iter = blocks.iter();
        let first = *iter.next()?;
        let mut common: BTreeSet<usize> = self.block_points[first].clone();
        for &b in iter {
            common = common.intersection(&self.block_points[b]).copied().collect();
        }
        common.into_iter().next()
    }

    fn common_block(&self, points: &[usize]) -> Option<usize> {
        let mut iter = points.iter();
        let first = *iter.next()?;
        let mut common: BTreeSet<usize> = self.point_blocks[first].clone();
        for &p in iter {
            common = common.intersection(&self.point_blocks[p]).copied().collect();
        }
        common.into_iter().next()
    }

    fn finish(self) -> IncidenceStructure {
        let mut points = self.points.clone();
        let mut blocks = self.blocks.clone();
        points.sort();
        blocks.sort();
        let pmap: HashMap<FiniteSubset, usize> =
            points.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let bmap: HashMap<FiniteSubset, usize> =
            blocks.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut flags = Vec::new();
        for (p, bs) in self.point_blocks.iter().enumerate() {
            for &b in bs {
                flags.push((pmap[&self.points[p]], bmap[&self.blocks[b]]));
            }
        }
        IncidenceStructure::new(
            points.into_iter().map(Label::Set).collect(),
            blocks.into_iter().map(Label::Set).collect(),
            flags,
        )
        .expect("builder labels are unique")
    }
}

/// Complete the generalized Desargues configuration G(n, 2) to the full Cox
/// configuration: walk upward adding an improper point per plane and a block
/// per line-free plane family, then downward adding a block per point-free
/// clique and an ideal point per block family. The derived labels stay in
/// the subset lattice, so success is checkable against `cox(n)` directly.
pub fn gras2cox(n: u8) -> Result<Gras2CoxResult, BuildError> {
    if !(4..=MAX_GROUND).contains(&n) {
        return Err(BuildError::BadParameter(format!(
            "gras2cox requires 4 <= n <= {MAX_GROUND}, got {n}"
        )));
    }
    let mut b = SubsetBuilder::new();
    let mut layers = Vec::new();

    // seed with G(n, 2)
    let seed_points = FiniteSubset::all_of_card(n, 2);
    let seed_blocks = FiniteSubset::all_of_card(n, 3);
    let p_ix: Vec<usize> = seed_points.iter().map(|&s| b.add_point(s)).collect();
    let l_ix: Vec<usize> = seed_blocks.iter().map(|&s| b.add_block(s)).collect();
    for &p in &p_ix {
        for &l in &l_ix {
            if b.points[p].is_subset_of(&b.blocks[l]) {
                b.add_flag(p, l);
            }
        }
    }

    // upward: planes become improper points, line-free plane families blocks
    let mut block_layer = l_ix;
    let mut card = 2u32;
    loop {
        // maximal cliques of lines pairwise sharing a point
        let adj: Vec<Vec<bool>> = block_layer
            .iter()
            .map(|&i| {
                block_layer
                    .iter()
                    .map(|&j| i != j && !b.block_points[i].is_disjoint(&b.block_points[j]))
                    .collect()
            })
            .collect();
        let mut new_points = Vec::new();
        for clique in maximal_cliques(&adj) {
            let members: Vec<usize> = clique.iter().map(|&i| block_layer[i]).collect();
            if b.common_point(&members).is_some() {
                continue; // a bundle through a point, not a plane
            }
            let label = members
                .iter()
                .map(|&m| b.blocks[m])
                .reduce(|acc, s| acc.union(&s))
                .unwrap();
            debug_assert_eq!(label.card(), card + 2);
            let p = b.add_point(label);
            for &m in &members {
                b.add_flag(p, m);
            }
            new_points.push(p);
        }
        new_points.sort_unstable();
        // families of planes pairwise sharing a line, with no common line
        let adj2: Vec<Vec<bool>> = new_points
            .iter()
            .map(|&i| {
                new_points
                    .iter()
                    .map(|&j| i != j && !b.point_blocks[i].is_disjoint(&b.point_blocks[j]))
                    .collect()
            })
            .collect();
        let mut new_blocks = Vec::new();
        for clique in maximal_cliques(&adj2) {
            let members: Vec<usize> = clique.iter().map(|&i| new_points[i]).collect();
            if members.len() < 2 || b.common_block(&members).is_some() {
                continue;
            }
            let label = members
                .iter()
                .map(|&m| b.points[m])
                .reduce(|acc, s| acc.union(&s))
                .unwrap();
            debug_assert_eq!(label.card(), card + 3);
            let blk = b.add_block(label);
            for &m in &members {
                b.add_flag(m, blk);
            }
            new_blocks.push(blk);
        }
        new_blocks.sort_unstable();
        layers.push(Gras2CoxLayer {
            direction: "up",
            layer_card: card,
            new_points: new_points.len(),
            new_blocks: new_blocks.len(),
        });
        if new_points.is_empty() || new_blocks.is_empty() {
            break;
        }
        block_layer = new_blocks;
        card += 2;
    }

    // downward from the 2-layer: point-free cliques become blocks, block
    // families become ideal points
    let mut point_layer: Vec<usize> = (0..b.points.len())
        .filter(|&p| b.points[p].card() == 2)
        .collect();
    let mut card = 2u32;
    loop {
        let adj: Vec<Vec<bool>> = point_layer
            .iter()
            .map(|&i| {
                point_layer
                    .iter()
                    .map(|&j| i != j && !b.point_blocks[i].is_disjoint(&b.point_blocks[j]))
                    .collect()
            })
            .collect();
        let mut new_blocks = Vec::new();
        for clique in maximal_cliques(&adj) {
            let members: Vec<usize> = clique.iter().map(|&i| point_layer[i]).collect();
            if members.len() < 2 || b.common_block(&members).is_some() {
                continue; // the point set of an existing line
            }
            let label = members
                .iter()
                .map(|&m| b.points[m])
                .reduce(|acc, s| acc.intersect(&s))
                .unwrap();
            debug_assert_eq!(label.card(), card - 1);
            let blk = b.add_block(label);
            for &m in &members {
                b.add_flag(m, blk);
            }
            new_blocks.push(blk);
        }
        new_blocks.sort_unstable();
        let adj2: Vec<Vec<bool>> = new_blocks
            .iter()
            .map(|&i| {
                new_blocks
                    .iter()
                    .map(|&j| i != j && !b.block_points[i].is_disjoint(&b.block_points[j]))
                    .collect()
            })
            .collect();
        let mut new_points = Vec::new();
        for clique in maximal_cliques(&adj2) {
            let members: Vec<usize> = clique.iter().map(|&i| new_blocks[i]).collect();
            if members.len() < 2 || b.common_point(&members).is_some() {
                continue;
            }
            let label = members
                .iter()
                .map(|&m| b.blocks[m])
                .reduce(|acc, s| acc.intersect(&s))
                .unwrap();
            debug_assert_eq!(label.card(), card - 2);
            let p = b.add_point(label);
            for &m in &members {
                b.add_flag(p, m);
            }
            new_points.push(p);
        }
        new_points.sort_unstable();
        layers.push(Gras2CoxLayer {
            direction: "down",
            layer_card: card,
            new_points: new_points.len(),
            new_blocks: new_blocks.len(),
        });
        if new_points.is_empty() || new_blocks.is_empty() || card < 4 {
            break;
        }
        point_layer = new_points;
        card -= 2;
    }

    Ok(Gras2CoxResult { structure: b.finish(), layers })
}

/// Residual of a Cox configuration at a point: the blocks through `p` with
/// `p` removed, restricted to residual points of rank at least two. Reports
/// both block counts and whether the residual blocks pairwise intersect.
#[derive(Debug)]
pub struct Residual {
    pub structure: IncidenceStructure,
    pub blocks_total: usize,
    pub blocks_covered: usize,
    pub blocks_covering: usize,
    pub pairwise_intersecting: bool,
}

pub fn residual_at_point(s: &IncidenceStructure, p: &FiniteSubset) -> Result<Residual, BuildError> {
    let pi = s
        .set_point_index(p)
        .ok_or_else(|| BuildError::NotAPoint(p.to_string()))?;
    let through: Vec<usize> = s.blocks_of_point(pi).to_vec();
    let mut covered = 0usize;
    let mut covering = 0usize;
    for &bi in &through {
        if let Label::Set(bs) = s.block_label(bi) {
            if bs.card() + 1 == p.card() {
                covered += 1;
            } else {
                covering += 1;
            }
        }
    }
    // residual point rank: incidences with the chosen blocks, p excluded
    let mut rank: HashMap<usize, usize> = HashMap::new();
    for &bi in &through {
        for &q in s.points_of_block(bi) {
            if q != pi {
                *rank.entry(q).or_insert(0) += 1;
            }
        }
    }
    let kept: BTreeSet<usize> = rank.iter().filter(|(_, &r)| r >= 2).map(|(&q, _)| q).collect();
    let blocks: BTreeSet<usize> = through.iter().copied().collect();
    let structure = s.restriction(&kept, &blocks);
    let pairwise = (0..structure.num_blocks()).all(|i| {
        (i + 1..structure.num_blocks()).all(|j| !structure.points_on_both(i, j).is_empty())
    });
    Ok(Residual {
        structure,
        blocks_total: through.len(),
        blocks_covered: covered,
        blocks_covering: covering,
        pairwise_intersecting: pairwise,
    })
}

/// All blocks sharing no point with the given block, ascending by index.
pub fn disjoint_blocks(s: &IncidenceStructure, d: &Label) -> Result<Vec<usize>, BuildError> {
    let di = s
        .block_index(d)
        .ok_or_else(|| BuildError::NotABlock(d.to_string()))?;
    Ok((0..s.num_blocks())
        .filter(|&b| b != di && s.points_on_both(di, b).is_empty())
        .collect())
}

/// The Miquel configuration inside `cox(4)`: all eight points with the block
/// `d` and its unique disjoint partner removed.
pub fn miquel_substructure(d: &FiniteSubset) -> Result<IncidenceStructure, BuildError> {
    let c4 = cox(4)?;
    let label = Label::Set(*d);
    if c4.block_index(&label).is_none() {
        return Err(BuildError::NotABlock(d.to_string()));
    }
    let partners = disjoint_blocks(&c4, &label)?;
    debug_assert_eq!(partners.len(), 1);
    let partner = c4.block_label(partners[0]).clone();
    c4.delete_block(&label)
        .and_then(|s| s.delete_block(&partner))
        .map_err(|e| BuildError::BadParameter(e.to_string()))
}

/// One translated copy of a small Cox configuration inside a larger one.
#[derive(Clone, Debug)]
pub struct DecompositionMember {
    /// Which side of the partition the copy is built on (1 or 2).
    pub family: u8,
    /// The translation subset A drawn from the other side.
    pub shift: FiniteSubset,
    /// All labels of the copy: `{ a △ A : a ⊆ X_i }`.
    pub labels: BTreeSet<FiniteSubset>,
}

#[derive(Debug)]
pub struct Decomposition {
    pub x1: FiniteSubset,
    pub x2: FiniteSubset,
    pub family1: Vec<DecompositionMember>,
    pub family2: Vec<DecompositionMember>,
    /// Every flag of the ambient configuration lies in exactly one member.
    pub flag_cover_unique: bool,
    /// Any member of one family meets any member of the other in exactly
    /// one label.
    pub transversal: bool,
}

impl Decomposition {
    /// The member owning a flag: the one whose label set contains both ends.
    pub fn owner(&self, point: &FiniteSubset, block: &FiniteSubset) -> Option<&DecompositionMember> {
        self.family1
            .iter()
            .chain(self.family2.iter())
            .find(|m| m.labels.contains(point) && m.labels.contains(block))
    }
}

fn subsets_of(base: &FiniteSubset) -> Vec<FiniteSubset> {
    let n = base.ground_size();
    let elems: Vec<u8> = base.elems().collect();
    let mut out = Vec::with_capacity(1 << elems.len());
    for mask in 0u32..(1 << elems.len()) {
        let mut s = FiniteSubset::empty(n);
        for (i, &e) in elems.iter().enumerate() {
            if mask & (1 << i) != 0 {
                s = s.with(e);
            }
        }
        out.push(s);
    }
    out.sort();
    out
}

/// Split `cox(n)` along a partition `X1 ⊎ X2` into translated copies
/// `τ_A(cox(X_i))`, `A ⊆ X_{3−i}`, verifying the covering and
/// transversality claims flag by flag.
pub fn decompose(n: u8, x1: &FiniteSubset, x2: &FiniteSubset) -> Result<Decomposition, BuildError> {
    if x1.ground_size() != n || x2.ground_size() != n {
        return Err(BuildError::NotAPartition);
    }
    if !x1.intersect(x2).is_empty()
        || x1.union(x2) != FiniteSubset::full(n)
        || x1.is_empty()
        || x2.is_empty()
    {
        return Err(BuildError::NotAPartition);
    }
    let ambient = cox(n)?;
    let make_family = |base: &FiniteSubset, other: &FiniteSubset, family: u8| {
        let base_subsets = subsets_of(base);
        subsets_of(other)
            .into_iter()
            .map(|shift| DecompositionMember {
                family,
                shift,
                labels: base_subsets.iter().map(|a| a.sym_diff(&shift)).collect(),
            })
            .collect::<Vec<_>>()
    };
    let family1 = make_family(x1, x2, 1);
    let family2 = make_family(x2, x1, 2);

    // covering: each flag of cox(n) lies in exactly one member
    let mut flag_cover_unique = true;
    'flags: for (p, b) in ambient.flags() {
        let (pl, bl) = match (ambient.point_label(p), ambient.block_label(b)) {
            (Label::Set(pl), Label::Set(bl)) => (*pl, *bl),
            _ => unreachable!("cox labels are subsets"),
        };
        let mut owners = 0;
        for m in family1.iter().chain(family2.iter()) {
            if m.labels.contains(&pl) && m.labels.contains(&bl) {
                owners += 1;
            }
        }
        if owners != 1 {
            flag_cover_unique = false;
            break 'flags;
        }
    }

    // transversality: cross-family members share exactly one label
    let mut transversal = true;
    'outer: for m1 in &family1 {
        for m2 in &family2 {
            if m1.labels.intersection(&m2.labels).count() != 1 {
                transversal = false;
                break 'outer;
            }
        }
    }

    Ok(Decomposition {
        x1: *x1,
        x2: *x2,
        family1,
        family2,
        flag_cover_unique,
        transversal,
    })
}

/// The sub-incidence-structure of `cox(n)` induced by a member's labels.
pub fn member_structure(ambient: &IncidenceStructure, m: &DecompositionMember) -> IncidenceStructure {
    let pts: BTreeSet<usize> = m
        .labels
        .iter()
        .filter_map(|l| ambient.set_point_index(l))
        .collect();
    let blks: BTreeSet<usize> = m
        .labels
        .iter()
        .filter_map(|l| ambient.set_block_index(l))
        .collect();
    ambient.restriction(&pts, &blks)
}
