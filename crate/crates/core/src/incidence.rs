//! Incidence structures: labelled points and blocks with a flag relation,
//! configuration signatures, duals, and closure operators.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::subset::FiniteSubset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("duplicate point label {0}")]
    DuplicatePoint(String),
    #[error("duplicate block label {0}")]
    DuplicateBlock(String),
    #[error("flag ({0}, {1}) references an invalid index")]
    FlagOutOfRange(usize, usize),
    #[error("structure is empty")]
    Empty,
    #[error("label {0} not found")]
    UnknownLabel(String),
    #[error("point and block labels collide at {0}")]
    LabelCollision(String),
}

/// A point or block label: either a ground-set subset or an opaque name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Set(FiniteSubset),
    Name(String),
}

impl Label {
    pub fn as_set(&self) -> Option<&FiniteSubset> {
        match self {
            Label::Set(s) => Some(s),
            Label::Name(_) => None,
        }
    }
}

impl From<FiniteSubset> for Label {
    fn from(s: FiniteSubset) -> Self {
        Label::Set(s)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Name(s.to_string())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Set(s) => write!(f, "{s}"),
            Label::Name(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite incidence structure ⟨points, blocks, flags⟩.
///
/// Immutable after construction; all operations produce new structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    points: Vec<Label>,
    blocks: Vec<Label>,
    point_blocks: Vec<Vec<usize>>,
    block_points: Vec<Vec<usize>>,
    point_index: HashMap<Label, usize>,
    block_index: HashMap<Label, usize>,
}

impl IncidenceStructure {
    pub fn new(
        points: Vec<Label>,
        blocks: Vec<Label>,
        flags: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, StructureError> {
        let mut point_index = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if point_index.insert(p.clone(), i).is_some() {
                return Err(StructureError::DuplicatePoint(p.to_string()));
            }
        }
        let mut block_index = HashMap::new();
        for (i, b) in blocks.iter().enumerate() {
            if block_index.insert(b.clone(), i).is_some() {
                return Err(StructureError::DuplicateBlock(b.to_string()));
            }
        }
        let mut point_blocks = vec![Vec::new(); points.len()];
        let mut block_points = vec![Vec::new(); blocks.len()];
        let mut seen = BTreeSet::new();
        for (p, b) in flags {
            if p >= points.len() || b >= blocks.len() {
                return Err(StructureError::FlagOutOfRange(p, b));
            }
            if seen.insert((p, b)) {
                point_blocks[p].push(b);
                block_points[b].push(p);
            }
        }
        for v in &mut point_blocks {
            v.sort_unstable();
        }
        for v in &mut block_points {
            v.sort_unstable();
        }
        Ok(IncidenceStructure {
            points,
            blocks,
            point_blocks,
            block_points,
            point_index,
            block_index,
        })
    }

    /// Build from subset families with a pointwise incidence predicate.
    pub fn from_subsets(
        points: Vec<FiniteSubset>,
        blocks: Vec<FiniteSubset>,
        incident: impl Fn(&FiniteSubset, &FiniteSubset) -> bool,
    ) -> Self {
        let mut flags = Vec::new();
        for (pi, p) in points.iter().enumerate() {
            for (bi, b) in blocks.iter().enumerate() {
                if incident(p, b) {
                    flags.push((pi, bi));
                }
            }
        }
        IncidenceStructure::new(
            points.into_iter().map(Label::Set).collect(),
            blocks.into_iter().map(Label::Set).collect(),
            flags,
        )
        .expect("subset families are duplicate-free")
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_flags(&self) -> usize {
        self.point_blocks.iter().map(Vec::len).sum()
    }

    pub fn point_label(&self, i: usize) -> &Label {
        &self.points[i]
    }

    pub fn block_label(&self, i: usize) -> &Label {
        &self.blocks[i]
    }

    pub fn point_labels(&self) -> &[Label] {
        &self.points
    }

    pub fn block_labels(&self) -> &[Label] {
        &self.blocks
    }

    pub fn point_index(&self, label: &Label) -> Option<usize> {
        self.point_index.get(label).copied()
    }

    pub fn block_index(&self, label: &Label) -> Option<usize> {
        self.block_index.get(label).copied()
    }

    pub fn set_point_index(&self, s: &FiniteSubset) -> Option<usize> {
        self.point_index(&Label::Set(*s))
    }

    pub fn set_block_index(&self, s: &FiniteSubset) -> Option<usize> {
        self.block_index(&Label::Set(*s))
    }

    pub fn blocks_of_point(&self, p: usize) -> &[usize] {
        &self.point_blocks[p]
    }

    pub fn points_of_block(&self, b: usize) -> &[usize] {
        &self.block_points[b]
    }

    pub fn is_flag(&self, p: usize, b: usize) -> bool {
        self.point_blocks[p].binary_search(&b).is_ok()
    }

    pub fn flags(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.point_blocks
            .iter()
            .enumerate()
            .flat_map(|(p, bs)| bs.iter().map(move |&b| (p, b)))
    }

    /// Blocks incident with both points, in ascending index order.
    pub fn blocks_through_pair(&self, p: usize, q: usize) -> Vec<usize> {
        sorted_intersection(&self.point_blocks[p], &self.point_blocks[q])
    }

    /// Points incident with both blocks.
    pub fn points_on_both(&self, b1: usize, b2: usize) -> Vec<usize> {
        sorted_intersection(&self.block_points[b1], &self.block_points[b2])
    }

    /// Swap points and blocks, transposing the flag relation.
    pub fn dual(&self) -> IncidenceStructure {
        IncidenceStructure {
            points: self.blocks.clone(),
            blocks: self.points.clone(),
            point_blocks: self.block_points.clone(),
            block_points: self.point_blocks.clone(),
            point_index: self.block_index.clone(),
            block_index: self.point_index.clone(),
        }
    }

    /// Copy with one block removed (its points stay).
    pub fn delete_block(&self, label: &Label) -> Result<IncidenceStructure, StructureError> {
        let bi = self
            .block_index(label)
            .ok_or_else(|| StructureError::UnknownLabel(label.to_string()))?;
        let blocks: Vec<Label> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != bi)
            .map(|(_, l)| l.clone())
            .collect();
        let flags = self.flags().filter(|&(_, b)| b != bi).map(|(p, b)| {
            (p, if b > bi { b - 1 } else { b })
        });
        IncidenceStructure::new(self.points.clone(), blocks, flags.collect::<Vec<_>>())
    }

    /// Copy with a single flag removed.
    pub fn delete_flag(&self, p: usize, b: usize) -> IncidenceStructure {
        let flags: Vec<(usize, usize)> =
            self.flags().filter(|&(fp, fb)| (fp, fb) != (p, b)).collect();
        IncidenceStructure::new(self.points.clone(), self.blocks.clone(), flags)
            .expect("labels unchanged")
    }

    /// The substructure induced by the given point and block index sets
    /// (flags restricted to both).
    pub fn restriction(&self, points: &BTreeSet<usize>, blocks: &BTreeSet<usize>) -> IncidenceStructure {
        let pts: Vec<usize> = points.iter().copied().collect();
        let blks: Vec<usize> = blocks.iter().copied().collect();
        let pmap: HashMap<usize, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let bmap: HashMap<usize, usize> = blks.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let flags: Vec<(usize, usize)> = self
            .flags()
            .filter_map(|(p, b)| Some((*pmap.get(&p)?, *bmap.get(&b)?)))
            .collect();
        IncidenceStructure::new(
            pts.iter().map(|&p| self.points[p].clone()).collect(),
            blks.iter().map(|&b| self.blocks[b].clone()).collect(),
            flags,
        )
        .expect("restriction keeps labels unique")
    }
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Configuration type (v_r b_k): counts with common ranks when uniform,
/// modal ranks otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ConfigSignature {
    pub v: usize,
    pub r: usize,
    pub b: usize,
    pub k: usize,
    pub uniform: bool,
}

impl fmt::Display for ConfigSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.r, self.b, self.k)?;
        if !self.uniform {
            write!(f, " [non-uniform, modal ranks]")?;
        }
        Ok(())
    }
}

/// Point/block counts and ranks of a nonempty structure.
pub fn signature(s: &IncidenceStructure) -> Result<ConfigSignature, StructureError> {
    if s.num_points() == 0 && s.num_blocks() == 0 {
        return Err(StructureError::Empty);
    }
    let point_ranks: Vec<usize> = (0..s.num_points()).map(|p| s.blocks_of_point(p).len()).collect();
    let block_ranks: Vec<usize> = (0..s.num_blocks()).map(|b| s.points_of_block(b).len()).collect();
    let (r, r_uniform) = modal(&point_ranks);
    let (k, k_uniform) = modal(&block_ranks);
    Ok(ConfigSignature {
        v: s.num_points(),
        r,
        b: s.num_blocks(),
        k,
        uniform: r_uniform && k_uniform,
    })
}

/// Most frequent value (smallest on ties) and whether all values agree.
fn modal(values: &[usize]) -> (usize, bool) {
    if values.is_empty() {
        return (0, true);
    }
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &v in values {
        *counts.entry(v).or_insert(0) += 1;
    }
    let mut best = (values[0], 0usize);
    let mut keys: Vec<usize> = counts.keys().copied().collect();
    keys.sort_unstable();
    for k in keys {
        let c = counts[&k];
        if c > best.1 {
            best = (k, c);
        }
    }
    (best.0, counts.len() == 1)
}

/// Least `(l1, l2)`-closed pair of point/block index sets containing the seeds:
/// a block joins when it meets the current points in at least `l1` of them, a
/// point joins when it lies on at least `l2` current blocks.
pub fn closure(
    s: &IncidenceStructure,
    seed_points: &[usize],
    seed_blocks: &[usize],
    l1: usize,
    l2: usize,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    assert!(l1 >= 1 && l2 >= 1, "closure thresholds must be at least 1");
    let mut pts: BTreeSet<usize> = seed_points.iter().copied().collect();
    let mut blks: BTreeSet<usize> = seed_blocks.iter().copied().collect();
    loop {
        let mut changed = false;
        for b in 0..s.num_blocks() {
            if blks.contains(&b) {
                continue;
            }
            let meet = s.points_of_block(b).iter().filter(|p| pts.contains(p)).count();
            if meet >= l1 {
                blks.insert(b);
                changed = true;
            }
        }
        for p in 0..s.num_points() {
            if pts.contains(&p) {
                continue;
            }
            let on = s.blocks_of_point(p).iter().filter(|b| blks.contains(b)).count();
            if on >= l2 {
                pts.insert(p);
                changed = true;
            }
        }
        if !changed {
            return (pts, blks);
        }
    }
}

/// Outcome of the `(l1, l2)`-closedness test, split by condition so callers
/// can inspect the halves separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedReport {
    pub block_condition_ok: bool,
    pub block_violation: Option<usize>,
    pub point_condition_ok: bool,
    pub point_violation: Option<usize>,
}

impl ClosedReport {
    pub fn is_closed(&self) -> bool {
        self.block_condition_ok && self.point_condition_ok
    }
}

/// Check that the given substructure is `(l1, l2)`-closed in `s`:
/// no outside block meets it in ≥ `l1` points and no outside point lies on
/// ≥ `l2` of its blocks.
pub fn is_closed_substructure(
    s: &IncidenceStructure,
    sub_points: &BTreeSet<usize>,
    sub_blocks: &BTreeSet<usize>,
    l1: usize,
    l2: usize,
) -> ClosedReport {
    let mut report = ClosedReport {
        block_condition_ok: true,
        block_violation: None,
        point_condition_ok: true,
        point_violation: None,
    };
    for b in 0..s.num_blocks() {
        if sub_blocks.contains(&b) {
            continue;
        }
        let meet = s.points_of_block(b).iter().filter(|p| sub_points.contains(p)).count();
        if meet >= l1 {
            report.block_condition_ok = false;
            report.block_violation = Some(b);
            break;
        }
    }
    for p in 0..s.num_points() {
        if sub_points.contains(&p) {
            continue;
        }
        let on = s.blocks_of_point(p).iter().filter(|b| sub_blocks.contains(b)).count();
        if on >= l2 {
            report.point_condition_ok = false;
            report.point_violation = Some(p);
            break;
        }
    }
    report
}
