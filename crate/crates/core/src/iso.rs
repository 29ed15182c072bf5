//! Isomorphism and automorphism search on incidence structures.
//!
//! Structures are compared through their Levi graphs with side colours.
//! Colour classes are refined by neighbourhood multisets before a
//! backtracking search assigns images vertex by vertex; the refined classes
//! keep the highly symmetric inputs tractable.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::incidence::IncidenceStructure;

/// Brute-force searches are restricted to small structures.
pub const SEARCH_SIZE_CAP: usize = 60;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("structure too large for exhaustive search: {size} elements exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
}

/// An incidence-preserving pair of bijections, as index maps.
///
/// For an isomorphism or automorphism, `point_map[p]` is a point index and
/// `block_map[b]` a block index of the target. For a correlation,
/// `point_map[p]` is a *block* index and `block_map[b]` a *point* index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StructureIso {
    pub point_map: Vec<usize>,
    pub block_map: Vec<usize>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn test(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn eq_bits(&self, other: &Bits) -> bool {
        self.0 == other.0
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }
}

struct Graph {
    n: usize,
    adj: Vec<Bits>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    fn from_structure(s: &IncidenceStructure) -> Graph {
        let np = s.num_points();
        let n = np + s.num_blocks();
        let mut adj: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
        let mut neighbors = vec![Vec::new(); n];
        for (p, b) in s.flags() {
            adj[p].set(np + b);
            adj[np + b].set(p);
            neighbors[p].push(np + b);
            neighbors[np + b].push(p);
        }
        Graph { n, adj, neighbors }
    }
}

/// Jointly refine the colourings of two graphs until stable, keeping colour
/// ids comparable across the pair.
fn refine_pair(g1: &Graph, c1: &mut Vec<u32>, g2: &Graph, c2: &mut Vec<u32>) {
    loop {
        let sig = |g: &Graph, c: &Vec<u32>, v: usize| {
            let mut ns: Vec<u32> = g.neighbors[v].iter().map(|&u| c[u]).collect();
            ns.sort_unstable();
            (c[v], ns)
        };
        let sigs1: Vec<_> = (0..g1.n).map(|v| sig(g1, c1, v)).collect();
        let sigs2: Vec<_> = (0..g2.n).map(|v| sig(g2, c2, v)).collect();
        let mut numbering: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in sigs1.iter().chain(sigs2.iter()) {
            let next = numbering.len() as u32;
            numbering.entry(s).or_insert(next);
        }
        // re-number in sorted signature order for determinism
        let mut ordered: Vec<u32> = vec![0; numbering.len()];
        for (i, (_, v)) in numbering.iter().enumerate() {
            ordered[*v as usize] = i as u32;
        }
        let old_classes = distinct(c1, c2);
        for (v, s) in sigs1.iter().enumerate() {
            c1[v] = ordered[numbering[s] as usize];
        }
        for (v, s) in sigs2.iter().enumerate() {
            c2[v] = ordered[numbering[s] as usize];
        }
        if distinct(c1, c2) == old_classes {
            return;
        }
    }
}

fn distinct(c1: &[u32], c2: &[u32]) -> usize {
    let mut all: Vec<u32> = c1.iter().chain(c2.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Deterministic search order: start from the smallest colour class and
/// prefer vertices with many already-ordered neighbours.
fn search_order(g: &Graph, colors: &[u32]) -> Vec<usize> {
    let mut class_size: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in colors {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut placed = vec![false; g.n];
    let mut mapped_neighbors = vec![0usize; g.n];
    let mut order = Vec::with_capacity(g.n);
    for _ in 0..g.n {
        let key = |x: usize| (mapped_neighbors[x], std::cmp::Reverse(class_size[&colors[x]]));
        let v = (0..g.n)
            .filter(|&x| !placed[x])
            .max_by(|&x, &y| key(x).cmp(&key(y)).then_with(|| y.cmp(&x)))
            .expect("some vertex unplaced");
        placed[v] = true;
        order.push(v);
        for &u in &g.neighbors[v] {
            mapped_neighbors[u] += 1;
        }
    }
    order
}

/// Backtracking over colour-compatible, adjacency-consistent assignments.
/// Yields every complete mapping when `all` is set, otherwise the first.
fn search(g1: &Graph, c1: &[u32], g2: &Graph, c2: &[u32], all: bool) -> Vec<Vec<usize>> {
    if g1.n != g2.n {
        return Vec::new();
    }
    // class sizes must agree
    let mut s1: BTreeMap<u32, usize> = BTreeMap::new();
    let mut s2: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in c1 {
        *s1.entry(c).or_insert(0) += 1;
    }
    for &c in c2 {
        *s2.entry(c).or_insert(0) += 1;
    }
    if s1 != s2 {
        return Vec::new();
    }
    let num_colors = c1.iter().chain(c2.iter()).max().map_or(0, |&m| m as usize + 1);
    let mut class_bits2: Vec<Bits> = (0..num_colors).map(|_| Bits::new(g2.n)).collect();
    for (v, &c) in c2.iter().enumerate() {
        class_bits2[c as usize].set(v);
    }
    let order = search_order(g1, c1);

    struct State<'a> {
        g1: &'a Graph,
        g2: &'a Graph,
        c1: &'a [u32],
        order: &'a [usize],
        class_bits2: &'a [Bits],
        mapping: Vec<usize>,
        mapped1: Bits,
        used2: Bits,
        image_bits: Bits,
        results: Vec<Vec<usize>>,
        all: bool,
        done: bool,
    }

    fn rec(st: &mut State, depth: usize) {
        if st.done {
            return;
        }
        if depth == st.order.len() {
            st.results.push(st.mapping.clone());
            if !st.all {
                st.done = true;
            }
            return;
        }
        let v = st.order[depth];
        // required adjacency pattern among already-mapped images
        let mut required = Bits::new(st.g2.n);
        for &u in &st.g1.neighbors[v] {
            if st.mapped1.test(u) {
                required.set(st.mapping[u]);
            }
        }
        let candidates = st.class_bits2[st.c1[v] as usize].and_not(&st.used2);
        let cand: Vec<usize> = candidates.ones().collect();
        for c in cand {
            if st.g2.adj[c].and(&st.image_bits).eq_bits(&required) {
                st.mapping[v] = c;
                st.mapped1.set(v);
                st.used2.set(c);
                st.image_bits.set(c);
                rec(st, depth + 1);
                st.mapped1.clear(v);
                st.used2.clear(c);
                st.image_bits.clear(c);
                if st.done {
                    return;
                }
            }
        }
    }

    let mut st = State {
        g1,
        g2,
        c1,
        order: &order,
        class_bits2: &class_bits2,
        mapping: vec![usize::MAX; g1.n],
        mapped1: Bits::new(g1.n),
        used2: Bits::new(g2.n),
        image_bits: Bits::new(g2.n),
        results: Vec::new(),
        all,
        done: false,
    };
    rec(&mut st, 0);
    st.results
}

fn levi_search(
    s1: &IncidenceStructure,
    s2: &IncidenceStructure,
    swap_sides: bool,
    all: bool,
) -> Vec<StructureIso> {
    let g1 = Graph::from_structure(s1);
    let g2 = Graph::from_structure(s2);
    let np1 = s1.num_points();
    let np2 = s2.num_points();
    let mut c1: Vec<u32> = (0..g1.n).map(|v| if v < np1 { 0 } else { 1 }).collect();
    let mut c2: Vec<u32> = (0..g2.n)
        .map(|v| {
            let is_point = v < np2;
            if is_point != swap_sides { 0 } else { 1 }
        })
        .collect();
    refine_pair(&g1, &mut c1, &g2, &mut c2);
    let raw = search(&g1, &c1, &g2, &c2, all);
    raw.into_iter()
        .map(|m| {
            let point_map: Vec<usize> = (0..np1)
                .map(|p| if swap_sides { m[p] - np2 } else { m[p] })
                .collect();
            let block_map: Vec<usize> = (0..s1.num_blocks())
                .map(|b| if swap_sides { m[np1 + b] } else { m[np1 + b] - np2 })
                .collect();
            StructureIso { point_map, block_map }
        })
        .collect()
}

/// First incidence-preserving bijection pair from `s1` to `s2`
/// (points to points, blocks to blocks), or `None`. Deterministic for a
/// given input order.
pub fn find_isomorphism(s1: &IncidenceStructure, s2: &IncidenceStructure) -> Option<StructureIso> {
    if s1.num_points() != s2.num_points()
        || s1.num_blocks() != s2.num_blocks()
        || s1.num_flags() != s2.num_flags()
    {
        return None;
    }
    levi_search(s1, s2, false, false).into_iter().next()
}

fn check_cap(s: &IncidenceStructure) -> Result<(), SearchError> {
    let size = s.num_points() + s.num_blocks();
    if size > SEARCH_SIZE_CAP {
        return Err(SearchError::SizeCapExceeded { size, cap: SEARCH_SIZE_CAP });
    }
    Ok(())
}

/// Every automorphism (point and block bijections), in deterministic order.
pub fn automorphisms(s: &IncidenceStructure) -> Result<Vec<StructureIso>, SearchError> {
    check_cap(s)?;
    let mut out = levi_search(s, s, false, true);
    out.sort();
    Ok(out)
}

/// Every correlation: incidence-preserving maps sending points to blocks and
/// blocks to points (`point_map` holds block indices and vice versa).
pub fn correlations(s: &IncidenceStructure) -> Result<Vec<StructureIso>, SearchError> {
    check_cap(s)?;
    if s.num_points() != s.num_blocks() {
        return Ok(Vec::new());
    }
    let mut out = levi_search(s, s, true, true);
    out.sort();
    Ok(out)
}
