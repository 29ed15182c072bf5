//! Permutations of the ground set `{1, …, n}`.

use std::fmt;

use crate::subset::FiniteSubset;

/// A permutation of `{1, …, n}`; `img[i-1]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u8>,
}

impl Perm {
    pub fn identity(n: u8) -> Self {
        Perm {
            img: (1..=n).collect(),
        }
    }

    /// Build from an image list; panics unless it is a bijection of `{1, …, n}`.
    pub fn from_images(img: Vec<u8>) -> Self {
        let n = img.len() as u8;
        let mut seen = vec![false; n as usize];
        for &e in &img {
            assert!(e >= 1 && e <= n && !seen[(e - 1) as usize], "not a permutation");
            seen[(e - 1) as usize] = true;
        }
        Perm { img }
    }

    pub fn transposition(n: u8, a: u8, b: u8) -> Self {
        let mut p = Self::identity(n);
        assert!(a >= 1 && a <= n && b >= 1 && b <= n && a != b);
        p.img.swap((a - 1) as usize, (b - 1) as usize);
        p
    }

    pub fn degree(&self) -> u8 {
        self.img.len() as u8
    }

    pub fn apply(&self, element: u8) -> u8 {
        self.img[(element - 1) as usize]
    }

    pub fn apply_subset(&self, s: &FiniteSubset) -> FiniteSubset {
        let mut out = FiniteSubset::empty(s.ground_size());
        for e in s.elems() {
            out = out.with(self.apply(e));
        }
        out
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Perm {
            img: (1..=self.degree()).map(|e| self.apply(other.apply(e))).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.degree();
        let mut img = vec![0u8; n as usize];
        for e in 1..=n {
            img[(self.apply(e) - 1) as usize] = e;
        }
        Perm { img }
    }

    pub fn fixed_points(&self) -> Vec<u8> {
        (1..=self.degree()).filter(|&e| self.apply(e) == e).collect()
    }

    /// All permutations of `{1, …, n}` in lexicographic order of image lists.
    pub fn all(n: u8) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut img: Vec<u8> = (1..=n).collect();
        loop {
            out.push(Perm { img: img.clone() });
            if !next_permutation(&mut img) {
                break;
            }
        }
        out
    }

    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.degree();
        let mut seen = vec![false; n as usize];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[(start - 1) as usize] {
                continue;
            }
            let mut cycle = vec![start];
            seen[(start - 1) as usize] = true;
            let mut e = self.apply(start);
            while e != start {
                seen[(e - 1) as usize] = true;
                cycle.push(e);
                e = self.apply(e);
            }
            cycles.push(cycle);
        }
        cycles
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Perm {
    /// Cycle notation including fixed points, e.g. `(1)(2)(3,4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, e) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
