//! Subsets `H ⊆ G×G`, coset-window densities and the averaging scan.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::algebra::{
    cosets, left_coset_representatives, right_coset_representatives, CosetWindow, OpTable, Subgroup,
};
use crate::bits;
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::Elem;

/// An `n×n` bit matrix; row = first coordinate.
#[derive(Clone, PartialEq, Eq)]
pub struct PairSet {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
    count: usize,
}

impl std::fmt::Debug for PairSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PairSet")
            .field("n", &self.n)
            .field("count", &self.count)
            .finish()
    }
}

impl PairSet {
    pub fn empty(n: usize) -> Self {
        let stride = bits::words_for(n);
        PairSet {
            n,
            stride,
            bits: vec![0; stride * n],
            count: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut h = Self::empty(n);
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                h.insert(a, b);
            }
        }
        h
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Result<Self> {
        let mut h = Self::empty(n);
        for (a, b) in pairs {
            if a as usize >= n || b as usize >= n {
                return Err(Error::Invalid(format!(
                    "pair ({a},{b}) out of range for order {n}"
                )));
            }
            h.insert(a, b);
        }
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn contains(&self, a: Elem, b: Elem) -> bool {
        bits::get(self.row(a), b as usize)
    }

    /// Returns whether the pair was newly added.
    pub fn insert(&mut self, a: Elem, b: Elem) -> bool {
        assert!((a as usize) < self.n && (b as usize) < self.n);
        let start = a as usize * self.stride;
        let row = &mut self.bits[start..start + self.stride];
        if bits::get(row, b as usize) {
            return false;
        }
        bits::set(row, b as usize);
        self.count += 1;
        true
    }

    #[inline]
    pub fn row(&self, a: Elem) -> &[u64] {
        let start = a as usize * self.stride;
        &self.bits[start..start + self.stride]
    }

    /// All pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        (0..self.n as Elem).flat_map(move |a| bits::ones(self.row(a)).map(move |b| (a, b as Elem)))
    }

    pub fn is_subset_of(&self, other: &PairSet) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(x, y)| x & !y == 0)
    }

    /// CSV form, one `i,j` per line in row-major order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.iter() {
            writeln!(out, "{a},{b}").unwrap();
        }
        out
    }

    /// Parses `i,j` lines; blank lines and `#` comments are skipped.
    pub fn parse_csv(n: usize, text: &str, path: &Path) -> Result<Self> {
        let mut h = Self::empty(n);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let parse_one = |s: &str| -> Result<Elem> {
                let v: Elem = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(path, i + 1, format!("bad index `{}`", s.trim())))?;
                if v as usize >= n {
                    return Err(Error::parse(
                        path,
                        i + 1,
                        format!("index {v} out of range for order {n}"),
                    ));
                }
                Ok(v)
            };
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| Error::parse(path, i + 1, "expected `i,j`"))?;
            h.insert(parse_one(a)?, parse_one(b)?);
        }
        Ok(h)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PairSource {
    /// Each pair independently with probability `kappa`, visited row-major,
    /// one draw per pair.
    Random {
        kappa: f64,
        seed: u64,
    },
    Full,
    File(PathBuf),
}

pub fn generate_pairs(n: usize, source: &PairSource) -> Result<PairSet> {
    match source {
        PairSource::Full => Ok(PairSet::full(n)),
        PairSource::Random { kappa, seed } => {
            if !(*kappa > 0.0 && *kappa <= 1.0) {
                return Err(Error::Invalid(format!(
                    "kappa must lie in (0, 1], got {kappa}"
                )));
            }
            let mut rng = Rng::new(*seed);
            let mut h = PairSet::empty(n);
            for a in 0..n as Elem {
                for b in 0..n as Elem {
                    if rng.bernoulli(*kappa) {
                        h.insert(a, b);
                    }
                }
            }
            Ok(h)
        }
        PairSource::File(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            PairSet::parse_csv(n, &text, path)
        }
    }
}

/// `|H ∩ (ℓA × Ar)|`.
pub fn window_density(h: &PairSet, w: &CosetWindow) -> u64 {
    let mut mask = vec![0u64; bits::words_for(h.order())];
    for &b in &w.right_coset {
        bits::set(&mut mask, b as usize);
    }
    w.left_coset
        .iter()
        .map(|&a| bits::and_count(h.row(a), &mask))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowScore {
    pub ell: Elem,
    pub r: Elem,
    pub density: u64,
}

/// Densities of every window `(ℓ, r)` over canonical representatives
/// (smallest element of each coset), in lexicographic `(ℓ, r)` order.
pub fn scan_windows(h: &PairSet, g: &OpTable, a: &Subgroup) -> Vec<WindowScore> {
    let lefts = left_coset_representatives(g, a);
    let rights = right_coset_representatives(g, a);
    let n = g.order();
    let right_masks: Vec<Vec<u64>> = rights
        .iter()
        .map(|&r| {
            let mut mask = vec![0u64; bits::words_for(n)];
            for &x in a.elements() {
                bits::set(&mut mask, g.op(x, r) as usize);
            }
            mask
        })
        .collect();
    lefts
        .par_iter()
        .flat_map_iter(|&ell| {
            let left: Vec<Elem> = a.elements().iter().map(|&x| g.op(ell, x)).collect();
            rights
                .iter()
                .zip(&right_masks)
                .map(move |(&r, mask)| WindowScore {
                    ell,
                    r,
                    density: left.iter().map(|&x| bits::and_count(h.row(x), mask)).sum(),
                })
        })
        .collect()
}

/// Maximizer of the window density, ties to the smallest `(ℓ, r)`.
pub fn best_coset_pair(h: &PairSet, g: &OpTable, a: &Subgroup) -> WindowScore {
    scan_windows(h, g, a)
        .into_par_iter()
        .reduce_with(|x, y| {
            if (std::cmp::Reverse(y.density), y.ell, y.r)
                < (std::cmp::Reverse(x.density), x.ell, x.r)
            {
                y
            } else {
                x
            }
        })
        .expect("at least one window")
}

pub fn window_of(g: &OpTable, a: &Subgroup, score: &WindowScore) -> CosetWindow {
    cosets(g, a, score.ell, score.r)
}
