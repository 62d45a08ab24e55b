//! Brute-force reference finder and counter of (7,4)-quadruples. Works on
//! any Latin-square table, group or not.

use rayon::prelude::*;

use crate::algebra::OpTable;
use crate::bits;
use crate::config::{Config74, Quadruple};
use crate::pair_sets::PairSet;
use crate::Elem;

/// Optional restriction `α, δ ∈ left`, `β, γ ∈ right`.
#[derive(Clone, Copy, Debug)]
pub struct Restriction<'a> {
    pub left: &'a [Elem],
    pub right: &'a [Elem],
}

/// Every configuration in `h` (canonical orientation, sorted).
pub fn oracle_find(q: &OpTable, h: &PairSet, window: Option<Restriction<'_>>) -> Vec<Config74> {
    let n = q.order();
    let all: Vec<Elem> = (0..n as Elem).collect();
    let (left, right) = match window {
        Some(w) => (w.left, w.right),
        None => (&all[..], &all[..]),
    };
    let mut in_right = vec![false; n];
    for &x in right {
        in_right[x as usize] = true;
    }
    let mut quads: Vec<Quadruple> = left
        .par_iter()
        .flat_map_iter(|&alpha| {
            let mut found = Vec::new();
            for &delta in left {
                if delta == alpha {
                    continue;
                }
                for &beta in right {
                    if !h.contains(alpha, beta) || !h.contains(delta, beta) {
                        continue;
                    }
                    let gamma = q.left_div(delta, q.op(alpha, beta));
                    if gamma == beta || !in_right[gamma as usize] {
                        continue;
                    }
                    if h.contains(alpha, gamma) && h.contains(delta, gamma) {
                        let quad = Quadruple::new(alpha, beta, gamma, delta);
                        if quad.is_canonical() {
                            found.push(quad);
                        }
                    }
                }
            }
            found
        })
        .collect();
    quads.sort_unstable();
    quads.dedup();
    quads
        .into_iter()
        .map(|quad| Config74::from_quadruple(q, quad))
        .collect()
}

/// Number of configurations, by row-intersection bucketing: for `α < δ`,
/// every `β` in `H_α ∩ H_δ` fixes `γ = δ \ (αβ)`, which must also lie in the
/// intersection and differ from `β`. Each configuration has exactly one
/// orientation with `α < δ`.
pub fn oracle_count(q: &OpTable, h: &PairSet) -> u64 {
    let n = q.order();
    (0..n as Elem)
        .into_par_iter()
        .map(|alpha| {
            let mut common = vec![0u64; bits::words_for(n)];
            let mut total = 0u64;
            for delta in alpha + 1..n as Elem {
                for (w, (x, y)) in common.iter_mut().zip(h.row(alpha).iter().zip(h.row(delta))) {
                    *w = x & y;
                }
                for beta in bits::ones(&common) {
                    let gamma = q.left_div(delta, q.op(alpha, beta as Elem)) as usize;
                    if gamma != beta && bits::get(&common, gamma) {
                        total += 1;
                    }
                }
            }
            total
        })
        .sum()
}
