//! 3-uniform systems: linearity, greedy linearization, span maxima and the
//! random selection-with-deletion construction.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::algebra::OpTable;
use crate::error::{Error, Result};
use crate::pair_sets::PairSet;
use crate::rng::Rng;
use crate::Elem;

pub type Triple = [u32; 3];

/// Points `0..n` and a strictly sorted list of sorted 3-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    n: usize,
    triples: Vec<Triple>,
}

impl TripleSystem {
    /// Sorts each triple and the list; duplicates are merged.
    pub fn new(n: usize, triples: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let mut out = Vec::new();
        for mut t in triples {
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::Invalid(format!("triple {t:?} has repeated points")));
            }
            if t[2] as usize >= n {
                return Err(Error::Invalid(format!(
                    "triple {t:?} out of range for {n} points"
                )));
            }
            out.push(t);
        }
        out.sort_unstable();
        out.dedup();
        Ok(TripleSystem { n, triples: out })
    }

    pub fn empty(n: usize) -> Self {
        TripleSystem {
            n,
            triples: Vec::new(),
        }
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }

    pub fn is_subsystem_of(&self, other: &TripleSystem) -> bool {
        self.triples.iter().all(|t| other.contains(t))
    }

    /// `n` on the first line, then one `i j k` per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for [a, b, c] in &self.triples {
            writeln!(out, "{a} {b} {c}").unwrap();
        }
        out
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let (lno, first) = lines
            .next()
            .ok_or_else(|| Error::parse(path, 1, "empty triple file"))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(path, lno, "first line must be the point count"))?;
        let mut triples = Vec::new();
        for (lno, line) in lines {
            let vals: Vec<u32> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse()
                        .map_err(|_| Error::parse(path, lno, format!("bad point `{tok}`")))
                })
                .collect::<Result<_>>()?;
            let t: Triple = vals
                .try_into()
                .map_err(|_| Error::parse(path, lno, "expected three points"))?;
            triples.push(t);
        }
        TripleSystem::new(n, triples).map_err(|e| Error::parse(path, 0, e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }
}

/// An ordered triple `(a, b, ab)` from a pair of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairTriple {
    pub a: Elem,
    pub b: Elem,
    pub product: Elem,
    /// `a`, `b`, `ab` are not pairwise distinct.
    pub degenerate: bool,
}

/// One entry per pair of `h`, row-major.
pub fn triples_from_pairs(q: &OpTable, h: &PairSet) -> Vec<PairTriple> {
    h.iter()
        .map(|(a, b)| {
            let product = q.op(a, b);
            PairTriple {
                a,
                b,
                product,
                degenerate: a == b || a == product || b == product,
            }
        })
        .collect()
}

fn pairs_of(t: &Triple) -> [(u32, u32); 3] {
    [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
}

/// No two triples share two points.
pub fn is_linear(t: &TripleSystem) -> bool {
    let mut covered = HashSet::new();
    t.triples
        .iter()
        .all(|tr| pairs_of(tr).iter().all(|&p| covered.insert(p)))
}

/// Keeps a triple iff it meets every previously kept triple in at most one
/// point, scanning in sorted order.
pub fn greedy_linearize(t: &TripleSystem) -> TripleSystem {
    let mut covered = HashSet::new();
    let mut kept = Vec::new();
    for tr in &t.triples {
        let pairs = pairs_of(tr);
        if pairs.iter().all(|p| !covered.contains(p)) {
            covered.extend(pairs);
            kept.push(*tr);
        }
    }
    TripleSystem {
        n: t.n,
        triples: kept,
    }
}

/// Point-subset enumeration is used up to this many subsets.
pub const SPAN_SUBSET_LIMIT: u128 = 10_000_000;
/// Union-of-triples search is used up to this many triples.
pub const SPAN_TRIPLE_LIMIT: usize = 1_000;
const SPAN_UNION_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMax {
    pub max_triples: usize,
    /// Lexicographically first `s`-subset attaining the maximum.
    pub witness: Vec<u32>,
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Maximum number of triples inside any `s` points.
pub fn span_max(t: &TripleSystem, s: usize) -> Result<SpanMax> {
    if s > t.n {
        return Err(Error::Invalid(format!(
            "subset size {s} exceeds {} points",
            t.n
        )));
    }
    if binomial(t.n as u128, s as u128) <= SPAN_SUBSET_LIMIT {
        Ok(span_by_subsets(t, s))
    } else if t.len() <= SPAN_TRIPLE_LIMIT {
        span_by_unions(t, s)
    } else {
        Err(Error::TooLarge(format!(
            "span_max: C({}, {s}) exceeds {SPAN_SUBSET_LIMIT} and {} triples exceed {SPAN_TRIPLE_LIMIT}",
            t.n,
            t.len()
        )))
    }
}

fn better(a: &SpanMax, b: &SpanMax) -> bool {
    a.max_triples > b.max_triples || (a.max_triples == b.max_triples && a.witness < b.witness)
}

/// DFS over `s`-subsets in lexicographic order; adding point `p` adds the
/// triples whose largest point is `p` and whose other points are chosen.
/// Parallel over the first point.
fn span_by_subsets(t: &TripleSystem, s: usize) -> SpanMax {
    let n = t.n;
    if s == 0 {
        return SpanMax {
            max_triples: 0,
            witness: Vec::new(),
        };
    }
    let mut by_max: Vec<Vec<[u32; 2]>> = vec![Vec::new(); n];
    for tr in &t.triples {
        by_max[tr[2] as usize].push([tr[0], tr[1]]);
    }
    struct Dfs<'a> {
        n: usize,
        s: usize,
        by_max: &'a [Vec<[u32; 2]>],
        chosen: Vec<u32>,
        member: Vec<bool>,
        best: SpanMax,
    }
    impl Dfs<'_> {
        fn go(&mut self, next: usize, count: usize) {
            if self.chosen.len() == self.s {
                if count > self.best.max_triples || self.best.witness.is_empty() {
                    self.best = SpanMax {
                        max_triples: count,
                        witness: self.chosen.clone(),
                    };
                }
                return;
            }
            let need = self.s - self.chosen.len();
            for p in next..=self.n - need {
                let gain = self.by_max[p]
                    .iter()
                    .filter(|[x, y]| self.member[*x as usize] && self.member[*y as usize])
                    .count();
                self.chosen.push(p as u32);
                self.member[p] = true;
                self.go(p + 1, count + gain);
                self.member[p] = false;
                self.chosen.pop();
            }
        }
    }
    (0..=n - s)
        .into_par_iter()
        .map(|first| {
            let mut dfs = Dfs {
                n,
                s,
                by_max: &by_max,
                chosen: vec![first as u32],
                member: vec![false; n],
                best: SpanMax {
                    max_triples: 0,
                    witness: Vec::new(),
                },
            };
            dfs.member[first] = true;
            dfs.go(first + 1, 0);
            dfs.best
        })
        .reduce_with(|a, b| if better(&b, &a) { b } else { a })
        .expect("at least one subset")
}

/// A maximizing `s`-set contains the union `U` of its triples; padding `U`
/// with the smallest points outside it stays maximizing and is
/// lexicographically no larger. So it suffices to visit every union of
/// triples with at most `s` points.
fn span_by_unions(t: &TripleSystem, s: usize) -> Result<SpanMax> {
    let pad = |u: &[u32]| -> Vec<u32> {
        let mut out = u.to_vec();
        let mut p = 0u32;
        while out.len() < s {
            if u.binary_search(&p).is_err() {
                out.push(p);
            }
            p += 1;
        }
        out.sort_unstable();
        out
    };
    let count_in = |set: &[u32]| {
        t.triples
            .iter()
            .filter(|tr| tr.iter().all(|x| set.binary_search(x).is_ok()))
            .count()
    };
    let start = pad(&[]);
    let mut best = SpanMax {
        max_triples: count_in(&start),
        witness: start,
    };
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(u) = stack.pop() {
        for tr in &t.triples {
            let mut next = u.clone();
            next.extend_from_slice(tr);
            next.sort_unstable();
            next.dedup();
            if next.len() > s || next.len() == u.len() || seen.contains(&next) {
                continue;
            }
            if seen.len() >= SPAN_UNION_BUDGET {
                return Err(Error::TooLarge(format!(
                    "span_max: more than {SPAN_UNION_BUDGET} triple unions of size <= {s}"
                )));
            }
            let cand = pad(&next);
            let found = SpanMax {
                max_triples: count_in(&cand),
                witness: cand,
            };
            if better(&found, &best) {
                best = found;
            }
            seen.insert(next.clone());
            stack.push(next);
        }
    }
    Ok(best)
}

/// Upper bound on `C(|selected|, k)` for the deletion scan.
pub const DELETION_SCAN_LIMIT: u128 = 100_000_000;
/// The survivor check runs when `C(n, k+2)` is at most this.
pub const SURVIVOR_CHECK_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct RandomConstruction {
    pub selected: TripleSystem,
    pub surviving: TripleSystem,
    pub removed_count: usize,
    /// Whether the no-`(k+2)`-set-spans-`k` check was run (and passed).
    pub verified: bool,
}

/// Selects each of the `C(n,3)` triples (lexicographic order, one draw
/// each) with probability `delta / n`, then for every `k` selected triples
/// whose union has at most `k+2` points removes all selected triples inside
/// that union.
pub fn random_construction(
    n: usize,
    k: usize,
    delta: f64,
    seed: u64,
) -> Result<RandomConstruction> {
    if k < 3 {
        return Err(Error::Invalid(format!("k must be at least 3, got {k}")));
    }
    if n < 3 {
        return Err(Error::Invalid(format!("need at least 3 points, got {n}")));
    }
    let p = delta / n as f64;
    if !(0.0..=1.0).contains(&p) || delta.is_nan() {
        return Err(Error::Invalid(format!(
            "delta / n must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = Rng::new(seed);
    let mut selected = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            for c in b + 1..n as u32 {
                if rng.bernoulli(p) {
                    selected.push([a, b, c]);
                }
            }
        }
    }
    let m = selected.len();
    if binomial(m as u128, k as u128) > DELETION_SCAN_LIMIT {
        return Err(Error::TooLarge(format!(
            "deletion scan: C({m}, {k}) exceeds {DELETION_SCAN_LIMIT}"
        )));
    }
    let unions = dense_unions(&selected, k, k + 2);
    let index: HashSet<Triple> = selected.iter().copied().collect();
    let mut removed: HashSet<Triple> = HashSet::new();
    for u in &unions {
        for (x, &a) in u.iter().enumerate() {
            for (y, &b) in u.iter().enumerate().skip(x + 1) {
                for &c in &u[y + 1..] {
                    if index.contains(&[a, b, c]) {
                        removed.insert([a, b, c]);
                    }
                }
            }
        }
    }
    let surviving: Vec<Triple> = selected
        .iter()
        .filter(|t| !removed.contains(*t))
        .copied()
        .collect();
    let selected = TripleSystem {
        n,
        triples: selected,
    };
    let surviving = TripleSystem {
        n,
        triples: surviving,
    };
    let removed_count = selected.len() - surviving.len();
    let verified = binomial(n as u128, (k + 2) as u128) <= SURVIVOR_CHECK_LIMIT;
    if verified {
        let span = span_max(&surviving, k + 2)?;
        if span.max_triples >= k {
            return Err(Error::Invariant(format!(
                "surviving system has {} triples on {:?}",
                span.max_triples, span.witness
            )));
        }
    }
    Ok(RandomConstruction {
        selected,
        surviving,
        removed_count,
        verified,
    })
}

/// Point sets (sorted, deduplicated) that are unions of exactly `k`
/// distinct triples of `triples` with at most `limit` points. Partial
/// unions only grow, so branches exceeding `limit` are cut.
fn dense_unions(triples: &[Triple], k: usize, limit: usize) -> Vec<Vec<u32>> {
    fn go(
        triples: &[Triple],
        from: usize,
        left: usize,
        limit: usize,
        union: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if left == 0 {
            out.push(union.clone());
            return;
        }
        for idx in from..triples.len() {
            if triples.len() - idx < left {
                break;
            }
            let before = union.len();
            for &x in &triples[idx] {
                if !union[..before].contains(&x) {
                    union.push(x);
                }
            }
            if union.len() <= limit {
                go(triples, idx + 1, left - 1, limit, union, out);
            }
            union.truncate(before);
        }
    }
    let mut all: Vec<Vec<u32>> = (0..triples.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut union = triples[first].to_vec();
            go(triples, first + 1, k - 1, limit, &mut union, &mut out);
            out
        })
        .map(|mut u| {
            u.sort_unstable();
            u
        })
        .collect();
    all.sort_unstable();
    all.dedup();
    all
}
