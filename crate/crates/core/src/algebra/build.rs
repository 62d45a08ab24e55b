//! Structure-spec parsing and the standard constructors.
//!
//! Grammar:
//!
//! ```text
//! cyclic:N            Z_N
//! dihedral:N          dihedral group of order 2N
//! sym:N               symmetric group on N points, N <= 7
//! product:SxT         direct product, (a, b) numbered a * |T| + b
//! table:PATH          table file, must be a group with identity 0
//! latin:PATH          table file, quasigroup semantics
//! random-latin:N:SEED seeded random Latin square
//! ```

use std::fs;
use std::path::Path;

use crate::algebra::table::OpTable;
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::Elem;

pub const MAX_SYM_DEGREE: usize = 7;

pub fn build_structure(spec: &str) -> Result<OpTable> {
    let spec = spec.trim();
    let bad = |reason: &str| Error::BadSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let (head, rest) = spec.split_once(':').ok_or_else(|| bad("missing `:`"))?;
    match head {
        "cyclic" => cyclic(parse_positive(rest).ok_or_else(|| bad("expected a positive order"))?),
        "dihedral" => dihedral(parse_positive(rest).ok_or_else(|| bad("expected a positive N"))?),
        "sym" => {
            let degree = parse_positive(rest).ok_or_else(|| bad("expected a positive degree"))?;
            if degree > MAX_SYM_DEGREE {
                return Err(bad("degree must be at most 7"));
            }
            symmetric(degree)
        }
        "product" => {
            // Take the first `x` at which both factors parse, so nested
            // products associate to the right.
            for (pos, _) in rest.match_indices('x') {
                let (left, right) = (&rest[..pos], &rest[pos + 1..]);
                if let (Ok(a), Ok(b)) = (build_structure(left), build_structure(right)) {
                    return direct_product(&a, &b);
                }
            }
            Err(bad("expected product:<spec>x<spec> with two valid factors"))
        }
        "table" => read_table(Path::new(rest), true),
        "latin" => read_table(Path::new(rest), false),
        "random-latin" => {
            let (n, seed) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected random-latin:N:SEED"))?;
            let n = parse_positive(n).ok_or_else(|| bad("expected a positive order"))?;
            let seed: u64 = seed.trim().parse().map_err(|_| bad("seed must be a u64"))?;
            Ok(random_latin(n, seed))
        }
        _ => Err(bad("unknown constructor")),
    }
}

fn parse_positive(s: &str) -> Option<usize> {
    s.trim().parse::<usize>().ok().filter(|&n| n > 0)
}

pub fn cyclic(n: usize) -> Result<OpTable> {
    let rows = (0..n * n).map(|k| ((k / n + k % n) % n) as Elem).collect();
    OpTable::from_rows(n, rows, true)
}

/// Rotations `s^i` are `0..N`, reflections `s^i t` are `N..2N`, with `t s t = s^-1`.
pub fn dihedral(half: usize) -> Result<OpTable> {
    let n = 2 * half;
    let mut rows = vec![0; n * n];
    for x in 0..n {
        let (xi, xt) = (x % half, x >= half);
        for y in 0..n {
            let (yj, yt) = (y % half, y >= half);
            // s^i t^a * s^j t^b = s^(i + (-1)^a j) t^(a+b)
            let k = if xt {
                (xi + half - yj) % half
            } else {
                (xi + yj) % half
            };
            let refl = xt ^ yt;
            rows[x * n + y] = (k + if refl { half } else { 0 }) as Elem;
        }
    }
    OpTable::from_rows(n, rows, true)
}

/// Permutations of `0..degree` in lexicographic order (identity first);
/// the product `p * q` applies `q` first: `(p * q)(x) = p(q(x))`.
pub fn symmetric(degree: usize) -> Result<OpTable> {
    let perms = permutations(degree);
    let n = perms.len();
    let mut rows = vec![0; n * n];
    let mut composed = vec![0u8; degree];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            for x in 0..degree {
                composed[x] = p[q[x] as usize];
            }
            rows[i * n + j] = lehmer_rank(&composed) as Elem;
        }
    }
    OpTable::from_rows(n, rows, true)
}

pub(crate) fn permutations(degree: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..degree as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn lehmer_rank(perm: &[u8]) -> usize {
    let d = perm.len();
    let mut rank = 0;
    for i in 0..d {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        rank = rank * (d - i) + smaller;
    }
    rank
}

pub fn direct_product(a: &OpTable, b: &OpTable) -> Result<OpTable> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut rows = vec![0; n * n];
    for x in 0..n {
        let (xa, xb) = ((x / nb) as Elem, (x % nb) as Elem);
        for y in 0..n {
            let (ya, yb) = ((y / nb) as Elem, (y % nb) as Elem);
            rows[x * n + y] = a.op(xa, ya) * nb as Elem + b.op(xb, yb);
        }
    }
    OpTable::from_rows(n, rows, a.is_group() && b.is_group())
}

/// Row-by-row randomized completion. For each row, every column `c` (in
/// order `0..n`) draws a shuffle of `0..n` as its symbol preference; the row
/// is then completed by Kuhn's augmenting-path backtracking: column `c`
/// tries its symbols in preference order, taking a free symbol or evicting
/// the column that holds it if that column can be re-placed recursively.
/// Symbols already used in a column are never allowed there. Latin
/// rectangles always extend, so every row completes.
pub fn random_latin(n: usize, seed: u64) -> OpTable {
    let mut rng = Rng::new(seed);
    let mut rows = vec![0 as Elem; n * n];
    let mut col_used = vec![vec![false; n]; n];
    for r in 0..n {
        let prefs: Vec<Vec<Elem>> = (0..n)
            .map(|_| {
                let mut order: Vec<Elem> = (0..n as Elem).collect();
                rng.shuffle(&mut order);
                order
            })
            .collect();
        let mut holder: Vec<Option<usize>> = vec![None; n];
        for c in 0..n {
            let mut visited = vec![false; n];
            let placed = augment(c, &prefs, &col_used, &mut holder, &mut visited);
            assert!(placed, "Latin rectangle failed to extend");
        }
        for (v, c) in holder.iter().enumerate() {
            let c = c.expect("row is a perfect matching");
            rows[r * n + c] = v as Elem;
            col_used[c][v] = true;
        }
    }
    OpTable::from_rows(n, rows, false).expect("row completion produces a Latin square")
}

fn augment(
    c: usize,
    prefs: &[Vec<Elem>],
    col_used: &[Vec<bool>],
    holder: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &v in &prefs[c] {
        let v = v as usize;
        if col_used[c][v] || visited[v] {
            continue;
        }
        visited[v] = true;
        if holder[v].is_none_or(|other| augment(other, prefs, col_used, holder, visited)) {
            holder[v] = Some(c);
            return true;
        }
    }
    false
}

fn read_table(path: &Path, want_group: bool) -> Result<OpTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lno, first) = lines
        .next()
        .ok_or_else(|| Error::parse(path, 1, "empty table file"))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::parse(path, lno, "first line must be the order n"))?;
    if n == 0 {
        return Err(Error::parse(path, lno, "order must be positive"));
    }
    let mut rows = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| Error::parse(path, lno, format!("expected {n} rows")))?;
        let before = rows.len();
        for tok in line.split_whitespace() {
            let v: Elem = tok
                .parse()
                .map_err(|_| Error::parse(path, lno, format!("bad entry `{tok}`")))?;
            rows.push(v);
        }
        if rows.len() - before != n {
            return Err(Error::parse(path, lno, format!("expected {n} entries")));
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(Error::parse(path, lno, "trailing data after table"));
    }
    OpTable::from_rows(n, rows, want_group)
}
