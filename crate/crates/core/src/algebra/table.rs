use std::fmt;

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::Elem;

/// Largest order for which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;
const SAMPLED_ASSOC_TRIALS: usize = 1 << 20;
const ASSOC_SAMPLE_SEED: u64 = 0x5eed_a550c;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Group,
    Quasigroup,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Group => f.write_str("group"),
            Kind::Quasigroup => f.write_str("quasigroup"),
        }
    }
}

/// A finite magma on `0..n` given by its full operation table.
///
/// Every table held here is a Latin square. Group tables additionally have
/// `0` as identity, are associative, and carry an inverse table; quasigroup
/// tables carry a left-division table so `x * y = p` can be solved for `y`
/// in O(1).
#[derive(Clone)]
pub struct OpTable {
    n: usize,
    table: Vec<Elem>,
    kind: Kind,
    inverse: Vec<Elem>,
    left_div: Vec<Elem>,
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OpTable")
            .field("n", &self.n)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

impl OpTable {
    /// Validates `rows` (row-major, `rows[i*n + j] = i * j`) as a Latin square
    /// and, if `want_group`, as a group with identity `0`.
    pub fn from_rows(n: usize, rows: Vec<Elem>, want_group: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("order must be positive".into()));
        }
        if n > Elem::MAX as usize {
            return Err(Error::TooLarge(format!(
                "order {n} exceeds element index range"
            )));
        }
        if rows.len() != n * n {
            return Err(Error::Invalid(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                rows.len()
            )));
        }
        check_latin(n, &rows)?;
        let mut t = OpTable {
            n,
            table: rows,
            kind: Kind::Quasigroup,
            inverse: Vec::new(),
            left_div: Vec::new(),
        };
        if want_group {
            t.check_group()?;
            t.inverse = (0..n as Elem)
                .map(|x| t.row(x).iter().position(|&p| p == 0).unwrap() as Elem)
                .collect();
            t.kind = Kind::Group;
        } else {
            let mut left_div = vec![0; n * n];
            for x in 0..n {
                for (y, &p) in t.row(x as Elem).iter().enumerate() {
                    left_div[x * n + p as usize] = y as Elem;
                }
            }
            t.left_div = left_div;
        }
        Ok(t)
    }

    /// Same table with quasigroup semantics (drops the group structure).
    pub fn as_quasigroup(&self) -> OpTable {
        OpTable::from_rows(self.n, self.table.clone(), false).expect("already validated")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn kind(&self) -> Kind {
        self.kind
    }

    #[inline]
    pub fn is_group(&self) -> bool {
        self.kind == Kind::Group
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn row(&self, a: Elem) -> &[Elem] {
        let start = a as usize * self.n;
        &self.table[start..start + self.n]
    }

    pub fn rows(&self) -> &[Elem] {
        &self.table
    }

    /// Group inverse. Panics on a quasigroup table.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// The unique `y` with `x * y = p`.
    #[inline]
    pub fn left_div(&self, x: Elem, p: Elem) -> Elem {
        match self.kind {
            Kind::Group => self.op(self.inverse[x as usize], p),
            Kind::Quasigroup => self.left_div[x as usize * self.n + p as usize],
        }
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.op(a, b) == self.op(b, a)
    }

    /// Multiplicative order of `a` (group only).
    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != 0 {
            p = self.op(p, a);
            k += 1;
        }
        k
    }

    /// Exhaustive associativity check over all triples.
    pub fn is_associative_exhaustive(&self) -> bool {
        let n = self.n as Elem;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.op(a, b);
                (0..n).all(|c| self.op(ab, c) == self.op(a, self.op(b, c)))
            })
        })
    }

    fn check_group(&self) -> Result<()> {
        let n = self.n;
        for x in 0..n as Elem {
            if self.op(0, x) != x || self.op(x, 0) != x {
                return Err(Error::NotGroup(format!(
                    "element 0 is not a two-sided identity (fails at {x})"
                )));
            }
        }
        // In a Latin square with identity every element has a right inverse;
        // two-sidedness is checked explicitly since associativity may be sampled.
        for x in 0..n as Elem {
            let y = self.row(x).iter().position(|&p| p == 0).unwrap() as Elem;
            if self.op(y, x) != 0 {
                return Err(Error::NotGroup(format!(
                    "element {x} has no two-sided inverse"
                )));
            }
        }
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n as Elem {
                for b in 0..n as Elem {
                    let ab = self.op(a, b);
                    for c in 0..n as Elem {
                        if self.op(ab, c) != self.op(a, self.op(b, c)) {
                            return Err(Error::NotGroup(format!(
                                "not associative: ({a}*{b})*{c} != {a}*({b}*{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = Rng::new(ASSOC_SAMPLE_SEED);
            for _ in 0..SAMPLED_ASSOC_TRIALS {
                let (a, b, c) = (
                    rng.below(n) as Elem,
                    rng.below(n) as Elem,
                    rng.below(n) as Elem,
                );
                if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                    return Err(Error::NotGroup(format!(
                        "not associative: ({a}*{b})*{c} != {a}*({b}*{c})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Text form: `n` on the first line, then `n` rows of `n` indices.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for a in 0..self.n as Elem {
            let row: Vec<String> = self.row(a).iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn check_latin(n: usize, rows: &[Elem]) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let v = rows[i * n + j] as usize;
            if v >= n {
                return Err(Error::NotLatin(format!(
                    "entry ({i},{j}) = {v} out of range"
                )));
            }
            if seen[v] == i {
                return Err(Error::NotLatin(format!("row {i} repeats {v}")));
            }
            seen[v] = i;
        }
    }
    seen.fill(usize::MAX);
    for j in 0..n {
        for i in 0..n {
            let v = rows[i * n + j] as usize;
            if seen[v] == j {
                return Err(Error::NotLatin(format!("column {j} repeats {v}")));
            }
            seen[v] = j;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Vec<Elem> {
        (0..n * n).map(|k| ((k / n + k % n) % n) as Elem).collect()
    }

    #[test]
    fn rejects_non_latin() {
        let err = OpTable::from_rows(2, vec![0, 1, 0, 1], false).unwrap_err();
        assert!(matches!(err, Error::NotLatin(_)));
        let err = OpTable::from_rows(2, vec![0, 2, 1, 0], false).unwrap_err();
        assert!(matches!(err, Error::NotLatin(_)));
    }

    #[test]
    fn rejects_identity_not_at_zero() {
        // Z_3 relabelled so that the identity is element 1.
        let rows = vec![2, 0, 1, 0, 1, 2, 1, 2, 0];
        assert!(OpTable::from_rows(3, rows.clone(), false).is_ok());
        assert!(matches!(
            OpTable::from_rows(3, rows, true).unwrap_err(),
            Error::NotGroup(_)
        ));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // Smallest non-associative loop (order 5).
        let rows = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        let q = OpTable::from_rows(5, rows.clone(), false).unwrap();
        assert!(!q.is_associative_exhaustive());
        assert!(OpTable::from_rows(5, rows, true).is_err());
    }

    #[test]
    fn left_division_solves_products() {
        let rows = vec![2, 0, 1, 0, 1, 2, 1, 2, 0];
        let q = OpTable::from_rows(3, rows, false).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(q.left_div(x, q.op(x, y)), y);
            }
        }
        let g = OpTable::from_rows(7, cyclic(7), true).unwrap();
        for x in 0..7 {
            assert_eq!(g.op(x, g.inv(x)), 0);
            for y in 0..7 {
                assert_eq!(g.left_div(x, g.op(x, y)), y);
            }
        }
    }

    #[test]
    fn element_orders_in_cyclic_group() {
        let g = OpTable::from_rows(12, cyclic(12), true).unwrap();
        let orders: Vec<usize> = (0..12).map(|x| g.element_order(x)).collect();
        assert_eq!(orders, [1, 12, 6, 4, 3, 12, 2, 12, 3, 4, 6, 12]);
    }
}
