use crate::algebra::table::OpTable;
use crate::error::{Error, Result};
use crate::Elem;

/// Largest group order accepted by [`AbelianMode::Exact`].
pub const EXACT_ABELIAN_LIMIT: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<Elem>,
    abelian: bool,
}

impl Subgroup {
    /// Checks that `elements` contains the identity and is closed under the
    /// operation and inverses.
    pub fn from_elements(g: &OpTable, elements: &[Elem]) -> Result<Self> {
        if !g.is_group() {
            return Err(Error::Invalid("subgroups require a group table".into()));
        }
        let n = g.order();
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&x) = elements.iter().find(|&&x| x as usize >= n) {
            return Err(Error::Invalid(format!(
                "element {x} out of range for order {n}"
            )));
        }
        let mut member = vec![false; n];
        for &x in &elements {
            member[x as usize] = true;
        }
        if !member[0] {
            return Err(Error::Invalid(
                "subgroup must contain the identity 0".into(),
            ));
        }
        for &x in &elements {
            if !member[g.inv(x) as usize] {
                return Err(Error::Invalid(format!("not closed under inverse at {x}")));
            }
            for &y in &elements {
                if !member[g.op(x, y) as usize] {
                    return Err(Error::Invalid(format!("not closed: {x}*{y}")));
                }
            }
        }
        Ok(Self::new_unchecked(g, elements))
    }

    fn new_unchecked(g: &OpTable, elements: Vec<Elem>) -> Self {
        let abelian = elements
            .iter()
            .enumerate()
            .all(|(i, &x)| elements[i + 1..].iter().all(|&y| g.commute(x, y)));
        Subgroup {
            parent_order: g.order(),
            elements,
            abelian,
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(g: &OpTable, gens: &[Elem]) -> Self {
        let mut member = vec![false; g.order()];
        member[0] = true;
        let mut elements = vec![0];
        let mut i = 0;
        // In a finite group closure under right multiplication by the
        // generators gives the whole generated subgroup.
        while i < elements.len() {
            let x = elements[i];
            for &s in gens {
                let y = g.op(x, s);
                if !member[y as usize] {
                    member[y as usize] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Self::new_unchecked(g, elements)
    }

    pub fn whole(g: &OpTable) -> Self {
        Self::new_unchecked(g, (0..g.order() as Elem).collect())
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Dense membership mask over the parent's elements.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent_order];
        for &x in &self.elements {
            m[x as usize] = true;
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelianMode {
    /// Maximum-order abelian subgroup by branch and bound (order <= 128).
    Exact,
    /// Maximal-by-extension abelian subgroup grown from cyclic subgroups of
    /// maximum order.
    Greedy,
}

pub fn find_abelian_subgroup(g: &OpTable, mode: AbelianMode) -> Result<Subgroup> {
    if !g.is_group() {
        return Err(Error::Invalid(
            "abelian subgroup search requires a group".into(),
        ));
    }
    match mode {
        AbelianMode::Exact => exact_abelian(g),
        AbelianMode::Greedy => Ok(greedy_abelian(g)),
    }
}

fn bit(x: Elem) -> u128 {
    1u128 << x
}

fn bits(mut m: u128) -> impl Iterator<Item = Elem> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let x = m.trailing_zeros() as Elem;
            m &= m - 1;
            x
        })
    })
}

struct ExactSearch<'a> {
    g: &'a OpTable,
    centralizer: Vec<u128>,
    divisors: Vec<usize>,
    best: u128,
    best_size: usize,
}

impl ExactSearch<'_> {
    /// `<S, x>` for abelian `S` and `x` centralizing it: the union of `S x^k`.
    fn extend(&self, sub: u128, x: Elem) -> u128 {
        let mut out = sub;
        let mut power = x;
        while out & bit(power) == 0 {
            for s in bits(sub) {
                out |= bit(self.g.op(s, power));
            }
            power = self.g.op(power, x);
        }
        out
    }

    /// Branch and bound over the commuting graph. `cand` holds every element
    /// outside `sub` that commutes with all of `sub`; `excluded` holds
    /// elements whose subgroups were already explored by an earlier sibling.
    fn search(&mut self, sub: u128, cand: u128, mut excluded: u128) {
        let size = sub.count_ones() as usize;
        if size > self.best_size {
            self.best = sub;
            self.best_size = size;
        }
        let open = cand & !excluded;
        let room = size + open.count_ones() as usize;
        let bound = self
            .divisors
            .iter()
            .copied()
            .filter(|&d| d % size == 0 && d <= room)
            .max()
            .unwrap_or(size);
        if bound <= self.best_size {
            return;
        }
        for x in bits(open) {
            let next = self.extend(sub, x);
            if next & excluded == 0 {
                let next_cand = cand & self.centralizer[x as usize] & !next;
                self.search(next, next_cand, excluded);
            }
            excluded |= bit(x);
        }
    }
}

fn exact_abelian(g: &OpTable) -> Result<Subgroup> {
    let n = g.order();
    if n > EXACT_ABELIAN_LIMIT {
        return Err(Error::TooLarge(format!(
            "exact abelian search supports order <= {EXACT_ABELIAN_LIMIT}, got {n}"
        )));
    }
    let centralizer = (0..n as Elem)
        .map(|x| {
            (0..n as Elem)
                .filter(|&y| g.commute(x, y))
                .fold(0u128, |m, y| m | bit(y))
        })
        .collect();
    let mut search = ExactSearch {
        g,
        centralizer,
        divisors: (1..=n).filter(|d| n.is_multiple_of(*d)).collect(),
        best: 1,
        best_size: 1,
    };
    let all = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    search.search(1, all & !1, 0);
    Ok(Subgroup::new_unchecked(g, bits(search.best).collect()))
}

fn greedy_abelian(g: &OpTable) -> Subgroup {
    let n = g.order();
    let orders: Vec<usize> = (0..n as Elem).map(|x| g.element_order(x)).collect();
    let top = *orders.iter().max().unwrap();
    let mut seen_starts: Vec<Vec<Elem>> = Vec::new();
    let mut best: Option<Subgroup> = None;
    for x in (0..n as Elem).filter(|&x| orders[x as usize] == top) {
        let start = Subgroup::generated_by(g, &[x]);
        if seen_starts.contains(&start.elements) {
            continue;
        }
        seen_starts.push(start.elements.clone());
        let mut gens = vec![x];
        let mut cur = start;
        loop {
            let member = cur.mask();
            // Commuting with every generator means centralizing the subgroup.
            let next = (0..n as Elem)
                .find(|&y| !member[y as usize] && gens.iter().all(|&s| g.commute(s, y)));
            match next {
                Some(y) => {
                    gens.push(y);
                    cur = Subgroup::generated_by(g, &gens);
                }
                None => break,
            }
        }
        if best.as_ref().is_none_or(|b| cur.order() > b.order()) {
            best = Some(cur);
        }
    }
    best.expect("every group has an element of maximum order")
}

/// The window `ℓA × Ar` together with the middle coset `ℓAr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetWindow {
    pub ell: Elem,
    pub r: Elem,
    pub left_coset: Vec<Elem>,
    pub right_coset: Vec<Elem>,
    pub middle: Vec<Elem>,
}

pub fn cosets(g: &OpTable, a: &Subgroup, ell: Elem, r: Elem) -> CosetWindow {
    let sorted = |f: &dyn Fn(Elem) -> Elem| {
        let mut v: Vec<Elem> = a.elements().iter().map(|&x| f(x)).collect();
        v.sort_unstable();
        v
    };
    CosetWindow {
        ell,
        r,
        left_coset: sorted(&|x| g.op(ell, x)),
        right_coset: sorted(&|x| g.op(x, r)),
        middle: sorted(&|x| g.op(g.op(ell, x), r)),
    }
}

/// Smallest element of each left coset `xA`, ascending.
pub fn left_coset_representatives(g: &OpTable, a: &Subgroup) -> Vec<Elem> {
    coset_representatives(g.order(), |x| a.elements().iter().map(move |&s| g.op(x, s)))
}

/// Smallest element of each right coset `Ax`, ascending.
pub fn right_coset_representatives(g: &OpTable, a: &Subgroup) -> Vec<Elem> {
    coset_representatives(g.order(), |x| a.elements().iter().map(move |&s| g.op(s, x)))
}

fn coset_representatives<I: Iterator<Item = Elem>>(
    n: usize,
    coset: impl Fn(Elem) -> I,
) -> Vec<Elem> {
    let mut covered = vec![false; n];
    let mut reps = Vec::new();
    for x in 0..n as Elem {
        if !covered[x as usize] {
            reps.push(x);
            for y in coset(x) {
                covered[y as usize] = true;
            }
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build::build_structure;

    #[test]
    fn exact_on_small_groups() {
        let order = |s: &str| {
            find_abelian_subgroup(&build_structure(s).unwrap(), AbelianMode::Exact)
                .unwrap()
                .order()
        };
        assert_eq!(order("cyclic:12"), 12);
        assert_eq!(order("sym:3"), 3);
        assert_eq!(order("sym:4"), 4);
        assert_eq!(order("dihedral:4"), 4);
        assert_eq!(order("product:cyclic:2xsym:3"), 6);
    }

    #[test]
    fn exact_rotation_subgroup_of_s3() {
        let g = build_structure("sym:3").unwrap();
        let a = find_abelian_subgroup(&g, AbelianMode::Exact).unwrap();
        assert!(a.is_abelian());
        assert!((1..3).all(|i| g.element_order(a.elements()[i]) == 3));
    }

    #[test]
    fn exact_rejects_large_groups() {
        let g = build_structure("cyclic:129").unwrap();
        assert!(matches!(
            find_abelian_subgroup(&g, AbelianMode::Exact),
            Err(Error::TooLarge(_))
        ));
        assert!(find_abelian_subgroup(&g, AbelianMode::Greedy).is_ok());
    }

    #[test]
    fn greedy_is_abelian_and_beats_element_orders() {
        for spec in [
            "sym:4",
            "sym:5",
            "dihedral:6",
            "product:cyclic:2xdihedral:4",
            "cyclic:30",
        ] {
            let g = build_structure(spec).unwrap();
            let a = find_abelian_subgroup(&g, AbelianMode::Greedy).unwrap();
            let again = Subgroup::from_elements(&g, a.elements()).unwrap();
            assert!(again.is_abelian(), "{spec}");
            let top = (0..g.order() as Elem)
                .map(|x| g.element_order(x))
                .max()
                .unwrap();
            assert!(a.order() >= top, "{spec}");
        }
    }

    #[test]
    fn from_elements_validation() {
        let g = build_structure("cyclic:6").unwrap();
        assert!(Subgroup::from_elements(&g, &[0, 2, 4]).is_ok());
        assert!(Subgroup::from_elements(&g, &[2, 4]).is_err());
        assert!(Subgroup::from_elements(&g, &[0, 2]).is_err());
        assert!(Subgroup::from_elements(&g, &[0, 9]).is_err());
        let q = build_structure("random-latin:3:1").unwrap();
        assert!(Subgroup::from_elements(&q, &[0]).is_err());
    }

    #[test]
    fn coset_examples() {
        let g = build_structure("cyclic:6").unwrap();
        let a = Subgroup::from_elements(&g, &[0, 2, 4]).unwrap();
        assert_eq!(cosets(&g, &a, 1, 0).left_coset, [1, 3, 5]);
        let w = cosets(&g, &a, 0, 0);
        assert_eq!(w.left_coset, a.elements());
        assert_eq!(w.right_coset, a.elements());
        assert_eq!(w.middle, a.elements());

        let d4 = build_structure("dihedral:4").unwrap();
        let rot = Subgroup::from_elements(&d4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(cosets(&d4, &rot, 5, 0).left_coset, [4, 5, 6, 7]);
    }

    #[test]
    fn cosets_partition_the_group() {
        for spec in ["sym:4", "dihedral:5", "product:cyclic:2xcyclic:4"] {
            let g = build_structure(spec).unwrap();
            let n = g.order();
            for gens in [vec![1], vec![2], vec![1, 3]] {
                let a = Subgroup::generated_by(&g, &gens);
                let lefts = left_coset_representatives(&g, &a);
                let rights = right_coset_representatives(&g, &a);
                for (reps, left) in [(lefts, true), (rights, false)] {
                    assert_eq!(reps.len() * a.order(), n, "{spec}");
                    let mut all: Vec<Elem> = Vec::new();
                    for &x in &reps {
                        let w = cosets(&g, &a, x, x);
                        assert_eq!(w.middle.len(), a.order());
                        let coset = if left { w.left_coset } else { w.right_coset };
                        assert_eq!(coset.len(), a.order());
                        assert_eq!(coset[0], x, "representative is the coset minimum");
                        all.extend(coset);
                    }
                    all.sort_unstable();
                    all.dedup();
                    assert_eq!(all.len(), n, "{spec}");
                }
            }
        }
    }
}
