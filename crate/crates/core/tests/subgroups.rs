// Exact abelian search against an exhaustive closure of small generating sets.

use std::collections::BTreeSet;

use quad74::algebra::{find_abelian_subgroup, AbelianMode, Subgroup};
use quad74::{build_structure, Elem, OpTable};

fn closure(g: &OpTable, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = [0].into();
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.op(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn commutative(g: &OpTable, set: &BTreeSet<Elem>) -> bool {
    set.iter()
        .all(|&x| set.iter().all(|&y| g.op(x, y) == g.op(y, x)))
}

/// Largest abelian subgroup generated by at most three elements. Every
/// abelian subgroup of the fixtures below needs no more than three.
fn largest_abelian(g: &OpTable) -> usize {
    let n = g.order() as Elem;
    let mut best = 1;
    for a in 0..n {
        for b in a..n {
            if g.op(a, b) != g.op(b, a) {
                continue;
            }
            for c in b..n {
                let s = closure(g, &[a, b, c]);
                if s.len() > best && commutative(g, &s) {
                    best = s.len();
                }
            }
        }
    }
    best
}

#[test]
fn exact_matches_closure_oracle() {
    for spec in [
        "cyclic:1",
        "cyclic:12",
        "cyclic:24",
        "dihedral:3",
        "dihedral:4",
        "dihedral:6",
        "dihedral:12",
        "sym:3",
        "sym:4",
        "product:cyclic:2xcyclic:4",
        "product:cyclic:2xproduct:cyclic:2xcyclic:2",
        "product:sym:3xcyclic:2",
        "product:sym:3xcyclic:3",
        "product:dihedral:4xcyclic:3",
    ] {
        let g = build_structure(spec).unwrap();
        let a = find_abelian_subgroup(&g, AbelianMode::Exact).unwrap();
        let elems: BTreeSet<Elem> = a.elements().iter().copied().collect();
        assert_eq!(closure(&g, a.elements()), elems, "{spec}: not closed");
        assert!(commutative(&g, &elems), "{spec}: not abelian");
        assert_eq!(a.order(), largest_abelian(&g), "{spec}");
        let greedy = find_abelian_subgroup(&g, AbelianMode::Greedy).unwrap();
        assert!(greedy.is_abelian() && greedy.order() <= a.order(), "{spec}");
    }
}

#[test]
fn known_orders() {
    let order = |s: &str| {
        find_abelian_subgroup(&build_structure(s).unwrap(), AbelianMode::Exact)
            .unwrap()
            .order()
    };
    assert_eq!(order("cyclic:12"), 12);
    assert_eq!(order("sym:3"), 3);
    assert_eq!(order("sym:4"), 4);
    let s3 = build_structure("sym:3").unwrap();
    let rot = find_abelian_subgroup(&s3, AbelianMode::Exact).unwrap();
    assert_eq!(rot, Subgroup::generated_by(&s3, &[rot.elements()[1]]));
}
