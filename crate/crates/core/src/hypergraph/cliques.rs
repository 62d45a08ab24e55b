use rayon::prelude::*;

use super::{EdgeType, FourPartiteHypergraph, Generator};
use crate::bits;
use crate::error::{Error, Result};
use crate::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CliqueKind {
    SingleGenerator,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique {
    pub gi: Elem,
    pub gj: Elem,
    pub gk: Elem,
    pub gl: Elem,
    pub kind: CliqueKind,
}

impl Clique {
    pub fn vertices(&self) -> [Elem; 4] {
        [self.gi, self.gj, self.gk, self.gl]
    }
}

impl FourPartiteHypergraph<'_> {
    /// Generators of the four edges of a clique, in `EdgeType::ALL` order.
    pub fn clique_generators(&self, vertices: [Elem; 4]) -> [Generator; 4] {
        EdgeType::ALL.map(|e| super::recover_generator(self.g, e, e.select(vertices)))
    }

    /// Classifies a complete 4-tuple. Two or three distinct generators would
    /// contradict the uniqueness of the clique spanned by two edges.
    pub fn classify(&self, vertices: [Elem; 4]) -> Result<CliqueKind> {
        let gens = self.clique_generators(vertices);
        if gens.iter().all(|&g| g == gens[0]) {
            return Ok(CliqueKind::SingleGenerator);
        }
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| gens[i] != gens[j]));
        if !distinct {
            return Err(Error::Invariant(format!(
                "clique {vertices:?} has repeated but not identical generators {gens:?}"
            )));
        }
        Ok(CliqueKind::Mixed)
    }

    /// Calls `f(g_i, g_j, g_k)` (local indices) for every clique with
    /// `g_l` at local index `l`, in lexicographic `(i, j, k)` order.
    ///
    /// For fixed `(g_i, g_l)` the 124 and 134 rows give the candidate `g_j`
    /// and `g_k` sets; each `g_j` then intersects the 134 row with its 234
    /// and 123 rows.
    pub(super) fn for_each_clique_at(
        &self,
        l: usize,
        mut f: impl FnMut(usize, usize, usize) -> Result<()>,
    ) -> Result<()> {
        let m = self.class_size();
        let mut cand = vec![0u64; bits::words_for(m)];
        for i in 0..m {
            let js = self.row(EdgeType::T124, i, l);
            let ks = self.row(EdgeType::T134, i, l);
            if ks.iter().all(|&w| w == 0) {
                continue;
            }
            for j in bits::ones(js) {
                let k234 = self.row(EdgeType::T234, j, l);
                let k123 = self.row(EdgeType::T123, i, j);
                for (t, c) in cand.iter_mut().enumerate() {
                    *c = ks[t] & k234[t] & k123[t];
                }
                for k in bits::ones(&cand) {
                    f(i, j, k)?;
                }
            }
        }
        Ok(())
    }

    /// `(g_i, g_j, g_k, g_l)` as group elements from local indices.
    #[inline]
    pub(super) fn vertices_at(&self, i: usize, j: usize, k: usize, l: usize) -> [Elem; 4] {
        [
            self.class(0)[i],
            self.class(1)[j],
            self.class(2)[k],
            self.class(3)[l],
        ]
    }
}

/// Every `K4` with one vertex per class, ordered by `(g_l, g_i, g_j, g_k)`
/// local indices; parallel over `g_l`, merged in order.
pub fn enumerate_cliques(hg: &FourPartiteHypergraph<'_>) -> Result<Vec<Clique>> {
    let per_l: Vec<Vec<Clique>> = (0..hg.class_size())
        .into_par_iter()
        .map(|l| {
            let mut out = Vec::new();
            hg.for_each_clique_at(l, |i, j, k| {
                let v = hg.vertices_at(i, j, k, l);
                let kind = hg.classify(v)?;
                out.push(Clique {
                    gi: v[0],
                    gj: v[1],
                    gk: v[2],
                    gl: v[3],
                    kind,
                });
                Ok(())
            })?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_l.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_structure, cosets, Subgroup};
    use crate::hypergraph::build_window_hypergraph;
    use crate::pair_sets::PairSet;

    /// Brute force over all `|A|^4` one-per-class tuples.
    fn brute_cliques(hg: &FourPartiteHypergraph<'_>) -> Vec<[Elem; 4]> {
        let mut out = Vec::new();
        for &gl in hg.class(3) {
            for &gi in hg.class(0) {
                for &gj in hg.class(1) {
                    for &gk in hg.class(2) {
                        let v = [gi, gj, gk, gl];
                        if EdgeType::ALL.iter().all(|&e| hg.has_edge(e, e.select(v))) {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn single_pair_on_z2_gives_two_single_cliques() {
        let g = build_structure("cyclic:2").unwrap();
        let a = Subgroup::whole(&g);
        let h = PairSet::from_pairs(2, [(0, 0)]).unwrap();
        let hg = build_window_hypergraph(&g, &a, &h, &cosets(&g, &a, 0, 0)).unwrap();
        let cliques = enumerate_cliques(&hg).unwrap();
        assert_eq!(brute_cliques(&hg).len(), 2);
        assert_eq!(cliques.len(), 2);
        assert!(cliques
            .iter()
            .all(|c| c.kind == CliqueKind::SingleGenerator));
    }

    #[test]
    fn z3_full_has_mixed_cliques() {
        let g = build_structure("cyclic:3").unwrap();
        let a = Subgroup::whole(&g);
        let hg = build_window_hypergraph(&g, &a, &PairSet::full(3), &cosets(&g, &a, 0, 0)).unwrap();
        let cliques = enumerate_cliques(&hg).unwrap();
        let single = cliques
            .iter()
            .filter(|c| c.kind == CliqueKind::SingleGenerator)
            .count();
        assert_eq!(single, hg.generators().len());
        // 18 oriented configurations times |A| = 3 choices of c.
        assert_eq!(cliques.len() - single, 54);
    }

    #[test]
    fn matches_brute_force() {
        for (spec, gens, kappa_seed) in [
            ("dihedral:4", vec![1], 3u64),
            ("sym:4", vec![1, 6], 1),
            ("cyclic:8", vec![2], 2),
        ] {
            let g = build_structure(spec).unwrap();
            let a = Subgroup::generated_by(&g, &gens);
            assert!(a.is_abelian());
            let h = crate::pair_sets::generate_pairs(
                g.order(),
                &crate::pair_sets::PairSource::Random {
                    kappa: 0.6,
                    seed: kappa_seed,
                },
            )
            .unwrap();
            for ell in crate::algebra::left_coset_representatives(&g, &a)
                .into_iter()
                .take(3)
            {
                let w = cosets(&g, &a, ell, 1 % g.order() as Elem);
                let hg = build_window_hypergraph(&g, &a, &h, &w).unwrap();
                let mut got: Vec<[Elem; 4]> = enumerate_cliques(&hg)
                    .unwrap()
                    .iter()
                    .map(|c| c.vertices())
                    .collect();
                let mut want = brute_cliques(&hg);
                got.sort_unstable();
                want.sort_unstable();
                assert_eq!(got, want, "{spec} ell={ell}");
            }
        }
    }
}
