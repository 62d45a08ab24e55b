use serde_json::json;

use super::{EdgeType, Generator};
use crate::algebra::{CosetWindow, OpTable, Subgroup};
use crate::bits;
use crate::error::{Error, Result};
use crate::pair_sets::PairSet;
use crate::Elem;

const ABSENT: u32 = u32::MAX;

/// `(a, b, c)` from the three vertices of a typed edge:
///
/// | type | a           | b           | c               |
/// |------|-------------|-------------|-----------------|
/// | 123  | g_k g_j⁻¹   | g_i⁻¹ g_k   | g_j g_k⁻¹ g_i   |
/// | 124  | g_i g_l⁻¹   | g_l⁻¹ g_j   | g_l             |
/// | 134  | g_i g_l⁻¹   | g_i⁻¹ g_k   | g_l             |
/// | 234  | g_k g_j⁻¹   | g_l⁻¹ g_j   | g_l             |
///
/// Vertices are given in class order.
pub fn recover_generator(g: &OpTable, edge: EdgeType, v: [Elem; 3]) -> Generator {
    let (op, inv) = (|x, y| g.op(x, y), |x| g.inv(x));
    match edge {
        EdgeType::T123 => {
            let [gi, gj, gk] = v;
            Generator {
                a: op(gk, inv(gj)),
                b: op(inv(gi), gk),
                c: op(op(gj, inv(gk)), gi),
            }
        }
        EdgeType::T124 => {
            let [gi, gj, gl] = v;
            Generator {
                a: op(gi, inv(gl)),
                b: op(inv(gl), gj),
                c: gl,
            }
        }
        EdgeType::T134 => {
            let [gi, gk, gl] = v;
            Generator {
                a: op(gi, inv(gl)),
                b: op(inv(gi), gk),
                c: gl,
            }
        }
        EdgeType::T234 => {
            let [gj, gk, gl] = v;
            Generator {
                a: op(gk, inv(gj)),
                b: op(inv(gl), gj),
                c: gl,
            }
        }
    }
}

pub struct FourPartiteHypergraph<'g> {
    pub(super) g: &'g OpTable,
    window: CosetWindow,
    abelian: Subgroup,
    /// `V1 = ℓA`, `V2 = Ar`, `V3 = ℓAr`, `V4 = A`, each sorted.
    classes: [Vec<Elem>; 4],
    /// Element → position within each class, `ABSENT` outside it.
    local: [Vec<u32>; 4],
    generators: Vec<Generator>,
    /// Per edge type, a bit row over one class keyed by the local indices of
    /// the other two (see `EdgeType::layout`).
    adjacency: [Vec<u64>; 4],
    stride: usize,
    edge_count: usize,
}

impl std::fmt::Debug for FourPartiteHypergraph<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FourPartiteHypergraph")
            .field("ell", &self.window.ell)
            .field("r", &self.window.r)
            .field("class_size", &self.class_size())
            .field("generators", &self.generators.len())
            .field("edges", &self.edge_count)
            .finish()
    }
}

/// Builds the window hypergraph. An empty window gives an empty hypergraph.
pub fn build_window_hypergraph<'g>(
    g: &'g OpTable,
    a: &Subgroup,
    h: &PairSet,
    w: &CosetWindow,
) -> Result<FourPartiteHypergraph<'g>> {
    if !g.is_group() {
        return Err(Error::Invalid(
            "the window hypergraph requires a group".into(),
        ));
    }
    if !a.is_abelian() {
        return Err(Error::Invalid(
            "the window hypergraph requires an abelian subgroup".into(),
        ));
    }
    if h.order() != g.order() || a.parent_order() != g.order() {
        return Err(Error::Invalid(
            "group, subgroup and pair set orders differ".into(),
        ));
    }
    let n = g.order();
    let m = a.order();
    let classes = [
        w.left_coset.clone(),
        w.right_coset.clone(),
        w.middle.clone(),
        a.elements().to_vec(),
    ];
    let local = classes.clone().map(|class| {
        let mut map = vec![ABSENT; n];
        for (i, &x) in class.iter().enumerate() {
            map[x as usize] = i as u32;
        }
        map
    });
    let stride = bits::words_for(m);
    let mut hg = FourPartiteHypergraph {
        g,
        window: w.clone(),
        abelian: a.clone(),
        classes,
        local,
        generators: Vec::new(),
        adjacency: std::array::from_fn(|_| vec![0; m * m * stride]),
        stride,
        edge_count: 0,
    };
    for &pa in &w.left_coset {
        for &pb in &w.right_coset {
            if !h.contains(pa, pb) {
                continue;
            }
            for &c in a.elements() {
                let gen = Generator { a: pa, b: pb, c };
                let clique = hg.clique_of(gen);
                for edge in EdgeType::ALL {
                    if !hg.insert_edge(edge, edge.select(clique))? {
                        return Err(Error::Invariant(format!(
                            "typed edge {} {:?} produced twice (second time by {gen:?})",
                            edge.label(),
                            edge.select(clique)
                        )));
                    }
                }
                hg.generators.push(gen);
            }
        }
    }
    Ok(hg)
}

impl<'g> FourPartiteHypergraph<'g> {
    pub fn group(&self) -> &'g OpTable {
        self.g
    }

    pub fn window(&self) -> &CosetWindow {
        &self.window
    }

    pub fn abelian(&self) -> &Subgroup {
        &self.abelian
    }

    pub fn class(&self, idx: usize) -> &[Elem] {
        &self.classes[idx]
    }

    /// `|A|`, the size of every vertex class.
    pub fn class_size(&self) -> usize {
        self.classes[3].len()
    }

    /// Generators in lexicographic `(a, b, c)` order.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Number of distinct typed edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertex_count(&self) -> usize {
        4 * self.class_size()
    }

    /// `(g_i, g_j, g_k, g_l)` of a generator.
    pub fn clique_of(&self, gen: Generator) -> [Elem; 4] {
        let ac = self.g.op(gen.a, gen.c);
        [ac, self.g.op(gen.c, gen.b), self.g.op(ac, gen.b), gen.c]
    }

    /// The four typed edges of every generator, in generator order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeType, [Elem; 3], Generator)> + '_ {
        self.generators.iter().flat_map(move |&gen| {
            let clique = self.clique_of(gen);
            EdgeType::ALL.map(|e| (e, e.select(clique), gen))
        })
    }

    #[inline]
    pub(super) fn local_index(&self, class: usize, x: Elem) -> Option<usize> {
        let i = self.local[class][x as usize];
        (i != ABSENT).then_some(i as usize)
    }

    fn locate(&self, edge: EdgeType, v: [Elem; 3]) -> Result<[usize; 3]> {
        let cls = edge.classes();
        let mut out = [0; 3];
        for t in 0..3 {
            out[t] = self.local_index(cls[t], v[t]).ok_or_else(|| {
                Error::Invalid(format!(
                    "vertex {} is not in class V{} for edge type {}",
                    v[t],
                    cls[t] + 1,
                    edge.label()
                ))
            })?;
        }
        Ok(out)
    }

    #[inline]
    pub(super) fn row(&self, edge: EdgeType, x: usize, y: usize) -> &[u64] {
        let m = self.class_size();
        let start = (x * m + y) * self.stride;
        &self.adjacency[edge as usize][start..start + self.stride]
    }

    fn insert_edge(&mut self, edge: EdgeType, v: [Elem; 3]) -> Result<bool> {
        let loc = self
            .locate(edge, v)
            .map_err(|e| Error::Invariant(e.to_string()))?;
        let (kx, ky, kz) = edge.layout();
        let (x, y, z) = (loc[kx], loc[ky], loc[kz]);
        let m = self.class_size();
        let start = (x * m + y) * self.stride;
        let row = &mut self.adjacency[edge as usize][start..start + self.stride];
        if bits::get(row, z) {
            return Ok(false);
        }
        bits::set(row, z);
        self.edge_count += 1;
        Ok(true)
    }

    pub fn has_edge(&self, edge: EdgeType, v: [Elem; 3]) -> bool {
        match self.locate(edge, v) {
            Ok(loc) => {
                let (kx, ky, kz) = edge.layout();
                bits::get(self.row(edge, loc[kx], loc[ky]), loc[kz])
            }
            Err(_) => false,
        }
    }

    /// Recovers the generator of a typed edge and checks `a ∈ ℓA`, `b ∈ Ar`,
    /// `c ∈ A`.
    pub fn recover(&self, edge: EdgeType, v: [Elem; 3]) -> Result<Generator> {
        self.locate(edge, v)?;
        let gen = recover_generator(self.g, edge, v);
        let ok = self.local_index(0, gen.a).is_some()
            && self.local_index(1, gen.b).is_some()
            && self.local_index(3, gen.c).is_some();
        if !ok {
            return Err(Error::Invalid(format!(
                "malformed {} edge {v:?}: recovered {gen:?} lies outside the window",
                edge.label()
            )));
        }
        Ok(gen)
    }

    /// Debug dump with stable key order.
    pub fn to_json(&self) -> serde_json::Value {
        let gens: Vec<[Elem; 3]> = self.generators.iter().map(|g| [g.a, g.b, g.c]).collect();
        json!({
            "ell": self.window.ell,
            "r": self.window.r,
            "subgroup": self.abelian.elements(),
            "classes": {
                "V1": self.classes[0],
                "V2": self.classes[1],
                "V3": self.classes[2],
                "V4": self.classes[3],
            },
            "generator_count": self.generators.len(),
            "generators": gens,
            "edge_count": self.edge_count,
            "vertex_count": self.vertex_count(),
        })
    }
}
