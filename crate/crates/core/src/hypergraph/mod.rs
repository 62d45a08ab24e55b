//! The 4-partite 3-uniform hypergraph of a coset window.
//!
//! For an abelian subgroup `A`, a window `ℓA × Ar` and `H`, the vertex
//! classes are `V1 = ℓA`, `V2 = Ar`, `V3 = ℓAr`, `V4 = A`. Every generator
//! `(a, b, c)` with `(a, b) ∈ H ∩ (ℓA × Ar)` and `c ∈ A` places the clique
//! `g_i = ac ∈ V1`, `g_j = cb ∈ V2`, `g_k = acb ∈ V3`, `g_l = c ∈ V4`.
//! Each typed edge determines its generator, so a clique whose edges come
//! from more than one generator yields a configuration.

mod build;
mod cliques;
mod extract;

pub use build::{build_window_hypergraph, recover_generator, FourPartiteHypergraph};
pub use cliques::{enumerate_cliques, Clique, CliqueKind};
pub use extract::{clique_quadruple, extract_configs, window_configs, WindowConfigs};

use crate::Elem;

/// Edge types, named by the vertex classes they span.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeType {
    /// `V1 V2 V3`
    T123,
    /// `V1 V2 V4`
    T124,
    /// `V1 V3 V4`
    T134,
    /// `V2 V3 V4`
    T234,
}

impl EdgeType {
    pub const ALL: [EdgeType; 4] = [
        EdgeType::T123,
        EdgeType::T124,
        EdgeType::T134,
        EdgeType::T234,
    ];

    /// Zero-based vertex classes spanned.
    pub fn classes(self) -> [usize; 3] {
        match self {
            EdgeType::T123 => [0, 1, 2],
            EdgeType::T124 => [0, 1, 3],
            EdgeType::T134 => [0, 2, 3],
            EdgeType::T234 => [1, 2, 3],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EdgeType::T123 => "123",
            EdgeType::T124 => "124",
            EdgeType::T134 => "134",
            EdgeType::T234 => "234",
        }
    }

    /// Positions (within `classes()`) of the two key vertices and of the
    /// bit vertex in the adjacency rows: 123 is keyed by `(g_i, g_j)`, the
    /// other types by their first vertex and `g_l`.
    pub(crate) fn layout(self) -> (usize, usize, usize) {
        match self {
            EdgeType::T123 => (0, 1, 2),
            _ => (0, 2, 1),
        }
    }

    /// Picks this type's three vertices out of a full `(g_i, g_j, g_k, g_l)`.
    pub fn select(self, clique: [Elem; 4]) -> [Elem; 3] {
        self.classes().map(|c| clique[c])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
}
