//! Finding and counting quadruples `(α,β), (α,γ), (δ,γ), (δ,β)` with
//! `αβ = δγ` in dense subsets of `G×G`, through the coset-window
//! hypergraph construction and through a brute-force oracle, plus the
//! triple-system tools around them.

pub mod algebra;
pub mod bits;
pub mod config;
pub mod error;
pub mod fraction;
pub mod hypergraph;
pub mod oracle;
pub mod pair_sets;
pub mod pipeline;
pub mod rng;
pub mod triple_systems;

/// Element index into an operation table; `0` is the identity of a group.
pub type Elem = u32;

pub use algebra::{build_structure, AbelianMode, CosetWindow, Kind, OpTable, Subgroup};
pub use config::{config_seven_set, Config74, Quadruple};
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use pair_sets::{generate_pairs, PairSet, PairSource};
pub use triple_systems::TripleSystem;
