use rayon::prelude::*;

use super::{CliqueKind, FourPartiteHypergraph};
use crate::config::{Config74, Quadruple};
use crate::error::{Error, Result};
use crate::Elem;

use super::Clique;

/// Reads the oriented quadruple off a Mixed clique and checks the algebra
/// that makes it a configuration. Returns `None` for SingleGenerator cliques.
///
/// With generators `(a₁,b₁,c₁) … (a₄,b₄,c₄)` of the 123, 124, 134, 234
/// edges: `δ = a₁ = a₄`, `β = b₁ = b₃`, `α = a₂ = a₃`, `γ = b₂ = b₄`.
pub fn clique_quadruple(
    hg: &FourPartiteHypergraph<'_>,
    vertices: [Elem; 4],
) -> Result<Option<Quadruple>> {
    let g = hg.group();
    let gens = hg.clique_generators(vertices);
    if gens.iter().all(|&x| x == gens[0]) {
        return Ok(None);
    }
    let dump = |what: &str| {
        Err(Error::Invariant(format!(
            "{what}: clique {vertices:?} in window (ell={}, r={}) with generators {gens:?}",
            hg.window().ell,
            hg.window().r
        )))
    };
    if !(0..4).all(|i| (i + 1..4).all(|j| gens[i] != gens[j])) {
        return dump("generators neither identical nor pairwise distinct");
    }
    let [g1, g2, g3, g4] = gens;
    if g1.a != g4.a || g1.b != g3.b || g2.a != g3.a || g2.b != g4.b {
        return dump("cross equalities a1=a4, b1=b3, a2=a3, b2=b4 fail");
    }
    let quad = Quadruple::new(g2.a, g1.b, g2.b, g1.a);
    if quad.alpha == quad.delta || quad.beta == quad.gamma {
        return dump("degenerate quadruple from a Mixed clique");
    }
    let [gi, gj, gk, gl] = vertices;
    let (op, inv) = (|x, y| g.op(x, y), |x| g.inv(x));
    // c₁ = g_j g_k⁻¹ g_i and c₂ = g_l both lie in A, hence commute.
    let (c1, c2) = (op(op(gj, inv(gk)), gi), gl);
    if op(c1, c2) != op(c2, c1) {
        return dump("c1 and c2 do not commute");
    }
    let lhs = op(op(op(gk, inv(gj)), inv(gl)), gj);
    let rhs = op(op(op(gi, inv(gl)), inv(gi)), gk);
    if lhs != rhs {
        return dump("g_k g_j^-1 g_l^-1 g_j != g_i g_l^-1 g_i^-1 g_k");
    }
    if op(quad.alpha, quad.beta) != op(quad.delta, quad.gamma) {
        return dump("alpha*beta != delta*gamma");
    }
    Ok(Some(quad))
}

/// Configurations of a clique list, deduplicated over orientation and over
/// the `c` values supporting the same configuration, sorted.
pub fn extract_configs(
    hg: &FourPartiteHypergraph<'_>,
    cliques: &[Clique],
) -> Result<Vec<Config74>> {
    let mut quads = Vec::new();
    for clique in cliques.iter().filter(|c| c.kind == CliqueKind::Mixed) {
        match clique_quadruple(hg, clique.vertices())? {
            Some(q) => quads.push(q.canonical()),
            None => {
                return Err(Error::Invariant(format!(
                    "clique {clique:?} marked Mixed has one generator"
                )))
            }
        }
    }
    quads.sort_unstable();
    quads.dedup();
    Ok(quads
        .into_iter()
        .map(|q| Config74::from_quadruple(hg.group(), q))
        .collect())
}

#[derive(Clone, Debug, Default)]
pub struct WindowConfigs {
    /// Canonical quadruples, sorted, each with the number of Mixed cliques
    /// that read it in canonical orientation (one per `c ∈ A`).
    pub supported: Vec<(Quadruple, u64)>,
    /// Mixed cliques reading the swapped orientation `(δ,γ,β,α)`.
    pub swapped_cliques: u64,
    pub single_cliques: u64,
    pub mixed_cliques: u64,
}

/// Packs a quadruple into a `u64` that sorts lexicographically.
fn pack(q: Quadruple) -> u64 {
    (q.alpha as u64) << 48 | (q.beta as u64) << 32 | (q.gamma as u64) << 16 | q.delta as u64
}

fn unpack(k: u64) -> Quadruple {
    let f = |shift: u32| ((k >> shift) & 0xffff) as Elem;
    Quadruple::new(f(48), f(32), f(16), f(0))
}

/// Streams the cliques of a window straight into deduplicated
/// configurations without materializing the clique list. Parallel over
/// `g_l`; partial results are merged as sorted sets, so the result does not
/// depend on scheduling.
///
/// A clique is fixed by its oriented quadruple and `c = g_l`, so for one
/// `g_l` every canonical quadruple is read at most once.
pub fn window_configs(hg: &FourPartiteHypergraph<'_>) -> Result<WindowConfigs> {
    if hg.group().order() > 1 << 16 {
        return Err(Error::TooLarge(
            "window search supports groups of order <= 65536".into(),
        ));
    }
    (0..hg.class_size())
        .into_par_iter()
        .map(|l| {
            let mut keys = Vec::new();
            let (mut single, mut swapped) = (0, 0);
            hg.for_each_clique_at(l, |i, j, k| {
                match clique_quadruple(hg, hg.vertices_at(i, j, k, l))? {
                    Some(q) if q.is_canonical() => keys.push(pack(q)),
                    Some(_) => swapped += 1,
                    None => single += 1,
                }
                Ok(())
            })?;
            keys.sort_unstable();
            if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Invariant(format!(
                    "quadruple {:?} read twice with c = {}",
                    unpack(w[0]),
                    hg.class(3)[l]
                )));
            }
            let mixed = keys.len() as u64 + swapped;
            Ok(WindowConfigs {
                supported: keys.into_iter().map(|k| (unpack(k), 1)).collect(),
                swapped_cliques: swapped,
                single_cliques: single,
                mixed_cliques: mixed,
            })
        })
        .try_reduce(WindowConfigs::default, |x, y| Ok(merge(x, y)))
}

fn merge(x: WindowConfigs, y: WindowConfigs) -> WindowConfigs {
    let mut out = Vec::with_capacity(x.supported.len().max(y.supported.len()));
    let (mut a, mut b) = (
        x.supported.into_iter().peekable(),
        y.supported.into_iter().peekable(),
    );
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(p), Some(q)) if p.0 == q.0 => {
                let (qa, na) = a.next().unwrap();
                let (_, nb) = b.next().unwrap();
                (qa, na + nb)
            }
            (Some(p), Some(q)) if p.0 < q.0 => a.next().unwrap(),
            (Some(_), Some(_)) => b.next().unwrap(),
            (Some(_), None) => a.next().unwrap(),
            (None, Some(_)) => b.next().unwrap(),
            (None, None) => break,
        };
        out.push(next);
    }
    WindowConfigs {
        supported: out,
        swapped_cliques: x.swapped_cliques + y.swapped_cliques,
        single_cliques: x.single_cliques + y.single_cliques,
        mixed_cliques: x.mixed_cliques + y.mixed_cliques,
    }
}
