//! (7,4)-configurations: four distinct pairs `(α,β), (α,γ), (δ,γ), (δ,β)`
//! of `H` with `αβ = δγ`.

use serde::Serialize;

use crate::algebra::OpTable;
use crate::error::{Error, Result};
use crate::pair_sets::PairSet;
use crate::Elem;

/// An oriented quadruple `(α, β, γ, δ)`. The pair set is invariant under the
/// swap `(α,β,γ,δ) -> (δ,γ,β,α)` and under nothing else, so the canonical
/// orientation is the lexicographically smaller of the two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadruple {
    pub alpha: Elem,
    pub beta: Elem,
    pub gamma: Elem,
    pub delta: Elem,
}

impl Quadruple {
    pub fn new(alpha: Elem, beta: Elem, gamma: Elem, delta: Elem) -> Self {
        Quadruple {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    pub fn swapped(self) -> Self {
        Quadruple::new(self.delta, self.gamma, self.beta, self.alpha)
    }

    pub fn canonical(self) -> Self {
        self.min(self.swapped())
    }

    pub fn is_canonical(self) -> bool {
        self <= self.swapped()
    }

    /// `(α,β), (α,γ), (δ,γ), (δ,β)`.
    pub fn pairs(self) -> [(Elem, Elem); 4] {
        let Quadruple {
            alpha,
            beta,
            gamma,
            delta,
        } = self;
        [(alpha, beta), (alpha, gamma), (delta, gamma), (delta, beta)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Config74 {
    pub alpha: Elem,
    pub beta: Elem,
    pub gamma: Elem,
    pub delta: Elem,
    /// `αβ = δγ`.
    pub product: Elem,
    /// `{α, β, γ, δ, αβ, αγ, δβ}`, sorted; at most seven elements.
    pub seven: Vec<Elem>,
    /// `(α,β,αβ), (α,γ,αγ), (δ,γ,δγ), (δ,β,δβ)`.
    pub triples: [[Elem; 3]; 4],
}

impl Config74 {
    /// Builds the canonical-orientation record. Does not check membership in
    /// `H`; see [`Config74::verify`].
    pub fn from_quadruple(q: &OpTable, quad: Quadruple) -> Self {
        let quad = quad.canonical();
        let Quadruple {
            alpha,
            beta,
            gamma,
            delta,
        } = quad;
        let triples = quad.pairs().map(|(x, y)| [x, y, q.op(x, y)]);
        let mut seven = vec![
            alpha,
            beta,
            gamma,
            delta,
            triples[0][2],
            triples[1][2],
            triples[3][2],
        ];
        seven.sort_unstable();
        seven.dedup();
        Config74 {
            alpha,
            beta,
            gamma,
            delta,
            product: triples[0][2],
            seven,
            triples,
        }
    }

    pub fn quadruple(&self) -> Quadruple {
        Quadruple::new(self.alpha, self.beta, self.gamma, self.delta)
    }

    /// Rechecks every invariant from the table and `h`.
    pub fn verify(&self, q: &OpTable, h: &PairSet) -> Result<()> {
        let fail = |what: &str| Err(Error::Invariant(format!("{what} in config {self:?}")));
        let quad = self.quadruple();
        if !quad.is_canonical() {
            return fail("non-canonical orientation");
        }
        if self.alpha == self.delta || self.beta == self.gamma {
            return fail("degenerate quadruple");
        }
        let ab = q.op(self.alpha, self.beta);
        if ab != q.op(self.delta, self.gamma) || ab != self.product {
            return fail("alpha*beta != delta*gamma");
        }
        let (seven, spanned) = config_seven_set(q, self, h)?;
        if seven != self.seven || seven.len() > 7 {
            return fail("bad seven-element set");
        }
        if spanned
            .iter()
            .any(|t| t.iter().any(|x| seven.binary_search(x).is_err()))
        {
            return fail("triple not spanned by the seven-set");
        }
        Ok(())
    }

    /// JSON object with lexicographically sorted keys.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain integers serialize")
    }

    pub fn to_tsv(&self) -> String {
        let seven: Vec<String> = self.seven.iter().map(|x| x.to_string()).collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.alpha,
            self.beta,
            self.gamma,
            self.delta,
            self.product,
            seven.join(",")
        )
    }
}

/// The at most seven elements a configuration lives on, and the four
/// distinct `H`-triples `(x, y, xy)` it spans.
pub fn config_seven_set(
    q: &OpTable,
    cfg: &Config74,
    h: &PairSet,
) -> Result<(Vec<Elem>, Vec<[Elem; 3]>)> {
    let pairs = cfg.quadruple().pairs();
    for &(x, y) in &pairs {
        if !h.contains(x, y) {
            return Err(Error::Invariant(format!(
                "pair ({x},{y}) of {cfg:?} is not in H"
            )));
        }
    }
    let triples: Vec<[Elem; 3]> = pairs.iter().map(|&(x, y)| [x, y, q.op(x, y)]).collect();
    let mut distinct = triples.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 4 {
        return Err(Error::Invariant(format!(
            "{cfg:?} spans {} distinct triples",
            distinct.len()
        )));
    }
    let mut seven: Vec<Elem> = triples.iter().flatten().copied().collect();
    seven.sort_unstable();
    seven.dedup();
    Ok((seven, triples))
}
