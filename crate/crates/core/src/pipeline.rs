//! End-to-end search: abelian subgroup, window scan, per-window hypergraph,
//! clique enumeration and extraction, global deduplication, optional oracle
//! cross-check.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{cosets, find_abelian_subgroup, AbelianMode, OpTable, Subgroup};
use crate::config::{Config74, Quadruple};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::hypergraph::{build_window_hypergraph, window_configs};
use crate::oracle::{oracle_count, oracle_find, Restriction};
use crate::pair_sets::{best_coset_pair, scan_windows, PairSet, WindowScore};
use crate::Elem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupChoice {
    Search(AbelianMode),
    /// Exact when the order allows it, greedy otherwise.
    Auto,
    Explicit(Vec<Elem>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    BestWindow,
    /// Every window with density at least `f·|A|²` (and positive).
    AllWindowsAbove(Fraction),
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub subgroup: SubgroupChoice,
    pub scope: Scope,
    pub verify: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowSummary {
    pub ell: Elem,
    pub r: Elem,
    pub density: u64,
    /// `density / |A|²`.
    pub relative_density: String,
    pub configs: usize,
    pub mixed_cliques: u64,
    pub single_cliques: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub group: String,
    pub order: usize,
    pub pairs: usize,
    pub seed: Option<u64>,
    pub subgroup_order: usize,
    pub subgroup: Vec<Elem>,
    pub best_ell: Elem,
    pub best_r: Elem,
    pub best_density: u64,
    /// `|H|·|A|²/n²`, the average window density.
    pub mean_density: String,
    /// Share of windows with density at least half the average.
    pub windows_above_half_mean: String,
    pub windows: Vec<WindowSummary>,
    pub pipeline_count: usize,
    /// `pipeline_count / (|A|·n²)`.
    pub ratio: String,
    /// Oracle count restricted to the processed windows (with `verify`).
    pub oracle_window_count: Option<usize>,
    /// Oracle count over all of `G×G` (with `verify`).
    pub oracle_total_count: Option<u64>,
    pub verified: Option<bool>,
}

impl RunReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub report: RunReport,
    pub configs: Vec<Config74>,
    /// Wall-clock time per stage, in execution order. Not part of the report
    /// so that reports stay byte-identical across runs.
    pub timings: Vec<(&'static str, Duration)>,
}

pub fn choose_subgroup(g: &OpTable, choice: &SubgroupChoice) -> Result<Subgroup> {
    let a = match choice {
        SubgroupChoice::Search(mode) => find_abelian_subgroup(g, *mode)?,
        SubgroupChoice::Auto => {
            let mode = if g.order() <= crate::algebra::subgroup::EXACT_ABELIAN_LIMIT {
                AbelianMode::Exact
            } else {
                AbelianMode::Greedy
            };
            find_abelian_subgroup(g, mode)?
        }
        SubgroupChoice::Explicit(elements) => Subgroup::from_elements(g, elements)?,
    };
    if !a.is_abelian() {
        return Err(Error::Invalid(format!(
            "subgroup {:?} is not abelian",
            a.elements()
        )));
    }
    Ok(a)
}

pub fn run_pipeline(
    g: &OpTable,
    group_spec: &str,
    h: &PairSet,
    seed: Option<u64>,
    opts: &PipelineOptions,
) -> Result<PipelineOutput> {
    if !g.is_group() {
        return Err(Error::Invalid(
            "the pipeline requires a group; use the oracle for quasigroups".into(),
        ));
    }
    if h.order() != g.order() {
        return Err(Error::Invalid(format!(
            "pair set order {} differs from group order {}",
            h.order(),
            g.order()
        )));
    }
    let n = g.order() as u128;
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut Vec<(&'static str, Duration)>| {
        timings.push((name, clock.elapsed()));
        clock = Instant::now();
    };

    let a = choose_subgroup(g, &opts.subgroup)?;
    let m = a.order() as u128;
    lap("subgroup", &mut timings);

    let scores = scan_windows(h, g, &a);
    let best = best_coset_pair(h, g, &a);
    if best.density as u128 * n * n < h.count() as u128 * m * m {
        return Err(Error::Invariant(format!(
            "best window {best:?} is below the average density"
        )));
    }
    let total = h.count() as u128;
    let above_half = scores
        .iter()
        .filter(|s| 2 * s.density as u128 * n * n >= total * m * m)
        .count();
    let selected: Vec<WindowScore> = match opts.scope {
        Scope::BestWindow => vec![best].into_iter().filter(|s| s.density > 0).collect(),
        Scope::AllWindowsAbove(f) => scores
            .iter()
            .filter(|s| s.density > 0 && f.scaled_le(m * m, s.density as u128))
            .copied()
            .collect(),
    };
    lap("window scan", &mut timings);

    let mut all: Vec<Quadruple> = Vec::new();
    let mut windows = Vec::new();
    let mut oracle_window_count = 0usize;
    let mut verified = true;
    for score in &selected {
        let w = cosets(g, &a, score.ell, score.r);
        let hg = build_window_hypergraph(g, &a, h, &w)?;
        let found = window_configs(&hg)?;
        for &(quad, support) in &found.supported {
            if support != m as u64 {
                return Err(Error::Invariant(format!(
                    "config {quad:?} read by {support} Mixed cliques in canonical orientation, expected |A| = {m}"
                )));
            }
        }
        if found.swapped_cliques != m as u64 * found.supported.len() as u64 {
            return Err(Error::Invariant(format!(
                "{} swapped-orientation cliques for {} configs with |A| = {m}",
                found.swapped_cliques,
                found.supported.len()
            )));
        }
        let quads: Vec<Quadruple> = found.supported.iter().map(|s| s.0).collect();
        if opts.verify {
            let restriction = Restriction {
                left: &w.left_coset,
                right: &w.right_coset,
            };
            let expected: Vec<Quadruple> = oracle_find(g, h, Some(restriction))
                .iter()
                .map(|c| c.quadruple())
                .collect();
            oracle_window_count += expected.len();
            if expected != quads {
                verified = false;
            }
        }
        windows.push(WindowSummary {
            ell: score.ell,
            r: score.r,
            density: score.density,
            relative_density: Fraction::new(score.density as u128, m * m).to_string(),
            configs: quads.len(),
            mixed_cliques: found.mixed_cliques,
            single_cliques: found.single_cliques,
        });
        all.extend(quads);
    }
    all.sort_unstable();
    all.dedup();
    let configs: Vec<Config74> = all
        .into_iter()
        .map(|q| Config74::from_quadruple(g, q))
        .collect();
    for c in &configs {
        c.verify(g, h)?;
    }
    lap("hypergraph search", &mut timings);

    let oracle_total_count = if opts.verify {
        let total = oracle_count(g, h);
        if (configs.len() as u64) > total {
            verified = false;
        }
        lap("oracle", &mut timings);
        Some(total)
    } else {
        None
    };

    let report = RunReport {
        group: group_spec.to_string(),
        order: g.order(),
        pairs: h.count(),
        seed,
        subgroup_order: a.order(),
        subgroup: a.elements().to_vec(),
        best_ell: best.ell,
        best_r: best.r,
        best_density: best.density,
        mean_density: Fraction::new(total * m * m, n * n).to_string(),
        windows_above_half_mean: Fraction::new(above_half as u128, scores.len() as u128)
            .to_string(),
        windows,
        pipeline_count: configs.len(),
        ratio: Fraction::new(configs.len() as u128, m * n * n).to_string(),
        oracle_window_count: opts.verify.then_some(oracle_window_count),
        oracle_total_count,
        verified: opts.verify.then_some(verified),
    };
    if opts.verify && !verified {
        return Err(Error::Invariant(format!(
            "pipeline and oracle disagree: pipeline {} configs, oracle {} in processed windows",
            report.pipeline_count, oracle_window_count
        )));
    }
    Ok(PipelineOutput {
        report,
        configs,
        timings,
    })
}
