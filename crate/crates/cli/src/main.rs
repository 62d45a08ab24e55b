//! `quad74`: command-line front end.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 invariant violation.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quad74::algebra::{cosets, AbelianMode};
use quad74::hypergraph::build_window_hypergraph;
use quad74::oracle::{oracle_count, oracle_find};
use quad74::pair_sets::{best_coset_pair, generate_pairs, PairSource};
use quad74::pipeline::{choose_subgroup, run_pipeline, PipelineOptions, Scope, SubgroupChoice};
use quad74::triple_systems::{
    greedy_linearize, is_linear, random_construction, span_max, TripleSystem,
};
use quad74::{build_structure, Elem, Error, Fraction, OpTable, PairSet};

#[derive(Parser, Debug)]
#[command(
    name = "quad74",
    version,
    about = "Find and count (7,4)-quadruples in dense subsets of G x G"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "QUAD74_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Cross-check against the brute-force oracle.
    #[arg(long, global = true)]
    verify: bool,
    /// Worker threads (0 = all cores). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
struct Structure {
    /// cyclic:N, dihedral:N, sym:N, product:AxB, table:PATH, latin:PATH, random-latin:N:SEED
    #[arg(long)]
    group: String,
    /// full, empty, random:KAPPA or file:PATH (CSV `i,j`)
    #[arg(long, default_value = "full")]
    pairs: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the hypergraph pipeline and emit configurations plus a report.
    FindConfigs {
        #[command(flatten)]
        structure: Structure,
        /// auto, exact, greedy, or an explicit list `0,2,4`
        #[arg(long, default_value = "auto")]
        subgroup: String,
        /// best, or above:F for every window with density >= F|A|^2
        #[arg(long, default_value = "best")]
        scope: String,
        /// Print per-stage wall-clock times on stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Brute-force count (and optionally list) of configurations.
    Oracle {
        #[command(flatten)]
        structure: Structure,
        /// Also print every configuration.
        #[arg(long)]
        list: bool,
    },
    /// Report an abelian subgroup.
    Abelian {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Dump the window hypergraph as JSON.
    BuildHypergraph {
        #[command(flatten)]
        structure: Structure,
        #[arg(long, default_value = "auto")]
        subgroup: String,
        /// Left coset representative; defaults to the best window.
        #[arg(long, requires = "r")]
        ell: Option<Elem>,
        #[arg(long, requires = "ell")]
        r: Option<Elem>,
    },
    /// Greedily extract a linear subsystem.
    Linearize {
        #[arg(long)]
        file: PathBuf,
    },
    /// Maximum number of triples spanned by any s points.
    SpanCheck {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        s: usize,
    },
    /// Random selection with deletion of dense (k+2)-sets.
    RandomConstruction {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        delta: f64,
        /// Write the surviving system in triple-file format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a pair set as CSV.
    GenPairs {
        #[arg(long)]
        n: usize,
        /// full, empty, random:KAPPA
        #[arg(long, default_value = "random:0.5")]
        pairs: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Greedy,
}

impl From<ModeArg> for AbelianMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => AbelianMode::Exact,
            ModeArg::Greedy => AbelianMode::Greedy,
        }
    }
}

fn parse_pairs(spec: &str, n: usize, seed: u64) -> Result<PairSet, Error> {
    let bad = || {
        Error::Invalid(format!(
            "pairs must be full, empty, random:KAPPA or file:PATH, got `{spec}`"
        ))
    };
    let source = match spec.split_once(':') {
        None if spec == "full" => PairSource::Full,
        None if spec == "empty" => return Ok(PairSet::empty(n)),
        Some(("random", k)) => PairSource::Random {
            kappa: k.trim().parse().map_err(|_| bad())?,
            seed,
        },
        Some(("file", path)) => PairSource::File(PathBuf::from(path)),
        _ => return Err(bad()),
    };
    generate_pairs(n, &source)
}

fn parse_subgroup(spec: &str) -> Result<SubgroupChoice, Error> {
    Ok(match spec {
        "auto" => SubgroupChoice::Auto,
        "exact" => SubgroupChoice::Search(AbelianMode::Exact),
        "greedy" => SubgroupChoice::Search(AbelianMode::Greedy),
        list => SubgroupChoice::Explicit(
            list.split(',')
                .map(|x| x.trim().parse::<Elem>())
                .collect::<Result<_, _>>()
                .map_err(|_| Error::Invalid(format!("bad subgroup `{spec}`")))?,
        ),
    })
}

fn parse_scope(spec: &str) -> Result<Scope, Error> {
    match spec.split_once(':') {
        None if spec == "best" => Ok(Scope::BestWindow),
        Some(("above", f)) => {
            let f: Fraction = f.parse()?;
            if f > Fraction::new(1, 1) {
                return Err(Error::Invalid(format!("scope fraction {f} exceeds 1")));
            }
            Ok(Scope::AllWindowsAbove(f))
        }
        _ => Err(Error::Invalid(format!(
            "scope must be `best` or `above:F`, got `{spec}`"
        ))),
    }
}

fn load(structure: &Structure, seed: u64) -> Result<(OpTable, PairSet), Error> {
    let g = build_structure(&structure.group)?;
    let h = parse_pairs(&structure.pairs, g.order(), seed)?;
    Ok((g, h))
}

fn line(out: &mut String, fields: &[(&str, serde_json::Value)], format: Format) {
    match format {
        Format::Json => {
            let obj: serde_json::Map<String, serde_json::Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            writeln!(out, "{}", serde_json::Value::Object(obj)).unwrap();
        }
        Format::Tsv => {
            for (k, v) in fields {
                let v = match v {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Array(items) => items
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    other => other.to_string(),
                };
                writeln!(out, "{k} {v}").unwrap();
            }
        }
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    let mut out = String::new();
    let fmt = cli.format;
    match &cli.command {
        Command::FindConfigs {
            structure,
            subgroup,
            scope,
            timings,
        } => {
            let (g, h) = load(structure, cli.seed)?;
            let opts = PipelineOptions {
                subgroup: parse_subgroup(subgroup)?,
                scope: parse_scope(scope)?,
                verify: cli.verify,
            };
            let result = run_pipeline(&g, &structure.group, &h, Some(cli.seed), &opts)?;
            for c in &result.configs {
                match fmt {
                    Format::Json => writeln!(out, "{}", c.to_json()).unwrap(),
                    Format::Tsv => writeln!(out, "{}", c.to_tsv()).unwrap(),
                }
            }
            match fmt {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "report": result.report.to_json() })
                )
                .unwrap(),
                Format::Tsv => {
                    let report = result.report.to_json();
                    let obj = report.as_object().unwrap();
                    let fields: Vec<(&str, serde_json::Value)> = obj
                        .iter()
                        .filter(|(k, _)| k.as_str() != "windows")
                        .map(|(k, v)| (k.as_str(), v.clone()))
                        .collect();
                    line(&mut out, &fields, fmt);
                    for w in &result.report.windows {
                        writeln!(
                            out,
                            "window {} {} {} {} {}",
                            w.ell, w.r, w.density, w.relative_density, w.configs
                        )
                        .unwrap();
                    }
                }
            }
            if *timings {
                for (stage, d) in &result.timings {
                    eprintln!("time {stage} {:.3}s", d.as_secs_f64());
                }
            }
        }
        Command::Oracle { structure, list } => {
            let (g, h) = load(structure, cli.seed)?;
            let count = oracle_count(&g, &h);
            if *list || cli.verify {
                let found = oracle_find(&g, &h, None);
                if found.len() as u64 != count {
                    return Err(Error::Invariant(format!(
                        "oracle_count {count} != oracle_find {}",
                        found.len()
                    )));
                }
                for c in &found {
                    c.verify(&g, &h)?;
                }
                if *list {
                    for c in &found {
                        match fmt {
                            Format::Json => writeln!(out, "{}", c.to_json()).unwrap(),
                            Format::Tsv => writeln!(out, "{}", c.to_tsv()).unwrap(),
                        }
                    }
                }
            }
            line(&mut out, &[("count", count.into())], fmt);
        }
        Command::Abelian { group, mode } => {
            let g = build_structure(group)?;
            let a = quad74::algebra::find_abelian_subgroup(&g, (*mode).into())?;
            let top = (0..g.order() as Elem)
                .map(|x| g.element_order(x))
                .max()
                .unwrap_or(1);
            line(
                &mut out,
                &[
                    ("group", group.as_str().into()),
                    ("order", g.order().into()),
                    ("subgroup_order", a.order().into()),
                    ("max_element_order", top.into()),
                    ("elements", a.elements().into()),
                ],
                fmt,
            );
        }
        Command::BuildHypergraph {
            structure,
            subgroup,
            ell,
            r,
        } => {
            let (g, h) = load(structure, cli.seed)?;
            let a = choose_subgroup(&g, &parse_subgroup(subgroup)?)?;
            let (ell, r) = match (ell, r) {
                (Some(ell), Some(r)) => {
                    if *ell as usize >= g.order() || *r as usize >= g.order() {
                        return Err(Error::Invalid("window representative out of range".into()));
                    }
                    (*ell, *r)
                }
                _ => {
                    let best = best_coset_pair(&h, &g, &a);
                    (best.ell, best.r)
                }
            };
            let hg = build_window_hypergraph(&g, &a, &h, &cosets(&g, &a, ell, r))?;
            writeln!(out, "{}", hg.to_json()).unwrap();
        }
        Command::Linearize { file } => {
            let t = TripleSystem::read(file)?;
            let lin = greedy_linearize(&t);
            if !is_linear(&lin) {
                return Err(Error::Invariant("greedy output is not linear".into()));
            }
            match fmt {
                Format::Json => {
                    let triples: Vec<[u32; 3]> = lin.triples().to_vec();
                    writeln!(
                        out,
                        "{}",
                        serde_json::json!({ "points": lin.points(), "input": t.len(), "kept": lin.len(), "triples": triples })
                    )
                    .unwrap();
                }
                Format::Tsv => {
                    out.push_str(&lin.to_text());
                    eprintln!("kept {} of {}", lin.len(), t.len());
                }
            }
        }
        Command::SpanCheck { file, s } => {
            let t = TripleSystem::read(file)?;
            let span = span_max(&t, *s)?;
            line(
                &mut out,
                &[
                    ("max", span.max_triples.into()),
                    ("witness", span.witness.into()),
                ],
                fmt,
            );
        }
        Command::RandomConstruction {
            n,
            k,
            delta,
            out: path,
        } => {
            let rc = random_construction(*n, *k, *delta, cli.seed)?;
            let lin = greedy_linearize(&rc.surviving);
            if let Some(path) = path {
                std::fs::write(path, rc.surviving.to_text()).map_err(|e| Error::Io {
                    path: path.clone(),
                    source: e,
                })?;
            }
            let survival = if rc.selected.is_empty() {
                "0/1".to_string()
            } else {
                Fraction::new(rc.surviving.len() as u128, rc.selected.len() as u128).to_string()
            };
            line(
                &mut out,
                &[
                    ("n", (*n).into()),
                    ("k", (*k).into()),
                    ("seed", cli.seed.into()),
                    ("selected", rc.selected.len().into()),
                    ("surviving", rc.surviving.len().into()),
                    ("removed", rc.removed_count.into()),
                    ("survival_fraction", survival.into()),
                    ("linearized", lin.len().into()),
                    ("verified", rc.verified.into()),
                ],
                fmt,
            );
        }
        Command::GenPairs { n, pairs } => {
            if pairs.starts_with("file:") {
                return Err(Error::Invalid(
                    "gen-pairs generates; use full, empty or random:KAPPA".into(),
                ));
            }
            let h = parse_pairs(pairs, *n, cli.seed)?;
            out.push_str(&h.to_csv());
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 3 for a broken mathematical invariant (always a bug), 2 for anything the
/// user can fix.
fn exit_code(e: &Error) -> u8 {
    if e.is_invariant() {
        3
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Invariant("x".into())), 3);
        assert_eq!(exit_code(&Error::Invalid("x".into())), 2);
        assert_eq!(exit_code(&Error::NotLatin("x".into())), 2);
    }
}
