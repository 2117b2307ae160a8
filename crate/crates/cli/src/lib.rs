//! `pv`: command-line front end for pv-core.
//!
//! Output is deterministic: the only randomness is the seeded exactness
//! witness, and JSON is written with a fixed field order.

use std::io::{IsTerminal, Read};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use pv_core::abgroup::GradedGroup;
use pv_core::cubical::oracle_compare;
use pv_core::exterior::Covector;
use pv_core::koszul::{build_symbolic, datum_cohomology, generic_rank_exactness, ExactnessConfig};
use pv_core::liegroups::{homogeneous_ktheory, homogeneous_tower, weyl_order, Series, SeriesSpec};
use pv_core::pvtower::{pv_rank1, pv_tower, tower_shape, TowerReport};

pub mod report;
pub mod schema;
mod table;

use report::{ExactnessOut, GroupsOut, KoszulOut, OracleOut, Rank1Out, ShapeOut, TowerOut};
use table::Table;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_AMBIGUOUS: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent input.
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] pv_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "pv",
    version,
    about = "K-theory of crossed products by Z^n via Koszul complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for the random substitution points of the exactness witness.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random substitution points.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Exit with status 3 when an extension could not be resolved.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Crossed product by one automorphism (six-term sequence).
    Rank1 {
        /// Datum file; standard input when absent.
        input: Option<PathBuf>,
    },
    /// Every level of the tower and the crossed product by Z^n.
    Tower { input: Option<PathBuf> },
    /// K-theory of G_n/G_k for a classical series.
    Homog {
        #[arg(long, value_parser = parse_series)]
        series: Series,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Emit the full tower instead of the final group.
        #[arg(long)]
        tower: bool,
    },
    /// Koszul cohomology of a datum, or with --n the exactness witness for
    /// (1 - t1, ..., 1 - tn).
    Koszul {
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input", value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
    },
    /// Compare cubical cochains with interior multiplication.
    Oracle {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Objects and arrows of the tower diagram.
    Shape {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Weyl group order; defaults to 1 unless --series is given.
        #[arg(long, conflicts_with = "series", value_parser = clap::value_parser!(u64).range(1..))]
        w: Option<u64>,
        #[arg(long, value_parser = parse_series)]
        series: Option<Series>,
        /// Dual tower (trivial-action coefficients).
        #[arg(long)]
        dual: bool,
    },
}

fn parse_series(s: &str) -> Result<Series, String> {
    s.parse().map_err(|e: pv_core::Error| e.to_string())
}

/// A finished command: rendered output plus whether any extension was left
/// unresolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub ambiguous: bool,
}

impl Outcome {
    pub fn exit_code(&self, strict: bool) -> i32 {
        if strict && self.ambiguous {
            EXIT_AMBIGUOUS
        } else {
            0
        }
    }
}

/// `PV_COLOR=never|auto` (default auto): bold table headers on a terminal.
fn use_color() -> Result<bool, CliError> {
    match std::env::var("PV_COLOR").as_deref() {
        Err(_) | Ok("auto") => Ok(std::io::stdout().is_terminal()),
        Ok("never") => Ok(false),
        Ok(other) => Err(CliError::Input(format!(
            "PV_COLOR: expected never or auto, got {other:?}"
        ))),
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            Ok(s)
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output records serialize")
}

fn spec(series: Series, rank: usize, flag: &str) -> Result<SeriesSpec, CliError> {
    SeriesSpec::new(series, rank).map_err(|e| CliError::Input(format!("{flag}: {e}")))
}

fn tower_text(t: &TowerReport, color: bool) -> String {
    let symbolic = t.levels.iter().any(|l| l.symbolic.is_some());
    let mut header = vec!["level", "even", "odd"];
    if symbolic {
        header.push("plus kernel");
    }
    let mut table = Table::new(header);
    for l in &t.levels {
        let mut row = vec![l.level.to_string(), l.group.even.to_string(), l.group.odd.to_string()];
        if symbolic {
            row.push(l.symbolic.as_ref().map(ToString::to_string).unwrap_or_default());
        }
        table.row(row);
    }
    table.row([
        "final".to_string(),
        t.final_group.even.to_string(),
        t.final_group.odd.to_string(),
    ]);
    let mut out = table.render(color);
    for f in t.flags() {
        out.push_str(&format!("ambiguous: {f}\n"));
    }
    out
}

fn groups_text(g: &GradedGroup, color: bool) -> String {
    let mut t = Table::new(["degree", "group"]);
    t.row(["even", &g.even.to_string()]).row(["odd", &g.odd.to_string()]);
    t.render(color)
}

/// Runs one command against already-read input.
pub fn execute(cli: &Cli, input: Option<&str>) -> Result<Outcome, CliError> {
    let text = cli.format == Format::Text;
    let color = if text { use_color()? } else { false };
    let config = ExactnessConfig {
        trials: cli.trials as usize,
        seed: cli.seed,
        ..ExactnessConfig::default()
    };
    let datum = || -> Result<_, CliError> {
        schema::parse_input(input.ok_or_else(|| CliError::Input("missing input".into()))?)
    };
    let (output, ambiguous) = match &cli.command {
        Command::Rank1 { .. } => {
            let d = datum()?;
            let (g, flag) = pv_rank1(&d)?;
            let out = if text {
                let mut t = Table::new(["group", "value"]);
                t.row(["K0", &g.even.to_string()]).row(["K1", &g.odd.to_string()]);
                let mut s = t.render(color);
                if let Some(f) = &flag {
                    s.push_str(&format!("ambiguous: {f}\n"));
                }
                s
            } else {
                json(&Rank1Out {
                    k0: g.even.to_string(),
                    k1: g.odd.to_string(),
                    ambiguous: flag.is_some(),
                })
            };
            (out, flag.is_some())
        }
        Command::Tower { .. } => {
            let t = pv_tower(&datum()?)?;
            let out = if text {
                tower_text(&t, color)
            } else {
                json(&TowerOut::from(&t))
            };
            (out, t.is_ambiguous())
        }
        Command::Homog { series, n, k, tower } => {
            let big = spec(*series, *n, "--n")?;
            let small = spec(*series, *k, "--k")?;
            if *tower {
                let t = homogeneous_tower(&big, &small, &config)?;
                let out = if text {
                    tower_text(&t, color)
                } else {
                    json(&TowerOut::from(&t))
                };
                (out, t.is_ambiguous())
            } else {
                let h = homogeneous_ktheory(&big, &small, &config)?;
                let out = if text {
                    let mut s = groups_text(&h.group, color);
                    let ranks: Vec<String> = h.spot_ranks.iter().map(ToString::to_string).collect();
                    s.push_str(&format!("cohomology ranks by spot: {}\n", ranks.join(" ")));
                    s
                } else {
                    json(&GroupsOut::from(&h.group))
                };
                (out, false)
            }
        }
        Command::Koszul { n: Some(n), .. } => {
            let n = *n as usize;
            let c = build_symbolic(&Covector::augmentation_sequence(n))?;
            let r = generic_rank_exactness(&c, &config)?;
            let report = ExactnessOut::new(n, cli.seed, &r, c.augmentation_descends());
            let out = if text {
                let mut t = Table::new(["spot", "rank", "rank out", "rank in", "consistent"]);
                for s in &report.spots {
                    t.row([
                        s.spot.to_string(),
                        s.module_rank.to_string(),
                        s.rank_out.to_string(),
                        s.rank_in.to_string(),
                        s.consistent.to_string(),
                    ]);
                }
                let mut s = t.render(color);
                s.push_str(&format!("augmentation onto Z: {}\n", report.augmentation_surjects));
                s
            } else {
                json(&report)
            };
            (out, false)
        }
        Command::Koszul { n: None, .. } => {
            let h = datum_cohomology(&datum()?)?;
            let out = if text {
                let mut t = Table::new(["spot", "even", "odd"]);
                for (j, g) in h.iter().enumerate() {
                    t.row([j.to_string(), g.even.to_string(), g.odd.to_string()]);
                }
                t.render(color)
            } else {
                json(&KoszulOut::new(&h))
            };
            (out, false)
        }
        Command::Oracle { n } => {
            let matched = oracle_compare(*n as usize);
            let out = if text {
                format!("match: {matched}\n")
            } else {
                json(&OracleOut { matched })
            };
            (out, false)
        }
        Command::Shape { n, w, series, dual } => {
            let n = *n as usize;
            let w = match (w, series) {
                (Some(w), _) => *w as usize,
                (None, Some(s)) => {
                    let order = weyl_order(&spec(*s, n, "--n")?);
                    usize::try_from(order).map_err(|_| CliError::Input(format!("--n: Weyl order {order} too large")))?
                }
                (None, None) => 1,
            };
            let shape = tower_shape(n, w, *dual)?;
            let out = if text {
                let mut t = Table::new(["#", "object", "suspension", "multiplicity"]);
                for (i, o) in shape.objects.iter().enumerate() {
                    t.row([
                        i.to_string(),
                        o.label.clone(),
                        o.suspension.to_string(),
                        o.multiplicity.to_string(),
                    ]);
                }
                let mut s = t.render(color);
                for a in &shape.arrows {
                    let mark = if a.degree_one { " (degree one)" } else { "" };
                    s.push_str(&format!("{} -> {}{mark}\n", a.from, a.to));
                }
                s
            } else {
                json(&ShapeOut::from(&shape))
            };
            (out, false)
        }
    };
    Ok(Outcome { output, ambiguous })
}

/// Reads input if the command needs it, runs, and returns the rendered
/// output.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let input = match &cli.command {
        Command::Rank1 { input } | Command::Tower { input } | Command::Koszul { input, n: None } => {
            Some(read_input(input)?)
        }
        _ => None,
    };
    execute(cli, input.as_deref())
}
