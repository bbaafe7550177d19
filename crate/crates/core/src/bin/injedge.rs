//! `injedge`: injective edge-coloring tools for sparse graphs.
//!
//! Exit status is 0 on success, 1 for an invalid coloring, a failed batch,
//! or an audit bug flag, and 2 for usage, input, or eligibility errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use rayon::prelude::*;

use injective_edge::conflict::{build_conflict_graph, validate, Color};
use injective_edge::exact::{chi_injective_exact, DEFAULT_BUDGET};
use injective_edge::generate::{gen_gadget, gen_random_eligible};
use injective_edge::graph::{derive_core, Graph};
use injective_edge::io::{emit_coloring, emit_edge_list, parse_coloring, parse_edge_list};
use injective_edge::reduce::{audit_charges, color_constructive, ConfigKind, EngineError};
use injective_edge::report::{BatchFailure, BatchReport, RunReport, Verbosity};

#[derive(Parser)]
#[command(name = "injedge", version, about = "Injective edge-coloring of graphs with maximum degree 4 and mad below 8/3")]
struct Cli {
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum average degree, exactly.
    Mad { file: PathBuf },
    /// Check maximum degree at most 4 and mad below 8/3.
    Eligible { file: PathBuf },
    /// Injective chromatic index by branch and bound.
    Exact {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Seven-coloring by reducible configurations.
    Color {
        file: PathBuf,
        /// Also write the coloring to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring file against a graph.
    Validate {
        file: PathBuf,
        coloring: PathBuf,
        /// Palette size; defaults to the largest color in the file.
        #[arg(long)]
        colors: Option<Color>,
    },
    /// Discharge the core graph and explain every deficient vertex.
    Audit { file: PathBuf },
    /// Print a generated graph as an edge list.
    #[command(group(ArgGroup::new("source").required(true).args(["random", "gadget"])))]
    Gen {
        /// Random eligible graph: vertex count and seed.
        #[arg(long, num_args = 2, value_names = ["N", "SEED"])]
        random: Option<Vec<u64>>,
        /// Gadget for a configuration kind, e.g. double-three-two.
        #[arg(long)]
        gadget: Option<ConfigKind>,
    },
    /// Color many random eligible graphs and check every result.
    Batch {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(String, Graph), Failure> {
    let text = read(path)?;
    let g = parse_edge_list(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    Ok((text, g))
}

struct Output {
    json: bool,
    verbosity: Verbosity,
}

impl Output {
    fn report(&self, r: &RunReport) {
        if self.json {
            println!("{}", r.json());
        } else {
            print!("{}", r.human(self.verbosity));
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let out = Output {
        json: cli.json,
        verbosity: Verbosity::from_env(),
    };
    let start = Instant::now();
    match cli.command {
        Command::Mad { file } => {
            let (text, g) = load(&file)?;
            out.report(&RunReport::new("mad", &text, &g).finish(start.elapsed()));
            Ok(0)
        }
        Command::Eligible { file } => {
            let (text, g) = load(&file)?;
            out.report(&RunReport::new("eligible", &text, &g).finish(start.elapsed()));
            Ok(0)
        }
        Command::Exact { file, budget } => {
            let (text, g) = load(&file)?;
            let result = chi_injective_exact(&g, Some(budget));
            out.report(&RunReport::new("exact", &text, &g).with_exact(&result).finish(start.elapsed()));
            Ok(0)
        }
        Command::Color { file, output } => {
            let (text, g) = load(&file)?;
            let colored = color_constructive(&g).map_err(|e| match e {
                EngineError::Ineligible(el) => fail(2, el.explain()),
                other => fail(1, other.to_string()),
            })?;
            let verdict = validate(&build_conflict_graph(&g), &colored.coloring);
            if let Some(path) = output {
                fs::write(&path, emit_coloring(&g, &colored.coloring))
                    .map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
            }
            let report = RunReport::new("color", &text, &g)
                .with_constructive(&g, &colored)
                .with_validation(&g, &colored.coloring, &verdict)
                .finish(start.elapsed());
            out.report(&report);
            Ok(if verdict.is_valid() { 0 } else { 1 })
        }
        Command::Validate { file, coloring, colors } => {
            let (text, g) = load(&file)?;
            let col = parse_coloring(&g, &read(&coloring)?, colors)
                .map_err(|e| fail(2, format!("{}: {e}", coloring.display())))?;
            let verdict = validate(&build_conflict_graph(&g), &col);
            out.report(
                &RunReport::new("validate", &text, &g)
                    .with_validation(&g, &col, &verdict)
                    .finish(start.elapsed()),
            );
            Ok(if verdict.is_valid() { 0 } else { 1 })
        }
        Command::Audit { file } => {
            let (text, g) = load(&file)?;
            let audit = audit_charges(&derive_core(&g)).map_err(|e| fail(2, e.to_string()))?;
            out.report(&RunReport::new("audit", &text, &g).with_audit(&audit).finish(start.elapsed()));
            Ok(if audit.has_bug_flag() { 1 } else { 0 })
        }
        Command::Gen { random, gadget } => {
            let text = match (random, gadget) {
                (Some(args), _) => {
                    let (n, seed) = (args[0] as usize, args[1]);
                    format!("c random eligible n={n} seed={seed}\n{}", emit_edge_list(&gen_random_eligible(n, seed)))
                }
                (None, Some(kind)) => {
                    let gadget = gen_gadget(kind);
                    let mut text = format!("c gadget {kind}\n");
                    for (role, v) in &gadget.roles {
                        text.push_str(&format!("c role {role} {}\n", v.0 + 1));
                    }
                    text + &emit_edge_list(&gadget.graph)
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            print!("{text}");
            Ok(0)
        }
        Command::Batch { count, size, seed } => {
            let results: Vec<_> = (0..count as u64)
                .into_par_iter()
                .map(|i| {
                    let s = seed.wrapping_add(i);
                    let g = gen_random_eligible(size, s);
                    let outcome = color_constructive(&g).map_err(|e| e.to_string()).and_then(|c| {
                        let verdict = validate(&build_conflict_graph(&g), &c.coloring);
                        if !verdict.is_valid() {
                            Err("invalid coloring".to_string())
                        } else if c.colors_used() > 7 {
                            Err(format!("{} colors", c.colors_used()))
                        } else {
                            Ok((c.colors_used(), c.fallbacks().count()))
                        }
                    });
                    (s, outcome)
                })
                .collect();
            let mut report = BatchReport {
                count,
                size,
                seed,
                ..Default::default()
            };
            for (s, r) in results {
                match r {
                    Ok((colors, fallbacks)) => {
                        report.succeeded += 1;
                        report.max_colors = report.max_colors.max(colors);
                        report.fallbacks += fallbacks;
                    }
                    Err(reason) => report.failures.push(BatchFailure { seed: s, reason }),
                }
            }
            report.elapsed_us = start.elapsed().as_micros() as u64;
            if out.json {
                println!("{}", report.json());
            } else {
                print!("{}", report.human(out.verbosity));
            }
            Ok(if report.failures.is_empty() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("injedge: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
