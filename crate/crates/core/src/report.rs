//! Run reports in human-readable and JSON form.
//!
//! Rationals are emitted as `"p/q"` strings. Decimal renderings are
//! annotations only.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::conflict::{Color, Coloring, ValidationReport};
use crate::exact::{BudgetExhausted, ExactResult};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::mad::{is_eligible, Density};
use crate::reduce::constructive::ConstructiveColoring;
use crate::reduce::discharge::{AuditReport, Charge};

/// Report detail level, read from `INJEDGE_VERBOSITY`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Verbosity {
    #[default]
    Terse,
    Verbose,
}

impl Verbosity {
    pub const ENV: &'static str = "INJEDGE_VERBOSITY";

    pub fn from_env() -> Self {
        match std::env::var(Self::ENV).as_deref() {
            Ok("verbose") | Ok("2") => Verbosity::Verbose,
            _ => Verbosity::Terse,
        }
    }
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// 1-based endpoints, as in the file formats.
fn ends(g: &Graph, e: EdgeId) -> [usize; 2] {
    let (u, v) = g.endpoints(e).expect("edge of the reported graph");
    [u.0 + 1, v.0 + 1]
}

fn one_based(vs: &[VertexId]) -> Vec<usize> {
    vs.iter().map(|v| v.0 + 1).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactSummary {
    /// Absent when the budget ran out before the bounds met.
    pub chi: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructiveSummary {
    pub colors_used: usize,
    pub steps: usize,
    pub fallbacks: usize,
    /// `[u, v, color]` per edge.
    pub coloring: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationSummary {
    pub valid: bool,
    pub palette: Color,
    pub colors_used: usize,
    pub uncolored: Vec<[usize; 2]>,
    pub out_of_range: Vec<[usize; 3]>,
    /// `[[u, v], [x, y], color]` per clashing pair.
    pub conflicts: Vec<([usize; 2], [usize; 2], Color)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChargeSummary {
    pub min_final: Option<Charge>,
    pub deficient: usize,
    pub unexplained: Vec<usize>,
    pub conserved: bool,
    pub detector_gap: bool,
    /// First configuration of the input, in priority order.
    pub configuration: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub input_digest: String,
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub mad: Density,
    pub mad_decimal: String,
    pub mad_witness: Vec<usize>,
    pub eligible: bool,
    pub eligibility: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constructive: Option<ConstructiveSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charges: Option<ChargeSummary>,
    pub elapsed_us: u64,
}

impl RunReport {
    /// The fields every command reports: digest, size, degree, and mad.
    pub fn new(command: &'static str, text: &str, g: &Graph) -> Self {
        let el = is_eligible(g);
        RunReport {
            command,
            input_digest: digest(text),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            max_degree: el.max_degree,
            mad_decimal: el.mad.to_decimal(6),
            mad_witness: one_based(&el.mad_witness),
            eligibility: el.explain(),
            mad: el.mad,
            eligible: el.eligible,
            exact: None,
            constructive: None,
            validation: None,
            charges: None,
            elapsed_us: 0,
        }
    }

    pub fn finish(mut self, elapsed: Duration) -> Self {
        self.elapsed_us = elapsed.as_micros() as u64;
        self
    }

    pub fn with_exact(mut self, result: &Result<ExactResult, BudgetExhausted>) -> Self {
        self.exact = Some(match result {
            Ok(r) => ExactSummary {
                chi: Some(r.chi),
                lower: r.chi,
                upper: r.chi,
                nodes: r.stats.nodes,
            },
            Err(b) => ExactSummary {
                chi: None,
                lower: b.lower,
                upper: b.upper,
                nodes: b.stats.nodes,
            },
        });
        self
    }

    pub fn with_constructive(mut self, g: &Graph, out: &ConstructiveColoring) -> Self {
        self.constructive = Some(ConstructiveSummary {
            colors_used: out.colors_used(),
            steps: out.steps.len(),
            fallbacks: out.fallbacks().count(),
            coloring: coloring_rows(g, &out.coloring),
        });
        self
    }

    pub fn with_validation(mut self, g: &Graph, col: &Coloring, report: &ValidationReport) -> Self {
        self.validation = Some(ValidationSummary {
            valid: report.is_valid(),
            palette: col.k(),
            colors_used: col.colors_used(),
            uncolored: report.uncolored.iter().map(|&e| ends(g, e)).collect(),
            out_of_range: report
                .out_of_range
                .iter()
                .map(|&(e, c)| {
                    let [u, v] = ends(g, e);
                    [u, v, c as usize]
                })
                .collect(),
            conflicts: report
                .conflicts
                .iter()
                .map(|&(e, f, c)| (ends(g, e), ends(g, f), c))
                .collect(),
        });
        self
    }

    pub fn with_audit(mut self, audit: &AuditReport) -> Self {
        self.charges = Some(ChargeSummary {
            min_final: audit.charges.min_final(),
            deficient: audit.charges.deficient.len(),
            unexplained: one_based(&audit.unexplained),
            conserved: audit.charges.is_conserved(),
            detector_gap: audit.detector_gap,
            configuration: audit.reducible.as_ref().map(|c| c.to_string()),
        });
        self
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `key: value` lines. Terse output leaves out per-edge listings.
    pub fn human(&self, verbosity: Verbosity) -> String {
        let verbose = verbosity == Verbosity::Verbose;
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k}: {v}").unwrap();
        line("input", format!("sha256 {}", self.input_digest));
        line("graph", format!("{} vertices, {} edges, max degree {}", self.vertices, self.edges, self.max_degree));
        line("mad", format!("{} ({})", self.mad, self.mad_decimal));
        if verbose {
            line("mad witness", join(&self.mad_witness));
        }
        line("eligibility", self.eligibility.clone());
        if let Some(x) = &self.exact {
            match x.chi {
                Some(chi) => line("injective chromatic index", chi.to_string()),
                None => line(
                    "injective chromatic index",
                    format!("in [{}, {}] (search budget exhausted)", x.lower, x.upper),
                ),
            }
            line("search nodes", x.nodes.to_string());
        }
        if let Some(c) = &self.constructive {
            line("constructive colors", c.colors_used.to_string());
            line("reduction steps", format!("{} ({} distance-two fallbacks)", c.steps, c.fallbacks));
            if verbose {
                for [u, v, col] in &c.coloring {
                    line("edge", format!("{u} {v} color {col}"));
                }
            }
        }
        if let Some(v) = &self.validation {
            line(
                "validation",
                format!(
                    "{} ({} colors used, palette 1..{})",
                    if v.valid { "valid" } else { "invalid" },
                    v.colors_used,
                    v.palette
                ),
            );
            if !v.uncolored.is_empty() {
                line("uncolored edges", v.uncolored.len().to_string());
            }
            if !v.out_of_range.is_empty() {
                line("colors out of range", v.out_of_range.len().to_string());
            }
            if !v.conflicts.is_empty() {
                line("conflicting pairs", v.conflicts.len().to_string());
            }
            if verbose {
                for ([a, b], [c, d], col) in &v.conflicts {
                    line("conflict", format!("{a} {b} and {c} {d} share color {col}"));
                }
            }
        }
        if let Some(c) = &self.charges {
            line(
                "min final charge",
                c.min_final.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
            );
            line(
                "deficient vertices",
                format!("{} ({} unexplained)", c.deficient, c.unexplained.len()),
            );
            if !c.unexplained.is_empty() {
                line("unexplained", join(&c.unexplained));
            }
            if !c.conserved {
                line("conservation", "violated".into());
            }
            if c.detector_gap {
                line("detector gap", "eligible graph with no configuration".into());
            }
            if let Some(cfg) = &c.configuration {
                line("configuration", cfg.clone());
            }
        }
        line("elapsed", format!("{} us", self.elapsed_us));
        out
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn coloring_rows(g: &Graph, col: &Coloring) -> Vec<[usize; 3]> {
    g.edges()
        .filter_map(|(e, u, v)| col.get(e).map(|c| [u.0 + 1, v.0 + 1, c as usize]))
        .collect()
}

/// Outcome of a `batch` run of the theorem harness.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BatchReport {
    pub count: usize,
    pub size: usize,
    pub seed: u64,
    pub succeeded: usize,
    pub failures: Vec<BatchFailure>,
    pub max_colors: usize,
    pub fallbacks: usize,
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchFailure {
    pub seed: u64,
    pub reason: String,
}

impl BatchReport {
    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn human(&self, verbosity: Verbosity) -> String {
        let mut out = format!(
            "batch: {} graphs of {} vertices from seed {}\nsucceeded: {}\nfailures: {}\nmax colors: {}\ndistance-two fallbacks: {}\nelapsed: {} us\n",
            self.count,
            self.size,
            self.seed,
            self.succeeded,
            self.failures.len(),
            self.max_colors,
            self.fallbacks,
            self.elapsed_us
        );
        let shown = if verbosity == Verbosity::Verbose { self.failures.len() } else { 5 };
        for f in self.failures.iter().take(shown) {
            writeln!(out, "failure: seed {}: {}", f.seed, f.reason).unwrap();
        }
        out
    }
}
