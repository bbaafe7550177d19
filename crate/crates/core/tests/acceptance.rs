//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use injective_edge::conflict::{build_conflict_graph, sees, validate};
use injective_edge::exact::chi_injective_exact;
use injective_edge::generate::{gen_gadget, gen_random_bounded, gen_random_eligible};
use injective_edge::graph::{derive_core, Graph, VertexId};
use injective_edge::mad::{mad_bruteforce, mad_exact};
use injective_edge::reduce::discharge::{apply_discharging, audit_charges, Charge};
use injective_edge::reduce::extend::FALLBACK_LEVEL;
use injective_edge::reduce::{color_constructive, reduce_once, ConfigKind, Scan};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn within(elapsed: Duration, limit: Duration) -> String {
    format!("{:.1}s of {}s", elapsed.as_secs_f64(), limit.as_secs())
}

/// Graphs from criteria 1 to 3, kept for the conservation check.
#[derive(Default)]
struct Corpus {
    graphs: Vec<Graph>,
}

fn theorem_harness(corpus: &mut Corpus) -> Verdict {
    let limit = Duration::from_secs(300);
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut max_colors = 0;
    let mut fallbacks = 0;
    for i in 0..500u64 {
        let n = 10 + (i as usize % 51);
        let g = gen_random_eligible(n, 1_000 + i);
        match color_constructive(&g) {
            Ok(out) => {
                let report = validate(&build_conflict_graph(&g), &out.coloring);
                max_colors = max_colors.max(out.colors_used());
                fallbacks += out.fallbacks().count();
                if !report.is_valid() || out.colors_used() > 7 {
                    failures.push(format!("n={n} seed={}: invalid or too many colors", 1_000 + i));
                }
            }
            Err(e) => failures.push(format!("n={n} seed={}: {e}", 1_000 + i)),
        }
        corpus.graphs.push(g);
    }
    let elapsed = start.elapsed();
    verdict(
        failures.is_empty() && elapsed <= limit,
        format!(
            "500 graphs, 10<=n<=60: {} failures, max colors {max_colors}, {fallbacks} distance-two fallbacks, {}{}",
            failures.len(),
            within(elapsed, limit),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

fn exact_oracle(corpus: &mut Corpus) -> Verdict {
    let limit = Duration::from_secs(120);
    let start = Instant::now();
    let mut discrepancies = Vec::new();
    let mut enumerated = 0;
    let mut i = 0u64;
    let mut graphs = 0;
    while graphs < 100 {
        let n = 5 + (i as usize % 7);
        let g = gen_random_eligible(n, 2_000 + i);
        i += 1;
        if g.edge_count() > 14 {
            continue;
        }
        graphs += 1;
        let exact = chi_injective_exact(&g, None).map(|r| r.chi);
        let constructive = color_constructive(&g).map(|c| c.colors_used());
        match (exact, constructive) {
            (Ok(chi), Ok(used)) => {
                if !(chi <= used && used <= 7) {
                    discrepancies.push(format!("seed {}: chi {chi}, constructive {used}", 2_000 + i - 1));
                }
                if g.edge_count() <= 8 {
                    enumerated += 1;
                    let brute = common::chi_by_enumeration(&g);
                    if brute != chi {
                        discrepancies.push(format!("seed {}: chi {chi}, enumeration {brute}", 2_000 + i - 1));
                    }
                }
            }
            (a, b) => discrepancies.push(format!("seed {}: {:?} / {:?}", 2_000 + i - 1, a.err().map(|e| e.to_string()), b.err().map(|e| e.to_string()))),
        }
        corpus.graphs.push(g);
    }
    let elapsed = start.elapsed();
    verdict(
        discrepancies.is_empty() && elapsed <= limit,
        format!(
            "100 graphs with <=14 edges ({enumerated} also enumerated): {} discrepancies, {}{}",
            discrepancies.len(),
            within(elapsed, limit),
            discrepancies.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

fn mad_equivalence(corpus: &mut Corpus) -> Verdict {
    let limit = Duration::from_secs(120);
    let start = Instant::now();
    let mut discrepancies = 0;
    for i in 0..200u64 {
        let n = 1 + (i as usize % 14);
        let m = (i as usize * 7) % (3 * n + 1);
        let g = gen_random_bounded(n, m, 6, 3_000 + i);
        let exact = mad_exact(&g).unwrap();
        let brute = mad_bruteforce(&g).unwrap();
        let witness = common::subset_density(&g, &exact.witness);
        if exact.value != brute || witness != (exact.value.numer(), exact.value.denom()) {
            discrepancies += 1;
        }
        corpus.graphs.push(g);
    }
    let elapsed = start.elapsed();
    verdict(
        discrepancies == 0 && elapsed <= limit,
        format!("200 graphs, n<=14, degree<=6: {discrepancies} discrepancies, {}", within(elapsed, limit)),
    )
}

/// Vertex with final charge exactly 8/3 in each case of the analysis.
fn case_gadgets() -> Vec<(&'static str, Graph, VertexId)> {
    let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let with = |n: usize, extra: &[(usize, usize)]| {
        let pairs: Vec<_> = k4.iter().chain(extra).copied().collect();
        Graph::from_edges(n, &pairs).unwrap()
    };
    vec![
        // 2_1-vertex 4 between a 4-vertex and a 2-vertex.
        ("2_1-vertex", with(6, &[(0, 4), (4, 5), (5, 1)]), VertexId(4)),
        // 3_2-vertex 4 with 2_0-neighbors 5, 6 and a non-poor neighbor.
        ("3_2-vertex", with(7, &[(4, 0), (4, 5), (5, 1), (4, 6), (6, 2)]), VertexId(4)),
        // 4-vertex 4 with two 2_1-neighbors and two 4-neighbors.
        (
            "4-vertex",
            with(9, &[(4, 0), (4, 1), (4, 5), (5, 6), (6, 2), (4, 7), (7, 8), (8, 3)]),
            VertexId(4),
        ),
    ]
}

fn conservation(corpus: &Corpus) -> Verdict {
    let broken = corpus
        .graphs
        .iter()
        .filter(|g| !apply_discharging(&derive_core(g)).is_conserved())
        .count();
    let mut cases = Vec::new();
    let mut case_ok = true;
    for (name, g, v) in case_gadgets() {
        let report = apply_discharging(&derive_core(&g));
        let got = report.final_of(v);
        case_ok &= got == Some(Charge::eight_thirds());
        cases.push(format!("{name} {}", got.map(|c| c.to_string()).unwrap_or("-".into())));
    }
    verdict(
        broken == 0 && case_ok,
        format!(
            "{} graphs: {broken} not conserved; cases: {}",
            corpus.graphs.len(),
            cases.join(", ")
        ),
    )
}

fn case_soundness() -> Verdict {
    let mut unexplained = 0;
    let mut counterexamples = 0;
    let mut deficient = 0;
    let mut free = 0;
    for i in 0..1000u64 {
        let n = 6 + (i as usize % 35);
        let m = n + (i as usize * 13) % (n + 1);
        let g = gen_random_bounded(n, m, 4, 5_000 + i);
        let h = derive_core(&g);
        let audit = audit_charges(&h).expect("degree at most 4");
        unexplained += audit.unexplained.len();
        deficient += audit.charges.deficient.len();
        let core = h.graph();
        let configuration_free = Scan::with_core(core, core.clone()).first().is_none();
        if configuration_free {
            free += 1;
            if !audit.charges.deficient.is_empty() {
                counterexamples += 1;
            }
        }
    }
    verdict(
        unexplained == 0 && counterexamples == 0,
        format!(
            "1000 graphs, degree<=4: {deficient} deficient vertices, {unexplained} unexplained; {free} configuration-free cores, {counterexamples} with a deficiency"
        ),
    )
}

fn definition_equivalence() -> Verdict {
    let mut pairs = 0;
    let mut disagreements = 0;
    for i in 0..200u64 {
        let n = 2 + (i as usize % 29);
        let m = (i as usize * 5) % (2 * n + 1);
        let g = gen_random_bounded(n, m, 6, 6_000 + i);
        let edges: Vec<_> = g.edge_ids().collect();
        for &e in &edges {
            for &f in &edges {
                if e == f {
                    continue;
                }
                pairs += 1;
                if sees(&g, e, f).unwrap() != common::sees_oracle(&g, e, f) {
                    disagreements += 1;
                }
            }
        }
    }
    verdict(
        disagreements == 0,
        format!("200 graphs, n<=30: {pairs} ordered pairs, {disagreements} disagreements"),
    )
}

fn known_values() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, expected) in [("C3", 3), ("P4", 2), ("K1,3", 1), ("K4", 6)] {
        let g = common::named(name);
        let brute = common::chi_by_enumeration(&g);
        let solver = chi_injective_exact(&g, None).map(|r| r.chi).ok();
        ok &= brute == expected && solver == Some(expected);
        lines.push(format!("{name}={}", solver.map(|c| c.to_string()).unwrap_or("?".into())));
    }
    verdict(ok, lines.join(" "))
}

fn gadget_extension() -> Verdict {
    let mut problems = Vec::new();
    let mut levels = Vec::new();
    for kind in ConfigKind::ALL {
        let gadget = gen_gadget(kind);
        let g = &gadget.graph;
        let Some(config) = Scan::new(g).detect_at(kind, gadget.witness()) else {
            problems.push(format!("{kind}: not detected"));
            continue;
        };
        match reduce_once(g, &config) {
            Ok(ext) => {
                levels.push(format!("{kind}:{}", ext.level));
                let valid = validate(&build_conflict_graph(g), &ext.coloring).is_valid();
                if !valid || ext.coloring.colors_used() > 7 {
                    problems.push(format!("{kind}: invalid extension"));
                }
                if kind.has_local_proof() && ext.level >= FALLBACK_LEVEL {
                    problems.push(format!("{kind}: needed the distance-two fallback"));
                }
            }
            Err(e) => problems.push(format!("{kind}: {e}")),
        }
    }
    verdict(
        problems.is_empty(),
        format!(
            "levels {}{}",
            levels.join(" "),
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
        ),
    )
}

fn main() -> ExitCode {
    let mut corpus = Corpus::default();
    let results = [
        ("1 theorem harness", theorem_harness(&mut corpus)),
        ("2 exact oracle consistency", exact_oracle(&mut corpus)),
        ("3 mad equivalence", mad_equivalence(&mut corpus)),
        ("4 charge conservation and case table", conservation(&corpus)),
        ("5 case-analysis soundness", case_soundness()),
        ("6 definition equivalence", definition_equivalence()),
        ("7 known small values", known_values()),
        ("8 gadget extension", gadget_extension()),
    ];
    let mut all = true;
    for (name, v) in &results {
        all &= v.pass;
        println!("{} criterion {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
