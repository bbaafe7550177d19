//! Discharging on the core graph and the audit of its case analysis.
//!
//! Initial charge is `w(v) = d_H(v)`. Two rules move charge:
//!
//! * R1: every 3⁺-vertex sends 2/3 to each adjacent `2_1`-vertex and 1/3 to
//!   each adjacent `2_0`-vertex.
//! * R2: every non-poor 3-vertex and every 4-vertex sends 1/3 to each
//!   adjacent `3_2`-vertex and 1/6 to each adjacent `3_{1+}`-vertex.
//!
//! Transfers depend only on static classes, so they are computed in one
//! pass and summed. All amounts are whole sixths.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::graph::{classify_all, CoreGraph, Graph, VertexClass, VertexId};
use crate::mad::is_eligible;
use crate::reduce::config::{find_reducible, ConfigKind, Configuration, Scan};
use crate::reduce::constructive::EngineError;

/// Radius within which a deficient vertex must be explained.
pub const EXPLANATION_RADIUS: usize = 2;

/// An exact charge in sixths.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Charge(i64);

impl Charge {
    pub const ZERO: Charge = Charge(0);

    pub fn from_sixths(sixths: i64) -> Self {
        Charge(sixths)
    }

    pub fn integer(n: i64) -> Self {
        Charge(6 * n)
    }

    /// The target `8/3`.
    pub fn eight_thirds() -> Self {
        Charge(16)
    }

    pub fn sixths(self) -> i64 {
        self.0
    }

    pub fn ratio(self) -> Ratio<i64> {
        Ratio::new(self.0, 6)
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.ratio();
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for Charge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for Charge {
    type Output = Charge;
    fn add(self, rhs: Charge) -> Charge {
        Charge(self.0 + rhs.0)
    }
}

impl AddAssign for Charge {
    fn add_assign(&mut self, rhs: Charge) {
        self.0 += rhs.0;
    }
}

impl Sub for Charge {
    type Output = Charge;
    fn sub(self, rhs: Charge) -> Charge {
        Charge(self.0 - rhs.0)
    }
}

impl Neg for Charge {
    type Output = Charge;
    fn neg(self) -> Charge {
        Charge(-self.0)
    }
}

impl std::iter::Sum for Charge {
    fn sum<I: Iterator<Item = Charge>>(iter: I) -> Charge {
        iter.fold(Charge::ZERO, Add::add)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    R1,
    R2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub from: VertexId,
    pub to: VertexId,
    pub amount: Charge,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCharge {
    pub vertex: VertexId,
    pub class: VertexClass,
    pub initial: Charge,
    pub sent: Charge,
    pub received: Charge,
    #[serde(rename = "final")]
    pub final_charge: Charge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deficiency {
    pub vertex: VertexId,
    pub final_charge: Charge,
    /// A configuration within [`EXPLANATION_RADIUS`], filled in by the audit.
    pub explanation: Option<Configuration>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeReport {
    pub vertices: Vec<VertexCharge>,
    pub transfers: Vec<Transfer>,
    pub total_initial: Charge,
    pub total_final: Charge,
    /// `2|E(H)|`.
    pub twice_edges: Charge,
    /// Vertices ending below 8/3.
    pub deficient: Vec<Deficiency>,
}

impl ChargeReport {
    /// `Σ w* = Σ w = 2|E(H)|`.
    pub fn is_conserved(&self) -> bool {
        self.total_final == self.total_initial && self.total_initial == self.twice_edges
    }

    pub fn min_final(&self) -> Option<Charge> {
        self.vertices.iter().map(|v| v.final_charge).min()
    }

    pub fn final_of(&self, v: VertexId) -> Option<Charge> {
        self.vertices
            .iter()
            .find(|c| c.vertex == v)
            .map(|c| c.final_charge)
    }
}

/// `w(v) = d_H(v)` for every vertex of `H`.
pub fn charges_initial(h: &CoreGraph) -> BTreeMap<VertexId, Charge> {
    let g = h.graph();
    g.vertices().map(|v| (v, Charge::integer(g.deg(v) as i64))).collect()
}

/// Amount `from` sends to `to` under R1/R2, given their classes.
fn rule_amount(from: VertexClass, to: VertexClass) -> Option<(Charge, Rule)> {
    if from.degree() >= 3 {
        match to {
            VertexClass::Two(1) => return Some((Charge(4), Rule::R1)),
            VertexClass::Two(0) => return Some((Charge(2), Rule::R1)),
            _ => {}
        }
    }
    let r2_sender = from.degree() == 4 || (from.degree() == 3 && !from.is_poor());
    if r2_sender {
        match to {
            VertexClass::Three(2) => return Some((Charge(2), Rule::R2)),
            VertexClass::ThreeOnePlus => return Some((Charge(1), Rule::R2)),
            _ => {}
        }
    }
    None
}

fn discharge_graph(g: &Graph) -> ChargeReport {
    let class = classify_all(g);
    let mut transfers = Vec::new();
    for v in g.vertices() {
        let cv = class[v.0].expect("live vertex");
        let mut nbrs: Vec<VertexId> = g.neighbors(v).collect();
        nbrs.sort();
        for u in nbrs {
            let cu = class[u.0].expect("live vertex");
            if let Some((amount, rule)) = rule_amount(cv, cu) {
                transfers.push(Transfer {
                    from: v,
                    to: u,
                    amount,
                    rule,
                });
            }
        }
    }
    let mut sent: BTreeMap<VertexId, Charge> = BTreeMap::new();
    let mut received: BTreeMap<VertexId, Charge> = BTreeMap::new();
    for t in &transfers {
        *sent.entry(t.from).or_default() += t.amount;
        *received.entry(t.to).or_default() += t.amount;
    }
    let vertices: Vec<VertexCharge> = g
        .vertices()
        .map(|v| {
            let initial = Charge::integer(g.deg(v) as i64);
            let s = sent.get(&v).copied().unwrap_or_default();
            let r = received.get(&v).copied().unwrap_or_default();
            VertexCharge {
                vertex: v,
                class: class[v.0].expect("live vertex"),
                initial,
                sent: s,
                received: r,
                final_charge: initial - s + r,
            }
        })
        .collect();
    let deficient = vertices
        .iter()
        .filter(|c| c.final_charge < Charge::eight_thirds())
        .map(|c| Deficiency {
            vertex: c.vertex,
            final_charge: c.final_charge,
            explanation: None,
        })
        .collect();
    let report = ChargeReport {
        total_initial: vertices.iter().map(|c| c.initial).sum(),
        total_final: vertices.iter().map(|c| c.final_charge).sum(),
        twice_edges: Charge::integer(2 * g.edge_count() as i64),
        vertices,
        transfers,
        deficient,
    };
    debug_assert!(report.is_conserved());
    report
}

/// Applies R1 and R2 on `H` with classes measured in `H`.
pub fn apply_discharging(h: &CoreGraph) -> ChargeReport {
    discharge_graph(h.graph())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub charges: ChargeReport,
    /// Deficient vertices with no configuration nearby: a coverage bug.
    pub unexplained: Vec<VertexId>,
    /// First configuration of the source graph, if any.
    pub reducible: Option<Configuration>,
    pub source_eligible: bool,
    /// The source graph is eligible and has edges but no configuration.
    pub detector_gap: bool,
}

impl AuditReport {
    pub fn has_bug_flag(&self) -> bool {
        !self.unexplained.is_empty() || self.detector_gap || !self.charges.is_conserved()
    }
}

/// Discharges `H` and explains each deficient vertex by the nearest
/// configuration of `H` whose distinguished vertex lies within distance 2. Detection treats
/// `H` itself as the ambient graph, so a vertex left with degree 1 after the
/// core step counts as a pendant.
pub fn audit_charges(h: &CoreGraph) -> Result<AuditReport, EngineError> {
    let core = h.graph();
    if core.max_degree() > 4 {
        return Err(EngineError::DegreeTooLarge(core.max_degree()));
    }
    let mut charges = discharge_graph(core);
    let scan = Scan::with_core(core, core.clone());
    let mut unexplained = Vec::new();
    for d in &mut charges.deficient {
        let ball = core.ball(d.vertex, EXPLANATION_RADIUS);
        d.explanation = ball
            .iter()
            .find_map(|&(u, _)| ConfigKind::ALL.into_iter().find_map(|kind| scan.detect_at(kind, u)));
        if d.explanation.is_none() {
            unexplained.push(d.vertex);
        }
    }
    let source = h.source();
    let reducible = find_reducible(source);
    let source_eligible = is_eligible(source).eligible;
    let detector_gap = source_eligible && source.edge_count() > 0 && reducible.is_none();
    Ok(AuditReport {
        charges,
        unexplained,
        reducible,
        source_eligible,
        detector_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_gadget;
    use crate::graph::derive_core;

    fn core(n: usize, pairs: &[(usize, usize)]) -> CoreGraph {
        derive_core(&Graph::from_edges(n, pairs).unwrap())
    }

    fn cycle(n: usize) -> CoreGraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        core(n, &pairs)
    }

    #[test]
    fn charge_display() {
        assert_eq!(Charge::eight_thirds().to_string(), "8/3");
        assert_eq!(Charge::from_sixths(17).to_string(), "17/6");
        assert_eq!(Charge::integer(2).to_string(), "2/1");
    }

    #[test]
    fn initial_charges() {
        assert!(charges_initial(&cycle(5)).values().all(|&c| c == Charge::integer(2)));
        let k4 = core(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(charges_initial(&k4).values().all(|&c| c == Charge::integer(3)));
        let mut k5 = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                k5.push((i, j));
            }
        }
        assert!(charges_initial(&core(5, &k5)).values().all(|&c| c == Charge::integer(4)));
    }

    #[test]
    fn c5_is_deficient_but_explained() {
        let audit = audit_charges(&cycle(5)).unwrap();
        assert_eq!(audit.charges.deficient.len(), 5);
        for d in &audit.charges.deficient {
            assert_eq!(d.final_charge, Charge::integer(2));
            assert_eq!(d.explanation.as_ref().unwrap().kind, ConfigKind::AllSmallNeighbors);
        }
        assert!(audit.unexplained.is_empty());
        assert!(!audit.has_bug_flag());
    }

    #[test]
    fn k4_keeps_its_charge() {
        let audit = audit_charges(&core(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])).unwrap();
        assert!(audit.charges.deficient.is_empty());
        assert!(audit.charges.transfers.is_empty());
        assert!(audit.charges.is_conserved());
    }

    #[test]
    fn two_three_two_neighbors_explained_at_the_vertex() {
        let gadget = gen_gadget(ConfigKind::DoubleThreeTwo);
        let audit = audit_charges(&derive_core(&gadget.graph)).unwrap();
        let v = gadget.witness();
        let d = audit.charges.deficient.iter().find(|d| d.vertex == v).unwrap();
        // 3 minus 1/3 to each 3_2-neighbor.
        assert_eq!(d.final_charge, Charge::from_sixths(14));
        let explanation = d.explanation.as_ref().unwrap();
        assert_eq!(explanation.kind, ConfigKind::DoubleThreeTwo);
        assert_eq!(explanation.witness(), v);
        assert!(!audit.has_bug_flag());
    }

    #[test]
    fn rule_table() {
        use VertexClass::*;
        assert_eq!(rule_amount(Three(0), Two(1)), Some((Charge(4), Rule::R1)));
        assert_eq!(rule_amount(ThreeOnePlus, Two(1)), Some((Charge(4), Rule::R1)));
        assert_eq!(rule_amount(Four(0), Two(0)), Some((Charge(2), Rule::R1)));
        assert_eq!(rule_amount(Two(0), Two(1)), None);
        assert_eq!(rule_amount(Three(0), Three(2)), Some((Charge(2), Rule::R2)));
        assert_eq!(rule_amount(Three(1), ThreeOnePlus), Some((Charge(1), Rule::R2)));
        assert_eq!(rule_amount(Three(2), Three(2)), None);
        assert_eq!(rule_amount(ThreeOnePlus, ThreeOnePlus), None);
        assert_eq!(rule_amount(Four(3), ThreeOnePlus), Some((Charge(1), Rule::R2)));
        assert_eq!(rule_amount(Three(0), Three(1)), None);
    }

    #[test]
    fn rejects_degree_five() {
        let star = core(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        assert!(matches!(audit_charges(&star), Err(EngineError::DegreeTooLarge(5))));
    }
}
