//! Rotor mechanisms, rotor configurations and stack flipping.
//!
//! A rotor configuration stores, for each non-target vertex, the 1-based slot
//! of its retrospective arc (the arc of the most recent exit). Because every
//! stack is periodic with period d(v), the slot alone determines the whole
//! bi-infinite stack up to translation.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{Arc, GraphSpec, Multigraph, VertexId};
use crate::walk::ParticleConfiguration;

/// Overrides for the internal safety caps. `None` means the computed default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budgets {
    pub steps: Option<u64>,
    pub pushes: Option<u64>,
    pub orbit: Option<u64>,
}

/// The cyclic order e¹…e^d(v) of out-arcs at a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotorMechanism {
    pub vertex: VertexId,
    pub order: Vec<Arc>,
}

impl RotorMechanism {
    pub fn period(&self) -> usize {
        self.order.len()
    }

    /// Arc e^i for any integer `i`, extended periodically.
    pub fn arc_at(&self, i: i64) -> Arc {
        let d = self.order.len() as i64;
        self.order[(i - 1).rem_euclid(d) as usize]
    }

    pub fn head_sequence(&self) -> Vec<VertexId> {
        self.order.iter().map(|a| a.head).collect()
    }
}

/// Retrospective slot per non-target vertex (0 at targets).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotorConfiguration {
    retro: Vec<usize>,
}

impl RotorConfiguration {
    pub fn slot(&self, v: VertexId) -> usize {
        self.retro[v.0]
    }

    pub fn slots(&self) -> &[usize] {
        &self.retro
    }

    pub(crate) fn set_slot(&mut self, v: VertexId, slot: usize) {
        self.retro[v.0] = slot;
    }

    pub(crate) fn from_raw(retro: Vec<usize>) -> Self {
        RotorConfiguration { retro }
    }
}

impl fmt::Display for RotorConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.retro.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Debug, Clone)]
pub struct RotorSystem {
    graph: Multigraph,
    budgets: Budgets,
    pub(crate) identity_memo: OnceLock<ParticleConfiguration>,
}

impl PartialEq for RotorSystem {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.budgets == other.budgets
    }
}

impl Eq for RotorSystem {}

impl RotorSystem {
    pub fn new(graph: Multigraph) -> Self {
        RotorSystem {
            graph,
            budgets: Budgets::default(),
            identity_memo: OnceLock::new(),
        }
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        Multigraph::build(spec).map(Self::new)
    }

    pub fn with_budgets(mut self, budgets: Budgets) -> Self {
        self.budgets = budgets;
        self
    }

    pub fn budgets(&self) -> Budgets {
        self.budgets
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.graph.degree(v)
    }

    pub fn mechanism(&self, v: VertexId) -> Result<RotorMechanism> {
        self.require_rotor(v)?;
        let order = (1..=self.graph.degree(v))
            .map(|s| self.graph.arc(v, s))
            .collect();
        Ok(RotorMechanism { vertex: v, order })
    }

    pub(crate) fn require_rotor(&self, v: VertexId) -> Result<()> {
        if v.0 >= self.graph.vertex_count() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        if self.graph.is_target(v) {
            return Err(Error::TargetVertex(self.graph.label(v).to_string()));
        }
        Ok(())
    }

    /// Pointer at position 0 everywhere: retro slot d(v), so the first exit uses e¹.
    pub fn initial_configuration(&self) -> RotorConfiguration {
        let retro = self
            .graph
            .vertices()
            .map(|v| self.graph.degree(v))
            .collect();
        RotorConfiguration { retro }
    }

    /// Builds a configuration from the initial one, overriding the given slots.
    pub fn configuration(&self, overrides: &[(VertexId, usize)]) -> Result<RotorConfiguration> {
        let mut rho = self.initial_configuration();
        for &(v, slot) in overrides {
            self.require_rotor(v)?;
            let d = self.graph.degree(v);
            if slot == 0 || slot > d {
                return Err(Error::InvalidSlot {
                    vertex: self.graph.label(v).to_string(),
                    slot,
                    degree: d,
                });
            }
            rho.retro[v.0] = slot;
        }
        Ok(rho)
    }

    /// Checks that `rho` has the right shape and in-range slots for this system.
    pub fn validate(&self, rho: &RotorConfiguration) -> Result<()> {
        if rho.retro.len() != self.graph.vertex_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for {} vertices",
                rho.retro.len(),
                self.graph.vertex_count()
            )));
        }
        for v in self.graph.vertices() {
            let d = self.graph.degree(v);
            let s = rho.retro[v.0];
            let ok = if self.graph.is_target(v) {
                s == 0
            } else {
                (1..=d).contains(&s)
            };
            if !ok {
                return Err(Error::InvalidSlot {
                    vertex: self.graph.label(v).to_string(),
                    slot: s,
                    degree: d,
                });
            }
        }
        Ok(())
    }

    /// Every rotor configuration, in lexicographic slot order.
    pub fn all_configurations(&self, limit: u128) -> Result<Vec<RotorConfiguration>> {
        let count = self.configuration_count();
        if count > limit {
            return Err(Error::EnumerationTooLarge(count));
        }
        let rotors: Vec<VertexId> = self.graph.non_targets().collect();
        let mut out = Vec::with_capacity(count as usize);
        let mut cur = self
            .graph
            .vertices()
            .map(|v| usize::from(!self.graph.is_target(v)))
            .collect::<Vec<_>>();
        loop {
            out.push(RotorConfiguration::from_raw(cur.clone()));
            let mut k = rotors.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                let v = rotors[k];
                if cur[v.0] < self.graph.degree(v) {
                    cur[v.0] += 1;
                    break;
                }
                cur[v.0] = 1;
            }
        }
    }

    /// Π d(v) over non-target vertices.
    pub fn configuration_count(&self) -> u128 {
        self.graph
            .non_targets()
            .map(|v| self.graph.degree(v) as u128)
            .fold(1u128, |acc, d| acc.saturating_mul(d))
    }

    pub fn retro_arc(&self, rho: &RotorConfiguration, v: VertexId) -> Result<Arc> {
        self.require_rotor(v)?;
        Ok(self.graph.arc(v, rho.retro[v.0]))
    }

    /// The arc the next particle leaving `v` will use, ρ(v)⁺.
    pub fn prospective_arc(&self, rho: &RotorConfiguration, v: VertexId) -> Result<Arc> {
        self.require_rotor(v)?;
        Ok(self.graph.arc(v, rho.retro[v.0] % self.graph.degree(v) + 1))
    }

    pub(crate) fn progress_in_place(&self, rho: &mut RotorConfiguration, v: VertexId) {
        let d = self.graph.degree(v);
        rho.retro[v.0] = rho.retro[v.0] % d + 1;
    }

    pub(crate) fn regress_in_place(&self, rho: &mut RotorConfiguration, v: VertexId) {
        let d = self.graph.degree(v);
        rho.retro[v.0] = if rho.retro[v.0] == 1 {
            d
        } else {
            rho.retro[v.0] - 1
        };
    }

    pub fn progress(&self, rho: &RotorConfiguration, v: VertexId) -> Result<RotorConfiguration> {
        self.require_rotor(v)?;
        let mut out = rho.clone();
        self.progress_in_place(&mut out, v);
        Ok(out)
    }

    pub fn regress(&self, rho: &RotorConfiguration, v: VertexId) -> Result<RotorConfiguration> {
        self.require_rotor(v)?;
        let mut out = rho.clone();
        self.regress_in_place(&mut out, v);
        Ok(out)
    }

    /// Reverses every mechanism: new slot j is old slot d(v)+1−j.
    pub fn reverse_mechanisms(&self) -> RotorSystem {
        RotorSystem {
            graph: self.graph.with_reversed_mechanisms(),
            budgets: self.budgets,
            identity_memo: self.identity_memo.clone(),
        }
    }

    /// Stack flipping Φ. The flipped retrospective arc is the old prospective
    /// arc, expressed in the reversed system's slots.
    pub fn flip(&self, rho: &RotorConfiguration) -> (RotorSystem, RotorConfiguration) {
        let mut flipped = rho.clone();
        for v in self.graph.non_targets() {
            let d = self.graph.degree(v);
            let i = rho.retro[v.0];
            flipped.retro[v.0] = if i == d { d } else { d - i };
        }
        (self.reverse_mechanisms(), flipped)
    }

    /// Upper bound on the exits of a single rotor walk (and, by the same
    /// recursion, on complete cycle pushing): B(v) = d(v)·(B(w)+1) for a
    /// neighbour w one step closer to T, B(t) = 0.
    pub(crate) fn exit_bound(&self) -> u64 {
        let g = &self.graph;
        let dist = g.target_distances();
        let mut order: Vec<VertexId> = g.vertices().collect();
        order.sort_by_key(|v| dist[v.0]);
        let mut bound = vec![0u64; g.vertex_count()];
        for &v in &order {
            if g.is_target(v) {
                continue;
            }
            let best = g
                .heads(v)
                .iter()
                .filter(|w| dist[w.0] < dist[v.0])
                .map(|w| bound[w.0])
                .min()
                .unwrap_or(u64::MAX);
            bound[v.0] = (g.degree(v) as u64).saturating_mul(best.saturating_add(1));
        }
        bound.iter().fold(0u64, |acc, b| acc.saturating_add(*b))
    }

    fn linear_cap(&self) -> u64 {
        let g = &self.graph;
        (g.vertex_count() as u64) * (g.total_degree() as u64) * 4
    }

    pub fn step_budget(&self) -> u64 {
        self.budgets
            .steps
            .unwrap_or_else(|| self.linear_cap().max(self.exit_bound()))
    }

    pub fn push_budget(&self) -> u64 {
        self.budgets
            .pushes
            .unwrap_or_else(|| self.linear_cap().max(self.exit_bound()))
    }

    pub fn orbit_budget(&self) -> u64 {
        self.budgets
            .orbit
            .unwrap_or_else(|| u64::try_from(self.configuration_count()).unwrap_or(u64::MAX))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g5() -> RotorSystem {
        RotorSystem::from_spec(&GraphSpec::from_lists(
            &[(1, &[3, 4, 5][..]), (2, &[3][..]), (3, &[4, 2][..])],
            1,
            &[4, 5],
        ))
        .unwrap()
    }

    fn v(sys: &RotorSystem, l: &str) -> VertexId {
        sys.graph().vertex(l).unwrap()
    }

    #[test]
    fn initial_configuration_points_at_last_slot() {
        let sys = g5();
        let rho = sys.initial_configuration();
        assert_eq!(rho.slot(v(&sys, "1")), 3);
        assert_eq!(rho.slot(v(&sys, "3")), 2);
        assert_eq!(
            sys.prospective_arc(&rho, v(&sys, "1")).unwrap().head,
            v(&sys, "3")
        );
    }

    #[test]
    fn progress_wraps() {
        let sys = g5();
        let one = v(&sys, "1");
        let rho = sys.configuration(&[(one, 3)]).unwrap();
        let next = sys.progress(&rho, one).unwrap();
        assert_eq!(next.slot(one), 1);
        assert_eq!(sys.retro_arc(&next, one).unwrap().head, v(&sys, "3"));
    }

    #[test]
    fn period_one_progress_is_identity() {
        let sys = g5();
        let rho = sys.initial_configuration();
        assert_eq!(sys.progress(&rho, v(&sys, "2")).unwrap(), rho);
    }

    #[test]
    fn full_turns_are_identity() {
        let sys = g5();
        let rho = sys
            .configuration(&[(v(&sys, "1"), 2), (v(&sys, "3"), 1)])
            .unwrap();
        for x in sys.graph().non_targets() {
            let mut p = rho.clone();
            let mut r = rho.clone();
            for _ in 0..sys.degree(x) {
                p = sys.progress(&p, x).unwrap();
                r = sys.regress(&r, x).unwrap();
            }
            assert_eq!(p, rho);
            assert_eq!(r, rho);
            assert_eq!(
                sys.regress(&sys.progress(&rho, x).unwrap(), x).unwrap(),
                rho
            );
        }
    }

    #[test]
    fn regress_wraps() {
        let sys = g5();
        let three = v(&sys, "3");
        let rho = sys.configuration(&[(three, 1)]).unwrap();
        let prev = sys.regress(&rho, three).unwrap();
        assert_eq!(prev.slot(three), 2);
        assert_eq!(sys.retro_arc(&prev, three).unwrap().head, v(&sys, "2"));
    }

    #[test]
    fn targets_have_no_rotor() {
        let sys = g5();
        let rho = sys.initial_configuration();
        assert!(matches!(
            sys.progress(&rho, v(&sys, "4")),
            Err(Error::TargetVertex(_))
        ));
        assert!(matches!(
            sys.regress(&rho, v(&sys, "5")),
            Err(Error::TargetVertex(_))
        ));
    }

    #[test]
    fn reversed_mechanisms_match_the_example() {
        let sys = g5();
        let rev = sys.reverse_mechanisms();
        let heads = |s: &RotorSystem, l: &str| -> Vec<String> {
            s.mechanism(v(s, l))
                .unwrap()
                .head_sequence()
                .into_iter()
                .map(|h| s.graph().label(h).to_string())
                .collect()
        };
        assert_eq!(heads(&rev, "1"), ["5", "4", "3"]);
        assert_eq!(heads(&rev, "3"), ["2", "4"]);
        assert_eq!(heads(&rev, "2"), ["3"]);
        assert_eq!(rev.reverse_mechanisms(), sys);
    }

    #[test]
    fn flip_exchanges_retro_and_prospective() {
        let sys = g5();
        let one = v(&sys, "1");
        let rho = sys.configuration(&[(one, 1)]).unwrap();
        let (fsys, frho) = sys.flip(&rho);
        assert_eq!(frho.slot(one), 2);
        assert_eq!(fsys.retro_arc(&frho, one).unwrap().head, v(&sys, "4"));
        for x in sys.graph().non_targets() {
            assert_eq!(
                fsys.retro_arc(&frho, x).unwrap().head,
                sys.prospective_arc(&rho, x).unwrap().head
            );
        }
        let (back_sys, back) = fsys.flip(&frho);
        assert_eq!(back_sys, sys);
        assert_eq!(back, rho);
    }

    #[test]
    fn flip_of_initial_is_initial_of_reversed() {
        let sys = g5();
        let (fsys, frho) = sys.flip(&sys.initial_configuration());
        assert_eq!(frho, fsys.initial_configuration());
    }

    #[test]
    fn periodic_extension() {
        let sys = g5();
        let m = sys.mechanism(v(&sys, "1")).unwrap();
        assert_eq!(m.arc_at(0), m.arc_at(3));
        assert_eq!(m.arc_at(-1).slot, 2);
        assert_eq!(m.arc_at(7).slot, 1);
    }

    #[test]
    fn invalid_slots_rejected() {
        let sys = g5();
        assert!(matches!(
            sys.configuration(&[(v(&sys, "1"), 0)]),
            Err(Error::InvalidSlot { slot: 0, .. })
        ));
        assert!(matches!(
            sys.configuration(&[(v(&sys, "1"), 4)]),
            Err(Error::InvalidSlot { slot: 4, .. })
        ));
    }

    #[test]
    fn enumerates_all_configurations() {
        let sys = g5();
        let all = sys.all_configurations(100).unwrap();
        assert_eq!(all.len(), 6);
        for rho in &all {
            sys.validate(rho).unwrap();
        }
        assert!(matches!(
            sys.all_configurations(5),
            Err(Error::EnumerationTooLarge(6))
        ));
    }
}
