//! Cycle pushing, canonical acyclic forms and loop-erasure.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::rotor::{RotorConfiguration, RotorSystem};
use crate::walk::WalkMode;

/// Vertices v₀…v_{r−1} with ρ(v_j) pointing to v_{j+1 mod r}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RotorCycle {
    pub vertices: Vec<VertexId>,
}

impl RotorCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

/// The cycles erased from a particle path, in erasure order, and the
/// remaining simple path without its final target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoppingScript {
    pub cycles: Vec<RotorCycle>,
    pub gamma: Vec<VertexId>,
}

impl PoppingScript {
    /// Pops every erased cycle, then the residual path.
    pub fn replay(
        &self,
        sys: &RotorSystem,
        rho: &RotorConfiguration,
    ) -> Result<RotorConfiguration> {
        let mut cur = rho.clone();
        for c in &self.cycles {
            cur = sys.pop_set(&cur, &c.vertices)?;
        }
        sys.pop_set(&cur, &self.gamma)
    }
}

/// Loop-erasure of `path`, repeatedly removing the first cycle. Returns the
/// simple path and the erased cycles in order.
pub fn loop_erasure(path: &[VertexId]) -> (Vec<VertexId>, Vec<RotorCycle>) {
    let mut kept: Vec<VertexId> = Vec::with_capacity(path.len());
    let mut position: HashMap<VertexId, usize> = HashMap::new();
    let mut erased = Vec::new();
    for &x in path {
        if let Some(&p) = position.get(&x) {
            let cycle: Vec<VertexId> = kept.drain(p..).collect();
            for w in &cycle {
                position.remove(w);
            }
            erased.push(RotorCycle { vertices: cycle });
        }
        position.insert(x, kept.len());
        kept.push(x);
    }
    (kept, erased)
}

impl RotorSystem {
    /// Follows retro arcs from `start`; returns the cycle through `start` if there is one.
    fn cycle_through(&self, rho: &RotorConfiguration, start: VertexId) -> Option<RotorCycle> {
        let g = self.graph();
        let mut vertices = vec![start];
        let mut at = start;
        for _ in 0..g.vertex_count() {
            at = g.head(at, rho.slot(at));
            if at == start {
                return Some(RotorCycle { vertices });
            }
            if g.is_target(at) {
                return None;
            }
            vertices.push(at);
        }
        None
    }

    /// The cycle through the lowest-id vertex lying on a cycle, if any.
    pub fn find_cycle(&self, rho: &RotorConfiguration) -> Option<RotorCycle> {
        self.graph()
            .non_targets()
            .find_map(|v| self.cycle_through(rho, v))
    }

    /// Every cycle of ρ (they are vertex-disjoint), ordered by lowest member.
    pub fn all_cycles(&self, rho: &RotorConfiguration) -> Vec<RotorCycle> {
        let mut covered = vec![false; self.graph().vertex_count()];
        let mut out = Vec::new();
        for v in self.graph().non_targets() {
            if covered[v.0] {
                continue;
            }
            if let Some(c) = self.cycle_through(rho, v) {
                for w in &c.vertices {
                    covered[w.0] = true;
                }
                out.push(c);
            }
        }
        out
    }

    pub fn is_acyclic(&self, rho: &RotorConfiguration) -> bool {
        self.find_cycle(rho).is_none()
    }

    pub fn is_cycle_of(&self, rho: &RotorConfiguration, cycle: &RotorCycle) -> bool {
        let g = self.graph();
        let r = cycle.vertices.len();
        if r == 0 {
            return false;
        }
        let mut seen = vec![false; g.vertex_count()];
        for (j, &v) in cycle.vertices.iter().enumerate() {
            if v.0 >= g.vertex_count() || g.is_target(v) || seen[v.0] {
                return false;
            }
            seen[v.0] = true;
            if g.head(v, rho.slot(v)) != cycle.vertices[(j + 1) % r] {
                return false;
            }
        }
        true
    }

    /// Regresses every rotor on `cycle`.
    pub fn push_cycle(
        &self,
        rho: &RotorConfiguration,
        cycle: &RotorCycle,
    ) -> Result<RotorConfiguration> {
        if !self.is_cycle_of(rho, cycle) {
            return Err(Error::NotACycle);
        }
        let mut out = rho.clone();
        for &v in &cycle.vertices {
            self.regress_in_place(&mut out, v);
        }
        Ok(out)
    }

    /// Progresses the rotor at every vertex of `set`.
    pub fn pop_set(
        &self,
        rho: &RotorConfiguration,
        set: &[VertexId],
    ) -> Result<RotorConfiguration> {
        let mut out = rho.clone();
        for &v in set {
            self.require_rotor(v)?;
            self.progress_in_place(&mut out, v);
        }
        Ok(out)
    }

    /// Complete cycle pushing with the deterministic lowest-id cycle choice.
    pub fn complete_cycle_pushing(&self, rho: &RotorConfiguration) -> Result<RotorConfiguration> {
        self.complete_cycle_pushing_with(rho, |_| 0)
    }

    /// Complete cycle pushing where `choose` picks which of the current
    /// cycles (as listed by [`RotorSystem::all_cycles`]) to push next.
    pub fn complete_cycle_pushing_with<F>(
        &self,
        rho: &RotorConfiguration,
        mut choose: F,
    ) -> Result<RotorConfiguration>
    where
        F: FnMut(&[RotorCycle]) -> usize,
    {
        let budget = self.push_budget();
        let mut cur = rho.clone();
        let mut pushes = 0u64;
        loop {
            let cycles = self.all_cycles(&cur);
            if cycles.is_empty() {
                return Ok(cur);
            }
            if pushes == budget {
                return Err(Error::PushBudgetExceeded(budget));
            }
            let pick = choose(&cycles).min(cycles.len() - 1);
            for &v in &cycles[pick].vertices {
                self.regress_in_place(&mut cur, v);
            }
            pushes += 1;
        }
    }

    /// The canonical acyclic representative ρ† of ρ's class.
    pub fn canonical(&self, rho: &RotorConfiguration) -> Result<RotorConfiguration> {
        self.complete_cycle_pushing(rho)
    }

    pub fn equivalent(&self, a: &RotorConfiguration, b: &RotorConfiguration) -> Result<bool> {
        Ok(self.canonical(a)? == self.canonical(b)?)
    }

    /// Decomposes E⁺_v(ρ) into cycle pops followed by a path pop.
    pub fn popping_decomposition(
        &self,
        rho: &RotorConfiguration,
        v: VertexId,
    ) -> Result<PoppingScript> {
        self.require_rotor(v)?;
        let trace = self.walk_to_target(rho, v, WalkMode::Particle)?;
        let (mut simple, cycles) = loop_erasure(&trace.path);
        simple.pop();
        Ok(PoppingScript {
            cycles,
            gamma: simple,
        })
    }
}
