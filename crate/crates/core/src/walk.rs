//! Particle and antiparticle dynamics.
//!
//! A particle at `v` first progresses the rotor at `v` and then moves along the
//! new retrospective arc. An antiparticle moves along the current
//! retrospective arc and then regresses the rotor. Walks stop on arrival at
//! the target set.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexId};
use crate::rotor::{RotorConfiguration, RotorSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkMode {
    Particle,
    Antiparticle,
}

/// Particle counts on the non-target vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParticleConfiguration {
    counts: Vec<u64>,
}

impl ParticleConfiguration {
    pub fn zero(graph: &Multigraph) -> Self {
        ParticleConfiguration {
            counts: vec![0; graph.vertex_count()],
        }
    }

    /// One particle at `v`.
    pub fn delta(graph: &Multigraph, v: VertexId) -> Self {
        let mut sigma = Self::zero(graph);
        sigma.counts[v.0] = 1;
        sigma
    }

    /// Builds a configuration from `(vertex, count)` pairs; counts at targets are dropped.
    pub fn from_pairs(graph: &Multigraph, pairs: &[(VertexId, u64)]) -> Self {
        let mut sigma = Self::zero(graph);
        for &(v, c) in pairs {
            if !graph.is_target(v) {
                sigma.counts[v.0] += c;
            }
        }
        sigma
    }

    pub(crate) fn from_raw(counts: Vec<u64>) -> Self {
        ParticleConfiguration { counts }
    }

    pub fn get(&self, v: VertexId) -> u64 {
        self.counts[v.0]
    }

    pub(crate) fn set(&mut self, v: VertexId, c: u64) {
        self.counts[v.0] = c;
    }

    pub(crate) fn add_at(&mut self, v: VertexId, c: u64) {
        self.counts[v.0] += c;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Pointwise `self >= other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.counts.iter().zip(&other.counts).all(|(a, b)| a >= b)
    }

    pub fn scaled(&self, k: u64) -> Self {
        ParticleConfiguration {
            counts: self.counts.iter().map(|c| c * k).collect(),
        }
    }
}

impl Add for &ParticleConfiguration {
    type Output = ParticleConfiguration;

    fn add(self, rhs: Self) -> ParticleConfiguration {
        ParticleConfiguration {
            counts: self
                .counts
                .iter()
                .zip(&rhs.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for ParticleConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Result of one walk: the visited vertices x₀…x_r (x_r ∈ T) and the final rotors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTrace {
    pub path: Vec<VertexId>,
    pub final_config: RotorConfiguration,
    pub target: VertexId,
}

impl WalkTrace {
    /// The path with its final target removed.
    pub fn gamma(&self) -> &[VertexId] {
        &self.path[..self.path.len() - 1]
    }
}

/// Targets hit by successive walks from the source, with the configuration
/// after each hit and each walk's path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingStream {
    pub targets: Vec<VertexId>,
    pub configs: Vec<RotorConfiguration>,
    pub paths: Vec<Vec<VertexId>>,
}

impl HittingStream {
    /// The raw rotor walk: each path in turn, with the walk returning to the
    /// source after every hit.
    pub fn raw_walk(&self) -> Vec<VertexId> {
        self.paths.iter().flatten().copied().collect()
    }
}

impl RotorSystem {
    pub fn particle_step(
        &self,
        rho: &RotorConfiguration,
        v: VertexId,
    ) -> Result<(RotorConfiguration, VertexId)> {
        self.require_rotor(v)?;
        let mut out = rho.clone();
        let w = self.particle_step_in_place(&mut out, v);
        Ok((out, w))
    }

    pub fn antiparticle_step(
        &self,
        rho: &RotorConfiguration,
        v: VertexId,
    ) -> Result<(RotorConfiguration, VertexId)> {
        self.require_rotor(v)?;
        let mut out = rho.clone();
        let w = self.antiparticle_step_in_place(&mut out, v);
        Ok((out, w))
    }

    pub(crate) fn particle_step_in_place(
        &self,
        rho: &mut RotorConfiguration,
        v: VertexId,
    ) -> VertexId {
        self.progress_in_place(rho, v);
        self.graph().head(v, rho.slot(v))
    }

    pub(crate) fn antiparticle_step_in_place(
        &self,
        rho: &mut RotorConfiguration,
        v: VertexId,
    ) -> VertexId {
        let w = self.graph().head(v, rho.slot(v));
        self.regress_in_place(rho, v);
        w
    }

    fn step_in_place(&self, rho: &mut RotorConfiguration, v: VertexId, mode: WalkMode) -> VertexId {
        match mode {
            WalkMode::Particle => self.particle_step_in_place(rho, v),
            WalkMode::Antiparticle => self.antiparticle_step_in_place(rho, v),
        }
    }

    /// Runs one walker from `start` until it reaches a target.
    pub fn walk_to_target(
        &self,
        rho: &RotorConfiguration,
        start: VertexId,
        mode: WalkMode,
    ) -> Result<WalkTrace> {
        if start.0 >= self.graph().vertex_count() {
            return Err(Error::UnknownVertex(start.to_string()));
        }
        let budget = self.step_budget();
        let mut cur = rho.clone();
        let mut path = vec![start];
        let mut at = start;
        let mut steps = 0u64;
        while !self.graph().is_target(at) {
            if steps == budget {
                return Err(Error::StepBudgetExceeded(budget));
            }
            at = self.step_in_place(&mut cur, at, mode);
            path.push(at);
            steps += 1;
        }
        Ok(WalkTrace {
            path,
            final_config: cur,
            target: at,
        })
    }

    /// E⁺_v: add a particle at `v` and let it walk to the targets.
    pub fn add_particle(
        &self,
        rho: &RotorConfiguration,
        v: VertexId,
    ) -> Result<RotorConfiguration> {
        self.walk_to_target(rho, v, WalkMode::Particle)
            .map(|t| t.final_config)
    }

    /// E⁻_v: add an antiparticle at `v` and let it walk to the targets.
    pub fn add_antiparticle(
        &self,
        rho: &RotorConfiguration,
        v: VertexId,
    ) -> Result<RotorConfiguration> {
        self.walk_to_target(rho, v, WalkMode::Antiparticle)
            .map(|t| t.final_config)
    }

    /// The action σρ = E_σ(ρ), applying walks in ascending vertex order.
    pub fn act(
        &self,
        sigma: &ParticleConfiguration,
        rho: &RotorConfiguration,
    ) -> Result<RotorConfiguration> {
        let mut cur = rho.clone();
        for v in self.graph().non_targets() {
            for _ in 0..sigma.get(v) {
                cur = self.add_particle(&cur, v)?;
            }
        }
        Ok(cur)
    }

    /// Moves one particle from `v` by a single particle step. Returns the new
    /// particle counts, the new rotors and the vertex the particle landed on
    /// (a target absorbs it, so it is not counted).
    pub fn fire(
        &self,
        particles: &ParticleConfiguration,
        rho: &RotorConfiguration,
        v: VertexId,
    ) -> Result<(ParticleConfiguration, RotorConfiguration, VertexId)> {
        self.require_rotor(v)?;
        if particles.get(v) == 0 {
            return Err(Error::NoParticle(self.graph().label(v).to_string()));
        }
        let mut sigma = particles.clone();
        let mut cur = rho.clone();
        let w = self.particle_step_in_place(&mut cur, v);
        sigma.set(v, sigma.get(v) - 1);
        if !self.graph().is_target(w) {
            sigma.add_at(w, 1);
        }
        Ok((sigma, cur, w))
    }

    /// Fires until every particle has reached a target. `choose` picks the
    /// next vertex to fire among the currently occupied ones (ascending ids).
    /// Returns the final rotors and the number of particles absorbed at each vertex.
    pub fn fire_to_completion<F>(
        &self,
        particles: &ParticleConfiguration,
        rho: &RotorConfiguration,
        mut choose: F,
    ) -> Result<(RotorConfiguration, Vec<u64>)>
    where
        F: FnMut(&[VertexId]) -> usize,
    {
        let g = self.graph();
        let budget = self.step_budget().saturating_mul(particles.total().max(1));
        let mut sigma = particles.clone();
        let mut cur = rho.clone();
        let mut hits = vec![0u64; g.vertex_count()];
        let mut steps = 0u64;
        loop {
            let occupied: Vec<VertexId> = g.non_targets().filter(|&v| sigma.get(v) > 0).collect();
            if occupied.is_empty() {
                return Ok((cur, hits));
            }
            if steps == budget {
                return Err(Error::StepBudgetExceeded(budget));
            }
            let v = occupied[choose(&occupied).min(occupied.len() - 1)];
            let w = self.particle_step_in_place(&mut cur, v);
            sigma.set(v, sigma.get(v) - 1);
            if g.is_target(w) {
                hits[w.0] += 1;
            } else {
                sigma.add_at(w, 1);
            }
            steps += 1;
        }
    }

    /// `n` successive walks from the source starting at `rho0`.
    pub fn hitting_stream(
        &self,
        rho0: &RotorConfiguration,
        n: usize,
        mode: WalkMode,
    ) -> Result<HittingStream> {
        let s = self.graph().source();
        let mut stream = HittingStream {
            targets: Vec::with_capacity(n),
            configs: Vec::with_capacity(n),
            paths: Vec::with_capacity(n),
        };
        let mut cur = rho0.clone();
        for _ in 0..n {
            let trace = self.walk_to_target(&cur, s, mode)?;
            cur = trace.final_config;
            stream.targets.push(trace.target);
            stream.configs.push(cur.clone());
            stream.paths.push(trace.path);
        }
        Ok(stream)
    }

    /// Just the targets of [`RotorSystem::hitting_stream`] for particles.
    pub fn hitting_sequence(&self, rho0: &RotorConfiguration, n: usize) -> Result<Vec<VertexId>> {
        self.hitting_stream(rho0, n, WalkMode::Particle)
            .map(|s| s.targets)
    }
}
