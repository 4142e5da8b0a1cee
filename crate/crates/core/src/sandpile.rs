//! The sandpile monoid of G/T and its group of recurrent configurations.
//!
//! Grains sent into T disappear. The identity element is found without a
//! burning test: a recurrent seed is taken from the eventual cycle of
//! k ↦ (k·𝟙)°, and the first idempotent among its powers is the identity.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::rotor::RotorSystem;
use crate::walk::ParticleConfiguration;

/// A particle configuration with σ(v) ≤ d(v) − 1 everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableConfiguration(ParticleConfiguration);

impl StableConfiguration {
    pub fn as_particles(&self) -> &ParticleConfiguration {
        &self.0
    }

    pub fn into_particles(self) -> ParticleConfiguration {
        self.0
    }

    pub fn get(&self, v: VertexId) -> u64 {
        self.0.get(v)
    }
}

impl fmt::Display for StableConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A recurrent stable configuration, i.e. an element of the sandpile group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(StableConfiguration);

impl GroupElement {
    pub fn as_stable(&self) -> &StableConfiguration {
        &self.0
    }

    pub fn as_particles(&self) -> &ParticleConfiguration {
        self.0.as_particles()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl RotorSystem {
    pub fn is_stable(&self, sigma: &ParticleConfiguration) -> bool {
        self.graph()
            .non_targets()
            .all(|v| sigma.get(v) < self.degree(v) as u64)
    }

    /// Wraps `sigma` if it is stable.
    pub fn stable(&self, sigma: ParticleConfiguration) -> Option<StableConfiguration> {
        self.is_stable(&sigma).then_some(StableConfiguration(sigma))
    }

    /// Wraps `tau` if it is stable and recurrent.
    pub fn group_element(&self, tau: ParticleConfiguration) -> Option<GroupElement> {
        let stable = self.stable(tau)?;
        self.is_recurrent(&stable).then_some(GroupElement(stable))
    }

    /// Topples `v` once: one grain along each out-arc.
    pub fn topple(
        &self,
        sigma: &ParticleConfiguration,
        v: VertexId,
    ) -> Result<ParticleConfiguration> {
        self.require_rotor(v)?;
        let d = self.degree(v) as u64;
        if sigma.get(v) < d {
            return Err(Error::NotUnstable(self.graph().label(v).to_string()));
        }
        let mut out = sigma.clone();
        self.topple_times(&mut out, v, 1);
        Ok(out)
    }

    fn topple_times(&self, sigma: &mut ParticleConfiguration, v: VertexId, k: u64) {
        let g = self.graph();
        sigma.set(v, sigma.get(v) - k * g.degree(v) as u64);
        for &w in g.heads(v) {
            if !g.is_target(w) {
                sigma.add_at(w, k);
            }
        }
    }

    /// σ°: topple until stable.
    pub fn stabilize(&self, sigma: &ParticleConfiguration) -> StableConfiguration {
        let g = self.graph();
        let mut cur = sigma.clone();
        let mut queue: VecDeque<VertexId> = g.non_targets().collect();
        let mut queued = vec![false; g.vertex_count()];
        for v in &queue {
            queued[v.0] = true;
        }
        while let Some(v) = queue.pop_front() {
            queued[v.0] = false;
            let d = g.degree(v) as u64;
            let k = cur.get(v) / d;
            if k == 0 {
                continue;
            }
            self.topple_times(&mut cur, v, k);
            for &w in g.heads(v).iter().chain(std::iter::once(&v)) {
                if !g.is_target(w) && !queued[w.0] && cur.get(w) >= g.degree(w) as u64 {
                    queued[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        StableConfiguration(cur)
    }

    /// (σ₁ + σ₂)°.
    pub fn monoid_add(
        &self,
        a: &StableConfiguration,
        b: &StableConfiguration,
    ) -> StableConfiguration {
        self.stabilize(&(&a.0 + &b.0))
    }

    pub fn zero_stable(&self) -> StableConfiguration {
        StableConfiguration(ParticleConfiguration::zero(self.graph()))
    }

    /// The identity e of the sandpile group, memoised per system.
    pub fn identity(&self) -> GroupElement {
        let e = self.identity_memo.get_or_init(|| self.compute_identity());
        GroupElement(StableConfiguration(e.clone()))
    }

    fn compute_identity(&self) -> ParticleConfiguration {
        let g = self.graph();
        let ones = ParticleConfiguration::from_pairs(
            g,
            &g.non_targets().map(|v| (v, 1)).collect::<Vec<_>>(),
        );
        // eventual cycle of x -> (x + 1)°
        let mut seen: HashMap<StableConfiguration, usize> = HashMap::new();
        let mut x = self.zero_stable();
        let seed = loop {
            if seen.contains_key(&x) {
                break x;
            }
            let next = self.stabilize(&(&x.0 + &ones));
            seen.insert(x, seen.len());
            x = next;
        };
        // first idempotent power of the seed
        let mut p = seed.clone();
        loop {
            if self.monoid_add(&p, &p) == p {
                return p.0;
            }
            p = self.monoid_add(&p, &seed);
        }
    }

    /// τ is recurrent iff (τ + e)° = τ.
    pub fn is_recurrent(&self, tau: &StableConfiguration) -> bool {
        let e = self.identity();
        self.monoid_add(tau, e.as_stable()) == *tau
    }

    /// g_s = (δ_s + e)°.
    pub fn g_s(&self) -> GroupElement {
        let e = self.identity();
        let delta = ParticleConfiguration::delta(self.graph(), self.graph().source());
        GroupElement(self.stabilize(&(e.as_particles() + &delta)))
    }

    pub fn group_mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(self.monoid_add(&a.0, &b.0))
    }

    /// k-fold product τ^k (k = 0 gives e).
    pub fn group_pow(&self, tau: &GroupElement, k: u64) -> GroupElement {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.group_mul(&acc, tau);
        }
        acc
    }

    /// Smallest k ≥ 1 with τ^k = e.
    pub fn order_of(&self, tau: &GroupElement) -> u64 {
        let e = self.identity();
        let mut p = tau.clone();
        let mut k = 1;
        while p != e {
            p = self.group_mul(&p, tau);
            k += 1;
        }
        k
    }

    /// All stable configurations, lexicographically ordered.
    pub fn all_stable_configurations(&self, limit: u128) -> Result<Vec<StableConfiguration>> {
        // same index space as rotor configurations: slot i <-> i-1 grains
        self.all_configurations(limit).map(|all| {
            all.into_iter()
                .map(|rho| {
                    let counts = rho
                        .slots()
                        .iter()
                        .map(|&s| s.saturating_sub(1) as u64)
                        .collect();
                    StableConfiguration(ParticleConfiguration::from_raw(counts))
                })
                .collect()
        })
    }

    pub fn recurrent_configurations(&self, limit: u128) -> Result<Vec<GroupElement>> {
        Ok(self
            .all_stable_configurations(limit)?
            .into_iter()
            .filter(|t| self.is_recurrent(t))
            .map(GroupElement)
            .collect())
    }
}
