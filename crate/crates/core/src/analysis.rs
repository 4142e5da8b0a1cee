//! Hitting-sequence periodicity, reversal and symmetry checks.
//!
//! The class-orbit period D is the least D ≥ 1 with ρ_D ≡ ρ₀, where
//! ρ_n = E⁺_s(ρ_{n−1}). Every verifier checks its property on a prefix of
//! length 3D (3Dm for m-repetitivity).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::rotor::{RotorConfiguration, RotorSystem};
use crate::walk::WalkMode;

/// Limit on Π d(v) for exhaustive enumeration.
pub const ENUMERATION_LIMIT: u128 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingReport {
    pub prefix: Vec<VertexId>,
    pub class_period: u64,
    pub minimal_period: u64,
    pub word: Vec<VertexId>,
    /// Whether t_{i+D} = t_i held on the whole prefix.
    pub periodic: bool,
    /// Rotors after each walk of the prefix.
    pub snapshots: Vec<RotorConfiguration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalReport {
    pub passed: bool,
    pub class_period: u64,
    pub original: Vec<VertexId>,
    pub reversed: Vec<VertexId>,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub passed: bool,
    pub class_period: u64,
    pub prefix: Vec<VertexId>,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationReport {
    pub acyclic_count: usize,
    pub class_count: usize,
    pub permutes_acyclic: bool,
    pub permutes_classes: bool,
    pub identity_fixes_acyclic: bool,
}

impl PermutationReport {
    pub fn passed(&self) -> bool {
        self.permutes_acyclic
            && self.permutes_classes
            && self.identity_fixes_acyclic
            && self.acyclic_count == self.class_count
    }
}

/// Smallest p dividing `d` with seq[i + p] = seq[i] throughout `seq`.
pub fn minimal_period_dividing(seq: &[VertexId], d: u64) -> u64 {
    let d = d.max(1);
    (1..=d)
        .filter(|p| d.is_multiple_of(*p))
        .find(|&p| has_period(seq, p as usize))
        .unwrap_or(d)
}

pub fn has_period(seq: &[VertexId], p: usize) -> bool {
    seq.iter().zip(seq.iter().skip(p)).all(|(a, b)| a == b)
}

fn is_m_repetitive(seq: &[VertexId], m: usize) -> bool {
    seq.chunks(m)
        .all(|block| block.iter().all(|x| *x == block[0]))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl RotorSystem {
    /// Heads of the next `len` exits from `v`, starting at the prospective arc.
    pub fn future_heads(&self, rho: &RotorConfiguration, v: VertexId, len: usize) -> Vec<VertexId> {
        let d = self.degree(v);
        let start = rho.slot(v);
        (0..len)
            .map(|k| self.graph().head(v, (start + k) % d + 1))
            .collect()
    }

    /// Whether one period of the stack at `v`, read from the pointer, is a palindrome.
    pub fn rotor_is_palindromic(&self, rho: &RotorConfiguration, v: VertexId) -> bool {
        let word = self.future_heads(rho, v, self.degree(v));
        word.iter().eq(word.iter().rev())
    }

    /// Whether the stack at `v`, read from the pointer, is made of blocks of `m` equal heads.
    pub fn rotor_is_repetitive(&self, rho: &RotorConfiguration, v: VertexId, m: usize) -> bool {
        if m == 0 {
            return false;
        }
        let d = self.degree(v);
        let lcm = d / gcd(d, m) * m;
        is_m_repetitive(&self.future_heads(rho, v, lcm), m)
    }

    /// The least D ≥ 1 with canonical(ρ_D) = canonical(ρ₀).
    pub fn class_orbit_period(&self, rho0: &RotorConfiguration) -> Result<u64> {
        let budget = self.orbit_budget();
        let s = self.graph().source();
        let start = self.canonical(rho0)?;
        let mut cur = rho0.clone();
        for k in 1..=budget {
            cur = self.add_particle(&cur, s)?;
            if self.canonical(&cur)? == start {
                return Ok(k);
            }
        }
        Err(Error::OrbitBudgetExceeded(budget))
    }

    pub fn analyze_hitting(&self, rho0: &RotorConfiguration) -> Result<HittingReport> {
        let d = self.class_orbit_period(rho0)?;
        let stream = self.hitting_stream(rho0, 3 * d as usize, WalkMode::Particle)?;
        let prefix = stream.targets;
        let periodic = has_period(&prefix, d as usize);
        let minimal_period = minimal_period_dividing(&prefix, d);
        Ok(HittingReport {
            word: prefix[..d as usize].to_vec(),
            prefix,
            class_period: d,
            minimal_period,
            periodic,
            snapshots: stream.configs,
        })
    }

    /// Hitting targets of successive antiparticles released from the source.
    pub fn antiparticle_hitting(
        &self,
        rho0: &RotorConfiguration,
        n: usize,
    ) -> Result<Vec<VertexId>> {
        self.hitting_stream(rho0, n, WalkMode::Antiparticle)
            .map(|s| s.targets)
    }

    /// Compares the hitting sequence of `rho0` with that of the reversed
    /// system started from `reversed_initial`, or from Φ(ρ₀) when `None`.
    pub fn verify_reversal(
        &self,
        rho0: &RotorConfiguration,
        reversed_initial: Option<&RotorConfiguration>,
    ) -> Result<ReversalReport> {
        let d = self.class_orbit_period(rho0)?;
        let n = 3 * d as usize;
        let (rev_sys, flipped) = self.flip(rho0);
        let rev_start = match reversed_initial {
            Some(r) => {
                rev_sys.validate(r)?;
                r.clone()
            }
            None => flipped,
        };
        let original = self.hitting_sequence(rho0, n)?;
        let reversed = rev_sys.hitting_sequence(&rev_start, n)?;
        let du = d as usize;
        let mut counterexample = None;
        for i in 0..du {
            if reversed[i] != original[du - 1 - i] {
                counterexample = Some(format!(
                    "reversed term {} is {} but original term {} is {}",
                    i + 1,
                    self.graph().label(reversed[i]),
                    du - i,
                    self.graph().label(original[du - 1 - i])
                ));
                break;
            }
        }
        if counterexample.is_none() {
            if let Some(i) = (0..n - du).find(|&i| reversed[i + du] != reversed[i]) {
                counterexample = Some(format!(
                    "reversed sequence breaks period {d} at term {}",
                    i + 1 + du
                ));
            }
        }
        Ok(ReversalReport {
            passed: counterexample.is_none(),
            class_period: d,
            original,
            reversed,
            counterexample,
        })
    }

    pub fn verify_palindromic(&self, rho0: &RotorConfiguration) -> Result<SymmetryReport> {
        if let Some(v) = self
            .graph()
            .non_targets()
            .find(|&v| !self.rotor_is_palindromic(rho0, v))
        {
            return Err(Error::PreconditionNotPalindromic(
                self.graph().label(v).to_string(),
            ));
        }
        let d = self.class_orbit_period(rho0)?;
        let du = d as usize;
        let prefix = self.hitting_sequence(rho0, 3 * du)?;
        let counterexample = (0..du)
            .find(|&i| prefix[i] != prefix[du - 1 - i])
            .map(|i| format!("term {} differs from term {}", i + 1, du - i));
        Ok(SymmetryReport {
            passed: counterexample.is_none(),
            class_period: d,
            prefix,
            counterexample,
        })
    }

    pub fn verify_m_repetitive(
        &self,
        rho0: &RotorConfiguration,
        m: usize,
    ) -> Result<SymmetryReport> {
        let bad = |v: VertexId| Error::PreconditionNotRepetitive {
            vertex: self.graph().label(v).to_string(),
            m,
        };
        if m == 0 {
            return Err(bad(self.graph().source()));
        }
        if let Some(v) = self
            .graph()
            .non_targets()
            .find(|&v| !self.rotor_is_repetitive(rho0, v, m))
        {
            return Err(bad(v));
        }
        let d = self.class_orbit_period(rho0)?;
        let prefix = self.hitting_sequence(rho0, 3 * d as usize * m)?;
        let counterexample = prefix
            .chunks(m)
            .position(|b| b.iter().any(|x| *x != b[0]))
            .map(|a| format!("block {} is not constant", a + 1));
        Ok(SymmetryReport {
            passed: counterexample.is_none(),
            class_period: d,
            prefix,
            counterexample,
        })
    }

    /// Checks by enumeration that E⁺_s permutes the acyclic configurations
    /// and the equivalence classes, and that e fixes every acyclic configuration.
    pub fn permutation_check(&self) -> Result<PermutationReport> {
        let all = self.all_configurations(ENUMERATION_LIMIT)?;
        let s = self.graph().source();
        let acyclic: Vec<&RotorConfiguration> = all.iter().filter(|r| self.is_acyclic(r)).collect();
        let acyclic_set: HashSet<&RotorConfiguration> = acyclic.iter().copied().collect();

        let mut images = HashSet::new();
        let mut permutes_acyclic = true;
        for rho in &acyclic {
            let img = self.add_particle(rho, s)?;
            permutes_acyclic &= acyclic_set.contains(&img);
            images.insert(img);
        }
        permutes_acyclic &= images.len() == acyclic.len();

        let mut classes = HashSet::new();
        let mut class_images = HashSet::new();
        let mut permutes_classes = true;
        for rho in &all {
            let class = self.canonical(rho)?;
            let via_member = self.canonical(&self.add_particle(rho, s)?)?;
            let via_rep = self.canonical(&self.add_particle(&class, s)?)?;
            permutes_classes &= via_member == via_rep;
            if classes.insert(class) {
                class_images.insert(via_rep);
            }
        }
        permutes_classes &= class_images.len() == classes.len();

        let e = self.identity();
        let mut identity_fixes_acyclic = true;
        for rho in &acyclic {
            identity_fixes_acyclic &= self.act(e.as_particles(), rho)? == **rho;
        }

        Ok(PermutationReport {
            acyclic_count: acyclic.len(),
            class_count: classes.len(),
            permutes_acyclic,
            permutes_classes,
            identity_fixes_acyclic,
        })
    }
}
