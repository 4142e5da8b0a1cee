//! Seeded generators for random strongly connected instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{GraphSpec, VertexId};
use crate::rotor::{RotorConfiguration, RotorSystem};
use crate::walk::ParticleConfiguration;

/// Which rotor mechanisms to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MechanismKind {
    Any,
    /// Every period reads the same backwards.
    Palindromic,
    /// Blocks of `m` equal heads.
    Repetitive(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceShape {
    /// Total vertex count is drawn from `2..=max_vertices`.
    pub max_vertices: usize,
    pub max_degree: usize,
    pub max_targets: usize,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape {
            max_vertices: 7,
            max_degree: 4,
            max_targets: 2,
        }
    }
}

/// Deterministic RNG for instance `index` of a batch run under `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index))
}

fn mechanism<R: Rng>(
    rng: &mut R,
    n: usize,
    shape: &InstanceShape,
    kind: MechanismKind,
) -> Vec<usize> {
    let pick = |rng: &mut R| rng.gen_range(0..n);
    match kind {
        MechanismKind::Any => {
            let d = rng.gen_range(1..=shape.max_degree.max(1));
            (0..d).map(|_| pick(rng)).collect()
        }
        MechanismKind::Palindromic => {
            let d = rng.gen_range(1..=shape.max_degree.max(1));
            let half: Vec<usize> = (0..d.div_ceil(2)).map(|_| pick(rng)).collect();
            let mut word = half.clone();
            word.extend(half.iter().rev().skip(d % 2));
            word
        }
        MechanismKind::Repetitive(m) => {
            let blocks = rng.gen_range(1..=2);
            (0..blocks)
                .flat_map(|_| std::iter::repeat_n(pick(rng), m))
                .collect()
        }
    }
}

/// Draws a strongly connected instance; vertex 1 is the source and the
/// highest-numbered vertices are the targets.
pub fn random_system<R: Rng>(
    rng: &mut R,
    shape: &InstanceShape,
    kind: MechanismKind,
) -> RotorSystem {
    loop {
        let n = rng.gen_range(2..=shape.max_vertices.max(2));
        let k = rng.gen_range(1..=shape.max_targets.clamp(1, n - 1));
        let label = |i: usize| (i + 1).to_string();
        let mechanisms = (0..n - k)
            .map(|v| {
                let heads = mechanism(rng, n, shape, kind);
                (label(v), heads.into_iter().map(label).collect())
            })
            .collect();
        let spec = GraphSpec {
            vertices: (0..n).map(label).collect(),
            source: label(0),
            targets: (n - k..n).map(label).collect(),
            mechanisms,
        };
        if let Ok(sys) = RotorSystem::from_spec(&spec) {
            return sys;
        }
    }
}

/// Uniform rotor configuration.
pub fn random_configuration<R: Rng>(rng: &mut R, sys: &RotorSystem) -> RotorConfiguration {
    random_configuration_where(rng, sys, |_, _| true)
}

/// Uniform over the slots at each vertex that satisfy `allowed`; the initial
/// slot d(v) is used when none does.
pub fn random_configuration_where<R, F>(
    rng: &mut R,
    sys: &RotorSystem,
    allowed: F,
) -> RotorConfiguration
where
    R: Rng,
    F: Fn(VertexId, &RotorConfiguration) -> bool,
{
    let mut rho = sys.initial_configuration();
    for v in sys.graph().non_targets() {
        let options: Vec<usize> = (1..=sys.degree(v))
            .filter(|&slot| {
                let mut trial = rho.clone();
                trial.set_slot(v, slot);
                allowed(v, &trial)
            })
            .collect();
        if let Some(&slot) = options.choose(rng) {
            rho.set_slot(v, slot);
        }
    }
    rho
}

/// Random particle configuration with `total` particles in all.
pub fn random_particles<R: Rng>(
    rng: &mut R,
    sys: &RotorSystem,
    total: u64,
) -> ParticleConfiguration {
    let rotors: Vec<VertexId> = sys.graph().non_targets().collect();
    let mut sigma = ParticleConfiguration::zero(sys.graph());
    for _ in 0..total {
        sigma.add_at(*rotors.choose(rng).expect("graph has a source"), 1);
    }
    sigma
}
