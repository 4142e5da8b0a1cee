//! Rotor walks on finite strongly connected directed multigraphs with a
//! source and a set of targets.
//!
//! The crate covers particle and antiparticle dynamics, the action of the
//! sandpile monoid on rotor configurations, cycle pushing to canonical acyclic
//! forms, and analysis of the hitting sequence (periodicity, reversal,
//! palindromes and m-repetitive blocks).
//!
//! ```
//! use rotorwalk::{GraphSpec, RotorSystem};
//!
//! let spec = GraphSpec::from_lists(&[(1, &[3, 4, 5][..]), (2, &[3][..]), (3, &[4, 2][..])], 1, &[4, 5]);
//! let sys = RotorSystem::from_spec(&spec).unwrap();
//! let report = sys.analyze_hitting(&sys.initial_configuration()).unwrap();
//! assert_eq!(report.class_period, 3);
//! ```

pub mod analysis;
pub mod cli;
pub mod dot;
pub mod equivalence;
pub mod error;
pub mod format;
pub mod graph;
pub mod random;
pub mod rotor;
pub mod sandpile;
pub mod suites;
pub mod walk;

pub use analysis::{HittingReport, PermutationReport, ReversalReport, SymmetryReport};
pub use equivalence::{loop_erasure, PoppingScript, RotorCycle};
pub use error::{Error, Result};
pub use graph::{Arc, GraphSpec, Multigraph, VertexId};
pub use rotor::{Budgets, RotorConfiguration, RotorMechanism, RotorSystem};
pub use sandpile::{GroupElement, StableConfiguration};
pub use walk::{HittingStream, ParticleConfiguration, WalkMode, WalkTrace};
