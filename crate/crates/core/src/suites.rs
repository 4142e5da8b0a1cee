//! Named verification suites run over single instances or seeded random batches.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::random::{self, InstanceShape, MechanismKind};
use crate::rotor::{RotorConfiguration, RotorSystem};

/// Product of degrees above which the eqclass suite skips an instance.
pub const EQCLASS_LIMIT: u128 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Periodic,
    Reversal,
    Palindrome,
    Repetitive,
    Abelian,
    Eqclass,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Periodic,
        Suite::Reversal,
        Suite::Palindrome,
        Suite::Repetitive,
        Suite::Abelian,
        Suite::Eqclass,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Periodic => "periodic",
            Suite::Reversal => "reversal",
            Suite::Palindrome => "palindrome",
            Suite::Repetitive => "repetitive",
            Suite::Abelian => "abelian",
            Suite::Eqclass => "eqclass",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.all_passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}/{}", self.passed, self.total)
    }
}

/// Checks one instance. `Ok(None)` is a pass, `Ok(Some(reason))` a failure.
pub fn check_instance<R: Rng>(
    suite: Suite,
    sys: &RotorSystem,
    rho0: &RotorConfiguration,
    m: usize,
    rng: &mut R,
) -> Result<Option<String>> {
    let failure = match suite {
        Suite::Periodic => {
            let rep = sys.analyze_hitting(rho0)?;
            let order = sys.order_of(&sys.g_s());
            if !rep.periodic {
                Some(format!(
                    "hitting prefix is not {}-periodic",
                    rep.class_period
                ))
            } else if order != rep.class_period {
                Some(format!(
                    "class period {} but order of g_s is {order}",
                    rep.class_period
                ))
            } else {
                None
            }
        }
        Suite::Reversal => sys.verify_reversal(rho0, None)?.counterexample,
        Suite::Palindrome => sys.verify_palindromic(rho0)?.counterexample,
        Suite::Repetitive => sys.verify_m_repetitive(rho0, m)?.counterexample,
        Suite::Abelian => {
            let total = rng.gen_range(1..=10);
            let sigma = random::random_particles(rng, sys, total);
            let reference = sys.fire_to_completion(&sigma, rho0, |_| 0)?;
            let mut failure = None;
            for k in 0..10 {
                let run =
                    sys.fire_to_completion(&sigma, rho0, |occ| rng.gen_range(0..occ.len()))?;
                if run != reference {
                    failure = Some(format!("firing order {k} disagrees for σ = {sigma}"));
                    break;
                }
            }
            failure
        }
        Suite::Eqclass => check_equivalence_classes(sys)?,
    };
    Ok(failure)
}

fn check_equivalence_classes(sys: &RotorSystem) -> Result<Option<String>> {
    if sys.configuration_count() > EQCLASS_LIMIT {
        return Ok(None);
    }
    let e = sys.identity();
    let mut classes = HashSet::new();
    let mut acyclic = 0usize;
    for rho in sys.all_configurations(EQCLASS_LIMIT)? {
        let canonical = sys.canonical(&rho)?;
        let via_identity = sys.act(e.as_particles(), &rho)?;
        if canonical != via_identity {
            return Ok(Some(format!(
                "cycle pushing gives {canonical} but eρ = {via_identity} for ρ = {rho}"
            )));
        }
        let is_acyclic = sys.is_acyclic(&rho);
        if is_acyclic != (via_identity == rho) {
            return Ok(Some(format!("acyclicity and eρ = ρ disagree at ρ = {rho}")));
        }
        acyclic += usize::from(is_acyclic);
        classes.insert(canonical);
    }
    let recurrent = sys.recurrent_configurations(EQCLASS_LIMIT)?.len();
    if classes.len() != acyclic || acyclic != recurrent {
        return Ok(Some(format!(
            "{} classes, {acyclic} acyclic, {recurrent} recurrent",
            classes.len()
        )));
    }
    Ok(None)
}

/// Mechanism family and initial configuration used for a suite's random instances.
pub fn random_instance<R: Rng>(
    suite: Suite,
    m: usize,
    rng: &mut R,
) -> (RotorSystem, RotorConfiguration) {
    let shape = InstanceShape::default();
    match suite {
        Suite::Palindrome => {
            let sys = random::random_system(rng, &shape, MechanismKind::Palindromic);
            let rho = random::random_configuration_where(rng, &sys, |v, r| {
                sys.rotor_is_palindromic(r, v)
            });
            (sys, rho)
        }
        Suite::Repetitive => {
            let sys = random::random_system(rng, &shape, MechanismKind::Repetitive(m));
            let rho = random::random_configuration_where(rng, &sys, |v, r| {
                sys.rotor_is_repetitive(r, v, m)
            });
            (sys, rho)
        }
        _ => {
            let sys = random::random_system(rng, &shape, MechanismKind::Any);
            let rho = random::random_configuration(rng, &sys);
            (sys, rho)
        }
    }
}

/// Runs `suite` on `count` random instances derived from `seed`.
pub fn run_random(suite: Suite, count: usize, seed: u64, m: usize) -> SuiteOutcome {
    let mut outcome = SuiteOutcome {
        suite,
        passed: 0,
        total: count,
        failures: Vec::new(),
    };
    for i in 0..count {
        let mut rng = random::instance_rng(seed, i as u64);
        let (sys, rho) = random_instance(suite, m, &mut rng);
        match check_instance(suite, &sys, &rho, m, &mut rng) {
            Ok(None) => outcome.passed += 1,
            Ok(Some(reason)) => outcome.failures.push(format!("instance {i}: {reason}")),
            Err(e) => outcome.failures.push(format!("instance {i}: {e}")),
        }
    }
    outcome
}
