//! Command-line surface. [`run_command`] is the whole program minus process
//! I/O so that it can be driven from tests.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::dot::export_dot;
use crate::error::{Error, Result};
use crate::format::{parse_instance, render_states, Instance};
use crate::graph::VertexId;
use crate::random::instance_rng;
use crate::rotor::{RotorConfiguration, RotorSystem};
use crate::suites::{self, Suite};
use crate::walk::WalkMode;

#[derive(Debug, Parser)]
#[command(
    name = "rotorwalk",
    version,
    about = "Rotor walks, hitting sequences and cycle pushing"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Override the per-walk step budget.
    #[arg(long, global = true)]
    pub step_budget: Option<u64>,
    /// Override the cycle-pushing budget.
    #[arg(long, global = true)]
    pub push_budget: Option<u64>,
    /// Override the class-orbit budget.
    #[arg(long, global = true)]
    pub orbit_budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Raw rotor walk and the per-walk paths γ_n.
    Walk {
        file: PathBuf,
        /// Number of walks from the source (default 3·D).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Hitting sequence t₁…t_n.
    Hit {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        /// Release antiparticles instead of particles.
        #[arg(long)]
        antiparticle: bool,
    },
    /// Class-orbit period, minimal period and fundamental word.
    Period { file: PathBuf },
    /// Canonical acyclic configuration after complete cycle pushing.
    Canonical { file: PathBuf },
    /// Enumerate the equivalence classes of rotor configurations.
    Classes { file: PathBuf },
    /// Identity element of the sandpile group.
    Identity { file: PathBuf },
    /// Order of g_s in the sandpile group.
    Order { file: PathBuf },
    /// Run a verification suite on an instance or on random instances.
    Verify {
        /// periodic, reversal, palindrome, repetitive, abelian or eqclass
        suite: Suite,
        file: Option<PathBuf>,
        /// Number of random instances to generate instead of reading FILE.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Block length for the repetitive suite.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Initial slots for the reversed system, e.g. `1:2,3:1` (reversal suite).
        #[arg(long)]
        reversed_state: Option<String>,
    },
    /// Graphviz rendering of the current rotors.
    ExportDot {
        file: PathBuf,
        /// Highlight the first rotor cycle, if any.
        #[arg(long)]
        highlight: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    text: String,
    json: Value,
    ok: bool,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                CommandOutput {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                CommandOutput {
                    code,
                    stdout: String::new(),
                    stderr: json!({"error": {"kind": "UsageError", "message": rendered.trim()}})
                        .to_string()
                        + "\n",
                }
            };
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&r.json).expect("json values serialize") + "\n"
            } else {
                r.text
            };
            CommandOutput {
                code: if r.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => CommandOutput {
            code: 1,
            stdout: String::new(),
            stderr: error_json(&e).to_string() + "\n",
        },
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut obj = json!({"kind": e.kind(), "message": e.to_string()});
    match e {
        Error::Parse { line, column, .. } => {
            obj["line"] = json!(line);
            obj["column"] = json!(column);
        }
        Error::Validation { line, inner } => {
            obj["line"] = json!(line);
            obj["cause"] = json!(inner.kind());
        }
        _ => {}
    }
    json!({ "error": obj })
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    }
}

fn load(cli: &Cli, path: &std::path::Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let mut inst = parse_instance(&text)?;
    let mut budgets = inst.system.budgets();
    budgets.steps = cli.step_budget.or(budgets.steps);
    budgets.pushes = cli.push_budget.or(budgets.pushes);
    budgets.orbit = cli.orbit_budget.or(budgets.orbit);
    inst.system = inst.system.with_budgets(budgets);
    Ok(inst)
}

fn labels(sys: &RotorSystem, vs: &[VertexId]) -> Vec<String> {
    vs.iter()
        .map(|&v| sys.graph().label(v).to_string())
        .collect()
}

fn slots_json(sys: &RotorSystem, rho: &RotorConfiguration) -> Value {
    let g = sys.graph();
    Value::Array(
        g.non_targets()
            .map(|v| json!({"vertex": g.label(v), "slot": rho.slot(v), "head": g.label(g.head(v, rho.slot(v)))}))
            .collect(),
    )
}

fn counts_text(sys: &RotorSystem, counts: &[u64]) -> String {
    let g = sys.graph();
    g.non_targets()
        .map(|v| format!("{}:{}", g.label(v), counts[v.0]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn counts_json(sys: &RotorSystem, counts: &[u64]) -> Value {
    let g = sys.graph();
    Value::Array(
        g.non_targets()
            .map(|v| json!({"vertex": g.label(v), "count": counts[v.0]}))
            .collect(),
    )
}

fn default_n(inst: &Instance, n: Option<usize>) -> usize {
    n.unwrap_or_else(|| match inst.system.class_orbit_period(&inst.config) {
        Ok(d) => 3 * d as usize,
        Err(_) => 30,
    })
}

fn parse_slot_list(sys: &RotorSystem, spec: &str) -> Result<RotorConfiguration> {
    let mut overrides = Vec::new();
    for (i, item) in spec.split(',').filter(|s| !s.trim().is_empty()).enumerate() {
        let bad = || Error::Parse {
            line: 1,
            column: i + 1,
            message: format!("expected `vertex:slot`, found {item:?}"),
        };
        let (v, slot) = item.trim().split_once(':').ok_or_else(bad)?;
        let slot: usize = slot.trim().parse().map_err(|_| bad())?;
        overrides.push((sys.graph().vertex(v.trim())?, slot));
    }
    sys.configuration(&overrides)
}

fn execute(cli: &Cli) -> Result<Rendered> {
    let ok = |text: String, json: Value| {
        Ok(Rendered {
            text,
            json,
            ok: true,
        })
    };
    match &cli.command {
        Command::Walk { file, n } => {
            let inst = load(cli, file)?;
            let sys = &inst.system;
            let n = default_n(&inst, *n);
            let stream = sys.hitting_stream(&inst.config, n, WalkMode::Particle)?;
            let raw = labels(sys, &stream.raw_walk());
            let gammas: Vec<Vec<String>> = stream
                .paths
                .iter()
                .map(|p| labels(sys, &p[..p.len() - 1]))
                .collect();
            let text = format!(
                "walk: {}\ngamma: {}\n",
                raw.join(" "),
                gammas
                    .iter()
                    .map(|g| g.join(" "))
                    .collect::<Vec<_>>()
                    .join(" | ")
            );
            ok(
                text,
                json!({"walk": raw, "gamma": gammas, "targets": labels(sys, &stream.targets)}),
            )
        }
        Command::Hit {
            file,
            n,
            antiparticle,
        } => {
            let inst = load(cli, file)?;
            let n = default_n(&inst, *n);
            let mode = if *antiparticle {
                WalkMode::Antiparticle
            } else {
                WalkMode::Particle
            };
            let stream = inst.system.hitting_stream(&inst.config, n, mode)?;
            let ts = labels(&inst.system, &stream.targets);
            ok(
                format!("{}\n", ts.join(" ")),
                json!({"mode": mode, "targets": ts}),
            )
        }
        Command::Period { file } => {
            let inst = load(cli, file)?;
            let rep = inst.system.analyze_hitting(&inst.config)?;
            let word = labels(&inst.system, &rep.word);
            let text = format!(
                "D={} p={} word={}\n",
                rep.class_period,
                rep.minimal_period,
                word.join(",")
            );
            Ok(Rendered {
                text,
                json: json!({
                    "class_period": rep.class_period,
                    "minimal_period": rep.minimal_period,
                    "word": word,
                    "periodic": rep.periodic,
                }),
                ok: rep.periodic,
            })
        }
        Command::Canonical { file } => {
            let inst = load(cli, file)?;
            let sys = &inst.system;
            let c = sys.canonical(&inst.config)?;
            ok(
                render_states(sys, &c, true),
                json!({"canonical": slots_json(sys, &c)}),
            )
        }
        Command::Classes { file } => {
            let inst = load(cli, file)?;
            let sys = &inst.system;
            let mut classes: BTreeMap<RotorConfiguration, usize> = BTreeMap::new();
            for rho in sys.all_configurations(crate::analysis::ENUMERATION_LIMIT)? {
                *classes.entry(sys.canonical(&rho)?).or_default() += 1;
            }
            let mut text = format!("classes={}\n", classes.len());
            let mut arr = Vec::new();
            for (i, (rep, size)) in classes.iter().enumerate() {
                let slots = counts_text(
                    sys,
                    &rep.slots().iter().map(|&s| s as u64).collect::<Vec<_>>(),
                );
                text.push_str(&format!(
                    "class {}: size={} acyclic={}\n",
                    i + 1,
                    size,
                    slots
                ));
                arr.push(json!({"size": size, "acyclic": slots_json(sys, rep)}));
            }
            ok(text, json!({"count": classes.len(), "classes": arr}))
        }
        Command::Identity { file } => {
            let inst = load(cli, file)?;
            let sys = &inst.system;
            let e = sys.identity();
            let counts = e.as_particles().counts();
            ok(
                format!("e = {}\n", counts_text(sys, counts)),
                json!({"identity": counts_json(sys, counts)}),
            )
        }
        Command::Order { file } => {
            let inst = load(cli, file)?;
            let sys = &inst.system;
            let g = sys.g_s();
            let order = sys.order_of(&g);
            let counts = g.as_particles().counts();
            ok(
                format!("order(g_s)={order}\ng_s = {}\n", counts_text(sys, counts)),
                json!({"order": order, "g_s": counts_json(sys, counts)}),
            )
        }
        Command::Verify {
            suite,
            file,
            random,
            seed,
            m,
            reversed_state,
        } => {
            let outcome = match (random, file) {
                (Some(count), _) => suites::run_random(*suite, *count, seed.unwrap_or(0), *m),
                (None, Some(path)) => {
                    let inst = load(cli, path)?;
                    let seed = seed.or(inst.seed).unwrap_or(0);
                    let mut rng = instance_rng(seed, 0);
                    let failure = match (suite, reversed_state) {
                        (Suite::Reversal, Some(spec)) => {
                            let (rev, _) = inst.system.flip(&inst.config);
                            let start = parse_slot_list(&rev, spec)?;
                            inst.system
                                .verify_reversal(&inst.config, Some(&start))?
                                .counterexample
                        }
                        _ => suites::check_instance(
                            *suite,
                            &inst.system,
                            &inst.config,
                            *m,
                            &mut rng,
                        )?,
                    };
                    suites::SuiteOutcome {
                        suite: *suite,
                        passed: usize::from(failure.is_none()),
                        total: 1,
                        failures: failure.into_iter().collect(),
                    }
                }
                (None, None) => {
                    return Err(Error::Parse {
                        line: 0,
                        column: 0,
                        message: "verify needs an instance file or --random N".into(),
                    })
                }
            };
            let mut text = format!("{outcome}\n");
            for f in &outcome.failures {
                text.push_str(&format!("  {f}\n"));
            }
            Ok(Rendered {
                text,
                json: serde_json::to_value(&outcome).expect("outcome serializes"),
                ok: outcome.all_passed(),
            })
        }
        Command::ExportDot {
            file,
            highlight,
            output,
        } => {
            let inst = load(cli, file)?;
            let sys = &inst.system;
            let cycle = if *highlight {
                sys.find_cycle(&inst.config)
            } else {
                None
            };
            let dot = export_dot(sys, &inst.config, cycle.as_ref());
            match output {
                Some(path) => {
                    std::fs::write(path, &dot).map_err(|e| io_error(path, e))?;
                    ok(
                        format!("wrote {}\n", path.display()),
                        json!({"output": path.display().to_string()}),
                    )
                }
                None => ok(dot.clone(), json!({"dot": dot})),
            }
        }
    }
}
