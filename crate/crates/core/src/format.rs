//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! vertices: 1 2 3 4 5        (optional; inferred from the other lines)
//! source: 1
//! targets: 4 5
//! rotor 1: 3 4 5              (heads in mechanism order)
//! rotor 2: 3
//! rotor 3: 4 2
//! state 1: 2                  (retrospective slot, 1-based; default d(v))
//! seed: 7
//! step-budget: 10000
//! push-budget: 10000
//! orbit-budget: 10000
//! ```
//!
//! A `rotor` line for a target is accepted only when every head is the
//! source; such lines describe the implicit return arc and are dropped.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{sort_labels, GraphSpec};
use crate::rotor::{Budgets, RotorConfiguration, RotorSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub system: RotorSystem,
    pub config: RotorConfiguration,
    pub seed: Option<u64>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(s: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(b)) => {
                out.push(Token {
                    text: &s[b..i],
                    column: offset + b + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_number<T: std::str::FromStr>(tok: &Token<'_>, line: usize) -> Result<T> {
    tok.text.parse().map_err(|_| {
        parse_err(
            line,
            tok.column,
            format!("expected a non-negative integer, found {:?}", tok.text),
        )
    })
}

#[derive(Default)]
struct Draft {
    vertices: Option<(usize, Vec<String>)>,
    source: Option<(usize, String)>,
    targets: Option<(usize, Vec<String>)>,
    rotors: Vec<(usize, String, Vec<String>)>,
    states: Vec<(usize, usize, String, usize)>,
    seed: Option<u64>,
    budgets: Budgets,
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut draft = Draft::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(parse_err(line, col, "expected `key: value`"));
        };
        let key = tokens(&content[..colon], 0);
        let values = tokens(&content[colon + 1..], colon + 1);
        let Some(first) = key.first() else {
            return Err(parse_err(line, colon + 1, "missing key before `:`"));
        };
        let single_key = |name: &str| -> Result<()> {
            if key.len() != 1 {
                return Err(parse_err(
                    line,
                    key[1].column,
                    format!("unexpected token after `{name}`"),
                ));
            }
            Ok(())
        };
        let one_value = |name: &str| -> Result<&Token<'_>> {
            match values.as_slice() {
                [v] => Ok(v),
                [] => Err(parse_err(
                    line,
                    colon + 2,
                    format!("`{name}` needs a value"),
                )),
                [_, extra, ..] => Err(parse_err(
                    line,
                    extra.column,
                    format!("`{name}` takes one value"),
                )),
            }
        };
        let owned = |ts: &[Token<'_>]| ts.iter().map(|t| t.text.to_string()).collect::<Vec<_>>();
        match first.text {
            "vertices" => {
                single_key("vertices")?;
                draft.vertices = Some((line, owned(&values)));
            }
            "source" => {
                single_key("source")?;
                draft.source = Some((line, one_value("source")?.text.to_string()));
            }
            "targets" => {
                single_key("targets")?;
                draft.targets = Some((line, owned(&values)));
            }
            "rotor" | "state" => {
                let [_, vertex] = key.as_slice() else {
                    let col = key
                        .get(2)
                        .map_or(first.column + first.text.len(), |t| t.column);
                    return Err(parse_err(
                        line,
                        col,
                        format!("expected `{} <vertex>:`", first.text),
                    ));
                };
                if first.text == "rotor" {
                    draft
                        .rotors
                        .push((line, vertex.text.to_string(), owned(&values)));
                } else {
                    let tok = one_value("state")?;
                    let slot = parse_number(tok, line)?;
                    draft
                        .states
                        .push((line, tok.column, vertex.text.to_string(), slot));
                }
            }
            "seed" => {
                single_key("seed")?;
                draft.seed = Some(parse_number(one_value("seed")?, line)?);
            }
            "step-budget" | "push-budget" | "orbit-budget" => {
                single_key(first.text)?;
                let n = Some(parse_number(one_value(first.text)?, line)?);
                match first.text {
                    "step-budget" => draft.budgets.steps = n,
                    "push-budget" => draft.budgets.pushes = n,
                    _ => draft.budgets.orbit = n,
                }
            }
            other => {
                return Err(parse_err(
                    line,
                    first.column,
                    format!("unknown key {other:?}"),
                ))
            }
        }
    }
    draft.finish()
}

impl Draft {
    fn finish(self) -> Result<Instance> {
        let Some((source_line, source)) = self.source else {
            return Err(parse_err(1, 1, "missing `source:` line"));
        };
        let (targets_line, targets) = self.targets.unwrap_or((0, Vec::new()));
        if targets.is_empty() {
            return Err(Error::validation(
                Some(targets_line).filter(|&l| l > 0),
                Error::EmptyTargets,
            ));
        }
        let mut mechanisms = Vec::new();
        for (line, v, heads) in self.rotors {
            if targets.contains(&v) {
                if heads.iter().all(|h| *h == source) {
                    continue;
                }
                return Err(Error::validation(Some(line), Error::TargetHasArcs(v)));
            }
            mechanisms.push((line, v, heads));
        }
        let mut spec = GraphSpec {
            vertices: Vec::new(),
            source,
            targets,
            mechanisms: mechanisms
                .iter()
                .map(|(_, v, hs)| (v.clone(), hs.clone()))
                .collect(),
        };
        spec.vertices = match self.vertices {
            Some((_, vs)) => vs,
            None => {
                let mut vs = spec.mentioned_labels();
                sort_labels(&mut vs);
                vs
            }
        };
        let graph_line = |err: &Error| -> Option<usize> {
            match err {
                Error::DanglingVertex(_) | Error::NotStronglyConnected { .. } => None,
                Error::SourceIsTarget(_) => Some(source_line),
                Error::EmptyTargets => Some(targets_line),
                Error::DuplicateMechanism(v) => mechanisms
                    .iter()
                    .filter(|(_, w, _)| w == v)
                    .nth(1)
                    .map(|m| m.0),
                Error::UnknownVertex(v) => mechanisms
                    .iter()
                    .find(|(_, w, hs)| w == v || hs.contains(v))
                    .map(|m| m.0)
                    .or(Some(source_line)),
                _ => None,
            }
        };
        let system = RotorSystem::from_spec(&spec)
            .map_err(|e| Error::validation(graph_line(&e), e))?
            .with_budgets(self.budgets);

        let mut overrides = Vec::new();
        for (line, _col, v, slot) in &self.states {
            let vid = system
                .graph()
                .vertex(v)
                .map_err(|e| Error::validation(Some(*line), e))?;
            system
                .configuration(&[(vid, *slot)])
                .map_err(|e| Error::validation(Some(*line), e))?;
            overrides.push((vid, *slot));
        }
        let config = system.configuration(&overrides)?;
        Ok(Instance {
            system,
            config,
            seed: self.seed,
        })
    }
}

/// Renders an instance so that [`parse_instance`] reproduces it exactly.
pub fn render_instance(instance: &Instance) -> String {
    let sys = &instance.system;
    let g = sys.graph();
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", g.labels().join(" "));
    let _ = writeln!(out, "source: {}", g.label(g.source()));
    let targets: Vec<&str> = g.targets().iter().map(|&t| g.label(t)).collect();
    let _ = writeln!(out, "targets: {}", targets.join(" "));
    for v in g.non_targets() {
        let heads: Vec<&str> = g.heads(v).iter().map(|&h| g.label(h)).collect();
        let _ = writeln!(out, "rotor {}: {}", g.label(v), heads.join(" "));
    }
    out.push_str(&render_states(sys, &instance.config, false));
    if let Some(seed) = instance.seed {
        let _ = writeln!(out, "seed: {seed}");
    }
    let b = sys.budgets();
    for (name, value) in [
        ("step-budget", b.steps),
        ("push-budget", b.pushes),
        ("orbit-budget", b.orbit),
    ] {
        if let Some(n) = value {
            let _ = writeln!(out, "{name}: {n}");
        }
    }
    out
}

/// `state v: i` lines; with `all` false only slots differing from d(v) are written.
pub fn render_states(sys: &RotorSystem, rho: &RotorConfiguration, all: bool) -> String {
    let g = sys.graph();
    let mut out = String::new();
    for v in g.non_targets() {
        if all || rho.slot(v) != g.degree(v) {
            let _ = writeln!(out, "state {}: {}", g.label(v), rho.slot(v));
        }
    }
    out
}
