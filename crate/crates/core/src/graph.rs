//! Directed multigraphs whose arcs are defined by rotor mechanisms.
//!
//! Every non-target vertex lists its out-arcs in mechanism order; slot `i`
//! of that list *is* the arc `(v, i)`. Targets carry no explicit arcs. For the
//! connectivity check each target is treated as having one implicit arc back
//! to the source, which is never traversed by a walk.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense 0-based vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An arc identified by its tail and its 1-based position in the tail's mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub tail: VertexId,
    pub slot: usize,
    pub head: VertexId,
}

/// User-facing description of a graph: labels, source, targets and one
/// ordered head list per non-target vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub source: String,
    pub targets: Vec<String>,
    pub mechanisms: Vec<(String, Vec<String>)>,
}

impl GraphSpec {
    /// Builds a spec from mechanism lists, inferring the vertex set from every
    /// label mentioned. Labels are ordered numerically when they all parse as
    /// integers, lexicographically otherwise.
    pub fn from_lists<L: ToString>(mechanisms: &[(L, &[L])], source: L, targets: &[L]) -> Self {
        let mechanisms: Vec<(String, Vec<String>)> = mechanisms
            .iter()
            .map(|(v, heads)| {
                (
                    v.to_string(),
                    heads.iter().map(ToString::to_string).collect(),
                )
            })
            .collect();
        let source = source.to_string();
        let targets: Vec<String> = targets.iter().map(ToString::to_string).collect();
        let mut spec = GraphSpec {
            vertices: Vec::new(),
            source,
            targets,
            mechanisms,
        };
        spec.vertices = spec.mentioned_labels();
        spec
    }

    /// Every label appearing anywhere in the spec, sorted as in [`GraphSpec::from_lists`].
    pub fn mentioned_labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = std::iter::once(&self.source)
            .chain(self.targets.iter())
            .chain(
                self.mechanisms
                    .iter()
                    .flat_map(|(v, hs)| std::iter::once(v).chain(hs)),
            )
            .cloned()
            .collect();
        sort_labels(&mut labels);
        labels.dedup();
        labels
    }
}

pub(crate) fn sort_labels(labels: &mut [String]) {
    if labels.iter().all(|l| l.parse::<i64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<i64>().unwrap());
    } else {
        labels.sort();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    source: VertexId,
    targets: Vec<VertexId>,
    is_target: Vec<bool>,
    heads: Vec<Vec<VertexId>>,
}

impl Multigraph {
    /// Validates `spec` and builds the graph, including the strong connectivity check.
    pub fn build(spec: &GraphSpec) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, label) in spec.vertices.iter().enumerate() {
            if index.insert(label.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(label.to_string()))
        };

        let n = spec.vertices.len();
        if spec.targets.is_empty() {
            return Err(Error::EmptyTargets);
        }
        let mut is_target = vec![false; n];
        for t in &spec.targets {
            is_target[lookup(t)?.0] = true;
        }
        let source = lookup(&spec.source)?;
        if is_target[source.0] {
            return Err(Error::SourceIsTarget(spec.source.clone()));
        }

        let mut heads: Vec<Option<Vec<VertexId>>> = vec![None; n];
        for (v, hs) in &spec.mechanisms {
            let vid = lookup(v)?;
            if heads[vid.0].is_some() {
                return Err(Error::DuplicateMechanism(v.clone()));
            }
            if is_target[vid.0] && !hs.is_empty() {
                return Err(Error::TargetHasArcs(v.clone()));
            }
            let resolved = hs.iter().map(|h| lookup(h)).collect::<Result<Vec<_>>>()?;
            heads[vid.0] = Some(resolved);
        }
        let heads: Vec<Vec<VertexId>> = heads.into_iter().map(Option::unwrap_or_default).collect();
        for (i, hs) in heads.iter().enumerate() {
            if !is_target[i] && hs.is_empty() {
                return Err(Error::DanglingVertex(spec.vertices[i].clone()));
            }
        }

        let mut targets: Vec<VertexId> = (0..n).filter(|&i| is_target[i]).map(VertexId).collect();
        targets.sort();
        let graph = Multigraph {
            labels: spec.vertices.clone(),
            index,
            source,
            targets,
            is_target,
            heads,
        };
        if let Some((from, to)) = graph.unreachable_pair() {
            return Err(Error::NotStronglyConnected {
                from: graph.label(from).to_string(),
                to: graph.label(to).to_string(),
            });
        }
        Ok(graph)
    }

    /// Reconstructs the spec this graph was built from.
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.labels.clone(),
            source: self.label(self.source).to_string(),
            targets: self
                .targets
                .iter()
                .map(|&t| self.label(t).to_string())
                .collect(),
            mechanisms: self
                .non_targets()
                .map(|v| {
                    let hs = self.heads[v.0]
                        .iter()
                        .map(|&h| self.label(h).to_string())
                        .collect();
                    (self.label(v).to_string(), hs)
                })
                .collect(),
        }
    }

    /// Same vertices, source and targets with every head list reversed.
    pub(crate) fn with_reversed_mechanisms(&self) -> Self {
        let mut g = self.clone();
        for hs in &mut g.heads {
            hs.reverse();
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len()).map(VertexId)
    }

    /// The non-target vertices V₀ in ascending id order.
    pub fn non_targets(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(move |v| !self.is_target[v.0])
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn is_target(&self, v: VertexId) -> bool {
        self.is_target[v.0]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Out-degree d(v); zero for targets.
    pub fn degree(&self, v: VertexId) -> usize {
        self.heads[v.0].len()
    }

    /// Number of arcs from `v` to `w`, d(v, w).
    pub fn multiplicity(&self, v: VertexId, w: VertexId) -> usize {
        self.heads[v.0].iter().filter(|&&h| h == w).count()
    }

    /// Heads of the out-arcs of `v` in mechanism order.
    pub fn heads(&self, v: VertexId) -> &[VertexId] {
        &self.heads[v.0]
    }

    /// Head of the arc in 1-based `slot` of `v`'s mechanism.
    pub fn head(&self, v: VertexId, slot: usize) -> VertexId {
        self.heads[v.0][slot - 1]
    }

    pub fn arc(&self, v: VertexId, slot: usize) -> Arc {
        Arc {
            tail: v,
            slot,
            head: self.head(v, slot),
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.non_targets()
            .flat_map(move |v| (1..=self.degree(v)).map(move |slot| self.arc(v, slot)))
    }

    pub fn total_degree(&self) -> usize {
        self.heads.iter().map(Vec::len).sum()
    }

    /// Successors including the implicit target → source arc.
    fn successors(&self, v: VertexId) -> Vec<VertexId> {
        if self.is_target[v.0] {
            vec![self.source]
        } else {
            self.heads[v.0].clone()
        }
    }

    fn reach(&self, start: VertexId, reverse: bool) -> Vec<bool> {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for v in self.vertices() {
            for w in self.successors(v) {
                if reverse {
                    adj[w.0].push(v);
                } else {
                    adj[v.0].push(w);
                }
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([start]);
        seen[start.0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v.0] {
                if !seen[w.0] {
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// An ordered pair `(from, to)` with no directed path from `from` to `to`, if any.
    pub fn unreachable_pair(&self) -> Option<(VertexId, VertexId)> {
        let forward = self.reach(self.source, false);
        if let Some(v) = self.vertices().find(|v| !forward[v.0]) {
            return Some((self.source, v));
        }
        let backward = self.reach(self.source, true);
        self.vertices()
            .find(|v| !backward[v.0])
            .map(|v| (v, self.source))
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.unreachable_pair().is_none()
    }

    /// Distance from each vertex to the target set along explicit arcs
    /// (0 for targets). Finite for every vertex of a valid graph.
    pub(crate) fn target_distances(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &t in &self.targets {
            dist[t.0] = 0;
            queue.push_back(t);
        }
        let mut preds = vec![Vec::new(); n];
        for v in self.non_targets() {
            for &w in &self.heads[v.0] {
                preds[w.0].push(v);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &v in &preds[w.0] {
                if dist[v.0] == usize::MAX {
                    dist[v.0] = dist[w.0] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Checks strong connectivity of a raw spec without building the graph.
///
/// Returns `false` for specs that fail any other validation step too.
pub fn is_strongly_connected(spec: &GraphSpec) -> bool {
    match Multigraph::build(spec) {
        Ok(_) => true,
        Err(Error::NotStronglyConnected { .. }) => false,
        Err(_) => false,
    }
}
