//! The auxiliary digraph induced by a vertex: BFS level decomposition plus
//! directed arcs derived from the original edges, and per-vertex input/output
//! characteristic vectors.
//!
//! Construction rules: an edge whose endpoints sit on adjacent levels becomes
//! one arc pointing away from the root; an edge within a level becomes two
//! opposite arcs. Vertices outside the root's component are kept as a
//! distinguished unreached pseudo-line carrying the null characteristic, so
//! connected and disconnected graphs share one code path.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::graph::{Graph, GraphError, VertexId};
use crate::history::HistoryMap;

/// BFS distances from a root; `None` marks vertices in other components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAssignment {
    root: VertexId,
    levels: BTreeMap<VertexId, Option<u32>>,
}

impl LevelAssignment {
    pub fn root(&self) -> VertexId {
        self.root
    }

    /// Level of `v`, or `None` if `v` is unreached or unknown.
    pub fn level(&self, v: VertexId) -> Option<u32> {
        self.levels.get(&v).copied().flatten()
    }

    pub fn is_unreached(&self, v: VertexId) -> bool {
        matches!(self.levels.get(&v), Some(None))
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, Option<u32>)> + '_ {
        self.levels.iter().map(|(&v, &l)| (v, l))
    }
}

/// One vertex's invariant within a digraph: the sorted line numbers feeding
/// arcs into it (input) and receiving arcs from it (output), with
/// multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Characteristic {
    pub input: Vec<u32>,
    pub output: Vec<u32>,
}

impl Characteristic {
    pub fn new(mut input: Vec<u32>, mut output: Vec<u32>) -> Characteristic {
        input.sort_unstable();
        output.sort_unstable();
        Characteristic { input, output }
    }
}

/// The auxiliary digraph induced by `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryDigraph {
    root: VertexId,
    levels: LevelAssignment,
    arcs: BTreeSet<(VertexId, VertexId)>,
    lines: Vec<Vec<VertexId>>,
    unreached: Vec<VertexId>,
}

impl AuxiliaryDigraph {
    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn levels(&self) -> &LevelAssignment {
        &self.levels
    }

    pub fn level(&self, v: VertexId) -> Option<u32> {
        self.levels.level(v)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, from: VertexId, to: VertexId) -> bool {
        self.arcs.contains(&(from, to))
    }

    /// Per-level member lists, ascending by id within each line.
    pub fn lines(&self) -> &[Vec<VertexId>] {
        &self.lines
    }

    /// The unreached pseudo-line, ascending by id.
    pub fn unreached(&self) -> &[VertexId] {
        &self.unreached
    }

    /// All vertices the digraph was built over (reached and unreached).
    pub fn all_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.levels.iter().map(|(v, _)| v)
    }

    /// Plain-text rendering of lines and arcs, for fixture diffs.
    pub fn render_debug(&self) -> String {
        let mut out = format!("root {}\n", self.root);
        for (k, line) in self.lines.iter().enumerate() {
            let members: Vec<String> = line.iter().map(|v| v.to_string()).collect();
            writeln!(out, "line {}: {}", k, members.join(" ")).unwrap();
        }
        if !self.unreached.is_empty() {
            let members: Vec<String> = self.unreached.iter().map(|v| v.to_string()).collect();
            writeln!(out, "unreached: {}", members.join(" ")).unwrap();
        }
        let arcs: Vec<String> = self
            .arcs
            .iter()
            .map(|(a, b)| format!("{}->{}", a, b))
            .collect();
        writeln!(out, "arcs: {}", arcs.join(" ")).unwrap();
        out
    }
}

/// Exact BFS distances from `root`; neighbors are visited in ascending id
/// order. Vertices in other components are marked unreached.
pub fn bfs_levels(g: &Graph, root: VertexId) -> Result<LevelAssignment, GraphError> {
    if !g.contains_vertex(root) {
        return Err(GraphError::UnknownVertex(root));
    }
    let mut levels: BTreeMap<VertexId, Option<u32>> =
        g.vertices().map(|v| (v, None)).collect();
    levels.insert(root, Some(0));
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let next = levels[&v].unwrap() + 1;
        for &w in g.neighbors(v) {
            if levels[&w].is_none() {
                levels.insert(w, Some(next));
                queue.push_back(w);
            }
        }
    }
    Ok(LevelAssignment { root, levels })
}

/// Builds the auxiliary digraph induced by `root`.
pub fn build(g: &Graph, root: VertexId) -> Result<AuxiliaryDigraph, GraphError> {
    let levels = bfs_levels(g, root)?;
    let mut arcs = BTreeSet::new();
    for (a, b) in g.edges() {
        // An edge with exactly one reached endpoint cannot exist: BFS would
        // have reached the other. Both unreached: no arc.
        if let (Some(la), Some(lb)) = (levels.level(a), levels.level(b)) {
            if la < lb {
                arcs.insert((a, b));
            } else if lb < la {
                arcs.insert((b, a));
            } else {
                arcs.insert((a, b));
                arcs.insert((b, a));
            }
        }
    }

    let max_level = levels
        .iter()
        .filter_map(|(_, l)| l)
        .max()
        .map_or(0, |m| m as usize + 1);
    let mut lines = vec![Vec::new(); max_level];
    let mut unreached = Vec::new();
    for (v, level) in levels.iter() {
        match level {
            Some(k) => lines[k as usize].push(v),
            None => unreached.push(v),
        }
    }

    Ok(AuxiliaryDigraph {
        root,
        levels,
        arcs,
        lines,
        unreached,
    })
}

/// Per-vertex characteristics of a digraph. Reached vertices get their
/// sorted input/output line-number vectors; unreached vertices map to the
/// null characteristic (`None`).
pub fn characteristics(d: &AuxiliaryDigraph) -> BTreeMap<VertexId, Option<Characteristic>> {
    let mut inputs: BTreeMap<VertexId, Vec<u32>> = BTreeMap::new();
    let mut outputs: BTreeMap<VertexId, Vec<u32>> = BTreeMap::new();
    for (from, to) in d.arcs() {
        inputs
            .entry(to)
            .or_default()
            .push(d.level(from).expect("arc source is reached"));
        outputs
            .entry(from)
            .or_default()
            .push(d.level(to).expect("arc target is reached"));
    }
    d.all_vertices()
        .map(|v| {
            let c = if d.level(v).is_some() {
                Some(Characteristic::new(
                    inputs.remove(&v).unwrap_or_default(),
                    outputs.remove(&v).unwrap_or_default(),
                ))
            } else {
                None
            };
            (v, c)
        })
        .collect()
}

/// Vertices whose full history characteristic is shared by no other vertex
/// of the same digraph. Unreached vertices participate with their
/// null-floor histories; `histories` must cover every vertex of `d`.
pub fn unique_vertices(d: &AuxiliaryDigraph, histories: &HistoryMap) -> BTreeSet<VertexId> {
    let mut counts: BTreeMap<&crate::history::History, u32> = BTreeMap::new();
    for v in d.all_vertices() {
        *counts.entry(&histories[&v]).or_insert(0) += 1;
    }
    d.all_vertices()
        .filter(|v| counts[&histories[v]] == 1)
        .collect()
}
