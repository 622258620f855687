//! The peeling matcher: per-round partner search over auxiliary digraphs,
//! unique-vertex pair extraction, and independent verification of any
//! produced mapping.
//!
//! A round picks the smallest live pivot in Q, builds its digraph, then scans
//! the live vertices of S in ascending id order for the first one whose
//! digraph is positionally equivalent under full histories. All unique
//! vertices of the two digraphs are paired off, recorded, and deleted. The
//! verdict is gated: `Isomorphic` is only ever returned for a mapping that
//! passed the edge-by-edge check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::digraph::{build, characteristics, unique_vertices, AuxiliaryDigraph};
use crate::graph::{delete_vertices, precheck, Graph, VertexId};
use crate::history::{
    positionally_equivalent_with_trial, push_floors, History, HistoryMap,
};

/// Failure handling for an exhausted partner search.
///
/// `Faithful` reproduces the source algorithm verbatim (exhaustion means "not
/// isomorphic"); `Cautious` downgrades exhaustion to `Unknown`; `Retry`
/// re-attempts the round with every alternative live pivot before giving up
/// with `Unknown`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Faithful,
    Cautious,
    Retry,
}

/// Ordered set of (vertex in G, vertex in H) pairs being built into the
/// bijection.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Mapping {
    pairs: Vec<(VertexId, VertexId)>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MappingParseError {
    #[error("line {line}: malformed mapping line {text:?}")]
    MalformedLine { line: usize, text: String },
}

impl Mapping {
    pub fn new() -> Mapping {
        Mapping::default()
    }

    pub fn from_pairs(pairs: Vec<(VertexId, VertexId)>) -> Mapping {
        Mapping { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn image_of(&self, v: VertexId) -> Option<VertexId> {
        self.pairs.iter().find(|&&(a, _)| a == v).map(|&(_, b)| b)
    }

    /// True iff no vertex appears twice on either side.
    pub fn is_injective(&self) -> bool {
        let lefts: BTreeSet<_> = self.pairs.iter().map(|&(a, _)| a).collect();
        let rights: BTreeSet<_> = self.pairs.iter().map(|&(_, b)| b).collect();
        lefts.len() == self.pairs.len() && rights.len() == self.pairs.len()
    }

    fn extend(&mut self, pairs: &[(VertexId, VertexId)]) {
        self.pairs.extend_from_slice(pairs);
    }

    /// Parses `"v u"` lines; `#` comments and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Mapping, MappingParseError> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_ascii_whitespace();
            let parsed = (|| {
                let a: u32 = tokens.next()?.parse().ok()?;
                let b: u32 = tokens.next()?.parse().ok()?;
                if tokens.next().is_some() {
                    return None;
                }
                Some((VertexId(a), VertexId(b)))
            })();
            match parsed {
                Some(pair) => pairs.push(pair),
                None => {
                    return Err(MappingParseError::MalformedLine {
                        line: i + 1,
                        text: line.to_string(),
                    })
                }
            }
        }
        Ok(Mapping { pairs })
    }

    /// One `"v u"` line per pair, in insertion order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (a, b) in &self.pairs {
            out.push_str(&format!("{} {}\n", a, b));
        }
        out
    }
}

/// Final outcome of a matcher run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Isomorphic(Mapping),
    NotIsomorphic,
    Unknown,
}

/// `Decision` without the mapping payload, for report tallies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecisionKind {
    Isomorphic,
    NotIsomorphic,
    Unknown,
}

impl Decision {
    pub fn kind(&self) -> DecisionKind {
        match self {
            Decision::Isomorphic(_) => DecisionKind::Isomorphic,
            Decision::NotIsomorphic => DecisionKind::NotIsomorphic,
            Decision::Unknown => DecisionKind::Unknown,
        }
    }
}

impl fmt::Display for DecisionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DecisionKind::Isomorphic => "isomorphic",
            DecisionKind::NotIsomorphic => "not-isomorphic",
            DecisionKind::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Which rule produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// Peeling completed and the mapping passed verification.
    Verified,
    /// Vertex counts, edge counts, or degree vectors differ.
    PrecheckFailed,
    /// A round exhausted its partner scan (and, in retry mode, every
    /// alternative pivot).
    SearchExhausted,
    /// Peeling completed but the mapping failed the edge check; the verdict
    /// is downgraded to `Unknown` and flagged as a counterexample.
    VerificationFailed,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Reason::Verified => "completed; mapping verified",
            Reason::PrecheckFailed => "precheck failed (counts or degree vectors differ)",
            Reason::SearchExhausted => "partner search exhausted",
            Reason::VerificationFailed => "completed but mapping failed verification",
        };
        f.write_str(s)
    }
}

/// One attempted round: the pivot, the partner found (or none), the
/// candidates rejected before it, the pairs extracted, and the live count
/// after the round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrace {
    pub round: usize,
    pub pivot: VertexId,
    pub partner: Option<VertexId>,
    pub rejected: Vec<VertexId>,
    pub extracted: Vec<(VertexId, VertexId)>,
    pub remaining: usize,
}

impl fmt::Display for RoundTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let partner = match self.partner {
            Some(u) => u.to_string(),
            None => "FAIL".to_string(),
        };
        let rejected: Vec<String> = self.rejected.iter().map(|v| v.to_string()).collect();
        let extracted: Vec<String> = self
            .extracted
            .iter()
            .map(|(v, u)| format!("({},{})", v, u))
            .collect();
        write!(
            f,
            "round {}: pivot {}; partner {}; rejected [{}]; extracted [{}]; remaining {}",
            self.round,
            self.pivot,
            partner,
            rejected.join(" "),
            extracted.join(" "),
            self.remaining
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    pub reason: Reason,
    pub trace: Vec<RoundTrace>,
}

impl Verdict {
    pub fn render_trace(&self) -> String {
        let mut out = String::new();
        for line in &self.trace {
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out.push_str(&format!("verdict: {} ({})\n", self.decision.kind(), self.reason));
        out
    }
}

/// Live remainders of both graphs plus the per-vertex histories and the
/// mapping built so far. `|V_Q| = |V_S| = n` holds after every round.
#[derive(Clone, Debug)]
pub struct MatchState {
    q: Graph,
    s: Graph,
    hq: HistoryMap,
    hs: HistoryMap,
    p: Mapping,
    n: usize,
}

impl MatchState {
    pub fn new(g: Graph, h: Graph) -> MatchState {
        let hq: HistoryMap = g.vertices().map(|v| (v, History::new())).collect();
        let hs: HistoryMap = h.vertices().map(|v| (v, History::new())).collect();
        let n = g.vertex_count();
        MatchState {
            q: g,
            s: h,
            hq,
            hs,
            p: Mapping::new(),
            n,
        }
    }

    pub fn live_count(&self) -> usize {
        self.n
    }

    pub fn mapping(&self) -> &Mapping {
        &self.p
    }

    pub fn q(&self) -> &Graph {
        &self.q
    }

    pub fn s(&self) -> &Graph {
        &self.s
    }

    /// Pushes the round's floors, extracts the unique pairs, and deletes them
    /// from both sides. Returns the extracted pairs.
    fn commit(&mut self, found: PartnerMatch) -> Vec<(VertexId, VertexId)> {
        push_floors(&mut self.hq, &characteristics(&found.dq));
        push_floors(&mut self.hs, &characteristics(&found.ds));
        let extracted = extract_unique_pairs(&found.dq, &found.ds, &self.hq, &self.hs);
        self.p.extend(&extracted);
        let victims_q: BTreeSet<VertexId> = extracted.iter().map(|&(v, _)| v).collect();
        let victims_s: BTreeSet<VertexId> = extracted.iter().map(|&(_, u)| u).collect();
        self.q = delete_vertices(&self.q, &victims_q).expect("extracted vertices are live");
        self.s = delete_vertices(&self.s, &victims_s).expect("extracted vertices are live");
        for v in &victims_q {
            self.hq.remove(v);
        }
        for u in &victims_s {
            self.hs.remove(u);
        }
        self.n -= extracted.len();
        extracted
    }
}

/// Deterministic pivot choice: the live vertex of Q with the smallest
/// original id.
pub fn choose_pivot(state: &MatchState) -> VertexId {
    state.q.min_vertex().expect("choose_pivot requires live vertices")
}

/// A successful partner search: the pivot digraph, the accepted partner's
/// digraph, and the ids rejected before it.
#[derive(Clone, Debug)]
pub struct PartnerMatch {
    pub partner: VertexId,
    pub dq: AuxiliaryDigraph,
    pub ds: AuxiliaryDigraph,
    pub rejected: Vec<VertexId>,
}

/// Builds the pivot's digraph once, then scans the live vertices of S in
/// ascending id order, pushing a trial floor per candidate. Returns the
/// first positionally equivalent candidate, or the full rejected list if the
/// scan is exhausted.
pub fn find_partner(state: &MatchState, pivot: VertexId) -> Result<PartnerMatch, Vec<VertexId>> {
    let dq = build(&state.q, pivot).expect("pivot is live");
    let cq = characteristics(&dq);
    let mut rejected = Vec::new();
    for u in state.s.vertices() {
        let ds = build(&state.s, u).expect("candidate is live");
        let cs = characteristics(&ds);
        if positionally_equivalent_with_trial(&dq, &ds, &cq, &cs, &state.hq, &state.hs) {
            return Ok(PartnerMatch {
                partner: u,
                dq,
                ds,
                rejected,
            });
        }
        rejected.push(u);
    }
    Err(rejected)
}

/// Pairs each unique vertex of `dq` with the unique vertex of `ds` carrying
/// an equal full history on the same line. Requires positional equivalence;
/// an unpairable unique set signals an equivalence bug and panics.
pub fn extract_unique_pairs(
    dq: &AuxiliaryDigraph,
    ds: &AuxiliaryDigraph,
    hq: &HistoryMap,
    hs: &HistoryMap,
) -> Vec<(VertexId, VertexId)> {
    let uq = unique_vertices(dq, hq);
    let us = unique_vertices(ds, hs);
    assert_eq!(
        uq.len(),
        us.len(),
        "unique sets of positionally equivalent digraphs must balance"
    );
    let mut by_history: BTreeMap<&History, VertexId> =
        us.iter().map(|&u| (&hs[&u], u)).collect();
    assert_eq!(by_history.len(), us.len());
    uq.into_iter()
        .map(|v| {
            let u = by_history
                .remove(&hq[&v])
                .unwrap_or_else(|| panic!("no unique partner with equal history for {v}"));
            assert_eq!(
                dq.level(v),
                ds.level(u),
                "paired unique vertices must sit on the same line"
            );
            (v, u)
        })
        .collect()
}

/// Diagnostic grouping of the non-unique vertices by (line, full history):
/// the classes of the virtual bipartite graph connecting each Q vertex to
/// the S vertices it could still map to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateGroup {
    /// Line number, or `None` for the unreached pseudo-line.
    pub level: Option<u32>,
    pub q_members: Vec<VertexId>,
    pub s_members: Vec<VertexId>,
}

type GroupKey<'a> = (Option<u32>, &'a History);
type GroupMembers = (Vec<VertexId>, Vec<VertexId>);

pub fn candidate_groups(
    dq: &AuxiliaryDigraph,
    ds: &AuxiliaryDigraph,
    hq: &HistoryMap,
    hs: &HistoryMap,
) -> Vec<CandidateGroup> {
    let uq = unique_vertices(dq, hq);
    let us = unique_vertices(ds, hs);
    let mut groups: BTreeMap<GroupKey, GroupMembers> = BTreeMap::new();
    for v in dq.all_vertices().filter(|v| !uq.contains(v)) {
        groups
            .entry((dq.level(v), &hq[&v]))
            .or_default()
            .0
            .push(v);
    }
    for u in ds.all_vertices().filter(|u| !us.contains(u)) {
        groups
            .entry((ds.level(u), &hs[&u]))
            .or_default()
            .1
            .push(u);
    }
    groups
        .into_iter()
        .map(|((level, _), (q_members, s_members))| CandidateGroup {
            level,
            q_members,
            s_members,
        })
        .collect()
}

/// True iff `p` is a bijection from the vertices of `g` onto the vertices of
/// `h` that carries every edge of `g` onto an edge of `h`, with matching
/// edge counts (which forces the converse direction).
pub fn verify_mapping(g: &Graph, h: &Graph, p: &Mapping) -> bool {
    if p.len() != g.vertex_count() || !p.is_injective() {
        return false;
    }
    let forward: BTreeMap<VertexId, VertexId> = p.pairs().iter().copied().collect();
    if !forward.keys().copied().eq(g.vertices()) {
        return false;
    }
    let image: BTreeSet<VertexId> = forward.values().copied().collect();
    if !image.iter().copied().eq(h.vertices()) {
        return false;
    }
    if g.edge_count() != h.edge_count() {
        return false;
    }
    g.edges().all(|(a, b)| h.has_edge(forward[&a], forward[&b]))
}

/// Runs the peeling loop to completion and gates the result behind
/// `verify_mapping`: a failed verification is reported as `Unknown`, never
/// as a false `Isomorphic`.
pub fn run(g: &Graph, h: &Graph, mode: Mode) -> Verdict {
    let mut trace = Vec::new();
    if !precheck(g, h) {
        return Verdict {
            decision: Decision::NotIsomorphic,
            reason: Reason::PrecheckFailed,
            trace,
        };
    }

    let mut state = MatchState::new(g.clone(), h.clone());
    let mut round = 0;
    while state.n > 0 {
        round += 1;
        let pivot = choose_pivot(&state);
        let mut accepted = match find_partner(&state, pivot) {
            Ok(found) => Some(found),
            Err(rejected) => {
                trace.push(RoundTrace {
                    round,
                    pivot,
                    partner: None,
                    rejected,
                    extracted: Vec::new(),
                    remaining: state.n,
                });
                None
            }
        };
        if accepted.is_none() && mode == Mode::Retry {
            let alternatives: Vec<VertexId> =
                state.q.vertices().filter(|&v| v != pivot).collect();
            for alt in alternatives {
                match find_partner(&state, alt) {
                    Ok(found) => {
                        accepted = Some(found);
                        break;
                    }
                    Err(rejected) => trace.push(RoundTrace {
                        round,
                        pivot: alt,
                        partner: None,
                        rejected,
                        extracted: Vec::new(),
                        remaining: state.n,
                    }),
                }
            }
        }
        match accepted {
            Some(found) => {
                let pivot_used = found.dq.root();
                let partner = found.partner;
                let rejected = found.rejected.clone();
                let extracted = state.commit(found);
                trace.push(RoundTrace {
                    round,
                    pivot: pivot_used,
                    partner: Some(partner),
                    rejected,
                    extracted,
                    remaining: state.n,
                });
            }
            None => {
                let decision = match mode {
                    Mode::Faithful => Decision::NotIsomorphic,
                    Mode::Cautious | Mode::Retry => Decision::Unknown,
                };
                return Verdict {
                    decision,
                    reason: Reason::SearchExhausted,
                    trace,
                };
            }
        }
    }

    let mapping = state.p;
    if verify_mapping(g, h, &mapping) {
        Verdict {
            decision: Decision::Isomorphic(mapping),
            reason: Reason::Verified,
            trace,
        }
    } else {
        Verdict {
            decision: Decision::Unknown,
            reason: Reason::VerificationFailed,
            trace,
        }
    }
}
