//! Exact, independent isomorphism oracle for small graphs, and the fuzz
//! harness that cross-checks the matcher against it.
//!
//! The oracle is plain backtracking over degree-compatible assignments with
//! adjacency-consistency pruning. It deliberately shares no code with the
//! digraph or history modules, so agreement between the two is evidence
//! rather than tautology.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{
    degree_vector, generate_random_graph, permute, random_permutation, Graph, VertexId,
};
use crate::matcher::{self, Decision, DecisionKind, Mapping, Mode};

/// Default exhaustive-search cap; beyond this the oracle refuses to run.
pub const DEFAULT_CAP: u32 = 12;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph order {n} exceeds the oracle cap {cap}")]
    SizeCapExceeded { n: usize, cap: u32 },
    #[error("fuzz trial order {n} exceeds the oracle cap {cap}")]
    FuzzBeyondCap { n: u32, cap: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleDecision {
    Isomorphic(Mapping),
    NotIsomorphic,
}

impl OracleDecision {
    pub fn kind(&self) -> DecisionKind {
        match self {
            OracleDecision::Isomorphic(_) => DecisionKind::Isomorphic,
            OracleDecision::NotIsomorphic => DecisionKind::NotIsomorphic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub decision: OracleDecision,
    pub nodes_explored: u64,
}

/// Exhaustive and exact: `Isomorphic` iff an edge-preserving bijection
/// exists. Refuses graphs larger than `cap`.
pub fn exact_isomorphism(g: &Graph, h: &Graph, cap: u32) -> Result<OracleResult, OracleError> {
    let n = g.vertex_count().max(h.vertex_count());
    if n > cap as usize {
        return Err(OracleError::SizeCapExceeded { n, cap });
    }

    let mut nodes_explored = 0u64;
    if g.vertex_count() != h.vertex_count()
        || g.edge_count() != h.edge_count()
        || degree_vector(g) != degree_vector(h)
    {
        return Ok(OracleResult {
            decision: OracleDecision::NotIsomorphic,
            nodes_explored,
        });
    }

    // Assign high-degree vertices first; their adjacency constraints prune
    // the deepest subtrees.
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let h_vertices: Vec<VertexId> = h.vertices().collect();

    let mut assignment: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    let found = assign(
        g,
        h,
        &order,
        &h_vertices,
        0,
        &mut assignment,
        &mut used,
        &mut nodes_explored,
    );

    let decision = if found {
        let mapping = Mapping::from_pairs(assignment.into_iter().collect());
        debug_assert!(matcher::verify_mapping(g, h, &mapping));
        OracleDecision::Isomorphic(mapping)
    } else {
        OracleDecision::NotIsomorphic
    };
    Ok(OracleResult {
        decision,
        nodes_explored,
    })
}

#[allow(clippy::too_many_arguments)]
fn assign(
    g: &Graph,
    h: &Graph,
    order: &[VertexId],
    h_vertices: &[VertexId],
    depth: usize,
    assignment: &mut BTreeMap<VertexId, VertexId>,
    used: &mut BTreeSet<VertexId>,
    nodes_explored: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for &candidate in h_vertices {
        if used.contains(&candidate) || g.degree(v) != h.degree(candidate) {
            continue;
        }
        *nodes_explored += 1;
        let consistent = assignment
            .iter()
            .all(|(&w, &image)| g.has_edge(v, w) == h.has_edge(candidate, image));
        if !consistent {
            continue;
        }
        assignment.insert(v, candidate);
        used.insert(candidate);
        if assign(
            g,
            h,
            order,
            h_vertices,
            depth + 1,
            assignment,
            used,
            nodes_explored,
        ) {
            return true;
        }
        assignment.remove(&v);
        used.remove(&candidate);
    }
    false
}

/// How one fuzz trial's input pair was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialKind {
    /// A graph and a seeded random relabeling of it: isomorphic by
    /// construction.
    Permuted,
    /// Two independently sampled graphs; ground truth from the oracle.
    Independent,
}

impl std::fmt::Display for TrialKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TrialKind::Permuted => "permuted",
            TrialKind::Independent => "independent",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: u32,
    pub mode: Mode,
    pub g_edge_list: String,
    pub h_edge_list: String,
}

/// One trial's verdicts. `matcher` is indexed faithful, cautious, retry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRow {
    pub trial: u32,
    pub seed: u64,
    pub n: u32,
    pub m: usize,
    pub kind: TrialKind,
    pub oracle: DecisionKind,
    pub matcher: [DecisionKind; 3],
    pub verified: bool,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzParams {
    pub trials: u32,
    pub n: u32,
    pub p: f64,
    pub seed: u64,
    pub oracle_cap: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzReport {
    pub params: FuzzParams,
    pub rows: Vec<TrialRow>,
    /// Per mode: matcher said isomorphic, mapping verified, oracle agreed.
    pub verified_true_positives: [u32; 3],
    /// Per mode: oracle said isomorphic, matcher said not / unknown.
    pub false_negatives: [u32; 3],
    /// Per mode: oracle said not isomorphic, matcher agreed.
    pub agreed_negatives: [u32; 3],
    /// Matcher claimed isomorphic but verification or the oracle refutes it.
    /// The verify gate makes this identically zero.
    pub soundness_violations: u32,
    pub counterexamples: Vec<Counterexample>,
}

pub const MODES: [Mode; 3] = [Mode::Faithful, Mode::Cautious, Mode::Retry];

fn trial_seed(master: u64, trial: u32) -> u64 {
    master ^ (u64::from(trial).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs `trials` seeded trials, comparing all three matcher modes against
/// the exhaustive oracle, and tallies agreement. Deterministic for fixed
/// parameters.
pub fn fuzz_agreement(params: FuzzParams) -> Result<FuzzReport, OracleError> {
    if params.n > params.oracle_cap {
        return Err(OracleError::FuzzBeyondCap {
            n: params.n,
            cap: params.oracle_cap,
        });
    }

    let mut report = FuzzReport {
        params: params.clone(),
        rows: Vec::with_capacity(params.trials as usize),
        verified_true_positives: [0; 3],
        false_negatives: [0; 3],
        agreed_negatives: [0; 3],
        soundness_violations: 0,
        counterexamples: Vec::new(),
    };

    for trial in 0..params.trials {
        let seed = trial_seed(params.seed, trial);
        let kind = if trial % 2 == 0 {
            TrialKind::Permuted
        } else {
            TrialKind::Independent
        };
        let g = generate_random_graph(params.n, params.p, seed).expect("p validated");
        let h = match kind {
            TrialKind::Permuted => {
                let pi = random_permutation(&g, seed ^ 0xA5A5_A5A5_A5A5_A5A5);
                permute(&g, &pi).expect("random permutation is bijective")
            }
            TrialKind::Independent => {
                generate_random_graph(params.n, params.p, seed ^ 0x5A5A_5A5A_5A5A_5A5A)
                    .expect("p validated")
            }
        };

        let oracle = exact_isomorphism(&g, &h, params.oracle_cap)?;
        let oracle_kind = oracle.decision.kind();

        let mut row = TrialRow {
            trial,
            seed,
            n: params.n,
            m: g.edge_count(),
            kind,
            oracle: oracle_kind,
            matcher: [DecisionKind::Unknown; 3],
            verified: true,
            rounds: 0,
        };

        for (i, mode) in MODES.iter().enumerate() {
            let verdict = matcher::run(&g, &h, *mode);
            row.matcher[i] = verdict.decision.kind();
            if *mode == Mode::Faithful {
                row.rounds = verdict
                    .trace
                    .iter()
                    .filter(|t| t.partner.is_some())
                    .count();
            }
            match &verdict.decision {
                Decision::Isomorphic(mapping) => {
                    let verified = matcher::verify_mapping(&g, &h, mapping);
                    if !verified {
                        row.verified = false;
                    }
                    if !verified || oracle_kind != DecisionKind::Isomorphic {
                        report.soundness_violations += 1;
                    } else {
                        report.verified_true_positives[i] += 1;
                    }
                }
                Decision::NotIsomorphic | Decision::Unknown => {
                    if oracle_kind == DecisionKind::Isomorphic {
                        report.false_negatives[i] += 1;
                        report.counterexamples.push(Counterexample {
                            trial,
                            mode: *mode,
                            g_edge_list: g.render(),
                            h_edge_list: h.render(),
                        });
                    } else {
                        report.agreed_negatives[i] += 1;
                    }
                }
            }
        }
        report.rows.push(row);
    }
    Ok(report)
}

impl FuzzReport {
    /// Plain-text table plus summary block; byte-for-byte deterministic.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:>6} {:>20} {:>3} {:>4} {:<11} {:<14} {:<14} {:<14} {:<14} {:<8} {:>6}",
            "trial", "seed", "n", "m", "kind", "oracle", "faithful", "cautious", "retry",
            "verified", "rounds"
        )
        .unwrap();
        for row in &self.rows {
            writeln!(
                out,
                "{:>6} {:>20} {:>3} {:>4} {:<11} {:<14} {:<14} {:<14} {:<14} {:<8} {:>6}",
                row.trial,
                row.seed,
                row.n,
                row.m,
                row.kind.to_string(),
                row.oracle.to_string(),
                row.matcher[0].to_string(),
                row.matcher[1].to_string(),
                row.matcher[2].to_string(),
                row.verified,
                row.rounds
            )
            .unwrap();
        }
        writeln!(out, "---").unwrap();
        writeln!(
            out,
            "trials: {} (n={}, p={}, seed={})",
            self.params.trials, self.params.n, self.params.p, self.params.seed
        )
        .unwrap();
        writeln!(
            out,
            "verified true positives: faithful {} / cautious {} / retry {}",
            self.verified_true_positives[0],
            self.verified_true_positives[1],
            self.verified_true_positives[2]
        )
        .unwrap();
        writeln!(
            out,
            "false negatives:         faithful {} / cautious {} / retry {}",
            self.false_negatives[0], self.false_negatives[1], self.false_negatives[2]
        )
        .unwrap();
        writeln!(
            out,
            "agreed negatives:        faithful {} / cautious {} / retry {}",
            self.agreed_negatives[0], self.agreed_negatives[1], self.agreed_negatives[2]
        )
        .unwrap();
        writeln!(out, "soundness violations: {}", self.soundness_violations).unwrap();
        writeln!(out, "counterexamples: {}", self.counterexamples.len()).unwrap();
        out
    }
}
