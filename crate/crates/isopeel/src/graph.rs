//! Undirected simple graphs: parsing, generation, vertex deletion, and
//! degree-vector prechecks.
//!
//! Graphs are immutable values. Vertex ids are stable: deleting vertices
//! never renumbers the survivors, so ids keep their meaning across the
//! peeling rounds of the matcher.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Stable vertex label. External representation is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sorted (non-decreasing) multiset of vertex degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVector(pub Vec<usize>);

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed line {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: loop edge {v} {v}")]
    LoopEdge { line: usize, v: u32 },
    #[error("line {line}: duplicate edge {a} {b}")]
    DuplicateEdge { line: usize, a: u32, b: u32 },
    #[error("line {line}: vertex id {id} out of range 1..={n}")]
    VertexOutOfRange { line: usize, id: u64, n: u32 },
    #[error("line {line}: expected {expected} edges, found {found}")]
    EdgeCountMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("missing header line \"n m\"")]
    MissingHeader,
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GraphError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("mapping is not a bijection on the vertex set")]
    NotBijective,
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("no {degree}-regular graph on {n} vertices (n*d must be even, d < n)")]
    BadRegularParams { n: u32, degree: u32 },
}

/// Undirected simple graph without loops or multiple edges.
///
/// The edge set stores each unordered pair once, normalized as `(a, b)` with
/// `a < b`. Adjacency lists are kept sorted ascending so every traversal in
/// the crate is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
    adjacency: BTreeMap<VertexId, Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph on vertices `1..=n` with the given edges.
    ///
    /// Panics on loops, duplicates, or out-of-range endpoints; callers that
    /// ingest untrusted input go through [`parse_edge_list`] instead.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Graph {
        let vertices: BTreeSet<VertexId> = (1..=n).map(VertexId).collect();
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            assert!(a != b, "loop edge {a}");
            assert!(
                (1..=n).contains(&a) && (1..=n).contains(&b),
                "edge {a} {b} out of range 1..={n}"
            );
            let pair = normalize(VertexId(a), VertexId(b));
            assert!(set.insert(pair), "duplicate edge {a} {b}");
        }
        Self::from_parts(vertices, set)
    }

    fn from_parts(vertices: BTreeSet<VertexId>, edges: BTreeSet<(VertexId, VertexId)>) -> Graph {
        let mut adjacency: BTreeMap<VertexId, Vec<VertexId>> =
            vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &edges {
            adjacency.get_mut(&a).unwrap().push(b);
            adjacency.get_mut(&b).unwrap().push(a);
        }
        for neighbors in adjacency.values_mut() {
            neighbors.sort_unstable();
        }
        Graph {
            vertices,
            edges,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Live vertex ids in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&normalize(a, b))
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adjacency
            .get(&v)
            .map(Vec::as_slice)
            .unwrap_or_default()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    /// Smallest live vertex id, if any.
    pub fn min_vertex(&self) -> Option<VertexId> {
        self.vertices.iter().next().copied()
    }

    /// Canonical edge-list rendering: `"n m"` header plus one `"a b"` line
    /// per edge in ascending order. Round-trips through [`parse_edge_list`]
    /// for graphs whose vertex set is contiguous `1..=n`.
    pub fn render(&self) -> String {
        let n = self.vertices.iter().next_back().map_or(0, |v| v.0);
        let mut out = format!("{} {}\n", n, self.edges.len());
        for &(a, b) in &self.edges {
            out.push_str(&format!("{} {}\n", a, b));
        }
        out
    }
}

fn normalize(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Parses the edge-list format: a `"n m"` header, then `m` lines `"a b"`
/// with 1-based ids. Lines starting with `#` and blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(header).ok_or(ParseError::MalformedLine {
        line: header_no,
        text: header.to_string(),
    })?;
    let n = u32::try_from(n).map_err(|_| ParseError::MalformedLine {
        line: header_no,
        text: header.to_string(),
    })?;
    let m = m as usize;

    let mut edges = BTreeSet::new();
    let mut count = 0usize;
    let mut last_line = header_no;
    for (line_no, line) in lines {
        last_line = line_no;
        let (a, b) = parse_pair(line).ok_or(ParseError::MalformedLine {
            line: line_no,
            text: line.to_string(),
        })?;
        for id in [a, b] {
            if id < 1 || id > u64::from(n) {
                return Err(ParseError::VertexOutOfRange {
                    line: line_no,
                    id,
                    n,
                });
            }
        }
        let (a, b) = (a as u32, b as u32);
        if a == b {
            return Err(ParseError::LoopEdge { line: line_no, v: a });
        }
        let pair = normalize(VertexId(a), VertexId(b));
        if !edges.insert(pair) {
            return Err(ParseError::DuplicateEdge {
                line: line_no,
                a: pair.0 .0,
                b: pair.1 .0,
            });
        }
        count += 1;
        if count > m {
            break;
        }
    }
    if count != m {
        return Err(ParseError::EdgeCountMismatch {
            line: last_line,
            expected: m,
            found: count,
        });
    }

    let vertices: BTreeSet<VertexId> = (1..=n).map(VertexId).collect();
    Ok(Graph::from_parts(vertices, edges))
}

fn parse_pair(line: &str) -> Option<(u64, u64)> {
    let mut tokens = line.split_ascii_whitespace();
    let a = tokens.next()?.parse().ok()?;
    let b = tokens.next()?.parse().ok()?;
    if tokens.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Sorted multiset of vertex degrees.
pub fn degree_vector(g: &Graph) -> DegreeVector {
    let mut degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    DegreeVector(degrees)
}

/// True iff vertex counts, edge counts, and degree vectors all agree.
pub fn precheck(g: &Graph, h: &Graph) -> bool {
    g.vertex_count() == h.vertex_count()
        && g.edge_count() == h.edge_count()
        && degree_vector(g) == degree_vector(h)
}

/// Removes `victims` and all incident edges. Surviving ids are unchanged.
pub fn delete_vertices(g: &Graph, victims: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
    for &v in victims {
        if !g.contains_vertex(v) {
            return Err(GraphError::UnknownVertex(v));
        }
    }
    let vertices: BTreeSet<VertexId> = g
        .vertices()
        .filter(|v| !victims.contains(v))
        .collect();
    let edges: BTreeSet<(VertexId, VertexId)> = g
        .edges()
        .filter(|(a, b)| !victims.contains(a) && !victims.contains(b))
        .collect();
    Ok(Graph::from_parts(vertices, edges))
}

/// Relabels `g` through the bijection `pi`; the result is isomorphic to `g`
/// by construction.
pub fn permute(g: &Graph, pi: &BTreeMap<VertexId, VertexId>) -> Result<Graph, GraphError> {
    if pi.len() != g.vertex_count() {
        return Err(GraphError::NotBijective);
    }
    let mut image = BTreeSet::new();
    for (&from, &to) in pi {
        if !g.contains_vertex(from) || !image.insert(to) {
            return Err(GraphError::NotBijective);
        }
    }
    let edges: BTreeSet<(VertexId, VertexId)> = g
        .edges()
        .map(|(a, b)| normalize(pi[&a], pi[&b]))
        .collect();
    Ok(Graph::from_parts(image, edges))
}

/// Erdős–Rényi G(n, p) sample, deterministic for a fixed seed.
pub fn generate_random_graph(n: u32, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in (a + 1)..=n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges))
}

/// Uniform-ish random permutation of `g`'s vertex set, as a map.
pub fn random_permutation(g: &Graph, seed: u64) -> BTreeMap<VertexId, VertexId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let from: Vec<VertexId> = g.vertices().collect();
    let mut to = from.clone();
    to.shuffle(&mut rng);
    from.into_iter().zip(to).collect()
}

/// Random d-regular graph via the pairing model with rejection. Deterministic
/// for a fixed seed.
pub fn generate_random_regular_graph(n: u32, degree: u32, seed: u64) -> Result<Graph, GraphError> {
    if degree >= n.max(1) || !(n as u64 * degree as u64).is_multiple_of(2) {
        return Err(GraphError::BadRegularParams { n, degree });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<u32> = (1..=n).flat_map(|v| std::iter::repeat_n(v, degree as usize)).collect();
    // Rejection sampling: reshuffle until the pairing is simple.
    'attempt: for _ in 0..10_000 {
        stubs.shuffle(&mut rng);
        let mut edges = BTreeSet::new();
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || !edges.insert(normalize(VertexId(a), VertexId(b))) {
                continue 'attempt;
            }
        }
        let vertices: BTreeSet<VertexId> = (1..=n).map(VertexId).collect();
        return Ok(Graph::from_parts(vertices, edges));
    }
    Err(GraphError::BadRegularParams { n, degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_fig1_fixture() {
        let g = fixtures::fig1();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 14);
        assert!(g.has_edge(VertexId(1), VertexId(2)));
        assert!(g.has_edge(VertexId(7), VertexId(6)));
        assert!(!g.has_edge(VertexId(1), VertexId(4)));
    }

    #[test]
    fn parses_single_vertex() {
        let g = parse_edge_list("1 0").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("3 3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(degree_vector(&g), DegreeVector(vec![2, 2, 2]));
    }

    #[test]
    fn parser_ignores_comments_and_blank_lines() {
        let g = parse_edge_list("# triangle\n3 3\n\n1 2\n# middle\n2 3\n1 3\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn parser_rejects_loop() {
        let err = parse_edge_list("3 1\n2 2").unwrap_err();
        assert_eq!(err, ParseError::LoopEdge { line: 2, v: 2 });
    }

    #[test]
    fn parser_rejects_duplicate_even_reversed() {
        let err = parse_edge_list("3 2\n1 2\n2 1").unwrap_err();
        assert_eq!(err, ParseError::DuplicateEdge { line: 3, a: 1, b: 2 });
    }

    #[test]
    fn parser_rejects_out_of_range() {
        let err = parse_edge_list("3 1\n1 4").unwrap_err();
        assert_eq!(
            err,
            ParseError::VertexOutOfRange {
                line: 2,
                id: 4,
                n: 3
            }
        );
    }

    #[test]
    fn parser_rejects_malformed_line() {
        assert!(matches!(
            parse_edge_list("3 1\n1 2 3").unwrap_err(),
            ParseError::MalformedLine { line: 2, .. }
        ));
        assert!(matches!(
            parse_edge_list("x y").unwrap_err(),
            ParseError::MalformedLine { line: 1, .. }
        ));
    }

    #[test]
    fn parser_rejects_edge_count_mismatch() {
        assert!(matches!(
            parse_edge_list("3 2\n1 2").unwrap_err(),
            ParseError::EdgeCountMismatch {
                expected: 2,
                found: 1,
                ..
            }
        ));
    }

    #[test]
    fn degree_vector_of_fig1_is_4_regular() {
        assert_eq!(
            degree_vector(&fixtures::fig1()),
            DegreeVector(vec![4, 4, 4, 4, 4, 4, 4])
        );
    }

    #[test]
    fn degree_vector_trivial_cases() {
        assert_eq!(
            degree_vector(&parse_edge_list("1 0").unwrap()),
            DegreeVector(vec![0])
        );
    }

    #[test]
    fn precheck_accepts_fig_pair_and_c6_vs_triangles() {
        assert!(precheck(&fixtures::fig1(), &fixtures::fig2()));
        // Equal degree vectors but non-isomorphic: the key negative case.
        assert!(precheck(&fixtures::c6(), &fixtures::two_c3()));
    }

    #[test]
    fn precheck_rejects_star_vs_path() {
        let star = Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]);
        let path = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]);
        assert!(!precheck(&star, &path));
    }

    #[test]
    fn delete_vertices_keeps_ids_stable() {
        let g = fixtures::fig1();
        let g1 = delete_vertices(&g, &BTreeSet::from([VertexId(1)])).unwrap();
        assert_eq!(g1.vertex_count(), 6);
        assert_eq!(g1.edge_count(), 10);
        assert!(!g1.contains_vertex(VertexId(1)));
        assert!(g1.contains_vertex(VertexId(7)));
        assert!(g1.has_edge(VertexId(6), VertexId(7)));
    }

    #[test]
    fn delete_vertices_identity_and_total() {
        let g = parse_edge_list("3 3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(delete_vertices(&g, &BTreeSet::new()).unwrap(), g);
        let empty = delete_vertices(
            &g,
            &BTreeSet::from([VertexId(1), VertexId(2), VertexId(3)]),
        )
        .unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn delete_vertices_rejects_unknown_id() {
        let g = parse_edge_list("2 1\n1 2").unwrap();
        assert_eq!(
            delete_vertices(&g, &BTreeSet::from([VertexId(9)])),
            Err(GraphError::UnknownVertex(VertexId(9)))
        );
    }

    #[test]
    fn permute_identity_and_swap() {
        let tri = parse_edge_list("3 3\n1 2\n2 3\n1 3").unwrap();
        let ident: BTreeMap<_, _> = tri.vertices().map(|v| (v, v)).collect();
        assert_eq!(permute(&tri, &ident).unwrap(), tri);

        // Swapping the endpoints of P3 is an automorphism.
        let p3 = parse_edge_list("3 2\n1 2\n2 3").unwrap();
        let swap = BTreeMap::from([
            (VertexId(1), VertexId(3)),
            (VertexId(2), VertexId(2)),
            (VertexId(3), VertexId(1)),
        ]);
        assert_eq!(permute(&p3, &swap).unwrap(), p3);
    }

    #[test]
    fn permute_fig1_through_published_mapping_gives_fig2() {
        // The worked mapping: 1->1, 2->4, 3->7, 4->3, 5->6, 6->2, 7->5.
        let phi = BTreeMap::from([
            (VertexId(1), VertexId(1)),
            (VertexId(2), VertexId(4)),
            (VertexId(3), VertexId(7)),
            (VertexId(4), VertexId(3)),
            (VertexId(5), VertexId(6)),
            (VertexId(6), VertexId(2)),
            (VertexId(7), VertexId(5)),
        ]);
        assert_eq!(permute(&fixtures::fig1(), &phi).unwrap(), fixtures::fig2());
    }

    #[test]
    fn permute_rejects_non_bijection() {
        let p3 = parse_edge_list("3 2\n1 2\n2 3").unwrap();
        let collapse = BTreeMap::from([
            (VertexId(1), VertexId(1)),
            (VertexId(2), VertexId(1)),
            (VertexId(3), VertexId(3)),
        ]);
        assert_eq!(permute(&p3, &collapse), Err(GraphError::NotBijective));
    }

    #[test]
    fn random_graph_extremes_and_determinism() {
        let empty = generate_random_graph(5, 0.0, 42).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let complete = generate_random_graph(5, 1.0, 42).unwrap();
        assert_eq!(complete.edge_count(), 10);
        let a = generate_random_graph(8, 0.5, 1).unwrap();
        let b = generate_random_graph(8, 0.5, 1).unwrap();
        assert_eq!(a, b);
        assert!(generate_random_graph(5, 1.5, 0).is_err());
    }

    #[test]
    fn regular_generator_produces_regular_graphs() {
        let g = generate_random_regular_graph(8, 3, 7).unwrap();
        assert_eq!(degree_vector(&g), DegreeVector(vec![3; 8]));
        assert_eq!(
            g,
            generate_random_regular_graph(8, 3, 7).unwrap(),
            "same seed must reproduce the same graph"
        );
        assert!(generate_random_regular_graph(5, 3, 0).is_err());
    }

    #[test]
    fn render_round_trips() {
        let g = generate_random_graph(9, 0.4, 3).unwrap();
        assert_eq!(parse_edge_list(&g.render()).unwrap(), g);
    }
}
