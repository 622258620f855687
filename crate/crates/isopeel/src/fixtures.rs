//! Named graph fixtures used by the golden tests, the CLI `gen fixture`
//! subcommand, and the documentation.
//!
//! The `fig*`, `b1*`, and `app*` pairs are the worked examples this project
//! reproduces; `c6`/`two_c3` is the classic equal-degree non-isomorphic pair;
//! `rook4`/`shrikhande` are the two strongly regular (16,6,2,2) graphs, a
//! hard negative pair beyond the comfortable reach of the exhaustive oracle.

use crate::graph::{parse_edge_list, Graph};

pub const FIG1_EL: &str = include_str!("../fixtures/fig1.el");
pub const FIG2_EL: &str = include_str!("../fixtures/fig2.el");
pub const B1_G_EL: &str = include_str!("../fixtures/b1-g.el");
pub const B1_H_EL: &str = include_str!("../fixtures/b1-h.el");
pub const APP_G_EL: &str = include_str!("../fixtures/app-g.el");
pub const APP_H_EL: &str = include_str!("../fixtures/app-h.el");
pub const C6_EL: &str = include_str!("../fixtures/c6.el");
pub const TWO_C3_EL: &str = include_str!("../fixtures/two-c3.el");

/// Reference bijection for the fig1/fig2 pair, as a mapping file.
pub const FIG_PHI_MAP: &str = include_str!("../fixtures/fig-phi.map");
/// Reference bijection for the app-g/app-h pair.
pub const APP_PHI_MAP: &str = include_str!("../fixtures/app-phi.map");

fn must_parse(text: &str) -> Graph {
    parse_edge_list(text).expect("embedded fixture must parse")
}

pub fn fig1() -> Graph {
    must_parse(FIG1_EL)
}

pub fn fig2() -> Graph {
    must_parse(FIG2_EL)
}

pub fn b1_g() -> Graph {
    must_parse(B1_G_EL)
}

pub fn b1_h() -> Graph {
    must_parse(B1_H_EL)
}

pub fn app_g() -> Graph {
    must_parse(APP_G_EL)
}

pub fn app_h() -> Graph {
    must_parse(APP_H_EL)
}

/// The 6-cycle.
pub fn c6() -> Graph {
    must_parse(C6_EL)
}

/// Two disjoint triangles: same order, size, and degree vector as `c6`.
pub fn two_c3() -> Graph {
    must_parse(TWO_C3_EL)
}

/// The 4x4 rook's graph: vertices are cells of a 4x4 grid, adjacent iff they
/// share a row or a column. Strongly regular (16,6,2,2); contains 4-cliques
/// (the rows and the columns).
pub fn rook4() -> Graph {
    let id = |i: u32, j: u32| 4 * i + j + 1;
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in (j + 1)..4 {
                edges.push((id(i, j), id(i, k))); // same row
                edges.push((id(j, i), id(k, i))); // same column
            }
        }
    }
    Graph::from_edges(16, &edges)
}

/// The Shrikhande graph: vertices are Z4 x Z4, adjacent iff the difference
/// is one of +-(1,0), +-(0,1), +-(1,1). Strongly regular (16,6,2,2) with the
/// same parameters as `rook4` but triangle-free neighborhoods, hence K4-free.
pub fn shrikhande() -> Graph {
    let id = |i: u32, j: u32| 4 * i + j + 1;
    let mut edges = Vec::new();
    for i in 0..4u32 {
        for j in 0..4u32 {
            for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
                let (ni, nj) = ((i + di) % 4, (j + dj) % 4);
                let (a, b) = (id(i, j), id(ni, nj));
                if a < b {
                    edges.push((a, b));
                } else {
                    edges.push((b, a));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(16, &edges)
}

/// Fixture registry for the CLI: name, edge-list text.
pub fn by_name(name: &str) -> Option<String> {
    match name {
        "fig1" => Some(FIG1_EL.to_string()),
        "fig2" => Some(FIG2_EL.to_string()),
        "b1-g" => Some(B1_G_EL.to_string()),
        "b1-h" => Some(B1_H_EL.to_string()),
        "app-g" => Some(APP_G_EL.to_string()),
        "app-h" => Some(APP_H_EL.to_string()),
        "c6" => Some(C6_EL.to_string()),
        "two-c3" => Some(TWO_C3_EL.to_string()),
        "rook4" => Some(rook4().render()),
        "shrikhande" => Some(shrikhande().render()),
        _ => None,
    }
}

pub const FIXTURE_NAMES: &[&str] = &[
    "fig1",
    "fig2",
    "b1-g",
    "b1-h",
    "app-g",
    "app-h",
    "c6",
    "two-c3",
    "rook4",
    "shrikhande",
];
