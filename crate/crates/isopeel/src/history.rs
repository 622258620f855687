//! Multi-floor characteristic histories and history-aware positional
//! equivalence.
//!
//! Every peeling round pushes one floor onto every live vertex: the
//! characteristic it got in that round's digraph, or the null floor if it
//! was unreached. Floor 0 is always the newest. Two digraphs are
//! positionally equivalent when their lines pair up level by level with
//! equal multisets of full histories, and the unreached pseudo-lines agree
//! the same way.

use std::collections::BTreeMap;

use crate::digraph::{AuxiliaryDigraph, Characteristic};
use crate::graph::VertexId;

/// One round's snapshot: a characteristic, or `None` for a vertex that was
/// unreached in that round. The null floor equals only the null floor.
pub type Floor = Option<Characteristic>;

/// Stack of floors, newest first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct History {
    floors: Vec<Floor>,
}

impl History {
    pub fn new() -> History {
        History { floors: Vec::new() }
    }

    pub fn single(floor: Floor) -> History {
        History { floors: vec![floor] }
    }

    /// Number of floors (one per completed round).
    pub fn len(&self) -> usize {
        self.floors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.floors.is_empty()
    }

    /// Floor `k`, where 0 is the newest.
    pub fn floor(&self, k: usize) -> Option<&Floor> {
        self.floors.get(k)
    }

    pub fn floors(&self) -> &[Floor] {
        &self.floors
    }
}

/// New history with `floor` on top and all prior floors shifted up.
pub fn push_floor(h: &History, floor: Floor) -> History {
    let mut floors = Vec::with_capacity(h.floors.len() + 1);
    floors.push(floor);
    floors.extend(h.floors.iter().cloned());
    History { floors }
}

/// Floor-wise equality: same floor count, equal floors at every index.
pub fn histories_equal(a: &History, b: &History) -> bool {
    a == b
}

/// Per-vertex histories for the live vertex set of one graph.
pub type HistoryMap = BTreeMap<VertexId, History>;

/// Single-floor histories straight from a characteristics map.
pub fn single_floor_histories(chars: &BTreeMap<VertexId, Floor>) -> HistoryMap {
    chars
        .iter()
        .map(|(&v, c)| (v, History::single(c.clone())))
        .collect()
}

/// Pushes one floor per vertex onto `histories`. `chars` must cover exactly
/// the vertices present in the map.
pub fn push_floors(histories: &mut HistoryMap, chars: &BTreeMap<VertexId, Floor>) {
    for (v, h) in histories.iter_mut() {
        *h = push_floor(h, chars[v].clone());
    }
}

/// History-aware positional equivalence.
///
/// `hq`/`hs` must already contain the current round's floor for every live
/// vertex. Holds iff (a) both digraphs have the same number of lines with
/// matching sizes, (b) every line pair carries equal multisets of full
/// histories, and (c) the unreached pseudo-lines carry equal multisets of
/// full histories.
pub fn positionally_equivalent(
    dq: &AuxiliaryDigraph,
    ds: &AuxiliaryDigraph,
    hq: &HistoryMap,
    hs: &HistoryMap,
) -> bool {
    equivalent_by(dq, ds, |v| &hq[&v], |v| &hs[&v])
}

/// Positional equivalence for a trial round: compares the would-be new
/// floor (`cq`/`cs`, this round's characteristics) paired with the committed
/// histories, without materializing the pushed maps.
pub(crate) fn positionally_equivalent_with_trial(
    dq: &AuxiliaryDigraph,
    ds: &AuxiliaryDigraph,
    cq: &BTreeMap<VertexId, Floor>,
    cs: &BTreeMap<VertexId, Floor>,
    hq: &HistoryMap,
    hs: &HistoryMap,
) -> bool {
    equivalent_by(
        dq,
        ds,
        |v| (&cq[&v], &hq[&v]),
        |v| (&cs[&v], &hs[&v]),
    )
}

fn equivalent_by<'a, K, FQ, FS>(
    dq: &'a AuxiliaryDigraph,
    ds: &'a AuxiliaryDigraph,
    key_q: FQ,
    key_s: FS,
) -> bool
where
    K: Ord,
    FQ: Fn(VertexId) -> K,
    FS: Fn(VertexId) -> K,
{
    if dq.lines().len() != ds.lines().len()
        || dq.unreached().len() != ds.unreached().len()
    {
        return false;
    }
    for (lq, ls) in dq.lines().iter().zip(ds.lines()) {
        if lq.len() != ls.len() {
            return false;
        }
    }
    let multiset_eq = |q_members: &[VertexId], s_members: &[VertexId]| {
        let mut kq: Vec<K> = q_members.iter().map(|&v| key_q(v)).collect();
        let mut ks: Vec<K> = s_members.iter().map(|&v| key_s(v)).collect();
        kq.sort_unstable();
        ks.sort_unstable();
        kq == ks
    };
    for (lq, ls) in dq.lines().iter().zip(ds.lines()) {
        if !multiset_eq(lq, ls) {
            return false;
        }
    }
    multiset_eq(dq.unreached(), ds.unreached())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{build, characteristics};
    use crate::fixtures;
    use crate::graph::{delete_vertices, parse_edge_list, VertexId};
    use std::collections::BTreeSet;

    fn c(input: &[u32], output: &[u32]) -> Characteristic {
        Characteristic::new(input.to_vec(), output.to_vec())
    }

    #[test]
    fn push_floor_stacks_newest_first() {
        let h = History::new();
        let h = push_floor(&h, Some(c(&[1, 2], &[2])));
        let h = push_floor(&h, Some(c(&[0, 1], &[1])));
        assert_eq!(h.len(), 2);
        assert_eq!(h.floor(0), Some(&Some(c(&[0, 1], &[1]))));
        assert_eq!(h.floor(1), Some(&Some(c(&[1, 2], &[2]))));
    }

    #[test]
    fn push_null_floor_grows_history() {
        let h = push_floor(&History::new(), Some(c(&[0, 1], &[1])));
        let h = push_floor(&h, None);
        assert_eq!(h.len(), 2);
        assert_eq!(h.floor(0), Some(&None));
    }

    #[test]
    fn histories_equal_is_floorwise() {
        let a = push_floor(&History::single(Some(c(&[1, 2], &[2]))), Some(c(&[0, 1], &[1])));
        let b = push_floor(&History::single(Some(c(&[1, 2], &[2]))), Some(c(&[0, 1], &[1])));
        assert!(histories_equal(&a, &b));

        // Same newest floor, different older floor.
        let d = push_floor(&History::single(Some(c(&[0], &[2, 2]))), Some(c(&[0, 1], &[1])));
        assert!(!histories_equal(&a, &d));

        // Different floor counts.
        let short = History::single(Some(c(&[0, 1], &[1])));
        assert!(!histories_equal(&a, &short));

        // Null floor equals only null.
        let null_top = push_floor(&History::single(Some(c(&[1, 2], &[2]))), None);
        assert!(!histories_equal(&a, &null_top));
        assert!(histories_equal(&null_top, &null_top.clone()));
    }

    /// Two-floor histories for the b1 walkthrough: round-1 floors from the
    /// full graphs, round-2 floors from the remainders after deleting the
    /// (v1, u4) pair.
    fn b1_round2_setup() -> (
        AuxiliaryDigraph,
        AuxiliaryDigraph,
        AuxiliaryDigraph,
        HistoryMap,
        HistoryMap,
        HistoryMap,
    ) {
        let g = fixtures::b1_g();
        let h = fixtures::b1_h();
        let g1 = delete_vertices(&g, &BTreeSet::from([VertexId(1)])).unwrap();
        let h1 = delete_vertices(&h, &BTreeSet::from([VertexId(4)])).unwrap();

        let dg = build(&g, VertexId(1)).unwrap();
        let dh = build(&h, VertexId(4)).unwrap();
        let mut hq: HistoryMap = g1
            .vertices()
            .map(|v| (v, History::single(characteristics(&dg)[&v].clone())))
            .collect();
        let mut hs_u1: HistoryMap = h1
            .vertices()
            .map(|v| (v, History::single(characteristics(&dh)[&v].clone())))
            .collect();
        let mut hs_u3 = hs_u1.clone();

        let dq = build(&g1, VertexId(2)).unwrap();
        let ds_u1 = build(&h1, VertexId(1)).unwrap();
        let ds_u3 = build(&h1, VertexId(3)).unwrap();
        push_floors(&mut hq, &characteristics(&dq));
        push_floors(&mut hs_u1, &characteristics(&ds_u1));
        push_floors(&mut hs_u3, &characteristics(&ds_u3));
        (dq, ds_u1, ds_u3, hq, hs_u1, hs_u3)
    }

    #[test]
    fn b1_two_floor_histories_match_reference() {
        let (_, _, _, hq, hs_u1, hs_u3) = b1_round2_setup();

        // Q side after the second round.
        assert_eq!(
            hq[&VertexId(2)].floors(),
            &[Some(c(&[], &[1, 1])), Some(c(&[0], &[2, 2]))]
        );
        assert_eq!(
            hq[&VertexId(4)].floors(),
            &[Some(c(&[0, 1], &[1])), Some(c(&[1, 2], &[2]))]
        );
        assert_eq!(
            hq[&VertexId(5)].floors(),
            &[Some(c(&[0, 1], &[1])), Some(c(&[1, 2], &[2]))]
        );
        // Unreached component carries a null newest floor.
        assert_eq!(
            hq[&VertexId(3)].floors(),
            &[None, Some(c(&[0], &[2, 2]))]
        );

        // S side, trial rooted at u1.
        assert_eq!(
            hs_u1[&VertexId(1)].floors(),
            &[Some(c(&[], &[1, 1])), Some(c(&[1, 2], &[2]))]
        );
        assert_eq!(
            hs_u1[&VertexId(3)].floors(),
            &[Some(c(&[0, 1], &[1])), Some(c(&[0], &[2, 2]))]
        );

        // S side, trial rooted at u3.
        assert_eq!(
            hs_u3[&VertexId(3)].floors(),
            &[Some(c(&[], &[1, 1])), Some(c(&[0], &[2, 2]))]
        );
        assert_eq!(
            hs_u3[&VertexId(1)].floors(),
            &[Some(c(&[0, 1], &[1])), Some(c(&[1, 2], &[2]))]
        );
        assert_eq!(
            hs_u3[&VertexId(2)].floors(),
            &[Some(c(&[0, 1], &[1])), Some(c(&[1, 2], &[2]))]
        );
    }

    #[test]
    fn b1_round2_rejects_u1_and_accepts_u3() {
        let (dq, ds_u1, ds_u3, hq, hs_u1, hs_u3) = b1_round2_setup();
        assert!(!positionally_equivalent(&dq, &ds_u1, &hq, &hs_u1));
        assert!(positionally_equivalent(&dq, &ds_u3, &hq, &hs_u3));
    }

    #[test]
    fn fig_pair_round1_is_positionally_equivalent() {
        let dq = build(&fixtures::fig1(), VertexId(1)).unwrap();
        let ds = build(&fixtures::fig2(), VertexId(1)).unwrap();
        let hq = single_floor_histories(&characteristics(&dq));
        let hs = single_floor_histories(&characteristics(&ds));
        assert!(positionally_equivalent(&dq, &ds, &hq, &hs));
    }

    #[test]
    fn equivalence_fails_on_mismatched_line_sizes() {
        let path = parse_edge_list("3 2\n1 2\n2 3").unwrap();
        let star = parse_edge_list("3 2\n1 2\n1 3").unwrap();
        let dq = build(&path, VertexId(1)).unwrap();
        let ds = build(&star, VertexId(1)).unwrap();
        let hq = single_floor_histories(&characteristics(&dq));
        let hs = single_floor_histories(&characteristics(&ds));
        assert!(!positionally_equivalent(&dq, &ds, &hq, &hs));
    }

    #[test]
    fn trial_comparison_agrees_with_materialized_push() {
        let g = fixtures::b1_g();
        let h = fixtures::b1_h();
        for v in g.vertices() {
            let dq = build(&g, v).unwrap();
            let cq = characteristics(&dq);
            for u in h.vertices() {
                let ds = build(&h, u).unwrap();
                let cs = characteristics(&ds);
                let hq_old: HistoryMap = g.vertices().map(|x| (x, History::new())).collect();
                let hs_old: HistoryMap = h.vertices().map(|x| (x, History::new())).collect();
                let trial =
                    positionally_equivalent_with_trial(&dq, &ds, &cq, &cs, &hq_old, &hs_old);
                let mut hq = hq_old.clone();
                let mut hs = hs_old.clone();
                push_floors(&mut hq, &cq);
                push_floors(&mut hs, &cs);
                assert_eq!(trial, positionally_equivalent(&dq, &ds, &hq, &hs));
            }
        }
    }
}
