//! Splitting a pfaffian k-orientation at a separating cut so that both
//! C-contractions become pfaffian.
//!
//! The construction picks an anchor matching through one cut edge, routes
//! even alternating paths from the anchor ends to every cut-edge end, and
//! reverses, per orientation, the boundary of the set of ends whose path
//! has an odd number of forward arcs.

use crate::error::{domain, Result};
use crate::graph::{Cut, Graph, Matching};

use super::{
    alternating_cycles, forward_arc_count, signature_matrix, solve_pfaffian_system, KOrientation,
    Orientation,
};

/// An even alternating path from an anchor vertex to a cut-edge end.
#[derive(Debug, Clone)]
pub struct AlternatingPath {
    /// The cut-edge end this path leads to.
    pub end: usize,
    /// Vertex sequence, anchor first; one more vertex than edges.
    pub vertices: Vec<usize>,
    pub edge_ids: Vec<usize>,
}

impl AlternatingPath {
    fn steps(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.edge_ids.len())
            .map(move |i| (self.vertices[i], self.vertices[i + 1], self.edge_ids[i]))
    }
}

#[derive(Debug, Clone)]
pub struct SplitResult {
    /// The adjusted k-orientation, similar to the input.
    pub korientation: KOrientation,
    /// Per orientation, the shore whose boundary was reversed.
    pub reversal_shores: Vec<Vec<usize>>,
    /// The alternating paths used, one per cut-edge end.
    pub paths: Vec<AlternatingPath>,
}

pub fn split_orientation_at_cut(
    g: &Graph,
    cut: &Cut,
    kd: &KOrientation,
) -> Result<SplitResult> {
    if !g.is_separating(cut)? {
        return Err(domain("cut is not separating"));
    }
    if solve_pfaffian_system(&signature_matrix(g, kd)?).is_none() {
        return Err(domain("k-orientation is not pfaffian"));
    }

    let n = g.vertex_count();
    let mut in_shore = vec![false; n];
    for &v in cut.shore() {
        in_shore[v] = true;
    }
    let complement: Vec<usize> = (0..n).filter(|&v| !in_shore[v]).collect();
    let matchings = g.enumerate_perfect_matchings()?;

    // canonically first matching meeting the cut exactly at a given edge
    let matching_through = |f: usize| -> Matching {
        matchings
            .iter()
            .find(|m| {
                m.contains(f) && m.edge_ids().iter().filter(|e| cut.edge_ids().contains(e)).count() == 1
            })
            .expect("separating cut: every cut edge is the unique cut edge of some matching")
            .clone()
    };

    // anchor edge: lowest id in the cut
    let e = *cut.edge_ids().iter().min().expect("cut is non-empty");
    let (a, b) = g.endpoints(e);
    let (u, v) = if in_shore[a] { (a, b) } else { (b, a) };
    let anchor = matching_through(e);

    // cut-edge ends, with the lowest incident cut edge for each
    let mut ends: Vec<(usize, usize)> = Vec::new(); // (vertex, cut edge)
    for &f in cut.edge_ids() {
        let (x, y) = g.endpoints(f);
        for w in [x, y] {
            if !ends.iter().any(|&(seen, _)| seen == w) {
                ends.push((w, f));
            }
        }
    }
    ends.sort_unstable();

    let mut paths = Vec::with_capacity(ends.len());
    for &(w, f) in &ends {
        if w == u || w == v {
            paths.push(AlternatingPath { end: w, vertices: vec![w], edge_ids: Vec::new() });
            continue;
        }
        let m_f = matching_through(f);
        let cycle = alternating_cycles(g, &anchor, &m_f)
            .into_iter()
            .find(|q| q.edge_ids().contains(&e))
            .expect("an alternating cycle through the anchor edge exists");
        debug_assert_eq!(
            cycle.edge_ids().iter().filter(|id| cut.edge_ids().contains(id)).count(),
            2,
            "the alternating cycle crosses the cut exactly at the anchor and f"
        );
        paths.push(extract_side_path(&cycle, e, f, if in_shore[w] { u } else { v }, w));
    }
    for p in &paths {
        debug_assert!(p.edge_ids.len() % 2 == 0, "alternating paths have even length");
    }

    let mut orientations = Vec::with_capacity(kd.k());
    let mut reversal_shores = Vec::with_capacity(kd.k());
    for d0 in kd.orientations() {
        let shore: Vec<usize> = paths
            .iter()
            .filter(|p| forward_arc_count(g, d0, p.steps()) % 2 == 1)
            .map(|p| p.end)
            .collect();
        let d = if shore.is_empty() {
            d0.clone()
        } else if shore.len() == n {
            d0.clone()
        } else {
            d0.reverse(g.make_cut(&shore)?.edge_ids())
        };
        // every path is now evenly oriented
        for p in &paths {
            assert_eq!(
                forward_arc_count(g, &d, p.steps()) % 2,
                0,
                "path to vertex {} still oddly oriented after reversal",
                p.end + 1
            );
        }
        orientations.push(d);
        reversal_shores.push(shore);
    }
    let korientation = KOrientation::new(orientations)?;

    // postcondition: both C-contractions are pfaffian k-orientations
    for shore in [cut.shore().to_vec(), complement] {
        let (contracted, edge_map) = g.contract_shore(&shore);
        let kc = contract_korientation(&korientation, &edge_map)?;
        assert!(
            solve_pfaffian_system(&signature_matrix(&contracted, &kc)?).is_some(),
            "C-contraction of the split orientation must be pfaffian"
        );
    }

    Ok(SplitResult { korientation, reversal_shores, paths })
}

/// Carries a k-orientation through a contraction edge map (old id ->
/// optional new id); contraction preserves stored endpoint order, so the
/// direction bits copy over.
pub fn contract_korientation(
    kd: &KOrientation,
    edge_map: &[Option<usize>],
) -> Result<KOrientation> {
    let new_count = edge_map.iter().flatten().count();
    let orientations = kd
        .orientations()
        .iter()
        .map(|d| {
            let mut bits = vec![false; new_count];
            for (old, new) in edge_map.iter().enumerate() {
                if let Some(new) = new {
                    bits[*new] = d.is_reversed(old);
                }
            }
            Orientation::from_bits(bits)
        })
        .collect();
    KOrientation::new(orientations)
}

/// The side of the cycle between the anchor and `w` that avoids both cut
/// edges, oriented from the anchor.
fn extract_side_path(
    cycle: &crate::graph::Cycle,
    e: usize,
    f: usize,
    anchor: usize,
    w: usize,
) -> AlternatingPath {
    let len = cycle.len();
    let pos_e = cycle.edge_ids().iter().position(|&id| id == e).expect("anchor edge in cycle");
    let pos_f = cycle.edge_ids().iter().position(|&id| id == f).expect("f in cycle");
    // the two arcs of the cycle strictly between edges e and f
    let mut arcs = Vec::new();
    for (start, stop) in [(pos_e, pos_f), (pos_f, pos_e)] {
        let mut vertices = Vec::new();
        let mut edge_ids = Vec::new();
        let mut i = (start + 1) % len;
        vertices.push(cycle.vertices()[i]);
        while i != stop {
            edge_ids.push(cycle.edge_ids()[i]);
            i = (i + 1) % len;
            vertices.push(cycle.vertices()[i]);
        }
        arcs.push((vertices, edge_ids));
    }
    for (mut vertices, mut edge_ids) in arcs {
        let first = *vertices.first().unwrap();
        let last = *vertices.last().unwrap();
        if (first, last) == (anchor, w) || (first, last) == (w, anchor) {
            if first != anchor {
                vertices.reverse();
                edge_ids.reverse();
            }
            debug_assert!(!edge_ids.contains(&e) && !edge_ids.contains(&f));
            return AlternatingPath { end: w, vertices, edge_ids };
        }
    }
    unreachable!("one cycle side joins the anchor to w");
}
