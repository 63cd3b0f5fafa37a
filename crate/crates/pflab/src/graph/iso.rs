//! Brute-force isomorphism of small multigraphs via a canonical form.
//!
//! The canonical form is the lexicographically least row-major lower
//! triangle of the edge-multiplicity matrix over all vertex orderings,
//! found by branch and bound.

use crate::error::{resource, Result};
use crate::limits::Limits;

use super::Graph;

fn multiplicity_matrix(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut mult = vec![vec![0u32; n]; n];
    for &(u, v) in g.edges() {
        mult[u][v] += 1;
        mult[v][u] += 1;
    }
    mult
}

/// Canonical lower triangle: entry for position pair `(i, j)`, `j < i`, in
/// row-major order, minimized over all vertex permutations.
pub fn canonical_form(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mult = multiplicity_matrix(g);
    let mut best: Option<Vec<u32>> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut prefix = Vec::with_capacity(n * (n - 1) / 2);
    search(&mult, n, &mut perm, &mut used, &mut prefix, &mut best);
    best.unwrap_or_default()
}

fn search(
    mult: &[Vec<u32>],
    n: usize,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    prefix: &mut Vec<u32>,
    best: &mut Option<Vec<u32>>,
) {
    let level = perm.len();
    if level == n {
        match best {
            Some(b) if prefix.as_slice() >= b.as_slice() => {}
            _ => *best = Some(prefix.clone()),
        }
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        let row_start = prefix.len();
        let mut pruned = false;
        for (j, &u) in perm.iter().enumerate() {
            let entry = mult[v][u];
            if let Some(b) = best {
                match entry.cmp(&b[row_start + j]) {
                    std::cmp::Ordering::Greater if prefix[..row_start + j] == b[..row_start + j] => {
                        pruned = true;
                        break;
                    }
                    _ => {}
                }
            }
            prefix.push(entry);
        }
        if pruned {
            prefix.truncate(row_start);
            continue;
        }
        used[v] = true;
        perm.push(v);
        search(mult, n, perm, used, prefix, best);
        perm.pop();
        used[v] = false;
        prefix.truncate(row_start);
    }
}

/// Edge-multiplicity-preserving isomorphism test; with `as_simple` the
/// underlying simple graphs are compared instead.
pub fn is_isomorphic(a: &Graph, b: &Graph, as_simple: bool, limits: &Limits) -> Result<bool> {
    if a.vertex_count() > limits.max_iso_vertices || b.vertex_count() > limits.max_iso_vertices {
        return Err(resource(format!(
            "isomorphism limited to {} vertices",
            limits.max_iso_vertices
        )));
    }
    if a.vertex_count() != b.vertex_count() {
        return Ok(false);
    }
    let simplify = |g: &Graph| -> Graph {
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in g.edges() {
            seen.insert((u.min(v), u.max(v)));
        }
        Graph::new(g.vertex_count(), seen.into_iter().collect()).expect("valid edges")
    };
    let (a, b) = if as_simple { (simplify(a), simplify(b)) } else { (a.clone(), b.clone()) };
    if a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let degrees = |g: &Graph| {
        let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(&a) != degrees(&b) {
        return Ok(false);
    }
    Ok(canonical_form(&a) == canonical_form(&b))
}
