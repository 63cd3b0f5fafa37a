//! Deterministic generators for the graph families used throughout:
//! complete and complete bipartite graphs, cycles, the Petersen graph, and
//! the cyclic chain of bisubdivided K33 blocks.

use crate::error::{domain, Result};
use crate::graph::Graph;

/// K_{a,b} with the two sides contiguous: vertices 0..a and a..a+b, edges
/// in row-major order.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    assert!(a > 0 && b > 0, "sides must be positive");
    let mut edges = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    Graph::new(a + b, edges).expect("valid construction")
}

/// K_n with edges in lexicographic order.
pub fn complete(n: usize) -> Graph {
    assert!(n > 0, "size must be positive");
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Graph::new(n, edges).expect("valid construction")
}

/// The cycle C_n, edges (0,1), (1,2), ..., (n-1,0).
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, edges).expect("valid construction")
}

/// The Petersen graph: outer pentagon 0..5, inner pentagram 5..10, spokes
/// in between.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5)); // outer cycle
    }
    for i in 0..5 {
        edges.push((i, i + 5)); // spokes
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
    }
    Graph::new(10, edges).expect("valid construction")
}

/// Interior ear vertices of a chain block, in the order used to join the
/// blocks cyclically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockTags {
    /// Interior vertex of the first ear adjacent to its left side.
    pub u: usize,
    /// Interior vertex of the first ear adjacent to its right side.
    pub v: usize,
    /// Interior vertex of the second ear adjacent to its right side.
    pub p: usize,
    /// Interior vertex of the second ear adjacent to its left side.
    pub q: usize,
}

/// The chain block H: K33 with two disjoint edges replaced by ears of
/// length three.  10 vertices and 13 edges, with the four interior ear
/// vertices tagged.
///
/// The two bisubdivided edges are the first edges of the first two rows in
/// the canonical K33 enumeration; K33's automorphisms act transitively on
/// ordered pairs of disjoint edges, so the choice is sound, and the tests
/// assert that the retract is K33 again.
pub fn vyalyi_block() -> (Graph, BlockTags) {
    let k33 = complete_bipartite(3, 3);
    // edge 0 = (0,3): ear 0 - u - v - 3; vertices u=6, v=7
    let g = k33.bisubdivide(0, 3).expect("odd ear");
    // edge 4 = (1,4): ear 1 - q - p - 4; vertices q=8, p=9
    let g = g.bisubdivide(4, 3).expect("odd ear");
    // u adjacent to the left side, p adjacent to the right side: the
    // coloring puts u and p in opposite classes, keeping the chain bipartite
    (g, BlockTags { u: 6, v: 7, p: 9, q: 8 })
}

/// The cyclic chain of n blocks: block i joined to block i+1 by the edges
/// u_i p_{i+1} and v_i q_{i+1}, and block n back to block 1.  The result
/// is checked to be bipartite, cubic and matching covered.
pub fn vyalyi(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(domain("the chain needs at least one block"));
    }
    let (block, tags) = vyalyi_block();
    let bn = block.vertex_count();
    let bm = block.edge_count();
    let mut edges = Vec::with_capacity(n * (bm + 2));
    for i in 0..n {
        for &(u, v) in block.edges() {
            edges.push((i * bn + u, i * bn + v));
        }
    }
    for i in 0..n {
        let next = (i + 1) % n;
        edges.push((i * bn + tags.u, next * bn + tags.p));
        edges.push((i * bn + tags.v, next * bn + tags.q));
    }
    let g = Graph::new(n * bn, edges)?;
    assert!(g.is_bipartite(), "chain must be bipartite");
    assert!((0..g.vertex_count()).all(|v| g.degree(v) == 3), "chain must be cubic");
    assert!(g.is_matching_covered(), "chain must be matching covered");
    Ok(g)
}

/// Vertex set of block i inside `vyalyi(n)`.
pub fn vyalyi_block_vertices(i: usize) -> Vec<usize> {
    (i * 10..(i + 1) * 10).collect()
}

/// Recursive application of the conformal-subgraph lower bound: for
/// pairwise disjoint conformal parts with known pfaffian numbers, the
/// pfaffian number of the whole is at least the sum minus (parts - 1).
/// Conformality of every split is verified.
pub fn conformal_lower_bound(g: &Graph, parts: &[(Vec<usize>, usize)]) -> Result<usize> {
    if parts.is_empty() {
        return Err(domain("need at least one part"));
    }
    let mut used = vec![false; g.vertex_count()];
    for (part, _) in parts {
        for &v in part {
            if v >= g.vertex_count() {
                return Err(domain(format!("vertex {v} out of range")));
            }
            if used[v] {
                return Err(domain(format!("parts are not disjoint at vertex {}", v + 1)));
            }
            used[v] = true;
        }
    }
    // peel parts off one by one, checking both sides of each split
    let mut remaining = g.clone();
    let mut vertex_names: Vec<usize> = (0..g.vertex_count()).collect();
    for (part, _) in parts {
        let local: Vec<usize> = part
            .iter()
            .map(|&v| {
                vertex_names
                    .iter()
                    .position(|&orig| orig == v)
                    .ok_or_else(|| domain(format!("vertex {} consumed by an earlier part", v + 1)))
            })
            .collect::<Result<_>>()?;
        if !remaining.is_conformal(&local) {
            return Err(domain("part is not conformal in the remaining graph"));
        }
        let complement: Vec<usize> =
            (0..remaining.vertex_count()).filter(|v| !local.contains(v)).collect();
        let (rest, vmap, _) = remaining.induced(&complement);
        vertex_names = vmap.iter().map(|&local| vertex_names[local]).collect();
        remaining = rest;
    }
    let sum: usize = parts.iter().map(|&(_, pf)| pf).sum();
    Ok(sum - (parts.len() - 1))
}
