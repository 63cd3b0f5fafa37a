//! Tight cut decomposition into bricks and braces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, resource, Result};
use crate::limits::Limits;

use super::{Cut, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceKind {
    Brick,
    Brace,
}

#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub pieces: Vec<(Graph, PieceKind)>,
}

/// All non-trivial tight cuts of `g`, up to shore complementation (every
/// returned shore contains vertex 0).
pub fn nontrivial_tight_cuts(g: &Graph) -> Vec<Cut> {
    let n = g.vertex_count();
    let mut cuts = Vec::new();
    if n < 4 {
        return cuts;
    }
    // shores containing vertex 0, sizes 2..=n-2
    for mask in 0u64..(1u64 << (n - 1)) {
        let shore: Vec<usize> =
            std::iter::once(0).chain((1..n).filter(|&v| mask >> (v - 1) & 1 == 1)).collect();
        if shore.len() < 2 || shore.len() > n - 2 {
            continue;
        }
        let cut = g.make_cut(&shore).expect("proper shore");
        if g.is_tight(&cut).expect("matchable") {
            cuts.push(cut);
        }
    }
    cuts
}

/// Recursively contracts non-trivial tight cuts until only bricks and
/// braces remain.  `seed` drives the choice among multiple tight cuts so
/// tests can vary the order; by Lovász's theorem the resulting multiset is
/// seed-independent up to multiple edges.
pub fn tight_cut_decomposition(
    g: &Graph,
    seed: u64,
    limits: &Limits,
) -> Result<DecompositionResult> {
    if !g.is_matching_covered() {
        return Err(domain("tight cut decomposition needs a matching covered graph"));
    }
    if g.vertex_count() > limits.max_decomposition_vertices {
        return Err(resource(format!(
            "tight cut discovery limited to {} vertices",
            limits.max_decomposition_vertices
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = Vec::new();
    decompose(g, &mut rng, &mut pieces);
    Ok(DecompositionResult { pieces })
}

fn decompose(g: &Graph, rng: &mut ChaCha8Rng, pieces: &mut Vec<(Graph, PieceKind)>) {
    let cuts = nontrivial_tight_cuts(g);
    if cuts.is_empty() {
        let kind = if g.is_bipartite() { PieceKind::Brace } else { PieceKind::Brick };
        pieces.push((g.clone(), kind));
        return;
    }
    let cut = &cuts[rng.gen_range(0..cuts.len())];
    let complement: Vec<usize> = {
        let n = g.vertex_count();
        let mut inside = vec![false; n];
        for &v in cut.shore() {
            inside[v] = true;
        }
        (0..n).filter(|&v| !inside[v]).collect()
    };
    for shore in [cut.shore().to_vec(), complement] {
        let (piece, _) = g.contract_shore(&shore);
        debug_assert!(piece.is_matching_covered());
        decompose(&piece, rng, pieces);
    }
}
