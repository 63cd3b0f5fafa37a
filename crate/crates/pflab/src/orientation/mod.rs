//! Orientations, matching and cycle signs, k-orientations and signature
//! matrices.

mod search;
mod split;

pub use search::{
    orientation_class_representatives, pfaffian_number, PfaffianNumber, PfaffianNumberStatus,
    SearchOptions,
};
pub use split::{split_orientation_at_cut, AlternatingPath, SplitResult};

use num_rational::BigRational;

use crate::error::{domain, Result};
use crate::graph::{Cycle, Graph, Matching};
use crate::linalg::{solve, RationalMatrix};

/// An orientation of a graph: one direction bit per edge id.  Bit 0 means
/// the edge is oriented as stored, `(u, v)` read as the arc u -> v.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    reversed: Vec<bool>,
}

impl Orientation {
    /// The reference orientation: every edge as stored.
    pub fn reference(g: &Graph) -> Orientation {
        Orientation { reversed: vec![false; g.edge_count()] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Orientation {
        Orientation { reversed: bits }
    }

    /// Parses a bit string such as `0110`, one character per edge id.
    pub fn parse(s: &str, edge_count: usize) -> Result<Orientation> {
        let s = s.trim();
        if s.len() != edge_count {
            return Err(domain(format!("expected {} direction bits, got {}", edge_count, s.len())));
        }
        let mut reversed = Vec::with_capacity(edge_count);
        for c in s.chars() {
            match c {
                '0' => reversed.push(false),
                '1' => reversed.push(true),
                _ => return Err(domain(format!("invalid direction bit {c:?}"))),
            }
        }
        Ok(Orientation { reversed })
    }

    pub fn to_bit_string(&self) -> String {
        self.reversed.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.reversed.len()
    }

    pub fn is_reversed(&self, edge: usize) -> bool {
        self.reversed[edge]
    }

    /// The arc of `edge` as `(tail, head)`.
    pub fn arc(&self, g: &Graph, edge: usize) -> (usize, usize) {
        let (u, v) = g.endpoints(edge);
        if self.reversed[edge] {
            (v, u)
        } else {
            (u, v)
        }
    }

    /// `D rev F`: the orientation with every edge of `F` reversed.
    pub fn reverse(&self, edge_ids: &[usize]) -> Orientation {
        let mut reversed = self.reversed.clone();
        for &e in edge_ids {
            reversed[e] = !reversed[e];
        }
        Orientation { reversed }
    }

    /// Edges on which the two orientations disagree.
    pub fn difference(&self, other: &Orientation) -> Vec<usize> {
        (0..self.reversed.len()).filter(|&e| self.reversed[e] != other.reversed[e]).collect()
    }
}

/// The sign of a perfect matching in an orientation: the parity of the
/// permutation listing the matched pairs tail-first.
pub fn matching_sign(g: &Graph, d: &Orientation, m: &Matching) -> Result<i8> {
    if !m.is_perfect(g) {
        return Err(domain("matching sign is defined for perfect matchings"));
    }
    let sign = matching_sign_for_order(g, d, m.edge_ids());
    if cfg!(debug_assertions) && m.edge_ids().len() > 1 {
        // independence of the edge listing order
        let mut swapped = m.edge_ids().to_vec();
        swapped.swap(0, 1);
        debug_assert_eq!(sign, matching_sign_for_order(g, d, &swapped));
    }
    Ok(sign)
}

fn matching_sign_for_order(g: &Graph, d: &Orientation, edges: &[usize]) -> i8 {
    let mut image = Vec::with_capacity(edges.len() * 2);
    for &e in edges {
        let (tail, head) = d.arc(g, e);
        image.push(tail);
        image.push(head);
    }
    permutation_sign(&image)
}

/// Sign of the permutation i -> image[i] via cycle decomposition.
fn permutation_sign(image: &[usize]) -> i8 {
    let mut seen = vec![false; image.len()];
    let mut sign = 1i8;
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = image[v];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sign of a conformal (even) cycle: +1 iff the number of forward arcs is
/// odd.  Invariant under traversal direction and starting vertex.
pub fn cycle_sign(g: &Graph, d: &Orientation, q: &Cycle) -> Result<i8> {
    if q.len() % 2 != 0 {
        return Err(domain("cycle sign is defined for even cycles"));
    }
    let forward = forward_arc_count(g, d, q.steps());
    Ok(if forward % 2 == 1 { 1 } else { -1 })
}

pub(crate) fn forward_arc_count(
    g: &Graph,
    d: &Orientation,
    steps: impl Iterator<Item = (usize, usize, usize)>,
) -> usize {
    steps.filter(|&(from, _, edge)| d.arc(g, edge).0 == from).count()
}

/// Decomposes `m` triangle `n` into its vertex-disjoint alternating cycles.
pub fn alternating_cycles(g: &Graph, m: &Matching, n: &Matching) -> Vec<Cycle> {
    let diff = m.symmetric_difference(n);
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for &e in &diff {
        let (u, v) = g.endpoints(e);
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut used = vec![false; g.edge_count()];
    let mut cycles = Vec::new();
    for start in 0..g.vertex_count() {
        if incident[start].is_empty() || incident[start].iter().all(|&e| used[e]) {
            continue;
        }
        let mut vertices = vec![start];
        let mut edge_ids = Vec::new();
        let mut at = start;
        loop {
            let &e = incident[at].iter().find(|&&e| !used[e]).expect("degree 2 in difference");
            used[e] = true;
            let (u, v) = g.endpoints(e);
            at = if u == at { v } else { u };
            edge_ids.push(e);
            if at == start {
                break;
            }
            vertices.push(at);
        }
        cycles.push(Cycle::new(g, vertices, edge_ids).expect("closed walk"));
    }
    cycles
}

/// True iff the two orientations differ by the reversal of a cut, decided
/// by membership of the difference set in the binary cut space.
pub fn are_similar(g: &Graph, d1: &Orientation, d2: &Orientation) -> bool {
    let diff = d1.difference(d2);
    cut_space_preimage(g, &diff).is_some()
}

/// A shore X with boundary exactly `edge_set`, if one exists.
pub fn cut_space_preimage(g: &Graph, edge_set: &[usize]) -> Option<Vec<usize>> {
    // Solve incidence^T x = chi_F over GF(2): one equation per edge.
    let n = g.vertex_count();
    let mut target = vec![false; g.edge_count()];
    for &e in edge_set {
        target[e] = true;
    }
    // rows: (bitmask over vertices, rhs)
    let mut rows: Vec<(u64, bool)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| ((1u64 << u) | (1u64 << v), target[e]))
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column)
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..rows.len()).find(|&r| rows[r].0 >> col & 1 == 1) else {
            continue;
        };
        rows.swap(row, r);
        for other in 0..rows.len() {
            if other != row && rows[other].0 >> col & 1 == 1 {
                rows[other].0 ^= rows[row].0;
                rows[other].1 ^= rows[row].1;
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    if rows[row..].iter().any(|&(mask, rhs)| mask == 0 && rhs) {
        return None;
    }
    let mut x = vec![false; n];
    for &(r, c) in &pivots {
        x[c] = rows[r].1;
    }
    Some((0..n).filter(|&v| x[v]).collect())
}

/// A vector of k orientations of the same graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KOrientation {
    orientations: Vec<Orientation>,
}

impl KOrientation {
    pub fn new(orientations: Vec<Orientation>) -> Result<KOrientation> {
        if orientations.is_empty() {
            return Err(domain("a k-orientation needs k >= 1"));
        }
        let m = orientations[0].edge_count();
        if orientations.iter().any(|o| o.edge_count() != m) {
            return Err(domain("all orientations must be over the same graph"));
        }
        Ok(KOrientation { orientations })
    }

    pub fn k(&self) -> usize {
        self.orientations.len()
    }

    pub fn orientations(&self) -> &[Orientation] {
        &self.orientations
    }

    /// Parses one bit string per line.
    pub fn parse(text: &str, edge_count: usize) -> Result<KOrientation> {
        let orientations = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| Orientation::parse(l, edge_count))
            .collect::<Result<Vec<_>>>()?;
        KOrientation::new(orientations)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.orientations {
            out.push_str(&o.to_bit_string());
            out.push('\n');
        }
        out
    }
}

/// The signature matrix of a k-orientation: rows are perfect matchings in
/// canonical order, columns are orientations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    entries: Vec<Vec<i8>>, // entries[row][col]
}

impl SignMatrix {
    pub fn from_entries(entries: Vec<Vec<i8>>) -> SignMatrix {
        debug_assert!(entries.iter().flatten().all(|&s| s == 1 || s == -1));
        SignMatrix { entries }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.entries[row][col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        &self.entries[row]
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.rows(), self.cols(), |r, c| {
            BigRational::from_integer(self.entries[r][c].into())
        })
    }
}

pub fn signature_matrix(g: &Graph, kd: &KOrientation) -> Result<SignMatrix> {
    let matchings = g.enumerate_perfect_matchings()?;
    if matchings.is_empty() {
        return Err(domain("signature matrix needs at least one perfect matching"));
    }
    let entries = matchings
        .iter()
        .map(|m| {
            kd.orientations().iter().map(|d| matching_sign(g, d, m)).collect::<Result<Vec<i8>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SignMatrix::from_entries(entries))
}

/// The sign column of a single orientation in canonical matching order.
pub fn sign_vector(g: &Graph, d: &Orientation, matchings: &[Matching]) -> Result<Vec<i8>> {
    matchings.iter().map(|m| matching_sign(g, d, m)).collect()
}

/// An exact solution of `sign_D x = 1`, when one exists.
pub fn solve_pfaffian_system(s: &SignMatrix) -> Option<Vec<BigRational>> {
    use num_traits::One;
    let ones = vec![BigRational::one(); s.rows()];
    solve(&s.to_rational(), &ones)
}

pub fn is_pfaffian_orientation(g: &Graph, d: &Orientation) -> Result<bool> {
    let matchings = g.enumerate_perfect_matchings()?;
    if matchings.is_empty() {
        return Err(domain("pfaffian-ness needs at least one perfect matching"));
    }
    let signs = sign_vector(g, d, &matchings)?;
    Ok(signs.windows(2).all(|w| w[0] == w[1]))
}

/// Restriction of a k-orientation to a conformal vertex set and its
/// complement; each part carries its subgraph and edge map (new -> old).
pub struct Restriction {
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub korientation: KOrientation,
}

pub fn restrict_korientation(
    g: &Graph,
    kd: &KOrientation,
    vertices: &[usize],
) -> Result<(Restriction, Restriction)> {
    if !g.is_conformal(vertices) {
        return Err(domain("restriction requires a conformal vertex set"));
    }
    let mut inside = vec![false; g.vertex_count()];
    for &v in vertices {
        inside[v] = true;
    }
    let complement: Vec<usize> = (0..g.vertex_count()).filter(|&v| !inside[v]).collect();
    let restrict = |set: &[usize]| -> Result<Restriction> {
        let (graph, vertex_map, edge_map) = g.induced(set);
        let orientations = kd
            .orientations()
            .iter()
            .map(|d| Orientation::from_bits(edge_map.iter().map(|&e| d.is_reversed(e)).collect()))
            .collect();
        Ok(Restriction { graph, vertex_map, edge_map, korientation: KOrientation::new(orientations)? })
    };
    Ok((restrict(vertices)?, restrict(&complement)?))
}
