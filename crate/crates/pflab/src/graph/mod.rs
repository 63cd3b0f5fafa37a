//! Multigraphs, perfect matchings, cuts and contractions.
//!
//! Vertices are indexed `0..n` internally; the edge-list text format is
//! 1-based.  Parallel edges are allowed everywhere (contractions create
//! them), loops never are.

mod decompose;
mod iso;

pub use decompose::{
    nontrivial_tight_cuts, tight_cut_decomposition, DecompositionResult, PieceKind,
};
pub use iso::{canonical_form, is_isomorphic};

use crate::error::{domain, Error, Result};

/// Undirected multigraph with stable edge identifiers `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(domain(format!("edge {id} has endpoint out of range")));
            }
            if u == v {
                return Err(domain(format!("edge {id} is a loop")));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                a == v || b == v
            })
            .collect()
    }

    /// Per-vertex list of `(edge id, other endpoint)` in edge-id order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((id, v));
            adj[v].push((id, u));
        }
        adj
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(_, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A 2-coloring if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for &(_, w) in &adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Parses the edge-list format: a header line `n m` followed by `m`
    /// lines `u v` with 1-based endpoints.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines
            .next()
            .ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let parse_pair = |line: usize, s: &str| -> Result<(usize, usize)> {
            let mut it = s.split_whitespace();
            let a = it.next().and_then(|t| t.parse::<usize>().ok());
            let b = it.next().and_then(|t| t.parse::<usize>().ok());
            match (a, b, it.next()) {
                (Some(a), Some(b), None) => Ok((a, b)),
                _ => Err(Error::Parse { line, msg: format!("expected two integers, got {s:?}") }),
            }
        };
        let (n, m) = parse_pair(header_line, header)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, body) = lines.next().ok_or_else(|| Error::Parse {
                line: header_line + edges.len() + 1,
                msg: format!("expected {m} edges, got {}", edges.len()),
            })?;
            let (u, v) = parse_pair(line, body)?;
            if u < 1 || u > n || v < 1 || v > n {
                return Err(Error::Parse { line, msg: format!("endpoint out of range 1..{n}") });
            }
            if u == v {
                return Err(Error::Parse { line, msg: format!("loop at vertex {u}") });
            }
            edges.push((u - 1, v - 1));
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing content after edge list".into() });
        }
        Ok(Graph { n, edges })
    }

    /// Serializes back to the edge-list format, preserving edge order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Induced subgraph on `vertices`; returns the subgraph together with
    /// the vertex map (new -> old) and edge map (new -> old).
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if old_to_new[u] != usize::MAX && old_to_new[v] != usize::MAX {
                edges.push((old_to_new[u], old_to_new[v]));
                edge_map.push(id);
            }
        }
        (Graph { n: keep.len(), edges }, keep, edge_map)
    }

    /// Every graph with an even number of vertices and a perfect matching,
    /// plus the empty graph by convention.
    pub fn is_matchable(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        if self.n % 2 != 0 {
            return false;
        }
        !self.perfect_matchings_raw(true).is_empty()
    }

    /// All perfect matchings in canonical order (lexicographic on sorted
    /// edge-id sets).
    pub fn enumerate_perfect_matchings(&self) -> Result<Vec<Matching>> {
        if self.n % 2 != 0 {
            return Err(domain("perfect matchings require an even vertex count"));
        }
        Ok(self
            .perfect_matchings_raw(false)
            .into_iter()
            .map(|edge_ids| Matching { edge_ids })
            .collect())
    }

    fn perfect_matchings_raw(&self, stop_at_first: bool) -> Vec<Vec<usize>> {
        if self.n % 2 != 0 {
            return Vec::new();
        }
        let adj = self.adjacency();
        let mut covered = vec![false; self.n];
        let mut current = Vec::with_capacity(self.n / 2);
        let mut out = Vec::new();
        fn go(
            adj: &[Vec<(usize, usize)>],
            covered: &mut [bool],
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            stop_at_first: bool,
        ) {
            if stop_at_first && !out.is_empty() {
                return;
            }
            let Some(v) = covered.iter().position(|&c| !c) else {
                let mut m = current.clone();
                m.sort_unstable();
                out.push(m);
                return;
            };
            covered[v] = true;
            for &(e, w) in &adj[v] {
                if !covered[w] {
                    covered[w] = true;
                    current.push(e);
                    go(adj, covered, current, out, stop_at_first);
                    current.pop();
                    covered[w] = false;
                }
            }
            covered[v] = false;
        }
        go(&adj, &mut covered, &mut current, &mut out, stop_at_first);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Connected, has an edge, and every edge lies in some perfect matching.
    pub fn is_matching_covered(&self) -> bool {
        if self.edges.is_empty() || !self.is_connected() || self.n % 2 != 0 {
            return false;
        }
        let matchings = self.perfect_matchings_raw(false);
        let mut matched = vec![false; self.edges.len()];
        for m in &matchings {
            for &e in m {
                matched[e] = true;
            }
        }
        matched.into_iter().all(|b| b)
    }

    /// True iff both the induced subgraph on `vertices` and the one on the
    /// complement are matchable.
    pub fn is_conformal(&self, vertices: &[usize]) -> bool {
        let complement: Vec<usize> = {
            let mut inside = vec![false; self.n];
            for &v in vertices {
                inside[v] = true;
            }
            (0..self.n).filter(|&v| !inside[v]).collect()
        };
        self.induced(vertices).0.is_matchable() && self.induced(&complement).0.is_matchable()
    }

    pub fn make_cut(&self, shore: &[usize]) -> Result<Cut> {
        let mut inside = vec![false; self.n];
        for &v in shore {
            if v >= self.n {
                return Err(domain(format!("shore vertex {v} out of range")));
            }
            inside[v] = true;
        }
        let size = inside.iter().filter(|&&b| b).count();
        if size == 0 || size == self.n {
            return Err(domain("cut shore must be a proper non-empty vertex set"));
        }
        let edge_ids = (0..self.edges.len())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                inside[u] != inside[v]
            })
            .collect();
        let mut shore: Vec<usize> = (0..self.n).filter(|&v| inside[v]).collect();
        shore.sort_unstable();
        Ok(Cut { shore, edge_ids })
    }

    /// True iff every perfect matching meets the cut in exactly one edge.
    pub fn is_tight(&self, cut: &Cut) -> Result<bool> {
        if !self.is_matchable() {
            return Err(domain("tightness is defined for matchable graphs"));
        }
        let in_cut = cut.edge_membership(self.edges.len());
        Ok(self
            .perfect_matchings_raw(false)
            .iter()
            .all(|m| m.iter().filter(|&&e| in_cut[e]).count() == 1))
    }

    /// True iff both C-contractions are matching covered.  Also evaluates
    /// the edge-wise characterization (each edge lies in a perfect matching
    /// meeting the cut once) and asserts the two tests agree.
    pub fn is_separating(&self, cut: &Cut) -> Result<bool> {
        if !self.is_matching_covered() {
            return Err(domain("separating cuts are defined for matching covered graphs"));
        }
        let in_cut = cut.edge_membership(self.edges.len());
        let matchings = self.perfect_matchings_raw(false);
        let mut witnessed = vec![false; self.edges.len()];
        for m in &matchings {
            if m.iter().filter(|&&e| in_cut[e]).count() == 1 {
                for &e in m {
                    witnessed[e] = true;
                }
            }
        }
        let by_edges = witnessed.into_iter().all(|b| b);

        let complement: Vec<usize> = {
            let mut inside = vec![false; self.n];
            for &v in &cut.shore {
                inside[v] = true;
            }
            (0..self.n).filter(|&v| !inside[v]).collect()
        };
        let by_contractions = self.contract_shore(&cut.shore).0.is_matching_covered()
            && self.contract_shore(&complement).0.is_matching_covered();
        assert_eq!(
            by_edges, by_contractions,
            "separating-cut characterization disagrees with the definition"
        );
        Ok(by_contractions)
    }

    /// Contracts `shore` to a single vertex (enumerated last), removing the
    /// resulting loops and keeping parallel edges.  Returns the contracted
    /// graph and the edge map (old id -> new id, `None` for removed loops).
    pub fn contract_shore(&self, shore: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut inside = vec![false; self.n];
        for &v in shore {
            inside[v] = true;
        }
        let kept: Vec<usize> = (0..self.n).filter(|&v| !inside[v]).collect();
        let hub = kept.len();
        let mut map = vec![hub; self.n];
        for (new, &old) in kept.iter().enumerate() {
            map[old] = new;
        }
        let mut edges = Vec::new();
        let mut edge_map = vec![None; self.edges.len()];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            let (nu, nv) = (map[u], map[v]);
            if nu == nv {
                continue; // loop inside the shore
            }
            edge_map[id] = Some(edges.len());
            edges.push((nu, nv));
        }
        (Graph { n: hub + 1, edges }, edge_map)
    }

    /// Contraction of a degree-2 vertex with its two neighbours.
    pub fn bicontract(&self, v: usize) -> Result<Graph> {
        if self.n < 4 {
            return Err(domain("bicontraction needs at least 4 vertices"));
        }
        let incident = self.incident_edges(v);
        if incident.len() != 2 {
            return Err(domain(format!("vertex {} does not have degree 2", v + 1)));
        }
        let mut shore = vec![v];
        for e in incident {
            let (a, b) = self.edges[e];
            shore.push(if a == v { b } else { a });
        }
        Ok(self.contract_shore(&shore).0)
    }

    /// Repeated bicontraction until no degree-2 vertex remains; the result
    /// is order-independent up to isomorphism.
    pub fn retract(&self) -> Graph {
        self.retract_with(|candidates| candidates[0])
    }

    /// Retract with an explicit policy choosing among degree-2 vertices,
    /// used to test order-independence.
    pub fn retract_with(&self, mut pick: impl FnMut(&[usize]) -> usize) -> Graph {
        let mut g = self.clone();
        loop {
            if g.n < 4 {
                return g;
            }
            let candidates: Vec<usize> = (0..g.n).filter(|&v| g.degree(v) == 2).collect();
            if candidates.is_empty() {
                return g;
            }
            let v = pick(&candidates);
            g = g.bicontract(v).expect("degree-2 candidate");
        }
    }

    /// Replaces an edge by an ear of odd length through fresh degree-2
    /// vertices.  `ear_length` counts edges; length 1 leaves the graph
    /// unchanged up to edge identity.
    pub fn bisubdivide(&self, edge: usize, ear_length: usize) -> Result<Graph> {
        if ear_length % 2 == 0 || ear_length == 0 {
            return Err(domain("ear length must be odd"));
        }
        if edge >= self.edges.len() {
            return Err(domain(format!("edge {edge} out of range")));
        }
        if ear_length == 1 {
            return Ok(self.clone());
        }
        let (u, v) = self.edges[edge];
        let interior = ear_length - 1;
        let mut edges = self.edges.clone();
        // first ear edge takes the replaced edge's id, the rest go last
        edges[edge] = (u, self.n);
        for i in 0..interior - 1 {
            edges.push((self.n + i, self.n + i + 1));
        }
        edges.push((self.n + interior - 1, v));
        Ok(Graph { n: self.n + interior, edges })
    }
}

/// A matching, stored as a sorted set of edge ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matching {
    edge_ids: Vec<usize>,
}

impl Matching {
    pub fn new(g: &Graph, mut edge_ids: Vec<usize>) -> Result<Matching> {
        edge_ids.sort_unstable();
        edge_ids.dedup();
        let mut covered = vec![false; g.vertex_count()];
        for &e in &edge_ids {
            if e >= g.edge_count() {
                return Err(domain(format!("edge {e} out of range")));
            }
            let (u, v) = g.endpoints(e);
            if covered[u] || covered[v] {
                return Err(domain("edges are not pairwise non-adjacent"));
            }
            covered[u] = true;
            covered[v] = true;
        }
        Ok(Matching { edge_ids })
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edge_ids
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edge_ids.binary_search(&edge).is_ok()
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.edge_ids.len() * 2 == g.vertex_count()
    }

    /// Symmetric difference as an edge-id set.
    pub fn symmetric_difference(&self, other: &Matching) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edge_ids
            .iter()
            .filter(|e| !other.contains(**e))
            .chain(other.edge_ids.iter().filter(|e| !self.contains(**e)))
            .copied()
            .collect();
        out.sort_unstable();
        out
    }
}

/// A cut, stored as its shore together with the derived edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    shore: Vec<usize>,
    edge_ids: Vec<usize>,
}

impl Cut {
    pub fn shore(&self) -> &[usize] {
        &self.shore
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edge_ids
    }

    pub fn is_trivial(&self, g: &Graph) -> bool {
        self.shore.len() == 1 || self.shore.len() == g.vertex_count() - 1
    }

    pub(crate) fn edge_membership(&self, edge_count: usize) -> Vec<bool> {
        let mut in_cut = vec![false; edge_count];
        for &e in &self.edge_ids {
            in_cut[e] = true;
        }
        in_cut
    }
}

/// A cycle as a closed walk with distinct vertices: edge `i` joins
/// `vertices[i]` and `vertices[(i+1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<usize>,
    edge_ids: Vec<usize>,
}

impl Cycle {
    pub fn new(g: &Graph, vertices: Vec<usize>, edge_ids: Vec<usize>) -> Result<Cycle> {
        if vertices.len() != edge_ids.len() || vertices.len() < 2 {
            return Err(domain("cycle needs matching vertex and edge sequences"));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(domain("cycle vertices must be distinct"));
            }
        }
        for i in 0..vertices.len() {
            let (a, b) = g.endpoints(edge_ids[i]);
            let (x, y) = (vertices[i], vertices[(i + 1) % vertices.len()]);
            if (a, b) != (x, y) && (a, b) != (y, x) {
                return Err(domain(format!("edge {} does not join consecutive vertices", edge_ids[i])));
            }
        }
        Ok(Cycle { vertices, edge_ids })
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edge_ids
    }

    /// Successive `(from, to, edge)` steps of the traversal.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.vertices.len()).map(move |i| {
            (self.vertices[i], self.vertices[(i + 1) % self.vertices.len()], self.edge_ids[i])
        })
    }
}
