/// Resource limits for the exhaustive searches.
///
/// Everything here exists because the underlying problems are enumerated by
/// brute force and must be kept at desk scale.  The defaults can be
/// overridden through the `PFLAB_LIMITS` environment variable, a
/// comma-separated list of `key=value` pairs with keys `decomp`, `iso`,
/// `edges`, `classes` and `symbolic`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Vertex limit for tight-cut discovery by shore enumeration.
    pub max_decomposition_vertices: usize,
    /// Vertex limit for brute-force isomorphism.
    pub max_iso_vertices: usize,
    /// Edge limit for orientation-class enumeration.
    pub max_edges: usize,
    /// Cap on the number of similarity classes (2^(m-n+1)).
    pub max_classes: usize,
    /// Cap on the dimension d of symbolic labelings.
    pub max_symbolic_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_decomposition_vertices: 14,
            max_iso_vertices: 12,
            max_edges: 24,
            max_classes: 1024,
            max_symbolic_dim: 24,
        }
    }
}

impl Limits {
    /// Defaults overridden by `PFLAB_LIMITS`, silently ignoring unknown keys.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(spec) = std::env::var("PFLAB_LIMITS") {
            for part in spec.split(',') {
                let Some((key, value)) = part.split_once('=') else {
                    continue;
                };
                let Ok(value) = value.trim().parse::<usize>() else {
                    continue;
                };
                match key.trim() {
                    "decomp" => limits.max_decomposition_vertices = value,
                    "iso" => limits.max_iso_vertices = value,
                    "edges" => limits.max_edges = value,
                    "classes" => limits.max_classes = value,
                    "symbolic" => limits.max_symbolic_dim = value,
                    _ => {}
                }
            }
        }
        limits
    }
}
