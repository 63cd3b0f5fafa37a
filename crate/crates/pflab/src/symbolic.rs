//! The symbolic pfaffian method: GF(2)^d edge labelings, the multilinear
//! ring with exponents modulo 2, and counting perfect matchings through
//! the symbolic pfaffian.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, resource, Result};
use crate::graph::{Graph, Matching};
use crate::limits::Limits;
use crate::linalg::{pf_star, skew_adjacency};
use crate::orientation::{matching_sign, KOrientation, Orientation};

/// Exponent vector in GF(2)^d, packed into the low `d` bits.
pub type ExponentVector = u64;

/// A d-symbolic edge labeling: one bit vector per edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicLabeling {
    d: usize,
    tau: Vec<ExponentVector>,
}

impl SymbolicLabeling {
    pub fn new(d: usize, tau: Vec<ExponentVector>, limits: &Limits) -> Result<SymbolicLabeling> {
        if d > limits.max_symbolic_dim {
            return Err(resource(format!(
                "symbolic dimension limited to {}",
                limits.max_symbolic_dim
            )));
        }
        if d < 64 {
            if let Some(bad) = tau.iter().position(|&t| t >> d != 0) {
                return Err(domain(format!("label of edge {bad} uses more than {d} bits")));
            }
        }
        Ok(SymbolicLabeling { d, tau })
    }

    pub fn zero(d: usize, edge_count: usize, limits: &Limits) -> Result<SymbolicLabeling> {
        SymbolicLabeling::new(d, vec![0; edge_count], limits)
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn label(&self, edge: usize) -> ExponentVector {
        self.tau[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.tau.len()
    }

    /// XOR of the labels of a matching's edges.
    pub fn of_matching(&self, m: &Matching) -> ExponentVector {
        m.edge_ids().iter().fold(0, |acc, &e| acc ^ self.tau[e])
    }

    /// JSON form `{"d": d, "tau": {"edge": "bits", ...}}` with labels as
    /// bit strings, least significant coordinate first.
    pub fn to_json(&self) -> serde_json::Value {
        let tau: BTreeMap<String, String> = self
            .tau
            .iter()
            .enumerate()
            .map(|(e, &t)| (e.to_string(), bits_to_string(t, self.d)))
            .collect();
        serde_json::json!({ "d": self.d, "tau": tau })
    }

    pub fn from_json(value: &serde_json::Value, edge_count: usize, limits: &Limits) -> Result<SymbolicLabeling> {
        #[derive(Deserialize, Serialize)]
        struct Repr {
            d: usize,
            tau: BTreeMap<String, String>,
        }
        let repr: Repr = serde_json::from_value(value.clone())
            .map_err(|e| domain(format!("invalid labeling json: {e}")))?;
        let mut tau = vec![0u64; edge_count];
        for (edge, bits) in &repr.tau {
            let e: usize =
                edge.parse().map_err(|_| domain(format!("invalid edge id {edge:?}")))?;
            if e >= edge_count {
                return Err(domain(format!("edge id {e} out of range")));
            }
            tau[e] = string_to_bits(bits, repr.d)?;
        }
        SymbolicLabeling::new(repr.d, tau, limits)
    }
}

fn bits_to_string(t: ExponentVector, d: usize) -> String {
    (0..d).map(|i| if t >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn string_to_bits(s: &str, d: usize) -> Result<ExponentVector> {
    if s.len() != d {
        return Err(domain(format!("expected {d} bits, got {}", s.len())));
    }
    let mut t = 0u64;
    for (i, c) in s.chars().enumerate() {
        match c {
            '1' => t |= 1 << i,
            '0' => {}
            _ => return Err(domain(format!("invalid bit {c:?}"))),
        }
    }
    Ok(t)
}

/// Element of the integer polynomial ring in d variables with exponents
/// modulo 2: a sparse map from exponent vectors to coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPoly {
    d: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl RingPoly {
    pub fn zero(d: usize) -> RingPoly {
        RingPoly { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, value: BigInt) -> RingPoly {
        let mut p = RingPoly::zero(d);
        if !value.is_zero() {
            p.terms.insert(0, value);
        }
        p
    }

    pub fn monomial(d: usize, exponents: ExponentVector, coefficient: BigInt) -> RingPoly {
        let mut p = RingPoly::zero(d);
        if !coefficient.is_zero() {
            p.terms.insert(exponents, coefficient);
        }
        p
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn neg(&self) -> RingPoly {
        RingPoly { d: self.d, terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }

    pub fn add(&self, other: &RingPoly) -> Result<RingPoly> {
        if self.d != other.d {
            return Err(domain("ring dimension mismatch"));
        }
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        Ok(RingPoly { d: self.d, terms })
    }

    /// Multiplication combines exponents by XOR (the t_i^2 = 1 relation).
    pub fn mul(&self, other: &RingPoly) -> Result<RingPoly> {
        if self.d != other.d {
            return Err(domain("ring dimension mismatch"));
        }
        let mut terms: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                let entry = terms.entry(e1 ^ e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(RingPoly { d: self.d, terms })
    }

    /// Sum of absolute values of the coefficients.
    pub fn coefficient_abs_sum(&self) -> BigInt {
        self.terms.values().map(Signed::abs).sum()
    }

    /// Evaluation with every variable set to 1.
    pub fn eval_all_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// JSON object mapping exponent bit strings to coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(&e, c)| (bits_to_string(e, self.d), c.to_string()))
            .collect();
        serde_json::json!(map)
    }
}

/// The pfaffian d-symbolic test: differing matching signs must force
/// differing labels.  Checked by bucketing matchings on their label and
/// requiring a constant sign per bucket.
pub fn is_pfaffian_symbolic(g: &Graph, d0: &Orientation, l: &SymbolicLabeling) -> Result<bool> {
    let matchings = g.enumerate_perfect_matchings()?;
    let mut buckets: BTreeMap<ExponentVector, i8> = BTreeMap::new();
    for m in &matchings {
        let sign = matching_sign(g, d0, m)?;
        match buckets.entry(l.of_matching(m)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(sign);
            }
            std::collections::btree_map::Entry::Occupied(e) => {
                if *e.get() != sign {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The obstruction pair for a non-pfaffian symbolic orientation: two
/// matchings with equal labels and different signs.
pub fn symbolic_obstruction(
    g: &Graph,
    d0: &Orientation,
    l: &SymbolicLabeling,
) -> Result<Option<(Matching, Matching)>> {
    let matchings = g.enumerate_perfect_matchings()?;
    let mut buckets: BTreeMap<ExponentVector, (i8, &Matching)> = BTreeMap::new();
    for m in &matchings {
        let sign = matching_sign(g, d0, m)?;
        if let Some(&(prev_sign, prev)) = buckets.get(&l.of_matching(m)) {
            if prev_sign != sign {
                return Ok(Some((prev.clone(), m.clone())));
            }
        } else {
            buckets.insert(l.of_matching(m), (sign, m));
        }
    }
    Ok(None)
}

/// The skew matrix over the ring: each adjacency entry times the monomial
/// of its edge label.
pub fn symbolic_matrix(
    g: &Graph,
    d0: &Orientation,
    l: &SymbolicLabeling,
) -> Result<Vec<Vec<RingPoly>>> {
    let skew = skew_adjacency(g, d0)?; // rejects parallel edges
    let n = g.vertex_count();
    let d = l.dimension();
    let mut m = vec![vec![RingPoly::zero(d); n]; n];
    for e in 0..g.edge_count() {
        let (tail, head) = d0.arc(g, e);
        let mono = RingPoly::monomial(d, l.label(e), BigInt::one());
        m[tail][head] = mono.clone();
        m[head][tail] = mono.neg();
    }
    debug_assert!((0..n).all(|i| (0..n).all(|j| {
        let expected = skew.entry(i, j).clone();
        let got = m[i][j].eval_all_ones();
        expected == got
    })));
    Ok(m)
}

/// Pfaffian over the ring by expansion along the first row.
pub fn pfaffian_ring(m: &[Vec<RingPoly>]) -> Result<RingPoly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(domain("matrix must be square"));
    }
    let d = if n == 0 { 0 } else { m[0][0].dimension() };
    let idx: Vec<usize> = (0..n).collect();
    pfaffian_ring_sub(m, d, &idx)
}

fn pfaffian_ring_sub(m: &[Vec<RingPoly>], d: usize, idx: &[usize]) -> Result<RingPoly> {
    if idx.is_empty() {
        return Ok(RingPoly::constant(d, BigInt::one()));
    }
    if idx.len() % 2 != 0 {
        return Ok(RingPoly::zero(d));
    }
    let mut total = RingPoly::zero(d);
    for j in 1..idx.len() {
        let coeff = &m[idx[0]][idx[j]];
        if coeff.is_zero() {
            continue;
        }
        let rest: Vec<usize> =
            idx.iter().enumerate().filter(|&(k, _)| k != 0 && k != j).map(|(_, &v)| v).collect();
        let term = coeff.mul(&pfaffian_ring_sub(m, d, &rest)?)?;
        total = if j % 2 == 1 { total.add(&term)? } else { total.add(&term.neg())? };
    }
    Ok(total)
}

/// Counts perfect matchings as the sum of absolute coefficient values of
/// the symbolic pfaffian.  Refuses non-pfaffian symbolic orientations
/// because the counting identity only holds for pfaffian ones.
pub fn count_via_symbolic(g: &Graph, d0: &Orientation, l: &SymbolicLabeling) -> Result<BigInt> {
    if !is_pfaffian_symbolic(g, d0, l)? {
        return Err(domain("symbolic orientation is not pfaffian"));
    }
    let m = symbolic_matrix(g, d0, l)?;
    Ok(pfaffian_ring(&m)?.coefficient_abs_sum())
}

/// Builds a pfaffian (k-1)-symbolic orientation from a pfaffian
/// k-orientation: keep the last orientation, and label edge e in
/// coordinate i by whether e lies in the difference of D_i and D_k.
pub fn symbolic_from_korientation(
    g: &Graph,
    kd: &KOrientation,
    limits: &Limits,
) -> Result<(Orientation, SymbolicLabeling)> {
    use crate::orientation::{signature_matrix, solve_pfaffian_system};
    if solve_pfaffian_system(&signature_matrix(g, kd)?).is_none() {
        return Err(domain("k-orientation is not pfaffian"));
    }
    let k = kd.k();
    let last = kd.orientations().last().expect("k >= 1").clone();
    let d = k - 1;
    let mut tau = vec![0u64; g.edge_count()];
    for (i, di) in kd.orientations()[..d].iter().enumerate() {
        for e in di.difference(&last) {
            tau[e] |= 1 << i;
        }
    }
    let labeling = SymbolicLabeling::new(d, tau, limits)?;
    assert!(
        is_pfaffian_symbolic(g, &last, &labeling)?,
        "the constructed symbolic orientation must be pfaffian"
    );
    Ok((last, labeling))
}

/// The half-log lower bound on the symbolic pfaffian number, reported as
/// the exact pair (|M|, Pf*) together with the rounded-up integer bound.
#[derive(Debug, Clone)]
pub struct SpfLowerBound {
    pub matching_count: BigInt,
    pub pf_star: BigInt,
    /// `ceil(log_4(|M| / Pf*))` clamped at zero, or `None` when Pf* = 0
    /// (every orientation cancels completely; the bound is then reported
    /// as unbounded rather than given a value).
    pub bound: Option<u32>,
}

pub fn spf_lower_bound(g: &Graph, limits: &Limits) -> Result<SpfLowerBound> {
    let matching_count = BigInt::from(g.enumerate_perfect_matchings()?.len());
    let star = pf_star(g, limits)?;
    let bound = if star.is_zero() {
        None
    } else {
        // smallest b >= 0 with Pf* 4^b >= |M|
        let mut b = 0u32;
        let mut value = star.clone();
        while value < matching_count {
            value *= 4;
            b += 1;
        }
        Some(b)
    };
    Ok(SpfLowerBound { matching_count, pf_star: star, bound })
}
