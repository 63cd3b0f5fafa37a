//! Exact rational matrices, Hadamard and Khatri-Rao products, and integer
//! pfaffians of skew-symmetric matrices.  No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, resource, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::orientation::{orientation_class_representatives, Orientation};

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(domain("ragged rows"));
        }
        Ok(RationalMatrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Position-wise product of two equal-length vectors.
pub fn hadamard(u: &[BigRational], v: &[BigRational]) -> Result<Vec<BigRational>> {
    if u.len() != v.len() {
        return Err(domain("hadamard product needs equal lengths"));
    }
    Ok(u.iter().zip(v).map(|(a, b)| a * b).collect())
}

/// The Khatri-Rao product: row `(i - 1) * m2 + j` (1-based) of the result
/// is the Hadamard product of row i of `a` and row j of `b`.
pub fn khatri_rao(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    if a.cols() != b.cols() {
        return Err(domain("khatri-rao product needs equal column counts"));
    }
    let mut rows = Vec::with_capacity(a.rows() * b.rows());
    for i in 0..a.rows() {
        for j in 0..b.rows() {
            rows.push(hadamard(a.row(i), b.row(j))?);
        }
    }
    RationalMatrix::from_rows(rows)
}

/// Row echelon reduction; returns (reduced rows, pivot columns).  When
/// `rhs` is given it is carried along as an extra column.
fn eliminate(
    a: &RationalMatrix,
    rhs: Option<&[BigRational]>,
) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let width = a.cols() + usize::from(rhs.is_some());
    let mut rows: Vec<Vec<BigRational>> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            if let Some(b) = rhs {
                row.push(b[r].clone());
            }
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..a.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for c in col..width {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..width {
                    rows[r][c] = &rows[r][c] - &factor * &rows[rank][c];
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

/// Exact rank over the rationals.
pub fn rank(a: &RationalMatrix) -> usize {
    eliminate(a, None).1.len()
}

/// Exact particular solution of `a x = b`, or `None` if inconsistent.
/// The result is verified by substitution before it is returned.
pub fn solve(a: &RationalMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len());
    let (rows, pivots) = eliminate(a, Some(b));
    let rank = pivots.len();
    for row in rows.iter().skip(rank) {
        if !row[a.cols()].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); a.cols()];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][a.cols()].clone();
    }
    debug_assert!(a.mul_vec(&x).iter().zip(b).all(|(l, r)| l == r));
    Some(x)
}

/// Report produced by the Khatri-Rao rank-bound verifier.
#[derive(Debug, Clone)]
pub struct KhatriRaoReport {
    pub rank_a: usize,
    pub rank_b: usize,
    pub n: usize,
    pub holds: bool,
}

/// Checks the hypotheses `(a * b) alpha = 1` exactly and `alpha` free of
/// zeros, then reports whether `rank(a) + rank(b) - 1 <= n`.
pub fn verify_khatri_rao_bound(
    a: &RationalMatrix,
    b: &RationalMatrix,
    alpha: &[BigRational],
) -> Result<KhatriRaoReport> {
    if a.cols() != b.cols() {
        return Err(domain("matrices must have the same number of columns"));
    }
    if alpha.len() != a.cols() {
        return Err(domain("alpha length must match the column count"));
    }
    if alpha.iter().any(Zero::is_zero) {
        return Err(domain("hypothesis violated: alpha has a zero entry"));
    }
    let product = khatri_rao(a, b)?;
    if product.mul_vec(alpha).iter().any(|v| !v.is_one()) {
        return Err(domain("hypothesis violated: (a * b) alpha != 1"));
    }
    let (rank_a, rank_b, n) = (rank(a), rank(b), a.cols());
    Ok(KhatriRaoReport { rank_a, rank_b, n, holds: rank_a + rank_b <= n + 1 })
}

/// Integer skew-symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    order: usize,
    data: Vec<BigInt>,
}

impl SkewMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Result<SkewMatrix> {
        let mut data = vec![BigInt::zero(); order * order];
        for i in 0..order {
            for j in 0..order {
                data[i * order + j] = f(i, j);
            }
        }
        let m = SkewMatrix { order, data };
        for i in 0..order {
            for j in 0..=i {
                if *m.entry(i, j) != -m.entry(j, i) {
                    return Err(domain("matrix is not skew-symmetric"));
                }
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.order + j]
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.order, self.order, |i, j| {
            BigRational::from_integer(self.entry(i, j).clone())
        })
    }
}

/// Skew-symmetric adjacency matrix of an orientation of a simple graph.
pub fn skew_adjacency(g: &Graph, d: &Orientation) -> Result<SkewMatrix> {
    if !g.is_simple() {
        return Err(domain("the skew adjacency matrix is defined for simple graphs"));
    }
    let n = g.vertex_count();
    let mut data = vec![BigInt::zero(); n * n];
    for e in 0..g.edge_count() {
        let (tail, head) = d.arc(g, e);
        data[tail * n + head] = BigInt::one();
        data[head * n + tail] = -BigInt::one();
    }
    Ok(SkewMatrix { order: n, data })
}

/// Exact integer pfaffian by expansion along the first row.  Order 0 gives
/// 1, odd orders give 0.
pub fn pfaffian_int(a: &SkewMatrix) -> BigInt {
    let idx: Vec<usize> = (0..a.order).collect();
    pfaffian_sub(a, &idx)
}

fn pfaffian_sub(a: &SkewMatrix, idx: &[usize]) -> BigInt {
    if idx.is_empty() {
        return BigInt::one();
    }
    if idx.len() % 2 != 0 {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    for j in 1..idx.len() {
        let coeff = a.entry(idx[0], idx[j]);
        if coeff.is_zero() {
            continue;
        }
        let rest: Vec<usize> =
            idx.iter().enumerate().filter(|&(k, _)| k != 0 && k != j).map(|(_, &v)| v).collect();
        let term = coeff * pfaffian_sub(a, &rest);
        if j % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Pf*(G): the greatest |Pf(A_D)| over all orientations, computed on
/// similarity-class representatives since cut reversals only flip the sign.
pub fn pf_star(g: &Graph, limits: &Limits) -> Result<BigInt> {
    if !g.is_simple() {
        return Err(domain("Pf* is defined for simple graphs"));
    }
    if g.edge_count() > limits.max_edges {
        return Err(resource(format!("Pf* enumeration limited to {} edges", limits.max_edges)));
    }
    let reps = orientation_class_representatives(g, limits)?;
    let mut best = BigInt::zero();
    for d in &reps {
        let value = pfaffian_int(&skew_adjacency(g, d)?).abs();
        if value > best {
            best = value;
        }
    }
    Ok(best)
}

/// Fraction-free consistency test for a small integer system `A x = b`.
/// Returns true iff the system is solvable over the rationals.
pub(crate) fn consistent_i128(rows: &[Vec<i128>], rhs: &[i128], cols: usize) -> bool {
    let mut aug: Vec<Vec<i128>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row = r.clone();
            row.push(b);
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..aug.len()).find(|&r| aug[r][col] != 0) else {
            continue;
        };
        aug.swap(rank, p);
        for r in 0..aug.len() {
            if r != rank && aug[r][col] != 0 {
                let (a, b) = (aug[rank][col], aug[r][col]);
                for c in 0..=cols {
                    aug[r][c] = aug[r][c] * a - aug[rank][c] * b;
                }
                let g = row_gcd(&aug[r]);
                if g > 1 {
                    for c in 0..=cols {
                        aug[r][c] /= g;
                    }
                }
            }
        }
        rank += 1;
        if rank == aug.len() {
            break;
        }
    }
    aug[rank..].iter().all(|row| row[cols] == 0)
}

fn row_gcd(row: &[i128]) -> i128 {
    row.iter().fold(0i128, |acc, &x| num_integer::gcd(acc, x.abs()))
}

#[cfg(test)]
mod tests;
