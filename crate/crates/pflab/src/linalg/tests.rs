use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::*;
use crate::families::{complete_bipartite, cycle};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::orientation::{matching_sign, Orientation};

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

#[test]
fn hadamard_examples() {
    let u = vec![rat(1), rat(-2), rat(3)];
    let v = vec![rat(4), rat(5), rat(-6)];
    assert_eq!(hadamard(&u, &v).unwrap(), vec![rat(4), rat(-10), rat(-18)]);
    assert!(hadamard(&u, &v[..2].to_vec()).is_err());
}

#[test]
fn khatri_rao_example() {
    let a = RationalMatrix::from_ints(&[vec![1, 2], vec![3, 4]]);
    let b = RationalMatrix::from_ints(&[vec![5, 6], vec![7, 8], vec![9, 10]]);
    let p = khatri_rao(&a, &b).unwrap();
    assert_eq!((p.rows(), p.cols()), (6, 2));
    // row (i-1)*m2 + j pairs row i of a with row j of b
    assert_eq!(p.row(0), &[rat(5), rat(12)]);
    assert_eq!(p.row(2), &[rat(9), rat(20)]);
    assert_eq!(p.row(3), &[rat(15), rat(24)]);
    assert_eq!(p.row(5), &[rat(27), rat(40)]);
    let wide = RationalMatrix::from_ints(&[vec![1, 2, 3]]);
    assert!(khatri_rao(&a, &wide).is_err());
}

#[test]
fn rank_examples() {
    assert_eq!(rank(&RationalMatrix::from_ints(&[vec![1, 2], vec![2, 4]])), 1);
    assert_eq!(rank(&RationalMatrix::from_ints(&[vec![1, 0], vec![0, 1]])), 2);
    assert_eq!(rank(&RationalMatrix::from_ints(&[vec![0, 0], vec![0, 0]])), 0);
    assert_eq!(
        rank(&RationalMatrix::from_ints(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]])),
        2
    );
}

/// Oracle: rank equals the largest order of a square submatrix with
/// nonzero determinant.
#[test]
fn rank_matches_minor_oracle() {
    fn det(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> BigRational {
        // Laplace expansion on tiny index sets
        if rows.is_empty() {
            return BigRational::one();
        }
        let mut total = BigRational::zero();
        for (j, &c) in cols.iter().enumerate() {
            let sub_rows = &rows[1..];
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = m.entry(rows[0], c) * det(m, sub_rows, &sub_cols);
            total = if j % 2 == 0 { total + term } else { total - term };
        }
        total
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for mut rest in subsets(n, k - 1) {
                if rest.iter().all(|&x| x > first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
        }
        out
    }
    let cases = [
        RationalMatrix::from_ints(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]),
        RationalMatrix::from_ints(&[vec![0, 1], vec![1, 0], vec![1, 1]]),
        RationalMatrix::from_ints(&[vec![2, 3, 5], vec![7, 11, 13]]),
        RationalMatrix::from_ints(&[vec![0, 0, 0], vec![0, 0, 0]]),
    ];
    for m in &cases {
        let mut oracle = 0;
        for k in 1..=m.rows().min(m.cols()) {
            let found = subsets(m.rows(), k).iter().any(|rs| {
                subsets(m.cols(), k).iter().any(|cs| !det(m, rs, cs).is_zero())
            });
            if found {
                oracle = k;
            }
        }
        assert_eq!(rank(m), oracle);
    }
}

#[test]
fn solve_examples() {
    let a = RationalMatrix::from_ints(&[vec![1, 1], vec![1, -1]]);
    let x = solve(&a, &[rat(3), rat(1)]).unwrap();
    assert_eq!(x, vec![rat(2), rat(1)]);
    // inconsistent
    let a = RationalMatrix::from_ints(&[vec![1, 1], vec![1, 1]]);
    assert!(solve(&a, &[rat(1), rat(2)]).is_none());
    // underdetermined: any particular solution is fine, substitution holds
    let a = RationalMatrix::from_ints(&[vec![1, 1, 1]]);
    let x = solve(&a, &[rat(5)]).unwrap();
    assert_eq!(a.mul_vec(&x), vec![rat(5)]);
}

#[test]
fn khatri_rao_bound_on_signature_matrices() {
    use crate::orientation::{
        pfaffian_number, signature_matrix, solve_pfaffian_system, SearchOptions,
    };
    let limits = Limits::default();
    let g = complete_bipartite(3, 3);
    let result = pfaffian_number(&g, &SearchOptions::default(), &limits).unwrap();
    let kd = result.witness.unwrap();
    let s = signature_matrix(&g, &kd).unwrap();
    let alpha = solve_pfaffian_system(&s).unwrap();
    // pair the signature matrix with the all-ones row: the product keeps
    // the same rows, so alpha still solves it and the verifier's
    // hypotheses hold
    let a = s.to_rational();
    let b = RationalMatrix::from_fn(1, s.cols(), |_, _| BigRational::one());
    let report = verify_khatri_rao_bound(&a, &b, &alpha).unwrap();
    assert!(report.holds);
    assert_eq!(report.rank_b, 1);
    assert!(report.rank_a + report.rank_b <= report.n + 1);
    // zero alpha entries are a hypothesis violation
    let mut bad = alpha.clone();
    bad[0] = BigRational::zero();
    assert!(verify_khatri_rao_bound(&a, &b, &bad).is_err());
    // a vector that does not solve the system is a hypothesis violation
    let mut wrong = alpha;
    wrong[0] += BigRational::one();
    assert!(verify_khatri_rao_bound(&a, &b, &wrong).is_err());
}

#[test]
fn skew_matrix_validation() {
    assert!(SkewMatrix::from_fn(2, |i, j| {
        BigInt::from(if i < j { 1 } else if i > j { -1 } else { 0 })
    })
    .is_ok());
    assert!(SkewMatrix::from_fn(2, |_, _| BigInt::one()).is_err());
    assert!(SkewMatrix::from_fn(1, |_, _| BigInt::one()).is_err()); // nonzero diagonal
}

#[test]
fn pfaffian_small_cases() {
    // order 0 -> 1, odd order -> 0
    let empty = SkewMatrix::from_fn(0, |_, _| BigInt::zero()).unwrap();
    assert_eq!(pfaffian_int(&empty), BigInt::one());
    let odd = SkewMatrix::from_fn(3, |i, j| {
        BigInt::from(if i < j { 1 } else if i > j { -1 } else { 0 })
    })
    .unwrap();
    assert_eq!(pfaffian_int(&odd), BigInt::zero());
    // [[0, a], [-a, 0]] -> a
    let two = SkewMatrix::from_fn(2, |i, j| {
        BigInt::from(if (i, j) == (0, 1) { 7 } else if (i, j) == (1, 0) { -7 } else { 0 })
    })
    .unwrap();
    assert_eq!(pfaffian_int(&two), BigInt::from(7));
    // order 4: Pf = a12 a34 - a13 a24 + a14 a23
    let vals = [[0i64, 2, 3, 5], [-2, 0, 7, 11], [-3, -7, 0, 13], [-5, -11, -13, 0]];
    let four = SkewMatrix::from_fn(4, |i, j| BigInt::from(vals[i][j])).unwrap();
    assert_eq!(pfaffian_int(&four), BigInt::from(2 * 13 - 3 * 11 + 5 * 7));
}

/// Oracle: Pf(A)^2 = det(A) for skew-symmetric matrices, determinant
/// computed independently by rational elimination.
#[test]
fn pfaffian_squared_is_determinant() {
    use rand::{Rng, SeedableRng};
    fn det_by_elimination(m: &RationalMatrix) -> BigRational {
        let n = m.rows();
        let mut rows: Vec<Vec<BigRational>> = (0..n).map(|r| m.row(r).to_vec()).collect();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                rows.swap(col, p);
                det = -det;
            }
            det *= &rows[col][col];
            let inv = rows[col][col].recip();
            for r in col + 1..n {
                if !rows[r][col].is_zero() {
                    let factor = &rows[r][col] * &inv;
                    for c in col..n {
                        let delta = &factor * &rows[col][c];
                        rows[r][c] = &rows[r][c] - delta;
                    }
                }
            }
        }
        det
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = 2 * rng.gen_range(1..=4usize);
        let mut entries = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let x = rng.gen_range(-9..=9i64);
                entries[i][j] = x;
                entries[j][i] = -x;
            }
        }
        let skew = SkewMatrix::from_fn(n, |i, j| BigInt::from(entries[i][j])).unwrap();
        let pf = pfaffian_int(&skew);
        let det = det_by_elimination(&skew.to_rational());
        assert_eq!(BigRational::from_integer(&pf * &pf), det);
    }
}

/// Oracle: the pfaffian of a skew adjacency matrix is the signed count of
/// perfect matchings.
#[test]
fn pfaffian_is_signed_matching_count() {
    for g in [cycle(4), cycle(6), complete_bipartite(3, 3), crate::families::complete(4)] {
        let matchings = g.enumerate_perfect_matchings().unwrap();
        for d in [
            Orientation::reference(&g),
            Orientation::reference(&g).reverse(&[0]),
            Orientation::reference(&g).reverse(&[1, 2]),
        ] {
            let pf = pfaffian_int(&skew_adjacency(&g, &d).unwrap());
            let signed: i64 =
                matchings.iter().map(|m| matching_sign(&g, &d, m).unwrap() as i64).sum();
            assert_eq!(pf, BigInt::from(signed));
        }
    }
}

#[test]
fn skew_adjacency_rejects_multigraphs() {
    let g = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
    assert!(skew_adjacency(&g, &Orientation::reference(&g)).is_err());
}

#[test]
fn pf_star_examples() {
    let limits = Limits::default();
    // C4 is pfaffian: Pf* equals the matching count 2
    assert_eq!(pf_star(&cycle(4), &limits).unwrap(), BigInt::from(2));
    // K33 has 6 matchings but every orientation cancels down to at most 2
    let star = pf_star(&complete_bipartite(3, 3), &limits).unwrap();
    assert!(star < BigInt::from(6));
    assert!(star > BigInt::zero());
    // edge limit applies
    let tight = Limits { max_edges: 3, ..Limits::default() };
    assert!(pf_star(&cycle(4), &tight).is_err());
}

#[test]
fn consistency_test_examples() {
    // x = 1, y = 2 consistent
    assert!(consistent_i128(&[vec![1, 0], vec![0, 1]], &[1, 2], 2));
    // x + y = 1 and x + y = 2 inconsistent
    assert!(!consistent_i128(&[vec![1, 1], vec![1, 1]], &[1, 2], 2));
    // redundant rows stay consistent
    assert!(consistent_i128(&[vec![1, 1], vec![2, 2]], &[3, 6], 2));
    // matches the rational solver on sign systems
    let rows = vec![vec![1, -1, 1], vec![-1, 1, 1], vec![1, 1, -1]];
    let rhs = vec![1, 1, 1];
    let a = RationalMatrix::from_ints(&[vec![1, -1, 1], vec![-1, 1, 1], vec![1, 1, -1]]);
    let b: Vec<BigRational> = rhs.iter().map(|&x| rat(x as i64)).collect();
    assert_eq!(consistent_i128(&rows, &rhs, 3), solve(&a, &b).is_some());
}

#[test]
fn pf_star_sign_invariance_under_cut_reversal() {
    // reversing a cut flips at most the sign of the pfaffian
    let g = cycle(6);
    let d = Orientation::reference(&g).reverse(&[0]);
    let cut = g.make_cut(&[0, 1]).unwrap();
    let a = pfaffian_int(&skew_adjacency(&g, &d).unwrap());
    let b = pfaffian_int(&skew_adjacency(&g, &d.reverse(cut.edge_ids())).unwrap());
    assert_eq!(a.abs(), b.abs());
}
