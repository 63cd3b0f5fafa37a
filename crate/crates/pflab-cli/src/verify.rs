//! Named verification suites behind `pflab verify`.  Each suite returns
//! whether every assertion held plus a details object for the report.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pflab::families::{complete, complete_bipartite, cycle, petersen, vyalyi, vyalyi_block, vyalyi_block_vertices, conformal_lower_bound};
use pflab::graph::{nontrivial_tight_cuts, tight_cut_decomposition, Graph};
use pflab::limits::Limits;
use pflab::linalg::{solve, verify_khatri_rao_bound, RationalMatrix};
use pflab::orientation::{
    alternating_cycles, cycle_sign, matching_sign, pfaffian_number, Orientation,
    PfaffianNumberStatus, SearchOptions,
};
use pflab::symbolic::{count_via_symbolic, spf_lower_bound, symbolic_from_korientation};

fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("c4", cycle(4)),
        ("c6", cycle(6)),
        ("k4", complete(4)),
        ("k22", complete_bipartite(2, 2)),
        ("k33", complete_bipartite(3, 3)),
        ("petersen", petersen()),
        ("vyalyi-block", vyalyi_block().0),
    ]
}

fn random_orientation(g: &Graph, rng: &mut ChaCha8Rng) -> Orientation {
    Orientation::from_bits((0..g.edge_count()).map(|_| rng.gen_bool(0.5)).collect())
}

/// Sign identities on randomized (graph, orientation, matching pair)
/// instances.
pub fn signs(seed: u64) -> (bool, Value) {
    let corpus = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 200;
    let mut failures = 0;
    for _ in 0..trials {
        let (_, g) = &corpus[rng.gen_range(0..corpus.len())];
        let matchings = g.enumerate_perfect_matchings().unwrap();
        let d1 = random_orientation(g, &mut rng);
        let d2 = random_orientation(g, &mut rng);
        let m = &matchings[rng.gen_range(0..matchings.len())];
        let n = &matchings[rng.gen_range(0..matchings.len())];
        let flipped = m.edge_ids().iter()
            .filter(|&&e| d1.is_reversed(e) != d2.is_reversed(e)).count();
        let ratio = matching_sign(g, &d1, m).unwrap() as i32
            * matching_sign(g, &d2, m).unwrap() as i32;
        if ratio != if flipped % 2 == 0 { 1 } else { -1 } {
            failures += 1;
        }
        let product: i32 = alternating_cycles(g, m, n).iter()
            .map(|q| cycle_sign(g, &d1, q).unwrap() as i32).product();
        let pair = matching_sign(g, &d1, m).unwrap() as i32
            * matching_sign(g, &d1, n).unwrap() as i32;
        if pair != product {
            failures += 1;
        }
    }
    (failures == 0, json!({ "failures": failures, "trials": trials }))
}

/// Cut structure: tight implies separating, matching/cut parity, and
/// seed-independence of the tight cut decomposition of C6.
pub fn cuts(seed: u64, limits: &Limits) -> (bool, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let trials = 50;
    for _ in 0..trials {
        let corpus = corpus();
        let (_, g) = &corpus[rng.gen_range(0..corpus.len())];
        let size = rng.gen_range(1..g.vertex_count());
        let mut vertices: Vec<usize> = (0..g.vertex_count()).collect();
        for i in 0..size {
            let j = rng.gen_range(i..vertices.len());
            vertices.swap(i, j);
        }
        vertices.truncate(size);
        let cut = g.make_cut(&vertices).unwrap();
        for m in g.enumerate_perfect_matchings().unwrap() {
            let crossing = m.edge_ids().iter()
                .filter(|e| cut.edge_ids().contains(e)).count();
            if crossing % 2 != size % 2 {
                failures += 1;
            }
        }
        if g.is_matching_covered()
            && g.is_tight(&cut).unwrap()
            && !g.is_separating(&cut).unwrap()
        {
            failures += 1;
        }
    }
    let c6 = cycle(6);
    let mut piece_counts = std::collections::BTreeSet::new();
    for s in 0..5u64 {
        let result = tight_cut_decomposition(&c6, s, limits).unwrap();
        piece_counts.insert(result.pieces.len());
        for (piece, _) in &result.pieces {
            if !nontrivial_tight_cuts(piece).is_empty() {
                failures += 1;
            }
        }
    }
    if piece_counts != std::collections::BTreeSet::from([2]) {
        failures += 1;
    }
    (failures == 0, json!({ "failures": failures, "trials": trials }))
}

/// The rank bound on randomized solvable Khatri-Rao systems.
pub fn khatri_rao(seed: u64) -> (bool, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verified = 0;
    let mut failures = 0;
    while verified < 100 {
        let n = rng.gen_range(3..=6usize);
        let m1 = rng.gen_range(1..=4usize);
        let m2 = rng.gen_range(1..=4usize);
        let sign = |rng: &mut ChaCha8Rng| {
            BigRational::from_integer(if rng.gen_bool(0.5) { 1 } else { -1 }.into())
        };
        let a = RationalMatrix::from_fn(m1, n, |_, _| sign(&mut rng));
        let b = RationalMatrix::from_fn(m2, n, |_, _| sign(&mut rng));
        let product = pflab::linalg::khatri_rao(&a, &b).unwrap();
        let ones = vec![BigRational::one(); product.rows()];
        let Some(alpha) = solve(&product, &ones) else { continue };
        if alpha.iter().any(Zero::is_zero) {
            continue;
        }
        match verify_khatri_rao_bound(&a, &b, &alpha) {
            Ok(report) if report.holds => verified += 1,
            _ => failures += 1,
        }
    }
    (failures == 0, json!({ "failures": failures, "verified": verified }))
}

/// The symbolic counting pipeline on the graphs where pf is computed.
pub fn symbolic(limits: &Limits) -> (bool, Value) {
    let mut failures = 0;
    let mut checked = Vec::new();
    for (name, g) in [("c4", cycle(4)), ("k33", complete_bipartite(3, 3))] {
        let result = pfaffian_number(&g, &SearchOptions::default(), limits).unwrap();
        let kd = result.witness.unwrap();
        let (d0, labeling) = symbolic_from_korientation(&g, &kd, limits).unwrap();
        let count = count_via_symbolic(&g, &d0, &labeling).unwrap();
        let expected = g.enumerate_perfect_matchings().unwrap().len();
        if count != BigInt::from(expected) {
            failures += 1;
        }
        let bound = spf_lower_bound(&g, limits).unwrap();
        if let Some(b) = bound.bound {
            if (b as usize) + 1 > result.k {
                failures += 1;
            }
        }
        checked.push(name);
    }
    (failures == 0, json!({ "checked": checked, "failures": failures }))
}

/// Family generators: shape invariants and the chain lower bound.
pub fn families(limits: &Limits) -> (bool, Value) {
    let mut failures = 0;
    for (_, g) in corpus() {
        if !g.is_matching_covered() {
            failures += 1;
        }
    }
    let (block, _) = vyalyi_block();
    let block_pf = pfaffian_number(&block, &SearchOptions::default(), limits).unwrap();
    if block_pf.k != 4 || block_pf.status != PfaffianNumberStatus::Exact {
        failures += 1;
    }
    for n in 1..=2usize {
        let g = vyalyi(n).unwrap();
        if g.vertex_count() != 10 * n
            || g.edge_count() != 15 * n
            || !g.is_bipartite()
            || !(0..g.vertex_count()).all(|v| g.degree(v) == 3)
        {
            failures += 1;
        }
        let parts: Vec<(Vec<usize>, usize)> =
            (0..n).map(|i| (vyalyi_block_vertices(i), 4)).collect();
        if conformal_lower_bound(&g, &parts).unwrap() != 3 * n + 1 {
            failures += 1;
        }
    }
    (failures == 0, json!({ "failures": failures }))
}

/// Scans small conformal splits for equality in the additive lower bound
/// with both parts non-pfaffian.  Reports instances; never asserts.
pub fn conjecture_scan(limits: &Limits) -> (bool, Value) {
    let mut instances = Vec::new();
    let mut scanned = 0;
    // splits of K44 into a conformal 6-vertex part and its complement
    let g = complete_bipartite(4, 4);
    let pf_g = pfaffian_number(&g, &SearchOptions::default(), limits).unwrap().k;
    for mask in 0u32..(1 << 8) {
        if mask.count_ones() != 6 {
            continue;
        }
        let part: Vec<usize> = (0..8).filter(|&v| mask >> v & 1 == 1).collect();
        if !g.is_conformal(&part) {
            continue;
        }
        let complement: Vec<usize> = (0..8).filter(|&v| mask >> v & 1 == 0).collect();
        let (h1, _, _) = g.induced(&part);
        let (h2, _, _) = g.induced(&complement);
        if !h1.is_matching_covered() || !h2.is_matching_covered() {
            continue;
        }
        scanned += 1;
        let pf1 = pfaffian_number(&h1, &SearchOptions::default(), limits).unwrap().k;
        let pf2 = pfaffian_number(&h2, &SearchOptions::default(), limits).unwrap().k;
        if pf1 + pf2 - 1 == pf_g && pf1 > 1 && pf2 > 1 {
            instances.push(json!({
                "part": part.iter().map(|&v| v + 1).collect::<Vec<_>>(),
                "pf_parts": [pf1, pf2],
                "pf_whole": pf_g,
            }));
        }
    }
    (true, json!({ "equality_instances": instances, "scanned": scanned }))
}
