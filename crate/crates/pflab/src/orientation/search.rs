//! Exhaustive pfaffian-number search over similarity-class representatives.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{domain, resource, Result};
use crate::graph::{Graph, Matching};
use crate::limits::Limits;
use crate::linalg::consistent_i128;

use super::{signature_matrix, sign_vector, solve_pfaffian_system, KOrientation, Orientation};

/// One orientation per similarity class.  Fixing a spanning tree's edges at
/// their reference direction and enumerating the remaining edges gives a
/// unique representative per class: the fundamental cuts of the tree edges
/// form a triangular basis of the cut space.
pub fn orientation_class_representatives(g: &Graph, limits: &Limits) -> Result<Vec<Orientation>> {
    if !g.is_connected() {
        return Err(domain("class representatives need a connected graph"));
    }
    if g.edge_count() > limits.max_edges {
        return Err(resource(format!(
            "orientation enumeration limited to {} edges",
            limits.max_edges
        )));
    }
    // spanning tree by depth-first search from vertex 0
    let adj = g.adjacency();
    let mut in_tree = vec![false; g.edge_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(e, w) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                stack.push(w);
            }
        }
    }
    let free: Vec<usize> = (0..g.edge_count()).filter(|&e| !in_tree[e]).collect();
    let class_count = 1usize
        .checked_shl(free.len() as u32)
        .filter(|&c| c <= limits.max_classes)
        .ok_or_else(|| {
            resource(format!("class enumeration limited to {} classes", limits.max_classes))
        })?;
    let mut reps = Vec::with_capacity(class_count);
    for mask in 0..class_count {
        let mut bits = vec![false; g.edge_count()];
        for (i, &e) in free.iter().enumerate() {
            bits[e] = mask >> i & 1 == 1;
        }
        reps.push(Orientation::from_bits(bits));
    }
    Ok(reps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfaffianNumberStatus {
    /// `k` is exactly the pfaffian number; a verified witness is attached.
    Exact,
    /// The search ran out of budget: the pfaffian number is at least `k`.
    LowerBoundOnly,
}

#[derive(Debug, Clone)]
pub struct PfaffianNumber {
    pub k: usize,
    pub status: PfaffianNumberStatus,
    pub witness: Option<KOrientation>,
    pub alpha: Option<Vec<BigRational>>,
    /// Number of deduplicated class sign vectors the search ranged over.
    pub distinct_columns: usize,
    pub classes: usize,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub k_budget: usize,
    pub time_budget: Option<Duration>,
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { k_budget: 6, time_budget: None, jobs: 1 }
    }
}

/// Smallest k such that some k-subset of class sign vectors spans the
/// all-ones vector; subsets are enumerated in increasing k, lexicographic
/// on column indices, and the first witness is returned.
pub fn pfaffian_number(g: &Graph, opts: &SearchOptions, limits: &Limits) -> Result<PfaffianNumber> {
    if !g.is_matching_covered() {
        return Err(domain("the pfaffian number is computed for matching covered graphs"));
    }
    let matchings = g.enumerate_perfect_matchings()?;
    let reps = orientation_class_representatives(g, limits)?;
    let columns = dedup_columns(g, &reps, &matchings)?;
    let deadline = opts.time_budget.map(|b| Instant::now() + b);

    for k in 1..=opts.k_budget.min(columns.len()) {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Ok(PfaffianNumber {
                k,
                status: PfaffianNumberStatus::LowerBoundOnly,
                witness: None,
                alpha: None,
                distinct_columns: columns.len(),
                classes: reps.len(),
            });
        }
        match search_k(&columns, k, opts.jobs, deadline) {
            SearchOutcome::Found(subset) => {
                let witness = KOrientation::new(
                    subset.iter().map(|&c| reps[columns[c].rep].clone()).collect(),
                )?;
                let alpha = solve_pfaffian_system(&signature_matrix(g, &witness)?)
                    .expect("feasible subset must solve exactly");
                return Ok(PfaffianNumber {
                    k,
                    status: PfaffianNumberStatus::Exact,
                    witness: Some(witness),
                    alpha: Some(alpha),
                    distinct_columns: columns.len(),
                    classes: reps.len(),
                });
            }
            SearchOutcome::Exhausted => {}
            SearchOutcome::OutOfTime => {
                return Ok(PfaffianNumber {
                    k,
                    status: PfaffianNumberStatus::LowerBoundOnly,
                    witness: None,
                    alpha: None,
                    distinct_columns: columns.len(),
                    classes: reps.len(),
                });
            }
        }
    }
    Ok(PfaffianNumber {
        k: opts.k_budget.min(columns.len()) + 1,
        status: PfaffianNumberStatus::LowerBoundOnly,
        witness: None,
        alpha: None,
        distinct_columns: columns.len(),
        classes: reps.len(),
    })
}

pub(crate) struct Column {
    /// Sign vector normalized so its first entry is +1 (a global flip is
    /// absorbed into the solution vector).
    signs: Vec<i8>,
    /// Index of the first class representative realizing it.
    rep: usize,
}

pub(crate) fn dedup_columns(
    g: &Graph,
    reps: &[Orientation],
    matchings: &[Matching],
) -> Result<Vec<Column>> {
    let mut seen = std::collections::HashSet::new();
    let mut columns = Vec::new();
    for (i, d) in reps.iter().enumerate() {
        let mut signs = sign_vector(g, d, matchings)?;
        if signs[0] == -1 {
            for s in &mut signs {
                *s = -*s;
            }
        }
        if seen.insert(signs.clone()) {
            columns.push(Column { signs, rep: i });
        }
    }
    Ok(columns)
}

enum SearchOutcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfTime,
}

fn search_k(
    columns: &[Column],
    k: usize,
    jobs: usize,
    deadline: Option<Instant>,
) -> SearchOutcome {
    if k > columns.len() {
        return SearchOutcome::Exhausted;
    }
    if jobs <= 1 {
        return search_k_range(columns, k, 0, columns.len() - k + 1, deadline, None, None);
    }
    // Partition by first subset element.  Each partition is searched in lex
    // order, the merge keeps the lexicographically first hit, so the result
    // is independent of the worker count.
    let best_first = AtomicUsize::new(usize::MAX);
    let timed_out = AtomicBool::new(false);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    let hits: Vec<(usize, Option<Vec<usize>>)> = pool.install(|| {
        (0..columns.len() - k + 1)
            .into_par_iter()
            .map(|first| {
                if first > best_first.load(Ordering::Relaxed) {
                    return (first, None);
                }
                match search_k_range(
                    columns,
                    k,
                    first,
                    first + 1,
                    deadline,
                    Some(&best_first),
                    Some(&timed_out),
                ) {
                    SearchOutcome::Found(subset) => {
                        best_first.fetch_min(first, Ordering::Relaxed);
                        (first, Some(subset))
                    }
                    _ => (first, None),
                }
            })
            .collect()
    });
    if let Some((_, Some(subset))) = hits.into_iter().filter(|(_, h)| h.is_some()).min_by_key(|&(f, _)| f) {
        return SearchOutcome::Found(subset);
    }
    if timed_out.load(Ordering::Relaxed) {
        SearchOutcome::OutOfTime
    } else {
        SearchOutcome::Exhausted
    }
}

fn search_k_range(
    columns: &[Column],
    k: usize,
    first_lo: usize,
    first_hi: usize,
    deadline: Option<Instant>,
    best_first: Option<&AtomicUsize>,
    timed_out: Option<&AtomicBool>,
) -> SearchOutcome {
    let n = columns.len();
    let mut checked = 0u64;
    for first in first_lo..first_hi {
        let mut subset: Vec<usize> = (first..first + k).collect();
        if *subset.last().unwrap() >= n {
            continue;
        }
        loop {
            checked += 1;
            if checked % 4096 == 0 {
                if let Some(d) = deadline {
                    if Instant::now() >= d {
                        if let Some(flag) = timed_out {
                            flag.store(true, Ordering::Relaxed);
                        }
                        return SearchOutcome::OutOfTime;
                    }
                }
                if let Some(best) = best_first {
                    if best.load(Ordering::Relaxed) < first {
                        return SearchOutcome::Exhausted;
                    }
                }
            }
            if subset_feasible(columns, &subset) {
                return SearchOutcome::Found(subset);
            }
            // next combination with fixed first element
            let mut i = k;
            loop {
                if i == 1 {
                    i = 0;
                    break;
                }
                i -= 1;
                if subset[i] < n - (k - i) {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
            if i == 0 {
                break;
            }
        }
    }
    SearchOutcome::Exhausted
}

/// Feasibility of a column subset, decided on its distinct row patterns:
/// at most 2^k rows survive, each a +-1 vector, and the system is checked
/// by fraction-free elimination.
fn subset_feasible(columns: &[Column], subset: &[usize]) -> bool {
    let k = subset.len();
    let rows = columns[subset[0]].signs.len();
    let mut patterns = vec![false; 1 << k];
    for r in 0..rows {
        let mut p = 0usize;
        for (j, &c) in subset.iter().enumerate() {
            if columns[c].signs[r] == 1 {
                p |= 1 << j;
            }
        }
        patterns[p] = true;
    }
    let mut sys_rows: Vec<Vec<i128>> = Vec::new();
    for (p, &present) in patterns.iter().enumerate() {
        if present {
            sys_rows.push((0..k).map(|j| if p >> j & 1 == 1 { 1i128 } else { -1 }).collect());
        }
    }
    let rhs = vec![1i128; sys_rows.len()];
    consistent_i128(&sys_rows, &rhs, k)
}
