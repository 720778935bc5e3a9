//! Clique recovery by degree-ordered prefixes.
//!
//! [`dense_clique_finder`] returns the complement of a maximal matching of the
//! complement graph: the matched vertices form a vertex cover of the
//! complement at most twice the optimum, so a graph with a clique of size
//! `(1/2 + eps) n` yields a clique of size at least `2 eps n`.
//!
//! [`clique_finder`] sorts vertices by nonincreasing degree and runs the dense
//! finder on geometrically growing prefixes, keeping the largest clique.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueParams {
    /// Prefix lengths are `⌊(1 + eta)^j⌋`.
    pub eta: f64,
    /// Confidence exponent used when evaluating the guarantee precondition.
    pub a: f64,
    /// Overrides the sparse cutoff on `‖G‖`; `None` uses `C(⌊n / log2 n⌋, 2)`.
    pub dense_cutoff: Option<u64>,
}

impl Default for CliqueParams {
    fn default() -> Self {
        CliqueParams {
            eta: 0.125,
            a: 1.0,
            dense_cutoff: None,
        }
    }
}

impl CliqueParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(Error::input(format!(
                "eta must be positive, got {}",
                self.eta
            )));
        }
        if !(self.a >= 1.0) {
            return Err(Error::input(format!("a must be >= 1, got {}", self.a)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub found: VertexSet,
    pub size: usize,
    pub verified: bool,
    pub elapsed_ms: f64,
    pub params: CliqueParams,
    /// `K(n, c, p)` when `c` and `p` are known.
    pub guarantee: Option<f64>,
    pub sparse_exit: bool,
    pub prefixes_scanned: usize,
    /// Length of the prefix that produced `found` (0 on the sparse exit).
    pub best_prefix: usize,
}

impl SolveReport {
    pub fn with_guarantee(mut self, n: usize, c: f64, p: f64) -> Result<Self> {
        self.guarantee = Some(k_bound(n, c, p)?);
        Ok(self)
    }

    /// `size >= max(1, ⌈K⌉)` on a verified output.
    pub fn meets_guarantee(&self) -> bool {
        let need = self.guarantee.map_or(1.0, |k| k.ceil().max(1.0));
        self.verified && self.size as f64 >= need
    }
}

/// `K(n, c, p) = n/5 · (c/3)^(2 + (2/c) log2(2/p))`.
pub fn k_bound(n: usize, c: f64, p: f64) -> Result<f64> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::input(format!("c must lie in (0, 1), got {c}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::input(format!("p must lie in (0, 1], got {p}")));
    }
    if n == 0 {
        return Err(Error::input("n must be positive"));
    }
    let exponent = 2.0 + (2.0 / c) * (2.0 / p).log2();
    Ok(n as f64 / 5.0 * (c / 3.0).powf(exponent))
}

/// Whether `K(n, c, p) >= 1 + 2 a ln n`.
pub fn k_bound_precondition(n: usize, c: f64, p: f64, a: f64) -> Result<bool> {
    Ok(k_bound(n, c, p)? >= 1.0 + 2.0 * a * (n as f64).ln())
}

/// Reusable buffers for repeated dense-finder calls on one graph.
struct Scratch {
    mark: Vec<u32>,
    stamp: u32,
    matched: Vec<bool>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            mark: vec![0; n],
            stamp: 0,
            matched: Vec::new(),
        }
    }
}

/// Dense finder on `g[subset]` without materializing the subgraph. The
/// matching scans pairs `(subset[i], subset[j])`, `i < j`, lexicographically.
fn dense_clique_in(g: &Graph, subset: &[usize], scratch: &mut Scratch) -> VertexSet {
    let k = subset.len();
    scratch.matched.clear();
    scratch.matched.resize(k, false);
    for i in 0..k {
        if scratch.matched[i] {
            continue;
        }
        let u = subset[i];
        scratch.stamp = scratch.stamp.wrapping_add(1);
        if scratch.stamp == 0 {
            scratch.mark.fill(0);
            scratch.stamp = 1;
        }
        for &w in g.neighbors(u) {
            scratch.mark[w as usize] = scratch.stamp;
        }
        for j in i + 1..k {
            if !scratch.matched[j] && scratch.mark[subset[j]] != scratch.stamp {
                scratch.matched[i] = true;
                scratch.matched[j] = true;
                break;
            }
        }
    }
    VertexSet::from_sorted_unchecked(
        (0..k)
            .filter(|&i| !scratch.matched[i])
            .map(|i| subset[i])
            .collect(),
    )
}

pub fn dense_clique_finder(g: &Graph) -> VertexSet {
    let all: Vec<usize> = (0..g.n()).collect();
    dense_clique_in(g, &all, &mut Scratch::new(g.n()))
}

/// Prefix lengths `min(n, ⌊(1+eta)^j⌋)` for `j = 0, 1, ...`, deduplicated and
/// ending at `n`.
pub fn prefix_lengths(n: usize, eta: f64) -> Vec<usize> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut x = 1.0f64;
    loop {
        let i = (x.floor() as usize).min(n);
        if out.last() != Some(&i) {
            out.push(i);
        }
        if i == n {
            return out;
        }
        x *= 1.0 + eta;
    }
}

/// Sparse cutoff `C(⌊n / log2 n⌋, 2)` on `‖G‖`.
pub fn sparse_cutoff(n: usize) -> u64 {
    if n < 2 {
        return 0;
    }
    let t = (n as f64 / (n as f64).log2()).floor() as u64;
    t * t.saturating_sub(1) / 2
}

pub fn clique_finder(g: &Graph, params: &CliqueParams) -> Result<SolveReport> {
    params.validate()?;
    let start = Instant::now();
    let n = g.n();
    let cutoff = params.dense_cutoff.unwrap_or_else(|| sparse_cutoff(n));
    let mut report = SolveReport {
        found: VertexSet::default(),
        size: 0,
        verified: false,
        elapsed_ms: 0.0,
        params: params.clone(),
        guarantee: None,
        sparse_exit: false,
        prefixes_scanned: 0,
        best_prefix: 0,
    };

    if n > 0 && (n == 1 || g.size() as u64 <= cutoff) {
        report.found = VertexSet::new(vec![0]);
        report.sparse_exit = true;
    } else if n > 0 {
        let order = g.degree_order();
        let mut scratch = Scratch::new(n);
        let mut prefix: Vec<usize> = Vec::with_capacity(n);
        for len in prefix_lengths(n, params.eta) {
            prefix.clear();
            prefix.extend_from_slice(&order[..len]);
            prefix.sort_unstable();
            let clique = dense_clique_in(g, &prefix, &mut scratch);
            report.prefixes_scanned += 1;
            if clique.len() > report.found.len() {
                report.found = clique;
                report.best_prefix = len;
            }
        }
    }

    report.size = report.found.len();
    report.verified = g.verify_clique(&report.found);
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}
