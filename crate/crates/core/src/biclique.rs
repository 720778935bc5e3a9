//! Balanced biclique recovery.
//!
//! Phase 1 intersects neighborhoods along prefixes of the degree order.
//! Phase 2 runs the extractor on every dyadic window of the degree order:
//! windows of length `2^h` starting at multiples of `2^h`, so any contiguous
//! run of length `l` contains a scanned window of length at least `l / 4`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtractBranch {
    /// The largest complement component exceeded `|S|/3`.
    LargeComponent,
    /// Components were split into two groups at the `|S|/3` mark.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub left: VertexSet,
    pub right: VertexSet,
    pub branch: ExtractBranch,
}

impl Extraction {
    pub fn min_side(&self) -> usize {
        self.left.len().min(self.right.len())
    }
}

/// Common-neighborhood counter over `V(G)` that resets only what it touched.
struct CommonNeighbors {
    count: Vec<u32>,
    touched: Vec<u32>,
}

impl CommonNeighbors {
    fn new(n: usize) -> Self {
        CommonNeighbors {
            count: vec![0; n],
            touched: Vec::new(),
        }
    }

    fn of(&mut self, g: &Graph, set: &[usize]) -> VertexSet {
        for &u in set {
            for &w in g.neighbors(u) {
                if self.count[w as usize] == 0 {
                    self.touched.push(w);
                }
                self.count[w as usize] += 1;
            }
        }
        let mut out: Vec<usize> = self
            .touched
            .iter()
            .filter(|&&w| self.count[w as usize] as usize == set.len())
            .map(|&w| w as usize)
            .collect();
        for &w in &self.touched {
            self.count[w as usize] = 0;
        }
        self.touched.clear();
        out.sort_unstable();
        VertexSet::from_sorted_unchecked(out)
    }
}

/// Splits the complement of `G[S]` into components. If the largest one has
/// more than `|S|/3` vertices it becomes `L` and `R` is its common
/// neighborhood in `G`; otherwise `L` is the shortest run of components
/// (largest first) whose total exceeds `|S|/3` and `R` is the rest.
///
/// The output is always a biclique of `G`. When `S` lies inside some balanced
/// biclique of `G`, both sides have at least `|S|/3` vertices.
pub fn biclique_extractor(g: &Graph, set: &VertexSet) -> Result<Extraction> {
    set.validate(g.n())?;
    if set.is_empty() {
        return Err(Error::input("extractor needs a nonempty vertex set"));
    }
    Ok(extract(g, set, &mut CommonNeighbors::new(g.n())))
}

fn extract(g: &Graph, set: &VertexSet, common: &mut CommonNeighbors) -> Extraction {
    let sub = g.complement_induced(set);
    let comps: Vec<VertexSet> = sub
        .graph
        .connected_components()
        .iter()
        .map(|c| sub.to_original(c))
        .collect();
    let size = set.len();
    if 3 * comps[0].len() > size {
        let left = comps[0].clone();
        let mut right = common.of(g, left.as_slice());
        if right.intersects(&left) {
            right = right.iter().filter(|&v| !left.contains(v)).collect();
        }
        return Extraction {
            left,
            right,
            branch: ExtractBranch::LargeComponent,
        };
    }
    let mut taken = 0;
    let mut cut = 0;
    while 3 * taken <= size {
        taken += comps[cut].len();
        cut += 1;
    }
    let left: VertexSet = comps[..cut].iter().flat_map(|c| c.iter()).collect();
    let right: VertexSet = comps[cut..].iter().flat_map(|c| c.iter()).collect();
    Extraction {
        left,
        right,
        branch: ExtractBranch::Split,
    }
}

/// Best prefix `L' = {v_1..v_i}` of the degree order with
/// `R' = ∩ N(v)` over `L'`, maximizing `min(|L'|, |R'|)` (earliest wins).
pub fn phase1_prefix_bicliques(g: &Graph) -> (VertexSet, VertexSet) {
    let order = g.degree_order();
    phase1_on_order(g, &order)
}

fn phase1_on_order(g: &Graph, order: &[usize]) -> (VertexSet, VertexSet) {
    let n = g.n();
    let mut count = vec![0u32; n];
    let mut best = (0usize, 0usize); // (min side, prefix length)
    for (idx, &v) in order.iter().enumerate() {
        let i = idx as u32 + 1;
        let mut common = 0usize;
        for &w in g.neighbors(v) {
            let c = &mut count[w as usize];
            *c += 1;
            if *c == i {
                common += 1;
            }
        }
        let score = (idx + 1).min(common);
        if score > best.0 {
            best = (score, idx + 1);
        }
        // |R'| only shrinks from here on.
        if common <= best.0 {
            break;
        }
    }
    if best.1 == 0 {
        return (VertexSet::default(), VertexSet::default());
    }
    let left = VertexSet::new(order[..best.1].to_vec());
    let right = CommonNeighbors::new(n).of(g, left.as_slice());
    (left, right)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    SparseExit,
    Phase1,
    Phase2,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BicliqueResult {
    pub left: VertexSet,
    pub right: VertexSet,
    pub min_side: usize,
    pub verified: bool,
    pub phase: Phase,
    /// `(h, k)` of the winning window when phase 2 won.
    pub window: Option<(u32, usize)>,
    pub windows_scanned: usize,
    pub elapsed_ms: f64,
}

/// `(⌊n / (2 log2 n)⌋)^2`; graphs with fewer edges take the sparse exit.
pub fn biclique_sparse_cutoff(n: usize) -> u64 {
    if n < 2 {
        return 0;
    }
    let t = (n as f64 / (2.0 * (n as f64).log2())).floor() as u64;
    t * t
}

/// `(c/48) · 2^sqrt(c log2 n / 2)`, the guaranteed side length.
pub fn biclique_bound(n: usize, c: f64) -> Result<f64> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::input(format!("c must lie in (0, 1], got {c}")));
    }
    if n < 2 {
        return Err(Error::input("n must be at least 2"));
    }
    Ok(c / 48.0 * (c * (n as f64).log2() / 2.0).sqrt().exp2())
}

fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Dyadic windows `(h, k, range)` over positions `0..n` for
/// `h = 0..=⌈log2 n⌉`; the last window of each level may be truncated.
pub fn dyadic_windows(n: usize) -> impl Iterator<Item = (u32, usize, std::ops::Range<usize>)> {
    (0..=ceil_log2(n)).flat_map(move |h| {
        let w = 1usize << h;
        (0..n.div_ceil(w)).map(move |k| (h, k, k * w..((k + 1) * w).min(n)))
    })
}

pub fn balanced_biclique_finder(g: &Graph) -> BicliqueResult {
    let start = Instant::now();
    let n = g.n();
    let mut result = BicliqueResult {
        left: VertexSet::default(),
        right: VertexSet::default(),
        min_side: 0,
        verified: false,
        phase: Phase::SparseExit,
        window: None,
        windows_scanned: 0,
        elapsed_ms: 0.0,
    };

    if n < 2 || (g.m() as u64) < biclique_sparse_cutoff(n) {
        if let Some((u, v)) = g.edges().next() {
            result.left = VertexSet::new(vec![u]);
            result.right = VertexSet::new(vec![v]);
        }
    } else {
        let order = g.degree_order();
        let (left, right) = phase1_on_order(g, &order);
        result.left = left;
        result.right = right;
        result.phase = Phase::Phase1;
        let mut best = result.left.len().min(result.right.len());

        let mut common = CommonNeighbors::new(n);
        for (h, k, range) in dyadic_windows(n) {
            let window = VertexSet::new(order[range].to_vec());
            let ex = extract(g, &window, &mut common);
            result.windows_scanned += 1;
            if ex.min_side() > best {
                best = ex.min_side();
                result.left = ex.left;
                result.right = ex.right;
                result.phase = Phase::Phase2;
                result.window = Some((h, k));
            }
        }
    }

    result.min_side = result.left.len().min(result.right.len());
    result.verified = g.verify_biclique(&result.left, &result.right);
    result.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    result
}
