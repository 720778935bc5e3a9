//! Exact solvers for small graphs, used as ground truth.
//!
//! All of them run on `u64` adjacency bitmasks, so no oracle accepts more
//! than 64 vertices regardless of the configured limits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub max_n_clique: usize,
    pub max_n_clique_exhaustive: usize,
    pub max_n_biclique: usize,
    pub max_n_cover: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_n_clique: 60,
            max_n_clique_exhaustive: 25,
            max_n_biclique: 24,
            max_n_cover: 24,
        }
    }
}

fn bitmasks(g: &Graph, what: &'static str, limit: usize) -> Result<Vec<u64>> {
    let n = g.n();
    if n > limit.min(64) {
        return Err(Error::Limit { what, n, limit });
    }
    Ok((0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect())
}

fn members(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Greedy-coloring branch and bound that stops once `target` is reached.
struct CliqueSearch<'a> {
    adj: &'a [u64],
    best: usize,
    target: usize,
}

impl CliqueSearch<'_> {
    /// Vertices of `cand` in color-class order with their cumulative colors.
    fn color_sort(&self, cand: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(cand.count_ones() as usize);
        let mut uncolored = cand;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut q = uncolored;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                let bit = 1u64 << v;
                out.push((v, color));
                uncolored &= !bit;
                q &= !bit & !self.adj[v];
            }
        }
        out
    }

    /// Returns true once a clique of size `target` has been seen.
    fn expand(&mut self, size: usize, mut cand: u64) -> bool {
        let order = self.color_sort(cand);
        for &(v, color) in order.iter().rev() {
            if size + color <= self.best {
                return false;
            }
            let next = cand & self.adj[v];
            if next == 0 {
                if size + 1 > self.best {
                    self.best = size + 1;
                }
            } else if self.expand(size + 1, next) {
                return true;
            }
            if self.best >= self.target {
                return true;
            }
            cand &= !(1u64 << v);
        }
        false
    }
}

fn clique_number_in(adj: &[u64], cand: u64) -> usize {
    if cand == 0 {
        return 0;
    }
    let mut s = CliqueSearch {
        adj,
        best: 0,
        target: usize::MAX,
    };
    s.expand(0, cand);
    s.best
}

fn has_clique_of(adj: &[u64], cand: u64, target: usize) -> bool {
    if target == 0 {
        return true;
    }
    let mut s = CliqueSearch {
        adj,
        best: 0,
        target,
    };
    s.expand(0, cand);
    s.best >= target
}

/// Lexicographically smallest maximum clique, by branch and bound.
pub fn max_clique_exact(g: &Graph) -> Result<VertexSet> {
    let adj = bitmasks(g, "max clique", OracleLimits::default().max_n_clique)?;
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let kappa = clique_number_in(&adj, all);
    let mut chosen = Vec::with_capacity(kappa);
    let mut cand = all;
    for v in 0..n {
        if chosen.len() == kappa {
            break;
        }
        if cand >> v & 1 == 0 {
            continue;
        }
        let above = if v == 63 { 0 } else { u64::MAX << (v + 1) };
        let rest = cand & adj[v] & above;
        if has_clique_of(&adj, rest, kappa - chosen.len() - 1) {
            chosen.push(v);
            cand = rest;
        } else {
            cand &= !(1u64 << v);
        }
    }
    Ok(VertexSet::new(chosen))
}

/// Clique number `κ(G)`.
pub fn clique_number(g: &Graph) -> Result<usize> {
    let adj = bitmasks(g, "max clique", OracleLimits::default().max_n_clique)?;
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(clique_number_in(&adj, all))
}

/// Plain subset enumeration; cross-checks [`max_clique_exact`].
pub fn max_clique_exhaustive(g: &Graph) -> Result<VertexSet> {
    let adj = bitmasks(
        g,
        "exhaustive clique",
        OracleLimits::default().max_n_clique_exhaustive,
    )?;
    let n = g.n();
    let mut best: Vec<usize> = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size < best.len() {
            continue;
        }
        let is_clique = members(mask)
            .into_iter()
            .all(|v| mask & !(1u64 << v) & !adj[v] == 0);
        if !is_clique {
            continue;
        }
        let set = members(mask);
        if size > best.len() || set < best {
            best = set;
        }
    }
    Ok(VertexSet::new(best))
}

struct BicliqueSearch<'a> {
    adj: &'a [u64],
    n: usize,
    best: usize,
    left: u64,
    right: u64,
}

impl BicliqueSearch<'_> {
    fn dfs(&mut self, start: usize, left: u64, common: u64) {
        let l = left.count_ones() as usize;
        for v in start..self.n {
            if l + (self.n - v) <= self.best {
                return;
            }
            let next = if left == 0 {
                self.adj[v]
            } else {
                common & self.adj[v]
            };
            let r = next.count_ones() as usize;
            // The common neighborhood only shrinks as L grows.
            if r <= self.best {
                continue;
            }
            let with = left | 1u64 << v;
            if (l + 1).min(r) > self.best {
                self.best = (l + 1).min(r);
                self.left = with;
                self.right = next;
            }
            self.dfs(v + 1, with, next);
        }
    }
}

/// Maximum balanced biclique `(L, R)` with `|L| = |R|`, found by enumerating
/// `L` and taking `R` as its common neighborhood.
pub fn max_balanced_biclique_exact(g: &Graph) -> Result<(VertexSet, VertexSet)> {
    let adj = bitmasks(
        g,
        "balanced biclique",
        OracleLimits::default().max_n_biclique,
    )?;
    let mut s = BicliqueSearch {
        adj: &adj,
        n: g.n(),
        best: 0,
        left: 0,
        right: 0,
    };
    s.dfs(0, 0, 0);
    let k = s.best;
    let left: Vec<usize> = members(s.left).into_iter().take(k).collect();
    let right: Vec<usize> = members(s.right).into_iter().take(k).collect();
    Ok((VertexSet::new(left), VertexSet::new(right)))
}

struct CoverSearch<'a> {
    adj: &'a [u64],
    best: usize,
    best_cover: u64,
}

impl CoverSearch<'_> {
    /// Size of a greedy maximal matching among `alive`: a lower bound.
    fn matching_bound(&self, alive: u64) -> usize {
        let mut free = alive;
        let mut size = 0;
        let mut m = alive;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if free >> v & 1 == 0 {
                continue;
            }
            let partners = self.adj[v] & free;
            if partners != 0 {
                let w = partners.trailing_zeros();
                free &= !(1u64 << v) & !(1u64 << w);
                size += 1;
            }
        }
        size
    }

    fn branch(&mut self, alive: u64, cover: u64) {
        let taken = cover.count_ones() as usize;
        let mut pick = None;
        let mut m = alive;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (self.adj[v] & alive).count_ones();
            if d > 0 && pick.is_none_or(|(_, bd)| d > bd) {
                pick = Some((v, d));
            }
        }
        let Some((v, _)) = pick else {
            if taken < self.best {
                self.best = taken;
                self.best_cover = cover;
            }
            return;
        };
        if taken + self.matching_bound(alive) >= self.best {
            return;
        }
        let bit = 1u64 << v;
        self.branch(alive & !bit, cover | bit);
        let nbrs = self.adj[v] & alive;
        self.branch(alive & !bit & !nbrs, cover | nbrs);
    }
}

/// Minimum vertex cover by max-degree branching with a matching bound.
pub fn min_vertex_cover_exact(g: &Graph) -> Result<VertexSet> {
    let adj = bitmasks(g, "vertex cover", OracleLimits::default().max_n_cover)?;
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = CoverSearch {
        adj: &adj,
        best: n + 1,
        best_cover: all,
    };
    s.branch(all, 0);
    Ok(VertexSet::new(members(s.best_cover)))
}
