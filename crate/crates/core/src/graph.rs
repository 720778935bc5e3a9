//! Immutable simple undirected graphs with sorted adjacency.
//!
//! Vertices are `0..n`. Adjacency is stored in compressed rows of `u32`
//! neighbor ids, each row strictly increasing, so edge queries are a binary
//! search in the shorter of the two rows.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let rows = (0..n)
            .map(|u| (0..n as u32).filter(|&v| v as usize != u).collect())
            .collect();
        Graph::from_sorted_rows(rows)
    }

    /// Builds a graph from unordered pairs. Duplicates and reversed pairs are
    /// merged; self-loops and out-of-range endpoints are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::input(format!("vertex count {n} exceeds u32 range")));
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in edges {
            targets[cursor[u]] = v as u32;
            cursor[u] += 1;
            targets[cursor[v]] = u as u32;
            cursor[v] += 1;
        }
        // Sort and dedup each row, then compact.
        let mut out_offsets = Vec::with_capacity(n + 1);
        out_offsets.push(0);
        let mut write = 0usize;
        for v in 0..n {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            targets[lo..hi].sort_unstable();
            let mut last = None;
            for i in lo..hi {
                let t = targets[i];
                if last != Some(t) {
                    targets[write] = t;
                    write += 1;
                    last = Some(t);
                }
            }
            out_offsets.push(write);
        }
        targets.truncate(write);
        targets.shrink_to_fit();
        Ok(Graph {
            offsets: out_offsets,
            targets,
        })
    }

    /// Assembles a graph from rows that are already sorted, duplicate-free,
    /// loop-free and symmetric. Callers inside the crate uphold this.
    pub(crate) fn from_sorted_rows(rows: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        offsets.push(0);
        let total = rows.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        for row in rows {
            targets.extend_from_slice(&row);
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of edges (unordered pairs).
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    /// `‖G‖ = n + m`.
    pub fn size(&self) -> usize {
        self.n() + self.m()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Slack `n - 1 - degree(v)`: the degree of `v` in the complement.
    #[inline]
    pub fn slack(&self, v: usize) -> usize {
        self.n() - 1 - self.degree(v)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edge query with range checking.
    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::input(format!(
                "vertex pair ({u}, {v}) outside 0..{n}"
            )));
        }
        Ok(self.adjacent(u, v))
    }

    /// Binary search in the shorter row. Panics on out-of-range ids.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            let row = self.neighbors(u);
            let start = row.partition_point(|&w| (w as usize) <= u);
            row[start..].iter().map(move |&w| (u, w as usize))
        })
    }

    pub fn slack_profile(&self) -> SlackProfile {
        let slack: Vec<usize> = (0..self.n()).map(|v| self.slack(v)).collect();
        SlackProfile {
            order: self.degree_order(),
            slack,
        }
    }

    /// Vertices by nonincreasing degree, ties by ascending id.
    pub fn degree_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.degree(b).cmp(&self.degree(a)).then(a.cmp(&b)));
        order
    }

    /// `V_{<s}`: vertices whose slack is strictly below `s`.
    pub fn vertices_below_slack(&self, s: f64) -> VertexSet {
        VertexSet::from_sorted_unchecked(
            (0..self.n())
                .filter(|&v| (self.slack(v) as f64) < s)
                .collect(),
        )
    }

    /// `V_{≤s}`: vertices whose slack is at most `s`.
    pub fn vertices_at_most_slack(&self, s: f64) -> VertexSet {
        VertexSet::from_sorted_unchecked(
            (0..self.n())
                .filter(|&v| (self.slack(v) as f64) <= s)
                .collect(),
        )
    }

    /// `G[S]` relabeled to `0..|S|` in the order of `S`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Subgraph {
        self.restricted(set, false)
    }

    /// Complement of `G[S]`, relabeled like [`Graph::induced_subgraph`].
    pub fn complement_induced(&self, set: &VertexSet) -> Subgraph {
        self.restricted(set, true)
    }

    fn restricted(&self, set: &VertexSet, complement: bool) -> Subgraph {
        let ids = set.as_slice();
        let k = ids.len();
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(k);
        for &u in ids {
            let adj = self.neighbors(u);
            let mut row = Vec::new();
            // Either binary-search each member in adj(u), or merge both lists.
            let probe_cost = k * (usize::BITS - adj.len().leading_zeros()) as usize;
            if probe_cost < k + adj.len() {
                for (j, &w) in ids.iter().enumerate() {
                    if w != u && (adj.binary_search(&(w as u32)).is_ok() != complement) {
                        row.push(j as u32);
                    }
                }
            } else {
                let mut a = 0;
                for (j, &w) in ids.iter().enumerate() {
                    while a < adj.len() && (adj[a] as usize) < w {
                        a += 1;
                    }
                    let present = a < adj.len() && adj[a] as usize == w;
                    if w != u && present != complement {
                        row.push(j as u32);
                    }
                }
            }
            rows.push(row);
        }
        Subgraph {
            graph: Graph::from_sorted_rows(rows),
            ids: ids.to_vec(),
        }
    }

    /// Connected components ordered by nonincreasing size, ties by smallest
    /// member id.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            let mut members = Vec::new();
            while let Some(u) = queue.pop_front() {
                members.push(u);
                for &w in self.neighbors(u) {
                    let w = w as usize;
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comps.push(VertexSet::new(members));
        }
        // Roots are visited in ascending order, so a stable sort by size keeps
        // the smallest-member tie-break.
        comps.sort_by(|a, b| b.len().cmp(&a.len()));
        comps
    }

    /// True iff every pair in `set` is adjacent. Out-of-range ids fail.
    pub fn verify_clique(&self, set: &VertexSet) -> bool {
        let ids = set.as_slice();
        if ids.last().is_some_and(|&v| v >= self.n()) {
            return false;
        }
        ids.iter().enumerate().all(|(i, &u)| {
            let adj = self.neighbors(u);
            if adj.len() + 1 < ids.len() {
                return false;
            }
            ids[i + 1..]
                .iter()
                .all(|&w| adj.binary_search(&(w as u32)).is_ok())
        })
    }

    /// True iff `left` and `right` are disjoint and fully joined.
    pub fn verify_biclique(&self, left: &VertexSet, right: &VertexSet) -> bool {
        let n = self.n();
        if left.as_slice().last().is_some_and(|&v| v >= n)
            || right.as_slice().last().is_some_and(|&v| v >= n)
        {
            return false;
        }
        if left.intersects(right) {
            return false;
        }
        left.iter().all(|u| {
            let adj = self.neighbors(u);
            right.iter().all(|w| adj.binary_search(&(w as u32)).is_ok())
        })
    }

    /// Checks the representation invariants from scratch.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        if self.targets.len() % 2 != 0 {
            return Err(Error::input("odd adjacency total"));
        }
        for u in 0..n {
            let row = self.neighbors(u);
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::input(format!("row {u} not strictly increasing")));
            }
            for &w in row {
                let w = w as usize;
                if w >= n || w == u {
                    return Err(Error::input(format!("bad neighbor {w} of {u}")));
                }
                if self.neighbors(w).binary_search(&(u as u32)).is_err() {
                    return Err(Error::input(format!("edge ({u}, {w}) not symmetric")));
                }
            }
        }
        Ok(())
    }
}

/// Per-vertex slacks and the canonical degree ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlackProfile {
    pub slack: Vec<usize>,
    pub order: Vec<usize>,
}

/// A graph on a relabeled vertex subset plus the map back to original ids:
/// local vertex `i` is original vertex `ids[i]`.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    pub ids: Vec<usize>,
}

impl Subgraph {
    pub fn to_original(&self, local: &VertexSet) -> VertexSet {
        // ids is increasing, so the image of a sorted set stays sorted.
        VertexSet::from_sorted_unchecked(local.iter().map(|i| self.ids[i]).collect())
    }
}

/// Sorted set of distinct vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn range(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Rejects ids outside `0..n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::input(format!("vertex {v} outside 0..{n}"))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn k22() -> Graph {
        Graph::from_edge_list(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec())
    }

    #[test]
    fn builds_path_and_merges_duplicates() {
        let g = path3();
        assert_eq!((0..3).map(|v| g.degree(v)).collect::<Vec<_>>(), [1, 2, 1]);
        assert_eq!(g.m(), 2);

        let e = Graph::from_edge_list(2, &[]).unwrap();
        assert_eq!(e.m(), 0);

        let d = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(d.m(), 1);
        assert_eq!(d.neighbors(0), &[1]);
        d.check_invariants().unwrap();
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn edge_queries() {
        let g = path3();
        assert!(g.has_edge(0, 1).unwrap());
        assert!(!g.has_edge(0, 2).unwrap());
        assert!(!g.has_edge(1, 1).unwrap());
        assert!(g.has_edge(0, 3).is_err());
    }

    #[test]
    fn slack_profiles() {
        let k4 = Graph::complete(4);
        let p = k4.slack_profile();
        assert_eq!(p.slack, [0, 0, 0, 0]);
        assert_eq!(p.order, [0, 1, 2, 3]);

        let p = path3().slack_profile();
        assert_eq!(p.slack, [1, 0, 1]);
        assert_eq!(p.order, [1, 0, 2]);

        assert_eq!(Graph::empty(3).slack_profile().slack, [2, 2, 2]);
    }

    #[test]
    fn below_slack() {
        assert_eq!(
            Graph::complete(4).vertices_below_slack(1.0),
            set(&[0, 1, 2, 3])
        );
        assert_eq!(path3().vertices_below_slack(1.0), set(&[1]));
        assert!(path3().vertices_below_slack(0.0).is_empty());
    }

    #[test]
    fn induced_and_complement() {
        let k4 = Graph::complete(4);
        let sub = k4.induced_subgraph(&set(&[0, 1, 2]));
        assert_eq!(sub.graph, Graph::complete(3));
        assert_eq!(sub.ids, [0, 1, 2]);

        let sub = path3().induced_subgraph(&set(&[0, 2]));
        assert_eq!(sub.graph, Graph::empty(2));

        assert_eq!(k4.induced_subgraph(&VertexSet::default()).graph.n(), 0);

        let all3 = VertexSet::range(3);
        assert_eq!(
            Graph::complete(3).complement_induced(&all3).graph,
            Graph::empty(3)
        );
        assert_eq!(
            Graph::empty(3).complement_induced(&all3).graph,
            Graph::complete(3)
        );

        let c = k22().complement_induced(&VertexSet::range(4)).graph;
        assert_eq!(c, Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap());
    }

    #[test]
    fn components() {
        let two = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.connected_components(), vec![set(&[0, 1]), set(&[2, 3])]);
        assert_eq!(path3().connected_components(), vec![set(&[0, 1, 2])]);
        assert_eq!(
            Graph::empty(3).connected_components(),
            vec![set(&[0]), set(&[1]), set(&[2])]
        );
        // size dominates the smallest-id tie-break
        let g = Graph::from_edge_list(5, &[(2, 3), (3, 4)]).unwrap();
        assert_eq!(
            g.connected_components(),
            vec![set(&[2, 3, 4]), set(&[0]), set(&[1])]
        );
    }

    #[test]
    fn verifiers() {
        let k4 = Graph::complete(4);
        assert!(k4.verify_clique(&set(&[0, 1, 2, 3])));
        assert!(!path3().verify_clique(&set(&[0, 2])));
        assert!(path3().verify_clique(&set(&[2])));
        assert!(!path3().verify_clique(&set(&[7])));

        assert!(k22().verify_biclique(&set(&[0, 1]), &set(&[2, 3])));
        assert!(!path3().verify_biclique(&set(&[0]), &set(&[2])));
        assert!(path3().verify_biclique(&VertexSet::default(), &set(&[0, 1, 2])));
        assert!(!k4.verify_biclique(&set(&[0, 1]), &set(&[1, 2])));
    }

    #[test]
    fn edges_iterate_lexicographically() {
        let g = Graph::from_edge_list(4, &[(3, 0), (2, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1), (0, 3), (1, 2)]);
    }
}
