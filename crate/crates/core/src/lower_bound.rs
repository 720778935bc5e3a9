//! The adversarial family against degree profiling: a staircase graph with
//! one or two vertices of every slack, randomly thinned, then planted with a
//! clique. Prefix statistics track how many planted vertices sit at each
//! slack level.
//!
//! Labels follow `1..=n` in the edge rule `u + v <= n + 1`; externally vertex
//! `x` is label `x + 1`, so the rule reads `x + y <= n - 1`.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::clique_number;
use crate::planting::{plant, PlantedInstance, Template};
use crate::rng::Seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LbConfig {
    pub n: usize,
    /// Edge deletion probability.
    pub eta_del: f64,
    pub a: f64,
    /// Planted clique fraction.
    pub c: f64,
    /// Set when `eta_del` was clipped into `[0, 1]`.
    pub clipped: bool,
}

impl LbConfig {
    /// `eta_del = a / c · sqrt(ln n / n)`, clipped to `[0, 1]`.
    pub fn new(n: usize, c: f64, a: f64) -> Result<Self> {
        Self::check(n, c, a)?;
        let raw = a / c * ((n as f64).ln() / n as f64).sqrt();
        Ok(LbConfig {
            n,
            eta_del: raw.clamp(0.0, 1.0),
            a,
            c,
            clipped: raw > 1.0,
        })
    }

    pub fn with_eta(n: usize, c: f64, a: f64, eta_del: f64) -> Result<Self> {
        Self::check(n, c, a)?;
        if !(0.0..=1.0).contains(&eta_del) {
            return Err(Error::input(format!(
                "deletion probability {eta_del} outside [0, 1]"
            )));
        }
        Ok(LbConfig {
            n,
            eta_del,
            a,
            c,
            clipped: false,
        })
    }

    fn check(n: usize, c: f64, a: f64) -> Result<()> {
        if n < 3 {
            return Err(Error::input("lower-bound construction needs n >= 3"));
        }
        if !(c >= 0.0 && c < 0.5) {
            return Err(Error::input(format!("c must lie in [0, 1/2), got {c}")));
        }
        if !(a >= 1.0) {
            return Err(Error::input(format!("a must be >= 1, got {a}")));
        }
        Ok(())
    }

    /// `⌊cn⌋`.
    pub fn clique_size(&self) -> usize {
        (self.c * self.n as f64).floor() as usize
    }
}

/// Edges `{x, y}`, `x != y`, with `x + y <= n - 1` (0-indexed).
pub fn staircase_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input(format!(
            "staircase graph needs n >= 3, got {n}"
        )));
    }
    let rows = (0..n)
        .map(|x| (0..n - x).filter(|&y| y != x).map(|y| y as u32).collect())
        .collect();
    Ok(Graph::from_sorted_rows(rows))
}

/// Keeps each edge independently with probability `1 - eta`; coins are drawn
/// in lexicographic edge order.
pub fn delete_edges(g: &Graph, eta: f64, seed: &Seed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::input(format!(
            "deletion probability {eta} outside [0, 1]"
        )));
    }
    let mut rng = seed.rng();
    let kept: Vec<(usize, usize)> = g.edges().filter(|_| rng.gen::<f64>() >= eta).collect();
    Graph::from_edge_list(g.n(), &kept)
}

/// `4 ln n / eta + 1`.
pub fn thinned_clique_bound(n: usize, eta: f64) -> f64 {
    4.0 * (n as f64).ln() / eta + 1.0
}

/// Thinned staircase for one trial, planted with `K_{⌊cn⌋}`.
pub fn lb_instance(config: &LbConfig, seed: &Seed) -> Result<PlantedInstance> {
    let stair = staircase_graph(config.n)?;
    let base = delete_edges(&stair, config.eta_del, &seed.purpose("delete"))?;
    let k = config.clique_size();
    if k == 0 {
        return PlantedInstance::from_mapping(
            Arc::new(base),
            Template::Explicit(Graph::empty(0)),
            Vec::new(),
        );
    }
    plant(base, Template::Clique(k), &seed.purpose("plant"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrefixRecord {
    pub s: usize,
    /// `|V_{≤s}|` in the base graph.
    pub base_at_most: usize,
    /// `|V̂_{≤s}|` in the planted graph.
    pub planted_at_most: usize,
    /// `|K ∩ V̂_{≤s}|`
    pub hit: usize,
    /// `(s + sqrt(2 n ln n)) / (1 - c)`
    pub s_star: f64,
    /// `c |V_{≤s}| - sqrt(2 n ln n)`
    pub lower: f64,
    /// `c |V_{≤s*}| + sqrt(2 n ln n)`
    pub upper: f64,
    pub lower_violated: bool,
    pub upper_violated: bool,
    /// `κ(Ĝ[V̂_{≤s}])` when the oracle applies.
    pub kappa_prefix: Option<usize>,
    /// `κ(G)` of the base when the oracle applies.
    pub kappa_base: Option<usize>,
}

impl PrefixRecord {
    pub fn violated(&self) -> bool {
        self.lower_violated || self.upper_violated
    }

    /// `κ(Ĝ[V̂_{≤s}]) <= κ(G) + |K ∩ V̂_{≤s}|`, when computed.
    pub fn kappa_inequality_holds(&self) -> Option<bool> {
        Some(self.kappa_prefix? <= self.kappa_base? + self.hit)
    }
}

/// Cumulative counts `at_most[s] = |{v : slack(v) <= s}|`.
fn cumulative_slack_counts(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut hist = vec![0usize; n.max(1)];
    for v in 0..n {
        hist[g.slack(v)] += 1;
    }
    let mut acc = 0;
    hist.iter()
        .map(|&h| {
            acc += h;
            acc
        })
        .collect()
}

/// One record per `s = 0..n-1`. Clique numbers are filled in when
/// `n <= oracle_limit`.
pub fn lb_prefix_statistics(
    inst: &PlantedInstance,
    config: &LbConfig,
    oracle_limit: usize,
) -> Result<Vec<PrefixRecord>> {
    let base = &inst.base;
    let planted = &inst.planted;
    let n = planted.n();
    let base_counts = cumulative_slack_counts(base);
    let planted_counts = cumulative_slack_counts(planted);

    let mut hit_hist = vec![0usize; n.max(1)];
    for v in inst.planted_set.iter() {
        hit_hist[planted.slack(v)] += 1;
    }

    let dev = (2.0 * n as f64 * (n as f64).ln()).sqrt();
    let with_oracle = n <= oracle_limit;
    let kappa_base = if with_oracle {
        Some(clique_number(base)?)
    } else {
        None
    };

    let mut records = Vec::with_capacity(n);
    let mut hit = 0;
    let mut cached: Option<(usize, usize)> = None; // (|V̂_{≤s}|, κ)
    for s in 0..n {
        hit += hit_hist[s];
        let s_star = (s as f64 + dev) / (1.0 - config.c);
        let star_idx = (s_star.floor() as usize).min(n - 1);
        let lower = config.c * base_counts[s] as f64 - dev;
        let upper = config.c * base_counts[star_idx] as f64 + dev;
        let kappa_prefix = if with_oracle {
            let size = planted_counts[s];
            match cached {
                Some((sz, k)) if sz == size => Some(k),
                _ => {
                    let set = planted.vertices_at_most_slack(s as f64);
                    let k = clique_number(&planted.induced_subgraph(&set).graph)?;
                    cached = Some((size, k));
                    Some(k)
                }
            }
        } else {
            None
        };
        records.push(PrefixRecord {
            s,
            base_at_most: base_counts[s],
            planted_at_most: planted_counts[s],
            hit,
            s_star,
            lower,
            upper,
            lower_violated: (hit as f64) < lower,
            upper_violated: hit as f64 > upper,
            kappa_prefix,
            kappa_base,
        });
    }
    Ok(records)
}

/// Vertices with slack at most `s`, for ad hoc checks.
pub fn at_most_slack(g: &Graph, s: f64) -> VertexSet {
    g.vertices_at_most_slack(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_small_cases() {
        let g = staircase_graph(3).unwrap();
        // labels {1,2},{1,3} -> ids {0,1},{0,2}
        assert_eq!(g, Graph::from_edge_list(3, &[(0, 1), (0, 2)]).unwrap());
        assert!(staircase_graph(2).is_err());

        let g = staircase_graph(9).unwrap();
        assert_eq!(g.slack(0), 0);
        assert_eq!(g.slack(4), 4);
        assert_eq!(g.slack(8), 7);
    }

    #[test]
    fn staircase_slack_formula_and_levels() {
        for n in 3..60 {
            let g = staircase_graph(n).unwrap();
            for x in 0..n {
                let u = x + 1;
                let expected = if 2 * u <= n + 1 { u - 1 } else { u - 2 };
                assert_eq!(g.slack(x), expected, "n={n} u={u}");
                let nbrs: Vec<usize> = (1..=n + 1 - u).filter(|&w| w != u).map(|w| w - 1).collect();
                assert_eq!(
                    g.neighbors(x)
                        .iter()
                        .map(|&w| w as usize)
                        .collect::<Vec<_>>(),
                    nbrs
                );
            }
            for s in 0..n {
                let count = g.vertices_at_most_slack(s as f64).len();
                assert!(
                    (s + 1..=s + 2).contains(&count),
                    "n={n} s={s} count={count}"
                );
            }
        }
    }

    #[test]
    fn deletion_extremes_and_monotonicity() {
        let g = staircase_graph(30).unwrap();
        let seed = Seed::new(8);
        assert_eq!(delete_edges(&g, 0.0, &seed).unwrap(), g);
        assert_eq!(delete_edges(&g, 1.0, &seed).unwrap().m(), 0);
        let h = delete_edges(&g, 0.4, &seed).unwrap();
        assert!(h.edges().all(|(u, v)| g.adjacent(u, v)));
        assert!((0..30).all(|v| h.slack(v) >= g.slack(v)));
        assert_eq!(h, delete_edges(&g, 0.4, &seed).unwrap());
        assert!(delete_edges(&g, 1.5, &seed).is_err());
    }

    #[test]
    fn deletion_count_concentrates() {
        let k = Graph::complete(100);
        let sd = (4950.0f64 * 0.25).sqrt();
        let mut total = 0.0;
        for t in 0..1000 {
            let kept = delete_edges(&k, 0.5, &Seed::new(21).trial(t)).unwrap().m() as f64;
            assert!((kept - 2475.0).abs() <= 5.0 * sd, "trial {t}: {kept}");
            total += kept;
        }
        assert!((total / 1000.0 - 2475.0).abs() < 5.0 * sd / 1000f64.sqrt());
    }

    #[test]
    fn config_clipping() {
        let cfg = LbConfig::new(48, 0.25, 2.0).unwrap();
        assert!(cfg.clipped);
        assert_eq!(cfg.eta_del, 1.0);
        let cfg = LbConfig::new(2000, 0.3, 2.0).unwrap();
        assert!(!cfg.clipped && cfg.eta_del > 0.4 && cfg.eta_del < 0.42);
        assert!(LbConfig::new(10, 0.5, 2.0).is_err());
        assert!(LbConfig::new(2, 0.1, 2.0).is_err());
    }

    #[test]
    fn empty_template_never_hits() {
        let cfg = LbConfig::with_eta(40, 0.0, 2.0, 0.3).unwrap();
        let inst = lb_instance(&cfg, &Seed::new(1)).unwrap();
        let recs = lb_prefix_statistics(&inst, &cfg, 0).unwrap();
        assert!(recs.iter().all(|r| r.hit == 0 && !r.upper_violated));
    }

    #[test]
    fn records_are_consistent() {
        let cfg = LbConfig::new(40, 0.25, 2.0).unwrap();
        let cfg = LbConfig {
            eta_del: 0.3,
            ..cfg
        };
        let inst = lb_instance(&cfg, &Seed::new(6)).unwrap();
        let recs = lb_prefix_statistics(&inst, &cfg, 60).unwrap();
        assert_eq!(recs.len(), 40);
        for r in &recs {
            assert!(r.hit <= inst.planted_set.len().min(r.planted_at_most));
            assert!(r.base_at_most <= r.planted_at_most);
            assert_eq!(r.kappa_inequality_holds(), Some(true));
        }
        assert_eq!(recs.last().unwrap().planted_at_most, 40);
    }

    #[test]
    fn thinned_prefixes_dominate_original() {
        // |V_{≤s}| <= |V'_{≤s'}| with s' = s + eta n + sqrt(a n ln n), a = 2
        let n = 60;
        let g = staircase_graph(n).unwrap();
        let eta = 0.3;
        let shift = eta * n as f64 + (2.0 * n as f64 * (n as f64).ln()).sqrt();
        for t in 0..50 {
            let h = delete_edges(&g, eta, &Seed::new(77).trial(t)).unwrap();
            for s in 0..n {
                let before = g.vertices_at_most_slack(s as f64).len();
                let after = h.vertices_at_most_slack(s as f64 + shift).len();
                assert!(before <= after);
            }
        }
    }
}
