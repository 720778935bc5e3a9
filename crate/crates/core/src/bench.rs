//! Wall-clock scaling measurements.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::biclique::balanced_biclique_finder;
use crate::clique::{clique_finder, CliqueParams};
use crate::error::Result;
use crate::experiment::SolverKind;
use crate::generators::erdos_renyi;
use crate::graph::Graph;
use crate::io::parse_edge_list;
use crate::planting::{plant, Template};
use crate::rng::Seed;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalingReport {
    pub label: String,
    /// Problem sizes compared (vertices for dense runs, bytes for sparse runs).
    pub small: usize,
    pub large: usize,
    pub small_ms: Vec<f64>,
    pub large_ms: Vec<f64>,
    pub median_small_ms: f64,
    pub median_large_ms: f64,
    /// `median_large / median_small`, divided by `large / small` for
    /// linear-time checks.
    pub ratio: f64,
    pub limit: f64,
    pub pass: bool,
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k == 0 {
        0.0
    } else if k % 2 == 1 {
        v[k / 2]
    } else {
        (v[k / 2 - 1] + v[k / 2]) / 2.0
    }
}

/// Runs `f` once as warm-up, then `reps` timed times; returns milliseconds.
pub fn time_runs<F: FnMut()>(reps: usize, mut f: F) -> Vec<f64> {
    f();
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64() * 1e3
        })
        .collect()
}

/// `G(n, 1/2)` with a planted clique on `n/4` vertices, or a planted
/// biclique with sides `n/8`.
pub fn dense_instance(n: usize, solver: SolverKind, seed: &Seed) -> Result<Graph> {
    let base = erdos_renyi(n, 0.5, &seed.purpose("base"))?;
    let template = match solver {
        SolverKind::Clique => Template::Clique(n / 4),
        SolverKind::Biclique => Template::Biclique(n / 8, n / 8),
    };
    Ok(plant(base, template, &seed.purpose("plant"))?.planted)
}

fn solve(g: &Graph, solver: SolverKind) {
    match solver {
        SolverKind::Clique => {
            black_box(clique_finder(g, &CliqueParams::default()).expect("default params"));
        }
        SolverKind::Biclique => {
            black_box(balanced_biclique_finder(g));
        }
    }
}

fn report(
    label: String,
    small: usize,
    large: usize,
    small_ms: Vec<f64>,
    large_ms: Vec<f64>,
    per_unit: bool,
    limit: f64,
) -> ScalingReport {
    let (ms, ml) = (median(&small_ms), median(&large_ms));
    let mut ratio = ml / ms;
    if per_unit {
        ratio /= large as f64 / small as f64;
    }
    ScalingReport {
        label,
        small,
        large,
        small_ms,
        large_ms,
        median_small_ms: ms,
        median_large_ms: ml,
        ratio,
        limit,
        pass: ratio <= limit,
    }
}

/// Solver time at `n` and `2n` on dense planted instances.
pub fn dense_scaling(
    solver: SolverKind,
    n: usize,
    reps: usize,
    limit: f64,
    seed: &Seed,
) -> Result<ScalingReport> {
    let small = dense_instance(n, solver, &seed.trial(0))?;
    let large = dense_instance(2 * n, solver, &seed.trial(1))?;
    let small_ms = time_runs(reps, || solve(&small, solver));
    let large_ms = time_runs(reps, || solve(&large, solver));
    let label = format!("dense-{}", solver_name(solver));
    Ok(report(label, n, 2 * n, small_ms, large_ms, false, limit))
}

fn solver_name(solver: SolverKind) -> &'static str {
    match solver {
        SolverKind::Clique => "clique",
        SolverKind::Biclique => "biclique",
    }
}

/// Edge-list text with `n` vertices and `avg_degree * n / 2` random edges
/// (repeats allowed).
pub fn sparse_edge_list(n: usize, avg_degree: usize, seed: &Seed) -> String {
    let mut rng = seed.rng();
    let m = n * avg_degree / 2;
    let mut text = String::with_capacity(m * 16);
    let _ = writeln!(text, "{n} {m}");
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let _ = writeln!(text, "{u} {v}");
    }
    text
}

/// Parse plus both solvers on sparse edge lists of `n` and `2n` vertices.
/// The reported ratio is time growth per unit of input size.
pub fn sparse_scaling(n: usize, reps: usize, limit: f64, seed: &Seed) -> Result<ScalingReport> {
    let small = sparse_edge_list(n, 4, &seed.trial(0));
    let large = sparse_edge_list(2 * n, 4, &seed.trial(1));
    let run = |text: &str| {
        let g = parse_edge_list(text).expect("generated edge list parses");
        solve(&g, SolverKind::Clique);
        solve(&g, SolverKind::Biclique);
    };
    let small_ms = time_runs(reps, || run(&small));
    let large_ms = time_runs(reps, || run(&large));
    Ok(report(
        "sparse-exit".into(),
        small.len(),
        large.len(),
        small_ms,
        large_ms,
        true,
        limit,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biclique::Phase;

    #[test]
    fn sparse_inputs_take_the_sparse_exits() {
        let g = parse_edge_list(&sparse_edge_list(5000, 4, &Seed::new(1))).unwrap();
        assert!(
            clique_finder(&g, &CliqueParams::default())
                .unwrap()
                .sparse_exit
        );
        assert_eq!(balanced_biclique_finder(&g).phase, Phase::SparseExit);
    }

    #[test]
    fn dense_instances_are_dense() {
        let g = dense_instance(256, SolverKind::Clique, &Seed::new(2)).unwrap();
        assert!(
            !clique_finder(&g, &CliqueParams::default())
                .unwrap()
                .sparse_exit
        );
        let g = dense_instance(256, SolverKind::Biclique, &Seed::new(2)).unwrap();
        assert_ne!(balanced_biclique_finder(&g).phase, Phase::SparseExit);
    }

    #[test]
    fn report_ratio() {
        let r = report(
            "x".into(),
            10,
            20,
            vec![1.0, 2.0, 3.0],
            vec![4.0, 8.0, 100.0],
            true,
            2.0,
        );
        assert_eq!(r.median_small_ms, 2.0);
        assert_eq!(r.ratio, 2.0);
        assert!(r.pass);
    }
}
