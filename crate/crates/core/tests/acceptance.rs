//! End-to-end acceptance runs. Each test prints one `PASS`/`FAIL` line to
//! stderr (bypassing output capture) and then asserts.
//!
//! Tests share a lock so the timing measurements run on an idle machine.

use std::io::Write;
use std::sync::{Arc, Mutex, MutexGuard};

use rand::seq::SliceRandom;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use planted::bench::{dense_scaling, sparse_scaling};
use planted::biclique::{balanced_biclique_finder, biclique_extractor};
use planted::clique::{clique_finder, dense_clique_finder, k_bound, CliqueParams};
use planted::experiment::{run_experiment, ExperimentSpec, SolverKind};
use planted::generators::{generate_base, random_regular, BaseKind};
use planted::lower_bound::{
    delete_edges, lb_instance, lb_prefix_statistics, staircase_graph, thinned_clique_bound,
    LbConfig,
};
use planted::oracle::{clique_number, max_clique_exact};
use planted::planting::sample_injection;
use planted::slack::{densification_stats, find_bulging_set, verify_certificate};
use planted::{plant, Graph, Seed, Template, VertexSet};

static LOCK: Mutex<()> = Mutex::new(());

fn serial() -> MutexGuard<'static, ()> {
    LOCK.lock().unwrap_or_else(|e| e.into_inner())
}

fn verdict(id: u32, name: &str, pass: bool, detail: String) {
    let line = format!(
        "[acceptance {id:>2}] {} {name}: {detail}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(pass, "{}", line.trim_end());
}

fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

#[test]
fn c01_clique_recovery_guarantee() {
    let _g = serial();
    let (n, c, p) = (4096, 0.9, 0.9);
    let d = ((1.0 - p) * n as f64).floor() as usize; // 409
    let mut spec = ExperimentSpec::new(
        n,
        BaseKind::DRegular { d },
        Template::clique_fraction(c, n).unwrap(),
        SolverKind::Clique,
        20261015,
    );
    spec.trials = 100;
    spec.c = Some(c);
    spec.p = Some(p);
    let report = run_experiment(&spec).unwrap();
    assert!(report.base_max_degree as f64 <= (1.0 - p) * n as f64);
    let k = k_bound(n, c, p).unwrap();
    let all_verified = report.records.iter().all(|r| r.verified);
    let passes = report.summary.passes;
    verdict(
        1,
        "clique recovery guarantee",
        all_verified && passes >= 99,
        format!(
            "K = {k:.4}, threshold {}, passes {passes}/100, all verified = {all_verified}, sizes min/median/max = {}/{}/{}",
            report.summary.threshold, report.summary.min_size, report.summary.median_size, report.summary.max_size
        ),
    );
}

#[test]
fn c02_dense_clique_finder_ratio() {
    let _g = serial();
    let mut rng = Seed::new(2).purpose("dense-finder").rng();
    let (mut applicable, mut failures) = (0, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=25);
        let p = rng.gen_range(0.05..0.95);
        let mut g = random_graph(&mut rng, n, p);
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(n / 2 + 1..=n);
            let mut ids: Vec<usize> = (0..n).collect();
            ids.shuffle(&mut rng);
            let mut edges: Vec<(usize, usize)> = g.edges().collect();
            for i in 0..k {
                for j in i + 1..k {
                    edges.push((ids[i], ids[j]));
                }
            }
            g = Graph::from_edge_list(n, &edges).unwrap();
        }
        let kappa = clique_number(&g).unwrap();
        let found = dense_clique_finder(&g);
        assert!(g.verify_clique(&found));
        if 2 * kappa > n {
            applicable += 1;
            if found.len() < 2 * kappa - n {
                failures += 1;
            }
        }
    }
    verdict(
        2,
        "dense clique finder ratio",
        failures == 0 && applicable > 0,
        format!("{applicable} graphs with kappa > n/2, {failures} below 2 kappa - n"),
    );
}

#[test]
fn c03_biclique_extractor_bound() {
    let _g = serial();
    let mut failures = 0;
    for t in 0..10_000u64 {
        let seed = Seed::new(3).trial(t);
        let mut rng = seed.purpose("params").rng();
        let n = rng.gen_range(2..=200);
        let a = rng.gen_range(1..=n / 2);
        let base = if rng.gen_bool(0.2) {
            Graph::empty(n)
        } else {
            let p = rng.gen_range(0.0..0.9);
            generate_base(&BaseKind::Er { p }, n, &seed.purpose("base")).unwrap()
        };
        let inst = plant(base, Template::Biclique(a, a), &seed.purpose("plant")).unwrap();
        let (left, right) = inst.planted_sides().unwrap();
        let mut pool: Vec<usize> = left.iter().chain(right.iter()).collect();
        pool.shuffle(&mut rng);
        let size = rng.gen_range(1..=pool.len());
        let subset = VertexSet::new(pool[..size].to_vec());
        let ex = biclique_extractor(&inst.planted, &subset).unwrap();
        let ok = inst.planted.verify_biclique(&ex.left, &ex.right) && 3 * ex.min_side() >= size;
        if !ok {
            failures += 1;
        }
    }
    verdict(
        3,
        "biclique extractor bound",
        failures == 0,
        format!("10000 instances, {failures} failures"),
    );
}

#[test]
fn c04_structural_dichotomy_exhaustive() {
    let _g = serial();
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
        .collect();
    let (mut checked, mut failures) = (0u64, 0u64);
    for mask in 0u32..1 << 15 {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edge_list(6, &edges).unwrap();
        for alpha in [2.0, 3.0, 4.0] {
            for beta in [0.1, 0.25, 0.4] {
                for s in [1.0, 2.0, 3.0] {
                    checked += 1;
                    match find_bulging_set(&g, alpha, beta, s) {
                        Ok(cert) if verify_certificate(&g, &cert) => {}
                        _ => failures += 1,
                    }
                }
            }
        }
    }
    verdict(
        4,
        "structural dichotomy",
        failures == 0 && checked == 32768 * 27,
        format!(
            "{checked} (graph, alpha, beta, s) cases, {failures} without a verified certificate"
        ),
    );
}

#[test]
fn c05_densification_frequencies() {
    let _g = serial();
    let n = 4096;
    let d = n - 1 - 512;
    let base = Arc::new(random_regular(n, d, &Seed::new(5).purpose("base")).unwrap());
    assert!((0..n).all(|v| base.slack(v) == 512));
    let template = Template::clique_fraction(0.5, n).unwrap();
    let mut held = 0;
    let mut worst_hit = usize::MAX;
    let mut worst_miss = 0;
    for t in 0..200 {
        let inst = plant(
            Arc::clone(&base),
            template.clone(),
            &Seed::new(5).trial(t).purpose("plant"),
        )
        .unwrap();
        let stats = densification_stats(&inst, 512.0, n, 6.0, 1.0);
        if stats.cond_i && stats.cond_ii {
            held += 1;
        }
        worst_hit = worst_hit.min(stats.hit);
        worst_miss = worst_miss.max(stats.miss);
    }
    verdict(
        5,
        "densification frequencies",
        held >= 199,
        format!("both conditions in {held}/200 trials, min hit {worst_hit}, max miss {worst_miss}"),
    );
}

#[test]
fn c06_lower_bound_prefix_statistics() {
    let _g = serial();
    let cfg = LbConfig::new(2000, 0.3, 2.0).unwrap();
    let mut clean = 0;
    for t in 0..50 {
        let inst = lb_instance(&cfg, &Seed::new(6).trial(t)).unwrap();
        let recs = lb_prefix_statistics(&inst, &cfg, 0).unwrap();
        if recs.iter().all(|r| !r.violated()) {
            clean += 1;
        }
    }

    let small = LbConfig::new(48, 0.3, 2.0).unwrap();
    let mut kappa_ok = 0;
    for t in 0..50 {
        let inst = lb_instance(&small, &Seed::new(60).trial(t)).unwrap();
        let recs = lb_prefix_statistics(&inst, &small, 60).unwrap();
        if recs
            .iter()
            .all(|r| r.kappa_inequality_holds() == Some(true))
        {
            kappa_ok += 1;
        }
    }
    verdict(
        6,
        "lower-bound prefix statistics",
        clean >= 48 && kappa_ok == 50,
        format!(
            "n=2000 eta={:.4}: bounds held for all s in {clean}/50 trials; n=48 (eta clipped = {}): clique inequality in {kappa_ok}/50",
            cfg.eta_del, small.clipped
        ),
    );
}

#[test]
fn c07_thinned_clique_bound() {
    let _g = serial();
    let mut lines = Vec::new();
    let mut pass = true;
    for n in [40, 60] {
        let stair = staircase_graph(n).unwrap();
        for eta in [0.3, 0.5] {
            let bound = thinned_clique_bound(n, eta);
            let mut held = 0;
            let mut max_kappa = 0;
            for t in 0..200 {
                let g = delete_edges(
                    &stair,
                    eta,
                    &Seed::new(7).trial(t).purpose(&format!("n={n},eta={eta}")),
                )
                .unwrap();
                let kappa = clique_number(&g).unwrap();
                max_kappa = max_kappa.max(kappa);
                if kappa as f64 <= bound {
                    held += 1;
                }
            }
            pass &= held >= 195;
            lines.push(format!(
                "n={n} eta={eta}: {held}/200 (max kappa {max_kappa}, bound {bound:.2})"
            ));
        }
    }
    verdict(7, "thinned staircase clique bound", pass, lines.join("; "));
}

#[test]
fn c08_output_validity_on_arbitrary_graphs() {
    let _g = serial();
    let mut failures = 0;
    let forced = CliqueParams {
        dense_cutoff: Some(0),
        ..CliqueParams::default()
    };
    for t in 0..10_000u64 {
        let seed = Seed::new(8).trial(t);
        let mut rng = seed.purpose("params").rng();
        let n = rng.gen_range(1..=300);
        let kind = match rng.gen_range(0..4) {
            0 => BaseKind::Empty,
            1 => {
                let mut d = rng.gen_range(0..n);
                if n * d % 2 == 1 {
                    d -= 1;
                }
                BaseKind::DRegular { d }
            }
            2 => BaseKind::Er {
                p: rng.gen_range(0.0..=1.0),
            },
            _ if n >= 3 => BaseKind::Staircase {
                eta: rng.gen_range(0.0..=1.0),
            },
            _ => BaseKind::Empty,
        };
        let mut g = generate_base(&kind, n, &seed.purpose("base")).unwrap();
        if n >= 2 && rng.gen_bool(0.5) {
            let template = if rng.gen_bool(0.5) {
                Template::Clique(rng.gen_range(1..=n))
            } else {
                let a = rng.gen_range(1..=n / 2);
                Template::Biclique(a, rng.gen_range(1..=n - a))
            };
            g = plant(g, template, &seed.purpose("plant")).unwrap().planted;
        }
        let params = if rng.gen_bool(0.5) {
            forced.clone()
        } else {
            CliqueParams::default()
        };
        let clique = clique_finder(&g, &params).unwrap();
        let bic = balanced_biclique_finder(&g);
        let ok = clique.verified
            && g.verify_clique(&clique.found)
            && bic.verified
            && g.verify_biclique(&bic.left, &bic.right)
            && bic.min_side == bic.left.len().min(bic.right.len());
        if !ok {
            failures += 1;
        }
    }
    verdict(
        8,
        "output validity on arbitrary graphs",
        failures == 0,
        format!("10000 graphs, {failures} invalid outputs"),
    );
}

#[test]
fn c09_runtime_scaling() {
    let _g = serial();
    let seed = Seed::new(9);
    let clique = dense_scaling(SolverKind::Clique, 2048, 5, 5.5, &seed.purpose("clique")).unwrap();
    let bic = dense_scaling(
        SolverKind::Biclique,
        2048,
        5,
        5.5,
        &seed.purpose("biclique"),
    )
    .unwrap();
    let sparse = sparse_scaling(200_000, 5, 2.0, &seed.purpose("sparse")).unwrap();
    let detail = [&clique, &bic, &sparse]
        .iter()
        .map(|r| {
            format!(
                "{} {}->{}: {:.1}ms -> {:.1}ms, ratio {:.2} (limit {})",
                r.label, r.small, r.large, r.median_small_ms, r.median_large_ms, r.ratio, r.limit
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    verdict(
        9,
        "runtime scaling",
        clique.pass && bic.pass && sparse.pass,
        detail,
    );
}

#[test]
fn c10_injection_uniformity() {
    let _g = serial();
    let draws = 100_000u64;
    let mut counts = [[0u64; 4]; 4];
    for t in 0..draws {
        let phi = sample_injection(&Seed::new(10).trial(t).purpose("inject"), 2, 4).unwrap();
        counts[phi[0]][phi[1]] += 1;
    }
    let expected = draws as f64 / 12.0;
    let mut stat = 0.0;
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if i == j {
                assert_eq!(c, 0);
            } else {
                stat += (c as f64 - expected).powi(2) / expected;
            }
        }
    }
    let p_value = ChiSquared::new(11.0).unwrap().sf(stat);
    verdict(
        10,
        "injection uniformity",
        p_value > 0.001,
        format!("chi-square {stat:.3} on 11 df, p = {p_value:.4}"),
    );
}

#[test]
fn oracle_agrees_with_itself_on_a_planted_instance() {
    // sanity check on the ground truth used above
    let inst = plant(Graph::empty(30), Template::Clique(12), &Seed::new(11)).unwrap();
    assert_eq!(max_clique_exact(&inst.planted).unwrap(), inst.planted_set);
}
