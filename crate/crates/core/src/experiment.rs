//! Seeded multi-trial experiments: one base graph, a fresh planting per
//! trial, a solver run and a pass/fail verdict against the size guarantee.

use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::biclique::{balanced_biclique_finder, biclique_bound, BicliqueResult};
use crate::clique::{clique_finder, k_bound, CliqueParams, SolveReport};
use crate::error::{Error, Result};
use crate::generators::{generate_base, BaseKind};
use crate::graph::{Graph, VertexSet};
use crate::planting::{plant, Template};
use crate::rng::Seed;
use crate::slack::{densification_stats, DensificationStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Clique,
    Biclique,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub n: usize,
    pub generator: BaseKind,
    #[serde(with = "template_text")]
    pub template: Template,
    pub trials: usize,
    pub master_seed: u64,
    pub solver: SolverKind,
    #[serde(default)]
    pub clique: CliqueParams,
    /// Density used by the guarantee. Defaults to the template's share of
    /// the vertices.
    pub c: Option<f64>,
    /// Defaults to `1 - max_degree(base) / n`.
    pub p: Option<f64>,
    /// Also record densification counts for `U = V` at this `alpha`.
    pub densify_alpha: Option<f64>,
    /// Confidence exponent.
    pub a: f64,
}

impl ExperimentSpec {
    pub fn new(
        n: usize,
        generator: BaseKind,
        template: Template,
        solver: SolverKind,
        master_seed: u64,
    ) -> Self {
        ExperimentSpec {
            n,
            generator,
            template,
            trials: 1,
            master_seed,
            solver,
            clique: CliqueParams::default(),
            c: None,
            p: None,
            densify_alpha: None,
            a: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::input("trials must be at least 1"));
        }
        self.generator.validate(self.n)?;
        if self.template.size() > self.n {
            return Err(Error::input(format!(
                "template has {} vertices but the base only {}",
                self.template.size(),
                self.n
            )));
        }
        if let Template::Explicit(_) = self.template {
            return Err(Error::input(
                "experiments take clique or biclique templates",
            ));
        }
        self.clique.validate()?;
        if let Some(alpha) = self.densify_alpha {
            if !(alpha >= 2.0) {
                return Err(Error::input(format!("alpha must be >= 2, got {alpha}")));
            }
        }
        Ok(())
    }

    fn default_c(&self) -> f64 {
        self.template.size() as f64 / self.n as f64
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "solver", rename_all = "lowercase")]
pub enum SolverOutput {
    Clique(SolveReport),
    Biclique(BicliqueResult),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: String,
    /// Clique size, or the smaller side of the biclique.
    pub size: usize,
    pub verified: bool,
    pub guarantee: f64,
    pub threshold: usize,
    pub pass: bool,
    /// Output vertices that belong to the planted set.
    pub planted_overlap: usize,
    pub output: SolverOutput,
    pub densification: Option<DensificationStats>,
    pub elapsed_ms: f64,
}

impl TrialRecord {
    pub fn recompute_pass(&self) -> bool {
        self.verified && self.size >= self.threshold
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub passes: usize,
    pub pass_rate: f64,
    pub min_size: usize,
    pub median_size: f64,
    pub max_size: usize,
    pub guarantee: f64,
    pub threshold: usize,
    pub c: f64,
    pub p: Option<f64>,
    /// Trials where both densification conditions held.
    pub densified: Option<usize>,
    pub time_ms_p50: f64,
    pub time_ms_p90: f64,
    pub time_ms_max: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub base_edges: usize,
    pub base_max_degree: usize,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

/// `(guarantee, c, p)` for an experiment on a given base.
fn guarantee(spec: &ExperimentSpec, base: &Graph) -> Result<(f64, f64, Option<f64>)> {
    let n = spec.n;
    let c = spec.c.unwrap_or_else(|| spec.default_c());
    match spec.solver {
        SolverKind::Clique => {
            let p = spec.p.unwrap_or(1.0 - base.max_degree() as f64 / n as f64);
            Ok((k_bound(n, c, p)?, c, Some(p)))
        }
        SolverKind::Biclique => Ok((biclique_bound(n, c)?, c, None)),
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let master = Seed::new(spec.master_seed);
    let base = Arc::new(generate_base(
        &spec.generator,
        spec.n,
        &master.purpose("base"),
    )?);
    let (bound, c, p) = guarantee(spec, &base)?;
    let threshold = bound.ceil().max(1.0) as usize;

    let mut records = (0..spec.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(spec, &base, &master.trial(t), bound, threshold))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| r.trial);

    let summary = summarize(&records, bound, threshold, c, p);
    Ok(ExperimentReport {
        spec: spec.clone(),
        base_edges: base.m(),
        base_max_degree: base.max_degree(),
        records,
        summary,
    })
}

fn run_trial(
    spec: &ExperimentSpec,
    base: &Arc<Graph>,
    seed: &Seed,
    bound: f64,
    threshold: usize,
) -> Result<TrialRecord> {
    let plant_seed = seed.purpose("plant");
    let inst = plant(Arc::clone(base), spec.template.clone(), &plant_seed)?;
    let (size, verified, found, elapsed_ms, output) = match spec.solver {
        SolverKind::Clique => {
            let r = clique_finder(&inst.planted, &spec.clique)?;
            (
                r.size,
                r.verified,
                r.found.clone(),
                r.elapsed_ms,
                SolverOutput::Clique(r),
            )
        }
        SolverKind::Biclique => {
            let r = balanced_biclique_finder(&inst.planted);
            let found: VertexSet = r.left.iter().chain(r.right.iter()).collect();
            (
                r.min_side,
                r.verified,
                found,
                r.elapsed_ms,
                SolverOutput::Biclique(r),
            )
        }
    };
    let planted_overlap = found
        .iter()
        .filter(|&v| inst.planted_set.contains(v))
        .count();
    let densification = spec.densify_alpha.map(|alpha| {
        let s_u = (spec.n - 1 - base.max_degree()) as f64;
        densification_stats(&inst, s_u, spec.n, alpha, spec.a)
    });
    Ok(TrialRecord {
        trial: seed.trial,
        seed: plant_seed.label(),
        size,
        verified,
        guarantee: bound,
        threshold,
        pass: verified && size >= threshold,
        planted_overlap,
        output,
        densification,
        elapsed_ms,
    })
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

fn summarize(
    records: &[TrialRecord],
    bound: f64,
    threshold: usize,
    c: f64,
    p: Option<f64>,
) -> Summary {
    let mut sizes: Vec<usize> = records.iter().map(|r| r.size).collect();
    sizes.sort_unstable();
    let k = sizes.len();
    let median_size = if k == 0 {
        0.0
    } else if k % 2 == 1 {
        sizes[k / 2] as f64
    } else {
        (sizes[k / 2 - 1] + sizes[k / 2]) as f64 / 2.0
    };
    let mut times: Vec<f64> = records.iter().map(|r| r.elapsed_ms).collect();
    times.sort_by(f64::total_cmp);
    let passes = records.iter().filter(|r| r.pass).count();
    let densified = records
        .iter()
        .map(|r| r.densification.as_ref().map(|d| d.cond_i && d.cond_ii))
        .collect::<Option<Vec<bool>>>()
        .map(|v| v.into_iter().filter(|&b| b).count());
    Summary {
        trials: k,
        passes,
        pass_rate: if k == 0 {
            0.0
        } else {
            passes as f64 / k as f64
        },
        min_size: sizes.first().copied().unwrap_or(0),
        median_size,
        max_size: sizes.last().copied().unwrap_or(0),
        guarantee: bound,
        threshold,
        c,
        p,
        densified: if records.is_empty() { None } else { densified },
        time_ms_p50: percentile(&times, 0.5),
        time_ms_p90: percentile(&times, 0.9),
        time_ms_max: times.last().copied().unwrap_or(0.0),
    }
}

/// Six significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

pub const CSV_HEADER: &str =
    "trial,seed,solver,n,size,verified,guarantee,threshold,pass,planted_overlap,hit,miss,cond_i,cond_ii";

/// Per-trial rows. Timing is left out so that reruns are byte-identical.
pub fn write_csv<W: Write>(report: &ExperimentReport, mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let solver = match report.spec.solver {
        SolverKind::Clique => "clique",
        SolverKind::Biclique => "biclique",
    };
    for r in &report.records {
        let (hit, miss, ci, cii) = match &r.densification {
            Some(d) => (
                d.hit.to_string(),
                d.miss.to_string(),
                d.cond_i.to_string(),
                d.cond_ii.to_string(),
            ),
            None => Default::default(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.trial,
            r.seed,
            solver,
            report.spec.n,
            r.size,
            r.verified,
            fmt_sig(r.guarantee),
            r.threshold,
            r.pass,
            r.planted_overlap,
            hit,
            miss,
            ci,
            cii
        )?;
    }
    Ok(())
}

mod template_text {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::planting::Template;

    pub fn serialize<S: Serializer>(t: &Template, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(t)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Template, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(de::Error::custom)
    }
}
