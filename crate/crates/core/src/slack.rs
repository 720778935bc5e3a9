//! Slack bands, bulging sets and densification statistics.
//!
//! A set `U` is `(alpha, beta)`-bulging when every slack in `U` lies below
//! `s_U / (1 - beta)` (with `s_U` the minimum slack over `U`) and fewer than
//! `|U| / alpha` vertices of the whole graph have slack below `s_U`.
//!
//! For any threshold `s`, either many vertices have slack below `s`, or one
//! of the geometric slack bands above `s` is a large bulging set.
//! [`find_bulging_set`] decides which and returns a checkable certificate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::planting::PlantedInstance;

fn check_alpha_beta(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha >= 2.0 && alpha.is_finite()) {
        return Err(Error::input(format!("alpha must be >= 2, got {alpha}")));
    }
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::input(format!(
            "beta must lie in (0, 1/2), got {beta}"
        )));
    }
    Ok(())
}

/// Ratio between consecutive band boundaries, `1 / (1 - beta) = 1 + eta`.
fn growth(beta: f64) -> f64 {
    1.0 / (1.0 - beta)
}

/// Partition of `V` into `V_0 = V_{<s}` and bands
/// `V_j = { v : bounds[j-1] <= s_v < bounds[j] }` for `j = 1..=h`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BandPartition {
    pub s: f64,
    pub beta: f64,
    pub eta: f64,
    pub h: usize,
    /// `bounds[j] = s (1 + eta)^j`, computed by repeated multiplication.
    pub bounds: Vec<f64>,
    pub bands: Vec<VertexSet>,
}

impl BandPartition {
    /// Band index of a slack value.
    pub fn band_of(&self, slack: usize) -> usize {
        let x = slack as f64;
        if x < self.s {
            return 0;
        }
        // bounds[h] >= n > any slack, so the search always lands.
        self.bounds[1..].partition_point(|&b| b <= x) + 1
    }
}

pub fn band_partition(g: &Graph, s: f64, beta: f64) -> Result<BandPartition> {
    if !(s > 0.0 && s <= g.n() as f64) {
        return Err(Error::input(format!(
            "threshold s must lie in (0, n], got {s}"
        )));
    }
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::input(format!(
            "beta must lie in (0, 1/2), got {beta}"
        )));
    }
    Ok(partition_unchecked(g, s, beta))
}

fn partition_unchecked(g: &Graph, s: f64, beta: f64) -> BandPartition {
    let n = g.n() as f64;
    let r = growth(beta);
    let mut bounds = vec![s];
    while *bounds.last().unwrap() < n {
        let next = bounds.last().unwrap() * r;
        bounds.push(next);
    }
    let h = bounds.len() - 1;
    let mut part = BandPartition {
        s,
        beta,
        eta: r - 1.0,
        h,
        bounds,
        bands: Vec::new(),
    };
    let mut members = vec![Vec::new(); h + 1];
    for v in 0..g.n() {
        members[part.band_of(g.slack(v))].push(v);
    }
    part.bands = members.into_iter().map(VertexSet::new).collect();
    part
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    LowSlackSetLarge,
    BulgingSetFound,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BulgingCertificate {
    pub u: VertexSet,
    pub alpha: f64,
    pub beta: f64,
    /// Threshold the search ran with.
    pub s: f64,
    /// Minimum slack over `u` (0 for an empty `u`).
    pub s_u: usize,
    /// `n / alpha^(2 + log2(n/s) / beta)`.
    pub threshold: f64,
    /// Band index of `u` when a bulging set was found.
    pub band: Option<usize>,
    pub branch: Branch,
}

/// `n / alpha^(2 + (1/beta) log2(n/s))`.
pub fn low_slack_threshold(n: usize, alpha: f64, beta: f64, s: f64) -> f64 {
    let n = n as f64;
    if n == 0.0 {
        return 0.0;
    }
    n / alpha.powf(2.0 + (n / s).log2() / beta)
}

/// Returns `V_{<s}` if it reaches the low-slack threshold `T`; otherwise the
/// first band `V_j` (`j >= 1`) with `|V_j| >= T alpha^j` that is bulging.
pub fn find_bulging_set(g: &Graph, alpha: f64, beta: f64, s: f64) -> Result<BulgingCertificate> {
    check_alpha_beta(alpha, beta)?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::input(format!(
            "threshold s must be positive, got {s}"
        )));
    }
    let threshold = low_slack_threshold(g.n(), alpha, beta, s);
    let low = g.vertices_below_slack(s);
    if low.len() as f64 >= threshold {
        let s_u = min_slack(g, &low);
        return Ok(BulgingCertificate {
            u: low,
            alpha,
            beta,
            s,
            s_u,
            threshold,
            band: None,
            branch: Branch::LowSlackSetLarge,
        });
    }
    let part = partition_unchecked(g, s, beta);
    let mut scale = threshold;
    for (j, band) in part.bands.iter().enumerate().skip(1) {
        scale *= alpha;
        if (band.len() as f64) < scale || band.is_empty() {
            continue;
        }
        // The first violating band is bulging whenever the earlier bands sum
        // to less than |V_j| / alpha; otherwise keep scanning.
        if is_bulging(g, band, alpha, beta)? {
            return Ok(BulgingCertificate {
                s_u: min_slack(g, band),
                u: band.clone(),
                alpha,
                beta,
                s,
                threshold,
                band: Some(j),
                branch: Branch::BulgingSetFound,
            });
        }
    }
    Err(Error::NoCertificate { alpha, beta, s })
}

fn min_slack(g: &Graph, u: &VertexSet) -> usize {
    u.iter().map(|v| g.slack(v)).min().unwrap_or(0)
}

/// Checks both bulging conditions with `s_U = min slack over U`. A vertex
/// attaining `s_U` always satisfies the clustering condition.
pub fn is_bulging(g: &Graph, u: &VertexSet, alpha: f64, beta: f64) -> Result<bool> {
    if u.is_empty() {
        return Err(Error::input("bulging check needs a nonempty set"));
    }
    u.validate(g.n())?;
    if !(alpha > 0.0) || !(beta > 0.0 && beta < 1.0) {
        return Err(Error::input(format!(
            "need alpha > 0 and beta in (0, 1), got {alpha}, {beta}"
        )));
    }
    let s_u = min_slack(g, u);
    let cap = s_u as f64 * growth(beta);
    let clustered = u.iter().all(|v| {
        let sv = g.slack(v);
        sv == s_u || (sv as f64) < cap
    });
    let below = (0..g.n()).filter(|&v| g.slack(v) < s_u).count();
    Ok(clustered && (below as f64) < u.len() as f64 / alpha)
}

/// Re-verifies a certificate from scratch against `g`.
pub fn verify_certificate(g: &Graph, cert: &BulgingCertificate) -> bool {
    match cert.branch {
        Branch::LowSlackSetLarge => {
            let threshold = low_slack_threshold(g.n(), cert.alpha, cert.beta, cert.s);
            cert.u == g.vertices_below_slack(cert.s) && cert.u.len() as f64 >= threshold
        }
        Branch::BulgingSetFound => {
            let n = g.n() as f64;
            let min_size = n / cert.alpha.powf(1.0 + (n / cert.s).log2() / cert.beta);
            !cert.u.is_empty()
                && cert.u.validate(g.n()).is_ok()
                && is_bulging(g, &cert.u, cert.alpha, cert.beta).unwrap_or(false)
                && min_slack(g, &cert.u) == cert.s_u
                && cert.s_u as f64 >= cert.s
                && cert.u.len() as f64 >= min_size
        }
    }
}

/// Counts on the planted graph against the planted set for one threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensificationStats {
    pub s_u: f64,
    pub u_size: usize,
    pub alpha: f64,
    pub c: f64,
    /// `|V̂_{<s_U} ∩ K|`
    pub hit: usize,
    /// `|V̂_{<s_U} \ K|`
    pub miss: usize,
    /// `hit > (c/2) |U|`
    pub cond_i: bool,
    /// `hit > (c alpha / 2) miss`, true when `miss == 0`.
    pub cond_ii: bool,
    /// Whether `min(s_U, |U|) >= (12 + 29 a ln n) / c` and `cn >= 10`.
    pub hypothesis_held: bool,
}

pub fn densification_stats(
    inst: &PlantedInstance,
    s_u: f64,
    u_size: usize,
    alpha: f64,
    a: f64,
) -> DensificationStats {
    let g = &inst.planted;
    let n = g.n();
    let c = inst.c_effective;
    let (mut hit, mut miss) = (0, 0);
    for v in 0..n {
        if (g.slack(v) as f64) < s_u {
            if inst.planted_set.contains(v) {
                hit += 1;
            } else {
                miss += 1;
            }
        }
    }
    let need = (12.0 + 29.0 * a * (n as f64).ln()) / c;
    DensificationStats {
        s_u,
        u_size,
        alpha,
        c,
        hit,
        miss,
        cond_i: hit as f64 > c / 2.0 * u_size as f64,
        cond_ii: miss == 0 || hit as f64 > c * alpha / 2.0 * miss as f64,
        hypothesis_held: s_u.min(u_size as f64) >= need && c * n as f64 >= 10.0,
    }
}
