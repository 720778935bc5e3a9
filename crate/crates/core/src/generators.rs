//! Seeded base graphs.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::lower_bound::{delete_edges, staircase_graph};
use crate::rng::Seed;

/// Attempts before a regular-graph request is given up on.
const MAX_ATTEMPTS: usize = 100;
/// Consecutive rejected random pairs before the remaining points are
/// examined exhaustively.
const STUCK_AFTER: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BaseKind {
    Empty,
    /// Every vertex has degree `d`.
    DRegular {
        d: usize,
    },
    /// Each pair is an edge with probability `p`.
    Er {
        p: f64,
    },
    /// Staircase graph with each edge deleted with probability `eta`.
    Staircase {
        eta: f64,
    },
}

impl BaseKind {
    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            BaseKind::Empty => Ok(()),
            BaseKind::DRegular { d } => {
                if n == 0 && d == 0 {
                    return Ok(());
                }
                if d >= n.max(1) {
                    return Err(Error::input(format!(
                        "degree {d} needs more than {n} vertices"
                    )));
                }
                if n * d % 2 != 0 {
                    return Err(Error::input(format!(
                        "n * d must be even (n = {n}, d = {d})"
                    )));
                }
                Ok(())
            }
            BaseKind::Er { p } | BaseKind::Staircase { eta: p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::input(format!("probability {p} outside [0, 1]")));
                }
                if matches!(self, BaseKind::Staircase { .. }) && n < 3 {
                    return Err(Error::input("staircase graph needs n >= 3"));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::Empty => write!(f, "empty"),
            BaseKind::DRegular { d } => write!(f, "dregular:{d}"),
            BaseKind::Er { p } => write!(f, "er:{p}"),
            BaseKind::Staircase { eta } => write!(f, "staircase:{eta}"),
        }
    }
}

impl FromStr for BaseKind {
    type Err = Error;

    /// `empty`, `dregular:D`, `er:P` or `staircase:ETA`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        let name = name.trim();
        if name == "empty" && arg.is_none() {
            return Ok(BaseKind::Empty);
        }
        if !matches!(name, "dregular" | "er" | "staircase") {
            return Err(Error::input(format!("unknown generator `{s}`")));
        }
        let arg = arg
            .ok_or_else(|| Error::input(format!("generator `{name}` needs a parameter")))?
            .trim();
        if name == "dregular" {
            let d = arg
                .parse()
                .map_err(|_| Error::input(format!("bad degree `{arg}`")))?;
            return Ok(BaseKind::DRegular { d });
        }
        let x: f64 = arg
            .parse()
            .ok()
            .filter(|x: &f64| x.is_finite())
            .ok_or_else(|| Error::input(format!("bad number `{arg}`")))?;
        Ok(if name == "er" {
            BaseKind::Er { p: x }
        } else {
            BaseKind::Staircase { eta: x }
        })
    }
}

pub fn generate_base(kind: &BaseKind, n: usize, seed: &Seed) -> Result<Graph> {
    kind.validate(n)?;
    match *kind {
        BaseKind::Empty => Ok(Graph::empty(n)),
        BaseKind::Er { p } => erdos_renyi(n, p, seed),
        BaseKind::DRegular { d } => random_regular(n, d, seed),
        BaseKind::Staircase { eta } => delete_edges(&staircase_graph(n)?, eta, seed),
    }
}

/// One coin per pair `(u, v)`, `u < v`, in lexicographic order.
pub fn erdos_renyi(n: usize, p: f64, seed: &Seed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Uniform-ish random `d`-regular graph. Above `(n - 1) / 2` the complement
/// degree is generated instead and the result complemented.
pub fn random_regular(n: usize, d: usize, seed: &Seed) -> Result<Graph> {
    BaseKind::DRegular { d }.validate(n)?;
    if n == 0 {
        return Ok(Graph::empty(0));
    }
    if 2 * d > n - 1 {
        let g = random_regular(n, n - 1 - d, &seed.purpose("complement"))?;
        return Ok(g.complement_induced(&VertexSet::range(n)).graph);
    }
    for attempt in 0..MAX_ATTEMPTS {
        let sub = seed.purpose(&format!("attempt={attempt}"));
        if let Some(edges) = pairing_attempt(n, d, &sub) {
            return Graph::from_edge_list(n, &edges);
        }
    }
    Err(Error::input(format!(
        "no {d}-regular graph on {n} vertices after {MAX_ATTEMPTS} attempts"
    )))
}

/// Pairs random points, rejecting pairs that would form a loop or a repeated
/// edge. Returns `None` when no admissible pair is left.
fn pairing_attempt(n: usize, d: usize, seed: &Seed) -> Option<Vec<(usize, usize)>> {
    let mut rng = seed.rng();
    let mut points: Vec<u32> = (0..n as u32)
        .flat_map(|v| std::iter::repeat_n(v, d))
        .collect();
    let mut seen: HashSet<u64> = HashSet::with_capacity(n * d / 2);
    let key = |u: u32, v: u32| (u.min(v) as u64) << 32 | u.max(v) as u64;
    let mut edges = Vec::with_capacity(n * d / 2);
    let mut misses = 0;

    while !points.is_empty() {
        let len = points.len();
        let i = rng.gen_range(0..len);
        let mut j = rng.gen_range(0..len - 1);
        if j >= i {
            j += 1;
        }
        let (u, v) = (points[i], points[j]);
        if u != v && !seen.contains(&key(u, v)) {
            seen.insert(key(u, v));
            edges.push((u as usize, v as usize));
            points.swap_remove(i.max(j));
            points.swap_remove(i.min(j));
            misses = 0;
            continue;
        }
        misses += 1;
        if misses < STUCK_AFTER {
            continue;
        }
        misses = 0;

        // Weighted choice among the admissible pairs of distinct residual
        // vertices.
        let mut residual: Vec<(u32, u64)> = Vec::new();
        let mut sorted = points.clone();
        sorted.sort_unstable();
        for w in sorted {
            match residual.last_mut() {
                Some((x, c)) if *x == w => *c += 1,
                _ => residual.push((w, 1)),
            }
        }
        if residual.len() > 4096 {
            continue;
        }
        let mut pairs = Vec::new();
        let mut total = 0u64;
        for a in 0..residual.len() {
            for b in a + 1..residual.len() {
                let (u, cu) = residual[a];
                let (v, cv) = residual[b];
                if !seen.contains(&key(u, v)) {
                    total += cu * cv;
                    pairs.push((u, v, total));
                }
            }
        }
        if pairs.is_empty() {
            return None;
        }
        let pick = rng.gen_range(0..total);
        let idx = pairs.partition_point(|&(_, _, acc)| acc <= pick);
        let (u, v, _) = pairs[idx];
        seen.insert(key(u, v));
        edges.push((u as usize, v as usize));
        for w in [u, v] {
            let pos = points.iter().position(|&x| x == w).expect("residual point");
            points.swap_remove(pos);
        }
    }
    Some(edges)
}
