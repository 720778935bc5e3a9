//! The random planting model: map a template graph `H` into a base graph `G`
//! through a uniform injection `phi` and return the edge union.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rng::Seed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Template {
    Clique(usize),
    /// Sides are template ids `0..a` and `a..a+b`.
    Biclique(usize, usize),
    Explicit(Graph),
}

impl Template {
    /// `K_{⌊cn⌋}`.
    pub fn clique_fraction(c: f64, n: usize) -> Result<Self> {
        let k = (c * n as f64).floor() as usize;
        if !(c > 0.0 && c <= 1.0) || k == 0 {
            return Err(Error::input(format!(
                "clique fraction {c} gives no vertices at n={n}"
            )));
        }
        Ok(Template::Clique(k))
    }

    /// `K_{⌊cn/2⌋,⌊cn/2⌋}`.
    pub fn biclique_fraction(c: f64, n: usize) -> Result<Self> {
        let a = (c * n as f64 / 2.0).floor() as usize;
        if !(c > 0.0 && c <= 1.0) || a == 0 {
            return Err(Error::input(format!(
                "biclique fraction {c} gives no vertices at n={n}"
            )));
        }
        Ok(Template::Biclique(a, a))
    }

    pub fn size(&self) -> usize {
        match self {
            Template::Clique(k) => *k,
            Template::Biclique(a, b) => a + b,
            Template::Explicit(g) => g.n(),
        }
    }

    pub fn min_degree(&self) -> usize {
        match self {
            Template::Clique(k) => k.saturating_sub(1),
            Template::Biclique(a, b) => *a.min(b),
            Template::Explicit(g) => g.min_degree(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Template::Clique(0) => Err(Error::input("clique template needs k >= 1")),
            Template::Biclique(a, b) if *a == 0 || *b == 0 => {
                Err(Error::input("biclique template needs a, b >= 1"))
            }
            _ => Ok(()),
        }
    }

    pub fn to_graph(&self) -> Graph {
        match self {
            Template::Clique(k) => Graph::complete(*k),
            Template::Biclique(a, b) => {
                let edges: Vec<_> = (0..*a)
                    .flat_map(|u| (*a..a + b).map(move |v| (u, v)))
                    .collect();
                Graph::from_edge_list(a + b, &edges).expect("biclique edges are valid")
            }
            Template::Explicit(g) => g.clone(),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Template::Clique(k) => write!(f, "clique:{k}"),
            Template::Biclique(a, b) => write!(f, "biclique:{a},{b}"),
            Template::Explicit(g) => write!(f, "explicit:{}", g.n()),
        }
    }
}

/// Parses `clique:K` or `biclique:A,B`.
impl FromStr for Template {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("template {s:?} is not clique:K or biclique:A,B"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let t = match kind.trim() {
            "clique" => Template::Clique(num(args)?),
            "biclique" => {
                let (a, b) = args.split_once(',').ok_or_else(bad)?;
                Template::Biclique(num(a)?, num(b)?)
            }
            _ => return Err(bad()),
        };
        t.validate()?;
        Ok(t)
    }
}

/// Uniform injection `[k] -> [n]` from the first `k` steps of a Fisher-Yates
/// shuffle of `0..n`.
pub fn sample_injection(seed: &Seed, k: usize, n: usize) -> Result<Vec<usize>> {
    if k > n {
        return Err(Error::input(format!(
            "cannot inject {k} template vertices into {n}"
        )));
    }
    let mut rng = seed.rng();
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(k);
    Ok(pool)
}

#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub base: Arc<Graph>,
    pub template: Template,
    /// `phi[t]` is the base vertex hosting template vertex `t`.
    pub phi: Vec<usize>,
    pub planted: Graph,
    pub planted_set: VertexSet,
    pub c_effective: f64,
}

/// Samples `phi` from `seed` and builds the planted graph.
pub fn plant(
    base: impl Into<Arc<Graph>>,
    template: Template,
    seed: &Seed,
) -> Result<PlantedInstance> {
    let base = base.into();
    template.validate()?;
    let phi = sample_injection(seed, template.size(), base.n())?;
    PlantedInstance::from_mapping(base, template, phi)
}

fn sorted_image(phi: &[usize], ids: std::ops::Range<usize>) -> Vec<u32> {
    let mut img: Vec<u32> = phi[ids].iter().map(|&v| v as u32).collect();
    img.sort_unstable();
    img
}

/// Union of two sorted rows, skipping `skip`.
fn merge_rows(a: &[u32], b: &[u32], skip: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (_, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if next != skip {
            out.push(next);
        }
    }
    out
}

impl PlantedInstance {
    /// Builds the instance for a given injection (e.g. one read from disk).
    pub fn from_mapping(base: Arc<Graph>, template: Template, phi: Vec<usize>) -> Result<Self> {
        let n = base.n();
        let k = template.size();
        if phi.len() != k {
            return Err(Error::input(format!(
                "mapping has {} entries, template has {k} vertices",
                phi.len()
            )));
        }
        if k > n {
            return Err(Error::input(format!(
                "template size {k} exceeds base size {n}"
            )));
        }
        let mut inverse = vec![usize::MAX; n];
        for (t, &v) in phi.iter().enumerate() {
            if v >= n {
                return Err(Error::input(format!("mapping target {v} outside 0..{n}")));
            }
            if inverse[v] != usize::MAX {
                return Err(Error::input(format!("mapping is not injective at {v}")));
            }
            inverse[v] = t;
        }

        let (side_a, side_b) = match &template {
            Template::Clique(k) => (sorted_image(&phi, 0..*k), Vec::new()),
            Template::Biclique(a, b) => (sorted_image(&phi, 0..*a), sorted_image(&phi, *a..a + b)),
            Template::Explicit(_) => (Vec::new(), Vec::new()),
        };

        let rows: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                let row = base.neighbors(v);
                let t = inverse[v];
                if t == usize::MAX {
                    return row.to_vec();
                }
                match &template {
                    Template::Clique(_) => merge_rows(row, &side_a, v as u32),
                    Template::Biclique(a, _) => {
                        let other = if t < *a { &side_b } else { &side_a };
                        merge_rows(row, other, v as u32)
                    }
                    Template::Explicit(h) => {
                        let mut img: Vec<u32> = h
                            .neighbors(t)
                            .iter()
                            .map(|&w| phi[w as usize] as u32)
                            .collect();
                        img.sort_unstable();
                        merge_rows(row, &img, v as u32)
                    }
                }
            })
            .collect();

        let planted = Graph::from_sorted_rows(rows);
        let planted_set = VertexSet::new(phi.clone());
        let c_effective = if n == 0 {
            0.0
        } else {
            template.min_degree() as f64 / n as f64
        };
        Ok(PlantedInstance {
            base,
            template,
            phi,
            planted,
            planted_set,
            c_effective,
        })
    }

    /// Images of the two template sides for a biclique template.
    pub fn planted_sides(&self) -> Option<(VertexSet, VertexSet)> {
        match self.template {
            Template::Biclique(a, b) => Some((
                VertexSet::new(self.phi[..a].to_vec()),
                VertexSet::new(self.phi[a..a + b].to_vec()),
            )),
            _ => None,
        }
    }

    /// Checks the edge-union identity and template-specific verification.
    pub fn check(&self) -> Result<()> {
        let h = self.template.to_graph();
        let mut expected: Vec<(usize, usize)> = self.base.edges().collect();
        expected.extend(h.edges().map(|(a, b)| (self.phi[a], self.phi[b])));
        let union = Graph::from_edge_list(self.base.n(), &expected)?;
        if union != self.planted {
            return Err(Error::input("planted graph is not E(G) ∪ phi(E(H))"));
        }
        if matches!(self.template, Template::Clique(_))
            && !self.planted.verify_clique(&self.planted_set)
        {
            return Err(Error::input("planted clique does not verify"));
        }
        if let Some((a, b)) = self.planted_sides() {
            if !self.planted.verify_biclique(&a, &b) {
                return Err(Error::input("planted biclique does not verify"));
            }
        }
        Ok(())
    }
}
