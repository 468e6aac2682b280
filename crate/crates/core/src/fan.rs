//! Simplicial fans assembled from seeds: validity and half-space detection.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{hyperplane_normal, SimplicialCone};
use crate::error::{Error, Result};
use crate::lp::feasible_point;
use crate::seeds::SeedSet;

/// Deduplicated maximal cones in `R^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    cones: Vec<SimplicialCone>,
}

/// JSON layout `{ambient_dim, maximal_cones: [[ray, …], …]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanFile {
    pub ambient_dim: usize,
    pub maximal_cones: Vec<Vec<Vec<i64>>>,
}

impl Fan {
    pub fn new(ambient_dim: usize, cones: impl IntoIterator<Item = SimplicialCone>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in cones {
            if c.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: c.ambient_dim(),
                });
            }
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        Ok(Fan {
            ambient_dim,
            cones: out,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cones(&self) -> &[SimplicialCone] {
        &self.cones
    }

    /// Distinct rays, sorted.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        let set: BTreeSet<Vec<i64>> = self.cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        set.into_iter().collect()
    }

    /// Codimension-one faces of the maximal cones, each once, sorted.
    pub fn facets(&self) -> Vec<Vec<Vec<i64>>> {
        let mut set = BTreeSet::new();
        for c in &self.cones {
            let rays = c.rays();
            for skip in 0..rays.len() {
                let facet: Vec<Vec<i64>> = rays
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, r)| r.clone())
                    .collect();
                set.insert(facet);
            }
        }
        set.into_iter().collect()
    }

    pub fn to_file(&self) -> FanFile {
        FanFile {
            ambient_dim: self.ambient_dim,
            maximal_cones: self.cones.iter().map(|c| c.rays().to_vec()).collect(),
        }
    }

    pub fn from_file(f: &FanFile) -> Result<Self> {
        let cones = f
            .maximal_cones
            .iter()
            .map(|rays| SimplicialCone::new(rays.clone()))
            .collect::<Result<Vec<_>>>()?;
        Fan::new(f.ambient_dim, cones)
    }
}

/// Maximal cones spanned by the g-vectors of each seed.
pub fn fan_from_seeds(s: &SeedSet) -> Result<Fan> {
    let dim = s.seeds.first().map(|x| x.rank()).unwrap_or(0);
    let cones = s.seeds.iter().map(|x| x.cone()).collect::<Result<Vec<_>>>()?;
    Fan::new(dim, cones)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Violation {
    pub cone_a: usize,
    pub cone_b: usize,
    /// A point of the intersection outside the common face, scaled to integers.
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid: bool,
    pub checked_pairs: usize,
    pub total_pairs: usize,
    pub exhaustive: bool,
    pub violation: Option<Violation>,
}

/// Checks that any two maximal cones meet in a common face. With
/// `max_pairs`, at most that many pairs are checked, spread evenly over the
/// pair list.
pub fn fan_is_valid(f: &Fan, max_pairs: Option<usize>) -> ValidityReport {
    let k = f.cones.len();
    let total = k * k.saturating_sub(1) / 2;
    let budget = max_pairs.unwrap_or(total).min(total);
    let stride = if budget == 0 { 1 } else { total.div_ceil(budget).max(1) };
    let mut checked = 0;
    let mut idx = 0usize;
    for a in 0..k {
        for b in a + 1..k {
            let take = idx % stride == 0;
            idx += 1;
            if !take || checked >= budget {
                continue;
            }
            checked += 1;
            if let Some(w) = improper_intersection(&f.cones[a], &f.cones[b]) {
                return ValidityReport {
                    valid: false,
                    checked_pairs: checked,
                    total_pairs: total,
                    exhaustive: budget == total,
                    violation: Some(Violation {
                        cone_a: a,
                        cone_b: b,
                        witness: w.iter().map(|x| x.to_string()).collect(),
                    }),
                };
            }
        }
    }
    ValidityReport {
        valid: true,
        checked_pairs: checked,
        total_pairs: total,
        exhaustive: budget == total,
        violation: None,
    }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// A point of `c1 ∩ c2` that is not in the cone over their common rays, or
/// `None` when the intersection is a common face.
pub fn improper_intersection(c1: &SimplicialCone, c2: &SimplicialCone) -> Option<Vec<BigRational>> {
    let shared: Vec<&Vec<i64>> = c1.rays().iter().filter(|r| c2.rays().contains(r)).collect();
    let n = c1.ambient_dim();
    // adjacent full-dimensional cones: the two free rays must sit strictly on
    // opposite sides of the shared facet
    if c1.dim() == n && c2.dim() == n && shared.len() + 1 == n {
        let facet: Vec<&[i64]> = shared.iter().map(|r| r.as_slice()).collect();
        if let Some(normal) = hyperplane_normal(&facet) {
            let x = c1.rays().iter().find(|r| !shared.contains(r)).expect("free ray");
            let y = c2.rays().iter().find(|r| !shared.contains(r)).expect("free ray");
            let (sx, sy) = (dot(&normal, x).signum(), dot(&normal, y).signum());
            if sx * sy < 0 {
                return None;
            }
        }
    }
    // LP: λ, μ ≥ 0 with Σ λ_i r_i − Σ μ_j s_j = 0 and Σ_{r_i unshared} λ_i = 1
    let q = |v: i64| BigRational::from_integer(v.into());
    let k1 = c1.dim();
    let k2 = c2.dim();
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row = Vec::with_capacity(k1 + k2);
        row.extend(c1.rays().iter().map(|r| q(r[i])));
        row.extend(c2.rays().iter().map(|r| q(-r[i])));
        a.push(row);
    }
    let mut norm_row = vec![BigRational::zero(); k1 + k2];
    for (i, r) in c1.rays().iter().enumerate() {
        if !shared.contains(&r) {
            norm_row[i] = BigRational::one();
        }
    }
    a.push(norm_row);
    let mut b = vec![BigRational::zero(); n];
    b.push(BigRational::one());
    let x = feasible_point(&a, &b)?;
    let point: Vec<BigRational> = (0..n)
        .map(|i| {
            c1.rays()
                .iter()
                .enumerate()
                .map(|(j, r)| &x[j] * q(r[i]))
                .fold(BigRational::zero(), |acc, v| acc + v)
        })
        .collect();
    Some(point)
}

/// Largest squared norm searched for a short normal before falling back to a
/// supporting one.
pub const SHORT_NORMAL_MAX_NORM2: i64 = 64;

/// A primitive `v ≠ 0` with `v·r ≤ 0` for every ray of `f`, or `None` when the
/// rays positively span space. Among all such `v` the one of least Euclidean
/// norm is returned, ties broken lexicographically; when no such `v` has
/// squared norm up to [`SHORT_NORMAL_MAX_NORM2`], the lexicographically
/// smallest supporting normal from [`supporting_normal`] is returned.
pub fn halfspace_detect(f: &Fan) -> Option<Vec<i64>> {
    halfspace_normal(&f.rays(), f.ambient_dim())
}

/// Same as [`halfspace_detect`] on an explicit ray list.
pub fn halfspace_normal(rays: &[Vec<i64>], n: usize) -> Option<Vec<i64>> {
    let support = supporting_normal(rays, n)?;
    let bound = SHORT_NORMAL_MAX_NORM2.min(support.iter().map(|x| x * x).sum());
    let valid = |v: &[i64]| rays.iter().all(|r| dot(v, r) <= 0);
    for norm2 in 1..=bound {
        let mut shell = Vec::new();
        lattice_shell(n, norm2, &mut Vec::with_capacity(n), &mut shell);
        if let Some(v) = shell.into_iter().filter(|v| valid(v)).min() {
            return Some(v);
        }
    }
    Some(support)
}

/// Integer vectors of length `n` with squared norm exactly `norm2`.
fn lattice_shell(n: usize, norm2: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let used: i64 = prefix.iter().map(|x| x * x).sum();
    let left = norm2 - used;
    if prefix.len() == n {
        if left == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let top = (left as f64).sqrt() as i64 + 1;
    for x in -top..=top {
        if x * x <= left {
            prefix.push(x);
            lattice_shell(n, norm2, prefix, out);
            prefix.pop();
        }
    }
}

/// Lexicographically smallest primitive `v` with `v·r ≤ 0` for every ray and
/// `v·r = 0` for at least one ray; `None` if there is none.
///
/// Candidates are normals of hyperplanes spanned by `n − 1` vectors drawn
/// from the rays and the coordinate vectors; every extreme direction of the
/// polar cone arises this way.
pub fn supporting_normal(rays: &[Vec<i64>], n: usize) -> Option<Vec<i64>> {
    if rays.is_empty() || n < 2 {
        // on a line v·r = 0 forces v = 0
        return None;
    }
    let mut pool: Vec<Vec<i64>> = rays.to_vec();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if !pool.contains(&e) {
            pool.push(e);
        }
    }
    let valid = |v: &[i64]| {
        let mut tight = false;
        for r in rays {
            let d = dot(v, r);
            if d > 0 {
                return false;
            }
            tight |= d == 0;
        }
        tight
    };
    let mut best: Option<Vec<i64>> = None;
    let mut tried = BTreeSet::new();
    let mut combo: Vec<usize> = (0..n - 1).collect();
    let m = pool.len();
    loop {
        let vecs: Vec<&[i64]> = combo.iter().map(|&i| pool[i].as_slice()).collect();
        if let Some(normal) = hyperplane_normal(&vecs) {
            for v in [normal.clone(), normal.iter().map(|x| -x).collect::<Vec<_>>()] {
                if tried.insert(v.clone()) && valid(&v) && best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        // next combination
        let mut i = n - 1;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if combo[i] < m - (n - 1 - i) {
                combo[i] += 1;
                for j in i + 1..n - 1 {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}
