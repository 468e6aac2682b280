//! Sampling estimate of how much of the sphere a fan covers.
//!
//! Directions come from deterministic low-discrepancy samplers. Each direction
//! is replaced by a rational approximation and tested for membership in the
//! maximal cones exactly; boundary points count as covered.

use std::f64::consts::PI;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::MembershipTest;
use crate::error::{Error, Result};
use crate::fan::Fan;

/// Largest denominator used when approximating a sample coordinate.
pub const MAX_DENOMINATOR: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    /// Uniform angular grid `θ_i = 2πi/N` (rank 2 only).
    Grid,
    /// Fibonacci lattice on `S^2` (rank 3 only).
    Fibonacci,
    /// Halton points in the cube, rejected outside the unit ball, projected.
    Halton,
}

impl Sampler {
    /// Default sampler for a rank.
    pub fn for_dim(n: usize) -> Self {
        match n {
            2 => Sampler::Grid,
            3 => Sampler::Fibonacci,
            _ => Sampler::Halton,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sampler::Grid => "grid",
            Sampler::Fibonacci => "fibonacci",
            Sampler::Halton => "halton",
        }
    }
}

impl std::str::FromStr for Sampler {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "grid" => Ok(Sampler::Grid),
            "fibonacci" => Ok(Sampler::Fibonacci),
            "halton" => Ok(Sampler::Halton),
            other => Err(format!("unknown sampler `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub fraction: f64,
    pub covered: usize,
    pub samples: usize,
    pub method: String,
    pub halfspace_normal: Option<Vec<i64>>,
}

/// Unit directions for `samples` points of the given sampler in `R^n`.
pub fn sample_directions(n: usize, samples: usize, sampler: Sampler) -> Result<Vec<Vec<f64>>> {
    match sampler {
        Sampler::Grid => {
            if n != 2 {
                return Err(Error::DimensionMismatch { expected: 2, got: n });
            }
            Ok((0..samples)
                .map(|i| {
                    let t = 2.0 * PI * i as f64 / samples as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect())
        }
        Sampler::Fibonacci => {
            if n != 3 {
                return Err(Error::DimensionMismatch { expected: 3, got: n });
            }
            let golden = PI * (3.0 - 5f64.sqrt());
            Ok((0..samples)
                .map(|i| {
                    let z = 1.0 - (2 * i + 1) as f64 / samples as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = golden * i as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect())
        }
        Sampler::Halton => {
            let primes = first_primes(n);
            let mut out = Vec::with_capacity(samples);
            let mut idx: u64 = 1;
            while out.len() < samples {
                let p: Vec<f64> = primes.iter().map(|&b| 2.0 * radical_inverse(idx, b) - 1.0).collect();
                idx += 1;
                let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-9 && norm <= 1.0 {
                    out.push(p.iter().map(|x| x / norm).collect());
                }
            }
            Ok(out)
        }
    }
}

fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 2u64;
    while out.len() < k {
        if out.iter().all(|p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Best rational approximation `p/q` with `q ≤ max_den`, from the
/// continued-fraction convergents of `x`.
pub fn rational_approx(x: f64, max_den: i64) -> (i64, i64) {
    if !x.is_finite() {
        return (0, 1);
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i64;
        let q2 = ai.saturating_mul(q1).saturating_add(q0);
        if q2 > max_den {
            break;
        }
        let p2 = ai.saturating_mul(p1).saturating_add(p0);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        (x.round() as i64, 1)
    } else {
        (p1, q1)
    }
}

/// Integer vector with the direction of the coordinatewise approximation.
pub fn rational_direction(u: &[f64]) -> Vec<i128> {
    let approx: Vec<(i64, i64)> = u.iter().map(|&x| rational_approx(x, MAX_DENOMINATOR)).collect();
    let l = approx.iter().fold(1i128, |l, &(_, q)| l.lcm(&(q as i128)));
    approx.iter().map(|&(p, q)| p as i128 * (l / q as i128)).collect()
}

/// Fraction of sample directions lying in some maximal cone of `f`.
pub fn coverage(f: &Fan, samples: usize, sampler: Sampler) -> Result<CoverageReport> {
    if samples == 0 {
        return Err(Error::Parse("samples must be at least 1".into()));
    }
    let n = f.ambient_dim();
    let testers: Vec<MembershipTest> = f
        .cones()
        .iter()
        .filter(|c| c.dim() == n)
        .map(|c| c.tester())
        .collect::<Result<_>>()?;
    let dirs = sample_directions(n, samples, sampler)?;
    let covered = dirs
        .par_iter()
        .map(|u| {
            let p = rational_direction(u);
            usize::from(testers.iter().any(|t| t.contains(&p)))
        })
        .sum::<usize>();
    Ok(CoverageReport {
        fraction: covered as f64 / samples as f64,
        covered,
        samples,
        method: sampler.name().to_string(),
        halfspace_normal: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::SimplicialCone;

    #[test]
    fn orthant_gets_its_share_of_axis_samples() {
        let f = Fan::new(2, vec![SimplicialCone::new(vec![vec![1, 0], vec![0, 1]]).unwrap()]).unwrap();
        let r = coverage(&f, 4, Sampler::Grid).unwrap();
        // e1 and e2 are on the boundary and count as covered
        assert_eq!(r.covered, 2);
        assert_eq!(r.fraction, 0.5);
    }

    #[test]
    fn continued_fraction_approximations() {
        assert_eq!(rational_approx(0.5, 10), (1, 2));
        assert_eq!(rational_approx(-0.75, 10), (-3, 4));
        let (p, q) = rational_approx(std::f64::consts::PI, 1000);
        assert_eq!((p, q), (355, 113));
        assert_eq!(rational_approx(6.123e-17, MAX_DENOMINATOR), (0, 1));
    }

    #[test]
    fn samplers_yield_unit_vectors() {
        for (n, s) in [(2, Sampler::Grid), (3, Sampler::Fibonacci), (4, Sampler::Halton)] {
            let d = sample_directions(n, 100, s).unwrap();
            assert_eq!(d.len(), 100);
            for v in d {
                let norm: f64 = v.iter().map(|x| x * x).sum();
                assert!((norm - 1.0).abs() < 1e-9);
            }
        }
        assert!(sample_directions(3, 10, Sampler::Grid).is_err());
    }

    #[test]
    fn zero_samples_rejected() {
        let f = Fan::new(2, vec![]).unwrap();
        assert!(coverage(&f, 0, Sampler::Grid).is_err());
    }
}
