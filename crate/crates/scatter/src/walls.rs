//! Walls, path-ordered products, rank-two consistency completion and wall
//! functions attached to g-vector fans.

use std::cmp::Ordering;

use gvfan_core::cone::hyperplane_normal;
use gvfan_core::Fan;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{bch_mul, delta, multiple_of, LieSeries, ScatterLattice, SeriesTerm};

/// A cone in `d0^⊥ ⊂ M_R` carrying `exp(log_fn)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub d0: Vec<i64>,
    /// Generators of the support; a full line appears as `r` and `−r`.
    pub support_rays: Vec<Vec<i64>>,
    pub log_fn: LieSeries,
}

/// Serialized wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallFile {
    pub d0: Vec<i64>,
    pub support_rays: Vec<Vec<i64>>,
    pub log_fn: Vec<SeriesTerm>,
}

impl Wall {
    pub fn to_file(&self) -> WallFile {
        WallFile {
            d0: self.d0.clone(),
            support_rays: self.support_rays.clone(),
            log_fn: self.log_fn.to_terms(),
        }
    }

    pub fn from_file(f: &WallFile, order: usize) -> Result<Self> {
        let w = Wall {
            d0: f.d0.clone(),
            support_rays: f.support_rays.clone(),
            log_fn: LieSeries::from_terms(order, &f.log_fn)?,
        };
        if !w.log_fn.supported_on(&w.d0) {
            return Err(Error::Parse(format!("wall function is not supported on multiples of {:?}", w.d0)));
        }
        Ok(w)
    }
}

/// `Σ_{j ≥ 1} (−1)^{j−1} x^{j·d0} / j²` truncated at `order`.
pub fn dilog(d0: &[i64], order: usize) -> LieSeries {
    let mut s = LieSeries::zero(order);
    let step = delta(d0).max(1) as usize;
    for j in 1..=(order / step) as i64 {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        s.add_term(
            d0.iter().map(|x| j * x).collect(),
            BigRational::new(BigInt::from(sign), BigInt::from(j * j)),
        );
    }
    s
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// One wall on the full hyperplane `e_i^⊥` per basis vector.
pub fn initial_walls(l: &ScatterLattice, order: usize) -> Vec<Wall> {
    (0..l.n)
        .map(|i| {
            let mut rays = Vec::new();
            for j in (0..l.n).filter(|&j| j != i) {
                rays.push(unit(l.n, j));
                rays.push(unit(l.n, j).iter().map(|x| -x).collect());
            }
            Wall {
                d0: unit(l.n, i),
                support_rays: rays,
                log_fn: dilog(&unit(l.n, i), order),
            }
        })
        .collect()
}

/// `φ_l^{ε_l} ⋯ φ_1^{ε_1}` for crossings listed in the order they happen.
pub fn path_ordered_product(l: &ScatterLattice, walls: &[Wall], crossings: &[(usize, i32)], order: usize) -> Result<LieSeries> {
    let mut acc = LieSeries::zero(order);
    for &(w, eps) in crossings {
        let wall = walls.get(w).ok_or_else(|| Error::Wall(format!("no wall with index {w}")))?;
        let f = match eps {
            1 => wall.log_fn.truncate(order),
            -1 => wall.log_fn.truncate(order).neg(),
            e => return Err(Error::Wall(format!("crossing sign {e} is not ±1"))),
        };
        acc = bch_mul(l, &f, &acc, order);
    }
    Ok(acc)
}

/// Angle of a plane vector in `[0, 2π)` measured from the diagonal of the
/// positive quadrant.
fn loop_angle(r: &[i64]) -> f64 {
    let start = std::f64::consts::FRAC_PI_4;
    let a = (r[1] as f64).atan2(r[0] as f64) - start;
    a.rem_euclid(std::f64::consts::TAU)
}

/// Crossing sign for the counterclockwise tangent at ray `r`: `+1` when the
/// loop moves against `d0`.
fn crossing_sign(d0: &[i64], r: &[i64]) -> i32 {
    let tangent = [-r[1], r[0]];
    let s = d0[0] * tangent[0] + d0[1] * tangent[1];
    if s < 0 {
        1
    } else {
        -1
    }
}

/// Crossings of a counterclockwise loop around the origin starting in the
/// positive quadrant, for walls in rank two.
pub fn loop_crossings(walls: &[Wall]) -> Vec<(usize, i32)> {
    let mut hits: Vec<(f64, usize, i32)> = Vec::new();
    for (i, w) in walls.iter().enumerate() {
        for r in &w.support_rays {
            hits.push((loop_angle(r), i, crossing_sign(&w.d0, r)));
        }
    }
    hits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then(a.1.cmp(&b.1)));
    hits.into_iter().map(|(_, i, e)| (i, e)).collect()
}

/// Output of [`complete_rank2`].
#[derive(Clone, Debug)]
pub struct Completion {
    pub walls: Vec<Wall>,
    /// Indices into `walls` of the rays added to the initial two.
    pub inserted: Vec<usize>,
    /// The loop product at the full order; zero on success.
    pub loop_product: LieSeries,
}

fn primitive(d: &[i64]) -> Vec<i64> {
    let g = d.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    d.iter().map(|x| x / g).collect()
}

/// Adds rays `R≥0·p*(d)` order by order until the loop product vanishes.
pub fn complete_rank2(l: &ScatterLattice, order: usize) -> Result<Completion> {
    if l.n != 2 {
        return Err(Error::Form(format!("completion needs rank 2, got {}", l.n)));
    }
    let mut walls = initial_walls(l, order);
    let mut inserted: Vec<usize> = Vec::new();
    for j in 1..=order {
        let p = path_ordered_product(l, &walls, &loop_crossings(&walls), j)?;
        if p.min_degree().is_some_and(|m| (m as usize) < j) {
            return Err(Error::Wall(format!("lower-order terms survived at order {j}")));
        }
        let mut defects = p.homogeneous(j as i64);
        defects.sort_by(|a, b| {
            let (ra, rb) = (l.p_star(&primitive(&a.0)), l.p_star(&primitive(&b.0)));
            loop_angle(&ra).partial_cmp(&loop_angle(&rb)).unwrap_or(Ordering::Equal)
        });
        for (d, c) in defects {
            let d0 = primitive(&d);
            let ray = l.p_star(&d0);
            if ray.iter().all(|&x| x == 0) {
                return Err(Error::Wall(format!("degree {d:?} is central but the loop product is nonzero")));
            }
            let ray = primitive(&ray);
            let eps = crossing_sign(&d0, &ray);
            let idx = match inserted.iter().find(|&&i| walls[i].d0 == d0) {
                Some(&i) => i,
                None => {
                    walls.push(Wall {
                        d0: d0.clone(),
                        support_rays: vec![ray],
                        log_fn: LieSeries::zero(order),
                    });
                    inserted.push(walls.len() - 1);
                    walls.len() - 1
                }
            };
            let delta_fn = if eps == 1 { -c } else { c };
            walls[idx].log_fn.add_term(d, delta_fn);
        }
    }
    let loop_product = path_ordered_product(l, &walls, &loop_crossings(&walls), order)?;
    Ok(Completion {
        walls,
        inserted,
        loop_product,
    })
}

/// Output of [`attach_fan_functions`].
#[derive(Clone, Debug, Default)]
pub struct Attachment {
    pub walls: Vec<Wall>,
    /// Facets whose normal has mixed signs.
    pub skipped: Vec<String>,
}

/// The dilogarithm function on every codimension-one face of `fan`, with
/// `d0` the primitive normal of the face taken in `N⁺`.
pub fn attach_fan_functions(fan: &Fan, l: &ScatterLattice, order: usize) -> Result<Attachment> {
    if fan.ambient_dim() != l.n {
        return Err(Error::Form(format!("fan lives in dimension {}, lattice has rank {}", fan.ambient_dim(), l.n)));
    }
    let mut out = Attachment::default();
    for facet in fan.facets() {
        let refs: Vec<&[i64]> = facet.iter().map(|r| r.as_slice()).collect();
        let Some(normal) = hyperplane_normal(&refs) else {
            out.skipped.push(format!("facet {facet:?} is degenerate"));
            continue;
        };
        let d0 = if normal.iter().all(|&x| x >= 0) {
            normal
        } else if normal.iter().all(|&x| x <= 0) {
            normal.iter().map(|x| -x).collect()
        } else {
            out.skipped.push(format!("facet {facet:?} has normal {normal:?} outside N+ up to sign"));
            continue;
        };
        out.walls.push(Wall {
            log_fn: dilog(&d0, order),
            d0,
            support_rays: facet,
        });
    }
    Ok(out)
}

/// Is `log_fn` exactly the truncated dilogarithm in direction `d0`?
pub fn is_dilog(w: &Wall) -> bool {
    w.log_fn == dilog(&w.d0, w.log_fn.order)
}

/// `log_fn` coefficients are positive multiples of `d0`, and `d0` is
/// orthogonal to every support ray.
pub fn support_condition(w: &Wall) -> bool {
    w.log_fn.supported_on(&w.d0)
        && w
            .support_rays
            .iter()
            .all(|r| r.iter().zip(&w.d0).map(|(a, b)| a * b).sum::<i64>() == 0)
}

/// Multiplicity `j` of each key `j·d0` of a wall function, with coefficient.
pub fn wall_terms(w: &Wall) -> Vec<(i64, BigRational)> {
    w.log_fn
        .coeffs
        .iter()
        .filter_map(|(d, c)| multiple_of(d, &w.d0).map(|j| (j, c.clone())))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Largest absolute numerator among coefficients, for reporting.
pub fn max_numerator(s: &LieSeries) -> BigInt {
    s.coeffs.values().map(|c| c.numer().abs()).max().unwrap_or_default()
}
