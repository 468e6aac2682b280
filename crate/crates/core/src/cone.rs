//! Simplicial rational cones with exact membership tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Divides `v` by the gcd of its entries.
pub fn normalize_ray(v: &[i64]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|&x| x / g).collect())
}

/// Exact determinant of a square integer matrix (Bareiss elimination).
pub fn det_exact(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    det_bareiss(&mut m, n)
}

pub(crate) fn det_bareiss(m: &mut [Vec<BigInt>], n: usize) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Adjugate of a square matrix given as columns, so that
/// `adj · A = det(A) · I` where `A` has the given columns.
fn adjugate(columns: &[Vec<i64>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let n = columns.len();
    // A[i][j] = columns[j][i]
    let a = |i: usize, j: usize| columns[j][i];
    let full: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| a(i, j)).collect()).collect();
    let det = det_exact(&full);
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // cofactor C[j][i] goes to adj[i][j]
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| full[r][c]).collect())
                .collect();
            let mut c = det_exact(&minor);
            if (i + j) % 2 == 1 {
                c = -c;
            }
            adj[i][j] = c;
        }
    }
    (adj, det)
}

/// Cone `C(r_1, …, r_k)` on linearly independent primitive rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SimplicialCone {
    rays: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for SimplicialCone {
    type Error = Error;
    fn try_from(rays: Vec<Vec<i64>>) -> Result<Self> {
        SimplicialCone::new(rays)
    }
}

impl From<SimplicialCone> for Vec<Vec<i64>> {
    fn from(c: SimplicialCone) -> Self {
        c.rays
    }
}

impl SimplicialCone {
    /// Normalizes and sorts the rays, rejecting zero or dependent ones.
    pub fn new(rays: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rays.first().map(|r| r.len()).unwrap_or(0);
        let mut norm = Vec::with_capacity(rays.len());
        for r in &rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
            norm.push(normalize_ray(r)?);
        }
        norm.sort();
        if rank_of(&norm) != norm.len() {
            return Err(Error::DegenerateCone);
        }
        Ok(SimplicialCone { rays: norm })
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rays.first().map(|r| r.len()).unwrap_or(0)
    }

    /// Whether `p` is a nonnegative combination of the rays.
    pub fn contains(&self, p: &[BigRational]) -> Result<bool> {
        if p.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: p.len(),
            });
        }
        let cols: Vec<Vec<BigRational>> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Ok(crate::lp::nonneg_combination(&cols, p).is_some())
    }

    /// Exact membership of an integer point.
    pub fn contains_int(&self, p: &[i64]) -> Result<bool> {
        let q: Vec<BigRational> = p.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        self.contains(&q)
    }

    /// Precomputed membership test; requires a full-dimensional cone.
    pub fn tester(&self) -> Result<MembershipTest> {
        if self.dim() != self.ambient_dim() {
            return Err(Error::DegenerateCone);
        }
        MembershipTest::new(&self.rays)
    }
}

/// Rank over the rationals.
pub fn rank_of(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let v = &f * &rows[rank][k];
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Full-dimensional simplicial cone membership via the adjugate: `p` lies
/// in the cone iff every entry of `adj · p` has the sign of `det` (or is 0).
#[derive(Clone, Debug)]
pub struct MembershipTest {
    small: Option<Vec<i128>>,
    big: Vec<Vec<BigInt>>,
    det_sign: i32,
    n: usize,
}

impl MembershipTest {
    pub fn new(rays: &[Vec<i64>]) -> Result<Self> {
        let n = rays.len();
        let (adj, det) = adjugate(rays);
        if det.is_zero() {
            return Err(Error::DegenerateCone);
        }
        let small: Option<Vec<i128>> = adj.iter().flatten().map(|x| x.to_i128()).collect();
        Ok(MembershipTest {
            small,
            big: adj,
            det_sign: if det.is_positive() { 1 } else { -1 },
            n,
        })
    }

    pub fn contains(&self, p: &[i128]) -> bool {
        if let Some(adj) = &self.small {
            let mut ok = true;
            let mut overflow = false;
            for i in 0..self.n {
                let mut acc: i128 = 0;
                for j in 0..self.n {
                    match adj[i * self.n + j].checked_mul(p[j]).and_then(|t| acc.checked_add(t)) {
                        Some(v) => acc = v,
                        None => {
                            overflow = true;
                            break;
                        }
                    }
                }
                if overflow {
                    break;
                }
                if acc.signum() as i32 * self.det_sign < 0 {
                    ok = false;
                    break;
                }
            }
            if !overflow {
                return ok;
            }
        }
        self.contains_big(p)
    }

    fn contains_big(&self, p: &[i128]) -> bool {
        let p: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
        self.big.iter().all(|row| {
            let s: BigInt = row.iter().zip(&p).map(|(a, b)| a * b).sum();
            let sign = if s.is_zero() {
                0
            } else if s.is_positive() {
                1
            } else {
                -1
            };
            sign * self.det_sign >= 0
        })
    }
}

/// Primitive integer normal of the hyperplane spanned by `n - 1` vectors in
/// `Z^n`, or `None` if they are dependent.
pub fn hyperplane_normal(vectors: &[&[i64]]) -> Option<Vec<i64>> {
    let n = vectors.len() + 1;
    let mut normal = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| (0..n).filter(|&c| c != skip).map(|c| v[c]).collect())
            .collect();
        let mut d = det_exact(&minor);
        if skip % 2 == 1 {
            d = -d;
        }
        normal.push(d);
    }
    let g = normal.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return None;
    }
    normal.iter().map(|x| (x / &g).to_i64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_ray(&[2, -4]).unwrap(), vec![1, -2]);
        assert_eq!(normalize_ray(&[0, 7, 0]).unwrap(), vec![0, 1, 0]);
        assert_eq!(normalize_ray(&[-3, -6, 9]).unwrap(), vec![-1, -2, 3]);
        assert_eq!(normalize_ray(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn membership_examples() {
        let orthant = SimplicialCone::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(orthant.contains_int(&[3, 5]).unwrap());
        assert!(!orthant.contains_int(&[-1, 0]).unwrap());
        let c = SimplicialCone::new(vec![vec![-1, 1], vec![0, 1]]).unwrap();
        assert!(c.contains_int(&[-1, 2]).unwrap());
        assert!(orthant.contains_int(&[1, 2, 3]).is_err());
    }

    #[test]
    fn tester_agrees_with_exact_solve() {
        let c = SimplicialCone::new(vec![vec![-2, 3], vec![-1, 2]]).unwrap();
        let t = c.tester().unwrap();
        for x in -5..=5i64 {
            for y in -5..=5i64 {
                assert_eq!(t.contains(&[x as i128, y as i128]), c.contains_int(&[x, y]).unwrap());
            }
        }
    }

    #[test]
    fn rejects_dependent_rays() {
        assert_eq!(
            SimplicialCone::new(vec![vec![1, 2], vec![2, 4]]),
            Err(Error::DegenerateCone)
        );
    }

    #[test]
    fn determinant_and_normal() {
        assert_eq!(det_exact(&[vec![2, 1], vec![1, 1]]), BigInt::from(1));
        assert_eq!(det_exact(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        let n = hyperplane_normal(&[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(n, vec![0, 0, 1]);
        let n2 = hyperplane_normal(&[&[-1, 1]]).unwrap();
        assert_eq!(n2.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1]);
    }
}
