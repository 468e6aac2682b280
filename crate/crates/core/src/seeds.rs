//! g-vector seeds with principal coefficients and their mutation.
//!
//! A seed stores the extended exchange matrix `[B; C]` (mutable block on top,
//! the frozen block `C` tracks the principal copy of every vertex) together
//! with the G-matrix whose columns are the g-vectors of the cluster.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::SimplicialCone;
use crate::error::{Error, Result};
use crate::quiver::{mutated_entry, ExchangeMatrix};

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> num_bigint::BigInt {
        assert_eq!(self.rows, self.cols);
        let rows: Vec<Vec<i64>> = self.to_rows();
        crate::cone::det_exact(&rows)
    }
}

/// A g-vector seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSeed {
    /// `2n × n` extended exchange matrix: mutable block over the frozen block.
    pub btilde: IntMatrix,
    /// `n × n`, columns are the g-vectors.
    pub gmat: IntMatrix,
    /// Mutable block of the initial seed.
    pub b0: ExchangeMatrix,
    /// Mutations applied to the initial seed.
    pub trail: Vec<usize>,
}

impl GSeed {
    pub fn rank(&self) -> usize {
        self.gmat.cols
    }

    /// Current mutable block.
    pub fn b_mutable(&self) -> IntMatrix {
        let n = self.rank();
        IntMatrix {
            rows: n,
            cols: n,
            data: self.btilde.data[..n * n].to_vec(),
        }
    }

    /// Frozen block of `btilde`, the C-matrix.
    pub fn c_matrix(&self) -> IntMatrix {
        let n = self.rank();
        IntMatrix {
            rows: n,
            cols: n,
            data: self.btilde.data[n * n..].to_vec(),
        }
    }

    pub fn g_vectors(&self) -> Vec<Vec<i64>> {
        self.gmat.columns()
    }

    /// The principal-coefficient seed `([B; I], I)`.
    pub fn initial(b: &ExchangeMatrix) -> Self {
        let n = b.rank();
        let mut btilde = IntMatrix::zeros(2 * n, n);
        for i in 0..n {
            for j in 0..n {
                btilde.set(i, j, b.get(i, j));
            }
            btilde.set(n + i, i, 1);
        }
        GSeed {
            btilde,
            gmat: IntMatrix::identity(n),
            b0: b.clone(),
            trail: Vec::new(),
        }
    }

    /// Seed mutation at `k`. The new g-vector is
    /// `-g_k + Σ_i [b_ik]_+ g_i - Σ_j [c_jk]_+ b0_j`, where `c_jk` is the
    /// frozen entry of the principal copy `j'` and `b0_j` is column `j` of the
    /// initial exchange matrix.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let mut gk = vec![0i64; n];
        for (r, slot) in gk.iter_mut().enumerate() {
            let mut acc = self.gmat.get(r, k).checked_neg().ok_or(Error::Overflow("g-vector"))?;
            for i in 0..n {
                let b = self.btilde.get(i, k);
                if b > 0 {
                    acc = checked_fma(acc, b, self.gmat.get(r, i))?;
                }
            }
            for j in 0..n {
                let c = self.btilde.get(n + j, k);
                if c > 0 {
                    acc = checked_fma(acc, -c, self.b0.get(r, j))?;
                }
            }
            *slot = acc;
        }
        let mut gmat = self.gmat.clone();
        for (r, v) in gk.into_iter().enumerate() {
            gmat.set(r, k, v);
        }
        let mut trail = self.trail.clone();
        trail.push(k);
        Ok(GSeed {
            btilde: mutate_extended(&self.btilde, k)?,
            gmat,
            b0: self.b0.clone(),
            trail,
        })
    }

    /// Seed mutation by the sign-coherent recurrence
    /// `g'_k = -g_k + Σ_i [-ε b_ik]_+ g_i`, `ε` the sign of the `k`-th
    /// C-matrix column. Used as an independent check of [`GSeed::mutate`].
    pub fn mutate_by_c_sign(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let c = self.c_matrix();
        let eps = column_sign(&c, k).ok_or(Error::Parse(format!(
            "c-column {k} is not sign-coherent at trail {:?}",
            self.trail
        )))?;
        let mut gmat = self.gmat.clone();
        for r in 0..n {
            let mut acc = -self.gmat.get(r, k);
            for i in 0..n {
                let b = -eps * self.btilde.get(i, k);
                if b > 0 {
                    acc = checked_fma(acc, b, self.gmat.get(r, i))?;
                }
            }
            gmat.set(r, k, acc);
        }
        let mut trail = self.trail.clone();
        trail.push(k);
        Ok(GSeed {
            btilde: mutate_extended(&self.btilde, k)?,
            gmat,
            b0: self.b0.clone(),
            trail,
        })
    }

    /// Simplicial cone spanned by the g-vectors.
    pub fn cone(&self) -> Result<SimplicialCone> {
        SimplicialCone::new(self.g_vectors())
    }

    /// Labeling-independent identity of the seed: (g-vector, exchange column)
    /// pairs with the exchange columns re-indexed along the sorted g-vectors.
    pub fn dedup_key(&self) -> Vec<i64> {
        let n = self.rank();
        let g = self.g_vectors();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| g[a].cmp(&g[b]));
        let mut key = Vec::with_capacity(n * 2 * n);
        for &j in &order {
            key.extend_from_slice(&g[j]);
            for &i in &order {
                key.push(self.btilde.get(i, j));
            }
        }
        key
    }
}

#[inline]
fn checked_fma(acc: i64, a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .and_then(|p| acc.checked_add(p))
        .ok_or(Error::Overflow("g-vector"))
}

/// Sign of a nonzero sign-coherent column; `None` if mixed or zero.
pub fn column_sign(m: &IntMatrix, j: usize) -> Option<i64> {
    let col = m.column(j);
    let pos = col.iter().any(|&v| v > 0);
    let neg = col.iter().any(|&v| v < 0);
    match (pos, neg) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

/// Extended matrix mutation of an `m × n` matrix whose top `n × n` block is
/// skew-symmetric.
pub fn mutate_extended(b: &IntMatrix, k: usize) -> Result<IntMatrix> {
    let mut out = b.clone();
    for i in 0..b.rows {
        for j in 0..b.cols {
            let v = if i == k || j == k {
                -b.get(i, j)
            } else {
                mutated_entry(b.get(i, j), b.get(i, k), b.get(k, j))?
            };
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Deduplicated seeds found by breadth-first mutation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeedSet {
    pub seeds: Vec<GSeed>,
    pub depth: usize,
    /// The frontier emptied before the radius was reached.
    pub complete: bool,
    /// Enumeration stopped at `max_seeds`.
    pub truncated: bool,
}

/// JSON export record for one seed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeedRecord {
    pub g_columns: Vec<Vec<i64>>,
    pub b_mutable: Vec<Vec<i64>>,
    pub c_matrix: Vec<Vec<i64>>,
    pub trail: Vec<usize>,
}

impl SeedSet {
    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    pub fn records(&self) -> Vec<SeedRecord> {
        self.seeds
            .iter()
            .map(|s| SeedRecord {
                g_columns: s.g_vectors(),
                b_mutable: s.b_mutable().to_rows(),
                c_matrix: s.c_matrix().to_rows(),
                trail: s.trail.clone(),
            })
            .collect()
    }
}

/// Breadth-first enumeration of seeds up to `depth` mutations from the
/// initial seed, keeping at most `max_seeds` seeds.
pub fn enumerate_seeds(b: &ExchangeMatrix, depth: usize, max_seeds: usize) -> Result<SeedSet> {
    let n = b.rank();
    let root = GSeed::initial(b);
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(root.dedup_key(), 0);
    let mut seeds = vec![root];
    let mut frontier = vec![0usize];
    let mut truncated = false;
    let mut radius = 0;
    while radius < depth && !frontier.is_empty() && !truncated {
        let children: Vec<Vec<(GSeed, Vec<i64>)>> = frontier
            .par_iter()
            .map(|&idx| {
                let s = &seeds[idx];
                let last = s.trail.last().copied();
                (0..n)
                    .filter(|&k| Some(k) != last)
                    .map(|k| {
                        let c = s.mutate(k)?;
                        let key = c.dedup_key();
                        Ok((c, key))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (child, key) in children.into_iter().flatten() {
            if seen.contains_key(&key) {
                continue;
            }
            if seeds.len() >= max_seeds {
                truncated = true;
                break;
            }
            seen.insert(key, seeds.len());
            next.push(seeds.len());
            seeds.push(child);
        }
        frontier = next;
        radius += 1;
    }
    Ok(SeedSet {
        seeds,
        depth,
        complete: frontier.is_empty() && !truncated,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_seed_shape() {
        let s = GSeed::initial(&ExchangeMatrix::kronecker(1));
        assert_eq!(s.btilde.to_rows(), vec![vec![0, 1], vec![-1, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(s.gmat, IntMatrix::identity(2));
        assert!(s.trail.is_empty());
        assert_eq!(GSeed::initial(&ExchangeMatrix::markov()).gmat, IntMatrix::identity(3));
    }

    #[test]
    fn a2_first_mutation() {
        let s = GSeed::initial(&ExchangeMatrix::kronecker(1)).mutate(0).unwrap();
        assert_eq!(s.g_vectors(), vec![vec![-1, 1], vec![0, 1]]);
        // tropical duality G^T C = I pins the c-vectors: (-1, 0) and (1, 1)
        assert_eq!(s.c_matrix().columns(), vec![vec![-1, 0], vec![1, 1]]);
        let cone = s.cone().unwrap();
        assert_eq!(cone.rays(), &[vec![-1, 1], vec![0, 1]]);
    }

    #[test]
    fn mutation_is_an_involution_on_g() {
        let s = GSeed::initial(&ExchangeMatrix::markov());
        let t = s.mutate(1).unwrap().mutate(2).unwrap();
        for k in 0..3 {
            let back = t.mutate(k).unwrap().mutate(k).unwrap();
            assert_eq!(back.gmat, t.gmat);
            assert_eq!(back.btilde, t.btilde);
        }
    }

    #[test]
    fn a2_pentagon_returns_swapped() {
        let mut s = GSeed::initial(&ExchangeMatrix::kronecker(1));
        for k in [0, 1, 0, 1, 0] {
            s = s.mutate(k).unwrap();
        }
        assert_eq!(s.g_vectors(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn enumeration_counts() {
        let a2 = enumerate_seeds(&ExchangeMatrix::kronecker(1), 10, 1000).unwrap();
        assert_eq!(a2.len(), 5);
        assert!(a2.complete);
        let k2 = enumerate_seeds(&ExchangeMatrix::kronecker(2), 4, 1000).unwrap();
        assert_eq!(k2.len(), 9);
        assert!(!k2.complete);
        let d0 = enumerate_seeds(&ExchangeMatrix::markov(), 0, 1000).unwrap();
        assert_eq!(d0.len(), 1);
    }

    #[test]
    fn max_seeds_truncates() {
        let s = enumerate_seeds(&ExchangeMatrix::markov(), 10, 7).unwrap();
        assert_eq!(s.len(), 7);
        assert!(s.truncated);
        assert!(!s.complete);
    }

    #[test]
    fn out_of_range() {
        let s = GSeed::initial(&ExchangeMatrix::kronecker(1));
        assert!(s.mutate(2).is_err());
    }
}
