//! Dense linear algebra over a [`Field`]: row reduction, kernels and
//! subspaces in reduced echelon form.

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Mat {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let data: Vec<E> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols);
        Mat { rows: r, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

/// Brings `m` to reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c));
        for j in c..cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        let pivot_row: Vec<(usize, F::Elem)> = (c..cols)
            .filter(|&j| !f.is_zero(m.get(r, j)))
            .map(|j| (j, m.get(r, j).clone()))
            .collect();
        for i in 0..rows {
            if i == r || f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = f.neg(m.get(i, c));
            for (j, v) in &pivot_row {
                let mut cell = m.get(i, *j).clone();
                f.add_mul(&mut cell, &factor, v);
                m.set(i, *j, cell);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Mat<F::Elem>) -> usize {
    rref(f, &mut m.clone()).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, in the standard
/// reduced form (1 at its free column, 0 at the other free columns).
pub fn kernel<F: Field>(f: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols];
            v[free] = f.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(row, free));
            }
            v
        })
        .collect()
}

/// `m · v`.
pub fn apply<F: Field>(f: &F, m: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..m.rows)
        .map(|i| {
            let mut acc = f.zero();
            for (a, b) in m.row(i).iter().zip(v) {
                f.add_mul(&mut acc, a, b);
            }
            acc
        })
        .collect()
}

pub fn matmul<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.cols, b.rows);
    let mut out = Mat::filled(a.rows, b.cols, f.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let mut cell = out.get(i, j).clone();
                f.add_mul(&mut cell, x, b.get(k, j));
                out.set(i, j, cell);
            }
        }
    }
    out
}

/// Inverse of a square matrix, if invertible.
pub fn inverse<F: Field>(f: &F, m: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let mut aug = Mat::filled(n, 2 * n, f.zero());
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, f.one());
    }
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = Mat::filled(n, n, f.zero());
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(out)
}

/// A subspace of `F^dim` kept as reduced row echelon rows.
#[derive(Clone, Debug)]
pub struct Subspace<E> {
    pub dim: usize,
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(dim: usize) -> Self {
        Subspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_generators<F: Field<Elem = E>>(f: &F, dim: usize, gens: Vec<Vec<E>>) -> Self {
        if gens.is_empty() {
            return Subspace::zero(dim);
        }
        let mut m = Mat::from_rows(dim, gens);
        let pivots = rref(f, &mut m);
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace { dim, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// `v` minus its component along the pivots.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = f.neg(&out[p]);
            for (j, x) in row.iter().enumerate() {
                if !f.is_zero(x) {
                    f.add_mul(&mut out[j], &c, x);
                }
            }
        }
        out
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Coordinates not occupied by a pivot; unit vectors there span a
    /// complement.
    pub fn free_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&c| !is_pivot[c]).collect()
    }
}
