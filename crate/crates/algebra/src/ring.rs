//! The algebra over a chosen field, and matrices with entries in its
//! blocks, i.e. maps between direct sums of indecomposable projectives.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;

/// Structure constants of an [`Algebra`] read in the field `F`.
#[derive(Clone, Debug)]
pub struct Ring<F: Field> {
    field: F,
    algebra: Arc<Algebra>,
    n: usize,
    dims: Vec<usize>,
    /// `table[(k, j, i)][β·dim(j,i) + α]`: local terms of `β·α` in `e_k Λ e_i`.
    table: Vec<Vec<Vec<(usize, F::Elem)>>>,
}

impl<F: Field> Ring<F> {
    pub fn new(algebra: Arc<Algebra>, field: F) -> Result<Self> {
        let n = algebra.vertices();
        let mut dims = vec![0; n * n];
        for j in 0..n {
            for i in 0..n {
                dims[j * n + i] = algebra.block_dim(j, i);
            }
        }
        let mut table = Vec::with_capacity(n * n * n);
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let mut t = Vec::with_capacity(dims[k * n + j] * dims[j * n + i]);
                    for &b in algebra.block(k, j) {
                        for &a in algebra.block(j, i) {
                            let mut terms = Vec::new();
                            for (g, c) in algebra.product(b, a) {
                                let c = field
                                    .from_rational(c)
                                    .ok_or_else(|| Error::Field(format!("structure constant {c} is undefined in the field")))?;
                                if !field.is_zero(&c) {
                                    terms.push((algebra.local_index(*g), c));
                                }
                            }
                            t.push(terms);
                        }
                    }
                    table.push(t);
                }
            }
        }
        Ok(Ring {
            field,
            algebra,
            n,
            dims,
            table,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    /// `dim e_j Λ e_i`, the number of coordinates of a map `P_i → P_j`.
    #[inline]
    pub fn dim(&self, j: usize, i: usize) -> usize {
        self.dims[j * self.n + i]
    }

    pub fn zero_elem(&self, j: usize, i: usize) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim(j, i)]
    }

    /// `e_v` as an element of `e_v Λ e_v`.
    pub fn unit(&self, v: usize) -> Vec<F::Elem> {
        let mut e = self.zero_elem(v, v);
        e[0] = self.field.one();
        e
    }

    /// `acc += β·α` for `β ∈ e_k Λ e_j`, `α ∈ e_j Λ e_i`.
    pub fn mul_acc(&self, acc: &mut [F::Elem], k: usize, j: usize, i: usize, beta: &[F::Elem], alpha: &[F::Elem]) {
        let f = &self.field;
        let t = &self.table[(k * self.n + j) * self.n + i];
        let da = self.dim(j, i);
        for (bl, b) in beta.iter().enumerate() {
            if f.is_zero(b) {
                continue;
            }
            for (al, a) in alpha.iter().enumerate() {
                if f.is_zero(a) {
                    continue;
                }
                let ba = f.mul(b, a);
                for (l, c) in &t[bl * da + al] {
                    f.add_mul(&mut acc[*l], &ba, c);
                }
            }
        }
    }

    pub fn mul(&self, k: usize, j: usize, i: usize, beta: &[F::Elem], alpha: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = self.zero_elem(k, i);
        self.mul_acc(&mut out, k, j, i, beta, alpha);
        out
    }

    pub fn zero_mat(&self, rows: Vec<usize>, cols: Vec<usize>) -> LMat<F::Elem> {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.zero_elem(r, c))
            .collect();
        LMat { rows, cols, entries }
    }

    pub fn identity(&self, vs: Vec<usize>) -> LMat<F::Elem> {
        let mut m = self.zero_mat(vs.clone(), vs.clone());
        for (i, &v) in vs.iter().enumerate() {
            *m.entry_mut(i, i) = self.unit(v);
        }
        m
    }

    /// `a·b`, i.e. `b` first.
    pub fn matmul(&self, a: &LMat<F::Elem>, b: &LMat<F::Elem>) -> LMat<F::Elem> {
        assert_eq!(a.cols, b.rows, "incompatible shapes");
        let mut out = self.zero_mat(a.rows.clone(), b.cols.clone());
        for r in 0..a.rows.len() {
            for m in 0..a.cols.len() {
                let x = a.entry(r, m);
                if x.iter().all(|e| self.field.is_zero(e)) {
                    continue;
                }
                for c in 0..b.cols.len() {
                    let y = b.entry(m, c);
                    let (k, j, i) = (a.rows[r], a.cols[m], b.cols[c]);
                    let slot = out.entry_mut(r, c);
                    self.mul_acc(slot, k, j, i, x, y);
                }
            }
        }
        out
    }

    pub fn add(&self, a: &LMat<F::Elem>, b: &LMat<F::Elem>) -> LMat<F::Elem> {
        self.combine(a, b, |f, x, y| f.add(x, y))
    }

    pub fn sub(&self, a: &LMat<F::Elem>, b: &LMat<F::Elem>) -> LMat<F::Elem> {
        self.combine(a, b, |f, x, y| f.sub(x, y))
    }

    fn combine(
        &self,
        a: &LMat<F::Elem>,
        b: &LMat<F::Elem>,
        op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem,
    ) -> LMat<F::Elem> {
        assert!(a.rows == b.rows && a.cols == b.cols, "incompatible shapes");
        LMat {
            rows: a.rows.clone(),
            cols: a.cols.clone(),
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| x.iter().zip(y).map(|(p, q)| op(&self.field, p, q)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, s: &F::Elem, a: &LMat<F::Elem>) -> LMat<F::Elem> {
        let mut out = a.clone();
        for e in out.entries.iter_mut().flatten() {
            *e = self.field.mul(s, e);
        }
        out
    }

    pub fn is_zero_mat(&self, a: &LMat<F::Elem>) -> bool {
        a.entries.iter().flatten().all(|e| self.field.is_zero(e))
    }

    /// Number of field coordinates of `Hom(⊕ P_cols, ⊕ P_rows)`.
    pub fn flat_len(&self, rows: &[usize], cols: &[usize]) -> usize {
        rows.iter().map(|&r| cols.iter().map(|&c| self.dim(r, c)).sum::<usize>()).sum()
    }

    /// Coordinate offsets of each entry in the flat layout, row-major.
    pub fn offsets(&self, rows: &[usize], cols: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(rows.len() * cols.len());
        let mut at = 0;
        for &r in rows {
            for &c in cols {
                out.push(at);
                at += self.dim(r, c);
            }
        }
        out
    }

    pub fn flatten(&self, a: &LMat<F::Elem>) -> Vec<F::Elem> {
        a.entries.iter().flatten().cloned().collect()
    }

    pub fn unflatten(&self, rows: &[usize], cols: &[usize], v: &[F::Elem]) -> LMat<F::Elem> {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        let mut at = 0;
        for &r in rows {
            for &c in cols {
                let d = self.dim(r, c);
                entries.push(v[at..at + d].to_vec());
                at += d;
            }
        }
        LMat {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries,
        }
    }

    /// A linear combination of arrow words, each written right to left.
    /// Returns `(source, target, coordinates)`.
    pub fn element(&self, terms: &[(i64, &[&str])]) -> Result<(usize, usize, Vec<F::Elem>)> {
        let mut ends = None;
        let mut out: Option<Vec<F::Elem>> = None;
        for (c, word) in terms {
            let (s, t, expansion) = self.algebra.word(word)?;
            if *ends.get_or_insert((s, t)) != (s, t) {
                return Err(Error::Presentation(format!("word {word:?} is not parallel to the others")));
            }
            let acc = out.get_or_insert_with(|| self.zero_elem(t, s));
            let c = self.field.from_int(*c);
            for (g, q) in expansion {
                let q = self
                    .field
                    .from_rational(&q)
                    .ok_or_else(|| Error::Field(format!("{q} is undefined in the field")))?;
                let l = self.algebra.local_index(g);
                self.field.add_mul(&mut acc[l], &c, &q);
            }
        }
        let (s, t) = ends.ok_or_else(|| Error::Presentation("empty combination".into()))?;
        Ok((s, t, out.expect("set with ends")))
    }

    /// Is `x ∈ e_v Λ e_v` invertible, i.e. has a nonzero `e_v` coefficient?
    pub fn is_unit(&self, r: usize, c: usize, x: &[F::Elem]) -> bool {
        r == c && !self.field.is_zero(&x[0])
    }

    /// Inverse of a unit of `e_v Λ e_v`: `c⁻¹ Σ nᵏ` where `x = c(e_v − n)`.
    pub fn unit_inverse(&self, v: usize, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let cinv = f.inv(&x[0]);
        // n = e_v − x/c
        let mut nil: Vec<F::Elem> = x.iter().map(|e| f.neg(&f.mul(e, &cinv))).collect();
        nil[0] = f.zero();
        let mut sum = self.unit(v);
        let mut power = self.unit(v);
        loop {
            power = self.mul(v, v, v, &nil, &power);
            if power.iter().all(|e| f.is_zero(e)) {
                break;
            }
            for (s, p) in sum.iter_mut().zip(&power) {
                *s = f.add(s, p);
            }
        }
        sum.iter().map(|e| f.mul(e, &cinv)).collect()
    }
}

/// A map `⊕_c P_{cols[c]} → ⊕_r P_{rows[r]}`; entry `(r, c)` lies in
/// `e_{rows[r]} Λ e_{cols[c]}` and is stored in local basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LMat<E> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<E>>,
}

impl<E: Clone> LMat<E> {
    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> &[E] {
        &self.entries[r * self.cols.len() + c]
    }

    #[inline]
    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Vec<E> {
        let w = self.cols.len();
        &mut self.entries[r * w + c]
    }

    pub fn map<G>(&self, g: impl Fn(&E) -> G) -> LMat<G> {
        LMat {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(|x| x.iter().map(&g).collect()).collect(),
        }
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        LMat {
            rows: rows.iter().map(|&r| self.rows[r]).collect(),
            cols: cols.iter().map(|&c| self.cols[c]).collect(),
            entries: rows
                .iter()
                .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
                .map(|(r, c)| self.entry(r, c).to_vec())
                .collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let rows: Vec<usize> = a.rows.iter().chain(&c.rows).copied().collect();
        let cols: Vec<usize> = a.cols.iter().chain(&b.cols).copied().collect();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for (top, bottom) in [(a, b), (c, d)] {
            for r in 0..top.rows.len() {
                for cc in 0..top.cols.len() {
                    entries.push(top.entry(r, cc).to_vec());
                }
                for cc in 0..bottom.cols.len() {
                    entries.push(bottom.entry(r, cc).to_vec());
                }
            }
        }
        LMat { rows, cols, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;
    use crate::field::Rationals;
    use num_rational::BigRational;

    #[test]
    fn unit_inverse_in_a_local_ring() {
        let pres = AlgebraPresentation::parse(
            r#"{"vertices":1,"arrows":[{"name":"x","source":0,"target":0}],
                "relations":[[{"coefficient":1,"path":["x","x","x"]}]],"nilpotency_bound":3}"#,
        )
        .unwrap();
        let ring = Ring::new(Arc::new(Algebra::new(pres).unwrap()), Rationals).unwrap();
        let q = |v: i64| BigRational::from_integer(v.into());
        let u = vec![q(2), q(3), q(-1)];
        let inv = ring.unit_inverse(0, &u);
        assert_eq!(ring.mul(0, 0, 0, &u, &inv), ring.unit(0));
    }
}
