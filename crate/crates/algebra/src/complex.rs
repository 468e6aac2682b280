//! Two-term complexes `P⁻¹ → P⁰` of projectives.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Coefficient;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{LMat, Ring};

/// `X⁻¹ --f--> X⁰`. Columns of `f` are the summands of `X⁻¹`, rows those of
/// `X⁰`, each sorted by vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoTermComplex<E> {
    pub n: usize,
    pub f: LMat<E>,
}

impl<E: Clone> TwoTermComplex<E> {
    /// Wraps a differential, sorting summands by vertex.
    pub fn new(n: usize, f: LMat<E>) -> Result<Self> {
        if let Some(v) = f.rows.iter().chain(&f.cols).find(|&&v| v >= n) {
            return Err(Error::Complex(format!("vertex {v} out of range")));
        }
        let mut rows: Vec<usize> = (0..f.rows.len()).collect();
        rows.sort_by_key(|&r| f.rows[r]);
        let mut cols: Vec<usize> = (0..f.cols.len()).collect();
        cols.sort_by_key(|&c| f.cols[c]);
        Ok(TwoTermComplex {
            n,
            f: f.select(&rows, &cols),
        })
    }

    pub fn zero(n: usize) -> Self {
        TwoTermComplex {
            n,
            f: LMat {
                rows: Vec::new(),
                cols: Vec::new(),
                entries: Vec::new(),
            },
        }
    }

    /// Vertices of the summands of `X⁻¹`.
    pub fn minus(&self) -> &[usize] {
        &self.f.cols
    }

    /// Vertices of the summands of `X⁰`.
    pub fn plus(&self) -> &[usize] {
        &self.f.rows
    }

    pub fn m_minus(&self) -> Vec<usize> {
        counts(self.n, &self.f.cols)
    }

    pub fn m_plus(&self) -> Vec<usize> {
        counts(self.n, &self.f.rows)
    }

    /// `[X⁰] − [X⁻¹]`.
    pub fn g_vector(&self) -> Vec<i64> {
        self.m_plus()
            .into_iter()
            .zip(self.m_minus())
            .map(|(p, m)| p as i64 - m as i64)
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.f.rows.is_empty() && self.f.cols.is_empty()
    }

    /// Same complex with entries converted elementwise.
    pub fn map<G: Clone>(&self, g: impl Fn(&E) -> G) -> TwoTermComplex<G> {
        TwoTermComplex {
            n: self.n,
            f: self.f.map(g),
        }
    }

    /// `X ⊕ Y`.
    pub fn direct_sum(&self, other: &Self, zero: impl Fn(usize, usize) -> Vec<E>) -> Self {
        let zr = |rows: &[usize], cols: &[usize]| LMat {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries: rows
                .iter()
                .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
                .map(|(r, c)| zero(r, c))
                .collect(),
        };
        let f = LMat::blocks(
            &self.f,
            &zr(&self.f.rows, &other.f.cols),
            &zr(&other.f.rows, &self.f.cols),
            &other.f,
        );
        TwoTermComplex::new(self.n, f).expect("vertices already validated")
    }
}

/// `(0 → P_v)` for every listed vertex.
pub fn projective<F: Field>(ring: &Ring<F>, vs: &[usize]) -> TwoTermComplex<F::Elem> {
    TwoTermComplex::new(ring.vertices(), ring.zero_mat(vs.to_vec(), Vec::new())).expect("valid vertices")
}

/// `(0 → Λ)`.
pub fn regular<F: Field>(ring: &Ring<F>) -> TwoTermComplex<F::Elem> {
    projective(ring, &(0..ring.vertices()).collect::<Vec<_>>())
}

/// `ΣΛ = (Λ → 0)`.
pub fn shifted_regular<F: Field>(ring: &Ring<F>) -> TwoTermComplex<F::Elem> {
    let vs: Vec<usize> = (0..ring.vertices()).collect();
    TwoTermComplex::new(ring.vertices(), ring.zero_mat(Vec::new(), vs)).expect("valid vertices")
}

fn counts(n: usize, vs: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n];
    for &v in vs {
        out[v] += 1;
    }
    out
}

/// Vertex list with `m[v]` copies of `v`, in vertex order.
pub fn expand(m: &[usize]) -> Vec<usize> {
    m.iter().enumerate().flat_map(|(v, &k)| std::iter::repeat_n(v, k)).collect()
}

/// Splits `g` as `g_+ − g_-` with disjoint supports.
pub fn split_g(g: &[i64]) -> (Vec<usize>, Vec<usize>) {
    let plus = g.iter().map(|&x| x.max(0) as usize).collect();
    let minus = g.iter().map(|&x| (-x).max(0) as usize).collect();
    (minus, plus)
}

/// `P^{g_-} → P^{g_+}` with independent uniform integer coordinates in
/// `[−range, range]`.
pub fn random_complex<F: Field, R: Rng + ?Sized>(
    ring: &Ring<F>,
    g: &[i64],
    range: i64,
    rng: &mut R,
) -> Result<TwoTermComplex<F::Elem>> {
    if g.len() != ring.vertices() {
        return Err(Error::Complex(format!("g-vector has {} entries for {} vertices", g.len(), ring.vertices())));
    }
    let (minus, plus) = split_g(g);
    let mut f = ring.zero_mat(expand(&plus), expand(&minus));
    for e in f.entries.iter_mut().flatten() {
        *e = ring.field().from_int(rng.gen_range(-range..=range));
    }
    TwoTermComplex::new(ring.vertices(), f)
}

/// Removes summands `P_v --unit--> P_v`, leaving a homotopy equivalent
/// complex with all differential entries in the radical.
pub fn minimalize<F: Field>(ring: &Ring<F>, x: &TwoTermComplex<F::Elem>) -> TwoTermComplex<F::Elem> {
    let mut f = x.f.clone();
    while let Some((t, s)) = find_unit(ring, &f) {
        let v = f.rows[t];
        let uinv = ring.unit_inverse(v, f.entry(t, s));
        let (nr, nc) = (f.rows.len(), f.cols.len());
        // clear row t by column operations
        for j in 0..nc {
            if j == s || f.entry(t, j).iter().all(|e| ring.field().is_zero(e)) {
                continue;
            }
            let xj = ring.mul(f.cols[s], v, f.cols[j], &uinv, f.entry(t, j));
            for i in 0..nr {
                if f.entry(i, s).iter().all(|e| ring.field().is_zero(e)) {
                    continue;
                }
                let d = ring.mul(f.rows[i], f.cols[s], f.cols[j], f.entry(i, s), &xj);
                let slot = f.entry_mut(i, j);
                for (a, b) in slot.iter_mut().zip(&d) {
                    *a = ring.field().sub(a, b);
                }
            }
        }
        // clearing column s by row operations leaves the rest unchanged
        let rows: Vec<usize> = (0..nr).filter(|&i| i != t).collect();
        let cols: Vec<usize> = (0..nc).filter(|&j| j != s).collect();
        f = f.select(&rows, &cols);
    }
    TwoTermComplex { n: x.n, f }
}

fn find_unit<F: Field>(ring: &Ring<F>, f: &LMat<F::Elem>) -> Option<(usize, usize)> {
    for t in 0..f.rows.len() {
        for s in 0..f.cols.len() {
            if ring.is_unit(f.rows[t], f.cols[s], f.entry(t, s)) {
                return Some((t, s));
            }
        }
    }
    None
}

pub fn is_minimal<F: Field>(ring: &Ring<F>, x: &TwoTermComplex<F::Elem>) -> bool {
    find_unit(ring, &x.f).is_none()
}

/// Serialized form: multiplicities and, for each pair of summands, the
/// coordinates of the entry in the standard basis of its block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub m_minus: Vec<usize>,
    pub m_plus: Vec<usize>,
    pub blocks: Vec<Vec<Vec<Coefficient>>>,
}

impl ComplexFile {
    pub fn from_complex<F: Field>(ring: &Ring<F>, x: &TwoTermComplex<F::Elem>) -> Self {
        let blocks = (0..x.f.rows.len())
            .map(|r| {
                (0..x.f.cols.len())
                    .map(|c| x.f.entry(r, c).iter().map(|e| Coefficient::Text(ring.field().render(e))).collect())
                    .collect()
            })
            .collect();
        ComplexFile {
            m_minus: x.m_minus(),
            m_plus: x.m_plus(),
            blocks,
        }
    }

    pub fn to_complex<F: Field>(&self, ring: &Ring<F>) -> Result<TwoTermComplex<F::Elem>> {
        let n = ring.vertices();
        if self.m_minus.len() != n || self.m_plus.len() != n {
            return Err(Error::Complex(format!("multiplicity vectors must have {n} entries")));
        }
        let rows = expand(&self.m_plus);
        let cols = expand(&self.m_minus);
        if self.blocks.len() != rows.len() {
            return Err(Error::Complex(format!("expected {} block rows, found {}", rows.len(), self.blocks.len())));
        }
        let mut f = ring.zero_mat(rows.clone(), cols.clone());
        for (r, row) in self.blocks.iter().enumerate() {
            if row.len() != cols.len() {
                return Err(Error::Complex(format!("block row {r} has {} entries, expected {}", row.len(), cols.len())));
            }
            for (c, coords) in row.iter().enumerate() {
                let d = ring.dim(rows[r], cols[c]);
                if coords.len() != d {
                    return Err(Error::Complex(format!(
                        "block ({r}, {c}) needs {d} coordinates, found {}",
                        coords.len()
                    )));
                }
                for (l, coef) in coords.iter().enumerate() {
                    let q = coef.value()?;
                    f.entry_mut(r, c)[l] = ring
                        .field()
                        .from_rational(&q)
                        .ok_or_else(|| Error::Field(format!("coefficient {q} is undefined in the field")))?;
                }
            }
        }
        TwoTermComplex::new(n, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, AlgebraPresentation};
    use crate::field::Rationals;
    use std::sync::Arc;

    fn kronecker() -> Ring<Rationals> {
        Ring::new(Arc::new(Algebra::new(AlgebraPresentation::kronecker()).unwrap()), Rationals).unwrap()
    }

    #[test]
    fn g_vectors() {
        let ring = kronecker();
        assert_eq!(regular(&ring).g_vector(), vec![1, 1]);
        assert_eq!(shifted_regular(&ring).g_vector(), vec![-1, -1]);
        let f = ring.zero_mat(vec![1], vec![0]);
        assert_eq!(TwoTermComplex::new(2, f).unwrap().g_vector(), vec![-1, 1]);
    }

    #[test]
    fn minimalize_drops_identity_summands() {
        let ring = kronecker();
        // P₀ ⊕ P₁ → P₁ ⊕ P₁ with an identity on P₁
        let mut f = ring.zero_mat(vec![1, 1], vec![0, 1]);
        f.entry_mut(0, 0)[0] = ring.field().from_int(1);
        *f.entry_mut(1, 1) = ring.unit(1);
        f.entry_mut(1, 0)[1] = ring.field().from_int(5);
        let x = TwoTermComplex::new(2, f).unwrap();
        let m = minimalize(&ring, &x);
        assert_eq!(m.g_vector(), x.g_vector());
        assert_eq!(m.minus(), &[0]);
        assert_eq!(m.plus(), &[1]);
        assert!(is_minimal(&ring, &m));
    }

    #[test]
    fn file_roundtrip() {
        let ring = kronecker();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        let x = random_complex(&ring, &[-2, 3], 100, &mut rng).unwrap();
        let file = ComplexFile::from_complex(&ring, &x);
        let text = serde_json::to_string(&file).unwrap();
        let back: ComplexFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_complex(&ring).unwrap(), x);
    }
}
