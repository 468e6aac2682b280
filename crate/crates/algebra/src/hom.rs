//! Hom spaces in the homotopy category between two-term complexes.

use std::sync::Arc;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{random_complex, TwoTermComplex};
use crate::error::{Error, Result};
use crate::field::{all_integral, Field, Gf, Rationals, DEFAULT_PRIME};
use crate::linalg::{kernel, rref, Mat, Subspace};
use crate::ring::{LMat, Ring};

/// `Hom(X, Σ^shift Y)` in the homotopy category.
///
/// For `shift = 1` every map `X⁻¹ → Y⁰` is a chain map and `chain_basis` is
/// left empty; coordinates are the flat coordinates of `Hom(X⁻¹, Y⁰)`.
/// For `shift = 0` coordinates are those of `Hom(X⁻¹, Y⁻¹) ⊕ Hom(X⁰, Y⁰)`.
#[derive(Clone, Debug)]
pub struct HomSpace<E> {
    pub shift: u8,
    pub ambient_dim: usize,
    pub chain_dim: usize,
    pub chain_basis: Vec<Vec<E>>,
    pub homotopy: Subspace<E>,
    pub quotient_dim: usize,
    /// Reduced echelon representatives of a basis of the quotient.
    pub representatives: Vec<Vec<E>>,
}

fn check<F: Field>(ring: &Ring<F>, xs: &[&TwoTermComplex<F::Elem>]) -> Result<()> {
    for x in xs {
        if x.n != ring.vertices() {
            return Err(Error::AlgebraMismatch);
        }
        for r in 0..x.f.rows.len() {
            for c in 0..x.f.cols.len() {
                if x.f.entry(r, c).len() != ring.dim(x.f.rows[r], x.f.cols[c]) {
                    return Err(Error::AlgebraMismatch);
                }
            }
        }
    }
    Ok(())
}

/// Sparse image of a flat unit vector.
type Image<E> = Vec<(usize, E)>;

/// `f ∘ h` for the unit `h: P_{cols[c]} → P_{inner[r]}` at local index `l`,
/// as a sparse flat vector in `Hom(⊕P_cols, ⊕P_{f.rows})`.
fn post_unit<F: Field>(ring: &Ring<F>, f: &LMat<F::Elem>, cols: &[usize], offs: &[usize], r: usize, c: usize, l: usize) -> Image<F::Elem> {
    let fld = ring.field();
    let (src, mid) = (cols[c], f.cols[r]);
    let mut unit = ring.zero_elem(mid, src);
    unit[l] = fld.one();
    let mut out = Vec::new();
    for t in 0..f.rows.len() {
        let x = f.entry(t, r);
        if x.iter().all(|e| fld.is_zero(e)) {
            continue;
        }
        let prod = ring.mul(f.rows[t], mid, src, x, &unit);
        let base = offs[t * cols.len() + c];
        out.extend(prod.into_iter().enumerate().filter(|(_, e)| !fld.is_zero(e)).map(|(k, e)| (base + k, e)));
    }
    out
}

/// `h ∘ f` for the unit `h: P_{f.rows[c]} → P_{rows[r]}` at local index `l`.
fn pre_unit<F: Field>(ring: &Ring<F>, f: &LMat<F::Elem>, rows: &[usize], offs: &[usize], r: usize, c: usize, l: usize) -> Image<F::Elem> {
    let fld = ring.field();
    let (dst, mid) = (rows[r], f.rows[c]);
    let mut unit = ring.zero_elem(dst, mid);
    unit[l] = fld.one();
    let mut out = Vec::new();
    let w = f.cols.len();
    for s in 0..w {
        let x = f.entry(c, s);
        if x.iter().all(|e| fld.is_zero(e)) {
            continue;
        }
        let prod = ring.mul(dst, mid, f.cols[s], &unit, x);
        let base = offs[r * w + s];
        out.extend(prod.into_iter().enumerate().filter(|(_, e)| !fld.is_zero(e)).map(|(k, e)| (base + k, e)));
    }
    out
}

fn dense<F: Field>(f: &F, len: usize, img: &Image<F::Elem>) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); len];
    for (k, e) in img {
        v[*k] = f.add(&v[*k], e);
    }
    v
}

/// Unit vectors of `Hom(⊕P_cols, ⊕P_rows)` as (entry row, entry col, local index).
fn units<F: Field>(ring: &Ring<F>, rows: &[usize], cols: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (r, &a) in rows.iter().enumerate() {
        for (c, &b) in cols.iter().enumerate() {
            for l in 0..ring.dim(a, b) {
                out.push((r, c, l));
            }
        }
    }
    out
}

/// Generators of the null-homotopic part of `Hom(X⁻¹, Y⁰)`.
fn shift_one_homotopies<F: Field>(ring: &Ring<F>, x: &TwoTermComplex<F::Elem>, y: &TwoTermComplex<F::Elem>) -> Vec<Vec<F::Elem>> {
    let len = ring.flat_len(&y.f.rows, &x.f.cols);
    let offs = ring.offsets(&y.f.rows, &x.f.cols);
    let mut gens = Vec::new();
    // f_Y ∘ h for h: X⁻¹ → Y⁻¹
    for (r, c, l) in units(ring, &y.f.cols, &x.f.cols) {
        let img = post_unit(ring, &y.f, &x.f.cols, &offs, r, c, l);
        if !img.is_empty() {
            gens.push(dense(ring.field(), len, &img));
        }
    }
    // h ∘ f_X for h: X⁰ → Y⁰
    for (r, c, l) in units(ring, &y.f.rows, &x.f.rows) {
        let img = pre_unit(ring, &x.f, &y.f.rows, &offs, r, c, l);
        if !img.is_empty() {
            gens.push(dense(ring.field(), len, &img));
        }
    }
    gens
}

/// `dim Hom(X, Σ^shift Y)`, without representatives.
pub fn hom_dim<F: Field>(ring: &Ring<F>, x: &TwoTermComplex<F::Elem>, y: &TwoTermComplex<F::Elem>, shift: u8) -> Result<usize> {
    check(ring, &[x, y])?;
    if shift == 1 {
        let len = ring.flat_len(&y.f.rows, &x.f.cols);
        let gens = shift_one_homotopies(ring, x, y);
        let r = if gens.is_empty() {
            0
        } else {
            rref(ring.field(), &mut Mat::from_rows(len, gens)).len()
        };
        return Ok(len - r);
    }
    Ok(hom_complexes(ring, x, y, shift)?.quotient_dim)
}

pub fn hom_complexes<F: Field>(
    ring: &Ring<F>,
    x: &TwoTermComplex<F::Elem>,
    y: &TwoTermComplex<F::Elem>,
    shift: u8,
) -> Result<HomSpace<F::Elem>> {
    check(ring, &[x, y])?;
    let fld = ring.field();
    match shift {
        1 => {
            let len = ring.flat_len(&y.f.rows, &x.f.cols);
            let homotopy = Subspace::from_generators(fld, len, shift_one_homotopies(ring, x, y));
            let representatives = homotopy
                .free_coordinates()
                .into_iter()
                .map(|k| {
                    let mut v = vec![fld.zero(); len];
                    v[k] = fld.one();
                    v
                })
                .collect::<Vec<_>>();
            Ok(HomSpace {
                shift,
                ambient_dim: len,
                chain_dim: len,
                chain_basis: Vec::new(),
                quotient_dim: representatives.len(),
                homotopy,
                representatives,
            })
        }
        0 => {
            let cm = chain_maps(ring, x, y);
            let homotopy = Subspace::from_generators(fld, cm.ambient, cm.homotopies);
            let representatives = quotient_basis(fld, &homotopy, &cm.basis);
            Ok(HomSpace {
                shift,
                ambient_dim: cm.ambient,
                chain_dim: cm.basis.len(),
                chain_basis: cm.basis,
                quotient_dim: representatives.len(),
                homotopy,
                representatives,
            })
        }
        s => Err(Error::Complex(format!("shift {s} is outside the two-term range"))),
    }
}

pub(crate) struct ChainMaps<E> {
    /// `len(Hom(X⁻¹, Y⁻¹)) + len(Hom(X⁰, Y⁰))`.
    pub ambient: usize,
    pub split: usize,
    pub basis: Vec<Vec<E>>,
    pub homotopies: Vec<Vec<E>>,
}

/// Chain maps `(u⁻¹, u⁰)` with `u⁰ f_X = f_Y u⁻¹`, and the null-homotopic
/// ones `(h f_X, f_Y h)`.
pub(crate) fn chain_maps<F: Field>(ring: &Ring<F>, x: &TwoTermComplex<F::Elem>, y: &TwoTermComplex<F::Elem>) -> ChainMaps<F::Elem> {
    let fld = ring.field();
    let len_m = ring.flat_len(&y.f.cols, &x.f.cols);
    let len_p = ring.flat_len(&y.f.rows, &x.f.rows);
    let ambient = len_m + len_p;
    let target = ring.flat_len(&y.f.rows, &x.f.cols);
    let offs_t = ring.offsets(&y.f.rows, &x.f.cols);
    // columns of the constraint map (u⁻¹, u⁰) ↦ u⁰ f_X − f_Y u⁻¹
    let mut columns: Vec<Image<F::Elem>> = Vec::with_capacity(ambient);
    for (r, c, l) in units(ring, &y.f.cols, &x.f.cols) {
        let img = post_unit(ring, &y.f, &x.f.cols, &offs_t, r, c, l);
        columns.push(img.into_iter().map(|(k, e)| (k, fld.neg(&e))).collect());
    }
    for (r, c, l) in units(ring, &y.f.rows, &x.f.rows) {
        columns.push(pre_unit(ring, &x.f, &y.f.rows, &offs_t, r, c, l));
    }
    let mut m = Mat::filled(target, ambient, fld.zero());
    for (j, col) in columns.iter().enumerate() {
        for (k, e) in col {
            let v = fld.add(m.get(*k, j), e);
            m.set(*k, j, v);
        }
    }
    let basis = if target == 0 {
        (0..ambient)
            .map(|k| {
                let mut v = vec![fld.zero(); ambient];
                v[k] = fld.one();
                v
            })
            .collect()
    } else {
        kernel(fld, &m)
    };
    // homotopies h: X⁰ → Y⁻¹
    let offs_m = ring.offsets(&y.f.cols, &x.f.cols);
    let offs_p = ring.offsets(&y.f.rows, &x.f.rows);
    let mut homotopies = Vec::new();
    for (r, c, l) in units(ring, &y.f.cols, &x.f.rows) {
        let mut v = vec![fld.zero(); ambient];
        for (k, e) in pre_unit(ring, &x.f, &y.f.cols, &offs_m, r, c, l) {
            v[k] = fld.add(&v[k], &e);
        }
        for (k, e) in post_unit(ring, &y.f, &x.f.rows, &offs_p, r, c, l) {
            v[len_m + k] = fld.add(&v[len_m + k], &e);
        }
        if v.iter().any(|e| !fld.is_zero(e)) {
            homotopies.push(v);
        }
    }
    ChainMaps {
        ambient,
        split: len_m,
        basis,
        homotopies,
    }
}

/// Reduced echelon basis of `span(space)` modulo `sub`.
pub(crate) fn quotient_basis<F: Field>(f: &F, sub: &Subspace<F::Elem>, space: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let reduced: Vec<Vec<F::Elem>> = space
        .iter()
        .map(|v| sub.reduce(f, v))
        .filter(|v| v.iter().any(|e| !f.is_zero(e)))
        .collect();
    Subspace::from_generators(f, sub.dim, reduced).rows
}

/// Ring over the default prime field, if the algebra's constants reduce.
pub fn prime_ring(algebra: &Arc<crate::algebra::Algebra>) -> Result<Ring<Gf>> {
    Ring::new(algebra.clone(), Gf::prime(DEFAULT_PRIME))
}

/// Reduces a rational complex modulo the default prime.
pub fn reduce_mod_p(ring: &Ring<Gf>, x: &TwoTermComplex<BigRational>) -> Result<TwoTermComplex<crate::field::GfElem>> {
    if let Some(q) = x.f.entries.iter().flatten().find(|q| ring.field().from_rational(q).is_none()) {
        return Err(Error::Field(format!("{q} has no image modulo the prime")));
    }
    Ok(x.map(|q| ring.field().from_rational(q).expect("checked above")))
}

/// `Hom(X, ΣX) = 0` over the field of `ring`.
pub fn is_presilting_over<F: Field>(ring: &Ring<F>, x: &TwoTermComplex<F::Elem>) -> Result<bool> {
    Ok(hom_dim(ring, x, x, 1)? == 0)
}

/// `Hom(X, ΣX) = 0` over the rationals. Integral complexes are first tested
/// modulo a large prime; vanishing there already forces vanishing over `Q`.
pub fn is_presilting(ring: &Ring<Rationals>, x: &TwoTermComplex<BigRational>) -> Result<bool> {
    check(ring, &[x])?;
    if all_integral(&x.f.entries.concat()) {
        if let Ok(pr) = prime_ring(ring.algebra()) {
            if let Ok(xp) = reduce_mod_p(&pr, x) {
                if is_presilting_over(&pr, &xp)? {
                    return Ok(true);
                }
            }
        }
    }
    is_presilting_over(ring, x)
}

/// Outcome of sampling `e(g, g′)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EInvariant {
    pub value: usize,
    /// How many sampled pairs attained the minimum.
    pub attained: usize,
    pub trials: usize,
}

impl EInvariant {
    /// The minimum was seen at least twice.
    pub fn stable(&self) -> bool {
        self.attained >= 2 || self.trials == 1
    }
}

/// Minimum of `dim Hom(X_g, ΣX_{g′})` over random pairs.
pub fn e_invariant(ring: &Ring<Rationals>, g: &[i64], h: &[i64], trials: usize, range: i64, seed: u64) -> Result<EInvariant> {
    if trials == 0 {
        return Err(Error::Complex("at least one trial is required".into()));
    }
    let mut dims = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        let x = random_complex(ring, g, range, &mut rng)?;
        let y = random_complex(ring, h, range, &mut rng)?;
        dims.push(hom_dim(ring, &x, &y, 1)?);
    }
    let value = *dims.iter().min().expect("nonempty");
    Ok(EInvariant {
        value,
        attained: dims.iter().filter(|&&d| d == value).count(),
        trials,
    })
}
