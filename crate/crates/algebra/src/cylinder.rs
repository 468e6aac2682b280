//! The cylinder `cyl_{ΣH} U`: the extension of `U` by `d = dim Hom(U, ΣH)`
//! copies of `H` killing every map `U → ΣH`.

use crate::complex::{minimalize, TwoTermComplex};
use crate::error::Result;
use crate::field::Field;
use crate::hom::hom_complexes;
use crate::ring::{LMat, Ring};

/// Result of one cylinder step.
#[derive(Clone, Debug)]
pub struct Cylinder<E> {
    pub complex: TwoTermComplex<E>,
    /// `dim Hom(U, ΣH)`.
    pub d: usize,
}

/// Degree −1 part `U⁻¹ ⊕ (H⁻¹)^d`, degree 0 part `U⁰ ⊕ (H⁰)^d`, with
/// differential `[[d_U, 0], [F, diag d_H]]` where the rows of `F` are the
/// echelon representatives of `Hom(U, ΣH)`. For `d = 0` this is `U`.
pub fn cylinder<F: Field>(ring: &Ring<F>, u: &TwoTermComplex<F::Elem>, h: &TwoTermComplex<F::Elem>) -> Result<Cylinder<F::Elem>> {
    let hs = hom_complexes(ring, u, h, 1)?;
    let d = hs.quotient_dim;
    if d == 0 {
        return Ok(Cylinder { complex: u.clone(), d });
    }
    let hm = h.minus();
    let hp = h.plus();
    let mut big_hm = Vec::new();
    let mut big_hp = Vec::new();
    for _ in 0..d {
        big_hm.extend_from_slice(hm);
        big_hp.extend_from_slice(hp);
    }
    let mut corner = ring.zero_mat(big_hp.clone(), u.minus().to_vec());
    for (k, rep) in hs.representatives.iter().enumerate() {
        let fk = ring.unflatten(hp, u.minus(), rep);
        for r in 0..hp.len() {
            for c in 0..u.minus().len() {
                *corner.entry_mut(k * hp.len() + r, c) = fk.entry(r, c).to_vec();
            }
        }
    }
    let mut diag = ring.zero_mat(big_hp, big_hm);
    for k in 0..d {
        for r in 0..hp.len() {
            for c in 0..hm.len() {
                *diag.entry_mut(k * hp.len() + r, k * hm.len() + c) = h.f.entry(r, c).to_vec();
            }
        }
    }
    let top_right = ring.zero_mat(u.plus().to_vec(), diag.cols.clone());
    let f = LMat::blocks(&u.f, &top_right, &corner, &diag);
    Ok(Cylinder {
        complex: TwoTermComplex::new(u.n, f)?,
        d,
    })
}

/// `cyl^m`, minimalized after every step. Returns the iterates
/// `cyl^1, …, cyl^m` with their `d` values.
pub fn cylinder_iterates<F: Field>(
    ring: &Ring<F>,
    u: &TwoTermComplex<F::Elem>,
    h: &TwoTermComplex<F::Elem>,
    m: usize,
) -> Result<Vec<Cylinder<F::Elem>>> {
    let mut cur = minimalize(ring, u);
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let step = cylinder(ring, &cur, h)?;
        cur = minimalize(ring, &step.complex);
        out.push(Cylinder {
            complex: cur.clone(),
            d: step.d,
        });
    }
    Ok(out)
}
