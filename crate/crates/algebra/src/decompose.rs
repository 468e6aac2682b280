//! Krull–Schmidt decomposition in the homotopy category over finite fields,
//! and sampled generic decompositions of g-vectors.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{minimalize, random_complex, TwoTermComplex};
use crate::error::{Error, Result};
use crate::field::{Field, Gf, GfElem, Rationals, MAX_EXT};
use crate::hom::{chain_maps, hom_dim, prime_ring, reduce_mod_p};
use crate::linalg::{inverse, kernel, rref, Mat, Subspace};
use crate::poly::{crt_idempotent, degree, split, Poly, Split};
use crate::ring::{LMat, Ring};

/// Random endomorphisms tried before giving up on a split.
pub const SPLIT_TRIALS: usize = 24;

/// An indecomposable summand (or a candidate).
#[derive(Clone, Debug)]
pub struct Summand {
    pub complex: TwoTermComplex<GfElem>,
    /// Field the summand is written over; an extension of the input field
    /// when eigenvalues required one.
    pub field: Gf,
    /// `End` was verified local. When false the splitter ran out of trials
    /// and the summand is only possibly indecomposable.
    pub local: bool,
}

impl Summand {
    pub fn g_vector(&self) -> Vec<i64> {
        self.complex.g_vector()
    }

    pub fn ring(&self, algebra: &Arc<crate::algebra::Algebra>) -> Result<Ring<Gf>> {
        Ring::new(algebra.clone(), self.field.clone())
    }
}

/// `End(X)` in the homotopy category, for `X` minimal.
struct EndAlgebra<'a> {
    ring: &'a Ring<Gf>,
    x: &'a TwoTermComplex<GfElem>,
    split: usize,
    homotopy: Subspace<GfElem>,
    /// Chain maps whose classes form a basis, echelon with `pivots`.
    basis: Vec<Vec<GfElem>>,
    pivots: Vec<usize>,
}

impl<'a> EndAlgebra<'a> {
    fn new(ring: &'a Ring<Gf>, x: &'a TwoTermComplex<GfElem>) -> Self {
        let f = ring.field();
        let cm = chain_maps(ring, x, x);
        let homotopy = Subspace::from_generators(f, cm.ambient, cm.homotopies);
        let reduced: Vec<_> = cm.basis.iter().map(|v| homotopy.reduce(f, v)).collect();
        let reps = Subspace::from_generators(f, cm.ambient, reduced);
        EndAlgebra {
            ring,
            x,
            split: cm.split,
            homotopy,
            basis: reps.rows,
            pivots: reps.pivots,
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn field(&self) -> &Gf {
        self.ring.field()
    }

    fn parts(&self, v: &[GfElem]) -> (LMat<GfElem>, LMat<GfElem>) {
        let (m, p) = (self.x.minus(), self.x.plus());
        (self.ring.unflatten(m, m, &v[..self.split]), self.ring.unflatten(p, p, &v[self.split..]))
    }

    fn compose(&self, a: &[GfElem], b: &[GfElem]) -> Vec<GfElem> {
        let (am, ap) = self.parts(a);
        let (bm, bp) = self.parts(b);
        let mut out = self.ring.flatten(&self.ring.matmul(&am, &bm));
        out.extend(self.ring.flatten(&self.ring.matmul(&ap, &bp)));
        out
    }

    fn identity(&self) -> Vec<GfElem> {
        let mut out = self.ring.flatten(&self.ring.identity(self.x.minus().to_vec()));
        out.extend(self.ring.flatten(&self.ring.identity(self.x.plus().to_vec())));
        out
    }

    fn lin(&self, terms: &[(GfElem, &[GfElem])]) -> Vec<GfElem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.homotopy.dim];
        for (c, v) in terms {
            for (o, e) in out.iter_mut().zip(v.iter()) {
                f.add_mul(o, c, e);
            }
        }
        out
    }

    /// Coordinates of the class of a chain map.
    fn coords(&self, v: &[GfElem]) -> Vec<GfElem> {
        let r = self.homotopy.reduce(self.field(), v);
        self.pivots.iter().map(|&p| r[p]).collect()
    }

    fn from_coords(&self, c: &[GfElem]) -> Vec<GfElem> {
        let terms: Vec<(GfElem, &[GfElem])> = c.iter().zip(&self.basis).map(|(a, b)| (*a, b.as_slice())).collect();
        self.lin(&terms)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<GfElem> {
        let c: Vec<GfElem> = (0..self.dim()).map(|_| self.field().random(rng)).collect();
        self.from_coords(&c)
    }

    /// Monic minimal polynomial of the class of `phi`.
    fn min_poly(&self, phi: &[GfElem]) -> Poly<GfElem> {
        let f = self.field();
        let mut power = self.identity();
        let mut cols: Vec<Vec<GfElem>> = Vec::new();
        loop {
            cols.push(self.coords(&power));
            let k = cols.len();
            let mut m = Mat::filled(self.dim(), k, f.zero());
            for (j, c) in cols.iter().enumerate() {
                for (i, e) in c.iter().enumerate() {
                    m.set(i, j, *e);
                }
            }
            let ker = if self.dim() == 0 { vec![vec![f.one()]] } else { kernel(f, &m) };
            if let Some(v) = ker.into_iter().next() {
                return v;
            }
            power = self.compose(phi, &power);
        }
    }

    fn eval(&self, p: &Poly<GfElem>, phi: &[GfElem]) -> Vec<GfElem> {
        let f = self.field();
        let id = self.identity();
        let mut acc = vec![f.zero(); id.len()];
        for c in p.iter().rev() {
            acc = self.compose(&acc, phi);
            acc = self.lin(&[(f.one(), &acc), (*c, &id)]);
        }
        acc
    }

    /// Lifts a chain map that is idempotent up to homotopy to an exact
    /// idempotent chain map.
    fn lift_idempotent(&self, mut e: Vec<GfElem>) -> Result<Vec<GfElem>> {
        let f = self.field();
        for _ in 0..64 {
            let e2 = self.compose(&e, &e);
            if e2 == e {
                return Ok(e);
            }
            let e3 = self.compose(&e2, &e);
            e = self.lin(&[(f.from_int(3), &e2), (f.from_int(-2), &e3)]);
        }
        Err(Error::Complex("idempotent lifting did not converge".into()))
    }

    /// `End` is local: every basis class has a single eigenvalue and the
    /// differences span a nilpotent two-sided ideal of codimension one.
    fn is_local<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        let f = self.field();
        let r = self.dim();
        if r == 0 {
            return false;
        }
        let id = self.identity();
        let mut gens = Vec::with_capacity(r);
        for b in &self.basis {
            let mp = self.min_poly(b);
            let Split::Primary(root, _) = split(f, &mp, rng) else {
                return false;
            };
            if degree(&root) != Some(1) {
                return false;
            }
            let lambda = f.neg(&root[0]);
            gens.push(self.coords(&self.lin(&[(f.one(), b), (f.neg(&lambda), &id)])));
        }
        let nil = Subspace::from_generators(f, r, gens);
        if nil.rank() + 1 != r {
            return false;
        }
        let nil_maps: Vec<Vec<GfElem>> = nil.rows.iter().map(|c| self.from_coords(c)).collect();
        for b in &self.basis {
            for n in &nil_maps {
                if !nil.contains(f, &self.coords(&self.compose(b, n))) || !nil.contains(f, &self.coords(&self.compose(n, b))) {
                    return false;
                }
            }
        }
        let mut power = nil_maps.clone();
        let mut rank = nil.rank();
        while rank > 0 {
            let mut prods = Vec::new();
            for n in &nil_maps {
                for m in &power {
                    prods.push(self.coords(&self.compose(n, m)));
                }
            }
            let next = Subspace::from_generators(f, r, prods);
            if next.rank() >= rank {
                return false;
            }
            rank = next.rank();
            power = next.rows.iter().map(|c| self.from_coords(c)).collect();
        }
        true
    }
}

/// Image of an idempotent `e` on `⊕ P_vs`: the summand's vertices and maps
/// `α: im → X`, `β: X → im` with `βα = 1`, `αβ = e`.
fn split_projective(ring: &Ring<Gf>, vs: &[usize], e: &LMat<GfElem>) -> Result<(Vec<usize>, LMat<GfElem>, LMat<GfElem>)> {
    let f = ring.field();
    let mut image = Vec::new();
    // (position in vs, column of C, value) and (row of R, position, value)
    let mut c_terms = Vec::new();
    let mut r_terms = Vec::new();
    for v in 0..ring.vertices() {
        let idx: Vec<usize> = (0..vs.len()).filter(|&i| vs[i] == v).collect();
        if idx.is_empty() {
            continue;
        }
        let k = idx.len();
        let mut res = Mat::filled(k, k, f.zero());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                res.set(a, b, e.entry(i, j)[0]);
            }
        }
        let cols = rref(f, &mut res.clone());
        if cols.is_empty() {
            continue;
        }
        let c = Mat::from_rows(cols.len(), (0..k).map(|a| cols.iter().map(|&b| *res.get(a, b)).collect()).collect());
        let rows = rref(f, &mut c.transpose());
        let sub = Mat::from_rows(cols.len(), rows.iter().map(|&a| c.row(a).to_vec()).collect());
        let inv = inverse(f, &sub).ok_or_else(|| Error::Complex("residue splitting failed".into()))?;
        let base = image.len();
        for (j, _) in cols.iter().enumerate() {
            image.push(v);
            for a in 0..k {
                c_terms.push((idx[a], base + j, *c.get(a, j)));
            }
            for (t, &a) in rows.iter().enumerate() {
                r_terms.push((base + j, idx[a], *inv.get(j, t)));
            }
        }
    }
    let mut cm = ring.zero_mat(vs.to_vec(), image.clone());
    for (i, j, x) in c_terms {
        cm.entry_mut(i, j)[0] = x;
    }
    let mut rm = ring.zero_mat(image.clone(), vs.to_vec());
    for (i, j, x) in r_terms {
        rm.entry_mut(i, j)[0] = x;
    }
    let alpha = ring.matmul(e, &cm);
    let m = ring.matmul(&rm, &alpha);
    // m = 1 − n with n nilpotent
    let id = ring.identity(image.clone());
    let n = ring.sub(&id, &m);
    let mut minv = id.clone();
    let mut power = id;
    loop {
        power = ring.matmul(&n, &power);
        if ring.is_zero_mat(&power) {
            break;
        }
        minv = ring.add(&minv, &power);
    }
    let beta = ring.matmul(&ring.matmul(&minv, &rm), e);
    Ok((image, alpha, beta))
}

fn image_complex(ring: &Ring<Gf>, x: &TwoTermComplex<GfElem>, e: &[GfElem], split: usize) -> Result<TwoTermComplex<GfElem>> {
    let (m, p) = (x.minus(), x.plus());
    let em = ring.unflatten(m, m, &e[..split]);
    let ep = ring.unflatten(p, p, &e[split..]);
    let (_, alpha_m, _) = split_projective(ring, m, &em)?;
    let (_, _, beta_p) = split_projective(ring, p, &ep)?;
    let d = ring.matmul(&ring.matmul(&beta_p, &x.f), &alpha_m);
    TwoTermComplex::new(x.n, d)
}

/// Splits `x` into indecomposable summands up to homotopy.
pub fn decompose<R: Rng + ?Sized>(ring: &Ring<Gf>, x: &TwoTermComplex<GfElem>, rng: &mut R) -> Result<Vec<Summand>> {
    let mut out = Vec::new();
    decompose_into(ring, x, rng, &mut out)?;
    out.sort_by(|a, b| a.g_vector().cmp(&b.g_vector()));
    Ok(out)
}

fn decompose_into<R: Rng + ?Sized>(ring: &Ring<Gf>, x: &TwoTermComplex<GfElem>, rng: &mut R, out: &mut Vec<Summand>) -> Result<()> {
    let x = minimalize(ring, x);
    if x.is_empty() {
        return Ok(());
    }
    let end = EndAlgebra::new(ring, &x);
    let f = ring.field();
    let mut local_checked = false;
    for _ in 0..SPLIT_TRIALS {
        let phi = end.random(rng);
        let mp = end.min_poly(&phi);
        match split(f, &mp, rng) {
            Split::Coprime(a, b) => {
                let e0 = end.eval(&crt_idempotent(f, &a, &b), &phi);
                let e = end.lift_idempotent(e0)?;
                let id = end.identity();
                let comp = end.lin(&[(f.one(), &id), (f.from_int(-1), &e)]);
                let first = image_complex(ring, &x, &e, end.split)?;
                let second = image_complex(ring, &x, &comp, end.split)?;
                decompose_into(ring, &first, rng, out)?;
                return decompose_into(ring, &second, rng, out);
            }
            Split::Primary(r, _) => {
                let dr = degree(&r).unwrap_or(0);
                if dr > 1 {
                    if f.degree() == 1 && dr <= MAX_EXT {
                        let modulus: Vec<u64> = r.iter().map(|c| c[0]).collect();
                        let ext = Ring::new(ring.algebra().clone(), Gf::extension(f.characteristic(), modulus))?;
                        return decompose_into(&ext, &x, rng, out);
                    }
                    continue;
                }
                if !local_checked {
                    local_checked = true;
                    if end.is_local(rng) {
                        out.push(Summand {
                            complex: x.clone(),
                            field: f.clone(),
                            local: true,
                        });
                        return Ok(());
                    }
                }
            }
        }
    }
    out.push(Summand {
        complex: x.clone(),
        field: f.clone(),
        local: false,
    });
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SummandKind {
    Presilting,
    Band,
    Other,
}

/// Presilting if `Hom(S, ΣS) = 0`; band if `End(S)` is local with
/// one-dimensional residue field and `dim Hom(S, ΣS) = 1`.
pub fn classify_summand(algebra: &Arc<crate::algebra::Algebra>, s: &Summand) -> Result<SummandKind> {
    let ring = s.ring(algebra)?;
    let ext = hom_dim(&ring, &s.complex, &s.complex, 1)?;
    Ok(if ext == 0 {
        SummandKind::Presilting
    } else if ext == 1 && s.local {
        SummandKind::Band
    } else {
        SummandKind::Other
    })
}

/// One summand class of a generic decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericSummand {
    pub g: Vec<i64>,
    pub multiplicity: usize,
    pub kind: SummandKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum GenericDecomposition {
    Stable { summands: Vec<GenericSummand> },
    Inconclusive { observed: Vec<Vec<GenericSummand>> },
}

/// Samples `trials` random presentations of `g` with integer coordinates in
/// `[−range, range]` and compares their decompositions.
pub fn generic_decomposition(ring: &Ring<Rationals>, g: &[i64], trials: usize, range: i64, seed: u64) -> Result<GenericDecomposition> {
    if trials < 2 {
        return Err(Error::Complex("generic decomposition needs at least two trials".into()));
    }
    let pr = prime_ring(ring.algebra())?;
    let mut observed: Vec<Vec<GenericSummand>> = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        let x = random_complex(ring, g, range, &mut rng)?;
        let xp = reduce_mod_p(&pr, &x)?;
        let parts = decompose(&pr, &xp, &mut rng)?;
        let mut classes: BTreeMap<(Vec<i64>, SummandKind), usize> = BTreeMap::new();
        for s in &parts {
            *classes.entry((s.g_vector(), classify_summand(ring.algebra(), s)?)).or_default() += 1;
        }
        observed.push(
            classes
                .into_iter()
                .map(|((g, kind), multiplicity)| GenericSummand { g, multiplicity, kind })
                .collect(),
        );
    }
    if observed.iter().all(|o| *o == observed[0]) {
        Ok(GenericDecomposition::Stable {
            summands: observed.swap_remove(0),
        })
    } else {
        Ok(GenericDecomposition::Inconclusive { observed })
    }
}
