use std::sync::Arc;

use gvfan_algebra::complex::{projective, regular, shifted_regular};
use gvfan_algebra::*;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn kronecker() -> Ring<Rationals> {
    Ring::new(Arc::new(Algebra::new(AlgebraPresentation::kronecker()).unwrap()), Rationals).unwrap()
}

/// `P₀ → P₁` given by `x·a + y·b`.
fn band(ring: &Ring<Rationals>, x: i64, y: i64) -> TwoTermComplex<Q> {
    let (s, t, e) = ring.element(&[(x, &["a"]), (y, &["b"])]).unwrap();
    let mut f = ring.zero_mat(vec![t], vec![s]);
    *f.entry_mut(0, 0) = e;
    TwoTermComplex::new(2, f).unwrap()
}

/// `P₀ → P₁²` given by `(a, b)ᵀ`.
fn preprojective(ring: &Ring<Rationals>) -> TwoTermComplex<Q> {
    let mut f = ring.zero_mat(vec![1, 1], vec![0]);
    *f.entry_mut(0, 0) = ring.element(&[(1, &["a"])]).unwrap().2;
    *f.entry_mut(1, 0) = ring.element(&[(1, &["b"])]).unwrap().2;
    TwoTermComplex::new(2, f).unwrap()
}

#[test]
fn band_self_extension_is_one_dimensional() {
    let ring = kronecker();
    let h = band(&ring, 1, 0);
    let hs = hom_complexes(&ring, &h, &h, 1).unwrap();
    assert_eq!(hs.ambient_dim, 2);
    assert_eq!(hs.homotopy.rank(), 1);
    assert_eq!(hs.quotient_dim, 1);
    for lambda in [-3, 0, 2, 7] {
        let h = band(&ring, 1, lambda);
        assert_eq!(hom_dim(&ring, &h, &h, 1).unwrap(), 1);
        assert!(!is_presilting(&ring, &h).unwrap());
    }
}

#[test]
fn distinct_bands_are_orthogonal() {
    let ring = kronecker();
    for (l, m) in [(0, 1), (2, -5), (3, 4)] {
        let hl = band(&ring, 1, l);
        let hm = band(&ring, 1, m);
        assert_eq!(hom_dim(&ring, &hl, &hm, 1).unwrap(), 0);
        assert_eq!(hom_dim(&ring, &hm, &hl, 1).unwrap(), 0);
    }
    // a·x + b·y with (x : y) = (0 : 1) is the band at infinity
    assert_eq!(hom_dim(&ring, &band(&ring, 0, 1), &band(&ring, 1, 0), 1).unwrap(), 0);
}

#[test]
fn projective_endomorphisms() {
    let ring = kronecker();
    let p = projective(&ring, &[0]);
    assert_eq!(hom_complexes(&ring, &p, &p, 0).unwrap().quotient_dim, 1);
    assert!(is_presilting(&ring, &p).unwrap());
    let lam = regular(&ring);
    assert_eq!(hom_complexes(&ring, &lam, &lam, 0).unwrap().quotient_dim, 4);
    // Hom(P₁, ΣP₀) needs maps P₀ → P₁ in the wrong direction
    let p1 = projective(&ring, &[1]);
    let sp0 = TwoTermComplex::new(2, ring.zero_mat(vec![], vec![0])).unwrap();
    assert_eq!(hom_dim(&ring, &p1, &sp0, 1).unwrap(), 0);
}

#[test]
fn band_endomorphisms_are_scalars() {
    let ring = kronecker();
    let h = band(&ring, 2, 3);
    let hs = hom_complexes(&ring, &h, &h, 0).unwrap();
    assert_eq!(hs.quotient_dim, 1);
    assert_eq!(hs.chain_dim, 1);
}

#[test]
fn preprojective_presentation_is_presilting() {
    let ring = kronecker();
    let x = preprojective(&ring);
    assert_eq!(x.g_vector(), vec![-1, 2]);
    assert!(is_presilting(&ring, &x).unwrap());
    assert!(is_presilting_over(&ring, &x).unwrap());
}

#[test]
fn g_vector_examples() {
    let ring = kronecker();
    assert_eq!(band(&ring, 1, 1).g_vector(), vec![-1, 1]);
    assert_eq!(regular(&ring).g_vector(), vec![1, 1]);
    assert_eq!(shifted_regular(&ring).g_vector(), vec![-1, -1]);
}

#[test]
fn random_complex_shapes() {
    let ring = kronecker();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let x = random_complex(&ring, &[1, 0], 100, &mut rng).unwrap();
    assert_eq!(x, projective(&ring, &[0]));
    let y = random_complex(&ring, &[-1, 1], 100, &mut rng).unwrap();
    assert_eq!((y.minus(), y.plus()), (&[0][..], &[1][..]));
    assert_eq!(y.f.entry(0, 0).len(), 2);
    assert!(random_complex(&ring, &[0, 0], 100, &mut rng).unwrap().is_empty());
    // reproducible from the seed
    let a = random_complex(&ring, &[-2, 3], 100, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
    let b = random_complex(&ring, &[-2, 3], 100, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn e_invariant_examples() {
    let ring = kronecker();
    let e = e_invariant(&ring, &[-1, 1], &[-1, 1], 5, 100, 1).unwrap();
    assert_eq!(e.value, 0);
    assert!(e.stable());
    assert_eq!(e_invariant(&ring, &[1, 0], &[0, 1], 3, 100, 1).unwrap().value, 0);
    assert_eq!(e_invariant(&ring, &[0, 1], &[-1, 0], 3, 100, 1).unwrap().value, 0);
}

#[test]
fn hom_dims_do_not_depend_on_the_path_basis() {
    // the same Kronecker quiver with arrows listed in the other order
    let swapped = AlgebraPresentation {
        arrows: AlgebraPresentation::kronecker().arrows.into_iter().rev().collect(),
        ..AlgebraPresentation::kronecker()
    };
    let r1 = kronecker();
    let r2 = Ring::new(Arc::new(Algebra::new(swapped).unwrap()), Rationals).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let (x1, x2, y1, y2) = {
            let mut pair = |g: &[i64]| {
                let (minus, plus) = complex::split_g(g);
                let (rows, cols) = (complex::expand(&plus), complex::expand(&minus));
                let mut f1 = r1.zero_mat(rows.clone(), cols.clone());
                let mut f2 = r2.zero_mat(rows.clone(), cols.clone());
                for r in 0..rows.len() {
                    for c in 0..cols.len() {
                        let (x, y) = (rand::Rng::gen_range(&mut rng, -3..=3), rand::Rng::gen_range(&mut rng, -3..=3));
                        *f1.entry_mut(r, c) = r1.element(&[(x, &["a"]), (y, &["b"])]).unwrap().2;
                        *f2.entry_mut(r, c) = r2.element(&[(x, &["a"]), (y, &["b"])]).unwrap().2;
                    }
                }
                (TwoTermComplex::new(2, f1).unwrap(), TwoTermComplex::new(2, f2).unwrap())
            };
            let (x1, x2) = pair(&[-2, 3]);
            let (y1, y2) = pair(&[-1, 1]);
            (x1, x2, y1, y2)
        };
        assert_ne!(x1.f, x2.f);
        for shift in [0, 1] {
            assert_eq!(hom_dim(&r1, &x1, &y1, shift).unwrap(), hom_dim(&r2, &x2, &y2, shift).unwrap());
            assert_eq!(hom_dim(&r1, &y1, &x1, shift).unwrap(), hom_dim(&r2, &y2, &x2, shift).unwrap());
        }
    }
}

#[test]
fn mismatched_algebras_are_rejected() {
    let ring = kronecker();
    let a3 = Ring::new(Arc::new(Algebra::new(AlgebraPresentation::linear_a(3)).unwrap()), Rationals).unwrap();
    let x = regular(&a3);
    assert_eq!(hom_dim(&ring, &x, &x, 1), Err(Error::AlgebraMismatch));
}

#[test]
fn hom_with_relations() {
    // 0 → 1 → 2 with the composite zero
    let pres = AlgebraPresentation::parse(
        r#"{"vertices":3,"arrows":[{"name":"x","source":0,"target":1},{"name":"y","source":1,"target":2}],
            "relations":[[{"coefficient":1,"path":["y","x"]}]],"nilpotency_bound":2}"#,
    )
    .unwrap();
    let ring = Ring::new(Arc::new(Algebra::new(pres).unwrap()), Rationals).unwrap();
    assert_eq!(ring.algebra().dim(), 5);
    assert!(ring.element(&[(1, &["y", "x"])]).unwrap().2.is_empty());
    let mut f = ring.zero_mat(vec![2], vec![1]);
    *f.entry_mut(0, 0) = ring.element(&[(1, &["y"])]).unwrap().2;
    let s = TwoTermComplex::new(3, f).unwrap();
    assert_eq!(s.g_vector(), vec![0, -1, 1]);
    assert!(is_presilting(&ring, &s).unwrap());
}
