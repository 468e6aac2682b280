use std::sync::Arc;
use std::time::Instant;

use gvfan_algebra::complex::{is_minimal, projective, regular, shifted_regular};
use gvfan_algebra::hom::{prime_ring, reduce_mod_p};
use gvfan_algebra::*;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn kronecker() -> Ring<Rationals> {
    Ring::new(Arc::new(Algebra::new(AlgebraPresentation::kronecker()).unwrap()), Rationals).unwrap()
}

fn band(ring: &Ring<Rationals>, x: i64, y: i64) -> TwoTermComplex<Q> {
    let (s, t, e) = ring.element(&[(x, &["a"]), (y, &["b"])]).unwrap();
    let mut f = ring.zero_mat(vec![t], vec![s]);
    *f.entry_mut(0, 0) = e;
    TwoTermComplex::new(2, f).unwrap()
}

fn det(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

#[test]
fn single_cylinder_step() {
    let ring = kronecker();
    let u = shifted_regular(&ring);
    let h = band(&ring, 1, 1);
    assert_eq!(hom_dim(&ring, &u, &h, 1).unwrap(), 2);
    let c = cylinder(&ring, &u, &h).unwrap();
    assert_eq!(c.d, 2);
    assert_eq!(c.complex.g_vector(), vec![-3, 1]);
    let m = minimalize(&ring, &c.complex);
    assert_eq!(m.g_vector(), vec![-3, 1]);
    assert_eq!((m.m_minus(), m.m_plus()), (vec![3, 0], vec![0, 1]));
    assert!(is_presilting(&ring, &m).unwrap());
}

#[test]
fn cylinder_without_maps_is_the_identity() {
    let ring = kronecker();
    let u = projective(&ring, &[1]);
    let h = band(&ring, 1, 2);
    let c = cylinder(&ring, &u, &h).unwrap();
    assert_eq!(c.d, 0);
    assert_eq!(c.complex, u);
}

#[test]
fn cylinder_iterates_follow_the_law() {
    let ring = kronecker();
    let u = shifted_regular(&ring);
    let h = band(&ring, 1, 1);
    let its = cylinder_iterates(&ring, &u, &h, 10).unwrap();
    for (k, c) in its.iter().enumerate() {
        let m = k as i64 + 1;
        assert_eq!(c.d, 2);
        assert_eq!(c.complex.g_vector(), vec![-1 - 2 * m, 2 * m - 1]);
        assert_eq!(c.complex.m_minus(), vec![(2 * m + 1) as usize, 0]);
        assert_eq!(c.complex.m_plus(), vec![0, (2 * m - 1) as usize]);
        assert!(is_minimal(&ring, &c.complex));
        assert!(is_presilting(&ring, &c.complex).unwrap(), "m = {m}");
    }
}

#[test]
fn cylinders_split_into_adjacent_rigid_summands() {
    let ring = kronecker();
    let pr = prime_ring(ring.algebra()).unwrap();
    let its = cylinder_iterates(&ring, &shifted_regular(&ring), &band(&ring, 1, 1), 10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (k, c) in its.iter().enumerate() {
        let m = k as i64 + 1;
        let parts = decompose(&pr, &reduce_mod_p(&pr, &c.complex).unwrap(), &mut rng).unwrap();
        let gs: Vec<Vec<i64>> = parts.iter().map(|s| s.g_vector()).collect();
        assert_eq!(gs, vec![vec![-m - 1, m], vec![-m, m - 1]], "m = {m}");
        assert_eq!(det(&gs[0], &gs[1]).abs(), 1);
        for s in &parts {
            assert!(s.local);
            assert_eq!(classify_summand(ring.algebra(), s).unwrap(), SummandKind::Presilting);
        }
    }
}

#[test]
fn cylinder_g_vectors_approach_the_limit_ray() {
    let ring = kronecker();
    let start = Instant::now();
    let its = cylinder_iterates(&ring, &shifted_regular(&ring), &band(&ring, 1, 1), 100).unwrap();
    let g = its.last().unwrap().complex.g_vector();
    assert_eq!(g, vec![-201, 199]);
    let norm = ((g[0] * g[0] + g[1] * g[1]) as f64).sqrt();
    let target = std::f64::consts::FRAC_1_SQRT_2;
    let dist = ((g[0] as f64 / norm + target).powi(2) + (g[1] as f64 / norm - target).powi(2)).sqrt();
    assert!(dist < 1e-2, "{dist}");
    eprintln!("100 cylinder steps in {:?}", start.elapsed());
}

#[test]
fn rigidity_propagates_through_cylinders() {
    // U presilting, Hom(H, ΣU) = 0, then cyl(U, H) is presilting
    let ring = kronecker();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let us = [
        shifted_regular(&ring),
        projective(&ring, &[0]),
        TwoTermComplex::new(2, ring.zero_mat(vec![], vec![0])).unwrap(),
        TwoTermComplex::new(2, ring.zero_mat(vec![], vec![1])).unwrap(),
        random_complex(&ring, &[-1, 2], 5, &mut rng).unwrap(),
        random_complex(&ring, &[-2, 3], 5, &mut rng).unwrap(),
    ];
    let mut checked = 0;
    for u in &us {
        assert!(is_presilting(&ring, u).unwrap());
        for (x, y) in [(1, 0), (0, 1), (1, 1), (2, -3)] {
            let h = band(&ring, x, y);
            if hom_dim(&ring, &h, u, 1).unwrap() != 0 {
                continue;
            }
            let c = cylinder(&ring, u, &h).unwrap();
            assert_eq!(
                c.complex.g_vector(),
                u.g_vector().iter().zip(h.g_vector()).map(|(a, b)| a + c.d as i64 * b).collect::<Vec<_>>()
            );
            assert!(is_presilting(&ring, &c.complex).unwrap());
            checked += 1;
        }
    }
    assert!(checked >= 8, "{checked}");
}

#[test]
fn cylinders_commute_for_distinct_bands() {
    let ring = kronecker();
    let pr = prime_ring(ring.algebra()).unwrap();
    let u = shifted_regular(&ring);
    let h1 = band(&ring, 1, 1);
    let h2 = band(&ring, 1, -2);
    let a = cylinder(&ring, &cylinder(&ring, &u, &h1).unwrap().complex, &h2).unwrap().complex;
    let b = cylinder(&ring, &cylinder(&ring, &u, &h2).unwrap().complex, &h1).unwrap().complex;
    assert_eq!(a.g_vector(), b.g_vector());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let da: Vec<_> = decompose(&pr, &reduce_mod_p(&pr, &a).unwrap(), &mut rng).unwrap().iter().map(|s| s.g_vector()).collect();
    let db: Vec<_> = decompose(&pr, &reduce_mod_p(&pr, &b).unwrap(), &mut rng).unwrap().iter().map(|s| s.g_vector()).collect();
    assert_eq!(da, db);
}

#[test]
fn decomposition_examples() {
    let ring = kronecker();
    let pr = prime_ring(ring.algebra()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let parts = decompose(&pr, &reduce_mod_p(&pr, &regular(&ring)).unwrap(), &mut rng).unwrap();
    let gs: Vec<_> = parts.iter().map(|s| s.g_vector()).collect();
    assert_eq!(gs, vec![vec![0, 1], vec![1, 0]]);
    // a band is a brick
    let parts = decompose(&pr, &reduce_mod_p(&pr, &band(&ring, 3, -1)).unwrap(), &mut rng).unwrap();
    assert_eq!(parts.len(), 1);
    assert!(parts[0].local);
    assert_eq!(classify_summand(ring.algebra(), &parts[0]).unwrap(), SummandKind::Band);
}

#[test]
fn sum_law_holds_for_random_complexes() {
    let ring = kronecker();
    let pr = prime_ring(ring.algebra()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for g in [[-3, 1], [-2, 2], [-3, 4], [2, -1], [-1, 3], [3, 3], [-4, 4]] {
        for _ in 0..3 {
            let x = random_complex(&ring, &g, 100, &mut rng).unwrap();
            let parts = decompose(&pr, &reduce_mod_p(&pr, &x).unwrap(), &mut rng).unwrap();
            let mut sum = vec![0, 0];
            for s in &parts {
                assert!(s.local, "{g:?}");
                for (a, b) in sum.iter_mut().zip(s.g_vector()) {
                    *a += b;
                }
            }
            assert_eq!(sum, g.to_vec());
        }
    }
}

#[test]
fn generic_decomposition_examples() {
    let ring = kronecker();
    let band_pair = generic_decomposition(&ring, &[-2, 2], 5, 100, 7).unwrap();
    assert_eq!(
        band_pair,
        GenericDecomposition::Stable {
            summands: vec![GenericSummand {
                g: vec![-1, 1],
                multiplicity: 2,
                kind: SummandKind::Band
            }]
        }
    );
    let split = generic_decomposition(&ring, &[1, 1], 3, 100, 7).unwrap();
    assert_eq!(
        split,
        GenericDecomposition::Stable {
            summands: vec![
                GenericSummand {
                    g: vec![0, 1],
                    multiplicity: 1,
                    kind: SummandKind::Presilting
                },
                GenericSummand {
                    g: vec![1, 0],
                    multiplicity: 1,
                    kind: SummandKind::Presilting
                },
            ]
        }
    );
    let rigid = generic_decomposition(&ring, &[-1, 2], 3, 100, 7).unwrap();
    assert_eq!(
        rigid,
        GenericDecomposition::Stable {
            summands: vec![GenericSummand {
                g: vec![-1, 2],
                multiplicity: 1,
                kind: SummandKind::Presilting
            }]
        }
    );
    // two generic bands do not extend each other
    assert_eq!(e_invariant(&ring, &[-1, 1], &[-1, 1], 4, 100, 3).unwrap().value, 0);
}

#[test]
fn bands_with_conjugate_parameters_split_after_extension() {
    // P₀² → P₁² by a·1 + b·J with J² = −1, whose eigenvalues are not in the prime field
    let ring = kronecker();
    let pr = prime_ring(ring.algebra()).unwrap();
    let mut f = ring.zero_mat(vec![1, 1], vec![0, 0]);
    *f.entry_mut(0, 0) = ring.element(&[(1, &["a"])]).unwrap().2;
    *f.entry_mut(1, 1) = ring.element(&[(1, &["a"])]).unwrap().2;
    *f.entry_mut(0, 1) = ring.element(&[(-1, &["b"])]).unwrap().2;
    *f.entry_mut(1, 0) = ring.element(&[(1, &["b"])]).unwrap().2;
    let x = TwoTermComplex::new(2, f).unwrap();
    let parts = decompose(&pr, &reduce_mod_p(&pr, &x).unwrap(), &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
    assert_eq!(parts.len(), 2);
    for s in &parts {
        assert_eq!(s.g_vector(), vec![-1, 1]);
        assert_eq!(s.field.degree(), 2);
        assert_eq!(classify_summand(ring.algebra(), s).unwrap(), SummandKind::Band);
    }
}
