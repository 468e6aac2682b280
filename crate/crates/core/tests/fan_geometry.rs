use gvfan_core::coverage::{rational_direction, sample_directions};
use gvfan_core::fan::{improper_intersection, supporting_normal};
use gvfan_core::*;
use num_rational::BigRational;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn cone(r: &[&[i64]]) -> SimplicialCone {
    SimplicialCone::new(r.iter().map(|x| x.to_vec()).collect()).unwrap()
}

fn fan_of(b: &ExchangeMatrix, depth: usize) -> Fan {
    fan_from_seeds(&enumerate_seeds(b, depth, 1_000_000).unwrap()).unwrap()
}

#[test]
fn normalize_examples() {
    assert_eq!(normalize_ray(&[2, -4]).unwrap(), vec![1, -2]);
    assert_eq!(normalize_ray(&[0, 7, 0]).unwrap(), vec![0, 1, 0]);
    assert_eq!(normalize_ray(&[-3, -6, 9]).unwrap(), vec![-1, -2, 3]);
    assert!(normalize_ray(&[0, 0]).is_err());
}

#[test]
fn cone_membership_examples() {
    let orthant = cone(&[&[1, 0], &[0, 1]]);
    assert!(orthant.contains(&[q(3), q(5)]).unwrap());
    assert!(!orthant.contains(&[q(-1), q(0)]).unwrap());
    assert!(cone(&[&[-1, 1], &[0, 1]]).contains(&[q(-1), q(2)]).unwrap());
    assert!(orthant.contains(&[q(1), q(2), q(3)]).is_err());
    // the integer tester agrees with the exact LP
    for p in [[3i64, 5], [-1, 0], [0, 4], [2, -1], [0, 0]] {
        let lp = orthant.contains(&[q(p[0]), q(p[1])]).unwrap();
        let fast = orthant.tester().unwrap().contains(&[p[0] as i128, p[1] as i128]);
        assert_eq!(lp, fast, "{p:?}");
    }
}

#[test]
fn a2_fan_is_the_pentagon() {
    let f = fan_of(&ExchangeMatrix::kronecker(1), 10);
    assert_eq!(f.cones().len(), 5);
    let mut rays = f.rays();
    rays.sort();
    assert_eq!(rays, vec![vec![-1, 0], vec![-1, 1], vec![0, -1], vec![0, 1], vec![1, 0]]);
    let v = fan_is_valid(&f, None);
    assert!(v.valid && v.exhaustive);
    for n in [7, 100, 1000, 4096] {
        assert_eq!(coverage(&f, n, Sampler::Grid).unwrap().covered, n);
        assert_eq!(coverage(&f, n, Sampler::Halton).unwrap().covered, n);
    }
    assert_eq!(halfspace_detect(&f), None);
}

#[test]
fn depth_zero_is_the_orthant() {
    let f = fan_of(&ExchangeMatrix::markov(), 0);
    assert_eq!(f.cones(), &[cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])]);
}

#[test]
fn k2_depth_three() {
    let f = fan_of(&ExchangeMatrix::kronecker(2), 3);
    assert_eq!(f.cones().len(), 7);
    let rays = f.rays();
    for r in [[1, 0], [0, 1], [-1, 2], [-2, 3], [-1, 0], [-2, 1], [0, -1]] {
        assert!(rays.contains(&r.to_vec()), "{r:?}");
    }
}

#[test]
fn validity_examples() {
    let bad = Fan::new(2, vec![cone(&[&[1, 0], &[0, 1]]), cone(&[&[1, 1], &[1, -1]])]).unwrap();
    let r = fan_is_valid(&bad, None);
    assert!(!r.valid);
    let w = improper_intersection(&bad.cones()[0], &bad.cones()[1]).unwrap();
    assert!(bad.cones()[0].contains(&w).unwrap() && bad.cones()[1].contains(&w).unwrap());
    let good = Fan::new(2, vec![cone(&[&[1, 0], &[0, 1]]), cone(&[&[0, 1], &[-1, 0]])]).unwrap();
    assert!(fan_is_valid(&good, None).valid);
    // a lower-dimensional cone inside a facet is a face only if it is spanned by shared rays
    let f = Fan::new(3, vec![cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), cone(&[&[1, 1, 0]])]).unwrap();
    assert!(!fan_is_valid(&f, None).valid);
}

#[test]
fn seed_fans_are_valid() {
    let cases = [
        (ExchangeMatrix::kronecker(2), 6),
        (ExchangeMatrix::kronecker(3), 6),
        (ExchangeMatrix::markov(), 5),
        (ExchangeMatrix::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap(), 12),
    ];
    for (b, d) in cases {
        let r = fan_is_valid(&fan_of(&b, d), None);
        assert!(r.valid, "{b:?} depth {d}: {:?}", r.violation);
        assert!(r.exhaustive);
    }
}

#[test]
fn sampled_pair_budget_is_respected() {
    let f = fan_of(&ExchangeMatrix::markov(), 5);
    let r = fan_is_valid(&f, Some(50));
    assert!(r.valid);
    assert_eq!(r.checked_pairs, 50);
    assert!(!r.exhaustive);
}

#[test]
fn coverage_grows_with_depth() {
    for (b, sampler) in [
        (ExchangeMatrix::kronecker(2), Sampler::Grid),
        (ExchangeMatrix::kronecker(3), Sampler::Grid),
        (ExchangeMatrix::markov(), Sampler::Fibonacci),
    ] {
        let mut last = 0.0;
        for d in 0..6 {
            let c = coverage(&fan_of(&b, d), 5_000, sampler).unwrap();
            assert!(c.fraction >= last, "{b:?} depth {d}");
            assert_eq!(c.fraction, c.covered as f64 / c.samples as f64);
            last = c.fraction;
        }
    }
}

#[test]
fn kronecker_rays_avoid_the_open_limit_cone() {
    // strictly inside iff x < 0 < y and x² + m·xy + y² < 0, the root cone of s² + ms + 1
    for m in 3..=6i64 {
        let f = fan_of(&ExchangeMatrix::kronecker(m), 10);
        for r in f.rays() {
            let (x, y) = (r[0] as i128, r[1] as i128);
            let inside = x < 0 && y > 0 && x * x + m as i128 * x * y + y * y < 0;
            assert!(!inside, "m={m} ray {r:?}");
        }
    }
}

#[test]
fn k3_coverage_approaches_the_gap() {
    let f = fan_of(&ExchangeMatrix::kronecker(3), 14);
    let disc = 5f64.sqrt();
    let (sp, sm) = ((-3.0 + disc) / 2.0, (-3.0 - disc) / 2.0);
    let a = (-sp).atan2(-1.0);
    let b = (-sm).atan2(-1.0);
    let theta = (a - b).abs();
    let expected = 1.0 - theta / (2.0 * std::f64::consts::PI);
    let c = coverage(&f, 100_000, Sampler::Grid).unwrap();
    assert!((c.fraction - expected).abs() < 0.01, "{} vs {expected}", c.fraction);
}

#[test]
fn markov_fan_sits_in_a_half_space() {
    let f = fan_of(&ExchangeMatrix::markov(), 6);
    let v = halfspace_detect(&f).unwrap();
    assert_eq!(v, vec![-1, -1, -1]);
    for r in f.rays() {
        assert!(r.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() <= 0);
    }
    let s = supporting_normal(&f.rays(), 3).unwrap();
    assert!(f.rays().iter().any(|r| r.iter().zip(&s).map(|(a, b)| a * b).sum::<i64>() == 0));
    let c = coverage(&f, 20_000, Sampler::Fibonacci).unwrap();
    assert!(c.fraction <= 0.52);
}

#[test]
fn rational_directions_keep_their_orthant() {
    for u in sample_directions(4, 500, Sampler::Halton).unwrap() {
        let p = rational_direction(&u);
        for (a, b) in u.iter().zip(&p) {
            if a.abs() > 1e-5 {
                assert_eq!(a.signum() as i128, b.signum());
            }
        }
    }
}

#[test]
fn fan_json_roundtrip() {
    let f = fan_of(&ExchangeMatrix::kronecker(2), 4);
    let text = serde_json::to_string(&f.to_file()).unwrap();
    let back: FanFile = serde_json::from_str(&text).unwrap();
    assert_eq!(Fan::from_file(&back).unwrap(), f);
    assert!(text.contains("maximal_cones"));
}
