//! Seed mutation checked against independent computations.

use std::collections::BTreeMap;

use gvfan_core::cone::det_exact;
use gvfan_core::fan::improper_intersection;
use gvfan_core::seeds::column_sign;
use gvfan_core::{enumerate_seeds, ExchangeMatrix, GSeed};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Laurent polynomial in x_1..x_n, y_1..y_n with integer coefficients.
#[derive(Clone, Debug, PartialEq)]
struct Laurent {
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl Laurent {
    fn monomial(exp: Vec<i32>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigInt::one());
        Laurent { terms }
    }

    fn add(&self, o: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let v = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *v += c;
            if v.is_zero() {
                terms.remove(e);
            }
        }
        Laurent { terms }
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        let mut terms: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let v = terms.entry(e.clone()).or_insert_with(BigInt::zero);
                *v += c1 * c2;
                if v.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        Laurent { terms }
    }

    fn pow(&self, k: i64) -> Laurent {
        let width = self.terms.keys().next().map(|e| e.len()).unwrap_or(0);
        let mut acc = Laurent::monomial(vec![0; width]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division in the Laurent ring, by lex-leading terms.
    fn div_exact(&self, d: &Laurent) -> Laurent {
        let (de, dc) = d.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut q = Laurent { terms: BTreeMap::new() };
        for _ in 0..10_000 {
            let Some((ne, nc)) = rem.terms.iter().next_back() else {
                return q;
            };
            assert!((nc % dc).is_zero(), "inexact coefficient division");
            let e: Vec<i32> = ne.iter().zip(de).map(|(a, b)| a - b).collect();
            let mut t = Laurent::monomial(e);
            *t.terms.values_mut().next().unwrap() = nc / dc;
            q = q.add(&t);
            let neg = t.mul(d).mul(&Laurent::monomial(vec![0; ne.len()]).scale(-1));
            rem = rem.add(&neg);
        }
        panic!("division did not terminate");
    }

    fn scale(&self, k: i64) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }
}

/// Principal-coefficient cluster variables along a mutation sequence;
/// returns the g-vectors read off the y-free term.
fn laurent_g_vectors(b0: &ExchangeMatrix, seq: &[usize]) -> Vec<Vec<i64>> {
    let n = b0.rank();
    let mut xs: Vec<Laurent> = (0..n)
        .map(|i| {
            let mut e = vec![0; 2 * n];
            e[i] = 1;
            Laurent::monomial(e)
        })
        .collect();
    // extended matrix [B; I], mutated alongside
    let mut bt: Vec<Vec<i64>> = b0.rows();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        bt.push(r);
    }
    for &k in seq {
        let mut plus = Laurent::monomial(vec![0; 2 * n]);
        let mut minus = Laurent::monomial(vec![0; 2 * n]);
        for i in 0..n {
            let b = bt[i][k];
            if b > 0 {
                plus = plus.mul(&xs[i].pow(b));
            } else if b < 0 {
                minus = minus.mul(&xs[i].pow(-b));
            }
        }
        let mut ye_plus = vec![0; 2 * n];
        let mut ye_minus = vec![0; 2 * n];
        for j in 0..n {
            let c = bt[n + j][k] as i32;
            if c > 0 {
                ye_plus[n + j] = c;
            } else {
                ye_minus[n + j] = -c;
            }
        }
        plus = plus.mul(&Laurent::monomial(ye_plus));
        minus = minus.mul(&Laurent::monomial(ye_minus));
        xs[k] = plus.add(&minus).div_exact(&xs[k]);
        // extended mutation
        let old = bt.clone();
        for i in 0..2 * n {
            for j in 0..n {
                bt[i][j] = if i == k || j == k {
                    -old[i][j]
                } else {
                    let p = old[i][k] * old[k][j];
                    if p > 0 {
                        old[i][j] + old[i][k].signum() * p
                    } else {
                        old[i][j]
                    }
                };
            }
        }
    }
    xs.iter()
        .map(|x| {
            let yfree: Vec<(&Vec<i32>, &BigInt)> =
                x.terms.iter().filter(|(e, _)| e[n..].iter().all(|&v| v == 0)).collect();
            assert_eq!(yfree.len(), 1, "expected a single y-free term");
            assert!(yfree[0].1.is_one());
            yfree[0].0[..n].iter().map(|&v| v as i64).collect()
        })
        .collect()
}

fn sequences(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &layer {
            for k in 0..n {
                if s.last() != Some(&k) {
                    let mut t: Vec<usize> = s.clone();
                    t.push(k);
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn test_quivers() -> Vec<(&'static str, ExchangeMatrix)> {
    vec![
        ("A2", ExchangeMatrix::kronecker(1)),
        ("K2", ExchangeMatrix::kronecker(2)),
        ("K3", ExchangeMatrix::kronecker(3)),
        ("Markov", ExchangeMatrix::markov()),
        (
            "A3 cycle",
            ExchangeMatrix::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap(),
        ),
    ]
}

#[test]
fn a2_first_g_vector_matches_laurent_oracle() {
    let g = laurent_g_vectors(&ExchangeMatrix::kronecker(1), &[0]);
    assert_eq!(g, vec![vec![-1, 1], vec![0, 1]]);
}

#[test]
fn seed_mutation_matches_laurent_oracle_to_depth_3() {
    for (name, b) in test_quivers() {
        for seq in sequences(b.rank(), 3) {
            let expect = laurent_g_vectors(&b, &seq);
            let seed = seq
                .iter()
                .try_fold(GSeed::initial(&b), |s, &k| s.mutate(k))
                .unwrap();
            assert_eq!(seed.g_vectors(), expect, "{name} along {seq:?}");
        }
    }
}

fn all_seeds_along(b: &ExchangeMatrix, depth: usize, mut visit: impl FnMut(&GSeed, &GSeed)) {
    // walks every mutation sequence (no immediate backtracking) with both rules
    fn rec(s: &GSeed, o: &GSeed, depth: usize, visit: &mut dyn FnMut(&GSeed, &GSeed)) {
        visit(s, o);
        if depth == 0 {
            return;
        }
        for k in 0..s.rank() {
            if s.trail.last() == Some(&k) {
                continue;
            }
            let a = s.mutate(k).unwrap();
            let c = o.mutate_by_c_sign(k).unwrap();
            rec(&a, &c, depth - 1, visit);
        }
    }
    let root = GSeed::initial(b);
    rec(&root, &root, depth, &mut visit);
}

#[test]
fn formula_agrees_with_c_sign_recurrence_to_depth_6() {
    for (name, b) in test_quivers() {
        let mut count = 0;
        all_seeds_along(&b, 6, |s, o| {
            count += 1;
            assert_eq!(s.gmat, o.gmat, "{name} at {:?}", s.trail);
            let det = det_exact(&s.gmat.to_rows());
            assert!(det == BigInt::one() || det == -BigInt::one(), "{name} det {det}");
            let c = s.c_matrix();
            for k in 0..b.rank() {
                assert!(column_sign(&c, k).is_some(), "{name} mixed c-column at {:?}", s.trail);
            }
        });
        assert!(count > 1);
    }
}

#[test]
fn current_block_reading_of_the_second_sum_breaks_down() {
    // Reading the subtracted column from the current mutable block instead
    // of the initial one disagrees with the recurrence somewhere on A2.
    let b = ExchangeMatrix::kronecker(1);
    let mut disagreements = 0;
    all_seeds_along(&b, 4, |s, _| {
        for k in 0..2 {
            let mut g = s.gmat.column(k).iter().map(|v| -v).collect::<Vec<_>>();
            for i in 0..2 {
                let bik = s.btilde.get(i, k);
                if bik > 0 {
                    for r in 0..2 {
                        g[r] += bik * s.gmat.get(r, i);
                    }
                }
            }
            for j in 0..2 {
                let c = s.btilde.get(2 + j, k);
                if c > 0 {
                    for r in 0..2 {
                        g[r] -= c * s.btilde.get(r, j);
                    }
                }
            }
            if g != s.mutate(k).unwrap().gmat.column(k) {
                disagreements += 1;
            }
        }
    });
    assert!(disagreements > 0);
}

#[test]
fn tropical_duality_holds() {
    // G^T C = I for skew-symmetric exchange matrices
    for (name, b) in test_quivers() {
        let n = b.rank();
        all_seeds_along(&b, 5, |s, _| {
            let c = s.c_matrix();
            for i in 0..n {
                for j in 0..n {
                    let v: i64 = (0..n).map(|r| s.gmat.get(r, i) * c.get(r, j)).sum();
                    assert_eq!(v, i64::from(i == j), "{name} at {:?}", s.trail);
                }
            }
        });
    }
}

#[test]
fn k2_c_columns_sign_coherent_to_depth_8() {
    let set = enumerate_seeds(&ExchangeMatrix::kronecker(2), 8, 10_000).unwrap();
    for s in &set.seeds {
        let c = s.c_matrix();
        for k in 0..2 {
            assert!(column_sign(&c, k).is_some());
        }
    }
}

#[test]
fn a2_exchange_graph_is_a_pentagon() {
    let set = enumerate_seeds(&ExchangeMatrix::kronecker(1), 10, 100).unwrap();
    assert_eq!(set.len(), 5);
    assert!(set.complete);
    let mut cones: Vec<Vec<Vec<i64>>> = set.seeds.iter().map(|s| s.cone().unwrap().rays().to_vec()).collect();
    cones.sort();
    assert_eq!(
        cones,
        vec![
            vec![vec![-1, 0], vec![-1, 1]],
            vec![vec![-1, 0], vec![0, -1]],
            vec![vec![-1, 1], vec![0, 1]],
            vec![vec![0, -1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        ]
    );
}

#[test]
fn k2_seed_count_is_linear_in_depth() {
    for d in 0..8 {
        let set = enumerate_seeds(&ExchangeMatrix::kronecker(2), d, 10_000).unwrap();
        assert_eq!(set.len(), 2 * d + 1);
        assert!(!set.complete);
    }
}

#[test]
fn k2_extreme_rays_follow_the_linear_law() {
    for d in 2..10usize {
        let set = enumerate_seeds(&ExchangeMatrix::kronecker(2), d, 10_000).unwrap();
        let fan = gvfan_core::fan_from_seeds(&set).unwrap();
        let rays = fan.rays();
        let di = d as i64;
        let mut open_quadrant: Vec<Vec<i64>> = rays.iter().filter(|r| r[0] < 0 && r[1] > 0).cloned().collect();
        open_quadrant.sort();
        let mut expected: Vec<Vec<i64>> = (1..=di).map(|j| vec![-j, j + 1]).collect();
        expected.extend((2..di).map(|j| vec![-j, j - 1]));
        expected.sort();
        assert_eq!(open_quadrant, expected, "depth {d}");
        // no ray crosses the slope −1 line into the open limit region
        for r in &rays {
            assert!(!(r[0] < 0 && r[1] > 0 && r[0] + r[1] == 0));
        }
    }
}

#[test]
fn seed_cone_interiors_are_disjoint() {
    for (name, b, depth) in [
        ("A2", ExchangeMatrix::kronecker(1), 6),
        ("K2", ExchangeMatrix::kronecker(2), 6),
        ("K3", ExchangeMatrix::kronecker(3), 6),
        ("Markov", ExchangeMatrix::markov(), 3),
    ] {
        let set = enumerate_seeds(&b, depth, 10_000).unwrap();
        let cones: Vec<_> = set.seeds.iter().map(|s| s.cone().unwrap()).collect();
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                assert!(
                    improper_intersection(&cones[i], &cones[j]).is_none(),
                    "{name}: cones {i} and {j} overlap"
                );
            }
        }
    }
}
