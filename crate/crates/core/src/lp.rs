//! Exact feasibility for `{x ≥ 0 : A x = b}` over the rationals.
//!
//! Phase-one simplex with artificial variables and Bland's rule, on a dense
//! tableau. The systems solved here have a handful of rows.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Returns some `x ≥ 0` with `A x = b`, or `None` if there is none.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    // tableau columns: n originals, m artificials, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![BigRational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = BigRational::one();
        row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // objective: minimize the sum of artificials, stored as reduced costs
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: lowest index with negative reduced cost
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // unbounded direction cannot occur for phase one
            break;
        };
        pivot(&mut t, &mut obj, pr, enter);
        basis[pr] = enter;
    }

    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], obj: &mut [BigRational], pr: usize, pc: usize) {
    let width = obj.len();
    let p = t[pr][pc].clone();
    for v in t[pr].iter_mut() {
        *v /= &p;
    }
    let prow = t[pr].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for j in 0..width {
            if !prow[j].is_zero() {
                row[j] -= &f * &prow[j];
            }
        }
    }
    if !obj[pc].is_zero() {
        let f = obj[pc].clone();
        for j in 0..width {
            if !prow[j].is_zero() {
                obj[j] -= &f * &prow[j];
            }
        }
    }
}

/// Coefficients `λ ≥ 0` with `Σ λ_i cols[i] = p`, if any.
pub fn nonneg_combination(cols: &[Vec<BigRational>], p: &[BigRational]) -> Option<Vec<BigRational>> {
    let dim = p.len();
    let a: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    feasible_point(&a, p)
}
