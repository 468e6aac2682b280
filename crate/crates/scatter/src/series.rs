//! The graded Lie algebra `g = ⊕_{d ∈ N⁺} Q x^d` truncated at total degree
//! `k`, with `[x^a, x^b] = {a, b} x^{a+b}`, and its group law in log
//! coordinates.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The lattice `N = Z^n` with a skew-symmetric form `{−,−}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterLattice {
    pub n: usize,
    pub form: Vec<Vec<i64>>,
}

impl ScatterLattice {
    pub fn new(form: Vec<Vec<i64>>) -> Result<Self> {
        let n = form.len();
        for (i, row) in form.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Form(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for j in 0..n {
                if row[j] != -form[j][i] {
                    return Err(Error::Form(format!("not skew-symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(ScatterLattice { n, form })
    }

    /// Rank two with `{e₁, e₂} = c`.
    pub fn rank2(c: i64) -> Self {
        ScatterLattice {
            n: 2,
            form: vec![vec![0, c], vec![-c, 0]],
        }
    }

    /// `{e_i, e_j}` = arrows `j → i` minus arrows `i → j`, i.e. `b_ji`.
    pub fn from_quiver(b: &gvfan_core::ExchangeMatrix) -> Self {
        let n = b.rank();
        ScatterLattice {
            n,
            form: (0..n).map(|i| (0..n).map(|j| b.get(j, i)).collect()).collect(),
        }
    }

    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                s += a[i] * self.form[i][j] * b[j];
            }
        }
        s
    }

    /// `p*(d) = {d, −} ∈ M`.
    pub fn p_star(&self, d: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| d[i] * self.form[i][j]).sum())
            .collect()
    }
}

/// Total degree `δ(d) = Σ d_i`.
pub fn delta(d: &[i64]) -> i64 {
    d.iter().sum()
}

/// An element of the truncated Lie algebra: coefficients of `x^d` for
/// `d ∈ N⁺` with `δ(d) ≤ order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSeries {
    pub order: usize,
    pub coeffs: BTreeMap<Vec<i64>, BigRational>,
}

impl LieSeries {
    pub fn zero(order: usize) -> Self {
        LieSeries {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c·x^d`, or zero if `d` is beyond the order.
    pub fn monomial(order: usize, d: Vec<i64>, c: BigRational) -> Self {
        let mut s = LieSeries::zero(order);
        s.add_term(d, c);
        s
    }

    /// Adds `c·x^d`, dropping it past the order. Panics unless `d ∈ N⁺`.
    pub fn add_term(&mut self, d: Vec<i64>, c: BigRational) {
        assert!(d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0), "degree {d:?} is not in N+");
        if delta(&d) as usize > self.order || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(d).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: &[i64]) -> BigRational {
        self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Smallest total degree present.
    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().map(|d| delta(d)).min()
    }

    pub fn truncate(&self, order: usize) -> Self {
        LieSeries {
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(d, _)| delta(d) as usize <= order)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree exactly `j`.
    pub fn homogeneous(&self, j: i64) -> Vec<(Vec<i64>, BigRational)> {
        self.coeffs
            .iter()
            .filter(|(d, _)| delta(d) == j)
            .map(|(d, c)| (d.clone(), c.clone()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&BigRational::one(), other)
    }

    pub fn add_scaled(&self, c: &BigRational, other: &Self) -> Self {
        let mut out = self.clone();
        out.order = self.order.min(other.order);
        out.coeffs.retain(|d, _| delta(d) as usize <= out.order);
        for (d, v) in &other.coeffs {
            if delta(d) as usize > out.order {
                continue;
            }
            let slot = out.coeffs.entry(d.clone()).or_insert_with(BigRational::zero);
            *slot += c * v;
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LieSeries::zero(self.order);
        }
        LieSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(d, v)| (d.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// Are all keys positive multiples of `d0`?
    pub fn supported_on(&self, d0: &[i64]) -> bool {
        self.coeffs.keys().all(|d| multiple_of(d, d0).is_some())
    }

    pub fn to_terms(&self) -> Vec<SeriesTerm> {
        self.coeffs
            .iter()
            .map(|(d, c)| SeriesTerm {
                d: d.clone(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_terms(order: usize, terms: &[SeriesTerm]) -> Result<Self> {
        let mut s = LieSeries::zero(order);
        for t in terms {
            let num: BigInt = t.num.parse().map_err(|_| Error::Parse(format!("bad numerator `{}`", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| Error::Parse(format!("bad denominator `{}`", t.den)))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            if t.d.iter().any(|&x| x < 0) || t.d.iter().all(|&x| x == 0) {
                return Err(Error::Parse(format!("degree {:?} is not in N+", t.d)));
            }
            s.add_term(t.d.clone(), BigRational::new(num, den));
        }
        Ok(s)
    }
}

/// `{d, num, den}` in serialized series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub d: Vec<i64>,
    pub num: String,
    pub den: String,
}

/// `Some(j)` when `d = j·d0` with `j ≥ 1`.
pub fn multiple_of(d: &[i64], d0: &[i64]) -> Option<i64> {
    let i = d0.iter().position(|&x| x != 0)?;
    if d[i] % d0[i] != 0 {
        return None;
    }
    let j = d[i] / d0[i];
    (j >= 1 && d.iter().zip(d0).all(|(a, b)| *a == j * b)).then_some(j)
}

/// `[a, b]` truncated at `order`.
pub fn bracket(l: &ScatterLattice, a: &LieSeries, b: &LieSeries, order: usize) -> LieSeries {
    let mut out = LieSeries::zero(order);
    let Some(bmin) = b.min_degree() else {
        return out;
    };
    for (da, ca) in &a.coeffs {
        let ea = delta(da);
        if (ea + bmin) as usize > order {
            continue;
        }
        for (db, cb) in &b.coeffs {
            if (ea + delta(db)) as usize > order {
                continue;
            }
            let w = l.pair(da, db);
            if w == 0 {
                continue;
            }
            let d: Vec<i64> = da.iter().zip(db).map(|(x, y)| x + y).collect();
            let slot = out.coeffs.entry(d).or_insert_with(BigRational::zero);
            *slot += ca * cb * BigRational::from_integer(w.into());
        }
    }
    out.coeffs.retain(|_, v| !v.is_zero());
    out
}

/// Dynkin coefficients: for each word in `{a, b}` of length `≤ k`, the
/// rational weight of its right-nested bracket in `log(e^a e^b)`.
fn dynkin_weights(k: usize) -> HashMap<Vec<u8>, BigRational> {
    let mut fact = vec![BigRational::one()];
    for i in 1..=k {
        fact.push(&fact[i - 1] * BigRational::from_integer(BigInt::from(i)));
    }
    let mut out = HashMap::new();
    let mut words: Vec<Vec<u8>> = vec![vec![0], vec![1]];
    while let Some(w) = words.pop() {
        let m = w.len();
        // split[pos][n]: sum over splits of w[..pos] into n blocks a^r b^s
        let mut split = vec![vec![BigRational::zero(); m + 1]; m + 1];
        split[0][0] = BigRational::one();
        for pos in 0..m {
            for n in 0..=pos {
                if split[pos][n].is_zero() {
                    continue;
                }
                let base = split[pos][n].clone();
                let mut r = 0;
                let mut s = 0;
                for q in pos..m {
                    if w[q] == 0 {
                        if s > 0 {
                            break;
                        }
                        r += 1;
                    } else {
                        s += 1;
                    }
                    let v = &base / (&fact[r] * &fact[s]);
                    split[q + 1][n + 1] += v;
                }
            }
        }
        let mut total = BigRational::zero();
        for n in 1..=m {
            let sign = if n % 2 == 1 { BigRational::one() } else { -BigRational::one() };
            total += sign * &split[m][n] / BigRational::from_integer(BigInt::from(n));
        }
        total /= BigRational::from_integer(BigInt::from(m));
        if m < k {
            for l in [0u8, 1] {
                let mut longer = w.clone();
                longer.push(l);
                words.push(longer);
            }
        }
        out.insert(w, total);
    }
    out
}

/// `log(exp(a)·exp(b))` truncated at `order`, by the Dynkin series.
pub fn bch_mul(l: &ScatterLattice, a: &LieSeries, b: &LieSeries, order: usize) -> LieSeries {
    let a = a.truncate(order);
    let b = b.truncate(order);
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let weights = dynkin_weights(order);
    let letters = [&a, &b];
    let mut out = LieSeries::zero(order);
    // nested brackets built by prepending letters to known suffixes
    let mut frontier: Vec<(Vec<u8>, LieSeries)> = vec![(vec![0], a.clone()), (vec![1], b.clone())];
    while let Some((suffix, val)) = frontier.pop() {
        let w = &weights[&suffix];
        if !w.is_zero() {
            out = out.add_scaled(w, &val);
        }
        if suffix.len() == order {
            continue;
        }
        for l_idx in [0u8, 1] {
            let next = bracket(l, letters[l_idx as usize], &val, order);
            if next.is_zero() {
                continue;
            }
            let mut word = vec![l_idx];
            word.extend_from_slice(&suffix);
            frontier.push((word, next));
        }
    }
    out
}

/// Nonzero rational as a fraction with positive denominator.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        let a2 = ScatterLattice::rank2(1);
        let x = LieSeries::monomial(4, vec![1, 0], BigRational::one());
        let y = LieSeries::monomial(4, vec![0, 1], BigRational::one());
        assert_eq!(bracket(&a2, &x, &y, 4), LieSeries::monomial(4, vec![1, 1], BigRational::one()));
        assert!(bracket(&a2, &x, &x, 4).is_zero());
        let k2 = ScatterLattice::rank2(2);
        assert_eq!(bracket(&k2, &x, &y, 4), LieSeries::monomial(4, vec![1, 1], frac(2, 1)));
        assert!(bracket(&k2, &x, &y, 1).is_zero());
    }

    #[test]
    fn bch_examples() {
        let a2 = ScatterLattice::rank2(1);
        let x = LieSeries::monomial(2, vec![1, 0], BigRational::one());
        let y = LieSeries::monomial(2, vec![0, 1], BigRational::one());
        let z = bch_mul(&a2, &x, &y, 2);
        let mut expected = x.add(&y);
        expected.add_term(vec![1, 1], frac(1, 2));
        assert_eq!(z, expected);
        assert_eq!(bch_mul(&a2, &x, &LieSeries::zero(2), 2), x);
        // top-degree elements commute past the truncation
        let u = LieSeries::monomial(3, vec![2, 1], frac(3, 1));
        let v = LieSeries::monomial(3, vec![1, 2], frac(-1, 1));
        assert_eq!(bch_mul(&a2, &u, &v, 3), u.add(&v));
    }

    #[test]
    fn dynkin_low_order_terms() {
        let w = dynkin_weights(3);
        assert_eq!(w[&vec![0]], BigRational::one());
        assert_eq!(w[&vec![0, 1]], frac(1, 4));
        assert_eq!(w[&vec![1, 0]], frac(-1, 4));
        assert_eq!(w[&vec![0, 0, 1]], frac(1, 36));
        assert_eq!(w[&vec![0, 1, 0]], frac(-1, 18));
    }

    #[test]
    fn multiples() {
        assert_eq!(multiple_of(&[2, 4], &[1, 2]), Some(2));
        assert_eq!(multiple_of(&[2, 3], &[1, 2]), None);
        assert_eq!(multiple_of(&[0, 3], &[0, 1]), Some(3));
        assert_eq!(multiple_of(&[1, 3], &[0, 1]), None);
    }
}
