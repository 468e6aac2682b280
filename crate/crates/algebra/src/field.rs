//! Coefficient fields: exact rationals and small Galois fields `F_{p^l}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

/// The Mersenne prime `2^31 − 1` used for randomized work.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Largest extension degree supported by [`Gf`].
pub const MAX_EXT: usize = 4;

/// Field arithmetic on a value type.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;
    /// Image of a rational, `None` when the denominator vanishes in the field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a·b`.
    fn add_mul(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if !self.is_zero(a) && !self.is_zero(b) {
            *acc = self.add(acc, &self.mul(a, b));
        }
    }
}

/// The field `Q` with exact big rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_int(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn add_mul(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if !a.is_zero() && !b.is_zero() {
            *acc += a * b;
        }
    }
}

/// Element of [`Gf`]: coefficients of a polynomial in the generator, low
/// degree first. Unused high slots stay zero.
pub type GfElem = [u64; MAX_EXT];

/// The finite field `F_p[t]/(m(t))` for a monic irreducible `m` of degree
/// `l ≤ MAX_EXT`; `l = 1` is the prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf {
    p: u64,
    degree: usize,
    /// Monic modulus, `degree + 1` coefficients low first.
    modulus: Vec<u64>,
}

impl Gf {
    /// The prime field `F_p`, `p < 2^32` prime.
    pub fn prime(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 32));
        Gf {
            p,
            degree: 1,
            modulus: vec![0, 1],
        }
    }

    /// Extension of `F_p` by a root of `modulus` (monic, irreducible over
    /// `F_p`, coefficients low first). Irreducibility is the caller's promise.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Self {
        let degree = modulus.len() - 1;
        assert!((1..=MAX_EXT).contains(&degree), "unsupported extension degree {degree}");
        assert_eq!(modulus[degree], 1, "modulus must be monic");
        Gf { p, degree, modulus }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field size as a `u128`.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree as u32)
    }

    /// The class of the generator `t`.
    pub fn generator(&self) -> GfElem {
        let mut e = [0; MAX_EXT];
        if self.degree == 1 {
            e[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            e[1] = 1;
        }
        e
    }

    /// Embeds an element of the prime field.
    pub fn from_prime(&self, c: u64) -> GfElem {
        let mut e = [0; MAX_EXT];
        e[0] = c % self.p;
        e
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GfElem {
        let mut e = [0; MAX_EXT];
        for slot in e.iter_mut().take(self.degree) {
            *slot = rng.gen_range(0..self.p);
        }
        e
    }

    pub fn pow(&self, a: &GfElem, mut e: u128) -> GfElem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Gf {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        [0; MAX_EXT]
    }
    fn one(&self) -> GfElem {
        self.from_prime(1)
    }
    fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let mut r = [0; MAX_EXT];
        for i in 0..self.degree {
            let s = a[i] + b[i];
            r[i] = if s >= self.p { s - self.p } else { s };
        }
        r
    }
    fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let mut r = [0; MAX_EXT];
        for i in 0..self.degree {
            r[i] = if a[i] >= b[i] { a[i] - b[i] } else { a[i] + self.p - b[i] };
        }
        r
    }
    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.p;
        if self.degree == 1 {
            let mut r = [0; MAX_EXT];
            r[0] = a[0] * b[0] % p;
            return r;
        }
        let l = self.degree;
        let mut t = [0u64; 2 * MAX_EXT];
        for i in 0..l {
            if a[i] == 0 {
                continue;
            }
            for j in 0..l {
                t[i + j] = (t[i + j] + a[i] * b[j] % p) % p;
            }
        }
        for i in (l..2 * l - 1).rev() {
            let c = t[i];
            if c == 0 {
                continue;
            }
            t[i] = 0;
            for j in 0..l {
                let sub = c * self.modulus[j] % p;
                t[i - l + j] = (t[i - l + j] + p - sub) % p;
            }
        }
        let mut r = [0; MAX_EXT];
        r[..l].copy_from_slice(&t[..l]);
        r
    }
    fn neg(&self, a: &GfElem) -> GfElem {
        self.sub(&self.zero(), a)
    }
    fn inv(&self, a: &GfElem) -> GfElem {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order() - 2)
    }
    fn from_int(&self, v: i64) -> GfElem {
        self.from_prime(v.rem_euclid(self.p as i64) as u64)
    }
    fn from_rational(&self, q: &BigRational) -> Option<GfElem> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(self.mul(&self.from_prime(num), &self.inv(&self.from_prime(den))))
    }
    fn render(&self, a: &GfElem) -> String {
        if self.degree == 1 {
            return a[0].to_string();
        }
        let terms: Vec<String> = (0..self.degree)
            .rev()
            .filter(|&i| a[i] != 0)
            .map(|i| match i {
                0 => a[0].to_string(),
                1 => format!("{}*t", a[1]),
                _ => format!("{}*t^{i}", a[i]),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
    fn add_mul(&self, acc: &mut GfElem, a: &GfElem, b: &GfElem) {
        if self.degree == 1 {
            acc[0] = (acc[0] + a[0] * b[0] % self.p) % self.p;
        } else {
            *acc = self.add(acc, &self.mul(a, b));
        }
    }
}

/// Parses `"3"`, `"-2/5"` and similar.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Whether every rational in the slice is an integer.
pub fn all_integral(v: &[BigRational]) -> bool {
    v.iter().all(|q| q.is_integer())
}
