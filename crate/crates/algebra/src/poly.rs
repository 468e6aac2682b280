//! Univariate polynomials over a [`Field`], coefficients low degree first,
//! and the splitting step used to find idempotents over finite fields.

use rand::Rng;

use crate::field::{Field, Gf, GfElem};

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree<E>(a: &Poly<E>) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn monic<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = f.inv(lead);
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

pub fn add<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn mul<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            f.add_mul(&mut out[i + j], x, y);
        }
    }
    trim(f, out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = f.inv(&b[db]);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = f.mul(&r[i], &inv);
        if f.is_zero(&c) {
            continue;
        }
        for j in 0..=db {
            let t = f.mul(&c, &b[j]);
            r[i - db + j] = f.sub(&r[i - db + j], &t);
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (trim(f, q), trim(f, r))
}

pub fn rem<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    divrem(f, a, b).1
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Inverse of `a` modulo `m`, if they are coprime.
pub fn inverse_mod<F: Field>(f: &F, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
    // extended Euclid tracking the coefficient of a
    let (mut r0, mut r1) = (m.clone(), rem(f, a, m));
    let (mut s0, mut s1): (Poly<F::Elem>, Poly<F::Elem>) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = f.inv(&r0[0]);
    Some(rem(f, &s0.iter().map(|x| f.mul(x, &c)).collect(), m))
}

pub fn derivative<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
        .collect();
    trim(f, out)
}

pub fn mulmod<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, a: &Poly<F::Elem>, mut e: u128, m: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &vec![f.one()], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// Outcome of [`split`].
#[derive(Clone, Debug, PartialEq)]
pub enum Split<E> {
    /// `m = a·b` with `a`, `b` coprime and both nonconstant.
    Coprime(Poly<E>, Poly<E>),
    /// `m = r^e` with `r` monic irreducible.
    Primary(Poly<E>, usize),
}

/// Splits a monic polynomial over a finite field into two coprime factors,
/// or recognizes it as a power of one irreducible.
pub fn split<R: Rng + ?Sized>(f: &Gf, m: &Poly<GfElem>, rng: &mut R) -> Split<GfElem> {
    let m = monic(f, m);
    let d = degree(&m).expect("nonzero polynomial");
    if d == 0 {
        return Split::Primary(m, 0);
    }
    // squarefree part; the characteristic exceeds every degree seen here
    let g = gcd(f, &m, &derivative(f, &m));
    let s = divrem(f, &m, &g).0;
    let s = monic(f, &s);
    match find_factor(f, &s, rng) {
        None => {
            let ds = degree(&s).unwrap_or(0).max(1);
            Split::Primary(s, d / ds)
        }
        Some(factor) => {
            let mut a = vec![f.one()];
            let mut rest = m.clone();
            loop {
                let c = gcd(f, &rest, &factor);
                if degree(&c) == Some(0) {
                    break;
                }
                a = mul(f, &a, &c);
                rest = divrem(f, &rest, &c).0;
            }
            Split::Coprime(monic(f, &a), monic(f, &rest))
        }
    }
}

/// A nontrivial monic factor of a squarefree `s`, or `None` if `s` is
/// irreducible.
fn find_factor<R: Rng + ?Sized>(f: &Gf, s: &Poly<GfElem>, rng: &mut R) -> Option<Poly<GfElem>> {
    let n = degree(s)?;
    if n <= 1 {
        return None;
    }
    let q = f.order();
    let x: Poly<GfElem> = vec![f.zero(), f.one()];
    // distinct degree: gcd(x^{q^i} − x, s)
    let mut h = x.clone();
    for i in 1..=n {
        h = powmod(f, &h, q, s);
        let g = gcd(f, &sub(f, &h, &x), s);
        let dg = degree(&g).unwrap_or(0);
        if dg == 0 {
            continue;
        }
        if dg < n {
            return Some(g);
        }
        if i == n {
            return None;
        }
        return Some(equal_degree(f, s, i, rng));
    }
    None
}

/// Cantor–Zassenhaus on a product of distinct irreducibles of degree `i`.
fn equal_degree<R: Rng + ?Sized>(f: &Gf, s: &Poly<GfElem>, i: usize, rng: &mut R) -> Poly<GfElem> {
    let n = degree(s).expect("nonzero");
    let q = f.order();
    loop {
        let r: Poly<GfElem> = trim(f, (0..n).map(|_| f.random(rng)).collect());
        if r.is_empty() {
            continue;
        }
        // r^{(q^i − 1)/2} = (r·r^q·…·r^{q^{i−1}})^{(q − 1)/2}
        let mut norm = vec![f.one()];
        let mut frob = rem(f, &r, s);
        for _ in 0..i {
            norm = mulmod(f, &norm, &frob, s);
            frob = powmod(f, &frob, q, s);
        }
        let t = powmod(f, &norm, (q - 1) / 2, s);
        let g = gcd(f, &sub(f, &t, &vec![f.one()]), s);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            return g;
        }
    }
}

/// `e(x)` with `e ≡ 1 (mod a)` and `e ≡ 0 (mod b)`, reduced modulo `a·b`.
pub fn crt_idempotent<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let binv = inverse_mod(f, b, a).expect("coprime factors");
    rem(f, &mul(f, b, &binv), &mul(f, a, b))
}
