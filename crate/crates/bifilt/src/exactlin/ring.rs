//! Coefficient rings: the rationals, prime fields, and small Galois extensions
//! given by explicit multiplication tables over the prime field.
//!
//! Every scalar is kept in canonical form (lowest terms over Q, least residue
//! over finite fields), so scalar equality is structural.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// A finite extension of F_p of degree >= 2, with multiplication tabulated.
///
/// Elements are indexed 0..q by their base-p digit expansion: index
/// `sum c_i p^i` stands for `sum c_i x^i` modulo the defining polynomial.
/// The prime subfield sits at indices 0..p.
#[derive(Debug, PartialEq, Eq)]
pub struct GfTable {
    pub p: u64,
    pub degree: u32,
    pub q: u64,
    /// Monic defining polynomial, low-to-high coefficients, length degree + 1.
    pub poly: Vec<u64>,
    mul: Vec<u64>,
    inv: Vec<u64>,
}

impl GfTable {
    fn digits(&self, mut e: u64) -> Vec<u64> {
        let mut out = vec![0; self.degree as usize];
        for d in out.iter_mut() {
            *d = e % self.p;
            e /= self.p;
        }
        out
    }

    fn index(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p + (d % self.p))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let da = self.digits(a);
        let n: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        self.index(&n)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.inv[a as usize]
    }
}

/// Multiply two polynomials over F_p and reduce modulo a monic `poly`.
fn polymul_mod(p: u64, poly: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let deg = poly.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce: x^deg = -(poly[0..deg])
    for i in (deg..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..deg {
            let sub = (c * poly[j]) % p;
            prod[i - deg + j] = (prod[i - deg + j] + p * p - sub) % p;
        }
    }
    prod.truncate(deg);
    prod.resize(deg, 0);
    prod
}

/// Exhaustive irreducibility test for small monic polynomials over F_p.
fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let deg = poly.len() - 1;
    // try all monic divisors of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut e = idx;
            for c in div.iter_mut().take(d) {
                *c = e % p;
                e /= p;
            }
            div[d] = 1;
            if poly_divides(p, &div, poly) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(p: u64, div: &[u64], poly: &[u64]) -> bool {
    // long division remainder == 0; div is monic
    let mut rem: Vec<u64> = poly.to_vec();
    let d = div.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - d;
        if lead != 0 {
            for j in 0..=d {
                let sub = (lead * div[j]) % p;
                rem[shift + j] = (rem[shift + j] + p * p - sub) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

fn build_table(p: u64, degree: u32, poly: Vec<u64>) -> GfTable {
    let q = p.pow(degree);
    let mut table = GfTable {
        p,
        degree,
        q,
        poly,
        mul: vec![0; (q * q) as usize],
        inv: vec![0; q as usize],
    };
    for a in 0..q {
        let da = table.digits(a);
        for b in 0..q {
            let db = table.digits(b);
            let prod = polymul_mod(p, &table.poly, &da, &db);
            table.mul[(a * q + b) as usize] = table.index(&prod);
        }
    }
    for a in 1..q {
        for b in 1..q {
            if table.mul(a, b) == 1 {
                table.inv[a as usize] = b;
                break;
            }
        }
    }
    table
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A coefficient ring. All arithmetic goes through the ring so scalars stay
/// in canonical form; ring equality is structural.
#[derive(Debug, Clone)]
pub enum Ring {
    Rationals,
    PrimeField(u64),
    GaloisField(Arc<GfTable>),
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ring::Rationals, Ring::Rationals) => true,
            (Ring::PrimeField(p), Ring::PrimeField(q)) => p == q,
            (Ring::GaloisField(a), Ring::GaloisField(b)) => {
                a.p == b.p && a.degree == b.degree && a.poly == b.poly
            }
            _ => false,
        }
    }
}
impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
            Ring::GaloisField(t) => write!(f, "F{}", t.q),
        }
    }
}

/// An exact scalar: an arbitrary-precision rational or a finite-field element
/// index. Which one is legal is dictated by the owning ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v) => write!(f, "{v}"),
        }
    }
}

impl Ring {
    pub fn rationals() -> Ring {
        Ring::Rationals
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::BadRing(format!("{p} is not prime")));
        }
        Ok(Ring::PrimeField(p))
    }

    /// Galois field F_{p^degree} with the lexicographically smallest monic
    /// irreducible defining polynomial. Degree 1 collapses to the prime field.
    pub fn galois_field(p: u64, degree: u32) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::BadRing(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::BadRing("degree must be positive".into()));
        }
        if degree == 1 {
            return Ok(Ring::PrimeField(p));
        }
        if p.pow(degree) > 256 {
            return Err(Error::BadRing(format!(
                "field size {} exceeds the table limit",
                p.pow(degree)
            )));
        }
        let d = degree as usize;
        let count = p.pow(degree);
        for idx in 0..count {
            let mut poly = vec![0u64; d + 1];
            let mut e = idx;
            for c in poly.iter_mut().take(d) {
                *c = e % p;
                e /= p;
            }
            poly[d] = 1;
            if is_irreducible(p, &poly) {
                return Ok(Ring::GaloisField(Arc::new(build_table(p, degree, poly))));
            }
        }
        Err(Error::BadRing(format!("no irreducible polynomial found for p={p}, degree={degree}")))
    }

    /// Characteristic-p element count, or None over Q.
    pub fn size(&self) -> Option<u64> {
        match self {
            Ring::Rationals => None,
            Ring::PrimeField(p) => Some(*p),
            Ring::GaloisField(t) => Some(t.q),
        }
    }

    /// Degree over the prime subfield (1 for Q and F_p).
    pub fn degree_over_prime(&self) -> u64 {
        match self {
            Ring::GaloisField(t) => t.degree as u64,
            _ => 1,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Rationals => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Ring::Rationals => Scalar::Rat(BigRational::one()),
            _ => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Ring::PrimeField(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u64),
            Ring::GaloisField(t) => Scalar::Fp(v.rem_euclid(t.p as i64) as u64),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Ring::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (Ring::GaloisField(t), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(t.add(*x, *y)),
            _ => panic!("scalar does not belong to ring {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Ring::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Ring::PrimeField(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            (Ring::GaloisField(t), Scalar::Fp(x)) => Scalar::Fp(t.neg(*x)),
            _ => panic!("scalar does not belong to ring {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Ring::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x * y) % p),
            (Ring::GaloisField(t), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(t.mul(*x, *y)),
            _ => panic!("scalar does not belong to ring {self}"),
        }
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (Ring::Rationals, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (Ring::PrimeField(p), Scalar::Fp(x)) => Scalar::Fp(mod_inv(*x, *p)),
            (Ring::GaloisField(t), Scalar::Fp(x)) => Scalar::Fp(t.inv(*x)),
            _ => panic!("scalar does not belong to ring {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Checks that a scalar value is a legal canonical element of this ring.
    pub fn validate(&self, a: &Scalar) -> Result<()> {
        match (self, a) {
            (Ring::Rationals, Scalar::Rat(r)) => {
                if r.denom().is_negative() {
                    Err(Error::BadRing("rational with negative denominator".into()))
                } else {
                    Ok(())
                }
            }
            (Ring::PrimeField(p), Scalar::Fp(v)) if v < p => Ok(()),
            (Ring::GaloisField(t), Scalar::Fp(v)) if *v < t.q => Ok(()),
            _ => Err(Error::BadRing(format!("scalar {a} is not canonical in {self}"))),
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "inverse of non-unit");
    t.rem_euclid(p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Ring::prime_field(5).unwrap();
        let a = f5.from_i64(3);
        let b = f5.from_i64(4);
        assert_eq!(f5.mul(&a, &b), f5.from_i64(2));
        assert_eq!(f5.inv(&a), f5.from_i64(2));
        assert!(Ring::prime_field(6).is_err());
    }

    #[test]
    fn rationals_reduce() {
        let q = Ring::rationals();
        let half = q.div(&q.from_i64(1), &q.from_i64(2));
        let third = q.div(&q.from_i64(1), &q.from_i64(3));
        let sum = q.add(&half, &third);
        assert_eq!(sum.to_string(), "5/6");
    }

    #[test]
    fn f4_is_a_field() {
        let f4 = Ring::galois_field(2, 2).unwrap();
        assert_eq!(f4.size(), Some(4));
        // x^2 + x + 1 = 0, so x * x = x + 1 = index 3
        let x = Scalar::Fp(2);
        assert_eq!(f4.mul(&x, &x), Scalar::Fp(3));
        for v in 1..4 {
            let s = Scalar::Fp(v);
            assert_eq!(f4.mul(&s, &f4.inv(&s)), f4.one());
        }
        // characteristic 2 addition
        assert_eq!(f4.add(&x, &x), f4.zero());
    }

    #[test]
    fn f8_and_f9_tables_close() {
        for (p, d) in [(2u64, 3u32), (3, 2)] {
            let f = Ring::galois_field(p, d).unwrap();
            let q = f.size().unwrap();
            for a in 0..q {
                for b in 0..q {
                    let prod = f.mul(&Scalar::Fp(a), &Scalar::Fp(b));
                    f.validate(&prod).unwrap();
                }
            }
        }
    }
}
