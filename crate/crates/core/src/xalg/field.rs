//! Coefficient fields: the rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::error::XalgError;
use super::matrix::Matrix;

/// A field whose elements are manipulated through a (cheap, cloneable) field handle.
///
/// The handle carries any runtime data the arithmetic needs, such as the modulus of a
/// prime field, so elements themselves can stay plain values.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals, `p` for a prime field.
    fn characteristic(&self) -> u64;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `(-1)^k`-style sign as a field element.
    fn sign(&self, positive: bool) -> Self::Elem {
        if positive {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }

    /// Rank of a matrix over this field. The default is plain Gaussian elimination.
    fn rank(&self, m: &Matrix<Self>) -> usize {
        m.echelon().pivots.len()
    }

    /// Determinant of a square matrix. The default is plain Gaussian elimination.
    fn det(&self, m: &Matrix<Self>) -> Self::Elem {
        m.det_by_elimination()
    }
}

/// The field of rationals with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }

    fn rank(&self, m: &Matrix<Self>) -> usize {
        super::integer::bareiss_rank(&integer_rows(m).0)
    }

    fn det(&self, m: &Matrix<Self>) -> BigRational {
        let (ints, scales) = integer_rows(m);
        let det = super::integer::bareiss_det(&ints);
        let scale: BigInt = scales.iter().product();
        BigRational::new(det, scale)
    }
}

/// Clears denominators row by row. Returns the integer matrix and the per-row multipliers.
fn integer_rows(m: &Matrix<Rationals>) -> (super::integer::IntMatrix, Vec<BigInt>) {
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    let mut scales = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row = m.row(i);
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for x in row {
            data.push(x.numer() * (&l / x.denom()));
        }
        scales.push(l);
    }
    (
        super::integer::IntMatrix::from_vec(m.rows(), m.cols(), data),
        scales,
    )
}

/// Serializes a rational as `"num/den"` with a positive denominator, even when it is 1.
pub fn format_rational(a: &BigRational) -> String {
    format!("{}/{}", a.numer(), a.denom())
}

/// Inverse of [`format_rational`]; also accepts a bare integer.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// The prime field 𝔽_p, for primes below 2^32 so products fit in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, XalgError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(XalgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (g, x, _) = ext_gcd(*a as i64, self.p as i64);
        debug_assert_eq!(g, 1);
        Some(self.reduce_i64(x))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Deterministic trial-division primality test; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `|n|`, ascending. Empty for 0 and ±1.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= m {
        let bd = BigInt::from(d);
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += 1;
    }
    if m > BigInt::one() {
        out.push(m.to_u64().expect("prime factor fits in u64"));
    }
    out
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let bp = BigInt::from(p);
    let mut m = n.abs();
    let mut k = 0;
    while (&m % &bp).is_zero() {
        m /= &bp;
        k += 1;
    }
    Some(k)
}

/// p-adic valuation of a nonzero rational (may be negative).
pub fn valuation_rational(q: &BigRational, p: u64) -> Option<i64> {
    let num = valuation(q.numer(), p)? as i64;
    let den = valuation(q.denom(), p)? as i64;
    Some(num - den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 12);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeField::new(9), Err(XalgError::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(XalgError::NotPrime(1)));
    }

    #[test]
    fn rational_strings() {
        let q = BigRational::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(q));
        assert_eq!(
            format_rational(&BigRational::from_integer(BigInt::from(5))),
            "5/1"
        );
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn divisors_and_valuations() {
        assert_eq!(prime_divisors(&BigInt::from(-360)), vec![2, 3, 5]);
        assert!(prime_divisors(&BigInt::from(1)).is_empty());
        assert_eq!(valuation(&BigInt::from(48), 2), Some(4));
        assert_eq!(valuation(&BigInt::from(0), 2), None);
        let q = BigRational::new(BigInt::from(5), BigInt::from(12));
        assert_eq!(valuation_rational(&q, 2), Some(-2));
        assert_eq!(valuation_rational(&q, 5), Some(1));
    }
}
