//! Scalar fields: the rationals and the `Field` abstraction shared by
//! polynomial code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Rat = BigRational;

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;
    fn inv(&self) -> Self;

    /// A field element equal to `one()` but sharing `self`'s ambient field
    /// (only matters for number-field elements).
    fn one_like(&self) -> Self {
        Self::one()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rat(&rat(v))
    }

    /// Returns the value as a rational if it lies in Q.
    fn as_rat(&self) -> Option<Rat>;

    fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratf(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Scale down huge numerators/denominators before converting.
    let n = r.numer();
    let d = r.denom();
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            let nb = n.bits() as i64;
            let db = d.bits() as i64;
            let shift_n = (nb - 900).max(0) as u64;
            let shift_d = (db - 900).max(0) as u64;
            let a = (n >> shift_n).to_f64().unwrap_or(0.0);
            let b = (d >> shift_d).to_f64().unwrap_or(1.0);
            a / b * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
        }
    }
}

/// Exact rational nearest to a float (dyadic expansion).
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).unwrap_or_else(Rat::zero)
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Lowest common multiple of denominators.
pub fn denom_lcm<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Gcd of numerators (nonnegative).
pub fn numer_gcd<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    it.into_iter()
        .fold(BigInt::zero(), |acc, r| acc.gcd(r.numer()))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn abs_rat(r: &Rat) -> Rat {
    r.abs()
}

/// Largest square factor removed: returns (s, d) with n = s^2 * d, d squarefree.
pub fn squarefree_split(n: i64) -> (i64, i64) {
    if n == 0 {
        return (0, 0);
    }
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut s: u64 = 1;
    let mut d: u64 = 1;
    let mut p: u64 = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= m;
    (s as i64, sign * d as i64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_split_examples() {
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(-3), (1, -3));
        assert_eq!(squarefree_split(-8), (2, -2));
        assert_eq!(squarefree_split(49), (7, 1));
    }

    #[test]
    fn rat_pow_and_float() {
        let r = ratf(-2, 3);
        assert_eq!(r.pow(3), ratf(-8, 27));
        assert!((rat_to_f64(&r) + 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(binomial(5, 2), 10);
    }
}
