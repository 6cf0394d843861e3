//! Quadratic extensions Q(sqrt d), elements a + b*sqrt(d).
//!
//! Rational elements carry `d = 0` and combine with any extension. Mixing two
//! different nonzero `d` is a programming error and panics.

use super::field::{fmt_rat, rat, squarefree_split, Field, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
    pub d: i64,
}

impl QuadExt {
    pub fn rational(a: Rat) -> Self {
        QuadExt { a, b: Rat::zero(), d: 0 }
    }

    /// a + b*sqrt(d); `d` is reduced to its squarefree part.
    pub fn new(a: Rat, b: Rat, d: i64) -> Self {
        if d == 0 || b.is_zero() {
            return QuadExt::rational(a);
        }
        let (s, d0) = squarefree_split(d);
        if d0 == 1 {
            return QuadExt::rational(a + b * rat(s));
        }
        QuadExt { a, b: b * rat(s), d: d0 }
    }

    pub fn sqrt(d: i64) -> Self {
        QuadExt::new(Rat::zero(), Rat::one(), d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    pub fn norm(&self) -> Rat {
        self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * rat(self.d)
    }

    fn join_d(&self, o: &Self) -> i64 {
        let d1 = if self.b.is_zero() { 0 } else { self.d };
        let d2 = if o.b.is_zero() { 0 } else { o.d };
        match (d1, d2) {
            (0, x) | (x, 0) => x,
            (x, y) if x == y => x,
            (x, y) => panic!("incompatible quadratic extensions sqrt({x}) and sqrt({y})"),
        }
    }

    fn canon(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        use super::field::rat_to_f64;
        let a = rat_to_f64(&self.a);
        let b = rat_to_f64(&self.b);
        if self.d >= 0 {
            num_complex::Complex64::new(a + b * (self.d as f64).sqrt(), 0.0)
        } else {
            num_complex::Complex64::new(a, b * (-(self.d as f64)).sqrt())
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, o: &Self) -> bool {
        if self.a != o.a || self.b != o.b {
            return false;
        }
        self.b.is_zero() || self.d == o.d
    }
}
impl Eq for QuadExt {}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let root = format!("sqrt({})", self.d);
        let bpart = if self.b == Rat::one() {
            root
        } else if self.b == -Rat::one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", fmt_rat(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "{bpart}")
        } else if bpart.starts_with('-') {
            write!(f, "{}{}", fmt_rat(&self.a), bpart)
        } else {
            write!(f, "{}+{}", fmt_rat(&self.a), bpart)
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: Self) -> Self {
        let d = self.join_d(&o);
        QuadExt { a: self.a + o.a, b: self.b + o.b, d }.canon()
    }
}
impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: Self) -> Self {
        let d = self.join_d(&o);
        QuadExt { a: self.a - o.a, b: self.b - o.b, d }.canon()
    }
}
impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: Self) -> Self {
        let d = self.join_d(&o);
        let a = self.a.clone() * o.a.clone() + self.b.clone() * o.b.clone() * rat(d);
        let b = self.a * o.b + self.b * o.a;
        QuadExt { a, b, d }.canon()
    }
}
impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> Self {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}
impl Div for QuadExt {
    type Output = QuadExt;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}
impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rat::one())
    }
}

impl Field for QuadExt {
    fn from_rat(r: &Rat) -> Self {
        QuadExt::rational(r.clone())
    }
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt d)");
        QuadExt { a: self.a.clone() / n.clone(), b: -self.b.clone() / n, d: self.d }.canon()
    }
    fn as_rat(&self) -> Option<Rat> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }
}
