//! Simple algebraic number fields Q[t]/(m(t)) and their elements.
//!
//! Points of a curve that are not rational live in such a field: one exact
//! point over K stands for its [K:Q] conjugates.

use super::field::{fmt_rat, Field, Rat};
use super::roots::complex_roots;
use super::upoly::UniPoly;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

#[derive(Debug)]
pub struct NumField {
    /// Monic, irreducible over Q.
    pub minpoly: UniPoly<Rat>,
    roots: OnceLock<Vec<Complex64>>,
}

impl NumField {
    pub fn new(m: &UniPoly<Rat>) -> Arc<NumField> {
        assert!(m.deg() >= 1, "defining polynomial must be nonconstant");
        Arc::new(NumField { minpoly: m.monic(), roots: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg() as usize
    }

    /// Complex roots of the defining polynomial in a fixed order; the k-th
    /// embedding sends t to the k-th root.
    pub fn embeddings(&self) -> &[Complex64] {
        self.roots.get_or_init(|| complex_roots(&self.minpoly))
    }

    pub fn minpoly_string(&self) -> String {
        let mut out = String::new();
        for (k, a) in self.minpoly.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = *a < Rat::zero();
            let mag = if neg { -a.clone() } else { a.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let m = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if m.is_empty() {
                out.push_str(&fmt_rat(&mag));
            } else if mag.is_one() {
                out.push_str(&m);
            } else {
                out.push_str(&format!("{}*{m}", fmt_rat(&mag)));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct AlgNum {
    pub field: Option<Arc<NumField>>,
    /// Coefficients in the power basis 1, t, t^2, ...; trailing zeros trimmed.
    pub c: Vec<Rat>,
}

fn same_field(a: &Arc<NumField>, b: &Arc<NumField>) -> bool {
    Arc::ptr_eq(a, b) || a.minpoly == b.minpoly
}

impl AlgNum {
    pub fn rational(r: Rat) -> Self {
        let c = if r.is_zero() { vec![] } else { vec![r] };
        AlgNum { field: None, c }
    }

    /// The generator t of K.
    pub fn gen(k: &Arc<NumField>) -> Self {
        AlgNum::from_poly(k, &UniPoly::x())
    }

    pub fn from_poly(k: &Arc<NumField>, p: &UniPoly<Rat>) -> Self {
        let r = p.rem(&k.minpoly);
        AlgNum { field: Some(k.clone()), c: r.c }
    }

    pub fn in_field(k: &Arc<NumField>, r: Rat) -> Self {
        let mut a = AlgNum::rational(r);
        a.field = Some(k.clone());
        a
    }

    pub fn is_rational(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn poly(&self) -> UniPoly<Rat> {
        UniPoly::new(self.c.clone())
    }

    fn join(&self, o: &Self) -> Option<Arc<NumField>> {
        match (&self.field, &o.field) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => {
                assert!(same_field(a, b), "mixing elements of different number fields");
                Some(a.clone())
            }
        }
    }

    /// Value under the k-th complex embedding.
    pub fn embed(&self, k: usize) -> Complex64 {
        match &self.field {
            None => Complex64::new(self.c.first().map(super::field::rat_to_f64).unwrap_or(0.0), 0.0),
            Some(f) => {
                let t = f.embeddings()[k];
                let mut acc = Complex64::new(0.0, 0.0);
                for a in self.c.iter().rev() {
                    acc = acc * t + super::field::rat_to_f64(a);
                }
                acc
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.field.as_ref().map(|f| f.degree()).unwrap_or(1)
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}
impl Eq for AlgNum {}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = *a < Rat::zero();
            let mag = if neg { -a.clone() } else { a.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let m = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if m.is_empty() {
                out.push_str(&fmt_rat(&mag));
            } else if mag.is_one() {
                out.push_str(&m);
            } else {
                out.push_str(&format!("{}*{m}", fmt_rat(&mag)));
            }
        }
        write!(f, "{out}")
    }
}

impl Add for AlgNum {
    type Output = AlgNum;
    fn add(self, o: Self) -> Self {
        let field = self.join(&o);
        let p = self.poly().add(&o.poly());
        AlgNum { field, c: p.c }
    }
}
impl Sub for AlgNum {
    type Output = AlgNum;
    fn sub(self, o: Self) -> Self {
        let field = self.join(&o);
        let p = self.poly().sub(&o.poly());
        AlgNum { field, c: p.c }
    }
}
impl Mul for AlgNum {
    type Output = AlgNum;
    fn mul(self, o: Self) -> Self {
        let field = self.join(&o);
        if self.is_rational() || o.is_rational() {
            let (s, p) = if self.is_rational() { (&self, &o) } else { (&o, &self) };
            let k = s.c.first().cloned().unwrap_or_else(Rat::zero);
            if k.is_zero() {
                return AlgNum { field, c: vec![] };
            }
            return AlgNum { field, c: p.c.iter().map(|x| x.clone() * k.clone()).collect() };
        }
        let p = self.poly().mul(&o.poly());
        let k = field.expect("irrational element without field");
        let r = p.rem(&k.minpoly);
        AlgNum { field: Some(k), c: r.c }
    }
}
impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> Self {
        AlgNum { field: self.field, c: self.c.into_iter().map(|x| -x).collect() }
    }
}
impl Div for AlgNum {
    type Output = AlgNum;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}
impl Zero for AlgNum {
    fn zero() -> Self {
        AlgNum { field: None, c: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}
impl One for AlgNum {
    fn one() -> Self {
        AlgNum::rational(Rat::one())
    }
}

impl Field for AlgNum {
    fn from_rat(r: &Rat) -> Self {
        AlgNum::rational(r.clone())
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in number field");
        if self.is_rational() {
            return AlgNum { field: self.field.clone(), c: vec![self.c[0].recip()] };
        }
        let k = self.field.clone().expect("irrational element without field");
        let (g, s, _) = self.poly().xgcd(&k.minpoly);
        debug_assert_eq!(g.deg(), 0);
        AlgNum::from_poly(&k, &s)
    }
    fn one_like(&self) -> Self {
        AlgNum { field: self.field.clone(), c: vec![Rat::one()] }
    }
    fn as_rat(&self) -> Option<Rat> {
        match self.c.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }
}
