//! Dense univariate polynomials over a field, ascending coefficients.

use super::field::{Field, Rat};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F> {
    pub c: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: vec![] }
    }

    pub fn constant(a: F) -> Self {
        UniPoly::new(vec![a])
    }

    pub fn one() -> Self {
        UniPoly::constant(F::one())
    }

    /// The monomial x.
    pub fn x() -> Self {
        UniPoly { c: vec![F::zero(), F::one()] }
    }

    pub fn monomial(a: F, k: usize) -> Self {
        let mut c = vec![F::zero(); k + 1];
        c[k] = a;
        UniPoly::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> F {
        self.c.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn coeff(&self, k: usize) -> F {
        self.c.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + o.coeff(i));
        }
        UniPoly::new(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) - o.coeff(i));
        }
        UniPoly::new(c)
    }

    pub fn neg(&self) -> Self {
        UniPoly { c: self.c.iter().map(|a| -a.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(c)
    }

    pub fn scale(&self, a: &F) -> Self {
        UniPoly::new(self.c.iter().map(|x| x.clone() * a.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![F::zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let inv = d.lc().inv();
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd].clone() * inv.clone();
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].clone() - t.clone() * b.clone();
            }
            q[k] = t;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, `None` when the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn deriv(&self) -> Self {
        if self.c.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    /// Composition self(g).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UniPoly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(a.clone()));
        }
        acc
    }

    /// Squarefree decomposition (Yun): list of (monic factor, multiplicity),
    /// each factor squarefree and pairwise coprime, nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.deg() <= 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.deriv();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = fp.exact_div(&a0).expect("gcd divides derivative");
        let mut d = c.sub(&b.deriv());
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("divides");
            c = d.exact_div(&a).expect("divides");
            d = c.sub(&b.deriv());
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Self {
        if self.deg() <= 0 {
            return UniPoly::one();
        }
        let g = self.gcd(&self.deriv());
        self.exact_div(&g).expect("divides").monic()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.c.iter().map(f).collect())
    }

    /// Resultant over the field, by the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Self) -> F {
        if self.is_zero() || o.is_zero() {
            return F::zero();
        }
        let mut a = self.clone();
        let mut b = o.clone();
        let mut acc = F::one();
        loop {
            let da = a.deg() as u64;
            let db = b.deg() as u64;
            if db == 0 {
                return acc * b.lc().pow(da as u32);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return F::zero();
            }
            let dr = r.deg() as u64;
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc = acc * b.lc().pow((da - dr) as u32);
            a = b;
            b = r;
        }
    }
}

impl UniPoly<Rat> {
    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&v| super::field::rat(v)).collect())
    }
}

impl<F: Field + fmt::Display> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let s = a.to_string();
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{s}")?,
                1 => write!(f, "({s})*t")?,
                _ => write!(f, "({s})*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;

    fn p(c: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1]).mul(&p(&[2, 1]))), p(&[-1, 1]));
    }

    #[test]
    fn resultant_linear() {
        assert_eq!(p(&[-1, 1]).resultant(&p(&[-2, 1])), rat(-1));
        let f = p(&[1, 2, 3]);
        assert_eq!(f.resultant(&f), rat(0));
    }

    #[test]
    fn resultant_sign_rule() {
        let f = p(&[1, 0, 2, 1]);
        let g = p(&[3, -1, 4]);
        assert_eq!(f.resultant(&g), g.resultant(&f) * rat(1));
        let h = p(&[5, 2]);
        assert_eq!(f.resultant(&h), -h.resultant(&f));
    }

    #[test]
    fn yun() {
        // (x-1)^3 (x+2)
        let f = p(&[-1, 1]).pow(3).mul(&p(&[2, 1]));
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn xgcd_identity() {
        let a = p(&[1, 0, 1]);
        let b = p(&[0, 1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, p(&[1]));
    }
}
