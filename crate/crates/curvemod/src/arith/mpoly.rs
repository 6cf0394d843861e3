//! Sparse polynomials in x, y, z. The same type holds homogeneous forms and
//! affine polynomials (which simply never use z, or use it as a variable).

use super::field::{Field, Rat};
use super::upoly::UniPoly;
use std::collections::BTreeMap;

pub type Exp = [u32; 3];

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<F> {
    pub terms: BTreeMap<Exp, F>,
}

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;

impl<F: Field> MPoly<F> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(a: F) -> Self {
        MPoly::term(a, [0, 0, 0])
    }

    pub fn one() -> Self {
        MPoly::constant(F::one())
    }

    pub fn term(a: F, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(e, a);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        MPoly::term(F::one(), e)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exp, F)>) -> Self {
        let mut p = MPoly::zero();
        for (e, a) in it {
            p.add_term(e, a);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, a: F) {
        if a.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + a;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, a);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> i32 {
        self.terms.keys().map(|e| (e[0] + e[1] + e[2]) as i32).max().unwrap_or(-1)
    }

    pub fn min_degree(&self) -> i32 {
        self.terms.keys().map(|e| (e[0] + e[1] + e[2]) as i32).min().unwrap_or(-1)
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v] as i32).max().unwrap_or(-1)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_degree();
        self.terms.keys().all(|e| (e[0] + e[1] + e[2]) as i32 == d)
    }

    /// Lexicographically largest exponent and its coefficient.
    pub fn leading(&self) -> Option<(&Exp, &F)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, a) in &o.terms {
            r.add_term(*e, a.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, a) in &o.terms {
            r.add_term(*e, -a.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, a)| (*e, -a.clone())).collect() }
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.clone() * a.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = MPoly::zero();
        for (e1, a) in &self.terms {
            for (e2, b) in &o.terms {
                r.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], a.clone() * b.clone());
            }
        }
        r
    }

    pub fn mul_monomial(&self, a: &F, e: Exp) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(k, c)| {
                    let v = c.clone() * a.clone();
                    (!v.is_zero()).then_some(([k[0] + e[0], k[1] + e[1], k[2] + e[2]], v))
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn deriv(&self, v: usize) -> Self {
        let mut r = MPoly::zero();
        for (e, a) in &self.terms {
            if e[v] > 0 {
                let mut e2 = *e;
                e2[v] -= 1;
                r.add_term(e2, a.clone() * F::from_i64(e[v] as i64));
            }
        }
        r
    }

    pub fn eval(&self, p: &[F; 3]) -> F {
        let mut acc = F::zero();
        for (e, a) in &self.terms {
            let mut t = a.clone();
            for v in 0..3 {
                if e[v] > 0 {
                    t = t * p[v].pow(e[v]);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute x_i -> sum_j m[i][j] * x_j, i.e. the polynomial f(M * X).
    pub fn linear_subst(&self, m: &[[F; 3]; 3]) -> Self {
        let lin: Vec<MPoly<F>> = (0..3)
            .map(|i| MPoly::from_terms((0..3).map(|j| {
                let mut e = [0; 3];
                e[j] = 1;
                (e, m[i][j].clone())
            })))
            .collect();
        let maxd = (0..3).map(|v| self.degree_in(v).max(0) as usize).collect::<Vec<_>>();
        let pows: Vec<Vec<MPoly<F>>> = (0..3)
            .map(|i| {
                let mut v = vec![MPoly::one()];
                for k in 1..=maxd[i] {
                    let next = v[k - 1].mul(&lin[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut r = MPoly::zero();
        for (e, a) in &self.terms {
            let t = pows[0][e[0] as usize]
                .mul(&pows[1][e[1] as usize])
                .mul(&pows[2][e[2] as usize]);
            r = r.add(&t.scale(a));
        }
        r
    }

    /// Substitute an arbitrary polynomial for each variable.
    pub fn compose(&self, s: &[MPoly<F>; 3]) -> Self {
        let mut r = MPoly::zero();
        for (e, a) in &self.terms {
            let t = s[0].pow(e[0]).mul(&s[1].pow(e[1])).mul(&s[2].pow(e[2]));
            r = r.add(&t.scale(a));
        }
        r
    }

    /// Set variable v to the constant c.
    pub fn subs_const(&self, v: usize, c: &F) -> Self {
        let mut r = MPoly::zero();
        for (e, a) in &self.terms {
            let mut e2 = *e;
            e2[v] = 0;
            r.add_term(e2, a.clone() * c.pow(e[v]));
        }
        r
    }

    /// Coefficients of powers of variable v (each free of v).
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly<F>> {
        let d = self.degree_in(v);
        if d < 0 {
            return vec![];
        }
        let mut out = vec![MPoly::zero(); d as usize + 1];
        for (e, a) in &self.terms {
            let mut e2 = *e;
            e2[v] = 0;
            out[e[v] as usize].add_term(e2, a.clone());
        }
        out
    }

    /// Univariate polynomial in variable v, valid when only v occurs.
    pub fn to_uni(&self, v: usize) -> UniPoly<F> {
        let d = self.degree_in(v).max(0) as usize;
        let mut c = vec![F::zero(); d + 1];
        for (e, a) in &self.terms {
            c[e[v] as usize] = c[e[v] as usize].clone() + a.clone();
        }
        UniPoly::new(c)
    }

    pub fn from_uni(p: &UniPoly<F>, v: usize) -> Self {
        MPoly::from_terms(p.c.iter().enumerate().map(|(k, a)| {
            let mut e = [0; 3];
            e[v] = k as u32;
            (e, a.clone())
        }))
    }

    /// Homogenize with respect to variable v up to total degree d.
    pub fn homogenize(&self, v: usize, d: u32) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| {
                    let mut e2 = *e;
                    e2[v] += d - (e[0] + e[1] + e[2]);
                    (e2, a.clone())
                })
                .collect(),
        }
    }

    /// Divide by the coefficient of the lexicographically largest monomial.
    pub fn normalize(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, a)) => {
                let inv = a.inv();
                self.scale(&inv)
            }
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (de, dc) = d.leading().map(|(e, c)| (*e, c.clone())).unwrap();
        let inv = dc.inv();
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((e, c)) = r.leading().map(|(e, c)| (*e, c.clone())) {
            if e[0] < de[0] || e[1] < de[1] || e[2] < de[2] {
                return None;
            }
            let qe = [e[0] - de[0], e[1] - de[1], e[2] - de[2]];
            let qc = c * inv.clone();
            r = r.sub(&d.mul_monomial(&qc, qe));
            q.add_term(qe, qc);
        }
        Some(q)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        MPoly::from_terms(self.terms.iter().map(|(e, a)| (*e, f(a))))
    }

    /// Lowest total degree homogeneous part.
    pub fn lowest_form(&self) -> Self {
        let m = self.min_degree();
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| (e[0] + e[1] + e[2]) as i32 == m)
                .map(|(e, a)| (*e, a.clone()))
                .collect(),
        }
    }

    /// True when `self = c * o` for some nonzero scalar c.
    pub fn proportional(&self, o: &Self) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        self.normalize() == o.normalize()
    }

    /// f(x + a, y + b) for an affine polynomial in x, y.
    pub fn translate_xy(&self, a: &F, b: &F) -> Self {
        let sx = MPoly::var(X).add(&MPoly::constant(a.clone()));
        let sy = MPoly::var(Y).add(&MPoly::constant(b.clone()));
        let dx = self.degree_in(X).max(0) as usize;
        let dy = self.degree_in(Y).max(0) as usize;
        let mut px = vec![MPoly::one()];
        for k in 1..=dx {
            let n = px[k - 1].mul(&sx);
            px.push(n);
        }
        let mut py = vec![MPoly::one()];
        for k in 1..=dy {
            let n = py[k - 1].mul(&sy);
            py.push(n);
        }
        let mut r = MPoly::zero();
        for (e, c) in &self.terms {
            let t = px[e[0] as usize].mul(&py[e[1] as usize]).mul_monomial(c, [0, 0, e[2]]);
            r = r.add(&t);
        }
        r
    }
}

impl MPoly<Rat> {
    /// Hessian determinant of the second partials.
    pub fn hessian(&self) -> Self {
        let d: Vec<Vec<MPoly<Rat>>> = (0..3)
            .map(|i| (0..3).map(|j| self.deriv(i).deriv(j)).collect())
            .collect();
        let m = |a: usize, b: usize, c: usize, e: usize| d[a][b].mul(&d[c][e]);
        let t0 = d[0][0].mul(&m(1, 1, 2, 2).sub(&m(1, 2, 2, 1)));
        let t1 = d[0][1].mul(&m(1, 0, 2, 2).sub(&m(1, 2, 2, 0)));
        let t2 = d[0][2].mul(&m(1, 0, 2, 1).sub(&m(1, 1, 2, 0)));
        t0.sub(&t1).add(&t2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;

    fn x() -> MPoly<Rat> {
        MPoly::var(X)
    }
    fn y() -> MPoly<Rat> {
        MPoly::var(Y)
    }
    fn z() -> MPoly<Rat> {
        MPoly::var(Z)
    }

    #[test]
    fn fermat_hessian() {
        let f = x().pow(3).add(&y().pow(3)).add(&z().pow(3));
        let h = f.hessian();
        assert_eq!(h, MPoly::term(rat(216), [1, 1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&z().scale(&rat(2)));
        let p = a.mul(&b).mul(&b);
        assert_eq!(p.exact_div(&b).unwrap(), a.mul(&b));
        assert!(p.exact_div(&y()).is_none());
    }

    #[test]
    fn linear_substitution_swap() {
        let o = rat(1);
        let zz = rat(0);
        let swap = [[zz.clone(), o.clone(), zz.clone()], [o.clone(), zz.clone(), zz.clone()], [zz.clone(), zz.clone(), o]];
        assert_eq!(x().linear_subst(&swap), y());
    }

    #[test]
    fn translation() {
        let f = x().mul(&x()).sub(&y());
        let g = f.translate_xy(&rat(1), &rat(1));
        // (x+1)^2 - (y+1) = x^2 + 2x - y
        assert_eq!(g, x().mul(&x()).add(&x().scale(&rat(2))).sub(&y()));
    }
}
