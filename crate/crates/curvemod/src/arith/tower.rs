//! Factoring over a simple number field K = Q(a) and adjoining roots.
//!
//! Factorization over K uses the norm trick: for a squarefree s over K and a
//! shift c with N(T) = Res_X(m(X), s(T - cX)) squarefree, the irreducible
//! factors of s are gcd(s(T), N_i(T + c a)) for the Q-factors N_i of N.

use super::factor::factor_uni;
use super::field::{rat, Field, Rat};
use super::mpoly::MPoly;
use super::numfield::{AlgNum, NumField};
use super::resultant::resultant;
use super::upoly::UniPoly;
use std::sync::Arc;

/// None stands for Q.
pub type Fld = Option<Arc<NumField>>;

pub fn field_degree(k: &Fld) -> usize {
    k.as_ref().map(|f| f.degree()).unwrap_or(1)
}

pub fn embed(k: &Fld, r: &Rat) -> AlgNum {
    match k {
        Some(k) => AlgNum::in_field(k, r.clone()),
        None => AlgNum::rational(r.clone()),
    }
}

fn shifts() -> impl Iterator<Item = i64> {
    // 0, 1, -1, 2, -2, ...
    (0..40).map(|i: i64| if i % 2 == 1 { (i + 1) / 2 } else { -i / 2 })
}

/// s(T - cX) with each coefficient s_k(a) read as a polynomial in X; vars (T, X).
fn shifted_bivariate(s: &UniPoly<AlgNum>, c: i64) -> MPoly<Rat> {
    let lin = MPoly::from_terms([([1, 0, 0], rat(1)), ([0, 1, 0], rat(-c))]);
    let mut acc = MPoly::zero();
    let mut pw = MPoly::one();
    for coef in &s.c {
        let ck = MPoly::from_terms(coef.c.iter().enumerate().map(|(i, r)| ([0, i as u32, 0], r.clone())));
        acc = acc.add(&ck.mul(&pw));
        pw = pw.mul(&lin);
    }
    acc
}

/// Squarefree norm of s over K, with the shift used.
fn sqfree_norm(k: &Arc<NumField>, s: &UniPoly<AlgNum>) -> (UniPoly<Rat>, i64) {
    let m = MPoly::from_uni(&k.minpoly, 1);
    for c in shifts() {
        let sb = shifted_bivariate(s, c);
        let n = resultant(&sb, &m, 1).expect("nonzero").to_uni(0);
        if n.deg() >= 1 && n.gcd(&n.deriv()).deg() == 0 {
            return (n, c);
        }
    }
    panic!("no squarefree norm found")
}

fn lift_q(k: &Fld, p: &UniPoly<Rat>) -> UniPoly<AlgNum> {
    p.map(|a| embed(k, a))
}

/// Irreducible monic factors over K with multiplicities.
pub fn factor_over(k: &Fld, s: &UniPoly<AlgNum>) -> Vec<(UniPoly<AlgNum>, u32)> {
    let mut out = Vec::new();
    for (sq, e) in s.squarefree_decomposition() {
        for f in factor_squarefree_over(k, &sq) {
            out.push((f, e));
        }
    }
    out
}

fn factor_squarefree_over(k: &Fld, s: &UniPoly<AlgNum>) -> Vec<UniPoly<AlgNum>> {
    if s.deg() <= 1 {
        return vec![s.monic()];
    }
    let kf = match k {
        None => {
            let q = as_rational_poly(s).expect("rational polynomial");
            return factor_uni(&q).factors.into_iter().map(|(f, _)| lift_q(k, &f).monic()).collect();
        }
        Some(kf) => kf,
    };
    let (n, c) = sqfree_norm(kf, s);
    let a = AlgNum::gen(kf);
    let shift = UniPoly::new(vec![a.clone() * embed(k, &rat(c)), embed(k, &rat(1))]);
    let mut out = Vec::new();
    for (ni, _) in factor_uni(&n).factors {
        let g = s.gcd(&lift_q(k, &ni).compose(&shift));
        if g.deg() >= 1 {
            out.push(g.monic());
        }
    }
    out
}

fn as_rational_poly(s: &UniPoly<AlgNum>) -> Option<UniPoly<Rat>> {
    let c: Option<Vec<Rat>> = s.c.iter().map(|a| a.as_rat()).collect();
    c.map(UniPoly::new)
}

/// K(xi) for a root xi of an irreducible s over K, as a simple field L with
/// the images of a and xi.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: Fld,
    /// image of the generator of K (None when K = Q)
    pub a: Option<AlgNum>,
    pub xi: AlgNum,
}

impl Extension {
    /// Image of an element of K.
    pub fn lift(&self, x: &AlgNum) -> AlgNum {
        match &self.a {
            None => embed(&self.field, &x.as_rat().expect("element of Q")),
            Some(a) => {
                let mut acc = embed(&self.field, &Rat::from_integer(0.into()));
                for c in x.c.iter().rev() {
                    acc = acc * a.clone() + embed(&self.field, c);
                }
                acc
            }
        }
    }

    pub fn degree(&self) -> usize {
        field_degree(&self.field)
    }
}

pub fn adjoin_root(k: &Fld, s: &UniPoly<AlgNum>) -> Extension {
    if s.deg() == 1 {
        let xi = -s.c[0].clone() / s.c[1].clone();
        let a = k.as_ref().map(AlgNum::gen);
        return Extension { field: k.clone(), a, xi };
    }
    match k {
        None => {
            let q = as_rational_poly(s).expect("rational polynomial");
            let l = NumField::new(&q);
            Extension { field: Some(l.clone()), a: None, xi: AlgNum::gen(&l) }
        }
        Some(kf) => {
            let (n, c) = sqfree_norm(kf, s);
            let l = NumField::new(&n);
            let lf = Some(l.clone());
            let theta = AlgNum::gen(&l);
            // a is the common root of m(X) and s(theta - cX)
            let m = lift_q(&lf, &kf.minpoly);
            let lin = UniPoly::new(vec![theta.clone(), embed(&lf, &rat(-c))]);
            let mut acc = UniPoly::zero();
            let mut pw = UniPoly::constant(embed(&lf, &rat(1)));
            for coef in &s.c {
                let ck = lift_q(&lf, &coef.poly());
                acc = acc.add(&ck.mul(&pw));
                pw = pw.mul(&lin);
            }
            let g = m.gcd(&acc);
            assert_eq!(g.deg(), 1, "primitive element gcd must be linear");
            let a = -g.c[0].clone() / g.c[1].clone();
            let xi = theta - a.clone() * embed(&lf, &rat(c));
            Extension { field: lf, a: Some(a), xi }
        }
    }
}
