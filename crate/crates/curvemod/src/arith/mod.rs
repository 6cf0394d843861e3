//! Exact arithmetic kernel: scalars, polynomials, resultants, factoring and
//! point solving.

pub mod bifactor;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod mpoly;
pub mod numfield;
pub mod parse;
pub mod quad;
pub mod resultant;
pub mod roots;
pub mod solve;
pub mod tower;
pub mod upoly;
pub mod zmod;

pub use field::{rat, ratf, Field, Rat};
pub use mpoly::MPoly;
pub use numfield::{AlgNum, NumField};
pub use quad::QuadExt;
pub use upoly::UniPoly;

use crate::Error;
use linalg::{det, inverse, to3, Mat};
use num_traits::Zero;
use std::fmt;

/// Nonzero homogeneous polynomial in x, y, z over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct HomoForm {
    poly: MPoly<Rat>,
}

impl HomoForm {
    pub fn new(poly: MPoly<Rat>) -> Result<Self, Error> {
        if poly.is_zero() {
            return Err(Error::ZeroForm);
        }
        if !poly.is_homogeneous() {
            return Err(Error::InvalidInput("polynomial is not homogeneous".into()));
        }
        Ok(HomoForm { poly })
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        HomoForm::new(parse::parse_form(text)?)
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree() as u32
    }

    pub fn poly(&self) -> &MPoly<Rat> {
        &self.poly
    }

    pub fn into_poly(self) -> MPoly<Rat> {
        self.poly
    }

    /// Representative scaled so the lex-largest coefficient is 1.
    pub fn normalized(&self) -> Self {
        HomoForm { poly: self.poly.normalize() }
    }

    pub fn proportional(&self, o: &HomoForm) -> bool {
        self.poly.proportional(&o.poly)
    }
}

impl fmt::Display for HomoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::print_poly(&self.poly))
    }
}

/// Effective 1-cycle: Q-irreducible components with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Cycle {
    pub components: Vec<(HomoForm, u32)>,
}

impl Cycle {
    pub fn degree(&self) -> u32 {
        self.components.iter().map(|(f, m)| f.degree() * m).sum()
    }

    /// Product of the components with multiplicity.
    pub fn expand(&self) -> MPoly<Rat> {
        self.components.iter().fold(MPoly::one(), |acc, (f, m)| acc.mul(&f.poly.pow(*m)))
    }

    /// Product of the distinct components.
    pub fn support(&self) -> MPoly<Rat> {
        self.components.iter().fold(MPoly::one(), |acc, (f, _)| acc.mul(&f.poly))
    }

    pub fn is_reduced(&self) -> bool {
        self.components.iter().all(|(_, m)| *m == 1)
    }
}

pub fn factor_rational(f: &HomoForm) -> Cycle {
    let (_, facs) = bifactor::factor_form(&f.poly);
    Cycle { components: facs.into_iter().map(|(h, e)| (HomoForm { poly: h }, e)).collect() }
}

pub fn hessian(f: &HomoForm) -> Result<MPoly<Rat>, Error> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooLow { need: 2, got: f.degree() });
    }
    Ok(f.poly.hessian())
}

/// Image of the curve under g: the form f(g^{-1} X).
pub fn act(g: &Mat<Rat>, f: &HomoForm) -> Result<HomoForm, Error> {
    let inv = inverse(g).ok_or(Error::SingularMatrix)?;
    Ok(HomoForm { poly: f.poly.linear_subst(&to3(&inv)) })
}

pub fn is_invertible(g: &Mat<Rat>) -> bool {
    !det(g).is_zero()
}

/// Sylvester resultant of two polynomials with respect to `var`.
pub fn resultant(f: &MPoly<Rat>, g: &MPoly<Rat>, var: usize) -> Result<MPoly<Rat>, Error> {
    resultant::resultant(f, g, var)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: [[i64; 3]; 3]) -> Mat<Rat> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn hessian_degrees() {
        let f = HomoForm::parse("x^3 + y^3 + z^3").unwrap();
        assert_eq!(hessian(&f).unwrap(), MPoly::term(rat(216), [1, 1, 1]));
        let c = HomoForm::parse("x*z - y^2").unwrap();
        let h = hessian(&c).unwrap();
        assert_eq!(h.total_degree(), 0);
        assert!(!h.is_zero());
        let q = HomoForm::parse("x^4 + x*y^3 + z^4 - x^2*y*z").unwrap();
        assert_eq!(hessian(&q).unwrap().total_degree(), 6);
        assert!(matches!(hessian(&HomoForm::parse("x").unwrap()), Err(Error::DegreeTooLow { .. })));
    }

    #[test]
    fn act_group_law() {
        let f = HomoForm::parse("x").unwrap();
        let swap = m([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let g = act(&swap, &f).unwrap();
        assert!(g.proportional(&HomoForm::parse("y").unwrap()));
        let a = m([[1, 2, 0], [0, 1, 3], [1, 0, 1]]);
        let c = HomoForm::parse("y^2*z - x^3 - x*z^2").unwrap();
        let back = act(&inverse(&a).unwrap(), &act(&a, &c).unwrap()).unwrap();
        assert!(back.proportional(&c));
        assert!(matches!(act(&m([[1, 0, 0], [1, 0, 0], [0, 0, 1]]), &c), Err(Error::SingularMatrix)));
    }

    #[test]
    fn factoring_cycle() {
        let f = HomoForm::parse("(x+y)^2*z").unwrap();
        let c = factor_rational(&f);
        assert_eq!(c.degree(), 3);
        assert!(c.expand().proportional(f.poly()));
    }
}
