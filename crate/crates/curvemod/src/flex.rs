//! Virtual flex points: the intersection of a curve with its Hessian, the
//! normalized measures p_max and L_max, and the resulting properness test.

use crate::arith::bifactor::absolute_component_count;
use crate::arith::field::{rat, Rat};
use crate::arith::solve::{intersect, AlgPoint, PointClass};
use crate::arith::{factor_rational, hessian, HomoForm};
use crate::singularity::{intersection_multiplicity_at, IMult};
use crate::Error;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct FlexEntry {
    pub points: PointClass,
    /// phi of each point in the class
    pub phi: u32,
}

#[derive(Clone, Debug)]
pub struct VirtualFlexSet {
    pub n: u32,
    pub entries: Vec<FlexEntry>,
}

impl VirtualFlexSet {
    pub fn total(&self) -> u32 {
        self.entries.iter().map(|e| e.phi * e.points.count() as u32).sum()
    }

    /// 3n(n-2)
    pub fn expected_total(&self) -> u32 {
        3 * self.n * (self.n - 2)
    }

    /// Individual points with phi, conjugates expanded.
    pub fn points(&self) -> Vec<FlexPoint> {
        let mut out = Vec::new();
        for e in &self.entries {
            let exact = match &e.points {
                PointClass::Exact(p) if p.is_rational() => p.to_rat(),
                _ => None,
            };
            for c in e.points.embeddings() {
                out.push(FlexPoint { coords: c, exact: exact.clone(), phi: e.phi });
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct FlexPoint {
    pub coords: [Complex64; 3],
    pub exact: Option<[Rat; 3]>,
    pub phi: u32,
}

/// Reject curves containing a line or a multiple component.
pub fn check_admissible(f: &HomoForm) -> Result<(), Error> {
    for (c, m) in factor_rational(f).components {
        if m > 1 {
            return Err(Error::MultipleComponent);
        }
        let d = c.degree() as usize;
        if d == 1 || absolute_component_count(c.poly()) == d {
            return Err(Error::ContainsLine);
        }
    }
    Ok(())
}

/// All common points of f and its Hessian with local intersection numbers.
pub fn virtual_flexes(f: &HomoForm, cap: usize) -> Result<VirtualFlexSet, Error> {
    check_admissible(f)?;
    let h = hessian(f)?;
    if h.is_zero() {
        return Err(Error::ContainsLine);
    }
    let entries: Vec<FlexEntry> = intersect(f.poly(), &h, cap)?
        .into_iter()
        .map(|i| FlexEntry { points: i.points, phi: i.mult })
        .collect();
    let v = VirtualFlexSet { n: f.degree(), entries };
    if v.total() != v.expected_total() {
        return Err(Error::NoConvergence(format!("flex total {} differs from {}", v.total(), v.expected_total())));
    }
    Ok(v)
}

/// phi(p) = I_p(f, Hessian f).
pub fn flex_multiplicity_at(f: &HomoForm, p: &AlgPoint) -> Result<u64, Error> {
    if !p.eval(f.poly()).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    match intersection_multiplicity_at(f.poly(), &hessian(f)?, p) {
        IMult::Finite(v) => Ok(v),
        IMult::Infinite => Err(Error::CommonComponent),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlexMeasures {
    pub total: u32,
    pub p_max: Rat,
    pub l_max: Rat,
    /// index into `VirtualFlexSet::points`
    pub witness_point: usize,
    /// pair of point indices spanning a maximizing line, if it holds two
    pub witness_line: Option<(usize, usize)>,
}

pub const COLLINEAR_TOL: f64 = 1e-9;

fn collinear(a: &FlexPoint, b: &FlexPoint, c: &FlexPoint) -> bool {
    if let (Some(x), Some(y), Some(z)) = (&a.exact, &b.exact, &c.exact) {
        let d = x[0].clone() * (y[1].clone() * z[2].clone() - y[2].clone() * z[1].clone())
            - x[1].clone() * (y[0].clone() * z[2].clone() - y[2].clone() * z[0].clone())
            + x[2].clone() * (y[0].clone() * z[1].clone() - y[1].clone() * z[0].clone());
        return d.is_zero();
    }
    let (x, y, z) = (&a.coords, &b.coords, &c.coords);
    let d = x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) + x[2] * (y[0] * z[1] - y[1] * z[0]);
    let n = |p: &[Complex64; 3]| p.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    d.norm() <= COLLINEAR_TOL * n(x) * n(y) * n(z)
}

pub fn flex_measures(v: &VirtualFlexSet) -> Result<FlexMeasures, Error> {
    let pts = v.points();
    if pts.is_empty() {
        return Err(Error::InvalidInput("no virtual flex points".into()));
    }
    let total = v.expected_total();
    let (wp, best_p) = pts.iter().enumerate().map(|(i, p)| (i, p.phi)).max_by_key(|&(i, p)| (p, std::cmp::Reverse(i))).unwrap();
    let mut best_l = best_p;
    let mut wl = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let s: u32 = pts
                .iter()
                .enumerate()
                .filter(|(k, p)| *k == i || *k == j || collinear(&pts[i], &pts[j], p))
                .map(|(_, p)| p.phi)
                .sum();
            if s > best_l || (wl.is_none() && s == best_l) {
                best_l = s;
                wl = Some((i, j));
            }
        }
    }
    let t = rat(total as i64);
    Ok(FlexMeasures {
        total,
        p_max: rat(best_p as i64) / t.clone(),
        l_max: rat(best_l as i64) / t,
        witness_point: wp,
        witness_line: wl,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Properness {
    /// valid kappa range (p_max, 1 - L_max)
    Proper(Rat, Rat),
    Inconclusive,
}

pub fn properness_from(m: &FlexMeasures) -> Properness {
    if m.p_max.clone() + m.l_max.clone() < rat(1) {
        Properness::Proper(m.p_max.clone(), rat(1) - m.l_max.clone())
    } else {
        Properness::Inconclusive
    }
}

pub fn properness_test(f: &HomoForm, cap: usize) -> Result<(FlexMeasures, Properness), Error> {
    let m = flex_measures(&virtual_flexes(f, cap)?)?;
    let p = properness_from(&m);
    Ok((m, p))
}

/// p_max < kappa and L_max < 1 - kappa.
pub fn un_kappa_member(f: &HomoForm, kappa: &Rat, cap: usize) -> Result<bool, Error> {
    if !kappa.is_positive() || *kappa >= rat(1) {
        return Err(Error::InvalidInput("kappa must lie in (0, 1)".into()));
    }
    let (m, _) = properness_test(f, cap)?;
    Ok(m.p_max < *kappa && m.l_max < rat(1) - kappa.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::ratf;
    use crate::arith::solve::DEFAULT_EXTENSION_CAP as CAP;

    fn measures(s: &str) -> (Rat, Rat, Properness) {
        let (m, p) = properness_test(&HomoForm::parse(s).unwrap(), CAP).unwrap();
        (m.p_max, m.l_max, p)
    }

    #[test]
    fn flex_totals() {
        let v = virtual_flexes(&HomoForm::parse("x^4 + y^4 + z^4").unwrap(), CAP).unwrap();
        assert_eq!(v.total(), 24);
        let v = virtual_flexes(&HomoForm::parse("x^3 + y^3 + z^3").unwrap(), CAP).unwrap();
        assert!(v.points().iter().all(|p| p.phi == 1));
        let v = virtual_flexes(&HomoForm::parse("(x^2 + 2*y^2 - 3*z^2)*(2*x^2 + y^2 - 3*z^2)").unwrap(), CAP).unwrap();
        let phis: Vec<u32> = v.points().iter().map(|p| p.phi).collect();
        assert_eq!(phis, vec![6, 6, 6, 6]);
    }

    #[test]
    fn admissibility() {
        assert_eq!(virtual_flexes(&HomoForm::parse("(x^2 + y^2 - z^2)*x").unwrap(), CAP).unwrap_err(), Error::ContainsLine);
        assert_eq!(virtual_flexes(&HomoForm::parse("x^2 + y^2").unwrap(), CAP).unwrap_err(), Error::ContainsLine);
        assert_eq!(virtual_flexes(&HomoForm::parse("(x^2 + y^2 - z^2)^2").unwrap(), CAP).unwrap_err(), Error::MultipleComponent);
    }

    #[test]
    fn local_flex_multiplicities() {
        let pt = |v: [i64; 3]| AlgPoint::rational(v.map(rat));
        // y z^2 = x^3 + x z^2 ... use y^2 z = x^3 - x z^2 + z^3 style curves
        let simple = HomoForm::parse("y*z^2 - x^3 - y^3").unwrap();
        assert_eq!(flex_multiplicity_at(&simple, &pt([0, 0, 1])).unwrap(), 1);
        let double = HomoForm::parse("y*z^3 - x^4 - y^4").unwrap();
        assert_eq!(flex_multiplicity_at(&double, &pt([0, 0, 1])).unwrap(), 2);
        let node = HomoForm::parse("y^2*z - x^3 - x^2*z").unwrap();
        assert_eq!(flex_multiplicity_at(&node, &pt([0, 0, 1])).unwrap(), 6);
        let triple = HomoForm::parse("x*y*(x + y)*z - x^4 - y^4").unwrap();
        assert_eq!(flex_multiplicity_at(&triple, &pt([0, 0, 1])).unwrap(), 18);
        assert_eq!(flex_multiplicity_at(&node, &pt([1, 1, 1])), Err(Error::PointNotOnCurve));
    }

    #[test]
    fn conic_pairs() {
        let c1 = "(y*z - x^2)";
        let cases = [
            (format!("{c1}*(y*z - x^2 + y^2)"), ratf(1, 1), rat(1)),
            (format!("{c1}*(y*z - x^2 + (y - z)^2)"), ratf(1, 2), rat(1)),
            (format!("{c1}*(-x^2 + 3*x*y - y^2 - y*z)"), ratf(1, 2), ratf(3, 4)),
            ("(x^2 + 2*y^2 - 3*z^2)*(2*x^2 + y^2 - 3*z^2)".to_string(), ratf(1, 4), ratf(1, 2)),
        ];
        for (i, (s, p, l)) in cases.iter().enumerate() {
            let (pm, lm, prop) = measures(s);
            assert_eq!((&pm, &lm), (p, l), "{s}");
            assert_eq!(matches!(prop, Properness::Proper(..)), i == 3, "{s}");
        }
    }

    #[test]
    fn smooth_cubic_measures() {
        let (p, l, prop) = measures("x^3 + y^3 + z^3");
        assert_eq!((p, l), (ratf(1, 9), ratf(1, 3)));
        assert_eq!(prop, Properness::Proper(ratf(1, 9), ratf(2, 3)));
        let f = HomoForm::parse("x^3 + y^3 + z^3").unwrap();
        assert!(un_kappa_member(&f, &ratf(1, 2), CAP).unwrap());
    }

    #[test]
    fn kappa_membership() {
        let q = HomoForm::parse("x^4 + y^4 + z^4").unwrap();
        assert!(un_kappa_member(&q, &ratf(2, 5), CAP).unwrap());
        let three = HomoForm::parse("(y*z - x^2)*(-x^2 + 3*x*y - y^2 - y*z)").unwrap();
        assert!(!un_kappa_member(&three, &ratf(2, 5), CAP).unwrap());
    }
}
