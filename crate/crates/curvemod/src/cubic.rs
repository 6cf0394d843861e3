//! Plane cubics: Weierstrass reduction at a flex, J and the ratio (a^3 : b^2),
//! the flex-slope invariant and real classification.

use crate::arith::bifactor::absolute_component_count;
use crate::arith::field::{rat, rat_to_f64, Field, Rat};
use crate::arith::linalg::{det, inverse, matmul, to3, Mat};
use crate::arith::roots::{cbrt_interval, isolate_real_roots, refine_root};
use crate::arith::solve::{intersect, AlgPoint, Intersection};
use crate::arith::{factor_rational, hessian, HomoForm, MPoly, UniPoly};
use crate::divisor::{j_from_cubic_coeffs, P1};
use crate::Error;
use num_traits::{Signed, Zero};

/// y^2 z = x^3 + a x z^2 + b z^3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassForm {
    pub a: Rat,
    pub b: Rat,
}

impl WeierstrassForm {
    pub fn new(a: Rat, b: Rat) -> Self {
        WeierstrassForm { a, b }
    }

    /// Depressed form of y^2 = x^3 + c2 x^2 + c1 x + c0.
    pub fn from_monic(c2: &Rat, c1: &Rat, c0: &Rat) -> Self {
        let t = -c2.clone() / rat(3);
        // x -> x + t
        let a = rat(3) * t.clone() * t.clone() + rat(2) * c2.clone() * t.clone() + c1.clone();
        let b = t.clone().pow(3) + c2.clone() * t.clone() * t.clone() + c1.clone() * t + c0.clone();
        WeierstrassForm { a, b }
    }

    pub fn form(&self) -> HomoForm {
        let p = MPoly::from_terms([
            ([0, 2, 1], rat(1)),
            ([3, 0, 0], rat(-1)),
            ([1, 0, 2], -self.a.clone()),
            ([0, 0, 3], -self.b.clone()),
        ]);
        HomoForm::new(p).expect("nonzero")
    }

    /// Discriminant -4a^3 - 27b^2 of x^3 + ax + b.
    pub fn discriminant(&self) -> Rat {
        rat(-4) * self.a.clone().pow(3) - rat(27) * self.b.clone().pow(2)
    }

    pub fn has_finite_stabilizer(&self) -> bool {
        !(self.a.is_zero() && self.b.is_zero())
    }

    /// (t^4 a, t^6 b).
    pub fn rescale(&self, t: &Rat) -> Self {
        WeierstrassForm { a: t.clone().pow(4) * self.a.clone(), b: t.clone().pow(6) * self.b.clone() }
    }

    pub fn j(&self) -> Result<P1, Error> {
        j_from_cubic_coeffs(&self.a, &self.b)
    }
}

/// The ratio (a^3 : b^2), scaled so the last nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M3Point {
    pub a3: Rat,
    pub b2: Rat,
}

impl std::fmt::Display for M3Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} : {})", crate::arith::field::fmt_rat(&self.a3), crate::arith::field::fmt_rat(&self.b2))
    }
}

pub fn m3_point(w: &WeierstrassForm) -> Result<M3Point, Error> {
    if !w.has_finite_stabilizer() {
        return Err(Error::BothZero);
    }
    let a3 = w.a.clone().pow(3);
    let b2 = w.b.clone().pow(2);
    if b2.is_zero() {
        return Ok(M3Point { a3: rat(1), b2: rat(0) });
    }
    Ok(M3Point { a3: a3 / b2, b2: rat(1) })
}

fn check_irreducible_cubic(f: &HomoForm) -> Result<(), Error> {
    if f.degree() != 3 {
        return Err(Error::InvalidInput(format!("expected a cubic, got degree {}", f.degree())));
    }
    let c = factor_rational(f);
    if c.components.len() != 1 || c.components[0].1 != 1 || absolute_component_count(f.poly()) != 1 {
        return Err(Error::NotIrreducible);
    }
    Ok(())
}

fn cross(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn unit(i: usize) -> [Rat; 3] {
    std::array::from_fn(|j| if i == j { rat(1) } else { rat(0) })
}

/// Reduce an irreducible cubic to Weierstrass form at the given flex.
/// Returns (a, b) and g with act(g, f) proportional to the normal form.
pub fn reduce_weierstrass(f: &HomoForm, flex: &AlgPoint) -> Result<(WeierstrassForm, Mat<Rat>), Error> {
    check_irreducible_cubic(f)?;
    let p = flex.to_rat().ok_or_else(|| Error::ExtensionTooLarge("flex must have rational coordinates".into()))?;
    let phi = f.poly();
    let grad: [Rat; 3] = std::array::from_fn(|i| phi.deriv(i).eval(&p));
    if !phi.eval(&p).is_zero() || grad.iter().all(|g| g.is_zero()) || !hessian(f)?.eval(&p).is_zero() {
        return Err(Error::NotAFlex);
    }
    // new coordinates (X, Y, Z) = M (x, y, z): Z is the tangent, X vanishes at p
    let xrow = (0..3)
        .map(|i| cross(&p, &unit(i)))
        .find(|v| {
            let c = cross(v, &grad);
            v.iter().any(|t| !t.is_zero()) && c.iter().any(|t| !t.is_zero())
        })
        .expect("p is nonzero");
    let yrow = (0..3)
        .map(unit)
        .find(|e| !det(&vec![xrow.to_vec(), e.to_vec(), grad.to_vec()]).is_zero())
        .expect("independent row");
    let m: Mat<Rat> = vec![xrow.to_vec(), yrow.to_vec(), grad.to_vec()];
    // cur = f o T throughout
    let mut t = inverse(&m).ok_or(Error::SingularMatrix)?;
    let mut cur = phi.linear_subst(&to3(&t));
    let c = cur.coeff(&[3, 0, 0]);
    let alpha = cur.coeff(&[0, 2, 1]);
    let beta = cur.coeff(&[1, 1, 1]);
    let delta = cur.coeff(&[0, 1, 2]);
    debug_assert!(cur.coeff(&[0, 3, 0]).is_zero() && cur.coeff(&[1, 2, 0]).is_zero() && cur.coeff(&[2, 1, 0]).is_zero());
    let two_alpha = rat(2) * alpha.clone();
    let k = -c / alpha;
    let steps: [Mat<Rat>; 2] = [
        // complete the square in Y
        vec![
            vec![rat(1), rat(0), rat(0)],
            vec![-beta / two_alpha.clone(), rat(1), -delta / two_alpha],
            vec![rat(0), rat(0), rat(1)],
        ],
        // make the X^3 and Y^2 Z coefficients agree
        vec![
            vec![k.inv(), rat(0), rat(0)],
            vec![rat(0), k.inv(), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ],
    ];
    for s in steps {
        t = matmul(&t, &s);
    }
    cur = phi.linear_subst(&to3(&t));
    let lead = cur.coeff(&[0, 2, 1]);
    let a2 = -cur.coeff(&[2, 0, 1]) / lead.clone();
    let shift: Mat<Rat> = vec![
        vec![rat(1), rat(0), -a2 / rat(3)],
        vec![rat(0), rat(1), rat(0)],
        vec![rat(0), rat(0), rat(1)],
    ];
    t = matmul(&t, &shift);
    cur = phi.linear_subst(&to3(&t));
    let lead = cur.coeff(&[0, 2, 1]);
    let norm = cur.scale(&lead.inv());
    let w = WeierstrassForm { a: -norm.coeff(&[1, 0, 2]), b: -norm.coeff(&[0, 0, 3]) };
    debug_assert!(norm == *w.form().poly());
    let g = inverse(&t).ok_or(Error::SingularMatrix)?;
    Ok((w, g))
}

/// Points of f and its Hessian with local intersection multiplicities (sum 9).
pub fn find_flexes_cubic(f: &HomoForm, cap: usize) -> Result<Vec<Intersection>, Error> {
    check_irreducible_cubic(f)?;
    intersect(f.poly(), &hessian(f)?, cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealClass {
    SmoothConnected,
    SmoothTwoComponents,
    NodeAlpha,
    IsolatedPointEpsilon,
    Cusp,
}

impl RealClass {
    pub fn name(&self) -> &'static str {
        match self {
            RealClass::SmoothConnected => "SmoothConnected",
            RealClass::SmoothTwoComponents => "SmoothTwoComponents",
            RealClass::NodeAlpha => "NodeAlpha",
            RealClass::IsolatedPointEpsilon => "IsolatedPointEpsilon",
            RealClass::Cusp => "Cusp",
        }
    }
}

pub fn classify_real_cubic(w: &WeierstrassForm) -> RealClass {
    if !w.has_finite_stabilizer() {
        return RealClass::Cusp;
    }
    let d = w.discriminant();
    if d.is_positive() {
        RealClass::SmoothTwoComponents
    } else if d.is_negative() {
        RealClass::SmoothConnected
    } else if w.b.is_positive() {
        // double root r > 0 with the simple root -2r to its left
        RealClass::NodeAlpha
    } else {
        RealClass::IsolatedPointEpsilon
    }
}

/// Certified enclosure of the flex-slope invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct FlexSlope {
    pub lo: Rat,
    pub hi: Rat,
    /// x-coordinate of the finite real flex used, as an interval
    pub flex_x: (Rat, Rat),
    pub singular: bool,
}

impl FlexSlope {
    pub fn mid(&self) -> f64 {
        rat_to_f64(&((self.lo.clone() + self.hi.clone()) / rat(2)))
    }

    pub fn contains(&self, s: &Rat) -> bool {
        self.lo <= *s && *s <= self.hi
    }
}

#[derive(Clone, Debug)]
struct Iv(Rat, Rat);

impl Iv {
    fn pt(r: Rat) -> Self {
        Iv(r.clone(), r)
    }
    fn add(&self, o: &Iv) -> Iv {
        Iv(self.0.clone() + o.0.clone(), self.1.clone() + o.1.clone())
    }
    fn mul(&self, o: &Iv) -> Iv {
        let c = [
            self.0.clone() * o.0.clone(),
            self.0.clone() * o.1.clone(),
            self.1.clone() * o.0.clone(),
            self.1.clone() * o.1.clone(),
        ];
        Iv(c.iter().min().unwrap().clone(), c.iter().max().unwrap().clone())
    }
    fn div(&self, o: &Iv) -> Option<Iv> {
        if o.0 <= Rat::zero() && o.1 >= Rat::zero() {
            return None;
        }
        Some(self.mul(&Iv(o.1.inv(), o.0.inv())))
    }
    fn eval(p: &UniPoly<Rat>, x: &Iv) -> Iv {
        let mut acc = Iv::pt(Rat::zero());
        for c in p.c.iter().rev() {
            acc = acc.mul(x).add(&Iv::pt(c.clone()));
        }
        acc
    }
}

/// Default enclosure width 2^-160.
pub const DEFAULT_PREC: u32 = 160;

pub fn flex_slope(w: &WeierstrassForm) -> Result<FlexSlope, Error> {
    flex_slope_prec(w, DEFAULT_PREC)
}

/// s = (dY/dX) / cbrt(Y) at the finite real flex, so s^3 = f'^3 / (8 f^2)
/// with f = x^3 + ax + b. The enclosure is at most 2^-bits wide.
pub fn flex_slope_prec(w: &WeierstrassForm, bits: u32) -> Result<FlexSlope, Error> {
    match classify_real_cubic(w) {
        RealClass::NodeAlpha => {
            return Err(Error::WrongSingularityType("the two finite flexes collapse into the node".into()))
        }
        RealClass::Cusp => return Err(Error::WrongSingularityType("cusp has no finite flex".into())),
        _ => {}
    }
    let (a, b) = (w.a.clone(), w.b.clone());
    let f = UniPoly::new(vec![b.clone(), a.clone(), rat(0), rat(1)]);
    let fp = f.deriv();
    let q = UniPoly::new(vec![-a.clone() * a.clone(), rat(12) * b, rat(6) * a, rat(0), rat(3)]);
    let sq = q.squarefree_part();
    let target = Rat::new(1.into(), num_bigint::BigInt::from(2).pow(bits));
    let mut width = target.clone() / rat(1 << 20);
    let roots = isolate_real_roots(&sq);
    for _ in 0..8 {
        for (lo, hi) in &roots {
            let iv = refine_root(&sq, lo, hi, &width);
            let x = Iv(iv.0.clone(), iv.1.clone());
            let fx = Iv::eval(&f, &x);
            if fx.1 <= Rat::zero() {
                continue;
            }
            if fx.0 <= Rat::zero() {
                // not yet separated from a root of f; refine further
                continue;
            }
            let d = Iv::eval(&fp, &x);
            let s3 = match d.mul(&d).mul(&d).div(&Iv::pt(rat(8)).mul(&fx).mul(&fx)) {
                Some(v) => v,
                None => continue,
            };
            let eps = target.clone() / rat(16);
            let lo3 = cbrt_interval(&s3.0, &eps).0;
            let hi3 = cbrt_interval(&s3.1, &eps).1;
            if hi3.clone() - lo3.clone() <= target {
                return Ok(FlexSlope { lo: lo3, hi: hi3, flex_x: iv, singular: w.discriminant().is_zero() });
            }
        }
        width = width.clone() * width;
    }
    Err(Error::NoConvergence("flex-slope enclosure did not reach the target width".into()))
}

/// The representative y^2 = x^3 + (s x + 1)^2 for rational s, depressed.
pub fn flex_slope_representative(s: &Rat) -> WeierstrassForm {
    WeierstrassForm::from_monic(&(s.clone() * s.clone()), &(rat(2) * s.clone()), &rat(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::act;
    use crate::arith::field::ratf;
    use crate::arith::linalg::identity;

    fn pt(v: [i64; 3]) -> AlgPoint {
        AlgPoint::rational(v.map(rat))
    }

    #[test]
    fn reduce_normal_form_is_fixed() {
        let f = HomoForm::parse("y^2*z - x^3 - x*z^2").unwrap();
        let (w, g) = reduce_weierstrass(&f, &pt([0, 1, 0])).unwrap();
        assert_eq!(w, WeierstrassForm::new(rat(1), rat(0)));
        assert_eq!(g, identity::<Rat>(3));
    }

    #[test]
    fn reduce_conjugate() {
        let f = HomoForm::parse("y^2*z - x^3 - 2*x*z^2 - 5*z^3").unwrap();
        let m: Mat<Rat> = vec![vec![rat(1), rat(2), rat(0)], vec![rat(0), rat(1), rat(-1)], vec![rat(3), rat(0), rat(1)]];
        let h = act(&m, &f).unwrap();
        let flex = AlgPoint::rational([rat(2), rat(1), rat(0)]);
        let (w, g) = reduce_weierstrass(&h, &flex).unwrap();
        assert!(act(&g, &h).unwrap().proportional(&w.form()));
        let orig = m3_point(&WeierstrassForm::new(rat(2), rat(5))).unwrap();
        assert_eq!(m3_point(&w).unwrap(), orig);
    }

    #[test]
    fn reduce_errors() {
        let f = HomoForm::parse("y^2*z - x^3 - x*z^2").unwrap();
        assert_eq!(reduce_weierstrass(&f, &pt([0, 0, 1])), Err(Error::NotAFlex));
        let lines = HomoForm::parse("x*y*z").unwrap();
        assert_eq!(reduce_weierstrass(&lines, &pt([1, 0, 0])).unwrap_err(), Error::NotIrreducible);
        let cusp = HomoForm::parse("y^2*z - x^3").unwrap();
        let (w, _) = reduce_weierstrass(&cusp, &pt([0, 1, 0])).unwrap();
        assert!(!w.has_finite_stabilizer());
    }

    #[test]
    fn flexes_of_cubics() {
        let total = |s: &str| -> (u32, Vec<u32>) {
            let v = find_flexes_cubic(&HomoForm::parse(s).unwrap(), 4).unwrap();
            let mut ms: Vec<u32> = v.iter().flat_map(|i| std::iter::repeat_n(i.mult, i.points.count())).collect();
            ms.sort();
            (v.iter().map(|i| i.mult * i.points.count() as u32).sum(), ms)
        };
        assert_eq!(total("x^3 + y^3 + z^3"), (9, vec![1; 9]));
        assert_eq!(total("y^2*z - x^3 - x^2*z"), (9, vec![1, 1, 1, 6]));
        assert_eq!(total("y^2*z - x^3"), (9, vec![1, 8]));
    }

    #[test]
    fn ratio_and_j() {
        let w = WeierstrassForm::new(rat(1), rat(0));
        assert_eq!(m3_point(&w).unwrap(), M3Point { a3: rat(1), b2: rat(0) });
        assert_eq!(w.j().unwrap(), P1::int(1));
        let w = WeierstrassForm::new(rat(2), rat(-3));
        assert_eq!(m3_point(&w.rescale(&rat(3))).unwrap(), m3_point(&w).unwrap());
        let flip = WeierstrassForm::new(rat(2), rat(3));
        assert_eq!(m3_point(&flip).unwrap(), m3_point(&w).unwrap());
        assert_eq!(m3_point(&WeierstrassForm::new(rat(0), rat(0))), Err(Error::BothZero));
    }

    #[test]
    fn real_classes() {
        use RealClass::*;
        let c = |a: i64, b: i64| classify_real_cubic(&WeierstrassForm::new(rat(a), rat(b)));
        assert_eq!(c(-1, 0), SmoothTwoComponents);
        assert_eq!(c(0, 1), SmoothConnected);
        assert_eq!(c(0, 0), Cusp);
        assert_eq!(c(-3, 2), NodeAlpha);
        assert_eq!(c(-3, -2), IsolatedPointEpsilon);
    }

    #[test]
    fn flex_slope_values() {
        let s = flex_slope(&WeierstrassForm::new(rat(0), rat(1))).unwrap();
        assert!(s.contains(&rat(0)));
        assert!(s.hi.clone() - s.lo.clone() <= ratf(1, 10i64.pow(12)));
        // rational representatives give back their parameter
        for (n, d) in [(1, 1), (-2, 3), (5, 2), (1, 7)] {
            let r = ratf(n, d);
            let got = flex_slope(&flex_slope_representative(&r)).unwrap();
            assert!(got.contains(&r), "{r}: {got:?}");
        }
        let iso = flex_slope(&WeierstrassForm::new(rat(-3), rat(-2))).unwrap();
        assert!(iso.singular);
        assert!((iso.mid() - 3.0 / 4f64.cbrt()).abs() < 1e-11);
        assert!(matches!(flex_slope(&WeierstrassForm::new(rat(-3), rat(2))), Err(Error::WrongSingularityType(_))));
    }

    #[test]
    fn singular_slope_factorization() {
        // x^3 + (s x + 1)^2 = (x + r)^2 (x + r/4) with r = cbrt 4, s = 3 / r
        let r = 4f64.cbrt();
        let s = 3.0 / r;
        for x in [-2.0, -0.5, 0.0, 1.3] {
            let lhs = x * x * x + (s * x + 1.0) * (s * x + 1.0);
            let rhs = (x + r) * (x + r) * (x + r / 4.0);
            assert!((lhs - rhs).abs() < 1e-12);
        }
        assert!((4.0 * s.powi(3) - 27.0).abs() < 1e-12);
    }
}
