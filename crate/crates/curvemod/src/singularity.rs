//! Local invariants of plane curve singularities: intersection multiplicity
//! (Fulton's recursion), Milnor number, multiplicity, branches via
//! Newton-Puiseux, the pair (g, g+), and the global degree-genus bookkeeping.

use crate::arith::bifactor::absolute_component_count;
use crate::arith::field::{binomial, rat, Field, Rat};
use crate::arith::mpoly::{X, Y, Z};
use crate::arith::numfield::AlgNum;
use crate::arith::solve::{self, intersect, AlgPoint, PointClass};
use crate::arith::tower::{adjoin_root, embed, factor_over, field_degree, Extension, Fld};
use crate::arith::{factor_rational, HomoForm, MPoly};
use crate::Error;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

/// Local intersection number; `Infinite` when the curves share a component
/// through the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum IMult {
    Finite(u64),
    Infinite,
}

impl fmt::Display for IMult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IMult::Finite(v) => write!(f, "{v}"),
            IMult::Infinite => f.write_str("inf"),
        }
    }
}

fn at_origin<F: Field>(f: &MPoly<F>) -> F {
    f.coeff(&[0, 0, 0])
}

fn x_restriction<F: Field>(f: &MPoly<F>) -> crate::arith::UniPoly<F> {
    f.subs_const(Y, &F::zero()).to_uni(X)
}

fn ord0<F: Field>(p: &crate::arith::UniPoly<F>) -> u64 {
    p.c.iter().position(|a| !a.is_zero()).expect("nonzero") as u64
}

/// I_0(f, g) for affine polynomials in x, y.
pub fn intersection_multiplicity<F: Field>(f: &MPoly<F>, g: &MPoly<F>) -> IMult {
    if !at_origin(f).is_zero() || !at_origin(g).is_zero() {
        return IMult::Finite(0);
    }
    if f.is_zero() || g.is_zero() {
        return IMult::Infinite;
    }
    // without a common component the answer is at most deg f * deg g
    let bound = (f.total_degree() as u64) * (g.total_degree() as u64);
    let mut f = f.clone();
    let mut g = g.clone();
    let mut acc = 0u64;
    let y = MPoly::var(Y);
    loop {
        if !at_origin(&f).is_zero() || !at_origin(&g).is_zero() {
            return IMult::Finite(acc);
        }
        if f.is_zero() || g.is_zero() || acc > bound {
            return IMult::Infinite;
        }
        let mut fx = x_restriction(&f);
        let mut gx = x_restriction(&g);
        let deg = |p: &crate::arith::UniPoly<F>| if p.is_zero() { 0 } else { p.deg() as u32 };
        if deg(&fx) > deg(&gx) {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut fx, &mut gx);
        }
        let (r, s) = (deg(&fx), deg(&gx));
        if r == 0 {
            // f(x, 0) = 0, so f = y h
            if gx.is_zero() {
                return IMult::Infinite;
            }
            acc += ord0(&gx);
            f = f.exact_div(&y).expect("y divides f");
        } else {
            let c = gx.lc() / fx.lc();
            g = g.sub(&f.mul_monomial(&c, [s - r, 0, 0]));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Z,
    Y,
    X,
}

impl Chart {
    pub fn label(&self) -> &'static str {
        match self {
            Chart::Z => "z=1",
            Chart::Y => "y=1",
            Chart::X => "x=1",
        }
    }
}

/// A point of P^2 seen in an affine chart.
#[derive(Clone, Debug)]
pub struct LocalPoint {
    pub chart: Chart,
    pub coords: [AlgNum; 2],
    pub point: AlgPoint,
}

impl LocalPoint {
    pub fn field(&self) -> Fld {
        self.point.field()
    }

    /// Number of conjugate points this one stands for.
    pub fn conjugates(&self) -> usize {
        self.point.degree()
    }

    pub fn coords_string(&self) -> [String; 2] {
        [self.coords[0].to_string(), self.coords[1].to_string()]
    }
}

impl fmt::Display for LocalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ({}, {})", self.chart.label(), self.coords[0], self.coords[1])?;
        if let Some(k) = self.point.field() {
            write!(f, " with t: {} = 0", k.minpoly_string())?;
        }
        Ok(())
    }
}

fn perm(rows: [usize; 3], k: &Fld) -> [[AlgNum; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| embed(k, &rat(if rows[i] == j { 1 } else { 0 }))))
}

/// The point in its chart, and the form moved so that the point is the origin.
pub fn localize(f: &MPoly<Rat>, p: &AlgPoint) -> (LocalPoint, MPoly<AlgNum>) {
    let p = p.normalized();
    let k = p.field();
    let fk: MPoly<AlgNum> = f.map(|a| embed(&k, a));
    let c = &p.coords;
    let (chart, rows, coords) = if !c[2].is_zero() {
        (Chart::Z, [0, 1, 2], [c[0].clone(), c[1].clone()])
    } else if !c[1].is_zero() {
        (Chart::Y, [0, 2, 1], [c[0].clone(), c[2].clone()])
    } else {
        (Chart::X, [2, 0, 1], [c[1].clone(), c[2].clone()])
    };
    let one = embed(&k, &rat(1));
    let local = fk.linear_subst(&perm(rows, &k)).subs_const(Z, &one).translate_xy(&coords[0], &coords[1]);
    (LocalPoint { chart, coords, point: p }, local)
}

pub fn milnor_local<F: Field>(f: &MPoly<F>) -> Result<u64, Error> {
    match intersection_multiplicity(&f.deriv(X), &f.deriv(Y)) {
        IMult::Finite(v) => Ok(v),
        IMult::Infinite => Err(Error::NonIsolated),
    }
}

pub fn multiplicity_local<F: Field>(f: &MPoly<F>) -> Result<u32, Error> {
    if f.is_zero() {
        return Err(Error::NonIsolated);
    }
    if !at_origin(f).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    Ok(f.min_degree() as u32)
}

fn strip_var(f: &MPoly<AlgNum>, v: usize) -> (MPoly<AlgNum>, u32) {
    let k = f.terms.keys().map(|e| e[v]).min().unwrap_or(0);
    if k == 0 {
        return (f.clone(), 0);
    }
    let mut e = [0; 3];
    e[v] = k;
    (f.exact_div(&MPoly::term(AlgNum::rational(rat(1)), e)).expect("monomial divides"), k)
}

/// Vertices of the lower Newton polygon from the y-axis to the x-axis.
fn newton_polygon(f: &MPoly<AlgNum>) -> Vec<(i64, i64)> {
    let pts: Vec<(i64, i64)> = f.terms.keys().map(|e| (e[0] as i64, e[1] as i64)).collect();
    let j0 = pts.iter().filter(|p| p.0 == 0).map(|p| p.1).min().expect("x does not divide f");
    let mut cur = (0, j0);
    let mut out = vec![cur];
    while cur.1 > 0 {
        let mut best: Option<(i64, i64)> = None;
        for &p in pts.iter().filter(|p| p.1 < cur.1) {
            best = Some(match best {
                None => p,
                Some(b) => {
                    // compare slopes (p.0 - cur.0)/(cur.1 - p.1)
                    let lhs = (p.0 - cur.0) * (cur.1 - b.1);
                    let rhs = (b.0 - cur.0) * (cur.1 - p.1);
                    if lhs < rhs || (lhs == rhs && p.1 < b.1) {
                        p
                    } else {
                        b
                    }
                }
            });
        }
        cur = best.expect("y does not divide f");
        out.push(cur);
    }
    out
}

fn pow_signed(a: &AlgNum, e: i64) -> AlgNum {
    if e >= 0 {
        a.pow(e as u32)
    } else {
        a.inv().pow((-e) as u32)
    }
}

fn lift_poly(f: &MPoly<AlgNum>, ext: &Extension) -> MPoly<AlgNum> {
    f.map(|a| ext.lift(a))
}

const MAX_DEPTH: u32 = 64;

fn check_cap(ext: &Extension, cap: usize) -> Result<(), Error> {
    if ext.degree() > cap {
        return Err(Error::ExtensionTooLarge(format!("needs a field of degree {} (cap {cap})", ext.degree())));
    }
    Ok(())
}

/// Number of branches at the origin.
pub fn branch_count_local(f: &MPoly<AlgNum>, k: &Fld, cap: usize) -> Result<u64, Error> {
    if f.is_zero() {
        return Err(Error::NonIsolated);
    }
    if !f.coeff(&[0, 0, 0]).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    branches(f, k, cap, 0)
}

fn branches(f: &MPoly<AlgNum>, k: &Fld, cap: usize, depth: u32) -> Result<u64, Error> {
    if depth > MAX_DEPTH {
        return Err(Error::NoConvergence("Newton-Puiseux recursion too deep".into()));
    }
    let (f, kx) = strip_var(f, X);
    let (f, ky) = strip_var(&f, Y);
    if kx > 1 || ky > 1 {
        return Err(Error::NonIsolated);
    }
    let mut count = (kx + ky) as u64;
    if !f.coeff(&[0, 0, 0]).is_zero() {
        return Ok(count);
    }
    let poly = newton_polygon(&f);
    for w in poly.windows(2) {
        let ((i1, j1), (i2, j2)) = (w[0], w[1]);
        let (dx, dy) = (i2 - i1, j1 - j2);
        let g = dx.gcd(&dy);
        let (q, m) = (dy / g, dx / g);
        let l = q * i1 + m * j1;
        let mut phi = vec![AlgNum::zero(); g as usize + 1];
        for (e, a) in &f.terms {
            let (i, j) = (e[0] as i64, e[1] as i64);
            if q * i + m * j == l {
                phi[((j - j2) / q) as usize] = a.clone();
            }
        }
        let phi = crate::arith::UniPoly::new(phi);
        for (s, r) in factor_over(k, &phi) {
            let d = s.deg() as u64;
            if r == 1 {
                count += d;
                continue;
            }
            let ext = adjoin_root(k, &s);
            check_cap(&ext, cap)?;
            // x = xi^b X^q, y = X^m (xi^a + Y) with a q - b m = 1
            let eg = q.extended_gcd(&m);
            let (alpha, beta) = (eg.x, -eg.y);
            let xi = ext.xi.clone();
            let c0 = pow_signed(&xi, alpha);
            let fl = lift_poly(&f, &ext);
            let mut f1 = MPoly::zero();
            let base = MPoly::constant(c0).add(&MPoly::var(Y));
            for (e, a) in &fl.terms {
                let (i, j) = (e[0] as i64, e[1] as i64);
                let coef = a.clone() * pow_signed(&xi, beta * i);
                let t = base.pow(j as u32).mul_monomial(&coef, [(q * i + m * j - l) as u32, 0, 0]);
                f1 = f1.add(&t);
            }
            count += d * branches(&f1, &ext.field, cap, depth + 1)?;
        }
    }
    Ok(count)
}

/// Sum of m(m-1)/2 over the origin and its infinitely near points.
pub fn delta_blowup_local(f: &MPoly<AlgNum>, k: &Fld, cap: usize) -> Result<u64, Error> {
    delta(f, k, cap, 0)
}

fn delta(f: &MPoly<AlgNum>, k: &Fld, cap: usize, depth: u32) -> Result<u64, Error> {
    if depth > MAX_DEPTH {
        return Err(Error::NoConvergence("blow-up recursion too deep".into()));
    }
    if f.is_zero() {
        return Err(Error::NonIsolated);
    }
    let m = f.min_degree() as u64;
    if m <= 1 {
        return Ok(0);
    }
    let mut acc = m * (m - 1) / 2;
    let cone = f.lowest_form();
    let one = embed(k, &rat(1));
    let lt = cone.subs_const(X, &one).to_uni(Y);
    let xm = MPoly::term(one.clone(), [m as u32, 0, 0]);
    for (s, _) in factor_over(k, &lt) {
        let ext = adjoin_root(k, &s);
        check_cap(&ext, cap)?;
        let fl = lift_poly(f, &ext);
        // y = x (t + y1)
        let sub = [MPoly::var(X), MPoly::var(X).mul(&MPoly::constant(ext.xi.clone()).add(&MPoly::var(Y))), MPoly::zero()];
        let f1 = fl.compose(&sub).exact_div(&xm).expect("x^m divides the total transform");
        acc += s.deg() as u64 * delta(&f1, &ext.field, cap, depth + 1)?;
    }
    if (lt.deg().max(0) as u64) < m {
        // tangent direction x = 0
        let sub = [MPoly::var(X).mul(&MPoly::var(Y)), MPoly::var(Y), MPoly::zero()];
        let ym = MPoly::term(one, [0, m as u32, 0]);
        let f1 = f.compose(&sub).exact_div(&ym).expect("y^m divides the total transform");
        acc += delta(&f1, k, cap, depth + 1)?;
    }
    Ok(acc)
}

/// (g, g+) from the Milnor number and branch count.
pub fn genus_pair(mu: u64, b: u64) -> Result<(u64, u64), Error> {
    if b == 0 || !(mu + b - 1).is_multiple_of(2) || mu + 1 < b {
        return Err(Error::ParityViolation { mu, b });
    }
    Ok(((mu + 1 - b) / 2, (mu + b - 1) / 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub mu: u64,
    pub mult: u32,
    pub branches: u64,
    pub genus: u64,
    pub genus_plus: u64,
}

pub fn report_local(f: &MPoly<AlgNum>, k: &Fld, cap: usize) -> Result<SingularityReport, Error> {
    let mult = multiplicity_local(f)?;
    let mu = milnor_local(f)?;
    let b = branch_count_local(f, k, cap)?;
    let (g, gp) = genus_pair(mu, b)?;
    Ok(SingularityReport { mu, mult, branches: b, genus: g, genus_plus: gp })
}

/// Invariants of the curve f at a point.
pub fn point_report(f: &HomoForm, p: &AlgPoint, cap: usize) -> Result<(LocalPoint, SingularityReport), Error> {
    let (lp, local) = localize(f.poly(), p);
    let r = report_local(&local, &lp.field(), cap)?;
    Ok((lp, r))
}

pub fn delta_at(f: &HomoForm, p: &AlgPoint, cap: usize) -> Result<u64, Error> {
    let (lp, local) = localize(f.poly(), p);
    if !local.coeff(&[0, 0, 0]).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    delta_blowup_local(&local, &lp.field(), cap)
}

/// I_p(f, g) for two forms at a point of P^2.
pub fn intersection_multiplicity_at(f: &MPoly<Rat>, g: &MPoly<Rat>, p: &AlgPoint) -> IMult {
    let (_, fl) = localize(f, p);
    let (_, gl) = localize(g, p);
    intersection_multiplicity(&fl, &gl)
}

fn check_squarefree(f: &HomoForm) -> Result<(), Error> {
    if factor_rational(f).components.iter().any(|(_, m)| *m > 1) {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// Singular points of a squarefree curve; each stands for its conjugates.
pub fn singular_points(f: &HomoForm, cap: usize) -> Result<Vec<LocalPoint>, Error> {
    check_squarefree(f)?;
    let pts = solve::singular_points(f.poly(), cap)?;
    Ok(pts.iter().map(|p| localize(f.poly(), p).0).collect())
}

#[derive(Clone, Debug)]
pub struct GenusReport {
    pub degree: u32,
    pub components: usize,
    pub points: Vec<(LocalPoint, SingularityReport)>,
    pub geom_genus: u64,
}

impl GenusReport {
    pub fn sum_genus_plus(&self) -> u64 {
        self.points.iter().map(|(p, r)| r.genus_plus * p.conjugates() as u64).sum()
    }
}

pub fn singularity_reports(f: &HomoForm, cap: usize) -> Result<Vec<(LocalPoint, SingularityReport)>, Error> {
    let pts = singular_points(f, cap)?;
    pts.iter()
        .map(|lp| {
            let (_, local) = localize(f.poly(), &lp.point);
            Ok((lp.clone(), report_local(&local, &lp.field(), cap)?))
        })
        .collect()
}

/// Geometric genus from g_geom + sum g+ = C(n-1, 2) + r - 1.
pub fn geometric_genus(f: &HomoForm, cap: usize) -> Result<GenusReport, Error> {
    let points = singularity_reports(f, cap)?;
    let n = f.degree();
    let r = absolute_component_count(f.poly());
    let mut rep = GenusReport { degree: n, components: r, points, geom_genus: 0 };
    let total = binomial((n as u64).saturating_sub(1), 2) as i64 + r as i64 - 1;
    let g = total - rep.sum_genus_plus() as i64;
    if g < 0 {
        return Err(Error::NegativeGenus);
    }
    rep.geom_genus = g as u64;
    Ok(rep)
}

fn line_divides(f: &HomoForm, line: &[Rat; 3]) -> bool {
    let l = MPoly::from_terms([([1, 0, 0], line[0].clone()), ([0, 1, 0], line[1].clone()), ([0, 0, 1], line[2].clone())]);
    f.poly().exact_div(&l).is_some()
}

fn on_line(p: &AlgPoint, line: &[Rat; 3]) -> bool {
    let k = p.field();
    (0..3).fold(AlgNum::zero(), |acc, i| acc + embed(&k, &line[i]) * p.coords[i].clone()).is_zero()
}

/// Sum of g over the singular points on a line.
pub fn genus_on_line(f: &HomoForm, line: &[Rat; 3], cap: usize) -> Result<u64, Error> {
    if line.iter().all(|a| a.is_zero()) {
        return Err(Error::InvalidInput("zero line".into()));
    }
    if line_divides(f, line) {
        return Err(Error::ContainsLine);
    }
    let mut total = 0;
    for (lp, r) in singularity_reports(f, cap)? {
        if on_line(&lp.point, line) {
            total += r.genus * lp.conjugates() as u64;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct GenusProperness {
    pub proper: bool,
    pub max_g: u64,
    pub max_g_plus: u64,
    pub bound: u64,
    pub condition1: bool,
    /// None when the component intersections could not be enumerated exactly
    pub condition2: Option<bool>,
    pub separating_point: Option<AlgPoint>,
    /// Only for curves containing a line, where the bound on g is replaced by
    /// max g+ + max over lines of g(L). Experimental: no worked example backs it.
    pub line_condition: Option<LineCondition>,
}

#[derive(Clone, Debug)]
pub struct LineCondition {
    pub holds: bool,
    /// max over lines L of the summed g of singular points on L
    pub max_g_line: u64,
}

/// Sufficient test: max g + max g+ < C(n-1, 2) and no point separates the
/// curve into two parts meeting only there.
pub fn genus_properness(f: &HomoForm, cap: usize) -> Result<GenusProperness, Error> {
    let reps = singularity_reports(f, cap)?;
    let n = f.degree() as u64;
    let bound = binomial(n.saturating_sub(1), 2);
    let max_g = reps.iter().map(|(_, r)| r.genus).max().unwrap_or(0);
    let max_gp = reps.iter().map(|(_, r)| r.genus_plus).max().unwrap_or(0);
    let condition1 = max_g + max_gp < bound;
    let (condition2, sep) = separation(f, cap)?;
    let line_condition = contains_line(f).then(|| {
        let max_g_line = max_genus_on_lines(&reps);
        LineCondition { holds: max_gp + max_g_line < bound, max_g_line }
    });
    let first = match &line_condition {
        Some(l) => l.holds,
        None => condition1,
    };
    Ok(GenusProperness {
        proper: first && condition2 == Some(true),
        max_g,
        max_g_plus: max_gp,
        bound,
        condition1,
        condition2,
        separating_point: sep,
        line_condition,
    })
}

fn contains_line(f: &HomoForm) -> bool {
    factor_rational(f).components.iter().any(|(c, _)| c.degree() == 1 || absolute_component_count(c.poly()) == c.degree() as usize)
}

/// The g of a line is the sum of g over the singular points it passes
/// through, whether or not the line lies on the curve. Collinearity is
/// tested on complex embeddings.
fn max_genus_on_lines(reps: &[(LocalPoint, SingularityReport)]) -> u64 {
    let pts: Vec<([Complex64; 3], u64)> =
        reps.iter().filter(|(_, r)| r.genus > 0).flat_map(|(lp, r)| lp.point.embeddings().into_iter().map(move |c| (c, r.genus))).collect();
    let norm = |p: &[Complex64; 3]| p.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let collinear = |a: &[Complex64; 3], b: &[Complex64; 3], c: &[Complex64; 3]| {
        let d = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
        d.norm() <= 1e-9 * norm(a) * norm(b) * norm(c)
    };
    let mut best = pts.iter().map(|p| p.1).max().unwrap_or(0);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let s = pts.iter().enumerate().filter(|(k, p)| *k == i || *k == j || collinear(&pts[i].0, &pts[j].0, &p.0)).map(|(_, p)| p.1).sum();
            best = best.max(s);
        }
    }
    best
}

/// Some(true) when no single point separates the components.
fn separation(f: &HomoForm, cap: usize) -> Result<(Option<bool>, Option<AlgPoint>), Error> {
    let comps: Vec<MPoly<Rat>> = factor_rational(f).components.into_iter().map(|(h, _)| h.into_poly()).collect();
    if comps.iter().any(|c| absolute_component_count(c) > 1) {
        return Ok((None, None));
    }
    if comps.len() == 1 {
        return Ok((Some(true), None));
    }
    // point classes with the set of components through them
    let mut classes: Vec<(AlgPoint, Vec<usize>)> = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            for it in intersect(&comps[i], &comps[j], cap)? {
                let p = match it.points {
                    PointClass::Exact(p) => p,
                    PointClass::Numeric(_) => return Ok((None, None)),
                };
                match classes.iter_mut().find(|(q, _)| q.same(&p)) {
                    Some((_, s)) => {
                        for c in [i, j] {
                            if !s.contains(&c) {
                                s.push(c);
                            }
                        }
                    }
                    None => classes.push((p, vec![i, j])),
                }
            }
        }
    }
    for (idx, (p, _)) in classes.iter().enumerate() {
        if p.degree() > 1 {
            // its conjugates join the same components
            continue;
        }
        let mut parent: Vec<usize> = (0..comps.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (jdx, (_, s)) in classes.iter().enumerate() {
            if jdx == idx {
                continue;
            }
            for w in s.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        if (1..comps.len()).any(|c| find(&mut parent, c) != root) {
            return Ok((Some(false), Some(p.clone())));
        }
    }
    Ok((Some(true), None))
}

/// Degree of the field a point report needed, for diagnostics.
pub fn point_field_degree(lp: &LocalPoint) -> usize {
    field_degree(&lp.field())
}
