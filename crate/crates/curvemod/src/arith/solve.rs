//! Common zeros of plane forms.
//!
//! Points are found by projecting from a point that, after a change of
//! coordinates, sits at (0:0:1). Each irreducible factor q of the eliminant
//! gives a class of conjugate points; if deg q is within the extension cap the
//! class is solved exactly over Q[t]/(q), otherwise numerically.

use super::bifactor::dense_coordinate_change;
use super::factor::factor_uni;
use super::field::{Field, Rat};
use super::linalg::{inverse, to3, Mat};
use super::mpoly::{MPoly, X, Y, Z};
use super::numfield::{AlgNum, NumField};
use super::resultant::{res_z_forms, BinForm};
use super::roots::complex_roots;
use super::upoly::UniPoly;
use crate::Error;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::sync::Arc;

pub const DEFAULT_EXTENSION_CAP: usize = 4;

/// A point of P^2 with coordinates in a number field; it stands for all of
/// its `degree` conjugates.
#[derive(Clone, Debug)]
pub struct AlgPoint {
    pub coords: [AlgNum; 3],
}

impl AlgPoint {
    pub fn degree(&self) -> usize {
        self.coords.iter().map(|c| c.degree()).max().unwrap_or(1)
    }

    pub fn field(&self) -> Option<Arc<NumField>> {
        self.coords.iter().find_map(|c| c.field.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.is_rational())
    }

    pub fn rational(p: [Rat; 3]) -> Self {
        AlgPoint { coords: p.map(AlgNum::rational) }.normalized()
    }

    /// Scale so that the last nonzero coordinate is 1.
    pub fn normalized(&self) -> Self {
        let k = (0..3).rev().find(|&i| !self.coords[i].is_zero()).expect("nonzero point");
        let inv = self.coords[k].inv();
        let coords = std::array::from_fn(|i| self.coords[i].clone() * inv.clone());
        AlgPoint { coords }
    }

    /// All conjugates as complex points.
    pub fn embeddings(&self) -> Vec<[Complex64; 3]> {
        (0..self.degree()).map(|k| std::array::from_fn(|i| self.coords[i].embed(k))).collect()
    }

    pub fn to_rat(&self) -> Option<[Rat; 3]> {
        let v: Option<Vec<Rat>> = self.coords.iter().map(|c| c.as_rat()).collect();
        v.map(|v| [v[0].clone(), v[1].clone(), v[2].clone()])
    }

    pub fn eval(&self, f: &MPoly<Rat>) -> AlgNum {
        let k = self.field();
        let g: MPoly<AlgNum> = f.map(|a| match &k {
            Some(k) => AlgNum::in_field(k, a.clone()),
            None => AlgNum::rational(a.clone()),
        });
        g.eval(&self.coords)
    }

    pub fn same(&self, o: &AlgPoint) -> bool {
        let a = self.normalized();
        let b = o.normalized();
        if a.degree() != b.degree() {
            return false;
        }
        if a.degree() == 1 {
            return a.coords == b.coords;
        }
        // same conjugacy class: compare sets of embeddings
        let ea = a.embeddings();
        let eb = b.embeddings();
        ea.iter().all(|p| eb.iter().any(|q| (0..3).all(|i| (p[i] - q[i]).norm() < 1e-8)))
    }
}

/// Numerically located points (one conjugacy class).
#[derive(Clone, Debug)]
pub struct NumPoints {
    pub minpoly_degree: usize,
    pub coords: Vec<[Complex64; 3]>,
}

#[derive(Clone, Debug)]
pub enum PointClass {
    Exact(AlgPoint),
    Numeric(NumPoints),
}

impl PointClass {
    pub fn count(&self) -> usize {
        match self {
            PointClass::Exact(p) => p.degree(),
            PointClass::Numeric(n) => n.coords.len(),
        }
    }

    pub fn embeddings(&self) -> Vec<[Complex64; 3]> {
        match self {
            PointClass::Exact(p) => p.embeddings(),
            PointClass::Numeric(n) => n.coords.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PointClass::Exact(_))
    }
}

/// A class of conjugate intersection points, each with multiplicity `mult`.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub points: PointClass,
    pub mult: u32,
}

fn col(m: &Mat<Rat>, j: usize) -> [Rat; 3] {
    [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()]
}

fn alg(k: &Option<Arc<NumField>>, a: &Rat) -> AlgNum {
    match k {
        Some(k) => AlgNum::in_field(k, a.clone()),
        None => AlgNum::rational(a.clone()),
    }
}

/// F(theta, 1, z) as a polynomial in z over the field of theta.
fn fiber(f: &MPoly<Rat>, theta: &AlgNum) -> UniPoly<AlgNum> {
    let k = theta.field.clone();
    let g: MPoly<AlgNum> = f.map(|a| alg(&k, a));
    let one = alg(&k, &Rat::one());
    g.subs_const(X, theta).subs_const(Y, &one).to_uni(Z)
}

/// Root of the linear factor or the generator of Q[t]/(q).
fn field_root(q: &UniPoly<Rat>) -> AlgNum {
    if q.deg() == 1 {
        AlgNum::rational(-q.c[0].clone() / q.c[1].clone())
    } else {
        AlgNum::gen(&NumField::new(q))
    }
}

enum Fiber {
    Point(AlgNum),
    Empty,
    Several,
}

/// The unique common z-root over the fiber, if the projection separates it.
fn solve_fiber(polys: &[MPoly<Rat>], theta: &AlgNum) -> Fiber {
    let mut g: Option<UniPoly<AlgNum>> = None;
    for f in polys {
        let u = fiber(f, theta);
        g = Some(match g {
            None => u,
            Some(h) => h.gcd(&u),
        });
    }
    let g = g.unwrap().squarefree_part();
    match g.deg() {
        d if d <= 0 => Fiber::Empty,
        1 => Fiber::Point(-g.c[0].clone() / g.c[1].clone()),
        _ => Fiber::Several,
    }
}

fn map_point(m: &Mat<Rat>, p: [AlgNum; 3]) -> AlgPoint {
    let coords = std::array::from_fn(|i| {
        (0..3).fold(AlgNum::rational(Rat::zero()), |acc, j| acc + AlgNum::rational(m[i][j].clone()) * p[j].clone())
    });
    AlgPoint { coords }.normalized()
}

fn map_point_c(m: &Mat<Rat>, p: [Complex64; 3]) -> [Complex64; 3] {
    let mut out: [Complex64; 3] = std::array::from_fn(|i| {
        (0..3).fold(Complex64::new(0.0, 0.0), |acc, j| acc + p[j] * super::field::rat_to_f64(&m[i][j]))
    });
    let k = (0..3).rev().max_by(|&a, &b| out[a].norm().partial_cmp(&out[b].norm()).unwrap()).unwrap();
    let piv = out[k];
    let last = (0..3).rev().find(|&i| out[i].norm() > 1e-9 * piv.norm()).unwrap();
    let s = out[last];
    for c in out.iter_mut() {
        *c /= s;
    }
    out
}

/// Numeric common z-root over each complex root of q; None if ambiguous.
/// Affine chart y = 1 with complex coefficients: value, d/dx, d/dz and the
/// absolute-value majorant used to scale residuals.
struct ChartPoly(Vec<(i32, i32, Complex64)>);

impl ChartPoly {
    fn new(f: &MPoly<Rat>) -> Self {
        ChartPoly(f.terms.iter().map(|(e, c)| (e[0] as i32, e[2] as i32, Complex64::new(super::field::rat_to_f64(c), 0.0))).collect())
    }

    fn eval(&self, x: Complex64, z: Complex64) -> (Complex64, Complex64, Complex64, f64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut v, mut dx, mut dz, mut mag) = (zero, zero, zero, 0.0);
        for &(i, k, c) in &self.0 {
            let (xi, zk) = (x.powi(i), z.powi(k));
            v += c * xi * zk;
            mag += c.norm() * xi.norm() * zk.norm();
            if i > 0 {
                dx += c * (i as f64) * x.powi(i - 1) * zk;
            }
            if k > 0 {
                dz += c * (k as f64) * xi * z.powi(k - 1);
            }
        }
        (v, dx, dz, mag.max(f64::MIN_POSITIVE))
    }
}

/// Joint Newton on f = g = 0 from (x, z); returns the polished point and its
/// scaled residual.
fn polish(f: &ChartPoly, g: &ChartPoly, mut x: Complex64, mut z: Complex64) -> (Complex64, Complex64, f64) {
    for _ in 0..40 {
        let (fv, fx, fz, _) = f.eval(x, z);
        let (gv, gx, gz, _) = g.eval(x, z);
        let det = fx * gz - fz * gx;
        if det.norm() == 0.0 {
            break;
        }
        let dx = (fv * gz - gv * fz) / det;
        let dz = (fx * gv - gx * fv) / det;
        x -= dx;
        z -= dz;
        if dx.norm() + dz.norm() <= 1e-15 * (1.0 + x.norm() + z.norm()) {
            break;
        }
    }
    let (fv, _, _, fm) = f.eval(x, z);
    let (gv, _, _, gm) = g.eval(x, z);
    (x, z, (fv.norm() / fm).max(gv.norm() / gm))
}

fn numeric_class(f: &MPoly<Rat>, g: &MPoly<Rat>, q: &UniPoly<Rat>, m: &Mat<Rat>) -> Option<NumPoints> {
    let fc = super::resultant::z_coeffs_at_y1(f);
    let evalc = |cs: &[UniPoly<Rat>], x: Complex64| -> Vec<Complex64> {
        cs.iter()
            .map(|c| c.c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + super::field::rat_to_f64(a)))
            .collect()
    };
    let (fp, gp) = (ChartPoly::new(f), ChartPoly::new(g));
    let mut coords = Vec::new();
    for t in complex_roots(q) {
        let near = |x: Complex64| (x - t).norm() <= 1e-4 * (1.0 + t.norm());
        let hits: Vec<(Complex64, Complex64)> = super::roots::complex_roots_c(&evalc(&fc, t))
            .into_iter()
            .map(|z| polish(&fp, &gp, t, z))
            .filter(|&(x, _, r)| r < 1e-10 && near(x))
            .map(|(x, z, _)| (x, z))
            .collect();
        let (x, z) = *hits.first()?;
        // a second common zero over the same x means the projection is not separating
        if hits.iter().any(|&(_, w)| (w - z).norm() > 1e-6 * (1.0 + z.norm())) {
            return None;
        }
        coords.push(map_point_c(m, [x, Complex64::new(1.0, 0.0), z]));
    }
    Some(NumPoints { minpoly_degree: q.deg() as usize, coords })
}

fn transformed(f: &MPoly<Rat>, m: &Mat<Rat>) -> MPoly<Rat> {
    f.linear_subst(&to3(m))
}

/// All common zeros of two forms without common component, as classes of
/// conjugate points with their intersection multiplicities.
pub fn intersect(f: &MPoly<Rat>, g: &MPoly<Rat>, cap: usize) -> Result<Vec<Intersection>, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.total_degree() == 0 || g.total_degree() == 0 {
        return Ok(vec![]);
    }
    'attempt: for k in 0..60 {
        let m = dense_coordinate_change(k);
        let e3 = col(&m, 2);
        if f.eval(&e3).is_zero() || g.eval(&e3).is_zero() {
            continue;
        }
        let fm = transformed(f, &m);
        let gm = transformed(g, &m);
        let r = res_z_forms(&fm, &gm);
        if r.is_zero() {
            return Err(Error::CommonComponent);
        }
        if r.y_power() > 0 {
            continue;
        }
        let fac = factor_uni(&r.p);
        let mut out = Vec::new();
        for (q, e) in &fac.factors {
            let d = q.deg() as usize;
            if d <= cap {
                let theta = field_root(q);
                match solve_fiber(&[fm.clone(), gm.clone()], &theta) {
                    Fiber::Point(z) => {
                        let one = theta.one_like();
                        out.push(Intersection { points: PointClass::Exact(map_point(&m, [theta, one, z])), mult: *e });
                    }
                    Fiber::Empty => unreachable!("resultant root without common zero"),
                    Fiber::Several => continue 'attempt,
                }
            } else {
                match numeric_class(&fm, &gm, q, &m) {
                    Some(n) => out.push(Intersection { points: PointClass::Numeric(n), mult: *e }),
                    None => continue 'attempt,
                }
            }
        }
        return Ok(out);
    }
    Err(Error::NoConvergence("no separating projection found".into()))
}

/// Partial derivatives of a form.
pub fn gradient(f: &MPoly<Rat>) -> [MPoly<Rat>; 3] {
    [f.deriv(X), f.deriv(Y), f.deriv(Z)]
}

fn combos(k: usize) -> [[i64; 3]; 3] {
    let a = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    if k == 0 {
        return a;
    }
    let s = k as i64;
    [[1, s, 2 * s], [s + 1, 1, -s], [2, -s, 1]]
}

fn lin_comb(fs: &[MPoly<Rat>; 3], c: &[i64; 3]) -> MPoly<Rat> {
    let mut r = MPoly::zero();
    for (f, &a) in fs.iter().zip(c) {
        if a != 0 {
            r = r.add(&f.scale(&super::field::rat(a)));
        }
    }
    r
}

/// Common zeros of the three partials. Errors with ExtensionTooLarge if a
/// class of singular points needs a field larger than `cap`.
pub fn singular_points(f: &MPoly<Rat>, cap: usize) -> Result<Vec<AlgPoint>, Error> {
    let n = f.total_degree();
    if n <= 1 {
        return Ok(vec![]);
    }
    let grad0 = gradient(f);
    'attempt: for k in 0..60 {
        let m = dense_coordinate_change(k);
        let grad: [MPoly<Rat>; 3] = std::array::from_fn(|i| transformed(&grad0[i], &m));
        let mut polys: Vec<MPoly<Rat>> = Vec::new();
        let cs = combos(k % 4);
        for c in &cs {
            polys.push(lin_comb(&grad, c));
        }
        let e3 = [Rat::zero(), Rat::zero(), Rat::one()];
        if polys.iter().any(|p| p.is_zero() || p.eval(&e3).is_zero()) {
            continue;
        }
        if n == 2 {
            // partials are linear: solve directly
            return Ok(linear_common_zero(&grad0));
        }
        let r1 = res_z_forms(&polys[0], &polys[1]);
        let r2 = res_z_forms(&polys[0], &polys[2]);
        if r1.is_zero() || r2.is_zero() {
            continue;
        }
        let g: BinForm = r1.gcd(&r2);
        if g.y_power() > 0 {
            continue;
        }
        if g.p.deg() <= 0 {
            return Ok(vec![]);
        }
        let fac = factor_uni(&g.p);
        let mut out = Vec::new();
        for (q, _) in &fac.factors {
            let d = q.deg() as usize;
            if d > cap {
                // decide whether any of these are actual singular points
                if let Some(p) = numeric_has_common(&polys, q) {
                    if p {
                        return Err(Error::ExtensionTooLarge(format!(
                            "singular points need a field of degree {d} (cap {cap})"
                        )));
                    }
                    continue;
                }
                continue 'attempt;
            }
            let theta = field_root(q);
            match solve_fiber(&polys, &theta) {
                Fiber::Point(z) => {
                    let one = theta.one_like();
                    out.push(map_point(&m, [theta, one, z]));
                }
                Fiber::Empty => {}
                Fiber::Several => continue 'attempt,
            }
        }
        return Ok(out);
    }
    Err(Error::NoConvergence("no separating projection found".into()))
}

fn linear_common_zero(grad: &[MPoly<Rat>; 3]) -> Vec<AlgPoint> {
    let rows: Mat<Rat> = grad
        .iter()
        .map(|g| (0..3).map(|j| {
            let mut e = [0; 3];
            e[j] = 1;
            g.coeff(&e)
        }).collect())
        .collect();
    let ker = super::linalg::kernel(&rows, 3);
    if ker.len() == 1 {
        vec![AlgPoint::rational([ker[0][0].clone(), ker[0][1].clone(), ker[0][2].clone()])]
    } else {
        vec![]
    }
}

/// Some(true) if the three forms have a common zero over some root of q,
/// decided exactly by a gcd over Q[t]/(q); q irreducible so either all or
/// none of the conjugates carry one.
fn numeric_has_common(polys: &[MPoly<Rat>], q: &UniPoly<Rat>) -> Option<bool> {
    let theta = AlgNum::gen(&NumField::new(q));
    match solve_fiber(polys, &theta) {
        Fiber::Empty => Some(false),
        Fiber::Point(_) => Some(true),
        Fiber::Several => None,
    }
}

/// True iff the partials have no common zero (the curve is smooth).
pub fn is_smooth(f: &MPoly<Rat>) -> Result<bool, Error> {
    if partials_generate_mod_p(f) {
        return Ok(true);
    }
    Ok(singular_points(f, usize::MAX)?.is_empty())
}

/// Three forms of degree d have no common zero iff they span every form of
/// degree 3d - 2. Full rank modulo a prime implies full rank over Q, so a
/// true answer is a certificate; false may be bad reduction.
pub fn partials_generate_mod_p(f: &MPoly<Rat>) -> bool {
    use super::zmod::{bigint_mod, mod_inv};
    let n = f.total_degree();
    if n <= 1 {
        return n == 1;
    }
    let d = (n - 1) as u32;
    let top = 3 * d - 2;
    let monos = |k: u32| -> Vec<[u32; 3]> { (0..=k).flat_map(|i| (0..=k - i).map(move |j| [i, j, k - i - j])).collect() };
    let rows = monos(top);
    let index: std::collections::HashMap<[u32; 3], usize> = rows.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let grad = gradient(f);
    for p in [2_147_483_629u64, 2_147_483_587] {
        let red = |c: &Rat| -> Option<u64> {
            let den = bigint_mod(c.denom(), p);
            (den != 0).then(|| bigint_mod(c.numer(), p) * mod_inv(den, p) % p)
        };
        // columns: m * partial_i for monomials m of degree top - d
        let mut cols: Vec<Vec<u64>> = Vec::new();
        let mut ok = true;
        for g in &grad {
            for m in monos(top - d) {
                let mut col = vec![0u64; rows.len()];
                for (e, c) in &g.terms {
                    let Some(v) = red(c) else {
                        ok = false;
                        break;
                    };
                    col[index[&[e[0] + m[0], e[1] + m[1], e[2] + m[2]]]] = v;
                }
                cols.push(col);
            }
        }
        if ok && rank_mod_p(cols, p) == rows.len() {
            return true;
        }
    }
    false
}

fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    use super::zmod::mod_inv;
    let width = m.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..width {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = mod_inv(m[r][c], p);
        for v in m[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (a, b) in row.iter_mut().zip(&pr).skip(c) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Apply the inverse of a change of coordinates to a point.
pub fn pull_point(m: &Mat<Rat>, p: &AlgPoint) -> Option<AlgPoint> {
    let inv = inverse(m)?;
    Some(map_point(&inv, p.coords.clone()))
}
