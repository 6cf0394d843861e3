//! Elements of PGL(2) and PGL(3), singular value decomposition, the
//! Fubini-Study distance and attracting/repelling witnesses for strongly
//! distorting maps.

use crate::arith::field::rat_to_f64;
use crate::arith::linalg::{det, inverse, matmul, Mat};
use crate::arith::{act, HomoForm, Rat};
use crate::Error;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

pub type C = Complex64;
pub type CMat = Vec<Vec<C>>;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Invertible 2x2 or 3x3 matrix modulo scalars, exact or floating point.
#[derive(Clone, Debug)]
pub struct ProjMap {
    pub exact: Option<Mat<Rat>>,
    pub num: CMat,
}

impl ProjMap {
    pub fn exact(m: Mat<Rat>) -> Result<Self, Error> {
        let n = m.len();
        if !(n == 2 || n == 3) || m.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be 2x2 or 3x3".into()));
        }
        if det(&m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let num = m.iter().map(|r| r.iter().map(|v| c(rat_to_f64(v))).collect()).collect();
        Ok(ProjMap { exact: Some(m), num })
    }

    pub fn numeric(m: CMat) -> Result<Self, Error> {
        let n = m.len();
        if !(n == 2 || n == 3) || m.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be 2x2 or 3x3".into()));
        }
        let d = cdet(&m);
        if d.norm() == 0.0 || !d.is_finite() {
            return Err(Error::SingularMatrix);
        }
        Ok(ProjMap { exact: None, num: m })
    }

    pub fn real(m: &[Vec<f64>]) -> Result<Self, Error> {
        ProjMap::numeric(m.iter().map(|r| r.iter().map(|&v| c(v)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn identity(n: usize) -> Self {
        let m: Mat<Rat> = crate::arith::linalg::identity(n);
        ProjMap::exact(m).unwrap()
    }

    pub fn inverse(&self) -> ProjMap {
        match &self.exact {
            Some(m) => ProjMap::exact(inverse(m).unwrap()).unwrap(),
            None => ProjMap { exact: None, num: cinverse(&self.num) },
        }
    }

    /// self * o (apply o first).
    pub fn compose(&self, o: &ProjMap) -> ProjMap {
        match (&self.exact, &o.exact) {
            (Some(a), Some(b)) => ProjMap::exact(matmul(a, b)).unwrap(),
            _ => ProjMap { exact: None, num: cmatmul(&self.num, &o.num) },
        }
    }

    /// Image of a curve: the form f(g^{-1} X). Exact maps only.
    pub fn act(&self, f: &HomoForm) -> Result<HomoForm, Error> {
        match &self.exact {
            Some(m) if m.len() == 3 => act(m, f),
            Some(_) => Err(Error::InvalidInput("need a 3x3 matrix".into())),
            None => Err(Error::InvalidInput("exact matrix required".into())),
        }
    }

    pub fn apply(&self, p: &[C]) -> Vec<C> {
        cmatvec(&self.num, p)
    }

    /// Equality modulo scalars.
    pub fn proportional(&self, o: &ProjMap, tol: f64) -> bool {
        let a: Vec<C> = self.num.iter().flatten().copied().collect();
        let b: Vec<C> = o.num.iter().flatten().copied().collect();
        let k = (0..a.len()).max_by(|&i, &j| a[i].norm().partial_cmp(&a[j].norm()).unwrap()).unwrap();
        if b[k].norm() == 0.0 {
            return false;
        }
        let s = a[k] / b[k];
        let scale = a[k].norm();
        a.iter().zip(&b).all(|(x, y)| (x - y * s).norm() <= tol * scale)
    }
}

pub fn cdet(m: &CMat) -> C {
    match m.len() {
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unimplemented!("only 2x2 and 3x3"),
    }
}

pub fn cinverse(m: &CMat) -> CMat {
    let d = cdet(m);
    match m.len() {
        2 => vec![vec![m[1][1] / d, -m[0][1] / d], vec![-m[1][0] / d, m[0][0] / d]],
        _ => {
            let cof = |i: usize, j: usize| {
                let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                let s: Vec<usize> = (0..3).filter(|&x| x != j).collect();
                let v = m[r[0]][s[0]] * m[r[1]][s[1]] - m[r[0]][s[1]] * m[r[1]][s[0]];
                if (i + j).is_multiple_of(2) {
                    v
                } else {
                    -v
                }
            };
            (0..3).map(|i| (0..3).map(|j| cof(j, i) / d).collect()).collect()
        }
    }
}

pub fn cmatmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn cmatvec(a: &CMat, v: &[C]) -> Vec<C> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn adjoint(a: &CMat) -> CMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

/// g = r * diag(a) * r2 with r, r2 unitary and a sorted descending.
#[derive(Clone, Debug)]
pub struct SvdDecomp {
    pub r: CMat,
    pub a: Vec<f64>,
    pub r2: CMat,
}

impl SvdDecomp {
    pub fn reconstruct(&self) -> CMat {
        let n = self.a.len();
        let d: CMat = (0..n).map(|i| (0..n).map(|j| if i == j { c(self.a[i]) } else { C::zero() }).collect()).collect();
        cmatmul(&cmatmul(&self.r, &d), &self.r2)
    }
}

/// One-sided Jacobi SVD with a fixed cyclic sweep order.
pub fn svd_decompose(g: &ProjMap) -> Result<SvdDecomp, Error> {
    let n = g.dim();
    let mut a = g.num.clone();
    let mut v: CMat = (0..n).map(|i| (0..n).map(|j| if i == j { c(1.0) } else { C::zero() }).collect()).collect();
    let col_dot = |m: &CMat, i: usize, j: usize| -> C { (0..n).map(|k| m[k][i].conj() * m[k][j]).sum() };
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let alpha = col_dot(&a, i, i).re;
                let beta = col_dot(&a, j, j).re;
                let gamma = col_dot(&a, i, j);
                let gn = gamma.norm();
                if gn == 0.0 || gn <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                off = off.max(gn / (alpha * beta).sqrt());
                // rotate column j's phase so the inner product is real
                let ph = gamma / gn;
                for row in a.iter_mut().chain(v.iter_mut()) {
                    row[j] *= ph.conj();
                }
                let zeta = (beta - alpha) / (2.0 * gn);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for row in a.iter_mut().chain(v.iter_mut()) {
                    let (x, y) = (row[i], row[j]);
                    row[i] = x * cs - y * sn;
                    row[j] = x * sn + y * cs;
                }
            }
        }
        if off < 1e-14 {
            let mut sv: Vec<(f64, usize)> = (0..n).map(|i| (col_dot(&a, i, i).re.sqrt(), i)).collect();
            sv.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
            if sv[n - 1].0 <= 1e-300 {
                return Err(Error::SingularMatrix);
            }
            let r: CMat = (0..n).map(|k| sv.iter().map(|&(s, i)| a[k][i] / s).collect()).collect();
            let vs: CMat = (0..n).map(|k| sv.iter().map(|&(_, i)| v[k][i]).collect()).collect();
            return Ok(SvdDecomp { r, a: sv.iter().map(|x| x.0).collect(), r2: adjoint(&vs) });
        }
    }
    Err(Error::NoConvergence("Jacobi sweeps did not converge".into()))
}

fn norm(v: &[C]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn herm(p: &[C], q: &[C]) -> C {
    p.iter().zip(q).map(|(a, b)| a.conj() * b).sum()
}

/// Fubini-Study distance on P^2 (values in [0, pi/2]); on P^1 the spherical
/// distance of the unit Riemann sphere (values in [0, pi]).
pub fn fubini_dist(p: &[C], q: &[C]) -> f64 {
    let cosv = (herm(p, q).norm() / (norm(p) * norm(q))).min(1.0);
    let d = cosv.acos();
    if p.len() == 2 {
        2.0 * d
    } else {
        d
    }
}

/// Distance from a point of P^2 to the line {l . x = 0}.
pub fn dist_to_line(p: &[C], l: &[C]) -> f64 {
    let s: C = l.iter().zip(p).map(|(a, b)| a * b).sum();
    (s.norm() / (norm(p) * norm(l))).min(1.0).asin()
}

#[derive(Clone, Debug)]
pub enum DistortionP2 {
    /// Points away from `repel` are mapped near the line `attract`.
    Case1 { attract: Vec<C>, repel: Vec<C> },
    /// Points away from the line `repel` are mapped near `attract`.
    Case2 { attract: Vec<C>, repel: Vec<C> },
    InsideCompact,
}

pub fn distortion_p2(g: &ProjMap, eps: f64) -> Result<DistortionP2, Error> {
    if g.dim() != 3 {
        return Err(Error::InvalidInput("need a 3x3 matrix".into()));
    }
    if !(eps > 0.0 && eps < PI / 4.0) {
        return Err(Error::InvalidInput("epsilon must lie in (0, pi/4)".into()));
    }
    let s = svd_decompose(g)?;
    let (a1, a2, a3) = (s.a[0], s.a[1], s.a[2]);
    let k = (a1 / a3).powf(0.25);
    if k <= 2.0 / eps {
        return Ok(DistortionP2::InsideCompact);
    }
    let k1 = a1 / a2;
    let k3 = a2 / a3;
    // ties count as Case2
    if k1 >= k3 * (1.0 - 1e-9) {
        let attract: Vec<C> = (0..3).map(|i| s.r[i][0]).collect();
        let repel: Vec<C> = s.r2[0].clone();
        Ok(DistortionP2::Case2 { attract, repel })
    } else {
        let attract: Vec<C> = (0..3).map(|i| s.r[i][2].conj()).collect();
        let repel: Vec<C> = s.r2[2].iter().map(|x| x.conj()).collect();
        Ok(DistortionP2::Case1 { attract, repel })
    }
}

#[derive(Clone, Debug)]
pub enum DistortionP1 {
    /// Everything outside the eps-disk around `repel` maps into the eps-disk
    /// around `attract`.
    Disks { repel: Vec<C>, attract: Vec<C> },
    InsideCompact,
}

pub fn distortion_p1(m: &ProjMap, eps: f64) -> Result<DistortionP1, Error> {
    if m.dim() != 2 {
        return Err(Error::InvalidInput("need a 2x2 matrix".into()));
    }
    if !(eps > 0.0 && eps < PI / 2.0) {
        return Err(Error::InvalidInput("epsilon must lie in (0, pi/2)".into()));
    }
    let s = svd_decompose(m)?;
    let kappa = s.a[0] / s.a[1];
    let need = 1.0 / (eps / 2.0).tan().powi(2);
    if kappa * (1.0 + 1e-12) < need {
        return Ok(DistortionP1::InsideCompact);
    }
    // source: r2 * x = e2 is repelled; target: r * e1 attracts
    let repel: Vec<C> = s.r2[1].iter().map(|x| x.conj()).collect();
    let attract: Vec<C> = (0..2).map(|i| s.r[i][0]).collect();
    Ok(DistortionP1::Disks { repel, attract })
}

/// Uniform random point of CP^{n-1}.
pub fn random_point<R: Rng>(n: usize, rng: &mut R) -> Vec<C> {
    (0..n)
        .map(|_| C::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Count sampled points at distance >= eps from the repelling locus whose
/// image is farther than eps (+tol) from the attracting locus.
pub fn covering_failures_p2<R: Rng>(g: &ProjMap, d: &DistortionP2, eps: f64, samples: usize, tol: f64, rng: &mut R) -> (usize, usize) {
    let mut tested = 0;
    let mut bad = 0;
    for _ in 0..samples {
        let p = random_point(3, rng);
        let (away, hit) = match d {
            DistortionP2::Case2 { attract, repel } => {
                (dist_to_line(&p, repel) >= eps, fubini_dist(&g.apply(&p), attract) <= eps + tol)
            }
            DistortionP2::Case1 { attract, repel } => {
                (fubini_dist(&p, repel) >= eps, dist_to_line(&g.apply(&p), attract) <= eps + tol)
            }
            DistortionP2::InsideCompact => return (0, 0),
        };
        if away {
            tested += 1;
            if !hit {
                bad += 1;
            }
        }
    }
    (tested, bad)
}

pub fn covering_failures_p1<R: Rng>(g: &ProjMap, d: &DistortionP1, eps: f64, samples: usize, tol: f64, rng: &mut R) -> (usize, usize) {
    let DistortionP1::Disks { repel, attract } = d else { return (0, 0) };
    let mut tested = 0;
    let mut bad = 0;
    for _ in 0..samples {
        let p = random_point(2, rng);
        if fubini_dist(&p, repel) >= eps {
            tested += 1;
            if fubini_dist(&g.apply(&p), attract) > eps + tol {
                bad += 1;
            }
        }
    }
    (tested, bad)
}

/// Random unitary matrix (QR of a complex Gaussian matrix by Gram-Schmidt).
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let mut cols: Vec<Vec<C>> = Vec::new();
    while cols.len() < n {
        let mut v = random_point(n, rng);
        for q in &cols {
            let d = herm(q, &v);
            for k in 0..n {
                v[k] -= q[k] * d;
            }
        }
        let nv = norm(&v);
        if nv > 1e-8 {
            cols.push(v.iter().map(|x| x / nv).collect());
        }
    }
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

pub fn frob(m: &CMat) -> f64 {
    m.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn cmat_sub(a: &CMat, b: &CMat) -> CMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}
