//! Effective divisors on P^1: cross-ratios, the shape invariant, degree-4
//! classification, moduli membership, the diameter invariant Theta and its
//! normalization, and trees of marked spheres.

use crate::arith::field::{rat, ratf, Field};
use crate::arith::{QuadExt, Rat};
use crate::projective::{cmatmul, cmatvec, fubini_dist, CMat, C};
use crate::Error;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

/// A point of P^1 in the affine chart, with an explicit point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum P1 {
    Fin(QuadExt),
    Inf,
}

impl P1 {
    pub fn rat(r: Rat) -> Self {
        P1::Fin(QuadExt::rational(r))
    }

    pub fn int(v: i64) -> Self {
        P1::rat(rat(v))
    }

    fn hom(&self) -> (QuadExt, QuadExt) {
        match self {
            P1::Fin(a) => (a.clone(), QuadExt::one()),
            P1::Inf => (QuadExt::one(), QuadExt::zero()),
        }
    }

    fn from_hom(a: QuadExt, b: QuadExt) -> Self {
        if b.is_zero() {
            P1::Inf
        } else {
            P1::Fin(a / b)
        }
    }

    /// Homogeneous complex coordinates.
    pub fn to_c(&self) -> [C; 2] {
        match self {
            P1::Fin(a) => [a.to_c64(), C::new(1.0, 0.0)],
            P1::Inf => [C::new(1.0, 0.0), C::new(0.0, 0.0)],
        }
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let t = text.trim();
        if t == "inf" || t == "\u{221e}" {
            return Ok(P1::Inf);
        }
        let q = crate::arith::parse::parse_poly_quad(t)?;
        if q.total_degree() > 0 {
            return Err(Error::Parse { pos: 0, msg: format!("expected a number, got '{t}'") });
        }
        Ok(P1::Fin(q.coeff(&[0, 0, 0])))
    }
}

impl fmt::Display for P1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1::Fin(a) => write!(f, "{a}"),
            P1::Inf => f.write_str("inf"),
        }
    }
}

/// [p, q] = p0 q1 - p1 q0.
fn bracket(p: &P1, q: &P1) -> QuadExt {
    let (a, b) = p.hom();
    let (c, d) = q.hom();
    a * d - b * c
}

fn distinct_count(pts: &[&P1]) -> usize {
    let mut v: Vec<&P1> = Vec::new();
    for p in pts {
        if !v.contains(p) {
            v.push(p);
        }
    }
    v.len()
}

/// (x-y)(z-w) / ((x-z)(y-w)), with the limits at infinity.
pub fn cross_ratio(x: &P1, y: &P1, z: &P1, w: &P1) -> Result<P1, Error> {
    if distinct_count(&[x, y, z, w]) < 3 {
        return Err(Error::TooFewDistinct);
    }
    let num = bracket(x, y) * bracket(z, w);
    let den = bracket(x, z) * bracket(y, w);
    Ok(P1::from_hom(num, den))
}

fn orbit_maps(r: &QuadExt) -> Vec<QuadExt> {
    let one = QuadExt::one();
    vec![
        r.clone(),
        one.clone() / r.clone(),
        one.clone() - r.clone(),
        r.clone() / (r.clone() - one.clone()),
        one.clone() / (one.clone() - r.clone()),
        one.clone() - one / r.clone(),
    ]
}

/// The set of cross-ratios obtained by reordering four points.
pub fn cross_ratio_orbit(rho: &P1) -> Result<Vec<QuadExt>, Error> {
    let r = match rho {
        P1::Fin(r) if !r.is_zero() && !r.is_one() => r.clone(),
        _ => return Err(Error::DegenerateRho),
    };
    let mut out: Vec<QuadExt> = Vec::new();
    for v in orbit_maps(&r) {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Shape invariant from the elementary symmetric functions of the
/// differences, after moving one point to infinity.
pub fn shape_invariant(x: &P1, y: &P1, z: &P1, w: &P1) -> Result<P1, Error> {
    let d = distinct_count(&[x, y, z, w]);
    if d < 3 {
        return Err(Error::TooFewDistinct);
    }
    if d == 3 {
        return Ok(P1::Inf);
    }
    let pts = [x, y, z, w];
    // send the last point to infinity by u -> 1/(u - w) unless one already is
    let (fin, _) = match pts.iter().position(|p| **p == P1::Inf) {
        Some(i) => {
            let f: Vec<QuadExt> = pts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| fin_val(p)).collect();
            (f, i)
        }
        None => {
            let wv = fin_val(w);
            let f: Vec<QuadExt> = pts[..3].iter().map(|p| QuadExt::one() / (fin_val(p) - wv.clone())).collect();
            (f, 3)
        }
    };
    let a = fin[0].clone() - fin[1].clone();
    let b = fin[1].clone() - fin[2].clone();
    let g = fin[2].clone() - fin[0].clone();
    let s2 = a.clone() * b.clone() + a.clone() * g.clone() + b.clone() * g.clone();
    let s3 = a * b * g;
    let c = QuadExt::rational(ratf(-4, 27));
    Ok(P1::Fin(c * s2.pow(3) / s3.pow(2)))
}

fn fin_val(p: &P1) -> QuadExt {
    match p {
        P1::Fin(a) => a.clone(),
        P1::Inf => unreachable!(),
    }
}

/// J as a function of a cross-ratio.
pub fn j_of_rho(rho: &QuadExt) -> P1 {
    let one = QuadExt::one();
    if rho.is_zero() || rho.is_one() {
        return P1::Inf;
    }
    let num = (rho.clone() * rho.clone() - rho.clone() + one.clone()).pow(3);
    let den = rho.clone() * rho.clone() * (one - rho.clone()).pow(2);
    P1::Fin(QuadExt::rational(ratf(4, 27)) * num / den)
}

/// m1 <p1> + ... + mk <pk>.
#[derive(Clone, Debug, PartialEq)]
pub struct Divisor1 {
    pub points: Vec<(P1, u32)>,
}

impl Divisor1 {
    pub fn new(points: Vec<(P1, u32)>) -> Result<Self, Error> {
        let mut merged: Vec<(P1, u32)> = Vec::new();
        for (p, m) in points {
            if m == 0 {
                return Err(Error::InvalidInput("multiplicities must be positive".into()));
            }
            if let (P1::Fin(a), Some(d)) = (&p, ext_of(&merged)) {
                if !a.is_rational() && a.d != d {
                    return Err(Error::ExtensionTooLarge("points in two different quadratic fields".into()));
                }
            }
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some(e) => e.1 += m,
                None => merged.push((p, m)),
            }
        }
        Ok(Divisor1 { points: merged })
    }

    pub fn degree(&self) -> u32 {
        self.points.iter().map(|(_, m)| m).sum()
    }

    pub fn max_mult(&self) -> u32 {
        self.points.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    /// Points listed with repetition.
    pub fn expanded(&self) -> Vec<P1> {
        self.points.iter().flat_map(|(p, m)| std::iter::repeat_n(p.clone(), *m as usize)).collect()
    }

    /// `m1*<p1> + <p2> + ...`, with `inf` for infinity.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut pts = Vec::new();
        let s = text.replace('\u{2212}', "-");
        let b = s.as_bytes();
        let mut i = 0;
        let skip = |i: &mut usize| {
            while *i < b.len() && b[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        loop {
            skip(&mut i);
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let mult: u32 = if i > start {
                let m = s[start..i].parse().map_err(|_| Error::Parse { pos: start, msg: "bad multiplicity".into() })?;
                skip(&mut i);
                if i < b.len() && b[i] == b'*' {
                    i += 1;
                    skip(&mut i);
                }
                m
            } else {
                1
            };
            if i >= b.len() || b[i] != b'<' {
                return Err(Error::Parse { pos: i, msg: "expected '<'".into() });
            }
            let close = s[i..].find('>').ok_or(Error::Parse { pos: i, msg: "missing '>'".into() })? + i;
            let p = P1::parse(&s[i + 1..close]).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + i + 1, msg },
                other => other,
            })?;
            if mult == 0 {
                return Err(Error::Parse { pos: start, msg: "multiplicity must be positive".into() });
            }
            pts.push((p, mult));
            i = close + 1;
            skip(&mut i);
            if i >= b.len() {
                break;
            }
            if b[i] != b'+' {
                return Err(Error::Parse { pos: i, msg: "expected '+'".into() });
            }
            i += 1;
        }
        Divisor1::new(pts)
    }
}

impl fmt::Display for Divisor1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(p, m)| if *m == 1 { format!("<{p}>") } else { format!("{m}*<{p}>") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn ext_of(pts: &[(P1, u32)]) -> Option<i64> {
    pts.iter().find_map(|(p, _)| match p {
        P1::Fin(a) if !a.is_rational() => Some(a.d),
        _ => None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deg4Tag {
    Generic,
    Dihedral,
    Tetrahedral,
    Improper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg4Class {
    pub tag: Deg4Tag,
    pub stabilizer_order: u32,
    pub ramification: Option<u32>,
    pub j: P1,
}

pub fn classify_deg4(d: &Divisor1) -> Result<Deg4Class, Error> {
    if d.degree() != 4 {
        return Err(Error::InvalidInput("degree must be 4".into()));
    }
    let p = d.expanded();
    let j = shape_invariant(&p[0], &p[1], &p[2], &p[3])?;
    let (tag, order, r) = match &j {
        P1::Inf => (Deg4Tag::Improper, 2, None),
        P1::Fin(v) if v.is_one() => (Deg4Tag::Dihedral, 8, Some(2)),
        P1::Fin(v) if v.is_zero() => (Deg4Tag::Tetrahedral, 12, Some(3)),
        _ => (Deg4Tag::Generic, 4, Some(1)),
    };
    Ok(Deg4Class { tag, stabilizer_order: order, ramification: r, j })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    NotInModuli,
    Hausdorff,
    NotLocallyHausdorff,
    SmallDegree,
}

pub fn moduli_membership(d: &Divisor1) -> Membership {
    if d.points.len() < 3 {
        return Membership::NotInModuli;
    }
    let n = d.degree();
    if n <= 4 {
        return Membership::SmallDegree;
    }
    if 2 * d.max_mult() < n {
        Membership::Hausdorff
    } else {
        Membership::NotLocallyHausdorff
    }
}

/// Divisor with complex homogeneous points, for the numeric operations.
pub type NumDivisor = Vec<([C; 2], u32)>;

pub fn to_numeric(d: &Divisor1) -> NumDivisor {
    d.points.iter().map(|(p, m)| (p.to_c(), *m)).collect()
}

fn diameter(pts: &[[C; 2]]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max(fubini_dist(&pts[i], &pts[j]));
        }
    }
    best
}

/// (Theta, index set of a minimizing subset).
fn theta_with_subset(d: &NumDivisor) -> Result<(f64, Vec<usize>), Error> {
    let n: u32 = d.iter().map(|(_, m)| m).sum();
    if n.is_multiple_of(2) {
        return Err(Error::EvenDegree);
    }
    let k = (n - 1) / 2;
    let s = d.len();
    let mut best = (f64::INFINITY, vec![]);
    for mask in 1u64..(1u64 << s) {
        let idx: Vec<usize> = (0..s).filter(|i| mask >> i & 1 == 1).collect();
        let w: u32 = idx.iter().map(|&i| d[i].1).sum();
        if w < k + 1 {
            continue;
        }
        let pts: Vec<[C; 2]> = idx.iter().map(|&i| d[i].0).collect();
        let dm = diameter(&pts);
        if dm < best.0 {
            best = (dm, idx);
        }
    }
    Ok(best)
}

/// Smallest spherical diameter among subsets of weight at least k+1 (n = 2k+1).
pub fn theta(d: &NumDivisor) -> Result<f64, Error> {
    Ok(theta_with_subset(d)?.0)
}

fn unit_vec(p: &[C; 2]) -> [f64; 3] {
    // stereographic image on the unit sphere
    let n = p[0].norm_sqr() + p[1].norm_sqr();
    let w = p[0] * p[1].conj();
    [2.0 * w.re / n, 2.0 * w.im / n, (p[0].norm_sqr() - p[1].norm_sqr()) / n]
}

fn from_unit(v: [f64; 3]) -> [C; 2] {
    // inverse stereographic map: (X, Y, Z) -> (X + iY : 1 - Z)
    if v[2] > 0.0 {
        [C::new(1.0 + v[2], 0.0), C::new(v[0], -v[1])]
    } else {
        [C::new(v[0], v[1]), C::new(1.0 - v[2], 0.0)]
    }
}

/// Unitary matrix sending the point (a : b) to 0 = (0 : 1).
fn to_zero(p: &[C; 2]) -> CMat {
    let n = (p[0].norm_sqr() + p[1].norm_sqr()).sqrt();
    let (a, b) = (p[0] / n, p[1] / n);
    vec![vec![b, -a], vec![a.conj(), b.conj()]]
}

#[derive(Clone, Debug)]
pub struct ThetaNormalization {
    pub g: CMat,
    pub divisor: NumDivisor,
    pub theta: f64,
    pub iterations: usize,
}

pub const THETA_TOL: f64 = 1e-6;
pub const THETA_MAX_ITER: usize = 10_000;

/// Move D by Moebius maps until Theta >= pi/4 - tol: rotate the center of a
/// minimizing subset to 0, then expand by z -> kappa z.
pub fn normalize_theta(d: &NumDivisor, max_iter: usize) -> Result<ThetaNormalization, Error> {
    let n: u32 = d.iter().map(|(_, m)| m).sum();
    if n.is_multiple_of(2) {
        return Err(Error::EvenDegree);
    }
    let k = (n - 1) / 2;
    if d.iter().any(|(_, m)| *m > k) {
        return Err(Error::MaxMultTooLarge);
    }
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    let mut g: CMat = vec![vec![one, zero], vec![zero, one]];
    let mut cur: NumDivisor = d.clone();
    for it in 0..=max_iter {
        let (th, idx) = theta_with_subset(&cur)?;
        if th >= PI / 4.0 - THETA_TOL {
            return Ok(ThetaNormalization { g, divisor: cur, theta: th, iterations: it });
        }
        let mut c = [0.0; 3];
        for &i in &idx {
            let u = unit_vec(&cur[i].0);
            for t in 0..3 {
                c[t] += u[t];
            }
        }
        let norm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        let center = if norm < 1e-12 { cur[idx[0]].0 } else { from_unit([c[0] / norm, c[1] / norm, c[2] / norm]) };
        let kappa = 1.0 + (PI / 4.0 - th) / 4.0;
        let step = cmatmul(&vec![vec![C::new(kappa, 0.0), zero], vec![zero, one]], &to_zero(&center));
        g = cmatmul(&step, &g);
        for (p, _) in cur.iter_mut() {
            let v = cmatvec(&step, p);
            let s = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            *p = [v[0] / s, v[1] / s];
        }
    }
    Err(Error::NoConvergence(format!("Theta normalization exceeded {max_iter} iterations")))
}

/// A tree of projective lines with marked points, joined at nodes.
#[derive(Clone, Debug)]
pub struct TreeOfSpheres {
    pub spheres: usize,
    /// ((sphere i, point on i), (sphere j, point on j))
    pub nodes: Vec<((usize, P1), (usize, P1))>,
    pub marked: Vec<(usize, P1)>,
}

impl TreeOfSpheres {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |s: &str| Err(Error::InvalidTree(s.to_string()));
        // (1) marked points lie on existing spheres and are distinct
        let mut special: Vec<BTreeSet<String>> = vec![BTreeSet::new(); self.spheres];
        for (s, p) in &self.marked {
            if *s >= self.spheres {
                return bad("(1) marked point on a nonexistent sphere");
            }
            if !special[*s].insert(p.to_string()) {
                return bad("(1) two marked points coincide");
            }
        }
        // (2) each pair of spheres meets in at most one nodal point
        let mut pairs = BTreeSet::new();
        for ((i, p), (j, q)) in &self.nodes {
            if *i >= self.spheres || *j >= self.spheres || i == j {
                return bad("(2) a node must join two different spheres");
            }
            if !pairs.insert((*i.min(j), *i.max(j))) {
                return bad("(2) two spheres meet in more than one point");
            }
            if !special[*i].insert(p.to_string()) || !special[*j].insert(q.to_string()) {
                return bad("(2) a nodal point coincides with another special point");
            }
        }
        // (3) stability
        if special.iter().any(|s| s.len() < 3) {
            return bad("(3) a sphere carries fewer than three special points");
        }
        // (4) tree
        if self.spheres == 0 || self.nodes.len() + 1 != self.spheres || self.components() != 1 {
            return bad("(4) the sphere graph is not a tree");
        }
        Ok(())
    }

    fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.spheres).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for ((i, _), (j, _)) in &self.nodes {
            let (a, b) = (find(&mut parent, *i), find(&mut parent, *j));
            parent[a] = b;
        }
        (0..self.spheres).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Marked points in the subtree hanging from `from` through `to`.
    fn subtree_marks(&self, to: usize, from: usize) -> u32 {
        let mut count = self.marked.iter().filter(|(s, _)| *s == to).count() as u32;
        for ((i, _), (j, _)) in &self.nodes {
            let next = if *i == to && *j != from {
                Some(*j)
            } else if *j == to && *i != from {
                Some(*i)
            } else {
                None
            };
            if let Some(nx) = next {
                count += self.subtree_marks(nx, to);
            }
        }
        count
    }
}

/// Retraction onto sphere j: nodal points are weighted by the number of
/// marked points beyond them.
pub fn tree_retract(t: &TreeOfSpheres, j: usize) -> Result<Divisor1, Error> {
    t.validate()?;
    if j >= t.spheres {
        return Err(Error::InvalidInput(format!("no sphere {j}")));
    }
    let mut pts: Vec<(P1, u32)> = t.marked.iter().filter(|(s, _)| *s == j).map(|(_, p)| (p.clone(), 1)).collect();
    for ((a, p), (b, q)) in &t.nodes {
        if *a == j {
            pts.push((p.clone(), t.subtree_marks(*b, j)));
        } else if *b == j {
            pts.push((q.clone(), t.subtree_marks(*a, j)));
        }
    }
    Divisor1::new(pts)
}

/// J = 4A^3 / (4A^3 + 27B^2) for the depressed cubic X^3 + A X + B.
pub fn j_from_cubic_coeffs(a: &Rat, b: &Rat) -> Result<P1, Error> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let num = rat(4) * a.clone().pow(3);
    let den = num.clone() + rat(27) * b.clone().pow(2);
    if den.is_zero() {
        return Ok(P1::Inf);
    }
    Ok(P1::rat(num / den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> P1 {
        P1::int(v)
    }

    #[test]
    fn cross_ratio_examples() {
        assert_eq!(cross_ratio(&q(0), &q(5), &q(1), &P1::Inf).unwrap(), q(5));
        let v = cross_ratio(&q(0), &q(0), &q(1), &P1::Inf).unwrap();
        assert!(v == q(0) || v == q(1) || v == P1::Inf);
        assert_eq!(cross_ratio(&q(0), &q(0), &q(1), &q(1)), Err(Error::TooFewDistinct));
    }

    #[test]
    fn orbit_sizes() {
        let o = cross_ratio_orbit(&q(-1)).unwrap();
        assert_eq!(o.len(), 3);
        let rho = P1::Fin(QuadExt::new(ratf(1, 2), ratf(1, 2), -3));
        assert_eq!(cross_ratio_orbit(&rho).unwrap().len(), 2);
        assert_eq!(cross_ratio_orbit(&q(3)).unwrap().len(), 6);
        assert_eq!(cross_ratio_orbit(&q(1)), Err(Error::DegenerateRho));
    }

    #[test]
    fn shape_examples() {
        assert_eq!(shape_invariant(&q(-1), &q(0), &q(1), &P1::Inf).unwrap(), q(1));
        let rho = P1::Fin(QuadExt::new(ratf(1, 2), ratf(1, 2), -3));
        assert_eq!(shape_invariant(&q(0), &rho, &q(1), &P1::Inf).unwrap(), q(0));
        assert_eq!(shape_invariant(&q(0), &q(0), &q(1), &P1::Inf).unwrap(), P1::Inf);
    }

    #[test]
    fn classify_examples() {
        let d = Divisor1::parse("<-1> + <0> + <1> + <inf>").unwrap();
        let c = classify_deg4(&d).unwrap();
        assert_eq!((c.tag, c.stabilizer_order), (Deg4Tag::Dihedral, 8));
        let d = Divisor1::parse("2*<0> + <1> + <inf>").unwrap();
        assert_eq!(classify_deg4(&d).unwrap().tag, Deg4Tag::Improper);
        let d = Divisor1::parse("<0> + <3> + <1> + <inf>").unwrap();
        assert_eq!(classify_deg4(&d).unwrap().stabilizer_order, 4);
    }

    #[test]
    fn membership_examples() {
        let bad = Divisor1::parse("3*<0> + <1> + <inf>").unwrap();
        assert_eq!(moduli_membership(&bad), Membership::NotLocallyHausdorff);
        let good = Divisor1::parse("2*<0> + 2*<1> + <inf>").unwrap();
        assert_eq!(moduli_membership(&good), Membership::Hausdorff);
        let two = Divisor1::parse("2*<0> + 2*<1>").unwrap();
        assert_eq!(moduli_membership(&two), Membership::NotInModuli);
    }

    #[test]
    fn theta_examples() {
        let d = Divisor1::parse("3*<0> + <1> + <inf>").unwrap();
        assert_eq!(theta(&to_numeric(&d)).unwrap(), 0.0);
        let d = Divisor1::parse("<0> + <1> + <inf> + <sqrt(-1)> + <-sqrt(-1)>").unwrap();
        assert!(theta(&to_numeric(&d)).unwrap() > 0.0);
        let even = Divisor1::parse("<0> + <1> + <inf> + <2>").unwrap();
        assert_eq!(theta(&to_numeric(&even)), Err(Error::EvenDegree));
    }

    #[test]
    fn normalize_tight_cluster() {
        let d: NumDivisor = vec![
            ([C::new(0.0, 0.0), C::new(1.0, 0.0)], 1),
            ([C::new(1e-3, 0.0), C::new(1.0, 0.0)], 1),
            ([C::new(2e-3, 0.0), C::new(1.0, 0.0)], 1),
            ([C::new(1.0, 0.0), C::new(1.0, 0.0)], 1),
            ([C::new(1.0, 0.0), C::new(0.0, 0.0)], 1),
        ];
        let r = normalize_theta(&d, THETA_MAX_ITER).unwrap();
        assert!(r.theta >= PI / 4.0 - THETA_TOL);
        assert!((theta(&r.divisor).unwrap() - r.theta).abs() < 1e-12);
    }

    #[test]
    fn trees() {
        let t = TreeOfSpheres {
            spheres: 2,
            nodes: vec![((0, q(0)), (1, P1::Inf))],
            marked: vec![(0, q(1)), (0, q(2)), (1, q(1)), (1, q(2))],
        };
        let d = tree_retract(&t, 0).unwrap();
        assert_eq!(d.degree(), 4);
        assert!(d.points.contains(&(q(0), 2)));
        let bad = TreeOfSpheres { spheres: 2, nodes: vec![((0, q(0)), (1, q(0)))], marked: vec![(0, q(1)), (1, q(1))] };
        assert!(matches!(tree_retract(&bad, 0), Err(Error::InvalidTree(_))));
    }

    #[test]
    fn j_from_cubic() {
        assert_eq!(j_from_cubic_coeffs(&rat(1), &rat(0)).unwrap(), q(1));
        assert_eq!(j_from_cubic_coeffs(&rat(0), &rat(1)).unwrap(), q(0));
        assert_eq!(j_from_cubic_coeffs(&rat(-3), &rat(2)).unwrap(), P1::Inf);
        assert_eq!(j_from_cubic_coeffs(&rat(0), &rat(0)), Err(Error::BothZero));
    }
}
