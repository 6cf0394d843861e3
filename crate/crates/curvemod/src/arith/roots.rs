//! Root finding: floating complex roots (Aberth iteration) and certified real
//! root isolation over Q by Sturm sequences.

use super::field::{rat, rat_to_f64, Rat};
use super::upoly::UniPoly;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

/// All complex roots (with multiplicity) of a rational polynomial.
pub fn complex_roots(p: &UniPoly<Rat>) -> Vec<Complex64> {
    let c: Vec<Complex64> = p.c.iter().map(|a| Complex64::new(rat_to_f64(a), 0.0)).collect();
    complex_roots_c(&c)
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        d = d * z + v;
        v = v * z + a;
    }
    (v, d)
}

/// Aberth-Ehrlich iteration on complex coefficients (ascending order).
pub fn complex_roots_c(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    let mut zeros_at_origin = 0;
    while c.len() > 1 && c[0].norm() == 0.0 {
        c.remove(0);
        zeros_at_origin += 1;
    }
    let n = c.len().saturating_sub(1);
    let mut out = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    if n == 0 {
        return out;
    }
    let lc = c[n];
    let c: Vec<Complex64> = c.iter().map(|a| a / lc).collect();
    if n == 1 {
        out.push(-c[0]);
        return out;
    }
    // Fujiwara-type bound for the initial circle.
    let mut radius: f64 = 0.0;
    for (k, a) in c.iter().enumerate().take(n) {
        let r = a.norm().powf(1.0 / (n - k) as f64);
        radius = radius.max(r);
    }
    let radius = (2.0 * radius).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, th)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let (v, d) = horner(&c, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        s += 1.0 / diff;
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    out.extend(z);
    out
}

/// Sturm sequence of a squarefree polynomial.
pub fn sturm_sequence(p: &UniPoly<Rat>) -> Vec<UniPoly<Rat>> {
    let mut seq = vec![p.clone(), p.deriv()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}

fn sign_changes(seq: &[UniPoly<Rat>], x: &Rat) -> usize {
    let mut last = 0i32;
    let mut n = 0;
    for q in seq {
        let v = q.eval(x);
        let s = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Cauchy bound on the absolute value of real roots.
pub fn root_bound(p: &UniPoly<Rat>) -> Rat {
    let lc = p.lc();
    let mut m = Rat::zero();
    for a in &p.c[..p.c.len() - 1] {
        let v = (a.clone() / lc.clone()).abs();
        if v > m {
            m = v;
        }
    }
    m + rat(1)
}

/// Isolating intervals, one per real root of `p` in increasing order. Each is
/// either a degenerate interval (lo == hi, an exact rational root) or an open
/// interval (lo, hi) containing exactly one root.
pub fn isolate_real_roots(p: &UniPoly<Rat>) -> Vec<(Rat, Rat)> {
    let sq = p.squarefree_part();
    if sq.deg() < 1 {
        return vec![];
    }
    let seq = sturm_sequence(&sq);
    let b = root_bound(&sq);
    let mut out = Vec::new();
    // Sturm counts roots in the half-open interval (lo, hi].
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if sq.eval(&hi).is_zero() {
                out.push((hi.clone(), hi));
            } else {
                out.push((lo, hi));
            }
            continue;
        }
        let mid = (lo.clone() + hi.clone()) / rat(2);
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Shrink an isolating interval of a simple root until its width is below `w`.
pub fn refine_root(p: &UniPoly<Rat>, lo: &Rat, hi: &Rat, w: &Rat) -> (Rat, Rat) {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    if lo == hi {
        return (lo, hi);
    }
    let mut slo = p.eval(&lo);
    if slo.is_zero() {
        return (lo.clone(), lo);
    }
    while hi.clone() - lo.clone() > *w {
        let mid = (lo.clone() + hi.clone()) / rat(2);
        let v = p.eval(&mid);
        if v.is_zero() {
            return (mid.clone(), mid);
        }
        if (v.is_positive()) == (slo.is_positive()) {
            lo = mid;
            slo = v;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Rational roots of a rational polynomial (exact).
pub fn rational_roots(p: &UniPoly<Rat>) -> Vec<Rat> {
    let mut out = Vec::new();
    for (f, _) in super::factor::factor_uni(p).factors {
        if f.deg() == 1 {
            out.push(-f.c[0].clone() / f.c[1].clone());
        }
    }
    out.sort();
    out
}

/// Certified interval for the real cube root of `a`, width at most `w`.
pub fn cbrt_interval(a: &Rat, w: &Rat) -> (Rat, Rat) {
    let neg = a.is_negative();
    let m = a.abs();
    let mut lo = Rat::zero();
    let mut hi = if m > rat(1) { m.clone() } else { rat(1) };
    while hi.clone() - lo.clone() > *w {
        let mid = (lo.clone() + hi.clone()) / rat(2);
        if mid.clone() * mid.clone() * mid.clone() <= m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if neg {
        (-hi, -lo)
    } else {
        (lo, hi)
    }
}

pub fn mid_f64(iv: &(Rat, Rat)) -> f64 {
    rat_to_f64(&((iv.0.clone() + iv.1.clone()) / rat(2)))
}

pub fn interval_width(iv: &(Rat, Rat)) -> Rat {
    iv.1.clone() - iv.0.clone()
}

impl UniPoly<Rat> {
    pub fn complex_roots(&self) -> Vec<Complex64> {
        complex_roots(self)
    }
}
