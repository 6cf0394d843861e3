//! Resultants: Sylvester/Bareiss over polynomial coefficient rings, and an
//! evaluation-interpolation fast path for eliminating z from two forms.

use super::field::{rat, Field, Rat};
use super::mpoly::{MPoly, Y, Z};
use super::upoly::UniPoly;
use crate::Error;

/// Classical Sylvester resultant of f and g regarded as polynomials in `var`.
pub fn resultant<F: Field>(f: &MPoly<F>, g: &MPoly<F>, var: usize) -> Result<MPoly<F>, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let a = f.coeffs_in(var);
    let b = g.coeffs_in(var);
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 && n == 0 {
        return Ok(MPoly::one());
    }
    if m == 0 {
        return Ok(a[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(b[0].pow(m as u32));
    }
    let size = m + n;
    let mut s: Vec<Vec<MPoly<F>>> = vec![vec![MPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().enumerate() {
            s[r][r + m - k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().enumerate() {
            s[n + r][r + n - k] = c.clone();
        }
    }
    Ok(bareiss_det(s))
}

/// Fraction-free determinant over a polynomial ring.
pub fn bareiss_det<F: Field>(mut m: Vec<Vec<MPoly<F>>>) -> MPoly<F> {
    let n = m.len();
    let mut sign = false;
    let mut prev = MPoly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return MPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// A binary form B(x, y) of degree `deg`, stored as B(x, 1).
#[derive(Clone, Debug, PartialEq)]
pub struct BinForm {
    pub p: UniPoly<Rat>,
    pub deg: u32,
}

impl BinForm {
    /// Exponent of y dividing the form.
    pub fn y_power(&self) -> u32 {
        self.deg - self.p.deg().max(0) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    /// Gcd of two binary forms (monic in the dehomogenized part).
    pub fn gcd(&self, o: &Self) -> BinForm {
        let g = self.p.gcd(&o.p);
        let yp = self.y_power().min(o.y_power());
        BinForm { deg: g.deg().max(0) as u32 + yp, p: g }
    }

    pub fn to_mpoly(&self) -> MPoly<Rat> {
        MPoly::from_uni(&self.p, 0).homogenize(Y, self.deg)
    }
}

/// Coefficients of z^k in F(x, 1, z) as polynomials in x.
pub fn z_coeffs_at_y1(f: &MPoly<Rat>) -> Vec<UniPoly<Rat>> {
    f.subs_const(Y, &rat(1)).coeffs_in(Z).iter().map(|c| c.to_uni(0)).collect()
}

/// res_z(F, G) for forms whose z^deg coefficients are nonzero constants; the
/// result is a binary form of degree deg F * deg G.
pub fn res_z_forms(f: &MPoly<Rat>, g: &MPoly<Rat>) -> BinForm {
    let m = f.total_degree().max(0) as u32;
    let n = g.total_degree().max(0) as u32;
    let d = (m * n) as usize;
    let fc = z_coeffs_at_y1(f);
    let gc = z_coeffs_at_y1(g);
    let xs: Vec<Rat> = (0..=d as i64).map(rat).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|x0| {
            let fz = UniPoly::new(fc.iter().map(|c| c.eval(x0)).collect());
            let gz = UniPoly::new(gc.iter().map(|c| c.eval(x0)).collect());
            fz.resultant(&gz)
        })
        .collect();
    BinForm { p: interpolate(&xs, &ys), deg: m * n }
}

/// Newton interpolation through the given nodes.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> UniPoly<F> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - j].clone());
        }
    }
    let mut p = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UniPoly::new(vec![-xs[i].clone(), F::one()]);
        p = p.mul(&lin).add(&UniPoly::constant(dd[i].clone()));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mpoly::X;

    #[test]
    fn sylvester_example() {
        // res_x(x^2 - y^3, 2x) = -4 y^3
        let f = MPoly::<Rat>::var(X).pow(2).sub(&MPoly::var(Y).pow(3));
        let g = MPoly::var(X).scale(&rat(2));
        let r = resultant(&f, &g, X).unwrap();
        assert_eq!(r, MPoly::term(rat(-4), [0, 3, 0]));
    }

    #[test]
    fn linear_pair() {
        let f = MPoly::<Rat>::var(X).sub(&MPoly::one());
        let g = MPoly::<Rat>::var(X).sub(&MPoly::constant(rat(2)));
        assert_eq!(resultant(&f, &g, X).unwrap(), MPoly::constant(rat(-1)));
        assert!(resultant(&f, &f, X).unwrap().is_zero());
    }

    #[test]
    fn interpolation_fast_path_matches_sylvester() {
        // z^2 + x y + x^2 - 3 y^2 and z^2 - 2 x z + y^2 (z-leading constants)
        let x = MPoly::<Rat>::var(X);
        let y = MPoly::<Rat>::var(Y);
        let z = MPoly::<Rat>::var(Z);
        let f = z.pow(2).add(&x.mul(&y)).add(&x.pow(2)).sub(&y.pow(2).scale(&rat(3)));
        let g = z.pow(2).sub(&x.mul(&z).scale(&rat(2))).add(&y.pow(2));
        let slow = resultant(&f, &g, Z).unwrap();
        let fast = res_z_forms(&f, &g).to_mpoly();
        assert_eq!(slow, fast);
    }
}
