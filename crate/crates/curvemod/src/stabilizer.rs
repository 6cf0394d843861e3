//! Infinitesimal stabilizers of plane curves, one-parameter subgroup types,
//! and the counting arithmetic for cyclic automorphisms.

use crate::arith::field::{binomial, is_prime, rat, Field, Rat};
use crate::arith::linalg::{kernel, matmul, Mat};
use crate::arith::mpoly::{Exp, MPoly};
use crate::arith::numfield::{AlgNum, NumField};
use crate::arith::roots::rational_roots;
use crate::arith::solve::is_smooth;
use crate::arith::upoly::UniPoly;
use crate::arith::{Cycle, HomoForm};
use crate::Error;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OneParamType {
    /// sorted p >= q >= r >= 0; `normal` says p = q + r with pairwise
    /// coprime entries
    D { p: u64, q: u64, r: u64, normal: bool },
    ND,
}

impl fmt::Display for OneParamType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneParamType::D { p, q, r, .. } => write!(f, "D({p},{q},{r})"),
            OneParamType::ND => f.write_str("ND"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabReport {
    pub lie_dim: usize,
    /// trace-free representatives (A, lambda), one per dimension
    pub basis: Vec<(Mat<Rat>, Rat)>,
    pub one_param_type: Option<OneParamType>,
}

/// Solutions of sum A_ij x_j dPhi/dx_i = lambda Phi with tr A = 0. The
/// trace condition removes exactly the scalar family.
pub fn lie_algebra(phi: &MPoly<Rat>) -> Result<Vec<(Mat<Rat>, Rat)>, Error> {
    if phi.is_zero() {
        return Err(Error::ZeroForm);
    }
    let mut rows: BTreeMap<Exp, Vec<Rat>> = BTreeMap::new();
    let blank = || vec![Rat::zero(); 10];
    for i in 0..3 {
        let d = phi.deriv(i);
        for j in 0..3 {
            let mut e = [0; 3];
            e[j] = 1;
            for (m, c) in &d.mul_monomial(&rat(1), e).terms {
                rows.entry(*m).or_insert_with(blank)[3 * i + j] += c.clone();
            }
        }
    }
    for (m, c) in &phi.terms {
        rows.entry(*m).or_insert_with(blank)[9] -= c.clone();
    }
    let mut m: Mat<Rat> = rows.into_values().collect();
    let mut tr = blank();
    for i in 0..3 {
        tr[4 * i] = rat(1);
    }
    m.push(tr);
    Ok(kernel(&m, 10)
        .into_iter()
        .map(|v| {
            let a = (0..3).map(|i| v[3 * i..3 * i + 3].to_vec()).collect();
            (a, v[9].clone())
        })
        .collect())
}

pub fn stab_lie(f: &HomoForm) -> Result<StabReport, Error> {
    let basis = lie_algebra(f.poly())?;
    let one_param_type = curve_type(&basis)?;
    Ok(StabReport { lie_dim: basis.len(), basis, one_param_type })
}

pub fn stab_lie_cycle(c: &Cycle) -> Result<StabReport, Error> {
    stab_lie(&HomoForm::new(c.expand())?)
}

/// Type of a W-curve from its algebra: the first diagonalizable element in
/// a fixed search over small combinations, else ND.
fn curve_type(basis: &[(Mat<Rat>, Rat)]) -> Result<Option<OneParamType>, Error> {
    if basis.is_empty() {
        return Ok(None);
    }
    let k = basis.len();
    let coeffs: Vec<i64> = vec![0, 1, -1, 2, -2, 3];
    let total = coeffs.len().pow(k as u32);
    for idx in 1..total.min(100_000) {
        let mut t = idx;
        let mut a: Mat<Rat> = vec![vec![Rat::zero(); 3]; 3];
        for (b, _) in basis {
            let c = rat(coeffs[t % coeffs.len()]);
            t /= coeffs.len();
            for i in 0..3 {
                for j in 0..3 {
                    a[i][j] += c.clone() * b[i][j].clone();
                }
            }
        }
        if is_scalar(&a) {
            continue;
        }
        if let Ok(ty @ OneParamType::D { .. }) = one_param_type(&a) {
            return Ok(Some(ty));
        }
    }
    Ok(Some(OneParamType::ND))
}

fn is_scalar(a: &Mat<Rat>) -> bool {
    (0..3).all(|i| (0..3).all(|j| if i == j { a[i][i] == a[0][0] } else { a[i][j].is_zero() }))
}

fn char_poly(a: &Mat<Rat>) -> UniPoly<Rat> {
    // t^3 - tr t^2 + c2 t - det
    let tr = a[0][0].clone() + a[1][1].clone() + a[2][2].clone();
    let minor = |i: usize, j: usize| a[i][i].clone() * a[j][j].clone() - a[i][j].clone() * a[j][i].clone();
    let c2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let det = crate::arith::linalg::det(a);
    UniPoly::new(vec![-det, c2, -tr, rat(1)])
}

pub fn one_param_type(a: &Mat<Rat>) -> Result<OneParamType, Error> {
    if is_scalar(a) {
        return Err(Error::InvalidInput("scalar matrix".into()));
    }
    let cp = char_poly(a);
    let mut eig: Vec<Rat> = Vec::new();
    let mut rest = cp.clone();
    for r in rational_roots(&cp) {
        let lin = UniPoly::new(vec![-r.clone(), rat(1)]);
        while rest.deg() >= 1 && rest.eval(&r).is_zero() {
            rest = rest.exact_div(&lin).expect("root divides");
            eig.push(r.clone());
        }
    }
    if eig.len() != 3 {
        return Err(Error::NotInTower);
    }
    let mut distinct = eig.clone();
    distinct.sort();
    distinct.dedup();
    let id = crate::arith::linalg::identity::<Rat>(3);
    let mut prod = id.clone();
    for l in &distinct {
        let shifted: Mat<Rat> = (0..3).map(|i| (0..3).map(|j| a[i][j].clone() - l.clone() * id[i][j].clone()).collect()).collect();
        prod = matmul(&prod, &shifted);
    }
    if prod.iter().flatten().any(|v| !v.is_zero()) {
        return Ok(OneParamType::ND);
    }
    eig.sort();
    // the invariant curve x^p = y^q z^r pairs the middle eigenvalue with p
    let (lo, mid, hi) = (&eig[0], &eig[1], &eig[2]);
    let (q, r) = (hi.clone() - mid.clone(), mid.clone() - lo.clone());
    let (q, r) = if q.is_zero() || r.is_zero() { (rat(1), rat(0)) } else { (q, r) };
    let den = q.denom().lcm(r.denom());
    let (qi, ri) = ((q * Rat::from_integer(den.clone())).to_integer(), (r * Rat::from_integer(den)).to_integer());
    let g = qi.gcd(&ri);
    let (qi, ri) = ((qi / &g).to_u64().unwrap(), (ri / &g).to_u64().unwrap());
    let mut t = [qi + ri, qi, ri];
    t.sort_unstable_by(|a, b| b.cmp(a));
    let [p, q, r] = t;
    let normal = p == q + r && q.gcd(&r) == 1;
    Ok(OneParamType::D { p, q, r, normal })
}

fn check_prime(p: u64) -> Result<(), Error> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Whether some smooth curve of degree n has an automorphism of order p.
pub fn period_p_exists(n: u64, p: u64) -> Result<bool, Error> {
    check_prime(p)?;
    if n < 3 {
        return Err(Error::DegreeTooLow { need: 3, got: n as u32 });
    }
    Ok(n % p <= 2)
}

#[derive(Clone, Debug)]
pub struct WitnessCurve {
    pub form: HomoForm,
    /// g = diag(zeta^e0, zeta^e1, 1), zeta a primitive p-th root of unity
    pub exponents: [u64; 2],
    pub p: u64,
    pub smooth: bool,
    pub invariant: bool,
}

impl WitnessCurve {
    pub fn map_string(&self) -> String {
        let c = |e: u64, v: &str| match e {
            0 => v.to_string(),
            1 => format!("z{}*{v}", self.p),
            _ => format!("z{}^{e}*{v}", self.p),
        };
        format!("(x:y:z) -> ({}:{}:z)", c(self.exponents[0], "x"), c(self.exponents[1], "y"))
    }
}

fn mono(c: i64, e: Exp) -> MPoly<Rat> {
    MPoly::term(rat(c), e)
}

pub fn witness_curve(n: u64, p: u64) -> Result<WitnessCurve, Error> {
    if !period_p_exists(n, p)? {
        return Err(Error::InfeasiblePair { n, p });
    }
    let d = n as u32;
    let (poly, exponents) = match n % p {
        0 => (mono(1, [d, 0, 0]).add(&mono(1, [0, d, 0])).add(&mono(1, [0, 0, d])), [1, 0]),
        1 => (mono(1, [d - 1, 1, 0]).add(&mono(1, [0, d, 0])).add(&mono(1, [0, 0, d])), [1, 0]),
        _ => (mono(1, [d - 1, 1, 0]).add(&mono(1, [1, d - 1, 0])).add(&mono(1, [0, 0, d])), [1, p - 1]),
    };
    let smooth = is_smooth(&poly)?;
    let invariant = weights_constant(&poly, exponents, p) && invariant_exact(&poly, exponents, p);
    Ok(WitnessCurve { form: HomoForm::new(poly)?, exponents, p, smooth, invariant })
}

/// Every monomial x^i y^j picks up the same power of zeta.
fn weights_constant(f: &MPoly<Rat>, e: [u64; 2], p: u64) -> bool {
    let mut w = f.terms.keys().map(|m| (m[0] as u64 * e[0] + m[1] as u64 * e[1]) % p);
    let first = w.next();
    w.all(|x| Some(x) == first)
}

/// act(g, f) proportional to f, computed in Q(zeta_p).
fn invariant_exact(f: &MPoly<Rat>, e: [u64; 2], p: u64) -> bool {
    let k = NumField::new(&UniPoly::new(vec![rat(1); p as usize]));
    let zeta = AlgNum::gen(&k);
    let one = AlgNum::in_field(&k, rat(1));
    let zero = AlgNum::in_field(&k, rat(0));
    // g^{-1} = diag(zeta^{p-e0}, zeta^{p-e1}, 1)
    let inv = |ex: u64| zeta.pow(((p - ex % p) % p) as u32);
    let m = [[inv(e[0]), zero.clone(), zero.clone()], [zero.clone(), inv(e[1]), zero.clone()], [zero.clone(), zero, one.clone()]];
    let fk = f.map(|c| AlgNum::in_field(&k, c.clone()));
    fk.linear_subst(&m).proportional(&fk)
}

/// k = (2g - 2 - (2g' - 2)p)/(p - 1) when it is an integer >= 0 other than 1.
pub fn rh_feasible(g: u64, gp: u64, p: u64) -> Option<u64> {
    if g < 2 || gp >= g || !is_prime(p) {
        return None;
    }
    let num = (2 * g as i64 - 2) - (2 * gp as i64 - 2) * p as i64;
    let den = p as i64 - 1;
    if num < 0 || num % den != 0 {
        return None;
    }
    let k = num / den;
    if k == 1 {
        return None;
    }
    debug_assert_eq!(2 * g as i64 - 2, (2 * gp as i64 - 2) * p as i64 + (p as i64 - 1) * k);
    Some(k as u64)
}

pub fn feasible_primes(g: u64) -> Result<Vec<u64>, Error> {
    if g < 2 {
        return Err(Error::InvalidInput("genus must be at least 2".into()));
    }
    Ok((2..=2 * g + 1).filter(|&p| is_prime(p) && (0..g).any(|gp| rh_feasible(g, gp, p).is_some())).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimCounts {
    pub n: u64,
    pub p: u64,
    pub dim_moduli_smooth: u64,
    pub dim_two_equal_eigen: u64,
    pub bound_three_distinct: u64,
    /// s(k0, p) for k0 = 0..p-1
    pub s_count: Vec<u64>,
}

/// Monomials of degree n whose x-exponent is k0 mod p.
pub fn s_count(n: u64, k0: u64, p: u64) -> u64 {
    (0..=n).filter(|i| i % p == k0 % p).map(|i| n - i + 1).sum()
}

pub fn dim_counts(n: u64, p: u64) -> Result<DimCounts, Error> {
    check_prime(p)?;
    if n < 3 {
        return Err(Error::DegreeTooLow { need: 3, got: n as u32 });
    }
    let s0 = s_count(n, 0, p);
    Ok(DimCounts {
        n,
        p,
        dim_moduli_smooth: (n * n + 3 * n - 16) / 2,
        dim_two_equal_eigen: s0 - 5,
        bound_three_distinct: (n - 1) + (0..=n).map(|l| l / p).sum::<u64>(),
        s_count: (0..p).map(|k| s_count(n, k, p)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChowDims {
    pub n: u64,
    pub chow_dim: u64,
    pub reducible_dim: u64,
}

pub fn chow_dims(n: u64) -> Result<ChowDims, Error> {
    if n < 1 {
        return Err(Error::DegreeTooLow { need: 1, got: 0 });
    }
    let chow_dim = binomial(n + 2, 2) - 1;
    Ok(ChowDims { n, chow_dim, reducible_dim: chow_dim + 1 - n })
}

/// Parse "D(p,q,r)" or "ND".
pub fn parse_type(s: &str) -> Result<OneParamType, Error> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "ND" {
        return Ok(OneParamType::ND);
    }
    let inner = t.strip_prefix("D(").and_then(|r| r.strip_suffix(')')).ok_or_else(|| Error::UnknownType(s.into()))?;
    let v: Vec<u64> = inner.split(',').map(|x| x.parse::<u64>()).collect::<Result<_, _>>().map_err(|_| Error::UnknownType(s.into()))?;
    let [p, q, r]: [u64; 3] = v.try_into().map_err(|_| Error::UnknownType(s.into()))?;
    if p == 0 || p < q || q < r {
        return Err(Error::UnknownType(s.into()));
    }
    Ok(OneParamType::D { p, q, r, normal: p == q + r && q.gcd(&r) == 1 })
}

/// Dimension of the family of W-curves of the given type; `k` counts the
/// nonlinear components, `n` is the degree.
pub fn wcomponent_dim(ty: &str, n: u64, k: u64) -> Result<u64, Error> {
    Ok(match parse_type(ty)? {
        OneParamType::D { p: 1, q: 1, r: 0, .. } => n + 3,
        OneParamType::D { .. } => k + 6,
        OneParamType::ND => 5 + k,
    })
}

/// x^p - a y^q z^r
pub fn d_type_curve(p: u32, q: u32, r: u32, a: &Rat) -> Result<HomoForm, Error> {
    if p != q + r {
        return Err(Error::InvalidInput("need p = q + r".into()));
    }
    HomoForm::new(MPoly::term(rat(1), [p, 0, 0]).sub(&MPoly::term(a.clone(), [0, q, r])))
}

/// Common point of a union of n concurrent lines: the kernel of all
/// (n-1)-th partial derivatives.
pub fn pencil_center(f: &HomoForm) -> Result<[Rat; 3], Error> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooLow { need: 2, got: n });
    }
    let mut ds = vec![f.poly().clone()];
    for _ in 0..n - 1 {
        ds = ds.iter().flat_map(|d| (0..3).map(|v| d.deriv(v))).filter(|d| !d.is_zero()).collect();
        ds.dedup();
    }
    let rows: Mat<Rat> = ds.iter().map(|d| [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|e| d.coeff(e)).collect()).collect();
    let k = kernel(&rows, 3);
    let not_concurrent = || Error::InvalidInput("not a union of concurrent lines".into());
    if k.len() != 1 {
        return Err(not_concurrent());
    }
    let p = [k[0][0].clone(), k[0][1].clone(), k[0][2].clone()];
    // multiplicity n at p forces a cone over p, i.e. lines through it
    if !f.poly().eval(&p).is_zero() {
        return Err(not_concurrent());
    }
    Ok(p)
}

/// Shape invariant of four concurrent lines, read on the pencil through
/// their common point. Coordinates are changed so the point is (0:0:1); the
/// quartic binary form left over gives J = 4I^3 / (4I^3 - J2^2).
pub fn concurrent_lines_j(f: &HomoForm) -> Result<crate::divisor::P1, Error> {
    use crate::divisor::P1;
    if f.degree() != 4 {
        return Err(Error::InvalidInput("need exactly four lines".into()));
    }
    let p = pencil_center(f)?;
    let e = |i: usize| -> [Rat; 3] { std::array::from_fn(|k| rat((k == i) as i64)) };
    // complete p to a basis with two unit vectors; p goes in the last column
    let (a, b) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(a, b)| !crate::arith::linalg::det(&cols([e(a), e(b), p.clone()])).is_zero())
        .expect("p is nonzero");
    let m = cols([e(a), e(b), p]);
    let g = f.poly().linear_subst(&crate::arith::linalg::to3(&m));
    if g.degree_in(2) > 0 {
        return Err(Error::InvalidInput("not a union of concurrent lines".into()));
    }
    let c = |i: u32| g.coeff(&[4 - i, i, 0]);
    let (a, b, c2, d, e) = (c(0), c(1), c(2), c(3), c(4));
    let i = rat(12) * a.clone() * e.clone() - rat(3) * b.clone() * d.clone() + c2.clone() * c2.clone();
    let j = rat(72) * a.clone() * c2.clone() * e.clone() + rat(9) * b.clone() * c2.clone() * d.clone()
        - rat(27) * a * d.clone() * d
        - rat(27) * e * b.clone() * b
        - rat(2) * c2.clone() * c2.clone() * c2;
    let i3 = rat(4) * i.clone() * i.clone() * i;
    let den = i3.clone() - j.clone() * j;
    if den.is_zero() {
        return if i3.is_zero() { Err(Error::TooFewDistinct) } else { Ok(P1::Inf) };
    }
    Ok(P1::rat(i3 / den))
}

fn cols(c: [[Rat; 3]; 3]) -> Mat<Rat> {
    (0..3).map(|r| (0..3).map(|k| c[k][r].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::act;

    fn lie(s: &str) -> usize {
        stab_lie(&HomoForm::parse(s).unwrap()).unwrap().lie_dim
    }

    #[test]
    fn six_models() {
        let dims: Vec<usize> = ["z", "y*z", "x*y*(x + y)", "x*z - y^2", "(x*z - y^2)*z", "x*y*z"].iter().map(|s| lie(s)).collect();
        assert_eq!(dims, vec![6, 4, 3, 3, 2, 2]);
        assert_eq!(lie("x^4 + y^4 + z^4"), 0);
        assert_eq!(lie("x^3 + y^3 + z^3"), 0);
    }

    #[test]
    fn basis_satisfies_equation() {
        let f = HomoForm::parse("(x*z - y^2)*z").unwrap();
        for (a, l) in lie_algebra(f.poly()).unwrap() {
            let mut acc = f.poly().scale(&-l);
            for i in 0..3 {
                for j in 0..3 {
                    let mut e = [0; 3];
                    e[j] = 1;
                    acc = acc.add(&f.poly().deriv(i).mul_monomial(&a[i][j], e));
                }
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn types() {
        let t = |s: &str| stab_lie(&HomoForm::parse(s).unwrap()).unwrap().one_param_type;
        assert_eq!(t("x^2 - y*z").unwrap().to_string(), "D(2,1,1)");
        assert_eq!(t("x*y*(x + y)*(x - y)").unwrap().to_string(), "D(1,1,0)");
        assert_eq!(t("(x*z - y^2/2 - z^2)*(x*z - y^2/2 - 2*z^2)"), Some(OneParamType::ND));
        assert_eq!(t("x^4 + y^4 + z^4"), None);
        assert_eq!(t("x^5 - y^3*z^2").unwrap(), OneParamType::D { p: 5, q: 3, r: 2, normal: true });
    }

    #[test]
    fn matrix_types() {
        let m = |r: [[i64; 3]; 3]| -> Mat<Rat> { r.iter().map(|row| row.iter().map(|&v| rat(v)).collect()).collect() };
        assert_eq!(one_param_type(&m([[1, 0, 0], [0, 2, 0], [0, 0, 0]])).unwrap().to_string(), "D(2,1,1)");
        assert_eq!(one_param_type(&m([[0, 1, 0], [0, 0, 0], [0, 0, 0]])).unwrap(), OneParamType::ND);
        assert_eq!(one_param_type(&m([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])), Err(Error::NotInTower));
        assert!(one_param_type(&m([[2, 0, 0], [0, 2, 0], [0, 0, 2]])).is_err());
        let raw = one_param_type(&m([[0, 0, 0], [0, 2, 0], [0, 0, 6]])).unwrap();
        assert_eq!(raw, OneParamType::D { p: 3, q: 2, r: 1, normal: true });
    }

    #[test]
    fn automorphism_arithmetic() {
        assert!(period_p_exists(4, 3).unwrap());
        assert!(!period_p_exists(4, 5).unwrap());
        assert_eq!(period_p_exists(4, 4), Err(Error::NotPrime(4)));
        for (n, p) in [(6, 3), (7, 3), (5, 3), (4, 2)] {
            let w = witness_curve(n, p).unwrap();
            assert!(w.smooth && w.invariant, "{n} {p}");
        }
        assert_eq!(witness_curve(5, 3).unwrap().form.to_string(), HomoForm::parse("x^4*y + x*y^4 + z^5").unwrap().to_string());
        assert_eq!(witness_curve(4, 5).unwrap_err(), Error::InfeasiblePair { n: 4, p: 5 });
        assert_eq!(rh_feasible(3, 0, 7), Some(3));
        assert_eq!(rh_feasible(3, 0, 5), None);
        assert_eq!(rh_feasible(3, 1, 5), None); // k = 1
        assert_eq!(feasible_primes(3).unwrap(), vec![2, 3, 7]);
        assert_eq!(feasible_primes(2).unwrap(), vec![2, 3, 5]);
    }

    #[test]
    fn tables() {
        let sm: Vec<u64> = (3..=7).map(|n| dim_counts(n, 2).unwrap().dim_moduli_smooth).collect();
        assert_eq!(sm, vec![1, 6, 12, 19, 27]);
        let two: Vec<u64> = (3..=7).map(|n| dim_counts(n, 2).unwrap().dim_two_equal_eigen).collect();
        assert_eq!(two, vec![1, 4, 7, 11, 15]);
        let b: Vec<u64> = (4..=7).map(|n| dim_counts(n, 3).unwrap().bound_three_distinct).collect();
        assert_eq!(b, vec![5, 7, 10, 13]);
        let c: Vec<u64> = (1..=6).map(|n| chow_dims(n).unwrap().chow_dim).collect();
        assert_eq!(c, vec![2, 5, 9, 14, 20, 27]);
        assert_eq!(chow_dims(3).unwrap().reducible_dim, 7);
        assert_eq!(wcomponent_dim("D(1,1,0)", 5, 0).unwrap(), 8);
        assert_eq!(wcomponent_dim("D(2,1,1)", 4, 2).unwrap(), 8);
        assert_eq!(wcomponent_dim("ND", 4, 2).unwrap(), 7);
        assert!(matches!(wcomponent_dim("E(1)", 4, 2), Err(Error::UnknownType(_))));
    }

    #[test]
    fn covariance_and_cycles() {
        let g: Mat<Rat> = [[1, 2, 0], [0, 1, -1], [3, 0, 1]].iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        for s in ["x*y*(x + y)", "(x*z - y^2)*z", "x^2 - y*z", "x^4 + y^4 + z^4"] {
            let f = HomoForm::parse(s).unwrap();
            assert_eq!(stab_lie(&act(&g, &f).unwrap()).unwrap().lie_dim, lie(s), "{s}");
        }
        let c = crate::arith::factor_rational(&HomoForm::parse("(x*z - y^2)^2*z").unwrap());
        assert_eq!(stab_lie_cycle(&c).unwrap().lie_dim, lie("(x*z - y^2)*z"));
    }

    #[test]
    fn concurrent_lines() {
        use crate::divisor::{shape_invariant, P1};
        let f = |s: &str| HomoForm::parse(s).unwrap();
        assert_eq!(pencil_center(&f("(x - z)*(y - z)*(x - y)*(x + y - 2*z)")).unwrap().map(|v| v.to_string()), ["1", "1", "1"]);
        // lines x = t y through the origin, t = -1, 0, 1, inf: harmonic
        assert_eq!(concurrent_lines_j(&f("x*y*(x - y)*(x + y)")).unwrap(), P1::rat(rat(1)));
        // t = 0, 1, 3, inf moved to the center (2:1:1)
        let moved = f("(x - 2*z)*(y - z)*(x - 2*z - (y - z))*(x - 2*z - 3*(y - z))");
        let t = |v: i64| P1::rat(rat(v));
        assert_eq!(concurrent_lines_j(&moved).unwrap(), shape_invariant(&t(0), &t(1), &t(3), &P1::Inf).unwrap());
        assert!(concurrent_lines_j(&f("x*y*z*(x + y + z)")).is_err());
        assert_eq!(concurrent_lines_j(&f("x^2*y*(x + y)")).unwrap(), P1::Inf);
        // x^4 + y^4 has non-rational lines; J is still rational
        assert_eq!(concurrent_lines_j(&f("x^4 + y^4")).unwrap(), P1::rat(rat(1)));
    }

    #[test]
    fn all_witnesses() {
        for n in 3..=12u64 {
            for p in [2u64, 3, 5, 7, 11, 13] {
                if period_p_exists(n, p).unwrap() {
                    let w = witness_curve(n, p).unwrap();
                    assert!(w.smooth && w.invariant, "{n} {p}");
                }
            }
        }
    }
}
