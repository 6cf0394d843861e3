//! Factorization of ternary forms over Q and the count of absolutely
//! irreducible components.
//!
//! A form is moved by a linear change of coordinates so that it is monic in x
//! after setting z = 1; the bivariate polynomial is split into squarefree
//! parts, each factored by lifting a univariate factorization y-adically.

use super::factor::factor_uni;
use super::field::{rat, Field, Rat};
use super::linalg::{inverse, rank, to3, Mat};
use super::mpoly::{MPoly, X, Y, Z};
use super::upoly::UniPoly;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Polynomial in x with coefficients in Q[y]: entry i is the coefficient of x^i.
type Bi = Vec<UniPoly<Rat>>;

fn bi_trim(mut a: Bi) -> Bi {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn bi_from_mpoly(f: &MPoly<Rat>) -> Bi {
    let d = f.degree_in(X).max(0) as usize;
    let mut out = vec![UniPoly::zero(); d + 1];
    for (e, a) in &f.terms {
        let i = e[0] as usize;
        out[i] = out[i].add(&UniPoly::monomial(a.clone(), e[1] as usize));
    }
    bi_trim(out)
}

fn bi_to_mpoly(a: &Bi) -> MPoly<Rat> {
    let mut p = MPoly::zero();
    for (i, c) in a.iter().enumerate() {
        for (j, v) in c.c.iter().enumerate() {
            p.add_term([i as u32, j as u32, 0], v.clone());
        }
    }
    p
}

fn bi_sub(a: &Bi, b: &Bi) -> Bi {
    let n = a.len().max(b.len());
    bi_trim((0..n).map(|i| get(a, i).sub(&get(b, i))).collect())
}

fn get(a: &Bi, i: usize) -> UniPoly<Rat> {
    a.get(i).cloned().unwrap_or_else(UniPoly::zero)
}

fn bi_mul(a: &Bi, b: &Bi) -> Bi {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![UniPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = c[i + j].add(&x.mul(y));
        }
    }
    bi_trim(c)
}

fn bi_deriv_x(a: &Bi) -> Bi {
    bi_trim(a.iter().enumerate().skip(1).map(|(i, c)| c.scale(&rat(i as i64))).collect())
}

fn bi_scale_y(a: &Bi, c: &UniPoly<Rat>) -> Bi {
    bi_trim(a.iter().map(|x| x.mul(c)).collect())
}

/// Content in Q[y] (monic gcd of the coefficients).
fn bi_content(a: &Bi) -> UniPoly<Rat> {
    a.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
}

fn bi_div_y(a: &Bi, c: &UniPoly<Rat>) -> Bi {
    a.iter().map(|x| x.exact_div(c).expect("content divides")).collect()
}

fn bi_primitive(a: &Bi) -> Bi {
    if a.is_empty() {
        return vec![];
    }
    let c = bi_content(a);
    let p = bi_div_y(a, &c);
    let l = p.last().unwrap().lc();
    p.iter().map(|x| x.scale(&l.inv())).collect()
}

/// Pseudo-remainder of a by b in Q[y][x].
fn bi_prem(a: &Bi, b: &Bi) -> Bi {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        let rb: Bi = bi_scale_y(&r, &lb);
        let mut sh: Bi = vec![UniPoly::zero(); k];
        sh.extend(bi_scale_y(b, &lr));
        r = bi_sub(&rb, &sh);
    }
    r
}

/// Gcd in Q[y][x] (primitive, normalized so its top coefficient has lc 1).
fn bi_gcd(a: &Bi, b: &Bi) -> Bi {
    if a.is_empty() {
        return bi_primitive(b);
    }
    if b.is_empty() {
        return bi_primitive(a);
    }
    let ca = bi_content(a);
    let cb = bi_content(b);
    let c = ca.gcd(&cb);
    let (mut u, mut v) = (bi_primitive(a), bi_primitive(b));
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_empty() {
        let r = bi_prem(&u, &v);
        u = v;
        v = if r.is_empty() { r } else { bi_primitive(&r) };
    }
    let g = bi_primitive(&u);
    if g.len() == 1 {
        return vec![c];
    }
    bi_scale_y(&g, &c)
}

/// Exact division by a divisor whose x-leading coefficient is a constant.
fn bi_div_monic(a: &Bi, b: &Bi) -> Option<Bi> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    if lb.deg() != 0 {
        return None;
    }
    let inv = lb.lc().inv();
    let mut r = a.clone();
    if r.len() <= db {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let mut q = vec![UniPoly::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let t = r.last().unwrap().scale(&inv);
        let mut sh: Bi = vec![UniPoly::zero(); k];
        sh.extend(bi_scale_y(b, &t));
        r = bi_sub(&r, &sh);
        q[k] = t;
    }
    if r.is_empty() {
        Some(bi_trim(q))
    } else {
        None
    }
}

/// Squarefree decomposition of a polynomial monic in x (Yun).
fn bi_squarefree(f: &Bi) -> Vec<(Bi, u32)> {
    let mut out = Vec::new();
    let fp = bi_deriv_x(f);
    let a0 = monic_x(&bi_gcd(f, &fp));
    let mut b = bi_div_monic(f, &a0).expect("gcd divides");
    let mut c = divide_general(&fp, &a0);
    let mut d = bi_sub(&c, &bi_deriv_x(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = monic_x(&bi_gcd(&b, &d));
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = bi_div_monic(&b, &a).expect("divides");
        c = divide_general(&d, &a);
        d = bi_sub(&c, &bi_deriv_x(&b));
        i += 1;
    }
    out
}

fn monic_x(a: &Bi) -> Bi {
    let l = a.last().unwrap().clone();
    assert!(l.deg() == 0, "factor of a polynomial monic in x must be monic in x");
    bi_scale_y(a, &UniPoly::constant(l.lc().inv()))
}

fn divide_general(a: &Bi, b: &Bi) -> Bi {
    if a.is_empty() {
        return vec![];
    }
    bi_div_monic(a, b).expect("exact division")
}

fn taylor_shift_y(a: &Bi, s: &Rat) -> Bi {
    let lin = UniPoly::new(vec![s.clone(), Rat::one()]);
    bi_trim(a.iter().map(|c| c.compose(&lin)).collect())
}

fn eval_y(a: &Bi, y0: &Rat) -> UniPoly<Rat> {
    UniPoly::new(a.iter().map(|c| c.eval(y0)).collect())
}

/// Truncate every coefficient modulo y^n.
fn trunc_y(a: &Bi, n: usize) -> Bi {
    bi_trim(a.iter().map(|c| UniPoly::new(c.c.iter().take(n).cloned().collect())).collect())
}

/// Irreducible factors (monic in x) of a squarefree polynomial monic in x,
/// whose total degree equals its x-degree.
fn factor_squarefree_monic(f: &Bi) -> Vec<Bi> {
    if f.len() <= 2 {
        return vec![f.clone()];
    }
    let mut shift = Rat::zero();
    for k in 0..200i64 {
        let a = if k % 2 == 0 { rat(k / 2) } else { rat(-(k + 1) / 2) };
        let u = eval_y(f, &a);
        if u.gcd(&u.deriv()).deg() == 0 {
            shift = a;
            break;
        }
    }
    let h = taylor_shift_y(f, &shift);
    let u0 = eval_y(&h, &Rat::zero());
    let uf = factor_uni(&u0);
    let us: Vec<UniPoly<Rat>> = uf.factors.iter().map(|(g, _)| g.monic()).collect();
    if us.len() == 1 {
        return vec![f.clone()];
    }
    let ydeg = h.iter().map(|c| c.deg().max(0) as usize).max().unwrap_or(0);
    let prec = ydeg + 1;
    let lifted = lift_y(&h, &us, prec);
    let mut parts = recombine_y(&h, lifted, prec);
    let back = -shift;
    for p in parts.iter_mut() {
        *p = taylor_shift_y(p, &back);
    }
    parts
}

/// Lift h = prod u_i (mod y) to h = prod U_i (mod y^prec).
fn lift_y(h: &Bi, us: &[UniPoly<Rat>], prec: usize) -> Vec<Bi> {
    let r = us.len();
    let s: Vec<UniPoly<Rat>> = (0..r)
        .map(|i| {
            let others = (0..r).filter(|&l| l != i).fold(UniPoly::one(), |a, l| a.mul(&us[l]));
            others.rem(&us[i]).xgcd(&us[i]).1
        })
        .collect();
    // U_i as polynomials in x whose coefficients are truncated series in y
    let mut big: Vec<Bi> = us.iter().map(|u| u.c.iter().map(|a| UniPoly::constant(a.clone())).collect()).collect();
    for k in 1..prec {
        let mut prod: Bi = vec![UniPoly::one()];
        for b in &big {
            prod = trunc_y(&bi_mul(&prod, b), k + 1);
        }
        let diff = bi_sub(&trunc_y(h, k + 1), &prod);
        let ek = UniPoly::new(diff.iter().map(|c| c.coeff(k)).collect());
        if ek.is_zero() {
            continue;
        }
        for i in 0..r {
            let d = ek.mul(&s[i]).rem(&us[i]);
            for (j, a) in d.c.iter().enumerate() {
                while big[i].len() <= j {
                    big[i].push(UniPoly::zero());
                }
                big[i][j] = big[i][j].add(&UniPoly::monomial(a.clone(), k));
            }
        }
    }
    big
}

fn total_degree_ok(g: &Bi) -> bool {
    let dx = g.len() - 1;
    g.iter().enumerate().all(|(i, c)| c.is_zero() || i + c.deg() as usize <= dx)
}

fn recombine_y(h: &Bi, mut lifted: Vec<Bi>, prec: usize) -> Vec<Bi> {
    let mut h = h.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        let mut found = false;
        loop {
            let mut g: Bi = vec![UniPoly::one()];
            for &i in &idx {
                g = trunc_y(&bi_mul(&g, &lifted[i]), prec);
            }
            if total_degree_ok(&g) {
                if let Some(q) = bi_div_monic(&h, &g) {
                    out.push(g);
                    h = q;
                    lifted = (0..r).filter(|i| !idx.contains(i)).map(|i| lifted[i].clone()).collect();
                    found = true;
                    break;
                }
            }
            if !next_comb(&mut idx, r) {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if h.len() > 1 {
        out.push(h);
    }
    out
}

fn next_comb(idx: &mut [usize], r: usize) -> bool {
    let s = idx.len();
    let mut k = s;
    while k > 0 {
        k -= 1;
        if idx[k] < r - s + k {
            idx[k] += 1;
            for t in k + 1..s {
                idx[t] = idx[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Deterministic sequence of small integer change-of-coordinate matrices
/// [[1,0,c],[0,1,d],[a,b,1]], ordered by size; the first is the identity.
pub fn coordinate_change(k: usize) -> Mat<Rat> {
    static SEQ: std::sync::OnceLock<Vec<[i64; 4]>> = std::sync::OnceLock::new();
    let seq = SEQ.get_or_init(|| {
        let r = -3i64..=3;
        let mut v: Vec<[i64; 4]> = Vec::new();
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        if 1 - a * c - b * d != 0 {
                            v.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        v.sort_by_key(|t| (t.iter().map(|x| x.abs()).sum::<i64>(), t.iter().filter(|x| **x != 0).count(), *t));
        v
    });
    change_matrix(seq[k % seq.len()])
}

/// Like `coordinate_change` but skipping matrices with zero parameters, so
/// the projection center and fibers avoid coordinate lines.
pub fn dense_coordinate_change(k: usize) -> Mat<Rat> {
    if k % 2 == 1 {
        // break symmetric configurations with pseudo-random parameters
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(k as u64);
        loop {
            let t: [i64; 4] = std::array::from_fn(|_| {
                let v: i64 = rng.gen_range(1..=9);
                if rng.gen_bool(0.5) { v } else { -v }
            });
            if 1 - t[0] * t[2] - t[1] * t[3] != 0 {
                return change_matrix(t);
            }
        }
    }
    let k = k / 2;
    let mut i = 0;
    let mut seen = 0;
    loop {
        let m = coordinate_change(i);
        let p = [&m[2][0], &m[2][1], &m[0][2], &m[1][2]];
        if p.iter().all(|v| !v.is_zero()) {
            if seen == k {
                return m;
            }
            seen += 1;
        }
        i += 1;
    }
}

fn change_matrix([a, b, c, d]: [i64; 4]) -> Mat<Rat> {
    vec![
        vec![rat(1), rat(0), rat(c)],
        vec![rat(0), rat(1), rat(d)],
        vec![rat(a), rat(b), rat(1)],
    ]
}

/// A change of coordinates M with f(M e_1) != 0 and f(M e_3) != 0.
fn generic_change(f: &MPoly<Rat>, need_y: bool) -> Mat<Rat> {
    for k in 0.. {
        let m = coordinate_change(k);
        let col = |j: usize| -> [Rat; 3] { [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()] };
        if !f.eval(&col(0)).is_zero() && !f.eval(&col(2)).is_zero() && (!need_y || !f.eval(&col(1)).is_zero()) {
            return m;
        }
    }
    unreachable!()
}

/// Factorization of a nonzero form: (constant, [(irreducible normalized form, multiplicity)]).
pub fn factor_form(f: &MPoly<Rat>) -> (Rat, Vec<(MPoly<Rat>, u32)>) {
    assert!(!f.is_zero());
    let n = f.total_degree();
    if n == 0 {
        return (f.coeff(&[0, 0, 0]), vec![]);
    }
    let mut out: BTreeMap<String, (MPoly<Rat>, u32)> = BTreeMap::new();
    // monomial content first
    let mut g = f.clone();
    for v in [X, Y, Z] {
        let k = g.terms.keys().map(|e| e[v]).min().unwrap_or(0);
        if k > 0 {
            let mut e = [0; 3];
            e[v] = k;
            g = g.exact_div(&MPoly::term(Rat::one(), e)).unwrap();
            let var = MPoly::var(v);
            out.insert(format!("{:?}", var.terms), (var, k));
        }
    }
    if g.total_degree() > 0 {
        let m = generic_change(&g, false);
        let minv = inverse(&m).expect("invertible");
        let gm = g.linear_subst(&to3(&m));
        let bi = bi_from_mpoly(&gm.subs_const(Z, &Rat::one()));
        let lcx = bi.last().unwrap().lc();
        let bi = bi_scale_y(&bi, &UniPoly::constant(lcx.inv()));
        for (part, e) in bi_squarefree(&bi) {
            for fac in factor_squarefree_monic(&part) {
                let d = fac.len() as u32 - 1;
                let hom = bi_to_mpoly(&fac).homogenize(Z, d);
                let back = hom.linear_subst(&to3(&minv)).normalize();
                let key = format!("{:?}", back.terms);
                out.entry(key).and_modify(|x| x.1 += e).or_insert((back, e));
            }
        }
    }
    let mut facs: Vec<(MPoly<Rat>, u32)> = out.into_values().collect();
    facs.sort_by(|a, b| {
        (a.0.total_degree(), format!("{:?}", a.0.terms)).cmp(&(b.0.total_degree(), format!("{:?}", b.0.terms)))
    });
    let mut prod = MPoly::one();
    for (h, e) in &facs {
        prod = prod.mul(&h.pow(*e));
    }
    let (le, lc) = f.leading().unwrap();
    let c = lc.clone() / prod.coeff(le);
    debug_assert!(prod.scale(&c) == *f);
    (c, facs)
}

/// Number of absolutely irreducible factors of a squarefree form, from the
/// dimension of the solution space of the linear differential system
/// f g_y - g f_y = f h_x - h f_x.
pub fn absolute_component_count(f: &MPoly<Rat>) -> usize {
    let n = f.total_degree();
    if n <= 1 {
        return n.max(0) as usize;
    }
    let m = generic_change(f, true);
    let g = f.linear_subst(&to3(&m)).subs_const(Z, &Rat::one());
    let dx = g.degree_in(X) as u32;
    let dy = g.degree_in(Y) as u32;
    if dy == 0 {
        return dx as usize;
    }
    let fx = g.deriv(X);
    let fy = g.deriv(Y);
    let mut cols: Vec<MPoly<Rat>> = Vec::new();
    for i in 0..dx {
        for j in 0..=dy {
            let b = MPoly::term(Rat::one(), [i, j, 0]);
            cols.push(g.mul(&b.deriv(Y)).sub(&b.mul(&fy)));
        }
    }
    for i in 0..=dx {
        for j in 0..dy {
            let b = MPoly::term(Rat::one(), [i, j, 0]);
            cols.push(b.mul(&fx).sub(&g.mul(&b.deriv(X))));
        }
    }
    let mut rows: BTreeMap<[u32; 3], usize> = BTreeMap::new();
    for c in &cols {
        for e in c.terms.keys() {
            let k = rows.len();
            rows.entry(*e).or_insert(k);
        }
    }
    let mut mat: Mat<Rat> = vec![vec![Rat::zero(); cols.len()]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for (e, a) in &c.terms {
            mat[rows[e]][j] = a.clone();
        }
    }
    cols.len() - rank(&mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_form;

    fn check(s: &str, expect: &[(&str, u32)]) {
        let f = parse_form(s).unwrap();
        let (c, fs) = factor_form(&f);
        let mut prod = MPoly::constant(c);
        for (h, e) in &fs {
            prod = prod.mul(&h.pow(*e));
        }
        assert_eq!(prod, f);
        let mut want: Vec<(MPoly<Rat>, u32)> =
            expect.iter().map(|(t, e)| (parse_form(t).unwrap().normalize(), *e)).collect();
        let mut got = fs.clone();
        want.sort_by_key(|a| format!("{:?}", a));
        got.sort_by_key(|a| format!("{:?}", a));
        assert_eq!(got, want, "factoring {s}");
    }

    #[test]
    fn difference_of_squares_times_z() {
        check("x^2*z - y^2*z", &[("z", 1), ("x+y", 1), ("x-y", 1)]);
    }

    #[test]
    fn repeated_factor() {
        check("(x+y)^2*z", &[("x+y", 2), ("z", 1)]);
    }

    #[test]
    fn irreducible_sum_of_squares() {
        check("x^2+y^2", &[("x^2+y^2", 1)]);
        let f = parse_form("x^2+y^2").unwrap();
        assert_eq!(absolute_component_count(&f), 2);
    }

    #[test]
    fn conic_times_cubic() {
        check(
            "(x*z - y^2)*(y^2*z - x^3 - x*z^2)^2*(x+2*y-3*z)",
            &[("x*z-y^2", 1), ("y^2*z-x^3-x*z^2", 2), ("x+2*y-3*z", 1)],
        );
    }

    #[test]
    fn absolute_counts() {
        let f = parse_form("y^2*z - x^3 - x^2*z").unwrap();
        assert_eq!(absolute_component_count(&f), 1);
        let g = parse_form("(x^2-2*y^2)*(x*z-y^2)").unwrap();
        assert_eq!(absolute_component_count(&g), 3);
    }
}
