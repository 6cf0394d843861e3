//! Univariate factorization over Q: squarefree decomposition, factorization
//! modulo a small prime, Hensel lifting, and factor recombination.

use super::field::{denom_lcm, numer_gcd, Rat};
use super::upoly::UniPoly;
use super::zmod::{bigint_mod, mod_inv, ZpPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// f = content * prod(factor^mult); factors are primitive integer
/// polynomials with positive leading coefficient, sorted by degree.
#[derive(Clone, Debug)]
pub struct UniFactorization {
    pub content: Rat,
    pub factors: Vec<(UniPoly<Rat>, u32)>,
}

type ZPoly = Vec<BigInt>;

fn to_zpoly(f: &UniPoly<Rat>) -> (Rat, ZPoly) {
    let l = denom_lcm(&f.c);
    let ints: Vec<BigInt> = f.c.iter().map(|a| (a * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = numer_gcd(&f.c.iter().map(|a| Rat::from_integer((a * Rat::from_integer(l.clone())).to_integer())).collect::<Vec<_>>());
    let mut g = if g.is_zero() { BigInt::one() } else { g };
    if ints.last().is_some_and(|a| a.is_negative()) {
        g = -g;
    }
    let prim: ZPoly = ints.iter().map(|a| a / &g).collect();
    (Rat::new(g, l), prim)
}

fn from_zpoly(f: &[BigInt]) -> UniPoly<Rat> {
    UniPoly::new(f.iter().map(|a| Rat::from_integer(a.clone())).collect())
}

/// Primitive integer representative with positive leading coefficient.
pub fn primitive(f: &UniPoly<Rat>) -> UniPoly<Rat> {
    from_zpoly(&to_zpoly(f).1)
}

pub fn factor_uni(f: &UniPoly<Rat>) -> UniFactorization {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut factors = Vec::new();
    for (sq, e) in f.squarefree_decomposition() {
        let (_, z) = to_zpoly(&sq);
        for g in zassenhaus(&z) {
            factors.push((from_zpoly(&g), e));
        }
    }
    factors.sort_by(|a, b| (a.0.deg(), &a.0.c).partial_cmp(&(b.0.deg(), &b.0.c)).unwrap());
    let mut prod = UniPoly::one();
    for (g, e) in &factors {
        prod = prod.mul(&g.pow(*e));
    }
    let content = f.lc() / prod.lc();
    UniFactorization { content, factors }
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| super::field::is_prime(n))
}

fn l1_norm(f: &[BigInt]) -> BigInt {
    f.iter().map(|a| a.abs()).sum()
}

fn sym_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Irreducible factors over Z of a squarefree primitive polynomial.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // Try a few primes, keep the one with fewest modular factors.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<ZpPoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if bigint_mod(&lc, p) == 0 {
            continue;
        }
        let fp = ZpPoly::from_big(p, f);
        if fp.gcd(&fp.deriv()).deg() != 0 {
            continue;
        }
        let fs = super::zmod::factor_squarefree(&fp, &mut rng);
        let better = best.as_ref().map(|(_, b)| fs.len() < b.len()).unwrap_or(true);
        if better {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 4 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modf) = best.expect("a suitable prime exists");
    if modf.len() == 1 {
        return vec![f.to_vec()];
    }
    // Coefficient bound for lc * (any factor).
    let bound = lc.abs() * (BigInt::one() << n) * l1_norm(f);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= &bound * 2 {
        modulus *= &pb;
    }
    let lifted = hensel_lift(f, &modf, p, &modulus);
    recombine(f, lifted, &modulus)
}

/// Linear Hensel lifting of f = lc * prod(g_i) (mod p) to the given modulus.
fn hensel_lift(f: &[BigInt], gs: &[ZpPoly], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    let r = gs.len();
    let lc = f[f.len() - 1].clone();
    let lc_inv = mod_inv(bigint_mod(&lc, p), p);
    // s_i with sum s_i * prod_{l != i} g_l = 1 (mod p)
    let s: Vec<ZpPoly> = (0..r)
        .map(|i| {
            let others = (0..r).filter(|&l| l != i).fold(ZpPoly::one(p), |a, l| a.mul(&gs[l]));
            let (_, s, _) = others.rem(&gs[i]).xgcd(&gs[i]);
            s
        })
        .collect();
    let mut g: Vec<ZPoly> = gs.iter().map(|q| q.c.iter().map(|&a| BigInt::from(a)).collect()).collect();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    while &pj < modulus {
        let mut prod: ZPoly = vec![lc.clone()];
        for gi in &g {
            prod = zmul(&prod, gi);
        }
        let e: ZPoly = (0..f.len())
            .map(|k| {
                let a = f[k].clone() - prod.get(k).cloned().unwrap_or_default();
                debug_assert!((&a % &pj).is_zero());
                a / &pj
            })
            .collect();
        let ep = ZpPoly::from_big(p, &e).scale(lc_inv);
        for i in 0..r {
            let d = ep.mul(&s[i]).rem(&gs[i]);
            for (k, &dk) in d.c.iter().enumerate() {
                g[i][k] += &pj * BigInt::from(dk);
            }
        }
        pj *= &pb;
    }
    g.into_iter().map(|gi| gi.iter().map(|a| a.mod_floor(modulus)).collect()).collect()
}

fn divides_exact(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let fq = from_zpoly(f);
    let gq = from_zpoly(g);
    let q = fq.exact_div(&gq)?;
    if q.c.iter().all(|a| a.denom().is_one()) {
        Some(q.c.iter().map(|a| a.to_integer()).collect())
    } else {
        None
    }
}

fn primitive_z(g: &[BigInt]) -> ZPoly {
    let mut c = g.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    if c.is_zero() {
        return g.to_vec();
    }
    if g.last().is_some_and(|a| a.is_negative()) {
        c = -c;
    }
    g.iter().map(|a| a / &c).collect()
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

fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = f[f.len() - 1].clone();
            // cheap constant-term test first
            let c0 = idx.iter().fold(lc.clone(), |a, &i| sym_mod(&(a * &lifted[i][0]), m));
            let ok0 = c0.is_zero() || (&lc * &f[0]).is_zero() || ((&lc * &f[0]) % &c0).is_zero();
            if ok0 {
                let mut g: ZPoly = vec![lc.clone()];
                for &i in &idx {
                    g = zmul(&g, &lifted[i]).iter().map(|a| sym_mod(a, m)).collect();
                }
                let gp = primitive_z(&g);
                if let Some(q) = divides_exact(&f, &gp) {
                    out.push(gp);
                    f = q;
                    let keep: Vec<ZPoly> = (0..r).filter(|i| !idx.contains(i)).map(|i| lifted[i].clone()).collect();
                    lifted = keep;
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
    if f.len() > 1 {
        out.push(primitive_z(&f));
    }
    out
}
