//! Polynomials over a prime field F_p (p < 2^31), ascending coefficients.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, (a % p) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    assert_eq!(r, 1, "not invertible mod p");
    (t.rem_euclid(p as i128)) as u64
}

pub fn bigint_mod(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

impl ZpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ZpPoly { p, c }
    }

    pub fn from_big(p: u64, c: &[BigInt]) -> Self {
        ZpPoly::new(p, c.iter().map(|a| bigint_mod(a, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        ZpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        ZpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        ZpPoly { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        ZpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + p - o.c.get(i).unwrap_or(&0)) % p)
            .collect();
        ZpPoly::new(p, c)
    }

    pub fn scale(&self, a: u64) -> Self {
        ZpPoly::new(self.p, self.c.iter().map(|&x| self.mulmod(x, a)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ZpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        ZpPoly::new(self.p, acc.into_iter().map(|v| v as u64).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (ZpPoly::zero(p), self.clone());
        }
        let inv = mod_inv(d.lc(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = self.mulmod(r[k + dd], inv);
            if t == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - self.mulmod(t, b)) % p;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (ZpPoly::new(p, q), ZpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inv(self.lc(), self.p))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*o = g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (ZpPoly::one(p), ZpPoly::zero(p));
        let (mut t0, mut t1) = (ZpPoly::zero(p), ZpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = mod_inv(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn deriv(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| self.mulmod(a, i as u64 % self.p))
            .collect();
        ZpPoly::new(self.p, c)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = ZpPoly::one(self.p);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn resultant(&self, o: &Self) -> u64 {
        if self.is_zero() || o.is_zero() {
            return 0;
        }
        let p = self.p;
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = 1u64;
        loop {
            let da = a.deg() as u64;
            let db = b.deg() as u64;
            if db == 0 {
                return self.mulmod(acc, pow_mod(b.lc(), da, p));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return 0;
            }
            let dr = r.deg() as u64;
            if (da * db) % 2 == 1 {
                acc = (p - acc) % p;
            }
            acc = self.mulmod(acc, pow_mod(b.lc(), da - dr, p));
            a = b;
            b = r;
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &a in self.c.iter().rev() {
            acc = (self.mulmod(acc, x) + a) % self.p;
        }
        acc
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn ddf(f: &ZpPoly) -> Vec<(ZpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = ZpPoly::x(p);
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 1;
    while rest.deg() >= 2 * d as isize {
        h = h.powmod(&pe, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            out.push((g.clone(), d));
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let k = rest.deg() as usize;
        out.push((rest, k));
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus, odd p) into monic irreducibles.
pub fn edf<R: Rng>(f: &ZpPoly, d: usize, rng: &mut R) -> Vec<ZpPoly> {
    let p = f.p;
    if f.deg() as usize == d {
        return vec![f.monic()];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::from(1u32)) / BigUint::from(2u32);
    loop {
        let n = f.deg() as usize;
        let a = ZpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() < 1 {
            continue;
        }
        let g = a.gcd(f);
        let split = if g.deg() > 0 && g.deg() < f.deg() {
            g
        } else {
            let b = a.powmod(&e, f).sub(&ZpPoly::one(p));
            let g = b.gcd(f);
            if g.deg() <= 0 || g.deg() == f.deg() {
                continue;
            }
            g
        };
        let other = f.divrem(&split).0;
        let mut out = edf(&split, d, rng);
        out.extend(edf(&other, d, rng));
        return out;
    }
}

/// Monic irreducible factors of a squarefree polynomial over F_p.
pub fn factor_squarefree<R: Rng>(f: &ZpPoly, rng: &mut R) -> Vec<ZpPoly> {
    let mut out = Vec::new();
    for (g, d) in ddf(&f.monic()) {
        out.extend(edf(&g, d, rng));
    }
    out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
    out
}
