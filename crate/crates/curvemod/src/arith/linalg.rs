//! Dense exact linear algebra: row reduction, kernels, inverses.

use super::field::Field;

pub type Mat<F> = Vec<Vec<F>>;

/// Reduced row echelon form in place; returns pivot columns. Pivots are
/// taken in fixed order (first nonzero entry), so results are deterministic.
pub fn rref<F: Field>(m: &mut Mat<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for j in c..cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = m[r][j].clone();
                    if !v.is_zero() {
                        m[i][j] = m[i][j].clone() - f.clone() * v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right kernel {v : m v = 0}.
pub fn kernel<F: Field>(m: &Mat<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut v = vec![F::zero(); cols];
        v[f] = F::one();
        for (r, &pc) in piv.iter().enumerate() {
            v[pc] = -a[r][f].clone();
        }
        out.push(v);
    }
    out
}

pub fn det<F: Field>(m: &Mat<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut d = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d = d * piv.clone();
        let inv = piv.inv();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * inv.clone();
            for j in c..n {
                a[i][j] = a[i][j].clone() - f.clone() * a[c][j].clone();
            }
        }
    }
    d
}

pub fn inverse<F: Field>(m: &Mat<F>) -> Option<Mat<F>> {
    let n = m.len();
    let mut a: Mat<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn matmul<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(F::zero(), |acc, t| acc + a[i][t].clone() * b[t][j].clone()))
                .collect()
        })
        .collect()
}

pub fn identity<F: Field>(n: usize) -> Mat<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

pub fn to3<F: Field>(m: &Mat<F>) -> [[F; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].clone()))
}

pub fn from3<F: Field>(m: &[[F; 3]; 3]) -> Mat<F> {
    m.iter().map(|r| r.to_vec()).collect()
}

pub fn matvec<F: Field>(m: &Mat<F>, v: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
        .collect()
}
