//! Exact integer and mod-2 linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut a: Matrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Matrix = rows.to_vec();
    let Some(cols) = a.first().map(Vec::len) else { return 0 };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (x, y) = (a[r][c].clone(), a[i][c].clone());
            for j in c..cols {
                let v = &a[i][j] * &x - &a[r][j] * &y;
                a[i][j] = v;
            }
            let g = a[i].iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            if !g.is_zero() && !g.is_one() {
                for v in a[i].iter_mut() {
                    *v /= &g;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// gcd of all `k × k` minors of a `k × n` matrix (`k ≤ n`). The rows extend
/// to a basis of `Z^n` exactly when this is one.
pub fn gcd_of_maximal_minors(rows: &[Vec<BigInt>]) -> BigInt {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if k == 0 {
        return BigInt::one();
    }
    if k > n {
        return BigInt::zero();
    }
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let minor: Matrix = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        g = g.gcd(&determinant(&minor));
        if g.is_one() {
            return g;
        }
        // next k-subset of 0..n in lexicographic order
        let mut i = k;
        while i > 0 && cols[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return g.abs();
        }
        cols[i - 1] += 1;
        for j in i..k {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Inverse of a square integer matrix, if it is integral (i.e. `det = ±1`).
pub fn inverse_unimodular(m: &[Vec<BigInt>]) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().cloned().map(BigRational::from_integer).collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for v in a[c].iter_mut() {
            *v /= &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let v = &a[c][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|v| v.is_integer().then(|| v.to_integer()))
                .collect()
        })
        .collect()
}

/// Solves `a x = b` over GF(2) for square nonsingular `a`.
pub fn solve_mod2(a: &[Vec<bool>], b: &[bool]) -> Option<Vec<bool>> {
    let n = a.len();
    let mut m: Vec<Vec<bool>> = a
        .iter()
        .zip(b)
        .map(|(r, &v)| {
            assert_eq!(r.len(), n);
            let mut r = r.clone();
            r.push(v);
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| m[i][c])?;
        m.swap(c, p);
        for i in 0..n {
            if i != c && m[i][c] {
                for j in c..=n {
                    let v = m[c][j];
                    m[i][j] ^= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}
