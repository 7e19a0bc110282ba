//! Test-side reference computations, written against the raw exponent data
//! only. Nothing here calls into the library's ring engine.

#![allow(dead_code)]

use std::collections::BTreeMap;

use bott_core::{BigInt, CohomologyClass, TowerSpec};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A polynomial as a map from exponent vectors to integer coefficients.
pub type Poly = BTreeMap<Vec<u32>, BigInt>;

pub fn add_into(p: &mut Poly, e: Vec<u32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(e.clone()).or_insert_with(BigInt::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&e);
    }
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(&mut out, e, ca * cb);
        }
    }
    out
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        add_into(&mut out, e.clone(), c.clone());
    }
    out
}

/// Reduction of the integer presentation `Z[y]/(f_1, ..., f_m)` by plain
/// division: `f_i = ∏_α (y_i + u_α)` is monic in `y_i` of degree `n_i + 1`.
pub struct Oracle {
    pub dims: Vec<usize>,
    relations: Vec<Poly>,
}

impl Oracle {
    pub fn new(tower: &TowerSpec) -> Oracle {
        let dims = tower.dims();
        let m = dims.len();
        let relations = (0..m)
            .map(|i| {
                let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); i]];
                rows.extend(tower.stage(i + 1).rows().iter().cloned());
                let mut f = Self::constant_in(m, BigInt::one());
                for u in rows {
                    let mut coeffs = vec![BigInt::zero(); m];
                    coeffs[..i].clone_from_slice(&u);
                    coeffs[i] = BigInt::one();
                    f = poly_mul(&f, &Self::linear_in(m, &coeffs));
                }
                f
            })
            .collect();
        Oracle { dims, relations }
    }

    /// The presentation of `CP^{n_1} × ... × CP^{n_k}`.
    pub fn product(dims: &[usize]) -> Oracle {
        let m = dims.len();
        let relations = (0..m)
            .map(|i| {
                let mut e = vec![0u32; m];
                e[i] = dims[i] as u32 + 1;
                Poly::from([(e, BigInt::one())])
            })
            .collect();
        Oracle {
            dims: dims.to_vec(),
            relations,
        }
    }

    pub fn height(&self) -> usize {
        self.dims.len()
    }

    fn constant_in(m: usize, c: BigInt) -> Poly {
        let mut p = Poly::new();
        add_into(&mut p, vec![0; m], c);
        p
    }

    fn linear_in(m: usize, coeffs: &[BigInt]) -> Poly {
        let mut p = Poly::new();
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u32; m];
            e[j] = 1;
            add_into(&mut p, e, c.clone());
        }
        p
    }

    pub fn one(&self) -> Poly {
        Self::constant_in(self.height(), BigInt::one())
    }

    pub fn linear(&self, coeffs: &[BigInt]) -> Poly {
        Self::linear_in(self.height(), coeffs)
    }

    pub fn linear_i64(&self, coeffs: &[i64]) -> Poly {
        self.linear(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    pub fn affine(&self, c: i64, coeffs: &[BigInt]) -> Poly {
        poly_add(&Self::constant_in(self.height(), BigInt::from(c)), &self.linear(coeffs))
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut p = p.clone();
        loop {
            let pending = p.iter().find_map(|(e, c)| {
                (0..e.len())
                    .rev()
                    .find(|&i| e[i] as usize > self.dims[i])
                    .map(|i| (e.clone(), c.clone(), i))
            });
            let Some((e, c, i)) = pending else { return p };
            let mut q = e.clone();
            q[i] -= self.dims[i] as u32 + 1;
            let shift = Poly::from([(q, c)]);
            for (t, k) in poly_mul(&shift, &self.relations[i]) {
                add_into(&mut p, t, -k);
            }
        }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&poly_mul(a, b))
    }

    pub fn pow(&self, a: &Poly, k: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn product_of(&self, factors: &[Poly]) -> Poly {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// Rows of stage `i` (0-based) with the trivial summand first, padded to
    /// the full height.
    pub fn stage_roots(&self, tower: &TowerSpec, i: usize) -> Vec<Vec<BigInt>> {
        let m = self.height();
        let mut rows = vec![vec![BigInt::zero(); m]];
        for r in tower.stage(i + 1).rows() {
            let mut full = vec![BigInt::zero(); m];
            full[..i].clone_from_slice(r);
            rows.push(full);
        }
        rows
    }

    /// `∏_i ∏_α (1 + y_i + u_{i,α})`.
    pub fn tangent_chern(&self, tower: &TowerSpec) -> Poly {
        let mut factors = Vec::new();
        for i in 0..self.height() {
            for mut u in self.stage_roots(tower, i) {
                u[i] += 1;
                factors.push(self.affine(1, &u));
            }
        }
        self.product_of(&factors)
    }

    /// `∏_i ∏_α (1 + (y_i + u_{i,α})^2)`.
    pub fn tangent_pontrjagin(&self, tower: &TowerSpec) -> Poly {
        let mut factors = Vec::new();
        for i in 0..self.height() {
            for mut u in self.stage_roots(tower, i) {
                u[i] += 1;
                let l = self.linear(&u);
                factors.push(poly_add(&self.one(), &poly_mul(&l, &l)));
            }
        }
        self.product_of(&factors)
    }

    /// Image of a polynomial on the generators `y'` under
    /// `y'_i ↦ Σ_j matrix[i][j] y_j`, reduced here.
    pub fn substitute(&self, p: &Poly, matrix: &[Vec<BigInt>]) -> Poly {
        let forms: Vec<Poly> = matrix.iter().map(|r| self.linear(r)).collect();
        let mut out = Poly::new();
        for (e, c) in p {
            let mut term = self.constant_in_self(c.clone());
            for (i, &k) in e.iter().enumerate() {
                term = self.mul(&term, &self.pow(&forms[i], k));
            }
            out = poly_add(&out, &term);
        }
        out
    }

    fn constant_in_self(&self, c: BigInt) -> Poly {
        Self::constant_in(self.height(), c)
    }

    /// Whether `y'_i ↦ Σ_j matrix[i][j] y_j` sends every relation of
    /// `source` to zero here.
    pub fn map_kills_relations(&self, source: &TowerSpec, matrix: &[Vec<BigInt>]) -> bool {
        let m = self.height();
        (0..m).all(|i| {
            let mut factors = Vec::new();
            for (a, u) in std::iter::once(vec![BigInt::zero(); i])
                .chain(source.stage(i + 1).rows().iter().cloned())
                .enumerate()
            {
                let _ = a;
                let mut form = matrix[i].clone();
                for (j, c) in u.iter().enumerate() {
                    for (f, x) in form.iter_mut().zip(&matrix[j]) {
                        *f += c * x;
                    }
                }
                factors.push(self.linear(&form));
            }
            self.product_of(&factors).is_empty()
        })
    }
}

/// Laplace-expansion determinant.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let n = m.len();
    let mut total = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Independent check that `matrix` is a ring isomorphism
/// `H^*(source) → H^*(target)`.
pub fn oracle_iso(source: &TowerSpec, target: &TowerSpec, matrix: &[Vec<BigInt>]) -> bool {
    let mut a = source.dims();
    let mut b = target.dims();
    a.sort_unstable();
    b.sort_unstable();
    a == b && det(matrix).abs().is_one() && Oracle::new(target).map_kills_relations(source, matrix)
}

/// A library class as an oracle polynomial (integral coefficients).
pub fn to_poly(class: &CohomologyClass) -> Poly {
    class
        .terms()
        .map(|(e, c)| {
            assert!(c.is_integer(), "non-integral coefficient");
            (e.as_slice().to_vec(), c.to_integer())
        })
        .collect()
}

pub fn mod_n(p: &Poly, n: i64) -> Poly {
    let n = BigInt::from(n);
    p.iter()
        .map(|(e, c)| (e.clone(), c.mod_floor(&n)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Homogeneous part of (complex) degree `d`.
pub fn degree_part(p: &Poly, d: u32) -> Poly {
    p.iter()
        .filter(|(e, _)| e.iter().sum::<u32>() == d)
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect()
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Seed for randomized tests: `BOTT_SEED` if set, otherwise `default`.
pub fn seed(default: u64) -> u64 {
    std::env::var("BOTT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

/// Towers of complex dimension at most 4 used by the Stiefel–Whitney
/// comparisons.
pub fn small_corpus(seed: u64) -> Vec<TowerSpec> {
    use bott_core::check::{seeded_towers, TowerShape};
    use bott_core::tower::product_tower;

    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(product_tower(&[n]).unwrap());
    }
    for a in -4..=4 {
        out.push(TowerSpec::hirzebruch(a));
    }
    for (n1, n2) in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 2)] {
        for a in -2..=2 {
            let mut u = vec![a; n2];
            u[0] = -a;
            out.push(TowerSpec::two_stage(n1, &u));
            out.push(TowerSpec::two_stage(n1, &vec![a; n2]));
        }
    }
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                out.push(TowerSpec::bott3(a, b, c));
            }
        }
    }
    out.push(TowerSpec::from_rows(&[1, 1, 2], &[&[], &[&[1]], &[&[1, -1], &[0, 2]]]).unwrap());
    out.push(TowerSpec::from_rows(&[1, 1, 1, 1], &[&[], &[&[2]], &[&[1, -1]], &[&[0, 1, 3]]]).unwrap());
    let shape = TowerShape {
        max_height: 4,
        max_fiber_dim: 2,
        max_entry: 3,
    };
    out.extend(
        seeded_towers(seed, 200, shape)
            .into_iter()
            .filter(|t| t.dimension() <= 4)
            .take(40),
    );
    out
}
