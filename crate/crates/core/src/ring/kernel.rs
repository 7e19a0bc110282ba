//! Dense integer multiplication tables for the hot loops (products of
//! linear and affine forms during enumeration).
//!
//! All arithmetic is checked; an overflow makes the caller fall back to the
//! arbitrary precision class arithmetic.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{to_i128_vec, BottRing};
use crate::Domain;

pub(crate) struct Kernel {
    /// `gen_mul[j][b]` is `y_{j+1} · basis[b]` as sparse integer terms.
    gen_mul: Vec<Vec<Vec<(usize, i128)>>>,
    size: usize,
}

impl Kernel {
    pub(crate) fn build(ring: &BottRing) -> Option<Kernel> {
        let data = &ring.inner;
        let m = data.dims.len();
        let size = data.basis.len();
        let mut gen_mul = Vec::with_capacity(m);
        for j in 0..m {
            let mut table = Vec::with_capacity(size);
            for e in &data.basis {
                let mut ex = e.as_slice().to_vec();
                ex[j] += 1;
                let terms = data.nf_int(&ex);
                let row = terms
                    .iter()
                    .map(|(t, c)| c.to_i128().map(|c| (*t, c)))
                    .collect::<Option<Vec<_>>>()?;
                table.push(row);
            }
            gen_mul.push(table);
        }
        Some(Kernel { gen_mul, size })
    }

    fn step(&self, v: &[i128], constant: i128, linear: &[i128]) -> Option<Vec<i128>> {
        let mut out = vec![0i128; self.size];
        for (b, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            if constant != 0 {
                out[b] = out[b].checked_add(constant.checked_mul(x)?)?;
            }
            for (j, &l) in linear.iter().enumerate() {
                if l == 0 {
                    continue;
                }
                let lx = l.checked_mul(x)?;
                for &(t, c) in &self.gen_mul[j][b] {
                    out[t] = out[t].checked_add(lx.checked_mul(c)?)?;
                }
            }
        }
        Some(out)
    }

    fn unit(&self) -> Vec<i128> {
        let mut v = vec![0i128; self.size];
        v[0] = 1;
        v
    }

    pub(crate) fn affine_product(&self, factors: &[(BigInt, Vec<BigInt>)]) -> Option<Vec<i128>> {
        let mut v = self.unit();
        for (c, l) in factors {
            v = self.step(&v, c.to_i128()?, &to_i128_vec(l)?)?;
        }
        Some(v)
    }

    /// `None` when the computation overflowed.
    pub(crate) fn linear_product_vanishes(&self, forms: &[Vec<BigInt>], domain: Domain) -> Option<bool> {
        let mut v = self.unit();
        for l in forms {
            v = self.step(&v, 0, &to_i128_vec(l)?)?;
            if let Domain::Modular(p) = domain {
                for x in v.iter_mut() {
                    *x = x.rem_euclid(p as i128);
                }
            }
            if v.iter().all(|&x| x == 0) {
                return Some(true);
            }
        }
        Some(v.iter().all(|&x| domain.int_is_zero(x)))
    }
}
