use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::json;

use super::product::{is_product_cohomology, ProductVerdict};
use super::{Verdict, Witness};
use crate::linalg;
use crate::ring::{BottRing, IsoWitness};
use crate::tower::TowerSpec;
use crate::{Domain, Error, Result};

/// A twist `(ε, w)` with `∏_α (1 + ε(u'_α + w x)) = ∏_α (1 + u_α)` in
/// `Z[x]/(x^{n_1+1})`.
#[derive(Clone, Debug)]
pub struct TwoStageWitness {
    pub epsilon: i8,
    pub w: BigInt,
    /// `H^*(B') → H^*(B)`, `x ↦ x`, `y' ↦ εy + wx`.
    pub iso: IsoWitness,
}

/// Second-stage roots `u_0 = 0, u_1, ..., u_{n_2}` as multiples of `x`.
fn roots(t: &TowerSpec) -> Vec<BigInt> {
    t.stage(2).full_rows().into_iter().map(|r| r[0].clone()).collect()
}

/// Coefficients of `∏ (1 + r x)` truncated above `x^{n1}`.
fn truncated_chern(roots: &[BigInt], n1: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n1 + 1];
    c[0] = BigInt::one();
    for r in roots {
        for k in (1..=n1).rev() {
            let prev = &c[k - 1] * r;
            c[k] += prev;
        }
    }
    c
}

/// A complete invariant of the twist-and-dualize orbit of the second stage:
/// for each sign, shift the roots so that `c_1` lies in `[0, n_2]`, and take
/// the smaller resulting truncated Chern vector.
pub fn twisted_chern_invariant(t: &TowerSpec) -> Vec<BigInt> {
    let n1 = t.stage(1).fiber_dim();
    let k = BigInt::from(t.stage(2).fiber_dim() + 1);
    let base = roots(t);
    [1i8, -1]
        .iter()
        .map(|&eps| {
            let v: Vec<BigInt> = base.iter().map(|r| r * BigInt::from(eps)).collect();
            let s: BigInt = v.iter().sum();
            let shift = -s.div_floor(&k);
            let shifted: Vec<BigInt> = v.iter().map(|r| r + &shift).collect();
            truncated_chern(&shifted, n1)
        })
        .min()
        .expect("two signs")
}

fn require_height_two(t: &TowerSpec) -> Result<()> {
    if t.height() != 2 {
        return Err(Error::HeightMismatch {
            expected: 2,
            found: t.height(),
        });
    }
    Ok(())
}

fn ints_json(v: &[BigInt]) -> serde_json::Value {
    serde_json::to_value(crate::json::to_json_row(v)).expect("integers serialize")
}

/// Diffeomorphism classification of two-stage generalized Bott manifolds.
///
/// The returned witness maps `H^*(t')` to `H^*(t)`.
pub fn classify_2stage(t: &TowerSpec, t_prime: &TowerSpec) -> Result<Verdict> {
    require_height_two(t)?;
    require_height_two(t_prime)?;
    let (n1, n2) = (t.stage(1).fiber_dim(), t.stage(2).fiber_dim());
    let (m1, m2) = (t_prime.stage(1).fiber_dim(), t_prime.stage(2).fiber_dim());
    let ring = BottRing::new(t, Domain::Integer);
    let ring_prime = BottRing::new(t_prime, Domain::Integer);

    if (n1, n2) == (m1, m2) {
        let u = roots(t);
        let u_prime = roots(t_prime);
        let target = truncated_chern(&u, n1);
        let k = BigInt::from(n2 + 1);
        let su: BigInt = u.iter().sum();
        let su_prime: BigInt = u_prime.iter().sum();
        for eps in [1i8, -1] {
            let e = BigInt::from(eps);
            let num = &e * &su - &su_prime;
            if !num.is_multiple_of(&k) {
                continue;
            }
            let w = num / &k;
            let twisted: Vec<BigInt> = u_prime.iter().map(|r| &e * (r + &w)).collect();
            if truncated_chern(&twisted, n1) != target {
                continue;
            }
            let matrix = vec![vec![BigInt::one(), BigInt::zero()], vec![w.clone(), e.clone()]];
            let iso = IsoWitness::verify(&ring_prime, &ring, matrix).ok_or_else(|| {
                Error::Internal("twist condition holds but the induced map is not an isomorphism".into())
            })?;
            return Ok(Verdict::Diffeomorphic(Witness::TwoStage(TwoStageWitness {
                epsilon: eps,
                w,
                iso,
            })));
        }
        let left = twisted_chern_invariant(t);
        let right = twisted_chern_invariant(t_prime);
        if left == right {
            return Err(Error::Internal("equal twist invariants without a twist".into()));
        }
        return Ok(Verdict::Distinct {
            invariant: "twisted_chern_class".into(),
            left: ints_json(&left),
            right: ints_json(&right),
        });
    }

    if (n1, n2) == (m2, m1) {
        let p = is_product_cohomology(t);
        let p_prime = is_product_cohomology(t_prime);
        return Ok(match (p, p_prime) {
            (ProductVerdict::Product(left), ProductVerdict::Product(right)) => {
                // H^*(t') ≅ H^*(CP^{m1} × CP^{m2}) ≅ H^*(CP^{n1} × CP^{n2}) ≅ H^*(t)
                let swap = vec![vec![BigInt::zero(), BigInt::one()], vec![BigInt::one(), BigInt::zero()]];
                let back = linalg::inverse_unimodular(right.iso.matrix()).expect("unitriangular");
                let matrix = linalg::mat_mul(&linalg::mat_mul(&back, &swap), left.iso.matrix());
                let iso = IsoWitness::verify(&ring_prime, &ring, matrix).ok_or_else(|| {
                    Error::Internal("composite of product isomorphisms failed to verify".into())
                })?;
                Verdict::Diffeomorphic(Witness::Products { left, right, iso })
            }
            (p, p_prime) if p.is_product() != p_prime.is_product() => Verdict::Distinct {
                invariant: "cohomologically_product".into(),
                left: json!(p.is_product()),
                right: json!(p_prime.is_product()),
            },
            _ => {
                // Neither is a product. Over the larger base, no nonzero degree-2
                // class has vanishing N-th power (N the larger of n1, n2); over
                // the smaller base, the base generator does.
                let big = n1.max(n2);
                Verdict::Distinct {
                    invariant: format!("nonzero_degree2_class_with_vanishing_power_{big}"),
                    left: json!(n1 < n2),
                    right: json!(m1 < m2),
                }
            }
        });
    }

    Ok(Verdict::Distinct {
        invariant: "graded_ranks".into(),
        left: json!(ring.graded_ranks()),
        right: json!(ring_prime.graded_ranks()),
    })
}
