use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::json;

use super::search::iso_search;
use super::{Verdict, Witness};
use crate::charclass::tangent_pontrjagin_in;
use crate::json::JsonInt;
use crate::ring::BottRing;
use crate::tower::TowerSpec;
use crate::{Domain, Error, Result};

/// Whether the three-stage Bott manifold `(a, b, c)` has a degree-2 class
/// with nonzero `y_3` coefficient squaring to zero, i.e. `c(2b - ac) = 0`.
pub fn q_product_b3(a: i64, b: i64, c: i64) -> bool {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    c * (2 * b - a * c) == 0
}

/// Isomorphism invariants compared before searching for a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBattery {
    pub graded_ranks: Vec<usize>,
    pub p1_zero: bool,
    /// gcd of the coefficients of `p_1`; zero when `p_1 = 0`.
    pub p1_content: BigInt,
    /// Nonzero `x ∈ H^2(;Z/2)` with `x^2 = 0`.
    pub square_zero_mod2: usize,
    /// Nonzero `x ∈ H^2(;Z/4)` with `x^2 = 0`.
    pub square_zero_mod4: usize,
}

/// Counts nonzero `x ∈ H^2(;Z/q)` with `x^2 ≡ 0 (mod q)`, squaring integral
/// lifts with entries in `[0, q)`.
fn square_zero_count(ring: &BottRing, q: u32) -> usize {
    let m = ring.height();
    let modulus = BigInt::from(q);
    let total = (q as usize).pow(m as u32);
    (1..total)
        .filter(|&idx| {
            let mut idx = idx;
            let v: Vec<BigInt> = (0..m)
                .map(|_| {
                    let d = idx % q as usize;
                    idx /= q as usize;
                    BigInt::from(d)
                })
                .collect();
            let x = ring.linear(&v);
            let sq = ring.mul_unchecked(&x, &x);
            let zero = sq.terms().all(|(_, c)| c.numer().is_multiple_of(&modulus));
            zero
        })
        .count()
}

impl InvariantBattery {
    pub fn compute(tower: &TowerSpec) -> InvariantBattery {
        let ring = BottRing::new(tower, Domain::Integer);
        let p1 = tangent_pontrjagin_in(&ring).homogeneous_part(2);
        InvariantBattery {
            graded_ranks: ring.graded_ranks(),
            p1_zero: p1.is_zero(),
            p1_content: p1.content(),
            square_zero_mod2: square_zero_count(&ring, 2),
            square_zero_mod4: square_zero_count(&ring, 4),
        }
    }

    /// The first invariant on which the two batteries differ, with both
    /// values.
    pub fn first_difference(&self, other: &InvariantBattery) -> Option<(&'static str, serde_json::Value, serde_json::Value)> {
        if self.graded_ranks != other.graded_ranks {
            return Some(("graded_ranks", json!(self.graded_ranks), json!(other.graded_ranks)));
        }
        // content 0 is exactly p_1 = 0, so this also separates the zero flag
        if self.p1_content != other.p1_content {
            return Some((
                "p1_content",
                json!(JsonInt(self.p1_content.clone())),
                json!(JsonInt(other.p1_content.clone())),
            ));
        }
        if self.square_zero_mod2 != other.square_zero_mod2 {
            return Some(("square_zero_mod2", json!(self.square_zero_mod2), json!(other.square_zero_mod2)));
        }
        if self.square_zero_mod4 != other.square_zero_mod4 {
            return Some(("square_zero_mod4", json!(self.square_zero_mod4), json!(other.square_zero_mod4)));
        }
        None
    }
}

fn require_bott3(t: &TowerSpec) -> Result<()> {
    if t.height() != 3 {
        return Err(Error::HeightMismatch {
            expected: 3,
            found: t.height(),
        });
    }
    for (i, s) in t.stages().iter().enumerate() {
        if s.fiber_dim() != 1 {
            return Err(Error::NotBott {
                stage: i + 1,
                dim: s.fiber_dim(),
            });
        }
    }
    Ok(())
}

/// Classification of three-stage Bott manifolds: the invariant battery,
/// then a bounded isomorphism search. A witness maps `H^*(t')` to `H^*(t)`.
pub fn classify_3stage(t: &TowerSpec, t_prime: &TowerSpec, bound: u32) -> Result<Verdict> {
    require_bott3(t)?;
    require_bott3(t_prime)?;
    let left = InvariantBattery::compute(t);
    let right = InvariantBattery::compute(t_prime);
    if let Some((name, l, r)) = left.first_difference(&right) {
        return Ok(Verdict::Distinct {
            invariant: name.into(),
            left: l,
            right: r,
        });
    }
    let ring = BottRing::new(t, Domain::Integer);
    let ring_prime = BottRing::new(t_prime, Domain::Integer);
    Ok(match iso_search(&ring, &ring_prime, bound) {
        Some(w) => Verdict::Diffeomorphic(Witness::Ring(w)),
        None => Verdict::Unknown { bound },
    })
}
