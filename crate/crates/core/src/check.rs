//! Seeded randomized checks of the ring engine.
//!
//! Each property is verified on one tower at a time and reports a message
//! describing the first counterexample. The same battery backs the test
//! suite and the command-line `check` subcommand.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg;
use crate::ring::{BottRing, ExponentVector, Polynomial};
use crate::tower::{StageSpec, TowerSpec};
use crate::{Domain, Scalar};

/// Shape limits for random towers.
#[derive(Clone, Copy, Debug)]
pub struct TowerShape {
    pub max_height: usize,
    pub max_fiber_dim: usize,
    pub max_entry: i64,
}

impl Default for TowerShape {
    fn default() -> Self {
        TowerShape {
            max_height: 4,
            max_fiber_dim: 3,
            max_entry: 3,
        }
    }
}

pub fn random_tower<R: Rng>(rng: &mut R, shape: TowerShape) -> TowerSpec {
    let m = rng.gen_range(1..=shape.max_height);
    let stages = (0..m)
        .map(|i| {
            let n = rng.gen_range(1..=shape.max_fiber_dim);
            let rows = (0..n)
                .map(|_| {
                    (0..i)
                        .map(|_| BigInt::from(rng.gen_range(-shape.max_entry..=shape.max_entry)))
                        .collect()
                })
                .collect();
            if i == 0 {
                StageSpec::trivial(n, 0)
            } else {
                StageSpec::new(rows).expect("rows have equal length")
            }
        })
        .collect();
    TowerSpec::new(stages).expect("random tower is well formed")
}

/// `count` towers drawn from a ChaCha stream seeded with `seed`.
pub fn seeded_towers(seed: u64, count: usize, shape: TowerShape) -> Vec<TowerSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_tower(&mut rng, shape)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    /// The pairing between complementary degrees has determinant `±1`.
    PoincarePairing,
    /// Normal forms do not depend on the rewriting order and are idempotent.
    Confluence,
    /// Classes `b y_m + w` with `b ≠ 0` and vanishing `(n_m + 1)`-st power
    /// span a lattice of rank at most one.
    TopStageSquareZeroRank,
    /// `x = Σ b_j y_j` with `b_j ≠ 0` has `x^{n_j} ≠ 0`.
    NonNilpotency,
    /// Graded ranks are the coefficients of `∏_i (1 + t + ... + t^{n_i})`.
    GradedRanks,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::PoincarePairing,
        Property::Confluence,
        Property::TopStageSquareZeroRank,
        Property::NonNilpotency,
        Property::GradedRanks,
    ];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::PoincarePairing => "poincare_pairing",
            Property::Confluence => "confluence",
            Property::TopStageSquareZeroRank => "top_stage_square_zero_rank",
            Property::NonNilpotency => "non_nilpotency",
            Property::GradedRanks => "graded_ranks",
        })
    }
}

pub fn check_property<R: Rng>(tower: &TowerSpec, property: Property, rng: &mut R) -> Result<(), String> {
    let ring = BottRing::new(tower, Domain::Integer);
    match property {
        Property::PoincarePairing => poincare_pairing(&ring),
        Property::Confluence => confluence(&ring, rng),
        Property::TopStageSquareZeroRank => top_stage_rank(&ring),
        Property::NonNilpotency => non_nilpotency(&ring, rng),
        Property::GradedRanks => graded_ranks(&ring),
    }
}

/// Runs every property on `tower`.
pub fn check_tower<R: Rng>(tower: &TowerSpec, rng: &mut R) -> Vec<(Property, Result<(), String>)> {
    Property::ALL
        .iter()
        .map(|&p| (p, check_property(tower, p, rng)))
        .collect()
}

fn poincare_pairing(ring: &BottRing) -> Result<(), String> {
    let top = ring.top_degree();
    for d in 0..=top {
        let low = ring.basis_in_degree(d);
        let high = ring.basis_in_degree(top - d);
        let matrix: Vec<Vec<BigInt>> = low
            .iter()
            .map(|a| {
                let a = ring.monomial(a).expect("basis monomial");
                high.iter()
                    .map(|b| {
                        let b = ring.monomial(b).expect("basis monomial");
                        let v = ring.integrate(&ring.mul_unchecked(&a, &b)).expect("same ring");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let det = linalg::determinant(&matrix);
        if det.abs() != BigInt::from(1) {
            return Err(format!("pairing in degree {} has determinant {det}", 2 * d));
        }
    }
    Ok(())
}

fn random_polynomial<R: Rng>(ring: &BottRing, rng: &mut R) -> Polynomial {
    let dims = ring.dims();
    let top = ring.top_degree();
    let mut p = Polynomial::zero(dims.len());
    for _ in 0..rng.gen_range(1..=4) {
        let mut e: Vec<u32> = dims.iter().map(|&n| rng.gen_range(0..=n as u32 + 2)).collect();
        // keep the degree at most top so plain rewriting stays small
        while e.iter().sum::<u32>() as usize > top {
            let i = rng.gen_range(0..e.len());
            e[i] = e[i].saturating_sub(1);
        }
        p.add_term(ExponentVector::new(e), Scalar::from_integer(rng.gen_range(-5..=5).into()));
    }
    p
}

fn confluence<R: Rng>(ring: &BottRing, rng: &mut R) -> Result<(), String> {
    for _ in 0..4 {
        let p = random_polynomial(ring, rng);
        let nf = ring.normal_form(&p).map_err(|e| e.to_string())?;
        let lowest = ring.reduce_with(&p, |_, over| over[0]).map_err(|e| e.to_string())?;
        let seed: u64 = rng.gen();
        let mut order = ChaCha8Rng::seed_from_u64(seed);
        let random = ring
            .reduce_with(&p, |_, over| *over.choose(&mut order).expect("nonempty"))
            .map_err(|e| e.to_string())?;
        if lowest != nf || random != nf {
            return Err(format!("reduction order changes the normal form of {p}"));
        }
        let again = Polynomial::from_terms(
            ring.height(),
            nf.terms().map(|(e, c)| (e.as_slice().to_vec(), c.clone())),
        );
        if ring.normal_form(&again).map_err(|e| e.to_string())? != nf {
            return Err(format!("normal form of {p} is not idempotent"));
        }
    }
    Ok(())
}

fn top_stage_rank(ring: &BottRing) -> Result<(), String> {
    let m = ring.height();
    let k = ring.dims()[m - 1] as u32 + 1;
    let found = ring.square_zero_vectors_where(k, 4, |v| v[m - 1] != 0);
    let rank = linalg::rank(&found);
    if rank > 1 {
        return Err(format!("{} top-stage classes span rank {rank}", found.len()));
    }
    Ok(())
}

fn non_nilpotency<R: Rng>(ring: &BottRing, rng: &mut R) -> Result<(), String> {
    let m = ring.height();
    for _ in 0..3 {
        let b: Vec<BigInt> = (0..m)
            .map(|_| {
                let v: i64 = rng.gen_range(1..=4);
                BigInt::from(if rng.gen() { v } else { -v })
            })
            .collect();
        let x = ring.linear(&b);
        for j in 0..m {
            let n = ring.dims()[j] as u32;
            if ring.power(&x, n).expect("same ring").is_zero() {
                return Err(format!("({x})^{n} vanishes although the y{} coefficient is nonzero", j + 1));
            }
        }
    }
    // a single generator direction as well
    let j = rng.gen_range(0..m);
    let mut b = vec![BigInt::zero(); m];
    b[j] = BigInt::from(rng.gen_range(1..=3));
    let x = ring.linear(&b);
    if ring.power(&x, ring.dims()[j] as u32).expect("same ring").is_zero() {
        return Err(format!("({x})^{} vanishes", ring.dims()[j]));
    }
    Ok(())
}

fn graded_ranks(ring: &BottRing) -> Result<(), String> {
    let mut poly = vec![1usize];
    for &n in ring.dims() {
        let mut next = vec![0usize; poly.len() + n];
        for (d, &c) in poly.iter().enumerate() {
            for k in 0..=n {
                next[d + k] += c;
            }
        }
        poly = next;
    }
    let ranks = ring.graded_ranks();
    if ranks != poly {
        return Err(format!("graded ranks {ranks:?}, generating function {poly:?}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_towers_are_reproducible() {
        let a = seeded_towers(7, 5, TowerShape::default());
        let b = seeded_towers(7, 5, TowerShape::default());
        assert_eq!(a, b);
        assert!(a.iter().all(|t| t.height() <= 4 && t.dims().iter().all(|&n| (1..=3).contains(&n))));
    }

    #[test]
    fn battery_passes_on_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for t in [TowerSpec::hirzebruch(3), TowerSpec::bott3(1, -2, 2)] {
            for (p, r) in check_tower(&t, &mut rng) {
                assert!(r.is_ok(), "{p}: {r:?}");
            }
        }
    }
}
