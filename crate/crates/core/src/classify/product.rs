use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ring::{BottRing, CohomologyClass, IsoWitness};
use crate::tower::{product_tower, TowerSpec};
use crate::Domain;

/// Stage-wise twists trivializing a tower in cohomology.
#[derive(Clone, Debug)]
pub struct ProductWitness {
    /// `twists[i]` is `w_{i+1}` on `y_1, ..., y_i`.
    pub twists: Vec<Vec<BigInt>>,
    /// Row `i` is `x_{i+1} = y_{i+1} + w_{i+1}` on `y_1, ..., y_m`.
    pub generators: Vec<Vec<BigInt>>,
    /// `H^*(∏ CP^{n_i}) → H^*(B)`, `x_i ↦ y_i + w_i`.
    pub iso: IsoWitness,
}

/// Why a stage admits no trivializing twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotProductReason {
    /// `n_i + 1` does not divide every coefficient of `c_1(ξ_i)`.
    Divisibility { first_chern: Vec<BigInt>, divisor: usize },
    /// The forced twist leaves a nontrivial total Chern class.
    ChernResidue { residue: CohomologyClass },
}

#[derive(Clone, Debug)]
pub enum ProductVerdict {
    Product(ProductWitness),
    NotProduct { stage: usize, reason: NotProductReason },
}

impl ProductVerdict {
    pub fn is_product(&self) -> bool {
        matches!(self, ProductVerdict::Product(_))
    }

    pub fn witness(&self) -> Option<&ProductWitness> {
        match self {
            ProductVerdict::Product(w) => Some(w),
            ProductVerdict::NotProduct { .. } => None,
        }
    }
}

/// Decides whether `H^*(B)` is isomorphic to the cohomology of the product
/// of the fibers, one stage at a time: stage `i` passes when
/// `w = c_1(ξ_i)/(n_i + 1)` is integral and `∏_α (1 + u_α - w) = 1` in
/// `H^*(B_{i-1})`.
pub fn is_product_cohomology(tower: &TowerSpec) -> ProductVerdict {
    let m = tower.height();
    let mut twists = Vec::with_capacity(m);
    for i in 0..m {
        let stage = tower.stage(i + 1);
        let s = stage.first_chern();
        let divisor = BigInt::from(stage.fiber_dim() + 1);
        if s.iter().any(|c| !c.is_multiple_of(&divisor)) {
            return ProductVerdict::NotProduct {
                stage: i + 1,
                reason: NotProductReason::Divisibility {
                    first_chern: s,
                    divisor: stage.fiber_dim() + 1,
                },
            };
        }
        let w: Vec<BigInt> = s.iter().map(|c| c / &divisor).collect();
        if i > 0 {
            let base = BottRing::new(&tower.truncate(i), Domain::Integer);
            let factors: Vec<(BigInt, Vec<BigInt>)> = stage
                .full_rows()
                .iter()
                .map(|u| (BigInt::one(), u.iter().zip(&w).map(|(a, b)| a - b).collect()))
                .collect();
            let c = base.product_of_affine_forms(&factors);
            if !c.is_one() {
                return ProductVerdict::NotProduct {
                    stage: i + 1,
                    reason: NotProductReason::ChernResidue { residue: c },
                };
            }
        }
        twists.push(w);
    }
    let generators: Vec<Vec<BigInt>> = twists
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let mut row = vec![BigInt::zero(); m];
            row[..i].clone_from_slice(w);
            row[i] = BigInt::one();
            row
        })
        .collect();
    let product = BottRing::new(
        &product_tower(&tower.dims()).expect("tower dimensions are positive"),
        Domain::Integer,
    );
    let ring = BottRing::new(tower, Domain::Integer);
    let iso = IsoWitness::verify(&product, &ring, generators.clone())
        .expect("stage-wise twists give a ring isomorphism");
    ProductVerdict::Product(ProductWitness { twists, generators, iso })
}
