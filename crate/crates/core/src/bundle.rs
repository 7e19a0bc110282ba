//! Sums of line bundles over products of complex projective spaces.
//!
//! Such a sum is trivial exactly when its total Chern class is `1`, and two
//! sums of the same rank are isomorphic exactly when their total Chern
//! classes agree.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ring::{BottRing, CohomologyClass};
use crate::tower::product_tower;
use crate::{Domain, Error, Result};

pub use crate::tower::LineBundleSum;

/// `∏_i (1 + Σ_j a_ij x_j)` in `Z[x_1..x_k]/(x_j^{n_j+1})`.
pub fn total_chern_bundle(bundle: &LineBundleSum) -> CohomologyClass {
    let tower = product_tower(bundle.base_dims()).expect("bundle base dimensions are positive");
    let ring = BottRing::new(&tower, Domain::Integer);
    let factors: Vec<(BigInt, Vec<BigInt>)> = bundle
        .exponents()
        .iter()
        .map(|r| (BigInt::one(), r.clone()))
        .collect();
    ring.product_of_affine_forms(&factors)
}

pub fn is_trivial(bundle: &LineBundleSum) -> bool {
    total_chern_bundle(bundle).is_one()
}

/// Which argument produced a vanishing column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionCase {
    /// Some remaining factor has dimension at least two; that column has
    /// vanishing sum and vanishing sum of squares.
    #[serde(rename = "I")]
    HighDimensionalFactor,
    /// All remaining factors are `CP^1`; the columns are mutually orthogonal
    /// and outnumber the rows.
    #[serde(rename = "II")]
    OrthogonalColumns,
}

/// One elimination: `column` (0-based, in the original bundle) is zero and
/// its factor is dropped, leaving a base with dimensions `remaining_dims`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub column: usize,
    pub case: ReductionCase,
    pub rows: usize,
    pub remaining_dims: Vec<usize>,
}

/// Result of [`find_zero_column`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroColumnReduction {
    /// Smallest index (0-based) of a zero column of the input.
    pub column: usize,
    /// Eliminations performed until the bundle reaches the stable range.
    pub trace: Vec<ReductionStep>,
    /// The bundle left after the last elimination.
    pub residual: LineBundleSum,
}

#[derive(Serialize)]
struct StepJson {
    column: usize,
    case: ReductionCase,
    rows: usize,
    remaining_dims: Vec<usize>,
}

impl ZeroColumnReduction {
    /// The trace with 1-based column indices.
    pub fn trace_json(&self) -> serde_json::Value {
        let steps: Vec<StepJson> = self
            .trace
            .iter()
            .map(|s| StepJson {
                column: s.column + 1,
                case: s.case,
                rows: s.rows,
                remaining_dims: s.remaining_dims.clone(),
            })
            .collect();
        serde_json::to_value(steps).expect("trace serializes")
    }
}

fn column_sum(b: &LineBundleSum, j: usize) -> BigInt {
    b.exponents().iter().map(|r| &r[j]).sum()
}

fn column_dot(b: &LineBundleSum, j: usize, l: usize) -> BigInt {
    b.exponents().iter().map(|r| &r[j] * &r[l]).sum()
}

fn column_is_zero(b: &LineBundleSum, j: usize) -> bool {
    b.exponents().iter().all(|r| r[j].is_zero())
}

/// Finds a vanishing column of a trivial bundle below the stable range and
/// keeps eliminating factors until `n ≥ Σ n_j`.
///
/// Fails with [`Error::BundleNotTrivial`] or [`Error::StableRange`] when the
/// hypotheses do not hold.
pub fn find_zero_column(bundle: &LineBundleSum) -> Result<ZeroColumnReduction> {
    if !is_trivial(bundle) {
        return Err(Error::BundleNotTrivial);
    }
    let n = bundle.rank();
    if n >= bundle.base_dimension() {
        return Err(Error::StableRange {
            rows: n,
            base: bundle.base_dimension(),
        });
    }
    let column = (0..bundle.base_dims().len())
        .find(|&j| column_is_zero(bundle, j))
        .ok_or_else(|| Error::Internal("trivial bundle below the stable range has no zero column".into()))?;

    let mut current = bundle.clone();
    let mut original: Vec<usize> = (0..bundle.base_dims().len()).collect();
    let mut trace = Vec::new();
    while n < current.base_dimension() {
        let k = current.base_dims().len();
        for j in 0..k {
            if !column_sum(&current, j).is_zero() {
                return Err(Error::Internal(format!("column {} has nonzero sum", original[j] + 1)));
            }
        }
        let (j, case) = if let Some(j) = current.base_dims().iter().position(|&d| d >= 2) {
            if !column_dot(&current, j, j).is_zero() {
                return Err(Error::Internal(format!("column {} has nonzero square sum", original[j] + 1)));
            }
            (j, ReductionCase::HighDimensionalFactor)
        } else {
            for j in 0..k {
                for l in j + 1..k {
                    if !column_dot(&current, j, l).is_zero() {
                        return Err(Error::Internal(format!(
                            "columns {} and {} are not orthogonal",
                            original[j] + 1,
                            original[l] + 1
                        )));
                    }
                }
            }
            let j = (0..k)
                .find(|&j| column_is_zero(&current, j))
                .ok_or_else(|| Error::Internal("orthogonal columns outnumber rows but none vanishes".into()))?;
            (j, ReductionCase::OrthogonalColumns)
        };
        debug_assert!(column_is_zero(&current, j));
        current = current.drop_factor(j);
        let col = original.remove(j);
        trace.push(ReductionStep {
            column: col,
            case,
            rows: n,
            remaining_dims: current.base_dims().to_vec(),
        });
    }
    Ok(ZeroColumnReduction {
        column,
        trace,
        residual: current,
    })
}

/// Isomorphism of two sums of the same rank over the same base.
pub fn bundles_isomorphic(e: &LineBundleSum, f: &LineBundleSum) -> Result<bool> {
    if e.base_dims() != f.base_dims() {
        return Err(Error::BundleShape("bases differ".into()));
    }
    if e.rank() != f.rank() {
        return Err(Error::BundleShape(format!(
            "ranks differ ({} vs {})",
            e.rank(),
            f.rank()
        )));
    }
    Ok(total_chern_bundle(e) == total_chern_bundle(f))
}
