//! Classification procedures.
//!
//! Every positive verdict carries a verified ring isomorphism; every
//! negative verdict names an isomorphism invariant on which the inputs
//! differ.

mod product;
mod search;
mod three_stage;
mod two_stage;

use serde_json::{json, Value};

use crate::json::to_json_matrix;
use crate::ring::IsoWitness;

pub use product::{is_product_cohomology, NotProductReason, ProductVerdict, ProductWitness};
pub use search::iso_search;
pub use three_stage::{classify_3stage, q_product_b3, InvariantBattery};
pub use two_stage::{classify_2stage, twisted_chern_invariant, TwoStageWitness};

/// Evidence for a positive verdict.
#[derive(Clone, Debug)]
pub enum Witness {
    TwoStage(TwoStageWitness),
    /// Both towers are cohomologically products of the same projective
    /// spaces, in a different order.
    Products {
        left: ProductWitness,
        right: ProductWitness,
        iso: IsoWitness,
    },
    Ring(IsoWitness),
}

impl Witness {
    /// The isomorphism from the second input's ring to the first's.
    pub fn iso(&self) -> &IsoWitness {
        match self {
            Witness::TwoStage(w) => &w.iso,
            Witness::Products { iso, .. } => iso,
            Witness::Ring(iso) => iso,
        }
    }

    pub fn to_json(&self) -> Value {
        let matrix = json!(to_json_matrix(self.iso().matrix()));
        match self {
            Witness::TwoStage(w) => json!({
                "kind": "twist",
                "epsilon": w.epsilon,
                "w": crate::json::JsonInt(w.w.clone()),
                "matrix": matrix,
            }),
            Witness::Products { left, right, .. } => json!({
                "kind": "products",
                "left_twists": to_json_matrix(&left.twists),
                "right_twists": to_json_matrix(&right.twists),
                "matrix": matrix,
            }),
            Witness::Ring(_) => json!({
                "kind": "ring_isomorphism",
                "matrix": matrix,
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Diffeomorphic(Witness),
    Distinct {
        invariant: String,
        left: Value,
        right: Value,
    },
    /// No witness within the search bound and no separating invariant.
    Unknown { bound: u32 },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Diffeomorphic(_) => "DIFFEOMORPHIC",
            Verdict::Distinct { .. } => "DISTINCT",
            Verdict::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn is_diffeomorphic(&self) -> bool {
        matches!(self, Verdict::Diffeomorphic(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Diffeomorphic(w) => Some(w),
            _ => None,
        }
    }

    /// `{"verdict", "witness", "invariant", "bound"}`; absent parts are null.
    pub fn to_json(&self, bound: Option<u32>) -> Value {
        let (witness, invariant) = match self {
            Verdict::Diffeomorphic(w) => (w.to_json(), Value::Null),
            Verdict::Distinct {
                invariant,
                left,
                right,
            } => (
                Value::Null,
                json!({"name": invariant, "left": left, "right": right}),
            ),
            Verdict::Unknown { .. } => (Value::Null, Value::Null),
        };
        let bound = match self {
            Verdict::Unknown { bound } => Some(*bound),
            _ => bound,
        };
        json!({
            "verdict": self.label(),
            "witness": witness,
            "invariant": invariant,
            "bound": bound,
        })
    }
}
