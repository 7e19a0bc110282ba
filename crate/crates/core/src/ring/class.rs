use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::monomial::write_terms;
use super::{BottRing, ExponentVector};
use crate::json::SerializedTerm;
use crate::scalar::format_scalar;
use crate::{Error, Result, Scalar};

/// An element of a [`BottRing`], stored as a coefficient map on the
/// normal-form basis with no zero entries.
#[derive(Clone)]
pub struct CohomologyClass {
    ring: BottRing,
    coeffs: BTreeMap<usize, Scalar>,
}

impl CohomologyClass {
    pub(crate) fn new(ring: BottRing, coeffs: BTreeMap<usize, Scalar>) -> Self {
        CohomologyClass { ring, coeffs }
    }

    pub fn ring(&self) -> &BottRing {
        &self.ring
    }

    pub(crate) fn coeffs(&self) -> &BTreeMap<usize, Scalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c == &Scalar::from_integer(1.into()))
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        let basis = self.ring.basis();
        self.coeffs.iter().map(move |(&b, c)| (&basis[b], c))
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Scalar {
        self.ring
            .basis_index(e)
            .and_then(|b| self.coeffs.get(&b).cloned())
            .unwrap_or_else(Scalar::zero)
    }

    /// The degree-`2d` component.
    pub fn homogeneous_part(&self, d: usize) -> CohomologyClass {
        let range = self.ring.degree_range(d);
        CohomologyClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.range(range).map(|(&b, c)| (b, c.clone())).collect(),
        }
    }

    /// Truncation to degrees `≤ 2d`.
    pub fn truncate(&self, d: usize) -> CohomologyClass {
        let end = self.ring.degree_range(d).end;
        CohomologyClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.range(..end).map(|(&b, c)| (b, c.clone())).collect(),
        }
    }

    /// Degrees (halved) with nonzero components.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms().map(|(e, _)| e.degree()).collect();
        d.dedup();
        d
    }

    /// Coefficients on `y_1, ..., y_m` if the class is homogeneous of degree 2.
    pub fn linear_coefficients(&self) -> Option<Vec<Scalar>> {
        if self.degrees().iter().any(|&d| d != 1) {
            return None;
        }
        let m = self.ring.height();
        Some(
            (0..m)
                .map(|j| self.coefficient(&ExponentVector::unit(m, j)))
                .collect(),
        )
    }

    /// gcd of the integer coefficients (zero for the zero class).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .values()
            .filter(|c| c.is_integer())
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer()))
            .abs()
    }

    /// Reinterprets the coefficients in `target`, a ring of the same shape
    /// (e.g. reduction of an integral class modulo 2).
    pub fn change_ring(&self, target: &BottRing) -> Result<CohomologyClass> {
        if target.dims() != self.ring.dims() || target.tower() != self.ring.tower() {
            return Err(Error::RingMismatch);
        }
        Ok(target.from_terms(self.coeffs.iter().map(|(&b, c)| (b, c.clone()))))
    }

    pub fn scale(&self, c: &Scalar) -> CohomologyClass {
        self.ring
            .from_terms(self.coeffs.iter().map(|(&b, v)| (b, v * c)))
    }

    /// Terms as `{"exponents": [...], "coeff": "..."}` in graded-lex order.
    pub fn to_serialized(&self) -> Vec<SerializedTerm> {
        self.terms()
            .map(|(e, c)| SerializedTerm {
                exponents: e.as_slice().to_vec(),
                coeff: format_scalar(c),
            })
            .collect()
    }

    pub fn from_serialized(ring: &BottRing, terms: &[SerializedTerm]) -> Result<CohomologyClass> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let e = ExponentVector::new(t.exponents.clone());
            let b = ring.basis_index(&e).ok_or(Error::RingMismatch)?;
            out.push((b, ring.domain().parse_scalar(&t.coeff)?));
        }
        Ok(ring.from_terms(out))
    }

    fn combine(&self, rhs: &CohomologyClass, sign: i32) -> CohomologyClass {
        assert!(self.ring == rhs.ring, "classes from different rings");
        let mut terms: Vec<(usize, Scalar)> =
            self.coeffs.iter().map(|(&b, c)| (b, c.clone())).collect();
        terms.extend(rhs.coeffs.iter().map(|(&b, c)| {
            (b, if sign < 0 { -c.clone() } else { c.clone() })
        }));
        self.ring.from_terms(terms)
    }
}

impl PartialEq for CohomologyClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl Eq for CohomologyClass {}

impl fmt::Debug for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohomologyClass({self} over {})", self.ring.domain())
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

impl Add for &CohomologyClass {
    type Output = CohomologyClass;

    fn add(self, rhs: &CohomologyClass) -> CohomologyClass {
        self.combine(rhs, 1)
    }
}

impl Sub for &CohomologyClass {
    type Output = CohomologyClass;

    fn sub(self, rhs: &CohomologyClass) -> CohomologyClass {
        self.combine(rhs, -1)
    }
}

impl Neg for &CohomologyClass {
    type Output = CohomologyClass;

    fn neg(self) -> CohomologyClass {
        self.scale(&-Scalar::from_integer(1.into()))
    }
}

/// Panics if the classes live in different rings; use
/// [`BottRing::multiply`] for a checked product.
impl Mul for &CohomologyClass {
    type Output = CohomologyClass;

    fn mul(self, rhs: &CohomologyClass) -> CohomologyClass {
        self.ring
            .multiply(self, rhs)
            .expect("classes from different rings")
    }
}
