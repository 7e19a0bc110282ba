use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BottRing, CohomologyClass, Polynomial};
use crate::linalg;
use crate::{Domain, Error, Result, Scalar};

/// Why a matrix does not define a graded ring map.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MapFailure {
    #[error("source has height {source_height}, target has height {target_height}")]
    HeightMismatch { source_height: usize, target_height: usize },
    #[error("source and target have different coefficient domains")]
    DomainMismatch,
    #[error("matrix must be square of size {expected}")]
    ShapeMismatch { expected: usize },
    #[error("relation f_{stage} of the source is not sent to zero")]
    RelationNotPreserved { stage: usize },
}

/// A graded ring homomorphism `H*(source) → H*(target)` fixed by its values
/// on generators: `y'_i ↦ Σ_j matrix[i][j] y_j`.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: BottRing,
    target: BottRing,
    matrix: Vec<Vec<BigInt>>,
    verified: bool,
}

impl RingMap {
    /// Checks that every defining relation of `source` maps to zero in
    /// `target`.
    pub fn verify(
        source: &BottRing,
        target: &BottRing,
        matrix: Vec<Vec<BigInt>>,
    ) -> std::result::Result<RingMap, MapFailure> {
        let m = source.height();
        if target.height() != m {
            return Err(MapFailure::HeightMismatch { source_height: m, target_height: target.height() });
        }
        if source.domain() != target.domain() {
            return Err(MapFailure::DomainMismatch);
        }
        if matrix.len() != m || matrix.iter().any(|r| r.len() != m) {
            return Err(MapFailure::ShapeMismatch { expected: m });
        }
        for i in 0..m {
            let stage = source.tower().stage(i + 1);
            // φ(f'_i) = Π_α (φ(y'_i) + Σ_j u_{α,j} φ(y'_j))
            let forms: Vec<Vec<BigInt>> = stage
                .full_rows()
                .iter()
                .map(|u| {
                    let mut form = matrix[i].clone();
                    for (j, c) in u.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (f, x) in form.iter_mut().zip(&matrix[j]) {
                            *f += c * x;
                        }
                    }
                    form
                })
                .collect();
            if !target.linear_product_vanishes(&forms) {
                return Err(MapFailure::RelationNotPreserved { stage: i + 1 });
            }
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), matrix, verified: true })
    }

    /// A map whose relations have not been checked; it cannot be applied.
    pub fn unverified(source: &BottRing, target: &BottRing, matrix: Vec<Vec<BigInt>>) -> RingMap {
        RingMap { source: source.clone(), target: target.clone(), matrix, verified: false }
    }

    pub fn source(&self) -> &BottRing {
        &self.source
    }

    pub fn target(&self) -> &BottRing {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.matrix)
    }

    /// A verified map with unimodular matrix between rings of equal graded
    /// ranks. Such a map is bijective in every degree.
    pub fn is_isomorphism(&self) -> bool {
        self.verified
            && self.determinant().abs().is_one()
            && self.source.graded_ranks() == self.target.graded_ranks()
    }

    /// Image of the generator `y'_{i+1}`.
    pub fn image_of_generator(&self, i: usize) -> CohomologyClass {
        self.target.linear(&self.matrix[i])
    }

    pub fn apply(&self, class: &CohomologyClass) -> Result<CohomologyClass> {
        if !self.verified {
            return Err(Error::UnverifiedMap);
        }
        if class.ring() != &self.source {
            return Err(Error::RingMismatch);
        }
        let images: Vec<CohomologyClass> =
            (0..self.matrix.len()).map(|i| self.image_of_generator(i)).collect();
        let mut acc = self.target.zero();
        for (e, c) in class.terms() {
            let mut term = self.target.constant(c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    let p = self.target.power(&images[i], k)?;
                    term = self.target.mul_unchecked(&term, &p);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Applies the map to a formal polynomial in the source generators.
    pub fn apply_polynomial(&self, p: &Polynomial) -> Result<CohomologyClass> {
        let class = self.source.normal_form(p)?;
        self.apply(&class)
    }

    /// Matrix of the map in degree `2d`: column `k` holds the coordinates of
    /// the image of the `k`-th source basis monomial of that degree.
    pub fn graded_matrix(&self, d: usize) -> Result<Vec<Vec<Scalar>>> {
        let src = self.source.basis_in_degree(d);
        let tgt = self.target.basis_in_degree(d);
        let mut out = vec![vec![Scalar::zero(); src.len()]; tgt.len()];
        for (k, e) in src.iter().enumerate() {
            let image = self.apply(&self.source.monomial(e).expect("basis monomial"))?;
            for (r, t) in tgt.iter().enumerate() {
                out[r][k] = image.coefficient(t);
            }
        }
        Ok(out)
    }

    /// First 1-based stage whose generator image involves a later generator,
    /// if any.
    pub fn first_unfiltered_stage(&self) -> Option<usize> {
        self.matrix
            .iter()
            .enumerate()
            .find(|(i, row)| row.iter().skip(i + 1).any(|x| !x.is_zero()))
            .map(|(i, _)| i + 1)
    }
}

/// A verified ring isomorphism.
#[derive(Clone, Debug)]
pub struct IsoWitness(RingMap);

impl IsoWitness {
    pub fn new(map: RingMap) -> Option<IsoWitness> {
        map.is_isomorphism().then_some(IsoWitness(map))
    }

    pub fn verify(source: &BottRing, target: &BottRing, matrix: Vec<Vec<BigInt>>) -> Option<IsoWitness> {
        RingMap::verify(source, target, matrix).ok().and_then(IsoWitness::new)
    }

    pub fn map(&self) -> &RingMap {
        &self.0
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        self.0.matrix()
    }

    pub fn source(&self) -> &BottRing {
        self.0.source()
    }

    pub fn target(&self) -> &BottRing {
        self.0.target()
    }

    pub fn apply(&self, class: &CohomologyClass) -> Result<CohomologyClass> {
        self.0.apply(class)
    }

    /// The same generator assignment between the rings over `domain`.
    pub fn with_domain(&self, domain: Domain) -> IsoWitness {
        IsoWitness(RingMap {
            source: self.0.source.with_domain(domain),
            target: self.0.target.with_domain(domain),
            matrix: self.0.matrix.clone(),
            verified: true,
        })
    }

    pub fn inverse(&self) -> IsoWitness {
        let inv = linalg::inverse_unimodular(&self.0.matrix).expect("unimodular matrix");
        IsoWitness(RingMap {
            source: self.0.target.clone(),
            target: self.0.source.clone(),
            matrix: inv,
            verified: true,
        })
    }
}
