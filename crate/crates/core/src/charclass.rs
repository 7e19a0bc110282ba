//! Characteristic classes of the tangent bundle of a tower.
//!
//! Generators follow the sign convention `y = -c_1(tautological line)`, so
//! the tangent bundle along the fibers of a stage `P(C ⊕ ξ)` has total Chern
//! class `∏_α (1 + y + u_α)` with `u_0 = 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::json::SerializedTerm;
use crate::linalg;
use crate::ring::{BottRing, CohomologyClass, ExponentVector, IsoWitness, Polynomial};
use crate::tower::TowerSpec;
use crate::{Domain, Error, Result, Scalar};

/// Per-stage affine forms `y_i + u_{i,α}` over the ring's generators.
fn stage_forms(ring: &BottRing) -> Vec<Vec<BigInt>> {
    let m = ring.height();
    let mut out = Vec::new();
    for (i, stage) in ring.tower().stages().iter().enumerate() {
        for u in stage.full_rows() {
            let mut form = vec![BigInt::zero(); m];
            form[..u.len()].clone_from_slice(&u);
            form[i] += 1;
            out.push(form);
        }
    }
    out
}

/// Total Chern class of the tangent bundle, over the integers.
pub fn tangent_chern(tower: &TowerSpec) -> CohomologyClass {
    tangent_chern_in(&BottRing::new(tower, Domain::Integer))
}

/// Total Chern class of the tangent bundle computed in `ring`.
pub fn tangent_chern_in(ring: &BottRing) -> CohomologyClass {
    let factors: Vec<(BigInt, Vec<BigInt>)> = stage_forms(ring)
        .into_iter()
        .map(|f| (BigInt::one(), f))
        .collect();
    ring.product_of_affine_forms(&factors)
}

/// Total Pontrjagin class `∏_i ∏_α (1 + (y_i + u_{i,α})^2)`, over the integers.
pub fn tangent_pontrjagin(tower: &TowerSpec) -> CohomologyClass {
    tangent_pontrjagin_in(&BottRing::new(tower, Domain::Integer))
}

pub fn tangent_pontrjagin_in(ring: &BottRing) -> CohomologyClass {
    let mut acc = ring.one();
    for form in stage_forms(ring) {
        let l = ring.linear(&form);
        let factor = &ring.one() + &ring.mul_unchecked(&l, &l);
        acc = ring.mul_unchecked(&acc, &factor);
    }
    acc
}

/// `c(2b - ac) y_1 y_2` in the ring of the three-stage Bott tower `(a, b, c)`.
pub fn p1_b3(a: i64, b: i64, c: i64) -> CohomologyClass {
    let ring = BottRing::new(&TowerSpec::bott3(a, b, c), Domain::Integer);
    let value = BigInt::from(c) * (BigInt::from(2 * b) - BigInt::from(a) * BigInt::from(c));
    ring.monomial(&ExponentVector::new(vec![1, 1, 0]))
        .expect("y1 y2 is a basis monomial")
        .scale(&Scalar::from_integer(value))
}

fn require_mod2(ring: &BottRing) -> Result<()> {
    match ring.domain() {
        Domain::Modular(2) => Ok(()),
        other => Err(Error::WrongDomain {
            expected: Domain::Modular(2).to_string(),
            found: other.to_string(),
        }),
    }
}

/// The total Steenrod square, the ring endomorphism of `H^*(;Z/2)` with
/// `Sq(y_i) = y_i + y_i^2`.
pub fn steenrod_square(class: &CohomologyClass) -> Result<CohomologyClass> {
    let ring = class.ring();
    require_mod2(ring)?;
    let m = ring.height();
    let mut p = Polynomial::zero(m);
    for (e, c) in class.terms() {
        // Sq(y^e) = y^e ∏_i (1 + y_i)^{e_i}; C(e, k) is odd iff k ⊆ e bitwise
        let mut partial: Vec<Vec<u32>> = vec![e.as_slice().to_vec()];
        for (i, &ei) in e.as_slice().iter().enumerate() {
            let mut next = Vec::new();
            for base in &partial {
                for k in (0..=ei).filter(|k| k & !ei == 0) {
                    let mut x = base.clone();
                    x[i] += k;
                    next.push(x);
                }
            }
            partial = next;
        }
        for x in partial {
            p.add_term(ExponentVector::new(x), c.clone());
        }
    }
    ring.normal_form(&p)
}

/// `Sq^k` of a class (`k` in real degrees). Odd squares vanish here since
/// all cohomology is in even degrees.
pub fn steenrod_component(class: &CohomologyClass, k: usize) -> Result<CohomologyClass> {
    let ring = class.ring();
    require_mod2(ring)?;
    if k % 2 == 1 {
        return Ok(ring.zero());
    }
    let j = k / 2;
    let mut acc = ring.zero();
    for d in class.degrees() {
        let sq = steenrod_square(&class.homogeneous_part(d))?;
        acc = &acc + &sq.homogeneous_part(d + j);
    }
    Ok(acc)
}

/// Total Wu class of `tower` over `Z/2`.
pub fn wu_classes(tower: &TowerSpec) -> Result<CohomologyClass> {
    wu_classes_in(&BottRing::new(tower, Domain::Modular(2)))
}

/// Solves `<v_{2j} · x, [M]> = <Sq^{2j} x, [M]>` degree by degree.
pub fn wu_classes_in(ring: &BottRing) -> Result<CohomologyClass> {
    require_mod2(ring)?;
    let n = ring.top_degree();
    let odd = |s: &Scalar| !s.is_zero();
    let mut v = ring.one();
    for j in 1..=n / 2 {
        let unknowns = ring.basis_in_degree(j).to_vec();
        let tests = ring.basis_in_degree(n - j).to_vec();
        let mut pairing = Vec::with_capacity(tests.len());
        let mut rhs = Vec::with_capacity(tests.len());
        for x in &tests {
            let xc = ring.monomial(x).expect("basis monomial");
            let row = unknowns
                .iter()
                .map(|b| {
                    let bc = ring.monomial(b).expect("basis monomial");
                    ring.integrate(&ring.mul_unchecked(&bc, &xc)).map(|s| odd(&s))
                })
                .collect::<Result<Vec<bool>>>()?;
            pairing.push(row);
            rhs.push(odd(&ring.integrate(&steenrod_component(&xc, 2 * j)?)?));
        }
        let sol = linalg::solve_mod2(&pairing, &rhs)
            .ok_or_else(|| Error::Internal(format!("Poincaré pairing singular in degree {}", 2 * j)))?;
        let vj = ring.from_terms(
            unknowns
                .iter()
                .zip(sol)
                .filter(|(_, s)| *s)
                .map(|(b, _)| (ring.basis_index(b).expect("basis monomial"), Scalar::one())),
        );
        v = &v + &vj;
    }
    Ok(v)
}

/// Total Stiefel–Whitney class `w = Sq(v)` over `Z/2`.
pub fn stiefel_whitney(tower: &TowerSpec) -> Result<CohomologyClass> {
    steenrod_square(&wu_classes(tower)?)
}

pub fn stiefel_whitney_in(ring: &BottRing) -> Result<CohomologyClass> {
    steenrod_square(&wu_classes_in(ring)?)
}

/// Whether `iso` carries the Pontrjagin class of its source tower to that of
/// its target. The matrix must map each `H^2(B'_j)` into `H^2(B_j)`.
pub fn verify_pontrjagin_preservation(iso: &IsoWitness) -> Result<bool> {
    if let Some(stage) = iso.map().first_unfiltered_stage() {
        return Err(Error::NotFiltered { stage });
    }
    let image = iso.apply(&tangent_pontrjagin_in(iso.source()))?;
    Ok(image == tangent_pontrjagin_in(iso.target()))
}

/// Whether `iso`, reduced mod 2, carries `w` of its source to `w` of its
/// target.
pub fn preserves_stiefel_whitney(iso: &IsoWitness) -> Result<bool> {
    let iso2 = iso.with_domain(Domain::Modular(2));
    let image = iso2.apply(&stiefel_whitney_in(iso2.source())?)?;
    Ok(image == stiefel_whitney_in(iso2.target())?)
}

/// Characteristic classes of one tower.
#[derive(Clone, Debug)]
pub struct CharClassReport {
    pub total_chern: CohomologyClass,
    pub total_pontrjagin: CohomologyClass,
    pub wu: CohomologyClass,
    pub stiefel_whitney: CohomologyClass,
}

/// Serialized form of a [`CharClassReport`].
#[derive(Clone, Debug, Serialize)]
pub struct CharClassJson {
    pub chern: Vec<SerializedTerm>,
    pub pontrjagin: Vec<SerializedTerm>,
    pub wu: Vec<SerializedTerm>,
    pub stiefel_whitney: Vec<SerializedTerm>,
}

impl CharClassReport {
    pub fn compute(tower: &TowerSpec) -> Result<CharClassReport> {
        let ring = BottRing::new(tower, Domain::Integer);
        let wu = wu_classes(tower)?;
        Ok(CharClassReport {
            total_chern: tangent_chern_in(&ring),
            total_pontrjagin: tangent_pontrjagin_in(&ring),
            stiefel_whitney: steenrod_square(&wu)?,
            wu,
        })
    }

    pub fn to_serialized(&self) -> CharClassJson {
        CharClassJson {
            chern: self.total_chern.to_serialized(),
            pontrjagin: self.total_pontrjagin.to_serialized(),
            wu: self.wu.to_serialized(),
            stiefel_whitney: self.stiefel_whitney.to_serialized(),
        }
    }

    /// Graded components of a total class, keyed by real degree.
    pub fn components(class: &CohomologyClass) -> BTreeMap<usize, CohomologyClass> {
        class
            .degrees()
            .into_iter()
            .map(|d| (2 * d, class.homogeneous_part(d)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::product_tower;

    fn z2(t: &TowerSpec) -> BottRing {
        BottRing::new(t, Domain::Modular(2))
    }

    fn int_ring(t: &TowerSpec) -> BottRing {
        BottRing::new(t, Domain::Integer)
    }

    fn lin(r: &BottRing, v: &[i64]) -> CohomologyClass {
        r.linear(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    fn mono(r: &BottRing, e: &[u32]) -> CohomologyClass {
        r.monomial(&ExponentVector::new(e.to_vec())).unwrap()
    }

    #[test]
    fn chern_examples() {
        let cp2 = product_tower(&[2]).unwrap();
        let r = int_ring(&cp2);
        let c = tangent_chern(&cp2);
        assert_eq!(c, &(&r.one() + &lin(&r, &[3])) + &mono(&r, &[2]).scale(&Scalar::from_integer(3.into())));

        for a in -2..=3 {
            let t = TowerSpec::hirzebruch(a);
            let r = int_ring(&t);
            let one = r.one();
            let f1 = &one + &r.generator(0);
            let f2 = &one + &r.generator(1);
            let f3 = &one + &lin(&r, &[a, 1]);
            assert_eq!(tangent_chern(&t), &(&(&f1 * &f1) * &f2) * &f3);
        }

        let t = product_tower(&[1, 1]).unwrap();
        let r = int_ring(&t);
        let a = &r.one() + &r.generator(0);
        let b = &r.one() + &r.generator(1);
        assert_eq!(tangent_chern(&t), &(&(&a * &a) * &b) * &b);
    }

    #[test]
    fn pontrjagin_examples() {
        for a in -4..=4 {
            assert!(tangent_pontrjagin(&TowerSpec::hirzebruch(a)).is_one());
        }
        assert!(tangent_pontrjagin(&product_tower(&[1, 1, 1]).unwrap()).is_one());
        for (a, b, c) in [(0, 1, 1), (1, 1, 1), (3, -2, 4), (2, 5, 0)] {
            let p = tangent_pontrjagin(&TowerSpec::bott3(a, b, c));
            let expected = &p.ring().one() + &p1_b3(a, b, c);
            assert_eq!(p, expected);
        }
        assert_eq!(
            p1_b3(0, 1, 1),
            mono(&int_ring(&TowerSpec::bott3(0, 1, 1)), &[1, 1, 0]).scale(&Scalar::from_integer(2.into()))
        );
        assert!(p1_b3(3, -1, 0).is_zero());
    }

    #[test]
    fn steenrod_examples() {
        let cp2 = z2(&product_tower(&[2]).unwrap());
        assert!(steenrod_square(&cp2.one()).unwrap().is_one());
        let y = cp2.generator(0);
        assert_eq!(steenrod_square(&y).unwrap(), &y + &mono(&cp2, &[2]));
        assert_eq!(steenrod_square(&mono(&cp2, &[2])).unwrap(), mono(&cp2, &[2]));
        assert_eq!(steenrod_component(&y, 2).unwrap(), mono(&cp2, &[2]));
        assert!(steenrod_component(&y, 1).unwrap().is_zero());
        let zr = int_ring(&product_tower(&[2]).unwrap());
        assert!(matches!(steenrod_square(&zr.one()), Err(Error::WrongDomain { .. })));
    }

    #[test]
    fn wu_and_stiefel_whitney_examples() {
        let cp2 = product_tower(&[2]).unwrap();
        let r = z2(&cp2);
        assert_eq!(wu_classes(&cp2).unwrap(), &r.one() + &r.generator(0));
        assert_eq!(
            stiefel_whitney(&cp2).unwrap(),
            &(&r.one() + &r.generator(0)) + &mono(&r, &[2])
        );
        let cp1 = product_tower(&[1]).unwrap();
        assert!(wu_classes(&cp1).unwrap().is_one());
        assert!(stiefel_whitney(&cp1).unwrap().is_one());
        assert!(wu_classes(&product_tower(&[1, 1]).unwrap()).unwrap().is_one());

        for a in -3..=3 {
            let t = TowerSpec::hirzebruch(a);
            let r = z2(&t);
            let w = stiefel_whitney(&t).unwrap();
            assert_eq!(w, tangent_chern(&t).change_ring(&r).unwrap());
            let expected = if a % 2 == 0 { r.one() } else { &r.one() + &r.generator(0) };
            assert_eq!(w, expected);
        }
    }

    #[test]
    fn pontrjagin_preservation() {
        let t = product_tower(&[1, 1]).unwrap();
        let r = int_ring(&t);
        let id = IsoWitness::verify(&r, &r, crate::tower::identity_matrix(2)).unwrap();
        assert!(verify_pontrjagin_preservation(&id).unwrap());

        let (a, b, c) = (2, 1, -3);
        let src = int_ring(&TowerSpec::bott3(a, -b, -c));
        let tgt = int_ring(&TowerSpec::bott3(a, b, c));
        let m = vec![
            vec![1.into(), 0.into(), 0.into()],
            vec![0.into(), 1.into(), 0.into()],
            vec![BigInt::from(b), BigInt::from(c), 1.into()],
        ];
        let w = IsoWitness::verify(&src, &tgt, m).unwrap();
        assert!(verify_pontrjagin_preservation(&w).unwrap());
        assert!(preserves_stiefel_whitney(&w).unwrap());

        let h1 = int_ring(&TowerSpec::hirzebruch(1));
        let h3 = int_ring(&TowerSpec::hirzebruch(3));
        let m = vec![vec![1.into(), 2.into()], vec![(-1).into(), (-3).into()]];
        let w = IsoWitness::verify(&h3, &h1, m).unwrap();
        assert_eq!(verify_pontrjagin_preservation(&w), Err(Error::NotFiltered { stage: 1 }));
        let p = w.apply(&tangent_pontrjagin_in(&h3)).unwrap();
        assert_eq!(p, tangent_pontrjagin_in(&h1));
        assert!(p.is_one());
        assert!(preserves_stiefel_whitney(&w).unwrap());

        // a filtered witness for the same pair: y'_1 ↦ y_1, y'_2 ↦ y_2 - y_1
        let m = vec![vec![1.into(), 0.into()], vec![(-1).into(), 1.into()]];
        let w = IsoWitness::verify(&h3, &h1, m).unwrap();
        assert!(verify_pontrjagin_preservation(&w).unwrap());
    }
}
