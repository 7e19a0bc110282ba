use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::json::SerializedTerm;
use crate::scalar::format_scalar;
use crate::Scalar;

/// Exponents `(e_1, ..., e_m)` of the monomial `y_1^{e_1} ⋯ y_m^{e_m}`.
///
/// Ordered by degree first, then lexicographically with `y_1 > y_2 > ...`
/// (so `y_1` sorts before `y_2`, and `y_1 y_2` before `y_2^2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(m: usize) -> Self {
        ExponentVector(vec![0; m])
    }

    /// The generator `y_{i+1}` (0-based index).
    pub fn unit(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        ExponentVector(e)
    }

    /// Complex degree `Σ e_i`; the cohomological degree is twice this.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn fits(&self, dims: &[usize]) -> bool {
        self.0.iter().zip(dims).all(|(&e, &n)| e as usize <= n)
    }

    pub(crate) fn add(&self, other: &[u32]) -> ExponentVector {
        ExponentVector(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "y{}", i + 1)?;
            } else {
                write!(f, "y{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A formal polynomial in `y_1, ..., y_m` with unrestricted exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExponentVector::zero(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// The generator `y_{i+1}`.
    pub fn generator(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExponentVector::unit(nvars, i), Scalar::one());
        p
    }

    /// `Σ_j coeffs[j] y_{j+1}`; `coeffs` may be shorter than `nvars`.
    pub fn linear(nvars: usize, coeffs: &[BigInt]) -> Self {
        let mut p = Self::zero(nvars);
        for (j, c) in coeffs.iter().enumerate() {
            p.add_term(ExponentVector::unit(nvars, j), Scalar::from_integer(c.clone()));
        }
        p
    }

    pub fn monomial(exponents: Vec<u32>, c: Scalar) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(ExponentVector(exponents), c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(ExponentVector(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `{"exponents": [...], "coeff": "..."}` in graded-lex order.
    pub fn to_serialized(&self) -> Vec<SerializedTerm> {
        self.terms
            .iter()
            .map(|(e, c)| SerializedTerm {
                exponents: e.0.clone(),
                coeff: format_scalar(c),
            })
            .collect()
    }

    pub fn add_term(&mut self, e: ExponentVector, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    /// Largest exponent of each variable appearing in the polynomial.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut m = vec![0; self.nvars];
        for e in self.terms.keys() {
            for (acc, &x) in m.iter_mut().zip(e.as_slice()) {
                *acc = (*acc).max(x);
            }
        }
        m
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                p.add_term(e1.add(e2.as_slice()), c1 * c2);
            }
        }
        p
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}

pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a ExponentVector, &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let (neg, abs) = if c < &Scalar::zero() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let coeff = crate::scalar::format_scalar(&abs);
        if e.degree() == 0 {
            write!(f, "{coeff}")?;
        } else if abs.is_one() {
            write!(f, "{e}")?;
        } else {
            write!(f, "{coeff} {e}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
