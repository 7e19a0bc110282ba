//! The cohomology ring of a generalized Bott tower.
//!
//! `H*(B_m) = Z[y_1, ..., y_m] / (f_1, ..., f_m)` with
//! `f_i = ∏_{α=0}^{n_i} (y_i + u_{i,α}) = y_i^{n_i+1} + Σ_q c_q(ξ_i) y_i^{n_i+1-q}`.
//! Each `f_i` is monic in `y_i` with coefficients in the lower variables, so
//! the monomials with `e_i ≤ n_i` form a basis and the rewriting
//! `y_i^{n_i+1} ↦ -Σ_q c_q(ξ_i) y_i^{n_i+1-q}` computes normal forms.
//! Only even degrees exist; degree `d` below always means cohomological
//! degree `2d`.

mod class;
mod kernel;
mod map;
mod monomial;

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::tower::TowerSpec;
use crate::{Domain, Error, Result, Scalar};

pub use class::CohomologyClass;
pub use map::{IsoWitness, MapFailure, RingMap};
pub use monomial::{ExponentVector, Polynomial};

use kernel::Kernel;

/// Integer combination of basis monomials, sorted by basis index.
type IntTerms = Arc<[(usize, BigInt)]>;

/// The cohomology ring of a tower over a chosen coefficient domain.
///
/// Cheap to clone; all clones share the relation table and the normal-form
/// cache.
#[derive(Clone)]
pub struct BottRing {
    inner: Arc<RingData>,
}

struct RingData {
    tower: TowerSpec,
    dims: Vec<usize>,
    domain: Domain,
    top: usize,
    /// `chern[i][q - 1]` is `c_q(ξ_{i+1})` over the integers.
    chern: Vec<Vec<IntTerms>>,
    basis: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    /// Basis monomials of degree `d` occupy `degree_start[d]..degree_start[d + 1]`.
    degree_start: Vec<usize>,
    nf_cache: RwLock<HashMap<Vec<u32>, IntTerms>>,
    kernel: OnceLock<Option<Kernel>>,
    tag: u64,
}

impl std::fmt::Debug for BottRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BottRing")
            .field("dims", &self.inner.dims)
            .field("domain", &self.inner.domain)
            .field("tag", &self.inner.tag)
            .finish()
    }
}

impl PartialEq for BottRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.tag == other.inner.tag
                && self.inner.domain == other.inner.domain
                && self.inner.tower == other.inner.tower)
    }
}

impl Eq for BottRing {}

impl BottRing {
    /// Builds the ring of `tower`; the relation coefficients `c_q(ξ_i)` are
    /// the elementary symmetric functions of the stage's summand classes.
    pub fn new(tower: &TowerSpec, domain: Domain) -> BottRing {
        let dims = tower.dims();
        let m = dims.len();
        let top: usize = dims.iter().sum();

        let mut basis = Vec::new();
        let mut e = vec![0u32; m];
        loop {
            basis.push(ExponentVector::new(e.clone()));
            // odometer over the box Π [0, n_i]
            let mut i = 0;
            while i < m && e[i] as usize == dims[i] {
                e[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            e[i] += 1;
        }
        basis.sort();
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut degree_start = vec![0; top + 2];
        for e in &basis {
            degree_start[e.degree() + 1] += 1;
        }
        for d in 1..degree_start.len() {
            degree_start[d] += degree_start[d - 1];
        }

        let mut hasher = DefaultHasher::new();
        tower.hash(&mut hasher);
        domain.hash(&mut hasher);

        let mut data = RingData {
            tower: tower.clone(),
            dims,
            domain,
            top,
            chern: Vec::with_capacity(m),
            basis,
            index,
            degree_start,
            nf_cache: RwLock::new(HashMap::new()),
            kernel: OnceLock::new(),
            tag: hasher.finish(),
        };
        for stage in tower.stages() {
            // ∏_α (1 + u_α) over the stages built so far
            let mut total: BTreeMap<usize, BigInt> = BTreeMap::new();
            total.insert(data.index[&ExponentVector::zero(m)], BigInt::one());
            for row in stage.rows() {
                let mut next = total.clone();
                for (&b, c) in &total {
                    for (j, u) in row.iter().enumerate() {
                        if u.is_zero() {
                            continue;
                        }
                        let mut ex = data.basis[b].as_slice().to_vec();
                        ex[j] += 1;
                        for (t, k) in data.nf_int(&ex).iter() {
                            *next.entry(*t).or_insert_with(BigInt::zero) += c * u * k;
                        }
                    }
                }
                next.retain(|_, v| !v.is_zero());
                total = next;
            }
            let mut by_degree = vec![Vec::new(); stage.fiber_dim()];
            for (b, c) in total {
                let d = data.basis[b].degree();
                if d >= 1 {
                    by_degree[d - 1].push((b, c));
                }
            }
            data.chern
                .push(by_degree.into_iter().map(IntTerms::from).collect());
        }
        BottRing {
            inner: Arc::new(data),
        }
    }

    /// The same tower over another coefficient domain.
    pub fn with_domain(&self, domain: Domain) -> BottRing {
        if domain == self.inner.domain {
            return self.clone();
        }
        BottRing::new(&self.inner.tower, domain)
    }

    pub fn tower(&self) -> &TowerSpec {
        &self.inner.tower
    }

    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    pub fn height(&self) -> usize {
        self.inner.dims.len()
    }

    pub fn domain(&self) -> Domain {
        self.inner.domain
    }

    /// Complex dimension `Σ n_i` (the degree of the top class).
    pub fn top_degree(&self) -> usize {
        self.inner.top
    }

    /// Identity tag derived from the tower data and domain.
    pub fn tag(&self) -> u64 {
        self.inner.tag
    }

    /// Basis monomials in graded-lex order.
    pub fn basis(&self) -> &[ExponentVector] {
        &self.inner.basis
    }

    pub fn basis_in_degree(&self, d: usize) -> &[ExponentVector] {
        &self.inner.basis[self.degree_range(d)]
    }

    pub(crate) fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d > self.inner.top {
            let n = self.inner.basis.len();
            return n..n;
        }
        self.inner.degree_start[d]..self.inner.degree_start[d + 1]
    }

    pub fn basis_index(&self, e: &ExponentVector) -> Option<usize> {
        self.inner.index.get(e).copied()
    }

    /// Rank of the degree-`2d` part.
    pub fn graded_rank(&self, d: usize) -> usize {
        self.degree_range(d).len()
    }

    pub fn graded_ranks(&self) -> Vec<usize> {
        (0..=self.inner.top).map(|d| self.graded_rank(d)).collect()
    }

    /// `c_q(ξ_i)` for 1-based stage `i` and `1 ≤ q ≤ n_i`.
    pub fn stage_chern_class(&self, stage: usize, q: usize) -> CohomologyClass {
        let terms = &self.inner.chern[stage - 1][q - 1];
        self.from_int_terms(terms.iter().map(|(b, c)| (*b, c.clone())))
    }

    /// The defining relation `f_i` (1-based) as a formal polynomial.
    pub fn relation(&self, stage: usize) -> Polynomial {
        let m = self.height();
        let s = self.inner.tower.stage(stage);
        let mut f = Polynomial::one(m);
        for row in s.full_rows() {
            let factor = &Polynomial::generator(m, stage - 1) + &Polynomial::linear(m, &row);
            f = &f * &factor;
        }
        f
    }

    pub fn zero(&self) -> CohomologyClass {
        CohomologyClass::new(self.clone(), BTreeMap::new())
    }

    pub fn one(&self) -> CohomologyClass {
        self.constant(Scalar::one())
    }

    pub fn constant(&self, c: Scalar) -> CohomologyClass {
        self.from_terms([(0usize, c)])
    }

    /// The generator `y_{i+1}` (0-based index).
    pub fn generator(&self, i: usize) -> CohomologyClass {
        self.monomial(&ExponentVector::unit(self.height(), i))
            .expect("generators are basis monomials")
    }

    /// The basis monomial `y^e`, if `e` is within bounds.
    pub fn monomial(&self, e: &ExponentVector) -> Option<CohomologyClass> {
        let b = self.basis_index(e)?;
        Some(self.from_terms([(b, Scalar::one())]))
    }

    /// `Σ_j coeffs[j] y_{j+1}`.
    pub fn linear(&self, coeffs: &[BigInt]) -> CohomologyClass {
        let m = self.height();
        self.from_terms(coeffs.iter().enumerate().map(|(j, c)| {
            (
                self.inner.index[&ExponentVector::unit(m, j)],
                Scalar::from_integer(c.clone()),
            )
        }))
    }

    pub(crate) fn from_terms(&self, terms: impl IntoIterator<Item = (usize, Scalar)>) -> CohomologyClass {
        let domain = self.inner.domain;
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (b, c) in terms {
            *map.entry(b).or_insert_with(Scalar::zero) += c;
        }
        let map = map
            .into_iter()
            .map(|(b, c)| (b, domain.reduce(c)))
            .filter(|(_, c)| !domain.is_zero(c))
            .collect();
        CohomologyClass::new(self.clone(), map)
    }

    pub(crate) fn from_int_terms(&self, terms: impl IntoIterator<Item = (usize, BigInt)>) -> CohomologyClass {
        self.from_terms(terms.into_iter().map(|(b, c)| (b, Scalar::from_integer(c))))
    }

    /// Normal form of a formal polynomial.
    pub fn normal_form(&self, p: &Polynomial) -> Result<CohomologyClass> {
        if p.nvars() != self.height() {
            return Err(Error::RingMismatch);
        }
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (e, c) in p.terms() {
            for (b, k) in self.inner.nf_int(e.as_slice()).iter() {
                *acc.entry(*b).or_insert_with(Scalar::zero) += c * Scalar::from_integer(k.clone());
            }
        }
        Ok(self.from_terms(acc))
    }

    /// Normal form computed by plain rewriting, where `choose` picks which
    /// out-of-bounds variable of a monomial to rewrite next (it receives the
    /// exponents and the candidate variable indices). Used to check that the
    /// result does not depend on the reduction order.
    pub fn reduce_with<F>(&self, p: &Polynomial, mut choose: F) -> Result<CohomologyClass>
    where
        F: FnMut(&[u32], &[usize]) -> usize,
    {
        if p.nvars() != self.height() {
            return Err(Error::RingMismatch);
        }
        let dims = &self.inner.dims;
        let mut work = p.clone();
        loop {
            let pending = work
                .terms()
                .find(|(e, _)| !e.fits(dims))
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = pending else { break };
            let over: Vec<usize> = (0..dims.len())
                .filter(|&i| e.as_slice()[i] as usize > dims[i])
                .collect();
            let i = choose(e.as_slice(), &over);
            assert!(over.contains(&i), "chosen variable is not out of bounds");
            work.add_term(e.clone(), -c.clone());
            for (q, cq) in self.inner.chern[i].iter().enumerate() {
                let q = q + 1;
                for (t, k) in cq.iter() {
                    let mut ex = e.as_slice().to_vec();
                    ex[i] -= q as u32;
                    let ex = ExponentVector::new(ex).add(self.inner.basis[*t].as_slice());
                    work.add_term(ex, -(&c * Scalar::from_integer(k.clone())));
                }
            }
        }
        let terms: Vec<(usize, Scalar)> = work
            .terms()
            .map(|(e, c)| (self.inner.index.get(e).copied(), c.clone()))
            .filter_map(|(b, c)| b.map(|b| (b, c)))
            .collect();
        Ok(self.from_terms(terms))
    }

    fn check(&self, u: &CohomologyClass) -> Result<()> {
        if u.ring() == self {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn multiply(&self, u: &CohomologyClass, v: &CohomologyClass) -> Result<CohomologyClass> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    pub(crate) fn mul_unchecked(&self, u: &CohomologyClass, v: &CohomologyClass) -> CohomologyClass {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (&a, ca) in u.coeffs() {
            for (&b, cb) in v.coeffs() {
                let ea = &self.inner.basis[a];
                let eb = &self.inner.basis[b];
                if ea.degree() + eb.degree() > self.inner.top {
                    continue;
                }
                let prod = ca * cb;
                let ex = ea.add(eb.as_slice());
                for (t, k) in self.inner.nf_int(ex.as_slice()).iter() {
                    *acc.entry(*t).or_insert_with(Scalar::zero) += &prod * Scalar::from_integer(k.clone());
                }
            }
        }
        self.from_terms(acc)
    }

    pub fn power(&self, u: &CohomologyClass, k: u32) -> Result<CohomologyClass> {
        self.check(u)?;
        let mut acc = self.one();
        let mut base = u.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Evaluation on the fundamental class: the coefficient of the top
    /// monomial `y_1^{n_1} ⋯ y_m^{n_m}`.
    pub fn integrate(&self, u: &CohomologyClass) -> Result<Scalar> {
        self.check(u)?;
        let top = self.inner.basis.len() - 1;
        Ok(u.coeffs().get(&top).cloned().unwrap_or_else(Scalar::zero))
    }

    fn kernel(&self) -> Option<&Kernel> {
        self.inner
            .kernel
            .get_or_init(|| Kernel::build(self))
            .as_ref()
    }

    /// Product of affine forms `c + Σ_j l_j y_j`.
    pub fn product_of_affine_forms(&self, factors: &[(BigInt, Vec<BigInt>)]) -> CohomologyClass {
        if let Some(v) = self.kernel().and_then(|k| k.affine_product(factors)) {
            return self.from_terms(
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(b, c)| (b, Scalar::from_integer(BigInt::from(c)))),
            );
        }
        let mut acc = self.one();
        for (c, l) in factors {
            let f = &self.constant(Scalar::from_integer(c.clone())) + &self.linear(l);
            acc = self.mul_unchecked(&acc, &f);
        }
        acc
    }

    /// Whether the product of the linear forms `Σ_j l_j y_j` vanishes.
    pub fn linear_product_vanishes(&self, forms: &[Vec<BigInt>]) -> bool {
        if let Some(k) = self.kernel() {
            if let Some(zero) = k.linear_product_vanishes(forms, self.inner.domain) {
                return zero;
            }
        }
        let mut acc = self.one();
        for l in forms {
            acc = self.mul_unchecked(&acc, &self.linear(l));
            if acc.is_zero() {
                return true;
            }
        }
        acc.is_zero()
    }

    /// All degree-2 classes `Σ b_j y_j` with `|b_j| ≤ bound`, not all zero,
    /// whose `k`-th power vanishes. Coefficient vectors are listed in
    /// lexicographic order.
    pub fn square_zero_vectors(&self, k: u32, bound: u32) -> Vec<Vec<BigInt>> {
        self.square_zero_vectors_where(k, bound, |_| true)
    }

    /// [`square_zero_vectors`](Self::square_zero_vectors) restricted to
    /// vectors accepted by `filter` (checked before the power is computed).
    pub fn square_zero_vectors_where<F>(&self, k: u32, bound: u32, filter: F) -> Vec<Vec<BigInt>>
    where
        F: Fn(&[i64]) -> bool + Sync,
    {
        let m = self.height();
        let b = bound as i64;
        let side = (2 * b + 1) as usize;
        let total = side.checked_pow(m as u32).expect("search space too large");
        (0..total)
            .into_par_iter()
            .filter_map(|mut idx| {
                let mut v = vec![0i64; m];
                for slot in v.iter_mut().rev() {
                    *slot = (idx % side) as i64 - b;
                    idx /= side;
                }
                if v.iter().all(|&x| x == 0) || !filter(&v) {
                    return None;
                }
                let form: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                let forms = vec![form.clone(); k as usize];
                self.linear_product_vanishes(&forms).then_some(form)
            })
            .collect()
    }

    pub fn square_zero_elements(&self, k: u32, bound: u32) -> Vec<CohomologyClass> {
        self.square_zero_vectors(k, bound)
            .iter()
            .map(|v| self.linear(v))
            .collect()
    }
}

impl RingData {
    /// Integral normal form of `y^e`.
    fn nf_int(&self, e: &[u32]) -> IntTerms {
        let degree: usize = e.iter().map(|&x| x as usize).sum();
        if degree > self.top {
            return IntTerms::from(Vec::new());
        }
        let over = (0..e.len()).rev().find(|&i| e[i] as usize > self.dims[i]);
        let Some(i) = over else {
            let b = self.index[&ExponentVector::new(e.to_vec())];
            return IntTerms::from(vec![(b, BigInt::one())]);
        };
        if let Some(hit) = self.nf_cache.read().expect("cache lock").get(e) {
            return hit.clone();
        }
        // y_i^{n_i+1} = -Σ_q c_q(ξ_i) y_i^{n_i+1-q}; this raises only lower variables
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (q, cq) in self.chern[i].iter().enumerate() {
            let q = q as u32 + 1;
            for (t, k) in cq.iter() {
                let mut ex = e.to_vec();
                ex[i] -= q;
                for (x, y) in ex.iter_mut().zip(self.basis[*t].as_slice()) {
                    *x += y;
                }
                for (b, c) in self.nf_int(&ex).iter() {
                    *acc.entry(*b).or_insert_with(BigInt::zero) -= k * c;
                }
            }
        }
        let terms: IntTerms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.nf_cache
            .write()
            .expect("cache lock")
            .insert(e.to_vec(), terms.clone());
        terms
    }
}

pub(crate) fn to_i128_vec(v: &[BigInt]) -> Option<Vec<i128>> {
    v.iter().map(ToPrimitive::to_i128).collect()
}
