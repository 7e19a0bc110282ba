//! Combinatorial data of generalized Bott towers.
//!
//! Stage `i` of a tower is `P(C ⊕ ξ_i)` where `ξ_i` is a sum of `n_i` line
//! bundles over the previous stage. Each nontrivial summand is recorded by
//! its first Chern class in the basis `y_1, ..., y_{i-1}`, so stage `i`
//! carries an `n_i × (i-1)` integer matrix. The trivial summand is implicit.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::json::{from_json_matrix, to_json_matrix, JsonInt, RawBundle, RawStage, RawTower};
use crate::{Error, Result};

/// One stage of a tower, in normalized form (trivial 0-th summand).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StageSpec {
    fiber_dim: usize,
    summand_exponents: Vec<Vec<BigInt>>,
}

impl StageSpec {
    /// Builds a stage from its nontrivial summand rows. All rows must have
    /// the same length; the number of rows is the fiber dimension.
    pub fn new(summand_exponents: Vec<Vec<BigInt>>) -> Result<StageSpec> {
        if summand_exponents.is_empty() {
            return Err(Error::EmptySummands);
        }
        let cols = summand_exponents[0].len();
        if summand_exponents.iter().any(|r| r.len() != cols) {
            return Err(Error::RaggedRows);
        }
        Ok(StageSpec {
            fiber_dim: summand_exponents.len(),
            summand_exponents,
        })
    }

    /// A stage over a base with `columns` generators whose bundle is trivial.
    pub fn trivial(fiber_dim: usize, columns: usize) -> StageSpec {
        assert!(fiber_dim >= 1, "fiber dimension must be positive");
        StageSpec {
            fiber_dim,
            summand_exponents: vec![vec![BigInt::zero(); columns]; fiber_dim],
        }
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn columns(&self) -> usize {
        self.summand_exponents.first().map_or(0, Vec::len)
    }

    /// The nontrivial summand rows `u_{i,1}, ..., u_{i,n_i}`.
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.summand_exponents
    }

    /// All `n_i + 1` summand rows, starting with the zero row.
    pub fn full_rows(&self) -> Vec<Vec<BigInt>> {
        let mut rows = Vec::with_capacity(self.fiber_dim + 1);
        rows.push(vec![BigInt::zero(); self.columns()]);
        rows.extend(self.summand_exponents.iter().cloned());
        rows
    }

    /// First Chern class of `ξ_i`, the sum of the rows.
    pub fn first_chern(&self) -> Vec<BigInt> {
        let mut s = vec![BigInt::zero(); self.columns()];
        for row in &self.summand_exponents {
            for (acc, v) in s.iter_mut().zip(row) {
                *acc += v;
            }
        }
        s
    }

    pub fn is_trivial(&self) -> bool {
        self.summand_exponents.iter().flatten().all(Zero::is_zero)
    }
}

/// A generalized Bott tower of height `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerSpec {
    stages: Vec<StageSpec>,
}

impl TowerSpec {
    pub fn new(stages: Vec<StageSpec>) -> Result<TowerSpec> {
        if stages.is_empty() {
            return Err(Error::EmptyTower);
        }
        for (i, stage) in stages.iter().enumerate() {
            if stage.columns() != i {
                let row = stage
                    .rows()
                    .iter()
                    .position(|r| r.len() != i)
                    .unwrap_or(0);
                return Err(Error::ColumnCount {
                    stage: i + 1,
                    row: row + 1,
                    expected: i,
                    found: stage.columns(),
                });
            }
        }
        Ok(TowerSpec { stages })
    }

    /// Convenience constructor from nontrivial summand rows of each stage.
    /// Stage 1 may be given as an empty list of rows together with its
    /// dimension in `dims`.
    pub fn from_rows(dims: &[usize], rows: &[&[&[i64]]]) -> Result<TowerSpec> {
        let raw = RawTower {
            stages: dims
                .iter()
                .zip(rows)
                .map(|(&n, rs)| RawStage {
                    fiber_dim: JsonInt::from(n as i64),
                    summands: rs
                        .iter()
                        .map(|r| r.iter().map(|&v| JsonInt::from(v)).collect())
                        .collect(),
                })
                .collect(),
        };
        if dims.len() != rows.len() {
            return Err(Error::HeightMismatch {
                expected: dims.len(),
                found: rows.len(),
            });
        }
        validate_tower(&raw)
    }

    /// The Hirzebruch surface `P(C ⊕ γ^a)` over `CP^1`.
    pub fn hirzebruch(a: i64) -> TowerSpec {
        Self::two_stage(1, &[a])
    }

    /// A height-2 tower over `CP^{n1}` whose second stage has summand
    /// exponents `u` (so its fiber is `CP^{u.len()}`).
    pub fn two_stage(n1: usize, u: &[i64]) -> TowerSpec {
        TowerSpec {
            stages: vec![
                StageSpec::trivial(n1, 0),
                StageSpec {
                    fiber_dim: u.len(),
                    summand_exponents: u.iter().map(|&v| vec![BigInt::from(v)]).collect(),
                },
            ],
        }
    }

    /// The three-stage Bott tower with `ξ_2 = γ_1^a` and `ξ_3 = γ_1^b ⊗ γ_2^c`.
    pub fn bott3(a: i64, b: i64, c: i64) -> TowerSpec {
        TowerSpec {
            stages: vec![
                StageSpec::trivial(1, 0),
                StageSpec {
                    fiber_dim: 1,
                    summand_exponents: vec![vec![a.into()]],
                },
                StageSpec {
                    fiber_dim: 1,
                    summand_exponents: vec![vec![b.into(), c.into()]],
                },
            ],
        }
    }

    pub fn height(&self) -> usize {
        self.stages.len()
    }

    pub fn stages(&self) -> &[StageSpec] {
        &self.stages
    }

    /// Stage by 1-based index.
    pub fn stage(&self, index: usize) -> &StageSpec {
        &self.stages[index - 1]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.stages.iter().map(StageSpec::fiber_dim).collect()
    }

    /// Complex dimension `Σ n_i`.
    pub fn dimension(&self) -> usize {
        self.stages.iter().map(StageSpec::fiber_dim).sum()
    }

    pub fn is_bott(&self) -> bool {
        self.stages.iter().all(|s| s.fiber_dim == 1)
    }

    /// The sub-tower `B_k` made of the first `k` stages (`k ≥ 1`).
    pub fn truncate(&self, k: usize) -> TowerSpec {
        assert!(k >= 1 && k <= self.height());
        TowerSpec {
            stages: self.stages[..k].to_vec(),
        }
    }

    /// Replaces stage `index` (1-based) keeping the rest untouched.
    pub fn with_stage(&self, index: usize, stage: StageSpec) -> Result<TowerSpec> {
        let mut stages = self.stages.clone();
        stages[index - 1] = stage;
        TowerSpec::new(stages)
    }

    pub fn to_raw(&self) -> RawTower {
        RawTower {
            stages: self
                .stages
                .iter()
                .map(|s| RawStage {
                    fiber_dim: JsonInt::from(s.fiber_dim as i64),
                    summands: to_json_matrix(&s.summand_exponents),
                })
                .collect(),
        }
    }
}

/// Checks a raw tower description against the shape invariants.
pub fn validate_tower(raw: &RawTower) -> Result<TowerSpec> {
    if raw.stages.is_empty() {
        return Err(Error::EmptyTower);
    }
    let mut stages = Vec::with_capacity(raw.stages.len());
    for (i, rs) in raw.stages.iter().enumerate() {
        let stage = i + 1;
        let n = match rs.fiber_dim.0.to_usize() {
            Some(n) if n >= 1 => n,
            _ => {
                return Err(Error::NonPositiveFiberDim {
                    stage,
                    value: rs.fiber_dim.0.to_string(),
                })
            }
        };
        let mut rows = from_json_matrix(&rs.summands);
        // stage 1 has no columns; an empty list stands for n empty rows
        if i == 0 && rows.is_empty() {
            rows = vec![Vec::new(); n];
        }
        if rows.len() != n {
            return Err(Error::RowCount {
                stage,
                expected: n,
                found: rows.len(),
            });
        }
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != i) {
            return Err(Error::ColumnCount {
                stage,
                row: r + 1,
                expected: i,
                found: row.len(),
            });
        }
        stages.push(StageSpec {
            fiber_dim: n,
            summand_exponents: rows,
        });
    }
    TowerSpec::new(stages)
}

/// Normalizes a full list of `n_i + 1` summand rows by tensoring with the
/// dual of the first summand: the first row is subtracted from every row and
/// the resulting zero row dropped.
pub fn normalize_stage(rows: &[Vec<BigInt>]) -> Result<StageSpec> {
    let (first, rest) = rows.split_first().ok_or(Error::EmptySummands)?;
    if rest.is_empty() {
        return Err(Error::EmptySummands);
    }
    if rest.iter().any(|r| r.len() != first.len()) {
        return Err(Error::RaggedRows);
    }
    StageSpec::new(rest.iter().map(|r| sub_rows(r, first)).collect())
}

/// Presents `P(E*)` for the stage `P(E)`.
///
/// All summands are negated; among the `n_i + 1` ways to re-normalize, the
/// one whose (row-sorted) matrix is lexicographically smallest is returned.
pub fn dualize_stage(stage: &StageSpec) -> StageSpec {
    dualize_with_pivot(stage).0
}

/// Like [`dualize_stage`], also returning the index (into
/// [`StageSpec::full_rows`]) of the summand whose negation was subtracted.
fn dualize_with_pivot(stage: &StageSpec) -> (StageSpec, usize) {
    let negated: Vec<Vec<BigInt>> = stage
        .full_rows()
        .iter()
        .map(|r| r.iter().map(|v| -v).collect())
        .collect();
    let mut best: Option<(Vec<Vec<BigInt>>, usize)> = None;
    for (pivot, p) in negated.iter().enumerate() {
        let mut m: Vec<Vec<BigInt>> = negated
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != pivot)
            .map(|(_, r)| sub_rows(r, p))
            .collect();
        m.sort();
        let better = match &best {
            None => true,
            Some((b, _)) => m.cmp(b) == Ordering::Less,
        };
        if better {
            best = Some((m, pivot));
        }
    }
    let (rows, pivot) = best.expect("a stage has at least two summands");
    (
        StageSpec {
            fiber_dim: stage.fiber_dim,
            summand_exponents: rows,
        },
        pivot,
    )
}

/// Replaces stage `index` (1-based) of `tower` by its dual and rewrites the
/// higher stages in the new generator.
///
/// Returns the new tower together with the degree-2 matrix `M` of the ring
/// isomorphism from the new tower's cohomology to the old one
/// (`y'_k ↦ Σ_j M[k][j] y_j`): the dualized generator goes to `-y_i - u`
/// where `u` is the Chern class of the pivot summand, all others are fixed.
pub fn dualize_stage_in(tower: &TowerSpec, index: usize) -> (TowerSpec, Vec<Vec<BigInt>>) {
    let m = tower.height();
    let i = index - 1;
    let (dual, pivot) = dualize_with_pivot(&tower.stages[i]);
    let pivot_row = tower.stages[i].full_rows()[pivot].clone();

    // y_i = -y'_i - u_pivot; substitute into every higher row
    let mut stages = tower.stages.clone();
    stages[i] = dual;
    for stage in stages.iter_mut().skip(i + 1) {
        for row in stage.summand_exponents.iter_mut() {
            let coeff = row[i].clone();
            if coeff.is_zero() {
                continue;
            }
            row[i] = -&coeff;
            for (j, u) in pivot_row.iter().enumerate() {
                row[j] -= &coeff * u;
            }
        }
    }

    let mut matrix = identity_matrix(m);
    matrix[i][i] = -BigInt::one();
    for (j, u) in pivot_row.iter().enumerate() {
        matrix[i][j] = -u;
    }
    (TowerSpec { stages }, matrix)
}

/// The tower `CP^{n_1} × ... × CP^{n_m}` (all exponents zero).
pub fn product_tower(dims: &[usize]) -> Result<TowerSpec> {
    if dims.is_empty() {
        return Err(Error::EmptyTower);
    }
    if let Some(i) = dims.iter().position(|&n| n == 0) {
        return Err(Error::NonPositiveFiberDim {
            stage: i + 1,
            value: "0".into(),
        });
    }
    TowerSpec::new(
        dims.iter()
            .enumerate()
            .map(|(i, &n)| StageSpec::trivial(n, i))
            .collect(),
    )
}

pub(crate) fn identity_matrix(m: usize) -> Vec<Vec<BigInt>> {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn sub_rows(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A Whitney sum of `n` line bundles over `CP^{n_1} × ... × CP^{n_k}`.
/// Row `i` of `exponents` is the first Chern class of the `i`-th summand in
/// the basis `x_1, ..., x_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineBundleSum {
    base_dims: Vec<usize>,
    exponents: Vec<Vec<BigInt>>,
}

impl LineBundleSum {
    pub fn new(base_dims: Vec<usize>, exponents: Vec<Vec<BigInt>>) -> Result<LineBundleSum> {
        if base_dims.is_empty() {
            return Err(Error::BundleShape("base has no factors".into()));
        }
        if base_dims.contains(&0) {
            return Err(Error::BundleShape("base dimensions must be positive".into()));
        }
        if exponents.is_empty() {
            return Err(Error::BundleShape("bundle has no summands".into()));
        }
        if let Some(r) = exponents.iter().position(|r| r.len() != base_dims.len()) {
            return Err(Error::BundleShape(format!(
                "row {} has {} entries, base has {} factors",
                r + 1,
                exponents[r].len(),
                base_dims.len()
            )));
        }
        Ok(LineBundleSum {
            base_dims,
            exponents,
        })
    }

    pub fn from_i64(base_dims: &[usize], rows: &[&[i64]]) -> Result<LineBundleSum> {
        Self::new(
            base_dims.to_vec(),
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn from_raw(raw: &RawBundle) -> Result<LineBundleSum> {
        let dims = raw
            .base_dims
            .iter()
            .map(|d| {
                d.0.to_usize()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::BundleShape(format!("invalid base dimension {}", d.0)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims, from_json_matrix(&raw.exponents))
    }

    pub fn to_raw(&self) -> RawBundle {
        RawBundle {
            base_dims: self.base_dims.iter().map(|&d| JsonInt::from(d as i64)).collect(),
            exponents: to_json_matrix(&self.exponents),
        }
    }

    pub fn base_dims(&self) -> &[usize] {
        &self.base_dims
    }

    pub fn exponents(&self) -> &[Vec<BigInt>] {
        &self.exponents
    }

    /// Number of summands `n`.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Complex dimension of the base, `Σ n_j`.
    pub fn base_dimension(&self) -> usize {
        self.base_dims.iter().sum()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.exponents.iter().map(|r| r[j].clone()).collect()
    }

    /// Restriction to the factors other than `j` (valid when column `j` is
    /// zero; in general this is the restriction to a slice of factor `j`).
    pub fn drop_factor(&self, j: usize) -> LineBundleSum {
        let mut base_dims = self.base_dims.clone();
        base_dims.remove(j);
        let exponents = self
            .exponents
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.remove(j);
                r
            })
            .collect();
        LineBundleSum {
            base_dims,
            exponents,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn raw(json: &str) -> RawTower {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn validate_examples() {
        let h2 = validate_tower(&raw(
            r#"{"stages":[{"fiber_dim":1,"summands":[]},{"fiber_dim":1,"summands":[[2]]}]}"#,
        ))
        .unwrap();
        assert_eq!(h2, TowerSpec::hirzebruch(2));

        let err = validate_tower(&raw(r#"{"stages":[{"fiber_dim":2,"summands":[[1,1]]}]}"#));
        assert!(matches!(err, Err(Error::RowCount { stage: 1, .. })));
        let err = validate_tower(&raw(
            r#"{"stages":[{"fiber_dim":1,"summands":[[1,1]]}]}"#,
        ));
        assert!(matches!(err, Err(Error::ColumnCount { stage: 1, expected: 0, found: 2, .. })));

        let b2 = validate_tower(&raw(
            r#"{"stages":[{"fiber_dim":1,"summands":[]},{"fiber_dim":2,"summands":[[1],[3]]}]}"#,
        ))
        .unwrap();
        assert_eq!(b2.dims(), vec![1, 2]);
        assert_eq!(b2.stage(2).rows(), &ints(&[&[1], &[3]])[..]);
    }

    #[test]
    fn validate_rejects_bad_dimensions() {
        for json in [
            r#"{"stages":[{"fiber_dim":0,"summands":[]}]}"#,
            r#"{"stages":[{"fiber_dim":-3,"summands":[]}]}"#,
        ] {
            assert!(matches!(
                validate_tower(&raw(json)),
                Err(Error::NonPositiveFiberDim { stage: 1, .. })
            ));
        }
        assert!(matches!(validate_tower(&raw(r#"{"stages":[]}"#)), Err(Error::EmptyTower)));
        let err = validate_tower(&raw(
            r#"{"stages":[{"fiber_dim":1},{"fiber_dim":2,"summands":[[1],[3, 4]]}]}"#,
        ));
        assert!(matches!(err, Err(Error::ColumnCount { stage: 2, row: 2, .. })));
    }

    #[test]
    fn normalize_examples() {
        let s = normalize_stage(&ints(&[&[2], &[3], &[5]])).unwrap();
        assert_eq!(s.rows(), &ints(&[&[1], &[3]])[..]);
        let s = normalize_stage(&ints(&[&[0], &[-7]])).unwrap();
        assert_eq!(s.rows(), &ints(&[&[-7]])[..]);
        let s = normalize_stage(&ints(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(s.rows(), &ints(&[&[0, 0]])[..]);
        assert!(s.is_trivial());
        assert_eq!(normalize_stage(&[]), Err(Error::EmptySummands));
    }

    #[test]
    fn normalize_is_idempotent_on_normalized_stages() {
        let s = normalize_stage(&ints(&[&[2, -1], &[3, 0], &[5, 5]])).unwrap();
        assert_eq!(normalize_stage(&s.full_rows()).unwrap(), s);
    }

    #[test]
    fn dualize_examples() {
        for a in [0i64, 2, 5] {
            let s = StageSpec::new(ints(&[&[a]])).unwrap();
            assert_eq!(dualize_stage(&s).rows(), &ints(&[&[-a]])[..]);
        }
        // both re-normalizations of {0, 3} give a valid presentation; [-3] is smaller
        let s = StageSpec::new(ints(&[&[-3]])).unwrap();
        assert_eq!(dualize_stage(&s).rows(), &ints(&[&[-3]])[..]);
        // {0, 1, 3} negates to {0, -1, -3}; subtracting 0 gives the
        // lexicographically smallest sorted matrix
        let s = StageSpec::new(ints(&[&[1], &[3]])).unwrap();
        assert_eq!(dualize_stage(&s).rows(), &ints(&[&[-3], &[-1]])[..]);
        let t = StageSpec::new(ints(&[&[0]])).unwrap();
        assert_eq!(dualize_stage(&t), t);
    }

    #[test]
    fn product_tower_examples() {
        let t = product_tower(&[1, 1, 1]).unwrap();
        assert_eq!(t.height(), 3);
        assert!(t.stages().iter().all(StageSpec::is_trivial));
        assert_eq!(product_tower(&[2]).unwrap().dims(), vec![2]);
        let t = product_tower(&[1, 2]).unwrap();
        assert_eq!(t.stage(2).rows(), &ints(&[&[0], &[0]])[..]);
        assert!(product_tower(&[]).is_err());
        assert!(product_tower(&[1, 0]).is_err());
    }

    #[test]
    fn dualize_in_tower_rewrites_higher_stages() {
        // dualizing stage 2 of B3(a,b,c) flips y_2, giving B3(-a, b, -c)
        let t = TowerSpec::bott3(2, 1, 3);
        let (d, m) = dualize_stage_in(&t, 2);
        assert_eq!(d.stage(2).rows(), &ints(&[&[-2]])[..]);
        assert_eq!(d.stage(3).rows(), &ints(&[&[1, -3]])[..]);
        assert_eq!(m[1], ints(&[&[0, -1, 0]])[0]);
    }

    #[test]
    fn bundle_shapes() {
        assert!(LineBundleSum::from_i64(&[1, 1], &[&[1, 0], &[-1, 0]]).is_ok());
        assert!(LineBundleSum::from_i64(&[1, 1], &[&[1]]).is_err());
        assert!(LineBundleSum::from_i64(&[1], &[]).is_err());
        assert!(LineBundleSum::from_i64(&[0], &[&[1]]).is_err());
    }
}
