use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::linalg;
use crate::ring::{BottRing, IsoWitness};
use crate::tower::identity_matrix;

/// Searches for an isomorphism `H^*(other) → H^*(ring)` whose degree-2
/// matrix has entries in `[-bound, bound]`.
///
/// The identity is tried first; after that matrices are enumerated
/// lexicographically (row of `y'_1` first, entries ascending), and the first
/// verified witness in that order is returned. Rows are fixed one at a time:
/// after choosing the image of `y'_i`, the relation `f'_i` (which involves
/// only `y'_1, ..., y'_i`) must already vanish and the chosen rows must
/// extend to a unimodular matrix.
pub fn iso_search(ring: &BottRing, other: &BottRing, bound: u32) -> Option<IsoWitness> {
    let m = ring.height();
    if other.height() != m || ring.domain() != other.domain() {
        return None;
    }
    let mut dims = ring.dims().to_vec();
    let mut other_dims = other.dims().to_vec();
    dims.sort_unstable();
    other_dims.sort_unstable();
    if dims != other_dims || ring.graded_ranks() != other.graded_ranks() {
        return None;
    }
    if let Some(w) = IsoWitness::verify(other, ring, identity_matrix(m)) {
        return Some(w);
    }

    let b = bound as i64;
    let side = (2 * b + 1) as usize;
    let total = side.checked_pow(m as u32).expect("search space too large");
    let candidates: Vec<Vec<BigInt>> = (0..total)
        .map(|mut idx| {
            let mut v = vec![BigInt::zero(); m];
            for slot in v.iter_mut().rev() {
                *slot = BigInt::from((idx % side) as i64 - b);
                idx /= side;
            }
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let rows: Vec<Vec<Vec<BigInt>>> = other
        .tower()
        .stages()
        .iter()
        .map(|s| s.full_rows())
        .collect();
    let search = Search {
        ring,
        other,
        rows: &rows,
        candidates: &candidates,
    };
    candidates.par_iter().find_map_first(|first| {
        let mut chosen = vec![first.clone()];
        if !search.admissible(&chosen) {
            return None;
        }
        search.extend(&mut chosen)
    })
}

struct Search<'a> {
    ring: &'a BottRing,
    other: &'a BottRing,
    rows: &'a [Vec<Vec<BigInt>>],
    candidates: &'a [Vec<BigInt>],
}

impl Search<'_> {
    /// Whether the last chosen row is compatible with its relation and the
    /// rows so far have coprime maximal minors.
    fn admissible(&self, chosen: &[Vec<BigInt>]) -> bool {
        let i = chosen.len() - 1;
        let forms: Vec<Vec<BigInt>> = self.rows[i]
            .iter()
            .map(|u| {
                let mut form = chosen[i].clone();
                for (j, c) in u.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (f, x) in form.iter_mut().zip(&chosen[j]) {
                        *f += c * x;
                    }
                }
                form
            })
            .collect();
        self.ring.linear_product_vanishes(&forms) && linalg::gcd_of_maximal_minors(chosen).is_one()
    }

    fn extend(&self, chosen: &mut Vec<Vec<BigInt>>) -> Option<IsoWitness> {
        if chosen.len() == self.ring.height() {
            return IsoWitness::verify(self.other, self.ring, chosen.clone());
        }
        for c in self.candidates {
            chosen.push(c.clone());
            if self.admissible(chosen) {
                if let Some(w) = self.extend(chosen) {
                    return Some(w);
                }
            }
            chosen.pop();
        }
        None
    }
}
