//! Fixed inputs shared by the benchmarks.

use bott_core::TowerSpec;

/// A four-stage tower with fibers of dimension up to 3.
pub fn large_tower() -> TowerSpec {
    TowerSpec::from_rows(
        &[2, 3, 2, 3],
        &[
            &[],
            &[&[1], &[-2], &[3]],
            &[&[1, -1], &[2, 0]],
            &[&[0, 1, -1], &[3, -2, 1], &[1, 1, 1]],
        ],
    )
    .expect("valid tower")
}

/// Pairs `(a, b, c)` and `(-a, b - ac, c)` of three-stage Bott towers.
pub fn dual_pairs(range: i64) -> Vec<(TowerSpec, TowerSpec)> {
    let mut out = Vec::new();
    for a in -range..=range {
        for b in -range..=range {
            for c in -range..=range {
                out.push((TowerSpec::bott3(a, b, c), TowerSpec::bott3(-a, b - a * c, c)));
            }
        }
    }
    out
}
