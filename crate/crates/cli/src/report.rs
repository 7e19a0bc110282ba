use std::fmt::Write as _;

use bott_core::bundle::{find_zero_column, is_trivial, total_chern_bundle};
use bott_core::check::{check_tower, seeded_towers, TowerShape};
use bott_core::classify::{self, NotProductReason, ProductVerdict};
use bott_core::json::{to_json_matrix, to_json_row, JsonInt};
use bott_core::ring::Polynomial;
use bott_core::{
    BigInt, BottRing, CharClassReport, Domain, LineBundleSum, TowerSpec, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::Status;

pub struct Output {
    pub json: bool,
}

impl Output {
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
        } else {
            print!("{}", text());
        }
    }
}

/// `Σ_j row[j] y_j` as text.
fn linear_form(row: &[BigInt]) -> String {
    let m = row.len();
    let p = Polynomial::linear(m, row);
    if p.is_zero() {
        "0".to_string()
    } else {
        p.to_string()
    }
}

fn matrix_text(matrix: &[Vec<BigInt>]) -> String {
    let mut s = String::new();
    for (i, row) in matrix.iter().enumerate() {
        let _ = writeln!(s, "  y'{} -> {}", i + 1, linear_form(row));
    }
    s
}

fn total_class_text(name: &str, class: &bott_core::CohomologyClass) -> String {
    let mut s = format!("{name} = {class}\n");
    for (deg, part) in CharClassReport::components(class) {
        if deg > 0 {
            let _ = writeln!(s, "  [{deg}] {part}");
        }
    }
    s
}

pub fn ring(out: &Output, tower: &TowerSpec, domain: Domain) -> Result<Status, String> {
    let ring = BottRing::new(tower, domain);
    let relations: Vec<Polynomial> = (1..=tower.height())
        .map(|i| {
            let f = ring.relation(i);
            Polynomial::from_terms(
                f.nvars(),
                f.terms().map(|(e, c)| (e.as_slice().to_vec(), domain.reduce(c.clone()))),
            )
        })
        .collect();
    let basis: Vec<Vec<u32>> = ring.basis().iter().map(|e| e.as_slice().to_vec()).collect();
    let value = json!({
        "domain": domain.to_string(),
        "dims": tower.dims(),
        "basis": basis,
        "relations": relations.iter().map(|f| f.to_serialized()).collect::<Vec<_>>(),
        "graded_ranks": ring.graded_ranks(),
    });
    out.emit(&value, || {
        let mut s = format!("coefficients: {domain}\nfiber dimensions: {:?}\nrelations:\n", tower.dims());
        for (i, f) in relations.iter().enumerate() {
            let _ = writeln!(s, "  f{} = {f}", i + 1);
        }
        let ranks: Vec<String> = ring.graded_ranks().iter().map(|r| r.to_string()).collect();
        let _ = writeln!(s, "graded ranks (degrees 0, 2, 4, ...): {}", ranks.join(" "));
        let _ = writeln!(s, "basis ({} monomials):", ring.basis().len());
        for d in 0..=ring.top_degree() {
            let mons: Vec<String> = ring.basis_in_degree(d).iter().map(|e| e.to_string()).collect();
            let _ = writeln!(s, "  [{}] {}", 2 * d, mons.join(", "));
        }
        s
    });
    Ok(Status::Computed)
}

pub fn classes(out: &Output, tower: &TowerSpec) -> Result<Status, String> {
    let report = CharClassReport::compute(tower).map_err(|e| e.to_string())?;
    let value = serde_json::to_value(report.to_serialized()).expect("report serializes");
    out.emit(&value, || {
        [
            total_class_text("c", &report.total_chern),
            total_class_text("p", &report.total_pontrjagin),
            total_class_text("v", &report.wu),
            total_class_text("w", &report.stiefel_whitney),
        ]
        .concat()
    });
    Ok(Status::Computed)
}

pub fn is_product(out: &Output, tower: &TowerSpec) -> Result<Status, String> {
    match classify::is_product_cohomology(tower) {
        ProductVerdict::Product(w) => {
            let value = json!({
                "verdict": "PRODUCT",
                "twists": to_json_matrix(&w.twists),
                "matrix": to_json_matrix(&w.generators),
            });
            out.emit(&value, || {
                let mut s = String::from("PRODUCT\ngenerators with x_i^(n_i+1) = 0:\n");
                for (i, g) in w.generators.iter().enumerate() {
                    let _ = writeln!(s, "  x{} = {}", i + 1, linear_form(g));
                }
                s
            });
            Ok(Status::Computed)
        }
        ProductVerdict::NotProduct { stage, reason } => {
            let reason_json = match &reason {
                NotProductReason::Divisibility { first_chern, divisor } => json!({
                    "kind": "divisibility",
                    "first_chern": to_json_row(first_chern),
                    "divisor": divisor,
                }),
                NotProductReason::ChernResidue { residue } => json!({
                    "kind": "chern_residue",
                    "residue": residue.to_serialized(),
                }),
            };
            let value = json!({"verdict": "DISTINCT", "stage": stage, "reason": reason_json});
            out.emit(&value, || match &reason {
                NotProductReason::Divisibility { first_chern, divisor } => format!(
                    "DISTINCT\nstage {stage}: c1 = {} is not divisible by {divisor}\n",
                    linear_form(first_chern)
                ),
                NotProductReason::ChernResidue { residue } => format!(
                    "DISTINCT\nstage {stage}: the twisted bundle has total Chern class {residue}\n"
                ),
            });
            Ok(Status::Negative)
        }
    }
}

fn verdict(out: &Output, verdict: &Verdict, bound: Option<u32>) -> Status {
    out.emit(&verdict.to_json(bound), || match verdict {
        Verdict::Diffeomorphic(w) => {
            format!("DIFFEOMORPHIC\nwitness H*(second) -> H*(first):\n{}", matrix_text(w.iso().matrix()))
        }
        Verdict::Distinct { invariant, left, right } => {
            format!("DISTINCT\ninvariant: {invariant}\n  first:  {left}\n  second: {right}\n")
        }
        Verdict::Unknown { bound } => {
            format!("UNKNOWN\nno isomorphism with entries bounded by {bound}\n")
        }
    });
    if verdict.is_diffeomorphic() {
        Status::Computed
    } else {
        Status::Negative
    }
}

pub fn classify2(out: &Output, t: &TowerSpec, s: &TowerSpec) -> Result<Status, String> {
    let v = classify::classify_2stage(t, s).map_err(|e| e.to_string())?;
    Ok(verdict(out, &v, None))
}

pub fn classify3(out: &Output, t: &TowerSpec, s: &TowerSpec, bound: u32) -> Result<Status, String> {
    let v = classify::classify_3stage(t, s, bound).map_err(|e| e.to_string())?;
    Ok(verdict(out, &v, Some(bound)))
}

pub fn iso_search(out: &Output, t: &TowerSpec, s: &TowerSpec, bound: u32) -> Result<Status, String> {
    let ring = BottRing::new(t, Domain::Integer);
    let other = BottRing::new(s, Domain::Integer);
    let found = classify::iso_search(&ring, &other, bound);
    let value = json!({
        "found": found.is_some(),
        "bound": bound,
        "matrix": found.as_ref().map(|w| to_json_matrix(w.matrix())),
    });
    out.emit(&value, || match &found {
        Some(w) => format!("isomorphism H*(second) -> H*(first):\n{}", matrix_text(w.matrix())),
        None => format!("no isomorphism with entries bounded by {bound}\n"),
    });
    Ok(if found.is_some() { Status::Computed } else { Status::Negative })
}

pub fn bundle_trivial(out: &Output, bundle: &LineBundleSum) -> Result<Status, String> {
    let trivial = is_trivial(bundle);
    let chern = total_chern_bundle(bundle);
    let reduction = if trivial && bundle.rank() < bundle.base_dimension() {
        Some(find_zero_column(bundle).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let value = json!({
        "trivial": trivial,
        "chern": chern.to_serialized(),
        "zero_column": reduction.as_ref().map(|r| r.column + 1),
        "reduction": reduction.as_ref().map(|r| r.trace_json()),
    });
    out.emit(&value, || {
        let mut s = format!("{}\nc = {chern}\n", if trivial { "TRIVIAL" } else { "NOT TRIVIAL" });
        if let Some(r) = &reduction {
            let _ = writeln!(s, "zero column: {}", r.column + 1);
            for step in &r.trace {
                let _ = writeln!(
                    s,
                    "  drop factor {} (case {}), remaining dims {:?}",
                    step.column + 1,
                    serde_json::to_value(step.case).expect("case serializes").as_str().unwrap_or("?"),
                    step.remaining_dims
                );
            }
        }
        s
    });
    Ok(if trivial { Status::Computed } else { Status::Negative })
}

pub fn check(out: &Output, seed: u64, count: usize) -> Result<Status, String> {
    let shape = TowerShape {
        max_height: 4,
        max_fiber_dim: 3,
        max_entry: 3,
    };
    let towers = seeded_towers(seed, count, shape);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for (index, tower) in towers.iter().enumerate() {
        for (property, result) in check_tower(tower, &mut rng) {
            if let Err(message) = result {
                failures.push(json!({
                    "tower": index,
                    "spec": serde_json::to_value(tower.to_raw()).expect("tower serializes"),
                    "property": property.to_string(),
                    "message": message,
                }));
            }
        }
    }
    let value = json!({
        "seed": JsonInt(BigInt::from(seed)),
        "count": count,
        "failures": failures,
    });
    out.emit(&value, || {
        let mut s = format!("seed {seed}: {count} towers, {} failures\n", failures.len());
        for f in &failures {
            let _ = writeln!(s, "  tower {}: {} ({})", f["tower"], f["property"], f["message"]);
        }
        s
    });
    Ok(if failures.is_empty() { Status::Computed } else { Status::Negative })
}
