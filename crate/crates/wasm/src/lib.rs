//! Browser bindings: A5 density curves for a user-chosen full shift, loop
//! decomposition in the index-5 cover of A5, and Smith normal form.
//!
//! Each operation has a plain Rust function returning JSON (tested natively)
//! and a thin `wasm_bindgen` wrapper.

use chebotarev::experiment::{run_a5_experiment, ExperimentConfig, SubgroupSpec};
use chebotarev::freewords::HomFile;
use chebotarev::quotients::IntMatrix;
use chebotarev::sft::SftEdge;
use chebotarev::{build_cover, coset_action, cyclic_reduce, decompose_loop, smith_normal_form, GroupHom, LabeledSFT, Word};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Longest orbit length the page may request.
pub const MAX_LEN_LIMIT: usize = 13;

fn a5_hom() -> GroupHom {
    HomFile {
        degree: 5,
        generators: vec!["(1 2 3 4 5)".into(), "(1 2 3)".into()],
        target: None,
    }
    .build()
    .expect("A5 generators are valid")
}

#[derive(Serialize)]
struct Series {
    key: String,
    elements: usize,
    target: f64,
    density: Vec<f64>,
}

#[derive(Serialize)]
struct Curve {
    cutoffs: Vec<usize>,
    series: Vec<Series>,
    orbits: usize,
    max_deviation: f64,
    witness_lengths: Vec<usize>,
}

fn ratio_f64(r: &num_rational::Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Decomposition-type densities at every cutoff for the one-state shift
/// whose loops carry `labels` (words separated by `,`).
pub fn density_curve_json(labels: &str, max_len: usize, skip: usize) -> Result<String, String> {
    if !(1..=MAX_LEN_LIMIT).contains(&max_len) {
        return Err(format!("max length must be between 1 and {MAX_LEN_LIMIT}"));
    }
    let edges = labels
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            Word::parse(s)
                .map(|label| SftEdge { from: 0, to: 0, label })
                .map_err(|e| format!("label {s:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sft = LabeledSFT::new(1, edges, a5_hom()).map_err(|e| e.to_string())?;
    let cfg = ExperimentConfig {
        max_len,
        skip,
        subgroup: SubgroupSpec::Canonical,
        ..ExperimentConfig::default()
    };
    let out = run_a5_experiment(&sft, &cfg).map_err(|e| e.to_string())?;
    let report = &out.report;
    let series = out
        .table
        .iter()
        .map(|row| {
            let key = row.decomposition_type.to_string();
            let density = report
                .cutoffs
                .iter()
                .map(|&c| {
                    report
                        .rows_at(&report.type_rows, c)
                        .find(|r| r.key == key)
                        .map_or(0.0, |r| ratio_f64(&r.density()))
                })
                .collect();
            Series {
                key,
                elements: row.element_count,
                target: ratio_f64(&row.target),
                density,
            }
        })
        .collect();
    let curve = Curve {
        cutoffs: report.cutoffs.clone(),
        series,
        orbits: out.orbit_count,
        max_deviation: out.max_deviation,
        witness_lengths: out.realization.witnesses.iter().flatten().map(|o| o.len()).collect(),
    };
    serde_json::to_string(&curve).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Decomposition {
    word: String,
    image: String,
    monodromy_type: String,
    decomposition_type: String,
    components: Vec<(Vec<usize>, usize)>,
}

/// Lifts a word in `x1 = (1 2 3 4 5)`, `x2 = (1 2 3)` to the cover of A5 by
/// the stabilizer of `point` (1-based).
pub fn decompose_json(word: &str, point: usize) -> Result<String, String> {
    let hom = a5_hom();
    let g = hom.target().clone();
    if !(1..=5).contains(&point) {
        return Err("point must be between 1 and 5".into());
    }
    let sub = g.point_stabilizer(point - 1).map_err(|e| e.to_string())?;
    let w = Word::parse(word).map_err(|e| e.to_string())?;
    let cover = build_cover(&hom, &sub).map_err(|e| e.to_string())?;
    let lift = decompose_loop(&cover, &cyclic_reduce(&w)).map_err(|e| e.to_string())?;
    let z = hom.evaluate(&w).map_err(|e| e.to_string())?;
    let action = coset_action(&g, &sub).map_err(|e| e.to_string())?;
    let d = Decomposition {
        word: w.to_string(),
        image: g.element(z).to_string(),
        monodromy_type: action.image(z).cycle_type().to_string(),
        decomposition_type: lift.decomposition_type.to_string(),
        components: lift.components.into_iter().map(|c| (c.vertices, c.degree)).collect(),
    };
    serde_json::to_string(&d).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Smith {
    s: Vec<Vec<String>>,
    u: Vec<Vec<String>>,
    v: Vec<Vec<String>>,
    invariant_factors: Vec<String>,
    rank: usize,
}

fn cells(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

/// Smith normal form of whitespace-separated integer rows.
pub fn smith_json(matrix: &str) -> Result<String, String> {
    let a = IntMatrix::parse(matrix).map_err(|e| e.to_string())?;
    let f = smith_normal_form(&a);
    let out = Smith {
        s: cells(&f.s),
        u: cells(&f.u),
        v: cells(&f.v),
        invariant_factors: f.diagonal().iter().map(ToString::to_string).collect(),
        rank: f.rank(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = densityCurve)]
pub fn density_curve(labels: &str, max_len: usize, skip: usize) -> Result<String, JsError> {
    density_curve_json(labels, max_len, skip).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = decompose)]
pub fn decompose(word: &str, point: usize) -> Result<String, JsError> {
    decompose_json(word, point).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = smithForm)]
pub fn smith_form(matrix: &str) -> Result<String, JsError> {
    smith_json(matrix).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn curve_for_default_labels() {
        let v: Value = serde_json::from_str(&density_curve_json("x1, x2, x1 x2", 11, 0).unwrap()).unwrap();
        assert_eq!(v["orbits"], 25486);
        assert_eq!(v["cutoffs"].as_array().unwrap().len(), 11);
        let series = v["series"].as_array().unwrap();
        let keys: Vec<&str> = series.iter().map(|s| s["key"].as_str().unwrap()).collect();
        assert_eq!(keys, ["(1,1,1,1,1)", "(2,2,1)", "(3,1,1)", "(5)"]);
        assert!(v["max_deviation"].as_f64().unwrap() < 0.02);
        let last: f64 = series.iter().map(|s| s["density"][10].as_f64().unwrap()).sum();
        assert!((last - 1.0).abs() < 1e-12);
    }

    #[test]
    fn curve_rejects_bad_input() {
        assert!(density_curve_json("x1, x2", 0, 0).is_err());
        assert!(density_curve_json("x1, x2", 99, 0).is_err());
        assert!(density_curve_json("x1, x3", 5, 0).is_err());
        assert!(density_curve_json("1, x1 x1^-1", 5, 0).unwrap_err().contains("realization check failed"));
        assert!(density_curve_json("", 5, 0).is_err());
    }

    #[test]
    fn decompose_in_a4_cover() {
        let v: Value = serde_json::from_str(&decompose_json("x1 x1 x2", 5).unwrap()).unwrap();
        assert_eq!(v["decomposition_type"], "(2,2,1)");
        assert_eq!(v["monodromy_type"], "(2,2,1)");
        assert!(decompose_json("x1 x1^-1", 5).is_err());
        assert!(decompose_json("x1", 6).is_err());
    }

    #[test]
    fn smith_example() {
        let v: Value = serde_json::from_str(&smith_json("2 4\n6 8").unwrap()).unwrap();
        assert_eq!(v["invariant_factors"], serde_json::json!(["2", "4"]));
        assert!(smith_json("1 2\n3").is_err());
    }
}
