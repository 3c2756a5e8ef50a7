//! Browser demo bindings. Three operations back the static page in `www/`:
//! matrix exploration, rule-by-rule combination, and distance/conflict
//! comparison. Inputs and outputs cross the boundary as JSON strings; mass
//! functions travel as weight vectors over the canonical enumeration and are
//! renormalized on entry.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use ordbel::{
    belief_distance, conflict, decide_distance, decide_pointwise, inclusion_degree,
    DeltaPolicy, DissimilarityMatrix, ElementDistanceMode, Error, FuzzyParams, MassFunction,
    MatrixKind, OrderedElement, OrderedFrame, PointwiseCriterion, RuleId,
};

fn parse_mode(dmode: &str) -> Result<ElementDistanceMode, String> {
    match dmode {
        "min" => Ok(ElementDistanceMode::Min),
        "max" => Ok(ElementDistanceMode::Max),
        "avg" => Ok(ElementDistanceMode::Average),
        other => Err(format!("unknown distance mode {other:?}")),
    }
}

fn parse_kind(
    kind: &str,
    dmode: &str,
    alpha: f64,
    gamma: f64,
) -> Result<MatrixKind, String> {
    let mode = parse_mode(dmode)?;
    match kind {
        "plain" => Ok(MatrixKind::Plain),
        "ordered" => Ok(MatrixKind::Ordered(mode)),
        "fuzzy" => {
            let params = FuzzyParams::new(alpha, gamma, mode).map_err(|e| e.to_string())?;
            Ok(MatrixKind::Fuzzy(params))
        }
        other => Err(format!("unknown matrix kind {other:?}")),
    }
}

fn parse_rule(rule: &str, dmode: &str, alpha: f64, gamma: f64) -> Result<RuleId, String> {
    Ok(match rule {
        "conj" => RuleId::Conjunctive,
        "dempster" => RuleId::Dempster,
        "yager" => RuleId::Yager,
        "odisj" => RuleId::OrderedDisjunctive,
        "odp" => RuleId::OrderedDuboisPrade,
        "avg" => RuleId::Average,
        "mixed" => {
            if alpha == 0.0 {
                RuleId::Mixed(DeltaPolicy::Crisp)
            } else {
                let mode = parse_mode(dmode)?;
                let params =
                    FuzzyParams::new(alpha, gamma, mode).map_err(|e| e.to_string())?;
                RuleId::Mixed(DeltaPolicy::Fuzzy(params))
            }
        }
        other => return Err(format!("unknown rule {other:?}")),
    })
}

fn mass_from_weights(frame: &OrderedFrame, weights: &[f64]) -> Result<MassFunction, String> {
    if weights.len() != frame.ops_size() {
        return Err(format!(
            "expected {} weights for n = {}, got {}",
            frame.ops_size(),
            frame.len(),
            weights.len()
        ));
    }
    let entries = frame.elements().zip(weights.iter().copied());
    MassFunction::renormalized(frame.clone(), entries).map_err(|e| match e {
        Error::NotNormalized { .. } => "weights must not all be zero".to_string(),
        other => other.to_string(),
    })
}

fn names(frame: &OrderedFrame) -> Vec<String> {
    frame.elements().map(|e| e.to_string()).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("demo payloads serialize")
}

#[derive(Serialize)]
struct MatrixPayload {
    elements: Vec<String>,
    entries: Vec<Vec<f64>>,
    min_off_diagonal: f64,
    max_off_diagonal: f64,
}

fn matrix_payload(
    n: usize,
    kind: &str,
    dmode: &str,
    alpha: f64,
    gamma: f64,
) -> Result<String, String> {
    let frame = OrderedFrame::with_default_labels(n).map_err(|e| e.to_string())?;
    let kind = parse_kind(kind, dmode, alpha, gamma)?;
    let matrix = DissimilarityMatrix::new(&frame, kind).map_err(|e| e.to_string())?;
    let entries: Vec<Vec<f64>> = (0..matrix.dim()).map(|i| matrix.row(i).to_vec()).collect();
    let mut min_off = f64::INFINITY;
    let mut max_off = f64::NEG_INFINITY;
    for (i, row) in entries.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if i != j {
                min_off = min_off.min(v);
                max_off = max_off.max(v);
            }
        }
    }
    Ok(to_json(&MatrixPayload {
        elements: names(&frame),
        entries,
        min_off_diagonal: min_off,
        max_off_diagonal: max_off,
    }))
}

#[derive(Serialize)]
struct CombinePayload {
    elements: Vec<String>,
    input1: Vec<f64>,
    input2: Vec<f64>,
    fused: Vec<f64>,
    betp: Option<Vec<f64>>,
    betp_decision: Option<String>,
}

fn combine_payload(
    n: usize,
    rule: &str,
    weights1: &[f64],
    weights2: &[f64],
    dmode: &str,
    alpha: f64,
    gamma: f64,
) -> Result<String, String> {
    let frame = OrderedFrame::with_default_labels(n).map_err(|e| e.to_string())?;
    let m1 = mass_from_weights(&frame, weights1)?;
    let m2 = mass_from_weights(&frame, weights2)?;
    let rule = parse_rule(rule, dmode, alpha, gamma)?;
    let fused = rule
        .apply(&[m1.clone(), m2.clone()])
        .map_err(|e| e.to_string())?;
    let (betp, betp_decision) = match fused.betp_all() {
        Ok(values) => {
            let winner = decide_pointwise(&fused, PointwiseCriterion::BetP)
                .map(|i| format!("w{i}"))
                .ok();
            (Some(values), winner)
        }
        Err(_) => (None, None),
    };
    Ok(to_json(&CombinePayload {
        elements: names(&frame),
        input1: m1.to_vector(),
        input2: m2.to_vector(),
        fused: fused.to_vector(),
        betp,
        betp_decision,
    }))
}

#[derive(Serialize)]
struct ComparePayload {
    distance: f64,
    plain_distance: f64,
    conflict: f64,
    inclusion: f64,
    distance_decision: String,
}

fn compare_payload(
    n: usize,
    weights1: &[f64],
    weights2: &[f64],
    kind: &str,
    dmode: &str,
    alpha: f64,
    gamma: f64,
) -> Result<String, String> {
    let frame = OrderedFrame::with_default_labels(n).map_err(|e| e.to_string())?;
    let m1 = mass_from_weights(&frame, weights1)?;
    let m2 = mass_from_weights(&frame, weights2)?;
    let matrix = DissimilarityMatrix::new(&frame, parse_kind(kind, dmode, alpha, gamma)?)
        .map_err(|e| e.to_string())?;
    let plain =
        DissimilarityMatrix::new(&frame, MatrixKind::Plain).map_err(|e| e.to_string())?;
    let candidates: Vec<OrderedElement> =
        frame.elements().filter(|e| !e.is_empty()).collect();
    let decision =
        decide_distance(&m1, &candidates, &matrix).map_err(|e| e.to_string())?;
    Ok(to_json(&ComparePayload {
        distance: belief_distance(&m1, &m2, &matrix).map_err(|e| e.to_string())?,
        plain_distance: belief_distance(&m1, &m2, &plain).map_err(|e| e.to_string())?,
        conflict: conflict(&m1, &m2, &matrix).map_err(|e| e.to_string())?,
        inclusion: inclusion_degree(&m1, &m2).map_err(|e| e.to_string())?,
        distance_decision: decision.to_string(),
    }))
}

#[wasm_bindgen]
pub fn element_names(n: usize) -> Result<String, JsValue> {
    let frame = OrderedFrame::with_default_labels(n).map_err(js_err)?;
    Ok(to_json(&names(&frame)))
}

/// Dissimilarity matrix over the ordered power set, for the heatmap.
#[wasm_bindgen]
pub fn dissimilarity_matrix(
    n: usize,
    kind: &str,
    dmode: &str,
    alpha: f64,
    gamma: f64,
) -> Result<String, JsValue> {
    matrix_payload(n, kind, dmode, alpha, gamma).map_err(|e| JsValue::from_str(&e))
}

/// Fuse two weight vectors with the named rule.
#[wasm_bindgen]
pub fn combine_masses(
    n: usize,
    rule: &str,
    weights1: Vec<f64>,
    weights2: Vec<f64>,
    dmode: &str,
    alpha: f64,
    gamma: f64,
) -> Result<String, JsValue> {
    combine_payload(n, rule, &weights1, &weights2, dmode, alpha, gamma)
        .map_err(|e| JsValue::from_str(&e))
}

/// Distance, conflict and inclusion between two weight vectors.
#[wasm_bindgen]
pub fn compare_masses(
    n: usize,
    weights1: Vec<f64>,
    weights2: Vec<f64>,
    kind: &str,
    dmode: &str,
    alpha: f64,
    gamma: f64,
) -> Result<String, JsValue> {
    compare_payload(n, &weights1, &weights2, kind, dmode, alpha, gamma)
        .map_err(|e| JsValue::from_str(&e))
}

fn js_err(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}
