//! Browser bindings for the synthesis engine. Every export returns a JSON
//! string so the demo page stays a plain static file with no framework.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tsynth::budget::{qft_budget, ComposeRule, ErrorBudget};
use tsynth::certify::EPSILON_SEPARABILITY;
use tsynth::library::{crz, givens, qft, theta_grid, QftConvention};
use tsynth::matrix::DenseUnitary;
use tsynth::reconstruct::synthesize;
use tsynth::search::SearchConfig;

#[derive(Serialize)]
struct SynthOut {
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    m: Option<usize>,
    t_gates: Option<usize>,
    t_stages: Option<usize>,
    distance: Option<f64>,
    indices: Vec<usize>,
    circuit: Option<String>,
    gate_count: Option<usize>,
}

fn err_out(msg: String) -> String {
    serde_json::to_string(&SynthOut {
        ok: false,
        error: Some(msg),
        m: None,
        t_gates: None,
        t_stages: None,
        distance: None,
        indices: Vec::new(),
        circuit: None,
        gate_count: None,
    })
    .unwrap()
}

fn builtin_matrix(builtin: &str, theta: f64, n: usize, swap: bool) -> Result<DenseUnitary, String> {
    match builtin {
        "crz" => Ok(crz(theta)),
        "givens" => Ok(givens(theta)),
        "qft" => qft(
            n,
            if swap { QftConvention::Swap } else { QftConvention::NoSwap },
        )
        .map_err(|e| e.to_string()),
        other => Err(format!("unknown builtin {other:?}")),
    }
}

/// Runs the full pipeline on a built-in target and reports the circuit.
#[wasm_bindgen]
pub fn synthesize_builtin(
    builtin: &str,
    theta: f64,
    n: usize,
    swap_convention: bool,
    epsilon: f64,
    depth_mode: bool,
    max_m: usize,
) -> String {
    let w = match builtin_matrix(builtin, theta, n, swap_convention) {
        Ok(w) => w,
        Err(e) => return err_out(e),
    };
    let cfg = match if depth_mode {
        SearchConfig::depth(w.qubits(), epsilon)
    } else {
        SearchConfig::count(w.qubits(), epsilon)
    } {
        Ok(c) => c.with_m_max(max_m).with_threads(1),
        Err(e) => return err_out(e.to_string()),
    };
    match synthesize(&w, &cfg) {
        Ok(result) => serde_json::to_string(&SynthOut {
            ok: true,
            error: None,
            m: Some(result.m),
            t_gates: Some(result.circuit.t_count()),
            t_stages: Some(result.circuit.t_stage_count()),
            distance: Some(result.achieved_distance),
            indices: result.generator_indices.clone(),
            gate_count: Some(result.circuit.gates.len()),
            circuit: Some(result.circuit.to_text()),
        })
        .unwrap(),
        Err(e) => err_out(e.to_string()),
    }
}

/// Minimum resource count only (no circuit assembly); `-1` when the budget
/// is exhausted, `-2` on bad inputs. Drives the sweep plot point by point.
#[wasm_bindgen]
pub fn min_resource_builtin(
    builtin: &str,
    theta: f64,
    epsilon: f64,
    depth_mode: bool,
    max_m: usize,
) -> i32 {
    let w = match builtin_matrix(builtin, theta, 2, true) {
        Ok(w) => w,
        Err(_) => return -2,
    };
    let cfg = match if depth_mode {
        SearchConfig::depth(w.qubits(), epsilon)
    } else {
        SearchConfig::count(w.qubits(), epsilon)
    } {
        Ok(c) => c.with_m_max(max_m).with_threads(1),
        Err(_) => return -2,
    };
    match tsynth::search::min_resource(&w, &cfg) {
        Ok(c) => c.indices.len() as i32,
        Err(tsynth::error::Error::BudgetExceeded { .. }) => -1,
        Err(_) => -2,
    }
}

/// The published 20-point theta grid.
#[wasm_bindgen]
pub fn sweep_grid() -> String {
    serde_json::to_string(&theta_grid()).unwrap()
}

/// Error-budget calculator for the n-qubit QFT split into controlled
/// rotations.
#[wasm_bindgen]
pub fn budget_qft(n: usize, eps_r: f64) -> String {
    match qft_budget(n, eps_r) {
        Ok((rotations, eps)) => serde_json::json!({
            "ok": true, "rotations": rotations, "composed_epsilon": eps,
        })
        .to_string(),
        Err(e) => serde_json::json!({ "ok": false, "error": e.to_string() }).to_string(),
    }
}

/// Composes an explicit epsilon list under `tensor`, `mult2` or `sequence`.
#[wasm_bindgen]
pub fn budget_list(rule: &str, eps_csv: &str) -> String {
    let eps: Result<Vec<f64>, _> = eps_csv
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect();
    let eps = match eps {
        Ok(v) if !v.is_empty() => v,
        _ => return serde_json::json!({ "ok": false, "error": "bad epsilon list" }).to_string(),
    };
    let rule = match rule {
        "tensor" => ComposeRule::Tensor,
        "mult2" => ComposeRule::Mult2,
        "sequence" => ComposeRule::Sequence,
        other => {
            return serde_json::json!({ "ok": false, "error": format!("unknown rule {other:?}") })
                .to_string()
        }
    };
    match ErrorBudget::compose(rule, &eps) {
        Ok(b) => serde_json::json!({
            "ok": true, "composed_epsilon": b.composed_epsilon,
        })
        .to_string(),
        Err(e) => serde_json::json!({ "ok": false, "error": e.to_string() }).to_string(),
    }
}

/// Upper end of the epsilon regime accepted by the tests.
#[wasm_bindgen]
pub fn epsilon_limit() -> f64 {
    EPSILON_SEPARABILITY
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthesize_export_returns_circuit_json() {
        let out = synthesize_builtin("qft", 0.0, 2, true, 1e-3, false, 8);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["m"], 3);
        assert!(v["circuit"].as_str().unwrap().starts_with("qubits 2"));
    }

    #[test]
    fn budget_exports() {
        let v: serde_json::Value = serde_json::from_str(&budget_qft(20, 3e-3)).unwrap();
        assert_eq!(v["rotations"], 190);
        assert!((v["composed_epsilon"].as_f64().unwrap() - 0.545137).abs() < 1e-5);
        let v: serde_json::Value =
            serde_json::from_str(&budget_list("tensor", "0.1,0.1")).unwrap();
        assert!((v["composed_epsilon"].as_f64().unwrap() - 0.141067).abs() < 1e-5);
    }

    #[test]
    fn sweep_helpers() {
        let grid: Vec<f64> = serde_json::from_str(&sweep_grid()).unwrap();
        assert_eq!(grid.len(), 20);
        assert_eq!(min_resource_builtin("crz", 2.0 * std::f64::consts::PI, 1e-4, false, 8), 0);
        assert_eq!(min_resource_builtin("nope", 0.0, 1e-4, false, 8), -2);
    }
}
