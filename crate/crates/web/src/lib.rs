//! Browser bindings. Each export wraps a plain Rust function returning
//! `Result<_, String>` so the logic can be tested natively.

use std::fmt::Write as _;

use tcsim::analysis::{distance_to_set, dominant_frequencies, predicted_frequencies};
use tcsim::scenario::{
    ClosedFormSpec, CouplingSpec, EnvironmentSpec, GridSpec, Model, OracleSpec, OscillatorSpec,
    Scenario,
};
use tcsim::tc_closed::spectral_params;
use tcsim::{Couplings, TcModel};
use wasm_bindgen::prelude::*;

/// Oscillator preparation as chosen on the page.
/// `number` uses `n`, `binomial` uses `n` and `q`, `mixture01` uses `q` as `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preparation<'a> {
    pub kind: &'a str,
    pub n: u32,
    pub q: f64,
}

fn oscillator(prep: Preparation) -> Result<OscillatorSpec, String> {
    Ok(match prep.kind {
        "number" => OscillatorSpec::Number { n: prep.n as usize },
        "binomial" => OscillatorSpec::Binomial {
            m: prep.n as usize,
            q: prep.q,
        },
        "mixture01" => OscillatorSpec::Mixture01 { f: prep.q },
        other => return Err(format!("unknown preparation `{other}`")),
    })
}

pub fn scenario(
    prep: Preparation,
    p: f64,
    lambda2: f64,
    t_end: f64,
    points: u32,
) -> Result<Scenario, String> {
    Ok(Scenario {
        oscillator: oscillator(prep)?,
        environment: EnvironmentSpec { p },
        couplings: CouplingSpec {
            lambda1: 1.0,
            lambda2,
        },
        grid: GridSpec {
            t_start: 0.0,
            t_end,
            points: points as usize,
        },
        oracle: OracleSpec::default(),
        closed_form: ClosedFormSpec::default(),
    })
}

pub fn curve(s: &Scenario) -> Result<Vec<f64>, String> {
    let out = s.run(false).map_err(|e| e.to_string())?;
    Ok(out.closed.values().to_vec())
}

/// Largest closed-form/oracle disagreement on the scenario grid.
pub fn oracle_error(s: &Scenario) -> Result<f64, String> {
    let out = s.run(true).map_err(|e| e.to_string())?;
    out.max_abs_err().ok_or_else(|| "oracle did not run".into())
}

/// `[frequency, amplitude, distance in bins, ...]` for the strongest peaks.
/// The distance is NaN when no prediction is available.
pub fn peaks(s: &Scenario, count: usize) -> Result<Vec<f64>, String> {
    let out = s.run(false).map_err(|e| e.to_string())?;
    let report = dominant_frequencies(&out.closed, count).map_err(|e| e.to_string())?;
    let predicted = match s.resolve().map_err(|e| e.to_string())? {
        Model::TavisCummings { config, reading } => Some(predicted_frequencies(
            &TcModel::with_reading(&config, reading).map_err(|e| e.to_string())?,
        )),
        Model::Mixture01 { .. } => None,
    };
    Ok(report
        .peaks
        .iter()
        .flat_map(|pk| {
            let bins = predicted.as_ref().map_or(f64::NAN, |set| {
                distance_to_set(pk.frequency, set) / report.resolution
            });
            [pk.frequency, pk.amplitude, bins]
        })
        .collect())
}

/// JSON rows `{n, d_plus, d_minus, d_plus_primed, d_minus_primed}` for `0..=n_max`.
pub fn spectral_table_json(n_max: u32, lambda2: f64) -> Result<String, String> {
    let c = Couplings::new(1.0, lambda2).map_err(|e| e.to_string())?;
    let mut s = String::from("[");
    for n in 0..=n_max as i64 {
        let u = spectral_params(n, &c).map_err(|e| e.to_string())?;
        let v = spectral_params(n - 1, &c).map_err(|e| e.to_string())?;
        if n > 0 {
            s.push(',');
        }
        let _ = write!(
            s,
            r#"{{"n":{n},"d_plus":{},"d_minus":{},"d_plus_primed":{},"d_minus_primed":{}}}"#,
            u.d_plus, u.d_minus, v.d_plus, v.d_minus
        );
    }
    s.push(']');
    Ok(s)
}

fn js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

fn build(
    kind: &str,
    n: u32,
    q: f64,
    p: f64,
    lambda2: f64,
    t_end: f64,
    points: u32,
) -> Result<Scenario, JsValue> {
    scenario(Preparation { kind, n, q }, p, lambda2, t_end, points).map_err(js)
}

/// Linear entropy of qubit1 on `points` samples of `[0, t_end]`.
#[wasm_bindgen]
pub fn entropy_curve(
    kind: &str,
    n: u32,
    q: f64,
    p: f64,
    lambda2: f64,
    t_end: f64,
    points: u32,
) -> Result<Vec<f64>, JsValue> {
    curve(&build(kind, n, q, p, lambda2, t_end, points)?).map_err(js)
}

#[wasm_bindgen]
pub fn oracle_check(
    kind: &str,
    n: u32,
    q: f64,
    p: f64,
    lambda2: f64,
    t_end: f64,
    points: u32,
) -> Result<f64, JsValue> {
    oracle_error(&build(kind, n, q, p, lambda2, t_end, points)?).map_err(js)
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn spectral_peaks(
    kind: &str,
    n: u32,
    q: f64,
    p: f64,
    lambda2: f64,
    t_end: f64,
    points: u32,
    count: u32,
) -> Result<Vec<f64>, JsValue> {
    peaks(
        &build(kind, n, q, p, lambda2, t_end, points)?,
        count as usize,
    )
    .map_err(js)
}

#[wasm_bindgen]
pub fn spectral_table(n_max: u32, lambda2: f64) -> Result<String, JsValue> {
    spectral_table_json(n_max, lambda2).map_err(js)
}
