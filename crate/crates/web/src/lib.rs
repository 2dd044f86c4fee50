//! Browser bindings: each export takes plain parameters and returns a JSON report.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use homlie_core::catalog::osp12;
use homlie_core::cohomology::{cohomology, SignConvention};
use homlie_core::qwitt::{self, inner_coefficient};
use homlie_core::repr::Representation;
use homlie_core::scalars::{FieldSpec, Rational};
use homlie_core::{Error, Parity};

fn field(q: &str) -> Result<FieldSpec, Error> {
    if q.trim() == "q" {
        Ok(FieldSpec::symbolic())
    } else {
        Ok(FieldSpec::specialized(q.trim().parse()?))
    }
}

/// `b_n` for `-n_max <= n <= n_max`.
pub fn b_table_json(n_max: i64, q: &str) -> Result<String, Error> {
    if !(0..=40).contains(&n_max) {
        return Err(Error::Input("choose 0 <= N <= 40".into()));
    }
    let f = field(q)?;
    let rows = (-n_max..=n_max)
        .map(|n| Ok(json!({"n": n, "b": qwitt::b_coefficient(&f, n)?.to_string()})))
        .collect::<Result<Vec<Value>, Error>>()?;
    Ok(json!({"q": q, "rows": rows}).to_string())
}

/// Interior dimensions of the graded solvers on a window, for both parities and
/// `-smax <= s <= smax`. `task` is `derivations:0`, `derivations:1` or `qderivations`.
pub fn qwitt_bands_json(n_max: i64, q: &str, task: &str) -> Result<String, Error> {
    if !(6..=12).contains(&n_max) {
        return Err(Error::Input("choose 6 <= N <= 12".into()));
    }
    let w = qwitt::build_window(n_max, field(q)?)?;
    let smax = (n_max - 6).min(3);
    let mut bands = Vec::new();
    for parity in Parity::BOTH {
        for s in -smax..=smax {
            let (dim, inner) = match task {
                "derivations:0" | "derivations:1" => {
                    let k = if task.ends_with('1') { 1 } else { 0 };
                    (
                        qwitt::graded_derivation_solve(&w, k, parity, s)?.dim(),
                        None,
                    )
                }
                "qderivations" => {
                    let b = qwitt::q_derivation_solve(&w, parity, s)?;
                    let inner = b.is_line_through(|x| inner_coefficient(&w, parity, s, x));
                    (b.dim(), Some(inner))
                }
                _ => return Err(Error::Input(format!("unknown task {task:?}"))),
            };
            bands.push(json!({"parity": parity.bit(), "s": s, "dim": dim, "matches_inner": inner}));
        }
    }
    Ok(json!({"N": n_max, "q": q, "task": task, "bands": bands}).to_string())
}

/// `dim Z`, `dim B`, `dim H` of the osp(1|2) twisted family in degrees `0..=3`.
pub fn osp_cohomology_json(lambda: &str, r: u32, coefficients: &str) -> Result<String, Error> {
    let l: Rational = lambda.trim().parse()?;
    let a = osp12(&l)?;
    let rep = match coefficients {
        "trivial" => Representation::trivial_scalar(&a),
        other => {
            let s = other
                .strip_prefix("adjoint:")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| {
                    Error::Input(format!(
                        "coefficients must be trivial or adjoint:S, got {other:?}"
                    ))
                })?;
            Representation::adjoint(&a, s)?
        }
    };
    let mut rows = Vec::new();
    for k in 0..=3 {
        for parity in Parity::BOTH {
            let c = cohomology(&a, &rep, k, r, parity, SignConvention::Standard)?;
            rows.push(json!({"k": k, "parity": parity.bit(), "dim_Z": c.dim_z(), "dim_B": c.dim_b(), "dim_H": c.dim_h()}));
        }
    }
    Ok(
        json!({"lambda": l.to_string(), "r": r, "coefficients": coefficients, "rows": rows})
            .to_string(),
    )
}

fn js(r: Result<String, Error>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn b_table(n_max: i32, q: &str) -> Result<String, JsValue> {
    js(b_table_json(i64::from(n_max), q))
}

#[wasm_bindgen]
pub fn qwitt_bands(n_max: i32, q: &str, task: &str) -> Result<String, JsValue> {
    js(qwitt_bands_json(i64::from(n_max), q, task))
}

#[wasm_bindgen]
pub fn osp_cohomology(lambda: &str, r: u32, coefficients: &str) -> Result<String, JsValue> {
    js(osp_cohomology_json(lambda, r, coefficients))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_two_is_one() {
        let v: Value = serde_json::from_str(&b_table_json(3, "2").unwrap()).unwrap();
        let row = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["n"] == 2)
            .unwrap();
        assert_eq!(row["b"], "1");
    }

    #[test]
    fn inner_q_derivations() {
        let v: Value =
            serde_json::from_str(&qwitt_bands_json(7, "2", "qderivations").unwrap()).unwrap();
        for b in v["bands"].as_array().unwrap() {
            assert_eq!(b["dim"], 1);
            assert_eq!(b["matches_inner"], true);
        }
    }

    #[test]
    fn osp_second_cohomology_vanishes() {
        let v: Value =
            serde_json::from_str(&osp_cohomology_json("2", 1, "trivial").unwrap()).unwrap();
        let h2: u64 = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r["k"] == 2)
            .map(|r| r["dim_H"].as_u64().unwrap())
            .sum();
        assert_eq!(h2, 0);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(b_table_json(3, "1").is_err());
        assert!(qwitt_bands_json(7, "2", "nope").is_err());
        assert!(osp_cohomology_json("0", 1, "trivial").is_err());
    }
}
