//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every entry point takes and returns JSON text. The `*_json` functions are
//! plain Rust so they can be tested natively; the exported wrappers only turn
//! errors into JS exceptions.

use latstat_core::correlation::nonreversibility_demo;
use latstat_core::descriptor::{run_check, CheckKind, FunctionalDescriptor, LatticeDescriptor};
use latstat_core::report::CheckOptions;
use latstat_core::scalar::parse_rational;
use latstat_core::semimod::{run_counterexample_m3, Windows};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Enumeration cap for checks run in the page.
pub const PAGE_BUDGET: u64 = 2_000_000;

type Res = Result<String, String>;

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("{what}: {e}"))
}

fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

/// Order statistics of a tuple under both defining formulas.
pub fn order_statistics_json(lattice: &str, tuple: &str) -> Res {
    let d: LatticeDescriptor = parse(lattice, "lattice")?;
    let values: Vec<Value> = parse(tuple, "tuple")?;
    let l = d.build().map_err(|e| e.to_string())?;
    let t = l.parse_tuple(&values).map_err(|e| e.to_string())?;
    let (ord, dual) = l.order_statistics(&t).map_err(|e| e.to_string())?;
    Ok(render(&json!({
        "tuple": l.describe_tuple(&t),
        "order_statistics": l.describe_tuple(&ord),
        "order_statistics_dual": l.describe_tuple(&dual),
        "definitions_agree": ord == dual,
    })))
}

/// Exhaustive semimodularity check; `k` is `"n"`, `"relaxed"` or an integer.
pub fn check_json(lattice: &str, functional: &str, relation: &str, k: &str) -> Res {
    let ld: LatticeDescriptor = parse(lattice, "lattice")?;
    let fd: FunctionalDescriptor = parse(functional, "functional")?;
    let kind = match k.trim() {
        "n" => CheckKind::N,
        "relaxed" => CheckKind::Relaxed,
        other => CheckKind::Nk {
            k: other.parse().map_err(|_| format!("k must be n, relaxed or an integer, got {other}"))?,
            windows: Windows::Contiguous,
        },
    };
    let l = ld.build().map_err(|e| e.to_string())?;
    let f = fd.build(&l).map_err(|e| e.to_string())?;
    let opts = CheckOptions::exhaustive().with_budget(PAGE_BUDGET);
    let report = run_check(&l, &f, relation, kind, &opts).map_err(|e| e.to_string())?;
    Ok(render(&serde_json::to_value(report).expect("report serializes")))
}

/// The diamond counterexample report.
pub fn m3_demo_json() -> String {
    render(&serde_json::to_value(run_counterexample_m3()).expect("report serializes"))
}

/// Order-statistic families can be much heavier than the originals.
pub fn nonrev_json(n: usize, delta: &str, eps: &str, r: &str) -> Res {
    let q = |s: &str| parse_rational(s).map_err(|e| e.to_string());
    let rep = nonreversibility_demo(n, &q(delta)?, &q(eps)?, &q(r)?).map_err(|e| e.to_string())?;
    Ok(render(&serde_json::to_value(rep).expect("report serializes")))
}

fn js(r: Res) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = orderStatistics)]
pub fn order_statistics(lattice: &str, tuple: &str) -> Result<String, JsError> {
    js(order_statistics_json(lattice, tuple))
}

#[wasm_bindgen(js_name = checkFunctional)]
pub fn check_functional(lattice: &str, functional: &str, relation: &str, k: &str) -> Result<String, JsError> {
    js(check_json(lattice, functional, relation, k))
}

#[wasm_bindgen(js_name = m3Demo)]
pub fn m3_demo() -> String {
    m3_demo_json()
}

#[wasm_bindgen(js_name = nonreversibility)]
pub fn nonreversibility(n: usize, delta: &str, eps: &str, r: &str) -> Result<String, JsError> {
    js(nonrev_json(n, delta, eps, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_input_is_an_error_not_a_panic() {
        assert!(order_statistics_json("{\"kind\": \"m3\"}", "[9]").is_err());
        assert!(order_statistics_json("{\"kind\": \"nope\"}", "[1]").is_err());
        assert!(check_json("{\"kind\": \"m3\"}", "{}", "ge", "2").is_err());
        assert!(nonrev_json(3, "1/1000", "1/0", "1").is_err());
    }
}
