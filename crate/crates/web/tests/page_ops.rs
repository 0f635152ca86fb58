use latstat_web::{check_json, m3_demo_json, nonrev_json, order_statistics_json};
use serde_json::{json, Value};

const M3: &str = r#"{"kind": "m3"}"#;
const QUAD: &str = r#"{"family": "quadratic", "coeffs": {"12": [1, 2], "3": [2, 3], "5": [1, 3]}}"#;

fn v(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn diamond_order_statistics() {
    let r = v(&order_statistics_json(M3, "[2, 3, 4]").unwrap());
    assert_eq!(r["order_statistics"], json!([1, 5, 5]));
    assert_eq!(r["order_statistics_dual"], json!([1, 1, 5]));
    assert_eq!(r["definitions_agree"], json!(false));
}

#[test]
fn function_lattice_order_statistics_sort_pointwise() {
    let l = r#"{"kind": "fn", "ground_size": 2, "chain_max": 3}"#;
    let r = v(&order_statistics_json(l, "[[3, 0], [1, 2], [2, 1]]").unwrap());
    let one = |n: i64| json!({"num": n, "den": 1});
    assert_eq!(r["order_statistics"], json!([[one(1), one(0)], [one(2), one(1)], [one(3), one(2)]]));
    assert_eq!(r["definitions_agree"], json!(true));
}

#[test]
fn diamond_functional_checks() {
    let k2 = v(&check_json(M3, QUAD, "ge", "2").unwrap());
    assert_eq!(k2["holds"], json!(true));
    assert_eq!(k2["instances_checked"], json!(250));
    let n = v(&check_json(M3, QUAD, "ge", "n").unwrap());
    assert_eq!(n["holds"], json!(false));
}

#[test]
fn demos() {
    let m3 = v(&m3_demo_json());
    assert_eq!(m3["reproduced"], json!(true));
    let nr = v(&nonrev_json(3, "1/1000", "1/10000", "1").unwrap());
    assert_eq!(nr["orderstat_family_sizes"], json!([9, 9]));
    assert!(nr["ratio_relative_deviation"].as_f64().unwrap() < 0.1);
}
