use meridian_web::{search, trace, validate};
use serde_json::Value;

fn doc(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn search_validate_trace() {
    let found = doc(search("S3", 1, 2, 3, 5));
    assert_eq!(found["ok"], true);
    let text = found["descriptor"].as_str().unwrap();

    let v = doc(validate(text));
    assert_eq!(v["valid"], true);
    assert_eq!(v["surface"]["components"][0]["genus"], 1);
    assert_eq!(v["surface"]["total_boundary"], 2);

    let t = doc(trace(text));
    assert_eq!(t["ok"], true);
    assert!(t["trace"].as_str().unwrap().starts_with("initial "));
}

#[test]
fn errors_are_reported_not_thrown() {
    assert_eq!(doc(search("T2", 1, 2, 3, 5))["ok"], false);
    assert_eq!(doc(search("S3", 0, 2, 3, 5))["ok"], false);
    assert_eq!(doc(validate("garbage"))["ok"], false);
    let bad = doc(validate(&search_text().replace("winding 2", "winding 1")));
    assert_eq!(bad["valid"], false);
}

fn search_text() -> String {
    doc(search("S3", 2, 0, 3, 5))["descriptor"]
        .as_str()
        .unwrap()
        .to_string()
}
