//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON document `{"ok": true, ...}` or `{"ok": false, "error": ...}`,
//! so the same functions are callable from native tests.

use meridian::descriptor;
use meridian::{
    find_construction, surface_invariants, trace as morse_trace, validate_assembly, Assembly,
    ManifoldSpec, SearchSpec,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn fail(msg: impl std::fmt::Display) -> String {
    json!({ "ok": false, "error": msg.to_string() }).to_string()
}

fn parse(text: &str) -> Result<Assembly, String> {
    descriptor::parse(text).map_err(|e| e.to_string())
}

fn surface(a: &Assembly) -> Value {
    surface_invariants(a)
        .map(|s| serde_json::to_value(s).expect("serializable"))
        .unwrap_or(Value::Null)
}

/// Finds the first construction for the given surface and returns its
/// descriptor.
#[wasm_bindgen]
pub fn search(manifold: &str, genus: u32, boundary: u32, max_r: u32, max_pieces: u32) -> String {
    let m: ManifoldSpec = match manifold.parse() {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let mut spec = SearchSpec::new(m, genus, boundary);
    spec.max_r = max_r;
    spec.max_pieces = max_pieces;
    match find_construction(&spec) {
        Ok(a) => json!({
            "ok": true,
            "descriptor": descriptor::serialize(&a),
            "pieces": a.types().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "r": a.r,
            "surface": surface(&a),
        })
        .to_string(),
        Err(f) => fail(f),
    }
}

#[wasm_bindgen]
pub fn validate(text: &str) -> String {
    let a = match parse(text) {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    match validate_assembly(&a) {
        Ok(rep) => json!({
            "ok": true,
            "valid": rep.is_valid(),
            "ids": rep.ids(),
            "violations": rep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "surface": if rep.is_valid() { surface(&a) } else { Value::Null },
        })
        .to_string(),
        Err(e) => fail(e),
    }
}

#[wasm_bindgen]
pub fn trace(text: &str) -> String {
    let a = match parse(text) {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    match morse_trace(&a) {
        Ok(t) => {
            let (s1, s2) = t.saddle_counts();
            json!({ "ok": true, "trace": t.to_string(), "saddles": [s1, s2] }).to_string()
        }
        Err(e) => fail(e),
    }
}
