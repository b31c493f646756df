//! Command implementations behind the `meridian` binary. Each command
//! returns its exit code and output instead of printing, so that the
//! commands can be tested without spawning a process.

use std::fs;
use std::path::Path;

use meridian::descriptor;
use meridian::{
    find_construction, recognize, surface_invariants, trace, validate_assembly, Assembly,
    EndpointKind, Error, MorseTrace, SearchSpec, SurfaceReport,
};
use serde_json::json;

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_CLEAN,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn load(path: &Path) -> Result<Assembly, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))?;
    descriptor::parse(&text).map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))
}

fn summary(s: &SurfaceReport) -> String {
    let genera: Vec<String> = s.components.iter().map(|c| c.genus.to_string()).collect();
    if s.connected {
        format!("genus {}, boundary {}", genera[0], s.total_boundary)
    } else {
        format!(
            "{} components, genus {}, boundary {}",
            s.components.len(),
            genera.join(","),
            s.total_boundary
        )
    }
}

/// Validates an assembly; prints each violated condition, or a one-line
/// summary of the surface when clean.
pub fn cmd_validate(path: &Path, json: bool) -> Outcome {
    let a = match load(path) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let rep = match validate_assembly(&a) {
        Ok(rep) => rep,
        Err(e) => return Outcome::input_error(e),
    };
    if json {
        let surface = rep
            .is_valid()
            .then(|| surface_invariants(&a).ok())
            .flatten();
        let doc = json!({
            "valid": rep.is_valid(),
            "ids": rep.ids(),
            "violations": rep.violations.iter().map(|v| json!({
                "id": v.condition.id(),
                "piece": v.piece,
                "detail": v.detail,
            })).collect::<Vec<_>>(),
            "surface": surface,
        });
        return Outcome {
            code: if rep.is_valid() {
                EXIT_CLEAN
            } else {
                EXIT_VIOLATION
            },
            stdout: format!("{doc}\n"),
            stderr: String::new(),
        };
    }
    if rep.is_valid() {
        let s = surface_invariants(&a).expect("valid assembly");
        return Outcome::ok(format!("valid; {}\n", summary(&s)));
    }
    let mut out = String::new();
    for v in &rep.violations {
        out.push_str(&format!("{v}\n"));
    }
    Outcome {
        code: EXIT_VIOLATION,
        stdout: out,
        stderr: String::new(),
    }
}

fn invalid(e: Error) -> Outcome {
    match e {
        Error::Invalid(rep) => Outcome {
            code: EXIT_VIOLATION,
            stdout: String::new(),
            stderr: rep.violations.iter().map(|v| format!("{v}\n")).collect(),
        },
        Error::ViolationAt { .. } => Outcome {
            code: EXIT_VIOLATION,
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
        other => Outcome::input_error(other),
    }
}

pub fn cmd_invariants(path: &Path, json: bool) -> Outcome {
    let a = match load(path) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let s = match surface_invariants(&a) {
        Ok(s) => s,
        Err(e) => return invalid(e),
    };
    if json {
        return Outcome::ok(format!(
            "{}\n",
            serde_json::to_string(&s).expect("serializable")
        ));
    }
    let genera: Vec<String> = s.components.iter().map(|c| c.genus.to_string()).collect();
    let mut out = format!(
        "components: {}, genus {}, boundary {}\n",
        s.components.len(),
        genera.join(","),
        s.total_boundary
    );
    for (i, c) in s.components.iter().enumerate() {
        out.push_str(&format!(
            "component {i}: chi {}, genus {}, boundary {}\n",
            c.chi, c.genus, c.boundary_circles
        ));
    }
    Outcome::ok(out)
}

pub fn cmd_trace(path: &Path, json: bool) -> Outcome {
    let a = match load(path) {
        Ok(a) => a,
        Err(o) => return o,
    };
    match trace(&a) {
        Ok(t) if json => Outcome::ok(format!(
            "{}\n",
            serde_json::to_string(&t).expect("serializable")
        )),
        Ok(t) => Outcome::ok(t.to_string()),
        Err(e) => invalid(e),
    }
}

pub fn cmd_recognize(path: &Path, bottom: EndpointKind, top: EndpointKind, json: bool) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(format!("{}: {e}", path.display())),
    };
    let t: MorseTrace = match text.parse() {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(format!("{}: {e}", path.display())),
    };
    match recognize(&t, bottom, top) {
        Ok(sk) if json => Outcome::ok(format!(
            "{}\n",
            serde_json::to_string(&sk).expect("serializable")
        )),
        Ok(sk) => Outcome::ok(sk.to_string()),
        Err(e) => invalid(e),
    }
}

pub fn cmd_search(spec: &SearchSpec, json: bool) -> Outcome {
    match find_construction(spec) {
        Ok(a) if json => Outcome::ok(format!(
            "{}\n",
            serde_json::to_string(&a).expect("serializable")
        )),
        Ok(a) => Outcome::ok(descriptor::serialize(&a)),
        Err(f) => Outcome {
            code: EXIT_VIOLATION,
            stdout: String::new(),
            stderr: format!("{f}\n"),
        },
    }
}
