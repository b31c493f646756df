use std::fmt;

use serde::Serialize;

use crate::pieces::PieceType;

/// Identifier of a checked condition. Numbered conditions print with the
/// construction's own numbering, e.g. `2.8.1(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// Numbered condition `k` of a piece type.
    Piece(PieceType, u8),
    /// Condition `k` on the slope sequence.
    Gamma(u8),
    /// A type-C piece whose arc misses the surface.
    CMustIntersect,
    /// Annuli in a solid torus must wind at least twice longitudinally.
    WindingAtLeastTwo,
    /// A declared winding disagrees with the slope it caps.
    WindingMismatch,
    FRequiresS1xS2,
    ERequiresLens,
    /// Piece type at an end does not match the slope (meridian or not).
    PieceChoice,
    /// Wrong sequence of piece types.
    PiecePattern,
    /// Pieces disagree on the number of sheets.
    UniformR,
    /// Arc endpoints do not close up into a single knot.
    ArcContinuity,
    /// A separating surface component meets the knot an odd number of times.
    Parity,
}

impl Condition {
    pub fn id(&self) -> String {
        match self {
            Condition::Piece(t, k) => format!("{}({k})", t.condition_section()),
            Condition::Gamma(k) => format!("2.8.1({k})"),
            Condition::CMustIntersect => "C-must-intersect".into(),
            Condition::WindingAtLeastTwo => "winding-≥2".into(),
            Condition::WindingMismatch => "winding-mismatch".into(),
            Condition::FRequiresS1xS2 => "F-requires-S1xS2".into(),
            Condition::ERequiresLens => "E-requires-lens".into(),
            Condition::PieceChoice => "piece-choice".into(),
            Condition::PiecePattern => "piece-pattern".into(),
            Condition::UniformR => "uniform-r".into(),
            Condition::ArcContinuity => "arc-continuity".into(),
            Condition::Parity => "parity".into(),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    /// Index of the offending piece, when the violation is local to one.
    pub piece: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.piece {
            Some(i) => write!(f, "{} [piece {i}]: {}", self.condition, self.detail),
            None => write!(f, "{}: {}", self.condition, self.detail),
        }
    }
}

/// List of violated conditions; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, condition: Condition, piece: Option<usize>, detail: impl Into<String>) {
        self.violations.push(Violation {
            condition,
            piece,
            detail: detail.into(),
        });
    }

    /// Distinct condition identifiers in first-seen order.
    pub fn ids(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for v in &self.violations {
            let id = v.condition.id();
            if !out.contains(&id) {
                out.push(id);
            }
        }
        out
    }

    pub fn contains(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let ids = self.ids();
        write!(f, "{}", ids.join(", "))
    }
}
