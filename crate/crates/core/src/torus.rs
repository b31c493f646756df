//! Exact arithmetic for curves on the Heegaard torus.
//!
//! Slopes are primitive integer pairs `(m, l)` in a fixed basis of the torus.
//! The basis is chosen so that the curve bounding a disk in the bottom solid
//! torus is always `(1, 0)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Greatest common divisor of the absolute values.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Isotopy class of an essential simple closed curve on the torus.
///
/// Always stored in canonical form: `l > 0`, or `l == 0` and `m == 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Slope {
    m: i64,
    l: i64,
}

impl Slope {
    /// `(1, 0)`, the curve bounding a disk in the bottom solid torus.
    pub const LONGITUDE_DISK: Slope = Slope { m: 1, l: 0 };
    /// `(0, 1)`.
    pub const DUAL: Slope = Slope { m: 0, l: 1 };

    pub fn new(m: i64, l: i64) -> Result<Self, Error> {
        canonicalize(m, l)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn l(&self) -> i64 {
        self.l
    }
}

impl TryFrom<(i64, i64)> for Slope {
    type Error = Error;

    fn try_from((m, l): (i64, i64)) -> Result<Self, Error> {
        canonicalize(m, l)
    }
}

impl From<Slope> for (i64, i64) {
    fn from(s: Slope) -> Self {
        (s.m, s.l)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.m, self.l)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (m, l) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("slope `{s}` is not of the form m,l")))?;
        let m = m
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad slope coordinate `{m}`")))?;
        let l = l
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad slope coordinate `{l}`")))?;
        canonicalize(m, l)
    }
}

/// Reduces `(raw_m, raw_l)` to a primitive pair in canonical sign form.
pub fn canonicalize(raw_m: i64, raw_l: i64) -> Result<Slope, Error> {
    if raw_m == 0 && raw_l == 0 {
        return Err(Error::ZeroVector);
    }
    let g = gcd(raw_m, raw_l);
    let (mut m, mut l) = (raw_m / g, raw_l / g);
    if l < 0 || (l == 0 && m < 0) {
        m = -m;
        l = -l;
    }
    Ok(Slope { m, l })
}

/// Minimal geometric intersection number of two slopes.
pub fn delta(a: Slope, b: Slope) -> u64 {
    (a.m * b.l - a.l * b.m).unsigned_abs()
}

/// Ambient manifold of a genus-one Heegaard splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ManifoldKind {
    S3,
    S1xS2,
    Lens { p: u32, q: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ManifoldKind", into = "ManifoldKind")]
pub struct ManifoldSpec {
    kind: ManifoldKind,
}

impl ManifoldSpec {
    pub const S3: ManifoldSpec = ManifoldSpec {
        kind: ManifoldKind::S3,
    };
    pub const S1XS2: ManifoldSpec = ManifoldSpec {
        kind: ManifoldKind::S1xS2,
    };

    /// `L(p, q)` with `p >= 2`, `0 < q < p` and `gcd(p, q) = 1`.
    pub fn lens(p: u32, q: u32) -> Result<Self, Error> {
        if p < 2 || q == 0 || q >= p || gcd(p as i64, q as i64) != 1 {
            return Err(Error::InvalidLens { p, q });
        }
        Ok(ManifoldSpec {
            kind: ManifoldKind::Lens { p, q },
        })
    }

    pub fn kind(&self) -> ManifoldKind {
        self.kind
    }

    /// Curve on the bottom boundary torus that bounds a disk in `R_0`.
    pub fn lambda(&self) -> Slope {
        Slope::LONGITUDE_DISK
    }

    /// Curve on the top boundary torus that bounds a meridian disk in `R_1`.
    pub fn mu(&self) -> Slope {
        match self.kind {
            ManifoldKind::S3 => Slope::DUAL,
            ManifoldKind::S1xS2 => Slope::LONGITUDE_DISK,
            ManifoldKind::Lens { p, q } => {
                canonicalize(q as i64, p as i64).expect("p >= 2 so the pair is nonzero")
            }
        }
    }

    pub fn is_lens(&self) -> bool {
        matches!(self.kind, ManifoldKind::Lens { .. })
    }
}

impl TryFrom<ManifoldKind> for ManifoldSpec {
    type Error = Error;

    fn try_from(kind: ManifoldKind) -> Result<Self, Error> {
        match kind {
            ManifoldKind::Lens { p, q } => ManifoldSpec::lens(p, q),
            kind => Ok(ManifoldSpec { kind }),
        }
    }
}

impl From<ManifoldSpec> for ManifoldKind {
    fn from(m: ManifoldSpec) -> Self {
        m.kind
    }
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ManifoldKind::S3 => f.write_str("S3"),
            ManifoldKind::S1xS2 => f.write_str("S1xS2"),
            ManifoldKind::Lens { p, q } => write!(f, "L({p},{q})"),
        }
    }
}

impl FromStr for ManifoldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        match t {
            "S3" | "s3" => return Ok(ManifoldSpec::S3),
            "S1xS2" | "s1xs2" | "S1XS2" => return Ok(ManifoldSpec::S1XS2),
            _ => {}
        }
        let inner = t
            .strip_prefix("L(")
            .or_else(|| t.strip_prefix("l("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown manifold `{t}`")))?;
        let (p, q) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("lens space `{t}` needs p,q")))?;
        let p = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad lens parameter `{p}`")))?;
        let q = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad lens parameter `{q}`")))?;
        ManifoldSpec::lens(p, q)
    }
}

/// The 2-bridge knot `b(p, q)`, used as a witness that an arc cannot be
/// pushed onto the adjacent sheet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct TwoBridgeFraction {
    p: u32,
    q: u32,
}

impl TwoBridgeFraction {
    pub const UNKNOT: TwoBridgeFraction = TwoBridgeFraction { p: 1, q: 0 };
    pub const TREFOIL: TwoBridgeFraction = TwoBridgeFraction { p: 3, q: 1 };

    pub fn new(p: u32, q: u32) -> Result<Self, Error> {
        let ok = if p == 1 {
            q == 0
        } else {
            p % 2 == 1 && q > 0 && q < p && gcd(p as i64, q as i64) == 1
        };
        if ok {
            Ok(TwoBridgeFraction { p, q })
        } else {
            Err(Error::InvalidFraction { p, q })
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

impl TryFrom<(u32, u32)> for TwoBridgeFraction {
    type Error = Error;

    fn try_from((p, q): (u32, u32)) -> Result<Self, Error> {
        TwoBridgeFraction::new(p, q)
    }
}

impl From<TwoBridgeFraction> for (u32, u32) {
    fn from(f: TwoBridgeFraction) -> Self {
        (f.p, f.q)
    }
}

impl fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for TwoBridgeFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (p, q) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("fraction `{s}` is not of the form p/q")))?;
        let p = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction numerator `{p}`")))?;
        let q = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction denominator `{q}`")))?;
        TwoBridgeFraction::new(p, q)
    }
}

pub fn is_nontrivial_two_bridge(f: TwoBridgeFraction) -> bool {
    f.p >= 3
}

/// Schubert classification: `b(p, q) = b(p', q')` iff `p = p'` and
/// `q' = q^{±1} mod p`.
pub fn two_bridge_equivalent(f1: TwoBridgeFraction, f2: TwoBridgeFraction) -> bool {
    if f1.p != f2.p {
        return false;
    }
    let p = f1.p as u64;
    if p == 1 {
        return true;
    }
    let (a, b) = (f1.q as u64 % p, f2.q as u64 % p);
    a == b || (a * b) % p == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(m: i64, l: i64) -> Slope {
        canonicalize(m, l).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(s(1, 0), s(1, 0)), 0);
        assert_eq!(delta(s(1, 0), s(0, 1)), 1);
        assert_eq!(delta(s(2, 1), s(1, 2)), 3);
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(s(2, 4), s(1, 2));
        assert_eq!(s(-1, 0), s(1, 0));
        assert_eq!(s(-3, -6), s(1, 2));
        assert_eq!(s(3, -6), s(-1, 2));
        assert!(matches!(canonicalize(0, 0), Err(Error::ZeroVector)));
    }

    #[test]
    fn manifold_meridians() {
        let s3 = ManifoldSpec::S3;
        assert_eq!(delta(s3.mu(), s3.lambda()), 1);
        let s1s2 = ManifoldSpec::S1XS2;
        assert_eq!(delta(s1s2.mu(), s1s2.lambda()), 0);
        let l52 = ManifoldSpec::lens(5, 2).unwrap();
        assert_eq!(l52.mu(), s(2, 5));
        assert_eq!(delta(l52.mu(), l52.lambda()), 5);
        assert!(ManifoldSpec::lens(4, 2).is_err());
        assert!(ManifoldSpec::lens(5, 5).is_err());
        assert!(ManifoldSpec::lens(1, 0).is_err());
    }

    #[test]
    fn fraction_validity() {
        assert!(TwoBridgeFraction::new(1, 0).is_ok());
        assert!(TwoBridgeFraction::new(1, 1).is_err());
        assert!(TwoBridgeFraction::new(4, 1).is_err());
        assert!(TwoBridgeFraction::new(9, 3).is_err());
        assert!(TwoBridgeFraction::new(5, 0).is_err());
    }

    #[test]
    fn two_bridge_examples() {
        let f = |p, q| TwoBridgeFraction::new(p, q).unwrap();
        assert!(!is_nontrivial_two_bridge(f(1, 0)));
        assert!(is_nontrivial_two_bridge(f(3, 1)));
        assert!(is_nontrivial_two_bridge(f(5, 3)));
        assert!(two_bridge_equivalent(f(3, 1), f(3, 1)));
        assert!(two_bridge_equivalent(f(5, 2), f(5, 3)));
        assert!(!two_bridge_equivalent(f(5, 2), f(7, 2)));
        assert!(!two_bridge_equivalent(f(5, 1), f(5, 2)));
    }

    #[test]
    fn parse_display_roundtrip() {
        let sl: Slope = "(-2,-3)".parse().unwrap();
        assert_eq!(sl, s(2, 3));
        assert_eq!(sl.to_string().parse::<Slope>().unwrap(), sl);
        let m: ManifoldSpec = "L(7,3)".parse().unwrap();
        assert_eq!(m.to_string(), "L(7,3)");
        assert!("L(6,3)".parse::<ManifoldSpec>().is_err());
        let f: TwoBridgeFraction = "5/2".parse().unwrap();
        assert_eq!(f.to_string(), "5/2");
    }
}
