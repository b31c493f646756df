//! Level events of the surface with respect to the torus height function.
//!
//! Reading an assembly from bottom to top, the level curves of the surface
//! are either essential curves of one slope or nested trivial curves. A
//! type 2 saddle merges two essential curves into a trivial one; a type 1
//! saddle splits a trivial curve into two essential ones. The knot may meet
//! the surface only at levels without trivial curves.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::assembler::{validate_assembly, Assembly};
use crate::error::Error;
use crate::pieces::PieceType;
use crate::torus::Slope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelState {
    pub essential_count: u32,
    pub essential_slope: Option<Slope>,
    pub trivial_count: u32,
}

impl LevelState {
    pub fn essential(count: u32, slope: Slope) -> Self {
        LevelState {
            essential_count: count,
            essential_slope: if count > 0 { Some(slope) } else { None },
            trivial_count: 0,
        }
    }
}

impl fmt::Display for LevelState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.essential_slope {
            Some(s) => write!(f, "{} {} {}", self.essential_count, s, self.trivial_count),
            None => write!(f, "{} - {}", self.essential_count, self.trivial_count),
        }
    }
}

impl FromStr for LevelState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [ess, slope, triv] = parts.as_slice() else {
            return Err(Error::Parse(format!(
                "level state `{s}` needs three fields"
            )));
        };
        let num = |x: &str| {
            x.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad count `{x}`")))
        };
        let essential_slope = match *slope {
            "-" => None,
            other => Some(other.parse()?),
        };
        Ok(LevelState {
            essential_count: num(ess)?,
            essential_slope,
            trivial_count: num(triv)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EventKind {
    /// A trivial curve splits into two essential curves of the given slope.
    Saddle1(Slope),
    /// Two essential curves merge into a trivial curve.
    Saddle2,
    /// Representable only so that it can be rejected.
    Saddle3,
    /// Representable only so that it can be rejected.
    Saddle4,
    /// The knot meets the surface on the given vertical annulus or disk.
    Crossing(u32),
    /// Boundary between two glued pieces.
    InterfaceMark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MorseEvent {
    pub rank: u32,
    pub kind: EventKind,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventKind::Saddle1(s) => write!(f, "S1({s})"),
            EventKind::Saddle2 => f.write_str("S2"),
            EventKind::Saddle3 => f.write_str("S3"),
            EventKind::Saddle4 => f.write_str("S4"),
            EventKind::Crossing(p) => write!(f, "X({p})"),
            EventKind::InterfaceMark => f.write_str("IF"),
        }
    }
}

impl FromStr for EventKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let inner = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|t| t.strip_prefix('('))
                .and_then(|t| t.strip_suffix(')'))
        };
        match s {
            "S2" => return Ok(EventKind::Saddle2),
            "S3" => return Ok(EventKind::Saddle3),
            "S4" => return Ok(EventKind::Saddle4),
            "IF" => return Ok(EventKind::InterfaceMark),
            "MAX" | "MIN" => {
                return Err(Error::Parse(format!(
                    "`{s}`: surface extrema are not trace events"
                )))
            }
            _ => {}
        }
        if let Some(slope) = inner("S1") {
            return Ok(EventKind::Saddle1(slope.parse()?));
        }
        if let Some(pos) = inner("X") {
            return pos
                .parse()
                .map(EventKind::Crossing)
                .map_err(|_| Error::Parse(format!("bad crossing position in `{s}`")));
        }
        Err(Error::Parse(format!("unknown event `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorseTrace {
    pub initial: LevelState,
    pub events: Vec<MorseEvent>,
    #[serde(rename = "final")]
    pub final_state: LevelState,
}

impl MorseTrace {
    pub fn saddle_counts(&self) -> (usize, usize) {
        let s1 = self
            .events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::Saddle1(_)))
            .count();
        let s2 = self
            .events
            .iter()
            .filter(|e| e.kind == EventKind::Saddle2)
            .count();
        (s1, s2)
    }
}

impl fmt::Display for MorseTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "initial {}", self.initial)?;
        for e in &self.events {
            writeln!(f, "{} {}", e.rank, e.kind)?;
        }
        writeln!(f, "final {}", self.final_state)
    }
}

impl FromStr for MorseTrace {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let mut initial = None;
        let mut final_state = None;
        let mut events = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |e: Error| Error::Parse(format!("line {}: {e}", no + 1));
            if let Some(rest) = line.strip_prefix("initial ") {
                initial = Some(rest.parse().map_err(at)?);
            } else if let Some(rest) = line.strip_prefix("final ") {
                final_state = Some(rest.parse().map_err(at)?);
            } else {
                let (rank, kind) = line
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::Parse(format!("line {}: missing event", no + 1)))?;
                let rank = rank
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad rank `{rank}`", no + 1)))?;
                events.push(MorseEvent {
                    rank,
                    kind: kind.parse().map_err(at)?,
                });
            }
        }
        Ok(MorseTrace {
            initial: initial.ok_or_else(|| Error::Parse("missing `initial` line".into()))?,
            events,
            final_state: final_state.ok_or_else(|| Error::Parse("missing `final` line".into()))?,
        })
    }
}

/// Event trace of a valid assembly, bottom to top.
///
/// The bottom piece emits its crossings and then `r` type 2 saddles; every
/// type A piece emits `r` type 1 saddles, its crossings and `r` type 2
/// saddles; the top piece emits `r` type 1 saddles and its crossings.
/// Glued levels are marked. A single piece has no saddles.
pub fn trace(a: &Assembly) -> Result<MorseTrace, Error> {
    let rep = validate_assembly(a)?;
    if !rep.is_valid() {
        return Err(Error::Invalid(rep));
    }
    let mut kinds = Vec::new();
    let physical = |i: usize| {
        let mut xs = a.pieces[i].crossing_positions();
        if a.is_flipped(i) {
            xs.reverse();
        }
        xs.into_iter().map(EventKind::Crossing)
    };
    let last = a.pieces.len() - 1;
    let g0 = a.gamma[0];
    if last == 0 {
        kinds.extend(physical(0));
        let ess = a.pieces[0].curve_count();
        let state = LevelState::essential(ess, g0);
        return Ok(number(state, kinds, state));
    }
    let r = a.r as usize;
    for i in 0..=last {
        if i > 0 {
            kinds.extend(std::iter::repeat_n(EventKind::Saddle1(a.gamma[i]), r));
        }
        kinds.extend(physical(i));
        if i < last {
            kinds.extend(std::iter::repeat_n(EventKind::Saddle2, r));
            kinds.push(EventKind::InterfaceMark);
        }
    }
    Ok(number(
        LevelState::essential(2 * a.r, g0),
        kinds,
        LevelState::essential(2 * a.r, a.gamma[last]),
    ))
}

fn number(initial: LevelState, kinds: Vec<EventKind>, final_state: LevelState) -> MorseTrace {
    MorseTrace {
        initial,
        events: kinds
            .into_iter()
            .enumerate()
            .map(|(i, kind)| MorseEvent {
                rank: i as u32 + 1,
                kind,
            })
            .collect(),
        final_state,
    }
}

/// Runs the events from the initial state, enforcing the saddle grammar,
/// and checks the declared final state.
pub fn replay(t: &MorseTrace) -> Result<LevelState, Error> {
    let mut st = t.initial;
    let fail = |rank: u32, rule: &str| {
        Err(Error::ViolationAt {
            rank,
            rule: rule.to_string(),
        })
    };
    if (st.essential_count > 0) != st.essential_slope.is_some() {
        return fail(0, "slope-iff-essential");
    }
    let mut prev = 0;
    for e in &t.events {
        if e.rank <= prev {
            return fail(e.rank, "rank-order");
        }
        prev = e.rank;
        match e.kind {
            EventKind::Saddle3 => return fail(e.rank, "saddle-type-3"),
            EventKind::Saddle4 => return fail(e.rank, "saddle-type-4"),
            EventKind::Saddle2 => {
                if st.essential_count < 2 {
                    return fail(e.rank, "no-essential-pair");
                }
                st.essential_count -= 2;
                st.trivial_count += 1;
                if st.essential_count == 0 {
                    st.essential_slope = None;
                }
            }
            EventKind::Saddle1(slope) => {
                if st.trivial_count < 1 {
                    return fail(e.rank, "no-trivial-curve");
                }
                if st.essential_slope.is_some_and(|s| s != slope) {
                    return fail(e.rank, "slope-mismatch");
                }
                st.trivial_count -= 1;
                st.essential_count += 2;
                st.essential_slope = Some(slope);
            }
            EventKind::Crossing(_) => {
                if st.trivial_count > 0 {
                    return fail(e.rank, "crossing-with-trivial-curves");
                }
                if st.essential_count == 0 {
                    return fail(e.rank, "crossing-without-surface");
                }
            }
            EventKind::InterfaceMark => {}
        }
    }
    if st != t.final_state {
        return fail(prev + 1, "final-state-mismatch");
    }
    Ok(st)
}

/// What the surface looks like at an end of the trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EndpointKind {
    Annuli,
    MeridianDisks,
}

impl FromStr for EndpointKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "annuli" => Ok(EndpointKind::Annuli),
            "disks" | "meridian-disks" => Ok(EndpointKind::MeridianDisks),
            other => Err(Error::Parse(format!("unknown endpoint kind `{other}`"))),
        }
    }
}

/// Kinds of the surface at the bottom and top ends of an assembly's trace.
pub fn endpoint_kinds(a: &Assembly) -> (EndpointKind, EndpointKind) {
    use EndpointKind::*;
    let kind = |t: PieceType| match t {
        PieceType::C => MeridianDisks,
        _ => Annuli,
    };
    let types = a.types();
    match types.as_slice() {
        [PieceType::D] => (Annuli, Annuli),
        [PieceType::F] => (MeridianDisks, MeridianDisks),
        [PieceType::E] if a.is_flipped(0) => (MeridianDisks, Annuli),
        [PieceType::E] => (Annuli, MeridianDisks),
        [first, .., last] => (kind(*first), kind(*last)),
        _ => (Annuli, Annuli),
    }
}

impl fmt::Display for EndpointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndpointKind::Annuli => "annuli",
            EndpointKind::MeridianDisks => "disks",
        })
    }
}

/// Decomposition shape recovered from a trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    pub types: Vec<PieceType>,
    pub r: u32,
    /// Crossing positions of each piece, in the piece's own rank order.
    pub crossings: Vec<Vec<u32>>,
}

impl Skeleton {
    pub fn of(a: &Assembly) -> Skeleton {
        Skeleton {
            types: a.types(),
            r: a.r,
            crossings: a.pieces.iter().map(|p| p.crossing_positions()).collect(),
        }
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let types: Vec<String> = self.types.iter().map(|t| t.to_string()).collect();
        writeln!(f, "pieces: {}", types.join(" "))?;
        writeln!(f, "r: {}", self.r)?;
        for (i, (t, xs)) in self.types.iter().zip(&self.crossings).enumerate() {
            let xs: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            writeln!(f, "piece {i} {t}: crossings [{}]", xs.join(" "))?;
        }
        Ok(())
    }
}

/// Parses a trace back into pieces: blocks of `r` type 2 saddles followed
/// by `r` type 1 saddles delimit the pieces, the end kinds decide between
/// types B and C, and a trace without saddles is a single piece of type D,
/// E or F.
pub fn recognize(
    t: &MorseTrace,
    bottom: EndpointKind,
    top: EndpointKind,
) -> Result<Skeleton, Error> {
    let perr = |m: String| Err(Error::Parse(m));
    let first_saddle = t
        .events
        .iter()
        .map(|e| e.kind)
        .find(|k| !matches!(k, EventKind::Crossing(_) | EventKind::InterfaceMark));
    if let Some(EventKind::Saddle1(_)) = first_saddle {
        return perr("the first saddle is of type 1, expected type 2".into());
    }
    replay(t)?;
    let mut segments: Vec<Vec<EventKind>> = vec![Vec::new()];
    for e in &t.events {
        match e.kind {
            EventKind::InterfaceMark => segments.push(Vec::new()),
            k => segments.last_mut().expect("nonempty").push(k),
        }
    }
    let crossings = |seg: &[EventKind]| -> Vec<u32> {
        seg.iter()
            .filter_map(|k| match k {
                EventKind::Crossing(p) => Some(*p),
                _ => None,
            })
            .collect()
    };
    let ess = t.initial.essential_count;

    if segments.len() == 1 {
        let seg = &segments[0];
        if seg.iter().any(|k| !matches!(k, EventKind::Crossing(_))) {
            return perr("saddles without a glued level".into());
        }
        use EndpointKind::*;
        let (ty, r) = match (bottom, top) {
            (Annuli, Annuli) => (PieceType::D, ess / 2),
            (MeridianDisks, MeridianDisks) => (PieceType::F, ess),
            _ => (PieceType::E, ess / 2),
        };
        if ty != PieceType::F && ess % 2 == 1 {
            return perr(format!("odd number {ess} of essential curves"));
        }
        if r == 0 {
            return perr("no essential curves".into());
        }
        let mut xs = crossings(seg);
        if ty == PieceType::E && bottom == MeridianDisks {
            xs.reverse();
        }
        return Ok(Skeleton {
            types: vec![ty],
            r,
            crossings: vec![xs],
        });
    }

    let last = segments.len() - 1;
    let r = segments[0]
        .iter()
        .filter(|k| **k == EventKind::Saddle2)
        .count() as u32;
    if r == 0 {
        return perr("bottom piece has no type 2 saddles".into());
    }
    if ess != 2 * r {
        return perr(format!("{ess} essential curves but blocks of {r} saddles"));
    }
    let mut types = Vec::with_capacity(segments.len());
    let mut all = Vec::with_capacity(segments.len());
    for (i, seg) in segments.iter().enumerate() {
        // expected shape: S1^r (i > 0), crossings, S2^r (i < last)
        let lead = if i > 0 { r as usize } else { 0 };
        let tail = if i < last { r as usize } else { 0 };
        if seg.len() < lead + tail {
            return perr(format!("piece {i} is missing saddles"));
        }
        let ok_lead = seg[..lead]
            .iter()
            .all(|k| matches!(k, EventKind::Saddle1(_)));
        let ok_tail = seg[seg.len() - tail..]
            .iter()
            .all(|k| *k == EventKind::Saddle2);
        let mid = &seg[lead..seg.len() - tail];
        let ok_mid = mid.iter().all(|k| matches!(k, EventKind::Crossing(_)));
        if !(ok_lead && ok_tail && ok_mid) {
            return perr(format!(
                "piece {i} is not a block of {r} type 1 saddles, crossings, {r} type 2 saddles"
            ));
        }
        let mut xs = crossings(mid);
        let ty = if i == 0 || i == last {
            let kind = if i == 0 { bottom } else { top };
            match kind {
                EndpointKind::Annuli => PieceType::B,
                EndpointKind::MeridianDisks => PieceType::C,
            }
        } else {
            PieceType::A
        };
        if i == 0 {
            xs.reverse();
        }
        types.push(ty);
        all.push(xs);
    }
    Ok(Skeleton {
        types,
        r,
        crossings: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(m: i64, l: i64) -> Slope {
        Slope::new(m, l).unwrap()
    }

    #[test]
    fn empty_trace_is_identity() {
        let st = LevelState::essential(2, s(1, 2));
        let t = MorseTrace {
            initial: st,
            events: vec![],
            final_state: st,
        };
        assert_eq!(replay(&t).unwrap(), st);
    }

    #[test]
    fn type_one_saddle_first_underflows() {
        let st = LevelState::essential(2, s(1, 2));
        let t = MorseTrace {
            initial: st,
            events: vec![MorseEvent {
                rank: 1,
                kind: EventKind::Saddle1(s(1, 2)),
            }],
            final_state: st,
        };
        assert_eq!(
            replay(&t),
            Err(Error::ViolationAt {
                rank: 1,
                rule: "no-trivial-curve".into()
            })
        );
    }

    #[test]
    fn text_round_trip() {
        let text = "initial 2 1,2 0\n1 X(1)\n2 S2\n3 IF\n4 S1(0,1)\n5 X(2)\nfinal 2 0,1 0\n";
        let t: MorseTrace = text.parse().unwrap();
        assert_eq!(t.to_string(), text);
        let sk = recognize(&t, EndpointKind::Annuli, EndpointKind::MeridianDisks).unwrap();
        assert_eq!(sk.types, vec![PieceType::B, PieceType::C]);
        assert_eq!(sk.r, 1);
        assert_eq!(sk.crossings, vec![vec![1], vec![2]]);
    }

    #[test]
    fn recognizer_rejects_leading_type_one_saddle() {
        let t: MorseTrace = "initial 2 1,2 0\n1 S1(1,2)\n2 S2\nfinal 2 1,2 0\n"
            .parse()
            .unwrap();
        assert!(matches!(
            recognize(&t, EndpointKind::Annuli, EndpointKind::Annuli),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn extrema_are_unrepresentable() {
        assert!("initial 2 1,2 0\n1 MAX\nfinal 2 1,2 0\n"
            .parse::<MorseTrace>()
            .is_err());
    }

    #[test]
    fn saddle_types_three_and_four_are_rejected() {
        let t: MorseTrace = "initial 2 1,2 0\n1 S3\nfinal 2 1,2 0\n".parse().unwrap();
        assert!(matches!(
            replay(&t),
            Err(Error::ViolationAt { rank: 1, .. })
        ));
    }
}
