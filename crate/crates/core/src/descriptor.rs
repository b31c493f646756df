//! Line-oriented text format for assemblies.
//!
//! ```text
//! oneone-descriptor 1
//! manifold S3
//! r 1
//! gamma 3,2 0,1
//! piece B
//!   winding 2
//!   lower-cert 3/1
//!   min-cert 3/1
//!   wrap 2
//!   offset 0
//! end
//! piece C
//!   lower-cert 3/1
//!   disks 1 2
//!   offset 0
//!   cross rank=1 arc=0 pos=1 side=inner winding=0
//!   cross rank=2 arc=1 pos=2 side=outer winding=0
//! end
//! ```
//!
//! `#` starts a comment. Inside a piece, omitted certificates default to
//! `3/1` and windings to 2; omitted disk and endpoint data are derived
//! from the crossings; an omitted `wrap` is absent. Fields that do not
//! belong to the piece type are rejected.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::assembler::Assembly;
use crate::error::Error;
use crate::pieces::{
    ArcSlots, CrossingEvent, Endpoint, MidGluing, Piece, PieceKind, PieceType, Side,
};
use crate::torus::{ManifoldSpec, Slope, TwoBridgeFraction};

pub const HEADER: &str = "oneone-descriptor";
pub const VERSION: u32 = 1;

pub fn serialize(a: &Assembly) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "{HEADER} {VERSION}");
    let _ = writeln!(w, "manifold {}", a.manifold);
    let _ = writeln!(w, "r {}", a.r);
    let gamma: Vec<String> = a.gamma.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(w, "gamma {}", gamma.join(" "));
    for (i, p) in a.pieces.iter().enumerate() {
        let _ = writeln!(w, "piece {}", p.piece_type());
        if p.r != a.r {
            let _ = writeln!(w, "  r {}", p.r);
        }
        match &p.kind {
            PieceKind::A {
                lower_cert,
                upper_cert,
                ..
            } => {
                let _ = writeln!(w, "  lower-cert {lower_cert}");
                let _ = writeln!(w, "  upper-cert {upper_cert}");
            }
            PieceKind::B {
                annulus_winding,
                lower_cert,
                min_cert,
                ..
            } => {
                let _ = writeln!(w, "  winding {annulus_winding}");
                let _ = writeln!(w, "  lower-cert {lower_cert}");
                let _ = writeln!(w, "  min-cert {min_cert}");
            }
            PieceKind::C {
                lower_cert,
                min_endpoint_disks: (x, y),
            } => {
                let _ = writeln!(w, "  lower-cert {lower_cert}");
                let _ = writeln!(w, "  disks {x} {y}");
            }
            PieceKind::D {
                winding_a,
                winding_b,
                max_cert,
                min_cert,
                ..
            } => {
                let _ = writeln!(w, "  winding-a {winding_a}");
                let _ = writeln!(w, "  winding-b {winding_b}");
                let _ = writeln!(w, "  max-cert {max_cert}");
                let _ = writeln!(w, "  min-cert {min_cert}");
            }
            PieceKind::E {
                winding_a,
                max_cert,
                min_endpoint_disks: (x, y),
            } => {
                let _ = writeln!(w, "  winding-a {winding_a}");
                let _ = writeln!(w, "  max-cert {max_cert}");
                let _ = writeln!(w, "  disks {x} {y}");
            }
            PieceKind::F {
                min_endpoint,
                max_endpoint,
            } => {
                for (name, e) in [
                    ("min-endpoint", min_endpoint),
                    ("max-endpoint", max_endpoint),
                ] {
                    let _ = writeln!(
                        w,
                        "  {name} {} {} {} {}",
                        e[0].position, e[0].side, e[1].position, e[1].side
                    );
                }
            }
        }
        if let Some(wrap) = p.kind.disjoint_wrap() {
            let _ = writeln!(w, "  wrap {wrap}");
        }
        let g = a.mid_offsets.get(i).copied().unwrap_or_default();
        let _ = writeln!(w, "  offset {}", g.offset);
        if g.reflect {
            let _ = writeln!(w, "  reflect");
        }
        if p.no_slide.lower {
            let _ = writeln!(w, "  no-slide lower");
        }
        if p.no_slide.upper {
            let _ = writeln!(w, "  no-slide upper");
        }
        let d = ArcSlots::default();
        if p.slots.lower != d.lower {
            let _ = writeln!(w, "  slots lower {} {}", p.slots.lower[0], p.slots.lower[1]);
        }
        if p.slots.upper != d.upper {
            let _ = writeln!(w, "  slots upper {} {}", p.slots.upper[0], p.slots.upper[1]);
        }
        let mut xs = p.crossings.clone();
        xs.sort_by_key(|c| c.height_rank);
        for c in xs {
            let _ = writeln!(
                w,
                "  cross rank={} arc={} pos={} side={} winding={}",
                c.height_rank, c.arc, c.position, c.side, c.winding
            );
        }
        let _ = writeln!(w, "end");
    }
    out
}

fn perr<T>(line: usize, msg: impl std::fmt::Display) -> Result<T, Error> {
    Err(Error::Parse(format!("line {line}: {msg}")))
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, Error> {
    s.parse()
        .or_else(|_| perr(line, format!("expected a number, got `{s}`")))
}

fn side(line: usize, s: &str) -> Result<Side, Error> {
    match s {
        "inner" => Ok(Side::Inner),
        "outer" => Ok(Side::Outer),
        other => perr(line, format!("unknown side `{other}`")),
    }
}

fn allowed_fields(t: PieceType) -> &'static [&'static str] {
    match t {
        PieceType::A => &["lower-cert", "upper-cert", "wrap"],
        PieceType::B => &["winding", "lower-cert", "min-cert", "wrap"],
        PieceType::C => &["lower-cert", "disks"],
        PieceType::D => &["winding-a", "winding-b", "max-cert", "min-cert", "wrap"],
        PieceType::E => &["winding-a", "max-cert", "disks"],
        PieceType::F => &["min-endpoint", "max-endpoint"],
    }
}

const COMMON_FIELDS: &[&str] = &["r", "offset", "reflect"];

struct PieceDraft {
    t: PieceType,
    line: usize,
    r: Option<u32>,
    gluing: MidGluing,
    cert: [Option<TwoBridgeFraction>; 2],
    winding: [Option<u32>; 2],
    wrap: Option<u32>,
    disks: Option<(u32, u32)>,
    endpoints: [Option<[Endpoint; 2]>; 2],
    no_slide: [bool; 2],
    slots: ArcSlots,
    crossings: Vec<CrossingEvent>,
    seen: BTreeSet<String>,
}

impl PieceDraft {
    fn new(t: PieceType, line: usize) -> Self {
        PieceDraft {
            t,
            line,
            r: None,
            gluing: MidGluing::IDENTITY,
            cert: [None, None],
            winding: [None, None],
            wrap: None,
            disks: None,
            endpoints: [None, None],
            no_slide: [false, false],
            slots: ArcSlots::default(),
            crossings: Vec::new(),
            seen: BTreeSet::new(),
        }
    }

    fn field(&mut self, line: usize, key: &str, args: &[&str]) -> Result<(), Error> {
        let repeatable = matches!(key, "cross" | "no-slide" | "slots");
        if !repeatable {
            if !COMMON_FIELDS.contains(&key) && !allowed_fields(self.t).contains(&key) {
                return perr(
                    line,
                    format!("unknown field `{key}` for a type {} piece", self.t),
                );
            }
            if !self.seen.insert(key.to_string()) {
                return perr(line, format!("duplicate field `{key}`"));
            }
        }
        let one = |args: &[&str]| -> Result<String, Error> {
            match args {
                [x] => Ok(x.to_string()),
                _ => perr(line, format!("`{key}` takes one value")),
            }
        };
        match key {
            "r" => self.r = Some(num(line, &one(args)?)?),
            "offset" => self.gluing.offset = num(line, &one(args)?)?,
            "reflect" => {
                if !args.is_empty() {
                    return perr(line, "`reflect` takes no value");
                }
                self.gluing.reflect = true;
            }
            "lower-cert" | "max-cert" => self.cert[0] = Some(one(args)?.parse()?),
            "upper-cert" | "min-cert" => self.cert[1] = Some(one(args)?.parse()?),
            "winding" | "winding-a" => self.winding[0] = Some(num(line, &one(args)?)?),
            "winding-b" => self.winding[1] = Some(num(line, &one(args)?)?),
            "wrap" => self.wrap = Some(num(line, &one(args)?)?),
            "disks" => match args {
                [x, y] => self.disks = Some((num(line, x)?, num(line, y)?)),
                _ => return perr(line, "`disks` takes two positions"),
            },
            "min-endpoint" | "max-endpoint" => {
                let [p1, s1, p2, s2] = args else {
                    return perr(line, format!("`{key}` takes `pos side pos side`"));
                };
                let e = [
                    Endpoint {
                        position: num(line, p1)?,
                        side: side(line, s1)?,
                    },
                    Endpoint {
                        position: num(line, p2)?,
                        side: side(line, s2)?,
                    },
                ];
                self.endpoints[usize::from(key == "max-endpoint")] = Some(e);
            }
            "no-slide" => match args {
                ["lower"] => self.no_slide[0] = true,
                ["upper"] => self.no_slide[1] = true,
                _ => return perr(line, "`no-slide` takes `lower` or `upper`"),
            },
            "slots" => match args {
                ["lower", a, b] => self.slots.lower = [num(line, a)?, num(line, b)?],
                ["upper", a, b] => self.slots.upper = [num(line, a)?, num(line, b)?],
                _ => return perr(line, "`slots` takes `lower|upper a b`"),
            },
            "cross" => self.crossings.push(parse_cross(line, args)?),
            other => return perr(line, format!("unknown field `{other}`")),
        }
        Ok(())
    }

    fn finish(self, global_r: u32) -> Result<(Piece, MidGluing), Error> {
        let cert = |k: usize| self.cert[k].unwrap_or(TwoBridgeFraction::TREFOIL);
        let wind = |k: usize| self.winding[k].unwrap_or(2);
        let kind = match self.t {
            PieceType::A => PieceKind::A {
                lower_cert: cert(0),
                upper_cert: cert(1),
                disjoint_wrap: self.wrap,
            },
            PieceType::B => PieceKind::B {
                annulus_winding: wind(0),
                lower_cert: cert(0),
                min_cert: cert(1),
                disjoint_wrap: self.wrap,
            },
            PieceType::C => PieceKind::C {
                lower_cert: cert(0),
                min_endpoint_disks: (1, 2),
            },
            PieceType::D => PieceKind::D {
                winding_a: wind(0),
                winding_b: wind(1),
                max_cert: cert(0),
                min_cert: cert(1),
                disjoint_wrap: self.wrap,
            },
            PieceType::E => PieceKind::E {
                winding_a: wind(0),
                max_cert: cert(0),
                min_endpoint_disks: (1, 2),
            },
            PieceType::F => PieceKind::minimal(PieceType::F),
        };
        let mut p = Piece::new(self.r.unwrap_or(global_r), kind);
        p.crossings = self.crossings;
        p.no_slide.lower = self.no_slide[0];
        p.no_slide.upper = self.no_slide[1];
        p.slots = self.slots;
        // derive endpoint data, then let explicit values override
        let wrap = p.kind.disjoint_wrap();
        p.sync_derived();
        match &mut p.kind {
            PieceKind::A { disjoint_wrap, .. }
            | PieceKind::B { disjoint_wrap, .. }
            | PieceKind::D { disjoint_wrap, .. } => *disjoint_wrap = wrap,
            PieceKind::C {
                min_endpoint_disks, ..
            }
            | PieceKind::E {
                min_endpoint_disks, ..
            } => {
                if let Some(d) = self.disks {
                    *min_endpoint_disks = d;
                }
            }
            PieceKind::F {
                min_endpoint,
                max_endpoint,
            } => {
                if let Some(e) = self.endpoints[0] {
                    *min_endpoint = e;
                }
                if let Some(e) = self.endpoints[1] {
                    *max_endpoint = e;
                }
            }
        }
        Ok((p, self.gluing))
    }
}

fn parse_cross(line: usize, args: &[&str]) -> Result<CrossingEvent, Error> {
    let mut rank = None;
    let mut arc = None;
    let mut pos = None;
    let mut sd = None;
    let mut winding = 0;
    for a in args {
        let Some((k, v)) = a.split_once('=') else {
            return perr(line, format!("expected key=value, got `{a}`"));
        };
        match k {
            "rank" => rank = Some(num(line, v)?),
            "arc" => arc = Some(num(line, v)?),
            "pos" => pos = Some(num(line, v)?),
            "side" => sd = Some(side(line, v)?),
            "winding" => winding = num(line, v)?,
            other => return perr(line, format!("unknown crossing key `{other}`")),
        }
    }
    let (Some(rank), Some(arc), Some(pos)) = (rank, arc, pos) else {
        return perr(line, "crossing needs rank, arc and pos");
    };
    let mut c = CrossingEvent::new(rank, arc, pos);
    if let Some(s) = sd {
        c.side = s;
    }
    c.winding = winding;
    Ok(c)
}

pub fn parse(text: &str) -> Result<Assembly, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((n, l)) => {
            let parts: Vec<&str> = l.split_whitespace().collect();
            match parts.as_slice() {
                [h, v] if *h == HEADER => {
                    let v: u32 = num(n, v)?;
                    if v != VERSION {
                        return perr(n, format!("unsupported version {v}"));
                    }
                }
                _ => return perr(n, format!("expected `{HEADER} {VERSION}`")),
            }
        }
        None => return Err(Error::Parse("empty descriptor".into())),
    }

    let mut manifold = None;
    let mut r = None;
    let mut gamma = None;
    let mut drafts: Vec<PieceDraft> = Vec::new();
    let mut open: Option<PieceDraft> = None;
    for (n, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let (key, args) = (parts[0], &parts[1..]);
        if let Some(d) = open.as_mut() {
            if key == "end" {
                if !args.is_empty() {
                    return perr(n, "`end` takes no value");
                }
                drafts.push(open.take().expect("open piece"));
            } else {
                d.field(n, key, args)?;
            }
            continue;
        }
        match key {
            "manifold" => {
                if manifold.is_some() {
                    return perr(n, "duplicate `manifold`");
                }
                manifold = Some(args.join(" ").parse::<ManifoldSpec>()?);
            }
            "r" => {
                if r.is_some() {
                    return perr(n, "duplicate `r`");
                }
                match args {
                    [x] => r = Some(num::<u32>(n, x)?),
                    _ => return perr(n, "`r` takes one value"),
                }
            }
            "gamma" => {
                if gamma.is_some() {
                    return perr(n, "duplicate `gamma`");
                }
                let g: Result<Vec<Slope>, Error> = args.iter().map(|s| s.parse()).collect();
                gamma = Some(g?);
            }
            "piece" => match args {
                [t] => open = Some(PieceDraft::new(t.parse()?, n)),
                _ => return perr(n, "`piece` takes a type letter"),
            },
            other => return perr(n, format!("unknown field `{other}`")),
        }
    }
    if let Some(d) = open {
        return perr(d.line, "piece is not closed by `end`");
    }
    let manifold = manifold.ok_or_else(|| Error::Parse("missing `manifold`".into()))?;
    let r = r.ok_or_else(|| Error::Parse("missing `r`".into()))?;
    let gamma = gamma.ok_or_else(|| Error::Parse("missing `gamma`".into()))?;
    if drafts.is_empty() {
        return Err(Error::Parse("no pieces".into()));
    }
    let mut pieces = Vec::new();
    let mut mid_offsets = Vec::new();
    for d in drafts {
        let (p, g) = d.finish(r)?;
        pieces.push(p);
        mid_offsets.push(g);
    }
    Ok(Assembly {
        manifold,
        gamma,
        r,
        pieces,
        mid_offsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BC: &str = "oneone-descriptor 1
manifold S3
r 1
gamma 3,2 0,1
piece B
  winding 2
  wrap 2
end
piece C
  cross rank=1 arc=0 pos=1
  cross rank=2 arc=1 pos=2
end
";

    #[test]
    fn parse_and_round_trip() {
        let a = parse(BC).unwrap();
        assert_eq!(a.types(), vec![PieceType::B, PieceType::C]);
        let text = serialize(&a);
        assert_eq!(parse(&text).unwrap(), a);
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }

    #[test]
    fn rejects_unknown_and_misplaced_fields() {
        let bad = BC.replace("  wrap 2\n", "  wrap 2\n  colour red\n");
        assert!(matches!(parse(&bad), Err(Error::Parse(_))));
        let bad = BC.replace("  wrap 2\n", "  wrap 2\n  disks 1 2\n");
        assert!(matches!(parse(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_truncation_and_versions() {
        let cut = &BC[..BC.len() - 4];
        assert!(matches!(parse(cut), Err(Error::Parse(_))));
        let v2 = BC.replace("oneone-descriptor 1", "oneone-descriptor 2");
        assert!(matches!(parse(&v2), Err(Error::Parse(_))));
        assert!(matches!(parse(""), Err(Error::Parse(_))));
    }
}
