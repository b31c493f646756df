//! The six piece types, their sheet families and their per-piece conditions.
//!
//! Every piece is read in its own frame: a *lower* end and an *upper* end,
//! with crossing ranks increasing from lower to upper. Each end carries one
//! family of sheets:
//!
//! | type | lower end             | upper end             |
//! |------|-----------------------|-----------------------|
//! | A    | nested interface      | nested interface      |
//! | B    | nested interface      | annuli in solid torus |
//! | C    | nested interface      | meridian disks        |
//! | D    | annuli in solid torus | annuli in solid torus |
//! | E    | annuli in solid torus | meridian disks        |
//! | F    | meridian disks        | meridian disks        |
//!
//! The two families meet along `N` parallel essential curves (`N = 2r`,
//! except `N = r` for type F). Positions `1..=N` index those curves, and a
//! crossing at position `p` punctures the vertical annulus over curve `p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::report::{Condition, ValidationReport, Violation};
use crate::torus::{is_nontrivial_two_bridge, TwoBridgeFraction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PieceType {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl PieceType {
    pub const ALL: [PieceType; 6] = [
        PieceType::A,
        PieceType::B,
        PieceType::C,
        PieceType::D,
        PieceType::E,
        PieceType::F,
    ];

    pub(crate) fn condition_section(&self) -> &'static str {
        match self {
            PieceType::A => "2.2.1",
            PieceType::B => "2.3.1",
            PieceType::C => "2.4.1",
            PieceType::D => "2.5.1",
            PieceType::E => "2.6.1",
            PieceType::F => "2.7.1",
        }
    }

    pub fn ends(&self) -> (EndKind, EndKind) {
        use EndKind::*;
        match self {
            PieceType::A => (Interface, Interface),
            PieceType::B => (Interface, AnnulusCap),
            PieceType::C => (Interface, DiskCap),
            PieceType::D => (AnnulusCap, AnnulusCap),
            PieceType::E => (AnnulusCap, DiskCap),
            PieceType::F => (DiskCap, DiskCap),
        }
    }

    /// Whether the knot is closed inside the piece (one maximum, one minimum).
    pub fn is_closed(&self) -> bool {
        matches!(self, PieceType::D | PieceType::E | PieceType::F)
    }
}

impl fmt::Display for PieceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            PieceType::A => "A",
            PieceType::B => "B",
            PieceType::C => "C",
            PieceType::D => "D",
            PieceType::E => "E",
            PieceType::F => "F",
        };
        f.write_str(c)
    }
}

impl std::str::FromStr for PieceType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "A" => Ok(PieceType::A),
            "B" => Ok(PieceType::B),
            "C" => Ok(PieceType::C),
            "D" => Ok(PieceType::D),
            "E" => Ok(PieceType::E),
            "F" => Ok(PieceType::F),
            other => Err(Error::Parse(format!("unknown piece type `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndKind {
    /// Once-punctured annuli whose punctures are nested trivial curves.
    Interface,
    /// Parallel annuli in a solid torus.
    AnnulusCap,
    /// Parallel meridian disks of a solid torus.
    DiskCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SheetKind {
    Pants,
    Annulus,
    Disk,
}

impl SheetKind {
    pub fn chi(&self) -> i64 {
        match self {
            SheetKind::Pants => -1,
            SheetKind::Annulus => 0,
            SheetKind::Disk => 1,
        }
    }

    /// Number of essential curves each sheet meets at the middle level.
    pub fn curves_per_sheet(&self) -> u32 {
        match self {
            SheetKind::Disk => 1,
            _ => 2,
        }
    }
}

impl From<EndKind> for SheetKind {
    fn from(e: EndKind) -> Self {
        match e {
            EndKind::Interface => SheetKind::Pants,
            EndKind::AnnulusCap => SheetKind::Annulus,
            EndKind::DiskCap => SheetKind::Disk,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Inner,
    Outer,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Inner => Side::Outer,
            Side::Outer => Side::Inner,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Inner => "inner",
            Side::Outer => "outer",
        })
    }
}

/// One point where the knot meets the surface inside a piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingEvent {
    /// Position in the piece's lower-to-upper order of crossings, from 1.
    pub height_rank: u32,
    /// Which of the two straight subarcs carries the crossing (0 or 1).
    pub arc: u8,
    /// Index of the vertical annulus (or vertical disk) that is met.
    pub position: u32,
    /// Side of the sheet entered when the arc is followed upwards.
    pub side: Side,
    /// Longitudinal winding of the arc since its previous crossing.
    pub winding: i32,
}

impl CrossingEvent {
    pub fn new(height_rank: u32, arc: u8, position: u32) -> Self {
        CrossingEvent {
            height_rank,
            arc,
            position,
            side: if arc == 0 { Side::Inner } else { Side::Outer },
            winding: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Endpoint {
    pub position: u32,
    pub side: Side,
}

/// Type-specific data of a piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceKind {
    A {
        lower_cert: TwoBridgeFraction,
        upper_cert: TwoBridgeFraction,
        disjoint_wrap: Option<u32>,
    },
    B {
        annulus_winding: u32,
        lower_cert: TwoBridgeFraction,
        min_cert: TwoBridgeFraction,
        disjoint_wrap: Option<u32>,
    },
    C {
        lower_cert: TwoBridgeFraction,
        min_endpoint_disks: (u32, u32),
    },
    D {
        winding_a: u32,
        winding_b: u32,
        max_cert: TwoBridgeFraction,
        min_cert: TwoBridgeFraction,
        disjoint_wrap: Option<u32>,
    },
    E {
        winding_a: u32,
        max_cert: TwoBridgeFraction,
        min_endpoint_disks: (u32, u32),
    },
    F {
        min_endpoint: [Endpoint; 2],
        max_endpoint: [Endpoint; 2],
    },
}

impl PieceKind {
    pub fn piece_type(&self) -> PieceType {
        match self {
            PieceKind::A { .. } => PieceType::A,
            PieceKind::B { .. } => PieceType::B,
            PieceKind::C { .. } => PieceType::C,
            PieceKind::D { .. } => PieceType::D,
            PieceKind::E { .. } => PieceType::E,
            PieceKind::F { .. } => PieceType::F,
        }
    }

    /// Default data with minimal witnesses: certificates `3/1`, windings
    /// and wrapping numbers 2.
    pub fn minimal(t: PieceType) -> PieceKind {
        let cert = TwoBridgeFraction::TREFOIL;
        let here = Endpoint {
            position: 1,
            side: Side::Inner,
        };
        match t {
            PieceType::A => PieceKind::A {
                lower_cert: cert,
                upper_cert: cert,
                disjoint_wrap: Some(2),
            },
            PieceType::B => PieceKind::B {
                annulus_winding: 2,
                lower_cert: cert,
                min_cert: cert,
                disjoint_wrap: Some(2),
            },
            PieceType::C => PieceKind::C {
                lower_cert: cert,
                min_endpoint_disks: (1, 2),
            },
            PieceType::D => PieceKind::D {
                winding_a: 2,
                winding_b: 2,
                max_cert: cert,
                min_cert: cert,
                disjoint_wrap: Some(2),
            },
            PieceType::E => PieceKind::E {
                winding_a: 2,
                max_cert: cert,
                min_endpoint_disks: (1, 2),
            },
            PieceType::F => PieceKind::F {
                min_endpoint: [here, here],
                max_endpoint: [here, here],
            },
        }
    }

    pub fn disjoint_wrap(&self) -> Option<u32> {
        match self {
            PieceKind::A { disjoint_wrap, .. }
            | PieceKind::B { disjoint_wrap, .. }
            | PieceKind::D { disjoint_wrap, .. } => *disjoint_wrap,
            _ => None,
        }
    }

    fn set_disjoint_wrap(&mut self, wrap: Option<u32>) {
        match self {
            PieceKind::A { disjoint_wrap, .. }
            | PieceKind::B { disjoint_wrap, .. }
            | PieceKind::D { disjoint_wrap, .. } => *disjoint_wrap = wrap,
            _ => {}
        }
    }

    fn cert(&self, end: End) -> Option<TwoBridgeFraction> {
        match (self, end) {
            (PieceKind::A { lower_cert, .. }, End::Lower) => Some(*lower_cert),
            (PieceKind::A { upper_cert, .. }, End::Upper) => Some(*upper_cert),
            (PieceKind::B { lower_cert, .. }, End::Lower) => Some(*lower_cert),
            (PieceKind::B { min_cert, .. }, End::Upper) => Some(*min_cert),
            (PieceKind::C { lower_cert, .. }, End::Lower) => Some(*lower_cert),
            (PieceKind::D { max_cert, .. }, End::Lower) => Some(*max_cert),
            (PieceKind::D { min_cert, .. }, End::Upper) => Some(*min_cert),
            (PieceKind::E { max_cert, .. }, End::Lower) => Some(*max_cert),
            _ => None,
        }
    }

    /// Declared longitudinal windings of annulus families, as
    /// `(lower, upper)`.
    pub fn windings(&self) -> (Option<u32>, Option<u32>) {
        match self {
            PieceKind::B {
                annulus_winding, ..
            } => (None, Some(*annulus_winding)),
            PieceKind::D {
                winding_a,
                winding_b,
                ..
            } => (Some(*winding_a), Some(*winding_b)),
            PieceKind::E { winding_a, .. } => (Some(*winding_a), None),
            _ => (None, None),
        }
    }
}

/// Explicit "cannot be slid" declarations for the first crossings at each
/// end.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndFlags {
    pub lower: bool,
    pub upper: bool,
}

impl EndFlags {
    pub fn get(&self, end: End) -> bool {
        match end {
            End::Lower => self.lower,
            End::Upper => self.upper,
        }
    }
}

/// Labels of the two points where the arcs meet the innermost nested disk
/// at an interface end; `lower[k]` belongs to arc `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcSlots {
    pub lower: [u32; 2],
    pub upper: [u32; 2],
}

impl Default for ArcSlots {
    fn default() -> Self {
        ArcSlots {
            lower: [0, 1],
            upper: [0, 1],
        }
    }
}

/// Identification of the upper family's curves with the lower family's
/// positions: a cyclic rotation, optionally preceded by a reflection.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MidGluing {
    pub offset: u32,
    pub reflect: bool,
}

impl MidGluing {
    pub const IDENTITY: MidGluing = MidGluing {
        offset: 0,
        reflect: false,
    };

    pub fn rotation(offset: u32) -> Self {
        MidGluing {
            offset,
            reflect: false,
        }
    }

    /// Position that the upper family's curve `p` is glued to.
    pub fn apply(&self, p: u32, n: u32) -> u32 {
        let k = self.offset % n;
        let base = if self.reflect { n + 1 - p } else { p };
        (base - 1 + k) % n + 1
    }

    pub fn inverse(&self, q: u32, n: u32) -> u32 {
        let k = self.offset % n;
        let base = (q - 1 + n - k) % n + 1;
        if self.reflect {
            n + 1 - base
        } else {
            base
        }
    }
}

/// A sheet family at one end: sheet kind and the owner of every position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub kind: SheetKind,
    pub sheets: u32,
    /// `owner[q - 1]` is the 1-based sheet meeting curve `q`.
    pub owner: Vec<u32>,
}

impl Family {
    pub fn owner_of(&self, position: u32) -> u32 {
        self.owner[position as usize - 1]
    }

    /// Positions met by sheet 1, the innermost one.
    pub fn innermost_positions(&self) -> Vec<u32> {
        (1..=self.owner.len() as u32)
            .filter(|&q| self.owner_of(q) == 1)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub r: u32,
    pub kind: PieceKind,
    pub crossings: Vec<CrossingEvent>,
    #[serde(default)]
    pub no_slide: EndFlags,
    #[serde(default)]
    pub slots: ArcSlots,
}

/// Per-piece surface bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FragmentReport {
    pub chi: i64,
    pub bottom_interface_circles: u32,
    pub top_interface_circles: u32,
    pub meridian_boundaries: u32,
    /// Owning sheet of each position in the lower family.
    pub lower_ownership: Vec<u32>,
    /// Owning sheet of each position in the upper family.
    pub upper_ownership: Vec<u32>,
}

impl Piece {
    pub fn new(r: u32, kind: PieceKind) -> Self {
        Piece {
            r,
            kind,
            crossings: Vec::new(),
            no_slide: EndFlags::default(),
            slots: ArcSlots::default(),
        }
    }

    /// Piece with minimal witnesses and the given crossings. Disjoint
    /// wrapping and endpoint data are filled in to match the crossings.
    pub fn minimal(t: PieceType, r: u32, crossings: Vec<CrossingEvent>) -> Self {
        let mut p = Piece::new(r, PieceKind::minimal(t));
        p.crossings = crossings;
        p.sync_derived();
        p
    }

    pub fn piece_type(&self) -> PieceType {
        self.kind.piece_type()
    }

    pub fn end_kind(&self, end: End) -> EndKind {
        let (lo, up) = self.piece_type().ends();
        match end {
            End::Lower => lo,
            End::Upper => up,
        }
    }

    /// Number of parallel essential curves where the two families meet.
    pub fn curve_count(&self) -> u32 {
        match self.piece_type() {
            PieceType::F => self.r,
            _ => 2 * self.r,
        }
    }

    pub fn family(&self, end: End, gluing: MidGluing) -> Family {
        let kind = SheetKind::from(self.end_kind(end));
        let n = self.curve_count();
        let base = |q: u32| match kind {
            SheetKind::Disk => q,
            _ => q.min(n + 1 - q),
        };
        let owner = (1..=n)
            .map(|q| match end {
                End::Lower => base(q),
                End::Upper => base(gluing.inverse(q, n)),
            })
            .collect();
        Family {
            kind,
            sheets: n / kind.curves_per_sheet(),
            owner,
        }
    }

    /// Crossings of each arc, sorted by rank.
    pub fn strands(&self) -> [Vec<CrossingEvent>; 2] {
        let mut sorted = self.crossings.clone();
        sorted.sort_by_key(|c| c.height_rank);
        let mut out = [Vec::new(), Vec::new()];
        for c in sorted {
            if (c.arc as usize) < 2 {
                out[c.arc as usize].push(c);
            }
        }
        out
    }

    /// Positions of the crossings in rank order.
    pub fn crossing_positions(&self) -> Vec<u32> {
        let mut sorted = self.crossings.clone();
        sorted.sort_by_key(|c| c.height_rank);
        sorted.into_iter().map(|c| c.position).collect()
    }

    /// Refreshes the data that is determined by the crossings: the disjoint
    /// wrapping number (2 when there are no crossings) and disk endpoints.
    pub fn sync_derived(&mut self) {
        let empty = self.crossings.is_empty();
        let wrap = self.kind.disjoint_wrap();
        self.kind
            .set_disjoint_wrap(if empty { Some(wrap.unwrap_or(2)) } else { None });
        let derived_disks = self.derived_min_disks();
        let [s0, s1] = self.strands();
        let derived_f = (
            arc_endpoints(&s0, &s1, End::Upper),
            arc_endpoints(&s0, &s1, End::Lower),
        );
        match &mut self.kind {
            PieceKind::C {
                min_endpoint_disks, ..
            }
            | PieceKind::E {
                min_endpoint_disks, ..
            } => {
                if let Some(d) = derived_disks {
                    *min_endpoint_disks = d;
                }
            }
            PieceKind::F {
                min_endpoint,
                max_endpoint,
            } => {
                if let Some(e) = derived_f.0 {
                    *min_endpoint = e;
                }
                if let Some(e) = derived_f.1 {
                    *max_endpoint = e;
                }
            }
            _ => {}
        }
    }

    fn derived_min_disks(&self) -> Option<(u32, u32)> {
        let [s0, s1] = self.strands();
        Some((s0.last()?.position, s1.last()?.position))
    }

    pub(crate) fn check_structure(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::MalformedPiece(m));
        if self.r == 0 {
            return bad("r must be at least 1".into());
        }
        let n = self.curve_count();
        let mut ranks: Vec<u32> = self.crossings.iter().map(|c| c.height_rank).collect();
        ranks.sort_unstable();
        for (i, &rank) in ranks.iter().enumerate() {
            if rank != i as u32 + 1 {
                return bad(format!(
                    "height ranks must be distinct and consecutive from 1, got {ranks:?}"
                ));
            }
        }
        for c in &self.crossings {
            if c.arc > 1 {
                return bad(format!("crossing {} is on arc {}", c.height_rank, c.arc));
            }
            if c.position == 0 || c.position > n {
                return bad(format!(
                    "crossing {} at position {} outside 1..={n}",
                    c.height_rank, c.position
                ));
            }
        }
        if !self.crossings.is_empty() && self.kind.disjoint_wrap().is_some() {
            return bad("disjoint wrapping number given for a piece with crossings".into());
        }
        let in_range = |q: u32| q >= 1 && q <= n;
        match &self.kind {
            PieceKind::C {
                min_endpoint_disks: (a, b),
                ..
            }
            | PieceKind::E {
                min_endpoint_disks: (a, b),
                ..
            } => {
                if !in_range(*a) || !in_range(*b) {
                    return bad(format!("endpoint disks ({a},{b}) outside 1..={n}"));
                }
                if let Some(d) = self.derived_min_disks() {
                    if d != (*a, *b) {
                        return bad(format!(
                            "endpoint disks ({a},{b}) disagree with the crossings, which give ({},{})",
                            d.0, d.1
                        ));
                    }
                }
            }
            PieceKind::F {
                min_endpoint,
                max_endpoint,
            } => {
                let [s0, s1] = self.strands();
                for (end, declared) in [(End::Upper, min_endpoint), (End::Lower, max_endpoint)] {
                    if declared.iter().any(|e| !in_range(e.position)) {
                        return bad(format!("endpoint datum outside 1..={n}"));
                    }
                    if let Some(d) = arc_endpoints(&s0, &s1, end) {
                        if &d != declared {
                            return bad("endpoint datum disagrees with the crossings".into());
                        }
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Endpoints of the subarc containing the extremum at `end`, for a knot
/// that is closed inside the piece (or an arc capped at `end`).
///
/// Each endpoint records the side of the sheet on which the subarc lies.
pub fn arc_endpoints(
    s0: &[CrossingEvent],
    s1: &[CrossingEvent],
    end: End,
) -> Option<[Endpoint; 2]> {
    let after = |c: &CrossingEvent| Endpoint {
        position: c.position,
        side: c.side,
    };
    let before = |c: &CrossingEvent| Endpoint {
        position: c.position,
        side: c.side.opposite(),
    };
    match end {
        End::Upper => {
            let e1 = match s0.last() {
                Some(c) => after(c),
                None => before(s1.first()?),
            };
            let e2 = match s1.last() {
                Some(c) => after(c),
                None => before(s0.first()?),
            };
            Some([e1, e2])
        }
        End::Lower => {
            let e1 = match s0.first() {
                Some(c) => before(c),
                None => after(s1.last()?),
            };
            let e2 = match s1.first() {
                Some(c) => before(c),
                None => after(s0.last()?),
            };
            Some([e1, e2])
        }
    }
}

struct Clauses {
    lower_cert: Option<u8>,
    lower_slide: Option<u8>,
    ret: u8,
    upper_cert: Option<u8>,
    upper_slide: Option<u8>,
    wrap: Option<u8>,
    disk_ends: Option<u8>,
}

fn clauses(t: PieceType) -> Clauses {
    let full = Clauses {
        lower_cert: Some(1),
        lower_slide: Some(2),
        ret: 3,
        upper_cert: Some(4),
        upper_slide: Some(5),
        wrap: Some(6),
        disk_ends: None,
    };
    let disk_topped = Clauses {
        lower_cert: Some(1),
        lower_slide: Some(2),
        ret: 3,
        upper_cert: None,
        upper_slide: None,
        wrap: None,
        disk_ends: Some(4),
    };
    match t {
        PieceType::A | PieceType::B | PieceType::D => full,
        PieceType::C | PieceType::E => disk_topped,
        PieceType::F => Clauses {
            lower_cert: None,
            lower_slide: None,
            ret: 1,
            upper_cert: None,
            upper_slide: None,
            wrap: None,
            disk_ends: Some(2),
        },
    }
}

/// Checks every combinatorial condition of the piece on its own, with the
/// identity identification of its two families.
pub fn validate_piece(p: &Piece) -> Result<ValidationReport, Error> {
    validate_piece_glued(p, MidGluing::IDENTITY)
}

pub fn validate_piece_glued(p: &Piece, gluing: MidGluing) -> Result<ValidationReport, Error> {
    Ok(ValidationReport {
        violations: piece_violations(p, gluing, None, true)?,
    })
}

pub(crate) fn piece_violations(
    p: &Piece,
    gluing: MidGluing,
    index: Option<usize>,
    check_winding: bool,
) -> Result<Vec<Violation>, Error> {
    p.check_structure()?;
    let t = p.piece_type();
    let cl = clauses(t);
    let mut out = Vec::new();
    let mut push = |k: u8, detail: String| {
        out.push(Violation {
            condition: Condition::Piece(t, k),
            piece: index,
            detail,
        })
    };
    let strands = p.strands();
    let crossed = !p.crossings.is_empty();

    for (end, cert_k, slide_k) in [
        (End::Lower, cl.lower_cert, cl.lower_slide),
        (End::Upper, cl.upper_cert, cl.upper_slide),
    ] {
        let Some(cert_k) = cert_k else { continue };
        if !crossed {
            continue;
        }
        let cert = p
            .kind
            .cert(end)
            .expect("every certified end has a certificate");
        if !is_nontrivial_two_bridge(cert) {
            push(cert_k, format!("certificate b({cert}) is the unknot"));
        }
        let extremal: Vec<Option<CrossingEvent>> = strands
            .iter()
            .map(|s| match end {
                End::Lower => s.first().copied(),
                End::Upper => s.last().copied(),
            })
            .collect();
        let family = p.family(end, gluing);
        let inner = family.innermost_positions();
        if p.end_kind(end) == EndKind::AnnulusCap && extremal.iter().any(Option::is_none) {
            push(
                cert_k,
                "the subarc through the extremum leaves the innermost solid torus".into(),
            );
        }
        for c in extremal.iter().flatten() {
            if !inner.contains(&c.position) {
                push(
                    cert_k,
                    format!(
                        "crossing x{} at position {} is not on the innermost sheet {:?}",
                        c.height_rank, c.position, inner
                    ),
                );
            }
        }
        if let (Some(slide_k), [Some(a), Some(b)]) = (slide_k, extremal.as_slice()) {
            if a.position == b.position && !p.no_slide.get(end) {
                push(
                    slide_k,
                    format!(
                        "x{} and x{} both lie on vertical annulus {} and may be slid together",
                        a.height_rank, b.height_rank, a.position
                    ),
                );
            }
        }
    }

    for strand in &strands {
        for w in strand.windows(2) {
            if w[0].position == w[1].position && w[1].winding == 0 {
                push(
                    cl.ret,
                    format!(
                        "subarc from x{} to x{} returns to position {} in parallel",
                        w[0].height_rank, w[1].height_rank, w[0].position
                    ),
                );
            }
        }
    }

    if let Some(k) = cl.wrap {
        if !crossed {
            match p.kind.disjoint_wrap() {
                Some(w) if w >= 2 => {}
                Some(w) => push(k, format!("wrapping number {w} is below 2")),
                None => push(k, "disjoint arc without a wrapping number".into()),
            }
        }
    }

    if let Some(k) = cl.disk_ends {
        match t {
            PieceType::C | PieceType::E => {
                if t == PieceType::C && !crossed {
                    // reported as C-must-intersect below
                } else {
                    let [s0, s1] = &strands;
                    match (s0.last(), s1.last()) {
                        (Some(a), Some(b)) if a.position != b.position => {}
                        (Some(a), Some(_)) => push(
                            k,
                            format!("both ends of the minimum subarc lie on disk {}", a.position),
                        ),
                        _ => push(k, "the minimum subarc does not end on two disks".into()),
                    }
                }
            }
            PieceType::F => {
                let [s0, s1] = &strands;
                if !crossed {
                    push(k, "the knot misses the spheres".into());
                }
                for (end, name) in [(End::Lower, "maximum"), (End::Upper, "minimum")] {
                    if let Some([e1, e2]) = arc_endpoints(s0, s1, end) {
                        if e1.position == e2.position && e1.side == e2.side {
                            push(
                                k,
                                format!(
                                    "the {name} subarc meets disk {} twice from the {} side",
                                    e1.position, e1.side
                                ),
                            );
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    if t == PieceType::C && !crossed {
        out.push(Violation {
            condition: Condition::CMustIntersect,
            piece: index,
            detail: "the arc of a type-C piece must meet the surface".into(),
        });
    }

    if check_winding {
        let (lo, up) = p.kind.windings();
        for w in [lo, up].into_iter().flatten() {
            if w < 2 {
                out.push(Violation {
                    condition: Condition::WindingAtLeastTwo,
                    piece: index,
                    detail: format!("annuli wind {w} time(s) longitudinally"),
                });
            }
        }
    }
    Ok(out)
}

pub fn fragment_report(p: &Piece) -> Result<FragmentReport, Error> {
    fragment_report_glued(p, MidGluing::IDENTITY)
}

pub fn fragment_report_glued(p: &Piece, gluing: MidGluing) -> Result<FragmentReport, Error> {
    p.check_structure()?;
    let lower = p.family(End::Lower, gluing);
    let upper = p.family(End::Upper, gluing);
    let sheets_chi =
        lower.sheets as i64 * lower.kind.chi() + upper.sheets as i64 * upper.kind.chi();
    let n = p.crossings.len() as u32;
    let circles = |e: End| {
        if p.end_kind(e) == EndKind::Interface {
            p.r
        } else {
            0
        }
    };
    Ok(FragmentReport {
        chi: sheets_chi - n as i64,
        bottom_interface_circles: circles(End::Lower),
        top_interface_circles: circles(End::Upper),
        meridian_boundaries: n,
        lower_ownership: lower.owner,
        upper_ownership: upper.owner,
    })
}
