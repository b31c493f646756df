//! Gluing pieces into a full construction: global conditions, the knot
//! made of their arcs, and the invariants of the resulting surface.
//!
//! Pieces are listed bottom to top. `gamma[i]` is the slope of the
//! essential curves in the middle of `pieces[i]`. A multi-piece assembly has
//! a type B or C piece at each end and type A pieces in between; the bottom
//! piece is read upside down, so that its cap sits in the bottom solid torus.

use std::collections::BTreeMap;

use petgraph::algo::connected_components;
use petgraph::graph::UnGraph;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pieces::{piece_violations, End, EndKind, MidGluing, Piece, PieceKind, PieceType};
use crate::report::{Condition, ValidationReport};
use crate::torus::{delta, ManifoldKind, ManifoldSpec, Slope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    pub manifold: ManifoldSpec,
    pub gamma: Vec<Slope>,
    pub r: u32,
    pub pieces: Vec<Piece>,
    pub mid_offsets: Vec<MidGluing>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub chi: i64,
    pub boundary_circles: u32,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub components: Vec<ComponentReport>,
    pub total_boundary: u32,
    pub connected: bool,
    pub orientable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnotReport {
    pub is_single_knot: bool,
    pub is_one_one: bool,
}

impl Assembly {
    pub fn types(&self) -> Vec<PieceType> {
        self.pieces.iter().map(Piece::piece_type).collect()
    }

    /// Whether piece `i` is read upside down: the bottom piece of a
    /// multi-piece assembly, or a single type E piece whose disks lie in the
    /// bottom solid torus.
    pub fn is_flipped(&self, i: usize) -> bool {
        if self.pieces.len() > 1 {
            return i == 0;
        }
        self.pieces[0].piece_type() == PieceType::E && self.gamma[0] == self.manifold.lambda()
    }

    pub fn gluing(&self, i: usize) -> MidGluing {
        self.mid_offsets[i]
    }

    pub(crate) fn check_structure(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::MalformedAssembly(m));
        if self.pieces.is_empty() {
            return bad("no pieces".into());
        }
        if self.r == 0 {
            return bad("r must be at least 1".into());
        }
        if self.gamma.len() != self.pieces.len() {
            return bad(format!(
                "{} slopes for {} pieces",
                self.gamma.len(),
                self.pieces.len()
            ));
        }
        if self.mid_offsets.len() != self.pieces.len() {
            return bad(format!(
                "{} offsets for {} pieces",
                self.mid_offsets.len(),
                self.pieces.len()
            ));
        }
        Ok(())
    }

    /// End of piece `i` facing the interface above it.
    fn top_interface_end(&self, i: usize) -> End {
        if self.is_flipped(i) {
            End::Lower
        } else {
            End::Upper
        }
    }
}

fn pattern_ok(types: &[PieceType]) -> bool {
    use PieceType::*;
    match types {
        [] => false,
        [single] => single.is_closed(),
        [first, middle @ .., last] => {
            matches!(first, B | C) && matches!(last, B | C) && middle.iter().all(|t| *t == A)
        }
    }
}

/// Checks every condition on the assembly: the manifold restrictions, the
/// piece pattern, the slope conditions, each piece in its gluing, that the
/// arcs close up, and that every surface component meets the knot evenly.
pub fn validate_assembly(a: &Assembly) -> Result<ValidationReport, Error> {
    a.check_structure()?;
    let mut rep = ValidationReport::default();
    let types = a.types();
    let (lambda, mu) = (a.manifold.lambda(), a.manifold.mu());

    for (i, t) in types.iter().enumerate() {
        if *t == PieceType::F && a.manifold.kind() != ManifoldKind::S1xS2 {
            rep.push(
                Condition::FRequiresS1xS2,
                Some(i),
                format!("type F needs S1xS2, not {}", a.manifold),
            );
        }
        if *t == PieceType::E && !a.manifold.is_lens() {
            rep.push(
                Condition::ERequiresLens,
                Some(i),
                format!("type E needs a lens space, not {}", a.manifold),
            );
        }
    }
    if !rep.is_valid() {
        return Ok(rep);
    }

    let mut structural = true;
    for (i, p) in a.pieces.iter().enumerate() {
        if p.r != a.r {
            structural = false;
            rep.push(
                Condition::UniformR,
                Some(i),
                format!("piece has r = {}, assembly has r = {}", p.r, a.r),
            );
        }
    }
    if !pattern_ok(&types) {
        structural = false;
        let shown: Vec<String> = types.iter().map(|t| t.to_string()).collect();
        rep.push(
            Condition::PiecePattern,
            None,
            format!(
                "piece sequence {} is not D, E, F or B/C A... B/C",
                shown.join(" ")
            ),
        );
    }

    let n = a.gamma.len() - 1;
    let g0 = a.gamma[0];
    let gn = a.gamma[n];
    let mut choice_ok = vec![true; a.pieces.len()];
    if structural {
        let mut bad_choice = |i: usize, detail: String| {
            choice_ok[i] = false;
            rep.push(Condition::PieceChoice, Some(i), detail);
        };
        if n == 0 {
            let (at_l, at_m) = (g0 == lambda, g0 == mu);
            match types[0] {
                PieceType::D if at_l || at_m => bad_choice(
                    0,
                    format!("type D needs a slope other than {lambda} and {mu}"),
                ),
                PieceType::E if at_l == at_m => {
                    bad_choice(0, format!("type E needs exactly one of {lambda}, {mu}"))
                }
                PieceType::F if !(at_l && at_m) => {
                    bad_choice(0, format!("type F needs the slope {lambda} = {mu}"))
                }
                _ => {}
            }
        } else {
            if (types[0] == PieceType::C) != (g0 == lambda) {
                bad_choice(
                    0,
                    format!(
                        "bottom piece is {} but gamma0 = {g0}, lambda = {lambda}",
                        types[0]
                    ),
                );
            }
            if (types[n] == PieceType::C) != (gn == mu) {
                bad_choice(
                    n,
                    format!("top piece is {} but gamma{n} = {gn}, mu = {mu}", types[n]),
                );
            }
        }
    }

    if g0 != lambda && delta(g0, lambda) < 2 {
        rep.push(
            Condition::Gamma(1),
            None,
            format!("delta({g0}, {lambda}) = {} < 2", delta(g0, lambda)),
        );
    }
    for i in 0..n {
        let d = delta(a.gamma[i], a.gamma[i + 1]);
        if d < 2 {
            rep.push(
                Condition::Gamma(2),
                None,
                format!("delta(gamma{i}, gamma{}) = {d} < 2", i + 1),
            );
        }
    }
    if gn != mu && delta(gn, mu) < 2 {
        rep.push(
            Condition::Gamma(3),
            None,
            format!("delta({gn}, {mu}) = {} < 2", delta(gn, mu)),
        );
    }

    if !structural {
        return Ok(rep);
    }

    for (i, p) in a.pieces.iter().enumerate() {
        if !choice_ok[i] {
            continue;
        }
        let mut expect = |declared: u32, slope: Slope, against: Slope, what: &str| {
            let d = delta(slope, against);
            if declared as u64 != d {
                rep.push(
                    Condition::WindingMismatch,
                    Some(i),
                    format!("{what} = {declared}, but delta({slope}, {against}) = {d}"),
                );
            }
        };
        match &p.kind {
            PieceKind::B {
                annulus_winding, ..
            } => {
                if i == 0 {
                    expect(*annulus_winding, g0, lambda, "winding");
                } else {
                    expect(*annulus_winding, gn, mu, "winding");
                }
            }
            PieceKind::D {
                winding_a,
                winding_b,
                ..
            } => {
                expect(*winding_a, g0, lambda, "winding-a");
                expect(*winding_b, g0, mu, "winding-b");
            }
            PieceKind::E { winding_a, .. } => {
                if a.is_flipped(i) {
                    expect(*winding_a, g0, mu, "winding-a");
                } else {
                    expect(*winding_a, g0, lambda, "winding-a");
                }
            }
            _ => {}
        }
    }

    for (i, p) in a.pieces.iter().enumerate() {
        rep.violations
            .extend(piece_violations(p, a.gluing(i), Some(i), false)?);
    }

    for i in 0..n {
        let below = &a.pieces[i];
        let below_slots = match a.top_interface_end(i) {
            End::Lower => below.slots.lower,
            End::Upper => below.slots.upper,
        };
        let above_slots = a.pieces[i + 1].slots.lower;
        let mut x = below_slots;
        let mut y = above_slots;
        x.sort_unstable();
        y.sort_unstable();
        if x[0] == x[1] || y[0] == y[1] || x != y {
            rep.push(
                Condition::ArcContinuity,
                None,
                format!(
                    "arcs reach interface {i} at {below_slots:?} from below and {above_slots:?} from above"
                ),
            );
        }
    }

    if !(a.pieces.len() == 1 && types[0] == PieceType::F) {
        let s = build_surface(a);
        for (c, comp) in s.components.iter().enumerate() {
            if comp.boundary_circles % 2 == 1 {
                rep.push(
                    Condition::Parity,
                    None,
                    format!(
                        "surface component {c} meets the knot {} times",
                        comp.boundary_circles
                    ),
                );
            }
        }
    }
    Ok(rep)
}

fn require_valid(a: &Assembly) -> Result<(), Error> {
    let rep = validate_assembly(a)?;
    if rep.is_valid() {
        Ok(())
    } else {
        Err(Error::Invalid(rep))
    }
}

/// Global numbering of the sheets of an assembly: for each piece, its
/// lower family then its upper family.
#[derive(Debug, Clone)]
pub(crate) struct SheetLayout {
    /// First sheet of each family, indexed by `[piece][0 = lower, 1 = upper]`.
    pub base: Vec<[usize; 2]>,
    pub total: usize,
}

impl SheetLayout {
    pub fn new(a: &Assembly) -> Self {
        let mut base = Vec::with_capacity(a.pieces.len());
        let mut next = 0;
        for (i, p) in a.pieces.iter().enumerate() {
            let g = a.gluing(i);
            let lo = p.family(End::Lower, g).sheets as usize;
            let up = p.family(End::Upper, g).sheets as usize;
            base.push([next, next + lo]);
            next += lo + up;
        }
        SheetLayout { base, total: next }
    }

    pub fn sheet(&self, piece: usize, end: End, index: u32) -> usize {
        let e = match end {
            End::Lower => 0,
            End::Upper => 1,
        };
        self.base[piece][e] + index as usize - 1
    }
}

/// Pairs of glued boundary circles, each given as `(sheet, circle)`, where
/// circle `q >= 1` is the essential curve at position `q` and circle 0 is a
/// sheet's trivial interface circle.
pub(crate) fn circle_gluings(
    a: &Assembly,
    layout: &SheetLayout,
) -> Vec<((usize, u32), (usize, u32))> {
    let mut out = Vec::new();
    for (i, p) in a.pieces.iter().enumerate() {
        let g = a.gluing(i);
        let lower = p.family(End::Lower, g);
        let upper = p.family(End::Upper, g);
        for q in 1..=p.curve_count() {
            out.push((
                (layout.sheet(i, End::Lower, lower.owner_of(q)), q),
                (layout.sheet(i, End::Upper, upper.owner_of(q)), q),
            ));
        }
    }
    for i in 0..a.pieces.len().saturating_sub(1) {
        let below_end = a.top_interface_end(i);
        let (pb, pa) = (&a.pieces[i], &a.pieces[i + 1]);
        if pb.end_kind(below_end) != EndKind::Interface
            || pa.end_kind(End::Lower) != EndKind::Interface
        {
            continue;
        }
        let depth = pb.r.min(pa.r);
        for k in 1..=depth {
            out.push((
                (layout.sheet(i, below_end, k), 0),
                (layout.sheet(i + 1, End::Lower, k), 0),
            ));
        }
    }
    out
}

/// Euler characteristic of each sheet before puncturing.
pub(crate) fn sheet_chis(a: &Assembly, layout: &SheetLayout) -> Vec<i64> {
    let mut chi = vec![0; layout.total];
    for (i, p) in a.pieces.iter().enumerate() {
        let g = a.gluing(i);
        for end in [End::Lower, End::Upper] {
            let fam = p.family(end, g);
            for k in 1..=fam.sheets {
                chi[layout.sheet(i, end, k)] = fam.kind.chi();
            }
        }
    }
    chi
}

/// Sheet carrying each crossing of each piece: the lower family's owner of
/// its position.
pub(crate) fn puncture_sheets(a: &Assembly, layout: &SheetLayout) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, p) in a.pieces.iter().enumerate() {
        let lower = p.family(End::Lower, a.gluing(i));
        for c in &p.crossings {
            out.push(layout.sheet(i, End::Lower, lower.owner_of(c.position)));
        }
    }
    out
}

pub(crate) struct Surface {
    /// Components numbered by their lowest sheet.
    pub components: Vec<ComponentReport>,
}

pub(crate) fn build_surface(a: &Assembly) -> Surface {
    let layout = SheetLayout::new(a);
    let mut uf = UnionFind::<usize>::new(layout.total);
    for ((s, _), (t, _)) in circle_gluings(a, &layout) {
        uf.union(s, t);
    }
    let mut index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut component_of = Vec::with_capacity(layout.total);
    for s in 0..layout.total {
        let root = uf.find(s);
        let next = index.len();
        component_of.push(*index.entry(root).or_insert(next));
    }
    let mut chi = vec![0i64; index.len()];
    let mut boundary = vec![0u32; index.len()];
    for (s, x) in sheet_chis(a, &layout).into_iter().enumerate() {
        chi[component_of[s]] += x;
    }
    for s in puncture_sheets(a, &layout) {
        chi[component_of[s]] -= 1;
        boundary[component_of[s]] += 1;
    }
    let components = chi
        .into_iter()
        .zip(boundary)
        .map(|(chi, b)| {
            let twice = 2 - chi - b as i64;
            debug_assert!(twice >= 0 && twice % 2 == 0, "chi {chi}, boundary {b}");
            ComponentReport {
                chi,
                boundary_circles: b,
                genus: (twice.max(0) / 2) as u32,
            }
        })
        .collect();
    Surface { components }
}

/// Components of the surface with their Euler characteristic, boundary
/// count and genus. The assembly must be valid.
pub fn surface_invariants(a: &Assembly) -> Result<SurfaceReport, Error> {
    require_valid(a)?;
    Ok(surface_report(a))
}

pub(crate) fn surface_report(a: &Assembly) -> SurfaceReport {
    let s = build_surface(a);
    let total_boundary = s.components.iter().map(|c| c.boundary_circles).sum();
    SurfaceReport {
        connected: s.components.len() == 1,
        components: s.components,
        total_boundary,
        orientable: true,
    }
}

/// Whether the arcs of the pieces concatenate into one closed curve, and
/// whether that curve is in (1,1) position: one maximum and one minimum,
/// with straight arcs in between.
///
/// Unlike the other assembly operations this one is total on well-formed
/// input, so that a broken concatenation can be reported as such.
pub fn knot_check(a: &Assembly) -> Result<KnotReport, Error> {
    a.check_structure()?;
    let types = a.types();
    let is_single_knot = if a.pieces.len() == 1 {
        true
    } else {
        arcs_close_up(a)
    };
    Ok(KnotReport {
        is_single_knot,
        is_one_one: is_single_knot && pattern_ok(&types),
    })
}

fn arcs_close_up(a: &Assembly) -> bool {
    let mut g = UnGraph::<(usize, u32), ()>::new_undirected();
    let mut nodes = BTreeMap::new();
    let mut node = |g: &mut UnGraph<(usize, u32), ()>, key: (usize, u32)| {
        *nodes.entry(key).or_insert_with(|| g.add_node(key))
    };
    let last = a.pieces.len() - 1;
    let mut degree: BTreeMap<(usize, u32), u32> = BTreeMap::new();
    let mut edge = |g: &mut UnGraph<(usize, u32), ()>, x: (usize, u32), y: (usize, u32)| {
        let (u, v) = (node(g, x), node(g, y));
        g.add_edge(u, v, ());
        *degree.entry(x).or_default() += 1;
        *degree.entry(y).or_default() += 1;
    };
    for (i, p) in a.pieces.iter().enumerate() {
        if i == 0 {
            let s = match a.top_interface_end(0) {
                End::Lower => p.slots.lower,
                End::Upper => p.slots.upper,
            };
            edge(&mut g, (0, s[0]), (0, s[1]));
        } else if i == last {
            let s = p.slots.lower;
            edge(&mut g, (i - 1, s[0]), (i - 1, s[1]));
        } else {
            for k in 0..2 {
                edge(&mut g, (i - 1, p.slots.lower[k]), (i, p.slots.upper[k]));
            }
        }
    }
    degree.values().all(|&d| d == 2) && connected_components(&g) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pieces::CrossingEvent;
    use crate::torus::Slope;

    fn s(m: i64, l: i64) -> Slope {
        Slope::new(m, l).unwrap()
    }

    fn x(rank: u32, arc: u8, pos: u32) -> CrossingEvent {
        CrossingEvent::new(rank, arc, pos)
    }

    fn b_piece(r: u32, winding: u32) -> Piece {
        let mut p = Piece::minimal(PieceType::B, r, vec![]);
        if let PieceKind::B {
            annulus_winding, ..
        } = &mut p.kind
        {
            *annulus_winding = winding;
        }
        p
    }

    fn assembly(m: ManifoldSpec, gamma: Vec<Slope>, pieces: Vec<Piece>) -> Assembly {
        let n = pieces.len();
        Assembly {
            manifold: m,
            gamma,
            r: pieces[0].r,
            pieces,
            mid_offsets: vec![MidGluing::IDENTITY; n],
        }
    }

    #[test]
    fn f_in_s3_is_rejected_alone() {
        let f = Piece::minimal(PieceType::F, 1, vec![x(1, 0, 1)]);
        let a = assembly(ManifoldSpec::S3, vec![s(0, 1)], vec![f]);
        assert_eq!(
            validate_assembly(&a).unwrap().ids(),
            vec!["F-requires-S1xS2"]
        );
    }

    #[test]
    fn two_b_pieces_in_s3() {
        let a = assembly(
            ManifoldSpec::S3,
            vec![s(1, 2), s(2, 1)],
            vec![b_piece(1, 2), b_piece(1, 2)],
        );
        let rep = validate_assembly(&a).unwrap();
        assert!(rep.is_valid(), "{rep:?}");
        let sr = surface_invariants(&a).unwrap();
        assert!(sr.connected);
        assert_eq!(sr.components[0].genus, 2);
    }

    #[test]
    fn adjacent_slopes_too_close() {
        let a = assembly(
            ManifoldSpec::S3,
            vec![s(1, 1), s(1, 2)],
            vec![b_piece(1, 1), b_piece(1, 1)],
        );
        let ids = validate_assembly(&a).unwrap().ids();
        assert!(ids.contains(&"2.8.1(2)".to_string()), "{ids:?}");
    }

    #[test]
    fn single_d_is_a_punctured_torus() {
        let mut d = Piece::minimal(PieceType::D, 1, vec![x(1, 0, 1), x(2, 1, 2)]);
        if let PieceKind::D {
            winding_a,
            winding_b,
            ..
        } = &mut d.kind
        {
            *winding_a = 2;
            *winding_b = 3;
        }
        let a = assembly(ManifoldSpec::S3, vec![s(3, 2)], vec![d]);
        let sr = surface_invariants(&a).unwrap();
        assert_eq!(
            sr.components,
            vec![ComponentReport {
                chi: -2,
                boundary_circles: 2,
                genus: 1
            }]
        );
        assert_eq!(
            knot_check(&a).unwrap(),
            KnotReport {
                is_single_knot: true,
                is_one_one: true
            }
        );
    }

    #[test]
    fn torus_with_a_bubble() {
        let c = Piece::minimal(PieceType::C, 1, vec![x(1, 0, 1), x(2, 1, 2)]);
        let a = assembly(
            ManifoldSpec::S3,
            vec![s(3, 2), s(0, 1)],
            vec![b_piece(1, 2), c],
        );
        let sr = surface_invariants(&a).unwrap();
        assert!(sr.connected);
        assert_eq!(sr.components[0].genus, 1);
        assert_eq!(sr.total_boundary, 2);
    }

    #[test]
    fn broken_arcs() {
        let mut a = assembly(
            ManifoldSpec::S3,
            vec![s(1, 2), s(3, 4), s(2, 1)],
            vec![
                b_piece(1, 2),
                Piece::minimal(PieceType::A, 1, vec![]),
                b_piece(1, 2),
            ],
        );
        assert!(validate_assembly(&a).unwrap().is_valid());
        assert!(knot_check(&a).unwrap().is_one_one);
        a.pieces[1].slots.lower = [0, 2];
        let k = knot_check(&a).unwrap();
        assert!(!k.is_single_knot);
        assert_eq!(validate_assembly(&a).unwrap().ids(), vec!["arc-continuity"]);
    }

    #[test]
    fn d_offsets_change_component_count() {
        let d = Piece::minimal(PieceType::D, 2, vec![]);
        let mut a = assembly(ManifoldSpec::S3, vec![s(3, 2)], vec![d]);
        if let PieceKind::D { winding_b, .. } = &mut a.pieces[0].kind {
            *winding_b = 3;
        }
        let zero = surface_invariants(&a).unwrap();
        a.mid_offsets[0] = MidGluing::rotation(1);
        let one = surface_invariants(&a).unwrap();
        assert_eq!(zero.components.len(), 2);
        assert_eq!(one.components.len(), 1);
        let total = |r: &SurfaceReport| r.components.iter().map(|c| c.chi).sum::<i64>();
        assert_eq!(total(&zero), total(&one));
    }
}
