//! Bounded search for assemblies with prescribed surface invariants.
//!
//! The surface of an assembly is determined by `r`, the piece types, the
//! offsets and the crossings; the slopes only have to satisfy the
//! conditions on `gamma`. So the search walks `(r, piece types)` in
//! lexicographic order, predicts the genus of a connected surface from
//! the Euler characteristic of the sheets, takes the first admissible
//! slope sequence, then the first offsets that make the surface connected,
//! then the first distribution of crossings that validates.

use std::fmt;

use serde::Serialize;

use crate::assembler::{build_surface, surface_report, validate_assembly, Assembly};
use crate::error::Error;
use crate::pieces::{
    piece_violations, CrossingEvent, End, EndKind, MidGluing, Piece, PieceKind, PieceType,
    SheetKind,
};
use crate::torus::{delta, gcd, ManifoldKind, ManifoldSpec, Slope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub manifold: ManifoldSpec,
    pub target_genus: u32,
    /// Number of boundary circles, i.e. `2h` for `h` meridian pairs.
    pub target_boundary: u32,
    pub max_r: u32,
    pub max_pieces: u32,
    pub max_slope_coeff: u32,
    /// Bound on the total number of crossings.
    pub max_crossings: u32,
}

impl SearchSpec {
    /// Search with the default bounds: `r <= 3`, at most 5 pieces, slope
    /// coefficients up to 5 and at most 6 crossings.
    pub fn new(manifold: ManifoldSpec, target_genus: u32, target_boundary: u32) -> Self {
        SearchSpec {
            manifold,
            target_genus,
            target_boundary,
            max_r: 3,
            max_pieces: 5,
            max_slope_coeff: 5,
            max_crossings: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchFailure {
    /// Every candidate within the bounds was tried.
    NotFound { candidates: usize },
    /// No assembly of any size can have the target genus in this manifold.
    StructurallyImpossible(String),
}

impl fmt::Display for SearchFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchFailure::NotFound { candidates } => write!(
                f,
                "not found within bounds ({candidates} piece patterns exhausted)"
            ),
            SearchFailure::StructurallyImpossible(why) => {
                write!(f, "structurally impossible: {why}")
            }
        }
    }
}

impl std::error::Error for SearchFailure {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Genus1Class {
    /// One type A piece between two type C pieces.
    AplusCplusC,
    BplusC,
    D,
    NotGenus1,
    /// A connected genus-1 surface of any other shape.
    Unclassified(Vec<PieceType>),
}

impl fmt::Display for Genus1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus1Class::AplusCplusC => f.write_str("A+C+C"),
            Genus1Class::BplusC => f.write_str("B+C"),
            Genus1Class::D => f.write_str("D"),
            Genus1Class::NotGenus1 => f.write_str("not-genus-1"),
            Genus1Class::Unclassified(ts) => {
                let ts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                write!(f, "unclassified {}", ts.join("+"))
            }
        }
    }
}

/// Piece-type class of a connected genus-1 surface.
pub fn classify_genus1(a: &Assembly) -> Result<Genus1Class, Error> {
    let rep = validate_assembly(a)?;
    if !rep.is_valid() {
        return Err(Error::Invalid(rep));
    }
    let s = surface_report(a);
    if !s.connected || s.components[0].genus != 1 {
        return Ok(Genus1Class::NotGenus1);
    }
    let mut types = a.types();
    types.sort();
    use PieceType::*;
    Ok(match types.as_slice() {
        [A, C, C] => Genus1Class::AplusCplusC,
        [B, C] => Genus1Class::BplusC,
        [D] => Genus1Class::D,
        _ => Genus1Class::Unclassified(types),
    })
}

/// Canonical slopes with `|m|, l <= max_coeff`, ordered by size, then `l`,
/// then `m`.
pub fn bounded_slopes(max_coeff: u32) -> Vec<Slope> {
    let c = max_coeff as i64;
    let mut out = Vec::new();
    for l in 0..=c {
        for m in -c..=c {
            if gcd(m, l) == 1 && (l > 0 || m == 1) {
                out.push(Slope::new(m, l).expect("primitive"));
            }
        }
    }
    out.sort_by_key(|s| (s.m().abs().max(s.l()), s.l(), s.m()));
    out
}

fn gamma_ok(m: &ManifoldSpec, gamma: &[Slope]) -> bool {
    let (lambda, mu) = (m.lambda(), m.mu());
    let (g0, gn) = (gamma[0], gamma[gamma.len() - 1]);
    (g0 == lambda || delta(g0, lambda) >= 2)
        && gamma.windows(2).all(|w| delta(w[0], w[1]) >= 2)
        && (gn == mu || delta(gn, mu) >= 2)
}

/// All sequences `gamma_0 .. gamma_n` of bounded slopes that satisfy the
/// three conditions on `gamma`.
pub fn slope_sequences(m: ManifoldSpec, n: usize, max_coeff: u32) -> Vec<Vec<Slope>> {
    let slopes = bounded_slopes(max_coeff);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn rec(
        m: &ManifoldSpec,
        slopes: &[Slope],
        n: usize,
        cur: &mut Vec<Slope>,
        out: &mut Vec<Vec<Slope>>,
    ) {
        if cur.len() == n + 1 {
            if gamma_ok(m, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for &s in slopes {
            let fits = match cur.last() {
                None => s == m.lambda() || delta(s, m.lambda()) >= 2,
                Some(&prev) => delta(prev, s) >= 2,
            };
            if fits {
                cur.push(s);
                rec(m, slopes, n, cur, out);
                cur.pop();
            }
        }
    }
    rec(&m, &slopes, n, &mut cur, &mut out);
    out
}

/// First slope sequence in search order compatible with the piece types:
/// conditions on `gamma`, and the end slopes equal to `lambda`/`mu`
/// exactly where the end pieces demand it.
pub fn first_gamma(m: ManifoldSpec, types: &[PieceType], max_coeff: u32) -> Option<Vec<Slope>> {
    let slopes = bounded_slopes(max_coeff);
    let (lambda, mu) = (m.lambda(), m.mu());
    let n = types.len() - 1;
    let end_ok = |i: usize, s: Slope| -> bool {
        if n == 0 {
            let (at_l, at_m) = (s == lambda, s == mu);
            let shape = match types[0] {
                PieceType::D => !at_l && !at_m,
                PieceType::E => at_l != at_m,
                PieceType::F => at_l && at_m,
                _ => false,
            };
            return shape && (at_l || delta(s, lambda) >= 2) && (at_m || delta(s, mu) >= 2);
        }
        let mut ok = true;
        if i == 0 {
            ok &= (types[0] == PieceType::C) == (s == lambda);
            ok &= s == lambda || delta(s, lambda) >= 2;
        }
        if i == n {
            ok &= (types[n] == PieceType::C) == (s == mu);
            ok &= s == mu || delta(s, mu) >= 2;
        }
        ok
    };
    fn rec(
        slopes: &[Slope],
        n: usize,
        end_ok: &dyn Fn(usize, Slope) -> bool,
        cur: &mut Vec<Slope>,
    ) -> bool {
        let i = cur.len();
        if i == n + 1 {
            return true;
        }
        for &s in slopes {
            if let Some(&prev) = cur.last() {
                if delta(prev, s) < 2 {
                    continue;
                }
            }
            if (i == 0 || i == n) && !end_ok(i, s) {
                continue;
            }
            cur.push(s);
            if rec(slopes, n, end_ok, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    rec(&slopes, n, &end_ok, &mut cur).then_some(cur)
}

/// Genus of the surface if it is connected: one minus half the sum of the
/// sheet Euler characteristics. `None` when negative.
pub fn predicted_genus(types: &[PieceType], r: u32) -> Option<u32> {
    let r = r as i64;
    let sheets: i64 = types
        .iter()
        .map(|t| {
            let (lo, up) = t.ends();
            let n = if *t == PieceType::F { r } else { 2 * r };
            [lo, up]
                .iter()
                .map(|e| {
                    let k = SheetKind::from(*e);
                    (n / k.curves_per_sheet() as i64) * k.chi()
                })
                .sum::<i64>()
        })
        .sum();
    let twice = 2 - sheets;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}

/// Piece-type sequences with `k` pieces in search order.
pub fn patterns(k: usize) -> Vec<Vec<PieceType>> {
    use PieceType::*;
    if k == 1 {
        return vec![vec![D], vec![E], vec![F]];
    }
    let mut out = Vec::new();
    for first in [B, C] {
        for last in [B, C] {
            let mut v = vec![first];
            v.extend(std::iter::repeat_n(A, k - 2));
            v.push(last);
            out.push(v);
        }
    }
    out
}

fn admissible(m: &ManifoldSpec, types: &[PieceType]) -> bool {
    types.iter().all(|t| match t {
        PieceType::E => m.is_lens(),
        PieceType::F => m.kind() == ManifoldKind::S1xS2,
        _ => true,
    })
}

/// Whether any assembly, with no bound on its size, can carry a connected
/// surface of genus `g` in `m`.
fn genus_reachable(m: &ManifoldSpec, g: u32) -> Result<(), String> {
    if g >= 1 {
        return Ok(());
    }
    // Genus 0 needs positive sheet Euler characteristic: a single E or F
    // with r = 1, or two type C pieces with r = 1.
    if m.is_lens() {
        return Ok(());
    }
    if m.kind() == ManifoldKind::S1xS2 {
        return Ok(());
    }
    Err(format!(
        "in {m} type E and F pieces are excluded and delta(lambda, mu) = {} < 2 rules out C C, \
         so no piece pattern has a planar connected surface",
        delta(m.lambda(), m.mu())
    ))
}

/// Pieces of the given types with minimal certificates and the windings
/// that the slopes force.
pub fn base_pieces(m: &ManifoldSpec, types: &[PieceType], gamma: &[Slope], r: u32) -> Vec<Piece> {
    let (lambda, mu) = (m.lambda(), m.mu());
    let n = types.len() - 1;
    let w = |a: Slope, b: Slope| delta(a, b) as u32;
    types
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let mut p = Piece::minimal(*t, r, vec![]);
            match &mut p.kind {
                PieceKind::B {
                    annulus_winding, ..
                } => {
                    *annulus_winding = if i == 0 {
                        w(gamma[0], lambda)
                    } else {
                        w(gamma[n], mu)
                    };
                }
                PieceKind::D {
                    winding_a,
                    winding_b,
                    ..
                } => {
                    *winding_a = w(gamma[0], lambda);
                    *winding_b = w(gamma[0], mu);
                }
                PieceKind::E { winding_a, .. } => {
                    *winding_a = if gamma[0] == lambda {
                        w(gamma[0], mu)
                    } else {
                        w(gamma[0], lambda)
                    };
                }
                _ => {}
            }
            p
        })
        .collect()
}

/// Offsets worth distinguishing for a piece: rotations matter only when
/// the upper family has sheets meeting two curves.
fn offset_choices(p: &Piece) -> u32 {
    if SheetKind::from(p.end_kind(End::Upper)) == SheetKind::Disk {
        1
    } else {
        p.curve_count()
    }
}

/// Lexicographic odometer over `0..bound[i]`.
fn odometer(bounds: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let mut cur = Some(vec![0u32; bounds.len()]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < bounds[i] {
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

/// Compositions of `total` into `parts` nonnegative parts, lexicographic.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Candidate crossing patterns with `n` crossings for a piece in the given
/// gluing, in a fixed order. Arcs alternate starting with arc 0; each arc
/// starts on the innermost lower sheet and ends on the innermost upper
/// sheet (or on two distinct disks); repeated positions carry winding 1.
pub fn crossing_patterns(p: &Piece, g: MidGluing, n: u32) -> Vec<Vec<CrossingEvent>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let big_n = p.curve_count();
    if p.piece_type() == PieceType::F {
        return vec![with_windings(
            (1..=n).map(|k| CrossingEvent::new(k, 0, 1)).collect(),
        )];
    }
    let counts = [n.div_ceil(2), n / 2];
    let inner_lower = p.family(End::Lower, g).innermost_positions();
    let ends: Vec<[u32; 2]> = if p.end_kind(End::Upper) == EndKind::DiskCap {
        let mut v = Vec::new();
        for a in 1..=big_n {
            for b in 1..=big_n {
                if a != b {
                    v.push([a, b]);
                }
            }
        }
        v
    } else {
        ordered_pairs(&p.family(End::Upper, g).innermost_positions())
    };
    let mut out = Vec::new();
    for starts in ordered_pairs(&inner_lower) {
        for last in &ends {
            let mut strands: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
            let mut ok = true;
            for k in 0..2 {
                let c = counts[k];
                if c == 1 {
                    ok &= starts[k] == last[k];
                    strands[k] = vec![starts[k]];
                } else if c >= 2 {
                    let mut s = vec![starts[k]];
                    for j in 1..c - 1 {
                        s.push((starts[k] - 1 + j) % big_n + 1);
                    }
                    s.push(last[k]);
                    strands[k] = s;
                }
            }
            if !ok {
                continue;
            }
            let mut events = Vec::new();
            let mut idx = [0usize; 2];
            for rank in 1..=n {
                let arc = ((rank - 1) % 2) as usize;
                events.push(CrossingEvent::new(rank, arc as u8, strands[arc][idx[arc]]));
                idx[arc] += 1;
            }
            let events = with_windings(events);
            if !out.contains(&events) {
                out.push(events);
            }
        }
    }
    out
}

fn ordered_pairs(xs: &[u32]) -> Vec<[u32; 2]> {
    let mut v = Vec::new();
    for &a in xs {
        for &b in xs {
            if a != b {
                v.push([a, b]);
            }
        }
    }
    v
}

fn with_windings(mut events: Vec<CrossingEvent>) -> Vec<CrossingEvent> {
    let mut last: [Option<u32>; 2] = [None, None];
    for e in &mut events {
        let k = e.arc as usize;
        e.winding = i32::from(last[k] == Some(e.position));
        last[k] = Some(e.position);
    }
    events
}

/// First crossing pattern with `n` crossings that passes the piece's own
/// conditions in its gluing.
fn first_valid_pattern(p: &Piece, g: MidGluing, n: u32) -> Option<Piece> {
    crossing_patterns(p, g, n).into_iter().find_map(|xs| {
        let mut q = p.clone();
        q.crossings = xs;
        q.sync_derived();
        piece_violations(&q, g, None, false)
            .ok()
            .filter(|v| v.is_empty())
            .map(|_| q)
    })
}

/// A point of the search space above the slope level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub r: u32,
    pub types: Vec<PieceType>,
}

fn shapes(m: &ManifoldSpec, max_r: u32, max_pieces: u32) -> Vec<Shape> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        for k in 1..=max_pieces as usize {
            for types in patterns(k) {
                if admissible(m, &types) {
                    out.push(Shape {
                        r,
                        types: types.clone(),
                    });
                }
            }
        }
    }
    out
}

fn skeleton_assembly(m: ManifoldSpec, shape: &Shape, max_coeff: u32) -> Option<Assembly> {
    let gamma = first_gamma(m, &shape.types, max_coeff)?;
    let pieces = base_pieces(&m, &shape.types, &gamma, shape.r);
    Some(Assembly {
        manifold: m,
        r: shape.r,
        mid_offsets: vec![MidGluing::IDENTITY; pieces.len()],
        gamma,
        pieces,
    })
}

fn with_crossings(base: &Assembly, counts: &[u32]) -> Option<Assembly> {
    let mut a = base.clone();
    for (i, &c) in counts.iter().enumerate() {
        a.pieces[i] = first_valid_pattern(&base.pieces[i], base.mid_offsets[i], c)?;
    }
    validate_assembly(&a)
        .ok()
        .filter(|rep| rep.is_valid())
        .map(|_| a)
}

fn search_shape(spec: &SearchSpec, shape: &Shape) -> Option<Assembly> {
    if predicted_genus(&shape.types, shape.r) != Some(spec.target_genus) {
        return None;
    }
    let base = skeleton_assembly(spec.manifold, shape, spec.max_slope_coeff)?;
    let bounds: Vec<u32> = base.pieces.iter().map(offset_choices).collect();
    for offs in odometer(&bounds) {
        let mut a = base.clone();
        a.mid_offsets = offs.iter().map(|&o| MidGluing::rotation(o)).collect();
        if build_surface(&a).components.len() != 1 {
            continue;
        }
        for counts in compositions(spec.target_boundary, a.pieces.len()) {
            if let Some(found) = with_crossings(&a, &counts) {
                return Some(found);
            }
        }
    }
    None
}

/// Deterministic bounded search for a valid assembly whose surface is
/// connected with the target genus and boundary count.
///
/// Candidates are ordered by `r`, number of pieces, piece types, slopes,
/// offsets and crossing distribution; the first success in that order is
/// returned even when candidates are evaluated in parallel.
pub fn find_construction(spec: &SearchSpec) -> Result<Assembly, SearchFailure> {
    genus_reachable(&spec.manifold, spec.target_genus)
        .map_err(SearchFailure::StructurallyImpossible)?;
    let candidates = shapes(&spec.manifold, spec.max_r, spec.max_pieces);
    if spec.target_boundary > spec.max_crossings {
        return Err(SearchFailure::NotFound {
            candidates: candidates.len(),
        });
    }
    #[cfg(feature = "parallel")]
    let found = {
        use rayon::prelude::*;
        candidates
            .par_iter()
            .find_map_first(|s| search_shape(spec, s))
    };
    #[cfg(not(feature = "parallel"))]
    let found = candidates.iter().find_map(|s| search_shape(spec, s));
    found.ok_or(SearchFailure::NotFound {
        candidates: candidates.len(),
    })
}

/// Bounds of an exhaustive family of assemblies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyBounds {
    pub manifold: ManifoldSpec,
    pub max_r: u32,
    pub max_pieces: u32,
    pub max_crossings: u32,
    pub max_slope_coeff: u32,
}

/// Shapes of the bounded family, in search order.
pub fn family_shapes(b: &FamilyBounds) -> Vec<Shape> {
    shapes(&b.manifold, b.max_r, b.max_pieces)
}

/// Every valid assembly of one shape in the bounded family: the first
/// admissible slopes, every offset vector, every distribution of at most
/// `max_crossings` crossings, each piece with its first valid pattern.
pub fn shape_family(b: &FamilyBounds, shape: &Shape) -> Vec<Assembly> {
    let Some(base) = skeleton_assembly(b.manifold, shape, b.max_slope_coeff) else {
        return Vec::new();
    };
    let bounds: Vec<u32> = base.pieces.iter().map(offset_choices).collect();
    let mut out = Vec::new();
    for offs in odometer(&bounds) {
        let mut a = base.clone();
        a.mid_offsets = offs.iter().map(|&o| MidGluing::rotation(o)).collect();
        for total in 0..=b.max_crossings {
            for counts in compositions(total, a.pieces.len()) {
                if let Some(found) = with_crossings(&a, &counts) {
                    out.push(found);
                }
            }
        }
    }
    out
}

/// All valid assemblies of the bounded family.
pub fn bounded_family(b: FamilyBounds) -> impl Iterator<Item = Assembly> {
    family_shapes(&b)
        .into_iter()
        .flat_map(move |s| shape_family(&b, &s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembler::{knot_check, surface_invariants};

    fn s(m: i64, l: i64) -> Slope {
        Slope::new(m, l).unwrap()
    }

    #[test]
    fn slope_sequence_examples() {
        let seqs = slope_sequences(ManifoldSpec::S3, 1, 2);
        assert!(seqs.contains(&vec![s(1, 2), s(2, 1)]));
        assert!(!seqs.contains(&vec![s(1, 1), s(1, 2)]));
        let seqs = slope_sequences(ManifoldSpec::S1XS2, 1, 2);
        assert!(seqs.iter().any(|g| g[0] == s(1, 0)));
        for g in &seqs {
            assert!(gamma_ok(&ManifoldSpec::S1XS2, g));
        }
    }

    #[test]
    fn predicted_genera() {
        use PieceType::*;
        assert_eq!(predicted_genus(&[D], 2), Some(1));
        assert_eq!(predicted_genus(&[E], 1), Some(0));
        assert_eq!(predicted_genus(&[B, C], 1), Some(1));
        assert_eq!(predicted_genus(&[C, A, C], 1), Some(1));
        assert_eq!(predicted_genus(&[B, B], 2), Some(3));
        assert_eq!(predicted_genus(&[C, C], 2), None);
    }

    #[test]
    fn genus_one_in_s3() {
        let spec = SearchSpec {
            max_r: 2,
            max_pieces: 3,
            max_slope_coeff: 5,
            max_crossings: 4,
            ..SearchSpec::new(ManifoldSpec::S3, 1, 2)
        };
        let a = find_construction(&spec).unwrap();
        let types = a.types();
        assert!(
            types == vec![PieceType::D] || types == vec![PieceType::B, PieceType::C],
            "{types:?}"
        );
        let sr = surface_invariants(&a).unwrap();
        assert!(sr.connected);
        assert_eq!(sr.total_boundary, 2);
        assert!(knot_check(&a).unwrap().is_one_one);
    }

    #[test]
    fn planar_in_s3_is_impossible() {
        let spec = SearchSpec::new(ManifoldSpec::S3, 0, 2);
        assert!(matches!(
            find_construction(&spec),
            Err(SearchFailure::StructurallyImpossible(_))
        ));
    }

    #[test]
    fn planar_in_lens_space_is_type_e() {
        let spec = SearchSpec {
            max_r: 2,
            max_pieces: 1,
            max_slope_coeff: 5,
            max_crossings: 4,
            ..SearchSpec::new(ManifoldSpec::lens(5, 2).unwrap(), 0, 2)
        };
        let a = find_construction(&spec).unwrap();
        assert_eq!(a.types(), vec![PieceType::E]);
        assert_eq!(surface_invariants(&a).unwrap().components[0].genus, 0);
    }

    #[test]
    fn odometer_and_compositions() {
        assert_eq!(odometer(&[2, 3]).count(), 6);
        assert_eq!(odometer(&[1]).collect::<Vec<_>>(), vec![vec![0]]);
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }
}
