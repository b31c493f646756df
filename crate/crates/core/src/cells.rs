//! Euler characteristic by explicit cell counting, independent of the
//! sheet arithmetic in [`crate::assembler`].
//!
//! Each sheet is built as a sphere with holes: every boundary circle is
//! subdivided into `K` vertices and `K` edges, the circles are joined by a
//! tree of arcs, and one 2-cell fills the rest. Glued circles are then
//! identified vertex by vertex and edge by edge, punctures stay open, and
//! `V - E + F` is counted per connected component of the quotient.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::assembler::{circle_gluings, puncture_sheets, Assembly, SheetLayout};
use crate::error::Error;
use crate::pieces::{End, SheetKind};

/// Segments per boundary circle. Three keeps every circle a simplicial loop.
const K: usize = 3;

pub const DEFAULT_CELL_BUDGET: usize = 200_000;

/// Per-component Euler characteristic, components ordered by their lowest
/// sheet as in [`crate::surface_invariants`].
pub fn cell_complex_chi(a: &Assembly) -> Result<Vec<i64>, Error> {
    cell_complex_chi_with_budget(a, DEFAULT_CELL_BUDGET)
}

pub fn cell_complex_chi_with_budget(a: &Assembly, budget: usize) -> Result<Vec<i64>, Error> {
    let rep = crate::assembler::validate_assembly(a)?;
    if !rep.is_valid() {
        return Err(Error::Invalid(rep));
    }
    count(a, budget)
}

/// Boundary circles of one sheet: its glued circles, keyed as in
/// `circle_gluings`, then one open circle per puncture.
struct SheetCells {
    circles: Vec<Circle>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Circle {
    Glued(u32),
    Puncture(usize),
}

pub(crate) fn count(a: &Assembly, budget: usize) -> Result<Vec<i64>, Error> {
    let layout = SheetLayout::new(a);
    let mut sheets: Vec<SheetCells> = (0..layout.total)
        .map(|_| SheetCells {
            circles: Vec::new(),
        })
        .collect();

    for (i, p) in a.pieces.iter().enumerate() {
        let g = a.gluing(i);
        for end in [End::Lower, End::Upper] {
            let fam = p.family(end, g);
            for q in 1..=p.curve_count() {
                sheets[layout.sheet(i, end, fam.owner_of(q))]
                    .circles
                    .push(Circle::Glued(q));
            }
            if fam.kind == SheetKind::Pants {
                for k in 1..=fam.sheets {
                    sheets[layout.sheet(i, end, k)]
                        .circles
                        .push(Circle::Glued(0));
                }
            }
        }
    }
    for (n, s) in puncture_sheets(a, &layout).into_iter().enumerate() {
        sheets[s].circles.push(Circle::Puncture(n));
    }

    let needed: usize = sheets
        .iter()
        .map(|s| {
            let b = s.circles.len();
            2 * b * K + b + 1
        })
        .sum();
    if needed > budget {
        return Err(Error::BoundExceeded { needed, budget });
    }

    // Vertices and edges, numbered per (sheet, circle, k). Connecting arcs
    // get their own edge numbers.
    let mut vertex_of: BTreeMap<(usize, Circle), usize> = BTreeMap::new();
    let mut nv = 0;
    let mut ne = 0;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut faces: Vec<usize> = Vec::new();
    for (s, sheet) in sheets.iter().enumerate() {
        for c in &sheet.circles {
            vertex_of.insert((s, *c), nv);
            nv += K;
            ne += K;
        }
        let first = vertex_of[&(s, sheet.circles[0])];
        for c in &sheet.circles[1..] {
            arcs.push((first, vertex_of[&(s, *c)]));
        }
        faces.push(first);
    }
    let circle_edges = ne;
    ne += arcs.len();

    let mut vuf = UnionFind::<usize>::new(nv);
    let mut euf = UnionFind::<usize>::new(circle_edges);
    for ((s, c), (t, d)) in circle_gluings(a, &layout) {
        let u = vertex_of[&(s, Circle::Glued(c))];
        let v = vertex_of[&(t, Circle::Glued(d))];
        for k in 0..K {
            vuf.union(u + k, v + k);
            // circle edges share the numbering of their first vertex
            euf.union(u + k, v + k);
        }
    }

    // components: join endpoints of every edge in the quotient
    let mut comp = UnionFind::<usize>::new(nv);
    for start in vertex_of.values() {
        for k in 0..K {
            comp.union(vuf.find(start + k), vuf.find(start + (k + 1) % K));
        }
    }
    for &(u, v) in &arcs {
        comp.union(vuf.find(u), vuf.find(v));
    }

    // number components by their lowest sheet
    let mut order: BTreeMap<usize, usize> = BTreeMap::new();
    for &f in &faces {
        let root = comp.find(vuf.find(f));
        let next = order.len();
        order.entry(root).or_insert(next);
    }
    let mut chi = vec![0i64; order.len()];
    let comp_of = |v: usize, comp: &mut UnionFind<usize>, vuf: &mut UnionFind<usize>| {
        order[&comp.find(vuf.find(v))]
    };

    let mut seen_v = vec![false; nv];
    for v in 0..nv {
        let rv = vuf.find(v);
        if !seen_v[rv] {
            seen_v[rv] = true;
            chi[comp_of(rv, &mut comp, &mut vuf)] += 1;
        }
    }
    let mut seen_e = vec![false; circle_edges];
    for e in 0..circle_edges {
        let re = euf.find(e);
        if !seen_e[re] {
            seen_e[re] = true;
            chi[comp_of(e, &mut comp, &mut vuf)] -= 1;
        }
    }
    for &(u, _) in &arcs {
        chi[comp_of(u, &mut comp, &mut vuf)] -= 1;
    }
    for &f in &faces {
        chi[comp_of(f, &mut comp, &mut vuf)] += 1;
    }
    debug_assert_eq!(ne, circle_edges + arcs.len());
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembler::surface_invariants;
    use crate::pieces::{fragment_report, CrossingEvent, MidGluing, Piece, PieceKind, PieceType};
    use crate::torus::{ManifoldSpec, Slope};

    fn single(m: ManifoldSpec, gamma: Slope, p: Piece) -> Assembly {
        Assembly {
            manifold: m,
            gamma: vec![gamma],
            r: p.r,
            pieces: vec![p],
            mid_offsets: vec![MidGluing::IDENTITY],
        }
    }

    #[test]
    fn single_pieces_match_fragment_reports() {
        let x = |r, a, p| CrossingEvent::new(r, a, p);
        let mut d = Piece::minimal(PieceType::D, 1, vec![x(1, 0, 1), x(2, 1, 2)]);
        if let PieceKind::D { winding_b, .. } = &mut d.kind {
            *winding_b = 3;
        }
        let a = single(ManifoldSpec::S3, Slope::new(3, 2).unwrap(), d.clone());
        assert_eq!(
            cell_complex_chi(&a).unwrap(),
            vec![fragment_report(&d).unwrap().chi]
        );

        let f = Piece::minimal(PieceType::F, 1, vec![x(1, 0, 1)]);
        let a = single(ManifoldSpec::S1XS2, Slope::LONGITUDE_DISK, f.clone());
        assert_eq!(cell_complex_chi(&a).unwrap(), vec![1]);
        assert_eq!(
            surface_invariants(&a).unwrap().components[0].chi,
            fragment_report(&f).unwrap().chi
        );
    }

    #[test]
    fn budget_is_enforced() {
        let mut d = Piece::minimal(PieceType::D, 3, vec![]);
        if let PieceKind::D { winding_b, .. } = &mut d.kind {
            *winding_b = 3;
        }
        let a = single(ManifoldSpec::S3, Slope::new(3, 2).unwrap(), d);
        assert!(matches!(
            cell_complex_chi_with_budget(&a, 10),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
