mod common;

use meridian::assembler::SurfaceReport;
use meridian::pieces::MidGluing;
use meridian::{
    cell_complex_chi, knot_check, surface_invariants, validate_assembly, Assembly, PieceKind,
};

fn closed_up(a: &Assembly) -> Assembly {
    let mut b = a.clone();
    for p in &mut b.pieces {
        p.crossings.clear();
        match &mut p.kind {
            PieceKind::A { disjoint_wrap, .. }
            | PieceKind::B { disjoint_wrap, .. }
            | PieceKind::D { disjoint_wrap, .. } => *disjoint_wrap = Some(2),
            _ => {}
        }
    }
    b
}

#[test]
fn invariants_on_the_small_family() {
    let family = common::small_family();
    assert!(family.len() > 500, "family has {} members", family.len());
    for a in &family {
        let sr = surface_invariants(a).unwrap();
        let chis: Vec<i64> = sr.components.iter().map(|c| c.chi).collect();
        assert_eq!(cell_complex_chi(a).unwrap(), chis);
        for c in &sr.components {
            assert_eq!(2 * c.genus as i64, 2 - c.chi - c.boundary_circles as i64);
        }
        let crossings: usize = a.pieces.iter().map(|p| p.crossings.len()).sum();
        assert_eq!(sr.total_boundary as usize, crossings);
        assert!(sr.orientable);
        let k = knot_check(a).unwrap();
        assert!(k.is_single_knot && k.is_one_one);
    }
}

#[test]
fn full_rotations_do_not_change_the_surface() {
    for a in common::small_family() {
        let before = surface_invariants(&a).unwrap();
        let mut b = a.clone();
        for (g, p) in b.mid_offsets.iter_mut().zip(&a.pieces) {
            *g = MidGluing {
                offset: g.offset + p.curve_count(),
                ..*g
            };
        }
        assert_eq!(surface_invariants(&b).unwrap(), before);
    }
}

#[test]
fn removing_crossings_closes_the_surface() {
    for a in common::small_family() {
        let b = closed_up(&a);
        let rep = validate_assembly(&b).unwrap();
        // type C and the disk-capped pieces need crossings; skip those
        if !rep.is_valid() {
            continue;
        }
        let sr: SurfaceReport = surface_invariants(&b).unwrap();
        assert_eq!(sr.total_boundary, 0);
        assert!(sr.components.iter().all(|c| c.boundary_circles == 0));
    }
}
