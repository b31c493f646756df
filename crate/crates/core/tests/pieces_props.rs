use meridian::pieces::{End, EndFlags, MidGluing};
use meridian::torus::TwoBridgeFraction;
use meridian::{fragment_report, validate_piece, CrossingEvent, Piece, PieceKind, PieceType};
use proptest::prelude::*;

fn piece_strategy() -> impl Strategy<Value = Piece> {
    (
        prop::sample::select(PieceType::ALL.to_vec()),
        1u32..=3,
        prop::collection::vec((0u8..2, 1u32..=6, prop::bool::ANY), 0..6),
    )
        .prop_map(|(t, r, raw)| {
            let n = if t == PieceType::F { r } else { 2 * r };
            let xs = raw
                .into_iter()
                .enumerate()
                .map(|(i, (arc, pos, wind))| {
                    let mut c = CrossingEvent::new(i as u32 + 1, arc, (pos - 1) % n + 1);
                    c.winding = i32::from(wind);
                    c
                })
                .collect();
            Piece::minimal(t, r, xs)
        })
}

proptest! {
    #[test]
    fn closed_pieces_have_even_chi_before_puncturing(p in piece_strategy()) {
        let f = fragment_report(&p).unwrap();
        prop_assert_eq!(f.meridian_boundaries as usize, p.crossings.len());
        if p.piece_type().is_closed() {
            prop_assert_eq!((f.chi + p.crossings.len() as i64).rem_euclid(2), 0);
        }
    }

    #[test]
    fn ownership_pairs_mirror_positions(p in piece_strategy()) {
        let f = fragment_report(&p).unwrap();
        let n = p.curve_count();
        let lower = p.family(End::Lower, MidGluing::IDENTITY);
        for q in 1..=n {
            if lower.kind != meridian::pieces::SheetKind::Disk {
                prop_assert_eq!(f.lower_ownership[(q - 1) as usize], f.lower_ownership[(n - q) as usize]);
            } else {
                prop_assert_eq!(f.lower_ownership[(q - 1) as usize], q);
            }
        }
    }

    /// Repairing one violated clause never creates a violation of another.
    #[test]
    fn repairs_are_monotone(p in piece_strategy()) {
        let Ok(before) = validate_piece(&p) else { return Ok(()); };
        let before_ids = before.ids();
        for fixed in repairs(&p) {
            let Ok(after) = validate_piece(&fixed) else { continue };
            for id in after.ids() {
                prop_assert!(before_ids.contains(&id), "{} appeared after a repair", id);
            }
        }
    }
}

/// Single-field repairs: nontrivial certificates, windings 2, no-slide
/// flags, winding separators on every crossing.
fn repairs(p: &Piece) -> Vec<Piece> {
    let mut out = Vec::new();
    let mut certs = p.clone();
    match &mut certs.kind {
        PieceKind::A {
            lower_cert,
            upper_cert,
            ..
        } => {
            *lower_cert = TwoBridgeFraction::TREFOIL;
            *upper_cert = TwoBridgeFraction::TREFOIL;
        }
        PieceKind::B {
            lower_cert,
            min_cert,
            annulus_winding,
            ..
        } => {
            *lower_cert = TwoBridgeFraction::TREFOIL;
            *min_cert = TwoBridgeFraction::TREFOIL;
            *annulus_winding = 2;
        }
        _ => {}
    }
    out.push(certs);
    let mut slide = p.clone();
    slide.no_slide = EndFlags {
        lower: true,
        upper: true,
    };
    out.push(slide);
    let mut wind = p.clone();
    for c in &mut wind.crossings {
        c.winding = 1;
    }
    wind.sync_derived();
    out.push(wind);
    out
}

#[test]
fn spec_examples() {
    let c = Piece::minimal(PieceType::C, 1, vec![]);
    assert_eq!(validate_piece(&c).unwrap().ids(), vec!["C-must-intersect"]);

    let mut b = Piece::minimal(PieceType::B, 1, vec![]);
    if let PieceKind::B {
        annulus_winding, ..
    } = &mut b.kind
    {
        *annulus_winding = 1;
    }
    assert_eq!(validate_piece(&b).unwrap().ids(), vec!["winding-≥2"]);

    let a = Piece::minimal(
        PieceType::A,
        1,
        vec![CrossingEvent::new(1, 0, 1), CrossingEvent::new(2, 1, 2)],
    );
    assert!(validate_piece(&a).unwrap().is_valid());

    let a2 = Piece::minimal(
        PieceType::A,
        2,
        vec![
            CrossingEvent::new(1, 0, 1),
            CrossingEvent::new(2, 1, 4),
            CrossingEvent::new(3, 0, 2),
        ],
    );
    let f = fragment_report(&a2).unwrap();
    assert_eq!(
        (
            f.chi,
            f.bottom_interface_circles,
            f.top_interface_circles,
            f.meridian_boundaries
        ),
        (-7, 2, 2, 3)
    );
}

#[test]
fn each_clause_can_fail_alone() {
    let x = CrossingEvent::new;
    // lower certificate trivial
    let mut a = Piece::minimal(PieceType::A, 1, vec![x(1, 0, 1), x(2, 1, 2)]);
    if let PieceKind::A { lower_cert, .. } = &mut a.kind {
        *lower_cert = TwoBridgeFraction::UNKNOT;
    }
    assert_eq!(validate_piece(&a).unwrap().ids(), vec!["2.2.1(1)"]);
    // parallel return without winding
    let mut a = Piece::minimal(
        PieceType::A,
        1,
        vec![x(1, 0, 1), x(2, 1, 2), x(3, 0, 1), x(4, 1, 2)],
    );
    assert_eq!(validate_piece(&a).unwrap().ids(), vec!["2.2.1(3)"]);
    a.crossings[2].winding = 1;
    a.crossings[3].winding = -1;
    assert!(validate_piece(&a).unwrap().is_valid());
    // missing wrapping number
    let mut d = Piece::minimal(PieceType::D, 1, vec![]);
    if let PieceKind::D { disjoint_wrap, .. } = &mut d.kind {
        *disjoint_wrap = Some(1);
    }
    assert_eq!(validate_piece(&d).unwrap().ids(), vec!["2.5.1(6)"]);
    // E endpoints on one disk
    let e = Piece::minimal(PieceType::E, 1, vec![x(1, 0, 1), x(2, 1, 2), x(3, 0, 2)]);
    assert_eq!(validate_piece(&e).unwrap().ids(), vec!["2.6.1(4)"]);
}
