mod common;

use meridian::morse::EventKind;
use meridian::{endpoint_kinds, recognize, replay, trace, MorseTrace, Skeleton};

#[test]
fn traces_replay_and_parse_back() {
    let family = common::small_family();
    for a in &family {
        let t = trace(a).unwrap();
        let end = replay(&t).unwrap();
        assert_eq!(end, t.final_state);
        assert!(t
            .events
            .iter()
            .all(|e| !matches!(e.kind, EventKind::Saddle3 | EventKind::Saddle4)));
        let (s1, s2) = t.saddle_counts();
        assert_eq!(s1, s2);
        assert_eq!(s1, a.r as usize * (a.pieces.len() - 1));
        let text = t.to_string();
        let back: MorseTrace = text.parse().unwrap();
        assert_eq!(back, t);
        let (bottom, top) = endpoint_kinds(a);
        assert_eq!(recognize(&back, bottom, top).unwrap(), Skeleton::of(a));
    }
}

#[test]
fn crossings_only_where_no_trivial_curves() {
    for a in common::small_family() {
        let t = trace(&a).unwrap();
        let mut trivial = t.initial.trivial_count;
        for e in &t.events {
            match e.kind {
                EventKind::Saddle2 => trivial += 1,
                EventKind::Saddle1(_) => trivial -= 1,
                EventKind::Crossing(_) => assert_eq!(trivial, 0),
                _ => {}
            }
        }
    }
}
