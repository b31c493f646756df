mod common;

use meridian::descriptor::{parse, serialize};

#[test]
fn descriptors_round_trip() {
    for a in common::small_family() {
        let text = serialize(&a);
        let back = parse(&text).unwrap();
        assert_eq!(back, a, "{text}");
        assert_eq!(serialize(&back), text);
    }
}
