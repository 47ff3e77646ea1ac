#![no_main]

use libfuzzer_sys::fuzz_target;
use natave::{canonicalize, min_realization, tree_of, CanonicalShape, PlanarShape};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(shape) = PlanarShape::parse(text) else {
        assert!(CanonicalShape::parse(text).is_err());
        return;
    };
    assert_eq!(shape.as_str(), text);
    assert_eq!(PlanarShape::from_children(&shape.children()), shape);
    let c = canonicalize(&shape);
    assert_eq!(canonicalize(&c.to_planar()), c);
    if let Ok(n) = min_realization(&shape) {
        assert_eq!(tree_of(n).unwrap(), shape);
    }
});
