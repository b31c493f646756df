#![allow(dead_code)]

use meridian::enumerate::{bounded_family, FamilyBounds};
use meridian::{Assembly, ManifoldSpec};

pub fn manifolds() -> Vec<ManifoldSpec> {
    vec![
        ManifoldSpec::S3,
        ManifoldSpec::S1XS2,
        ManifoldSpec::lens(5, 2).unwrap(),
    ]
}

/// Valid assemblies with `r <= 2`, at most 3 pieces and 4 crossings.
pub fn small_family() -> Vec<Assembly> {
    manifolds()
        .into_iter()
        .flat_map(|m| {
            bounded_family(FamilyBounds {
                manifold: m,
                max_r: 2,
                max_pieces: 3,
                max_crossings: 4,
                max_slope_coeff: 5,
            })
        })
        .collect()
}
