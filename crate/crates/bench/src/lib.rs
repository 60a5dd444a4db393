//! Shared inputs for the criterion benches.

use amg_core::constructions::{matrix_bundle, pair_groupoid, z6_example, z_bundle};
use amg_core::{AlmostGroupoid, BrandtGroupoid};

/// Almost groupoids of increasing order, labelled for benchmark ids.
pub fn almost_inputs() -> Vec<(String, AlmostGroupoid)> {
    vec![
        ("z6_example".into(), z6_example()),
        ("zbundle_4_16".into(), z_bundle(4, 16).unwrap()),
        ("matrix_13".into(), matrix_bundle(13).unwrap()),
        ("zbundle_8_32".into(), z_bundle(8, 32).unwrap()),
    ]
}

pub fn brandt_inputs() -> Vec<(String, BrandtGroupoid)> {
    [4, 8, 12].into_iter().map(|k| (format!("pair_{k}"), pair_groupoid(k).unwrap())).collect()
}
