//! The bundled example algebras.

use std::sync::Arc;

use crate::algebra::{build_algebra, AlgebraPresentation, GradedAlgebra};
use crate::cli::parse_presentation;

pub const NAMES: [&str; 6] = ["k1", "a3_line", "a4_branch", "c4_flow", "sl2_block", "loop1"];

/// Names of the bundled algebras that are quasi-hereditary.
pub const QH_NAMES: [&str; 5] = ["k1", "a3_line", "a4_branch", "c4_flow", "sl2_block"];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "k1" => include_str!("../data/k1.alg"),
        "a3_line" => include_str!("../data/a3_line.alg"),
        "a4_branch" => include_str!("../data/a4_branch.alg"),
        "c4_flow" => include_str!("../data/c4_flow.alg"),
        "sl2_block" => include_str!("../data/sl2_block.alg"),
        "loop1" => include_str!("../data/loop1.alg"),
        _ => return None,
    })
}

/// Presentation of a bundled algebra; panics on an unknown name.
pub fn presentation(name: &str) -> AlgebraPresentation {
    let src = source(name).unwrap_or_else(|| panic!("no bundled algebra {name}"));
    parse_presentation(src).expect("bundled files parse")
}

pub fn load(name: &str) -> Arc<GradedAlgebra> {
    build_algebra(&presentation(name)).expect("bundled algebras are finite-dimensional")
}
