//! Shared fixtures for the pipeline benchmarks.

use ngonal_core::Curve;

/// Reference curves spanning the pipeline's cost range: a line arrangement,
/// a conic-line-line arrangement, and a one-point pencil with a triple point.
pub fn fixture_curves() -> Vec<Curve> {
    ["(y-x)(y+x)(y-1)", "(y-x^2)(y-x-1)(y-1)", "(y+x^2)(y-x^2)(y)"]
        .iter()
        .map(|t| Curve::parse(t).expect("fixture parses"))
        .collect()
}

/// A trigonal curve of total degree 9 (degree-7 component and two lines).
pub fn degree9_curve() -> Curve {
    Curve::parse("(y-x^7+3x^4-2x+1)(y-2x-1)(y+x-2)").expect("fixture parses")
}
