//! Fixtures shared by the benchmarks.

use projsys::constructions;
use projsys::ProjectiveSystem;

/// Systems whose parameter evaluation dominates the acceptance suite, from
/// a 9-point plane set up to a 65-point ovoid.
pub fn param_fixtures() -> Vec<(&'static str, ProjectiveSystem)> {
    vec![
        ("plane_minus_line_q3", constructions::plane_minus_line(3).unwrap()),
        ("denniston_q8_d4", constructions::denniston(8, 4).unwrap()),
        ("elliptic_quadric_q4", constructions::elliptic_quadric(4).unwrap()),
        ("elliptic_quadric_q8", constructions::elliptic_quadric(8).unwrap()),
    ]
}

/// (k, q, s) instances small enough to solve exhaustively per iteration.
pub const SEARCH_FIXTURES: &[(usize, u64, u64)] = &[(3, 4, 0), (4, 2, 1), (5, 2, 1)];
