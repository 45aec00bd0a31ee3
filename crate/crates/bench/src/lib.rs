//! Fixtures shared by the benchmarks.

use codiff_core::{catalog, parse_rational_coderivation, Coderivation, GradedSpace, Rational};

pub fn entry(label: &str) -> Coderivation<Rational> {
    catalog::get_label(label).expect("catalog label").formula
}

/// The odd `H^2` representatives whose relation zero set is the pair of
/// coordinate planes `t1 = t2 = 0`, `t3 = t4 = 0`.
pub fn d13_basis() -> Vec<Coderivation<Rational>> {
    [
        "psi(1,1;3)",
        "psi(2,1;3)",
        "psi(2,3;1) - psi(3,2;1)",
        "psi(2,3;2) - psi(3,2;2) - psi(3,3;3)",
    ]
    .iter()
    .map(|s| parse_rational_coderivation(GradedSpace::standard(), s).expect("valid cochain"))
    .collect()
}
