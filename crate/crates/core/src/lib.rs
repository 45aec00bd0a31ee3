//! Exact calculus of coderivations on the tensor coalgebra of a small
//! Z2-graded space: brackets, cohomology, automorphism actions, extension
//! data, and formal deformations of codifferentials.

pub mod catalog;
pub mod coder;
pub mod cohomology;
pub mod deform;
pub mod error;
pub mod extension;
pub mod group;
mod json;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod space;

pub use coder::{
    basis_terms, coboundary, is_codifferential, parse_coderivation, parse_rational_coderivation,
    term_parity, Coderivation, CodifferentialCheck, TensorSum, Term,
};
pub use cohomology::{
    coboundary_matrix, cohomology_basis, cohomology_dims, cohomology_with_basis, solve_coboundary,
    CoboundaryMatrix, CoboundarySolution, CoboundarySolver, CohomologyReport, ParityPair,
};
pub use deform::{
    extend_to_order, extend_to_stable, infinitesimal_deformation,
    infinitesimal_deformation_with_basis, mc_defect, obstruction_relations, verify_jump,
    DeformationState, JumpVerdict, LinearComponent, RelationIdeal,
};
pub use error::{Error, Result};
pub use extension::{
    check_extension, enumerate_simple01_solutions, restricted_equivalence, ExtensionDatum,
    ExtensionReport, LRMatrices, Simple01Solution,
};
pub use group::{
    exp_beta, find_witness, opposite, pullback, verify_equivalence, BetaShift, LinearAutomorphism,
    SearchOptions, Verdict, Witness,
};
pub use poly::{Monomial, Polynomial};
pub use scalar::{Coeff, Rational};
pub use space::{GradedSpace, Parity, Word};
