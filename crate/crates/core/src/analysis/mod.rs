//! Checks of closed-form claims against computed homology, and builders for
//! explicit model complexes.

pub mod checks;
pub mod fixtures;
pub mod properties;
pub mod report;
pub mod suites;
pub mod summands;

pub use checks::{
    alternating_exponents, decompose_homology, knight_move_check, omega4_check,
    omega6_identity_check, omega6_predicted, torsion_only_two, KnightWitness, Omega4Outcome,
};
pub use fixtures::{build_fixture, fixture_reports, BVariant, Fixture};
pub use properties::{
    conjugation_invariance, d_squared_everywhere, euler_matches_kauffman, f2_splitting,
    mirror_duality, property_reports, smith_unimodular,
};
pub use report::{Mismatch, Report};
pub use suites::{
    knight_suite, omega4_suite, omega5_suite, omega6_suite, oracle_check, oracle_corpus,
    oracle_suite, torsion_suite, torus_suite, Grid,
};
pub use summands::{
    predicted_summands, verify_spec, verify_summands, AnalysisError, Summand, SummandKind,
    SummandList,
};
