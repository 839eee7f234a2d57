//! Dimensions of affine Deligne-Lusztig varieties for `Res_{k'/k} GL_h`.
//!
//! The superbasic case is reduced to counting `V`-pairs of extended EL-charts,
//! which this crate enumerates exhaustively and compares with the closed
//! formula `<rho, mu - nu> - defect/2`. General classes reduce to superbasic
//! blocks of a Levi subgroup.

pub mod chart;
pub mod components;
pub mod coweight;
pub mod deformation;
pub mod enumerate;
pub mod error;
pub mod extended;
pub mod grid;
pub mod levi;
pub mod polygon;

pub use chart::{ELChart, TypeVector};
pub use components::{
    component_count, component_lemma_checks, conjecture_report, psi_chain, s1_s2_decomposition,
    tilde_mu, ComponentLemmaReport, ConjectureReport, PsiChain,
};
pub use coweight::{
    dominance_leq, g_dominance_leq, is_minuscule, kappa_match, newton_point, parse_rational,
    weyl_orbit, GCocharacter, GaloisIndex, IndexedInt, Rational, RationalCocharacter,
    RelCocharacter, SuperbasicDatum,
};
pub use deformation::{DeformationFrame, StepRecord};
pub use enumerate::{
    candidate_types, dimension, enumerate_charts, summarize, top_charts, EnumerationResult,
    EnumerationSummary,
};
pub use error::{Error, Result};
pub use extended::{AdaptedFamily, Axiom, ExtendedELChart, Violation};
pub use levi::{
    general_dim, mazur_nonempty, newton_levi, recursion_check, GeneralClassDatum, LeviPartition,
    RecursionReport,
};
pub use polygon::{
    bracket, dim_formula, half_defect, lattice_points, lattice_points_between, length_to_dom,
    pairing, pairing_g, rho_pairing, transfer_length, two_element_length, Polygon,
};
