//! Smooth hyperelliptic curves over finite fields with no rational points.
//!
//! Finite fields with polynomial-basis elements, polynomials over them,
//! hyperelliptic models with exact point counts, the explicit constructions
//! of pointless curves for every genus above a linear bound, and an
//! exhaustive census over small fields.

pub mod census;
pub mod constructions;
pub mod curve;
pub mod error;
pub mod field;
pub mod json;
pub mod numtheory;
pub mod poly;

pub use census::{
    count_pointless, enumerate_models, min_pointless_genus, CensusConfig, CensusReport,
};
pub use constructions::{
    artin_schreier_pointless, construct_maximal_odd, construct_pointless, genus_bound, Branch,
    Construction, ConstructionCertificate,
};
pub use curve::{fermat_pointless, hasse_weil_min_genus, HyperellipticModel, PlaneCurve};
pub use error::{Error, Result};
pub use field::{field_of_order, make_field, FieldElement, FiniteField};
pub use poly::Polynomial;
