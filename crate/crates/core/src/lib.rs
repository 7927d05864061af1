//! Exact symbolic engine for Filippov n-algebroids on trivial bundles over
//! R^m with polynomial coefficients.
//!
//! The crate is layered bottom-up:
//!
//! - [`scalar`]: the coefficient ring — exact-rational polynomials in base
//!   coordinates, fiber coordinates, and jet symbols standing for generic
//!   smooth functions.  Identities in smooth functions become decidable
//!   canonicalize-to-zero tests here.
//! - [`parse`]: the expression grammar used by scenario files.
//! - [`exterior`]: sections of a rank-r bundle, their wedge powers, vector
//!   fields, multivector fields and differential forms, with wedge, interior
//!   product, exterior derivative and the Lie bracket.
//! - [`algebroid`]: anchored bundles, connections, the induced n-bracket,
//!   curvature, the axiom checkers, the rank diagnostic and the torsion-free
//!   realization.
//! - [`pairs`]: covariant differential operators paired with a coform, the
//!   eigen condition, and the derived anchored bundle and connection.
//! - [`nambu`]: the induced multivector on the dual bundle and its
//!   Nambu-Poisson verification.

pub mod algebroid;
pub mod exterior;
pub mod nambu;
pub mod pairs;
pub mod parse;
pub mod report;
pub mod scalar;

pub use algebroid::{AlgebroidError, AnchoredBundle, BracketTable, Connection};
pub use nambu::{dualize, linear_function, np_bracket, LinearityReport, NambuError, NambuStructure};
pub use pairs::{build_pair_structure, eigen_check, Cdo, CoForm, PairError};
pub use exterior::{
    wedge_sections, DifferentialForm, ExteriorError, MultiSection, MultiVectorField, Section,
    SpaceDims, VectorField,
};
pub use parse::{parse_rational, parse_scalar, ParseContext, ParseError};
pub use report::{CheckReport, CheckStatus, Witness};
pub use scalar::{Axis, Rational, Scalar, ScalarError, Variable};
