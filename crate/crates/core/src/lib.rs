//! Exact, division-free certificates for the nonvanishing Combinatorial
//! Nullstellensatz over integral domains.
//!
//! The pieces, bottom up:
//!
//! - [`ring`]: the [`Domain`] contract with ℤ ([`Int`]) and ℤ[t] ([`IntPoly`]).
//! - [`linalg`]: square matrices, cofactors and two determinant algorithms.
//! - [`multipoly`]: sparse multivariate polynomials.
//! - [`nullstellensatz`]: cofactor families, the functional Φ, certificates
//!   and witness search.
//! - [`record`]: the structured text form of families and certificates.

pub mod error;
pub mod linalg;
pub mod multipoly;
pub mod nullstellensatz;
pub mod parse;
pub mod record;
pub mod ring;

pub use error::{Error, Result};
pub use linalg::{
    cramer_numerators, determinant_bareiss, determinant_cofactor, vandermonde_det_product,
    vandermonde_matrix, ColumnVector, SquareMatrix,
};
pub use multipoly::{ExponentVector, Polynomial, Term};
pub use nullstellensatz::{
    certify_nonvanishing, find_witness, lambda_family, phi_fast, phi_grid, phi_term_product,
    verify_lambda_family, Certificate, Certifier, EvaluationSet, GridSpec, LambdaFamily,
    LambdaReport, PowerSumCheck, Provenance, Witness,
};
#[cfg(feature = "parallel")]
pub use nullstellensatz::{find_witness_parallel, phi_grid_parallel};
pub use parse::ParseError;
pub use record::{Record, Value};
pub use ring::{Domain, ExactDiv, Int, IntPoly};
