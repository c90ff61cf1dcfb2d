//! Complex-time conformal maps for the hydrogen atom and the isotropic
//! harmonic oscillator, with machine checks for every identity the
//! construction rests on: eigenfunction residuals, the forward/inverse
//! map, z-space derivative operators, the operator identity that trades
//! the central potential for a constant, Cauchy-Riemann holomorphy of
//! the separable time factor, ladder operators, and the general λ
//! relation linking potential and ground-state energy.
//!
//! The library is organized around evaluable eigenstates
//! ([`eigenstates::Eigenstate`]) returning analytic derivative jets,
//! pure-function operators over them ([`operators`]), the coordinate map
//! ([`conformal`]), and a registry of named verification checks
//! ([`verify`]) driven by the CLI ([`cli`]).

pub mod cli;
pub mod conformal;
pub mod eigenstates;
pub mod error;
pub mod operators;
pub mod quad;
pub mod specfun;
pub mod units;
pub mod verify;

pub use error::{Error, Result};
