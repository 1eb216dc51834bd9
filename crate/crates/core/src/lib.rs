//! Continuous-time quantum walks on neighborhood coronas: exact spectra,
//! state-transfer certificates and pretty-good-transfer witnesses.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod corona_spectral;
pub mod error;
pub mod exact_arith;
pub mod graphs;
pub mod linalg;
pub mod spectral_core;
pub mod transfer_pgst;
pub mod transfer_pst;

pub use error::{Error, Result};
