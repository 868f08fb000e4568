//! Computational kernels for exponential-sum identities, Petersson series,
//! Bessel–Mellin transforms, and symplectic one-level-density main terms.
//!
//! The crate is organized around exact integer arithmetic ([`arith`]),
//! Dirichlet character groups ([`characters`]), Gauss/Ramanujan/Kloosterman
//! sums and their closed-form identities ([`expsums`]), numerical special
//! functions ([`special`]), truncated Petersson averages ([`petersson`]),
//! symplectic density arithmetic ([`density`]), the prime-sum main-term
//! machinery ([`qstar`]), and ingestion of externally produced eigenvalue
//! and zero data ([`ingest`]).
//!
//! Every closed form carries a brute-force or quadrature cross-check at desk
//! scale; brute-force evaluators are written independently of the closed
//! forms they verify.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std` feature
//! only switches the float backends of the numeric dependencies.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod characters;
pub mod density;
pub mod error;
pub mod expsums;
pub mod ingest;
pub mod petersson;
pub mod qstar;
pub mod quad;
pub mod special;

pub use error::{Error, Result};

/// Double-precision complex scalar used by gamma, Mellin, and sum evaluations.
pub type Complex64 = num_complex::Complex<f64>;
