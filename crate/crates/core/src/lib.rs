//! Projective Reed–Muller codes PRM_ν(m, q).
//!
//! Encoding by evaluation at the standard representatives of P^m(F_q),
//! chart-by-chart syndrome decoding with the Berlekamp–Massey–Sakata
//! algorithm and the finite-field DFT, a brute-force nearest-codeword oracle,
//! and analytic and simulated codeword error rates.

pub mod bms;
pub mod codes;
pub mod decoder;
pub mod error;
pub mod galois;
pub mod geometry;
pub mod linalg;
pub mod monomial;
pub mod simulate;
pub mod transform;
pub mod word;

pub use error::{Error, Result};
pub use galois::{Fe, Field};
