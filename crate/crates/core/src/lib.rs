//! Exact squeezing dynamics of a quantum harmonic oscillator whose frequency
//! jumps ω₀ → ω₁ at t = 0 and back to ω₀ at t = τ.
//!
//! The closed-form engine ([`protocol`]) is built on the su(1,1)
//! disentangling formula ([`bch`]) and the canonical squeezed-state
//! representation ([`squeezed`]). The [`fock`] module is an independent
//! truncated number-basis propagator used as a brute-force oracle for every
//! analytic result. Units: ħ = 1, unit mass.

pub mod bch;
pub mod cli;
pub mod error;
pub mod fock;
pub mod protocol;
pub mod squeezed;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
