//! Squeezed vacuum states `|z⟩ = S(z)|0⟩`, `z = r e^{iφ}`, relative to the
//! reference oscillator of frequency ω₀.
//!
//! The Fock expansion is
//! `c₂ₙ = √sech(r) · √(2n)!/n! · (−½ e^{iφ} tanh r)ⁿ`, `c₂ₙ₊₁ = 0`,
//! and the quadrature variance is
//! `½[e^{2r} sin²(λ − φ/2) + e^{−2r} cos²(λ − φ/2)]`.
//! Global phase is never tracked.

use std::f64::consts::TAU;

use crate::error::{invalid, Error, Result};
use crate::fock::FockVector;
use crate::C64;

/// `|Λ₊|` at or above this is rejected as a squeezing amplitude.
pub const MAX_SQUEEZE_AMPLITUDE: f64 = 1.0 - 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedState {
    r: f64,
    phi: f64,
    reference_omega: f64,
}

fn wrap_phase(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

impl SqueezedState {
    pub fn new(r: f64, phi: f64, reference_omega: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return invalid(format!(
                "squeezing parameter must be finite and >= 0, got {r}"
            ));
        }
        if !phi.is_finite() {
            return invalid("squeezing phase must be finite");
        }
        if !(reference_omega.is_finite() && reference_omega > 0.0) {
            return invalid(format!(
                "reference frequency must be positive and finite, got {reference_omega}"
            ));
        }
        Ok(Self {
            r,
            phi: if r == 0.0 { 0.0 } else { wrap_phase(phi) },
            reference_omega,
        })
    }

    pub fn vacuum(reference_omega: f64) -> Result<Self> {
        Self::new(0.0, 0.0, reference_omega)
    }

    /// Reads off `(r, φ)` from the state `Λ₃^{1/4} exp(Λ₊K₊)|0⟩`:
    /// `tanh r = |Λ₊|` and, since that expansion carries `(+½Λ₊)ⁿ` where the
    /// canonical one carries `(−½e^{iφ}tanh r)ⁿ`, `φ = arg Λ₊ + π`.
    pub fn from_lambda_plus(lambda_plus: C64, reference_omega: f64) -> Result<Self> {
        let amp = lambda_plus.norm();
        if amp.is_nan() || amp >= MAX_SQUEEZE_AMPLITUDE {
            return invalid(format!("|Λ₊| = {amp} is not a squeezing amplitude"));
        }
        if amp == 0.0 {
            return Self::vacuum(reference_omega);
        }
        Self::new(
            amp.atanh(),
            lambda_plus.arg() + std::f64::consts::PI,
            reference_omega,
        )
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Squeezing phase in `[0, 2π)`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn reference_omega(&self) -> f64 {
        self.reference_omega
    }

    pub fn is_vacuum(&self) -> bool {
        self.r == 0.0
    }

    /// `(ΔQ_λ)²`.
    pub fn variance(&self, lambda: f64) -> f64 {
        let angle = lambda - self.phi / 2.0;
        let (s, c) = angle.sin_cos();
        0.5 * ((2.0 * self.r).exp() * s * s + (-2.0 * self.r).exp() * c * c)
    }

    /// `e^{−2r}/2`, attained at `λ = φ/2`.
    pub fn min_variance(&self) -> f64 {
        0.5 * (-2.0 * self.r).exp()
    }

    /// `e^{2r}/2`, attained at `λ = φ/2 + π/2`.
    pub fn max_variance(&self) -> f64 {
        0.5 * (2.0 * self.r).exp()
    }

    /// Free evolution under the reference Hamiltonian: `z → z e^{−2iω₀t}`.
    pub fn evolve_free(&self, t: f64) -> Self {
        Self {
            phi: if self.r == 0.0 {
                0.0
            } else {
                wrap_phase(self.phi - 2.0 * self.reference_omega * t)
            },
            ..*self
        }
    }

    /// Amplitude on `|2n⟩` for `n = 0, 1, …`, generated with the recurrence
    /// `gₙ = gₙ₋₁ √((2n−1)/(2n))` for `gₙ = √(2n)!/(n! 2ⁿ)`.
    pub fn even_amplitudes(&self) -> impl Iterator<Item = C64> {
        let sech = 1.0 / self.r.cosh();
        let step = -C64::from_polar(self.r.tanh(), self.phi);
        let mut g = sech.sqrt();
        let mut pow = C64::from(1.0);
        (0usize..).map(move |n| {
            if n > 0 {
                let k = n as f64;
                g *= ((2.0 * k - 1.0) / (2.0 * k)).sqrt();
                pow *= step;
            }
            pow * g
        })
    }

    /// `P(2n) = sech r · (2n)!/((n!)² 4ⁿ) · tanh²ⁿ r`.
    pub fn even_probabilities(&self) -> impl Iterator<Item = f64> {
        even_probabilities(self.r.tanh())
    }

    /// Upper bound on `Σ_{2n > truncation} P(2n)`.
    pub fn tail_bound(&self, truncation: usize) -> f64 {
        if self.r == 0.0 {
            return 0.0;
        }
        let first_dropped = truncation / 2 + 1;
        let p = self.even_probabilities().nth(first_dropped).unwrap_or(0.0);
        // successive ratios are below tanh²r
        p * self.r.cosh().powi(2)
    }

    /// Amplitudes over `|0⟩ … |N⟩` without the tail check.
    pub fn fock_amplitudes(&self, truncation: usize) -> Vec<C64> {
        let mut out = vec![C64::from(0.0); truncation + 1];
        for (slot, c) in out.iter_mut().step_by(2).zip(self.even_amplitudes()) {
            *slot = c;
        }
        out
    }

    /// Fock-basis expansion truncated at an even `N`.
    pub fn to_fock(&self, truncation: usize, tail_tol: f64) -> Result<FockVector> {
        if truncation < 2 || !truncation.is_multiple_of(2) {
            return invalid(format!(
                "truncation must be even and >= 2, got {truncation}"
            ));
        }
        let tail_mass = self.tail_bound(truncation);
        if tail_mass >= tail_tol {
            return Err(Error::TruncationUnsafe {
                tail_mass,
                tail_tol,
                truncation,
            });
        }
        FockVector::from_amplitudes(self.fock_amplitudes(truncation))
    }
}

/// Squeezed-vacuum photon statistics `P(0), P(2), P(4), …` for
/// `tanh r = tanh_r`.
pub fn even_probabilities(tanh_r: f64) -> impl Iterator<Item = f64> {
    let t2 = tanh_r * tanh_r;
    let sech = (1.0 - t2).sqrt();
    let mut p = sech;
    (0usize..).map(move |n| {
        if n > 0 {
            let k = n as f64;
            p *= (2.0 * k - 1.0) / (2.0 * k) * t2;
        }
        p
    })
}
