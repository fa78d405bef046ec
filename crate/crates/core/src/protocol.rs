//! Closed-form dynamics of the two-jump protocol
//! `ω(t) = ω₀ + (ω₁ − ω₀)[Θ(t) − Θ(t − τ)]` starting from the vacuum.
//!
//! During `0 < t ≤ τ` the state is `exp(−iH₁t)|0⟩`, disentangled with
//! `λ₊ = λ₋ = −iη₀t`, `λ₃ = −2i(ω₀ + η₀)t`, `η₀ = (ω₁² − ω₀²)/(2ω₀)`.
//! For `t > τ` the reference Hamiltonian only rotates the squeezing phase,
//! so `r` is frozen at `r(τ)`.
//!
//! Everything is expressed through `κ = (ω₁² − ω₀²)/(2ω₀ω₁)`:
//! `sinh r(t) = |κ sin ω₁t|`, and the persistence probability after the
//! second jump is `Z = [1 + κ² sin²(ω₁τ)]^{−1/2} = sech r(τ)`.

use crate::bch::{self, AlgebraSign, LambdaSet};
use crate::error::{invalid, Result};
use crate::fock::{self, FockVector, Propagator, TruncationPolicy};
use crate::squeezed::SqueezedState;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpProtocol {
    omega0: f64,
    omega1: f64,
    tau: f64,
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        invalid(format!("{name} must be positive and finite, got {x}"))
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        invalid(format!("time must be finite and >= 0, got {t}"))
    }
}

impl JumpProtocol {
    pub fn new(omega0: f64, omega1: f64, tau: f64) -> Result<Self> {
        positive("omega0", omega0)?;
        positive("omega1", omega1)?;
        positive("tau", tau)?;
        Ok(Self {
            omega0,
            omega1,
            tau,
        })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `η₀ = (ω₁² − ω₀²)/(2ω₀)`; negative for a downward first jump.
    pub fn eta0(&self) -> f64 {
        (self.omega1 * self.omega1 - self.omega0 * self.omega0) / (2.0 * self.omega0)
    }

    /// `κ = (ω₁² − ω₀²)/(2ω₀ω₁)`.
    pub fn kappa(&self) -> f64 {
        (self.omega1 * self.omega1 - self.omega0 * self.omega0) / (2.0 * self.omega0 * self.omega1)
    }

    /// Instantaneous frequency; the jump instants belong to interval 1.
    pub fn frequency_at(&self, t: f64) -> f64 {
        if t > 0.0 && t <= self.tau {
            self.omega1
        } else {
            self.omega0
        }
    }

    pub fn interval_of(&self, t: f64) -> Interval {
        if t == 0.0 {
            Interval::Initial
        } else if t <= self.tau {
            Interval::One
        } else {
            Interval::Two
        }
    }

    /// `κ² sin²(ω₁ min(t, τ))`, the squared argument of `sinh r`.
    fn squeeze_measure(&self, t: f64) -> f64 {
        let s = self.kappa() * (self.omega1 * t.min(self.tau)).sin();
        s * s
    }
}

/// Which constant-frequency segment a time belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interval {
    /// `t = 0`, still the vacuum.
    Initial,
    /// `0 < t ≤ τ`, frequency ω₁.
    One,
    /// `t > τ`, frequency back at ω₀.
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolState {
    pub time: f64,
    pub squeezed: SqueezedState,
    pub interval: Interval,
}

/// Exponent coefficients of `exp(−iH₁t)` in the su(1,1) basis.
pub fn lambdas_interval1(p: &JumpProtocol, t: f64) -> Result<LambdaSet> {
    check_time(t)?;
    if t > p.tau {
        return invalid(format!(
            "t = {t} lies beyond the first interval (tau = {})",
            p.tau
        ));
    }
    let eta = p.eta0();
    let lp = C64::new(0.0, -eta * t);
    LambdaSet::new(
        lp,
        lp,
        C64::new(0.0, -2.0 * (p.omega0 + eta) * t),
        AlgebraSign::SuOneOne,
    )
}

/// `r(t) = arsinh|κ sin(ω₁t)|` for `t ≤ τ`, frozen at `r(τ)` afterwards.
///
/// Same value as `arcosh√(1 + κ² sin²ω₁t)` without its cancellation near 1.
pub fn squeezing_parameter(p: &JumpProtocol, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(p.squeeze_measure(t).sqrt().asinh())
}

/// Squeezed-state description of `|ψ(t)⟩`, global phase discarded.
pub fn state_at(p: &JumpProtocol, t: f64) -> Result<ProtocolState> {
    check_time(t)?;
    let interval = p.interval_of(t);
    let squeezed = match interval {
        Interval::Initial => SqueezedState::vacuum(p.omega0)?,
        Interval::One => interval_one_state(p, t)?,
        Interval::Two => interval_one_state(p, p.tau)?.evolve_free(t - p.tau),
    };
    Ok(ProtocolState {
        time: t,
        squeezed,
        interval,
    })
}

fn interval_one_state(p: &JumpProtocol, t: f64) -> Result<SqueezedState> {
    let fe = bch::factorize(&lambdas_interval1(p, t)?)?;
    SqueezedState::from_lambda_plus(fe.plus, p.omega0)
}

/// `(ΔQ_λ)²` at time `t`.
pub fn variance_at(p: &JumpProtocol, t: f64, lambda: f64) -> Result<f64> {
    Ok(state_at(p, t)?.squeezed.variance(lambda))
}

/// Persistence probability `|⟨0|ψ(t)⟩|²` for any `t > τ`.
pub fn persistence(p: &JumpProtocol) -> f64 {
    (1.0 + p.squeeze_measure(p.tau)).sqrt().recip()
}

/// `P_E = 1 − Z`, evaluated as `x / (√(1+x)(1 + √(1+x)))` with
/// `x = κ² sin²(ω₁τ)` to keep small excitations accurate.
pub fn excitation_probability(p: &JumpProtocol) -> f64 {
    let x = p.squeeze_measure(p.tau);
    let root = (1.0 + x).sqrt();
    x / (root * (1.0 + root))
}

/// `P(0), P(2), …, P(2(count−1))` after the second jump, without any
/// completeness check.
pub fn even_photon_probabilities(p: &JumpProtocol, count: usize) -> Vec<f64> {
    let x = p.squeeze_measure(p.tau);
    let ratio = x / (1.0 + x);
    let mut prob = persistence(p);
    (0..count)
        .map(|n| {
            if n > 0 {
                let k = n as f64;
                prob *= (2.0 * k - 1.0) / (2.0 * k) * ratio;
            }
            prob
        })
        .collect()
}

/// Photon-number distribution after the second jump, indexed by `n` in
/// `0..=n_max`; odd entries are zero.
///
/// Fails with `TruncationUnsafe` when the probability beyond `n_max` may
/// reach `tail_tol`.
pub fn photon_distribution(p: &JumpProtocol, n_max: usize, tail_tol: f64) -> Result<Vec<f64>> {
    if !n_max.is_multiple_of(2) {
        return invalid(format!("n_max must be even, got {n_max}"));
    }
    let x = p.squeeze_measure(p.tau);
    let even = even_photon_probabilities(p, n_max / 2 + 2);
    // successive ratios are below x/(1+x), so the dropped terms sum to at
    // most (1+x) times the first of them
    let tail_mass = even[n_max / 2 + 1] * (1.0 + x);
    if tail_mass >= tail_tol {
        return Err(crate::Error::TruncationUnsafe {
            tail_mass,
            tail_tol,
            truncation: n_max,
        });
    }
    let mut out = vec![0.0; n_max + 1];
    for (slot, prob) in out.iter_mut().step_by(2).zip(even) {
        *slot = prob;
    }
    Ok(out)
}

/// Brute-force counterpart of [`state_at`]: the vacuum propagated through the
/// truncated Fock Hamiltonians of both intervals.
#[derive(Debug, Clone)]
pub struct FockOracle {
    protocol: JumpProtocol,
    truncation: usize,
    first: Propagator,
    second: Propagator,
}

impl FockOracle {
    pub fn new(p: &JumpProtocol, truncation: usize, policy: TruncationPolicy) -> Result<Self> {
        let h1 = fock::hamiltonian(p.omega1, p.omega0, truncation)?;
        let h0 = fock::hamiltonian(p.omega0, p.omega0, truncation)?;
        Ok(Self {
            protocol: *p,
            truncation,
            first: Propagator::new(&h1, policy)?,
            second: Propagator::new(&h0, policy)?,
        })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn state_at(&self, t: f64) -> Result<FockVector> {
        check_time(t)?;
        let vacuum = FockVector::vacuum(self.truncation)?;
        let tau = self.protocol.tau;
        if t <= tau {
            self.first.evolve(&vacuum, t)
        } else {
            let mid = self.first.evolve(&vacuum, tau)?;
            self.second.evolve(&mid, t - tau)
        }
    }
}
