//! Disentangling of `exp(λ₊K₊ + λ₋K₋ + λ₃K₃)` into the normal-ordered
//! product `exp(Λ₊K₊) exp(ln(Λ₃) K₃) exp(Λ₋K₋)`.
//!
//! The algebra is `[K₋, K₊] = 2εK₃`, `[K₃, K±] = ±K±`: ε = +1 is su(1,1),
//! ε = −1 is su(2). With `ν² = λ₃²/4 − ελ₊λ₋`,
//!
//! ```text
//! Λ₃ = (cosh ν − (λ₃/2ν) sinh ν)⁻²
//! Λ± = 2λ± sinh ν / (2ν cosh ν − λ₃ sinh ν)
//! ```
//!
//! Both are even in ν once written through `sinh(ν)/ν`, which is how they are
//! evaluated here, so the branch of the square root never matters.

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::fock;
use crate::C64;

/// Default lower bound on `|cosh ν − (λ₃/2) sinh(ν)/ν|`.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-12;

/// Below this `|ν|` the `sinh(ν)/ν` kernel switches to its Taylor series.
const SINHC_SERIES_RADIUS: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraSign {
    /// ε = +1
    SuOneOne,
    /// ε = −1
    SuTwo,
}

impl AlgebraSign {
    pub fn epsilon(self) -> f64 {
        match self {
            AlgebraSign::SuOneOne => 1.0,
            AlgebraSign::SuTwo => -1.0,
        }
    }
}

impl TryFrom<i32> for AlgebraSign {
    type Error = Error;

    fn try_from(value: i32) -> Result<Self> {
        match value {
            1 => Ok(AlgebraSign::SuOneOne),
            -1 => Ok(AlgebraSign::SuTwo),
            other => invalid(format!("algebra sign must be +1 or -1, got {other}")),
        }
    }
}

/// Exponent coefficients of one evolution segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSet {
    pub plus: C64,
    pub minus: C64,
    pub three: C64,
    pub sign: AlgebraSign,
}

fn finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl LambdaSet {
    pub fn new(plus: C64, minus: C64, three: C64, sign: AlgebraSign) -> Result<Self> {
        if !(finite(plus) && finite(minus) && finite(three)) {
            return invalid("lambda coefficients must be finite");
        }
        Ok(Self {
            plus,
            minus,
            three,
            sign,
        })
    }

    /// `λ₃²/4 − ελ₊λ₋`
    pub fn nu_squared(&self) -> C64 {
        self.three * self.three / 4.0 - self.plus * self.minus * self.sign.epsilon()
    }
}

/// Principal square root of `λ₃²/4 − ελ₊λ₋`. Zero is a legitimate value.
pub fn nu_of(lambdas: &LambdaSet) -> C64 {
    lambdas.nu_squared().sqrt()
}

/// `sinh(ν)/ν`, even in ν and finite at the origin.
pub fn sinhc(nu: C64) -> C64 {
    if nu.norm() < SINHC_SERIES_RADIUS {
        let x = nu * nu;
        // 1 + x/3! + x²/5! + x³/7! + x⁴/9!
        C64::from(1.0)
            + x * (C64::from(1.0 / 6.0)
                + x * (C64::from(1.0 / 120.0)
                    + x * (C64::from(1.0 / 5040.0) + x * (1.0 / 362_880.0))))
    } else {
        nu.sinh() / nu
    }
}

/// Coefficients of the normal-ordered product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizedEvolution {
    pub plus: C64,
    pub three: C64,
    pub minus: C64,
    /// The logarithm of `three` actually multiplying `K₃`. Its imaginary part
    /// follows the continuous path from the identity rather than the
    /// principal branch, so the operator identity holds in every
    /// representation, not just up to a global phase.
    pub log_three: C64,
}

impl FactorizedEvolution {
    /// Principal-branch `ln Λ₃`; agrees with `log_three` modulo `2πi`.
    pub fn principal_log_three(&self) -> C64 {
        self.three.ln()
    }
}

/// Normalized denominator `cosh(νθ) − (λ₃θ/2) sinh(νθ)/(νθ)`.
fn scaled_denominator(nu: C64, three: C64, theta: f64) -> C64 {
    let x = nu * theta;
    x.cosh() - three * theta / 2.0 * sinhc(x)
}

/// `ln Λ₃ = −2 ln D(1)` with the argument of `D(θ)` unwrapped from θ = 0.
fn continuous_log_three(nu: C64, three: C64) -> C64 {
    let end = scaled_denominator(nu, three, 1.0);
    let steps = 64 + (16.0 * (nu.norm() + three.norm())).ceil() as usize;
    let mut prev = C64::from(1.0);
    let mut arg = 0.0;
    for k in 1..=steps {
        let d = if k == steps {
            end
        } else {
            scaled_denominator(nu, three, k as f64 / steps as f64)
        };
        arg += (d / prev).arg();
        prev = d;
    }
    C64::new(-2.0 * end.norm().ln(), -2.0 * arg)
}

/// Disentangles with the default degeneracy tolerance.
pub fn factorize(lambdas: &LambdaSet) -> Result<FactorizedEvolution> {
    factorize_with_tol(lambdas, DEFAULT_DEGENERACY_TOL)
}

pub fn factorize_with_tol(lambdas: &LambdaSet, tol: f64) -> Result<FactorizedEvolution> {
    factorize_on_branch(lambdas, nu_of(lambdas), tol)
}

/// Disentangles using the supplied square root `nu` of `ν²`. Either root
/// gives the same result.
pub fn factorize_on_branch(lambdas: &LambdaSet, nu: C64, tol: f64) -> Result<FactorizedEvolution> {
    let s = sinhc(nu);
    let d = nu.cosh() - lambdas.three / 2.0 * s;
    if d.norm() < tol || !finite(d) {
        return Err(Error::DegenerateFactorization {
            magnitude: d.norm(),
            tolerance: tol,
        });
    }
    let three = (d * d).inv();
    Ok(FactorizedEvolution {
        plus: lambdas.plus * s / d,
        three,
        minus: lambdas.minus * s / d,
        log_three: continuous_log_three(nu, lambdas.three),
    })
}

type Generators = (DMatrix<C64>, DMatrix<C64>, DMatrix<C64>, usize);

/// Matrix representation used to check the factorization identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Representation {
    /// Truncated oscillator realization `K₊ = a†²/2`, `K₋ = a²/2`,
    /// `K₃ = (a†a + a a†)/4` (ε = +1). Only the upper-left
    /// `truncation + 1 − guard_band` block is compared.
    Fock {
        truncation: usize,
        guard_band: usize,
    },
    /// Faithful two-dimensional non-unitary su(1,1) representation:
    /// `K₃ = σz/2`, `K₊ = σ₊`, `K₋ = −σ₋`.
    TwoByTwo,
    /// Spin-½ su(2): `K₃ = σz/2`, `K₊ = σ₊`, `K₋ = σ₋`.
    SpinHalf,
}

impl Representation {
    pub fn sign(&self) -> AlgebraSign {
        match self {
            Representation::Fock { .. } | Representation::TwoByTwo => AlgebraSign::SuOneOne,
            Representation::SpinHalf => AlgebraSign::SuTwo,
        }
    }

    /// `(K₊, K₋, K₃)` and the size of the block to compare.
    fn generators(&self) -> Result<Generators> {
        let spin = |minus_sign: f64| {
            let one = C64::from(1.0);
            let zero = C64::from(0.0);
            let kp = DMatrix::from_row_slice(2, 2, &[zero, one, zero, zero]);
            let km = DMatrix::from_row_slice(2, 2, &[zero, zero, one * minus_sign, zero]);
            let k3 = DMatrix::from_row_slice(2, 2, &[one * 0.5, zero, zero, one * -0.5]);
            (kp, km, k3, 2)
        };
        match *self {
            Representation::Fock {
                truncation,
                guard_band,
            } => {
                if guard_band > truncation {
                    return invalid("guard band exceeds the truncation");
                }
                let (kp, km, kc) = fock::su11_generators(truncation)?;
                Ok((
                    kp.into_entries(),
                    km.into_entries(),
                    kc.into_entries(),
                    truncation + 1 - guard_band,
                ))
            }
            Representation::TwoByTwo => Ok(spin(-1.0)),
            Representation::SpinHalf => Ok(spin(1.0)),
        }
    }
}

/// Largest entrywise deviation between the dense exponential of the combined
/// exponent and the product of the three factored exponentials.
pub fn verify_in(
    lambdas: &LambdaSet,
    fe: &FactorizedEvolution,
    rep: &Representation,
) -> Result<f64> {
    if rep.sign() != lambdas.sign {
        return invalid("representation does not match the algebra sign");
    }
    let (kp, km, k3, block) = rep.generators()?;
    let combined = &kp * lambdas.plus + &km * lambdas.minus + &k3 * lambdas.three;
    let direct = combined.exp();
    let product = (&kp * fe.plus).exp() * (&k3 * fe.log_three).exp() * (&km * fe.minus).exp();
    let mut worst: f64 = 0.0;
    for i in 0..block {
        for j in 0..block {
            worst = worst.max((direct[(i, j)] - product[(i, j)]).norm());
        }
    }
    Ok(worst)
}

/// Levels compared by [`verify_factorization`] in the Fock realization.
///
/// The dense exponential of a truncated squeezing generator is polluted far
/// inside the basis: `exp(A)|n⟩` spreads over roughly `n e^{2r}` levels, so
/// only the first few columns converge. The normal-ordered product is exact
/// on any leading block because its factors are triangular.
pub fn fock_compare_levels(rep_dim: usize) -> usize {
    (rep_dim / 16).max(4).min(rep_dim + 1)
}

/// [`verify_in`] with the default representation for the algebra: the
/// truncated Fock realization at `rep_dim`, compared on its leading
/// [`fock_compare_levels`] levels, for su(1,1); spin-½ for su(2).
///
/// # Panics
/// If `rep_dim < 2`.
pub fn verify_factorization(lambdas: &LambdaSet, fe: &FactorizedEvolution, rep_dim: usize) -> f64 {
    assert!(rep_dim >= 2, "representation dimension must be at least 2");
    let rep = match lambdas.sign {
        AlgebraSign::SuOneOne => Representation::Fock {
            truncation: rep_dim,
            guard_band: rep_dim + 1 - fock_compare_levels(rep_dim),
        },
        AlgebraSign::SuTwo => Representation::SpinHalf,
    };
    verify_in(lambdas, fe, &rep).expect("representation matches the algebra sign")
}
