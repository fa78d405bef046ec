//! Truncated number-basis linear algebra.
//!
//! Operators are dense `(N+1) × (N+1)` complex matrices over the Fock states
//! `|0⟩ … |N⟩` of the reference oscillator with frequency ω₀. States are
//! propagated through a constant Hamiltonian by Hermitian eigendecomposition,
//! which keeps evolution unitary up to roundoff. Nothing here uses the
//! closed-form squeezing results, so it serves as the oracle for them.

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::C64;

/// Default highest retained number state.
pub const DEFAULT_TRUNCATION: usize = 128;

/// Environment variable overriding [`DEFAULT_TRUNCATION`] in the CLI.
pub const TRUNCATION_ENV: &str = "SQUEEZE_JUMP_FOCK_N";

/// Controls when a truncated state is considered contaminated by the edge of
/// the basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Number of top levels whose occupation is monitored.
    pub guard_band: usize,
    /// Largest admissible probability mass inside the guard band.
    pub tail_tol: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            guard_band: 16,
            tail_tol: 1e-8,
        }
    }
}

impl TruncationPolicy {
    /// Guard band clamped so at least the vacuum stays outside it.
    pub fn guard_for(&self, truncation: usize) -> usize {
        self.guard_band.min(truncation)
    }

    /// Mass in the top `guard_band` levels of `state`.
    pub fn tail_mass(&self, state: &FockVector) -> f64 {
        let n = state.truncation();
        let start = n + 1 - self.guard_for(n);
        state
            .amplitudes
            .iter()
            .skip(start)
            .map(|c| c.norm_sqr())
            .sum()
    }

    pub fn check(&self, state: &FockVector) -> Result<()> {
        let tail_mass = self.tail_mass(state);
        if tail_mass > self.tail_tol || !tail_mass.is_finite() {
            return Err(Error::TruncationUnsafe {
                tail_mass,
                tail_tol: self.tail_tol,
                truncation: state.truncation(),
            });
        }
        Ok(())
    }
}

/// Complex amplitudes over `|0⟩ … |N⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: DVector<C64>,
}

impl FockVector {
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() < 3 {
            return invalid("a Fock vector needs at least the levels 0..=2");
        }
        if amplitudes
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return invalid("Fock amplitudes must be finite");
        }
        Ok(Self {
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// The number state `|n⟩` in a basis truncated at `truncation`.
    pub fn number_state(n: usize, truncation: usize) -> Result<Self> {
        if truncation < 2 {
            return invalid(format!("truncation must be at least 2, got {truncation}"));
        }
        if n > truncation {
            return invalid(format!("level {n} lies above the truncation {truncation}"));
        }
        let mut amplitudes = DVector::zeros(truncation + 1);
        amplitudes[n] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn vacuum(truncation: usize) -> Result<Self> {
        Self::number_state(0, truncation)
    }

    /// Highest retained level `N`.
    pub fn truncation(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amplitudes.as_slice()
    }

    pub fn amplitude(&self, n: usize) -> C64 {
        self.amplitudes.get(n).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`, zero-padding the shorter vector.
    pub fn inner(&self, other: &FockVector) -> C64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`; insensitive to global phase.
    pub fn fidelity(&self, other: &FockVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Probability mass on odd number states.
    pub fn odd_mass(&self) -> f64 {
        self.amplitudes
            .iter()
            .skip(1)
            .step_by(2)
            .map(|c| c.norm_sqr())
            .sum()
    }

    pub(crate) fn as_vector(&self) -> &DVector<C64> {
        &self.amplitudes
    }
}

/// Dense complex operator on the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<C64>,
    hermitian: bool,
}

impl OperatorMatrix {
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if !entries.is_square() {
            return invalid("operator matrices must be square");
        }
        Ok(Self {
            entries,
            hermitian: false,
        })
    }

    /// Marks the matrix Hermitian after checking `max|M − M†| < 1e-14`.
    pub fn new_hermitian(entries: DMatrix<C64>) -> Result<Self> {
        let op = Self::new(entries)?;
        let asym = op.hermiticity_defect();
        if asym >= 1e-14 {
            return invalid(format!("matrix is not Hermitian (defect {asym:e})"));
        }
        Ok(Self {
            hermitian: true,
            ..op
        })
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<C64> {
        self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn truncation(&self) -> usize {
        self.dim() - 1
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (&self.entries - self.entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
            hermitian: self.hermitian,
        }
    }

    pub fn apply(&self, state: &FockVector) -> Result<FockVector> {
        if state.amplitudes.len() != self.dim() {
            return invalid(format!(
                "state has {} levels, operator acts on {}",
                state.amplitudes.len(),
                self.dim()
            ));
        }
        Ok(FockVector {
            amplitudes: &self.entries * &state.amplitudes,
        })
    }
}

fn check_truncation(n: usize) -> Result<()> {
    if n < 2 {
        return invalid(format!("truncation must be at least 2, got {n}"));
    }
    Ok(())
}

fn real_matrix(dim: usize, f: impl Fn(usize, usize) -> f64) -> DMatrix<C64> {
    DMatrix::from_fn(dim, dim, |i, j| C64::new(f(i, j), 0.0))
}

/// Annihilation and creation operators: `a[n−1, n] = √n`.
pub fn ladder_ops(truncation: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    check_truncation(truncation)?;
    let a = real_matrix(truncation + 1, |i, j| {
        if j == i + 1 {
            (j as f64).sqrt()
        } else {
            0.0
        }
    });
    let a = OperatorMatrix::new(a)?;
    let a_dagger = a.adjoint();
    Ok((a, a_dagger))
}

/// `a†a`, built directly as `diag(0, 1, …, N)`.
pub fn number_op(truncation: usize) -> Result<OperatorMatrix> {
    check_truncation(truncation)?;
    OperatorMatrix::new_hermitian(real_matrix(truncation + 1, |i, j| {
        if i == j {
            i as f64
        } else {
            0.0
        }
    }))
}

/// The su(1,1) generators `K₊ = a†²/2`, `K₋ = a²/2` and
/// `K_c = (a†a + a a†)/4`, returned in that order.
///
/// `K_c` is assembled from the exact diagonal `(n + ½)/2` rather than from
/// products of truncated ladder matrices, whose top entry would be wrong.
pub fn su11_generators(
    truncation: usize,
) -> Result<(OperatorMatrix, OperatorMatrix, OperatorMatrix)> {
    check_truncation(truncation)?;
    let dim = truncation + 1;
    let k_minus = real_matrix(dim, |i, j| {
        if j == i + 2 {
            0.5 * ((j * (j - 1)) as f64).sqrt()
        } else {
            0.0
        }
    });
    let k_minus = OperatorMatrix::new(k_minus)?;
    let k_plus = k_minus.adjoint();
    let k_c = OperatorMatrix::new_hermitian(real_matrix(dim, |i, j| {
        if i == j {
            0.5 * (i as f64 + 0.5)
        } else {
            0.0
        }
    }))?;
    Ok((k_plus, k_minus, k_c))
}

/// Quadrature `Q_λ = (a† e^{iλ} + a e^{−iλ})/√2`.
pub fn quadrature(truncation: usize, lambda: f64) -> Result<OperatorMatrix> {
    let (a, a_dagger) = ladder_ops(truncation)?;
    let up = C64::from_polar(std::f64::consts::FRAC_1_SQRT_2, lambda);
    let entries = a_dagger.entries * up + a.entries * up.conj();
    OperatorMatrix::new_hermitian(entries)
}

/// Oscillator Hamiltonian `p²/2 + ω² q²/2` expressed with the ladder
/// operators of the reference frequency `omega0`:
///
/// `H = ½[(a†² + a²) η + (a†a + a a†)(ω₀ + η)]`, `η = (ω² − ω₀²)/(2ω₀)`.
pub fn hamiltonian(omega: f64, omega0: f64, truncation: usize) -> Result<OperatorMatrix> {
    if !(omega.is_finite() && omega > 0.0) {
        return invalid(format!(
            "frequency must be positive and finite, got {omega}"
        ));
    }
    if !(omega0.is_finite() && omega0 > 0.0) {
        return invalid(format!(
            "reference frequency must be positive and finite, got {omega0}"
        ));
    }
    let (k_plus, k_minus, k_c) = su11_generators(truncation)?;
    let eta = (omega * omega - omega0 * omega0) / (2.0 * omega0);
    // a†² + a² = 2(K₊ + K₋), a†a + a a† = 4 K_c
    let entries = (k_plus.entries + k_minus.entries) * C64::from(eta)
        + k_c.entries * C64::from(2.0 * (omega0 + eta));
    OperatorMatrix::new_hermitian(entries)
}

/// Eigendecomposition of a Hermitian operator, reusable for many times.
#[derive(Debug, Clone)]
pub struct Propagator {
    eigenvectors: DMatrix<C64>,
    eigenvalues: DVector<f64>,
    policy: TruncationPolicy,
}

impl Propagator {
    pub fn new(hamiltonian: &OperatorMatrix, policy: TruncationPolicy) -> Result<Self> {
        if !hamiltonian.is_hermitian() {
            return invalid("propagation requires a Hermitian generator");
        }
        let eig = hamiltonian.entries.clone().symmetric_eigen();
        Ok(Self {
            eigenvectors: eig.eigenvectors,
            eigenvalues: eig.eigenvalues,
            policy,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.eigenvalues.as_slice()
    }

    /// `V exp(−i diag(E) t) V† ψ`, checked against the truncation policy.
    pub fn evolve(&self, state: &FockVector, t: f64) -> Result<FockVector> {
        let out = self.evolve_unchecked(state, t)?;
        self.policy.check(&out)?;
        Ok(out)
    }

    /// Like [`Propagator::evolve`] but without the tail-mass check.
    pub fn evolve_unchecked(&self, state: &FockVector, t: f64) -> Result<FockVector> {
        if state.amplitudes.len() != self.eigenvalues.len() {
            return invalid(format!(
                "state has {} levels, Hamiltonian acts on {}",
                state.amplitudes.len(),
                self.eigenvalues.len()
            ));
        }
        if !t.is_finite() {
            return invalid("propagation time must be finite");
        }
        let mut coeffs = self.eigenvectors.adjoint() * &state.amplitudes;
        for (c, &e) in coeffs.iter_mut().zip(self.eigenvalues.iter()) {
            *c *= C64::from_polar(1.0, -e * t);
        }
        Ok(FockVector {
            amplitudes: &self.eigenvectors * coeffs,
        })
    }
}

/// One-shot propagation through a constant Hamiltonian.
pub fn propagate(
    state: &FockVector,
    hamiltonian: &OperatorMatrix,
    t: f64,
    policy: TruncationPolicy,
) -> Result<FockVector> {
    Propagator::new(hamiltonian, policy)?.evolve(state, t)
}

/// `⟨Q_λ²⟩ − ⟨Q_λ⟩²`.
///
/// `⟨Q²⟩` is taken as `‖Q ψ‖²` plus the `(N+1)|c_N|²/2` that the truncated
/// matrix drops when raising `|N⟩`, which makes it exact for the given
/// amplitudes.
pub fn variance_of_quadrature(state: &FockVector, lambda: f64) -> f64 {
    let n = state.truncation();
    let q = quadrature(n, lambda).expect("state truncation is at least 2");
    let q_psi = &q.entries * &state.amplitudes;
    let mean = state.amplitudes.dotc(&q_psi).re;
    let top = state.amplitudes[n].norm_sqr() * (n as f64 + 1.0) / 2.0;
    let second = q_psi.norm_squared() + top;
    second - mean * mean
}

/// `Pₙ = |cₙ|²`.
pub fn number_distribution(state: &FockVector) -> Vec<f64> {
    state.amplitudes.iter().map(|c| c.norm_sqr()).collect()
}

/// Expectation value `⟨ψ|M|ψ⟩`.
pub fn expectation(state: &FockVector, op: &OperatorMatrix) -> Result<C64> {
    let m_psi = op.apply(state)?;
    Ok(state.as_vector().dotc(m_psi.as_vector()))
}
