use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use serde::Serialize;

use super::CliError;
use crate::protocol::{self, JumpProtocol};

pub const PROBE_LEVELS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRecord {
    pub omega0: f64,
    pub omega1: f64,
    pub tau: f64,
    pub t: f64,
    pub lambda: f64,
    pub r: f64,
    pub phi: f64,
    pub variance_lambda: f64,
    pub variance_lambda_perp: f64,
    pub variance_product: f64,
    pub persistence: f64,
    pub excitation: f64,
    /// `P(0), P(2), …, P(18)` after the second jump.
    pub even_probabilities: Vec<f64>,
}

pub fn probe(
    omega0: f64,
    omega1: f64,
    tau: f64,
    t: f64,
    lambda: f64,
) -> Result<ProbeRecord, CliError> {
    let usage = |e: crate::Error| CliError::Usage(e.to_string());
    let p = JumpProtocol::new(omega0, omega1, tau).map_err(usage)?;
    if !lambda.is_finite() {
        return super::usage("--lambda must be finite");
    }
    let s = protocol::state_at(&p, t).map_err(usage)?.squeezed;
    let a = s.variance(lambda);
    let b = s.variance(lambda + FRAC_PI_2);
    Ok(ProbeRecord {
        omega0,
        omega1,
        tau,
        t,
        lambda,
        r: s.r(),
        phi: s.phi(),
        variance_lambda: a,
        variance_lambda_perp: b,
        variance_product: a * b,
        persistence: protocol::persistence(&p),
        excitation: protocol::excitation_probability(&p),
        even_probabilities: protocol::even_photon_probabilities(&p, PROBE_LEVELS),
    })
}

impl ProbeRecord {
    pub fn write_text(&self, w: &mut dyn Write) -> std::io::Result<()> {
        let rows = [
            ("omega0", self.omega0),
            ("omega1", self.omega1),
            ("tau", self.tau),
            ("t", self.t),
            ("lambda", self.lambda),
            ("r", self.r),
            ("phi", self.phi),
            ("variance(lambda)", self.variance_lambda),
            ("variance(lambda+pi/2)", self.variance_lambda_perp),
            ("product", self.variance_product),
            ("Z", self.persistence),
            ("P_E", self.excitation),
        ];
        for (k, v) in rows {
            writeln!(w, "{k:<22} {v:.12}")?;
        }
        for (n, p) in self.even_probabilities.iter().enumerate() {
            writeln!(w, "{:<22} {p:.12}", format!("P({})", 2 * n))?;
        }
        Ok(())
    }
}
