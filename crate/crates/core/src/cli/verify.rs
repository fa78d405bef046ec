//! Seeded invariant and oracle suite behind `squeeze-jump verify`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bch::{self, AlgebraSign, LambdaSet, Representation};
use crate::fock::TruncationPolicy;
use crate::protocol::{self, FockOracle, JumpProtocol};
use crate::squeezed::SqueezedState;
use crate::{Result, C64};

pub const DEFAULT_SAMPLES: usize = 50;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    /// Worst measured deviation; absent when the check errored out.
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub seed: u64,
    pub samples: usize,
    pub fock_truncation: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn write_text(&self, w: &mut dyn Write) -> std::io::Result<()> {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        writeln!(
            w,
            "seed {}  samples {}  fock N {}",
            self.seed, self.samples, self.fock_truncation
        )?;
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let dev = c
                .deviation
                .map_or_else(|| "-".to_string(), |d| format!("{d:.3e}"));
            write!(
                w,
                "{status}  {:<width$}  dev {dev:>10}  tol {:.1e}  {:>8.3}s",
                c.name, c.tolerance, c.wall_time_s
            )?;
            match &c.detail {
                Some(d) => writeln!(w, "  {d}")?,
                None => writeln!(w)?,
            }
        }
        writeln!(
            w,
            "{}",
            if self.passed() {
                "all checks passed"
            } else {
                "FAILED"
            }
        )
    }
}

type Outcome = Result<(f64, Option<String>)>;

fn timed(name: &'static str, tolerance: f64, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let outcome = f();
    let wall_time_s = start.elapsed().as_secs_f64();
    let (deviation, detail) = match outcome {
        Ok((d, detail)) => (Some(d), detail),
        Err(e) => (None, Some(e.to_string())),
    };
    let ok = deviation.is_some_and(|d| d < tolerance);
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        deviation,
        tolerance,
        wall_time_s,
        detail,
    }
}

/// Physical exponents `−iH₁t` for a random two-jump protocol.
fn physical_lambdas(rng: &mut ChaCha8Rng, ratio: (f64, f64), t_max: f64) -> Result<LambdaSet> {
    let omega0 = rng.gen_range(0.5..2.0);
    let omega1 = omega0 * rng.gen_range(ratio.0..ratio.1);
    let t = rng.gen_range(0.0..t_max) / omega0;
    let p = JumpProtocol::new(omega0, omega1, t.max(f64::MIN_POSITIVE))?;
    protocol::lambdas_interval1(&p, t)
}

fn random_protocol(rng: &mut ChaCha8Rng) -> Result<(JumpProtocol, f64)> {
    let omega1 = rng.gen_range(0.2..5.0);
    let tau = rng.gen_range(0.05..2.0 * PI);
    let t = rng.gen_range(0.0..3.0 * tau);
    Ok((JumpProtocol::new(1.0, omega1, tau)?, t))
}

fn max_over(n: usize, mut f: impl FnMut(usize) -> Result<f64>) -> Result<f64> {
    (0..n).try_fold(0.0f64, |m, i| Ok(m.max(f(i)?)))
}

pub fn run_suite(samples: usize, seed: u64, fock_truncation: usize) -> RunReport {
    let rng =
        |salt: u64| ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let ln3 = 3f64.ln();
    let reference = JumpProtocol::new(1.0, 3.0, 5.0 * PI / 6.0).expect("valid constants");
    let mut checks = Vec::new();

    checks.push(timed("bch.identity_law", 1e-12, || {
        let mut r = rng(1);
        let dev = max_over(samples, |_| {
            let fe = bch::factorize(&physical_lambdas(&mut r, (0.2, 5.0), 10.0)?)?;
            Ok((fe.three.norm() + fe.plus.norm_sqr() - 1.0).abs())
        })?;
        Ok((dev, None))
    }));

    checks.push(timed("bch.fock_representation", 1e-8, || {
        let mut r = rng(2);
        let dev = max_over(samples, |_| {
            let l = physical_lambdas(&mut r, (0.5, 2.0), 6.0)?;
            Ok(bch::verify_factorization(&l, &bch::factorize(&l)?, 64))
        })?;
        Ok((dev, None))
    }));

    checks.push(timed("bch.su2_representation", 1e-12, || {
        let mut r = rng(3);
        let mut c = || C64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        let dev = max_over(samples, |_| loop {
            let l = LambdaSet::new(c(), c(), c(), AlgebraSign::SuTwo)?;
            match bch::factorize(&l) {
                Ok(fe) => break bch::verify_in(&l, &fe, &Representation::SpinHalf),
                Err(crate::Error::DegenerateFactorization { .. }) => continue,
                Err(e) => break Err(e),
            }
        })?;
        Ok((dev, None))
    }));

    checks.push(timed("protocol.squeezing_maximum", 1e-12, || {
        Ok((
            (protocol::squeezing_parameter(&reference, PI / 6.0)? - ln3).abs(),
            None,
        ))
    }));

    checks.push(timed("protocol.r_periodicity", 1e-12, || {
        let p = JumpProtocol::new(1.0, 3.0, 10.0)?;
        let dev = max_over(10_000, |i| {
            let t = 6.0 * i as f64 / 9_999.0;
            Ok((protocol::squeezing_parameter(&p, t + PI / 3.0)?
                - protocol::squeezing_parameter(&p, t)?)
            .abs())
        })?;
        Ok((dev, None))
    }));

    checks.push(timed("protocol.persistence_values", 1e-12, || {
        let mut dev = (protocol::persistence(&reference) - 0.6)
            .abs()
            .max((protocol::excitation_probability(&reference) - 0.4).abs());
        for l in 1..=5 {
            let p = JumpProtocol::new(1.0, 3.0, l as f64 * PI / 3.0)?;
            dev = dev.max((protocol::persistence(&p) - 1.0).abs());
        }
        Ok((dev, None))
    }));

    checks.push(timed("protocol.photon_distribution", 1e-10, || {
        let dist = protocol::photon_distribution(&reference, 128, 1e-10)?;
        let odd = dist
            .iter()
            .skip(1)
            .step_by(2)
            .fold(0.0f64, |m, &p| m.max(p));
        let total: f64 = dist.iter().sum();
        let dev = (dist[0] - 0.6)
            .abs()
            .max((dist[2] - 0.192).abs())
            .max((total - 1.0).abs())
            .max(odd);
        Ok((dev, None))
    }));

    checks.push(timed("squeezed.heisenberg_floor", 1e-12, || {
        let mut r = rng(4);
        let mut worst_gap = 0.0f64;
        for _ in 0..samples {
            let s = SqueezedState::new(r.gen_range(0.0..3.0), r.gen_range(-PI..PI), 1.0)?;
            let lambda = r.gen_range(0.0..PI);
            let product = s.variance(lambda) * s.variance(lambda + FRAC_PI_2);
            worst_gap = worst_gap.max(0.25 - product);
        }
        Ok((worst_gap.max(0.0), None))
    }));

    checks.push(timed("protocol.interval2_period", 1e-9, || {
        let mut r = rng(5);
        let dev = max_over(samples, |_| {
            let (p, _) = random_protocol(&mut r)?;
            let t = p.tau() + r.gen_range(0.0..2.0 * PI);
            let lambda = r.gen_range(0.0..PI);
            let a = protocol::variance_at(&p, t, lambda)?;
            let b = protocol::variance_at(&p, t + PI / p.omega0(), lambda)?;
            Ok((a - b).abs())
        })?;
        Ok((dev, None))
    }));

    checks.push(timed("protocol.continuity", 1e-9, || {
        let mut r = rng(6);
        let dev = max_over(samples, |_| {
            let (p, _) = random_protocol(&mut r)?;
            let lambda = r.gen_range(0.0..PI);
            let before = protocol::variance_at(&p, p.tau(), lambda)?;
            let after = protocol::variance_at(&p, p.tau() * (1.0 + 1e-14), lambda)?;
            Ok((before - after).abs())
        })?;
        Ok((dev, None))
    }));

    checks.push(timed("protocol.small_time_limit", 1e-6, || {
        Ok((protocol::squeezing_parameter(&reference, 1e-7)?.abs(), None))
    }));

    checks.push(timed("oracle.fidelity", 1e-8, || {
        let mut r = rng(7);
        let policy = TruncationPolicy::default();
        let mut worst = (0.0f64, None);
        for i in 0..samples {
            let (p, t) = random_protocol(&mut r)?;
            let analytic = protocol::state_at(&p, t)?
                .squeezed
                .fock_amplitudes(fock_truncation);
            let analytic = crate::fock::FockVector::from_amplitudes(analytic)?;
            let numeric = match FockOracle::new(&p, fock_truncation, policy)?.state_at(t) {
                Ok(v) => v,
                Err(e @ crate::Error::TruncationUnsafe { .. }) => {
                    return Ok((
                        f64::INFINITY,
                        Some(format!("{e} ({})", sample_label(i, &p, t))),
                    ));
                }
                Err(e) => return Err(e),
            };
            let deficit = 1.0 - analytic.fidelity(&numeric);
            if deficit > worst.0 {
                worst = (deficit, Some(sample_label(i, &p, t)));
            }
        }
        Ok((worst.0, worst.1.map(|s| format!("worst {s}"))))
    }));

    RunReport {
        seed,
        samples,
        fock_truncation,
        passed: checks.iter().all(|c| c.status == Status::Pass),
        checks,
    }
}

fn sample_label(i: usize, p: &JumpProtocol, t: f64) -> String {
    format!(
        "sample {i}: omega1 {:.4}, tau {:.4}, t {:.4}",
        p.omega1(),
        p.tau(),
        t
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starved_truncation_fails_oracle() {
        let report = run_suite(3, 1, 8);
        let c = report.check("oracle.fidelity").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert!(c.detail.as_deref().unwrap().contains("truncation unsafe"));
        assert!(!report.passed());
        assert!(report.check("bch.identity_law").unwrap().status == Status::Pass);
    }

    #[test]
    fn reproducible() {
        let a = run_suite(4, 9, 64);
        let b = run_suite(4, 9, 64);
        let strip = |r: &RunReport| {
            r.checks
                .iter()
                .map(|c| (c.name, c.status, c.deviation))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
    }
}
