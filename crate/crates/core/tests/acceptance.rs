//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report is always printed; exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use squeeze_jump::bch::{self, AlgebraSign, LambdaSet, Representation};
use squeeze_jump::fock::{self, FockVector, TruncationPolicy};
use squeeze_jump::protocol::{self, FockOracle, JumpProtocol};
use squeeze_jump::{Error, C64};

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: String) -> Outcome {
    Outcome { passed, summary }
}

/// Random `−iH₁t` exponents from the two-jump family.
fn physical(rng: &mut ChaCha8Rng, ratio: (f64, f64), phase_max: f64) -> LambdaSet {
    let omega0 = rng.gen_range(0.5..2.0);
    let omega1 = omega0 * rng.gen_range(ratio.0..ratio.1);
    let t = rng.gen_range(0.0..phase_max) / omega0;
    let p = JumpProtocol::new(omega0, omega1, t.max(1e-300)).unwrap();
    protocol::lambdas_interval1(&p, t).unwrap()
}

fn identity_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let worst = (0..1000)
        .map(|_| {
            let fe = bch::factorize(&physical(&mut rng, (0.2, 5.0), 10.0)).unwrap();
            (fe.three.norm() + fe.plus.norm_sqr() - 1.0).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-12,
        format!("1000 sets, max ||L3|+|L+|^2-1| = {worst:.2e} (tol 1e-12)"),
    )
}

fn representation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let fock = (0..100)
        .map(|_| {
            let l = physical(&mut rng, (0.5, 2.0), 6.0);
            bch::verify_factorization(&l, &bch::factorize(&l).unwrap(), 64)
        })
        .fold(0.0, f64::max);
    let mut c = || C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let mut su2 = 0.0f64;
    let mut done = 0;
    while done < 100 {
        let l = LambdaSet::new(c(), c(), c(), AlgebraSign::SuTwo).unwrap();
        match bch::factorize(&l) {
            Ok(fe) => {
                su2 = su2.max(bch::verify_in(&l, &fe, &Representation::SpinHalf).unwrap());
                done += 1;
            }
            Err(Error::DegenerateFactorization { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    outcome(
        fock < 1e-8 && su2 < 1e-12,
        format!(
            "rep_dim 64 max dev {fock:.2e} (tol 1e-8); su(2) 2x2 max dev {su2:.2e} (tol 1e-12)"
        ),
    )
}

fn squeezing_maximum() -> Outcome {
    let p = JumpProtocol::new(1.0, 3.0, 10.0).unwrap();
    let peak = (protocol::squeezing_parameter(&p, PI / 6.0).unwrap() - 3f64.ln()).abs();
    // independent route: r = arcosh √(1 + κ² sin² ω₁t)
    let kappa = 4.0 / 3.0;
    let arcosh_dev = (0..10_000)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / 9_999.0;
            let via_arcosh = (1.0 + (kappa * (3.0 * t).sin()).powi(2)).sqrt().acosh();
            (protocol::squeezing_parameter(&p, t).unwrap() - via_arcosh).abs()
        })
        .fold(0.0, f64::max);
    let period = (0..10_000)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / 9_999.0;
            let a = protocol::squeezing_parameter(&p, t).unwrap();
            let b = protocol::squeezing_parameter(&p, t + PI / 3.0).unwrap();
            (a - b).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        peak < 1e-12 && period < 1e-12 && arcosh_dev < 1e-7,
        format!("|r(pi/6) - ln 3| = {peak:.2e}, pi/3-periodicity {period:.2e} on 10^4 points (tol 1e-12); arcosh route {arcosh_dev:.1e}"),
    )
}

/// Worst fidelity deficit over the seeded sample set; truncation failures
/// count as failing samples.
fn oracle_sweep(truncation: usize) -> (usize, usize, f64, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let policy = TruncationPolicy::default();
    let mut failing = 0;
    let mut unsafe_count = 0;
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for i in 0..50 {
        let omega1 = rng.gen_range(0.2..5.0);
        let tau = rng.gen_range(0.05..2.0 * PI);
        let t = rng.gen_range(0.0..3.0 * tau);
        let p = JumpProtocol::new(1.0, omega1, tau).unwrap();
        let exact = protocol::state_at(&p, t)
            .unwrap()
            .squeezed
            .fock_amplitudes(truncation);
        let exact = FockVector::from_amplitudes(exact).unwrap();
        let deficit = match FockOracle::new(&p, truncation, policy).unwrap().state_at(t) {
            Ok(v) => 1.0 - exact.fidelity(&v),
            Err(e @ Error::TruncationUnsafe { .. }) => {
                notes.push(format!("sample {i} (w1={omega1:.3}, t={t:.3}): {e}"));
                unsafe_count += 1;
                f64::INFINITY
            }
            Err(e) => panic!("{e}"),
        };
        if deficit >= 1e-8 {
            failing += 1;
            if deficit.is_finite() {
                notes.push(format!(
                    "sample {i} (w1={omega1:.3}, t={t:.3}): deficit {deficit:.2e}"
                ));
            }
        }
        if deficit.is_finite() {
            worst = worst.max(deficit);
        }
    }
    (failing, unsafe_count, worst, notes)
}

fn oracle_fidelity() -> Outcome {
    let (failing, unsafe_count, worst, notes) = oracle_sweep(128);
    for n in &notes {
        println!("      {n}");
    }
    let (failing_256, _, worst_256, _) = oracle_sweep(256);
    outcome(
        failing == 0,
        format!(
            "N=128: {failing}/50 samples fail ({unsafe_count} truncation-unsafe), worst finite deficit {worst:.2e} (tol 1e-8); same samples at N=256: {failing_256} fail, worst {worst_256:.2e}"
        ),
    )
}

fn persistence_values() -> Outcome {
    let p = JumpProtocol::new(1.0, 3.0, 5.0 * PI / 6.0).unwrap();
    let z = protocol::persistence(&p);
    let pe = protocol::excitation_probability(&p);
    let dev = (z - 0.6).abs().max((pe - 0.4).abs());
    let z_one = (1..=5)
        .map(|l| {
            let p = JumpProtocol::new(1.0, 3.0, l as f64 * PI / 3.0).unwrap();
            (protocol::persistence(&p) - 1.0).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        dev < 1e-12 && z_one < 1e-12,
        format!("Z = {z:.12}, P_E = {pe:.12} (dev {dev:.1e}); max |Z-1| at tau = l*pi/3: {z_one:.1e} (tol 1e-12)"),
    )
}

fn photon_distribution() -> Outcome {
    let p = JumpProtocol::new(1.0, 3.0, 5.0 * PI / 6.0).unwrap();
    let dist = protocol::photon_distribution(&p, 128, 1e-10).unwrap();
    let values = (dist[0] - 0.6).abs().max((dist[2] - 0.192).abs());
    let total = (dist.iter().sum::<f64>() - 1.0).abs();
    let closed_odd = dist
        .iter()
        .skip(1)
        .step_by(2)
        .fold(0.0f64, |m, &x| m.max(x));
    // brute force: vacuum propagated through both jumps
    let state = FockOracle::new(&p, 256, TruncationPolicy::default())
        .unwrap()
        .state_at(4.0)
        .unwrap();
    let numeric = fock::number_distribution(&state);
    let oracle_odd = numeric
        .iter()
        .skip(1)
        .step_by(2)
        .fold(0.0f64, |m, &x| m.max(x));
    let oracle_dev = dist
        .iter()
        .zip(&numeric)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let odd = closed_odd.max(oracle_odd);
    outcome(
        odd < 1e-12 && values < 1e-10 && total < 1e-10 && oracle_dev < 1e-10,
        format!(
            "max P(odd) {odd:.1e} (tol 1e-12); P(0), P(2) dev {values:.1e}; |sum-1| {total:.1e}; vs Fock oracle {oracle_dev:.1e} (tol 1e-10)"
        ),
    )
}

fn heisenberg_floor() -> Outcome {
    let mut floor = f64::INFINITY;
    for omega1 in [0.3, 3.0, 5.0] {
        let p = JumpProtocol::new(1.0, omega1, 5.0 * PI / 6.0).unwrap();
        for i in 0..400 {
            let t = 3.0 * p.tau() * i as f64 / 399.0;
            let s = protocol::state_at(&p, t).unwrap().squeezed;
            for j in 0..100 {
                let lambda = PI * j as f64 / 100.0;
                floor = floor.min(s.variance(lambda) * s.variance(lambda + FRAC_PI_2));
            }
        }
    }
    let mut equality = 0.0f64;
    for omega1 in [0.3, 3.0, 5.0] {
        let t = PI / (2.0 * omega1);
        let p = JumpProtocol::new(1.0, omega1, t).unwrap();
        for lambda in [0.0, FRAC_PI_2] {
            let product = protocol::variance_at(&p, t, lambda).unwrap()
                * protocol::variance_at(&p, t, lambda + FRAC_PI_2).unwrap();
            equality = equality.max((product - 0.25).abs());
        }
    }
    outcome(
        floor >= 0.25 - 1e-12 && equality < 1e-9,
        format!("min product {floor:.15} (floor 0.25 - 1e-12); |product - 1/4| at t = pi/(2 w1): {equality:.1e} (tol 1e-9)"),
    )
}

/// Peak positions of `f` on `[a, b]`, each the midpoint of the two
/// crossings of a common level around it; exact for symmetric peaks.
fn peaks(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Vec<f64> {
    let n = 4000;
    let xs: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let level = (ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        + ys.iter().cloned().fold(f64::INFINITY, f64::min))
        / 2.0;
    let g = |x: f64| f(x) - level;
    let root = |mut lo: f64, mut hi: f64| {
        let rising = g(lo) < 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (g(mid) < 0.0) == rising {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let mut ups = Vec::new();
    let mut out = Vec::new();
    for i in 0..n {
        let (y0, y1) = (ys[i] - level, ys[i + 1] - level);
        if y0 < 0.0 && y1 >= 0.0 {
            ups.push(root(xs[i], xs[i + 1]));
        } else if y0 >= 0.0 && y1 < 0.0 {
            if let Some(up) = ups.pop() {
                out.push(0.5 * (up + root(xs[i], xs[i + 1])));
            }
        }
    }
    out
}

fn interval_two() -> Outcome {
    let mut spacing_dev = 0.0f64;
    let mut spacings = 0;
    for tau in [5.0 * PI / 6.0, 59.0 * PI / 62.0] {
        let p = JumpProtocol::new(1.0, 3.0, tau).unwrap();
        let v = |t: f64| protocol::variance_at(&p, t, FRAC_PI_2).unwrap();
        let ps = peaks(v, tau + 1e-9, tau + 6.0 * PI);
        for w in ps.windows(2) {
            spacing_dev = spacing_dev.max((w[1] - w[0] - PI).abs());
            spacings += 1;
        }
    }
    let p = JumpProtocol::new(1.0, 3.0, PI).unwrap();
    let flat = (1..=2000)
        .map(|i| {
            let t = PI + 3.0 * PI * i as f64 / 2000.0;
            (protocol::variance_at(&p, t, FRAC_PI_2).unwrap() - 0.5).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        spacings >= 8 && spacing_dev < 1e-9 && flat < 1e-10,
        format!("{spacings} peak spacings, max |spacing - pi/w0| {spacing_dev:.1e} (tol 1e-9); tau=pi max |V-0.5| {flat:.1e} (tol 1e-10)"),
    )
}

fn continuity() -> Outcome {
    let eps = 1e-7;
    let reference = JumpProtocol::new(1.0, 3.0, 5.0 * PI / 6.0).unwrap();
    let small = protocol::squeezing_parameter(&reference, eps)
        .unwrap()
        .abs();
    // other jumps: r(ε) ≈ |η₀|ε, so only the slope bound is meaningful
    let mut slope_excess = 0.0f64;
    for omega1 in [0.2, 0.5, 2.0, 5.0] {
        let p = JumpProtocol::new(1.0, omega1, 1.0).unwrap();
        let r = protocol::squeezing_parameter(&p, eps).unwrap();
        slope_excess = slope_excess.max(r - p.eta0().abs() * eps);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut jump = 0.0f64;
    for _ in 0..200 {
        let p = JumpProtocol::new(
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.2..5.0),
            rng.gen_range(0.05..2.0 * PI),
        )
        .unwrap();
        let lambda = rng.gen_range(0.0..PI);
        let at = protocol::variance_at(&p, p.tau(), lambda).unwrap();
        for t in [p.tau() * (1.0 - 1e-13), p.tau() * (1.0 + 1e-13)] {
            jump = jump.max((protocol::variance_at(&p, t, lambda).unwrap() - at).abs());
        }
    }
    outcome(
        small < 1e-6 && slope_excess <= 1e-20 && jump < 1e-9,
        format!(
            "|r(1e-7)| {small:.2e} at w1=3 (tol 1e-6), r(1e-7) <= |eta0|*1e-7 for w1 in [0.2, 5]; variance jump across tau over 200 protocols {jump:.1e} (tol 1e-9)"
        ),
    )
}

fn main() {
    // `cargo test -- <filter>` passes arguments; the suite always runs whole
    type Criterion = (u32, &'static str, Option<f64>, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        (1, "identity law", Some(1.0), identity_law),
        (2, "BCH representation check", Some(30.0), representation),
        (3, "squeezing maximum and period", None, squeezing_maximum),
        (4, "oracle fidelity", Some(60.0), oracle_fidelity),
        (5, "persistence and excitation", None, persistence_values),
        (6, "photon distribution", None, photon_distribution),
        (7, "Heisenberg floor", None, heisenberg_floor),
        (8, "second-interval behavior", None, interval_two),
        (9, "continuity", None, continuity),
    ];
    let suite = Instant::now();
    let mut failed = Vec::new();
    println!("acceptance criteria");
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let in_time = limit.is_none_or(|l| secs < l);
        let ok = o.passed && in_time;
        let budget = limit.map_or(String::new(), |l| format!(", limit {l:.0} s"));
        println!(
            "{} {id} {name}: {} [{secs:.2} s{budget}]",
            if ok { "PASS" } else { "FAIL" },
            o.summary
        );
        if !ok {
            failed.push(id);
        }
    }
    let total = suite.elapsed().as_secs_f64();
    let total_ok = total < 120.0;
    println!(
        "total {total:.1} s (limit 120 s){}",
        if total_ok { "" } else { " EXCEEDED" }
    );
    if failed.is_empty() && total_ok {
        println!("all criteria passed");
    } else {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
