//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use common::*;
use ptspectra::diag::{build_hamiltonian, real_spectrum, BasisConfig, DiagConfig};
use ptspectra::linalg::eigenvalues;
use ptspectra::potential::Sign;
use ptspectra::shooting::{find_eigenvalues, integrate_ray, ShootingConfig, ShootingSpectrum};
use ptspectra::stokes::{angle_distance, asymptotic_lines, bb_rays, wedge_rays, LineKind};
use ptspectra::wkb::{energy_bb, energy_general, energy_nm, quantization_integral};
use ptspectra::{PotentialSpec, WedgeMode};
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const QUINTIC_SIZES: [usize; 4] = [80, 120, 160, 200];

fn check(ok: bool, failures: &mut Vec<String>, msg: String) {
    if !ok {
        failures.push(msg);
    }
}

fn finish(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures.join("; "))
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn shoot(spec: &PotentialSpec, mode: WedgeMode, n_max: usize) -> Result<ShootingSpectrum, String> {
    let rays = wedge_rays(spec, mode).map_err(|e| e.to_string())?;
    find_eigenvalues(spec, rays, n_max, &ShootingConfig::default()).map_err(|e| e.to_string())
}

fn level_value(s: &ShootingSpectrum, n: usize) -> Option<f64> {
    s.levels.iter().find(|l| l.n == n).map(|l| l.value)
}

fn closed_forms() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (n, &e) in BB.iter().enumerate() {
        let r = rel(energy_bb(n, 2), e);
        worst = worst.max(r);
        check(r < 5e-9, &mut failures, format!("E_bb({n}) rel {r:.2e}"));
    }
    for (n, &e) in NM.iter().enumerate() {
        let r = rel(energy_nm(n, 2), e);
        worst = worst.max(r);
        check(r < 5e-9, &mut failures, format!("E_nm({n}) rel {r:.2e}"));
    }
    finish(failures, format!("15 values, worst rel {worst:.2e}"))
}

fn ratios() -> Outcome {
    let mut failures = Vec::new();
    let r1 = energy_bb(0, 1) / energy_nm(0, 1);
    check((r1 - 1.0).abs() < 1e-12, &mut failures, format!("N=1 ratio {r1}"));
    let mut detail = format!("N=1 {r1:.15}");
    for (big_n, expected) in [(2, 1.988629015), (3, 3.523156867)] {
        let r = energy_bb(0, big_n) / energy_nm(0, big_n);
        check(rel(r, expected) < 1e-8, &mut failures, format!("N={big_n} ratio {r}"));
        detail += &format!(", N={big_n} {r:.10}");
    }
    finish(failures, detail)
}

fn shooting_real_axis() -> Outcome {
    let s = shoot(&PotentialSpec::ix_power(5), WedgeMode::ContainsRealAxis, 10)?;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (n, &e) in NI.iter().enumerate() {
        match level_value(&s, n) {
            Some(v) => {
                worst = worst.max((v - e).abs());
                check((v - e).abs() < 2e-5, &mut failures, format!("n={n}: {v} vs {e}"));
            }
            None => failures.push(format!("n={n} missing")),
        }
    }
    check(s.warnings.is_empty(), &mut failures, format!("warnings {:?}", s.warnings));
    finish(failures, format!("11 levels, worst abs {worst:.2e}"))
}

fn shooting_off_axis() -> Outcome {
    let s = shoot(&PotentialSpec::ix_power(5), WedgeMode::OffAxis, 3)?;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (n, &e) in RPM.iter().enumerate() {
        match level_value(&s, n) {
            Some(v) => {
                worst = worst.max(rel(v, e));
                check(rel(v, e) < 1e-6, &mut failures, format!("n={n}: {v} vs {e}"));
            }
            None => failures.push(format!("n={n} missing")),
        }
    }
    finish(failures, format!("4 levels, worst rel {worst:.2e}"))
}

fn diagonalization() -> Outcome {
    let s = real_spectrum(&PotentialSpec::ix_power(5), &QUINTIC_SIZES, &DiagConfig::default(), 10).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (n, &e) in DM.iter().enumerate() {
        let bound = match n {
            0..=3 => 1e-7,
            4..=8 => 1e-5,
            _ => 1e-4,
        };
        match s.largest_size_value(n) {
            Some(v) => {
                worst = worst.max(rel(v, e));
                check(rel(v, e) < bound, &mut failures, format!("n={n}: {v} vs {e}"));
            }
            None => failures.push(format!("n={n} missing")),
        }
    }
    let settled: Vec<usize> = s.levels.iter().map(|l| l.n).collect();
    finish(failures, format!("11 levels at size 200, worst rel {worst:.2e}, settled across 160/200: {settled:?}"))
}

fn inequivalence() -> Outcome {
    let spec = PotentialSpec::ix_power(5);
    let real = shoot(&spec, WedgeMode::ContainsRealAxis, 0)?;
    let off = shoot(&spec, WedgeMode::OffAxis, 0)?;
    let (a, b) = (level_value(&real, 0).ok_or("real-axis E0 missing")?, level_value(&off, 0).ok_or("off-axis E0 missing")?);
    let mut failures = Vec::new();
    check((a - b).abs() > 0.5, &mut failures, format!("E0 {a} vs {b}"));
    let d = real_spectrum(&PotentialSpec::neg_ix_power(5), &QUINTIC_SIZES, &DiagConfig::default(), 10).map_err(|e| e.to_string())?;
    for l in &d.levels {
        check(rel(l.value, RPM[0]) > 1e-2, &mut failures, format!("diag level {} = {}", l.n, l.value));
    }
    finish(failures, format!("E0 {a:.9} vs {b:.9}; {} settled diag levels, none near {:.9}", d.levels.len(), RPM[0]))
}

fn cubic_coincidence() -> Outcome {
    let nm = shoot(&PotentialSpec::ix_power(3), WedgeMode::ContainsRealAxis, 3)?;
    let neg = PotentialSpec::neg_ix_power(3);
    let bb = find_eigenvalues(&neg, bb_rays(3), 3, &ShootingConfig::default()).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for n in 0..=3 {
        match (level_value(&nm, n), level_value(&bb, n)) {
            (Some(a), Some(b)) => {
                worst = worst.max((a - b).abs());
                check((a - b).abs() < 1e-6, &mut failures, format!("n={n}: {a} vs {b}"));
            }
            _ => failures.push(format!("n={n} missing")),
        }
        let (x, y) = (energy_bb(n, 1), energy_nm(n, 1));
        check(rel(x, y) < 1e-12, &mut failures, format!("closed forms n={n}: {x} vs {y}"));
    }
    finish(failures, format!("4 levels, worst abs {worst:.2e}"))
}

fn stokes_geometry() -> Outcome {
    let mut failures = Vec::new();
    for (label, negative, numerators) in LINE_SETS {
        let spec = if negative { PotentialSpec::neg_ix_power(5) } else { PotentialSpec::ix_power(5) };
        let d = asymptotic_lines(&spec);
        let kinds: Vec<Option<LineKind>> = numerators.iter().map(|&p| d.classify(p, 14)).collect();
        if kinds.iter().any(Option::is_none) {
            failures.push(format!("{label}: missing angle"));
            continue;
        }
        let anti = kinds.iter().filter(|k| **k == Some(LineKind::AntiStokes)).count();
        check(anti == 2, &mut failures, format!("{label}: {anti} anti-Stokes, {} Stokes", 6 - anti));
    }
    let rays = bb_rays(5);
    let ok = angle_distance(rays.theta_left, 17.0 * PI / 14.0) < 1e-12 && angle_distance(rays.theta_right, 25.0 * PI / 14.0) < 1e-12;
    check(ok, &mut failures, format!("bb rays {rays:?}"));
    finish(failures, "24 angles found, 2 anti-Stokes + 4 Stokes per set, ray pair 17pi/14, 25pi/14".into())
}

fn quantization_property() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (m, eps) in [(1, 1), (1, 3), (2, 1), (1, 5), (3, 1)] {
        let spec = PotentialSpec::new(m, eps, Sign::Plus, 0.0).map_err(|e| e.to_string())?;
        for n in [0, 1, 2, 5] {
            match quantization_integral(&spec, energy_general(n, m, eps)) {
                Ok(q) => {
                    let d = (q - (n as f64 + 0.5) * PI).abs();
                    worst = worst.max(d);
                    check(d < 1e-6, &mut failures, format!("(M={m}, eps={eps}, n={n}) off by {d:.2e}"));
                }
                Err(e) => failures.push(format!("(M={m}, eps={eps}, n={n}): {e}")),
            }
        }
    }
    finish(failures, format!("20 cases, worst {worst:.2e}"))
}

fn harmonic_cross_check() -> Outcome {
    let ho = PotentialSpec::new(1, 0, Sign::Plus, 0.0).map_err(|e| e.to_string())?;
    let diag = real_spectrum(&ho, &[20, 30, 40], &DiagConfig::default(), 5).map_err(|e| e.to_string())?;
    let shot = shoot(&ho, WedgeMode::ContainsRealAxis, 5)?;
    let mut failures = Vec::new();
    for n in 0..=5 {
        let exact = (2 * n + 1) as f64;
        let g = energy_general(n, 1, 0);
        check((g - exact).abs() < 1e-12 * exact, &mut failures, format!("closed form n={n}: {g}"));
        match diag.level(n) {
            Some(l) => check((l.value - exact).abs() < 1e-10, &mut failures, format!("diag n={n}: {}", l.value)),
            None => failures.push(format!("diag n={n} unsettled")),
        }
        match level_value(&shot, n) {
            Some(v) => check((v - exact).abs() < 1e-6, &mut failures, format!("shooting n={n}: {v}")),
            None => failures.push(format!("shooting n={n} missing")),
        }
    }
    finish(failures, "n = 0..5 by three methods".into())
}

fn oracle_suites() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = rng(2024);
    let mut worst = 0.0f64;
    for k in 0..50 {
        let a = random_matrix(5, &mut rng);
        match eigenvalues(&a) {
            Ok(ev) => {
                let d = multiset_distance(&ev, &polynomial_roots(&characteristic_polynomial(&a)));
                worst = worst.max(d);
                check(d < 1e-8, &mut failures, format!("matrix {k}: distance {d:.2e}"));
            }
            Err(e) => failures.push(format!("matrix {k}: {e}")),
        }
    }

    let spec = PotentialSpec::ix_power(5);
    let coarse = ShootingConfig::default();
    let fine = ShootingConfig { ode_rel_tol: coarse.ode_rel_tol / 10.0, ode_abs_tol: coarse.ode_abs_tol / 10.0, ..coarse };
    let theta = -PI / 14.0;
    let (a, b) = (
        integrate_ray(&spec, 1.164771, theta, &coarse).map_err(|e| e.to_string())?,
        integrate_ray(&spec, 1.164771, theta, &fine).map_err(|e| e.to_string())?,
    );
    let drift = (a.psi / b.psi * (a.log_scale - b.log_scale).exp() - 1.0).norm();
    check(drift < 1e-8, &mut failures, format!("ray refinement drift {drift:.2e}"));

    let h = build_hamiltonian(&spec, &BasisConfig::new(8, 1.0).map_err(|e| e.to_string())?);
    let q = position_element(0, 1, 5, 1.0);
    let entry = (h[(0, 1)].im - q).abs() + h[(0, 1)].re.abs();
    check(entry < 1e-10, &mut failures, format!("H[0,1] off by {entry:.2e}"));

    finish(failures, format!("eigensolver worst {worst:.2e}, ray drift {drift:.2e}, H[0,1] diff {entry:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("closed-form WKB energies", closed_forms),
        ("BB/NM ratios", ratios),
        ("shooting, real-axis wedges", shooting_real_axis),
        ("shooting, off-axis wedges", shooting_off_axis),
        ("oscillator-basis diagonalization", diagonalization),
        ("wedge inequivalence", inequivalence),
        ("cubic wedge coincidence", cubic_coincidence),
        ("Stokes geometry", stokes_geometry),
        ("quantization integral", quantization_property),
        ("harmonic oscillator cross-check", harmonic_cross_check),
        ("oracle suites", oracle_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
