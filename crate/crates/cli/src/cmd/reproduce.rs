use crate::args::{RaysArg, ReproduceArgs, Target};
use crate::reference::{BB, DM, LINE_SETS, NI, NM, OFF_AXIS};
use crate::table::{Cell, RunManifest, Table};
use crate::{CliError, Report, Status};
use ptspectra::diag::{real_spectrum, DiagConfig};
use ptspectra::shooting::{find_eigenvalues, ShootingConfig};
use ptspectra::stokes::{asymptotic_lines, format_pi_fraction, LineKind};
use ptspectra::wkb::{energy_bb, energy_nm};
use ptspectra::PotentialSpec;
use serde_json::json;

#[derive(Clone, Copy)]
enum Tol {
    Abs(f64),
    Rel(f64),
}

struct Comparison {
    table: Table,
    failures: Vec<String>,
}

impl Comparison {
    fn new() -> Self {
        Self {
            table: Table::new(&["quantity", "n", "computed", "reference", "abs_dev", "rel_dev", "tolerance", "tol_kind", "pass"]),
            failures: Vec::new(),
        }
    }

    fn compare(&mut self, quantity: &str, n: usize, computed: Option<f64>, reference: f64, tol: Tol) {
        let (limit, kind) = match tol {
            Tol::Abs(t) => (t, "abs"),
            Tol::Rel(t) => (t, "rel"),
        };
        let (abs_dev, rel_dev) = match computed {
            Some(v) => (Some((v - reference).abs()), Some((v - reference).abs() / reference.abs())),
            None => (None, None),
        };
        let pass = match tol {
            Tol::Abs(_) => abs_dev.is_some_and(|d| d < limit),
            Tol::Rel(_) => rel_dev.is_some_and(|d| d < limit),
        };
        if !pass {
            self.failures.push(format!("{quantity} n={n}: computed {computed:?}, reference {reference}"));
        }
        self.table.push(vec![
            quantity.into(),
            n.into(),
            computed.into(),
            reference.into(),
            abs_dev.into(),
            rel_dev.into(),
            limit.into(),
            kind.into(),
            pass.into(),
        ]);
    }
}

fn shooting_levels(spec: &PotentialSpec, rays: RaysArg, n_max: usize) -> Result<Vec<Option<f64>>, CliError> {
    let pair = super::spectrum::rays_for(spec, rays)?;
    let s = find_eigenvalues(spec, pair, n_max, &ShootingConfig::default())?;
    Ok((0..=n_max).map(|n| s.levels.iter().find(|l| l.n == n).map(|l| l.value)).collect())
}

fn table1(r: &mut Comparison) -> Result<(), CliError> {
    for (n, &e) in BB.iter().enumerate() {
        r.compare("wkb-bb", n, Some(energy_bb(n, 2)), e, Tol::Rel(5e-9));
    }
    let shot = shooting_levels(&PotentialSpec::ix_power(5), RaysArg::OffAxis, 3)?;
    for (n, &e) in OFF_AXIS.iter().enumerate() {
        r.compare("shooting-off-axis", n, shot[n], e, Tol::Rel(1e-6));
    }
    Ok(())
}

fn table2(r: &mut Comparison) -> Result<(), CliError> {
    for (n, &e) in NM.iter().enumerate() {
        r.compare("wkb-nm", n, Some(energy_nm(n, 2)), e, Tol::Rel(5e-9));
    }
    let spec = PotentialSpec::ix_power(5);
    let shot = shooting_levels(&spec, RaysArg::ContainsRealAxis, 10)?;
    for (n, &e) in NI.iter().enumerate() {
        r.compare("shooting-real-axis", n, shot[n], e, Tol::Abs(2e-5));
    }
    let diag = real_spectrum(&spec, &[80, 120, 160, 200], &DiagConfig::default(), 10)?;
    for (n, &e) in DM.iter().enumerate() {
        let tol = match n {
            0..=3 => 1e-7,
            4..=8 => 1e-5,
            _ => 1e-4,
        };
        r.compare("diagonalization", n, diag.largest_size_value(n), e, Tol::Rel(tol));
    }
    Ok(())
}

fn figures(r: &mut Comparison) {
    r.table = Table::new(&["set", "angle_pi", "kind", "pass"]);
    for (label, negative, numerators) in LINE_SETS {
        let spec = if negative { PotentialSpec::neg_ix_power(5) } else { PotentialSpec::ix_power(5) };
        let d = asymptotic_lines(&spec);
        let kinds: Vec<Option<LineKind>> = numerators.iter().map(|&p| d.classify(p, 14)).collect();
        let anti = kinds.iter().filter(|k| **k == Some(LineKind::AntiStokes)).count();
        let set_ok = anti == 2 && kinds.iter().all(Option::is_some);
        if !set_ok {
            r.failures.push(format!("{label}: {anti} anti-Stokes lines, kinds {kinds:?}"));
        }
        for (&p, kind) in numerators.iter().zip(&kinds) {
            let g = gcd(p, 14);
            let kind: Cell = kind.map(|k| k.to_string()).into();
            r.table.push(vec![label.into(), format_pi_fraction(p / g, 14 / g).into(), kind, set_ok.into()]);
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn run(args: &ReproduceArgs) -> Result<Report, CliError> {
    let mut r = Comparison::new();
    let name = match args.target {
        Target::Table1 => {
            table1(&mut r)?;
            "table1"
        }
        Target::Table2 => {
            table2(&mut r)?;
            "table2"
        }
        Target::Figures => {
            figures(&mut r);
            "figures"
        }
    };
    for f in &r.failures {
        eprintln!("FAIL {f}");
    }
    let status = if r.failures.is_empty() { Status::Ok } else { Status::Failed };
    let mut manifest = RunManifest::new(json!({ "target": name, "digits": args.out.digits }));
    manifest.warnings = r.failures;
    Ok(Report { table: r.table, manifest, svg: None, status })
}
