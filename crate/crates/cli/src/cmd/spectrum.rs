use super::pi_fraction;
use crate::args::{RaysArg, Solver, SpectrumArgs};
use crate::table::{Cell, RunManifest, Table};
use crate::{CliError, Report, Status};
use ptspectra::diag::real_spectrum;
use ptspectra::shooting::{find_eigenvalues, SpectrumWarning};
use ptspectra::stokes::{bb_rays, wedge_rays};
use ptspectra::{PotentialSpec, RayPair};
use serde_json::json;
use std::collections::BTreeMap;

pub fn rays_for(spec: &PotentialSpec, rays: RaysArg) -> Result<RayPair, ptspectra::Error> {
    match rays.mode() {
        Some(mode) => wedge_rays(spec, mode),
        None => Ok(bb_rays(spec.degree())),
    }
}

fn describe(w: &SpectrumWarning) -> String {
    match w {
        SpectrumWarning::Unlabeled { value, quantum_number } => {
            format!("root {value} has WKB quantum number {quantum_number:.3}, not near an integer")
        }
        SpectrumWarning::Collision { n, values } => format!("several roots labelled n={n}: {values:?}"),
        SpectrumWarning::Missing { n } => format!("no root found for n={n}"),
    }
}

pub fn run(args: &SpectrumArgs) -> Result<Report, CliError> {
    let spec = args.spec.spec()?;
    match args.solver {
        Solver::Shoot => shoot(args, &spec),
        Solver::Diag => diag(args, &spec),
    }
}

fn shoot(args: &SpectrumArgs, spec: &PotentialSpec) -> Result<Report, CliError> {
    let config = args.shooting_config();
    let rays = rays_for(spec, args.rays)?;
    let result = find_eigenvalues(spec, rays, args.nmax, &config)?;
    let max_den = 4 * (spec.degree() as i64 + 2);
    let (right_pi, left_pi) = (pi_fraction(rays.theta_right, max_den), pi_fraction(rays.theta_left, max_den));

    let mut status: BTreeMap<usize, &str> = BTreeMap::new();
    let mut extra = Vec::new();
    for w in &result.warnings {
        match w {
            SpectrumWarning::Missing { n } => {
                status.insert(*n, "missing");
            }
            SpectrumWarning::Collision { n, .. } => {
                status.insert(*n, "collision");
            }
            SpectrumWarning::Unlabeled { value, .. } => extra.push(*value),
        }
    }

    let mut table = Table::new(&[
        "n",
        "E",
        "err_estimate",
        "method",
        "status",
        "theta_right",
        "theta_right_pi",
        "theta_left",
        "theta_left_pi",
    ]);
    let ray_cells = || -> Vec<Cell> {
        vec![rays.theta_right.into(), right_pi.clone().into(), rays.theta_left.into(), left_pi.clone().into()]
    };
    for n in 0..=args.nmax {
        let level = result.levels.iter().find(|l| l.n == n);
        let mut row: Vec<Cell> = vec![
            n.into(),
            level.map(|l| l.value).into(),
            level.map(|l| l.err_estimate).into(),
            "shooting".into(),
            status.get(&n).copied().unwrap_or("ok").into(),
        ];
        row.extend(ray_cells());
        table.push(row);
    }
    for value in extra {
        let mut row: Vec<Cell> = vec![Cell::Empty, value.into(), Cell::Empty, "shooting".into(), "unlabeled".into()];
        row.extend(ray_cells());
        table.push(row);
    }

    let mut manifest = RunManifest::new(json!({
        "solver": "shoot",
        "spec": spec,
        "rays": rays,
        "nmax": args.nmax,
        "config": config,
        "scan_points": result.scan_points,
        "digits": args.out.digits,
    }));
    manifest.warnings = result.warnings.iter().map(describe).collect();
    let status = if result.warnings.is_empty() { Status::Ok } else { Status::Warnings };
    Ok(Report { table, manifest, svg: None, status })
}

fn diag(args: &SpectrumArgs, spec: &PotentialSpec) -> Result<Report, CliError> {
    let config = args.diag_config();
    let result = real_spectrum(spec, &args.sizes, &config, args.nmax)?;
    let mut table = Table::new(&["n", "E", "err_estimate", "method", "status"]);
    let mut warnings = Vec::new();
    for n in 0..=args.nmax {
        if let Some(l) = result.level(n) {
            table.push(vec![n.into(), l.value.into(), l.err_estimate.into(), "diagonalization".into(), "ok".into()]);
        } else {
            let u = result.unstable.iter().find(|u| u.n == n);
            let value = u.and_then(|u| u.value);
            let change = u.and_then(|u| u.change);
            let flag = if value.is_some() { "unstable" } else { "missing" };
            warnings.push(match change {
                Some(c) => format!("n={n} did not stabilise (last change {c:e})"),
                None => format!("n={n} has no real eigenvalue at every size"),
            });
            table.push(vec![n.into(), value.into(), change.into(), "diagonalization".into(), flag.into()]);
        }
    }
    let mut manifest = RunManifest::new(json!({
        "solver": "diag",
        "spec": spec,
        "sizes": args.sizes,
        "nmax": args.nmax,
        "config": config,
        "digits": args.out.digits,
    }));
    let status = if warnings.is_empty() { Status::Ok } else { Status::Warnings };
    manifest.warnings = warnings;
    Ok(Report { table, manifest, svg: None, status })
}
