use super::pi_fraction;
use crate::args::StokesArgs;
use crate::svg;
use crate::table::{Cell, RunManifest, Table};
use crate::{CliError, Report, Status, UsageError};
use ptspectra::stokes::{all_turning_points, asymptotic_lines, trace_line, LineKind, Polyline};
use serde_json::json;

pub fn run(args: &StokesArgs) -> Result<Report, CliError> {
    let spec = args.spec.spec()?;
    let diagram = asymptotic_lines(&spec);
    let max_den = 4 * (spec.degree() as i64 + 2);

    let mut table = Table::new(&[
        "record",
        "kind",
        "angle",
        "angle_pi",
        "line",
        "turning_point",
        "branch",
        "index",
        "re",
        "im",
    ]);
    for line in &diagram.lines {
        let mut row: Vec<Cell> =
            vec!["asymptote".into(), line.kind.to_string().into(), line.angle.into(), pi_fraction(line.angle, max_den).into()];
        row.extend(std::iter::repeat_n(Cell::Empty, 6));
        table.push(row);
    }

    let mut warnings = Vec::new();
    let mut traced: Vec<Polyline> = Vec::new();
    let mut starts = Vec::new();
    if args.trace {
        let energy = match args.energy {
            Some(e) if e > 0.0 => e,
            _ => return Err(UsageError("--trace needs a positive --E".into()).into()),
        };
        if spec.b != 0.0 {
            return Err(UsageError("tracing is only available for b = 0".into()).into());
        }
        if args.arc.is_nan() || args.arc <= 0.0 {
            return Err(UsageError("--arc must be positive".into()).into());
        }
        starts = all_turning_points(&spec, energy)?;
        let arc = args.arc * energy.powf(1.0 / spec.degree() as f64);
        for (j, &start) in starts.iter().enumerate() {
            for kind in [LineKind::AntiStokes, LineKind::Stokes] {
                for branch in 0..3 {
                    match trace_line(&spec, energy, start, kind, branch, arc) {
                        Ok(poly) => {
                            let id = traced.len();
                            for (i, z) in poly.points.iter().enumerate() {
                                table.push(vec![
                                    "point".into(),
                                    kind.to_string().into(),
                                    Cell::Empty,
                                    Cell::Empty,
                                    id.into(),
                                    j.into(),
                                    branch.into(),
                                    i.into(),
                                    z.re.into(),
                                    z.im.into(),
                                ]);
                            }
                            traced.push(poly);
                        }
                        Err(e) => warnings.push(format!("turning point {j}, {kind} branch {branch}: {e}")),
                    }
                }
            }
        }
    }

    let svg = svg::render(&diagram, &traced, &starts);
    let mut manifest = RunManifest::new(json!({
        "spec": spec,
        "trace": args.trace,
        "E": args.energy,
        "arc": args.arc,
        "digits": args.out.digits,
    }));
    manifest.warnings = warnings;
    Ok(Report { table, manifest, svg: Some(svg), status: Status::Ok })
}
