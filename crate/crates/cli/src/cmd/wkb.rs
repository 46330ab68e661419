use crate::args::{WkbArgs, WkbMethod};
use crate::table::{RunManifest, Table};
use crate::{Report, Status, UsageError};
use ptspectra::wkb::{energy_bb, energy_general, energy_nm};
use ptspectra::Method;
use serde_json::json;

pub fn run(args: &WkbArgs) -> Result<Report, UsageError> {
    let energy: Box<dyn Fn(usize) -> f64> = match (args.method, args.big_n, args.m, args.epsilon) {
        (WkbMethod::Bb | WkbMethod::Nm, Some(big_n), None, None) => {
            if big_n == 0 {
                return Err(UsageError("--N must be at least 1".into()));
            }
            if args.method == WkbMethod::Bb {
                Box::new(move |n| energy_bb(n, big_n))
            } else {
                Box::new(move |n| energy_nm(n, big_n))
            }
        }
        (WkbMethod::General, None, Some(m), eps) => {
            let eps = eps.unwrap_or(0);
            if m == 0 {
                return Err(UsageError("the general formula needs --M >= 1".into()));
            }
            Box::new(move |n| energy_general(n, m, eps))
        }
        (WkbMethod::General, ..) => return Err(UsageError("--method general takes --M and --epsilon".into())),
        _ => return Err(UsageError("--method bb and nm take --N only".into())),
    };
    let method = match args.method {
        WkbMethod::Bb => Method::WkbBb,
        WkbMethod::Nm => Method::WkbNm,
        WkbMethod::General => Method::WkbGeneral,
    };
    let mut table = Table::new(&["n", "E", "method"]);
    for n in args.n.clone() {
        table.push(vec![n.into(), energy(n).into(), method.to_string().into()]);
    }
    let manifest = RunManifest::new(json!({
        "method": method.to_string(),
        "N": args.big_n,
        "M": args.m,
        "epsilon": args.epsilon,
        "n": [args.n.start(), args.n.end()],
        "digits": args.out.digits,
    }));
    Ok(Report { table, manifest, svg: None, status: Status::Ok })
}
