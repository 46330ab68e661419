use serde::{Deserialize, Serialize};
use std::fmt;

/// Route that produced an energy level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    WkbBb,
    WkbNm,
    WkbGeneral,
    Shooting,
    Diagonalization,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::WkbBb => "wkb-bb",
            Method::WkbNm => "wkb-nm",
            Method::WkbGeneral => "wkb-general",
            Method::Shooting => "shooting",
            Method::Diagonalization => "diagonalization",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub n: usize,
    pub value: f64,
    pub method: Method,
    pub err_estimate: f64,
}

impl EnergyLevel {
    pub fn exact(n: usize, value: f64, method: Method) -> Self {
        Self { n, value, method, err_estimate: 0.0 }
    }
}
