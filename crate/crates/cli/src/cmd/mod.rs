pub mod reproduce;
pub mod spectrum;
pub mod stokes;
pub mod wkb;

use ptspectra::stokes::format_pi_fraction;
use std::f64::consts::PI;

/// `angle` as a reduced multiple of pi when the denominator is at most
/// `max_den`.
pub fn pi_fraction(angle: f64, max_den: i64) -> Option<String> {
    let turns = angle / PI;
    (1..=max_den).find_map(|q| {
        let p = (turns * q as f64).round();
        ((turns * q as f64 - p).abs() < 1e-9).then(|| format_pi_fraction(p as i64, q))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(pi_fraction(17.0 * PI / 14.0, 28).as_deref(), Some("17pi/14"));
        assert_eq!(pi_fraction(PI / 2.0, 8).as_deref(), Some("pi/2"));
        assert_eq!(pi_fraction(0.0, 8).as_deref(), Some("0"));
        assert_eq!(pi_fraction(1.0, 28), None);
    }
}
