//! Published reference values for `(ix)^5` and its off-axis partner.

/// Off-axis wedges, high-precision values.
pub const OFF_AXIS: [f64; 4] = [1.9082645781707777, 8.587220836207222, 17.710809011731145, 28.595103311735975];

pub const BB: [f64; 4] = [1.771244715, 8.509035978, 17.65253759, 28.54706617];

/// Oscillator-basis diagonalization.
pub const DM: [f64; 11] = [
    1.16477040794341,
    4.36378436771211,
    8.95516699824067,
    14.4177548302741,
    20.6101375100489,
    27.4284077210062,
    34.8037156407346,
    42.6845638108818,
    51.030837828189,
    59.81014759020,
    68.9956534721,
];

/// Integration along anti-Stokes lines, six decimals.
pub const NI: [f64; 11] = [
    1.164771, 4.363785, 8.955167, 14.417755, 20.610138, 27.428408, 34.803715, 42.684564, 51.030837, 59.810150, 68.995644,
];

pub const NM: [f64; 11] = [
    0.8906863480,
    4.278845331,
    8.876737420,
    14.35514917,
    20.55551587,
    27.37969662,
    34.75941365,
    42.64372812,
    50.99281286,
    59.77445901,
    68.96194510,
];

/// Line sets drawn for `(ix)^5` and `-(ix)^5`: (label, negative sign,
/// numerators over 14).
pub const LINE_SETS: [(&str, bool, [i64; 6]); 4] = [
    ("(ix)^5 A", false, [1, 13, 15, 17, 25, 27]),
    ("(ix)^5 B", false, [1, 3, 5, 9, 11, 13]),
    ("-(ix)^5 A", true, [15, 17, 19, 23, 25, 27]),
    ("-(ix)^5 B", true, [1, 3, 11, 13, 15, 27]),
];
