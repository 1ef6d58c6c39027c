//! Gamma function via a Lanczos-type rational approximation.

use std::f64::consts::PI;

// Lanczos coefficients for g = 607/128, 15 terms (Godfrey's set).
// Relative accuracy is ~1e-15 over the positive axis, comfortably inside
// the 1e-13 target on [-10, 50].
const LANCZOS_G: f64 = 4.742_187_5;
#[allow(clippy::excessive_precision)]
const LANCZOS_C: [f64; 15] = [
    0.999_999_999_999_997_092,
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_2,
    -0.491_913_816_097_620_200,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_757e-4,
    -0.983_744_753_048_795_647e-4,
    0.158_088_703_224_912_489e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_227e-5,
];

fn lanczos_sum(x: f64) -> f64 {
    let mut s = LANCZOS_C[0];
    for (k, c) in LANCZOS_C.iter().enumerate().skip(1) {
        s += c / (x + k as f64);
    }
    s
}

/// sin(pi x) with the argument reduced exactly against the integers,
/// so the reflection formula keeps full precision at large |x|.
fn sin_pi(x: f64) -> f64 {
    let n = x.floor();
    let r = x - n;
    let s = if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        -(PI * (r - 1.0)).sin()
    };
    // floor parity flips the sign
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// Gamma function for real arguments.
///
/// Poles at non-positive integers return NaN. Arguments beyond ~171.6
/// overflow to +inf.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        // reflection
        return PI / (sin_pi(x) * gamma(1.0 - x));
    }
    let z = x - 1.0;
    let base = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * base.powf(z + 0.5) * (-base).exp() * lanczos_sum(z)
}

/// Natural log of |Gamma(x)| for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument");
    if x < 0.5 {
        return PI.ln() - sin_pi(x).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let base = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * base.ln() - base + lanczos_sum(z).ln()
}
