//! Gamma function on the real line.
//!
//! Integer and half-integer arguments (the only ones the separability
//! formulas actually hit) go through exact product formulas; everything else
//! falls back to a Lanczos approximation (g = 7, 9 terms) with reflection
//! for the left half-plane.

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const SQRT_PI: f64 = 1.7724538509055160273;

fn lanczos(z: f64) -> f64 {
    if z < 0.5 {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        std::f64::consts::PI / ((std::f64::consts::PI * z).sin() * lanczos(1.0 - z))
    } else {
        let z = z - 1.0;
        let mut x = LANCZOS_COEF[0];
        for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            x += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * x
    }
}

/// Gamma(x) for real x (poles at non-positive integers return infinity).
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x == x.floor() && x <= 170.0 {
        // Gamma(n) = (n-1)!
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return acc;
    }
    if (x - 0.5) == (x - 0.5).floor() && (0.5..=170.5).contains(&x) {
        // Gamma(n + 1/2) = (2n-1)!! sqrt(pi) / 2^n
        let mut acc = SQRT_PI;
        let mut k = 0.5;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return acc;
    }
    lanczos(x)
}
