//! Dilogarithm and the 10-dimensional X-state separability function.

use crate::Error;

const PI_SQ_OVER_6: f64 = 1.6449340668482264365;

/// Li2 by direct series, valid (and fast) for |x| <= 1/2.
fn dilog_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut n = 1u32;
    while term.abs() > 1e-17 * sum.abs().max(1e-300) && n < 200 {
        n += 1;
        term *= x;
        sum += term / (n * n) as f64;
    }
    sum
}

/// Li2(x) = sum x^n / n^2 on [-1, 1], to 1e-14 absolute.
///
/// Arguments outside [-1/2, 1/2] reduce via the x -> 1-x reflection and the
/// Landen x -> x/(x-1) identity so the series only ever runs well inside its
/// disk of fast convergence.
pub fn dilog(x: f64) -> Result<f64, Error> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain("dilog argument must lie in [-1, 1]"));
    }
    if x == 1.0 {
        return Ok(PI_SQ_OVER_6);
    }
    if x == -1.0 {
        return Ok(-PI_SQ_OVER_6 / 2.0);
    }
    if x.abs() <= 0.5 {
        return Ok(dilog_series(x));
    }
    if x > 0.5 {
        // Li2(x) = pi^2/6 - ln(x) ln(1-x) - Li2(1-x), with 1-x in [0, 1/2).
        return Ok(PI_SQ_OVER_6 - x.ln() * (1.0 - x).ln() - dilog_series(1.0 - x));
    }
    // x in [-1, -1/2): Landen, Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2,
    // with x/(x-1) in (1/3, 1/2].
    let y = x / (x - 1.0);
    let l = (1.0 - x).ln();
    Ok(-dilog_series(y) - 0.5 * l * l)
}

/// (1 + eps^2) atanh(eps) - eps, stable for small eps where the naive form
/// cancels to noise. Series: (1+e^2) sum e^(2k+1)/(2k+1) - e
///   = 4/3 e^3 + sum_{k>=2} 4k/(4k^2-1) e^(2k+1).
fn atanh_combination(eps: f64) -> f64 {
    if eps >= 0.25 {
        return (1.0 + eps * eps) * eps.atanh() - eps;
    }
    let e2 = eps * eps;
    let mut pow = eps * e2; // eps^3
    let mut sum = 4.0 / 3.0 * pow;
    let mut k = 2.0f64;
    loop {
        pow *= e2;
        let add = 4.0 * k / (4.0 * k * k - 1.0) * pow;
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            return sum;
        }
        k += 1.0;
    }
}

/// The 10-dimensional X-state separability function
///
///   f(eps) = 2 [ eps^2 (4 Li2(eps) - Li2(eps^2))
///                - eps^4 atanh(eps) + eps^3 - eps + atanh(eps) ]
///            / (pi^2 eps^2),
///
/// continuous with f(1) = 1 (the atanh divergence cancels against the
/// 1 - eps^4 factor; the combination is evaluated in factored form so no
/// cancellation survives near either endpoint).
pub fn sep_function_10d(eps: f64) -> Result<f64, Error> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Domain("sep_function_10d needs eps in (0, 1]"));
    }
    if 1.0 - eps < 1e-12 {
        return Ok(1.0);
    }
    // -e^4 atanh + e^3 - e + atanh = (1-e^2)[(1+e^2) atanh(e) - e]
    let poly_part = (1.0 - eps * eps) * atanh_combination(eps);
    let dilog_part = eps * eps * (4.0 * dilog(eps)? - dilog(eps * eps)?);
    Ok(2.0 * (dilog_part + poly_part) / (std::f64::consts::PI.powi(2) * eps * eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilog_special_values() {
        assert_eq!(dilog(0.0).unwrap(), 0.0);
        assert!((dilog(1.0).unwrap() - PI_SQ_OVER_6).abs() < 1e-15);
        // Li2(1/2) = pi^2/12 - ln^2(2)/2.
        let want = PI_SQ_OVER_6 / 2.0 - 0.5 * std::f64::consts::LN_2.powi(2);
        assert!((dilog(0.5).unwrap() - want).abs() < 1e-15);
        assert!((dilog(-1.0).unwrap() + PI_SQ_OVER_6 / 2.0).abs() < 1e-15);
        assert!(dilog(1.5).is_err());
    }

    #[test]
    fn dilog_against_series_oracle_inside_disk() {
        // Richardson-style check: compare the reduced evaluation against the
        // raw series where the raw series itself is trustworthy.
        for x in [0.6, 0.75, 0.9, -0.6, -0.8, -0.95] {
            // Raw series at |x|<1 converges like x^n/n^2; push it far enough
            // to be an oracle at ~1e-13.
            let mut term: f64 = x;
            let mut sum: f64 = x;
            for n in 2..4_000u32 {
                term *= x;
                sum += term / (n * n) as f64;
                if term.abs() < 1e-16 {
                    break;
                }
            }
            let got = dilog(x).unwrap();
            assert!((got - sum).abs() < 1e-13, "x={x}: {got} vs {sum}");
        }
    }

    #[test]
    fn sep_function_reference_values() {
        // Frozen from 25-digit evaluation of the closed form.
        for (eps, want) in [
            (0.1, 0.10800381669377656),
            (0.5, 0.531167694571569056),
            (0.9, 0.915477793959738119),
        ] {
            let got = sep_function_10d(eps).unwrap();
            assert!((got - want).abs() < 1e-13, "eps={eps}: {got} vs {want}");
        }
    }

    #[test]
    fn sep_function_limits_and_domain() {
        assert_eq!(sep_function_10d(1.0).unwrap(), 1.0);
        assert!(sep_function_10d(0.0).is_err());
        assert!(sep_function_10d(1.5).is_err());
        // tiny eps: linear leading behavior 32 eps / (3 pi^2), no blowup
        let tiny = sep_function_10d(1e-8).unwrap();
        let slope = 32.0 / (3.0 * std::f64::consts::PI.powi(2));
        assert!((tiny / 1e-8 - slope).abs() < 1e-6, "{tiny}");
    }

    #[test]
    fn sep_function_monotone_on_grid() {
        let mut prev = 0.0;
        for i in 1..=99 {
            let v = sep_function_10d(i as f64 / 100.0).unwrap();
            assert!(v > prev, "i={i}");
            prev = v;
        }
    }

    #[test]
    fn matches_chi_master_d1() {
        for eps in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let a = sep_function_10d(eps).unwrap();
            let b = crate::exact::hyp::chi_master(1.0, eps).unwrap();
            assert!((a - b).abs() < 1e-8, "eps={eps}: {a} vs {b}");
        }
    }

    #[test]
    fn atanh_combination_seam() {
        // Series branch and direct branch agree across the switch.
        for eps in [0.2499, 0.25, 0.2501] {
            let series = {
                let e2: f64 = eps * eps;
                let mut pow = eps * e2;
                let mut sum = 4.0 / 3.0 * pow;
                for k in 2..60u32 {
                    pow *= e2;
                    sum += 4.0 * k as f64 / (4.0 * (k * k) as f64 - 1.0) * pow;
                }
                sum
            };
            let direct = (1.0 + eps * eps) * f64::atanh(eps) - eps;
            assert!((series - direct).abs() < 1e-15, "eps={eps}");
        }
    }
}
