//! Generalized hypergeometric series and the separability-probability
//! formulas built from them.
//!
//! Inside the unit disk the series is summed directly. At z = 1 the cases
//! that matter here have parameter excess exactly 1/2, so the terms decay
//! like n^(-3/2) and partial sums converge like n^(-1/2) — hopeless to sum
//! directly. Those go through a Levin u-transformation of the partial sums;
//! the extrapolation triangle is run in double-double arithmetic because in
//! plain f64 it bottoms out near 1e-9 before roundoff noise takes over.

use crate::dd::Dd;
use crate::exact::gamma::gamma;
use crate::Error;

/// Parameters of a (possibly regularized) pFq evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSeriesParams {
    pub top: Vec<f64>,
    pub bottom: Vec<f64>,
    pub z: f64,
    /// Regularized form divides each term by prod_j Gamma(bottom_j + n).
    pub regularized: bool,
}

fn leading_term(params: &HypSeriesParams) -> f64 {
    if params.regularized {
        params
            .bottom
            .iter()
            .map(|&b| gamma(b))
            .product::<f64>()
            .recip()
    } else {
        1.0
    }
}

/// Does some top parameter truncate the series to a polynomial?
fn is_terminating(top: &[f64]) -> bool {
    top.iter().any(|&a| a <= 0.0 && a == a.floor())
}

fn sum_directly(params: &HypSeriesParams, tol: f64) -> Result<f64, Error> {
    let mut term = leading_term(params);
    let mut sum = term;
    for n in 0..1_000_000u64 {
        let nf = n as f64;
        let mut ratio = params.z / (nf + 1.0);
        for &a in &params.top {
            ratio *= a + nf;
        }
        for &b in &params.bottom {
            ratio /= b + nf;
        }
        term *= ratio;
        if term == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if term.abs() < tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(
        "hypergeometric series (direct summation)",
    ))
}

/// Levin u-transform of the partial sums of `terms`, in double-double.
///
/// Returns the extrapolated limit once consecutive diagonal estimates agree
/// to `tol` relative, or the most stable estimate seen if that is at least
/// as tight; errors out otherwise.
fn levin_u_limit(terms: &[Dd], tol: f64) -> Result<f64, Error> {
    let beta = 1.0;
    let m = terms.len();
    let mut num: Vec<Dd> = Vec::with_capacity(m);
    let mut den: Vec<Dd> = Vec::with_capacity(m);
    let mut partial = Dd::ZERO;
    for (n, &t) in terms.iter().enumerate() {
        partial = partial.add(t);
        let omega = Dd::from_f64(beta + n as f64).mul(t);
        if omega.hi == 0.0 {
            return Err(Error::NonConvergence("Levin remainder estimate vanished"));
        }
        den.push(Dd::ONE.div(omega));
        num.push(partial.div(omega));
    }

    let mut best = f64::NAN;
    let mut best_delta = f64::INFINITY;
    let mut prev = f64::NAN;
    // Column-by-column: after building column k the estimate is
    // num[0]/den[0] of that column.
    for k in 0..m - 1 {
        let rows = m - k - 1;
        for n in 0..rows {
            let bn = beta + n as f64;
            // c = (b+n)(b+n+k)^(k-1) / (b+n+k+1)^k
            let c = Dd::from_f64(bn)
                .mul(Dd::from_f64(bn + k as f64).powi_signed(k as i64 - 1))
                .mul(Dd::from_f64(bn + k as f64 + 1.0).powi_signed(-(k as i64)));
            num[n] = num[n + 1].sub(c.mul(num[n]));
            den[n] = den[n + 1].sub(c.mul(den[n]));
        }
        num.truncate(rows);
        den.truncate(rows);
        if den[0].hi == 0.0 {
            continue;
        }
        let est = num[0].div(den[0]).to_f64();
        let delta = (est - prev).abs();
        if k >= 2 {
            if delta <= tol * est.abs().max(1e-300) {
                return Ok(est);
            }
            if delta < best_delta {
                best_delta = delta;
                best = est;
            }
        }
        prev = est;
    }
    if best_delta <= tol * best.abs().max(1e-300) {
        Ok(best)
    } else {
        Err(Error::NonConvergence("Levin-accelerated series"))
    }
}

impl Dd {
    /// Signed integer power (negative exponents via reciprocal).
    fn powi_signed(self, n: i64) -> Dd {
        if n >= 0 {
            self.powi(n as u64)
        } else {
            Dd::ONE.div(self.powi((-n) as u64))
        }
    }
}

fn sum_at_unit_argument(params: &HypSeriesParams, tol: f64) -> Result<f64, Error> {
    let excess: f64 = params.bottom.iter().sum::<f64>() - params.top.iter().sum::<f64>();
    if excess <= 0.0 {
        return Err(Error::Domain(
            "series at z = 1 requires positive parameter excess",
        ));
    }
    // Terms via the ratio recurrence, carried in double-double. The leading
    // term is an overall scale and may safely be f64.
    const TERMS: usize = 48;
    let mut terms = Vec::with_capacity(TERMS);
    let mut t = Dd::from_f64(leading_term(params));
    for n in 0..TERMS {
        terms.push(t);
        let nf = n as f64;
        let mut numer = Dd::ONE;
        for &a in &params.top {
            numer = numer.mul(Dd::from_f64(a + nf));
        }
        let mut denom = Dd::from_f64(nf + 1.0);
        for &b in &params.bottom {
            denom = denom.mul(Dd::from_f64(b + nf));
        }
        t = t.mul(numer).div(denom);
    }
    levin_u_limit(&terms, tol)
}

/// Evaluate the series to relative tolerance `tol`.
///
/// |z| < 1 (or a terminating series) sums directly; z = 1 with positive
/// parameter excess goes through Levin acceleration. Divergent input is an
/// error, never a silent wrong value.
pub fn hyp_series(params: &HypSeriesParams, tol: f64) -> Result<f64, Error> {
    if params.z.abs() < 1.0 || is_terminating(&params.top) {
        sum_directly(params, tol)
    } else if params.z == 1.0 {
        sum_at_unit_argument(params, tol)
    } else {
        Err(Error::Domain("hypergeometric series diverges for |z| > 1"))
    }
}

/// Hilbert-Schmidt separability/PPT probability of generalized two-qubit
/// states as a function of the Dyson-like parameter alpha (1 real, 2
/// complex, 4 quaternionic):
///
/// P(alpha) = 1 - prefactor(alpha) * 6F~5(...; 1)
///
/// with the regularized 6F5 at unit argument.
pub fn psep_hs(alpha: f64) -> Result<f64, Error> {
    if alpha <= 0.0 {
        return Err(Error::Domain("alpha must be positive"));
    }
    let a = alpha;
    let params = HypSeriesParams {
        top: vec![
            1.0,
            a + 1.5,
            1.25 * a + 1.0,
            (5.0 * a + 6.0) / 4.0,
            1.25 * a + 19.0 / 8.0,
            1.5 * (a + 1.0),
        ],
        bottom: vec![
            (a + 4.0) / 2.0,
            1.25 * a + 11.0 / 8.0,
            (5.0 * a + 7.0) / 4.0,
            (5.0 * a + 9.0) / 4.0,
            2.0 * (a + 1.0),
        ],
        z: 1.0,
        regularized: true,
    };
    let f = hyp_series(&params, 1e-11)?;
    let prefactor = std::f64::consts::PI.sqrt()
        * 2f64.powf(-4.5 * a - 2.5)
        * gamma(1.5 * (a + 1.0))
        * gamma(1.25 * a + 19.0 / 8.0)
        * gamma(2.0 * a + 2.0)
        * gamma(2.5 * a + 2.0)
        / gamma(a);
    Ok(1.0 - prefactor * f)
}

/// The master separability function
///
/// chi_d(eps) = eps^d Gamma(d+1)^3 3F~2(-d/2, d/2, d; d/2+1, 3d/2+1; eps^2)
///              / Gamma(d/2+1)^2
///
/// normalized so chi_d(1) = 1 (returned exactly at eps = 1, where the
/// non-terminating series cases converge too slowly to be worth summing).
pub fn chi_master(d: f64, eps: f64) -> Result<f64, Error> {
    if d <= 0.0 {
        return Err(Error::Domain("d must be positive"));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Domain("eps must lie in [0, 1]"));
    }
    if eps == 0.0 {
        return Ok(0.0);
    }
    if eps == 1.0 {
        return Ok(1.0);
    }
    let params = HypSeriesParams {
        top: vec![-d / 2.0, d / 2.0, d],
        bottom: vec![d / 2.0 + 1.0, 1.5 * d + 1.0],
        z: eps * eps,
        regularized: true,
    };
    let f = hyp_series(&params, 1e-15)?;
    Ok(eps.powf(d) * gamma(d + 1.0).powi(3) * f / gamma(d / 2.0 + 1.0).powi(2))
}

/// Closed-form induced-measure separability functions chi_{d,k}(z) for
/// d in {2, 4, 6}, polynomial in z (= eps^2).
pub fn chi_dk(d: u32, k: u32, z: f64) -> Result<f64, Error> {
    let kf = k as f64;
    let om = (1.0 - z).powi(k as i32 + 1);
    match d {
        2 => Ok(1.0 + om * (-1.0 + z / (kf + 3.0))),
        4 => Ok(1.0
            + om * (-1.0 - (kf + 1.0) * z
                + 2.0 * (2.0 * kf * kf + 14.0 * kf + 21.0) / ((kf + 5.0) * (kf + 6.0)) * z * z
                - 6.0 * (kf + 3.0) / ((kf + 6.0) * (kf + 7.0)) * z * z * z)),
        6 => {
            let z2 = z * z;
            let z3 = z2 * z;
            let z4 = z2 * z2;
            let z5 = z4 * z;
            Ok(1.0
                + om * (-1.0 - (kf + 1.0) * z - (kf + 1.0) * (kf + 2.0) / 2.0 * z2
                    + 3.0
                        * (3.0 * kf.powi(4)
                            + 60.0 * kf.powi(3)
                            + 432.0 * kf * kf
                            + 1230.0 * kf
                            + 1264.0)
                        / (2.0 * (kf + 7.0) * (kf + 8.0) * (kf + 9.0))
                        * z3
                    - 6.0 * (kf + 4.0) * (3.0 * kf * kf + 33.0 * kf + 80.0)
                        / ((kf + 8.0) * (kf + 9.0) * (kf + 10.0))
                        * z4
                    + 30.0 * (kf + 4.0) * (kf + 5.0) / ((kf + 9.0) * (kf + 10.0) * (kf + 11.0))
                        * z5))
        }
        _ => Err(Error::Domain("chi_dk supports d in {2, 4, 6}")),
    }
}
