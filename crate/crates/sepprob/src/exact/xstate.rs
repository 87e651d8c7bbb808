//! Numerical verification of the X-state integral identities.
//!
//! Two one-parameter families of integrals over eta in (0, 1) share a common
//! kernel with a removable 0/0 singularity at eta = 1 (the numerator
//! vanishes to 5th respectively 7th order against (eta-1)^5 and (eta-1)^7).
//! Direct evaluation there loses every digit, so for |eta - 1| < 0.4 the
//! kernels switch to frozen 48-term Taylor expansions (exact rational
//! coefficients evaluated once to f64); outside the branch the cancellation
//! is at most ~5 digits, below the quadrature's noise floor.

use crate::exact::dilog::sep_function_10d;
use crate::exact::quad::tanh_sinh;
use crate::Error;

const PI: f64 = std::f64::consts::PI;
const REL_TOL: f64 = 1e-8;

// g(1+t)/t^5 with g = -3 eta^2 + (eta+4) eta ln(eta) + ln(eta) + 3.
const XSTATE8_TAYLOR: [f64; 48] = [
    0.03333333333333333333,
    -0.05,
    0.05714285714285714286,
    -0.05952380952380952381,
    0.05952380952380952381,
    -0.05833333333333333333,
    0.05656565656565656566,
    -0.05454545454545454545,
    0.05244755244755244755,
    -0.0503663003663003663,
    0.04835164835164835165,
    -0.04642857142857142857,
    0.04460784313725490196,
    -0.04289215686274509804,
    0.04127966976264189886,
    -0.03976608187134502924,
    0.03834586466165413534,
    -0.03701298701298701299,
    0.03576134010916619612,
    -0.0345849802371541502,
    0.03347826086956521739,
    -0.0324358974358974359,
    0.03145299145299145299,
    -0.03052503052503052503,
    0.02964787447546068236,
    -0.02881773399014778325,
    0.02803114571746384872,
    -0.02728494623655913978,
    0.02657624633431085044,
    -0.02590240641711229947,
    0.02526101349630761395,
    -0.02464985994397759104,
    0.02406692406692406692,
    -0.02351035245772087877,
    0.02297844403107561002,
    -0.02246963562753036437,
    0.02198248905565978737,
    -0.0215156794425087108,
    0.02106798476622639981,
    -0.0206382764522299406,
    0.02022551092318534179,
    -0.01982872200263504611,
    0.01944701408161167643,
    -0.01907955596669750231,
    0.01872557533651758576,
    -0.01838435374149659864,
    0.01805522208883553421,
    -0.01773755656108597285,
];

// h(1+t)/t^7 with h = 3(eta+1)(eta(eta+8)+1) ln(eta) - (eta-1)(eta(11 eta+38)+11).
const XSTATE10_TAYLOR: [f64; 48] = [
    0.02142857142857142857,
    -0.04285714285714285714,
    0.05952380952380952381,
    -0.07142857142857142857,
    0.07954545454545454545,
    -0.08484848484848484848,
    0.08811188811188811189,
    -0.08991008991008991009,
    0.09065934065934065934,
    -0.09065934065934065934,
    0.09012605042016806723,
    -0.08921568627450980392,
    0.08804179566563467492,
    -0.08668730650154798762,
    0.08521303258145363409,
    -0.08366370471633629528,
    0.0820722755505364201,
    -0.08046301524562394128,
    0.07885375494071146245,
    -0.07725752508361204013,
    0.07568376068376068376,
    -0.07413919413919413919,
    0.07262852090438297335,
    -0.07115489874110563766,
    0.06972032416971237883,
    -0.06832591768631813126,
    0.06697214076246334311,
    -0.06565896153182680697,
    0.0643859816653934301,
    -0.06315253374076903489,
    0.06195775607540313423,
    -0.06080065027433448486,
    0.05968012546959915381,
    -0.05859503227924280556,
    0.05754418880221190876,
    -0.05652640042883945323,
    0.05554047483996434649,
    -0.05458523325795021768,
    0.05365951877579784557,
    -0.05276220240830958728,
    0.0518921873685980994,
    -0.05104841196423065063,
    0.05022985142253015915,
    -0.0494355188884064264,
    0.04866446578631452581,
    -0.04791578169729430234,
    0.0471885938700589089,
    -0.0464820664598689016,
];

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// pi * g(eta) / (40320 (eta-1)^5), finite at eta = 1.
pub(crate) fn xstate8_kernel(eta: f64) -> f64 {
    let t = eta - 1.0;
    let core = if t.abs() < 0.4 {
        horner(&XSTATE8_TAYLOR, t)
    } else {
        let l = eta.ln();
        (-3.0 * eta * eta + (eta + 4.0) * eta * l + l + 3.0) / t.powi(5)
    };
    PI * core / 40320.0
}

/// pi * h(eta) / (1209600 (eta-1)^7), finite at eta = 1. Multiplied by eta
/// this is the ten-dimensional reference integrand.
pub(crate) fn xstate10_kernel(eta: f64) -> f64 {
    let t = eta - 1.0;
    let core = if t.abs() < 0.4 {
        horner(&XSTATE10_TAYLOR, t)
    } else {
        let l = eta.ln();
        (3.0 * (eta + 1.0) * (eta * (eta + 8.0) + 1.0) * l
            - (eta - 1.0) * (eta * (11.0 * eta + 38.0) + 11.0))
            / t.powi(7)
    };
    PI * core / 1209600.0
}

/// The preliminary (5x5-minor) separability function inserted for the upper
/// bound: 2 (sqrt((1-eta) eta) + asin(sqrt(eta))) / pi.
pub(crate) fn suboptimal_sep_function(eta: f64) -> f64 {
    2.0 * (((1.0 - eta) * eta).sqrt() + eta.sqrt().asin()) / PI
}

/// One verified identity.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub description: &'static str,
    pub computed: f64,
    pub expected: f64,
    pub rel_err: f64,
    pub pass: bool,
}

/// Outcome of [`verify_xstate_identities`].
#[derive(Debug, Clone)]
pub struct XStateReport {
    pub checks: Vec<IdentityCheck>,
}

impl XStateReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Evaluate the six X-state integral identities at 1e-8 relative tolerance.
///
/// Any identity outside tolerance is flagged in the report (and makes the
/// exact-check CLI exit nonzero); the computed value is always reported next
/// to the target so a mismatch is visible, never silent.
pub fn verify_xstate_identities() -> Result<XStateReport, Error> {
    let quad_tol = 1e-11;

    let i8_num = tanh_sinh(|e| e * xstate8_kernel(e), 0.0, 1.0, quad_tol)?.value;
    let i8_den = tanh_sinh(|e| e.sqrt() * xstate8_kernel(e), 0.0, 1.0, quad_tol)?.value;
    let i10_den = tanh_sinh(|e| e * xstate10_kernel(e), 0.0, 1.0, quad_tol)?.value;
    let i10_subopt = tanh_sinh(
        |e| suboptimal_sep_function(e) * e * xstate10_kernel(e),
        0.0,
        1.0,
        quad_tol,
    )?
    .value;
    let i10_chi = tanh_sinh(
        |e| sep_function_10d(e.sqrt()).unwrap_or(0.0) * e * xstate10_kernel(e),
        0.0,
        1.0,
        quad_tol,
    )?
    .value;

    let mut checks = Vec::new();
    let mut push = |name, description, computed: f64, expected: f64| {
        let rel_err = (computed - expected).abs() / expected.abs();
        checks.push(IdentityCheck {
            name,
            description,
            computed,
            expected,
            rel_err,
            pass: rel_err <= REL_TOL,
        });
    };

    push(
        "eq7_numerator",
        "8-dim numerator integral = pi/967680",
        i8_num,
        PI / 967_680.0,
    );
    push(
        "eq8_denominator",
        "8-dim denominator integral = pi^3/5160960",
        i8_den,
        PI.powi(3) / 5_160_960.0,
    );
    push(
        "xstate8_ratio",
        "8-dim ratio = 16/(3 pi^2)",
        i8_num / i8_den,
        16.0 / (3.0 * PI * PI),
    );
    push(
        "eq9_denominator",
        "10-dim denominator integral = pi/29030400",
        i10_den,
        PI / 29_030_400.0,
    );
    // The engineered target for the sub-optimal ratio is 919/5 - 264 ln 2;
    // the construction as written integrates to exactly 71/105. The check
    // keeps its published target and reports the discrepancy.
    push(
        "xstate10_upper_bound",
        "10-dim ratio with the 5x5-minor function = 919/5 - 264 ln 2",
        i10_subopt / i10_den,
        919.0 / 5.0 - 264.0 * std::f64::consts::LN_2,
    );
    push(
        "xstate10_ratio",
        "10-dim ratio with the dilogarithmic function = 272/(45 pi^2)",
        i10_chi / i10_den,
        272.0 / (45.0 * PI * PI),
    );

    Ok(XStateReport { checks })
}
