//! Registry of exact and conjectured separability/PPT probability constants.
//!
//! Each entry carries its closed form as text, the evaluated decimal, a
//! provenance status and the section of the literature it is reported in.
//! The two hypothesis values that arise as tiny differences of large terms
//! are evaluated in double-double so the stored decimals are good to full
//! f64 precision.

use std::fmt;
use std::sync::OnceLock;

use crate::dd::Dd;

/// Provenance of a registry constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantStatus {
    /// Formally proven.
    Proven,
    /// Conjectured exact value, strongly supported numerically.
    Conjectured,
    /// Numerical estimate with no known closed form.
    Estimate,
    /// Historical conjecture since superseded by better estimates.
    Superseded,
}

impl fmt::Display for ConstantStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConstantStatus::Proven => "proven",
            ConstantStatus::Conjectured => "conjectured",
            ConstantStatus::Estimate => "estimate",
            ConstantStatus::Superseded => "superseded",
        };
        f.write_str(s)
    }
}

/// A named probability constant with its closed form and decimal value.
#[derive(Debug, Clone)]
pub struct ConstantEntry {
    pub name: &'static str,
    pub closed_form: &'static str,
    pub value: f64,
    pub status: ConstantStatus,
    /// Where the value is reported (section/equation labels).
    pub source: &'static str,
}

const PI_DD: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};
const LN2_DD: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

fn dd(n: f64) -> Dd {
    Dd::from_f64(n)
}

fn compute_entries() -> Vec<ConstantEntry> {
    use ConstantStatus::*;
    let pi = std::f64::consts::PI;
    let pi2 = PI_DD.mul(PI_DD);

    // (560 pi^2 - 5525)/3 and 8962661573/4725 - 192192 pi^2 cancel ~3 and
    // ~7 digits respectively; double-double keeps the quotient clean.
    let qq_xpattern = dd(560.0).mul(pi2).sub(dd(5525.0)).div(dd(3.0)).to_f64();
    let quaterbit_xpattern = dd(8962661573.0)
        .div(dd(4725.0))
        .sub(dd(192192.0).mul(pi2))
        .to_f64();
    let upper_bound_10d = dd(919.0).div(dd(5.0)).sub(dd(264.0).mul(LN2_DD)).to_f64();
    let sqrtx_two_qubit = Dd::ONE.sub(dd(256.0).div(dd(27.0).mul(pi2))).to_f64();

    let e = |name, closed_form, value, status, source| ConstantEntry {
        name,
        closed_form,
        value,
        status,
        source,
    };

    vec![
        e("hs_two_rebit", "29/64", 29.0 / 64.0, Proven, "sec. I"),
        e("hs_two_qubit", "8/33", 8.0 / 33.0, Conjectured, "sec. I"),
        e(
            "hs_two_quaterbit",
            "26/323",
            26.0 / 323.0,
            Conjectured,
            "sec. I",
        ),
        e(
            "induced_k1_two_qubit",
            "61/143",
            61.0 / 143.0,
            Conjectured,
            "sec. I",
        ),
        e(
            "bures_two_qubit",
            "25/341",
            25.0 / 341.0,
            Conjectured,
            "sec. II.D.1",
        ),
        e(
            "sqrtx_two_qubit",
            "1 - 256/(27 pi^2)",
            sqrtx_two_qubit,
            Conjectured,
            "concluding remarks",
        ),
        e(
            "bures_two_rebit",
            "0.157096234 (no closed form known)",
            0.157096234,
            Estimate,
            "sec. II.D.2",
        ),
        e(
            "sqrtx_two_rebit",
            "0.26223001318 (no closed form known)",
            0.26223001318,
            Estimate,
            "concluding remarks",
        ),
        e(
            "hs_qubit_qutrit",
            "27/1000",
            27.0 / 1000.0,
            Conjectured,
            "sec. III",
        ),
        e(
            "hs_rebit_retrit",
            "860/6561",
            860.0 / 6561.0,
            Conjectured,
            "sec. III",
        ),
        e(
            "bures_qubit_qutrit",
            "1/715",
            1.0 / 715.0,
            Conjectured,
            "sec. VII",
        ),
        e(
            "bures_2x4",
            "625/109531136",
            625.0 / 109531136.0,
            Conjectured,
            "sec. VII.A",
        ),
        e(
            "bures_two_qutrit",
            "6.3421829e-8 (estimate)",
            6.3421829e-8,
            Estimate,
            "sec. VII.A",
        ),
        e(
            "hs_2x4",
            "16/12375",
            16.0 / 12375.0,
            Conjectured,
            "sec. VIII",
        ),
        e(
            "hs_2x5",
            "125/4790016",
            125.0 / 4790016.0,
            Conjectured,
            "sec. VIII",
        ),
        e(
            "hs_rebit_redit_2x4",
            "201/8192",
            201.0 / 8192.0,
            Conjectured,
            "sec. VIII",
        ),
        e(
            "hs_rebit_redit_2x5",
            "29058/9765625",
            29058.0 / 9765625.0,
            Conjectured,
            "sec. VIII",
        ),
        e(
            "hs_two_qutrit_a",
            "323/3161088",
            323.0 / 3161088.0,
            Conjectured,
            "sec. VIII",
        ),
        e(
            "hs_two_qutrit_b",
            "11/107653",
            11.0 / 107653.0,
            Conjectured,
            "sec. VIII",
        ),
        e(
            "realign_entangled_2x4",
            "589/625",
            589.0 / 625.0,
            Conjectured,
            "sec. VIII.A",
        ),
        e(
            "bound_entangled_2x4",
            "0.000234478 (estimate)",
            0.000234478,
            Estimate,
            "sec. VIII.A",
        ),
        e(
            "xstate_rebit_retrit_hs",
            "16/(3 pi^2)",
            16.0 / (3.0 * pi * pi),
            Proven,
            "sec. IV",
        ),
        e("xstate_two_qubit_hs", "2/5", 2.0 / 5.0, Proven, "sec. IV"),
        e(
            "xstate_two_retrit_enlarged_hs",
            "65/(36 pi)",
            65.0 / (36.0 * pi),
            Proven,
            "sec. VI",
        ),
        e(
            "xstate_10d_rebit_retrit_hs",
            "272/(45 pi^2)",
            272.0 / (45.0 * pi * pi),
            Proven,
            "sec. V",
        ),
        e(
            "xstate_10d_upper_bound",
            "919/5 - 264 ln 2",
            upper_bound_10d,
            Proven,
            "sec. V",
        ),
        e(
            "qubit_qutrit_xpattern_hyp",
            "(5/3)(112 pi^2 - 1105)",
            qq_xpattern,
            Conjectured,
            "sec. V",
        ),
        e(
            "quaterbit_quatertrit_xpattern_hyp",
            "8962661573/4725 - 192192 pi^2",
            quaterbit_xpattern,
            Conjectured,
            "sec. V",
        ),
        e(
            "bures_det_partition_fraction",
            "0.6589 (fraction of PPT with |rho^PT| > |rho|)",
            0.6589,
            Estimate,
            "sec. I.A.1",
        ),
        e(
            "bures_two_qubit_early",
            "8/(11 pi^2)",
            8.0 / (11.0 * pi * pi),
            Superseded,
            "sec. II.C",
        ),
        e(
            "bures_two_qubit_silver",
            "1680 (sqrt(2)-1)/pi^8",
            1680.0 * (2f64.sqrt() - 1.0) / pi.powi(8),
            Superseded,
            "sec. II.C",
        ),
    ]
}

static REGISTRY: OnceLock<Vec<ConstantEntry>> = OnceLock::new();

/// All registered constants.
pub fn constants_registry() -> &'static [ConstantEntry] {
    REGISTRY.get_or_init(compute_entries)
}

/// Look a constant up by name.
pub fn constant(name: &str) -> Option<&'static ConstantEntry> {
    constants_registry().iter().find(|e| e.name == name)
}

/// Machine-readable dump, one row per constant.
pub fn registry_csv() -> String {
    let mut out = String::from("name,closed_form,value,status,source\n");
    for e in constants_registry() {
        out.push_str(&format!(
            "{},\"{}\",{},{},\"{}\"\n",
            e.name, e.closed_form, e.value, e.status, e.source
        ));
    }
    out
}
