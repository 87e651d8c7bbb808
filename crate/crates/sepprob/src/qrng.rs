//! The d-dimensional additive quasirandom sequence built on the root of
//! x^(d+1) = x + 1.
//!
//! The n-th point is (alpha0 + n*alpha) mod 1 with alpha_j = 1/phi_d^j.
//! Everything is carried as unsigned 64-bit fixed-point fractions
//! (value = int / 2^64), so the mod-1 arithmetic is exact wrap-around
//! addition: iterating [`SequenceState::advance`] and jumping with
//! [`SequenceSpec::point_at`] agree bit for bit at any index, which is what
//! makes block-partitioned parallel estimation deterministic. Floating-point
//! recurrences lose low-order bits long before the 10^9..10^10 indices the
//! estimation runs reach.
//!
//! The offset alpha0 defaults to 1/2 everywhere in this crate; the fractional
//! parts of n/phi_d^j never touch 0 exactly then, so downstream inverse-CDF
//! conversion is safe.

use std::sync::Arc;

use crate::dd::Dd;
use crate::Error;

const FIXED_SCALE: f64 = 18446744073709551616.0; // 2^64
const INV_2_53: f64 = 1.0 / 9007199254740992.0; // 2^-53

/// Immutable description of a d-dimensional sequence: the root phi_d, the
/// per-coordinate increments alpha_j = 1/phi_d^j and the offset alpha0, all
/// rounded once to 64-bit fixed point.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec {
    d: usize,
    phi: f64,
    alpha0_fixed: u64,
    alpha_fixed: Vec<u64>,
}

/// A cursor into the sequence: index `n` plus the fixed-point coordinates of
/// the n-th point. Single-owner; share the spec, not the state.
#[derive(Debug, Clone)]
pub struct SequenceState {
    spec: Arc<SequenceSpec>,
    n: u64,
    coords: Vec<u64>,
}

/// Smallest positive root of x^(d+1) = x + 1.
///
/// The polynomial is convex and increasing on [1, 2], so Newton from above
/// descends monotonically onto the root. For very large d the start point is
/// pulled down to 3^(1/(d+1)) to keep the powers finite.
pub fn solve_phi(d: usize) -> f64 {
    assert!(d >= 1, "dimension must be >= 1");
    let p = (d + 1) as f64;
    let mut x: f64 = if d > 512 { 3f64.powf(1.0 / p) } else { 2.0 };
    for _ in 0..20_000 {
        let xd = x.powi(d as i32);
        let f = xd * x - x - 1.0;
        let fp = p * xd - 1.0;
        let step = f / fp;
        x -= step;
        if step.abs() <= 1e-15 * x {
            break;
        }
    }
    // One extended-precision polish so the rounded f64 sits on the root.
    solve_phi_dd(d, x).to_f64()
}

/// Newton in double-double starting from an f64 approximation.
fn solve_phi_dd(d: usize, x0: f64) -> Dd {
    let p = Dd::from_f64((d + 1) as f64);
    let one = Dd::ONE;
    let mut x = Dd::from_f64(x0);
    for _ in 0..4 {
        let xd = x.powi(d as u64);
        let f = xd.mul(x).sub(x).sub(one);
        let fp = p.mul(xd).sub(one);
        x = x.sub(f.div(fp));
    }
    x
}

/// |phi^(d+1) - phi - 1| for a candidate root, evaluated in double-double so
/// the check itself does not drown in rounding for large d.
pub fn phi_residual(d: usize, phi: f64) -> f64 {
    let x = Dd::from_f64(phi);
    x.powi(d as u64 + 1).sub(x).sub(Dd::ONE).abs().to_f64()
}

#[inline]
fn fixed_to_f64(x: u64) -> f64 {
    // Truncate to 53 bits so the result stays in [0, 1); rounding the full
    // 64-bit value can spill to exactly 1.0.
    (x >> 11) as f64 * INV_2_53
}

fn f64_to_fixed(x: f64) -> u64 {
    debug_assert!((0.0..1.0).contains(&x));
    let scaled = x * FIXED_SCALE;
    let main = scaled.floor();
    let frac = scaled - main; // exact: scaling by 2^64 is exact
    (main as u64).wrapping_add(frac.round() as u64)
}

/// Round a double-double in (0, 1) to the nearest 64-bit fraction.
fn dd_to_fixed(x: Dd) -> u64 {
    let hi = x.hi * FIXED_SCALE; // exact: power-of-two scaling
    let main = hi.floor();
    // The residual can be negative (x.lo < 0); keep it signed or the cast
    // would clamp it to zero and drop the round-to-nearest correction.
    let rem = (hi - main) + x.lo * FIXED_SCALE;
    (main as u64).wrapping_add_signed(rem.round() as i64)
}

impl SequenceSpec {
    /// Build the spec for dimension `d` with offset `alpha0` in [0, 1).
    ///
    /// alpha_j is formed by repeated multiplication of 1/phi in extended
    /// precision and rounded to fixed point once, per coordinate
    /// (round-to-nearest; any consistent rounding gives a valid rank-1
    /// sequence, this one is fixed for reproducibility).
    pub fn new(d: usize, alpha0: f64) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::Domain("sequence dimension must be >= 1"));
        }
        if !(0.0..1.0).contains(&alpha0) {
            return Err(Error::Domain("alpha0 must lie in [0, 1)"));
        }
        let p = (d + 1) as f64;
        let x0 = if d > 512 { 3f64.powf(1.0 / p) } else { 2.0 };
        let mut xf = x0;
        for _ in 0..20_000 {
            let xd = xf.powi(d as i32);
            let f = xd * xf - xf - 1.0;
            let fp = p * xd - 1.0;
            let step = f / fp;
            xf -= step;
            if step.abs() <= 1e-15 * xf {
                break;
            }
        }
        let phi_dd = solve_phi_dd(d, xf);
        let inv_phi = Dd::ONE.div(phi_dd);
        let mut alpha_fixed = Vec::with_capacity(d);
        let mut power = inv_phi;
        for _ in 0..d {
            alpha_fixed.push(dd_to_fixed(power));
            power = power.mul(inv_phi);
        }
        Ok(SequenceSpec {
            d,
            phi: phi_dd.to_f64(),
            alpha0_fixed: f64_to_fixed(alpha0),
            alpha_fixed,
        })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha0(&self) -> f64 {
        fixed_to_f64(self.alpha0_fixed)
    }

    /// The increments alpha_j as floats (diagnostic; the sequence itself only
    /// ever uses the fixed-point form).
    pub fn alpha(&self) -> Vec<f64> {
        self.alpha_fixed.iter().map(|&a| fixed_to_f64(a)).collect()
    }

    /// Fixed-point coordinates of point `n`, written into `out`.
    ///
    /// (alpha0 + n*alpha_j) mod 1 == wrapping(alpha0 + n (*) alpha_j) on u64,
    /// so skip-ahead costs one multiply per coordinate and is bit-identical
    /// to n steps of [`SequenceState::advance`].
    pub fn point_fixed_at(&self, n: u64, out: &mut [u64]) {
        assert_eq!(out.len(), self.d);
        for (o, &a) in out.iter_mut().zip(&self.alpha_fixed) {
            *o = self.alpha0_fixed.wrapping_add(n.wrapping_mul(a));
        }
    }

    /// Point `n` as floats in [0, 1).
    pub fn point_at(&self, n: u64) -> Vec<f64> {
        let mut fixed = vec![0u64; self.d];
        self.point_fixed_at(n, &mut fixed);
        fixed.into_iter().map(fixed_to_f64).collect()
    }
}

impl SequenceState {
    /// Position a cursor at index `n`.
    pub fn at(spec: Arc<SequenceSpec>, n: u64) -> Self {
        let mut coords = vec![0u64; spec.d];
        spec.point_fixed_at(n, &mut coords);
        SequenceState { spec, n, coords }
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    /// Fixed-point coordinates of the current point.
    pub fn coords_fixed(&self) -> &[u64] {
        &self.coords
    }

    /// Current point as floats in [0, 1), written into `out`.
    pub fn coords(&self, out: &mut [f64]) {
        for (o, &c) in out.iter_mut().zip(&self.coords) {
            *o = fixed_to_f64(c);
        }
    }

    /// Step to index n+1 by wrap-around addition of alpha.
    pub fn advance(&mut self) {
        for (c, &a) in self.coords.iter_mut().zip(&self.spec.alpha_fixed) {
            *c = c.wrapping_add(a);
        }
        self.n = self.n.wrapping_add(1);
    }
}
