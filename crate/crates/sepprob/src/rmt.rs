//! Random density matrices from normal variates.
//!
//! Two constructions are supported:
//!
//! * the induced measure with parameter k: trace out the environment of a
//!   Haar-random pure state, concretely rho = AA†/Tr(AA†) for a Ginibre
//!   block A of shape N x (N+k) (complex) or N x (N+1+k) (real); k = 0 is
//!   the Hilbert-Schmidt measure;
//! * the interpolation rho_x = (yI + xU) AA† (yI + xU†) / Tr(...) with
//!   y = 1 - x, which reaches the Bures measure at x = 1/2. The square
//!   Ginibre A is paired with an independent Haar unitary U (orthogonal O
//!   and an N x (N+1) block in the real case).
//!
//! Variate ordering is fixed for reproducibility: the Ginibre block first,
//! row-major, complex entries consuming consecutive (re, im) pairs, then the
//! seed of the unitary factor in the same layout.

use serde::{Deserialize, Serialize};

use crate::linalg::{gram_into, haar_from_ginibre, mul_into, CMat, QrScratch, C64};
use crate::normal::NormalBlock;
use crate::{Error, SampleFailure};

/// Real or complex matrix ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumberField {
    Real,
    Complex,
}

/// Which measure the samples are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Measure {
    /// Induced measure with environment offset k; k = 0 is Hilbert-Schmidt.
    Induced { k: u32 },
    /// Osipov-Sommers-Zyczkowski interpolation; x = 1/2 is Bures.
    Osz { x: f64 },
}

/// A bipartite sampling scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub n_a: usize,
    pub n_b: usize,
    pub field: NumberField,
    pub measure: Measure,
}

impl Scenario {
    pub fn new(
        n_a: usize,
        n_b: usize,
        field: NumberField,
        measure: Measure,
    ) -> Result<Self, Error> {
        if n_a < 2 || n_b < 2 {
            return Err(Error::Domain("subsystem dimensions must be >= 2"));
        }
        if let Measure::Osz { x } = measure {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::Domain(
                    "interpolation parameter x must lie in [0, 1]",
                ));
            }
        }
        Ok(Scenario {
            n_a,
            n_b,
            field,
            measure,
        })
    }

    /// Total Hilbert-space dimension N = n_a * n_b.
    pub fn total_dim(&self) -> usize {
        self.n_a * self.n_b
    }

    /// Shape of the Ginibre block consumed per sample.
    pub fn ginibre_shape(&self) -> (usize, usize) {
        let n = self.total_dim();
        match (self.measure, self.field) {
            (Measure::Induced { k }, NumberField::Complex) => (n, n + k as usize),
            (Measure::Induced { k }, NumberField::Real) => (n, n + 1 + k as usize),
            (Measure::Osz { .. }, NumberField::Complex) => (n, n),
            (Measure::Osz { .. }, NumberField::Real) => (n, n + 1),
        }
    }

    /// Whether the sample also consumes a Haar unitary/orthogonal factor.
    pub fn needs_unitary(&self) -> bool {
        matches!(self.measure, Measure::Osz { .. })
    }

    /// Number of normal variates consumed per sample, which is also the
    /// dimension of the quasirandom sequence to build for this scenario.
    pub fn variate_count(&self) -> usize {
        let n = self.total_dim();
        let (rows, cols) = self.ginibre_shape();
        let per_entry = match self.field {
            NumberField::Real => 1,
            NumberField::Complex => 2,
        };
        let mut count = rows * cols * per_entry;
        if self.needs_unitary() {
            count += n * n * per_entry;
        }
        count
    }
}

/// N x N Hermitian, unit-trace, PSD (up to roundoff) state, carrying the
/// bipartite split it was sampled for.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub mat: CMat,
    pub n_a: usize,
    pub n_b: usize,
}

impl DensityMatrix {
    /// Hermiticity, unit trace and PSD checks at the documented tolerances.
    /// Used by tests and debug runs, not by the sampling loop.
    pub fn check_invariants(&self) -> Result<(), String> {
        let h = self.mat.hermiticity_defect();
        if h > 1e-12 {
            return Err(format!("hermiticity defect {h}"));
        }
        let tr = self.mat.trace_re();
        if (tr - 1.0).abs() > 1e-12 {
            return Err(format!("trace {tr}"));
        }
        let n = self.mat.rows;
        let mut work = self.mat.clone();
        let mut evals = vec![0.0; n];
        crate::linalg::hermitian_eigenvalues(&mut work, &mut evals)
            .map_err(|e| format!("eigensolver failed: {e:?}"))?;
        let min = evals.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -1e-12 {
            return Err(format!("negative eigenvalue {min}"));
        }
        Ok(())
    }
}

/// Fill `m` (row-major) from a slice of normals. Complex entries take
/// consecutive (re, im) pairs.
pub(crate) fn fill_ginibre(m: &mut CMat, field: NumberField, normals: &[f64]) {
    match field {
        NumberField::Real => {
            assert_eq!(normals.len(), m.rows * m.cols, "normal count mismatch");
            for (dst, &x) in m.data.iter_mut().zip(normals) {
                *dst = C64::new(x, 0.0);
            }
        }
        NumberField::Complex => {
            assert_eq!(normals.len(), 2 * m.rows * m.cols, "normal count mismatch");
            for (dst, pair) in m.data.iter_mut().zip(normals.chunks_exact(2)) {
                *dst = C64::new(pair[0], pair[1]);
            }
        }
    }
}

/// Ginibre matrix of the given shape from a block of normals.
pub fn ginibre(rows: usize, cols: usize, field: NumberField, normals: &NormalBlock) -> CMat {
    let mut m = CMat::zeros(rows, cols);
    fill_ginibre(&mut m, field, &normals.values);
    m
}

/// Haar unitary (orthogonal for the real field) of size n from a block of
/// normals: QR of a Ginibre seed plus the diagonal-phase normalization.
pub fn haar_factor(n: usize, field: NumberField, normals: &NormalBlock) -> Result<CMat, Error> {
    let seed = ginibre(n, n, field, normals);
    let mut q = CMat::zeros(n, n);
    let mut ws = QrScratch::new(n);
    haar_from_ginibre(&mut q, &seed, &mut ws)
        .map_err(|_| Error::NonConvergence("haar QR factor"))?;
    Ok(q)
}

/// rho = B B† / Tr(B B†) written into `rho`, with B given.
fn normalize_gram(rho: &mut CMat, b: &CMat) -> Result<(), SampleFailure> {
    gram_into(rho, b);
    let tr = rho.trace_re();
    if tr <= 0.0 || !tr.is_finite() {
        return Err(SampleFailure::ZeroTrace);
    }
    let inv = 1.0 / tr;
    for z in &mut rho.data {
        *z *= inv;
    }
    Ok(())
}

/// Interpolated state rho_x = (yI + xU) AA† (yI + xU†) / Tr(...), y = 1 - x.
///
/// `mix` and `b` are caller scratch sized N x N and N x cols(A).
pub(crate) fn osz_density_into(
    rho: &mut CMat,
    a: &CMat,
    u: &CMat,
    x: f64,
    mix: &mut CMat,
    b: &mut CMat,
) -> Result<(), SampleFailure> {
    let n = a.rows;
    debug_assert_eq!(u.rows, n);
    debug_assert_eq!(u.cols, n);
    let y = 1.0 - x;
    for i in 0..n {
        for j in 0..n {
            let mut v = u.at(i, j) * x;
            if i == j {
                v += C64::new(y, 0.0);
            }
            mix.set(i, j, v);
        }
    }
    mul_into(b, mix, a);
    normalize_gram(rho, b)
}

/// Induced-measure state rho = AA† / Tr(AA†).
pub(crate) fn induced_density_into(rho: &mut CMat, a: &CMat) -> Result<(), SampleFailure> {
    normalize_gram(rho, a)
}

/// Convenience wrapper over [`osz_density_into`] producing a fresh matrix.
pub fn osz_density(
    a: &CMat,
    u: &CMat,
    x: f64,
    n_a: usize,
    n_b: usize,
) -> Result<DensityMatrix, Error> {
    let n = a.rows;
    assert_eq!(n, n_a * n_b, "Ginibre rows must equal n_a * n_b");
    let mut rho = CMat::zeros(n, n);
    let mut mix = CMat::zeros(n, n);
    let mut b = CMat::zeros(n, a.cols);
    osz_density_into(&mut rho, a, u, x, &mut mix, &mut b)
        .map_err(|_| Error::Domain("zero trace in OSZ construction"))?;
    Ok(DensityMatrix { mat: rho, n_a, n_b })
}

/// Convenience wrapper over [`induced_density_into`].
pub fn induced_density(a: &CMat, n_a: usize, n_b: usize) -> Result<DensityMatrix, Error> {
    let n = a.rows;
    assert_eq!(n, n_a * n_b, "Ginibre rows must equal n_a * n_b");
    let mut rho = CMat::zeros(n, n);
    induced_density_into(&mut rho, a)
        .map_err(|_| Error::Domain("zero trace in induced construction"))?;
    Ok(DensityMatrix { mat: rho, n_a, n_b })
}
