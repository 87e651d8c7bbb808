//! Small dense complex-matrix kernels for the sampling pipeline.
//!
//! Everything here targets N <= 10: row-major storage, Householder QR with
//! the phase fix that makes the Q factor Haar-distributed, and a cyclic
//! Jacobi eigensolver for Hermitian matrices (eigenvalues only — the
//! pipeline needs spectra, not eigenvectors). Real-field scenarios flow
//! through the same code with zero imaginary parts.

use num_complex::Complex64;

use crate::SampleFailure;

pub type C64 = Complex64;

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.cols + c] = v;
    }

    /// Trace of the real part (the matrices this is called on are Hermitian).
    pub fn trace_re(&self) -> f64 {
        debug_assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.at(i, i).re).sum()
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Hermiticity defect max|A - A†|.
    pub fn hermiticity_defect(&self) -> f64 {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.at(i, j) - self.at(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

/// dst = a * b.
pub fn mul_into(dst: &mut CMat, a: &CMat, b: &CMat) {
    assert_eq!(a.cols, b.rows);
    assert_eq!(dst.rows, a.rows);
    assert_eq!(dst.cols, b.cols);
    let (m, k, n) = (a.rows, a.cols, b.cols);
    for i in 0..m {
        let dst_row = &mut dst.data[i * n..(i + 1) * n];
        dst_row.fill(C64::new(0.0, 0.0));
        for l in 0..k {
            let aval = a.data[i * k + l];
            if aval.re == 0.0 && aval.im == 0.0 {
                continue;
            }
            let b_row = &b.data[l * n..(l + 1) * n];
            for (d, &bv) in dst_row.iter_mut().zip(b_row) {
                *d += aval * bv;
            }
        }
    }
}

/// dst = a * a†, Hermitian-symmetrized so roundoff cannot skew it.
pub fn gram_into(dst: &mut CMat, a: &CMat) {
    assert_eq!(dst.rows, a.rows);
    assert_eq!(dst.cols, a.rows);
    let (m, k) = (a.rows, a.cols);
    for i in 0..m {
        for j in i..m {
            let ra = &a.data[i * k..(i + 1) * k];
            let rb = &a.data[j * k..(j + 1) * k];
            let mut s = C64::new(0.0, 0.0);
            for (x, y) in ra.iter().zip(rb) {
                s += x * y.conj();
            }
            if i == j {
                dst.data[i * m + i] = C64::new(s.re, 0.0);
            } else {
                dst.data[i * m + j] = s;
                dst.data[j * m + i] = s.conj();
            }
        }
    }
}

/// Scratch for [`haar_from_ginibre`].
#[derive(Debug, Clone)]
pub struct QrScratch {
    r: CMat,
    v: Vec<C64>,
}

impl QrScratch {
    pub fn new(n: usize) -> Self {
        QrScratch {
            r: CMat::zeros(n, n),
            v: vec![C64::new(0.0, 0.0); n],
        }
    }
}

/// Overwrite `q` with the Haar unitary (orthogonal, for real input) factor of
/// the square Ginibre matrix `a`.
///
/// Householder QR, Q accumulated explicitly, then Q is right-multiplied by
/// the signs of R's diagonal so the result corresponds to the unique
/// decomposition with positive diagonal — that normalization is what makes
/// the distribution exactly Haar rather than merely unitary.
pub fn haar_from_ginibre(q: &mut CMat, a: &CMat, ws: &mut QrScratch) -> Result<(), SampleFailure> {
    let n = a.rows;
    assert_eq!(a.cols, n);
    assert_eq!(q.rows, n);
    assert_eq!(q.cols, n);

    ws.r.data.copy_from_slice(&a.data);
    let r = &mut ws.r;

    // Start Q at identity and apply the reflectors from the right as they
    // are produced: Q = H_0 H_1 ... H_{n-2}.
    q.data.fill(C64::new(0.0, 0.0));
    for i in 0..n {
        q.data[i * n + i] = C64::new(1.0, 0.0);
    }

    for k in 0..n {
        // Householder vector for column k of the trailing block.
        let mut norm_sq = 0.0;
        for i in k..n {
            norm_sq += r.at(i, k).norm_sqr();
        }
        if norm_sq == 0.0 {
            return Err(SampleFailure::SingularDraw);
        }
        let norm = norm_sq.sqrt();
        let akk = r.at(k, k);
        // beta = -norm * phase(akk): the pivot moves away from zero.
        let phase = if akk.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            akk / akk.norm()
        };
        let beta = -norm;
        let vkk = akk - phase * beta; // = akk + phase*norm
        ws.v[k] = vkk;
        for i in (k + 1)..n {
            ws.v[i] = r.at(i, k);
        }
        let vnorm_sq: f64 = (k..n).map(|i| ws.v[i].norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            return Err(SampleFailure::SingularDraw);
        }
        let tau = 2.0 / vnorm_sq;

        // R <- H R on the trailing columns.
        r.set(k, k, phase * beta);
        for i in (k + 1)..n {
            r.set(i, k, C64::new(0.0, 0.0));
        }
        for j in (k + 1)..n {
            let mut dot = C64::new(0.0, 0.0);
            for i in k..n {
                dot += ws.v[i].conj() * r.at(i, j);
            }
            dot *= tau;
            for i in k..n {
                let val = r.at(i, j) - dot * ws.v[i];
                r.set(i, j, val);
            }
        }

        // Q <- Q H (apply reflector to columns k..n of every row).
        for row in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for i in k..n {
                dot += q.at(row, i) * ws.v[i];
            }
            dot *= tau;
            for i in k..n {
                let val = q.at(row, i) - dot * ws.v[i].conj();
                q.set(row, i, val);
            }
        }
    }

    // Positive-diagonal normalization: U = Q * diag(r_jj / |r_jj|).
    for j in 0..n {
        let rjj = r.at(j, j);
        let m = rjj.norm();
        if m == 0.0 {
            return Err(SampleFailure::SingularDraw);
        }
        let lambda = rjj / m;
        for i in 0..n {
            let val = q.at(i, j) * lambda;
            q.set(i, j, val);
        }
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
///
/// `work` is overwritten; eigenvalues land in `evals` unsorted. Fails if the
/// off-diagonal mass has not collapsed after 30 sweeps.
pub fn hermitian_eigenvalues(work: &mut CMat, evals: &mut [f64]) -> Result<(), SampleFailure> {
    let n = work.rows;
    assert_eq!(work.cols, n);
    assert_eq!(evals.len(), n);

    if n == 1 {
        evals[0] = work.at(0, 0).re;
        return Ok(());
    }

    let scale: f64 = (0..n)
        .map(|i| work.at(i, i).re.abs())
        .fold(
            work.data.iter().map(|z| z.norm()).fold(0.0, f64::max),
            f64::max,
        )
        .max(1e-300);

    for _sweep in 0..30 {
        let mut off_max = 0.0f64;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = work.at(p, q);
                let m = apq.norm();
                if m == 0.0 {
                    continue;
                }
                off_max = off_max.max(m);
                let app = work.at(p, p).re;
                let aqq = work.at(q, q).re;
                let w = apq / m; // unit phase
                let theta = (aqq - app) / (2.0 * m);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Columns p and q of every non-pivot row.
                for r_ in 0..n {
                    if r_ == p || r_ == q {
                        continue;
                    }
                    let arp = work.at(r_, p);
                    let arq = work.at(r_, q);
                    let new_p = c * arp - s * w.conj() * arq;
                    let new_q = s * w * arp + c * arq;
                    work.set(r_, p, new_p);
                    work.set(r_, q, new_q);
                    work.set(p, r_, new_p.conj());
                    work.set(q, r_, new_q.conj());
                }
                work.set(p, p, C64::new(app - t * m, 0.0));
                work.set(q, q, C64::new(aqq + t * m, 0.0));
                work.set(p, q, C64::new(0.0, 0.0));
                work.set(q, p, C64::new(0.0, 0.0));
            }
        }
        if off_max <= 1e-14 * scale {
            for (i, e) in evals.iter_mut().enumerate() {
                *e = work.at(i, i).re;
            }
            return Ok(());
        }
    }
    Err(SampleFailure::EigenNonConvergence)
}

/// max |U†U - I|, the unitarity defect.
pub fn unitarity_defect(u: &CMat) -> f64 {
    let n = u.rows;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..n {
                s += u.at(k, i).conj() * u.at(k, j);
            }
            if i == j {
                s -= C64::new(1.0, 0.0);
            }
            worst = worst.max(s.norm());
        }
    }
    worst
}
