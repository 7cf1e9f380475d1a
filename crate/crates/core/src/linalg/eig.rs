//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::hermitian_tolerance;
use crate::linalg::{ComplexMatrix, ZERO};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Spectral decomposition `M = V · diag(λ) · V†` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Unitary whose columns are the eigenvectors, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V · diag(f(λ)) · V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let d = v.rows();
        let mut out = ComplexMatrix::zeros(d, d);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..d {
                let vik = v[(i, k)] * w;
                for j in 0..d {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|x| x)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Symmetrizes `m` when its asymmetry is within `1e-12 · max(1, max|M_ij|)`,
/// otherwise rejects it.
pub fn hermitize(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.require_square()?;
    let asymmetry = m.hermitian_asymmetry();
    if asymmetry > hermitian_tolerance(m) {
        return Err(Error::NotHermitian { asymmetry });
    }
    Ok(m.hermitian_part())
}

/// Eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let mut a = hermitize(m)?;
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let threshold = OFF_DIAGONAL_TOL * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold || scale == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, new)] = v[(i, old)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&i| diag[i]).collect(),
        eigenvectors,
    })
}

/// Ascending eigenvalues only.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eig(m)?.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`. The unitary acting on the (p, q)
/// plane is `diag(1, e^{-iφ}) · [[c, s], [-s, c]]` where `a[p][q] = |g|e^{iφ}`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let abs_g = g.norm();
    if abs_g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // skip rotations that cannot change the diagonal in floating point
    if abs_g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = g / abs_g;
    let theta = (aqq - app) / (2.0 * abs_g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let conj_phase = phase.conj();
    let u00 = Complex64::new(c, 0.0);
    let u01 = Complex64::new(s, 0.0);
    let u10 = conj_phase * (-s);
    let u11 = conj_phase * c;

    let n = a.rows();
    // A ← A·U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u00 + akq * u10;
        a[(k, q)] = akp * u01 + akq * u11;
    }
    // A ← U†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u00.conj() * apk + u10.conj() * aqk;
        a[(q, k)] = u01.conj() * apk + u11.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    // V ← V·U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u00 + vkq * u10;
        v[(k, q)] = vkp * u01 + vkq * u11;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{paulis, I, ONE};

    fn check_decomposition(m: &ComplexMatrix, e: &EigenDecomposition) {
        let err = (&e.reconstruct() - m).frobenius_norm();
        assert!(
            err <= 1e-10 * m.frobenius_norm().max(1.0),
            "reconstruction error {err}"
        );
        let vv = &e.eigenvectors.dagger() * &e.eigenvectors;
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(m.dim())) < 1e-10);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_input() {
        let m = ComplexMatrix::from_real_diag(&[3.0, 1.0]);
        let e = hermitian_eig(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 3.0]);
        check_decomposition(&m, &e);
    }

    #[test]
    fn pauli_spectra() {
        for p in &paulis()[1..] {
            let e = hermitian_eig(p).unwrap();
            assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
            assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
            check_decomposition(p, &e);
        }
    }

    #[test]
    fn complex_hermitian_3x3() {
        let m = ComplexMatrix::from_rows(&[
            &[ONE * 2.0, ONE + I, I * 0.5],
            &[ONE - I, ONE * -1.0, ONE * 0.25],
            &[-I * 0.5, ONE * 0.25, ONE * 4.0],
        ]);
        let e = hermitian_eig(&m).unwrap();
        check_decomposition(&m, &e);
        let tr: f64 = e.eigenvalues.iter().sum();
        assert!((tr - 5.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_and_zero() {
        let z = ComplexMatrix::zeros(3, 3);
        assert_eq!(hermitian_eig(&z).unwrap().eigenvalues, vec![0.0; 3]);
        let id = ComplexMatrix::identity(4).scale(2.5);
        let e = hermitian_eig(&id).unwrap();
        assert!(e.eigenvalues.iter().all(|&x| (x - 2.5).abs() < 1e-15));
    }

    #[test]
    fn symmetrizes_small_drift_and_rejects_large() {
        let mut m = paulis()[1].clone();
        m[(0, 1)] += Complex64::new(1e-14, 0.0);
        assert!(hermitian_eig(&m).is_ok());
        m[(0, 1)] += Complex64::new(1e-6, 0.0);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            hermitian_eig(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }
}
