use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::eig::{hermitian_eig, EigenDecomposition};
use crate::linalg::ComplexMatrix;

/// Eigenvalues in `[-PSD_TOL, 0)` are treated as rounding noise on PSD input.
pub const PSD_TOL: f64 = 1e-10;

/// Schatten exponent: a finite `p ≥ 1` or the spectral-norm sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SchattenP {
    Finite(f64),
    Infinity,
}

impl SchattenP {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            Ok(Self::Infinity)
        } else if p >= 1.0 {
            Ok(Self::Finite(p))
        } else {
            Err(Error::Domain(format!(
                "Schatten exponent must be >= 1, got {p}"
            )))
        }
    }
}

impl From<f64> for SchattenP {
    /// Panics on `p < 1`; use [`SchattenP::new`] for untrusted input.
    fn from(p: f64) -> Self {
        Self::new(p).expect("Schatten exponent")
    }
}

impl fmt::Display for SchattenP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

/// Singular values, descending.
///
/// Hermitian input uses `|eigenvalues|` directly. Anything else uses the
/// dilation `[[0, M], [M†, 0]]`, whose spectrum is `±σ_i`; taking square roots
/// of the eigenvalues of `M†M` would lose half the digits of small `σ_i`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let d = m.require_square()?;
    let mut sv: Vec<f64> = if m.is_hermitian() {
        hermitian_eig(m)?
            .eigenvalues
            .iter()
            .map(|x| x.abs())
            .collect()
    } else {
        let mut dilation = ComplexMatrix::zeros(2 * d, 2 * d);
        for i in 0..d {
            for j in 0..d {
                dilation[(i, d + j)] = m[(i, j)];
                dilation[(d + j, i)] = m[(i, j)].conj();
            }
        }
        let ev = hermitian_eig(&dilation)?.eigenvalues;
        ev[d..].iter().map(|&x| x.max(0.0)).collect()
    };
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// `‖M‖_p = (Σ σ_i^p)^{1/p}`, or `max σ_i` for `p = ∞`.
pub fn schatten_norm(m: &ComplexMatrix, p: impl Into<SchattenP>) -> Result<f64> {
    let p = p.into();
    if let SchattenP::Finite(x) = p {
        if !(x >= 1.0) {
            return Err(Error::Domain(format!(
                "Schatten exponent must be >= 1, got {x}"
            )));
        }
    }
    let sv = singular_values(m)?;
    Ok(schatten_from_singular_values(&sv, p))
}

pub fn schatten_from_singular_values(sv: &[f64], p: SchattenP) -> f64 {
    match p {
        SchattenP::Infinity => sv.iter().copied().fold(0.0, f64::max),
        SchattenP::Finite(1.0) => sv.iter().sum(),
        SchattenP::Finite(p) => {
            // factor out the largest value so σ^p cannot overflow
            let top = sv.iter().copied().fold(0.0, f64::max);
            if top == 0.0 {
                return 0.0;
            }
            let sum: f64 = sv.iter().map(|s| (s / top).powf(p)).sum();
            top * sum.powf(1.0 / p)
        }
    }
}

pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    schatten_norm(m, SchattenP::Infinity)
}

pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    schatten_norm(m, SchattenP::Finite(1.0))
}

/// Eigendecomposition of a PSD matrix with eigenvalues in `[-1e-10, 0)` clamped to 0.
pub fn psd_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let mut e = hermitian_eig(m)?;
    let min = e.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    for x in &mut e.eigenvalues {
        *x = x.max(0.0);
    }
    Ok(e)
}

/// `M^p` for PSD `M` and `p ≥ 0`. Zero eigenvalues stay zero, so `M^0` is
/// the support projector.
pub fn psd_power(m: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    if !(p >= 0.0) {
        return Err(Error::Domain(format!("power must be >= 0, got {p}")));
    }
    let e = psd_eig(m)?;
    Ok(e.map_spectrum(|x| if x > 0.0 { x.powf(p) } else { 0.0 }))
}

/// `Tr[M^p]` for PSD `M`.
pub fn psd_trace_power(m: &ComplexMatrix, p: f64) -> Result<f64> {
    if !(p >= 0.0) {
        return Err(Error::Domain(format!("power must be >= 0, got {p}")));
    }
    let e = psd_eig(m)?;
    Ok(e.eigenvalues
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|x| x.powf(p))
        .sum())
}

/// `M^{-1/2}` for positive definite `M`.
pub fn inverse_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = psd_eig(m)?;
    let floor = 1e-12 * e.max_eigenvalue().max(f64::MIN_POSITIVE);
    if e.min_eigenvalue() <= floor {
        return Err(Error::Domain(
            "inverse square root of a singular matrix".into(),
        ));
    }
    Ok(e.map_spectrum(|x| 1.0 / x.sqrt()))
}

/// `|M| = √(M†M)`.
pub fn abs(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.require_square()?;
    psd_power(&(&m.dagger() * m), 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{paulis, Complex64, I, ONE};

    #[test]
    fn identity_norms() {
        for d in [1usize, 2, 5, 8] {
            let id = ComplexMatrix::identity(d);
            for p in [1.0, 1.5, 2.0, 3.0, 7.0] {
                let got = schatten_norm(&id, p).unwrap();
                assert!((got - (d as f64).powf(1.0 / p)).abs() < 1e-13);
            }
            assert_eq!(spectral_norm(&id).unwrap(), 1.0);
        }
    }

    #[test]
    fn pauli_and_non_hermitian() {
        let [_, x, _, z] = paulis();
        assert!((spectral_norm(&z).unwrap() - 1.0).abs() < 1e-15);
        assert!((trace_norm(&z).unwrap() - 2.0).abs() < 1e-15);
        // nilpotent |0⟩⟨1| has one singular value 1
        let n = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!((trace_norm(&n).unwrap() - 1.0).abs() < 1e-15);
        assert!((schatten_norm(&n, 3.0).unwrap() - 1.0).abs() < 1e-15);
        // (X + iZ)†(X + iZ) = 2I + 2Y, so the singular values are 2 and 0
        let m = &x + &z.scale_complex(I);
        assert!((trace_norm(&m).unwrap() - 2.0).abs() < 1e-14);
        assert!((spectral_norm(&m).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_small_exponent() {
        let id = ComplexMatrix::identity(2);
        assert!(matches!(
            schatten_norm(&id, SchattenP::Finite(0.5)),
            Err(Error::Domain(_))
        ));
        assert!(SchattenP::new(0.99).is_err());
        assert_eq!(SchattenP::new(f64::INFINITY).unwrap(), SchattenP::Infinity);
    }

    #[test]
    fn powers() {
        let id = ComplexMatrix::identity(3);
        assert!(psd_power(&id, 2.7).unwrap().max_abs_diff(&id) < 1e-15);
        let d = ComplexMatrix::from_real_diag(&[4.0, 1.0]);
        let r = psd_power(&d, 0.5).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::from_real_diag(&[2.0, 1.0])) < 1e-15);
        let proj = psd_power(&ComplexMatrix::from_real_diag(&[3.0, 0.0]), 0.0).unwrap();
        assert!(proj.max_abs_diff(&ComplexMatrix::from_real_diag(&[1.0, 0.0])) < 1e-15);
        assert!(matches!(
            psd_power(&paulis()[3], 0.5),
            Err(Error::NotPsd { .. })
        ));
        assert!(psd_power(&id, -1.0).is_err());
    }

    #[test]
    fn clamps_tiny_negative_eigenvalues() {
        let m = ComplexMatrix::from_real_diag(&[1.0, -1e-12]);
        let r = psd_power(&m, 0.5).unwrap();
        assert_eq!(r[(1, 1)], Complex64::new(0.0, 0.0));
        assert!((psd_trace_power(&m, 2.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_sqrt_and_abs() {
        let m = ComplexMatrix::from_rows(&[&[ONE * 2.0, I], &[-I, ONE * 2.0]]);
        let r = inverse_sqrt(&m).unwrap();
        let back = &(&r * &m) * &r;
        assert!(back.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-13);
        assert!(inverse_sqrt(&ComplexMatrix::from_real_diag(&[1.0, 0.0])).is_err());
        let z = &paulis()[3];
        assert!(abs(z).unwrap().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }
}
