//! Dense complex linear algebra: products, partial traces, Hermitian
//! eigendecomposition, Schatten norms and PSD matrix functions.

mod eig;
mod matrix;
mod norms;
mod tensor;

pub use num_complex::Complex64;

pub use eig::{hermitian_eig, hermitian_eigenvalues, hermitize, EigenDecomposition};
pub use matrix::{kron_all, paulis, ComplexMatrix, I, ONE, ZERO};
pub use norms::{
    abs, inverse_sqrt, psd_eig, psd_power, psd_trace_power, schatten_from_singular_values,
    schatten_norm, singular_values, spectral_norm, trace_norm, SchattenP, PSD_TOL,
};
pub use tensor::{partial_trace, permute_factors};

pub(crate) use tensor::{check_factorization, compose, digits};

/// Kronecker product; free-function form of [`ComplexMatrix::kron`].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}
