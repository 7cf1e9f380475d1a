//! Expansion of `n`-qubit operators in the Pauli basis `B_σ = B_{σ₁} ⊗ … ⊗ B_{σₙ}`
//! with `B₀ = I, B₁ = X, B₂ = Y, B₃ = Z`.

use crate::error::Result;
use crate::linalg::{kron_all, paulis, Complex64, ComplexMatrix, I, ONE, ZERO};

/// Coefficients `c_σ = 2^{−n} Tr[B_σ† M]`, indexed by the base-4 number of
/// `σ` with the first qubit most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliExpansion {
    n_qubits: usize,
    coefficients: Vec<Complex64>,
}

impl PauliExpansion {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficient(&self, sigma: &[u8]) -> Complex64 {
        assert_eq!(sigma.len(), self.n_qubits, "Pauli string length");
        self.coefficients[string_index(sigma)]
    }

    /// Non-negligible terms as `(σ, c_σ)` pairs in index order.
    pub fn terms(&self, tol: f64) -> Vec<(Vec<u8>, Complex64)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(i, &c)| (string_of(i, self.n_qubits), c))
            .collect()
    }

    /// `Σ_σ c_σ B_σ`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = 1usize << self.n_qubits;
        let mut out = ComplexMatrix::zeros(d, d);
        for (idx, &c) in self.coefficients.iter().enumerate() {
            if c == ZERO {
                continue;
            }
            let sigma = string_of(idx, self.n_qubits);
            let flip = flip_mask(&sigma);
            for r in 0..d {
                out[(r, r ^ flip)] += c * entry(&sigma, r);
            }
        }
        out
    }
}

/// `B_σ` as a dense matrix.
pub fn pauli_string(sigma: &[u8]) -> ComplexMatrix {
    let basis = paulis();
    kron_all(sigma.iter().map(|&s| &basis[usize::from(s)]))
        .unwrap_or_else(|| ComplexMatrix::identity(1))
}

/// Decomposes an `n`-qubit operator in the Pauli basis.
pub fn pauli_decompose(m: &ComplexMatrix, n_qubits: usize) -> Result<PauliExpansion> {
    let d = 1usize << n_qubits;
    m.require_dim(d)?;
    let norm = 1.0 / d as f64;
    let coefficients = (0..1usize << (2 * n_qubits))
        .map(|idx| {
            let sigma = string_of(idx, n_qubits);
            let flip = flip_mask(&sigma);
            // B_σ is Hermitian with one nonzero per row: Tr[B_σ M] = Σ_r B[r, r^flip] M[r^flip, r]
            let tr: Complex64 = (0..d).map(|r| entry(&sigma, r) * m[(r ^ flip, r)]).sum();
            tr * norm
        })
        .collect();
    Ok(PauliExpansion {
        n_qubits,
        coefficients,
    })
}

fn string_index(sigma: &[u8]) -> usize {
    sigma.iter().fold(0, |acc, &s| {
        assert!(s < 4, "Pauli label out of range");
        acc * 4 + usize::from(s)
    })
}

fn string_of(mut idx: usize, n: usize) -> Vec<u8> {
    let mut sigma = vec![0u8; n];
    for slot in sigma.iter_mut().rev() {
        *slot = (idx % 4) as u8;
        idx /= 4;
    }
    sigma
}

/// Bit mask of the qubits carrying X or Y, which flip the row index.
fn flip_mask(sigma: &[u8]) -> usize {
    let n = sigma.len();
    sigma
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 1 || s == 2)
        .fold(0, |acc, (q, _)| acc | 1 << (n - 1 - q))
}

/// `B_σ[r, r ^ flip]`.
fn entry(sigma: &[u8], r: usize) -> Complex64 {
    let n = sigma.len();
    let mut acc = ONE;
    for (q, &s) in sigma.iter().enumerate() {
        let a = (r >> (n - 1 - q)) & 1;
        acc *= match (s, a) {
            (2, 0) => -I,
            (2, _) => I,
            (3, 1) => -ONE,
            _ => ONE,
        };
    }
    acc
}
