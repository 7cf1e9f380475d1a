//! EPR and isotropic states, and the density-matrix entropy.
//!
//! Multi-pair states use the block layout `A₁…Aₙ B₁…Bₙ`: Alice's `n` qubits
//! form the first `2^n`-dimensional factor and Bob's the second, so local
//! operators act as plain Kronecker products `P ⊗ Q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, permute_factors, Complex64, ComplexMatrix, PSD_TOL};
use crate::quantum::channel::check_unit_interval;
use crate::quantum::depolarize;

/// `|Φ⟩⟨Φ|^{⊗n}` in block layout.
pub fn epr_state(n: usize) -> ComplexMatrix {
    assert!(n >= 1, "epr_state needs at least one pair");
    let side = 1usize << n;
    let dim = side * side;
    let mut m = ComplexMatrix::zeros(dim, dim);
    let w = Complex64::new(1.0 / side as f64, 0.0);
    for x in 0..side {
        for y in 0..side {
            m[(x * side + x, y * side + y)] = w;
        }
    }
    m
}

/// `Φ_ρ^{⊗n} = (Δ_ρ^{⊗n} ⊗ id)(Φ^{⊗n})` in block layout.
pub fn isotropic_state(rho: f64, n: usize) -> Result<ComplexMatrix> {
    check_unit_interval("rho", rho)?;
    if n == 0 {
        return Err(Error::Domain("isotropic_state needs n >= 1".into()));
    }
    let alice: Vec<usize> = (0..n).collect();
    depolarize(&epr_state(n), rho, &alice, 2 * n)
}

/// Closed-form spectrum of one isotropic pair, ascending:
/// `(1−ρ)/4` three times, then `(1+3ρ)/4`.
pub fn isotropic_eigenvalues(rho: f64) -> [f64; 4] {
    let low = (1.0 - rho) / 4.0;
    [low, low, low, (1.0 + 3.0 * rho) / 4.0]
}

fn pairwise_order(n: usize) -> Vec<usize> {
    (0..n)
        .map(|i| 2 * i)
        .chain((0..n).map(|i| 2 * i + 1))
        .collect()
}

/// Reorders a `2n`-qubit operator from the pairwise layout `(A₁B₁)(A₂B₂)…`
/// to the block layout `A₁…Aₙ B₁…Bₙ`.
pub fn pairwise_to_block(m: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    permute_factors(m, &vec![2; 2 * n], &pairwise_order(n))
}

/// Inverse of [`pairwise_to_block`].
pub fn block_to_pairwise(m: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    let order = pairwise_order(n);
    let mut inverse = vec![0; 2 * n];
    for (i, &o) in order.iter().enumerate() {
        inverse[o] = i;
    }
    permute_factors(m, &vec![2; 2 * n], &inverse)
}

/// Checks that `m` is a density matrix (Hermitian, PSD, unit trace to 1e-10)
/// and returns its clamped spectrum.
pub fn density_spectrum(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let e = hermitian_eig(m).map_err(|err| Error::NotDensity(err.to_string()))?;
    let tr: f64 = m.trace().re;
    if (tr - 1.0).abs() > 1e-10 {
        return Err(Error::NotDensity(format!("trace {tr} differs from 1")));
    }
    if e.min_eigenvalue() < -PSD_TOL {
        return Err(Error::NotDensity(format!(
            "negative eigenvalue {}",
            e.min_eigenvalue()
        )));
    }
    Ok(e.eigenvalues.into_iter().map(|x| x.max(0.0)).collect())
}

/// `H(ρ) = −Σ λ log₂ λ` in bits.
pub fn von_neumann_entropy(state: &ComplexMatrix) -> Result<f64> {
    let spectrum = density_spectrum(state)?;
    Ok(shannon_entropy(&spectrum))
}

/// Shannon entropy in bits with `0·log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    let h: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum();
    h.max(0.0)
}

/// Protocol parameters: noise `rho`, copies `n`, min-entropy target `k`,
/// success exponent `gamma` (success probability `2^{−γk}`) and
/// communication budget `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsotropicParams {
    pub rho: f64,
    pub n: usize,
    pub k: f64,
    pub gamma: f64,
    pub t: f64,
}

impl IsotropicParams {
    pub fn validate(&self) -> Result<()> {
        check_unit_interval("rho", self.rho)?;
        if self.n < 1 {
            return Err(Error::Domain("n must be >= 1".into()));
        }
        if !(self.k >= 1.0) {
            return Err(Error::Domain(format!("k must be >= 1, got {}", self.k)));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::Domain(format!(
                "gamma must lie in (0, 1), got {}",
                self.gamma
            )));
        }
        if !(self.t >= 0.0) {
            return Err(Error::Domain(format!("t must be >= 0, got {}", self.t)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, partial_trace, paulis};

    #[test]
    fn epr_is_pure_with_mixed_marginals() {
        for n in 1..=3 {
            let phi = epr_state(n);
            let ev = hermitian_eigenvalues(&phi).unwrap();
            assert!((ev[ev.len() - 1] - 1.0).abs() < 1e-12);
            assert!(ev[..ev.len() - 1].iter().all(|x| x.abs() < 1e-12));
            let side = 1 << n;
            let id = ComplexMatrix::identity(side).scale(1.0 / side as f64);
            for keep in 0..2 {
                let marginal = partial_trace(&phi, &[side, side], &[keep]).unwrap();
                assert!(marginal.max_abs_diff(&id) < 1e-15);
            }
        }
    }

    #[test]
    fn zz_correlation() {
        let z = &paulis()[3];
        let v = z.kron(z).trace_product(&epr_state(1));
        assert!((v.re - 1.0).abs() < 1e-15 && v.im.abs() < 1e-15);
    }

    #[test]
    fn isotropic_limits() {
        assert!(isotropic_state(1.0, 1).unwrap().max_abs_diff(&epr_state(1)) < 1e-15);
        let mixed = ComplexMatrix::identity(4).scale(0.25);
        assert!(isotropic_state(0.0, 1).unwrap().max_abs_diff(&mixed) < 1e-15);
        // mixture form ρΦ + (1−ρ)I/4
        let rho = 0.4;
        let mix = &epr_state(1).scale(rho) + &mixed.scale(1.0 - rho);
        assert!(isotropic_state(rho, 1).unwrap().max_abs_diff(&mix) < 1e-15);
        assert!(isotropic_state(-0.1, 1).is_err());
        assert!(isotropic_state(0.5, 0).is_err());
    }

    #[test]
    fn multi_pair_state_is_a_product_of_pairs() {
        let single = isotropic_state(0.6, 1).unwrap();
        let pairwise = single.kron(&single);
        let block = pairwise_to_block(&pairwise, 2).unwrap();
        assert!(block.max_abs_diff(&isotropic_state(0.6, 2).unwrap()) < 1e-15);
        assert!(
            block_to_pairwise(&block, 2)
                .unwrap()
                .max_abs_diff(&pairwise)
                < 1e-15
        );
    }

    #[test]
    fn entropy_values() {
        assert!(von_neumann_entropy(&epr_state(1)).unwrap().abs() < 1e-10);
        let mixed = ComplexMatrix::identity(4).scale(0.25);
        assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-12);
        let expect = -0.625 * 0.625f64.log2() - 3.0 * 0.125 * 0.125f64.log2();
        let h = von_neumann_entropy(&isotropic_state(0.5, 1).unwrap()).unwrap();
        assert!((h - expect).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_non_states() {
        assert!(matches!(
            von_neumann_entropy(&ComplexMatrix::identity(2)),
            Err(Error::NotDensity(_))
        ));
        let bad = ComplexMatrix::from_real_diag(&[1.5, -0.5]);
        assert!(von_neumann_entropy(&bad).is_err());
    }

    #[test]
    fn params_validation() {
        let ok = IsotropicParams {
            rho: 0.5,
            n: 2,
            k: 1.0,
            gamma: 0.1,
            t: 0.0,
        };
        assert!(ok.validate().is_ok());
        assert!(IsotropicParams { gamma: 1.0, ..ok }.validate().is_err());
        assert!(IsotropicParams { k: 0.5, ..ok }.validate().is_err());
        assert!(IsotropicParams { n: 0, ..ok }.validate().is_err());
        assert!(IsotropicParams { t: -1.0, ..ok }.validate().is_err());
    }
}
