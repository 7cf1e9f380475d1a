//! Exact success probabilities and output min-entropies.
//!
//! Every evaluator works with traces against `Φ_ρ^{⊗n}` (Alice's `n` qubits
//! first, then Bob's). The free and classical models are also evaluated a
//! second way, `2^{-n} Σ Tr[Δ_ρ^{⊗n}(P)·Q^T]` with the transpose taken in the
//! computational basis, and the two numbers must agree before anything is
//! returned.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::quantum::{channel_apply, check_unit_interval, depolarize, isotropic_state};

use super::povm::Povm;
use super::strategy::{ClassicalStrategy, FreeStrategy, QuantumStrategy, Strategy};

/// Agreement required between the direct and reduced evaluations.
pub const PATH_TOL: f64 = 1e-10;

const NEGATIVE_CLAMP: f64 = 1e-9;

/// The two independent evaluations of one success probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationPaths {
    pub direct: f64,
    pub reduced: f64,
}

/// Eigensolver noise can push an exact zero slightly negative.
pub(crate) fn clamp_probability(p: f64) -> f64 {
    if (-NEGATIVE_CLAMP..0.0).contains(&p) {
        0.0
    } else {
        p
    }
}

fn paired_paths<'a>(
    pairs: impl Iterator<Item = (&'a ComplexMatrix, &'a ComplexMatrix)> + Clone,
    rho: f64,
    n: usize,
) -> Result<EvaluationPaths> {
    check_unit_interval("rho", rho)?;
    let state = isotropic_state(rho, n)?;
    let qubits: Vec<usize> = (0..n).collect();
    let mut direct = 0.0;
    let mut reduced = 0.0;
    for (p, q) in pairs {
        direct += p.kron(q).trace_product(&state).re;
        let noisy = depolarize(p, rho, &qubits, n)?;
        reduced += noisy.trace_product(&q.transpose()).re;
    }
    reduced /= (1usize << n) as f64;
    if (direct - reduced).abs() > PATH_TOL {
        return Err(Error::PathMismatch { direct, reduced });
    }
    Ok(EvaluationPaths {
        direct: clamp_probability(direct),
        reduced: clamp_probability(reduced),
    })
}

pub fn success_free_paths(alice: &Povm, bob: &Povm, rho: f64, n: usize) -> Result<EvaluationPaths> {
    let s = FreeStrategy::new(n, alice.clone(), bob.clone())?;
    let pairs: Vec<_> = s
        .alice
        .iter()
        .filter_map(|(a, p)| s.bob.get(a).map(|q| (p, q)))
        .collect();
    paired_paths(pairs.iter().copied(), rho, n)
}

/// `Σ_a Tr[(P_a ⊗ Q_a) Φ_ρ^{⊗n}]`; outputs Bob never produces contribute zero.
pub fn success_free(alice: &Povm, bob: &Povm, rho: f64, n: usize) -> Result<f64> {
    Ok(success_free_paths(alice, bob, rho, n)?.direct)
}

pub fn success_classical_paths(s: &ClassicalStrategy, rho: f64) -> Result<EvaluationPaths> {
    let pairs: Vec<_> = s
        .alice()
        .iter()
        .filter_map(|((a, msg), p)| s.bob()[msg].get(a).map(|q| (p, q)))
        .collect();
    paired_paths(pairs.iter().copied(), rho, s.n())
}

/// `Σ_{a,π} Tr[(P_{a,π} ⊗ Q_a^π) Φ_ρ^{⊗n}]`.
pub fn success_classical(s: &ClassicalStrategy, rho: f64) -> Result<f64> {
    Ok(success_classical_paths(s, rho)?.direct)
}

/// `Σ_a Tr[(C_a ⊗ id)(Φ_ρ^{⊗n}) Q_a]`, Bob's POVM ordered as message then own qubits.
pub fn success_quantum(s: &QuantumStrategy, rho: f64) -> Result<f64> {
    check_unit_interval("rho", rho)?;
    let d = 1usize << s.n();
    let state = isotropic_state(rho, s.n())?;
    let mut total = 0.0;
    for (a, c) in s.subchannels() {
        let Some(q) = s.bob().get(a) else { continue };
        let sent = channel_apply(c, &state, 0, &[d, d])?;
        total += sent.trace_product(q).re;
    }
    Ok(clamp_probability(total))
}

pub fn success(strategy: &Strategy, rho: f64) -> Result<f64> {
    match strategy {
        Strategy::Free(s) => success_free(&s.alice, &s.bob, rho, s.n),
        Strategy::Classical(s) => success_classical(s, rho),
        Strategy::Quantum(s) => success_quantum(s, rho),
    }
}

/// Which distribution the min-entropy is taken over for classical strategies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinEntropyMode {
    /// Alice's output `a`, summed over messages.
    #[default]
    Marginal,
    /// The pair (output, message), as used by the classical lower-bound proof.
    Joint,
}

/// Alice's output distribution. Her reduced state is maximally mixed for
/// every `ρ`, so the distribution does not depend on the noise. Joint-mode
/// keys for classical strategies are `a/π`.
pub fn output_distribution(
    strategy: &Strategy,
    mode: MinEntropyMode,
) -> Result<BTreeMap<String, f64>> {
    let d = (1usize << strategy.n()) as f64;
    let mut mu = BTreeMap::new();
    match strategy {
        Strategy::Free(s) => {
            for (a, p) in s.alice.iter() {
                mu.insert(a.to_string(), p.trace().re / d);
            }
        }
        Strategy::Classical(s) => {
            for ((a, msg), p) in s.alice() {
                let key = match mode {
                    MinEntropyMode::Marginal => a.clone(),
                    MinEntropyMode::Joint => format!("{a}/{msg}"),
                };
                *mu.entry(key).or_insert(0.0) += p.trace().re / d;
            }
        }
        Strategy::Quantum(s) => {
            for (a, c) in s.subchannels() {
                mu.insert(a.clone(), c.kraus_gram().trace().re / d);
            }
        }
    }
    Ok(mu)
}

/// `min_a log₂(1/μ(a))` over outcomes with `μ(a) > 0`.
pub fn min_entropy_of(mu: impl IntoIterator<Item = f64>) -> Result<f64> {
    let max = mu
        .into_iter()
        .map(clamp_probability)
        .filter(|&p| p > 0.0)
        .fold(None, |acc: Option<f64>, p| {
            Some(acc.map_or(p, |m| m.max(p)))
        });
    match max {
        Some(p) => Ok(-p.log2()),
        None => Err(Error::Domain(
            "output distribution has empty support".into(),
        )),
    }
}

pub fn output_min_entropy_with(strategy: &Strategy, mode: MinEntropyMode) -> Result<f64> {
    min_entropy_of(output_distribution(strategy, mode)?.into_values())
}

/// Min-entropy of Alice's output, marginalized over any message.
pub fn output_min_entropy(strategy: &Strategy) -> Result<f64> {
    output_min_entropy_with(strategy, MinEntropyMode::Marginal)
}
