//! Alternating maximization of the no-communication success probability.
//!
//! With Bob fixed, the objective is linear in Alice's POVM:
//! `2^{-n} Σ_a Tr[P_a E_a]` with `E_a = Δ_ρ^{⊗n}(Q_a^T)`. With Alice fixed it
//! is linear in Bob's, with `F_a = Δ_ρ^{⊗n}(P_a)^T`. Each half-step builds a
//! few candidate POVMs from the effective operators. Alice's candidates are
//! pushed onto the min-entropy constraint `2^{-n}Tr[P_a] ≤ 2^{-k}`, and a
//! candidate replaces the incumbent only if it is feasible and does not lower
//! the objective. The objective is therefore monotone, and the result is a
//! certified feasible lower bound on the optimum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequalities::suite::splitmix64;
use crate::inequalities::MatrixSampler;
use crate::linalg::{hermitian_eig, psd_power, ComplexMatrix, PSD_TOL};
use crate::quantum::{check_unit_interval, depolarize};

use super::evaluate::{success_free_paths, EvaluationPaths};
use super::library::coarse_basis_povm;
use super::povm::{bit_label, Povm};

const MAX_QUBITS: usize = 3;
const FEAS_TOL: f64 = 1e-10;

/// Where a seesaw run starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeesawStart {
    /// Both parties measure the first `k` qubits in the computational basis.
    Basis,
    /// Random feasible POVMs drawn from the given seed.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeesawResult {
    pub alice: Povm,
    pub bob: Povm,
    pub probability: f64,
    /// Objective after the start and after every half-iteration.
    pub history: Vec<f64>,
    pub start: SeesawStart,
}

struct Problem {
    rho: f64,
    n: usize,
    outcomes: usize,
    cap: f64,
    qubits: Vec<usize>,
}

impl Problem {
    fn dim(&self) -> usize {
        1 << self.n
    }

    fn channel(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        depolarize(m, self.rho, &self.qubits, self.n)
    }

    fn objective(&self, alice: &[ComplexMatrix], bob: &[ComplexMatrix]) -> Result<f64> {
        let mut total = 0.0;
        for (p, q) in alice.iter().zip(bob) {
            total += self.channel(p)?.trace_product(&q.transpose()).re;
        }
        Ok(total / self.dim() as f64)
    }

    fn feasible(&self, family: &[ComplexMatrix], capped: bool) -> Result<bool> {
        let d = self.dim();
        let mut total = ComplexMatrix::zeros(d, d);
        for m in family {
            if !m.is_hermitian() || hermitian_eig(m)?.min_eigenvalue() < -PSD_TOL {
                return Ok(false);
            }
            if capped && m.trace().re > self.cap * (1.0 + 1e-9) {
                return Ok(false);
            }
            total += m;
        }
        Ok(total.max_abs_diff(&ComplexMatrix::identity(d)) <= FEAS_TOL)
    }
}

/// `S^{-1/2} F_a S^{-1/2}` on the support of `S = Σ F_a`, with the kernel of
/// `S` shared evenly so the family sums to the identity.
fn normalize_family(family: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
    let d = family[0].dim();
    let mut s = ComplexMatrix::zeros(d, d);
    for f in family {
        s += f;
    }
    let eig = hermitian_eig(&s.hermitian_part())?;
    let scale = eig.max_eigenvalue().max(1e-300);
    let support_tol = 1e-12 * scale;
    let w = eig.map_spectrum(|l| if l > support_tol { l.powf(-0.5) } else { 0.0 });
    let kernel = eig.map_spectrum(|l| if l > support_tol { 0.0 } else { 1.0 });
    let share = kernel.scale(1.0 / family.len() as f64);
    Ok(family
        .iter()
        .map(|f| (&(&(&w * f) * &w) + &share).hermitian_part())
        .collect())
}

/// Projector onto the eigenspaces of `m` with eigenvalue above `tol`.
fn positive_projector(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(&m.hermitian_part())?;
    Ok(eig.map_spectrum(|l| if l > tol { 1.0 } else { 0.0 }))
}

/// Candidate POVMs for one half-step, before any constraint handling.
fn candidates(
    effective: &[ComplexMatrix],
    current: &[ComplexMatrix],
) -> Result<Vec<Vec<ComplexMatrix>>> {
    let d = effective[0].dim();
    let k = effective.len() as f64;
    let mut mean = ComplexMatrix::zeros(d, d);
    for e in effective {
        mean += e;
    }
    let mean = mean.scale(1.0 / k);
    let scale = effective
        .iter()
        .map(ComplexMatrix::max_abs)
        .fold(0.0, f64::max)
        .max(1e-300);

    let mut out = Vec::new();
    // advantage projectors: where E_a beats the average
    let proj = effective
        .iter()
        .map(|e| positive_projector(&(e - &mean), 1e-12 * scale))
        .collect::<Result<Vec<_>>>()?;
    out.push(normalize_family(&proj)?);
    // multiplicative reweighting of the incumbent
    let reweighted = current
        .iter()
        .zip(effective)
        .map(|(p, e)| {
            let r = psd_power(p, 0.5)?;
            Ok((&(&r * e) * &r).hermitian_part())
        })
        .collect::<Result<Vec<_>>>()?;
    out.push(normalize_family(&reweighted)?);
    // sharpened effective operators
    for beta in [1.0, 4.0, 16.0] {
        let family = effective
            .iter()
            .map(|e| psd_power(&e.scale(1.0 / scale).hermitian_part(), beta))
            .collect::<Result<Vec<_>>>()?;
        out.push(normalize_family(&family)?);
    }
    Ok(out)
}

/// Rescales elements whose trace exceeds `cap` and hands the freed weight
/// `R = I − Σ P_a` to the remaining elements in proportion to their unused
/// trace budget `cap − Tr[P_a]`. With `2^k` outcomes the budgets add up to
/// exactly `Tr[R]`, so every element ends at trace `cap`.
fn enforce_cap(family: &[ComplexMatrix], cap: f64) -> Vec<ComplexMatrix> {
    let d = family[0].dim();
    let mut out: Vec<ComplexMatrix> = family
        .iter()
        .map(|p| {
            let tr = p.trace().re;
            if tr > cap {
                p.scale(cap / tr)
            } else {
                p.clone()
            }
        })
        .collect();
    let mut residual = ComplexMatrix::identity(d);
    for p in &out {
        residual = &residual - p;
    }
    let budgets: Vec<f64> = out.iter().map(|p| (cap - p.trace().re).max(0.0)).collect();
    let total: f64 = budgets.iter().sum();
    if total > 0.0 {
        for (p, b) in out.iter_mut().zip(&budgets) {
            *p += &residual.scale(b / total);
            *p = p.hermitian_part();
        }
    }
    out
}

fn best_update(
    problem: &Problem,
    effective: &[ComplexMatrix],
    current: &[ComplexMatrix],
    current_value: f64,
    value_of: impl Fn(&[ComplexMatrix]) -> Result<f64>,
    capped: bool,
) -> Result<(Vec<ComplexMatrix>, f64)> {
    let mut best = (current.to_vec(), current_value);
    for candidate in candidates(effective, current)? {
        let candidate = if capped {
            enforce_cap(&candidate, problem.cap)
        } else {
            candidate
        };
        if !problem.feasible(&candidate, capped)? {
            continue;
        }
        let value = value_of(&candidate)?;
        if value > best.1 {
            best = (candidate, value);
        }
    }
    Ok(best)
}

fn to_povm(family: &[ComplexMatrix], k: usize) -> Result<Povm> {
    Povm::from_pairs(
        family
            .iter()
            .enumerate()
            .map(|(x, m)| (bit_label(x, k), m.clone())),
    )
}

fn check_parameters(rho: f64, n: usize, k: usize) -> Result<()> {
    check_unit_interval("rho", rho)?;
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Domain(format!(
            "seesaw supports 1 <= n <= {MAX_QUBITS}, got {n}"
        )));
    }
    if k > n {
        return Err(Error::Domain(format!(
            "infeasible: min-entropy k = {k} exceeds n = {n}"
        )));
    }
    Ok(())
}

/// One seesaw run from a chosen start.
pub fn seesaw_from(
    rho: f64,
    n: usize,
    k: usize,
    iters: usize,
    start: SeesawStart,
) -> Result<SeesawResult> {
    check_parameters(rho, n, k)?;
    let problem = Problem {
        rho,
        n,
        outcomes: 1 << k,
        cap: (1usize << (n - k)) as f64,
        qubits: (0..n).collect(),
    };
    let d = problem.dim();

    let (mut alice, mut bob): (Vec<ComplexMatrix>, Vec<ComplexMatrix>) = match start {
        SeesawStart::Basis => {
            let a = coarse_basis_povm(n, k)?;
            let alice: Vec<_> = a.elements().values().cloned().collect();
            // Bob guesses the same prefix
            (alice.clone(), alice)
        }
        SeesawStart::Random(seed) => {
            let mut s = MatrixSampler::new(seed);
            let a = enforce_cap(&s.povm(d, problem.outcomes)?, problem.cap);
            let b = s.povm(d, problem.outcomes)?;
            if !problem.feasible(&a, true)? {
                return Err(Error::Domain("random start is not feasible".into()));
            }
            (a, b)
        }
    };

    let mut value = problem.objective(&alice, &bob)?;
    let mut history = vec![value];
    for _ in 0..iters {
        let before = value;

        let eff_alice = bob
            .iter()
            .map(|q| problem.channel(&q.transpose()))
            .collect::<Result<Vec<_>>>()?;
        let (a, v) = best_update(
            &problem,
            &eff_alice,
            &alice,
            value,
            |c| problem.objective(c, &bob),
            true,
        )?;
        alice = a;
        value = v;
        history.push(value);

        let eff_bob = alice
            .iter()
            .map(|p| problem.channel(p).map(|m| m.transpose()))
            .collect::<Result<Vec<_>>>()?;
        let (b, v) = best_update(
            &problem,
            &eff_bob,
            &bob,
            value,
            |c| problem.objective(&alice, c),
            false,
        )?;
        bob = b;
        value = v;
        history.push(value);

        if value - before <= 1e-15 {
            break;
        }
    }

    let alice = to_povm(&alice, k)?;
    let bob = to_povm(&bob, k)?;
    let EvaluationPaths { direct, .. } = success_free_paths(&alice, &bob, rho, n)?;
    Ok(SeesawResult {
        alice,
        bob,
        probability: direct,
        history,
        start,
    })
}

/// Seed used by restart `r` of [`seesaw_restarts`].
pub fn restart_seed(seed: u64, r: usize) -> u64 {
    splitmix64(seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// One seesaw run from a random feasible start drawn from `seed`.
pub fn seesaw_optimize(
    rho: f64,
    n: usize,
    k: usize,
    iters: usize,
    seed: u64,
) -> Result<SeesawResult> {
    seesaw_from(rho, n, k, iters, SeesawStart::Random(seed))
}

/// Best of `restarts` runs. Run 0 starts from the basis protocol and run `r`
/// from a random start seeded by [`restart_seed`]. Ties keep the earlier run.
pub fn seesaw_restarts(
    rho: f64,
    n: usize,
    k: usize,
    iters: usize,
    restarts: usize,
    seed: u64,
) -> Result<SeesawResult> {
    if restarts == 0 {
        return Err(Error::Domain("restarts must be >= 1".into()));
    }
    let mut best = seesaw_from(rho, n, k, iters, SeesawStart::Basis)?;
    for r in 1..restarts {
        let run = seesaw_from(rho, n, k, iters, SeesawStart::Random(restart_seed(seed, r)))?;
        if run.probability > best.probability {
            best = run;
        }
    }
    Ok(best)
}
