//! Each check evaluates both sides of one inequality and reports the slack
//! `rhs − lhs` instead of a verdict, so cases can be ranked by tightness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    partial_trace, schatten_from_singular_values, schatten_norm, singular_values, spectral_norm,
    trace_norm, ComplexMatrix, SchattenP, PSD_TOL,
};
use crate::quantum::{
    channel_apply, depolarize_unchecked, epr_state, isotropic_state, QuantumChannel,
};

/// Parameters that produced a [`SlackReport`]; unused fields stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SlackParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Factor dimensions `(dim A, dim B)` for partial-trace cases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`; negative means the inequality failed on this input.
    pub slack: f64,
    pub params: SlackParams,
    /// Input matrices, attached by the suite runner to failing or extremal cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<ComplexMatrix>>,
}

impl SlackReport {
    pub fn new(lhs: f64, rhs: f64, params: SlackParams) -> Self {
        Self {
            lhs,
            rhs,
            slack: rhs - lhs,
            params,
            witness: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.params.seed = Some(seed);
        self
    }

    pub fn with_witness(mut self, witness: Vec<ComplexMatrix>) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// Largest admissible noise `√((p−1)/(q−1))`; 1 when `p = q`.
pub fn max_admissible_rho(p: f64, q: f64) -> f64 {
    if p == q {
        1.0
    } else {
        ((p - 1.0) / (q - 1.0)).sqrt()
    }
}

/// `2^{−n/q}‖(Δ_ρ^{⊗n} ⊗ id_{2^m})(A)‖_q ≤ 2^{−n/p}‖A‖_p` for
/// `1 ≤ p ≤ q < ∞` and `ρ ≤ √((p−1)/(q−1))`.
pub fn check_hypercontractivity(
    a: &ComplexMatrix,
    rho: f64,
    p: f64,
    q: f64,
    n: usize,
    m: usize,
) -> Result<SlackReport> {
    if !(p >= 1.0 && p <= q && q.is_finite()) {
        return Err(Error::Domain(format!(
            "need 1 <= p <= q < inf, got p={p}, q={q}"
        )));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Domain(format!("rho must lie in [0, 1], got {rho}")));
    }
    let limit = max_admissible_rho(p, q);
    if rho > limit + 1e-12 {
        return Err(Error::Domain(format!(
            "rho = {rho} exceeds sqrt((p-1)/(q-1)) = {limit}"
        )));
    }
    hypercontractivity_slack(a, rho, rho, p, q, n, m)
}

/// Evaluates the hypercontractivity sides with the channel noise `applied`
/// decoupled from the reported `rho`; the verification suite uses this to
/// inject a faulty channel.
pub(crate) fn hypercontractivity_slack(
    a: &ComplexMatrix,
    rho: f64,
    applied: f64,
    p: f64,
    q: f64,
    n: usize,
    m: usize,
) -> Result<SlackReport> {
    if n == 0 {
        return Err(Error::Domain("hypercontractivity needs n >= 1".into()));
    }
    let qubits: Vec<usize> = (0..n).collect();
    let out = depolarize_unchecked(a, applied, &qubits, n + m)?;
    let nf = n as f64;
    let lhs = (-nf / q).exp2() * schatten_norm(&out, SchattenP::Finite(q))?;
    let rhs = (-nf / p).exp2() * schatten_norm(a, SchattenP::Finite(p))?;
    Ok(SlackReport::new(
        lhs,
        rhs,
        SlackParams {
            p: Some(p),
            q: Some(q),
            rho: Some(rho),
            n: Some(n),
            m: Some(m),
            ..SlackParams::default()
        },
    ))
}

/// Matrix Hölder for sequences:
/// `Re Tr[Σ A_i B_i] ≤ (Σ Tr|A_i|^p)^{1/p} (Σ Tr|B_i|^q)^{1/q}` with `1/p + 1/q = 1`.
pub fn check_holder_sequences(
    a_seq: &[ComplexMatrix],
    b_seq: &[ComplexMatrix],
    q: f64,
) -> Result<SlackReport> {
    if a_seq.len() != b_seq.len() {
        return Err(Error::DimensionMismatch {
            expected: a_seq.len(),
            found: b_seq.len(),
        });
    }
    if a_seq.is_empty() {
        return Err(Error::Domain("Hölder check needs at least one pair".into()));
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::Domain(format!(
            "q must be a finite real > 1, got {q}"
        )));
    }
    let p = q / (q - 1.0);
    let mut trace = crate::linalg::ZERO;
    let mut sum_a = 0.0;
    let mut sum_b = 0.0;
    let mut all_psd = true;
    for (a, b) in a_seq.iter().zip(b_seq) {
        let d = a.require_square()?;
        b.require_dim(d)?;
        trace += a.trace_product(b);
        let sa = singular_values(a)?;
        let sb = singular_values(b)?;
        sum_a += schatten_from_singular_values(&sa, SchattenP::Finite(p)).powf(p);
        sum_b += schatten_from_singular_values(&sb, SchattenP::Finite(q)).powf(q);
        all_psd &= is_psd(a)? && is_psd(b)?;
    }
    let rhs = sum_a.powf(1.0 / p) * sum_b.powf(1.0 / q);
    if all_psd && trace.im.abs() > 1e-10 * rhs.max(1.0) {
        return Err(Error::Domain(format!(
            "trace of PSD products has imaginary residue {:e}",
            trace.im
        )));
    }
    Ok(SlackReport::new(
        trace.re,
        rhs,
        SlackParams {
            p: Some(p),
            q: Some(q),
            ..SlackParams::default()
        },
    ))
}

fn is_psd(m: &ComplexMatrix) -> Result<bool> {
    if !m.is_hermitian() {
        return Ok(false);
    }
    Ok(crate::linalg::hermitian_eigenvalues(m)?[0] >= -PSD_TOL)
}

/// `‖Tr_B M‖_p ≤ dim(B)^{(p−1)/p} ‖M‖_p` for `M` on `A ⊗ B`.
pub fn check_partial_trace_norm(
    m: &ComplexMatrix,
    p: f64,
    dims: (usize, usize),
) -> Result<SlackReport> {
    let sp = SchattenP::new(p)?;
    let (da, db) = dims;
    let reduced = partial_trace(m, &[da, db], &[0])?;
    let lhs = schatten_norm(&reduced, sp)?;
    let rhs = (db as f64).powf((p - 1.0) / p) * schatten_norm(m, sp)?;
    Ok(SlackReport::new(
        lhs,
        rhs,
        SlackParams {
            p: Some(p),
            dims: Some([da, db]),
            ..SlackParams::default()
        },
    ))
}

/// `‖M‖_q^q ≤ ‖M‖^{q−1} · ‖M‖₁` for `q ≥ 1`.
pub fn check_spectral_power(m: &ComplexMatrix, q: f64) -> Result<SlackReport> {
    let sq = SchattenP::new(q)?;
    let SchattenP::Finite(q) = sq else {
        return Err(Error::Domain("q must be finite".into()));
    };
    let sv = singular_values(m)?;
    let lhs = schatten_from_singular_values(&sv, sq).powf(q);
    let top = schatten_from_singular_values(&sv, SchattenP::Infinity);
    let rhs = top.powf(q - 1.0) * schatten_from_singular_values(&sv, SchattenP::Finite(1.0));
    Ok(SlackReport::new(
        lhs,
        rhs,
        SlackParams {
            q: Some(q),
            ..SlackParams::default()
        },
    ))
}

/// `‖(C ⊗ id)(Φ^{⊗n})‖ ≤ 2^{t−n}` for a trace-nonincreasing `C: 2^n → 2^t`.
pub fn check_epr_channel_norm(c: &QuantumChannel, n: usize) -> Result<SlackReport> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let side = 1usize << n;
    if c.in_dim() != side {
        return Err(Error::DimensionMismatch {
            expected: side,
            found: c.in_dim(),
        });
    }
    if !c.out_dim().is_power_of_two() {
        return Err(Error::Domain(format!(
            "channel output dimension {} is not a power of two",
            c.out_dim()
        )));
    }
    if !c.is_trace_nonincreasing() {
        return Err(Error::Domain("channel must be trace-nonincreasing".into()));
    }
    let t = c.out_dim().trailing_zeros() as usize;
    let out = channel_apply(c, &epr_state(n), 0, &[side, side])?;
    let lhs = spectral_norm(&out)?;
    let rhs = (t as f64 - n as f64).exp2();
    Ok(SlackReport::new(
        lhs,
        rhs,
        SlackParams {
            n: Some(n),
            m: Some(t),
            ..SlackParams::default()
        },
    ))
}

/// Both sides of `Tr[(A⊗B)·Φ_ρ^{⊗n}] = 2^{−n} Tr[Δ_ρ^{⊗n}(A)·Bᵀ]`.
/// `lhs`/`rhs` hold the real parts; `slack = −|lhs − rhs|` over the complex
/// values, so zero is exact agreement.
pub fn check_trace_identity(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    rho: f64,
    n: usize,
) -> Result<SlackReport> {
    crate::quantum::check_unit_interval("rho", rho)?;
    trace_identity_slack(a, b, rho, rho, n)
}

pub(crate) fn trace_identity_slack(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    rho: f64,
    applied: f64,
    n: usize,
) -> Result<SlackReport> {
    let side = 1usize << n;
    a.require_dim(side)?;
    b.require_dim(side)?;
    let state = isotropic_state(rho, n)?;
    let direct = a.kron(b).trace_product(&state);
    let qubits: Vec<usize> = (0..n).collect();
    let noisy = depolarize_unchecked(a, applied, &qubits, n)?;
    let reduced = noisy.trace_product(&b.transpose()) / side as f64;
    Ok(SlackReport {
        lhs: direct.re,
        rhs: reduced.re,
        slack: -(direct - reduced).norm(),
        params: SlackParams {
            rho: Some(rho),
            n: Some(n),
            ..SlackParams::default()
        },
        witness: None,
    })
}

/// `‖Tr_B M‖₁ ≤ ‖M‖₁`, the `p = 1` case of [`check_partial_trace_norm`].
pub fn trace_norm_contraction(m: &ComplexMatrix, dims: (usize, usize)) -> Result<(f64, f64)> {
    let reduced = partial_trace(m, &[dims.0, dims.1], &[0])?;
    Ok((trace_norm(&reduced)?, trace_norm(m)?))
}
