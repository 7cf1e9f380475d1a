//! Communication lower bounds, success-probability upper bounds and rates.
//!
//! The lower bounds come in two forms that are computed independently: a
//! closed form, and a numeric supremum over the free parameter `δ > 0` of the
//! objective the closed form maximizes. Both use the coupling `q = 1 + δ`,
//! `p = 1 + ρ²δ`.

mod curve;

pub use curve::{BoundCurve, BoundModel, BoundSample, CurveMeta, Method};

use crate::error::{Error, Result};
use crate::quantum::{isotropic_state, von_neumann_entropy};

/// Search window for `δ`, on a log scale.
pub const DELTA_MIN: f64 = 1e-9;
pub const DELTA_MAX: f64 = 1e9;
/// Golden-section stopping width, relative, in `ln δ`.
pub const SWEEP_REL_TOL: f64 = 1e-10;
/// Tolerance of the threshold bisection.
pub const BISECTION_TOL: f64 = 1e-10;

const COARSE_POINTS: usize = 2001;

fn check_rho(rho: f64) -> Result<()> {
    if (0.0..=1.0).contains(&rho) {
        Ok(())
    } else {
        Err(Error::Domain(format!("rho must lie in [0, 1], got {rho}")))
    }
}

fn check_lb_args(rho: f64, gamma: f64, k: f64) -> Result<()> {
    check_rho(rho)?;
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Domain(format!(
            "gamma must lie in (0, 1), got {gamma}"
        )));
    }
    if !(k >= 1.0) || !k.is_finite() {
        return Err(Error::Domain(format!(
            "k must be a finite number >= 1, got {k}"
        )));
    }
    Ok(())
}

/// `2^{-k(1−ρ)/(1+ρ)}`: best success probability without communication when
/// Alice's output has min-entropy `k`.
pub fn bound_free(rho: f64, k: f64) -> Result<f64> {
    check_rho(rho)?;
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!(
            "k must be a finite number >= 0, got {k}"
        )));
    }
    Ok((-k * (1.0 - rho) / (1.0 + rho)).exp2())
}

/// Classical bits needed to agree with probability `2^{-γk}`:
/// `(C(1−γ) − 2√(C(1−C)γ))·k`, `C = 1−ρ²`, clamped at 0.
pub fn bound_classical_lb(rho: f64, gamma: f64, k: f64) -> Result<f64> {
    check_lb_args(rho, gamma, k)?;
    let c = 1.0 - rho * rho;
    let v = c * (1.0 - gamma) - 2.0 * (c * (1.0 - c) * gamma).sqrt();
    Ok((v * k).max(0.0))
}

/// Objective maximized by [`bound_classical_lb`]: `C/(1+(1−C)δ) − γ/δ − γ`.
pub fn classical_objective(rho: f64, gamma: f64, delta: f64) -> f64 {
    let c = 1.0 - rho * rho;
    c / (1.0 + (1.0 - c) * delta) - gamma / delta - gamma
}

/// Numeric supremum of [`classical_objective`] over `δ`, times `k`, clamped at 0.
pub fn bound_classical_sweep(rho: f64, gamma: f64, k: f64) -> Result<f64> {
    check_lb_args(rho, gamma, k)?;
    // δ → ∞: only the C = 1 term survives
    let limit = if rho == 0.0 { 1.0 - gamma } else { -gamma };
    let sup = sup_over_delta(|d| classical_objective(rho, gamma, d), limit);
    Ok((sup * k).max(0.0))
}

/// Qubits needed to agree with probability `2^{-γk}`:
/// `(C − C²γ − √(C(1−C²)(2−Cγ)γ))·k`, `C = (1−ρ²)/(1+ρ²)`, clamped at 0.
pub fn bound_quantum_lb(rho: f64, gamma: f64, k: f64) -> Result<f64> {
    check_lb_args(rho, gamma, k)?;
    let r2 = rho * rho;
    let c = (1.0 - r2) / (1.0 + r2);
    let v = c - c * c * gamma - (c * (1.0 - c * c) * (2.0 - c * gamma) * gamma).sqrt();
    Ok((v * k).max(0.0))
}

/// `((1−ρ²)δ − γ(1+δ+ρ²δ+ρ²δ²)) / ((1+ρ²)δ + 2ρ²δ²)`.
pub fn quantum_objective(rho: f64, gamma: f64, delta: f64) -> f64 {
    let r2 = rho * rho;
    let num = (1.0 - r2) * delta - gamma * (1.0 + delta + r2 * delta + r2 * delta * delta);
    let den = (1.0 + r2) * delta + 2.0 * r2 * delta * delta;
    num / den
}

pub fn bound_quantum_sweep(rho: f64, gamma: f64, k: f64) -> Result<f64> {
    check_lb_args(rho, gamma, k)?;
    let limit = if rho == 0.0 {
        1.0 - gamma
    } else {
        -gamma / 2.0
    };
    let sup = sup_over_delta(|d| quantum_objective(rho, gamma, d), limit);
    Ok((sup * k).max(0.0))
}

/// Supremum of `f` over `δ ∈ [DELTA_MIN, DELTA_MAX]` and the `δ → ∞` limit.
///
/// A log-spaced scan locates the best grid point; golden-section search on
/// `ln δ` then refines within its two neighbours.
pub fn sup_over_delta(f: impl Fn(f64) -> f64, limit_at_infinity: f64) -> f64 {
    let lo = DELTA_MIN.ln();
    let hi = DELTA_MAX.ln();
    let step = (hi - lo) / (COARSE_POINTS - 1) as f64;
    let g = |x: f64| {
        let v = f(x.exp());
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let (best_i, best_v) = (0..COARSE_POINTS)
        .map(|i| (i, g(lo + step * i as f64)))
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
        );
    let a = lo + step * best_i.saturating_sub(1) as f64;
    let b = lo + step * (best_i + 1).min(COARSE_POINTS - 1) as f64;
    let refined = golden_max(&g, a, b);
    best_v.max(refined).max(limit_at_infinity)
}

fn golden_max(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..200 {
        if (b - a) <= SWEEP_REL_TOL * (a.abs() + b.abs()).max(1.0) {
            break;
        }
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    gc.max(gd).max(g(0.5 * (a + b)))
}

/// `inf_δ 2^{e(δ)}` over `δ > 0` together with both endpoint limits, capped at 1.
fn inf_power_of_two(exponent: impl Fn(f64) -> f64, limit_at_infinity: f64) -> f64 {
    // δ → 0 gives exponent 0, the trivial bound
    let sup = sup_over_delta(|d| -exponent(d), -limit_at_infinity).max(0.0);
    (-sup).exp2()
}

fn check_success_args(rho: f64, k: f64, t: f64) -> Result<()> {
    check_rho(rho)?;
    if !(k >= 0.0 && k.is_finite() && t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!(
            "k and t must be finite and >= 0, got k={k}, t={t}"
        )));
    }
    Ok(())
}

/// Success-probability ceiling with a `t`-bit classical message when every
/// (output, message) pair has probability at most `2^{-k}`:
/// `inf_δ 2^{t/q* − k(q−p)/(qp)}`.
pub fn success_bound_classical(rho: f64, k: f64, t: f64) -> Result<f64> {
    check_success_args(rho, k, t)?;
    let r2 = rho * rho;
    let exponent = |d: f64| t * d / (1.0 + d) - k * d * (1.0 - r2) / ((1.0 + d) * (1.0 + r2 * d));
    // the k-term decays like 1/δ unless ρ = 0
    let limit = if rho == 0.0 { t - k } else { t };
    Ok(inf_power_of_two(exponent, limit))
}

/// Success-probability ceiling with a `t`-qubit message when Alice's output
/// has min-entropy `k`: `inf_δ 2^{t/q* + t/p* − k(q−p)/(pq)}`.
pub fn success_bound_quantum(rho: f64, k: f64, t: f64) -> Result<f64> {
    check_success_args(rho, k, t)?;
    let r2 = rho * rho;
    let exponent = |d: f64| {
        t * d / (1.0 + d) + t * r2 * d / (1.0 + r2 * d)
            - k * d * (1.0 - r2) / ((1.0 + d) * (1.0 + r2 * d))
    };
    let limit = if rho == 0.0 { t - k } else { 2.0 * t };
    Ok(inf_power_of_two(exponent, limit))
}

/// `2 − H(Φ_ρ)`: classical bits per qubit carried by superdense coding over
/// one noisy pair. Negative for strong noise.
pub fn superdense_rate(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(2.0 - von_neumann_entropy(&isotropic_state(rho, 1)?)?)
}

/// The `ρ` at which superdense coding starts to beat plain transmission,
/// `superdense_rate(ρ) = 1`, by bisection to [`BISECTION_TOL`].
pub fn superdense_threshold() -> Result<f64> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if superdense_rate(mid)? < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Qubits per bit of min-entropy of the protocol that sends a classical
/// message through superdense coding when that helps:
/// `(1−ρ²)/max{1, 2 − H(Φ_ρ)}`.
pub fn achievable_quantum_rate(rho: f64) -> Result<f64> {
    let sd = superdense_rate(rho)?;
    Ok((1.0 - rho * rho) / sd.max(1.0))
}

/// `1 + ρ²`: entanglement-assisted classical capacity ceiling of a noiseless
/// qubit channel with isotropic pairs.
pub fn capacity_upper(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(1.0 + rho * rho)
}
