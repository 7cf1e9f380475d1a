use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::g12;

use super::{
    achievable_quantum_rate, bound_classical_lb, bound_classical_sweep, bound_free,
    bound_quantum_lb, bound_quantum_sweep, capacity_upper, superdense_rate, SWEEP_REL_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundModel {
    /// Success-probability ceiling without communication.
    Free,
    /// Classical-communication lower bound.
    Classical,
    /// Quantum-communication lower bound.
    Quantum,
    /// `1 + ρ²`.
    Capacity,
    /// `2 − H(Φ_ρ)`.
    Superdense,
    /// Qubit rate of the superdense-coding protocol.
    Achievable,
}

impl BoundModel {
    pub const ALL: [BoundModel; 6] = [
        Self::Free,
        Self::Classical,
        Self::Quantum,
        Self::Capacity,
        Self::Superdense,
        Self::Achievable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Free => "free",
            Self::Classical => "classical",
            Self::Quantum => "quantum",
            Self::Capacity => "capacity",
            Self::Superdense => "superdense",
            Self::Achievable => "achievable",
        }
    }

    pub fn uses_gamma(self) -> bool {
        matches!(self, Self::Classical | Self::Quantum)
    }
}

impl fmt::Display for BoundModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown bound model `{s}`")))
    }
}

/// How the classical and quantum lower bounds are evaluated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Closed,
    Sweep,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Self::Closed),
            "sweep" => Ok(Self::Sweep),
            _ => Err(Error::Domain(format!(
                "unknown method `{s}` (expected closed or sweep)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSample {
    pub rho: f64,
    /// Zero for models that do not depend on `γ`.
    pub gamma: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMeta {
    pub model: BoundModel,
    pub method: Method,
    pub k: f64,
    pub rho_count: usize,
    pub rho_min: f64,
    pub rho_max: f64,
    pub gammas: Vec<f64>,
    pub sweep_rel_tol: f64,
    pub significant_digits: usize,
}

/// One model evaluated on a grid: `γ` slices in the order given, `ρ`
/// ascending inside each slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCurve {
    pub model: BoundModel,
    pub samples: Vec<BoundSample>,
    pub meta: CurveMeta,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    model: &'a str,
    rho: f64,
    gamma: f64,
    value: f64,
}

#[derive(Serialize)]
struct JsonCurve<'a> {
    meta: &'a CurveMeta,
    rows: Vec<JsonRow<'a>>,
}

impl BoundCurve {
    /// Evaluates `model` at every grid point. `k` scales the lower bounds and
    /// sets the min-entropy of the free bound; other models ignore it.
    pub fn evaluate(
        model: BoundModel,
        rhos: &[f64],
        gammas: &[f64],
        k: f64,
        method: Method,
    ) -> Result<Self> {
        if rhos.is_empty() {
            return Err(Error::Domain("rho grid is empty".into()));
        }
        if rhos.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("rho grid must be strictly ascending".into()));
        }
        let gammas: Vec<f64> = if model.uses_gamma() {
            if gammas.is_empty() {
                return Err(Error::Domain(format!(
                    "model {model} needs at least one gamma"
                )));
            }
            gammas.to_vec()
        } else {
            vec![0.0]
        };
        let mut samples = Vec::with_capacity(rhos.len() * gammas.len());
        for &gamma in &gammas {
            for &rho in rhos {
                let value = match (model, method) {
                    (BoundModel::Free, _) => bound_free(rho, k)?,
                    (BoundModel::Classical, Method::Closed) => bound_classical_lb(rho, gamma, k)?,
                    (BoundModel::Classical, Method::Sweep) => bound_classical_sweep(rho, gamma, k)?,
                    (BoundModel::Quantum, Method::Closed) => bound_quantum_lb(rho, gamma, k)?,
                    (BoundModel::Quantum, Method::Sweep) => bound_quantum_sweep(rho, gamma, k)?,
                    (BoundModel::Capacity, _) => capacity_upper(rho)?,
                    (BoundModel::Superdense, _) => superdense_rate(rho)?,
                    (BoundModel::Achievable, _) => achievable_quantum_rate(rho)?,
                };
                if !value.is_finite() {
                    return Err(Error::Domain(format!(
                        "model {model} is not finite at rho={rho}, gamma={gamma}"
                    )));
                }
                samples.push(BoundSample { rho, gamma, value });
            }
        }
        let meta = CurveMeta {
            model,
            method,
            k,
            rho_count: rhos.len(),
            rho_min: rhos[0],
            rho_max: rhos[rhos.len() - 1],
            gammas: if model.uses_gamma() {
                gammas
            } else {
                Vec::new()
            },
            sweep_rel_tol: SWEEP_REL_TOL,
            significant_digits: 12,
        };
        Ok(Self {
            model,
            samples,
            meta,
        })
    }

    pub fn csv_header() -> &'static str {
        "model,rho,gamma,value"
    }

    /// Rows only, without the header, each ending in a newline.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.model,
                g12(s.rho),
                g12(s.gamma),
                g12(s.value)
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}", Self::csv_header(), self.csv_rows())
    }

    /// `{"meta": ..., "rows": [{model, rho, gamma, value}, ...]}`, pretty-printed.
    pub fn to_json(&self) -> String {
        let doc = JsonCurve {
            meta: &self.meta,
            rows: self
                .samples
                .iter()
                .map(|s| JsonRow {
                    model: self.model.name(),
                    rho: s.rho,
                    gamma: s.gamma,
                    value: s.value,
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
        text
    }
}
