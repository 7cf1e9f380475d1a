//! Inputs on which the checked inequalities hold with equality. Each one pins
//! the normalization conventions of a check, since a wrong power of two or a
//! missing conjugate shows up here as a nonzero slack.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::inequalities::checks::{
    check_epr_channel_norm, check_holder_sequences, check_hypercontractivity,
    check_partial_trace_norm, check_spectral_power, max_admissible_rho, SlackReport,
};
use crate::inequalities::ensemble::MatrixSampler;
use crate::inequalities::suite::grids;
use crate::linalg::ComplexMatrix;
use crate::quantum::{epr_state, QuantumChannel};

/// Slack magnitude allowed for an equality case.
pub const EQUALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityCase {
    pub name: String,
    pub report: SlackReport,
}

impl EqualityCase {
    pub fn holds(&self) -> bool {
        self.report.slack.abs() <= EQUALITY_TOL
    }
}

fn case(name: impl Into<String>, report: SlackReport) -> EqualityCase {
    EqualityCase {
        name: name.into(),
        report,
    }
}

/// All equality cases, with random inputs drawn from `seed`.
pub fn equality_cases(seed: u64) -> Result<Vec<EqualityCase>> {
    let mut out = Vec::new();
    let mut s = MatrixSampler::new(seed);

    for n in 1..=3 {
        let id = ComplexMatrix::identity(1 << n);
        for p in grids::HYPER_P {
            for q in grids::HYPER_Q {
                let rho = max_admissible_rho(p, q);
                out.push(case(
                    format!("hypercontractivity identity n={n} p={p} q={q}"),
                    check_hypercontractivity(&id, rho, p, q, n, 0)?,
                ));
            }
        }
        // p = q admits only the noiseless channel
        let a = s.psd(1 << n);
        out.push(case(
            format!("hypercontractivity p=q=2 n={n}"),
            check_hypercontractivity(&a, 1.0, 2.0, 2.0, n, 0)?,
        ));
    }

    let id2 = ComplexMatrix::identity(2);
    out.push(case(
        "holder A=B=I q=2",
        check_holder_sequences(std::slice::from_ref(&id2), std::slice::from_ref(&id2), 2.0)?,
    ));
    let seq: Vec<ComplexMatrix> = (0..3).map(|_| s.psd(3)).collect();
    out.push(case(
        "holder A_i=B_i psd q=2",
        check_holder_sequences(&seq, &seq, 2.0)?,
    ));

    out.push(case(
        "partial-trace identity p=1",
        check_partial_trace_norm(&ComplexMatrix::identity(4), 1.0, (2, 2))?,
    ));
    out.push(case(
        "partial-trace epr p=1",
        check_partial_trace_norm(&epr_state(1), 1.0, (2, 2))?,
    ));

    for d in [2, 3, 4] {
        out.push(case(
            format!("spectral-power identity d={d} q=2"),
            check_spectral_power(&ComplexMatrix::identity(d), 2.0)?,
        ));
    }
    out.push(case(
        "spectral-power diag(2,0) q=2",
        check_spectral_power(&ComplexMatrix::from_real_diag(&[2.0, 0.0]), 2.0)?,
    ));

    for n in 1..=2 {
        out.push(case(
            format!("epr-channel identity n={n}"),
            check_epr_channel_norm(&QuantumChannel::identity(1 << n), n)?,
        ));
        out.push(case(
            format!("epr-channel trace n={n}"),
            check_epr_channel_norm(&QuantumChannel::trace(1 << n), n)?,
        ));
    }
    Ok(out)
}
