//! JSON strategy files.
//!
//! ```json
//! {
//!   "format": "qcr-strategy",
//!   "version": 1,
//!   "model": "free",
//!   "n": 1,
//!   "t": 0,
//!   "labels": ["0", "1"],
//!   "alice": [{"label": "0", "lower": [[1, 0], [0, 0], [0, 0]]}, ...],
//!   "bob":   [{"label": "0", "lower": [...]}, ...]
//! }
//! ```
//!
//! POVM elements keep only their lower triangle, row by row
//! (`(0,0), (1,0), (1,1), (2,0), ...`), each entry a `[re, im]` pair. The
//! upper triangle is the conjugate mirror, and diagonal imaginary parts must
//! vanish. `labels` lists Alice's outputs. Classical files pair each element
//! of Alice with a `message` and give Bob one POVM per message. Quantum files
//! list Kraus operators per output in full, row-major, with explicit shape.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix};
use crate::quantum::QuantumChannel;

use super::povm::Povm;
use super::strategy::{ClassicalStrategy, FreeStrategy, QuantumStrategy, Strategy};

pub const FORMAT_TAG: &str = "qcr-strategy";
pub const FORMAT_VERSION: u32 = 1;

const DIAGONAL_IMAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRecord {
    pub label: String,
    pub lower: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointElementRecord {
    pub label: String,
    pub message: String,
    pub lower: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MessagePovmRecord {
    pub message: String,
    pub povm: Vec<ElementRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KrausRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubchannelRecord {
    pub label: String,
    pub kraus: Vec<KrausRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum StrategyBody {
    Free {
        n: usize,
        t: usize,
        labels: Vec<String>,
        alice: Vec<ElementRecord>,
        bob: Vec<ElementRecord>,
    },
    Classical {
        n: usize,
        t: usize,
        labels: Vec<String>,
        alice: Vec<JointElementRecord>,
        bob: Vec<MessagePovmRecord>,
    },
    Quantum {
        n: usize,
        t: usize,
        labels: Vec<String>,
        subchannels: Vec<SubchannelRecord>,
        bob: Vec<ElementRecord>,
    },
}

/// On-disk record: a format tag and version, then the model-tagged body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyFile {
    pub format: String,
    pub version: u32,
    #[serde(flatten)]
    pub body: StrategyBody,
}

fn pair(z: Complex64) -> [f64; 2] {
    // normalise -0.0 so output bytes do not depend on rounding sign
    [z.re + 0.0, z.im + 0.0]
}

fn lower_triangle(m: &ComplexMatrix) -> Vec<[f64; 2]> {
    let d = m.dim();
    let mut out = Vec::with_capacity(d * (d + 1) / 2);
    for i in 0..d {
        for j in 0..=i {
            out.push(pair(m[(i, j)]));
        }
    }
    out
}

fn from_lower(what: &str, dim: usize, lower: &[[f64; 2]]) -> Result<ComplexMatrix> {
    let expected = dim * (dim + 1) / 2;
    if lower.len() != expected {
        return Err(Error::Format(format!(
            "{what}: expected {expected} lower-triangular entries for dimension {dim}, found {}",
            lower.len()
        )));
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    let mut it = lower.iter();
    for i in 0..dim {
        for j in 0..=i {
            let [re, im] = *it.next().expect("length checked");
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Format(format!(
                    "{what}: non-finite entry at ({i},{j})"
                )));
            }
            if i == j {
                if im.abs() > DIAGONAL_IMAG_TOL {
                    return Err(Error::Format(format!(
                        "{what}: diagonal entry ({i},{i}) has imaginary part {im:e}"
                    )));
                }
                m[(i, i)] = Complex64::new(re, 0.0);
            } else {
                m[(i, j)] = Complex64::new(re, im);
                m[(j, i)] = Complex64::new(re, -im);
            }
        }
    }
    Ok(m)
}

fn element_records(p: &Povm) -> Vec<ElementRecord> {
    p.iter()
        .map(|(label, m)| ElementRecord {
            label: label.to_string(),
            lower: lower_triangle(m),
        })
        .collect()
}

fn povm_from_records(what: &str, dim: usize, records: &[ElementRecord]) -> Result<Povm> {
    let pairs = records
        .iter()
        .map(|r| {
            from_lower(&format!("{what} element `{}`", r.label), dim, &r.lower)
                .map(|m| (r.label.clone(), m))
        })
        .collect::<Result<Vec<_>>>()?;
    Povm::from_pairs(pairs)
}

fn kraus_record(k: &ComplexMatrix) -> KrausRecord {
    KrausRecord {
        rows: k.rows(),
        cols: k.cols(),
        entries: k.as_slice().iter().copied().map(pair).collect(),
    }
}

fn kraus_from_record(what: &str, r: &KrausRecord) -> Result<ComplexMatrix> {
    let data = r
        .entries
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    ComplexMatrix::from_vec(r.rows, r.cols, data).map_err(|e| Error::Format(format!("{what}: {e}")))
}

impl StrategyFile {
    pub fn from_strategy(s: &Strategy) -> Self {
        let labels = s.output_labels();
        let body = match s {
            Strategy::Free(f) => StrategyBody::Free {
                n: f.n,
                t: 0,
                labels,
                alice: element_records(&f.alice),
                bob: element_records(&f.bob),
            },
            Strategy::Classical(c) => StrategyBody::Classical {
                n: c.n(),
                t: c.t(),
                labels,
                alice: c
                    .alice()
                    .iter()
                    .map(|((a, msg), m)| JointElementRecord {
                        label: a.clone(),
                        message: msg.clone(),
                        lower: lower_triangle(m),
                    })
                    .collect(),
                bob: c
                    .bob()
                    .iter()
                    .map(|(msg, p)| MessagePovmRecord {
                        message: msg.clone(),
                        povm: element_records(p),
                    })
                    .collect(),
            },
            Strategy::Quantum(q) => StrategyBody::Quantum {
                n: q.n(),
                t: q.t(),
                labels,
                subchannels: q
                    .subchannels()
                    .iter()
                    .map(|(a, c)| SubchannelRecord {
                        label: a.clone(),
                        kraus: c.kraus().iter().map(kraus_record).collect(),
                    })
                    .collect(),
                bob: element_records(q.bob()),
            },
        };
        Self {
            format: FORMAT_TAG.to_string(),
            version: FORMAT_VERSION,
            body,
        }
    }

    /// Rebuilds and validates the strategy. The first violated invariant is
    /// reported by name (completeness, positivity, trace, dimension, labels).
    pub fn to_strategy(&self) -> Result<Strategy> {
        if self.format != FORMAT_TAG {
            return Err(Error::Format(format!(
                "unknown format tag `{}`, expected `{FORMAT_TAG}`",
                self.format
            )));
        }
        if self.version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported version {}",
                self.version
            )));
        }
        let (n, declared_t, labels) = match &self.body {
            StrategyBody::Free { n, t, labels, .. }
            | StrategyBody::Classical { n, t, labels, .. }
            | StrategyBody::Quantum { n, t, labels, .. } => (*n, *t, labels),
        };
        if n == 0 || n > 12 {
            return Err(Error::Format(format!("n must be in 1..=12, got {n}")));
        }
        let d = 1usize << n;
        let strategy = match &self.body {
            StrategyBody::Free { alice, bob, .. } => {
                let alice = povm_from_records("Alice's POVM", d, alice)?;
                let bob = povm_from_records("Bob's POVM", d, bob)?;
                Strategy::Free(FreeStrategy::new(n, alice, bob)?)
            }
            StrategyBody::Classical { alice, bob, .. } => {
                let mut joint = BTreeMap::new();
                for r in alice {
                    let m = from_lower(
                        &format!("Alice's element `{}` with message `{}`", r.label, r.message),
                        d,
                        &r.lower,
                    )?;
                    if joint
                        .insert((r.label.clone(), r.message.clone()), m)
                        .is_some()
                    {
                        return Err(Error::InvalidStrategy(format!(
                            "labels: duplicate element `{}` with message `{}`",
                            r.label, r.message
                        )));
                    }
                }
                let mut per_message = BTreeMap::new();
                for r in bob {
                    let p = povm_from_records(
                        &format!("Bob's POVM for message `{}`", r.message),
                        d,
                        &r.povm,
                    )?;
                    if per_message.insert(r.message.clone(), p).is_some() {
                        return Err(Error::InvalidStrategy(format!(
                            "labels: duplicate POVM for message `{}`",
                            r.message
                        )));
                    }
                }
                Strategy::Classical(ClassicalStrategy::new(n, joint, per_message)?)
            }
            StrategyBody::Quantum {
                t,
                subchannels,
                bob,
                ..
            } => {
                if *t > 12 {
                    return Err(Error::Format(format!("t must be <= 12, got {t}")));
                }
                let mut subs = BTreeMap::new();
                for r in subchannels {
                    let what = format!("sub-channel `{}`", r.label);
                    let kraus = r
                        .kraus
                        .iter()
                        .map(|k| kraus_from_record(&what, k))
                        .collect::<Result<Vec<_>>>()?;
                    let c = QuantumChannel::new(kraus)
                        .map_err(|e| Error::Format(format!("{what}: {e}")))?;
                    if subs.insert(r.label.clone(), c).is_some() {
                        return Err(Error::InvalidStrategy(format!(
                            "labels: duplicate sub-channel `{}`",
                            r.label
                        )));
                    }
                }
                let bob = povm_from_records("Bob's POVM", (1usize << t) * d, bob)?;
                Strategy::Quantum(QuantumStrategy::new(n, *t, subs, bob)?)
            }
        };

        if strategy.t() != declared_t {
            return Err(Error::InvalidStrategy(format!(
                "dimension: declared t = {declared_t} but messages carry {}",
                strategy.t()
            )));
        }
        let declared: BTreeSet<&str> = labels.iter().map(String::as_str).collect();
        if declared.len() != labels.len() {
            return Err(Error::InvalidStrategy(
                "labels: declared label set has duplicates".into(),
            ));
        }
        let outputs = strategy.output_labels();
        let produced: BTreeSet<&str> = outputs.iter().map(String::as_str).collect();
        if produced != declared {
            return Err(Error::InvalidStrategy(format!(
                "labels: declared {:?} but Alice outputs {:?}",
                declared, produced
            )));
        }
        let bob_labels: Vec<String> = match &strategy {
            Strategy::Free(f) => f.bob.labels().map(str::to_string).collect(),
            Strategy::Classical(c) => c
                .bob()
                .values()
                .flat_map(|p| p.labels().map(str::to_string))
                .collect(),
            Strategy::Quantum(q) => q.bob().labels().map(str::to_string).collect(),
        };
        if let Some(extra) = bob_labels.iter().find(|l| !declared.contains(l.as_str())) {
            return Err(Error::InvalidStrategy(format!(
                "labels: Bob outputs undeclared label `{extra}`"
            )));
        }
        Ok(strategy)
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn strategy_to_json(s: &Strategy) -> String {
    let mut text =
        serde_json::to_string_pretty(&StrategyFile::from_strategy(s)).expect("serializable");
    text.push('\n');
    text
}

pub fn strategy_from_json(text: &str) -> Result<Strategy> {
    let file: StrategyFile =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("strategy file: {e}")))?;
    file.to_strategy()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::{basis_protocol, forward_qubit, full_communication};

    #[test]
    fn free_round_trip() {
        let (a, b) = basis_protocol(2).unwrap();
        let s = Strategy::Free(FreeStrategy::new(2, a, b).unwrap());
        let text = strategy_to_json(&s);
        assert!(text.contains("\"model\": \"free\""));
        assert_eq!(strategy_from_json(&text).unwrap(), s);
    }

    #[test]
    fn classical_and_quantum_round_trip() {
        let c = Strategy::Classical(full_communication(1).unwrap());
        assert_eq!(strategy_from_json(&strategy_to_json(&c)).unwrap(), c);
        let q = Strategy::Quantum(forward_qubit(1).unwrap());
        assert_eq!(strategy_from_json(&strategy_to_json(&q)).unwrap(), q);
    }

    #[test]
    fn names_violated_invariants() {
        let (a, b) = basis_protocol(1).unwrap();
        let s = Strategy::Free(FreeStrategy::new(1, a, b).unwrap());
        let mut file = StrategyFile::from_strategy(&s);
        if let StrategyBody::Free { alice, .. } = &mut file.body {
            alice[0].lower[0] = [0.5, 0.0];
        }
        let err = file.to_strategy().unwrap_err().to_string();
        assert!(err.contains("completeness"), "{err}");

        let mut file = StrategyFile::from_strategy(&s);
        if let StrategyBody::Free { alice, .. } = &mut file.body {
            alice[0].lower[0] = [1.0, 0.5];
        }
        let err = file.to_strategy().unwrap_err().to_string();
        assert!(err.contains("imaginary"), "{err}");

        let mut file = StrategyFile::from_strategy(&s);
        if let StrategyBody::Free { labels, .. } = &mut file.body {
            labels.push("11".into());
        }
        assert!(file
            .to_strategy()
            .unwrap_err()
            .to_string()
            .contains("labels"));

        let mut file = StrategyFile::from_strategy(&s);
        file.format = "other".into();
        assert!(file.to_strategy().is_err());
        assert!(strategy_from_json("{\"model\": \"free\"}").is_err());
    }
}
