use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::quantum::QuantumChannel;

use super::povm::{check_label, validate_family, Povm};

const TRACE_PRESERVING_TOL: f64 = 1e-10;

fn qubit_dim(n: usize) -> Result<usize> {
    if n == 0 || n > 12 {
        return Err(Error::Domain(format!(
            "qubit count n must be in 1..=12, got {n}"
        )));
    }
    Ok(1 << n)
}

fn require_dim(what: &str, found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::InvalidStrategy(format!(
            "dimension: {what} acts on dimension {found}, expected {expected}"
        )))
    }
}

/// No-communication strategy: each party measures its own `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeStrategy {
    pub n: usize,
    pub alice: Povm,
    pub bob: Povm,
}

impl FreeStrategy {
    pub fn new(n: usize, alice: Povm, bob: Povm) -> Result<Self> {
        let d = qubit_dim(n)?;
        require_dim("Alice's POVM", alice.dim(), d)?;
        require_dim("Bob's POVM", bob.dim(), d)?;
        Ok(Self { n, alice, bob })
    }
}

/// One-way classical strategy. Alice's joint measurement produces an output
/// `a` together with a `t`-bit message `π`; Bob measures with the POVM
/// selected by `π`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalStrategy {
    n: usize,
    t: usize,
    alice: BTreeMap<(String, String), ComplexMatrix>,
    bob: BTreeMap<String, Povm>,
}

impl ClassicalStrategy {
    pub fn new(
        n: usize,
        alice: BTreeMap<(String, String), ComplexMatrix>,
        bob: BTreeMap<String, Povm>,
    ) -> Result<Self> {
        let d = qubit_dim(n)?;
        let joint_labels: Vec<String> = alice.keys().map(|(a, m)| format!("({a},{m})")).collect();
        for (a, m) in alice.keys() {
            check_label(a)?;
            check_label(m)?;
        }
        // validate_family wants bit-string labels, so feed it placeholders
        let found = validate_family(alice.values().map(|m| ("", m)), "Alice's joint POVM")
            .map_err(|e| match e {
                Error::InvalidStrategy(msg) => {
                    Error::InvalidStrategy(format!("{msg} (elements {})", joint_labels.join(", ")))
                }
                other => other,
            })?;
        require_dim("Alice's joint POVM", found, d)?;

        let mut t = None;
        for (_, msg) in alice.keys() {
            match t {
                None => t = Some(msg.len()),
                Some(len) if len != msg.len() => {
                    return Err(Error::InvalidStrategy(format!(
                        "messages must share one length, found `{msg}` next to length {len}"
                    )))
                }
                _ => {}
            }
            if !bob.contains_key(msg) {
                return Err(Error::InvalidStrategy(format!(
                    "Bob has no POVM for message `{msg}`"
                )));
            }
        }
        let t = t.expect("non-empty family");
        for (msg, povm) in &bob {
            check_label(msg)?;
            if msg.len() != t {
                return Err(Error::InvalidStrategy(format!(
                    "Bob's message `{msg}` has length {}, expected {t}",
                    msg.len()
                )));
            }
            require_dim(&format!("Bob's POVM for message `{msg}`"), povm.dim(), d)?;
        }
        Ok(Self { n, t, alice, bob })
    }

    /// Builds Alice's joint measurement from a POVM on `n` qubits and a map
    /// from its outcomes to messages (a deterministic encoder).
    pub fn with_encoder(
        n: usize,
        alice: &Povm,
        encode: impl Fn(&str) -> String,
        bob: BTreeMap<String, Povm>,
    ) -> Result<Self> {
        let joint = alice
            .iter()
            .map(|(a, m)| ((a.to_string(), encode(a)), m.clone()))
            .collect();
        Self::new(n, joint, bob)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn alice(&self) -> &BTreeMap<(String, String), ComplexMatrix> {
        &self.alice
    }

    pub fn bob(&self) -> &BTreeMap<String, Povm> {
        &self.bob
    }
}

/// One-way quantum strategy. Alice applies the instrument `{C_a}` to her
/// qubits and sends the `t`-qubit output; Bob measures the message register
/// followed by his own `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumStrategy {
    n: usize,
    t: usize,
    subchannels: BTreeMap<String, QuantumChannel>,
    bob: Povm,
}

impl QuantumStrategy {
    /// `t = 0` is allowed: the message register is then one-dimensional.
    pub fn new(
        n: usize,
        t: usize,
        subchannels: BTreeMap<String, QuantumChannel>,
        bob: Povm,
    ) -> Result<Self> {
        let d = qubit_dim(n)?;
        if t > 12 {
            return Err(Error::Domain(format!(
                "message qubits t must be <= 12, got {t}"
            )));
        }
        let dt = 1usize << t;
        if subchannels.is_empty() {
            return Err(Error::InvalidStrategy(
                "Alice's instrument has no sub-channels".into(),
            ));
        }
        let mut gram = ComplexMatrix::zeros(d, d);
        for (label, c) in &subchannels {
            check_label(label)?;
            require_dim(&format!("sub-channel `{label}` input"), c.in_dim(), d)?;
            require_dim(&format!("sub-channel `{label}` output"), c.out_dim(), dt)?;
            if !c.is_trace_nonincreasing() {
                return Err(Error::InvalidStrategy(format!(
                    "trace: sub-channel `{label}` increases trace"
                )));
            }
            gram += &c.kraus_gram();
        }
        let err = gram.max_abs_diff(&ComplexMatrix::identity(d));
        if err > TRACE_PRESERVING_TOL {
            return Err(Error::InvalidStrategy(format!(
                "trace: sub-channels sum to a trace-preserving map only within {err:e}"
            )));
        }
        require_dim("Bob's POVM", bob.dim(), dt * d)?;
        Ok(Self {
            n,
            t,
            subchannels,
            bob,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn subchannels(&self) -> &BTreeMap<String, QuantumChannel> {
        &self.subchannels
    }

    pub fn bob(&self) -> &Povm {
        &self.bob
    }
}

/// Any of the three communication models.
#[derive(Debug, Clone, PartialEq)]
pub enum Strategy {
    Free(FreeStrategy),
    Classical(ClassicalStrategy),
    Quantum(QuantumStrategy),
}

impl Strategy {
    pub fn model(&self) -> &'static str {
        match self {
            Self::Free(_) => "free",
            Self::Classical(_) => "classical",
            Self::Quantum(_) => "quantum",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Self::Free(s) => s.n,
            Self::Classical(s) => s.n,
            Self::Quantum(s) => s.n,
        }
    }

    /// Message length in bits or qubits; zero without communication.
    pub fn t(&self) -> usize {
        match self {
            Self::Free(_) => 0,
            Self::Classical(s) => s.t,
            Self::Quantum(s) => s.t,
        }
    }

    /// Sorted labels of Alice's outputs.
    pub fn output_labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = match self {
            Self::Free(s) => s.alice.labels().map(str::to_string).collect(),
            Self::Classical(s) => s.alice.keys().map(|(a, _)| a.clone()).collect(),
            Self::Quantum(s) => s.subchannels.keys().cloned().collect(),
        };
        labels.sort();
        labels.dedup();
        labels
    }
}
