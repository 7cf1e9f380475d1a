use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix};
use crate::quantum::QuantumChannel;

use super::povm::{bit_label, label_value, Povm};
use super::strategy::{ClassicalStrategy, QuantumStrategy};

/// Both parties measure every qubit in the computational basis and output the
/// `n`-bit string. Succeeds with probability `((1+ρ)/2)^n`.
pub fn basis_protocol(n: usize) -> Result<(Povm, Povm)> {
    if n == 0 {
        return Err(Error::Domain("basis protocol needs n >= 1".into()));
    }
    let p = Povm::computational_basis(n);
    Ok((p.clone(), p))
}

/// Computational-basis measurement that keeps only the first `k` bits.
pub fn coarse_basis_povm(n: usize, k: usize) -> Result<Povm> {
    if k > n {
        return Err(Error::Domain(format!("cannot keep {k} of {n} bits")));
    }
    let d = 1usize << n;
    let mut elements: BTreeMap<String, ComplexMatrix> = (0..1usize << k)
        .map(|x| (bit_label(x, k), ComplexMatrix::zeros(d, d)))
        .collect();
    for x in 0..d {
        let label = bit_label(x >> (n - k), k);
        elements.get_mut(&label).expect("label")[(x, x)] = crate::linalg::ONE;
    }
    Povm::new(elements)
}

/// Alice measures in the computational basis and sends the outcome as an
/// `n`-bit message; Bob outputs the message.
pub fn full_communication(n: usize) -> Result<ClassicalStrategy> {
    let alice = Povm::computational_basis(n);
    let d = 1usize << n;
    let bob = (0..d)
        .map(|x| {
            let label = bit_label(x, n);
            Povm::trivial(d, &label).map(|p| (label, p))
        })
        .collect::<Result<_>>()?;
    ClassicalStrategy::with_encoder(n, &alice, str::to_string, bob)
}

/// Alice measures in the computational basis and forwards the collapsed
/// qubits (`t = n`); Bob reads the message register in the same basis.
pub fn forward_qubit(n: usize) -> Result<QuantumStrategy> {
    let d = 1usize << n;
    let mut subchannels = BTreeMap::new();
    let mut bob = BTreeMap::new();
    for x in 0..d {
        let label = bit_label(x, n);
        let proj = ComplexMatrix::basis_projector(d, x);
        bob.insert(label.clone(), proj.kron(&ComplexMatrix::identity(d)));
        subchannels.insert(label, QuantumChannel::new(vec![proj])?);
    }
    QuantumStrategy::new(n, n, subchannels, Povm::new(bob)?)
}

/// Runs a classical strategy inside the quantum model. Alice's instrument
/// writes the message into a computational basis state,
/// `C_a(φ) = Σ_π Tr[P_{a,π} φ] |π⟩⟨π|`. Bob measures the register and applies
/// the matching POVM, `Q_a = Σ_π |π⟩⟨π| ⊗ Q_a^π`. Basis states that carry no
/// message are assigned to Bob's smallest label.
pub fn embed_classical(s: &ClassicalStrategy) -> Result<QuantumStrategy> {
    let n = s.n();
    let t = s.t();
    let d = 1usize << n;
    let dt = 1usize << t;

    let mut kraus: BTreeMap<String, Vec<ComplexMatrix>> = BTreeMap::new();
    for ((a, msg), p) in s.alice() {
        let mut psi = vec![Complex64::new(0.0, 0.0); dt];
        psi[label_value(msg)] = crate::linalg::ONE;
        let c = QuantumChannel::measure_and_prepare(p, &psi)?;
        kraus
            .entry(a.clone())
            .or_default()
            .extend(c.kraus().iter().cloned());
    }
    let subchannels = kraus
        .into_iter()
        .map(|(a, k)| QuantumChannel::new(k).map(|c| (a, c)))
        .collect::<Result<BTreeMap<_, _>>>()?;

    let labels: Vec<String> = {
        let mut l: Vec<String> = s
            .bob()
            .values()
            .flat_map(|p| p.labels().map(str::to_string))
            .collect();
        l.sort();
        l.dedup();
        l
    };
    let mut bob: BTreeMap<String, ComplexMatrix> = labels
        .iter()
        .map(|l| (l.clone(), ComplexMatrix::zeros(dt * d, dt * d)))
        .collect();
    for m in 0..dt {
        let reg = ComplexMatrix::basis_projector(dt, m);
        match s.bob().get(&bit_label(m, t)) {
            Some(povm) => {
                for (a, q) in povm.iter() {
                    *bob.get_mut(a).expect("label") += &reg.kron(q);
                }
            }
            None => {
                *bob.get_mut(&labels[0]).expect("label") += &reg.kron(&ComplexMatrix::identity(d));
            }
        }
    }
    QuantumStrategy::new(n, t, subchannels, Povm::new(bob)?)
}

/// Zero-qubit message: Alice's sub-channels are the scalar maps
/// `φ ↦ Tr[P_a φ]` and Bob measures his own qubits. Equivalent to the free model.
pub fn measure_and_embed(alice: &Povm, bob: &Povm, n: usize) -> Result<QuantumStrategy> {
    let subchannels = alice
        .iter()
        .map(|(a, p)| QuantumChannel::from_povm_element(p).map(|c| (a.to_string(), c)))
        .collect::<Result<_>>()?;
    QuantumStrategy::new(n, 0, subchannels, bob.clone())
}
