use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix};
use crate::quantum::channel::check_unit_interval;

/// Applies `Δ_ρ(φ) = ρφ + (1−ρ)Tr[φ]·I/2` to each listed qubit of an
/// `total_qubits`-qubit operator and the identity to the rest.
///
/// Qubit 0 is the most significant tensor factor. This works directly on
/// matrix entries and shares no code with the Kraus-form channel.
pub fn depolarize(
    m: &ComplexMatrix,
    rho: f64,
    qubits: &[usize],
    total_qubits: usize,
) -> Result<ComplexMatrix> {
    check_unit_interval("rho", rho)?;
    depolarize_unchecked(m, rho, qubits, total_qubits)
}

/// Same as [`depolarize`] without the `rho ∈ [0, 1]` check; the map stays
/// linear for any real `rho` but is no longer completely positive.
pub(crate) fn depolarize_unchecked(
    m: &ComplexMatrix,
    rho: f64,
    qubits: &[usize],
    total_qubits: usize,
) -> Result<ComplexMatrix> {
    m.require_dim(1usize << total_qubits)?;
    if let Some(&bad) = qubits.iter().find(|&&q| q >= total_qubits) {
        return Err(Error::Domain(format!(
            "qubit {bad} out of range for {total_qubits} qubits"
        )));
    }
    let mut out = m.clone();
    let mut seen = 0usize;
    for &q in qubits {
        let bit = 1usize << (total_qubits - 1 - q);
        // listing a qubit twice would apply the channel twice
        if seen & bit != 0 {
            continue;
        }
        seen |= bit;
        out = depolarize_bit(&out, rho, bit);
    }
    Ok(out)
}

fn depolarize_bit(m: &ComplexMatrix, rho: f64, bit: usize) -> ComplexMatrix {
    let d = m.dim();
    let mix = (1.0 - rho) * 0.5;
    let mut out = m.scale(rho);
    for r in 0..d {
        for c in 0..d {
            if (r ^ c) & bit != 0 {
                continue;
            }
            // Tr over this qubit of the (r, c) block, spread back as I/2
            let r0 = r & !bit;
            let c0 = c & !bit;
            let traced: Complex64 = m[(r0, c0)] + m[(r0 | bit, c0 | bit)];
            out[(r, c)] += traced * mix;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::paulis;

    #[test]
    fn unital() {
        for n in 1..=3 {
            let id = ComplexMatrix::identity(1 << n);
            let all: Vec<usize> = (0..n).collect();
            let out = depolarize(&id, 0.37, &all, n).unwrap();
            assert!(out.max_abs_diff(&id) < 1e-15);
        }
    }

    #[test]
    fn kills_traceless_part() {
        let z = &paulis()[3];
        assert!(depolarize(z, 0.0, &[0], 1).unwrap().max_abs() == 0.0);
        assert_eq!(depolarize(z, 1.0, &[0], 1).unwrap(), *z);
    }

    #[test]
    fn acts_only_on_listed_qubit() {
        let [id, x, _, z] = paulis();
        let m = x.kron(&z);
        let out = depolarize(&m, 0.5, &[1], 2).unwrap();
        // Δ(Z) = ρZ on the second factor
        assert!(out.max_abs_diff(&x.kron(&z.scale(0.5))) < 1e-15);
        let m = id.kron(&x);
        let out = depolarize(&m, 0.0, &[0], 2).unwrap();
        assert!(out.max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let m = ComplexMatrix::identity(4);
        assert!(depolarize(&m, 1.2, &[0], 2).is_err());
        assert!(depolarize(&m, 0.5, &[2], 2).is_err());
        assert!(depolarize(&m, 0.5, &[0], 3).is_err());
    }
}
