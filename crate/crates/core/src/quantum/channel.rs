use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    check_factorization, compose, digits, hermitian_eigenvalues, paulis, psd_power, Complex64,
    ComplexMatrix,
};

const FLAG_TOL: f64 = 1e-10;

/// Completely positive map `φ ↦ Σ_a K_a φ K_a†` with `out_dim × in_dim`
/// Kraus operators. Need not be trace preserving.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KrausList", into = "KrausList")]
pub struct QuantumChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<ComplexMatrix>,
    trace_preserving: bool,
    trace_nonincreasing: bool,
}

#[derive(Serialize, Deserialize)]
struct KrausList {
    kraus: Vec<ComplexMatrix>,
}

impl TryFrom<KrausList> for QuantumChannel {
    type Error = Error;

    fn try_from(list: KrausList) -> Result<Self> {
        Self::new(list.kraus)
    }
}

impl From<QuantumChannel> for KrausList {
    fn from(c: QuantumChannel) -> Self {
        Self { kraus: c.kraus }
    }
}

impl QuantumChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::Domain("a channel needs at least one Kraus operator".into()))?;
        let (out_dim, in_dim) = (first.rows(), first.cols());
        if out_dim == 0 || in_dim == 0 {
            return Err(Error::Domain("Kraus operators must be non-empty".into()));
        }
        for k in &kraus {
            if (k.rows(), k.cols()) != (out_dim, in_dim) {
                return Err(Error::DimensionMismatch {
                    expected: out_dim * in_dim,
                    found: k.rows() * k.cols(),
                });
            }
        }
        let gram = kraus_gram(&kraus);
        let trace_preserving = gram.max_abs_diff(&ComplexMatrix::identity(in_dim)) <= FLAG_TOL;
        let top = hermitian_eigenvalues(&gram)?.last().copied().unwrap_or(0.0);
        Ok(Self {
            in_dim,
            out_dim,
            kraus,
            trace_preserving,
            trace_nonincreasing: top <= 1.0 + FLAG_TOL,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(vec![ComplexMatrix::identity(dim)]).expect("identity channel")
    }

    /// `φ ↦ U φ U†`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    /// Full trace `φ ↦ Tr[φ]` onto a one-dimensional output.
    pub fn trace(dim: usize) -> Self {
        let kraus = (0..dim)
            .map(|i| {
                let mut k = ComplexMatrix::zeros(1, dim);
                k[(0, i)] = crate::linalg::ONE;
                k
            })
            .collect();
        Self::new(kraus).expect("trace channel")
    }

    /// Scalar sub-channel `φ ↦ Tr[P φ]` induced by a POVM element.
    pub fn from_povm_element(p: &ComplexMatrix) -> Result<Self> {
        Self::measure_and_prepare(p, &[crate::linalg::ONE])
    }

    /// Sub-channel `φ ↦ Tr[P φ] |ψ⟩⟨ψ|`.
    pub fn measure_and_prepare(p: &ComplexMatrix, psi: &[Complex64]) -> Result<Self> {
        let root = psd_power(p, 0.5)?;
        let d = root.dim();
        let kraus = (0..d)
            .map(|i| {
                let mut k = ComplexMatrix::zeros(psi.len(), d);
                for (r, amp) in psi.iter().enumerate() {
                    for c in 0..d {
                        k[(r, c)] = amp * root[(i, c)];
                    }
                }
                k
            })
            .filter(|k| k.max_abs() > 0.0)
            .collect::<Vec<_>>();
        if kraus.is_empty() {
            // zero element: keep a single zero Kraus operator so dimensions survive
            return Self::new(vec![ComplexMatrix::zeros(psi.len(), d)]);
        }
        Self::new(kraus)
    }

    /// Kraus form of the qubit depolarizing channel:
    /// `√((1+3ρ)/4)·I` and `√((1−ρ)/4)·{X, Y, Z}`.
    pub fn depolarizing(rho: f64) -> Result<Self> {
        check_unit_interval("rho", rho)?;
        let [id, x, y, z] = paulis();
        let keep = ((1.0 + 3.0 * rho) / 4.0).sqrt();
        let flip = ((1.0 - rho) / 4.0).sqrt();
        Self::new(vec![
            id.scale(keep),
            x.scale(flip),
            y.scale(flip),
            z.scale(flip),
        ])
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    pub fn is_trace_nonincreasing(&self) -> bool {
        self.trace_nonincreasing
    }

    /// `Σ_a K_a† K_a`.
    pub fn kraus_gram(&self) -> ComplexMatrix {
        kraus_gram(&self.kraus)
    }

    /// Conjugate map `σ ↦ Σ_a K_a† σ K_a`.
    pub fn adjoint(&self) -> Self {
        Self::new(self.kraus.iter().map(ComplexMatrix::dagger).collect())
            .expect("adjoint of a valid channel")
    }

    /// Applies the channel to a matrix on its full input space.
    pub fn apply(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        channel_apply(self, m, 0, &[m.require_square()?])
    }
}

/// Applies `c` to tensor factor `on` of `m` (factor dimensions `factor_dims`)
/// and the identity elsewhere.
pub fn channel_apply(
    c: &QuantumChannel,
    m: &ComplexMatrix,
    on: usize,
    factor_dims: &[usize],
) -> Result<ComplexMatrix> {
    let dim = m.require_square()?;
    check_factorization(dim, factor_dims)?;
    let target = *factor_dims.get(on).ok_or_else(|| {
        Error::Domain(format!(
            "factor {on} out of range for {} factors",
            factor_dims.len()
        ))
    })?;
    if target != c.in_dim {
        return Err(Error::DimensionMismatch {
            expected: c.in_dim,
            found: target,
        });
    }
    let mut out_dims = factor_dims.to_vec();
    out_dims[on] = c.out_dim;
    let out_dim: usize = out_dims.iter().product();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for k in &c.kraus {
        // (K ⊗ id) M (K ⊗ id)† = ((K ⊗ id) ((K ⊗ id) M)†)†
        let left = apply_on_rows(k, m, factor_dims, on);
        let both = apply_on_rows(k, &left.dagger(), factor_dims, on).dagger();
        out += &both;
    }
    Ok(out)
}

/// Left-multiplies the row space of `m` (factored as `dims`) by `k` on factor `on`.
fn apply_on_rows(k: &ComplexMatrix, m: &ComplexMatrix, dims: &[usize], on: usize) -> ComplexMatrix {
    let mut out_dims = dims.to_vec();
    out_dims[on] = k.rows();
    let out_rows: usize = out_dims.iter().product();
    let cols = m.cols();
    let mut out = ComplexMatrix::zeros(out_rows, cols);
    let mut d = vec![0; dims.len()];
    for r in 0..out_rows {
        digits(r, &out_dims, &mut d);
        let kr = d[on];
        for i in 0..k.cols() {
            let coeff = k[(kr, i)];
            if coeff == crate::linalg::ZERO {
                continue;
            }
            d[on] = i;
            let src = m.row(compose(&d, dims));
            for (c, s) in src.iter().enumerate() {
                out[(r, c)] += coeff * s;
            }
        }
    }
    out
}

fn kraus_gram(kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let d = kraus[0].cols();
    let mut gram = ComplexMatrix::zeros(d, d);
    for k in kraus {
        gram += &(&k.dagger() * k);
    }
    gram
}

/// Conjugate map of `c`; free-function form of [`QuantumChannel::adjoint`].
pub fn channel_adjoint(c: &QuantumChannel) -> QuantumChannel {
    c.adjoint()
}

/// Qubit erasure channel into a qutrit: `(1−ε)·ρ` on the `{|0⟩,|1⟩}` block
/// and `ε·Tr[ρ]` on the flag `|2⟩`.
pub fn erasure_channel(eps: f64) -> Result<QuantumChannel> {
    check_unit_interval("eps", eps)?;
    let keep = (1.0 - eps).sqrt();
    let flag = eps.sqrt();
    let embed = ComplexMatrix::from_real_rows(&[&[keep, 0.0], &[0.0, keep], &[0.0, 0.0]]);
    let e0 = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 0.0], &[flag, 0.0]]);
    let e1 = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 0.0], &[0.0, flag]]);
    QuantumChannel::new(vec![embed, e0, e1])
}

pub(crate) fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in [0, 1], got {x}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{partial_trace, I, ONE};
    use crate::quantum::{depolarize, epr_state};

    fn sample_matrix(d: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = Complex64::new(
                    (i * 7 + j * 3) as f64 % 5.0 - 2.0,
                    (i + 2 * j) as f64 % 3.0 - 1.0,
                );
            }
        }
        m
    }

    #[test]
    fn identity_channel_is_a_no_op() {
        let m = sample_matrix(4);
        let out = channel_apply(&QuantumChannel::identity(2), &m, 1, &[2, 2]).unwrap();
        assert_eq!(out, m);
    }

    #[test]
    fn kraus_depolarizing_matches_direct_form() {
        let m = sample_matrix(8);
        for rho in [0.0, 0.3, 0.9, 1.0] {
            let c = QuantumChannel::depolarizing(rho).unwrap();
            assert!(c.is_trace_preserving());
            for q in 0..3 {
                let a = channel_apply(&c, &m, q, &[2, 2, 2]).unwrap();
                let b = depolarize(&m, rho, &[q], 3).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-12, "rho {rho} qubit {q}");
            }
        }
    }

    #[test]
    fn tracing_half_an_epr_pair() {
        let out = channel_apply(&QuantumChannel::trace(2), &epr_state(1), 0, &[2, 2]).unwrap();
        assert!(out.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
        let marginal = partial_trace(&epr_state(1), &[2, 2], &[1]).unwrap();
        assert!(out.max_abs_diff(&marginal) < 1e-15);
    }

    #[test]
    fn unitary_adjoint_inverts() {
        let h = ComplexMatrix::from_rows(&[&[ONE, I], &[I, ONE]])
            .scale(std::f64::consts::FRAC_1_SQRT_2);
        let c = QuantumChannel::unitary(h).unwrap();
        let m = sample_matrix(2);
        let back = c.adjoint().apply(&c.apply(&m).unwrap()).unwrap();
        assert!(back.max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn flags() {
        let half = QuantumChannel::new(vec![ComplexMatrix::identity(2).scale(0.5)]).unwrap();
        assert!(!half.is_trace_preserving());
        assert!(half.is_trace_nonincreasing());
        let big = QuantumChannel::new(vec![ComplexMatrix::identity(2).scale(1.1)]).unwrap();
        assert!(!big.is_trace_nonincreasing());
        assert!(QuantumChannel::new(vec![]).is_err());
        assert!(
            QuantumChannel::new(vec![ComplexMatrix::identity(2), ComplexMatrix::identity(3)])
                .is_err()
        );
    }

    #[test]
    fn channel_apply_rejects_wrong_factor() {
        let c = QuantumChannel::depolarizing(0.5).unwrap();
        let m = ComplexMatrix::identity(6);
        assert!(channel_apply(&c, &m, 1, &[2, 3]).is_err());
        assert!(channel_apply(&c, &m, 2, &[2, 3]).is_err());
        assert!(channel_apply(&c, &m, 0, &[2, 2]).is_err());
    }

    #[test]
    fn erasure_endpoints() {
        let rho = ComplexMatrix::from_rows(&[&[ONE * 0.7, I * 0.1], &[-I * 0.1, ONE * 0.3]]);
        let keep = erasure_channel(0.0).unwrap().apply(&rho).unwrap();
        assert_eq!(keep.dim(), 3);
        for i in 0..2 {
            for j in 0..2 {
                assert!((keep[(i, j)] - rho[(i, j)]).norm() < 1e-15);
            }
        }
        assert!(keep[(2, 2)].norm() < 1e-15);
        let gone = erasure_channel(1.0).unwrap().apply(&rho).unwrap();
        assert!(gone.max_abs_diff(&ComplexMatrix::basis_projector(3, 2)) < 1e-15);
        let mid = erasure_channel(0.25).unwrap();
        assert!(mid.is_trace_preserving());
        let out = mid.apply(&rho).unwrap();
        assert!((out[(2, 2)].re - 0.25).abs() < 1e-15);
        assert!((out[(0, 1)] - rho[(0, 1)] * 0.75).norm() < 1e-15);
        assert!(erasure_channel(1.5).is_err());
    }

    #[test]
    fn povm_induced_scalar_map() {
        let p = ComplexMatrix::from_real_diag(&[0.25, 1.0]);
        let c = QuantumChannel::from_povm_element(&p).unwrap();
        assert_eq!((c.in_dim(), c.out_dim()), (2, 1));
        let rho = ComplexMatrix::from_real_diag(&[0.5, 0.5]);
        let v = c.apply(&rho).unwrap();
        assert!((v[(0, 0)].re - 0.625).abs() < 1e-15);
        let zero = QuantumChannel::from_povm_element(&ComplexMatrix::zeros(2, 2)).unwrap();
        assert!(zero.apply(&rho).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn serde_round_trip_recomputes_flags() {
        let c = erasure_channel(0.3).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: QuantumChannel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
