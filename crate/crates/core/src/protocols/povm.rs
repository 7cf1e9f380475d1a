use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, PSD_TOL};

const COMPLETENESS_TOL: f64 = 1e-10;

/// Outcome labels are bit strings; the empty string labels a trivial message.
pub fn check_label(label: &str) -> Result<()> {
    if label.chars().all(|c| c == '0' || c == '1') {
        Ok(())
    } else {
        Err(Error::InvalidStrategy(format!(
            "label `{label}` is not a bit string"
        )))
    }
}

/// Bit string of `value` with `width` digits, most significant first.
pub fn bit_label(value: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|b| if (value >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Index of a bit-string label.
pub fn label_value(label: &str) -> usize {
    label
        .chars()
        .fold(0, |acc, c| acc * 2 + usize::from(c == '1'))
}

/// Measurement with labelled PSD elements summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    elements: BTreeMap<String, ComplexMatrix>,
}

impl Povm {
    pub fn new(elements: BTreeMap<String, ComplexMatrix>) -> Result<Self> {
        let dim = validate_family(elements.iter().map(|(l, m)| (l.as_str(), m)), "POVM")?;
        Ok(Self { dim, elements })
    }

    pub fn from_pairs<S: Into<String>>(
        pairs: impl IntoIterator<Item = (S, ComplexMatrix)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, m) in pairs {
            let label = label.into();
            if map.insert(label.clone(), m).is_some() {
                return Err(Error::InvalidStrategy(format!(
                    "duplicate outcome label `{label}`"
                )));
            }
        }
        Self::new(map)
    }

    /// Computational-basis measurement on `n` qubits with `n`-bit labels.
    pub fn computational_basis(n: usize) -> Self {
        let d = 1usize << n;
        Self::from_pairs((0..d).map(|x| (bit_label(x, n), ComplexMatrix::basis_projector(d, x))))
            .expect("basis POVM")
    }

    /// Trivial measurement `{label: I}`.
    pub fn trivial(dim: usize, label: &str) -> Result<Self> {
        Self::from_pairs([(label.to_string(), ComplexMatrix::identity(dim))])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&ComplexMatrix> {
        self.elements.get(label)
    }

    pub fn elements(&self) -> &BTreeMap<String, ComplexMatrix> {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ComplexMatrix)> {
        self.elements.iter().map(|(l, m)| (l.as_str(), m))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.elements.keys().map(String::as_str)
    }
}

/// Checks labels, common dimension, PSD elements and completeness for a
/// measurement family; returns the common dimension.
pub(crate) fn validate_family<'a>(
    family: impl Iterator<Item = (&'a str, &'a ComplexMatrix)>,
    what: &str,
) -> Result<usize> {
    let mut dim = None;
    let mut total: Option<ComplexMatrix> = None;
    for (label, m) in family {
        check_label(label)?;
        let d = m
            .require_square()
            .map_err(|e| Error::InvalidStrategy(format!("{what} element `{label}`: {e}")))?;
        match dim {
            None => dim = Some(d),
            Some(expected) if expected != d => {
                return Err(Error::InvalidStrategy(format!(
                    "{what} element `{label}` has dimension {d}, expected {expected}"
                )))
            }
            _ => {}
        }
        if !m.is_hermitian() {
            return Err(Error::InvalidStrategy(format!(
                "positivity: {what} element `{label}` is not Hermitian"
            )));
        }
        let min = hermitian_eigenvalues(m)?[0];
        if min < -PSD_TOL {
            return Err(Error::InvalidStrategy(format!(
                "positivity: {what} element `{label}` has eigenvalue {min:e}"
            )));
        }
        match &mut total {
            None => total = Some(m.clone()),
            Some(t) => *t += m,
        }
    }
    let (Some(dim), Some(total)) = (dim, total) else {
        return Err(Error::InvalidStrategy(format!("{what} has no elements")));
    };
    let err = total.max_abs_diff(&ComplexMatrix::identity(dim));
    if err > COMPLETENESS_TOL {
        return Err(Error::InvalidStrategy(format!(
            "completeness: {what} elements sum to identity only within {err:e}"
        )));
    }
    Ok(dim)
}
