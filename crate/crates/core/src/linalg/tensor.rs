//! Tensor-factor bookkeeping: partial traces and factor permutations.
//!
//! A matrix on `d_0 ⊗ d_1 ⊗ … ⊗ d_{f-1}` is indexed in mixed radix with
//! factor 0 most significant, matching [`ComplexMatrix::kron`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

pub(crate) fn check_factorization(dim: usize, dims: &[usize]) -> Result<()> {
    let product: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) || product != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: product,
        });
    }
    Ok(())
}

/// Mixed-radix digits of `index` for factor dimensions `dims`.
pub(crate) fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

pub(crate) fn compose(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Traces out every factor not listed in `keep`; kept factors stay in their
/// original relative order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let dim = m.require_square()?;
    check_factorization(dim, dims)?;
    let keep: BTreeSet<usize> = keep.iter().copied().collect();
    if keep.is_empty() {
        return Err(Error::Domain(
            "partial trace needs at least one kept factor".into(),
        ));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::Domain(format!(
            "factor index {bad} out of range for {} factors",
            dims.len()
        )));
    }
    let kept: Vec<usize> = keep.iter().copied().collect();
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&i| dims[i]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let traced_dim: usize = traced_dims.iter().product();

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    let mut row_digits = vec![0; dims.len()];
    let mut col_digits = vec![0; dims.len()];
    let mut kd = vec![0; kept.len()];
    let mut td = vec![0; traced.len()];
    for r in 0..out_dim {
        digits(r, &kept_dims, &mut kd);
        for (&f, &x) in kept.iter().zip(&kd) {
            row_digits[f] = x;
        }
        for c in 0..out_dim {
            digits(c, &kept_dims, &mut kd);
            for (&f, &x) in kept.iter().zip(&kd) {
                col_digits[f] = x;
            }
            let mut acc = crate::linalg::ZERO;
            for t in 0..traced_dim {
                digits(t, &traced_dims, &mut td);
                for (&f, &x) in traced.iter().zip(&td) {
                    row_digits[f] = x;
                    col_digits[f] = x;
                }
                acc += m[(compose(&row_digits, dims), compose(&col_digits, dims))];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Reorders tensor factors: factor `i` of the result is factor `order[i]` of `m`.
pub fn permute_factors(
    m: &ComplexMatrix,
    dims: &[usize],
    order: &[usize],
) -> Result<ComplexMatrix> {
    let dim = m.require_square()?;
    check_factorization(dim, dims)?;
    let mut seen = vec![false; dims.len()];
    if order.len() != dims.len() {
        return Err(Error::Domain(
            "factor order must list every factor once".into(),
        ));
    }
    for &o in order {
        if o >= dims.len() || std::mem::replace(&mut seen[o], true) {
            return Err(Error::Domain(
                "factor order must list every factor once".into(),
            ));
        }
    }
    let new_dims: Vec<usize> = order.iter().map(|&o| dims[o]).collect();
    // old linear index for each new linear index
    let mut map = vec![0; dim];
    let mut nd = vec![0; dims.len()];
    let mut od = vec![0; dims.len()];
    for (new_index, slot) in map.iter_mut().enumerate() {
        digits(new_index, &new_dims, &mut nd);
        for (i, &o) in order.iter().enumerate() {
            od[o] = nd[i];
        }
        *slot = compose(&od, dims);
    }
    let mut out = ComplexMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            out[(r, c)] = m[(map[r], map[c])];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::paulis;

    #[test]
    fn trace_of_identity_factor() {
        let r = partial_trace(&ComplexMatrix::identity(4), &[2, 2], &[0]).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::identity(2).scale(2.0)) < 1e-15);
    }

    #[test]
    fn product_operator_marginals() {
        let [_, x, y, z] = paulis();
        let a = &x + &ComplexMatrix::identity(2).scale(2.0);
        let b = &y + &z.scale(0.5);
        let c = ComplexMatrix::from_real_diag(&[1.0, 2.0, 3.0]);
        let abc = a.kron(&b).kron(&c);
        let dims = [2, 2, 3];
        // Tr_B(A⊗B⊗C) = Tr[B]·A⊗C, and Tr[B] = 0 here
        let ac = partial_trace(&abc, &dims, &[0, 2]).unwrap();
        assert!(ac.max_abs() < 1e-14);
        let bc = partial_trace(&abc, &dims, &[1, 2]).unwrap();
        let expect = b.kron(&c).scale_complex(a.trace());
        assert!(bc.max_abs_diff(&expect) < 1e-13);
        let just_c = partial_trace(&abc, &dims, &[2]).unwrap();
        assert!(just_c.max_abs_diff(&c.scale_complex(a.trace() * b.trace())) < 1e-13);
    }

    #[test]
    fn rejects_bad_factorization() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_trace(&m, &[2, 3], &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(partial_trace(&m, &[2, 2], &[]).is_err());
        assert!(partial_trace(&m, &[2, 2], &[2]).is_err());
    }

    #[test]
    fn permutation_swaps_kron_factors() {
        let [_, x, _, z] = paulis();
        let d = ComplexMatrix::from_real_diag(&[1.0, 2.0, 3.0]);
        let m = x.kron(&d).kron(&z);
        let p = permute_factors(&m, &[2, 3, 2], &[2, 0, 1]).unwrap();
        assert!(p.max_abs_diff(&z.kron(&x).kron(&d)) < 1e-15);
        assert!(permute_factors(&m, &[2, 3, 2], &[0, 0, 1]).is_err());
    }
}
