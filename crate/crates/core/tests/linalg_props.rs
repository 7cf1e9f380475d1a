use approx::assert_relative_eq;
use proptest::prelude::*;

use qcr_core::inequalities::MatrixSampler;
use qcr_core::linalg::{
    hermitian_eig, partial_trace, permute_factors, psd_power, schatten_norm, singular_values,
    spectral_norm, trace_norm, ComplexMatrix, SchattenP,
};

fn small_dim() -> impl Strategy<Value = usize> {
    1usize..=6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schatten_norms_decrease_in_p(seed in any::<u64>(), dim in small_dim()) {
        let m = MatrixSampler::new(seed).ginibre(dim);
        let mut last = f64::INFINITY;
        for p in [1.0, 1.5, 2.0, 3.0, 8.0] {
            let v = schatten_norm(&m, p).unwrap();
            prop_assert!(v <= last * (1.0 + 1e-12), "p={p}: {v} > {last}");
            last = v;
        }
        let inf = schatten_norm(&m, SchattenP::Infinity).unwrap();
        prop_assert!(inf <= last * (1.0 + 1e-12));
        assert_relative_eq!(inf, spectral_norm(&m).unwrap(), max_relative = 1e-14);
    }

    #[test]
    fn schatten_two_is_frobenius(seed in any::<u64>(), dim in small_dim()) {
        let m = MatrixSampler::new(seed).ginibre(dim);
        assert_relative_eq!(schatten_norm(&m, 2.0).unwrap(), m.frobenius_norm(), max_relative = 1e-12);
    }

    #[test]
    fn singular_values_are_unitarily_invariant(seed in any::<u64>(), dim in 2usize..=5) {
        let mut s = MatrixSampler::new(seed);
        let m = s.ginibre(dim);
        let u = s.isometry(dim, dim).unwrap();
        let v = s.isometry(dim, dim).unwrap();
        let rotated = &(&u * &m) * &v.dagger();
        let a = singular_values(&m).unwrap();
        let b = singular_values(&rotated).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-10 * (1.0 + x.abs()), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn kron_is_associative_and_mixed_product(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3, dc in 1usize..=3) {
        let mut s = MatrixSampler::new(seed);
        let (a, b, c) = (s.ginibre(da), s.ginibre(db), s.ginibre(dc));
        let left = a.kron(&b).kron(&c);
        let right = a.kron(&b.kron(&c));
        prop_assert!(left.max_abs_diff(&right) < 1e-14);
        let (a2, b2) = (s.ginibre(da), s.ginibre(db));
        let lhs = &a.kron(&b) * &a2.kron(&b2);
        let rhs = (&a * &a2).kron(&(&b * &b2));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product(seed in any::<u64>(), da in 1usize..=4, db in 1usize..=4) {
        let mut s = MatrixSampler::new(seed);
        let (a, b) = (s.ginibre(da), s.ginibre(db));
        let ab = a.kron(&b);
        let keep_a = partial_trace(&ab, &[da, db], &[0]).unwrap();
        let keep_b = partial_trace(&ab, &[da, db], &[1]).unwrap();
        prop_assert!(keep_a.max_abs_diff(&a.scale_complex(b.trace())) < 1e-12);
        prop_assert!(keep_b.max_abs_diff(&b.scale_complex(a.trace())) < 1e-12);
        let swapped = permute_factors(&ab, &[da, db], &[1, 0]).unwrap();
        prop_assert!(swapped.max_abs_diff(&b.kron(&a)) < 1e-14);
    }

    #[test]
    fn partial_trace_never_increases_trace_norm(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let m = MatrixSampler::new(seed).ginibre(da * db);
        let reduced = partial_trace(&m, &[da, db], &[0]).unwrap();
        prop_assert!(trace_norm(&reduced).unwrap() <= trace_norm(&m).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn eigendecomposition_reconstructs(seed in any::<u64>(), dim in small_dim()) {
        let h = MatrixSampler::new(seed).hermitian(dim);
        let eig = hermitian_eig(&h).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&h) < 1e-12 * (1.0 + h.max_abs()));
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn psd_powers_compose(seed in any::<u64>(), dim in small_dim(), a in 0.2f64..2.0, b in 0.2f64..2.0) {
        let p = MatrixSampler::new(seed).psd(dim);
        let lhs = &psd_power(&p, a).unwrap() * &psd_power(&p, b).unwrap();
        let rhs = psd_power(&p, a + b).unwrap();
        let scale = rhs.max_abs().max(1.0);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9 * scale);
    }
}

#[test]
fn identity_norms() {
    let id = ComplexMatrix::identity(4);
    assert_relative_eq!(schatten_norm(&id, 1.0).unwrap(), 4.0);
    assert_relative_eq!(schatten_norm(&id, 2.0).unwrap(), 2.0);
    assert_relative_eq!(spectral_norm(&id).unwrap(), 1.0);
}
