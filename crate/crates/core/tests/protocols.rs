use std::collections::BTreeMap;

use proptest::prelude::{any, prop_assert_eq, proptest, ProptestConfig};

use qcr_core::bounds::{bound_free, success_bound_classical, success_bound_quantum};
use qcr_core::inequalities::MatrixSampler;
use qcr_core::linalg::{Complex64, ComplexMatrix, SchattenP};
use qcr_core::protocols::*;
use qcr_core::quantum::QuantumChannel;

fn povm_from(family: Vec<ComplexMatrix>, width: usize) -> Povm {
    Povm::from_pairs(
        family
            .into_iter()
            .enumerate()
            .map(|(x, m)| (bit_label(x, width), m)),
    )
    .unwrap()
}

fn random_free(seed: u64, n: usize, width: usize) -> (Povm, Povm) {
    let mut s = MatrixSampler::new(seed);
    let d = 1 << n;
    let outcomes = 1 << width;
    (
        povm_from(s.povm(d, outcomes).unwrap(), width),
        povm_from(s.povm(d, outcomes).unwrap(), width),
    )
}

/// Alice: joint POVM over (a, π) with one-bit outputs and `t`-bit messages.
fn random_classical(seed: u64, n: usize, t: usize) -> ClassicalStrategy {
    let mut s = MatrixSampler::new(seed);
    let d = 1 << n;
    let joint = s.povm(d, 2 << t).unwrap();
    let alice = joint
        .into_iter()
        .enumerate()
        .map(|(i, m)| ((bit_label(i & 1, 1), bit_label(i >> 1, t)), m))
        .collect();
    let bob = (0..1usize << t)
        .map(|msg| (bit_label(msg, t), povm_from(s.povm(d, 2).unwrap(), 1)))
        .collect();
    ClassicalStrategy::new(n, alice, bob).unwrap()
}

/// Random instrument: Kraus operators cut from one random isometry.
fn random_quantum(seed: u64, n: usize, t: usize, width: usize) -> QuantumStrategy {
    let mut s = MatrixSampler::new(seed);
    let d = 1 << n;
    let dt = 1 << t;
    let outcomes = 1 << width;
    let per_label = 2;
    let v = s.isometry(outcomes * per_label * dt, d).unwrap();
    let mut subchannels = BTreeMap::new();
    for x in 0..outcomes {
        let kraus = (0..per_label)
            .map(|j| {
                let block = x * per_label + j;
                let mut k = ComplexMatrix::zeros(dt, d);
                for r in 0..dt {
                    for c in 0..d {
                        k[(r, c)] = v[(block * dt + r, c)];
                    }
                }
                k
            })
            .collect();
        subchannels.insert(bit_label(x, width), QuantumChannel::new(kraus).unwrap());
    }
    let bob = povm_from(s.povm(dt * d, outcomes).unwrap(), width);
    QuantumStrategy::new(n, t, subchannels, bob).unwrap()
}

#[test]
fn free_model_examples() {
    let b = Povm::computational_basis(1);
    assert!((success_free(&b, &b, 1.0, 1).unwrap() - 1.0).abs() < 1e-12);
    assert!((success_free(&b, &b, 0.5, 1).unwrap() - 0.75).abs() < 1e-12);

    let half = ComplexMatrix::identity(2).scale(0.5);
    let uniform = Povm::from_pairs([("0", half.clone()), ("1", half)]).unwrap();
    assert!((success_free(&uniform, &b, 0.0, 1).unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn rotated_and_y_basis_fixtures() {
    // reference values from an independent dense-matrix evaluation
    let (c, s) = (0.3f64.cos(), 0.3f64.sin());
    let v0 = ComplexMatrix::from_real_rows(&[&[c * c, c * s], &[c * s, s * s]]);
    let v1 = ComplexMatrix::from_real_rows(&[&[s * s, -c * s], &[-c * s, c * c]]);
    let alice = Povm::from_pairs([("0", v0), ("1", v1)]).unwrap();
    let bob = Povm::computational_basis(1);
    let p = success_free_paths(&alice, &bob, 0.6, 1).unwrap();
    assert!((p.direct - 0.7476006844729033).abs() < 1e-12, "{p:?}");
    assert!((p.reduced - 0.7476006844729033).abs() < 1e-12, "{p:?}");

    // the Y eigenbasis is complex, so the transpose flips Bob's outcome
    let z = Complex64::new;
    let plus =
        ComplexMatrix::from_rows(&[&[z(0.5, 0.0), z(0.0, -0.5)], &[z(0.0, 0.5), z(0.5, 0.0)]]);
    let minus = &ComplexMatrix::identity(2) - &plus;
    let y = Povm::from_pairs([("0", plus), ("1", minus)]).unwrap();
    let p = success_free_paths(&y, &y, 0.6, 1).unwrap();
    assert!(
        (p.direct - 0.2).abs() < 1e-12 && (p.reduced - 0.2).abs() < 1e-12,
        "{p:?}"
    );
}

#[test]
fn basis_protocol_product_rule_and_bound() {
    for n in 1..=3 {
        let (a, b) = basis_protocol(n).unwrap();
        for i in 0..=10 {
            let rho = i as f64 / 10.0;
            let p = success_free(&a, &b, rho, n).unwrap();
            let expected = ((1.0 + rho) / 2.0).powi(n as i32);
            assert!(
                (p - expected).abs() < 1e-12,
                "n={n} rho={rho}: {p} vs {expected}"
            );
            assert!(p <= bound_free(rho, n as f64).unwrap() + 1e-12);
        }
    }
    let (a, b) = basis_protocol(2).unwrap();
    assert!((success_free(&a, &b, 0.5, 2).unwrap() - 0.5625).abs() < 1e-12);
    assert!(0.75 <= bound_free(0.5, 1.0).unwrap());
    assert!((bound_free(0.5, 1.0).unwrap() - 2f64.powf(-1.0 / 3.0)).abs() < 1e-15);
}

#[test]
fn evaluator_paths_agree_on_random_strategies() {
    let mut checked = 0;
    for seed in 0..50u64 {
        for n in 1..=2 {
            let (a, b) = random_free(seed, n, 1 + (seed as usize % n.max(1)));
            let p = success_free_paths(&a, &b, (seed % 11) as f64 / 10.0, n).unwrap();
            assert!((p.direct - p.reduced).abs() <= PATH_TOL);
            assert!((0.0..=1.0 + 1e-9).contains(&p.direct));
            checked += 1;
        }
    }
    for seed in 0..25u64 {
        for n in 1..=2 {
            let s = random_classical(seed, n, 1);
            let p = success_classical_paths(&s, (seed % 7) as f64 / 6.0).unwrap();
            assert!((p.direct - p.reduced).abs() <= PATH_TOL);
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

#[test]
fn single_message_equals_free_exactly() {
    for seed in 0..10 {
        let (a, b) = random_free(seed, 2, 2);
        let mut bob = BTreeMap::new();
        bob.insert(String::new(), b.clone());
        let s = ClassicalStrategy::with_encoder(2, &a, |_| String::new(), bob).unwrap();
        assert_eq!(s.t(), 0);
        for rho in [0.0, 0.35, 1.0] {
            assert_eq!(
                success_classical(&s, rho).unwrap(),
                success_free(&a, &b, rho, 2).unwrap()
            );
        }
    }
}

#[test]
fn full_communication_examples() {
    for rho in [0.0, 0.5] {
        let s = full_communication(1).unwrap();
        assert!((success_classical(&s, rho).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(s.t(), 1);
        assert!((output_min_entropy(&Strategy::Classical(s)).unwrap() - 1.0).abs() < 1e-12);
    }
    let s = Strategy::Classical(full_communication(2).unwrap());
    assert!((output_min_entropy(&s).unwrap() - 2.0).abs() < 1e-12);
    assert!((output_min_entropy_with(&s, MinEntropyMode::Joint).unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn min_entropy_examples() {
    let (a, b) = basis_protocol(1).unwrap();
    let s = Strategy::Free(FreeStrategy::new(1, a, b.clone()).unwrap());
    assert!((output_min_entropy(&s).unwrap() - 1.0).abs() < 1e-12);

    let skewed = Povm::from_pairs([
        ("0", ComplexMatrix::identity(2).scale(0.75)),
        ("1", ComplexMatrix::identity(2).scale(0.25)),
    ])
    .unwrap();
    let s = Strategy::Free(FreeStrategy::new(1, skewed, b).unwrap());
    assert!((output_min_entropy(&s).unwrap() - (4.0f64 / 3.0).log2()).abs() < 1e-12);
}

#[test]
fn joint_min_entropy_is_at_least_marginal() {
    // the joint distribution refines the marginal one
    let s = Strategy::Classical(random_classical(3, 1, 1));
    let joint = output_min_entropy_with(&s, MinEntropyMode::Joint).unwrap();
    let marginal = output_min_entropy_with(&s, MinEntropyMode::Marginal).unwrap();
    assert!(joint >= marginal - 1e-12);
}

#[test]
fn quantum_examples() {
    let s = forward_qubit(1).unwrap();
    assert!((success_quantum(&s, 1.0).unwrap() - 1.0).abs() < 1e-12);
    assert!((success_quantum(&s, 0.0).unwrap() - 1.0).abs() < 1e-12);

    for seed in 0..10 {
        for n in 1..=2 {
            let (a, b) = random_free(seed, n, 1);
            let q = measure_and_embed(&a, &b, n).unwrap();
            for rho in [0.0, 0.4, 1.0] {
                let free = success_free(&a, &b, rho, n).unwrap();
                assert!((success_quantum(&q, rho).unwrap() - free).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn embedded_classical_matches_classical() {
    for seed in 0..10 {
        let c = random_classical(seed, 1, 1);
        let q = embed_classical(&c).unwrap();
        for rho in [0.0, 0.6, 1.0] {
            let diff = success_quantum(&q, rho).unwrap() - success_classical(&c, rho).unwrap();
            assert!(diff.abs() < 1e-10, "seed {seed}: {diff}");
        }
    }
}

#[test]
fn random_strategies_respect_success_bounds() {
    for seed in 0..40u64 {
        let t = (seed % 2) as usize;
        let q = random_quantum(seed, 1, t, 1 + (seed % 2) as usize);
        let k = output_min_entropy(&Strategy::Quantum(q.clone())).unwrap();
        for rho in [0.0, 0.5, 0.9] {
            let p = success_quantum(&q, rho).unwrap();
            let bound = success_bound_quantum(rho, k, t as f64).unwrap();
            assert!(p <= bound + 1e-9, "seed {seed} rho {rho}: {p} > {bound}");
        }

        let c = random_classical(seed, 1, 1);
        let kj = output_min_entropy_with(&Strategy::Classical(c.clone()), MinEntropyMode::Joint)
            .unwrap();
        for rho in [0.0, 0.5, 0.9] {
            let p = success_classical(&c, rho).unwrap();
            let bound = success_bound_classical(rho, kj, 1.0).unwrap();
            assert!(p <= bound + 1e-9, "seed {seed} rho {rho}: {p} > {bound}");
        }
    }
}

#[test]
fn seesaw_brackets_and_exact_cases() {
    let r = seesaw_restarts(0.5, 1, 1, 60, 20, 7).unwrap();
    let ceiling = 2f64.powf(-1.0 / 3.0);
    assert!(
        r.probability >= 0.75 - 1e-12 && r.probability <= ceiling + 1e-9,
        "{}",
        r.probability
    );
    assert!((seesaw_restarts(0.0, 1, 1, 20, 5, 7).unwrap().probability - 0.5).abs() < 1e-9);
    assert!((seesaw_restarts(1.0, 1, 1, 20, 5, 7).unwrap().probability - 1.0).abs() < 1e-9);
    assert!((seesaw_optimize(0.0, 2, 1, 10, 3).unwrap().probability - 0.5).abs() < 1e-9);
}

#[test]
fn seesaw_outputs_obey_free_bound() {
    for n in 1..=2 {
        for k in 1..=n {
            for rho in [0.2, 0.5, 0.8] {
                for seed in 0..3 {
                    let r = seesaw_optimize(rho, n, k, 25, seed).unwrap();
                    let s = Strategy::Free(
                        FreeStrategy::new(n, r.alice.clone(), r.bob.clone()).unwrap(),
                    );
                    let h = output_min_entropy(&s).unwrap();
                    assert!(h >= k as f64 - 1e-9, "min-entropy {h} < {k}");
                    assert!(r.probability <= bound_free(rho, k as f64).unwrap() + 1e-8);
                    for w in r.history.windows(2) {
                        assert!(w[1] >= w[0] - 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn seesaw_is_deterministic() {
    let a = seesaw_optimize(0.7, 2, 1, 15, 11).unwrap();
    let b = seesaw_optimize(0.7, 2, 1, 15, 11).unwrap();
    assert_eq!(a, b);
    assert_eq!(restart_seed(1, 3), restart_seed(1, 3));
    assert_ne!(restart_seed(1, 3), restart_seed(1, 4));
}

#[test]
fn povm_elements_are_contractions() {
    let (a, _) = random_free(5, 2, 2);
    for (_, m) in a.iter() {
        assert!(qcr_core::linalg::schatten_norm(m, SchattenP::Infinity).unwrap() <= 1.0 + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strategy_files_round_trip(seed in any::<u64>(), n in 1usize..=2, model in 0usize..3) {
        let s = match model {
            0 => {
                let (a, b) = random_free(seed, n, 1);
                Strategy::Free(FreeStrategy::new(n, a, b).unwrap())
            }
            1 => Strategy::Classical(random_classical(seed, n, 1)),
            _ => Strategy::Quantum(random_quantum(seed, n, 1, 1)),
        };
        let text = strategy_to_json(&s);
        let back = strategy_from_json(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(strategy_to_json(&back), text);
    }
}
