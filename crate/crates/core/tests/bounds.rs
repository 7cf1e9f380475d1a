use qcr_core::bounds::*;

const RHO_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
const GAMMA_GRID: [f64; 4] = [0.01, 0.05, 0.1, 0.2];

fn grid_101() -> impl Iterator<Item = f64> {
    (0..=100).map(|i| i as f64 / 100.0)
}

#[test]
fn closed_forms_match_sweeps_on_grid() {
    let k = 100.0;
    for rho in RHO_GRID {
        for gamma in GAMMA_GRID {
            let c = bound_classical_lb(rho, gamma, k).unwrap();
            let cs = bound_classical_sweep(rho, gamma, k).unwrap();
            assert!(
                (c - cs).abs() <= 1e-6 * k,
                "classical rho={rho} gamma={gamma}: {c} vs {cs}"
            );
            let q = bound_quantum_lb(rho, gamma, k).unwrap();
            let qs = bound_quantum_sweep(rho, gamma, k).unwrap();
            assert!(
                (q - qs).abs() <= 1e-6 * k,
                "quantum rho={rho} gamma={gamma}: {q} vs {qs}"
            );
        }
    }
}

#[test]
fn oracle_fixtures() {
    // reference values from an independent scipy evaluation
    assert!((bound_classical_lb(0.6, 0.04, 100.0).unwrap() - 42.24).abs() < 1e-9);
    assert!((bound_classical_sweep(0.6, 0.04, 100.0).unwrap() - 42.24).abs() < 1e-6);
    assert!((bound_quantum_lb(0.5, 0.02, 100.0).unwrap() - 46.92368987116299).abs() < 1e-9);
    assert!((bound_quantum_sweep(0.5, 0.02, 100.0).unwrap() - 46.92368987116299).abs() < 1e-6);
    assert!((superdense_rate(0.25).unwrap() - 0.11975918505585259).abs() < 1e-12);
    assert!((superdense_rate(0.5).unwrap() - 0.4512050593046013).abs() < 1e-12);
    assert!((superdense_rate(0.75).unwrap() - 1.0066072709896372).abs() < 1e-12);
    assert!((achievable_quantum_rate(0.75).unwrap() - 0.43462829308780543).abs() < 1e-12);
    assert!((achievable_quantum_rate(0.5).unwrap() - 0.75).abs() < 1e-15);
    let threshold = superdense_threshold().unwrap();
    assert!((threshold - 0.7476138334463577).abs() < 1e-9, "{threshold}");
    assert!((superdense_rate(threshold).unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn small_gamma_limits() {
    for rho in grid_101() {
        let c = bound_classical_lb(rho, 1e-12, 1.0).unwrap();
        assert!((c - (1.0 - rho * rho)).abs() <= 1e-6, "rho={rho}: {c}");
        let q = bound_quantum_lb(rho, 1e-12, 1.0).unwrap();
        let target = (1.0 - rho * rho) / (1.0 + rho * rho);
        assert!((q - target).abs() <= 1e-6, "rho={rho}: {q}");
    }
    assert!((bound_classical_lb(0.0, 1e-12, 1.0).unwrap() - 1.0).abs() < 1e-11);
    assert!((bound_quantum_lb(0.0, 1e-12, 1.0).unwrap() - 1.0).abs() < 1e-11);
}

#[test]
fn clamped_region_agrees() {
    for rho in [0.8, 0.9, 0.95] {
        for gamma in [0.5, 0.8, 0.95] {
            let c = bound_classical_lb(rho, gamma, 10.0).unwrap();
            if c == 0.0 {
                assert_eq!(bound_classical_sweep(rho, gamma, 10.0).unwrap(), 0.0);
            }
            let q = bound_quantum_lb(rho, gamma, 10.0).unwrap();
            if q == 0.0 {
                assert_eq!(bound_quantum_sweep(rho, gamma, 10.0).unwrap(), 0.0);
            }
        }
    }
}

#[test]
fn monotonicity() {
    let mut last = 0.0;
    for rho in grid_101() {
        let v = bound_free(rho, 5.0).unwrap();
        assert!(v >= last);
        last = v;
    }
    for rho in RHO_GRID {
        let mut lc = f64::INFINITY;
        let mut lq = f64::INFINITY;
        for i in 1..100 {
            let gamma = i as f64 / 100.0;
            let c = bound_classical_lb(rho, gamma, 1.0).unwrap();
            let q = bound_quantum_lb(rho, gamma, 1.0).unwrap();
            assert!(
                c <= lc + 1e-15 && q <= lq + 1e-15,
                "rho={rho} gamma={gamma}"
            );
            lc = c;
            lq = q;
        }
    }
}

#[test]
fn rate_sandwich_and_capacity() {
    for rho in grid_101() {
        let lb = bound_quantum_lb(rho, 1e-12, 1.0).unwrap();
        let ach = achievable_quantum_rate(rho).unwrap();
        assert!(lb <= ach + 1e-9, "rho={rho}: {lb} > {ach}");
        assert!(ach <= 1.0 - rho * rho + 1e-9);
        let sd = superdense_rate(rho).unwrap();
        let cap = capacity_upper(rho).unwrap();
        assert!(sd <= cap + 1e-9);
        assert!(cap >= sd.max(1.0) - 1e-9);
    }
}

#[test]
fn superdense_rate_increases() {
    let mut last = f64::NEG_INFINITY;
    for i in 0..=1000 {
        let v = superdense_rate(i as f64 / 1000.0).unwrap();
        assert!(v > last, "step {i}");
        last = v;
    }
}

#[test]
fn curve_output_is_stable() {
    let rhos: Vec<f64> = (0..=4).map(|i| i as f64 / 4.0).collect();
    let a = BoundCurve::evaluate(BoundModel::Quantum, &rhos, &[0.05], 1.0, Method::Closed).unwrap();
    let b = BoundCurve::evaluate(BoundModel::Quantum, &rhos, &[0.05], 1.0, Method::Closed).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_json(), b.to_json());
    assert!(a
        .samples
        .iter()
        .all(|s| s.value >= 0.0 && s.value.is_finite()));
    let free = BoundCurve::evaluate(BoundModel::Free, &[0.5], &[], 10.0, Method::Closed).unwrap();
    assert_eq!(
        free.to_csv(),
        "model,rho,gamma,value\nfree,0.5,0,0.099212565748\n"
    );
}
