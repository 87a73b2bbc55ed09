mod common;

use common::{coad_transpose_oracle, rng, scrambled_split, spd, split_algebras, vec};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use unimech::dynamics::central_gradient;
use unimech::{conservation_report, ep_field, lp_field, rk4, EnergySpec, Error, Functional};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fields_match_composed_algebra(which in 0..5usize, seed in any::<u64>()) {
        let (g, dim_m) = split_algebras().swap_remove(which);
        let mut r = rng(seed);
        let d = scrambled_split(&mut r, &g, dim_m);
        let inertia = spd(&mut r, d.dim());
        let spec = EnergySpec::quadratic(inertia.clone()).unwrap();
        let p = vec(&mut r, d.dim());
        let composed = d.compose_bracket();
        let vel = inertia.clone().try_inverse().unwrap() * &p;
        let ep = ep_field(&d, &spec, &p).unwrap();
        prop_assert!((&ep + coad_transpose_oracle(&composed, &vel, &p)).amax() <= 1e-9);
        let lp = lp_field(&d, &spec, &p).unwrap();
        prop_assert!((&lp - coad_transpose_oracle(&composed, &vel, &p)).amax() <= 1e-9);
    }

    #[test]
    fn fields_are_orthogonal_to_energy_gradient(which in 0..5usize, seed in any::<u64>()) {
        let (g, dim_m) = split_algebras().swap_remove(which);
        let mut r = rng(seed);
        let d = scrambled_split(&mut r, &g, dim_m);
        let spec = EnergySpec::quadratic(spd(&mut r, d.dim())).unwrap();
        let p = vec(&mut r, d.dim());
        let grad = spec.hamiltonian_derivative(&p).unwrap();
        let scale = 1.0 + ep_field(&d, &spec, &p).unwrap().norm() * grad.norm();
        prop_assert!(ep_field(&d, &spec, &p).unwrap().dot(&grad).abs() <= 1e-12 * scale);
        prop_assert!(lp_field(&d, &spec, &p).unwrap().dot(&grad).abs() <= 1e-12 * scale);
    }

    #[test]
    fn blackbox_gradient_matches_quadratic(n in 1..13usize, seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = spd(&mut r, n);
        let q = EnergySpec::quadratic(a.clone()).unwrap();
        let ai = a.clone().try_inverse().unwrap();
        let b = EnergySpec::blackbox(move |x: &DVector<f64>| 0.5 * x.dot(&(&ai * x)));
        let mu = vec(&mut r, n);
        let diff = b.hamiltonian_derivative(&mu).unwrap() - q.hamiltonian_derivative(&mu).unwrap();
        prop_assert!(diff.amax() <= 1e-7);
    }
}

#[test]
fn blackbox_lp_matches_quadratic_lp() {
    let mut r = rng(3);
    for (g, dim_m) in split_algebras() {
        let d = scrambled_split(&mut r, &g, dim_m);
        let a = spd(&mut r, d.dim());
        let q = EnergySpec::quadratic(a.clone()).unwrap();
        let ai = a.try_inverse().unwrap();
        let b = EnergySpec::blackbox(move |x: &DVector<f64>| 0.5 * x.dot(&(&ai * x)));
        let mu = vec(&mut r, d.dim());
        let diff = lp_field(&d, &b, &mu).unwrap() - lp_field(&d, &q, &mu).unwrap();
        assert!(diff.amax() <= 1e-6, "{}", diff.amax());
    }
}

#[test]
fn blackbox_ep_is_unsupported() {
    let (g, dim_m) = split_algebras().swap_remove(0);
    let d = scrambled_split(&mut rng(1), &g, dim_m);
    let b = EnergySpec::blackbox(|x: &DVector<f64>| x.norm_squared());
    let err = ep_field(&d, &b, &DVector::zeros(d.dim())).unwrap_err();
    assert!(matches!(err, Error::UnsupportedEnergy));
}

#[test]
fn quadratic_rejects_bad_inertia() {
    let mut m = DMatrix::identity(3, 3);
    m[(0, 1)] = 1e-9;
    assert!(matches!(EnergySpec::quadratic(m), Err(Error::SingularInertia(_))));
    let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 1.0]));
    assert!(matches!(EnergySpec::quadratic(m), Err(Error::SingularInertia(_))));
}

#[test]
fn rk4_on_linear_rotation_is_exact_to_order_four() {
    // ẋ = Ax with A skew; one step multiplies by the degree-4 Taylor
    // polynomial of exp(hA).
    let a = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
    let h = 0.01;
    let x0 = DVector::from_vec(vec![1.0, 0.0]);
    let traj = rk4(|x: &DVector<f64>| Ok(&a * x), &x0, h, 100).unwrap();
    let ha = &a * h;
    let id = DMatrix::identity(2, 2);
    let step = &id + &ha + &ha * &ha / 2.0 + &ha * &ha * &ha / 6.0 + &ha * &ha * &ha * &ha / 24.0;
    let mut want = x0.clone();
    for s in traj.states.iter() {
        assert!((s - &want).amax() <= 1e-13);
        want = &step * want;
    }
    assert_eq!(traj.len(), 101);
    assert!((traj.times[100] - 1.0).abs() <= 1e-12);
}

#[test]
fn rk4_reports_blow_up_step() {
    let traj = rk4(|x: &DVector<f64>| Ok(x.map(|v| v * v)), &DVector::from_vec(vec![1.0]), 0.5, 100);
    assert!(matches!(traj, Err(Error::NonFiniteState { step }) if step > 1));
}

#[test]
fn conservation_report_measures_drift() {
    let traj = rk4(
        |x: &DVector<f64>| Ok(DVector::from_vec(vec![-x[1], x[0]])),
        &DVector::from_vec(vec![1.0, 0.0]),
        0.1,
        100,
    )
    .unwrap();
    let rep = conservation_report(&traj, &[Functional::norm_sq_block(0, 2)]).unwrap();
    assert_eq!(rep[0].initial, 0.5);
    // RK4 on a rotation contracts by |R(ih)|² = 1 − h⁶/72 + O(h⁸) per step.
    let predicted = 0.5 * (1.0 - (1.0 - 1e-6 / 72.0 + 1e-8 / 576.0f64).powi(100));
    assert!((rep[0].max_abs_drift - predicted).abs() <= 1e-12, "{:?} {}", rep, predicted);
}

#[test]
fn central_gradient_is_exact_on_quadratics() {
    let f = |x: &DVector<f64>| 3.0 * x[0] * x[0] - x[0] * x[1];
    let g = central_gradient(&f, &DVector::from_vec(vec![0.3, -0.7]), 1e-3);
    assert!((g[0] - (1.8 + 0.7)).abs() <= 1e-10);
    assert!((g[1] + 0.3).abs() <= 1e-10);
}

#[test]
fn rigid_body_casimir_is_conserved() {
    let d = unimech::UnifiedProductData::from_algebra(unimech::algebra::presets::so3());
    let spec = EnergySpec::diagonal(&[1.0, 2.0, 3.0]).unwrap();
    let x0 = DVector::from_vec(vec![0.4, -0.7, 0.9]);
    let traj = rk4(|x: &DVector<f64>| lp_field(&d, &spec, x), &x0, 1e-3, 10_000).unwrap();
    let rep = conservation_report(&traj, &[Functional::norm_sq_block(0, 3)]).unwrap();
    assert!(rep[0].max_abs_drift <= 1e-10, "{:?}", rep);
}
