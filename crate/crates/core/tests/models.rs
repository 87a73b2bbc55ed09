mod common;

use common::{rng, spd, vec};
use unimech::algebra::presets::{heisenberg, sl2, so3};
use unimech::presets::{
    kepler_algebra, kepler_ep_printed, kepler_lp_printed, kepler_regression, tokamak_algebra, tokamak_ep_printed,
    tokamak_lp_printed, KeplerParams, TokamakParams,
};
use unimech::{ep_field, lp_field, EnergySpec, Split};

#[test]
fn kepler_generic_fields_match_hand_written() {
    let mut r = rng(21);
    for (e, m, k) in [(-0.5, 1.0, 1.0), (0.0, 2.0, 0.5), (0.7, 0.3, 3.0)] {
        let p = KeplerParams::new(e, m, k).unwrap();
        for _ in 0..200 {
            let spec = EnergySpec::quadratic(spd(&mut r, 6)).unwrap();
            let x = vec(&mut r, 6);
            assert!(kepler_regression(&p, &spec, &x).unwrap() <= 1e-12);
        }
    }
}

#[test]
fn kepler_cocycle_is_linear_in_energy() {
    let mut r = rng(22);
    let spec = EnergySpec::quadratic(spd(&mut r, 6)).unwrap();
    let at = |e: f64| kepler_algebra(&KeplerParams::new(e, 1.5, 0.8).unwrap()).unwrap();
    let c1 = KeplerParams::new(1.0, 1.5, 0.8).unwrap().coupling();
    assert!((c1 - 2.0 / (1.5f64.powi(3) * 0.64)).abs() <= 1e-15);
    for _ in 0..50 {
        let x = vec(&mut r, 6);
        let e = r_e(&mut r);
        for f in [ep_field, lp_field] {
            let f0 = f(&at(0.0), &spec, &x).unwrap();
            let f1 = f(&at(1.0), &spec, &x).unwrap();
            let fe = f(&at(e), &spec, &x).unwrap();
            assert!((fe - (&f0 + (f1 - &f0) * e)).amax() <= 1e-12);
        }
        let p = KeplerParams::new(e, 1.5, 0.8).unwrap();
        let gen = ep_field(&at(e), &spec, &x).unwrap();
        assert!((gen - kepler_ep_printed(&p, &spec, &x).unwrap()).amax() <= 1e-12);
        let gen = lp_field(&at(e), &spec, &x).unwrap();
        assert!((gen - kepler_lp_printed(&p, &spec, &x).unwrap()).amax() <= 1e-12);
    }
}

fn r_e(r: &mut impl rand::Rng) -> f64 {
    r.random_range(-2.0..2.0)
}

#[test]
fn kepler_theta_nonzeros_are_scaled_epsilon() {
    let p = KeplerParams::new(-0.5, 1.0, 1.0).unwrap();
    let d = kepler_algebra(&p).unwrap();
    let nz = d.theta_tensor().nonzeros();
    assert_eq!(nz.len(), 6);
    for (a, i, j, v) in nz {
        let sign = if (i + 1) % 3 == j { 1.0 } else { -1.0 };
        assert_eq!((i + j + a), 3);
        assert!((v - sign * p.coupling()).abs() <= 1e-15);
    }
}

/// The hand-written four-field equations agree with the generic fields on
/// the `(v, β)` rows; on the `(w, α)` rows they differ by exactly twice the
/// `ad*` term of `𝔥`, i.e. that term enters with the opposite sign.
#[test]
fn tokamak_hand_written_differs_only_in_h_coadjoint_sign() {
    let mut r = rng(23);
    for base in [so3(), sl2(), heisenberg()] {
        for b in [0.0, 0.5, 2.0] {
            let p = TokamakParams::new(base.clone(), b).unwrap();
            let d = tokamak_algebra(&p).unwrap();
            let n = d.dim_m();
            for _ in 0..50 {
                let spec = EnergySpec::quadratic(spd(&mut r, 2 * n)).unwrap();
                let x = vec(&mut r, 2 * n);

                let vel = Split::from_flat(&spec.velocity(&x).unwrap(), n).unwrap();
                let pi = Split::from_flat(&x, n).unwrap();
                let gap = d.ad_star_h(&vel.h, &pi.h) * 2.0;
                let gen = Split::from_flat(&ep_field(&d, &spec, &x).unwrap(), n).unwrap();
                let prn = Split::from_flat(&tokamak_ep_printed(&p, &spec, &x).unwrap(), n).unwrap();
                assert!((&gen.m - &prn.m).amax() <= 1e-12);
                assert!((&prn.h - &gen.h - &gap).amax() <= 1e-12);

                let grad = Split::from_flat(&spec.hamiltonian_derivative(&x).unwrap(), n).unwrap();
                let gap = d.ad_star_h(&grad.h, &pi.h) * 2.0;
                let gen = Split::from_flat(&lp_field(&d, &spec, &x).unwrap(), n).unwrap();
                let prn = Split::from_flat(&tokamak_lp_printed(&p, &spec, &x).unwrap(), n).unwrap();
                assert!((&gen.m - &prn.m).amax() <= 1e-12);
                assert!((&gen.h - &prn.h - &gap).amax() <= 1e-12);
            }
        }
    }
}

#[test]
fn tokamak_fields_are_affine_in_compressibility() {
    let mut r = rng(24);
    let spec = EnergySpec::quadratic(spd(&mut r, 12)).unwrap();
    let at = |b: f64| tokamak_algebra(&TokamakParams::new(so3(), b).unwrap()).unwrap();
    for _ in 0..20 {
        let x = vec(&mut r, 12);
        for f in [ep_field, lp_field] {
            let f0 = f(&at(0.0), &spec, &x).unwrap();
            let f1 = f(&at(1.0), &spec, &x).unwrap();
            for b in [-1.0, 0.25, 3.0] {
                let fb = f(&at(b), &spec, &x).unwrap();
                assert!((fb - (&f0 + (&f1 - &f0) * b)).amax() <= 1e-12);
            }
        }
    }
}

#[test]
fn tokamak_axioms_hold_across_compressibility_sweep() {
    for base in [so3(), sl2(), heisenberg()] {
        for b in [-2.0, 0.0, 0.1, 0.5, 1.0, 10.0] {
            let d = tokamak_algebra(&TokamakParams::new(base.clone(), b).unwrap()).unwrap();
            let rep = d.validate_axioms();
            assert!(rep.passed, "B={b}: {rep:?}");
        }
    }
}

#[test]
fn kepler_rejects_bad_parameters() {
    assert!(KeplerParams::new(-0.5, 0.0, 1.0).is_err());
    assert!(KeplerParams::new(-0.5, 1.0, -1.0).is_err());
    assert!(KeplerParams::new(f64::NAN, 1.0, 1.0).is_err());
}
