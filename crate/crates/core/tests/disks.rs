//! Disks of orders 1–4 against jets of extremal functions and random
//! self-maps.

use proptest::prelude::*;
use schwarz_regions::coeffs::{
    canonical_center, canonical_radius, general_center, recovery_tolerance, variability_disk_general,
};
use schwarz_regions::*;
use std::f64::consts::PI;

fn disk_point(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, -PI..PI).prop_map(move |(u, a)| Complex64::from_polar(max * u.sqrt(), a))
}

fn canonical() -> impl Strategy<Value = CanonicalInstance> {
    (0.1..0.9f64, 0.0..0.95f64, disk_point(0.9), disk_point(0.9), disk_point(0.9))
        .prop_map(|(r, u, l, m, t)| CanonicalInstance::new(r, u * r, l, m, t).unwrap())
}

fn general() -> impl Strategy<Value = (GeneralInstance, Params)> {
    (disk_point(0.9), 0.0..0.95f64, -PI..PI, disk_point(0.9), disk_point(0.9), disk_point(0.9)).prop_filter_map(
        "z0 away from 0",
        |(z0, u, xi, l, m, t)| {
            if z0.norm() < 0.1 {
                return None;
            }
            let w0 = Complex64::from_polar(u * z0.norm(), xi);
            Some((GeneralInstance::new(z0, w0).unwrap(), Params::new(l, m, t)))
        },
    )
}

fn rel(a: Complex64, b: Complex64, scale: f64) -> f64 {
    (a - b).norm() / scale.max(1e-300)
}

fn natural_radius(k: usize, r: f64, s: f64) -> f64 {
    canonical_radius(k, r, s, Params::zero()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extremal_attains_the_disk(inst in canonical(), theta in -PI..PI, u in 0.0..1.0f64) {
        let d = disk_order(4, &inst).unwrap();
        for alpha in [Complex64::from_polar(1.0, theta), Complex64::from_polar(u, theta), Complex64::new(0.0, 0.0)] {
            let f4 = evaluate_extremal(&build_extremal(&inst, alpha).unwrap(), 4).unwrap()[4];
            let want = d.center + d.radius * alpha;
            prop_assert!(rel(f4, want, want.norm().max(d.radius)) < 1e-9, "{} vs {}", f4, want);
        }
    }

    /// The extremal reproduces the prescribed lower data.
    #[test]
    fn extremal_matches_data(inst in canonical(), theta in -PI..PI) {
        let spec = build_extremal(&inst, Complex64::from_polar(1.0, theta)).unwrap();
        let f = evaluate_extremal(&spec, 4).unwrap();
        let (r, s, p) = (inst.r, inst.s, inst.params());
        prop_assert!((f[0] - s).norm() < 1e-12);
        let lower = [p.lambda, p.mu, p.tau];
        for k in 1..=3 {
            let c = canonical_center(k, r, s, p).unwrap();
            let rho = canonical_radius(k, r, s, p).unwrap();
            let want = c + rho * lower[k - 1];
            prop_assert!(rel(f[k], want, want.norm().max(rho)) < 1e-10, "order {}", k);
        }
    }

    #[test]
    fn general_extremal_rotates_alpha((inst, params) in general(), theta in -PI..PI) {
        let alpha = Complex64::from_polar(1.0, theta);
        let spec = build_extremal_general(&inst, params, alpha).unwrap();
        let f4 = evaluate_extremal(&spec, 4).unwrap()[4];
        let d = disk_order_general(4, &inst, params).unwrap();
        let want = d.center + d.radius * alpha * inst.z0 / inst.r();
        prop_assert!(rel(f4, want, want.norm().max(d.radius)) < 1e-9);
    }

    /// General formulas agree with the canonical ones rotated back.
    #[test]
    fn rotation_consistency((inst, params) in general()) {
        let red = rotation_reduce(&inst);
        let cp = red.factors.params_to_canonical(params);
        for k in 1..=4 {
            let c = general_center(k, inst.z0, inst.w0, params).unwrap();
            let cc = red.factors.to_general(k, canonical_center(k, red.r, red.s, cp).unwrap());
            prop_assert!(rel(c, cc, c.norm().max(1.0)) < 1e-10, "center {}", k);
            let rho = disk_order_general(k, &inst, params).unwrap().radius;
            let rc = canonical_radius(k, red.r, red.s, cp).unwrap();
            prop_assert!((rho - rc).abs() <= 1e-10 * rho.max(1.0));
        }
    }

    /// Inverting the data of an extremal recovers its parameters.
    #[test]
    fn inversion_round_trip((inst, params) in general(), theta in -PI..PI) {
        let spec = build_extremal_general(&inst, params, Complex64::from_polar(0.5, theta)).unwrap();
        let f = evaluate_extremal(&spec, 4).unwrap();
        let data = inst.with_data(Some(f[1]), Some(f[2]), Some(f[3]));
        let rec = invert_parameters(&data).unwrap();
        prop_assert_eq!(rec.feasibility, Feasibility::Interior);
        let got = rec.params();
        for (a, b) in [(got.lambda, params.lambda), (got.mu, params.mu), (got.tau, params.tau)] {
            prop_assert!((a - b).norm() < 1e-7, "{} vs {}", a, b);
        }
    }
}

#[test]
fn random_selfmaps_lie_in_their_disks() {
    let mut worst = 0.0f64;
    for seed in 0..2000u64 {
        let degree = 1 + (seed % 6) as usize;
        let z0 = Complex64::from_polar(0.1 + 0.8 * ((seed * 37 % 101) as f64 / 101.0), seed as f64);
        let sample = sample_selfmap(seed, degree, z0).unwrap();
        let inst = sample.instance().unwrap();
        let rec = invert_parameters(&inst).unwrap();
        for k in 1..=4 {
            let d = variability_disk_general(k, &inst, rec.params()).unwrap();
            let nat = natural_radius(k, inst.r(), inst.s());
            let excess = ((sample.attained[k] - d.center).norm() - d.radius * (1.0 + 1e-9)) / nat;
            worst = worst.max(excess);
        }
    }
    assert!(worst <= 1e-9, "worst excess {worst:e} of the natural radius");
}

#[test]
fn degree_three_maps_are_rigid_at_tau() {
    for seed in 0..200u64 {
        let z0 = Complex64::from_polar(0.2 + 0.6 * (seed as f64 / 200.0), 0.7 * seed as f64);
        let sample = sample_selfmap(seed, 3, z0).unwrap();
        let rec = invert_parameters(&sample.instance().unwrap()).unwrap();
        assert_eq!(rec.feasibility, Feasibility::RigidAtTau, "seed {seed}");
    }
}

#[test]
fn recovery_tolerance_grows_with_conditioning() {
    let base = recovery_tolerance(1, 0.5, &[]);
    let worse = recovery_tolerance(3, 0.9, &[Complex64::new(0.999, 0.0), Complex64::new(0.0, 0.99)]);
    assert!(base >= 1e-12);
    assert!(worse > 1e3 * base);
}
