//! Envelope frame, boundary tracing and the brute-force oracle.

use proptest::prelude::*;
use schwarz_regions::coeffs::{canonical_center, canonical_radius};
use schwarz_regions::geometry::{convex_hull, distance_to_convex, hausdorff_convex, signed_area};
use schwarz_regions::*;
use std::f64::consts::PI;

fn disk_point(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, -PI..PI).prop_map(move |(u, a)| Complex64::from_polar(max * u.sqrt(), a))
}

fn frame() -> impl Strategy<Value = EnvelopeFrame> {
    (0.1..0.9f64, 0.0..0.95f64, disk_point(0.9), disk_point(0.9))
        .prop_filter_map("degenerate frame", |(r, u, l, m)| envelope_frame(r, u * r, l, m).ok())
}

fn attained(frame: &EnvelopeFrame, p: &BoundaryPoint) -> Complex64 {
    let inst = CanonicalInstance::new(frame.r, frame.s, frame.lambda, frame.mu, p.zeta).unwrap();
    let alpha = match p.tag {
        BoundaryTag::Envelope => Complex64::from_polar(1.0, p.theta + frame.arg_c()),
        BoundaryTag::DiskPoint => Complex64::new(0.0, 0.0),
    };
    evaluate_extremal(&build_extremal(&inst, alpha).unwrap(), 4).unwrap()[4]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frame_identity(f in frame(), tau in disk_point(0.99), w in -PI..PI) {
        let omega = Complex64::from_polar(1.0, w);
        let lhs = f.to_region(f.disk_center(tau) + f.disk_radius(tau) * omega);
        let p = Params::new(f.lambda, f.mu, tau);
        let c4 = canonical_center(4, f.r, f.s, p).unwrap();
        let rho4 = canonical_radius(4, f.r, f.s, p).unwrap();
        let rhs = c4 + rho4 * omega * Complex64::from_polar(1.0, f.arg_c());
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(rho4).max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn eta_is_inside_t(f in frame()) {
        prop_assert!(f.eta.norm() < f.t);
        prop_assert!((f.eta.norm() - f.t * f.mu.norm()).abs() < 1e-14);
    }

    #[test]
    fn boundary_points_are_attained(f in frame()) {
        let b = trace_boundary(&f, 64).unwrap();
        for p in &b.points {
            let f4 = attained(&f, p);
            prop_assert!((f4 - p.gamma).norm() <= 1e-8 * p.gamma.norm().max(1.0), "θ = {} {:?}", p.theta, p.tag);
        }
    }

    /// Coarse boundary points sit on the fine curve, so the coarse polygon is
    /// inscribed in the fine one.
    #[test]
    fn refinement_is_inscribed(f in frame()) {
        let coarse = trace_boundary(&f, 16).unwrap();
        let fine = trace_boundary(&f, 512).unwrap();
        let hull = convex_hull(&fine.gammas());
        let d = fine.diameter();
        for g in coarse.gammas() {
            prop_assert!(distance_to_convex(g, &hull) <= 1e-12 * d);
        }
        prop_assert!(coarse.area() <= fine.area() * (1.0 + 1e-12));
        prop_assert!(convexity_defect(&coarse) <= 1e-9);
        prop_assert!(convexity_defect(&fine) <= 1e-9);
    }

    #[test]
    fn solver_residual(m in 0.0..0.999f64, a in -PI..PI, theta in -PI..PI) {
        let eta = Complex64::from_polar(m, a);
        let dir = Complex64::from_polar(1.0, theta);
        // the root at x = |η| is excluded; skip the measure-zero direction
        // where no other root exists
        prop_assume!(m < 0.25 || (m * dir - eta.conj()).norm() > 1e-6);
        let x = solve_t_theta(eta, theta).unwrap();
        prop_assert!(x > m);
        let res = 2.0 * (x * x - m * m) - (x * dir - eta.conj()).norm();
        prop_assert!(res.abs() <= 1e-12);
    }
}

#[test]
fn oracle_hull_grows_and_converges() {
    let (r, s) = (0.6, 0.25);
    let (l, m) = (Complex64::new(0.2, -0.3), Complex64::new(0.4, 0.5));
    let traced = trace_boundary(&envelope_frame(r, s, l, m).unwrap(), 256).unwrap();
    let mut last = 0.0;
    for res in [32, 64, 128, 256] {
        let o = brute_force_region(r, s, l, m, res, 128).unwrap();
        assert!(o.area() >= last * (1.0 - 1e-12), "area fell at resolution {res}");
        assert!(o.spot_check_error < 1e-9);
        last = o.area();
    }
    assert!((last - traced.area()).abs() <= 1e-3 * traced.area(), "{last} vs {}", traced.area());
}

#[test]
fn oracle_agrees_with_trace_on_fine_grid() {
    let (r, s) = (0.8, 0.7);
    let (l, m) = (Complex64::new(0.3, 0.4), Complex64::new(-0.5, 0.6));
    let traced = trace_boundary(&envelope_frame(r, s, l, m).unwrap(), 256).unwrap();
    let o = brute_force_region(r, s, l, m, 256, 128).unwrap();
    let h = hausdorff_convex(&convex_hull(&traced.gammas()), &o.hull);
    assert!(h <= 1e-3 * traced.diameter(), "{:e}", h / traced.diameter());
    assert!(signed_area(&o.hull) > 0.0);
}

#[test]
fn degenerate_frame_falls_back_to_oracle() {
    let (r, s, l) = (0.5, 0.45, Complex64::new(0.99, 0.0));
    let mu = (1.0 + 2.0 * r * r - 2.0 * s * l) / (2.0 * r * l.conj());
    assert!(matches!(envelope_frame(r, s, l, mu), Err(Error::DegenerateFrame(_))));
    let o = brute_force_region(r, s, l, mu, 64, 32).unwrap();
    assert!(o.hull.len() >= 3);
}
