//! Algebraic properties of truncated Taylor arithmetic.

use proptest::prelude::*;
use schwarz_regions::jet::{mobius, mobius_apply_jet};
use schwarz_regions::{Complex64, Jet};

const ORDER: usize = 6;

fn disk_point(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max, -std::f64::consts::PI..std::f64::consts::PI).prop_map(|(m, a)| Complex64::from_polar(m, a))
}

fn coeff() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn jet_at(center: Complex64) -> impl Strategy<Value = Jet> {
    prop::collection::vec(coeff(), ORDER + 1).prop_map(move |c| Jet::from_coeffs(center, c).unwrap())
}

fn close(a: &Jet, b: &Jet, tol: f64) -> bool {
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).norm() <= tol * (1.0 + x.norm().max(y.norm())))
}

fn three_jets() -> impl Strategy<Value = (Jet, Jet, Jet)> {
    disk_point(0.9).prop_flat_map(|c| (jet_at(c), jet_at(c), jet_at(c)))
}

proptest! {
    #[test]
    fn product_commutes((a, b, _) in three_jets()) {
        prop_assert!(close(&a.mul(&b).unwrap(), &b.mul(&a).unwrap(), 1e-14));
    }

    #[test]
    fn product_associates((a, b, c) in three_jets()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-12));
    }

    #[test]
    fn product_distributes((a, b, c) in three_jets()) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-12));
    }

    #[test]
    fn quotient_round_trips((a, b, _) in three_jets()) {
        prop_assume!(b.value().norm() > 0.5);
        let q = a.div(&b).unwrap();
        prop_assert!(close(&q.mul(&b).unwrap(), &a, 1e-10));
    }

    #[test]
    fn mobius_inverse(a in disk_point(0.95), z in disk_point(0.95)) {
        let j = Jet::variable(z, ORDER).unwrap();
        let back = mobius_apply_jet(-a, &mobius_apply_jet(a, &j).unwrap()).unwrap();
        prop_assert!(close(&back, &j, 1e-10));
    }

    /// `T_a^(k)(z) = k! (1 - |a|^2) (-conj a)^(k-1) / (1 + conj(a) z)^(k+1)`.
    #[test]
    fn mobius_derivatives_closed_form(a in disk_point(0.95), z in disk_point(0.95)) {
        let j = Jet::variable(z, ORDER).unwrap().mobius(a).unwrap();
        let ab = a.conj();
        let den = Complex64::new(1.0, 0.0) + ab * z;
        prop_assert!((j.value() - mobius(a, z)).norm() < 1e-14);
        let mut fact = 1.0;
        for k in 1..=ORDER {
            fact *= k as f64;
            let expected = fact * (1.0 - a.norm_sqr()) * (-ab).powi(k as i32 - 1) / den.powi(k as i32 + 1);
            let got = j.derivative(k).unwrap();
            prop_assert!((got - expected).norm() <= 1e-11 * (1.0 + expected.norm()), "k={} {} vs {}", k, got, expected);
        }
    }

    /// Composition agrees with applying the Möbius map after the inner jet.
    #[test]
    fn composition_matches_mobius(a in disk_point(0.9), z in disk_point(0.9), b in disk_point(0.9)) {
        let inner = Jet::variable(z, ORDER).unwrap().mobius(b).unwrap();
        let outer = Jet::variable(inner.value(), ORDER).unwrap().mobius(a).unwrap();
        let direct = inner.mobius(a).unwrap();
        prop_assert!(close(&outer.compose(&inner).unwrap(), &direct, 1e-10));
    }

    #[test]
    fn results_keep_center_and_min_order(c in disk_point(0.9), n in 1usize..8, m in 1usize..8) {
        let a = Jet::variable(c, n).unwrap();
        let b = Jet::constant(c, Complex64::new(2.0, 0.0), m);
        let p = a.mul(&b).unwrap();
        prop_assert_eq!(p.center(), c);
        prop_assert_eq!(p.order(), n.min(m));
        prop_assert_eq!(p.coeffs().len(), n.min(m) + 1);
    }
}
