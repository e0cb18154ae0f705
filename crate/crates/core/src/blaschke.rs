use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;

/// `e^{iθ} ∏ (z - z_j) / (1 - conj(z_j) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    rotation: f64,
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn new(rotation: f64, zeros: Vec<Complex64>) -> Result<Self> {
        if let Some(z) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
            return Err(Error::ZeroOutsideDisk(*z));
        }
        Ok(Self { rotation, zeros })
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        self.zeros
            .iter()
            .fold(Complex64::from_polar(1.0, self.rotation), |acc, zj| acc * (z - zj) / (one - zj.conj() * z))
    }

    /// Evaluates the product on an arbitrary inner jet, giving `B ∘ inner`.
    pub fn apply(&self, inner: &Jet) -> Result<Jet> {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Jet::constant(inner.center(), Complex64::from_polar(1.0, self.rotation), inner.order());
        for zj in &self.zeros {
            let num = inner.add_scalar(-zj);
            let den = inner.scale(-zj.conj()).add_scalar(one);
            acc = acc.mul(&num.div(&den)?)?;
        }
        Ok(acc)
    }

    /// Jet of the product at `center`.
    pub fn jet(&self, center: Complex64, order: usize) -> Result<Jet> {
        self.apply(&Jet::variable(center, order)?)
    }

    /// Largest deviation of `|B|` from 1 over `n` equally spaced circle points.
    pub fn circle_modulus_defect(&self, n: usize) -> f64 {
        (0..n)
            .map(|k| {
                let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
                (self.eval(z).norm() - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_product(rng: &mut ChaCha8Rng, degree: usize) -> BlaschkeProduct {
        let zeros = (0..degree)
            .map(|_| Complex64::from_polar(0.95 * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI)))
            .collect();
        BlaschkeProduct::new(rng.gen_range(-PI..PI), zeros).unwrap()
    }

    #[test]
    fn degree_one_at_origin_is_identity() {
        let b = BlaschkeProduct::new(0.0, vec![c(0.0, 0.0)]).unwrap();
        let j = b.jet(c(0.5, 0.0), 4).unwrap();
        let z = Jet::variable(c(0.5, 0.0), 4).unwrap();
        for (a, e) in j.coeffs().iter().zip(z.coeffs()) {
            assert!((a - e).norm() < 1e-15);
        }
    }

    #[test]
    fn empty_product_is_rotation() {
        let b = BlaschkeProduct::new(1.2, vec![]).unwrap();
        let j = b.jet(c(0.1, 0.2), 4).unwrap();
        assert!((j.value() - Complex64::from_polar(1.0, 1.2)).norm() < 1e-15);
        assert!(j.coeffs()[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn rejects_zero_on_circle() {
        assert!(matches!(BlaschkeProduct::new(0.0, vec![c(1.0, 0.0)]), Err(Error::ZeroOutsideDisk(_))));
    }

    #[test]
    fn unimodular_on_circle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let b = random_product(&mut rng, 4);
            assert!(b.circle_modulus_defect(100) < 1e-10);
        }
    }

    #[test]
    fn jet_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // second differences lose eps/h² to roundoff, so they use a wider step
        let (h, h2) = (1e-5, 1e-4);
        for _ in 0..50 {
            let degree = rng.gen_range(1..=5);
            let b = random_product(&mut rng, degree);
            let z = Complex64::from_polar(0.7 * rng.gen::<f64>(), rng.gen_range(-PI..PI));
            let j = b.jet(z, 8).unwrap();
            let (hh, hh2) = (c(h, 0.0), c(h2, 0.0));
            let d1 = (b.eval(z + hh) - b.eval(z - hh)) / (2.0 * h);
            let d2 = (b.eval(z + hh2) - 2.0 * b.eval(z) + b.eval(z - hh2)) / (h2 * h2);
            let e1 = j.derivative(1).unwrap();
            let e2 = j.derivative(2).unwrap();
            assert!((d1 - e1).norm() <= 1e-6 * e1.norm().max(1.0), "{d1} vs {e1}");
            assert!((d2 - e2).norm() <= 1e-6 * e2.norm().max(1.0), "{d2} vs {e2}");
        }
    }
}
