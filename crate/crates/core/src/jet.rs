//! Truncated complex Taylor series.
//!
//! A [`Jet`] stores `a_0..a_N` with `a_k = f^(k)(center) / k!`. Arithmetic
//! truncates to the smaller order of its operands, so a chain of products,
//! quotients and Möbius maps yields exact derivatives up to rounding.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Order used when callers do not ask for one; twice what the fourth
/// derivative needs.
pub const DEFAULT_ORDER: usize = 8;

/// Smallest admissible modulus of a divisor's constant term.
pub const DIVISION_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// The identity map `z -> z` expanded at `center`.
    pub fn variable(center: Complex64, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidOrder(order));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = center;
        coeffs[1] = Complex64::new(1.0, 0.0);
        Ok(Self { center, coeffs })
    }

    pub fn constant(center: Complex64, value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = value;
        Self { center, coeffs }
    }

    /// Builds a jet from Taylor coefficients `a_k = f^(k)(center)/k!`.
    pub fn from_coeffs(center: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidOrder(coeffs.len().saturating_sub(1)));
        }
        Ok(Self { center, coeffs })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `f^(n)(center) = n! a_n`.
    pub fn derivative(&self, n: usize) -> Result<Complex64> {
        if n > self.order() {
            return Err(Error::OrderExceeded { requested: n, order: self.order() });
        }
        Ok(self.coeffs[n] * factorial(n))
    }

    /// All derivatives `f^(0)..f^(N)` at the center.
    pub fn derivatives(&self) -> Vec<Complex64> {
        self.coeffs.iter().enumerate().map(|(k, a)| a * factorial(k)).collect()
    }

    fn check_center(&self, other: &Jet) -> Result<usize> {
        if self.center != other.center {
            return Err(Error::CenterMismatch);
        }
        Ok(self.order().min(other.order()))
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        let n = self.check_center(other)?;
        let coeffs = (0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect();
        Ok(Jet { center: self.center, coeffs })
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        let n = self.check_center(other)?;
        let coeffs = (0..=n).map(|k| self.coeffs[k] - other.coeffs[k]).collect();
        Ok(Jet { center: self.center, coeffs })
    }

    pub fn add_scalar(&self, c: Complex64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    pub fn scale(&self, c: Complex64) -> Jet {
        Jet { center: self.center, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        let n = self.check_center(other)?;
        let coeffs = (0..=n).map(|k| (0..=k).map(|i| self.coeffs[i] * other.coeffs[k - i]).sum()).collect();
        Ok(Jet { center: self.center, coeffs })
    }

    /// Series quotient `self / other`; the divisor's constant term must not
    /// vanish.
    pub fn div(&self, other: &Jet) -> Result<Jet> {
        let n = self.check_center(other)?;
        let b0 = other.coeffs[0];
        if b0.norm() < DIVISION_THRESHOLD {
            return Err(Error::DivisionBySingularJet(b0.norm()));
        }
        let mut coeffs: Vec<Complex64> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let acc: Complex64 = (1..=k).map(|i| other.coeffs[i] * coeffs[k - i]).sum();
            coeffs.push((self.coeffs[k] - acc) / b0);
        }
        Ok(Jet { center: self.center, coeffs })
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(self.center, Complex64::new(1.0, 0.0), self.order()).div(self)
    }

    /// `T_a ∘ self` with `T_a(w) = (w + a) / (1 + conj(a) w)`.
    pub fn mobius(&self, a: Complex64) -> Result<Jet> {
        let num = self.add_scalar(a);
        let den = self.scale(a.conj()).add_scalar(Complex64::new(1.0, 0.0));
        num.div(&den)
    }

    /// `self ∘ inner`, where `inner` takes the value `self.center()` at its own
    /// center. The result is expanded at `inner.center()`.
    pub fn compose(&self, inner: &Jet) -> Result<Jet> {
        let scale = 1.0 + self.center.norm() + inner.value().norm();
        if (inner.value() - self.center).norm() > 1e-12 * scale {
            return Err(Error::CenterMismatch);
        }
        let n = self.order().min(inner.order());
        let mut delta = inner.coeffs[..=n].to_vec();
        delta[0] = Complex64::new(0.0, 0.0);
        let delta = Jet { center: inner.center, coeffs: delta };
        // Horner in the shift, which has no constant term.
        let mut acc = Jet::constant(inner.center, self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&delta)?.add_scalar(self.coeffs[k]);
        }
        Ok(acc)
    }
}

/// Free-function form of [`Jet::mobius`].
pub fn mobius_apply_jet(a: Complex64, j: &Jet) -> Result<Jet> {
    j.mobius(a)
}

/// The automorphism `T_a(z) = (z + a) / (1 + conj(a) z)` evaluated at a point.
pub fn mobius(a: Complex64, z: Complex64) -> Complex64 {
    (z + a) / (Complex64::new(1.0, 0.0) + a.conj() * z)
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_coeffs(j: &Jet, expected: &[Complex64], tol: f64) {
        assert_eq!(j.coeffs().len(), expected.len());
        for (k, (a, b)) in j.coeffs().iter().zip(expected).enumerate() {
            assert!((a - b).norm() <= tol, "coefficient {k}: {a} vs {b}");
        }
    }

    #[test]
    fn variable_jets() {
        let j = Jet::variable(c(0.5, 0.0), 4).unwrap();
        assert_coeffs(&j, &[c(0.5, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 0.0);
        let j = Jet::variable(c(0.0, 0.0), 2).unwrap();
        assert_coeffs(&j, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], 0.0);
        let j = Jet::variable(c(0.3, 0.1), 4).unwrap();
        assert_eq!(j.value(), c(0.3, 0.1));
        assert_eq!(j.coeffs()[1], c(1.0, 0.0));
        assert!(j.coeffs()[2..].iter().all(|a| *a == c(0.0, 0.0)));
        assert_eq!(Jet::variable(c(0.0, 0.0), 0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn products() {
        let z = Jet::variable(c(0.0, 0.0), 4).unwrap();
        assert_coeffs(&z.mul(&z).unwrap(), &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 0.0);
        // (0.5 + h)^2 = 0.25 + h + h^2
        let z = Jet::variable(c(0.5, 0.0), 4).unwrap();
        let sq = z.mul(&z).unwrap();
        assert_coeffs(&sq, &[c(0.25, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 0.0);
        let one = Jet::constant(c(0.5, 0.0), c(1.0, 0.0), 4);
        assert_eq!(one.mul(&sq).unwrap(), sq);
        assert_eq!(sq.derivative(2).unwrap(), c(2.0, 0.0));
        assert_eq!(sq.derivative(1).unwrap(), c(1.0, 0.0));
        assert_eq!(sq.derivative(5), Err(Error::OrderExceeded { requested: 5, order: 4 }));
    }

    #[test]
    fn truncates_to_min_order() {
        let a = Jet::variable(c(0.0, 0.0), 3).unwrap();
        let b = Jet::variable(c(0.0, 0.0), 6).unwrap();
        assert_eq!(a.mul(&b).unwrap().order(), 3);
        assert_eq!(b.div(&b.add_scalar(c(1.0, 0.0))).unwrap().order(), 6);
    }

    #[test]
    fn center_mismatch() {
        let a = Jet::variable(c(0.0, 0.0), 4).unwrap();
        let b = Jet::variable(c(0.1, 0.0), 4).unwrap();
        assert_eq!(a.mul(&b), Err(Error::CenterMismatch));
        assert_eq!(a.div(&b), Err(Error::CenterMismatch));
    }

    #[test]
    fn quotients() {
        let z = Jet::variable(c(0.0, 0.0), 4).unwrap();
        let one_plus_z = z.add_scalar(c(1.0, 0.0));
        let q = z.div(&one_plus_z).unwrap();
        assert_coeffs(&q, &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)], 1e-15);
        let a = one_plus_z.mul(&z).unwrap().add_scalar(c(0.2, -0.4));
        assert_coeffs(&a.div(&a).unwrap(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1e-15);
        let round = a.div(&one_plus_z).unwrap().mul(&one_plus_z).unwrap();
        assert_coeffs(&round, a.coeffs(), 1e-12);
        assert!(matches!(a.div(&z), Err(Error::DivisionBySingularJet(_))));
    }

    #[test]
    fn mobius_geometric_expansion() {
        let z = Jet::variable(c(0.0, 0.0), 4).unwrap();
        let t = z.mobius(c(0.4, 0.0)).unwrap();
        let expected = [0.4, 0.84, -0.336, 0.1344, -0.05376].map(|x| c(x, 0.0));
        assert_coeffs(&t, &expected, 1e-15);
        assert!((t.derivative(3).unwrap() - c(0.8064, 0.0)).norm() < 1e-14);
        assert_eq!(z.mobius(c(0.0, 0.0)).unwrap(), z);
        let w = Jet::variable(c(0.2, -0.3), 8).unwrap().mul(&Jet::variable(c(0.2, -0.3), 8).unwrap()).unwrap();
        let a = c(-0.5, 0.3);
        let back = w.mobius(a).unwrap().mobius(-a).unwrap();
        assert_coeffs(&back, w.coeffs(), 1e-12);
    }

    #[test]
    fn compose_matches_direct_chain() {
        // (T_b ∘ T_a)(z) via composition of the jets of T_b at T_a(z0) and T_a at z0.
        let z0 = c(0.3, -0.2);
        let (a, b) = (c(0.1, 0.4), c(-0.6, 0.2));
        let direct = Jet::variable(z0, 8).unwrap().mobius(a).unwrap().mobius(b).unwrap();
        let inner = Jet::variable(z0, 8).unwrap().mobius(a).unwrap();
        let outer = Jet::variable(inner.value(), 8).unwrap().mobius(b).unwrap();
        assert_coeffs(&outer.compose(&inner).unwrap(), direct.coeffs(), 1e-12);
        let wrong = Jet::variable(c(0.0, 0.0), 8).unwrap();
        assert_eq!(wrong.compose(&inner), Err(Error::CenterMismatch));
    }
}
