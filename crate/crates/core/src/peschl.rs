//! Peschl's invariant derivatives `D_1..D_4` and the
//! fourth-order inequality, which is an equality exactly for Blaschke
//! products of degree at most four.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;

/// Relative tolerance used to call the inequality saturated.
pub const EQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeschlDerivatives {
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
    pub d4: Complex64,
    pub at: Complex64,
    pub value: Complex64,
}

fn check(g: &Jet) -> Result<()> {
    if g.order() < 4 {
        return Err(Error::OrderExceeded { requested: 4, order: g.order() });
    }
    let m = g.value().norm();
    if !(m < 1.0) {
        return Err(Error::NotASelfMapValue(m));
    }
    if !(g.center().norm() < 1.0) {
        return Err(Error::InvalidInstance(format!("|z| = {} must be below 1", g.center().norm())));
    }
    Ok(())
}

/// Explicit formulas in terms of `g(z), g'(z), .., g''''(z)` read off the jet
/// of `g` at `z`.
pub fn peschl_derivatives(g: &Jet) -> Result<PeschlDerivatives> {
    check(g)?;
    let z = g.center();
    let d = g.derivatives();
    let (g0, g1, g2, g3, g4) = (d[0], d[1], d[2], d[3], d[4]);
    let zb = z.conj();
    let gb = g0.conj();
    let p = 1.0 - z.norm_sqr();
    let q = 1.0 - g0.norm_sqr();

    let d1 = p * g1 / q;
    let d2 = p.powi(2) / q * (g2 - 2.0 * zb * g1 / p + 2.0 * gb * g1 * g1 / q);
    let d3 = p.powi(3) / q
        * (g3 - 6.0 * zb * g2 / p + 6.0 * gb * g1 * g2 / q + 6.0 * zb * zb * g1 / (p * p)
            - 12.0 * gb * zb * g1 * g1 / (p * q)
            + 6.0 * gb * gb * g1.powi(3) / (q * q));
    let d4 = p.powi(4) / q
        * (g4 - 12.0 * zb * g3 / p
            + 6.0 * gb * g2 * g2 / q
            + 36.0 * zb * zb * g2 / (p * p)
            + 24.0 * gb.powi(3) * g1.powi(4) / q.powi(3)
            - 72.0 * zb * gb * gb * g1.powi(3) / (p * q * q)
            + 72.0 * zb * zb * gb * g1 * g1 / (p * p * q)
            - 24.0 * zb.powi(3) * g1 / p.powi(3)
            + 8.0 * gb * g1 * g3 / q
            + 36.0 * gb * gb * g1 * g1 * g2 / (q * q)
            - 72.0 * zb * gb * g1 * g2 / (p * q));
    Ok(PeschlDerivatives { d1, d2, d3, d4, at: z, value: g0 })
}

/// Derivatives at 0 of `T_{-g(z)} ∘ g ∘ T_z`, computed by jet composition.
/// Independent of the explicit formulas in [`peschl_derivatives`].
pub fn peschl_derivatives_by_definition(g: &Jet) -> Result<PeschlDerivatives> {
    check(g)?;
    let z = g.center();
    let shift = Jet::variable(Complex64::new(0.0, 0.0), g.order())?.mobius(z)?;
    let h = g.compose(&shift)?.mobius(-g.value())?;
    let d = h.derivatives();
    Ok(PeschlDerivatives { d1: d[1], d2: d[2], d3: d[3], d4: d[4], at: z, value: g.value() })
}

/// Both sides of the fourth-order inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityResidual {
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalityResidual {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol * self.rhs.max(1.0)
    }

    /// `|lhs - rhs| <= tol * max(1, rhs)`.
    pub fn is_equality(&self, tol: f64) -> bool {
        (self.lhs - self.rhs).abs() <= tol * self.rhs.max(1.0)
    }

    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// The left side is the modulus of the displayed complex combination.
pub fn fourth_order_inequality(p: &PeschlDerivatives) -> InequalityResidual {
    let a = p.d1;
    let b = p.d2 / 2.0;
    let c = p.d3 / 6.0;
    let d = p.d4 / 24.0;
    let e = 1.0 - a.norm_sqr();
    let combo =
        d * (e * e - b.norm_sqr()) + 2.0 * a.conj() * b * c * e + a.conj().powi(2) * b.powi(3) + b.conj() * c * c;
    let rhs = e.powi(3) - e * (c.norm_sqr() + 2.0 * b.norm_sqr()) + b.norm_sqr().powi(2)
        - (a * b.conj().powi(2) * c).re
        - (a.conj() * b * b * c.conj()).re;
    InequalityResidual { lhs: combo.norm(), rhs }
}
