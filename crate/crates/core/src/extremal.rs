//! Extremal self-maps `f(z) = z g(z)` attaining the variability disks, and a
//! seeded sampler of random self-maps for Monte Carlo checks.
//!
//! Derivatives are always obtained by jets of the nested composition; no
//! closed-form shortcut is used here.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blaschke::BlaschkeProduct;
use crate::coeffs::{
    classify, rotation_reduce, CanonicalInstance, Feasibility, GeneralInstance, Params, FEASIBILITY_TOL,
};
use crate::error::{Error, Result};
use crate::jet::{Jet, DEFAULT_ORDER};

/// Sampled zeros stay within this radius.
pub const SAMPLE_ZERO_RADIUS: f64 = 0.95;

/// Which parameter terminates the nesting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalCase {
    /// `|λ| = 1`
    RigidLambda,
    /// `|λ| < 1`, `|μ| = 1`
    RigidMu,
    /// `|λ|, |μ| < 1`, `|τ| = 1`
    RigidTau,
    /// all interior, free `α` in the closed disk
    Disk,
}

impl ExtremalCase {
    pub fn number(self) -> u8 {
        match self {
            ExtremalCase::RigidLambda => 1,
            ExtremalCase::RigidMu => 2,
            ExtremalCase::RigidTau => 3,
            ExtremalCase::Disk => 4,
        }
    }

    fn from_feasibility(f: Feasibility) -> Result<Self> {
        Ok(match f {
            Feasibility::RigidAtLambda => ExtremalCase::RigidLambda,
            Feasibility::RigidAtMu => ExtremalCase::RigidMu,
            Feasibility::RigidAtTau => ExtremalCase::RigidTau,
            Feasibility::Interior => ExtremalCase::Disk,
            Feasibility::Infeasible => return Err(Error::Infeasible("parameters outside the closed unit disk".into())),
        })
    }
}

/// `f(z) = z T_{u0}(p T_{λ0}(p T_{μ0}(p T_{τ0}(α p))))` with `p = T_{-z0}(z)`,
/// truncated according to `case`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalSpec {
    pub case: ExtremalCase,
    pub z0: Complex64,
    pub u0: Complex64,
    pub lambda0: Complex64,
    pub mu0: Complex64,
    pub tau0: Complex64,
    pub alpha: Complex64,
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    if alpha.norm() > 1.0 + FEASIBILITY_TOL || !alpha.norm().is_finite() {
        return Err(Error::Infeasible(format!("|α| = {} > 1", alpha.norm())));
    }
    Ok(())
}

/// Extremal function for a canonical instance (`z0 = r`).
pub fn build_extremal(inst: &CanonicalInstance, alpha: Complex64) -> Result<ExtremalSpec> {
    check_alpha(alpha)?;
    Ok(ExtremalSpec {
        case: ExtremalCase::from_feasibility(inst.feasibility)?,
        z0: Complex64::new(inst.r, 0.0),
        u0: Complex64::new(inst.s / inst.r, 0.0),
        lambda0: inst.lambda,
        mu0: inst.mu,
        tau0: inst.tau,
        alpha,
    })
}

/// Extremal function at a general point with general-frame parameters;
/// rotated parameters are `r² p / z0²`.
pub fn build_extremal_general(inst: &GeneralInstance, params: Params, alpha: Complex64) -> Result<ExtremalSpec> {
    check_alpha(alpha)?;
    // validates the parameters and snaps unimodular ones
    let canonical = inst.canonical(params)?;
    let case = ExtremalCase::from_feasibility(classify(params.lambda, params.mu, params.tau))?;
    let turn = inst.r() * inst.r() / (inst.z0 * inst.z0);
    let back = rotation_reduce(inst).factors.params_to_general(canonical.params());
    Ok(ExtremalSpec {
        case,
        z0: inst.z0,
        u0: inst.w0 / inst.z0,
        lambda0: turn * back.lambda,
        mu0: turn * back.mu,
        tau0: turn * back.tau,
        alpha,
    })
}

impl ExtremalSpec {
    /// True when `f^(4)(z0)` lands on the boundary circle (or the disk is a point).
    pub fn is_boundary_attaining(&self) -> bool {
        self.case != ExtremalCase::Disk || self.alpha.norm() >= 1.0 - FEASIBILITY_TOL
    }

    /// Jet of `g = f / z` at `z0`.
    pub fn g_jet(&self, order: usize) -> Result<Jet> {
        let p = Jet::variable(self.z0, order)?.mobius(-self.z0)?;
        let mut inner = match self.case {
            ExtremalCase::RigidLambda => return p.scale(self.lambda0).mobius(self.u0),
            ExtremalCase::RigidMu => p.scale(self.mu0),
            ExtremalCase::RigidTau => p.scale(self.tau0),
            ExtremalCase::Disk => p.scale(self.alpha).mobius(self.tau0)?,
        };
        if self.case == ExtremalCase::Disk {
            inner = p.mul(&inner)?;
        }
        if matches!(self.case, ExtremalCase::Disk | ExtremalCase::RigidTau) {
            inner = p.mul(&inner.mobius(self.mu0)?)?;
        }
        inner = p.mul(&inner.mobius(self.lambda0)?)?;
        inner.mobius(self.u0)
    }

    /// Jet of `f(z) = z g(z)` at `z0`.
    pub fn f_jet(&self, order: usize) -> Result<Jet> {
        Jet::variable(self.z0, order)?.mul(&self.g_jet(order)?)
    }
}

/// `f^(0..=order)(z0)` of the extremal function.
pub fn evaluate_extremal(spec: &ExtremalSpec, order: usize) -> Result<Vec<Complex64>> {
    if order < 4 {
        return Err(Error::InvalidOrder(order));
    }
    Ok(spec.f_jet(order)?.derivatives())
}

/// A random self-map `f = z g` and its data `f^(0..4)(z0)`.
///
/// `g` is the Blaschke product itself, or `T_pin(T_{-z0}(z) B(z))` when a
/// value `g(z0) = pin` was prescribed.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfMapSample {
    pub blaschke: BlaschkeProduct,
    pub pin: Option<Complex64>,
    pub z0: Complex64,
    pub seed: u64,
    pub attained: [Complex64; 5],
}

impl SelfMapSample {
    pub fn degree(&self) -> usize {
        self.blaschke.degree() + usize::from(self.pin.is_some())
    }

    pub fn g_jet(&self, center: Complex64, order: usize) -> Result<Jet> {
        let b = self.blaschke.jet(center, order)?;
        match self.pin {
            None => Ok(b),
            Some(pin) => Jet::variable(center, order)?.mobius(-self.z0)?.mul(&b)?.mobius(pin),
        }
    }

    pub fn f_jet(&self, center: Complex64, order: usize) -> Result<Jet> {
        Jet::variable(center, order)?.mul(&self.g_jet(center, order)?)
    }

    /// Instance carrying `z0, w0, w1, w2, w3` of this sample.
    pub fn instance(&self) -> Result<GeneralInstance> {
        let w = &self.attained;
        Ok(GeneralInstance::new(self.z0, w[0])?.with_data(Some(w[1]), Some(w[2]), Some(w[3])))
    }
}

fn random_blaschke(rng: &mut ChaCha8Rng, degree: usize) -> Result<BlaschkeProduct> {
    let zeros = (0..degree)
        .map(|_| Complex64::from_polar(SAMPLE_ZERO_RADIUS * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI)))
        .collect();
    BlaschkeProduct::new(rng.gen_range(-PI..PI), zeros)
}

fn finish(blaschke: BlaschkeProduct, pin: Option<Complex64>, z0: Complex64, seed: u64) -> Result<SelfMapSample> {
    let mut sample = SelfMapSample { blaschke, pin, z0, seed, attained: [Complex64::new(0.0, 0.0); 5] };
    let d = sample.f_jet(z0, DEFAULT_ORDER)?.derivatives();
    sample.attained.copy_from_slice(&d[..5]);
    Ok(sample)
}

/// Seeded random `f = z B` with `B` of the given degree; zeros uniform in
/// `|z| <= 0.95`, rotation uniform.
pub fn sample_selfmap(seed: u64, degree: usize, z0: Complex64) -> Result<SelfMapSample> {
    if degree < 1 {
        return Err(Error::InvalidOrder(degree));
    }
    if !(z0.norm() < 1.0) {
        return Err(Error::InvalidInstance(format!("|z0| = {} must be below 1", z0.norm())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    finish(random_blaschke(&mut rng, degree)?, None, z0, seed)
}

/// Like [`sample_selfmap`] but with `f(z0) = w0` prescribed; the degree
/// counts the pinning factor.
pub fn sample_selfmap_through(seed: u64, degree: usize, z0: Complex64, w0: Complex64) -> Result<SelfMapSample> {
    if degree < 1 {
        return Err(Error::InvalidOrder(degree));
    }
    GeneralInstance::new(z0, w0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    finish(random_blaschke(&mut rng, degree - 1)?, Some(w0 / z0), z0, seed)
}
