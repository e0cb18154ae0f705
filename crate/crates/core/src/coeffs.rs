//! Closed-form variability disks of `f^(k)(z0)`, `k = 1..4`, over analytic
//! self-maps `f` of the unit disk with `f(0) = 0`, `f(z0) = w0` and the
//! lower derivatives pinned through the parameters `λ, μ, τ`.
//!
//! Two independent routes are provided. The canonical route works in the
//! rotated frame `z0 = r > 0`, `w0 = s ≥ 0` and uses the factorisation
//! `c4 = A [B + ...]`; the general route evaluates the displays for complex
//! `z0, w0` directly. [`RotationFactors`] connects the two.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parameters within this distance of the unit circle are treated as
/// unimodular and snapped onto it.
pub const FEASIBILITY_TOL: f64 = 1e-12;

/// Multiple of the rounding estimate used when snapping a parameter
/// recovered from derivative data.
pub const RECOVERY_SAFETY: f64 = 4096.0;

/// Snap tolerance for the order-`n` parameter recovered from data.
///
/// Recovering the order-`n` parameter divides by `(1 - r^2)^n` and by the
/// factors `1 - |p|^2` of the lower parameters, so rounding in the data grows
/// by the same amount.
pub fn recovery_tolerance(n: usize, r: f64, lower: &[Complex64]) -> f64 {
    let cond = lower.iter().map(|p| 1.0 - p.norm_sqr()).product::<f64>() * (1.0 - r * r).powi(n as i32);
    (RECOVERY_SAFETY * f64::EPSILON / cond).max(FEASIBILITY_TOL)
}

/// Mixed absolute/relative tolerance for data forced by a rigid parameter.
pub const RIGID_CHECK_TOL: f64 = 1e-9;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feasibility {
    Interior,
    RigidAtLambda,
    RigidAtMu,
    RigidAtTau,
    Infeasible,
}

impl Feasibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Feasibility::Interior => "interior",
            Feasibility::RigidAtLambda => "rigid_at_lambda",
            Feasibility::RigidAtMu => "rigid_at_mu",
            Feasibility::RigidAtTau => "rigid_at_tau",
            Feasibility::Infeasible => "infeasible",
        }
    }

    pub fn is_rigid(self) -> bool {
        matches!(self, Feasibility::RigidAtLambda | Feasibility::RigidAtMu | Feasibility::RigidAtTau)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Level {
    Interior,
    Unimodular,
    Outside,
}

fn snap(p: Complex64) -> (Complex64, Level) {
    snap_within(p, FEASIBILITY_TOL)
}

fn snap_within(p: Complex64, tol: f64) -> (Complex64, Level) {
    let m = p.norm();
    if m > 1.0 + tol || !m.is_finite() {
        (p, Level::Outside)
    } else if m >= 1.0 - tol {
        (p / m, Level::Unimodular)
    } else {
        (p, Level::Interior)
    }
}

/// Classifies the parameter chain; only the parameters up to the first
/// unimodular one matter.
pub fn classify(lambda: Complex64, mu: Complex64, tau: Complex64) -> Feasibility {
    let rigid = [Feasibility::RigidAtLambda, Feasibility::RigidAtMu, Feasibility::RigidAtTau];
    for (p, rigid) in [lambda, mu, tau].into_iter().zip(rigid) {
        match snap(p).1 {
            Level::Outside => return Feasibility::Infeasible,
            Level::Unimodular => return rigid,
            Level::Interior => {}
        }
    }
    Feasibility::Interior
}

/// Closed disk `{w : |w - center| <= radius}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    /// `radius - |w - center|`; non-negative for members.
    pub fn slack(&self, w: Complex64) -> f64 {
        self.radius - (w - self.center).norm()
    }

    pub fn contains(&self, w: Complex64, rel_tol: f64) -> bool {
        (w - self.center).norm() <= self.radius * (1.0 + rel_tol)
    }
}

/// `(λ, μ, τ)`; unused trailing entries are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub lambda: Complex64,
    pub mu: Complex64,
    pub tau: Complex64,
}

impl Params {
    pub fn new(lambda: Complex64, mu: Complex64, tau: Complex64) -> Self {
        Self { lambda, mu, tau }
    }

    pub fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO)
    }

    fn get(&self, n: usize) -> Complex64 {
        [self.lambda, self.mu, self.tau][n - 1]
    }
}

/// Problem data at a general point `z0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralInstance {
    pub z0: Complex64,
    pub w0: Complex64,
    pub w1: Option<Complex64>,
    pub w2: Option<Complex64>,
    pub w3: Option<Complex64>,
}

impl GeneralInstance {
    pub fn new(z0: Complex64, w0: Complex64) -> Result<Self> {
        let r = z0.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidInstance(format!("|z0| = {r} must lie in (0, 1)")));
        }
        if !(w0.norm() < r) {
            return Err(Error::InvalidInstance(format!("|w0| = {} must be below |z0| = {r}", w0.norm())));
        }
        Ok(Self { z0, w0, w1: None, w2: None, w3: None })
    }

    pub fn with_data(mut self, w1: Option<Complex64>, w2: Option<Complex64>, w3: Option<Complex64>) -> Self {
        self.w1 = w1;
        self.w2 = w2;
        self.w3 = w3;
        self
    }

    pub fn r(&self) -> f64 {
        self.z0.norm()
    }

    pub fn s(&self) -> f64 {
        self.w0.norm()
    }

    pub fn phi(&self) -> f64 {
        self.z0.arg()
    }

    /// `arg w0`, taken as 0 when `w0 = 0`.
    pub fn xi(&self) -> f64 {
        if self.w0 == ZERO {
            0.0
        } else {
            self.w0.arg()
        }
    }

    /// Canonical instance for general-frame parameters.
    pub fn canonical(&self, params: Params) -> Result<CanonicalInstance> {
        let red = rotation_reduce(self);
        let p = red.factors.params_to_canonical(params);
        CanonicalInstance::new(red.r, red.s, p.lambda, p.mu, p.tau)
    }
}

/// Rotated data: `z0 = r`, `w0 = s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalInstance {
    pub r: f64,
    pub s: f64,
    pub lambda: Complex64,
    pub mu: Complex64,
    pub tau: Complex64,
    pub feasibility: Feasibility,
}

impl CanonicalInstance {
    /// Validates `0 <= s < r < 1`, snaps near-unimodular parameters onto the
    /// circle and rejects parameters outside the closed disk.
    pub fn new(r: f64, s: f64, lambda: Complex64, mu: Complex64, tau: Complex64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidInstance(format!("r = {r} must lie in (0, 1)")));
        }
        if !(s >= 0.0 && s < r) {
            return Err(Error::InvalidInstance(format!("s = {s} must lie in [0, r = {r})")));
        }
        let feasibility = classify(lambda, mu, tau);
        if feasibility == Feasibility::Infeasible {
            return Err(Error::Infeasible(format!(
                "parameters outside the closed unit disk (|λ| = {}, |μ| = {}, |τ| = {})",
                lambda.norm(),
                mu.norm(),
                tau.norm()
            )));
        }
        let (lambda, mu, tau) = (snap(lambda).0, snap(mu).0, snap(tau).0);
        Ok(Self { r, s, lambda, mu, tau, feasibility })
    }

    pub fn params(&self) -> Params {
        Params::new(self.lambda, self.mu, self.tau)
    }
}

fn check_order(k: usize) -> Result<()> {
    if (1..=4).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidOrder(k))
    }
}

fn rigid_below(k: usize, p: Params) -> Result<()> {
    let names = ["λ", "μ", "τ"];
    for n in 1..k {
        match snap(p.get(n)).1 {
            Level::Interior => {}
            Level::Unimodular => return Err(Error::RigidCase(names[n - 1])),
            Level::Outside => return Err(Error::Infeasible(format!("|{}| = {} > 1", names[n - 1], p.get(n).norm()))),
        }
    }
    Ok(())
}

/// `A = 24 (r² - s²) / (r⁴ (1 - r²)⁴)`.
pub fn canonical_a(r: f64, s: f64) -> f64 {
    24.0 * (r * r - s * s) / (r.powi(4) * (1.0 - r * r).powi(4))
}

/// The `λ, μ`-dependent part `B` of the canonical fourth-order center.
pub fn canonical_b(r: f64, s: f64, lambda: Complex64, mu: Complex64) -> Complex64 {
    let (r2, l, m) = (r * r, lambda, mu);
    let ll = 1.0 - l.norm_sqr();
    let x = -s * l * l + r2 * l + r * m * ll;
    l * r2.powi(3) - s.powi(3) * l.powi(4) - 3.0 * s * s * l * l * x
        + (1.0 - r2 - 2.0 * s * l)
            * (l * (s * l - r2).powi(2) + r * m * ll * (2.0 * r2 - 2.0 * s * l - r * l.conj() * m))
        - s * x * x
        + r.powi(3) * ll * (l.conj().powi(2) * m.powi(3) + 3.0 * r2 * m - 3.0 * r * l.conj() * m * m)
}

/// Center of the order-`k` disk in the canonical frame. Defined in rigid
/// cases as well, where it is the forced value.
pub fn canonical_center(k: usize, r: f64, s: f64, p: Params) -> Result<Complex64> {
    check_order(k)?;
    let (r2, d) = (r * r, r * r - s * s);
    let (l, m, t) = (p.lambda, p.mu, p.tau);
    let ll = 1.0 - l.norm_sqr();
    let mm = 1.0 - m.norm_sqr();
    Ok(match k {
        1 => Complex64::new(s / r, 0.0),
        2 => 2.0 * d / (r2 * (1.0 - r2).powi(2)) * l * (1.0 - s * l),
        3 => {
            let a = s * s * l.powi(3) - s * (1.0 + r2) * l * l + r2 * l;
            6.0 * d / (r.powi(3) * (1.0 - r2).powi(3)) * (a + r * m * ll * (1.0 + r2 - 2.0 * s * l - r * l.conj() * m))
        }
        _ => {
            let tail = r2 * t * ll * mm * (1.0 + 2.0 * r2 - 2.0 * s * l - 2.0 * r * l.conj() * m - r * m.conj() * t);
            canonical_a(r, s) * (canonical_b(r, s, l, m) + tail)
        }
    })
}

/// Radius of the order-`k` disk; zero when a relevant parameter is unimodular.
pub fn canonical_radius(k: usize, r: f64, s: f64, p: Params) -> Result<f64> {
    check_order(k)?;
    let (r2, d) = (r * r, r * r - s * s);
    let deficit = |n: usize| {
        let (_, level) = snap(p.get(n));
        if level == Level::Unimodular {
            0.0
        } else {
            1.0 - p.get(n).norm_sqr()
        }
    };
    Ok(match k {
        1 => d / (r * (1.0 - r2)),
        2 => 2.0 * d / (r * (1.0 - r2).powi(2)) * deficit(1),
        3 => 6.0 * d / (r * (1.0 - r2).powi(3)) * deficit(1) * deficit(2),
        _ => canonical_a(r, s) * r.powi(3) * deficit(1) * deficit(2) * deficit(3),
    })
}

/// Disk of `f^(k)(r)` for the canonical instance; fails when a parameter
/// below order `k` is unimodular.
pub fn disk_order(k: usize, inst: &CanonicalInstance) -> Result<Disk> {
    check_order(k)?;
    rigid_below(k, inst.params())?;
    variability_disk(k, inst)
}

/// Like [`disk_order`] but returns the radius-0 disk at the forced value in
/// rigid cases.
pub fn variability_disk(k: usize, inst: &CanonicalInstance) -> Result<Disk> {
    let p = inst.params();
    let (center, mut radius) = (canonical_center(k, inst.r, inst.s, p)?, canonical_radius(k, inst.r, inst.s, p)?);
    if !(1..k).all(|n| snap(p.get(n)).1 == Level::Interior) {
        radius = 0.0;
    }
    Ok(Disk { center, radius })
}

/// The displayed `ℬ` term at a general point.
pub fn general_script_b(z0: Complex64, w0: Complex64, lambda: Complex64, mu: Complex64) -> Complex64 {
    let r2 = z0.norm_sqr();
    let (wb, zb, l, m) = (w0.conj(), z0.conj(), lambda, mu);
    let ll = 1.0 - l.norm_sqr();
    let x = -wb * l * l + r2 * l + z0 * m * ll;
    l * r2.powi(3) - wb.powi(3) * l.powi(4) - 3.0 * wb * wb * l * l * x
        + (1.0 - r2 - 2.0 * wb * l)
            * (l * (wb * l - r2).powi(2) + z0 * m * ll * (2.0 * r2 - 2.0 * wb * l - z0 * l.conj() * m))
        - wb * x * x
        + z0.powi(3) * ll * (l.conj().powi(2) * m.powi(3) + 3.0 * zb * zb * m - 3.0 * zb * l.conj() * m * m)
}

/// Center of the order-`k` disk from the general-point displays.
pub fn general_center(k: usize, z0: Complex64, w0: Complex64, p: Params) -> Result<Complex64> {
    check_order(k)?;
    let r2 = z0.norm_sqr();
    let d = r2 - w0.norm_sqr();
    let (wb, l, m, t) = (w0.conj(), p.lambda, p.mu, p.tau);
    let ll = 1.0 - l.norm_sqr();
    let mm = 1.0 - m.norm_sqr();
    Ok(match k {
        1 => w0 / z0,
        2 => 2.0 * d / (z0 * z0 * (1.0 - r2).powi(2)) * l * (ONE - wb * l),
        3 => {
            let a = wb * wb * l.powi(3) - wb * (1.0 + r2) * l * l + r2 * l;
            6.0 * d / (z0.powi(3) * (1.0 - r2).powi(3))
                * (a + z0 * m * ll * (1.0 + r2 - 2.0 * wb * l - z0 * l.conj() * m))
        }
        _ => {
            let tail =
                z0 * z0 * t * ll * mm * (1.0 + 2.0 * r2 - 2.0 * wb * l - 2.0 * z0 * l.conj() * m - z0 * m.conj() * t);
            24.0 * d / (z0.powi(4) * (1.0 - r2).powi(4)) * (general_script_b(z0, w0, l, m) + tail)
        }
    })
}

/// Disk of `f^(k)(z0)` from the general displays. The radius depends on the
/// moduli only.
pub fn disk_order_general(k: usize, inst: &GeneralInstance, params: Params) -> Result<Disk> {
    check_order(k)?;
    rigid_below(k, params)?;
    variability_disk_general(k, inst, params)
}

/// General-frame counterpart of [`variability_disk`].
pub fn variability_disk_general(k: usize, inst: &GeneralInstance, params: Params) -> Result<Disk> {
    let center = general_center(k, inst.z0, inst.w0, params)?;
    let mut radius = canonical_radius(k, inst.r(), inst.s(), params)?;
    if !(1..k).all(|n| snap(params.get(n)).1 == Level::Interior) {
        radius = 0.0;
    }
    Ok(Disk { center, radius })
}

/// Unimodular factors `e^{i(nφ - ξ)}`, `n = 0..4`, with
/// `f̃^(n)(r) = e^{i(nφ - ξ)} f^(n)(z0)` for `f̃(z) = e^{-iξ} f(e^{iφ} z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationFactors {
    pub by_order: [Complex64; 5],
}

impl RotationFactors {
    pub fn new(phi: f64, xi: f64) -> Self {
        Self { by_order: std::array::from_fn(|n| Complex64::from_polar(1.0, n as f64 * phi - xi)) }
    }

    /// Derivative of order `n` at `z0` to the canonical frame.
    pub fn to_canonical(&self, n: usize, w: Complex64) -> Complex64 {
        self.by_order[n] * w
    }

    pub fn to_general(&self, n: usize, w: Complex64) -> Complex64 {
        self.by_order[n].conj() * w
    }

    /// `λ̃ = e^{-iξ} λ`, `μ̃ = e^{i(φ-ξ)} μ`, `τ̃ = e^{i(2φ-ξ)} τ`: parameter
    /// `n` turns with the order-`(n-1)` factor.
    pub fn params_to_canonical(&self, p: Params) -> Params {
        Params::new(self.by_order[0] * p.lambda, self.by_order[1] * p.mu, self.by_order[2] * p.tau)
    }

    pub fn params_to_general(&self, p: Params) -> Params {
        let f = &self.by_order;
        Params::new(f[0].conj() * p.lambda, f[1].conj() * p.mu, f[2].conj() * p.tau)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    pub r: f64,
    pub s: f64,
    pub factors: RotationFactors,
}

pub fn rotation_reduce(inst: &GeneralInstance) -> Reduction {
    Reduction { r: inst.r(), s: inst.s(), factors: RotationFactors::new(inst.phi(), inst.xi()) }
}

/// Parameters recovered from prescribed derivative data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recovered {
    /// General-frame parameters; `None` where the data stop or a rigid
    /// parameter makes them irrelevant.
    pub lambda: Complex64,
    pub mu: Option<Complex64>,
    pub tau: Option<Complex64>,
    pub feasibility: Feasibility,
    /// Rotated instance; absent parameters are zero.
    pub canonical: CanonicalInstance,
}

impl Recovered {
    pub fn params(&self) -> Params {
        Params::new(self.lambda, self.mu.unwrap_or(ZERO), self.tau.unwrap_or(ZERO))
    }
}

fn forced_matches(given: Complex64, forced: Complex64) -> bool {
    (given - forced).norm() <= RIGID_CHECK_TOL * (1.0 + forced.norm())
}

/// Inverts `w_k = c_k + ρ_k r p_k / z0` level by level.
pub fn invert_parameters(inst: &GeneralInstance) -> Result<Recovered> {
    let w1 = inst.w1.ok_or(Error::MissingData("w1 is required to infer λ"))?;
    if inst.w3.is_some() && inst.w2.is_none() {
        return Err(Error::MissingData("w2 is required to infer τ"));
    }
    let (z0, w0, r) = (inst.z0, inst.w0, inst.r());
    let data = [Some(w1), inst.w2, inst.w3];
    let names = ["λ", "μ", "τ"];
    let mut params = Params::zero();
    let mut found: Vec<Complex64> = Vec::new();
    let mut feasibility = Feasibility::Interior;
    for n in 1..=3 {
        let Some(w) = data[n - 1] else { break };
        let c = general_center(n, z0, w0, params)?;
        let rho = canonical_radius(n, r, inst.s(), params)?;
        let p = (w - c) * z0 / (rho * r);
        let (p, level) = snap_within(p, recovery_tolerance(n, r, &found));
        match level {
            Level::Outside => {
                return Err(Error::Infeasible(format!(
                    "no self-map attains w{n}: |{}| = {:.6} > 1",
                    names[n - 1],
                    p.norm()
                )))
            }
            Level::Interior => {
                set_param(&mut params, n, p);
                found.push(p);
            }
            Level::Unimodular => {
                set_param(&mut params, n, p);
                found.push(p);
                feasibility = [Feasibility::RigidAtLambda, Feasibility::RigidAtMu, Feasibility::RigidAtTau][n - 1];
                for m in n + 1..=3 {
                    if let Some(w) = data[m - 1] {
                        let forced = general_center(m, z0, w0, params)?;
                        if !forced_matches(w, forced) {
                            return Err(Error::Infeasible(format!(
                                "{} is unimodular so w{m} must equal {forced}, got {w}",
                                names[n - 1]
                            )));
                        }
                    }
                }
                break;
            }
        }
    }
    let canonical = inst.canonical(params)?;
    Ok(Recovered { lambda: found[0], mu: found.get(1).copied(), tau: found.get(2).copied(), feasibility, canonical })
}

fn set_param(p: &mut Params, n: usize, v: Complex64) {
    match n {
        1 => p.lambda = v,
        2 => p.mu = v,
        _ => p.tau = v,
    }
}

/// Region of `f(z)` over self-maps with `f(0) = 0` and `f'(0) = d0`.
pub fn rogosinski_disk(z: Complex64, d0: Complex64) -> Result<Disk> {
    let rz = z.norm_sqr();
    if !(rz > 0.0 && rz < 1.0) {
        return Err(Error::InvalidInstance(format!("|z| = {} must lie in (0, 1)", rz.sqrt())));
    }
    let a = d0.norm_sqr();
    if !(a < 1.0) {
        return Err(Error::InvalidDerivative(d0.norm()));
    }
    let den = 1.0 - rz * a;
    Ok(Disk { center: z * d0 * (1.0 - rz) / den, radius: rz * (1.0 - a) / den })
}
