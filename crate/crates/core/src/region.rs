//! The region `V(r, s, λ, μ)` of `f''''(r)` when `τ` ranges over the closed
//! disk.
//!
//! Writing `c4 + ρ4 α = A (B + C (c(τ) + ρ(τ) α e^{-i arg C}))` with
//! `c(ζ) = ζ (1 - η ζ)` and `ρ(ζ) = t (1 - |ζ|²)` turns the region into an
//! affine image of the union of disks `D̄(c(ζ), ρ(ζ))`, `|ζ| <= 1`. Its
//! boundary point with outward normal `e^{iθ}` maximizes
//! `Re(e^{-iθ} c(ζ)) + ρ(ζ)`: an interior critical point when one exists in
//! the open disk, otherwise a point of `|ζ| = 1` found by a root solve.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coeffs::{canonical_a, canonical_b, canonical_center, canonical_radius, CanonicalInstance, Params};
use crate::error::{Error, Result};
use crate::extremal::{build_extremal, evaluate_extremal};
use crate::geometry;

pub use crate::geometry::convexity_defect as polygon_convexity_defect;

/// `|K|` below this makes the frame unusable.
pub const DEGENERATE_K: f64 = 1e-10;
/// Target residual of the `t_θ` solve.
pub const ROOT_RESIDUAL: f64 = 1e-12;
/// Largest acceptable convexity defect of a traced boundary.
pub const CONVEXITY_TOL: f64 = 1e-9;
/// Relative width of the band in which the branch test counts as a tie.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFrame {
    pub r: f64,
    pub s: f64,
    pub lambda: Complex64,
    pub mu: Complex64,
    /// `1 + 2r² - 2sλ - 2r conj(λ) μ`
    pub k: Complex64,
    pub a: f64,
    pub b: Complex64,
    pub c: Complex64,
    pub eta: Complex64,
    pub t: f64,
}

/// Builds the frame; requires `0 <= s < r < 1` and `|λ|, |μ| < 1`.
pub fn envelope_frame(r: f64, s: f64, lambda: Complex64, mu: Complex64) -> Result<EnvelopeFrame> {
    check_region_input(r, s, lambda, mu)?;
    let k = 1.0 + 2.0 * r * r - 2.0 * s * lambda - 2.0 * r * lambda.conj() * mu;
    if k.norm() < DEGENERATE_K {
        return Err(Error::DegenerateFrame(k.norm()));
    }
    let c = r * r * (1.0 - lambda.norm_sqr()) * (1.0 - mu.norm_sqr()) * k;
    Ok(EnvelopeFrame {
        r,
        s,
        lambda,
        mu,
        k,
        a: canonical_a(r, s),
        b: canonical_b(r, s, lambda, mu),
        c,
        eta: r * mu.conj() / k,
        t: r / k.norm(),
    })
}

fn check_region_input(r: f64, s: f64, lambda: Complex64, mu: Complex64) -> Result<()> {
    if !(r > 0.0 && r < 1.0 && s >= 0.0 && s < r) {
        return Err(Error::InvalidInstance(format!("need 0 <= s < r < 1, got r = {r}, s = {s}")));
    }
    if !(lambda.norm() < 1.0 && mu.norm() < 1.0) {
        return Err(Error::InvalidInstance(format!("need |λ|, |μ| < 1, got {} and {}", lambda.norm(), mu.norm())));
    }
    Ok(())
}

impl EnvelopeFrame {
    pub fn disk_center(&self, zeta: Complex64) -> Complex64 {
        zeta * (1.0 - self.eta * zeta)
    }

    pub fn disk_radius(&self, zeta: Complex64) -> f64 {
        self.t * (1.0 - zeta.norm_sqr())
    }

    /// `A (B + C w)`.
    pub fn to_region(&self, w: Complex64) -> Complex64 {
        self.a * (self.b + self.c * w)
    }

    pub fn arg_c(&self) -> f64 {
        self.c.arg()
    }
}

/// Root `x > |η|` of `|x e^{iθ} - conj(η)| = 2 (x² - |η|²)`.
///
/// For `x > |η|` the sign of `2(x² - |η|²) - |x e^{iθ} - conj(η)|` goes from
/// negative to positive exactly once, and it is positive at `|η| + 1`.
/// Bisection narrows the bracket and safeguarded secant steps finish.
pub fn solve_t_theta(eta: Complex64, theta: f64) -> Result<f64> {
    let m = eta.norm();
    let dir = Complex64::from_polar(1.0, theta);
    let f = |x: f64| 2.0 * (x * x - m * m) - (x * dir - eta.conj()).norm();
    let fail = || Error::SolverBracketFailure { eta, theta };

    let (mut lo, mut hi) = (m, m + 1.0);
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if !(flo <= 0.0 && fhi > 0.0) {
        return Err(fail());
    }
    for _ in 0..200 {
        if hi - lo <= 1e-3 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm <= 0.0 {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    let mut best = if flo.abs() < fhi.abs() { (lo, flo) } else { (hi, fhi) };
    for _ in 0..100 {
        if best.1.abs() <= 0.25 * ROOT_RESIDUAL || hi - lo <= f64::EPSILON * hi {
            break;
        }
        let secant = lo - flo * (hi - lo) / (fhi - flo);
        let x = if secant > lo && secant < hi { secant } else { 0.5 * (lo + hi) };
        let fx = f(x);
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx <= 0.0 {
            // pull the far end in so the secant cannot stall on one side
            if x - lo < 0.5 * (hi - lo) {
                let mid = 0.5 * (x + hi);
                let fm = f(mid);
                if fm > 0.0 {
                    hi = mid;
                    fhi = fm;
                }
            }
            lo = x;
            flo = fx;
        } else {
            if hi - x < 0.5 * (hi - lo) {
                let mid = 0.5 * (lo + x);
                let fm = f(mid);
                if fm <= 0.0 {
                    lo = mid;
                    flo = fm;
                }
            }
            hi = x;
            fhi = fx;
        }
    }
    let (x, fx) = best;
    if x - m <= 1e-12 * (1.0 + m) || fx.abs() > ROOT_RESIDUAL {
        return Err(fail());
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryTag {
    /// Interior critical point; the disk radius contributes.
    Envelope,
    /// `|ζ_θ| = 1`; the point is a disk center.
    DiskPoint,
}

impl BoundaryTag {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryTag::Envelope => "envelope",
            BoundaryTag::DiskPoint => "disk",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub gamma: Complex64,
    pub zeta: Complex64,
    pub t_theta: f64,
    pub tag: BoundaryTag,
}

fn zeta_of(eta: Complex64, x: f64, theta: f64) -> Complex64 {
    (x * Complex64::from_polar(1.0, theta) - eta.conj()) / (2.0 * (x * x - eta.norm_sqr()))
}

/// Boundary point with parameter `θ`; ties in the branch test go to the
/// disk-point branch, where both formulas agree.
pub fn boundary_point(frame: &EnvelopeFrame, theta: f64) -> Result<BoundaryPoint> {
    let (eta, t) = (frame.eta, frame.t);
    let dir = Complex64::from_polar(1.0, theta);
    let lhs = (t * dir - eta.conj()).norm();
    let rhs = 2.0 * (t * t - eta.norm_sqr());
    if lhs >= rhs * (1.0 - TIE_TOL) {
        let t_theta = if (lhs - rhs).abs() <= TIE_TOL * rhs { t } else { solve_t_theta(eta, theta)? };
        // |ζ| = 1 at the root; drop the solver residual
        let zeta = zeta_of(eta, t_theta, theta);
        let zeta = zeta / zeta.norm();
        Ok(BoundaryPoint {
            theta,
            gamma: frame.to_region(frame.disk_center(zeta)),
            zeta,
            t_theta,
            tag: BoundaryTag::DiskPoint,
        })
    } else {
        let zeta = zeta_of(eta, t, theta);
        let w = frame.disk_center(zeta) + frame.disk_radius(zeta) * dir;
        Ok(BoundaryPoint { theta, gamma: frame.to_region(w), zeta, t_theta: t, tag: BoundaryTag::Envelope })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionBoundary {
    pub frame: EnvelopeFrame,
    pub points: Vec<BoundaryPoint>,
    pub closed: bool,
}

impl RegionBoundary {
    pub fn gammas(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.gamma).collect()
    }

    pub fn area(&self) -> f64 {
        geometry::signed_area(&self.gammas()).abs()
    }

    pub fn diameter(&self) -> f64 {
        geometry::diameter(&self.gammas())
    }
}

/// Samples `n` boundary points at `θ_j = -π + 2π (j + 1) / n`, so the last
/// one is `θ = π`.
pub fn trace_boundary(frame: &EnvelopeFrame, n: usize) -> Result<RegionBoundary> {
    if n < 16 {
        return Err(Error::ResolutionTooSmall { got: n, min: 16 });
    }
    let points = (0..n)
        .map(|j| boundary_point(frame, -PI + 2.0 * PI * (j + 1) as f64 / n as f64))
        .collect::<Result<Vec<_>>>()?;
    let boundary = RegionBoundary { frame: *frame, points, closed: true };
    let defect = convexity_defect(&boundary);
    if defect > CONVEXITY_TOL {
        return Err(Error::ConvexityViolation(defect));
    }
    Ok(boundary)
}

pub fn convexity_defect(boundary: &RegionBoundary) -> f64 {
    geometry::convexity_defect(&boundary.gammas())
}

/// Brute-force sample of the region: every `c4(τ) + ρ4(τ) e^{iψ}` on a polar
/// `τ` grid and an `α` circle, reduced to its convex hull.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleRegion {
    pub sample_count: usize,
    /// Counter-clockwise hull vertices.
    pub hull: Vec<Complex64>,
    /// Worst relative gap between the closed form and jets of the matching
    /// extremal function at the spot-checked grid nodes.
    pub spot_check_error: f64,
}

impl OracleRegion {
    pub fn area(&self) -> f64 {
        geometry::signed_area(&self.hull).abs()
    }
}

/// `τ` runs over radii `i / tau_res`, `i = 0..=tau_res`, and `tau_res` angles;
/// `α` over `alpha_res` points of the unit circle. Works for degenerate
/// frames as well since it evaluates `c4` directly.
pub fn brute_force_region(
    r: f64,
    s: f64,
    lambda: Complex64,
    mu: Complex64,
    tau_res: usize,
    alpha_res: usize,
) -> Result<OracleRegion> {
    check_region_input(r, s, lambda, mu)?;
    if tau_res < 32 {
        return Err(Error::ResolutionTooSmall { got: tau_res, min: 32 });
    }
    if alpha_res < 8 {
        return Err(Error::ResolutionTooSmall { got: alpha_res, min: 8 });
    }
    let circle: Vec<Complex64> =
        (0..alpha_res).map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / alpha_res as f64)).collect();
    let mut samples = Vec::with_capacity((tau_res + 1) * tau_res * alpha_res);
    let mut nodes = Vec::new();
    for i in 0..=tau_res {
        let rad = i as f64 / tau_res as f64;
        let angles = if i == 0 { 1 } else { tau_res };
        for j in 0..angles {
            let tau = Complex64::from_polar(rad, 2.0 * PI * j as f64 / tau_res as f64);
            let p = Params::new(lambda, mu, tau);
            let center = canonical_center(4, r, s, p)?;
            let radius = if i == tau_res { 0.0 } else { canonical_radius(4, r, s, p)? };
            if radius == 0.0 {
                samples.push(center);
            } else {
                samples.extend(circle.iter().map(|w| center + radius * w));
            }
            if j % (tau_res / 4).max(1) == 0 && i % (tau_res / 4).max(1) == 0 {
                nodes.push((tau, center, radius));
            }
        }
    }
    let mut spot_check_error = 0.0f64;
    for (tau, center, radius) in nodes {
        let inst = CanonicalInstance::new(r, s, lambda, mu, tau)?;
        let alpha = if radius > 0.0 { circle[circle.len() / 3] } else { Complex64::new(0.0, 0.0) };
        let f4 = evaluate_extremal(&build_extremal(&inst, alpha)?, 4)?[4];
        let predicted = center + radius * alpha;
        spot_check_error = spot_check_error.max((f4 - predicted).norm() / predicted.norm().max(radius).max(1.0));
    }
    let hull = geometry::convex_hull(&samples);
    Ok(OracleRegion { sample_count: samples.len(), hull, spot_check_error })
}
