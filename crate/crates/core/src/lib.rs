//! Variability of `f(z0), f'(z0), .., f''''(z0)` over analytic self-maps of
//! the unit disk fixing the origin.
//!
//! * [`jet`] and [`blaschke`]: truncated Taylor arithmetic, the derivative
//!   oracle for every closed form.
//! * [`coeffs`]: centers and radii of the order 1–4 disks, parameter
//!   inversion, rotation to the real axis, Rogosinski's disk.
//! * [`peschl`]: invariant derivatives and the fourth-order inequality.
//! * [`extremal`]: extremal functions and random self-maps.
//! * [`region`]: the convex region of `f''''(z0)` when `τ` is free.

// `!(x < 1.0)` is used on purpose: it rejects NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blaschke;
pub mod coeffs;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod jet;
pub mod peschl;
pub mod region;

pub use blaschke::BlaschkeProduct;
pub use coeffs::{
    disk_order, disk_order_general, invert_parameters, rogosinski_disk, rotation_reduce, CanonicalInstance, Disk,
    Feasibility, GeneralInstance, Params, Recovered, RotationFactors,
};
pub use error::{Error, Result};
pub use extremal::{
    build_extremal, build_extremal_general, evaluate_extremal, sample_selfmap, sample_selfmap_through, ExtremalCase,
    ExtremalSpec, SelfMapSample,
};
pub use jet::{mobius_apply_jet, Jet};
pub use num_complex::Complex64;
pub use peschl::{fourth_order_inequality, peschl_derivatives, InequalityResidual, PeschlDerivatives};
pub use region::{
    boundary_point, brute_force_region, convexity_defect, envelope_frame, solve_t_theta, trace_boundary, BoundaryPoint,
    BoundaryTag, EnvelopeFrame, OracleRegion, RegionBoundary,
};
