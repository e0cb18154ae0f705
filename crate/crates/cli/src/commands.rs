use std::f64::consts::PI;
use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schwarz_regions::coeffs::{canonical_radius, recovery_tolerance, variability_disk_general, FEASIBILITY_TOL};
use schwarz_regions::jet::DEFAULT_ORDER;
use schwarz_regions::peschl::{peschl_derivatives_by_definition, EQUALITY_TOL};
use schwarz_regions::*;
use serde_json::{json, Value};

use crate::args::{DiskArgs, EvalArgs, PeschlArgs, RegionArgs, VerifyArgs};
use crate::report::{cx, num, report, Outcome};
use crate::svg;

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Relative slack allowed on top of a disk radius.
pub const MEMBERSHIP_REL_TOL: f64 = 1e-9;
/// Slack in units of the order-k radius at zero parameters; covers rigid
/// samples whose radius is zero.
pub const MEMBERSHIP_SCALE_TOL: f64 = 1e-9;
pub const ATTAINMENT_TOL: f64 = 1e-8;
pub const ORACLE_TAU_RES: usize = 64;
pub const ORACLE_ALPHA_RES: usize = 128;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn into_outcome(self) -> Outcome {
        match self {
            Failure::Usage(m) => Outcome::fail(EXIT_USAGE, format!("error: {m}\n")),
            Failure::Io(e) => Outcome::fail(EXIT_VERIFY, format!("error: {e}\n")),
            Failure::Core(e) => Outcome::fail(exit_code(&e), format!("error: {e}\n")),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible(_)
        | Error::InvalidInstance(_)
        | Error::NotASelfMapValue(_)
        | Error::InvalidDerivative(_)
        | Error::RigidCase(_) => EXIT_INFEASIBLE,
        Error::ZeroOutsideDisk(_)
        | Error::InvalidOrder(_)
        | Error::ResolutionTooSmall { .. }
        | Error::MissingData(_) => EXIT_USAGE,
        _ => EXIT_VERIFY,
    }
}

type Run = Result<Outcome, Failure>;

fn padded(values: &[Complex64], needed: usize, what: &str) -> Result<Params, Failure> {
    if values.len() < needed || values.len() > 3 {
        return Err(Failure::Usage(format!("{what} needs between {needed} and 3 values, got {}", values.len())));
    }
    let mut p = [Complex64::new(0.0, 0.0); 3];
    p[..values.len()].copy_from_slice(values);
    Ok(Params::new(p[0], p[1], p[2]))
}

fn params_json(p: Params) -> Value {
    json!({ "lambda": cx(p.lambda), "mu": cx(p.mu), "tau": cx(p.tau) })
}

pub fn disk(a: &DiskArgs) -> Run {
    let k = a.order as usize;
    let inst = GeneralInstance::new(a.z0, a.w0)?;
    let mut inputs = json!({ "z0": cx(a.z0), "w0": cx(a.w0), "order": k });
    let mut outputs = serde_json::Map::new();
    let mut diagnostics = json!({ "feasibility_tol": FEASIBILITY_TOL });
    let params = match (&a.params, &a.data) {
        (Some(p), _) => {
            let p = padded(&p.0, k - 1, "--params")?;
            inputs["params"] = params_json(p);
            p
        }
        (None, Some(d)) => {
            if d.0.len() < k - 1 || d.0.is_empty() || d.0.len() > 3 {
                return Err(Failure::Usage(format!("--data needs between {} and 3 values", (k - 1).max(1))));
            }
            inputs["data"] = Value::Array(d.0.iter().map(|w| cx(*w)).collect());
            let data = inst.with_data(d.0.first().copied(), d.0.get(1).copied(), d.0.get(2).copied());
            let rec = invert_parameters(&data)?;
            let mut tols = Vec::new();
            let mut lower = Vec::new();
            for (n, p) in [Some(rec.lambda), rec.mu, rec.tau].into_iter().enumerate() {
                if let Some(p) = p {
                    tols.push(recovery_tolerance(n + 1, inst.r(), &lower));
                    lower.push(p);
                }
            }
            diagnostics["recovery_tol"] = json!(tols);
            outputs.insert(
                "recovered".into(),
                json!({
                    "lambda": cx(rec.lambda),
                    "mu": rec.mu.map(cx),
                    "tau": rec.tau.map(cx),
                }),
            );
            rec.params()
        }
        (None, None) if k == 1 => Params::zero(),
        (None, None) => return Err(Failure::Usage(format!("order {k} needs --params or --data"))),
    };
    let canonical = inst.canonical(params)?;
    let d = variability_disk_general(k, &inst, params)?;
    outputs.insert("center".into(), cx(d.center));
    outputs.insert("radius".into(), json!(d.radius));
    outputs.insert("feasibility".into(), json!(canonical.feasibility.as_str()));
    Ok(Outcome::ok(report("disk", inputs, Value::Object(outputs), diagnostics)))
}

struct Row {
    theta: f64,
    gamma: Complex64,
    case: &'static str,
    zeta: Option<Complex64>,
    t_theta: Option<f64>,
    normal: Complex64,
}

fn support(hull: &[Complex64], normal: Complex64) -> Complex64 {
    hull.iter().copied().fold(
        hull[0],
        |best, v| {
            if (v * normal.conj()).re > (best * normal.conj()).re {
                v
            } else {
                best
            }
        },
    )
}

pub fn region(a: &RegionArgs) -> Run {
    let mut stderr = String::new();
    let mut oracle = None;
    let rows: Vec<Row> = match envelope_frame(a.r, a.s, a.lambda, a.mu) {
        Ok(frame) => trace_boundary(&frame, a.n)?
            .points
            .iter()
            .map(|p| Row {
                theta: p.theta,
                gamma: p.gamma,
                case: p.tag.as_str(),
                zeta: Some(p.zeta),
                t_theta: Some(p.t_theta),
                normal: Complex64::from_polar(1.0, p.theta + frame.arg_c()),
            })
            .collect(),
        Err(Error::DegenerateFrame(k)) => {
            let _ = writeln!(stderr, "warning: envelope frame is degenerate (|K| = {k:e}); using the brute-force hull");
            let o = brute_force_region(a.r, a.s, a.lambda, a.mu, ORACLE_TAU_RES, ORACLE_ALPHA_RES)?;
            let centroid = o.hull.iter().sum::<Complex64>() / o.hull.len() as f64;
            let mut rows: Vec<Row> = o
                .hull
                .iter()
                .map(|v| {
                    let normal = v - centroid;
                    Row {
                        theta: normal.arg(),
                        gamma: *v,
                        case: "fallback",
                        zeta: None,
                        t_theta: None,
                        normal: normal / normal.norm(),
                    }
                })
                .collect();
            rows.sort_by(|x, y| x.theta.total_cmp(&y.theta));
            oracle = Some(o);
            rows
        }
        Err(e) => return Err(e.into()),
    };
    if a.oracle && oracle.is_none() {
        oracle = Some(brute_force_region(a.r, a.s, a.lambda, a.mu, ORACLE_TAU_RES, ORACLE_ALPHA_RES)?);
    }
    let mut csv = String::from("theta,re,im,case,zeta_re,zeta_im,t_theta");
    if a.oracle {
        csv.push_str(",oracle_re,oracle_im,oracle_gap");
    }
    csv.push('\n');
    for row in &rows {
        let zeta = row.zeta.map_or(",".to_string(), |z| format!("{},{}", num(z.re), num(z.im)));
        let t = row.t_theta.map_or(String::new(), num);
        let _ = write!(csv, "{},{},{},{},{zeta},{t}", num(row.theta), num(row.gamma.re), num(row.gamma.im), row.case);
        if let (true, Some(o)) = (a.oracle, &oracle) {
            let v = support(&o.hull, row.normal);
            let gap = ((row.gamma - v) * row.normal.conj()).re;
            let _ = write!(csv, ",{},{},{}", num(v.re), num(v.im), num(gap));
        }
        csv.push('\n');
    }
    if let Some(path) = &a.svg {
        let curve: Vec<Complex64> = rows.iter().map(|r| r.gamma).collect();
        let overlay = if a.oracle { oracle.as_ref().map(|o| o.hull.as_slice()) } else { None };
        std::fs::write(path, svg::render(&curve, overlay)).map_err(Failure::Io)?;
    }
    Ok(Outcome { stdout: csv, stderr, code: 0 })
}

#[derive(Default)]
struct Suite {
    checked: u64,
    failed: u64,
    worst: f64,
    offenders: Vec<Value>,
}

impl Suite {
    fn record(&mut self, ok: bool, offender: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.offenders.len() < 10 {
                self.offenders.push(offender());
            }
        }
    }

    fn json(&self, worst_name: &str) -> Value {
        json!({
            "checked": self.checked,
            "failed": self.failed,
            worst_name: self.worst,
            "offenders": self.offenders,
        })
    }
}

fn random_disk_point(rng: &mut ChaCha8Rng, max: f64) -> Complex64 {
    Complex64::from_polar(max * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI))
}

pub fn verify(a: &VerifyArgs) -> Run {
    if let Some(z0) = a.z0 {
        if !(z0.norm() > 0.0 && z0.norm() < 1.0) {
            return Err(Failure::Usage(format!("--z0 must satisfy 0 < |z0| < 1, got {}", z0.norm())));
        }
        if let Some(w0) = a.w0 {
            GeneralInstance::new(z0, w0)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let max_degree = a.max_degree as usize;

    let mut membership = Suite { worst: f64::INFINITY, ..Suite::default() };
    for trial in 0..a.trials {
        let seed: u64 = rng.gen();
        let degree = rng.gen_range(1..=max_degree);
        let z0 = a.z0.unwrap_or_else(|| Complex64::from_polar(rng.gen_range(0.1..0.9), rng.gen_range(-PI..PI)));
        let sample = match a.w0 {
            Some(w0) => sample_selfmap_through(seed, degree, z0, w0)?,
            None => sample_selfmap(seed, degree, z0)?,
        };
        let inst = sample.instance()?;
        let echo =
            |detail: String| json!({ "trial": trial, "seed": seed, "degree": degree, "z0": cx(z0), "detail": detail });
        let rec = match invert_parameters(&inst) {
            Ok(rec) => rec,
            Err(e) => {
                membership.record(false, || echo(e.to_string()));
                continue;
            }
        };
        let mut ok = true;
        let mut detail = String::new();
        for k in 1..=4 {
            let d = variability_disk_general(k, &inst, rec.params())?;
            let scale = canonical_radius(k, inst.r(), inst.s(), Params::zero())?;
            let dist = (sample.attained[k] - d.center).norm();
            if k == 4 {
                membership.worst = membership.worst.min((d.radius - dist) / scale);
            }
            if dist > d.radius * (1.0 + MEMBERSHIP_REL_TOL) + MEMBERSHIP_SCALE_TOL * scale {
                ok = false;
                detail = format!("order {k}: |w - c| = {dist:e} > radius {:e}", d.radius);
            }
        }
        membership.record(ok, || echo(detail));
    }

    let mut attainment = Suite::default();
    let frames = (a.trials / 50).clamp(1, 40);
    let mut degenerate = 0u64;
    for _ in 0..frames {
        let r: f64 = rng.gen_range(0.1..0.9);
        let s = rng.gen_range(0.0..0.95) * r;
        let (l, m) = (random_disk_point(&mut rng, 0.9), random_disk_point(&mut rng, 0.9));
        let frame = match envelope_frame(r, s, l, m) {
            Ok(f) => f,
            Err(Error::DegenerateFrame(_)) => {
                degenerate += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        for p in trace_boundary(&frame, 64)?.points {
            let inst = CanonicalInstance::new(r, s, l, m, p.zeta)?;
            let alpha = match p.tag {
                BoundaryTag::Envelope => Complex64::from_polar(1.0, p.theta + frame.arg_c()),
                BoundaryTag::DiskPoint => Complex64::new(0.0, 0.0),
            };
            let f4 = evaluate_extremal(&build_extremal(&inst, alpha)?, 4)?[4];
            let err = (f4 - p.gamma).norm() / p.gamma.norm().max(1.0);
            attainment.worst = attainment.worst.max(err);
            attainment.record(
                err <= ATTAINMENT_TOL,
                || json!({ "r": r, "s": s, "lambda": cx(l), "mu": cx(m), "theta": p.theta, "error": err }),
            );
        }
    }

    let mut peschl = Suite::default();
    for trial in 0..a.trials {
        let degree = (trial % 5) as usize + 1;
        let zeros = (0..degree).map(|_| random_disk_point(&mut rng, 0.95)).collect::<Vec<_>>();
        let b = BlaschkeProduct::new(rng.gen_range(-PI..PI), zeros)?;
        let z = random_disk_point(&mut rng, 0.9);
        let res = fourth_order_inequality(&peschl_derivatives(&b.jet(z, DEFAULT_ORDER)?)?);
        let (ok, gap) = if degree <= 4 {
            (res.is_equality(EQUALITY_TOL), (res.lhs - res.rhs).abs() / res.rhs.max(1.0))
        } else {
            (res.lhs < res.rhs, 0.0)
        };
        peschl.worst = peschl.worst.max(gap);
        peschl.record(ok, || json!({ "trial": trial, "degree": degree, "at": cx(z), "lhs": res.lhs, "rhs": res.rhs }));
    }

    let failed = membership.failed + attainment.failed + peschl.failed;
    let inputs = json!({
        "trials": a.trials,
        "seed": a.seed,
        "z0": a.z0.map(cx),
        "w0": a.w0.map(cx),
        "max_degree": max_degree,
    });
    let outputs = json!({
        "pass": failed == 0,
        "membership": membership.json("worst_slack"),
        "attainment": attainment.json("worst_error"),
        "peschl": peschl.json("worst_equality_gap"),
        "degenerate_frames_skipped": degenerate,
    });
    let diagnostics = json!({
        "membership_rel_tol": MEMBERSHIP_REL_TOL,
        "membership_scale_tol": MEMBERSHIP_SCALE_TOL,
        "attainment_tol": ATTAINMENT_TOL,
        "peschl_equality_tol": EQUALITY_TOL,
        "seed": a.seed,
    });
    let stdout = report("verify", inputs, outputs, diagnostics);
    if failed == 0 {
        return Ok(Outcome::ok(stdout));
    }
    let mut stderr = format!("verification failed: {failed} violation(s)\n");
    for o in membership.offenders.iter().chain(&attainment.offenders).chain(&peschl.offenders) {
        let _ = writeln!(stderr, "  {o}");
    }
    Ok(Outcome { stdout, stderr, code: EXIT_VERIFY })
}

pub fn eval(a: &EvalArgs) -> Run {
    if a.params.0.len() != 3 {
        return Err(Failure::Usage(format!("--params needs λ,μ,τ, got {} values", a.params.0.len())));
    }
    if a.alpha.norm() > 1.0 + FEASIBILITY_TOL {
        return Err(Error::Infeasible(format!("|α| = {} > 1", a.alpha.norm())).into());
    }
    let inst = GeneralInstance::new(a.z0, a.w0)?;
    let params = Params::new(a.params.0[0], a.params.0[1], a.params.0[2]);
    let spec = build_extremal_general(&inst, params, a.alpha)?;
    let f = evaluate_extremal(&spec, a.order as usize)?;
    let d = variability_disk_general(4, &inst, params)?;
    let predicted = d.center + d.radius * a.alpha * inst.z0 / inst.r();
    let diff = (f[4] - predicted).norm();
    let inputs = json!({
        "z0": cx(a.z0),
        "w0": cx(a.w0),
        "params": params_json(params),
        "alpha": cx(a.alpha),
        "order": a.order,
    });
    let outputs = json!({
        "derivatives": f.iter().map(|z| cx(*z)).collect::<Vec<_>>(),
        "case": spec.case.number(),
        "center": cx(d.center),
        "radius": d.radius,
        "predicted": cx(predicted),
        "difference": diff,
        "relative_difference": diff / predicted.norm().max(d.radius).max(1.0),
    });
    Ok(Outcome::ok(report("eval", inputs, outputs, json!({ "feasibility_tol": FEASIBILITY_TOL }))))
}

pub fn peschl(a: &PeschlArgs) -> Run {
    if !(a.at.norm() < 1.0) {
        return Err(Failure::Usage(format!("--at must lie in the open unit disk, got |z| = {}", a.at.norm())));
    }
    let b = BlaschkeProduct::new(a.rotation, a.zeros.0.clone())?;
    let g = b.jet(a.at, DEFAULT_ORDER)?;
    let p = peschl_derivatives(&g)?;
    let q = peschl_derivatives_by_definition(&g)?;
    let route = [(p.d1, q.d1), (p.d2, q.d2), (p.d3, q.d3), (p.d4, q.d4)]
        .iter()
        .map(|(x, y)| (x - y).norm() / y.norm().max(1.0))
        .fold(0.0, f64::max);
    let res = fourth_order_inequality(&p);
    let inputs = json!({
        "zeros": a.zeros.0.iter().map(|z| cx(*z)).collect::<Vec<_>>(),
        "rotation": a.rotation,
        "at": cx(a.at),
    });
    let outputs = json!({
        "degree": b.degree(),
        "value": cx(p.value),
        "d1": cx(p.d1),
        "d2": cx(p.d2),
        "d3": cx(p.d3),
        "d4": cx(p.d4),
        "lhs": res.lhs,
        "rhs": res.rhs,
        "residual": res.slack(),
        "saturated": res.is_equality(EQUALITY_TOL),
        "route_difference": route,
    });
    Ok(Outcome::ok(report("peschl", inputs, outputs, json!({ "equality_tol": EQUALITY_TOL }))))
}
