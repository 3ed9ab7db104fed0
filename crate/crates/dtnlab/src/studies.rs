//! One function per subcommand: compute, collect data, state contracts.

use std::f64::consts::PI;

use anyhow::{bail, Context, Result};
use dtnlab_core::ball_dtn::{ball_identity_residual, boundary_laplacian, dtn_ball};
use dtnlab_core::ball_potential::BallPotential;
use dtnlab_core::geometry::symbol::norm_equivalence_constant;
use dtnlab_core::geometry::{
    capped_delaunay, cylinder, ellipsoid, scaled_sphere, DelaunayParams, RevolutionSurface,
};
use dtnlab_core::gohberg::{
    decay_exponent, essential_upper_bounds, order_k_gap, oscillatory_residual_with,
    quantize_normalized, Branch, CircleSymbol, Envelope, TrigPoly,
};
use dtnlab_core::perturbation::{
    commutator_report, default_level, harmonic_moment, perturbative_dtn_adaptive,
    perturbative_dtn_checked, perturbative_dtn_matrix, radial_deficit_sq, radial_projection,
    rotation_identity_residual, CheckedMatrix,
};
use dtnlab_core::potential::RadialPotential;
use dtnlab_core::quadrature::{sphere_rule, BallRule};
use dtnlab_core::radial::{conformal_potential, dtn_radial, symbol_table};
use dtnlab_core::spectral::{commutator, max_abs, SpectralOperator};
use nalgebra::DMatrix;
use serde_json::{json, Value};

use crate::cli::*;
use crate::export::table_loader;
use crate::report::{fmt_f, Contract, Report, Table};

/// Residual bound for exact ball identities.
pub const EXACT_TOL: f64 = 1e-12;
/// Commutator bound for assembled radial DtN maps.
pub const RADIAL_COMMUTATOR_TOL: f64 = 1e-10;
/// `h1_l2_norm` bound for radial perturbations.
pub const LINEAR_COMMUTATOR_TOL: f64 = 1e-8;
/// Bound on `|∫ q u v|` for radial `q` and distinct degrees.
pub const MOMENT_TOL: f64 = 1e-10;
/// Allowed asymmetry of the linearized matrix.
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Allowed `|∫K dA - 4π|` on closed surfaces.
pub const GAUSS_BONNET_TOL: f64 = 1e-6;
/// Rotation residuals are accepted within this many standard errors.
pub const ROTATION_SIGMAS: f64 = 5.0;
/// Tolerances of the Gohberg lower bounds.
pub const GOHBERG_NORM_TOL: f64 = 1e-8;
pub const GOHBERG_ESSENTIAL_TOL: f64 = 1e-6;
/// Oscillatory residual bound at the largest λ.
pub const RESIDUAL_MAX: f64 = 1e-2;
/// Coefficient `c` of the second-order bound `c t²` on the linearization error.
pub const LINEARIZATION_C: f64 = 100.0;
/// Dense grid for the norm-equivalence constant of the symbol bound.
pub const SYMBOL_CONSTANT_GRID: usize = 12;

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::BallCheck(a) => ball_check(a),
        Command::RadialDtn(a) => radial_dtn(a),
        Command::Commutator(a) => commutator_study(a),
        Command::Moments(a) => moments(a),
        Command::RadialProjection(a) => projection(a),
        Command::Surface(a) => surface(a),
        Command::DelaunaySweep(a) => delaunay_sweep(a),
        Command::Gohberg(a) => gohberg(a),
    }
}

fn matrix_rows(m: &DMatrix<f64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| json!(m.row(i).iter().collect::<Vec<_>>()))
            .collect(),
    )
}

fn basis_json(op: &SpectralOperator) -> Value {
    json!(op
        .basis
        .iter()
        .map(|b| [b.k as i64, b.m as i64])
        .collect::<Vec<_>>())
}

fn matrix_table(name: &str, m: &DMatrix<f64>) -> Table {
    let mut t = Table::new(name, &["row", "col", "value"]);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m[(i, j)] != 0.0 {
                t.push(vec![i.to_string(), j.to_string(), fmt_f(m[(i, j)])]);
            }
        }
    }
    t
}

fn parse_radial(spec: &str) -> Result<RadialPotential> {
    Ok(RadialPotential::parse_with(spec, &mut table_loader)?)
}

fn parse_ball(spec: &str) -> Result<BallPotential> {
    Ok(BallPotential::parse_with(spec, &mut table_loader)?)
}

fn ball_check(a: &BallCheckArgs) -> Result<Report> {
    let residual = ball_identity_residual(a.n, a.k_max)?;
    let l = dtn_ball(a.n, a.k_max)?;
    let d = boundary_laplacian(a.n, a.k_max)?;
    let comm = max_abs(&commutator(&l.matrix, &d.matrix));
    let mut r = Report {
        data: json!({
            "n": a.n,
            "K": a.k_max,
            "dim": l.dim(),
            "residual": residual,
            "commutator_max": comm,
            "trace": l.matrix.trace(),
            "degree_values": l.degree_values(),
        }),
        ..Default::default()
    };
    r.contracts
        .push(Contract::at_most("identity_residual", residual, EXACT_TOL));
    r.contracts
        .push(Contract::at_most("commutator_max", comm, EXACT_TOL));
    r.tables.push(matrix_table("dtn", &l.matrix));
    Ok(r)
}

fn radial_dtn(a: &RadialDtnArgs) -> Result<Report> {
    let spec = parse_radial(&a.q)?;
    let q = if a.conformal {
        conformal_potential(&spec, a.n, a.conformal_points)?
    } else {
        spec
    };
    let op = dtn_radial(&q, a.n, a.k_max, a.ode_tol)?;
    let mu = op.degree_values();
    let d = boundary_laplacian(a.n, a.k_max)?;
    let comm = max_abs(&commutator(&op.matrix, &d.matrix));
    let table = symbol_table(&q, a.n, a.k_max, a.ode_tol)?;
    let mut sym = Table::new("symbol", &["k", "lambda", "mu"]);
    for (k, (lam, m)) in table.iter().enumerate() {
        sym.push(vec![k.to_string(), fmt_f(*lam), fmt_f(*m)]);
    }
    let mut r = Report::default();
    r.contracts.push(Contract::at_most(
        "commutator_max",
        comm,
        RADIAL_COMMUTATOR_TOL,
    ));

    let mut lin = Vec::new();
    if !a.consistency_t.is_empty() {
        let ball = dtn_ball(a.n, a.k_max)?;
        let bq = BallPotential::Radial(q.clone());
        let rule = BallRule::new(a.n, default_level(&bq, a.k_max))?;
        let m = perturbative_dtn_matrix(&bq, a.n, a.k_max, &rule)?;
        for &t in &a.consistency_t {
            if t == 0.0 {
                bail!(dtnlab_core::Error::invalid("consistency t must be nonzero"));
            }
            let lt = dtn_radial(&q.clone().scaled(t), a.n, a.k_max, a.ode_tol)
                .with_context(|| format!("t = {t}"))?;
            let err = max_abs(&((&lt.matrix - &ball.matrix) / t - &m.matrix));
            r.contracts.push(Contract::at_most(
                format!("linearization_error(t={t})"),
                err,
                LINEARIZATION_C * t * t,
            ));
            lin.push(json!({"t": t, "error": err}));
        }
    }
    r.data = json!({
        "n": a.n,
        "K": a.k_max,
        "ode_tol": a.ode_tol,
        "mu": mu,
        "shift": mu.iter().enumerate().map(|(k, m)| m - k as f64).collect::<Vec<_>>(),
        "symbol_table": table.iter().map(|(l, m)| [*l, *m]).collect::<Vec<_>>(),
        "commutator_max": comm,
        "linearization": lin,
    });
    r.tables.push(sym);
    Ok(r)
}

fn assemble(
    q: &BallPotential,
    n: usize,
    k_max: u32,
    level: Option<usize>,
    radial_points: Option<usize>,
) -> Result<CheckedMatrix> {
    let level = level.unwrap_or_else(|| default_level(q, k_max));
    Ok(match radial_points {
        Some(m) => perturbative_dtn_checked(q, n, k_max, level, m)?,
        None => perturbative_dtn_adaptive(q, n, k_max, level)?,
    })
}

fn commutator_study(a: &CommutatorArgs) -> Result<Report> {
    let q = parse_ball(&a.q)?;
    let checked = assemble(&q, a.n, a.k_max, a.level, a.radial_points)?;
    let rep = commutator_report(&checked.op);
    let rule = BallRule::with_radial_points(a.n, checked.level, checked.radial_points)?;
    let deficit = radial_deficit_sq(&q, &rule).max(0.0).sqrt();
    let asym = checked.op.asymmetry();
    let mut r = Report {
        data: json!({
            "basis": basis_json(&checked.op),
            "K": a.k_max,
            "level": checked.level,
            "radial_points": checked.radial_points,
            "M": matrix_rows(&checked.op.matrix),
            "C": matrix_rows(&rep.c),
            "h1_l2_norm": rep.h1_l2_norm,
            "max_entry": rep.max_entry,
            "radial_deficit": deficit,
            "refinement_shift": checked.refinement_shift,
            "asymmetry": asym,
        }),
        ..Default::default()
    };
    r.contracts.push(Contract::at_most(
        "refinement_shift",
        checked.refinement_shift,
        dtnlab_core::perturbation::CONVERGENCE_TOL,
    ));
    r.contracts
        .push(Contract::at_most("asymmetry", asym, SYMMETRY_TOL));
    if q.is_structurally_radial() {
        r.contracts.push(Contract::at_most(
            "h1_l2_norm",
            rep.h1_l2_norm,
            LINEAR_COMMUTATOR_TOL,
        ));
    }
    r.tables.push(matrix_table("M", &checked.op.matrix));
    r.tables.push(matrix_table("C", &rep.c));
    Ok(r)
}

fn moments(a: &MomentsArgs) -> Result<Report> {
    let q = parse_ball(&a.q)?;
    // All pairs at once: the linearized matrix entries are exactly these moments.
    let checked = assemble(&q, a.n, a.k_max, a.level, a.radial_points)?;
    let m = &checked.op;
    let rule = BallRule::with_radial_points(a.n, checked.level, checked.radial_points)?;
    let deg = |i: usize| m.basis[i].k;
    let (mut distinct, mut same) = (0.0f64, 0.0f64);
    let blocks = a.k_max as usize + 1;
    let mut block_max = vec![vec![0.0f64; blocks]; blocks];
    let mut table = Table::new("moments", &["k_u", "m_u", "k_v", "m_v", "value"]);
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            let v = m.matrix[(i, j)];
            let (ki, kj) = (deg(i), deg(j));
            block_max[ki as usize][kj as usize] = block_max[ki as usize][kj as usize].max(v.abs());
            if ki == kj {
                same = same.max(v.abs())
            } else {
                distinct = distinct.max(v.abs())
            }
            if j >= i {
                let (u, w) = (m.basis[i], m.basis[j]);
                table.push(vec![
                    u.k.to_string(),
                    u.m.to_string(),
                    w.k.to_string(),
                    w.m.to_string(),
                    fmt_f(v),
                ]);
            }
        }
    }
    // Independent route for a few pairs, one per degree pair on the block diagonal
    // and the first super-diagonal.
    let mut cross = 0.0f64;
    for k in 0..=a.k_max {
        for l in [k, k + 1] {
            if l > a.k_max {
                continue;
            }
            let (i, j) = (m.blocks[k as usize].0, m.blocks[l as usize].0);
            let direct = harmonic_moment(&q, m.basis[i], m.basis[j], &rule)?;
            cross = cross.max((direct - m.matrix[(j, i)]).abs());
        }
    }
    let mut r = Report {
        data: json!({
            "n": a.n,
            "K": a.k_max,
            "level": checked.level,
            "radial_points": checked.radial_points,
            "refinement_shift": checked.refinement_shift,
            "max_distinct_degree": distinct,
            "max_same_degree": same,
            "degree_block_max": block_max,
            "cross_check": cross,
        }),
        ..Default::default()
    };
    r.contracts
        .push(Contract::at_most("cross_check", cross, EXACT_TOL));
    if q.is_structurally_radial() {
        r.contracts.push(Contract::at_most(
            "max_distinct_degree",
            distinct,
            MOMENT_TOL,
        ));
    }
    r.tables.push(table);
    Ok(r)
}

fn projection(a: &RadialProjectionArgs) -> Result<Report> {
    let q = parse_ball(&a.q)?;
    let sphere = sphere_rule(a.n, a.level)?;
    let p = radial_projection(&q, &sphere, a.samples)?;
    let pp = radial_projection(&BallPotential::Radial(p.clone()), &sphere, a.samples)?;
    let mut profile = Table::new("profile", &["r", "Pq"]);
    let mut idem = 0.0f64;
    let mut prof = Vec::new();
    for i in 0..a.samples {
        let r = i as f64 / (a.samples - 1) as f64;
        idem = idem.max((p.eval(r) - pp.eval(r)).abs());
        profile.push(vec![fmt_f(r), fmt_f(p.eval(r))]);
        prof.push([r, p.eval(r)]);
    }
    let rule = BallRule::new(a.n, a.level)?;
    let deficit_sq = radial_deficit_sq(&q, &rule);
    let mut r = Report::default();
    r.contracts
        .push(Contract::at_most("idempotency", idem, EXACT_TOL));
    let mut runs = Vec::new();
    let mut rot = Table::new(
        "rotation",
        &["seed", "samples", "mean", "std_err", "target", "residual"],
    );
    for seed in a.seed..a.seed + a.runs {
        let rep = rotation_identity_residual(&q, &rule, a.rotations, seed)?;
        r.contracts.push(Contract::at_most(
            format!("rotation_residual(seed={seed})"),
            rep.residual.abs(),
            ROTATION_SIGMAS * rep.std_err + EXACT_TOL,
        ));
        rot.push(vec![
            seed.to_string(),
            rep.samples.to_string(),
            fmt_f(rep.mean),
            fmt_f(rep.std_err),
            fmt_f(rep.target),
            fmt_f(rep.residual),
        ]);
        runs.push(json!({
            "seed": seed,
            "samples": rep.samples,
            "mean": rep.mean,
            "std_err": rep.std_err,
            "target": rep.target,
            "residual": rep.residual,
        }));
    }
    r.data = json!({
        "n": a.n,
        "level": a.level,
        "profile": prof,
        "radial_deficit_sq": deficit_sq,
        "target": 2.0 * deficit_sq,
        "idempotency_error": idem,
        "rotation": runs,
    });
    r.tables.push(profile);
    r.tables.push(rot);
    Ok(r)
}

/// `sphere[:R]`, `ellipsoid:a,c`, `cylinder:r,L`, `delaunay:eps[,center,width[,periods]]`.
pub fn parse_surface(spec: &str, resolution: usize) -> Result<RevolutionSurface> {
    let (kind, body) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<f64> = if body.is_empty() {
        Vec::new()
    } else {
        body.split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| dtnlab_core::Error::Parse {
                input: spec.into(),
                reason: e.to_string(),
            })?
    };
    let bad = |reason: &str| dtnlab_core::Error::Parse {
        input: spec.into(),
        reason: reason.into(),
    };
    let s = match (kind, nums.as_slice()) {
        ("sphere", []) => scaled_sphere(1.0, resolution)?,
        ("sphere", [r]) => scaled_sphere(*r, resolution)?,
        ("ellipsoid", [a, c]) => ellipsoid(*a, *c, resolution)?,
        ("cylinder", [r, l]) => cylinder(*r, *l, resolution)?,
        ("delaunay", [eps, rest @ ..]) if rest.len() <= 3 && rest.len() != 1 => {
            let mut p = DelaunayParams::new(*eps);
            if let [c, w, more @ ..] = rest {
                p.blend_center = *c;
                p.blend_width = *w;
                if let [k] = more {
                    if *k < 1.0 || k.fract() != 0.0 {
                        return Err(bad("periods must be a positive integer").into());
                    }
                    p.periods = *k as usize;
                }
            }
            capped_delaunay(p, resolution)?
        }
        ("sphere" | "ellipsoid" | "cylinder" | "delaunay", _) => {
            return Err(bad("wrong number of parameters").into())
        }
        _ => {
            return Err(bad("unknown surface; use sphere, ellipsoid, cylinder or delaunay").into())
        }
    };
    Ok(s)
}

struct SurfaceFacts {
    data: Value,
    contracts: Vec<Contract>,
    diameter: f64,
    deficit_sup: f64,
    sup_grad_ii: f64,
    sup_grad_h: f64,
    h_stddev: Option<f64>,
}

fn surface_facts(
    s: &RevolutionSurface,
    mesh_resolution: usize,
    cst: f64,
    tag: &str,
) -> Result<SurfaceFacts> {
    let area = s.area();
    let gb = s.gauss_bonnet();
    let grad_ii = s.sup_grad_ii()?;
    let grad_h = s.sup_grad_mean();
    let grad_h_blend = s.sup_grad_mean_blend();
    let (dsup, dl2) = s.umbilical_deficit();
    let symbol = s.commutator_symbol_sup();
    let topping = s.topping_report(mesh_resolution);
    let codazzi = s.max_codazzi_defect();
    let h_stddev = s.delaunay_mean_curvature_stddev();
    let curv_scale = s
        .samples
        .iter()
        .map(|p| p.local.grad_ii())
        .fold(1.0, f64::max);
    let mut contracts = Vec::new();
    let name = |n: &str| {
        if tag.is_empty() {
            n.to_string()
        } else {
            format!("{n}({tag})")
        }
    };
    if s.closed {
        contracts.push(Contract::at_most(
            name("gauss_bonnet_error"),
            (gb - 4.0 * PI).abs(),
            GAUSS_BONNET_TOL,
        ));
        contracts.push(Contract::at_most(
            name("topping"),
            topping.diameter,
            topping.bound,
        ));
    }
    contracts.push(Contract::at_most(
        name("symbol_sup"),
        symbol,
        cst * grad_ii + EXACT_TOL,
    ));
    contracts.push(Contract::at_most(
        name("codazzi"),
        codazzi,
        1e-8 * curv_scale,
    ));
    let data = json!({
        "kind": format!("{:?}", s.kind),
        "closed": s.closed,
        "scale": s.scale,
        "area": area,
        "length": s.length(),
        "gauss_bonnet": gb,
        "diameter": topping.diameter,
        "sup_grad_II": grad_ii,
        "sup_grad_H": grad_h,
        "sup_grad_H_blend": grad_h_blend,
        "umbilical_deficit": {"sup": dsup, "l2": dl2},
        "topping_lhs": topping.diameter,
        "topping_rhs": topping.bound,
        "topping_satisfied": topping.satisfied,
        "symbol_sup": symbol,
        "symbol_constant": cst,
        "codazzi_defect": codazzi,
        "delaunay_region": s.delaunay_region(),
        "delaunay_h_stddev": h_stddev,
        "samples": s.samples.len(),
    });
    Ok(SurfaceFacts {
        data,
        contracts,
        diameter: topping.diameter,
        deficit_sup: dsup,
        sup_grad_ii: grad_ii,
        sup_grad_h: grad_h_blend,
        h_stddev,
    })
}

fn curvature_table(s: &RevolutionSurface, name: &str) -> Table {
    let mut t = Table::new(
        name,
        &[
            "s", "x", "rho", "k_mu", "k_pi", "H", "K", "grad_H", "grad_II", "deficit", "symbol",
        ],
    );
    for p in &s.samples {
        let l = p.local;
        t.push(
            [
                p.s,
                l.x,
                l.rho,
                l.k_mu,
                l.k_pi,
                l.mean(),
                l.gauss(),
                l.grad_mean(),
                l.grad_ii(),
                l.umbilical_deficit(),
                l.symbol_sup(),
            ]
            .iter()
            .map(|v| fmt_f(*v))
            .collect(),
        );
    }
    t
}

fn surface(a: &SurfaceArgs) -> Result<Report> {
    let mut s = parse_surface(&a.surface, a.resolution)?;
    if a.normalize_area {
        s = s.normalized_area(4.0 * PI)?;
    }
    let cst = norm_equivalence_constant(SYMBOL_CONSTANT_GRID);
    let f = surface_facts(&s, a.mesh_resolution, cst, "")?;
    let rings = a.mesh_resolution.max(4);
    Ok(Report {
        data: f.data,
        contracts: f.contracts,
        tables: vec![curvature_table(&s, "curvature")],
        mesh: Some(s.mesh(rings, (rings / 2).max(8))),
    })
}

fn delaunay_sweep(a: &DelaunaySweepArgs) -> Result<Report> {
    if a.eps.is_empty() {
        bail!(dtnlab_core::Error::invalid("need at least one ε"));
    }
    let mut eps = a.eps.clone();
    eps.sort_by(|x, y| y.total_cmp(x));
    let cst = norm_equivalence_constant(SYMBOL_CONSTANT_GRID);
    let mut r = Report::default();
    let mut rows = Vec::new();
    let mut table = Table::new(
        "sweep",
        &[
            "eps",
            "h_stddev",
            "sup_grad_H",
            "deficit_sup",
            "diameter",
            "sup_grad_II",
            "topping_rhs",
        ],
    );
    let mut grads = Vec::new();
    for &e in &eps {
        let s = capped_delaunay(DelaunayParams::new(e), a.resolution)
            .with_context(|| format!("ε = {e}"))?
            .normalized_area(4.0 * PI)?;
        let tag = format!("eps={e}");
        let f = surface_facts(&s, a.mesh_resolution, cst, &tag)?;
        let hstd = f.h_stddev.unwrap_or(f64::INFINITY);
        r.contracts.extend(f.contracts);
        r.contracts.push(Contract::at_most(
            format!("h_stddev({tag})"),
            hstd,
            a.max_h_stddev,
        ));
        r.contracts.push(Contract::at_least(
            format!("deficit_sup({tag})"),
            f.deficit_sup,
            a.min_deficit,
        ));
        r.contracts.push(Contract::at_least(
            format!("diameter({tag})"),
            f.diameter,
            a.min_diameter,
        ));
        r.contracts.push(Contract::at_least(
            format!("sup_grad_II({tag})"),
            f.sup_grad_ii,
            a.min_grad_ii,
        ));
        table.push(
            [
                e,
                hstd,
                f.sup_grad_h,
                f.deficit_sup,
                f.diameter,
                f.sup_grad_ii,
                f.data["topping_rhs"].as_f64().unwrap_or(f64::NAN),
            ]
            .iter()
            .map(|v| fmt_f(*v))
            .collect(),
        );
        grads.push(f.sup_grad_h);
        let mut d = f.data;
        d["eps"] = json!(e);
        rows.push(d);
    }
    for (w, e) in grads.windows(2).zip(eps.windows(2)) {
        r.contracts.push(Contract::at_most(
            format!("grad_H_decreasing(eps={}->{})", e[0], e[1]),
            w[1] - w[0],
            0.0,
        ));
    }
    let last = *grads.last().unwrap();
    r.contracts.push(Contract::at_most(
        format!("sup_grad_H(eps={})", eps.last().unwrap()),
        last,
        a.max_grad_h,
    ));
    r.data = json!({ "eps": eps, "surfaces": rows });
    r.tables.push(table);
    Ok(r)
}

fn parse_envelope(spec: &str) -> Result<Envelope> {
    let bad = |reason: &str| dtnlab_core::Error::Parse {
        input: spec.into(),
        reason: reason.into(),
    };
    if let Some(body) = spec.strip_prefix("bump:") {
        let v: Vec<f64> = body
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| bad(&e.to_string()))?;
        match v.as_slice() {
            [c, h] if *h > 0.0 && *h <= PI => Ok(Envelope::Bump {
                center: *c,
                half_width: *h,
            }),
            _ => Err(bad("bump envelope needs center,half_width with 0 < half_width ≤ π").into()),
        }
    } else if let Some(body) = spec.strip_prefix("trig:") {
        Ok(Envelope::Trig(TrigPoly::parse(body)?))
    } else {
        Err(bad("envelope must be bump:center,half_width or trig:<coefficients>").into())
    }
}

fn gohberg(a: &GohbergArgs) -> Result<Report> {
    let sym = CircleSymbol::parse(&a.symbol)?;
    let env = parse_envelope(&a.envelope)?;
    let xi0 = match a.xi0.as_str() {
        "+" | "+1" | "plus" => Branch::Plus,
        "-" | "-1" | "minus" => Branch::Minus,
        other => bail!(dtnlab_core::Error::invalid(format!(
            "ξ₀ must be + or -, got `{other}`"
        ))),
    };
    let gap = order_k_gap(&sym, a.grid)?;
    let ess = essential_upper_bounds(&sym, a.grid, &a.m_list)?;
    let op = quantize_normalized(&sym, a.grid)?;
    let residuals = a
        .lambdas
        .iter()
        .map(|&l| oscillatory_residual_with(&op, &sym, &env, xi0, l).map_err(anyhow::Error::from))
        .collect::<Result<Vec<_>>>()?;
    let mut r = Report::default();
    r.contracts.push(Contract::at_most(
        "sup_a - op_norm",
        gap.sup_a - gap.op_norm,
        GOHBERG_NORM_TOL,
    ));
    if let Some(min) = ess.iter().copied().reduce(f64::min) {
        r.contracts.push(Contract::at_most(
            "sup_a - min_essential_bound",
            gap.sup_a - min,
            GOHBERG_ESSENTIAL_TOL,
        ));
    }
    if let (Some(first), Some(last)) = (residuals.first(), residuals.last()) {
        r.contracts
            .push(Contract::at_most("residual_last", *last, RESIDUAL_MAX));
        if residuals.len() > 1 {
            // Residuals already at roundoff have nothing left to halve.
            let bound = (0.5 * first).max(EXACT_TOL);
            r.contracts
                .push(Contract::at_most("residual_halving", *last, bound));
        }
    }
    let mut t = Table::new("residuals", &["lambda", "residual"]);
    for (l, v) in a.lambdas.iter().zip(&residuals) {
        t.push(vec![l.to_string(), fmt_f(*v)]);
    }
    r.data = json!({
        "symbol": sym.to_string(),
        "order": sym.order,
        "N": a.grid,
        "sup_a": gap.sup_a,
        "op_norm": gap.op_norm,
        "gap": gap.gap,
        "m_list": a.m_list,
        "essential_bounds": ess,
        "lambdas": a.lambdas,
        "residuals": residuals,
        "decay_exponent": decay_exponent(&a.lambdas, &residuals),
    });
    r.tables.push(t);
    Ok(r)
}
