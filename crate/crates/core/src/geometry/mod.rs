//! Surfaces of revolution about the x-axis.
//!
//! A surface is a chain of profile segments evaluated as Taylor jets, so
//! curvatures and their arclength derivatives come from exact differentiation
//! of closed forms. With `σ' = |(x', ρ')|` (derivatives in the segment
//! parameter), the principal curvatures are
//!
//! - meridian: `κμ = (ρ' x'' - x' ρ'') / σ'³`,
//! - parallel: `κπ = x' / (σ' ρ)`,
//!
//! both equal to 1 on the unit sphere. In the orthonormal (meridian, parallel)
//! frame the nonzero components of `∇II` are `∇₁II₁₁ = κμ'`, `∇₁II₂₂ = κπ'` and
//! `∇₂II₁₂ = ∇₂II₂₁ = τ = (κμ - κπ) ρ_s / ρ`; Codazzi says `κπ' = τ`.

pub mod mesh;
pub mod profile;
pub mod symbol;

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::jet::Scalar;
use crate::quadrature::gauss_legendre;
use mesh::{revolve, GeodesicGraph, Mesh};
use profile::{CappedUndulary, Piece, Roulette, Segment, J};

/// Default adaptive sampling density (samples per unit of `min(1, 1/|κ|)`).
pub const DEFAULT_RESOLUTION: usize = 16;
/// Relative tolerance of the jet-vs-finite-difference `∇II` cross-check.
pub const CROSS_CHECK_TOL: f64 = 1e-2;

const GL_POINTS: usize = 6;

/// Local differential data at one profile parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Local {
    pub x: f64,
    pub rho: f64,
    /// Unit tangent components `(x_s, ρ_s)`.
    pub dx: f64,
    pub drho: f64,
    /// `dσ/dt`: arclength per unit segment parameter.
    pub speed: f64,
    /// `d(ln σ')/dt`, the relative rate of change of the parameter speed.
    pub speed_rate: f64,
    pub k_mu: f64,
    pub k_pi: f64,
    pub dk_mu: f64,
    pub dk_pi: f64,
    pub tau: f64,
}

impl Local {
    pub fn mean(&self) -> f64 {
        0.5 * (self.k_mu + self.k_pi)
    }

    pub fn gauss(&self) -> f64 {
        self.k_mu * self.k_pi
    }

    pub fn grad_mean(&self) -> f64 {
        0.5 * Float::abs(self.dk_mu + self.dk_pi)
    }

    pub fn grad_ii(&self) -> f64 {
        Float::sqrt(self.dk_mu * self.dk_mu + self.dk_pi * self.dk_pi + 2.0 * self.tau * self.tau)
    }

    /// Frobenius norm of `II - H·Id`.
    pub fn umbilical_deficit(&self) -> f64 {
        Float::abs(self.k_mu - self.k_pi) / Float::sqrt(2.0)
    }

    pub fn symbol_sup(&self) -> f64 {
        symbol::revolution_symbol_sup(self.dk_mu, self.dk_pi, self.tau)
    }

    pub fn codazzi_defect(&self) -> f64 {
        Float::abs(self.dk_pi - self.tau)
    }
}

fn local_from_jets(x: J, rho: J, scale: f64, pole: bool) -> Local {
    let (x, rho) = (x.scale(scale), rho.scale(scale));
    let xd = x.d();
    let rd = rho.d();
    let xdd = xd.d();
    let rdd = rd.d();
    let sig = (xd * xd + rd * rd).sqrt();
    let sig3 = sig * sig * sig;
    let k_mu = (rd * xdd - xd * rdd) / sig3;
    let speed = sig.c[0];
    let speed_rate = sig.c[1] / speed;
    let (dx, drho) = (xd.c[0] / speed, rd.c[0] / speed);
    if pole || rho.c[0] <= 0.0 {
        // Pole: smooth caps are umbilical with even curvature profiles.
        return Local {
            x: x.c[0],
            rho: 0.0,
            dx,
            drho,
            speed,
            speed_rate,
            k_mu: k_mu.c[0],
            k_pi: k_mu.c[0],
            dk_mu: 0.0,
            dk_pi: 0.0,
            tau: 0.0,
        };
    }
    let k_pi = xd / (sig * rho);
    let tau = (k_mu.c[0] - k_pi.c[0]) * drho / rho.c[0];
    Local {
        x: x.c[0],
        rho: rho.c[0],
        dx,
        drho,
        speed,
        speed_rate,
        k_mu: k_mu.c[0],
        k_pi: k_pi.c[0],
        dk_mu: k_mu.c[1] / speed,
        dk_pi: k_pi.c[1] / speed,
        tau,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub segment: usize,
    pub t: f64,
    /// Arclength from the start of the profile.
    pub s: f64,
    pub local: Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Sphere,
    Ellipsoid,
    Cylinder,
    CappedDelaunay,
}

/// Parameters of a capped Delaunay surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelaunayParams {
    pub eps: f64,
    pub blend_center: f64,
    pub blend_width: f64,
    pub periods: usize,
}

impl DelaunayParams {
    pub fn new(eps: f64) -> Self {
        DelaunayParams {
            eps,
            blend_center: 0.0,
            blend_width: 1.0,
            periods: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RevolutionSurface {
    pub kind: Kind,
    pub segments: Vec<Segment>,
    /// Uniform scale applied to the profile.
    pub scale: f64,
    pub resolution: usize,
    pub samples: Vec<Sample>,
    pub closed: bool,
    /// Present for capped Delaunay surfaces: the undulary parameters.
    pub delaunay: Option<DelaunayParams>,
    /// Axis interval (unscaled) on which the profile is exactly the undulary.
    delaunay_region: Option<(f64, f64)>,
}

impl RevolutionSurface {
    fn build(
        kind: Kind,
        segments: Vec<Segment>,
        scale: f64,
        resolution: usize,
        delaunay: Option<DelaunayParams>,
        delaunay_region: Option<(f64, f64)>,
    ) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::invalid("resolution must be positive"));
        }
        if !(scale > 0.0) {
            return Err(Error::invalid("scale must be positive"));
        }
        let closed = segments.first().is_some_and(|s| s.starts_at_pole())
            && segments.last().is_some_and(|s| s.ends_at_pole());
        let mut surf = RevolutionSurface {
            kind,
            segments,
            scale,
            resolution,
            samples: Vec::new(),
            closed,
            delaunay,
            delaunay_region,
        };
        surf.samples = surf.sample()?;
        if kind == Kind::CappedDelaunay {
            surf.check_necks()?;
        }
        Ok(surf)
    }

    pub fn local(&self, segment: usize, t: f64) -> Local {
        let seg = &self.segments[segment];
        let (x, rho) = seg.eval(t);
        let pole = (seg.starts_at_pole() && t == seg.t0) || (seg.ends_at_pole() && t == seg.t1);
        local_from_jets(x, rho, self.scale, pole)
    }

    fn sample(&self) -> Result<Vec<Sample>> {
        let mut out = Vec::new();
        let mut s = 0.0;
        for (si, seg) in self.segments.iter().enumerate() {
            let mut t = seg.t0;
            let span = seg.t1 - seg.t0;
            let mut prev: Option<f64> = None;
            loop {
                let loc = self.local(si, t);
                if let Some(tp) = prev {
                    s += self.arc_between(si, tp, t);
                }
                if !(si > 0 && t == seg.t0) {
                    out.push(Sample {
                        segment: si,
                        t,
                        s,
                        local: loc,
                    });
                }
                if t >= seg.t1 {
                    break;
                }
                let mut dt = self.param_step(&loc);
                if !dt.is_finite() || dt <= 0.0 {
                    return Err(Error::Refinement(format!(
                        "degenerate profile speed at t={t}"
                    )));
                }
                dt = dt.min(0.25 * span.max(1e-300));
                // Shrink until the step is also acceptable at interior probes, so
                // narrow necks between two flat stretches are not jumped over.
                for _ in 0..200 {
                    let worst = [0.25, 0.5, 0.75, 1.0]
                        .iter()
                        .map(|f| (t + f * dt).min(seg.t1))
                        .map(|tp| self.param_step(&self.local(si, tp)))
                        .fold(f64::INFINITY, f64::min);
                    if dt <= 1.5 * worst {
                        break;
                    }
                    dt = Float::max(0.5 * dt, worst);
                }
                prev = Some(t);
                t = if t + dt >= seg.t1 - 1e-12 * span {
                    seg.t1
                } else {
                    t + dt
                };
                if out.len() > 5_000_000 {
                    return Err(Error::Refinement(
                        "profile sampling did not terminate".into(),
                    ));
                }
            }
        }
        Ok(out)
    }

    /// Parameter step for one sample cell at `loc`.
    fn param_step(&self, loc: &Local) -> f64 {
        let curv = Float::max(Float::abs(loc.k_mu), Float::abs(loc.k_pi));
        let ds = Float::min(self.scale, 1.0 / curv) / self.resolution as f64;
        // The parameter speed may collapse towards a neck on a scale unrelated
        // to the curvature at the current point.
        let rate = 0.25 / Float::abs(loc.speed_rate);
        // Likewise the curvature can blow up before it is large at the current point.
        let kmag = curv.max(1.0 / self.scale);
        let dk = Float::max(Float::abs(loc.dk_mu), Float::abs(loc.dk_pi));
        let growth = 0.25 * kmag / (dk * loc.speed);
        Float::min(ds / loc.speed, rate).min(growth)
    }

    /// Arclength between two parameters of one segment.
    pub fn arc_between(&self, segment: usize, t0: f64, t1: f64) -> f64 {
        let (x, w) = gauss_legendre(GL_POINTS);
        let half = 0.5 * (t1 - t0);
        let mid = 0.5 * (t0 + t1);
        x.iter()
            .zip(&w)
            .map(|(u, w)| w * half * self.local(segment, mid + half * u).speed)
            .sum()
    }

    /// `∫ f dA` by Gauss-Legendre on every sample interval.
    pub fn integrate(&self, mut f: impl FnMut(&Local) -> f64) -> f64 {
        let (x, w) = gauss_legendre(GL_POINTS);
        let mut total = 0.0;
        for pair in self.samples.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let seg = b.segment;
            let t0 = if a.segment == seg {
                a.t
            } else {
                self.segments[seg].t0
            };
            let half = 0.5 * (b.t - t0);
            let mid = 0.5 * (b.t + t0);
            for (u, wu) in x.iter().zip(&w) {
                let loc = self.local(seg, mid + half * u);
                total += wu * half * loc.speed * 2.0 * PI * loc.rho * f(&loc);
            }
        }
        total
    }

    pub fn length(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.s)
    }

    pub fn area(&self) -> f64 {
        self.integrate(|_| 1.0)
    }

    pub fn gauss_bonnet(&self) -> f64 {
        self.integrate(|l| l.gauss())
    }

    pub fn total_abs_mean(&self) -> f64 {
        self.integrate(|l| Float::abs(l.mean()))
    }

    /// Uniformly rescaled copy.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        Self::build(
            self.kind,
            self.segments.clone(),
            self.scale * factor,
            self.resolution,
            self.delaunay,
            self.delaunay_region,
        )
    }

    pub fn normalized_area(&self, target: f64) -> Result<Self> {
        self.rescaled(Float::sqrt(target / self.area()))
    }

    /// Curvature data at arclength `s` (clamped to the profile).
    pub fn fundamental_data(&self, s: f64) -> Local {
        let (seg, t) = self.param_at(s);
        self.local(seg, t)
    }

    /// Segment and parameter at arclength `s`, by bisection between samples.
    pub fn param_at(&self, s: f64) -> (usize, f64) {
        let n = self.samples.len();
        if s <= 0.0 {
            return (self.samples[0].segment, self.samples[0].t);
        }
        if s >= self.samples[n - 1].s {
            return (self.samples[n - 1].segment, self.samples[n - 1].t);
        }
        let i = self.samples.partition_point(|p| p.s <= s) - 1;
        let (a, b) = (self.samples[i], self.samples[i + 1]);
        let seg = b.segment;
        let t0 = if a.segment == seg {
            a.t
        } else {
            self.segments[seg].t0
        };
        let (mut lo, mut hi) = (t0, b.t);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if a.s + self.arc_between(seg, t0, mid) < s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (seg, 0.5 * (lo + hi))
    }

    pub fn sup_over_samples(&self, f: impl Fn(&Local) -> f64) -> f64 {
        self.samples
            .iter()
            .fold(0.0, |m, p| Float::max(m, f(&p.local)))
    }

    /// Sup of `f` over samples accepted by `keep`, polished by a dense scan and
    /// golden-section search between the neighbours of the best sample.
    pub fn refined_sup(&self, f: impl Fn(&Local) -> f64, keep: impl Fn(&Local) -> bool) -> f64 {
        let best = self
            .samples
            .iter()
            .enumerate()
            .filter(|(_, p)| keep(&p.local))
            .map(|(i, p)| (i, f(&p.local)))
            .fold(None, |acc: Option<(usize, f64)>, (i, v)| match acc {
                Some((_, bv)) if bv >= v => acc,
                _ => Some((i, v)),
            });
        let Some((i, mut val)) = best else { return 0.0 };
        let seg = self.samples[i].segment;
        let segment = &self.segments[seg];
        let lo = match i.checked_sub(1).map(|j| self.samples[j]) {
            Some(p) if p.segment == seg => p.t,
            _ => segment.t0,
        };
        let hi = match self.samples.get(i + 1) {
            Some(p) if p.segment == seg => p.t,
            _ => segment.t1,
        };
        let g = |t: f64| {
            let l = self.local(seg, t);
            if keep(&l) {
                f(&l)
            } else {
                0.0
            }
        };
        const SCAN: usize = 32;
        let h = (hi - lo) / SCAN as f64;
        let mut arg = self.samples[i].t;
        for k in 0..=SCAN {
            let t = lo + k as f64 * h;
            let v = g(t);
            if v > val {
                val = v;
                arg = t;
            }
        }
        let (mut a, mut b) = ((arg - h).max(lo), (arg + h).min(hi));
        let phi = 0.5 * (Float::sqrt(5.0) - 1.0);
        for _ in 0..60 {
            let m1 = b - phi * (b - a);
            let m2 = a + phi * (b - a);
            if g(m1) > g(m2) {
                b = m2;
            } else {
                a = m1;
            }
        }
        val.max(g(0.5 * (a + b)))
    }

    pub fn sup_grad_mean(&self) -> f64 {
        self.refined_sup(Local::grad_mean, |_| true)
    }

    /// `sup |∇H|` outside the undulary region, i.e. over the blends and caps.
    /// For other surfaces this is the sup over the whole surface.
    pub fn sup_grad_mean_blend(&self) -> f64 {
        match self.delaunay_region() {
            Some((lo, hi)) => self.refined_sup(Local::grad_mean, |l| l.x <= lo || l.x >= hi),
            None => self.sup_grad_mean(),
        }
    }

    /// `sup |∇II|` from the jet formulas, cross-checked against central
    /// differences of the sampled principal curvatures.
    pub fn sup_grad_ii(&self) -> Result<f64> {
        let jet = self.sup_over_samples(Local::grad_ii);
        let fd = self.sup_grad_ii_fd();
        if Float::abs(jet - fd) > CROSS_CHECK_TOL * jet.max(fd) + 1e-8 {
            return Err(Error::Consistency(format!(
                "sup |∇II| = {jet} from jets but {fd} from finite differences"
            )));
        }
        Ok(jet)
    }

    /// `sup |∇II|` with curvature derivatives replaced by central differences.
    pub fn sup_grad_ii_fd(&self) -> f64 {
        let mut best: f64 = 0.0;
        for p in &self.samples {
            let seg = &self.segments[p.segment];
            let l = p.local;
            if l.rho <= 0.0 {
                continue;
            }
            let curv = Float::max(
                1.0 / self.scale,
                Float::max(Float::abs(l.k_mu), Float::abs(l.k_pi)),
            );
            let dt = 1e-4 / curv / l.speed;
            let (ta, tb) = ((p.t - dt).max(seg.t0), (p.t + dt).min(seg.t1));
            if tb <= ta {
                continue;
            }
            let (la, lb) = (self.local(p.segment, ta), self.local(p.segment, tb));
            if la.rho <= 0.0 || lb.rho <= 0.0 {
                continue;
            }
            let ds = self.arc_between(p.segment, ta, tb);
            let dk_mu = (lb.k_mu - la.k_mu) / ds;
            let dk_pi = (lb.k_pi - la.k_pi) / ds;
            let g = Float::sqrt(dk_mu * dk_mu + dk_pi * dk_pi + 2.0 * l.tau * l.tau);
            best = best.max(g);
        }
        best
    }

    pub fn max_codazzi_defect(&self) -> f64 {
        self.sup_over_samples(Local::codazzi_defect)
    }

    /// `(sup, L²)` norms of `II - H·Id`.
    pub fn umbilical_deficit(&self) -> (f64, f64) {
        let sup = self.sup_over_samples(Local::umbilical_deficit);
        let l2 = Float::sqrt(self.integrate(|l| l.umbilical_deficit().powi(2)));
        (sup, l2)
    }

    pub fn commutator_symbol_sup(&self) -> f64 {
        self.sup_over_samples(Local::symbol_sup)
    }

    /// Meridian points at `rings + 1` arclength-equispaced positions.
    pub fn meridian(&self, rings: usize) -> Vec<(f64, f64)> {
        let len = self.length();
        (0..=rings)
            .map(|i| {
                let s = len * i as f64 / rings as f64;
                let l = self.fundamental_data(s);
                let rho = if (i == 0 || i == rings) && self.closed {
                    0.0
                } else {
                    l.rho
                };
                (l.x, rho)
            })
            .collect()
    }

    pub fn mesh(&self, rings: usize, segments: usize) -> Mesh {
        revolve(&self.meridian(rings), segments)
    }

    /// Mesh-geodesic diameter at `mesh_resolution` rings.
    ///
    /// The lat-long mesh has `mesh_resolution / 2` (at least 8) vertices per
    /// ring and two Steiner points per edge. By rotational symmetry only
    /// sources on one meridian are needed; up to 9 rings including both poles
    /// are used. Mesh paths are never shorter than surface geodesics between
    /// mesh points up to the chord error of the polyline.
    pub fn intrinsic_diameter(&self, mesh_resolution: usize) -> f64 {
        let rings = mesh_resolution.max(4);
        let seg = (rings / 2).max(8);
        let meridian = self.meridian(rings);
        let mesh = revolve(&meridian, seg);
        let graph = GeodesicGraph::new(&mesh, 2);
        let mut start = Vec::with_capacity(meridian.len());
        let mut idx = 0usize;
        for &(_, rho) in &meridian {
            start.push(idx);
            idx += if rho == 0.0 { 1 } else { seg };
        }
        let stride = (rings / 8).max(1);
        let mut sources: Vec<usize> = (0..=rings).step_by(stride).map(|i| start[i]).collect();
        sources.push(start[rings]);
        sources.dedup();
        let mut best: f64 = 0.0;
        for src in sources {
            let d = graph.distances(src);
            best = d[..mesh.vertices.len()].iter().fold(best, |m, v| m.max(*v));
        }
        best
    }

    pub fn topping_report(&self, mesh_resolution: usize) -> ToppingReport {
        let diameter = self.intrinsic_diameter(mesh_resolution);
        let bound = 32.0 / PI * self.total_abs_mean();
        ToppingReport {
            diameter,
            bound,
            satisfied: diameter <= bound,
        }
    }

    /// Axis interval (scaled) where the profile is the undulary itself.
    pub fn delaunay_region(&self) -> Option<(f64, f64)> {
        self.delaunay_region
            .map(|(a, b)| (a * self.scale, b * self.scale))
    }

    /// Standard deviation of `H` over samples in the undulary region.
    pub fn delaunay_mean_curvature_stddev(&self) -> Option<f64> {
        let (lo, hi) = self.delaunay_region()?;
        let hs: Vec<f64> = self
            .samples
            .iter()
            .filter(|p| p.local.x >= lo && p.local.x <= hi)
            .map(|p| p.local.mean())
            .collect();
        if hs.is_empty() {
            return None;
        }
        let m = hs.iter().sum::<f64>() / hs.len() as f64;
        let v = hs.iter().map(|h| (h - m) * (h - m)).sum::<f64>() / hs.len() as f64;
        Some(Float::sqrt(v))
    }

    fn check_necks(&self) -> Result<()> {
        let n = self.samples.len();
        for i in 1..n.saturating_sub(1) {
            let (a, b, c) = (self.samples[i - 1], self.samples[i], self.samples[i + 1]);
            if b.local.rho < a.local.rho && b.local.rho <= c.local.rho {
                let spacing = Float::max(b.s - a.s, c.s - b.s);
                if spacing > b.local.rho / 5.0 {
                    return Err(Error::Refinement(format!(
                        "neck radius {:.3e} at x = {:.4} spans fewer than 5 sample cells \
                         (spacing {spacing:.3e}); raise the resolution",
                        b.local.rho, b.local.x
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToppingReport {
    pub diameter: f64,
    /// `(32/π) ∫|H| dA`.
    pub bound: f64,
    pub satisfied: bool,
}

pub fn sphere_surface(resolution: usize) -> Result<RevolutionSurface> {
    scaled_sphere(1.0, resolution)
}

pub fn scaled_sphere(radius: f64, resolution: usize) -> Result<RevolutionSurface> {
    let seg = Segment {
        piece: Piece::Ellipse {
            a: 1.0,
            c: 1.0,
            x0: 0.0,
        },
        t0: 0.0,
        t1: PI,
    };
    RevolutionSurface::build(
        Kind::Sphere,
        alloc::vec![seg],
        radius,
        resolution,
        None,
        None,
    )
}

/// Ellipsoid with equatorial radius `a` and polar (axial) semi-axis `c`.
pub fn ellipsoid(a: f64, c: f64, resolution: usize) -> Result<RevolutionSurface> {
    if !(a > 0.0 && c > 0.0) {
        return Err(Error::invalid("ellipsoid semi-axes must be positive"));
    }
    let seg = Segment {
        piece: Piece::Ellipse { a, c, x0: 0.0 },
        t0: 0.0,
        t1: PI,
    };
    RevolutionSurface::build(
        Kind::Ellipsoid,
        alloc::vec![seg],
        1.0,
        resolution,
        None,
        None,
    )
}

/// Open cylinder `ρ ≡ r` over `x ∈ [0, length]`.
pub fn cylinder(r: f64, length: f64, resolution: usize) -> Result<RevolutionSurface> {
    if !(r > 0.0 && length > 0.0) {
        return Err(Error::invalid(
            "cylinder radius and length must be positive",
        ));
    }
    let seg = Segment {
        piece: Piece::Cylinder { r },
        t0: 0.0,
        t1: length,
    };
    RevolutionSurface::build(
        Kind::Cylinder,
        alloc::vec![seg],
        1.0,
        resolution,
        None,
        None,
    )
}

/// Capped Delaunay surface: a semicircular cap blended into the undulary of
/// the ellipse with axes 1 and `eps`, `periods` full periods, and a mirrored cap.
pub fn capped_delaunay(params: DelaunayParams, resolution: usize) -> Result<RevolutionSurface> {
    let DelaunayParams {
        eps,
        blend_center,
        blend_width,
        periods,
    } = params;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid("ellipse minor axis must lie in (0, 1)"));
    }
    if periods == 0 {
        return Err(Error::invalid("need at least one period"));
    }
    let lo = blend_center - 0.5 * blend_width;
    let hi = blend_center + 0.5 * blend_width;
    if !(blend_width > 0.0 && lo > -1.0 && hi < 1.0) {
        return Err(Error::invalid("blend interval must lie inside (-1, 1)"));
    }
    let roulette = Roulette::new(eps);
    let x_c = periods as f64 * roulette.perimeter;
    // The caps are unit-sphere arcs reaching x = lo; the middle starts there.
    let theta = Float::acos(-lo);
    let t_a = roulette.t_at_x(lo, 0.0, PI);
    let t_b = 2.0 * PI * periods as f64 + 2.0 * PI - t_a;
    let middle = CappedUndulary {
        roulette,
        blend_center,
        blend_width,
        x_c,
    };
    let segments = alloc::vec![
        Segment {
            piece: Piece::Ellipse {
                a: 1.0,
                c: 1.0,
                x0: 0.0
            },
            t0: 0.0,
            t1: theta
        },
        Segment {
            piece: Piece::Undulary(middle),
            t0: t_a,
            t1: t_b
        },
        Segment {
            piece: Piece::Ellipse {
                a: 1.0,
                c: 1.0,
                x0: x_c
            },
            t0: PI - theta,
            t1: PI
        },
    ];
    RevolutionSurface::build(
        Kind::CappedDelaunay,
        segments,
        1.0,
        resolution,
        Some(params),
        Some((hi, x_c - hi)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_basics() {
        let s = sphere_surface(DEFAULT_RESOLUTION).unwrap();
        assert!((s.area() - 4.0 * PI).abs() < 1e-10);
        assert!((s.gauss_bonnet() - 4.0 * PI).abs() < 1e-10);
        assert!((s.length() - PI).abs() < 1e-12);
        for p in &s.samples {
            assert!((p.local.k_mu - 1.0).abs() < 1e-10);
            assert!((p.local.k_pi - 1.0).abs() < 1e-10);
        }
        assert!(s.sup_grad_ii().unwrap() < 1e-8);
    }

    #[test]
    fn cylinder_curvatures() {
        let c = cylinder(0.5, 2.0, 8).unwrap();
        let l = c.fundamental_data(1.0);
        assert!(l.k_mu.abs() < 1e-14);
        assert!((l.k_pi - 2.0).abs() < 1e-14);
        assert!((l.mean() - 1.0).abs() < 1e-14);
        assert_eq!(l.gauss(), 0.0);
    }

    #[test]
    fn param_at_inverts_arclength() {
        let e = ellipsoid(1.0, 1.2, 16).unwrap();
        for &s in &[0.3, 1.1, 2.9] {
            let (seg, t) = e.param_at(s);
            let back: f64 = (0..64)
                .map(|i| e.arc_between(seg, t * i as f64 / 64.0, t * (i + 1) as f64 / 64.0))
                .sum();
            assert!((back - s).abs() < 1e-10);
        }
    }

    #[test]
    fn coarse_resolution_cannot_resolve_the_neck() {
        let err = capped_delaunay(DelaunayParams::new(0.1), 2).unwrap_err();
        assert!(matches!(err, Error::Refinement(_)));
    }
}
