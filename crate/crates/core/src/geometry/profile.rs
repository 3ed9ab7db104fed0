//! Profile curves `t ↦ (x(t), ρ(t))` of surfaces of revolution about the x-axis.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use crate::jet::{Jet, Scalar};
use crate::quadrature::gauss_legendre_on;
use crate::smooth;

pub type J = Jet<5>;

/// Undulary traced by a focus of a rolling ellipse.
///
/// The ellipse `P(t) = (a cos t, b sin t)` rolls on the x-axis; at `t = π` the
/// far vertex touches down and the focus `F = (c, 0)` sits at height `a + c`,
/// above the origin. Arclength `s(t) = ∫_π^t |P'|` is the contact abscissa.
#[derive(Debug, Clone)]
pub struct Roulette {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `a - c`, computed without cancellation.
    pub a_minus_c: f64,
    panels: Vec<f64>,
    panel_arc: Vec<f64>,
    pub perimeter: f64,
}

const PANEL_POINTS: usize = 20;

impl Roulette {
    /// Ellipse with major axis 1 and minor axis `eps`.
    pub fn new(eps: f64) -> Self {
        let a = 0.5;
        let b = 0.5 * eps;
        let c = Float::sqrt(a * a - b * b);
        let a_minus_c = b * b / (a + c);
        // Speed |P'| varies on the scale b/a near u = 0 and u = π (u = t - π);
        // panels are graded geometrically towards both ends.
        let h0 = (b / a) / 16.0;
        let mut left = Vec::new();
        let mut u = h0;
        while u < 0.5 * PI {
            left.push(u);
            u *= 1.6;
        }
        let mut panels = alloc::vec![0.0];
        panels.extend(left.iter().copied());
        panels.push(0.5 * PI);
        panels.extend(left.iter().rev().map(|v| PI - v));
        panels.push(PI);
        let mut r = Roulette {
            a,
            b,
            c,
            a_minus_c,
            panels,
            panel_arc: Vec::new(),
            perimeter: 0.0,
        };
        let mut arc = alloc::vec![0.0];
        for w in r.panels.windows(2) {
            let last = *arc.last().unwrap();
            arc.push(last + r.speed_integral(w[0], w[1]));
        }
        r.perimeter = 2.0 * arc.last().unwrap();
        r.panel_arc = arc;
        r
    }

    fn speed(&self, u: f64) -> f64 {
        let (s, c) = (Float::sin(u), Float::cos(u));
        Float::sqrt(self.a * self.a * s * s + self.b * self.b * c * c)
    }

    fn speed_integral(&self, u0: f64, u1: f64) -> f64 {
        let (x, w) = gauss_legendre_on(u0, u1, PANEL_POINTS);
        x.iter().zip(&w).map(|(u, w)| w * self.speed(*u)).sum()
    }

    /// `S(u) = ∫_0^u |P'(π + v)| dv` for `u ∈ [0, π]`.
    fn half_arc(&self, u: f64) -> f64 {
        let i = match self.panels.iter().position(|&p| p > u) {
            Some(0) => 0,
            Some(j) => j - 1,
            None => self.panels.len() - 2,
        };
        self.panel_arc[i] + self.speed_integral(self.panels[i], u)
    }

    /// Contact abscissa `s(t)`.
    pub fn arc(&self, t: f64) -> f64 {
        let u = t - PI;
        let periods = Float::floor((u + PI) / (2.0 * PI));
        let r = u - periods * 2.0 * PI;
        let part = if r >= 0.0 {
            self.half_arc(r)
        } else {
            -self.half_arc(-r)
        };
        periods * self.perimeter + part
    }

    /// Focus position `(X(t), Y(t))` as jets in `t`.
    pub fn focus(&self, t: f64) -> (J, J) {
        let tj = J::variable(t);
        let (sn, cs) = (tj.sin(), tj.cos());
        let v = (sn * sn).scale(self.a * self.a) + (cs * cs).scale(self.b * self.b);
        let v = v.sqrt();
        let half = (tj.scale(0.5)).sin();
        // a - c cos t = (a - c) + 2c sin²(t/2)
        let gap = J::cst(self.a_minus_c) + (half * half).scale(2.0 * self.c);
        let y = gap.scale(self.b) / v;
        let s = v.integral(self.arc(t));
        let x = s - (sn * gap).scale(self.c) / v;
        (x, y)
    }

    /// `t` at which the focus abscissa equals `x`, searched in `[lo, hi]`.
    pub fn t_at_x(&self, x: f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.focus(mid).0.c[0] < x {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 * (1.0 + Float::abs(mid)) {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Blend of the semicircle cap profile into the undulary and back.
#[derive(Debug, Clone)]
pub struct CappedUndulary {
    pub roulette: Roulette,
    pub blend_center: f64,
    pub blend_width: f64,
    /// Axis position of the right cap center; the profile is symmetric about `x_c / 2`.
    pub x_c: f64,
}

impl CappedUndulary {
    fn u0<S: Scalar>(x: S) -> S {
        (S::cst(1.0) - x * x).sqrt()
    }

    pub fn eval(&self, t: f64) -> (J, J) {
        let (x, y) = self.roulette.focus(t);
        let (c, w) = (self.blend_center, self.blend_width);
        let phi_l = smooth::step_on(x, c, w);
        let phi_r = smooth::step_on(J::cst(self.x_c) - x, c, w);
        let mut rho = phi_l * phi_r * y;
        if phi_l.value() < 1.0 {
            rho = rho + (J::cst(1.0) - phi_l) * Self::u0(x);
        }
        if phi_r.value() < 1.0 {
            rho = rho + (J::cst(1.0) - phi_r) * Self::u0(x - J::cst(self.x_c));
        }
        (x, rho)
    }
}

#[derive(Debug, Clone)]
pub enum Piece {
    /// `x = x0 - c cos θ`, `ρ = a sin θ` for `θ ∈ [t0, t1] ⊂ [0, π]`.
    Ellipse {
        a: f64,
        c: f64,
        x0: f64,
    },
    /// `x = t`, `ρ = r`.
    Cylinder {
        r: f64,
    },
    Undulary(CappedUndulary),
}

#[derive(Debug, Clone)]
pub struct Segment {
    pub piece: Piece,
    pub t0: f64,
    pub t1: f64,
}

impl Segment {
    pub fn eval(&self, t: f64) -> (J, J) {
        match &self.piece {
            Piece::Ellipse { a, c, x0 } => {
                let tj = J::variable(t);
                (J::cst(*x0) - tj.cos().scale(*c), tj.sin().scale(*a))
            }
            Piece::Cylinder { r } => (J::variable(t), J::cst(*r)),
            Piece::Undulary(u) => u.eval(t),
        }
    }

    pub fn starts_at_pole(&self) -> bool {
        matches!(self.piece, Piece::Ellipse { .. }) && self.t0 == 0.0
    }

    pub fn ends_at_pole(&self) -> bool {
        matches!(self.piece, Piece::Ellipse { .. }) && self.t1 == PI
    }
}
