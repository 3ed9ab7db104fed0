//! Radial potential profiles `q(r)` on `[0, 1]`.
//!
//! Mini-language accepted by [`RadialPotential::parse`]:
//!
//! | spec              | profile                                      |
//! |-------------------|----------------------------------------------|
//! | `const:c`         | `c`                                          |
//! | `well:a,p`        | `a (1 - r²)^p`                               |
//! | `bump:a,r0,w`     | `a` for `r ≤ r0 - w`, smooth decay to 0 at `r0` |
//! | `tablefile:<path>`| natural cubic spline through `(r, value)` rows |

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::Result;
use crate::jet::Scalar;
use crate::parse::{floats_exact, head, parse_err};
use crate::smooth;

#[derive(Debug, Clone, PartialEq)]
pub enum RadialPotential {
    Const(f64),
    Well { a: f64, p: f64 },
    Bump { a: f64, r0: f64, w: f64 },
    Table(CubicSpline),
    Scaled(f64, Box<RadialPotential>),
    Sum(Vec<RadialPotential>),
}

impl RadialPotential {
    pub fn zero() -> Self {
        RadialPotential::Const(0.0)
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.eval_s(r)
    }

    pub fn eval_s<S: Scalar>(&self, r: S) -> S {
        match self {
            RadialPotential::Const(c) => S::cst(*c),
            RadialPotential::Well { a, p } => {
                let base = S::cst(1.0) - r * r;
                if base.value() <= 0.0 && *p != Float::round(*p) {
                    return S::cst(0.0);
                }
                base.powf(*p).scale(*a)
            }
            RadialPotential::Bump { a, r0, w } => {
                smooth::step((S::cst(*r0) - r).scale(1.0 / w)).scale(*a)
            }
            RadialPotential::Table(s) => s.eval_s(r),
            RadialPotential::Scaled(t, inner) => inner.eval_s(r).scale(*t),
            RadialPotential::Sum(parts) => {
                parts.iter().fold(S::cst(0.0), |acc, p| acc + p.eval_s(r))
            }
        }
    }

    /// Radius beyond which the profile vanishes identically, if any.
    pub fn support_radius(&self) -> Option<f64> {
        match self {
            RadialPotential::Const(c) if *c == 0.0 => Some(0.0),
            RadialPotential::Bump { r0, .. } => Some(*r0),
            RadialPotential::Scaled(t, inner) if *t != 0.0 => inner.support_radius(),
            RadialPotential::Scaled(..) => Some(0.0),
            RadialPotential::Sum(parts) => parts
                .iter()
                .map(|p| p.support_radius())
                .try_fold(0.0, |acc: f64, s| s.map(|s| acc.max(s))),
            _ => None,
        }
    }

    pub fn scaled(self, t: f64) -> Self {
        RadialPotential::Scaled(t, Box::new(self))
    }

    /// Parse a spec; `tablefile:` rows are obtained through `load`.
    pub fn parse_with(
        input: &str,
        load: &mut dyn FnMut(&str) -> Result<Vec<(f64, f64)>>,
    ) -> Result<Self> {
        let (family, body) = head(input)?;
        match family {
            "const" => Ok(RadialPotential::Const(floats_exact(input, body, 1)?[0])),
            "well" => {
                let v = floats_exact(input, body, 2)?;
                if v[1] < 0.0 {
                    return Err(parse_err(input, "well exponent must be nonnegative"));
                }
                Ok(RadialPotential::Well { a: v[0], p: v[1] })
            }
            "bump" => {
                let v = floats_exact(input, body, 3)?;
                if !(v[2] > 0.0 && v[1] > 0.0 && v[1] <= 1.0) {
                    return Err(parse_err(input, "bump needs 0 < r0 <= 1 and w > 0"));
                }
                Ok(RadialPotential::Bump {
                    a: v[0],
                    r0: v[1],
                    w: v[2],
                })
            }
            "tablefile" => {
                let rows = load(body)?;
                let (x, y): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
                Ok(RadialPotential::Table(
                    CubicSpline::natural(x, y).map_err(|e| parse_err(input, e))?,
                ))
            }
            other => Err(parse_err(
                input,
                alloc::format!("unknown radial family `{other}`"),
            )),
        }
    }

    /// Parse a spec without file access.
    pub fn parse(input: &str) -> Result<Self> {
        Self::parse_with(input, &mut |_| {
            Err(parse_err(input, "table files need the std front end"))
        })
    }
}

/// Natural cubic spline; linear-in-curvature extrapolation of the end pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn natural(x: Vec<f64>, y: Vec<f64>) -> core::result::Result<Self, String> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err("a table needs at least two rows".into());
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err("table abscissae must be strictly increasing".into());
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err("table values must be finite".into());
        }
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas algorithm for the interior second derivatives.
            let k = n - 2;
            let mut diag = vec![0.0; k];
            let mut rhs = vec![0.0; k];
            let mut sup = vec![0.0; k];
            for i in 0..k {
                let h0 = x[i + 1] - x[i];
                let h1 = x[i + 2] - x[i + 1];
                diag[i] = 2.0 * (h0 + h1);
                sup[i] = h1;
                rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
            }
            for i in 1..k {
                let sub = x[i + 1] - x[i];
                let f = sub / diag[i - 1];
                diag[i] -= f * sup[i - 1];
                rhs[i] -= f * rhs[i - 1];
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for i in (0..k - 1).rev() {
                m[i + 1] = (rhs[i] - sup[i] * m[i + 2]) / diag[i];
            }
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_s(t)
    }

    pub fn eval_s<S: Scalar>(&self, t: S) -> S {
        let tv = t.value();
        let n = self.x.len();
        let i = match self.x.iter().position(|&xi| xi > tv) {
            Some(0) => 0,
            Some(j) => j - 1,
            None => n - 2,
        }
        .min(n - 2);
        let h = self.x[i + 1] - self.x[i];
        let a = (S::cst(self.x[i + 1]) - t).scale(1.0 / h);
        let b = (t - S::cst(self.x[i])).scale(1.0 / h);
        let cubic = |u: S| u * u * u - u;
        a.scale(self.y[i])
            + b.scale(self.y[i + 1])
            + (cubic(a).scale(self.m[i]) + cubic(b).scale(self.m[i + 1])).scale(h * h / 6.0)
    }

    pub fn knots(&self) -> (&[f64], &[f64]) {
        (&self.x, &self.y)
    }
}
