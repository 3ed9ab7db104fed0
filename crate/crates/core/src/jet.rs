//! Truncated Taylor series ("jets") and the [`Scalar`] abstraction.
//!
//! A `Jet<N>` stores the first `N` Taylor coefficients of a function around a
//! base point, `f(t₀ + h) = Σ_{i<N} c[i] hⁱ + O(h^N)`. Arithmetic on jets is
//! exact up to the truncation order, which gives derivatives of closed-form
//! expressions (profile curves, potentials) without finite differences.

use core::ops::{Add, Div, Mul, Neg, Sub};
use num_traits::Float;

/// Numbers that the closed-form expressions in this crate can be evaluated on.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;
    /// Value at the base point.
    fn value(&self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;

    fn recip(self) -> Self {
        Self::cst(1.0) / self
    }

    fn powi(self, n: i32) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = Self::cst(1.0);
        let mut base = self;
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `self^p` for a nonnegative base; integer exponents avoid the logarithm.
    fn powf(self, p: f64) -> Self {
        if p == Float::round(p) && Float::abs(p) < 64.0 {
            self.powi(p as i32)
        } else {
            (self.ln() * Self::cst(p)).exp()
        }
    }

    fn scale(self, c: f64) -> Self {
        self * Self::cst(c)
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        Float::sqrt(self)
    }
    fn exp(self) -> Self {
        Float::exp(self)
    }
    fn ln(self) -> Self {
        Float::ln(self)
    }
    fn sin(self) -> Self {
        Float::sin(self)
    }
    fn cos(self) -> Self {
        Float::cos(self)
    }
    fn powi(self, n: i32) -> Self {
        Float::powi(self, n)
    }
    fn powf(self, p: f64) -> Self {
        Float::powf(self, p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<const N: usize> {
    pub c: [f64; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Jet { c }
    }

    /// The independent variable expanded at `t0`.
    pub fn variable(t0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = t0;
        if N > 1 {
            c[1] = 1.0;
        }
        Jet { c }
    }

    pub fn from_coeffs(c: [f64; N]) -> Self {
        Jet { c }
    }

    /// `i`-th derivative at the base point.
    pub fn derivative(&self, i: usize) -> f64 {
        let mut f = 1.0;
        for j in 2..=i {
            f *= j as f64;
        }
        self.c[i] * f
    }

    /// Jet of the derivative; the highest coefficient is lost.
    pub fn d(&self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N.saturating_sub(1) {
            c[i] = (i + 1) as f64 * self.c[i + 1];
        }
        Jet { c }
    }

    /// Jet of the antiderivative that equals `c0` at the base point.
    pub fn integral(&self, c0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = c0;
        for i in 1..N {
            c[i] = self.c[i - 1] / i as f64;
        }
        Jet { c }
    }

    /// Evaluate the truncated polynomial at offset `h` from the base point.
    pub fn eval_at(&self, h: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &c| acc * h + c)
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            self.c[i] += rhs.c[i];
        }
        self
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            self.c[i] -= rhs.c[i];
        }
        self
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for v in self.c.iter_mut() {
            *v = -*v;
        }
        self
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            let mut s = 0.0;
            for j in 0..=i {
                s += self.c[j] * rhs.c[i - j];
            }
            c[i] = s;
        }
        Jet { c }
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let mut q = [0.0; N];
        let b0 = rhs.c[0];
        for k in 0..N {
            let mut s = self.c[k];
            for j in 0..k {
                s -= q[j] * rhs.c[k - j];
            }
            q[k] = s / b0;
        }
        Jet { c: q }
    }
}

impl<const N: usize> Scalar for Jet<N> {
    fn cst(v: f64) -> Self {
        Jet::constant(v)
    }

    fn value(&self) -> f64 {
        self.c[0]
    }

    fn sqrt(self) -> Self {
        let mut s = [0.0; N];
        s[0] = Float::sqrt(self.c[0]);
        for k in 1..N {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= s[j] * s[k - j];
            }
            s[k] = acc / (2.0 * s[0]);
        }
        Jet { c: s }
    }

    fn exp(self) -> Self {
        let mut e = [0.0; N];
        e[0] = Float::exp(self.c[0]);
        for k in 1..N {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Jet { c: e }
    }

    fn ln(self) -> Self {
        // (ln a)' = a'/a, integrated term by term.
        let mut l = [0.0; N];
        l[0] = Float::ln(self.c[0]);
        for k in 1..N {
            let mut acc = k as f64 * self.c[k];
            for j in 1..k {
                acc -= j as f64 * l[j] * self.c[k - j];
            }
            l[k] = acc / (k as f64 * self.c[0]);
        }
        Jet { c: l }
    }

    fn sin(self) -> Self {
        sin_cos(self).0
    }

    fn cos(self) -> Self {
        sin_cos(self).1
    }
}

/// Simultaneous sine and cosine of a jet.
pub fn sin_cos<const N: usize>(a: Jet<N>) -> (Jet<N>, Jet<N>) {
    let mut s = [0.0; N];
    let mut c = [0.0; N];
    s[0] = Float::sin(a.c[0]);
    c[0] = Float::cos(a.c[0]);
    for k in 1..N {
        let mut ds = 0.0;
        let mut dc = 0.0;
        for j in 1..=k {
            ds += j as f64 * a.c[j] * c[k - j];
            dc -= j as f64 * a.c[j] * s[k - j];
        }
        s[k] = ds / k as f64;
        c[k] = dc / k as f64;
    }
    (Jet { c: s }, Jet { c })
}
