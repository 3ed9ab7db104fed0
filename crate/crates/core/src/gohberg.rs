//! Degree-0 symbols on the circle, their quantization on an `N`-point grid and
//! the sup-norm lower bound for operator and essential norms.
//!
//! A symbol has two branches `a(x, +1)` and `a(x, -1)`, each a trigonometric
//! polynomial in `x`. On the grid `x_j = 2πj/N` with frequencies
//! `ξ ∈ [-N/2, N/2)` the quantization is
//!
//! `(Au)(x_j) = Σ_ξ e^{i x_j ξ} a(x_j, sgn ξ) û(ξ)`,
//!
//! with the `ξ = 0` mode sent to the `+` branch. Order-`k` symbols store the
//! `|ξ|^{-k}`-normalized branches and are quantized as `Op(a |ξ|^k)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::largest_singular_value_complex;
use crate::parse::{head, parse_err, split_top};
use crate::smooth;

/// Grid size used for `‖a‖_∞` before golden-section polishing.
pub const SUP_GRID: usize = 4096;
/// Smallest admissible quantization grid.
pub const MIN_GRID: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Σ_k c_k e^{ikx}` with finitely many terms, sorted by frequency.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TrigPoly {
    pub terms: Vec<(i64, Complex64)>,
}

impl TrigPoly {
    pub fn new(mut terms: Vec<(i64, Complex64)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(i64, Complex64)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|t| t.1 != ZERO);
        TrigPoly { terms: merged }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![(0, Complex64::new(c, 0.0))])
    }

    /// `c0 + c1 cos x`.
    pub fn cosine(c0: f64, c1: f64) -> Self {
        let h = Complex64::new(0.5 * c1, 0.0);
        Self::new(vec![(0, Complex64::new(c0, 0.0)), (1, h), (-1, h)])
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| c * Complex64::from_polar(1.0, *k as f64 * x))
            .sum()
    }

    pub fn coefficient(&self, k: i64) -> Complex64 {
        self.terms.iter().find(|t| t.0 == k).map_or(ZERO, |t| t.1)
    }

    pub fn degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.0.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// The polynomial of the pointwise conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.terms.iter().map(|(k, c)| (-k, c.conj())).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).copied().collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.terms.iter().map(|(k, c)| (*k, c * s)).collect())
    }

    /// `max |p(x)|`.
    pub fn sup_norm(&self) -> f64 {
        if self.degree() == 0 {
            return self.coefficient(0).norm();
        }
        sup_on_circle(|x| self.eval(x).norm())
    }

    /// Comma-separated `freq=value` terms; a value is `re`, `re+imi` or `re-imi`.
    pub fn parse(input: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for tok in input.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(input, format!("`{tok}` is not `freq=value`")))?;
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|_| parse_err(input, format!("bad frequency `{k}`")))?;
            terms.push((k, parse_complex(input, v.trim())?));
        }
        Ok(Self::new(terms))
    }
}

fn parse_complex(input: &str, v: &str) -> Result<Complex64> {
    let bad = || parse_err(input, format!("`{v}` is not a number"));
    let Some(body) = v.strip_suffix('i') else {
        return v
            .parse::<f64>()
            .map(|r| Complex64::new(r, 0.0))
            .map_err(|_| bad());
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        s => s,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn sup_on_circle(f: impl Fn(f64) -> f64) -> f64 {
    let h = 2.0 * PI / SUP_GRID as f64;
    let (mut arg, mut best) = (0.0, f(0.0));
    for j in 1..SUP_GRID {
        let v = f(j as f64 * h);
        if v > best {
            best = v;
            arg = j as f64 * h;
        }
    }
    let (mut lo, mut hi) = (arg - h, arg + h);
    let g = 0.5 * (Float::sqrt(5.0) - 1.0);
    for _ in 0..80 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if f(m1) > f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    best.max(f(0.5 * (lo + hi)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleSymbol {
    pub plus: TrigPoly,
    pub minus: TrigPoly,
    pub order: u32,
}

impl CircleSymbol {
    pub fn new(plus: TrigPoly, minus: TrigPoly, order: u32) -> Self {
        CircleSymbol { plus, minus, order }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(TrigPoly::constant(c), TrigPoly::constant(c), 0)
    }

    /// `sgn ξ`.
    pub fn sign() -> Self {
        Self::new(TrigPoly::constant(1.0), TrigPoly::constant(-1.0), 0)
    }

    /// `(2 + cos x)` for `ξ > 0` and `1` for `ξ < 0`.
    pub fn mixed() -> Self {
        Self::new(TrigPoly::cosine(2.0, 1.0), TrigPoly::constant(1.0), 0)
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = order;
        self
    }

    pub fn branch(&self, b: Branch) -> &TrigPoly {
        match b {
            Branch::Plus => &self.plus,
            Branch::Minus => &self.minus,
        }
    }

    pub fn eval(&self, x: f64, b: Branch) -> Complex64 {
        self.branch(b).eval(x)
    }

    pub fn is_x_independent(&self) -> bool {
        self.plus.degree() == 0 && self.minus.degree() == 0
    }

    /// `‖a‖_∞` over both branches (of the normalized principal part).
    pub fn sup_norm(&self) -> f64 {
        self.plus.sup_norm().max(self.minus.sup_norm())
    }

    /// Pointwise conjugate symbol.
    pub fn conj(&self) -> Self {
        Self::new(self.plus.conj(), self.minus.conj(), self.order)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::invalid("symbols of different order cannot be added"));
        }
        Ok(Self::new(
            self.plus.add(&other.plus),
            self.minus.add(&other.minus),
            self.order,
        ))
    }

    /// `const:c`, `sign`, `mixed`, or `;`-separated `branch+:…`, `branch-:…`,
    /// `order:k` clauses with branches in [`TrigPoly::parse`] form. A missing
    /// branch is zero.
    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim();
        match s {
            "sign" => return Ok(Self::sign()),
            "mixed" => return Ok(Self::mixed()),
            _ => {}
        }
        if let Some(c) = s.strip_prefix("const:") {
            let c: f64 = c
                .trim()
                .parse()
                .map_err(|_| parse_err(input, "bad constant"))?;
            return Ok(Self::constant(c));
        }
        let mut sym = Self::new(TrigPoly::default(), TrigPoly::default(), 0);
        let mut seen = false;
        for clause in split_top(s, ';')
            .into_iter()
            .map(str::trim)
            .filter(|c| !c.is_empty())
        {
            let (h, body) = head(clause)?;
            match h {
                "branch+" => sym.plus = TrigPoly::parse(body)?,
                "branch-" => sym.minus = TrigPoly::parse(body)?,
                "order" => {
                    sym.order = body.parse().map_err(|_| parse_err(input, "bad order"))?;
                }
                other => return Err(parse_err(input, format!("unknown clause `{other}`"))),
            }
            seen = true;
        }
        if !seen {
            return Err(parse_err(input, "empty symbol"));
        }
        Ok(sym)
    }
}

/// Frequency of grid mode `j`, in `[-N/2, N/2)`.
pub fn frequency(j: usize, n: usize) -> i64 {
    let j = j as i64;
    let n = n as i64;
    if j < n / 2 {
        j
    } else {
        j - n
    }
}

fn mode(xi: i64, n: usize) -> usize {
    xi.rem_euclid(n as i64) as usize
}

pub fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
}

fn branch_of(xi: i64, zero: Branch) -> Branch {
    match xi.cmp(&0) {
        core::cmp::Ordering::Greater => Branch::Plus,
        core::cmp::Ordering::Less => Branch::Minus,
        core::cmp::Ordering::Equal => zero,
    }
}

/// `|ξ|^k` and its composition with `(1 + ξ²)^{-k/2}`.
fn weight(order: u32, normalized: bool) -> impl Fn(i64) -> f64 {
    move |xi| {
        if order == 0 {
            return 1.0;
        }
        let x = xi as f64;
        let w = Float::powi(Float::abs(x), order as i32);
        if normalized {
            w / Float::powf(1.0 + x * x, 0.5 * order as f64)
        } else {
            w
        }
    }
}

fn check_grid(n: usize) -> Result<()> {
    if n < MIN_GRID || !n.is_power_of_two() {
        return Err(Error::invalid(format!(
            "grid size {n} must be a power of two ≥ {MIN_GRID}"
        )));
    }
    Ok(())
}

/// Dense matrix of `Op(a)` acting on grid values.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedOperator {
    pub n: usize,
    pub matrix: DMatrix<Complex64>,
}

impl QuantizedOperator {
    pub fn apply(&self, u: &[Complex64]) -> Vec<Complex64> {
        let v = nalgebra::DVector::from_column_slice(u);
        (&self.matrix * v).iter().copied().collect()
    }

    /// Operator norm on `ℓ²` of the grid, which is `L²(S¹)` up to a common factor.
    pub fn norm(&self) -> f64 {
        largest_singular_value_complex(&self.matrix)
    }

    pub fn adjoint(&self) -> Self {
        QuantizedOperator {
            n: self.n,
            matrix: self.matrix.adjoint(),
        }
    }
}

fn assemble(a: &CircleSymbol, n: usize, w: impl Fn(i64) -> f64, zero: Branch) -> QuantizedOperator {
    // Per branch: convolution kernel c_b(d) = (1/N) Σ_{ξ ∈ b} w(ξ) e^{2πi dξ/N}.
    let mut kernels = [vec![ZERO; n], vec![ZERO; n]];
    let unit: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
        .collect();
    for j in 0..n {
        let xi = frequency(j, n);
        let b = branch_of(xi, zero) as usize;
        let wx = w(xi) / n as f64;
        if wx == 0.0 {
            continue;
        }
        for (d, k) in kernels[b].iter_mut().enumerate() {
            *k += unit[(d * j) % n] * wx;
        }
    }
    let x = grid(n);
    let vals: [Vec<Complex64>; 2] = [
        x.iter().map(|&t| a.plus.eval(t)).collect(),
        x.iter().map(|&t| a.minus.eval(t)).collect(),
    ];
    let matrix = DMatrix::from_fn(n, n, |j, l| {
        let d = (j + n - l) % n;
        vals[0][j] * kernels[0][d] + vals[1][j] * kernels[1][d]
    });
    QuantizedOperator { n, matrix }
}

/// `Op(a |ξ|^k)` for a symbol of order `k`.
pub fn quantize(a: &CircleSymbol, n: usize) -> Result<QuantizedOperator> {
    check_grid(n)?;
    Ok(assemble(a, n, weight(a.order, false), Branch::Plus))
}

/// As [`quantize`] but with the zero mode assigned to `zero`.
pub fn quantize_with_zero_mode(
    a: &CircleSymbol,
    n: usize,
    zero: Branch,
) -> Result<QuantizedOperator> {
    check_grid(n)?;
    Ok(assemble(a, n, weight(a.order, false), zero))
}

/// `Op(a |ξ|^k) (1 + Δ)^{-k/2}`, a bounded operator whose symbol sup-norm
/// lower-bounds its norm.
pub fn quantize_normalized(a: &CircleSymbol, n: usize) -> Result<QuantizedOperator> {
    check_grid(n)?;
    Ok(assemble(a, n, weight(a.order, true), Branch::Plus))
}

/// Matrix of the normalized operator in the frequency basis, indexed by grid
/// mode. Products with `e^{ikx}` alias modulo `N`, exactly as on the grid.
pub fn frequency_matrix(a: &CircleSymbol, n: usize) -> Result<DMatrix<Complex64>> {
    check_grid(n)?;
    let w = weight(a.order, true);
    let mut m = DMatrix::from_element(n, n, ZERO);
    for col in 0..n {
        let xi = frequency(col, n);
        let p = a.branch(branch_of(xi, Branch::Plus));
        let wx = w(xi);
        for &(k, c) in &p.terms {
            m[(mode(xi + k, n), col)] += c * wx;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub order: u32,
    pub sup_a: f64,
    pub op_norm: f64,
    /// `op_norm - sup_a`; the lower bound asserts this is not negative in the limit.
    pub gap: f64,
}

/// `(‖a‖_∞, ‖A‖₂, ‖A‖₂ - ‖a‖_∞)` for a degree-0 symbol.
pub fn gohberg_gap(a: &CircleSymbol, n: usize) -> Result<GapReport> {
    if a.order != 0 {
        return Err(Error::invalid(format!(
            "symbol has order {}; use order_k_gap",
            a.order
        )));
    }
    order_k_gap(a, n)
}

/// Gap for `Op(a |ξ|^k) (1 + Δ)^{-k/2}` against the normalized principal part.
/// Reported with the same sign convention as [`gohberg_gap`].
pub fn order_k_gap(a: &CircleSymbol, n: usize) -> Result<GapReport> {
    let op = quantize_normalized(a, n)?;
    let sup_a = a.sup_norm();
    let op_norm = op.norm();
    Ok(GapReport {
        n,
        order: a.order,
        sup_a,
        op_norm,
        gap: op_norm - sup_a,
    })
}

/// Frequency modes with `|ξ| > m`.
fn high_modes(n: usize, m: usize) -> Vec<usize> {
    (0..n)
        .filter(|&j| frequency(j, n).unsigned_abs() as usize > m)
        .collect()
}

fn compress(full: &DMatrix<Complex64>, keep: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(keep.len(), keep.len(), |i, j| full[(keep[i], keep[j])])
}

/// `‖A - K_m‖₂` with `K_m = A P_m + P_m A - P_m A P_m` for each `m`, where
/// `P_m` projects onto `|ξ| ≤ m`. Then `A - K_m = (1 - P_m) A (1 - P_m)`.
pub fn essential_upper_bounds(a: &CircleSymbol, n: usize, m_list: &[usize]) -> Result<Vec<f64>> {
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("m_list must be strictly increasing"));
    }
    if let Some(&m) = m_list.iter().find(|&&m| m >= n / 2) {
        return Err(Error::invalid(format!(
            "m = {m} must be below N/2 = {}",
            n / 2
        )));
    }
    let full = frequency_matrix(a, n)?;
    Ok(m_list
        .iter()
        .map(|&m| largest_singular_value_complex(&compress(&full, &high_modes(n, m))))
        .collect())
}

/// Envelope `f` of the oscillatory family `u_λ = e^{iλξ₀x} f(x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Envelope {
    Trig(TrigPoly),
    /// C^∞ bump equal to 1 near `center` and vanishing outside `center ± half_width`.
    Bump {
        center: f64,
        half_width: f64,
    },
}

impl Envelope {
    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            Envelope::Trig(p) => p.eval(x),
            Envelope::Bump { center, half_width } => {
                let d = Float::abs((x - center + PI).rem_euclid(2.0 * PI) - PI) / half_width;
                // Plateau on |d| ≤ 1/4, smooth descent to 0 at |d| = 1.
                Complex64::new(smooth::step((1.0 - d) / 0.75), 0.0)
            }
        }
    }
}

/// `‖A u_λ - a(·, ξ₀) u_λ‖₂ / ‖u_λ‖₂` on an `N`-point grid.
pub fn oscillatory_residual(
    a: &CircleSymbol,
    f: &Envelope,
    xi0: Branch,
    lambda: u32,
    n: usize,
) -> Result<f64> {
    check_grid(n)?;
    if lambda == 0 || lambda as usize > n / 4 {
        return Err(Error::invalid(format!(
            "λ = {lambda} must lie in 1..={} to be resolved on {n} points",
            n / 4
        )));
    }
    let op = quantize_normalized(a, n)?;
    oscillatory_residual_with(&op, a, f, xi0, lambda)
}

/// As [`oscillatory_residual`] with a prebuilt operator.
pub fn oscillatory_residual_with(
    op: &QuantizedOperator,
    a: &CircleSymbol,
    f: &Envelope,
    xi0: Branch,
    lambda: u32,
) -> Result<f64> {
    let n = op.n;
    if lambda == 0 || lambda as usize > n / 4 {
        return Err(Error::invalid(format!(
            "λ = {lambda} is beyond the grid's range"
        )));
    }
    let s = match xi0 {
        Branch::Plus => 1.0,
        Branch::Minus => -1.0,
    };
    let x = grid(n);
    let u: Vec<Complex64> = x
        .iter()
        .map(|&t| Complex64::from_polar(1.0, s * lambda as f64 * t) * f.eval(t))
        .collect();
    let au = op.apply(&u);
    let mut num = 0.0;
    let mut den = 0.0;
    for ((t, ui), aui) in x.iter().zip(&u).zip(&au) {
        num += (aui - a.eval(*t, xi0) * ui).norm_sqr();
        den += ui.norm_sqr();
    }
    if den == 0.0 {
        return Err(Error::invalid("envelope vanishes on the grid"));
    }
    Ok(Float::sqrt(num / den))
}

/// Fitted exponent `p` in `residual ≈ C λ^{-p}` by least squares in log-log.
pub fn decay_exponent(lambdas: &[u32], residuals: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = lambdas
        .iter()
        .zip(residuals)
        .filter(|(_, r)| **r > 0.0)
        .map(|(l, r)| (Float::ln(*l as f64), Float::ln(*r)))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(-sxy / sxx)
}

/// `‖Q (A* - Op(ā)) Q‖₂`, with `Q` the projection onto `m < |ξ| < N/2 - m`.
///
/// `A* - Op(ā)` is a sum of commutators of multiplications with the branch
/// projections; on the grid these live at the two sign changes of `ξ`
/// (zero and the Nyquist wrap). A term `e^{ikx}` only reaches across a removed
/// band of `2m + 1` modes when `|k| ≥ 2m + 2`, so the defect vanishes once `m`
/// reaches half the degree of `a`.
pub fn adjoint_defect(a: &CircleSymbol, n: usize, m: usize) -> Result<f64> {
    let fa = frequency_matrix(a, n)?;
    let fb = frequency_matrix(&a.conj(), n)?;
    let d = fa.adjoint() - fb;
    let keep: Vec<usize> = (0..n)
        .filter(|&j| {
            let f = frequency(j, n).unsigned_abs() as usize;
            f > m && f + m < n / 2
        })
        .collect();
    Ok(largest_singular_value_complex(&compress(&d, &keep)))
}

/// Norm of `A + K` for a correction `K` supported on frequencies `|ξ| ≤ m`
/// (given as a `(2m+1)²` block in ascending frequency order).
pub fn corrected_norm(a: &CircleSymbol, n: usize, m: usize, k: &DMatrix<Complex64>) -> Result<f64> {
    if k.nrows() != 2 * m + 1 || k.ncols() != 2 * m + 1 || 2 * m + 1 > n {
        return Err(Error::invalid("correction block has the wrong size"));
    }
    let mut full = frequency_matrix(a, n)?;
    for (i, fi) in (-(m as i64)..=m as i64).enumerate() {
        for (j, fj) in (-(m as i64)..=m as i64).enumerate() {
            full[(mode(fi, n), mode(fj, n))] += k[(i, j)];
        }
    }
    Ok(largest_singular_value_complex(&full))
}

impl core::fmt::Display for CircleSymbol {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let poly = |p: &TrigPoly| {
            p.terms
                .iter()
                .map(|(k, c)| {
                    if c.im == 0.0 {
                        format!("{k}={}", c.re)
                    } else {
                        format!("{k}={}{:+}i", c.re, c.im)
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "branch+:{};branch-:{};order:{}",
            poly(&self.plus),
            poly(&self.minus),
            self.order
        )
    }
}

impl core::str::FromStr for CircleSymbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        (a - b).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    #[test]
    fn constant_symbol_is_scalar() {
        let op = quantize(&CircleSymbol::constant(2.5), 32).unwrap();
        let id = DMatrix::from_fn(32, 32, |i, j| {
            Complex64::new(if i == j { 2.5 } else { 0.0 }, 0.0)
        });
        assert!(max_diff(&op.matrix, &id) < 1e-13);
    }

    #[test]
    fn sign_multiplier_is_unitary() {
        let op = quantize(&CircleSymbol::sign(), 32).unwrap();
        let p = &op.matrix.adjoint() * &op.matrix;
        let id = DMatrix::<Complex64>::identity(32, 32);
        assert!(max_diff(&p, &id) < 1e-12);
        assert!((op.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frequency_matrix_is_unitarily_equivalent() {
        let a = CircleSymbol::mixed().with_order(1);
        let n = 16;
        let op = quantize_normalized(&a, n).unwrap();
        let fm = frequency_matrix(&a, n).unwrap();
        let s = 1.0 / (n as f64).sqrt();
        let f = DMatrix::from_fn(n, n, |p, j| {
            Complex64::from_polar(s, -2.0 * PI * (p * j) as f64 / n as f64)
        });
        let conj = &f * &op.matrix * f.adjoint();
        assert!(max_diff(&conj, &fm) < 1e-12);
    }

    #[test]
    fn zero_mode_choice_is_rank_one() {
        let a = CircleSymbol::mixed();
        let p = quantize_with_zero_mode(&a, 32, Branch::Plus).unwrap();
        let m = quantize_with_zero_mode(&a, 32, Branch::Minus).unwrap();
        let sv = (p.matrix - m.matrix).singular_values();
        let big = sv.iter().filter(|s| **s > 1e-12).count();
        assert_eq!(big, 1);
    }

    #[test]
    fn parse_forms() {
        let a = CircleSymbol::parse("branch+:0=2,1=0.5,-1=0.5; branch-:0=1").unwrap();
        assert_eq!(a, CircleSymbol::mixed());
        let b = CircleSymbol::parse(&a.to_string()).unwrap();
        assert_eq!(a, b);
        let c = CircleSymbol::parse("branch+:1=0.5-2i,2=1e-3i;order:2").unwrap();
        assert_eq!(c.plus.coefficient(1), Complex64::new(0.5, -2.0));
        assert_eq!(c.plus.coefficient(2), Complex64::new(0.0, 1e-3));
        assert_eq!(c.order, 2);
        assert!(c.minus.terms.is_empty());
        assert!(CircleSymbol::parse("branch*:0=1").is_err());
        assert!(CircleSymbol::parse("branch+:x=1").is_err());
        assert_eq!(
            CircleSymbol::parse("const:-1.5").unwrap(),
            CircleSymbol::constant(-1.5)
        );
    }

    #[test]
    fn sup_norm_of_cosine() {
        assert!((TrigPoly::cosine(2.0, 1.0).sup_norm() - 3.0).abs() < 1e-14);
        // |e^{ix} + e^{2ix}| = 2|cos(x/2)| peaks at x = 0 with value 2.
        let p = TrigPoly::parse("1=1,2=1").unwrap();
        assert!((p.sup_norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn grid_validation() {
        assert!(quantize(&CircleSymbol::sign(), 24).is_err());
        assert!(quantize(&CircleSymbol::sign(), 8).is_err());
        let f = Envelope::Trig(TrigPoly::constant(1.0));
        assert!(oscillatory_residual(&CircleSymbol::sign(), &f, Branch::Plus, 9, 32).is_err());
    }
}
