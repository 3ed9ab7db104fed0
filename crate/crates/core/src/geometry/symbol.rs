//! The order-1 symbol of `[Λ, Δ]` in terms of `∇II` on a surface.
//!
//! In normal coordinates at a point, with `T_ijk = ∂_i II_jk` and unit `ξ`, the
//! symbol is `P_T(ξ) = Σ_i ξ_i (Σ_jk ξ_j ξ_k T_ijk - 2 ∂_i H)`, where
//! `2 ∂_i H = Σ_j T_ijj`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

/// `T[i][j][k]` in two dimensions.
pub type Tensor3 = [[[f64; 2]; 2]; 2];

pub fn symbol_value(t: &Tensor3, xi: [f64; 2]) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        let mut inner = 0.0;
        for j in 0..2 {
            for k in 0..2 {
                inner += xi[j] * xi[k] * t[i][j][k];
            }
            inner -= t[i][j][j];
        }
        s += xi[i] * inner;
    }
    s
}

pub fn tensor_norm(t: &Tensor3) -> f64 {
    let mut s = 0.0;
    for a in t.iter().flatten().flatten() {
        s += a * a;
    }
    Float::sqrt(s)
}

/// `∇II` of a surface of revolution in the (meridian, parallel) frame.
pub fn revolution_tensor(dk_mu: f64, dk_pi: f64, tau: f64) -> Tensor3 {
    let mut t = [[[0.0; 2]; 2]; 2];
    t[0][0][0] = dk_mu;
    t[0][1][1] = dk_pi;
    t[1][0][1] = tau;
    t[1][1][0] = tau;
    t
}

/// `sup_{|ξ|=1} |P_T(ξ)|` for the revolution tensor, in closed form.
///
/// With `ξ = (c, ±√(1-c²))` the symbol is the odd cubic
/// `f(c) = A c³ + B c`, `A = κμ' - κπ' - 2τ`, `B = 2τ - κμ'`.
pub fn revolution_symbol_sup(dk_mu: f64, dk_pi: f64, tau: f64) -> f64 {
    let a = dk_mu - dk_pi - 2.0 * tau;
    let b = 2.0 * tau - dk_mu;
    let mut best = Float::abs(a + b);
    if a != 0.0 {
        let c2 = -b / (3.0 * a);
        if c2 > 0.0 && c2 < 1.0 {
            let c = Float::sqrt(c2);
            best = best.max(Float::abs(c * (a * c2 + b)));
        }
    }
    best
}

/// `sup_T sup_ξ |P_T(ξ)| / |T|` over fully symmetric 2-D 3-tensors, by a
/// dense search over the unit sphere of the 4-dimensional tensor space
/// followed by coordinate refinement.
pub fn norm_equivalence_constant(grid: usize) -> f64 {
    // Coordinates (p, q, r, u) = (T111, T112, T122, T222); |T|² = p² + 3q² + 3r² + u².
    let ratio = |v: [f64; 4]| -> f64 {
        let (p, q, r, u) = (v[0], v[1], v[2], v[3]);
        let t: Tensor3 = [[[p, q], [q, r]], [[q, r], [r, u]]];
        let n = tensor_norm(&t);
        if n == 0.0 {
            return 0.0;
        }
        xi_sup(&t, 64) / n
    };
    let mut best = (0.0, [1.0, 0.0, 0.0, 0.0]);
    let g = grid.max(4);
    // Hyperspherical angles over a half-sphere (the ratio is even in T).
    for i in 0..g {
        let a1 = PI * (i as f64 + 0.5) / g as f64;
        for j in 0..g {
            let a2 = PI * (j as f64 + 0.5) / g as f64;
            for k in 0..2 * g {
                let a3 = PI * k as f64 / g as f64;
                let v = [
                    Float::cos(a1),
                    Float::sin(a1) * Float::cos(a2),
                    Float::sin(a1) * Float::sin(a2) * Float::cos(a3),
                    Float::sin(a1) * Float::sin(a2) * Float::sin(a3),
                ];
                let r = ratio(v);
                if r > best.0 {
                    best = (r, v);
                }
            }
        }
    }
    let mut step = 0.5 / g as f64;
    let (mut val, mut v) = best;
    while step > 1e-9 {
        let mut improved = false;
        for d in 0..4 {
            for sgn in [-1.0, 1.0] {
                let mut w = v;
                w[d] += sgn * step;
                let r = ratio(w);
                if r > val {
                    val = r;
                    v = w;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    val
}

/// Sup over unit `ξ` by sampling plus golden-section polish at the best sample.
pub fn xi_sup(t: &Tensor3, samples: usize) -> f64 {
    let f = |a: f64| Float::abs(symbol_value(t, [Float::cos(a), Float::sin(a)]));
    let h = PI / samples as f64;
    let vals: Vec<f64> = (0..samples).map(|i| f(i as f64 * h)).collect();
    let (imax, _) =
        vals.iter().enumerate().fold(
            (0, f64::MIN),
            |acc, (i, v)| if *v > acc.1 { (i, *v) } else { acc },
        );
    let (mut lo, mut hi) = ((imax as f64 - 1.0) * h, (imax as f64 + 1.0) * h);
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
    f(0.5 * (lo + hi)).max(vals[imax])
}
