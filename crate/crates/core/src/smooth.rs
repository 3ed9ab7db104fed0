//! C^∞ step and bump functions built from `exp(-1/t)`.

use crate::jet::Scalar;

fn h<S: Scalar>(t: S) -> S {
    if t.value() <= 0.0 {
        S::cst(0.0)
    } else {
        (-t.recip()).exp()
    }
}

/// Smooth step: 0 for `t ≤ 0`, 1 for `t ≥ 1`, C^∞ in between.
pub fn step<S: Scalar>(t: S) -> S {
    let tv = t.value();
    if tv <= 0.0 {
        return S::cst(0.0);
    }
    if tv >= 1.0 {
        return S::cst(1.0);
    }
    let a = h(t);
    let b = h(S::cst(1.0) - t);
    a / (a + b)
}

/// Step rising from 0 at `center - width/2` to 1 at `center + width/2`.
pub fn step_on<S: Scalar>(x: S, center: f64, width: f64) -> S {
    step((x - S::cst(center - 0.5 * width)).scale(1.0 / width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    #[test]
    fn step_limits_and_symmetry() {
        assert_eq!(step(-0.3_f64), 0.0);
        assert_eq!(step(1.2_f64), 1.0);
        assert!((step(0.5_f64) - 0.5).abs() < 1e-15);
        for &t in &[0.1, 0.27, 0.4] {
            assert!((step(t) + step(1.0 - t) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn step_derivative_matches_difference_quotient() {
        let t = 0.37;
        let j = step(Jet::<3>::variable(t));
        let e = 1e-6;
        let fd = (step(t + e) - step(t - e)) / (2.0 * e);
        assert!((j.derivative(1) - fd).abs() < 1e-8);
    }
}
