//! Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.

use alloc::format;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Tolerance {
    pub fn new(tol: f64) -> Self {
        Tolerance {
            rtol: tol,
            atol: tol,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory<const D: usize> {
    pub t: Vec<f64>,
    pub y: Vec<[f64; D]>,
    pub rejected: usize,
}

impl<const D: usize> Trajectory<D> {
    pub fn last(&self) -> [f64; D] {
        self.y[self.y.len() - 1]
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order weights are the last row of A; these are fifth minus fourth order.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate `y' = f(t, y)` from `t0` to `t1 > t0`, recording every accepted step.
pub fn dopri5<const D: usize>(
    mut f: impl FnMut(f64, &[f64; D]) -> [f64; D],
    t0: f64,
    y0: [f64; D],
    t1: f64,
    tol: Tolerance,
) -> Result<Trajectory<D>> {
    let span = t1 - t0;
    if span <= 0.0 {
        return Err(Error::invalid("integration interval must be increasing"));
    }
    let mut t = t0;
    let mut y = y0;
    let mut h = span * 1e-3;
    let mut k = [[0.0; D]; 7];
    k[0] = f(t, &y);
    let mut traj = Trajectory {
        t: Vec::new(),
        y: Vec::new(),
        rejected: 0,
    };
    traj.t.push(t);
    traj.y.push(y);
    let mut steps = 0usize;
    while t < t1 {
        if t + h > t1 {
            h = t1 - t;
        }
        let mut stage = [0.0; D];
        for s in 1..7 {
            for d in 0..D {
                let mut acc = y[d];
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += h * A[s][j] * kj[d];
                }
                stage[d] = acc;
            }
            k[s] = f(t + C[s] * h, &stage);
        }
        // Stage 7 was evaluated at the fifth-order solution (FSAL).
        let y_new = stage;
        let mut err: f64 = 0.0;
        for d in 0..D {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[d];
            }
            let sc = tol.atol + tol.rtol * Float::max(Float::abs(y[d]), Float::abs(y_new[d]));
            err = Float::max(err, Float::abs(h * e) / sc);
        }
        if !err.is_finite() {
            return Err(Error::Integration(format!(
                "non-finite error estimate at t={t}"
            )));
        }
        if err <= 1.0 {
            t += h;
            y = y_new;
            k[0] = k[6];
            traj.t.push(t);
            traj.y.push(y);
        } else {
            traj.rejected += 1;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            0.9 * Float::powf(err, -0.2)
        };
        h *= factor.clamp(0.2, 5.0);
        steps += 1;
        if steps > 1_000_000 || h < 1e-14 * span {
            return Err(Error::Integration(format!("step size collapsed at t={t}")));
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        let traj = dopri5(
            |_, y| [y[1], -y[0]],
            0.0,
            [1.0, 0.0],
            2.0 * core::f64::consts::PI,
            Tolerance::new(1e-12),
        )
        .unwrap();
        let y = traj.last();
        assert!((y[0] - 1.0).abs() < 1e-10);
        assert!(y[1].abs() < 1e-10);
    }

    #[test]
    fn exponential_growth() {
        let traj = dopri5(|_, y| [y[0]], 0.0, [1.0], 1.0, Tolerance::new(1e-12)).unwrap();
        assert!((traj.last()[0] - core::f64::consts::E).abs() < 1e-11);
        assert_eq!(*traj.t.last().unwrap(), 1.0);
    }
}
