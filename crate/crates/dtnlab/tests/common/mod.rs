#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub elapsed: Duration,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("bad JSON ({e}); stderr: {}", self.stderr))
    }

    pub fn data(&self) -> Value {
        self.json()["data"].clone()
    }
}

fn finish(out: Output, elapsed: Duration) -> Run {
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        elapsed,
    }
}

pub fn dtnlab(args: &[&str]) -> Run {
    dtnlab_in(args, None)
}

/// Run the binary with `DTNLAB_OUT_DIR` cleared, or set to `out`.
pub fn dtnlab_in(args: &[&str], out: Option<&Path>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dtnlab"));
    cmd.args(args).env_remove("DTNLAB_OUT_DIR");
    if let Some(dir) = out {
        cmd.env("DTNLAB_OUT_DIR", dir);
    }
    let t = Instant::now();
    let out = cmd.output().expect("spawn dtnlab");
    finish(out, t.elapsed())
}

pub fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

pub fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(f).collect()
}

/// Smooth step built from `exp(-1/t)`.
pub fn step(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / t).exp();
    let b = (-1.0 / (1.0 - t)).exp();
    a / (a + b)
}

/// Composite Simpson on `[a, b]` with `m` (even) intervals.
pub fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    let mut s = g(a) + g(b);
    for i in 1..m {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(a + i as f64 * h);
    }
    s * h / 3.0
}

/// `∫₀¹ r^p step((r0 - r)/w) dr`, split at the kinks of the bump.
pub fn bump_moment(p: i32, r0: f64, w: f64) -> f64 {
    let lo = (r0 - w).max(0.0);
    let flat = lo.powi(p + 1) / (p + 1) as f64;
    flat + simpson(|r| r.powi(p) * step((r0 - r) / w), lo, r0, 20_000)
}

/// `‖C (1+Δ)^{-1/2}‖` for `q = x₃ · bump(r0, w)` on the 3-ball, built from
/// `∫_{S²} cos θ Y_{k,m} Y_{k+1,m} = √(((k+1)² - m²) / ((2k+1)(2k+3)))` and
/// one-dimensional radial integrals. Also returns the `(1,0)-(0,0)` entry.
pub fn x3_bump_commutator(k_max: usize, r0: f64, w: f64) -> (f64, f64) {
    let index = |k: usize, m: i64| k * k + (m + k as i64) as usize;
    let dim = (k_max + 1) * (k_max + 1);
    let lam = |k: usize| (k * (k + 1)) as f64;
    let mut c = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for k in 0..k_max {
        let radial = bump_moment(2 * k as i32 + 4, r0, w);
        for m in -(k as i64)..=k as i64 {
            let (kf, mf) = (k as f64, m as f64);
            let ang =
                (((kf + 1.0).powi(2) - mf * mf) / ((2.0 * kf + 1.0) * (2.0 * kf + 3.0))).sqrt();
            let entry = ang * radial;
            let (lo, hi) = (index(k, m), index(k + 1, m));
            // C[β][α] = (λ_α - λ_β) M[β][α]
            c[(hi, lo)] = (lam(k) - lam(k + 1)) * entry;
            c[(lo, hi)] = (lam(k + 1) - lam(k)) * entry;
        }
    }
    let entry = c[(index(1, 0), index(0, 0))];
    let kk: Vec<usize> = (0..=k_max)
        .flat_map(|k| std::iter::repeat_n(k, 2 * k + 1))
        .collect();
    let scaled = nalgebra::DMatrix::from_fn(dim, dim, |b, a| c[(b, a)] / (1.0 + lam(kk[a])).sqrt());
    let norm = scaled.singular_values().max();
    (norm, entry)
}
