use dtnlab_core::ball_dtn::boundary_laplacian;
use dtnlab_core::ball_dtn::dtn_ball;
use dtnlab_core::jet::{Jet, Scalar};
use dtnlab_core::potential::RadialPotential;
use dtnlab_core::radial::{
    ball_symbol, conformal_potential, degree_values, dtn_radial, solve_radial_mode, symbol_table,
    DEFAULT_ODE_TOL,
};
use dtnlab_core::spectral::{commutator, max_abs};
use dtnlab_core::Error;
use nalgebra::{Matrix4, Vector4};
use proptest::prelude::*;

const TOL: f64 = DEFAULT_ODE_TOL;

/// `r f'/f` at `r = 1` for the regular solution of `f'' + (n-1)/r f' - k(k+n-2)/r² f = c f`,
/// from the modified Bessel series (spherical for n = 3).
fn bessel_mu(c: f64, n: usize, k: u32) -> f64 {
    let mut term = 1.0;
    let (mut s0, mut s1) = (0.0, 0.0);
    for j in 0..60u32 {
        s0 += term;
        s1 += 2.0 * j as f64 * term;
        let jf = j as f64 + 1.0;
        term *= match n {
            3 => c / (2.0 * jf * (2.0 * (k as f64 + jf) + 1.0)),
            _ => c / (4.0 * jf * (jf + k as f64)),
        };
    }
    k as f64 + s1 / s0
}

/// Two-stage Gauss–Legendre collocation for the linear system `y' = A(r) y`.
fn gauss_rk(a: impl Fn(f64) -> [[f64; 2]; 2], r0: f64, y0: [f64; 2], r1: f64) -> [f64; 2] {
    let s3 = 3f64.sqrt();
    let c = [0.5 - s3 / 6.0, 0.5 + s3 / 6.0];
    let aa = [[0.25, 0.25 - s3 / 6.0], [0.25 + s3 / 6.0, 0.25]];
    let mut r = r0;
    let mut y = y0;
    while r < r1 {
        let h = (0.02 * r).clamp(1e-7, 2e-4).min(r1 - r);
        let m = [a(r + c[0] * h), a(r + c[1] * h)];
        // Stages K_i = A_i (y + h Σ_j a_ij K_j): a 4×4 linear system.
        let mut sys = Matrix4::<f64>::identity();
        let mut rhs = Vector4::<f64>::zeros();
        for i in 0..2 {
            for p in 0..2 {
                rhs[2 * i + p] = m[i][p][0] * y[0] + m[i][p][1] * y[1];
                for j in 0..2 {
                    for q in 0..2 {
                        sys[(2 * i + p, 2 * j + q)] -= h * aa[i][j] * m[i][p][q];
                    }
                }
            }
        }
        let k = sys.lu().solve(&rhs).expect("stage system");
        y[0] += 0.5 * h * (k[0] + k[2]);
        y[1] += 0.5 * h * (k[1] + k[3]);
        r += h;
    }
    y
}

/// μ_k by the collocation integrator applied to `g = f / r^k`.
fn oracle_mu(q: &RadialPotential, n: usize, k: u32) -> f64 {
    let drift = 2.0 * k as f64 + n as f64 - 1.0;
    let r0 = 1e-4;
    let c2 = q.eval(0.0) / (2.0 * (2.0 * k as f64 + n as f64));
    let y0 = [1.0 + c2 * r0 * r0, 2.0 * c2 * r0];
    let y = gauss_rk(|r| [[0.0, 1.0], [q.eval(r), -drift / r]], r0, y0, 1.0);
    k as f64 + y[1] / y[0]
}

#[test]
fn zero_potential_gives_degrees() {
    for n in [2, 3] {
        let mu = degree_values(&RadialPotential::zero(), n, 10, TOL).unwrap();
        for (k, m) in mu.iter().enumerate() {
            assert!((m - k as f64).abs() < 1e-10, "n={n} k={k}: {m}");
        }
        let op = dtn_radial(&RadialPotential::zero(), n, 10, TOL).unwrap();
        assert!(max_abs(&(&op.matrix - &dtn_ball(n, 10).unwrap().matrix)) < 1e-10);
    }
}

#[test]
fn unit_potential_closed_form() {
    let s = solve_radial_mode(&RadialPotential::Const(1.0), 3, 0, TOL).unwrap();
    let exact = 1.0 / 1f64.tanh() - 1.0;
    assert!((s.mu - exact).abs() < 1e-9, "{} vs {exact}", s.mu);
    assert!((s.mu - 0.313035).abs() < 1e-6);
}

#[test]
fn constant_potentials_match_bessel_series() {
    for n in [2, 3] {
        for c in [-3.0, 0.5, 1.0, 4.0, 9.0] {
            for k in 0..=8 {
                let s = solve_radial_mode(&RadialPotential::Const(c), n, k, TOL).unwrap();
                let o = bessel_mu(c, n, k);
                assert!(
                    (s.mu - o).abs() < 1e-8,
                    "n={n} c={c} k={k}: {} vs {o}",
                    s.mu
                );
            }
        }
    }
}

#[test]
fn well_matches_collocation_oracle() {
    let q = RadialPotential::parse("well:-2,2").unwrap();
    let mu = degree_values(&q, 3, 6, TOL).unwrap();
    for (k, m) in mu.iter().enumerate() {
        let o = oracle_mu(&q, 3, k as u32);
        assert!((m - o).abs() < 1e-8, "k={k}: {m} vs {o}");
    }
}

#[test]
fn bump_matches_collocation_oracle() {
    let q = RadialPotential::parse("bump:3,0.7,0.4").unwrap();
    for n in [2, 3] {
        let mu = degree_values(&q, n, 4, TOL).unwrap();
        for (k, m) in mu.iter().enumerate() {
            let o = oracle_mu(&q, n, k as u32);
            assert!((m - o).abs() < 1e-8, "n={n} k={k}: {m} vs {o}");
        }
    }
}

#[test]
fn operators_are_degree_diagonal_and_commute() {
    for spec in ["const:1", "well:-2,2", "bump:2,0.6,0.3"] {
        let q = RadialPotential::parse(spec).unwrap();
        let op = dtn_radial(&q, 3, 4, TOL).unwrap();
        assert_eq!(op.off_block_max(), 0.0);
        assert_eq!(op.block_scalar_deviation(), 0.0);
        let d = boundary_laplacian(3, 4).unwrap();
        assert!(max_abs(&commutator(&op.matrix, &d.matrix)) <= 1e-12);
    }
}

#[test]
fn mu_is_log_derivative_of_stored_solution() {
    let s = solve_radial_mode(&RadialPotential::Const(2.0), 3, 2, TOL).unwrap();
    let (f, df) = (*s.f.last().unwrap(), *s.df.last().unwrap());
    assert!((df / f - s.mu).abs() < 1e-12);
    assert!((s.r.last().unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn dirichlet_eigenvalue_is_rejected() {
    // sin(πr)/(πr) vanishes at r = 1.
    let q = RadialPotential::Const(-std::f64::consts::PI.powi(2));
    let e = solve_radial_mode(&q, 3, 0, TOL).unwrap_err();
    assert!(matches!(e, Error::DirichletEigenvalue { .. }), "{e:?}");
    let e = dtn_radial(&q, 3, 2, TOL).unwrap_err();
    assert!(matches!(e, Error::AtDegree { degree: 0, .. }), "{e:?}");
}

#[test]
fn symbol_table_inverts_ball_identity() {
    for n in [2, 3] {
        for (lam, mu) in symbol_table(&RadialPotential::zero(), n, 8, TOL).unwrap() {
            assert!((ball_symbol(lam, n) - mu).abs() < 1e-10);
        }
    }
    let t = symbol_table(&RadialPotential::Const(1.0), 3, 3, TOL).unwrap();
    assert_eq!(t[2].0, 6.0);
    assert!((t[0].1 - 0.313035).abs() < 1e-6);
}

#[test]
fn compact_support_shift_decays() {
    let q = RadialPotential::parse("bump:5,0.6,0.3").unwrap();
    // Beyond k ≈ 18 the shift sinks below the ODE tolerance.
    let mu = degree_values(&q, 3, 16, TOL).unwrap();
    let shift: Vec<f64> = mu.iter().enumerate().map(|(k, m)| m - k as f64).collect();
    assert!(shift.iter().all(|s| *s > 0.0));
    assert!(shift.windows(2).skip(2).all(|w| w[1] < w[0]), "{shift:?}");
    assert!(shift[16] < 1e-9 * shift[0]);
}

#[test]
fn tolerance_refinement_is_stable() {
    let q = RadialPotential::parse("well:-2,2").unwrap();
    for k in [0, 3, 7] {
        let a = solve_radial_mode(&q, 3, k, 1e-9).unwrap().mu;
        let b = solve_radial_mode(&q, 3, k, 5e-10).unwrap().mu;
        assert!((a - b).abs() < 10.0 * 1e-9, "k={k}");
    }
}

/// μ_k of the conductivity equation `∇·(γ∇u) = 0`, `γ = e^φ` in three dimensions.
fn conductivity_mu(phi: &RadialPotential, k: u32) -> f64 {
    let lg = |r: f64| phi.eval_s(Jet::<2>::variable(r)).c[1];
    let kf = k as f64;
    let y = gauss_rk(
        |r| [[0.0, 1.0], [-kf * lg(r) / r, -(2.0 * kf + 2.0) / r - lg(r)]],
        1e-4,
        [1.0, 0.0],
        1.0,
    );
    kf + y[1] / y[0]
}

#[test]
fn conformal_potential_reproduces_conductivity_map() {
    let phi = RadialPotential::parse("bump:0.5,0.8,0.5").unwrap();
    let q = conformal_potential(&phi, 3, 4001).unwrap();
    let flipped = q.clone().scaled(-1.0);
    for k in 0..=4 {
        let cond = conductivity_mu(&phi, k);
        let mu = solve_radial_mode(&q, 3, k, TOL).unwrap().mu;
        assert!((mu - cond).abs() < 1e-6, "k={k}: {mu} vs {cond}");
        let wrong = solve_radial_mode(&flipped, 3, k, TOL).unwrap().mu;
        assert!(
            (wrong - cond).abs() > 1e-3,
            "k={k}: sign flip should be detectable"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nonnegative_potentials_raise_mu(c in 0.0..5.0f64, a in 0.0..5.0f64, r0 in 0.3..1.0f64) {
        let q = RadialPotential::Sum(vec![
            RadialPotential::Const(c),
            RadialPotential::Bump { a, r0, w: 0.25 },
        ]);
        for n in [2, 3] {
            let mu = degree_values(&q, n, 6, TOL).unwrap();
            for (k, m) in mu.iter().enumerate() {
                prop_assert!(*m >= k as f64 - 1e-8);
            }
        }
    }

    #[test]
    fn scaling_potential_by_zero_recovers_ball(k in 0u32..8) {
        let q = RadialPotential::parse("well:3,1").unwrap().scaled(0.0);
        let mu = solve_radial_mode(&q, 3, k, TOL).unwrap().mu;
        prop_assert!((mu - k as f64).abs() < 1e-10);
    }
}
