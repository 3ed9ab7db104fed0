use std::f64::consts::PI;

use dtnlab_core::ball_dtn::dtn_ball;
use dtnlab_core::ball_potential::BallPotential;
use dtnlab_core::perturbation::{
    commutator_report, default_level, default_radial_points, harmonic_moment,
    perturbative_dtn_adaptive, perturbative_dtn_checked, perturbative_dtn_matrix,
    radial_deficit_sq, radial_projection, rotation_identity_residual,
};
use dtnlab_core::potential::RadialPotential;
use dtnlab_core::quadrature::{sphere_rule, BallRule};
use dtnlab_core::radial::{dtn_radial, DEFAULT_ODE_TOL};
use dtnlab_core::spectral::{max_abs, SpectralOperator};
use dtnlab_core::HarmonicIndex;
use proptest::prelude::*;

fn idx(k: u32, m: i32) -> HarmonicIndex {
    HarmonicIndex::new(3, k, m).unwrap()
}

fn matrix(spec: &str, k_max: u32) -> SpectralOperator {
    let q = BallPotential::parse(spec).unwrap();
    let checked = perturbative_dtn_adaptive(&q, 3, k_max, default_level(&q, k_max)).unwrap();
    assert!(checked.converged(), "{spec}: {}", checked.refinement_shift);
    checked.op
}

/// Smooth step from `exp(-1/t)`, written out independently of the library.
fn step_oracle(t: f64) -> f64 {
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

/// Composite Simpson on [0, 1].
fn simpson(f: impl Fn(f64) -> f64, m: usize) -> f64 {
    let h = 1.0 / m as f64;
    let mut s = f(0.0) + f(1.0);
    for i in 1..m {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn closed_form_entries() {
    let m = matrix("const:1", 2);
    assert!((m.matrix[(0, 0)] - 1.0 / 3.0).abs() < 1e-14);
    let m = matrix("monomial:0,0,1", 2);
    let y10 = idx(1, 0).position();
    let target = 1.0 / (5.0 * 3f64.sqrt());
    assert!((m.matrix[(y10, 0)] - target).abs() < 1e-14);
    assert!((m.matrix[(0, y10)] - target).abs() < 1e-14);
    assert!(m.asymmetry() < 1e-14);
}

#[test]
fn radial_potentials_have_no_cross_degree_entries() {
    for spec in [
        "const:2",
        "well:1,1",
        "well:-0.5,3",
        "bump:0.6,0.3",
        "radial:bump:2,0.8,0.5",
    ] {
        let m = matrix(spec, 5);
        assert!(m.off_block_max() < 1e-10, "{spec}: {}", m.off_block_max());
        assert!(m.asymmetry() < 1e-10);
    }
}

#[test]
fn commutator_examples() {
    let m = matrix("monomial:0,0,1", 1);
    let c = commutator_report(&m);
    assert!((c.max_entry - 2.0 / (5.0 * 3f64.sqrt())).abs() < 1e-14);
    // C vanishes on diagonal degree blocks.
    let lam = m.eigenvalues();
    for a in 0..m.dim() {
        for b in 0..m.dim() {
            if lam[a] == lam[b] {
                assert_eq!(c.c[(b, a)], 0.0);
            }
        }
    }

    let base = commutator_report(&matrix("monomial:1,0,1 x bump:0.7,0.4", 4));
    for t in [-3.0f64, 0.25, 7.0] {
        let s = commutator_report(&matrix(
            &format!("sum:[monomial:1,0,1 x bump:0.7,0.4 x const:{t}]"),
            4,
        ));
        assert!(
            (s.h1_l2_norm - t.abs() * base.h1_l2_norm).abs() < 1e-12 * base.h1_l2_norm.max(1.0)
        );
    }

    let diag = m.with_matrix(nalgebra::DMatrix::from_diagonal(&m.matrix.diagonal()));
    let d = commutator_report(&diag);
    assert_eq!(d.h1_l2_norm, 0.0);
    assert_eq!(d.max_entry, 0.0);
}

#[test]
fn bump_entry_matches_radial_oracle() {
    let (r0, w) = (0.7, 0.4);
    let m = matrix("monomial:0,0,1 x bump:0.7,0.4", 6);
    let radial = simpson(|r| r.powi(4) * step_oracle((r0 - r) / w), 20_000);
    let oracle = radial / 3f64.sqrt();
    let entry = m.matrix[(idx(1, 0).position(), 0)];
    assert!((entry - oracle).abs() < 1e-6, "{entry} vs {oracle}");
    let c = commutator_report(&m);
    assert!((c.c[(idx(1, 0).position(), 0)] + 2.0 * oracle).abs() < 1e-6);
}

#[test]
fn linear_equivalence_both_directions() {
    for spec in [
        "const:1",
        "well:1,1",
        "well:2,2",
        "bump:0.6,0.3",
        "radial:bump:-1,0.9,0.2",
    ] {
        let c = commutator_report(&matrix(spec, 6));
        assert!(c.h1_l2_norm <= 1e-8, "{spec}: {}", c.h1_l2_norm);
    }
    let rule = BallRule::new(3, 40).unwrap();
    for spec in [
        "monomial:0,0,1",
        "monomial:0,0,1 x bump:0.7,0.4",
        "monomial:2,0,0",
    ] {
        let q = BallPotential::parse(spec).unwrap();
        let c = commutator_report(&matrix(spec, 6));
        assert!(radial_deficit_sq(&q, &rule) > 1e-3);
        assert!(c.h1_l2_norm > 1e-3, "{spec}: {}", c.h1_l2_norm);
    }
}

#[test]
fn radial_projection_properties() {
    let sphere = sphere_rule(3, 12).unwrap();
    let q = BallPotential::parse("well:1,2").unwrap();
    let p = radial_projection(&q, &sphere, 201).unwrap();
    for r in [0.0, 0.33, 0.71, 1.0] {
        assert!((p.eval(r) - (1.0 - r * r).powi(2)).abs() < 1e-6);
    }
    let odd = radial_projection(
        &BallPotential::parse("monomial:0,0,1").unwrap(),
        &sphere,
        21,
    )
    .unwrap();
    for r in [0.1, 0.5, 0.9] {
        assert!(odd.eval(r).abs() < 1e-14);
    }
    let generic =
        BallPotential::parse("sum:[monomial:2,1,0;monomial:0,0,2 x bump:0.8,0.5;const:0.3]")
            .unwrap();
    let p1 = radial_projection(&generic, &sphere, 65).unwrap();
    let p2 = radial_projection(&BallPotential::Radial(p1.clone()), &sphere, 65).unwrap();
    for i in 0..=64 {
        let r = i as f64 / 64.0;
        assert!((p1.eval(r) - p2.eval(r)).abs() < 1e-12);
    }
}

#[test]
fn rotation_identity() {
    let rule = BallRule::new(3, 4).unwrap();
    let radial = BallPotential::parse("well:1,1").unwrap();
    let r = rotation_identity_residual(&radial, &rule, 50, 1).unwrap();
    assert!(r.target.abs() < 1e-14 && r.mean.abs() < 1e-14);

    let x3 = BallPotential::parse("monomial:0,0,1").unwrap();
    let target = 8.0 * PI / 15.0;
    let mut ratio = 0.0;
    for seed in 0..10 {
        let a = rotation_identity_residual(&x3, &rule, 400, seed).unwrap();
        let b = rotation_identity_residual(&x3, &rule, 800, seed + 100).unwrap();
        assert!((a.target - target).abs() < 1e-12);
        assert!(a.residual.abs() < 5.0 * a.std_err, "seed {seed}: {a:?}");
        ratio += a.std_err / b.std_err / 10.0;
    }
    assert!((ratio - 2f64.sqrt()).abs() < 0.15, "{ratio}");
    assert!(rotation_identity_residual(&x3, &rule, 0, 0).is_err());
}

#[test]
fn moment_lemma() {
    let q = BallPotential::parse("well:1,1").unwrap();
    let rule = BallRule::new(3, 10).unwrap();
    for u in dtnlab_core::harmonics::basis(3, 6).unwrap() {
        for v in dtnlab_core::harmonics::basis(3, 6).unwrap() {
            if u.k != v.k {
                assert!(harmonic_moment(&q, u, v, &rule).unwrap().abs() < 1e-10);
            }
        }
    }
    let same = harmonic_moment(&q, idx(2, 1), idx(2, 1), &rule).unwrap();
    // ∫ r⁴ (1 - r²) r² dr
    assert!((same - (1.0 / 7.0 - 1.0 / 9.0)).abs() < 1e-12);

    let tilted = BallPotential::parse("monomial:0,0,1 x well:1,1").unwrap();
    let v = harmonic_moment(&tilted, idx(0, 0), idx(1, 0), &rule).unwrap();
    let oracle = simpson(|r| r.powi(4) * (1.0 - r * r), 2000) / 3f64.sqrt();
    assert!((v - oracle).abs() < 1e-8);
    assert!((oracle - 2.0 / (35.0 * 3f64.sqrt())).abs() < 1e-10);
}

#[test]
fn refinement_check_flags_coarse_rules() {
    let q = BallPotential::parse("monomial:0,0,1 x bump:0.7,0.4").unwrap();
    let coarse = perturbative_dtn_checked(&q, 3, 3, 3, 6).unwrap();
    assert!(!coarse.converged());
    let fine = perturbative_dtn_checked(&q, 3, 3, 4, 160).unwrap();
    assert!(fine.converged(), "{}", fine.refinement_shift);
    // Angular refinement alone changes nothing: the angular part is exact.
    let more = perturbative_dtn_checked(&q, 3, 3, 12, 160).unwrap();
    assert!(max_abs(&(&more.op.matrix - &fine.op.matrix)) < 1e-13);
    let poly = BallPotential::parse("monomial:1,1,1").unwrap();
    let level = default_level(&poly, 3);
    let exact =
        perturbative_dtn_checked(&poly, 3, 3, level, default_radial_points(&poly, level)).unwrap();
    assert!(exact.refinement_shift < 1e-13);
}

#[test]
fn linearization_matches_radial_solver() {
    let well = RadialPotential::parse("well:1,1").unwrap();
    let m = matrix("well:1,1", 6);
    let ball = dtn_ball(3, 6).unwrap();
    let mut errs = Vec::new();
    for t in [1e-3, 5e-4] {
        let lq = dtn_radial(&well.clone().scaled(t), 3, 6, DEFAULT_ODE_TOL).unwrap();
        let d = (&lq.matrix - &ball.matrix) / t - &m.matrix;
        errs.push(max_abs(&d));
    }
    assert!(errs[0] <= 1e-4 && errs[1] <= 2.5e-5, "{errs:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn matrix_is_linear_and_symmetric(a in -3.0..3.0f64, b in -3.0..3.0f64, e in 0u32..3) {
        let p = format!("monomial:{e},1,0");
        let q = "monomial:0,0,2 x bump:0.8,0.4";
        let mp = matrix(&p, 3);
        let mq = matrix(q, 3);
        let sum = matrix(&format!("sum:[{p} x const:{a};{q} x const:{b}]"), 3);
        let lin = &mp.matrix * a + &mq.matrix * b;
        prop_assert!(max_abs(&(&sum.matrix - &lin)) < 1e-12);
        prop_assert!(sum.asymmetry() < 1e-12);
    }

    #[test]
    fn radial_bumps_commute(a in -5.0..5.0f64, r0 in 0.2..1.0f64, w in 0.05..0.5f64) {
        let spec = format!("radial:bump:{a},{r0},{w}");
        let c = commutator_report(&matrix(&spec, 4));
        prop_assert!(c.h1_l2_norm <= 1e-8);
    }
}
