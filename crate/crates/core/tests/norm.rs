mod common;

use ball_interp::{
    barycentric, inscribed_regular, lagrange_basis, norm_lower_bound_mc, one_point_witness,
    projector_norm, projector_norm_centered, theta_lower_bound, Ball, NormCertificate, Simplex,
};
use common::*;

fn check_certificate(cert: &NormCertificate, simplex: &Simplex) {
    let basis = lagrange_basis(simplex).unwrap();
    let ball = &cert.ball;
    let lam0 = barycentric(&basis, ball.center()).unwrap();
    let s: f64 = cert
        .signs
        .entries()
        .iter()
        .zip(&lam0)
        .map(|(&f, l)| f as f64 * l)
        .sum();
    let vnorm = cert.direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!((cert.value - (ball.radius() * vnorm + s.abs())).abs() < 1e-10);
    let r: f64 = cert
        .extremal_point
        .iter()
        .zip(ball.center().iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    assert!((r - ball.radius()).abs() < 1e-10);
    let leb = basis.lebesgue_function(&cert.extremal_point).unwrap();
    assert!((leb - cert.value).abs() < 1e-9, "{leb} vs {}", cert.value);
    assert_eq!(*cert.signs.entries().last().unwrap(), 1);
}

#[test]
fn regular_examples_from_table() {
    let (s, b) = inscribed_regular(2).unwrap();
    let cert = projector_norm(&s, &b).unwrap();
    assert!((cert.value - 5.0 / 3.0).abs() < 1e-12);
    assert_eq!(cert.k, 1);

    let (s, b) = inscribed_regular(10).unwrap();
    let cert = projector_norm(&s, &b).unwrap();
    assert!((cert.value - (3.0 + 4.0 * 70f64.sqrt()) / 11.0).abs() < 1e-12);
    assert_eq!(cert.k, 4);
    check_certificate(&cert, &s);

    let (s, b) = inscribed_regular(4).unwrap();
    let cert = projector_norm_centered(&s, &b).unwrap();
    assert!((cert.value - 11.0 / 5.0).abs() < 1e-12);

    let (s, b) = inscribed_regular(12).unwrap();
    let cert = projector_norm_centered(&s, &b).unwrap();
    assert!((cert.value - (3.0 + 8.0 * 30f64.sqrt()) / 13.0).abs() < 1e-12);
    assert_eq!(cert.k, 5);

    let (s, b) = inscribed_regular(1).unwrap();
    let cert = projector_norm_centered(&s, &b).unwrap();
    assert!((cert.value - 1.0).abs() < 1e-15);
}

#[test]
fn random_3d_against_dense_sampling() {
    let mut rng = rng(10);
    let ball = Ball::unit(3).unwrap();
    for _ in 0..3 {
        let s = random_simplex_in_ball(3, &ball, &mut rng);
        let cert = projector_norm(&s, &ball).unwrap();
        check_certificate(&cert, &s);
        let sampled = sampled_norm(&s, &ball, 1_000_000, 7);
        assert!(sampled <= cert.value + 1e-9);
        assert!(cert.value - sampled < 1e-3, "{} vs {sampled}", cert.value);
    }
}

#[test]
fn sign_symmetry_quotient() {
    let mut rng = rng(11);
    for n in 1..=8 {
        for _ in 0..4 {
            let ball = Ball::new(vec![0.3; n], 1.7).unwrap();
            let s = random_simplex_in_ball(n, &ball, &mut rng);
            let cert = projector_norm(&s, &ball).unwrap();
            let full = brute_force_norm(&s, &ball);
            assert!(
                (cert.value - full).abs() < 1e-10,
                "n = {n}: {} vs {full}",
                cert.value
            );
            check_certificate(&cert, &s);
        }
    }
}

#[test]
fn off_center_and_outside_simplices() {
    let mut rng = rng(12);
    // vertices need not lie in the ball
    for n in 2..=5 {
        let s = random_sphere_simplex(n, &mut rng);
        let s = s
            .map_vertices(|v| v.iter().map(|x| 3.0 * x + 1.0).collect())
            .unwrap();
        let ball = Ball::new(vec![-0.5; n], 0.25).unwrap();
        let cert = projector_norm(&s, &ball).unwrap();
        assert!((cert.value - brute_force_norm(&s, &ball)).abs() < 1e-10);
        check_certificate(&cert, &s);
    }
}

#[test]
fn monte_carlo_bound() {
    let (s, b) = inscribed_regular(3).unwrap();
    let mc = norm_lower_bound_mc(&s, &b, 1_000_000, 42).unwrap();
    assert!(mc <= 2.0 + 1e-9);
    assert!(2.0 - mc < 5e-3, "{mc}");
    assert_eq!(
        mc.to_bits(),
        norm_lower_bound_mc(&s, &b, 1_000_000, 42)
            .unwrap()
            .to_bits()
    );

    let one = norm_lower_bound_mc(&s, &b, 1, 3).unwrap();
    assert!((1.0 - 1e-12..=2.0 + 1e-9).contains(&one));
    assert!(norm_lower_bound_mc(&s, &b, 0, 3).is_err());
}

#[test]
fn monte_carlo_gap_shrinks() {
    let mut rng = rng(13);
    let s = random_sphere_simplex(3, &mut rng);
    let ball = Ball::unit(3).unwrap();
    let exact = projector_norm(&s, &ball).unwrap().value;
    let gaps: Vec<f64> = [100, 10_000, 1_000_000]
        .iter()
        .map(|&m| exact - norm_lower_bound_mc(&s, &ball, m, 5).unwrap())
        .collect();
    assert!(gaps.iter().all(|&g| g >= -1e-9));
    assert!(gaps[2] <= gaps[0]);
    assert!(gaps[2] < 1e-3);
}

#[test]
fn one_point_witnesses() {
    for (n, expect) in [
        (2usize, true),
        (3, true),
        (4, true),
        (5, false),
        (7, false),
        (1, false),
    ] {
        let (s, b) = inscribed_regular(n).unwrap();
        let basis = lagrange_basis(&s).unwrap();
        let cert = projector_norm(&s, &b).unwrap();
        let w = one_point_witness(&cert, &basis);
        assert_eq!(w.is_some(), expect, "n = {n}");
        if let Some(x) = w {
            let lam = barycentric(&basis, &x).unwrap();
            assert_eq!(lam.iter().filter(|&&l| l < -1e-10).count(), 1);
            assert!((basis.lebesgue_function(&x).unwrap() - cert.value).abs() < 1e-9);
        }
    }
}

#[test]
fn rigid_motion_invariance() {
    let mut rng = rng(14);
    for n in 2..=6 {
        let s = random_sphere_simplex(n, &mut rng);
        let ball = Ball::new(vec![0.1; n], 1.2).unwrap();
        let q = random_orthogonal(n, &mut rng);
        let shift: Vec<f64> = (0..n).map(|i| 2.0 - i as f64).collect();
        let moved = s.map_vertices(|v| apply_affine(&q, &shift, v)).unwrap();
        let moved_ball = Ball::new(apply_affine(&q, &shift, ball.center()), 1.2).unwrap();
        let a = projector_norm(&s, &ball).unwrap().value;
        let b = projector_norm(&moved, &moved_ball).unwrap().value;
        assert!((a - b).abs() < 1e-9, "n = {n}");
    }
}

#[test]
fn inscribed_simplices_respect_lower_bound() {
    let mut rng = rng(15);
    for n in 1..=7 {
        for _ in 0..20 {
            let s = random_sphere_simplex(n, &mut rng);
            let ball = Ball::unit(n).unwrap();
            match projector_norm(&s, &ball) {
                Ok(cert) => assert!(cert.value >= theta_lower_bound(n as u64) - 1e-9),
                Err(ball_interp::Error::DegenerateSimplex { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn certificate_json_round_trip() {
    let (s, b) = inscribed_regular(5).unwrap();
    let cert = projector_norm(&s, &b).unwrap();
    let json = serde_json::to_string(&cert).unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in ["value", "signs", "k", "extremal_point"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    let back: NormCertificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cert);
}
