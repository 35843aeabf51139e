use ball_interp::optimizer::descend;
use ball_interp::{
    center_regular_in_unit_ball, minimize_norm, projector_norm, regular_norm, Ball, SearchConfig,
};

#[test]
fn recovers_regular_value_in_low_dimensions() {
    for n in [2usize, 4] {
        let r = minimize_norm(&SearchConfig::new(n)).unwrap();
        let target = regular_norm(n as u64).unwrap().norm;
        assert!(
            (r.best_norm - target).abs() < 1e-3,
            "n = {n}: {}",
            r.best_norm
        );
        assert!(r.regularity_defect < 1e-2);
        assert_eq!(r.history.len(), 8);
        for v in r.best_simplex.vertices() {
            assert!((v.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn centered_regular_simplex() {
    let s = center_regular_in_unit_ball(2).unwrap();
    let v = s.vertices();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        let dot: f64 = v[a].iter().zip(v[b].iter()).map(|(x, y)| x * y).sum();
        assert!((dot + 0.5).abs() < 1e-12);
    }
    let s = center_regular_in_unit_ball(3).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            let dot: f64 = s.vertices()[a]
                .iter()
                .zip(s.vertices()[b].iter())
                .map(|(x, y)| x * y)
                .sum();
            let expected = if a == b { 1.0 } else { -1.0 / 3.0 };
            assert!((dot - expected).abs() < 1e-12);
        }
    }
    for n in 1..=12usize {
        let s = center_regular_in_unit_ball(n).unwrap();
        let norm = projector_norm(&s, &Ball::unit(n).unwrap()).unwrap().value;
        assert!(
            (norm - regular_norm(n as u64).unwrap().norm).abs() < 1e-9,
            "n = {n}"
        );
    }
}

#[test]
fn random_restarts_descend() {
    let mut config = SearchConfig::new(3);
    config.max_iterations = 2000;
    for restart in 1..4 {
        let d = descend(&config, restart).unwrap().unwrap();
        assert!(d.accepted.windows(2).all(|w| w[1] < w[0]));
        assert!(d.norm <= d.accepted[0]);
        assert!(d.norm >= 2.0 - 1e-9);
    }
}
