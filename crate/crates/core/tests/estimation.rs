use std::f64::consts::TAU;

use confnat::estimation::{karcher_descent, log_likelihood, log_likelihood_grad};
use confnat::{
    cem_optimize, cem_optimize_from, fit_mle, hyp_distance, hyp_exp, karcher_mean, CemConfig, ConfNatural, DiscPoint,
    KarcherConfig, MoebiusTransform, RngStream, Tangent,
};

fn p(re: f64, im: f64) -> DiscPoint {
    DiscPoint::new(re, im).unwrap()
}

fn random_point(rng: &mut RngStream, max_modulus: f64) -> DiscPoint {
    DiscPoint::from_polar(max_modulus * rng.next_uniform().sqrt(), TAU * rng.next_uniform()).unwrap()
}

fn random_transform(rng: &mut RngStream) -> MoebiusTransform {
    MoebiusTransform::new(random_point(rng, 0.7), TAU * rng.next_uniform()).unwrap()
}

#[test]
fn karcher_mean_of_concentrated_sample_is_near_location() {
    let a = p(0.3, 0.4);
    let samples = ConfNatural::new(10.0, a)
        .unwrap()
        .sample(&mut RngStream::new(12), 100_000);
    let m = karcher_mean(&samples, None, &KarcherConfig::default()).unwrap();
    assert!(hyp_distance(m, a) < 0.05);
}

#[test]
fn karcher_objective_never_increases() {
    let mut rng = RngStream::new(19);
    for case in 0..10 {
        let pts: Vec<DiscPoint> = (0..50).map(|_| random_point(&mut rng, 0.97)).collect();
        let trace = karcher_descent(
            &pts,
            None,
            &KarcherConfig {
                tol: 1e-12,
                ..Default::default()
            },
        )
        .unwrap();
        for w in trace.objective.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-14), "case {case}: {} then {}", w[0], w[1]);
        }
    }
}

#[test]
fn karcher_mean_is_equivariant() {
    let tol = 1e-9;
    let cfg = KarcherConfig {
        tol,
        ..Default::default()
    };
    let mut rng = RngStream::new(23);
    for _ in 0..20 {
        let pts: Vec<DiscPoint> = (0..30).map(|_| random_point(&mut rng, 0.9)).collect();
        let t = random_transform(&mut rng);
        let moved: Vec<DiscPoint> = pts.iter().map(|z| t.apply(*z)).collect();
        let lhs = karcher_mean(&moved, None, &cfg).unwrap();
        let rhs = t.apply(karcher_mean(&pts, None, &cfg).unwrap());
        assert!(hyp_distance(lhs, rhs) < 2.0 * tol);
    }
}

#[test]
fn mle_recovers_both_parameters() {
    let a = p(0.5, 0.0);
    let samples = ConfNatural::new(2.0, a).unwrap().sample(&mut RngStream::new(1), 10_000);
    let fit = fit_mle(&samples, None).unwrap();
    assert!(fit.converged);
    assert!((fit.alpha_hat - 2.0).abs() < 0.15, "alpha_hat = {}", fit.alpha_hat);
    assert!(hyp_distance(fit.a_hat, a) < 0.05);
    assert!(fit.log_likelihood >= log_likelihood(&samples, 2.0, a));
}

#[test]
fn mle_with_fixed_alpha() {
    let samples = ConfNatural::new(2.0, DiscPoint::ORIGIN)
        .unwrap()
        .sample(&mut RngStream::new(2), 10_000);
    let fit = fit_mle(&samples, Some(2.0)).unwrap();
    assert_eq!(fit.alpha_hat, 2.0);
    assert!(hyp_distance(fit.a_hat, DiscPoint::ORIGIN) < 0.05);
}

#[test]
fn likelihood_gradient_matches_finite_differences() {
    let h = 1e-6;
    let mut rng = RngStream::new(29);
    let samples = ConfNatural::new(3.0, p(0.2, -0.3)).unwrap().sample(&mut rng, 200);
    for _ in 0..20 {
        let a = random_point(&mut rng, 0.8);
        let alpha = 1.5 + 5.0 * rng.next_uniform();
        let g = log_likelihood_grad(&samples, alpha, a);
        for dir in [Tangent::new(1.0, 0.0), Tangent::new(0.0, 1.0)] {
            let up = log_likelihood(&samples, alpha, hyp_exp(a, dir.scale(h)));
            let down = log_likelihood(&samples, alpha, hyp_exp(a, dir.scale(-h)));
            let fd = (up - down) / (2.0 * h);
            let exact = g.re() * dir.re() + g.im() * dir.im();
            assert!((fd - exact).abs() <= 1e-5 * g.norm().max(1.0), "{fd} vs {exact}");
        }
    }
}

#[test]
fn alpha_estimate_is_nearly_unbiased() {
    let a = p(-0.2, 0.3);
    let law = ConfNatural::new(4.0, a).unwrap();
    let seeds = 20;
    let mut total = 0.0;
    for mut stream in RngStream::new(37).split(seeds) {
        let samples = law.sample(&mut stream, 100_000);
        total += fit_mle(&samples, None).unwrap().alpha_hat;
    }
    let bias = total / seeds as f64 - 4.0;
    assert!(bias.abs() < 0.05, "bias = {bias}");
}

#[test]
fn cem_finds_distance_minimizer() {
    let target = p(0.4, -0.2);
    let out = cem_optimize(
        |z| hyp_distance(z, target),
        &CemConfig::default(),
        &mut RngStream::new(42),
    )
    .unwrap();
    assert!(hyp_distance(out.best_point, target) < 0.05);
    assert!(hyp_distance(out.trace.last().unwrap().a, target) < 0.05);
    assert_eq!(out.trace.len(), 40);
    for w in out.trace.windows(2) {
        assert!(w[1].best_value <= w[0].best_value);
    }
}

#[test]
fn cem_is_conjugation_equivariant() {
    let target = p(0.4, -0.2);
    let f = |z: DiscPoint| hyp_distance(z, target);
    let cfg = CemConfig::default();
    let mut params = RngStream::new(51);
    for case in 0..5 {
        let g = random_transform(&mut params);
        let g_inv = g.inverse();
        let plain = cem_optimize(f, &cfg, &mut RngStream::new(100 + case)).unwrap();
        let conj = cem_optimize_from(|z| f(g_inv.apply(z)), &cfg, g, &mut RngStream::new(100 + case)).unwrap();
        for (x, y) in plain.trace.iter().zip(&conj.trace) {
            assert!(
                hyp_distance(g.apply(x.a), y.a) < 1e-9,
                "case {case}, iteration {}",
                x.iteration
            );
            assert_eq!(x.alpha, y.alpha);
        }
    }
}

#[test]
fn cem_replays_under_seed() {
    let f = |z: DiscPoint| (z.re() - 0.1).powi(2) + (z.im() + 0.3).powi(2);
    let cfg = CemConfig {
        iterations: 10,
        ..Default::default()
    };
    let x = cem_optimize(f, &cfg, &mut RngStream::new(7)).unwrap();
    let y = cem_optimize(f, &cfg, &mut RngStream::new(7)).unwrap();
    assert_eq!(x.trace, y.trace);
    assert_eq!(x.best_point, y.best_point);
}
