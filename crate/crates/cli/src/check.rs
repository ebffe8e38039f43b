//! The `check` subcommand: a fast self-test of the core identities.

use std::f64::consts::TAU;
use std::io::{self, Write};

use confnat::conf_natural::{radial_cdf_alpha2, radial_cdf_quadrature};
use confnat::quadrature::disc_integral;
use confnat::{hyp2f1_aa1, poisson_circle_integral, ConfNatural, DiscPoint, MoebiusTransform, RngStream};

struct Outcome {
    name: &'static str,
    worst: f64,
    limit: f64,
}

fn hypergeometric_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in [1.5, 2.0, 3.0, 5.0, 10.0] {
        for k in 0..10 {
            let m = k as f64 / 10.0;
            let (s, q) = match (hyp2f1_aa1(alpha, m * m), poisson_circle_integral(m, alpha)) {
                (Ok(s), Ok(q)) => (s, q),
                _ => {
                    return Outcome {
                        name: "hypergeometric identity",
                        worst: f64::INFINITY,
                        limit: 1e-9,
                    }
                }
            };
            worst = worst.max(((s - q) / q).abs());
        }
    }
    Outcome {
        name: "hypergeometric identity",
        worst,
        limit: 1e-9,
    }
}

fn involution() -> Outcome {
    let mut rng = RngStream::new(1);
    let mut point = || DiscPoint::from_polar(0.95 * rng.next_uniform().sqrt(), TAU * rng.next_uniform()).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let g = MoebiusTransform::involution(point());
        for _ in 0..50 {
            let z = point();
            worst = worst.max((g.apply(g.apply(z)).to_complex() - z.to_complex()).norm());
        }
    }
    Outcome {
        name: "involution",
        worst,
        limit: 1e-12,
    }
}

fn normalization() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in [1.5, 2.0, 5.0, 10.0] {
        for (re, im) in [(0.0, 0.0), (0.5, 0.0), (0.3, 0.6)] {
            let law = ConfNatural::new(alpha, DiscPoint::new(re, im).unwrap()).unwrap();
            let total = disc_integral(|z| law.pdf_lebesgue(DiscPoint::saturating(z)), 1e-9).unwrap_or(f64::NAN);
            worst = worst.max((total - 1.0).abs());
        }
    }
    Outcome {
        name: "normalization",
        worst,
        limit: 1e-6,
    }
}

fn alpha_two_forms() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let x = k as f64 / 100.0;
        let want = (1.0 + x) / (1.0 - x).powi(3);
        let got = hyp2f1_aa1(2.0, x).unwrap_or(f64::NAN);
        worst = worst.max(((got - want) / want).abs());
    }
    let mut rng = RngStream::new(2);
    for _ in 0..20 {
        let a = DiscPoint::from_polar(0.9 * rng.next_uniform().sqrt(), TAU * rng.next_uniform()).unwrap();
        let b = rng.next_uniform();
        let quad = radial_cdf_quadrature(2.0, a, b).unwrap_or(f64::NAN);
        worst = worst.max((radial_cdf_alpha2(a, b) - quad).abs());
    }
    Outcome {
        name: "alpha = 2 closed forms",
        worst,
        limit: 1e-8,
    }
}

/// Prints one line per identity and returns whether all passed.
pub fn run_suite(out: &mut dyn Write) -> io::Result<bool> {
    let mut all = true;
    for o in [
        hypergeometric_identity(),
        involution(),
        normalization(),
        alpha_two_forms(),
    ] {
        // NaN fails the comparison
        let ok = o.worst <= o.limit;
        all &= ok;
        let tag = if ok { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} {}: max error {:e} (limit {:e})", o.name, o.worst, o.limit)?;
    }
    Ok(all)
}
