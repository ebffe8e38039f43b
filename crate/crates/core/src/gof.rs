//! Kolmogorov–Smirnov statistics used to check the samplers.

/// Asymptotic KS critical coefficient `c(p) = √(−ln(p/2) / 2)`.
pub fn ks_coefficient(level: f64) -> f64 {
    (-(0.5 * level).ln() / 2.0).sqrt()
}

/// Critical value of the one-sample statistic for `n` draws at `level`.
pub fn ks_critical_one_sample(n: usize, level: f64) -> f64 {
    ks_coefficient(level) / (n as f64).sqrt()
}

/// Critical value of the two-sample statistic for sizes `n`, `m` at `level`.
pub fn ks_critical_two_sample(n: usize, m: usize, level: f64) -> f64 {
    let (n, m) = (n as f64, m as f64);
    ks_coefficient(level) * ((n + m) / (n * m)).sqrt()
}

/// `sup_x |F_n(x) − F(x)|`.
pub fn ks_one_sample<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// `sup_x |F_n(x) − G_m(x)|` for two empirical distributions.
pub fn ks_two_sample(x: &[f64], y: &[f64]) -> f64 {
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_at_one_percent() {
        assert!((ks_coefficient(0.01) - 1.627_6).abs() < 1e-4);
    }

    #[test]
    fn identical_samples_have_zero_distance() {
        let x = [0.3, 0.1, 0.7, 0.2];
        assert_eq!(ks_two_sample(&x, &x), 0.0);
    }

    #[test]
    fn disjoint_samples_have_unit_distance() {
        assert_eq!(ks_two_sample(&[0.0, 0.1], &[1.0, 2.0, 3.0]), 1.0);
    }

    #[test]
    fn one_sample_on_a_grid() {
        // midpoints of n equal cells: D = 1/(2n)
        let n = 10;
        let x: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        assert!((ks_one_sample(&x, |t| t) - 0.05).abs() < 1e-15);
    }
}
