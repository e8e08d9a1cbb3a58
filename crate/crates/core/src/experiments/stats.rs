//! Sample statistics and the normality/goodness-of-fit tests used by the
//! Monte Carlo harnesses. Aggregation is deterministic: integer observables
//! are tallied exactly and float sums use fixed-order pairwise summation.

/// Pairwise summation in index order; independent of chunking used upstream.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Mean, unbiased variance, skewness and excess kurtosis of a sample.
#[derive(Debug, Clone, Copy)]
pub struct Moments {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

pub fn moments(xs: &[f64]) -> Moments {
    let n = xs.len();
    assert!(n >= 2, "need at least two samples");
    let nf = n as f64;
    let mean = pairwise_sum(xs) / nf;
    let d2: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    let d3: Vec<f64> = xs.iter().map(|x| (x - mean).powi(3)).collect();
    let d4: Vec<f64> = xs.iter().map(|x| (x - mean).powi(4)).collect();
    let m2 = pairwise_sum(&d2) / nf;
    let m3 = pairwise_sum(&d3) / nf;
    let m4 = pairwise_sum(&d4) / nf;
    let variance = pairwise_sum(&d2) / (nf - 1.0);
    let (skewness, excess_kurtosis) = if m2 > 0.0 {
        (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
    } else {
        (0.0, 0.0)
    };
    Moments { n, mean, variance, skewness, excess_kurtosis }
}

/// Standard normal CDF via the Abramowitz–Stegun 7.1.26 rational
/// approximation of erf (absolute error below 1.5e-7, plenty for the
/// Kolmogorov–Smirnov distances used here).
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + erf(x / std::f64::consts::SQRT_2))
}

fn erf(x: f64) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let x = x.abs();
    let t = 1.0 / (1.0 + 0.3275911 * x);
    let y = 1.0
        - (((((1.061405429 * t - 1.453152027) * t) + 1.421413741) * t - 0.284496736) * t
            + 0.254829592)
            * t
            * (-x * x).exp();
    sign * y
}

/// Kolmogorov–Smirnov distance of the standardized sample against the
/// standard normal, with ties handled through cumulative counts.
pub fn ks_normal_distance(xs: &[f64]) -> f64 {
    let m = moments(xs);
    let sd = m.variance.sqrt();
    assert!(sd > 0.0, "degenerate sample");
    let mut z: Vec<f64> = xs.iter().map(|x| (x - m.mean) / sd).collect();
    z.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = z.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0usize;
    while i < z.len() {
        let mut j = i;
        while j + 1 < z.len() && z[j + 1] == z[i] {
            j += 1;
        }
        let phi = normal_cdf(z[i]);
        d = d.max((i as f64 / n - phi).abs());
        d = d.max(((j + 1) as f64 / n - phi).abs());
        i = j + 1;
    }
    d
}

/// Asymptotic Kolmogorov p-value Q(λ) = 2 Σ (−1)^{j−1} e^{−2j²λ²} with the
/// Stephens finite-sample correction of λ.
pub fn ks_p_value(distance: f64, n: usize) -> f64 {
    let nf = n as f64;
    let lambda = (nf.sqrt() + 0.12 + 0.11 / nf.sqrt()) * distance;
    if lambda < 1e-8 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let jf = j as f64;
        let term = (-2.0 * jf * jf * lambda * lambda).exp();
        sum += if j % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Upper critical value of the chi-square distribution via the
/// Wilson–Hilferty cube approximation; `z` is the standard normal quantile
/// of the target upper tail.
pub fn chi_square_critical(df: usize, z: f64) -> f64 {
    let k = df as f64;
    let a = 2.0 / (9.0 * k);
    k * (1.0 - a + z * a.sqrt()).powi(3)
}

/// z for an upper tail of 1e-3.
pub const Z_999: f64 = 3.090232306167813;

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;

    #[test]
    fn normal_cdf_spot_values() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-9);
        assert!((normal_cdf(1.0) - 0.841344746).abs() < 1e-6);
        assert!((normal_cdf(-2.0) - 0.022750132).abs() < 1e-6);
    }

    #[test]
    fn moments_of_known_sample() {
        let m = moments(&[1.0, 2.0, 3.0, 4.0]);
        assert!((m.mean - 2.5).abs() < 1e-12);
        assert!((m.variance - 5.0 / 3.0).abs() < 1e-12);
        assert!(m.skewness.abs() < 1e-12);
    }

    #[test]
    fn ks_accepts_normal_rejects_uniform() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let normal: Vec<f64> = (0..4000)
            .map(|_| {
                // Box-Muller
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect();
        let d = ks_normal_distance(&normal);
        assert!(ks_p_value(d, normal.len()) > 1e-3, "d = {d}");

        let uniform: Vec<f64> = (0..4000).map(|_| rng.gen_range(0.0..1.0)).collect();
        let d = ks_normal_distance(&uniform);
        assert!(ks_p_value(d, uniform.len()) < 1e-3, "d = {d}");
    }

    #[test]
    fn chi_square_critical_sane() {
        // chi^2_{0.999}(10) ~ 29.588
        let c = chi_square_critical(10, Z_999);
        assert!((c - 29.588).abs() < 0.5, "got {c}");
    }

    #[test]
    fn pairwise_matches_naive() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-9);
    }
}
