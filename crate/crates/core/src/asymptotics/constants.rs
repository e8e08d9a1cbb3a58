//! Numeric evaluation of the generating-function constants: the
//! Euler–Gompertz constant G, the recursive-family mean 2G−1 and variance
//! constant K₁ (three independent representations), and the binary-family
//! constants C₁, C₂, K₂.
//!
//! Integrands with the logarithmic endpoint singularity at 1 are evaluated
//! after the substitution u = 1 − e⁻ˢ. For the direct K₁ representation this
//! substitution is combined with the exact integration-by-parts identity for
//! A(x), which removes the catastrophic cancellation the raw integrand has
//! near the endpoint.

use super::ode::CheckpointedOde;
use super::quad::{adaptive_split, QuadError, QuadratureResult};
use super::AsymptoticsError;

#[allow(clippy::excessive_precision)]
const SQRT5: f64 = 2.236067977499789696409173668731276235;

/// A computed constant with its accumulated error estimate.
#[derive(Debug, Clone, Copy)]
pub struct ValueWithError {
    pub value: f64,
    pub abs_error: f64,
}

impl From<QuadratureResult> for ValueWithError {
    fn from(q: QuadratureResult) -> Self {
        ValueWithError { value: q.value, abs_error: q.abs_error }
    }
}

/// Recursive-family constants. The three K₁ entries are analytically equal.
#[derive(Debug, Clone, Copy)]
pub struct RecConstants {
    pub g: ValueWithError,
    pub mean_rec: ValueWithError,
    /// Direct representation of the variance integral.
    pub k1_direct: ValueWithError,
    /// 4G(G−1) + 8∫₀¹ log(1−log w)/(1−log w)² dw.
    pub k1_log_form: ValueWithError,
    /// 4(G−1)(G−2) − 4∫₀^∞ log²(1+u) e⁻ᵘ du.
    pub k1_exp_form: ValueWithError,
}

/// Binary-family constants.
#[derive(Debug, Clone, Copy)]
pub struct BinConstants {
    pub c1: ValueWithError,
    pub c2: ValueWithError,
    pub k2: ValueWithError,
    pub mean_bin: ValueWithError,
}

/// Report assembled by [`constants_rec`] / [`constants_bin`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstantsReport {
    pub rec: Option<RecConstants>,
    pub bin: Option<BinConstants>,
}

/// A(x) = ∫₀ˣ du/(1 − log(1−u)); A(1) is the Euler–Gompertz constant.
pub fn a_func(x: f64, tol: f64) -> Result<QuadratureResult, AsymptoticsError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(AsymptoticsError::DomainError(format!("A(x) needs x in [0,1], got {x}")));
    }
    if x == 0.0 {
        return Ok(QuadratureResult::zero());
    }
    // u = 1 - e^-s turns the integrand into e^-s/(1+s)
    let s_max = if x == 1.0 { 60.0 } else { -(-x).ln_1p() };
    let g = |s: f64| (-s).exp() / (1.0 + s);
    let split: Vec<f64> = if s_max > 8.0 { vec![0.0, 4.0, s_max] } else { vec![0.0, s_max] };
    adaptive_split(g, &split, tol).map_err(AsymptoticsError::from)
}

/// Euler–Gompertz constant.
pub fn euler_gompertz(tol: f64) -> Result<QuadratureResult, AsymptoticsError> {
    a_func(1.0, tol)
}

/// V(s) = ∫₀^∞ e⁻ᵗ [ (1+s+t)⁻² − (1+s)⁻² ] dt, the tail-regular part of
/// e^s (A(1−e⁻ˢ) − G). Sign-definite, no cancellation.
fn v_func(s: f64, tol: f64) -> Result<QuadratureResult, QuadError> {
    let a = 1.0 + s;
    adaptive_split(
        |t: f64| {
            let b = a + t;
            // 1/b^2 - 1/a^2 = -t(2a+t)/(a^2 b^2)
            (-t).exp() * (-t * (2.0 * a + t)) / (a * a * b * b)
        },
        &[0.0, 4.0, 16.0, 45.0],
        tol,
    )
}

/// The direct K₁ integrand after u = 1−e⁻ˢ, in the grouped cancellation-free
/// form built on V(s) and B(s) = V(s) − s/(1+s)².
fn k1_direct_integrand(s: f64, two_g_minus_1: f64, inner_tol: f64) -> f64 {
    let v = v_func(s, inner_tol).map(|q| q.value).unwrap_or(f64::NAN);
    let sp1 = 1.0 + s;
    let b = v - s / (sp1 * sp1);
    let es = (-s).exp();
    4.0 * two_g_minus_1 * v
        + 4.0 * es * b * b
        + 8.0 * s * b * es / (sp1 * sp1)
        + 4.0 * es * (2.0 * sp1.ln() - s) / (sp1 * sp1)
}

/// Recursive-family constants to the requested tolerance (per constant).
pub fn constants_rec(tol: f64) -> Result<RecConstants, AsymptoticsError> {
    let quad_tol = (tol * 1e-2).min(1e-11);
    let g = euler_gompertz(quad_tol)?;
    let gv = g.value;
    let mean = ValueWithError { value: 2.0 * gv - 1.0, abs_error: 2.0 * g.abs_error };

    // route (i): grouped direct integrand over [0, 60] plus the analytic
    // V-tail 4(2G-1)\int_S^\infty V ds
    let s_cut = 60.0;
    let inner_tol = 1e-13;
    let main = adaptive_split(
        |s| k1_direct_integrand(s, mean.value, inner_tol),
        &[0.0, 2.0, 10.0, s_cut],
        quad_tol,
    )?;
    let tail_v = adaptive_split(
        |t: f64| (-t).exp() * (-t) / ((1.0 + s_cut + t) * (1.0 + s_cut)),
        &[0.0, 45.0],
        1e-14,
    )?;
    let k1_direct = ValueWithError {
        value: main.value + 4.0 * mean.value * tail_v.value,
        abs_error: main.abs_error + 4.0 * tail_v.abs_error + 1e-11,
    };

    // route (ii): w = e^-r
    let log_int = adaptive_split(
        |r: f64| (-r).exp() * (1.0 + r).ln() / ((1.0 + r) * (1.0 + r)),
        &[0.0, 8.0, 60.0],
        quad_tol,
    )?;
    let k1_log = ValueWithError {
        value: 4.0 * gv * (gv - 1.0) + 8.0 * log_int.value,
        abs_error: 8.0 * g.abs_error + 8.0 * log_int.abs_error,
    };

    // route (iii)
    let exp_int = adaptive_split(
        |u: f64| {
            let l = (1.0 + u).ln();
            l * l * (-u).exp()
        },
        &[0.0, 8.0, 60.0],
        quad_tol,
    )?;
    let k1_exp = ValueWithError {
        value: 4.0 * (gv - 1.0) * (gv - 2.0) - 4.0 * exp_int.value,
        abs_error: 12.0 * g.abs_error + 4.0 * exp_int.abs_error,
    };

    Ok(RecConstants { g: g.into(), mean_rec: mean, k1_direct, k1_log_form: k1_log, k1_exp_form: k1_exp })
}

// ---------------------------------------------------------------------------
// Binary family
// ---------------------------------------------------------------------------

/// The C₁ integrand (8+4√5)v^{2√5} + (84+36√5)v^{√5} − (22+10√5) over
/// (7+3√5 − 2v^{√5})².
pub(crate) fn c1_integrand(v: f64) -> f64 {
    let z = v.powf(SQRT5);
    let num = (8.0 + 4.0 * SQRT5) * z * z + (84.0 + 36.0 * SQRT5) * z - (22.0 + 10.0 * SQRT5);
    let den = 7.0 + 3.0 * SQRT5 - 2.0 * z;
    num / (den * den)
}

/// Coefficients of the geometric-series expansion of the C₁ integrand in
/// z = v^√5: c1_integrand = Σ e_k z^k, |2z/(7+3√5)| ≤ 0.146 on [0,1].
fn c1_series_coeffs(terms: usize) -> Vec<f64> {
    let a = 8.0 + 4.0 * SQRT5;
    let b = 84.0 + 36.0 * SQRT5;
    let c = -(22.0 + 10.0 * SQRT5);
    let d = 7.0 + 3.0 * SQRT5;
    (0..terms)
        .map(|k| {
            let kf = k as f64;
            let mut e = (kf + 1.0) * 2f64.powi(k as i32) * d.powi(-(k as i32) - 2) * c;
            if k >= 1 {
                e += kf * 2f64.powi(k as i32 - 1) * d.powi(-(k as i32) - 1) * b;
            }
            if k >= 2 {
                e += (kf - 1.0) * 2f64.powi(k as i32 - 2) * d.powi(-(k as i32)) * a;
            }
            e
        })
        .collect()
}

type OdeRhs = Box<dyn Fn(f64, &[f64]) -> Vec<f64>>;

/// Closed-form machinery for pointwise G and G₋ of the binary family, in the
/// variable τ = −log(1−x) (w = 1−x = e^(−τ)).
pub struct BinaryOdePath {
    series: Vec<f64>,
    /// C₁ consistent with the series, so p(w) = C₁ − w·r(w) cancels exactly.
    pub c1_series: f64,
    q_path: CheckpointedOde<OdeRhs>,
}

impl Default for BinaryOdePath {
    fn default() -> Self {
        Self::new()
    }
}

impl BinaryOdePath {
    pub fn new() -> Self {
        let series = c1_series_coeffs(40);
        let c1_series: f64 =
            series.iter().enumerate().map(|(k, e)| e / (k as f64 * SQRT5 + 1.0)).sum();
        let s2 = series.clone();
        let rhs: OdeRhs = Box::new(move |tau: f64, y: &[f64]| {
            let w = (-tau).exp();
            let q = y[0];
            let beta = beta_of_w(w);
            let p = c1_series - w * r_of_w(w, &s2);
            vec![-w * (1.0 - beta * beta) + 2.0 * (p - q) - 2.0 * beta * q]
        });
        let q_path = CheckpointedOde::new(rhs, 0.0, vec![0.0], 0.25, 1e-12);
        BinaryOdePath { series, c1_series, q_path }
    }

    /// r(w) = (C₁ − (1−u)²G(u)) / w at w = 1−u; exact series, no cancellation.
    pub fn r(&self, w: f64) -> f64 {
        r_of_w(w, &self.series)
    }

    /// p(w) = (1−u)² G(u).
    pub fn p(&self, w: f64) -> f64 {
        self.c1_series - w * self.r(w)
    }

    /// q(w) = (1−u)² G₋(u), from the checkpointed IVP.
    pub fn q(&self, tau: f64) -> f64 {
        self.q_path.value_at(tau)[0]
    }

    /// G(u) for u in [0, 1).
    pub fn g_of_u(&self, u: f64) -> f64 {
        let w = 1.0 - u;
        self.p(w) / (w * w)
    }

    /// G₋(u) for u in [0, 1).
    pub fn g_minus_of_u(&self, u: f64) -> f64 {
        let w = 1.0 - u;
        self.q(-w.ln()) / (w * w)
    }
}

/// r(w) = Σ_k e_k w^{k√5} / (k√5 + 1). At w = 1 this sums to C₁.
fn r_of_w(w: f64, series: &[f64]) -> f64 {
    let z = w.powf(SQRT5);
    let mut zk = 1.0;
    let mut acc = 0.0;
    for (k, e) in series.iter().enumerate() {
        acc += e * zk / (k as f64 * SQRT5 + 1.0);
        zk *= z;
    }
    acc
}

/// β(w) = w (1 + F₋(x)) = (√5−1)/2 + 2√5 w^√5 / (7+3√5 − 2w^√5).
pub(crate) fn beta_of_w(w: f64) -> f64 {
    let z = w.powf(SQRT5);
    (SQRT5 - 1.0) / 2.0 + 2.0 * SQRT5 * z / (7.0 + 3.0 * SQRT5 - 2.0 * z)
}

/// F₋(x) from its closed form.
pub fn f_minus_bin(x: f64) -> f64 {
    let w = 1.0 - x;
    beta_of_w(w) / w - 1.0
}

/// F₊(x) from its closed form.
pub fn f_plus_bin(x: f64) -> f64 {
    let w = 1.0 - x;
    let z = w.powf(SQRT5);
    (3.0 - SQRT5) / (2.0 * w) - 2.0 * SQRT5 * z / (w * (7.0 + 3.0 * SQRT5 - 2.0 * z))
}

/// Binary-family constants to the requested tolerance.
pub fn constants_bin(tol: f64) -> Result<BinConstants, AsymptoticsError> {
    let quad_tol = (tol * 1e-2).min(1e-11);
    let c1_quad = adaptive_split(c1_integrand, &[0.0, 1e-4, 0.1, 1.0], quad_tol)?;
    let path = BinaryOdePath::new();
    // internal consistency between the quadrature and the series route
    let series_gap = (c1_quad.value - path.c1_series).abs();
    let c1 = ValueWithError {
        value: c1_quad.value,
        abs_error: c1_quad.abs_error + series_gap,
    };

    // C2 integrand in tau-space: w f(u) = w - 4p - 2 r (p + C1) + 8 beta q
    let c1s = path.c1_series;
    let tau_max = 28.0;
    let c2_main = adaptive_split(
        |tau: f64| {
            let w = (-tau).exp();
            let p = path.p(w);
            let r = path.r(w);
            let q = path.q(tau);
            w - 4.0 * p - 2.0 * r * (p + c1s) + 8.0 * beta_of_w(w) * q
        },
        &[0.0, 1.0, 4.0, 12.0, tau_max],
        quad_tol,
    )?;
    // truncation beyond tau_max decays like e^{-(sqrt5-1) tau}
    let trunc = (-(SQRT5 - 1.0) * tau_max).exp();
    let c2 = ValueWithError { value: c2_main.value, abs_error: c2_main.abs_error + trunc + 1e-10 };

    let k2 = ValueWithError {
        value: (4.0 - 2.0 * SQRT5) * c1.value - c1.value * c1.value + c2.value,
        abs_error: (4.0 + 2.0 * SQRT5 + 2.0 * c1.value) * c1.abs_error + c2.abs_error,
    };
    let mean_bin = ValueWithError { value: c1.value, abs_error: c1.abs_error };
    Ok(BinConstants { c1, c2, k2, mean_bin })
}

/// Full report for the requested families.
pub fn constants_report(rec: bool, bin: bool, tol: f64) -> Result<ConstantsReport, AsymptoticsError> {
    Ok(ConstantsReport {
        rec: if rec { Some(constants_rec(tol)?) } else { None },
        bin: if bin { Some(constants_bin(tol)?) } else { None },
    })
}
