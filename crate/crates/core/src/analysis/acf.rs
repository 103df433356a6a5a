//! Sample autocorrelation on a uniform lag grid.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Autocorrelation of a uniformly sampled series.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfResult {
    pub dt: f64,
    /// Lags in time units, `i * dt`.
    pub lags: Vec<f64>,
    pub values: Vec<f64>,
    /// First zero, linearly interpolated between the bracketing lags.
    pub tau_star: Option<f64>,
    /// Correlation at the grid lag nearest to `tau_star`.
    pub value_at_nearest_lag: Option<f64>,
    /// `|value_at_nearest_lag| < ZERO_THRESHOLD`.
    pub threshold_ok: bool,
}

/// How close to zero the correlation at the first zero has to be.
pub const ZERO_THRESHOLD: f64 = 1e-2;

/// Correlation between `Y(t)` and `Y(t + tau)` over their overlap, with
/// per-lag means and variances, at lags `0, dt, ..., max_lag`.
///
/// Lag products come from one FFT cross-correlation of the globally
/// centered series; overlap sums come from prefix sums, so the cost is
/// `O(n log n)` regardless of the number of lags.
pub fn autocorrelation(series: &[f64], dt: f64, max_lag: f64) -> Result<AcfResult> {
    if dt.is_nan() || dt <= 0.0 || max_lag.is_nan() || max_lag < 0.0 {
        return Err(Error::domain(
            "autocorrelation needs dt > 0 and max_lag >= 0",
        ));
    }
    let n = series.len();
    let max_idx = (max_lag / dt).round() as usize;
    if n < 2 * max_idx.max(1) {
        return Err(Error::domain(format!(
            "series of {n} samples too short for lags up to {max_idx} steps"
        )));
    }
    if series.iter().any(|x| !x.is_finite()) {
        return Err(Error::domain("series contains non-finite values"));
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let z: Vec<f64> = series.iter().map(|x| x - mean).collect();
    if z.iter().all(|&v| v == z[0]) {
        return Err(Error::domain("constant series"));
    }

    let mut s1 = Vec::with_capacity(n + 1);
    let mut s2 = Vec::with_capacity(n + 1);
    s1.push(0.0);
    s2.push(0.0);
    for &v in &z {
        s1.push(s1.last().unwrap() + v);
        s2.push(s2.last().unwrap() + v * v);
    }
    let cross = lag_products(&z, max_idx);

    let mut values = Vec::with_capacity(max_idx + 1);
    for (l, &sxy) in cross.iter().enumerate() {
        let m = (n - l) as f64;
        // x = z[0..n-l], y = z[l..n]
        let sx = s1[n - l];
        let sy = s1[n] - s1[l];
        let sxx = s2[n - l];
        let syy = s2[n] - s2[l];
        let cov = sxy - sx * sy / m;
        let vx = (sxx - sx * sx / m).max(0.0);
        let vy = (syy - sy * sy / m).max(0.0);
        let r = if vx > 0.0 && vy > 0.0 {
            (cov / (vx * vy).sqrt()).clamp(-1.0, 1.0)
        } else {
            f64::NAN
        };
        values.push(r);
    }
    values[0] = 1.0;

    let lags: Vec<f64> = (0..=max_idx).map(|i| i as f64 * dt).collect();
    let (tau_star, nearest) = match values.iter().skip(1).position(|&r| r <= 0.0) {
        Some(p) => {
            let i = p + 1;
            let (r0, r1) = (values[i - 1], values[i]);
            let frac = if r0 == r1 { 0.0 } else { r0 / (r0 - r1) };
            let tau = lags[i - 1] + frac * dt;
            let nearest = if frac < 0.5 { values[i - 1] } else { values[i] };
            (Some(tau), Some(nearest))
        }
        None => (None, None),
    };
    Ok(AcfResult {
        dt,
        lags,
        values,
        tau_star,
        value_at_nearest_lag: nearest,
        threshold_ok: nearest.is_some_and(|r| r.abs() < ZERO_THRESHOLD),
    })
}

/// `sum_i z[i] z[i + l]` for `l = 0..=max_lag`.
fn lag_products(z: &[f64], max_lag: usize) -> Vec<f64> {
    let n = z.len();
    let size = (n + max_lag + 1).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = z.iter().map(|&v| Complex::new(v, 0.0)).collect();
    buf.resize(size, Complex::new(0.0, 0.0));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(size).process(&mut buf);
    for c in &mut buf {
        *c = Complex::new(c.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(size).process(&mut buf);
    let scale = 1.0 / size as f64;
    buf[..=max_lag].iter().map(|c| c.re * scale).collect()
}
