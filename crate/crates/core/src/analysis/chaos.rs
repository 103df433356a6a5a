//! First-zero lag, sign-word entropy and its growth rate for one series.

use super::acf::{autocorrelation, AcfResult};
use super::entropy::{entropy_table, log_returns, sign_returns};
use super::regression::{entropy_slope, RegressionMethod};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ChaosOptions {
    /// Largest autocorrelation lag, years.
    pub max_lag: f64,
    /// Longest word length.
    pub kmax: usize,
    pub method: RegressionMethod,
    /// Return lag; `None` uses the first zero of the autocorrelation.
    pub tau: Option<f64>,
}

impl Default for ChaosOptions {
    fn default() -> Self {
        ChaosOptions {
            max_lag: 100.0,
            kmax: 12,
            method: RegressionMethod::Ols,
            tau: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChaosReport {
    pub acf: AcfResult,
    /// First zero of the autocorrelation, years.
    pub tau_star: f64,
    /// Lag actually used for the returns.
    pub tau: f64,
    /// `log10` price ratios at lag `tau`.
    pub returns: Vec<f64>,
    /// `H_1 ..= H_kmax`, bits.
    pub hk: Vec<f64>,
    pub slope: f64,
    pub corrcoef: f64,
    pub method: RegressionMethod,
}

/// Full diagnostic on a positive series sampled every `dt` years.
pub fn chaos_analysis(series: &[f64], dt: f64, opts: &ChaosOptions) -> Result<ChaosReport> {
    let acf = autocorrelation(series, dt, opts.max_lag)?;
    let tau_star = acf.tau_star.ok_or_else(|| {
        Error::domain(format!(
            "autocorrelation has no zero within {} years",
            opts.max_lag
        ))
    })?;
    let tau = opts.tau.unwrap_or(tau_star);
    let returns = log_returns(series, tau, dt)?;
    let signs = sign_returns(series, tau, dt)?;
    let hk = entropy_table(&signs, opts.kmax)?;
    let (slope, corrcoef) = entropy_slope(&hk, opts.method)?;
    Ok(ChaosReport {
        acf,
        tau_star,
        tau,
        returns,
        hk,
        slope,
        corrcoef,
        method: opts.method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_walk_has_full_entropy_rate() {
        let mut rng = crate::rng::HistoryRng::new(8);
        let mut x = 0.0f64;
        // exp of a random walk with a mean-reverting pull so the acf has a zero
        let y: Vec<f64> = (0..200_000)
            .map(|_| {
                x = 0.995 * x + (rng.unit() - 0.5);
                x.exp()
            })
            .collect();
        let r = chaos_analysis(
            &y,
            1.0,
            &ChaosOptions {
                max_lag: 2000.0,
                tau: Some(1.0),
                ..Default::default()
            },
        )
        .unwrap();
        assert!((r.slope - 1.0).abs() < 0.05, "slope {}", r.slope);
        assert!(r.corrcoef > 0.99);
        assert_eq!(r.hk.len(), 12);
    }

    #[test]
    fn no_zero_is_an_error() {
        let y: Vec<f64> = (0..1000).map(|i| 1.0 + i as f64).collect();
        assert!(chaos_analysis(
            &y,
            1.0,
            &ChaosOptions {
                max_lag: 10.0,
                ..Default::default()
            }
        )
        .is_err());
    }
}
