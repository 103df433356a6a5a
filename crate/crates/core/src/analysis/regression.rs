//! Straight-line fits.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RegressionMethod {
    /// Ordinary least squares.
    #[default]
    Ols,
    /// Median of pairwise slopes.
    TheilSen,
}

impl RegressionMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RegressionMethod::Ols => "ols",
            RegressionMethod::TheilSen => "theil_sen",
        }
    }
}

impl std::str::FromStr for RegressionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ols" => Ok(RegressionMethod::Ols),
            "theil_sen" | "theil-sen" => Ok(RegressionMethod::TheilSen),
            other => Err(Error::invalid(
                "regression",
                format!("unknown method `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Pearson correlation of the data; NaN when either coordinate is
    /// constant.
    pub corrcoef: f64,
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx > 0.0 && syy > 0.0 {
        (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
    } else {
        f64::NAN
    }
}

fn check(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::domain("regression inputs differ in length"));
    }
    if x.len() < 3 {
        return Err(Error::domain(format!(
            "regression needs at least 3 points, got {}",
            x.len()
        )));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::domain("regression inputs must be finite"));
    }
    Ok(())
}

pub fn ols(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    check(x, y)?;
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("regression abscissae are all equal"));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        corrcoef: pearson(x, y),
    })
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub fn theil_sen(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    check(x, y)?;
    let mut slopes = Vec::with_capacity(x.len() * (x.len() - 1) / 2);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[j] != x[i] {
                slopes.push((y[j] - y[i]) / (x[j] - x[i]));
            }
        }
    }
    if slopes.is_empty() {
        return Err(Error::domain("regression abscissae are all equal"));
    }
    let slope = median(&mut slopes);
    let mut offsets: Vec<f64> = x.iter().zip(y).map(|(a, b)| b - slope * a).collect();
    Ok(LinearFit {
        slope,
        intercept: median(&mut offsets),
        corrcoef: pearson(x, y),
    })
}

pub fn fit(x: &[f64], y: &[f64], method: RegressionMethod) -> Result<LinearFit> {
    match method {
        RegressionMethod::Ols => ols(x, y),
        RegressionMethod::TheilSen => theil_sen(x, y),
    }
}

/// Growth rate of `H_K` against `K = 1, 2, ...`: `(slope, corrcoef)`.
pub fn entropy_slope(hk: &[f64], method: RegressionMethod) -> Result<(f64, f64)> {
    let k: Vec<f64> = (1..=hk.len()).map(|i| i as f64).collect();
    let f = fit(&k, hk, method)?;
    Ok((f.slope, f.corrcoef))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let hk: Vec<f64> = (1..=12).map(f64::from).collect();
        for m in [RegressionMethod::Ols, RegressionMethod::TheilSen] {
            let (s, r) = entropy_slope(&hk, m).unwrap();
            assert!((s - 1.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_line() {
        let (s, r) = entropy_slope(&[0.5; 12], RegressionMethod::Ols).unwrap();
        assert_eq!(s, 0.0);
        assert!(r.is_nan());
    }

    #[test]
    fn too_few_points() {
        assert!(entropy_slope(&[0.1, 0.2], RegressionMethod::Ols).is_err());
        assert!(entropy_slope(&[0.1, 0.2], RegressionMethod::TheilSen).is_err());
    }

    #[test]
    fn ols_known_values() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [2.0, 2.0, 6.0, 6.0];
        let f = ols(&x, &y).unwrap();
        assert!((f.slope - 1.6).abs() < 1e-12);
        assert!((f.intercept - 1.6).abs() < 1e-12);
    }

    #[test]
    fn theil_sen_resists_outlier() {
        let x: Vec<f64> = (0..11).map(f64::from).collect();
        let mut y: Vec<f64> = x.iter().map(|v| 0.5 * v + 2.0).collect();
        y[10] = 100.0;
        let f = theil_sen(&x, &y).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12);
        assert!((f.intercept - 2.0).abs() < 1e-12);
        assert!(ols(&x, &y).unwrap().slope > 3.0);
    }
}
