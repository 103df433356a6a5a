//! Box-counting dimension on an origin-anchored grid.

use std::collections::HashSet;

use rayon::prelude::*;

use super::embed::PointCloud;
use super::regression::ols;
use crate::error::{Error, Result};

/// Number of grid cubes `[i eps, (i+1) eps) x ...` holding at least one
/// point.
pub fn box_count(cloud: &PointCloud, eps: f64) -> usize {
    assert!(eps > 0.0, "box size must be positive");
    let keys: Vec<i64> = cloud
        .points()
        .flat_map(|p| p.iter().map(move |&x| (x / eps).floor() as i64))
        .collect();
    let mut seen: HashSet<&[i64]> = HashSet::with_capacity(cloud.len());
    for k in keys.chunks_exact(cloud.dim()) {
        seen.insert(k);
    }
    seen.len()
}

/// Knobs of [`fractal_dimension`].
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionOptions {
    /// Number of log-spaced box sizes.
    pub n_eps: usize,
    /// Smallest box as a fraction of the cloud diameter.
    pub eps_min_frac: f64,
    /// Largest box as a fraction of the cloud diameter.
    pub eps_max_frac: f64,
    /// Counts at or below this are too coarse to fit.
    pub min_count: usize,
    /// Counts at or above this fraction of the points are saturated.
    pub max_count_frac: f64,
    /// Smallest number of sizes a fit may use.
    pub min_fit_points: usize,
    /// Smallest cloud accepted.
    pub min_points: usize,
}

impl Default for DimensionOptions {
    fn default() -> Self {
        DimensionOptions {
            n_eps: 20,
            eps_min_frac: 1e-3,
            eps_max_frac: 0.25,
            min_count: 10,
            max_count_frac: 0.1,
            min_fit_points: 3,
            min_points: 1000,
        }
    }
}

/// Which box sizes entered the fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitRangeRule {
    /// `min_count < count < max_count_frac * n`.
    Guarded,
    /// Too few sizes passed both guards; only the saturation guard applied.
    SaturationOnly,
    /// Too few sizes passed even that; the whole grid is used.
    FullGrid,
}

impl FitRangeRule {
    pub fn as_str(self) -> &'static str {
        match self {
            FitRangeRule::Guarded => "guarded",
            FitRangeRule::SaturationOnly => "saturation_only",
            FitRangeRule::FullGrid => "full_grid",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionFit {
    pub n_points: usize,
    pub diameter: f64,
    pub epsilons: Vec<f64>,
    pub counts: Vec<usize>,
    /// Inclusive index range into `epsilons` used by the fit.
    pub fit_range: (usize, usize),
    pub rule: FitRangeRule,
    /// Minus the slope of `log10 count` against `log10 eps`.
    pub dimension: f64,
    /// Correlation of the fitted points; NaN when the counts are constant.
    pub corrcoef: f64,
}

/// Box-counting dimension over a log-spaced grid of box sizes between
/// `eps_min_frac` and `eps_max_frac` of the bounding-box diagonal.
pub fn fractal_dimension(cloud: &PointCloud, opts: &DimensionOptions) -> Result<DimensionFit> {
    let n = cloud.len();
    if n < opts.min_points {
        return Err(Error::domain(format!(
            "{n} points are too few for a dimension estimate (need {})",
            opts.min_points
        )));
    }
    if cloud.points().flatten().any(|x| !x.is_finite()) {
        return Err(Error::domain("point cloud has non-finite coordinates"));
    }
    let diameter = cloud.diameter();
    if diameter == 0.0 {
        return Err(Error::domain("degenerate point cloud: all points coincide"));
    }
    if opts.n_eps < opts.min_fit_points.max(2)
        || !(0.0 < opts.eps_min_frac && opts.eps_min_frac < opts.eps_max_frac)
    {
        return Err(Error::domain("invalid box-size grid"));
    }

    let lo = (diameter * opts.eps_min_frac).log10();
    let hi = (diameter * opts.eps_max_frac).log10();
    let epsilons: Vec<f64> = (0..opts.n_eps)
        .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (opts.n_eps - 1) as f64))
        .collect();
    let counts: Vec<usize> = epsilons.par_iter().map(|&e| box_count(cloud, e)).collect();

    let saturated = |c: usize| (c as f64) >= opts.max_count_frac * n as f64;
    let span = |pred: &dyn Fn(usize) -> bool| -> Option<(usize, usize)> {
        let first = counts.iter().position(|&c| pred(c))?;
        let last = counts.iter().rposition(|&c| pred(c))?;
        (last + 1 - first >= opts.min_fit_points).then_some((first, last))
    };
    let (fit_range, rule) = if let Some(r) = span(&|c| c > opts.min_count && !saturated(c)) {
        (r, FitRangeRule::Guarded)
    } else if let Some(r) = span(&|c| !saturated(c)) {
        (r, FitRangeRule::SaturationOnly)
    } else {
        ((0, opts.n_eps - 1), FitRangeRule::FullGrid)
    };

    let (a, b) = fit_range;
    let x: Vec<f64> = epsilons[a..=b].iter().map(|e| e.log10()).collect();
    let y: Vec<f64> = counts[a..=b].iter().map(|&c| (c as f64).log10()).collect();
    let line = ols(&x, &y)?;
    Ok(DimensionFit {
        n_points: n,
        diameter,
        epsilons,
        counts,
        fit_range,
        rule,
        dimension: -line.slope,
        corrcoef: line.corrcoef,
    })
}
