//! One-parameter bifurcation sweeps.
//!
//! Every grid value starts from the same seeded initial histories, runs a
//! fixed number of years and keeps yearly `N_r` and `P` over a late window.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{is_parameter_key, Parameters};
use crate::sim::{RecordSpec, SimState, Simulator, Var, VarSet};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Parameter key, e.g. `gamma` or `m0`.
    pub param: String,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    /// First recorded year.
    pub from_year: u64,
    /// Last recorded year; also the run length.
    pub to_year: u64,
    pub seed: u64,
    /// Thread count; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl SweepSpec {
    pub fn new(param: &str, lo: f64, hi: f64) -> Self {
        SweepSpec {
            param: param.to_string(),
            lo,
            hi,
            step: 0.01,
            from_year: 1500,
            to_year: 2000,
            seed: 1,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !is_parameter_key(&self.param)
            || matches!(self.param.as_str(), "birth_law" | "market_force" | "q")
        {
            return Err(Error::invalid(
                "param",
                format!("`{}` is not a sweepable scalar", self.param),
            ));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return Err(Error::invalid("lo/hi", "need finite lo <= hi"));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::invalid("step", "must be positive"));
        }
        if self.from_year == 0 || self.from_year > self.to_year {
            return Err(Error::invalid("window", "need 1 <= from_year <= to_year"));
        }
        if self.workers == Some(0) {
            return Err(Error::invalid("workers", "must be at least 1"));
        }
        Ok(())
    }

    /// Grid values `lo + i * step` up to `hi`, computed on integers scaled
    /// by the smallest power of ten that makes `lo`, `hi` and `step` whole
    /// (up to 9 decimals), so no error accumulates along the grid.
    pub fn grid(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let decimals = (0..=9)
            .find(|&d| {
                [self.lo, self.hi, self.step]
                    .iter()
                    .all(|&x| is_whole(x * 10f64.powi(d)))
            })
            .unwrap_or(9);
        let scale = 10f64.powi(decimals);
        let lo = (self.lo * scale).round() as i64;
        let hi = (self.hi * scale).round() as i64;
        let step = (self.step * scale).round().max(1.0) as i64;
        let n = (hi - lo) / step + 1;
        Ok((0..n).map(|i| (lo + i * step) as f64 / scale).collect())
    }

    pub fn window_len(&self) -> usize {
        (self.to_year - self.from_year + 1) as usize
    }
}

fn is_whole(x: f64) -> bool {
    (x - x.round()).abs() <= 1e-9 * x.abs().max(1.0)
}

/// Recorded window at one grid value.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepColumn {
    pub value: f64,
    /// FNV hash of the initial histories and price.
    pub initial_fingerprint: u64,
    /// `(N_r, P)` for years `from_year..=to_year`, or the fault message.
    pub outcome: std::result::Result<(Vec<f64>, Vec<f64>), String>,
}

impl SweepColumn {
    pub fn is_fault(&self) -> bool {
        self.outcome.is_err()
    }

    pub fn n_r(&self) -> Option<&[f64]> {
        self.outcome.as_ref().ok().map(|(n, _)| n.as_slice())
    }

    pub fn price(&self) -> Option<&[f64]> {
        self.outcome.as_ref().ok().map(|(_, p)| p.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationData {
    pub spec: SweepSpec,
    pub columns: Vec<SweepColumn>,
}

impl BifurcationData {
    pub fn faults(&self) -> usize {
        self.columns.iter().filter(|c| c.is_fault()).count()
    }

    /// Values of `var` across all non-faulted columns.
    fn all(&self, var: Var) -> impl Iterator<Item = f64> + '_ {
        self.columns
            .iter()
            .filter_map(move |c| match var {
                Var::P => c.price(),
                _ => c.n_r(),
            })
            .flatten()
            .copied()
    }

    /// `max - min` of `var` (`Nr` or `P`) over the whole diagram.
    pub fn range(&self, var: Var) -> f64 {
        let (lo, hi) = self
            .all(var)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
                (a.min(x), b.max(x))
            });
        if hi >= lo {
            hi - lo
        } else {
            0.0
        }
    }

    /// Cluster count of `var` in every column at radius
    /// `radius_frac * range(var)`; `None` for faulted columns.
    pub fn cluster_counts(&self, var: Var, radius_frac: f64) -> Vec<Option<usize>> {
        let radius = radius_frac * self.range(var);
        self.columns
            .iter()
            .map(|c| {
                let v = if var == Var::P { c.price() } else { c.n_r() };
                v.map(|v| cluster_count(v, radius))
            })
            .collect()
    }

    /// Share of non-faulted columns whose `var` collapses onto at most
    /// `max_clusters` clusters.
    pub fn periodic_fraction(&self, var: Var, radius_frac: f64, max_clusters: usize) -> f64 {
        let counts: Vec<usize> = self
            .cluster_counts(var, radius_frac)
            .into_iter()
            .flatten()
            .collect();
        if counts.is_empty() {
            return 0.0;
        }
        counts.iter().filter(|&&c| c <= max_clusters).count() as f64 / counts.len() as f64
    }

    /// Grid values whose `var` column spreads over more than
    /// `max_clusters` clusters while the previous grid value collapsed onto
    /// at most `max_clusters`: the band side of every cluster-to-band step.
    pub fn cluster_to_band_transitions(
        &self,
        var: Var,
        radius_frac: f64,
        max_clusters: usize,
    ) -> Vec<f64> {
        let counts = self.cluster_counts(var, radius_frac);
        counts
            .windows(2)
            .zip(self.columns.iter().skip(1))
            .filter_map(|(w, col)| match (w[0], w[1]) {
                (Some(a), Some(b)) if a <= max_clusters && b > max_clusters => Some(col.value),
                _ => None,
            })
            .collect()
    }
}

/// Single-linkage clusters of scalar values: sorted neighbours closer than
/// `radius` share a cluster.
pub fn cluster_count(values: &[f64], radius: f64) -> usize {
    if values.is_empty() {
        return 0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    1 + v.windows(2).filter(|w| w[1] - w[0] > radius).count()
}

fn run_column(base: &Parameters, spec: &SweepSpec, value: f64) -> SweepColumn {
    let mut params = base.clone();
    let setup = params
        .set_scalar(&spec.param, value)
        .and_then(|_| params.validate())
        .and_then(|_| SimState::new(&params, spec.seed));
    let state = match setup {
        Ok(s) => s,
        Err(e) => {
            return SweepColumn {
                value,
                initial_fingerprint: 0,
                outcome: Err(e.to_string()),
            }
        }
    };
    let initial_fingerprint = state.fingerprint();
    let mut sim = Simulator::from_state(params, state);
    let rec = RecordSpec::yearly_only(VarSet::of(&[Var::Nr, Var::P]), spec.from_year);
    let outcome = sim
        .extend(spec.to_year, &rec)
        .map(|mut t| {
            (
                t.yearly.take(Var::Nr).unwrap_or_default(),
                t.yearly.take(Var::P).unwrap_or_default(),
            )
        })
        .map_err(|e| e.to_string());
    SweepColumn {
        value,
        initial_fingerprint,
        outcome,
    }
}

/// Run every grid value, in parallel, returning columns in grid order.
pub fn run_sweep(base: &Parameters, spec: &SweepSpec) -> Result<BifurcationData> {
    base.validate()?;
    let grid = spec.grid()?;
    let job = || -> Vec<SweepColumn> {
        grid.par_iter()
            .map(|&v| run_column(base, spec, v))
            .collect()
    };
    let columns = match spec.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?
            .install(job),
        None => job(),
    };
    Ok(BifurcationData {
        spec: spec.clone(),
        columns,
    })
}
