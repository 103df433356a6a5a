//! CSV tables and `key=value` manifests.
//!
//! Floats are written with [`fmt_f64`], the shortest representation that
//! parses back to the same bits.

use std::io::{self, Write};

use crate::analysis::{AcfResult, ChaosReport, DimensionFit};
use crate::params::{fmt_f64, parse_kv};
use crate::sim::{Trajectory, Var};
use crate::sweep::BifurcationData;

fn header<W: Write>(
    w: &mut W,
    first: &str,
    vars: impl Iterator<Item = Var>,
) -> io::Result<Vec<Var>> {
    let vars: Vec<Var> = vars.collect();
    write!(w, "{first}")?;
    for v in &vars {
        write!(w, ",{}", v.column_name())?;
    }
    Ok(vars)
}

/// One row per integer year: `t,N_r,N_b,S,P,B_r,B_b` (recorded variables
/// only).
pub fn write_yearly_csv<W: Write>(w: &mut W, traj: &Trajectory) -> io::Result<()> {
    let vars = header(w, "t", traj.yearly.vars().iter())?;
    writeln!(w)?;
    let cols: Vec<&[f64]> = vars.iter().map(|&v| traj.yearly.get(v).unwrap()).collect();
    for i in 0..traj.yearly_len {
        write!(w, "{}", traj.year(i))?;
        for c in &cols {
            write!(w, ",{}", fmt_f64(c[i]))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Grid-resolution rows `k,t,...`, plus `total_r,total_b` when totals were
/// recorded.
pub fn write_grid_csv<W: Write>(w: &mut W, traj: &Trajectory) -> io::Result<()> {
    let vars = header(w, "k,t", traj.grid.vars().iter())?;
    if traj.totals.is_some() {
        write!(w, ",total_r,total_b")?;
    }
    writeln!(w)?;
    let cols: Vec<&[f64]> = vars.iter().map(|&v| traj.grid.get(v).unwrap()).collect();
    for i in 0..traj.grid_len {
        write!(w, "{},{}", traj.grid_step(i), fmt_f64(traj.grid_time(i)))?;
        for c in &cols {
            write!(w, ",{}", fmt_f64(c[i]))?;
        }
        if let Some((r, b)) = &traj.totals {
            write!(w, ",{},{}", fmt_f64(r[i]), fmt_f64(b[i]))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_acf_csv<W: Write>(w: &mut W, acf: &AcfResult) -> io::Result<()> {
    writeln!(w, "lag,R")?;
    for (l, r) in acf.lags.iter().zip(&acf.values) {
        writeln!(w, "{},{}", fmt_f64(*l), fmt_f64(*r))?;
    }
    Ok(())
}

pub fn write_entropy_csv<W: Write>(w: &mut W, report: &ChaosReport) -> io::Result<()> {
    writeln!(w, "K,H_K")?;
    for (i, h) in report.hk.iter().enumerate() {
        writeln!(w, "{},{}", i + 1, fmt_f64(*h))?;
    }
    Ok(())
}

pub fn write_returns_csv<W: Write>(w: &mut W, report: &ChaosReport) -> io::Result<()> {
    writeln!(w, "k,r")?;
    for (i, r) in report.returns.iter().enumerate() {
        writeln!(w, "{i},{}", fmt_f64(*r))?;
    }
    Ok(())
}

pub fn chaos_summary(report: &ChaosReport) -> Vec<(String, String)> {
    let opt = |x: Option<f64>| x.map_or_else(|| "none".to_string(), fmt_f64);
    vec![
        ("tau_star".into(), fmt_f64(report.tau_star)),
        ("tau".into(), fmt_f64(report.tau)),
        (
            "acf_at_nearest_lag".into(),
            opt(report.acf.value_at_nearest_lag),
        ),
        ("threshold_ok".into(), report.acf.threshold_ok.to_string()),
        ("n_returns".into(), report.returns.len().to_string()),
        ("slope".into(), fmt_f64(report.slope)),
        ("corrcoef".into(), fmt_f64(report.corrcoef)),
        ("regression".into(), report.method.as_str().into()),
    ]
}

pub fn write_boxcount_csv<W: Write>(w: &mut W, fit: &DimensionFit) -> io::Result<()> {
    writeln!(w, "epsilon,count,in_fit")?;
    let (a, b) = fit.fit_range;
    for (i, (e, c)) in fit.epsilons.iter().zip(&fit.counts).enumerate() {
        writeln!(
            w,
            "{},{},{}",
            fmt_f64(*e),
            c,
            u8::from((a..=b).contains(&i))
        )?;
    }
    Ok(())
}

pub fn dimension_summary(fit: &DimensionFit) -> Vec<(String, String)> {
    vec![
        ("n_points".into(), fit.n_points.to_string()),
        ("diameter".into(), fmt_f64(fit.diameter)),
        ("fit_first".into(), fit.fit_range.0.to_string()),
        ("fit_last".into(), fit.fit_range.1.to_string()),
        ("fit_rule".into(), fit.rule.as_str().into()),
        ("dimension".into(), fmt_f64(fit.dimension)),
        ("corrcoef".into(), fmt_f64(fit.corrcoef)),
    ]
}

/// `param,t,N_r,P` rows in grid order; a faulted value yields the single
/// row `value,fault,,`.
pub fn write_bifurcation_csv<W: Write>(w: &mut W, data: &BifurcationData) -> io::Result<()> {
    writeln!(w, "param,t,N_r,P")?;
    for col in &data.columns {
        let v = fmt_f64(col.value);
        match &col.outcome {
            Ok((n, p)) => {
                for (i, (x, y)) in n.iter().zip(p).enumerate() {
                    let t = data.spec.from_year + i as u64;
                    writeln!(w, "{v},{t},{},{}", fmt_f64(*x), fmt_f64(*y))?;
                }
            }
            Err(_) => writeln!(w, "{v},fault,,")?,
        }
    }
    Ok(())
}

/// Ordered `key=value` record.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Manifest {
    pub entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.push((key.into(), value.into()));
    }

    pub fn extend<K: Into<String>, V: Into<String>>(
        &mut self,
        pairs: impl IntoIterator<Item = (K, V)>,
    ) {
        for (k, v) in pairs {
            self.push(k, v);
        }
    }

    /// Last value recorded under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn write<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (k, v) in &self.entries {
            writeln!(w, "{k}={v}")?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> crate::Result<Self> {
        Ok(Manifest {
            entries: parse_kv(text)?,
        })
    }
}
