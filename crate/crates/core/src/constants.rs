//! A-priori bounds of the model and the hypotheses that guarantee an
//! absorbing set (persistence, demand dominance, positive supply).

use crate::model::inverse_demand;
use crate::params::{BirthLaw, Parameters};

/// Constants derived from [`Parameters`] alone.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedConstants {
    /// Min over `t` of `∫_{A0}^{A1} m_rho(t - a) da`.
    pub c0: f64,
    /// Max over `t` of the same window integral.
    pub c1: f64,
    /// Min over `t` of `∫_{Omega0}^{Omega1} m_rho(t - a) da`.
    pub c_omega_min: f64,
    /// Max over `t` of the butchery-window integral.
    pub c_omega_max: f64,
    /// Supremum of the seasonality function.
    pub rho_max: f64,
    pub delta_omega: f64,
    pub n_max: f64,
    pub n_min: f64,
    /// Lipschitz constant of `N_r`, animals per year.
    pub l1: f64,
    pub s_max: f64,
    pub s_min: f64,
    /// Lower end of `D^{-1}([S_min, S_max])`.
    pub p_min: f64,
    /// Upper end of `D^{-1}([S_min, S_max])`.
    pub p_max: f64,
    /// `m0 R0 c0 > 2`.
    pub hyp_persistence: bool,
    /// `D0 > S_max`.
    pub hyp_demand: bool,
    /// `S_min > 0`.
    pub hyp_supply: bool,
}

impl DerivedConstants {
    pub fn hypotheses(&self) -> (bool, bool, bool) {
        (self.hyp_persistence, self.hyp_demand, self.hyp_supply)
    }

    pub fn all_hypotheses(&self) -> bool {
        self.hyp_persistence && self.hyp_demand && self.hyp_supply
    }

    /// Upper bound on the mature population for the given birth law.
    ///
    /// Under the proportional law `N m(N) <= m0`, giving `m0 R1 c1`. The
    /// literal law multiplies `m(N) <= m0` by another `m0`, giving
    /// `m0^2 R1 c1`.
    pub fn population_cap(&self, law: BirthLaw, m0: f64) -> f64 {
        match law {
            BirthLaw::Proportional => self.n_max,
            BirthLaw::AppendixLiteral => self.n_max * m0,
        }
    }

    /// Upper bound on supply for the given birth law.
    pub fn supply_cap(&self, law: BirthLaw, m0: f64) -> f64 {
        match law {
            BirthLaw::Proportional => self.s_max,
            BirthLaw::AppendixLiteral => self.s_max * m0,
        }
    }

    /// Named values in display order.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        use crate::params::fmt_f64 as f;
        vec![
            ("c0", f(self.c0)),
            ("c1", f(self.c1)),
            ("c_omega_min", f(self.c_omega_min)),
            ("c_omega_max", f(self.c_omega_max)),
            ("rho_max", f(self.rho_max)),
            ("N_max", f(self.n_max)),
            ("N_min", f(self.n_min)),
            ("L1", f(self.l1)),
            ("S_max", f(self.s_max)),
            ("S_min", f(self.s_min)),
            ("P_min", f(self.p_min)),
            ("P_max", f(self.p_max)),
            ("hyp_persistence", self.hyp_persistence.to_string()),
            ("hyp_demand", self.hyp_demand.to_string()),
            ("hyp_supply", self.hyp_supply.to_string()),
        ]
    }
}

/// Cumulative seasonal mass `∫_0^x m_rho(s) ds` of the step seasonality.
pub fn seasonal_mass(x: f64, rho: f64) -> f64 {
    let on = 1.0 - rho;
    let whole = x.floor();
    whole + (x - whole).min(on) / on
}

/// Exact min and max over `t` of `∫_{lo}^{hi} m_rho(t - a) da` for the step
/// seasonality.
///
/// The integral is `G(t - lo) - G(t - hi)` with `G` the cumulative mass.
/// It is 1-periodic and piecewise linear in `t`, with kinks only where
/// `t - lo` or `t - hi` crosses a season boundary, so checking those points
/// is enough.
pub fn window_bounds(lo: f64, hi: f64, rho: f64) -> (f64, f64) {
    let on = 1.0 - rho;
    let integral = |t: f64| seasonal_mass(t - lo, rho) - seasonal_mass(t - hi, rho);
    let frac = |x: f64| x - x.floor();
    let candidates = [0.0, frac(lo), frac(lo + on), frac(hi), frac(hi + on)];
    candidates
        .iter()
        .map(|&t| integral(t))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(mn, mx), v| {
            (mn.min(v), mx.max(v))
        })
}

/// Min and max of `∫_{lo}^{hi} f(t - a) da` over `offsets` equally spaced
/// `t` in `[0, 1)`, by the trapezoid rule with step at most `step`.
///
/// Fallback for seasonality functions without a closed-form primitive.
pub fn window_bounds_by_quadrature<F>(
    f: F,
    lo: f64,
    hi: f64,
    step: f64,
    offsets: usize,
) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let h = (hi - lo) / n as f64;
    let mut mn = f64::INFINITY;
    let mut mx = f64::NEG_INFINITY;
    for j in 0..offsets {
        let t = j as f64 / offsets as f64;
        let mut acc = 0.5 * (f(t - lo) + f(t - hi));
        for i in 1..n {
            acc += f(t - (lo + i as f64 * h));
        }
        let v = acc * h;
        mn = mn.min(v);
        mx = mx.max(v);
    }
    (mn, mx)
}

pub fn derive_constants(p: &Parameters) -> DerivedConstants {
    let (c0, c1) = window_bounds(p.a0, p.a1, p.rho);
    let (c_omega_min, c_omega_max) = window_bounds(p.omega0, p.omega1, p.rho);
    let rho_max = p.seasonality_max();
    let delta_omega = p.omega1 - p.omega0;

    let n_max = p.m0 * p.r1 * c1;
    let l1 = 2.0 * p.m0 * p.r1 * rho_max;
    let s_max = p.m0 * (2.0 - p.r0) / delta_omega * c_omega_max;
    let decay = n_max.powf(1.0 - p.gamma);
    let n_min = p.m0 * p.r0 * c0 / 2.0 * decay;
    let s_min = p.m0 * (2.0 - p.r1) / (2.0 * delta_omega) * decay * c_omega_min;

    let p_min = inverse_demand(s_max, p.d0, p.alpha_d);
    let p_max = inverse_demand(s_min, p.d0, p.alpha_d);

    DerivedConstants {
        c0,
        c1,
        c_omega_min,
        c_omega_max,
        rho_max,
        delta_omega,
        n_max,
        n_min,
        l1,
        s_max,
        s_min,
        p_min,
        p_max,
        hyp_persistence: p.m0 * p.r0 * c0 > 2.0,
        hyp_demand: p.d0 > s_max,
        hyp_supply: s_min > 0.0,
    }
}
