//! Runtime monitor comparing a trajectory against the a-priori bounds.

use crate::constants::{derive_constants, DerivedConstants};
use crate::error::Result;
use crate::params::Parameters;
use crate::sim::{SimState, Simulator, StepValues};

/// Extremes and containment data collected after the monitor start time.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub constants: DerivedConstants,
    /// Population cap for the active birth law.
    pub n_cap: f64,
    /// Supply cap for the active birth law.
    pub s_cap: f64,
    /// Lipschitz bound per step, `L1 / q`.
    pub step_cap: f64,
    /// First monitored step.
    pub from_step: u64,
    /// Last monitored step.
    pub to_step: u64,
    pub max_n_r: f64,
    pub min_n_r: f64,
    pub max_supply: f64,
    pub min_supply: f64,
    pub max_price: f64,
    pub min_price: f64,
    pub max_step_change: f64,
    /// Smallest total reproducing population (juveniles included).
    pub min_total_reproducing: f64,
    /// Negative values seen in any recorded quantity.
    pub negatives: u64,
    /// Last monitored step violating `N_r >= N_min`.
    pub last_n_min_violation: Option<u64>,
    /// Last monitored step with `S` outside `[S_min, S_max]`.
    pub last_supply_violation: Option<u64>,
    /// Last monitored step with `P` outside `[P_min/2, 2 P_max]`.
    pub last_price_violation: Option<u64>,
}

impl BoundsReport {
    pub fn n_r_within_cap(&self, slack: f64) -> bool {
        self.max_n_r <= self.n_cap * (1.0 + slack)
    }

    pub fn supply_within_cap(&self, slack: f64) -> bool {
        self.max_supply <= self.s_cap * (1.0 + slack)
    }

    pub fn lipschitz_ok(&self, slack: f64) -> bool {
        self.max_step_change <= self.step_cap * (1.0 + slack)
    }

    /// Step from which a condition held until the end, given its last
    /// violation. `None` when it was still violated at the final step.
    fn entry(&self, last: Option<u64>) -> Option<u64> {
        match last {
            None => Some(self.from_step),
            Some(k) if k < self.to_step => Some(k + 1),
            Some(_) => None,
        }
    }

    pub fn n_min_entry_step(&self) -> Option<u64> {
        self.entry(self.last_n_min_violation)
    }

    pub fn supply_entry_step(&self) -> Option<u64> {
        self.entry(self.last_supply_violation)
    }

    pub fn price_entry_step(&self) -> Option<u64> {
        self.entry(self.last_price_violation)
    }

    /// Step after which all three lower/band conditions hold together.
    pub fn absorbed_from_step(&self) -> Option<u64> {
        Some(
            self.n_min_entry_step()?
                .max(self.supply_entry_step()?)
                .max(self.price_entry_step()?),
        )
    }
}

/// Incremental bounds checker; feed it every step.
#[derive(Debug, Clone)]
pub struct BoundsMonitor {
    start_step: u64,
    prev_n_r: Option<f64>,
    report: BoundsReport,
}

impl BoundsMonitor {
    /// Monitoring starts at the first step with `t >= A1`, when the initial
    /// history has fully matured out.
    pub fn new(params: &Parameters) -> Self {
        let c = derive_constants(params);
        let start_step = (params.a1 * f64::from(params.q)).ceil() as u64;
        BoundsMonitor {
            start_step: start_step.max(1),
            prev_n_r: None,
            report: BoundsReport::new(c, params),
        }
    }

    pub fn start_step(&self) -> u64 {
        self.start_step
    }

    pub fn observe(&mut self, k: u64, v: &StepValues, state: &SimState) {
        if k < self.start_step {
            return;
        }
        let r = &mut self.report;
        if let Some(prev) = self.prev_n_r {
            r.max_step_change = r.max_step_change.max((v.n_r - prev).abs());
        }
        self.prev_n_r = Some(v.n_r);
        if r.to_step == 0 {
            r.from_step = k;
        }
        r.to_step = k;

        r.max_n_r = r.max_n_r.max(v.n_r);
        r.min_n_r = r.min_n_r.min(v.n_r);
        r.max_supply = r.max_supply.max(v.supply);
        r.min_supply = r.min_supply.min(v.supply);
        r.max_price = r.max_price.max(v.price);
        r.min_price = r.min_price.min(v.price);
        let total = state.totals().0;
        r.min_total_reproducing = r.min_total_reproducing.min(total);
        r.negatives += [v.n_r, v.n_b, v.supply, v.price, v.b_r, v.b_b, total]
            .iter()
            .filter(|&&x| x < 0.0)
            .count() as u64;

        let c = &r.constants;
        if v.n_r < c.n_min {
            r.last_n_min_violation = Some(k);
        }
        if v.supply < c.s_min || v.supply > c.s_max {
            r.last_supply_violation = Some(k);
        }
        if v.price < c.p_min / 2.0 || v.price > 2.0 * c.p_max {
            r.last_price_violation = Some(k);
        }
    }

    pub fn report(&self) -> &BoundsReport {
        &self.report
    }

    pub fn finish(self) -> BoundsReport {
        self.report
    }
}

impl BoundsReport {
    fn new(constants: DerivedConstants, p: &Parameters) -> Self {
        let n_cap = constants.population_cap(p.birth_law, p.m0);
        let s_cap = constants.supply_cap(p.birth_law, p.m0);
        let step_cap = constants.l1 / f64::from(p.q);
        BoundsReport {
            constants,
            n_cap,
            s_cap,
            step_cap,
            from_step: 0,
            to_step: 0,
            max_n_r: f64::NEG_INFINITY,
            min_n_r: f64::INFINITY,
            max_supply: f64::NEG_INFINITY,
            min_supply: f64::INFINITY,
            max_price: f64::NEG_INFINITY,
            min_price: f64::INFINITY,
            max_step_change: 0.0,
            min_total_reproducing: f64::INFINITY,
            negatives: 0,
            last_n_min_violation: None,
            last_supply_violation: None,
            last_price_violation: None,
        }
    }
}

/// Simulate `years` years from `seed` and report against the bounds.
pub fn check_bounds(params: &Parameters, seed: u64, years: u64) -> Result<BoundsReport> {
    let mut sim = Simulator::new(params.clone(), seed)?;
    let mut mon = BoundsMonitor::new(params);
    sim.run_with(years * u64::from(params.q), |k, v, s| mon.observe(k, v, s))?;
    Ok(mon.finish())
}
