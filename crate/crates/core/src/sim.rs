//! Discrete-time dynamics: `q` steps per year over ring-buffered birth
//! histories.
//!
//! Step `k >= 1` covers the time interval `((k-1)/q, k/q]`. Each step
//! computes, in order, the mature reproducing population `N_r`, the
//! butchery-ready population `N_b`, supply `S`, price `P`, and the births
//! `B_r`, `B_b` of the two lines. Initial histories occupy steps
//! `-L+1 ..= 0` with `L = max(kA1, kOmega1)`, so yearly samples fall on
//! `k = q t`, the first step of each birth season.

use crate::error::{Error, Result};
use crate::history::BirthHistory;
use crate::model::{market_force, seasonality_at_step};
use crate::params::{BirthLaw, Parameters};
use crate::rng::HistoryRng;

/// Window limits in steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscreteIndices {
    pub k_a0: usize,
    pub k_a1: usize,
    pub k_omega0: usize,
    pub k_omega1: usize,
}

impl DiscreteIndices {
    /// Number of past steps the dynamics depend on.
    pub fn history_len(&self) -> usize {
        self.k_a1.max(self.k_omega1)
    }

    /// History cells of both lines plus the price.
    pub fn phase_space_dim(&self) -> usize {
        self.k_a1 + self.k_omega1 + 1
    }

    pub fn reproducing_width(&self) -> usize {
        self.k_a1 - self.k_a0 + 1
    }

    pub fn butchery_width(&self) -> usize {
        self.k_omega1 - self.k_omega0 + 1
    }
}

/// `kA0 = max(1, [q A0])`, `kA1 = max(kA0, [q A1] - 1)`, same for Omega.
/// `[x]` rounds half away from zero.
pub fn discretize(p: &Parameters) -> DiscreteIndices {
    let q = f64::from(p.q);
    let lower = |x: f64| ((q * x).round() as usize).max(1);
    let upper = |lo: usize, x: f64| lo.max(((q * x).round() as usize).saturating_sub(1));
    let k_a0 = lower(p.a0);
    let k_omega0 = lower(p.omega0);
    DiscreteIndices {
        k_a0,
        k_a1: upper(k_a0, p.a1),
        k_omega0,
        k_omega1: upper(k_omega0, p.omega1),
    }
}

/// Everything computed in one step.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepValues {
    pub n_r: f64,
    pub n_b: f64,
    pub supply: f64,
    pub price: f64,
    pub b_r: f64,
    pub b_b: f64,
}

impl StepValues {
    pub fn get(&self, var: Var) -> f64 {
        match var {
            Var::Nr => self.n_r,
            Var::Nb => self.n_b,
            Var::S => self.supply,
            Var::P => self.price,
            Var::Br => self.b_r,
            Var::Bb => self.b_b,
        }
    }
}

/// Full dynamical state: both birth histories, the price and the step
/// counter.
#[derive(Debug, Clone)]
pub struct SimState {
    indices: DiscreteIndices,
    reproducing: BirthHistory,
    butchery: BirthHistory,
    price: f64,
    step: u64,
}

impl SimState {
    /// Random initial condition: `L` i.i.d. draws from
    /// `U[0, 2/(kA1 - kA0 + 1)]` for the reproducing line (oldest first),
    /// then `L` more for the butchery line. The mature population at the
    /// first step then averages to about 1.
    pub fn new(params: &Parameters, seed: u64) -> Result<Self> {
        params.validate()?;
        let idx = discretize(params);
        let len = idx.history_len();
        let hi = 2.0 / idx.reproducing_width() as f64;
        let mut rng = HistoryRng::new(seed);
        let br: Vec<f64> = (0..len).map(|_| rng.uniform(hi)).collect();
        let bb: Vec<f64> = (0..len).map(|_| rng.uniform(hi)).collect();
        Self::with_histories(params, br, bb, params.initial_price)
    }

    /// Explicit initial condition. Both histories must have
    /// `max(kA1, kOmega1)` non-negative entries, oldest first.
    pub fn with_histories(
        params: &Parameters,
        br: Vec<f64>,
        bb: Vec<f64>,
        price: f64,
    ) -> Result<Self> {
        params.validate()?;
        let idx = discretize(params);
        let len = idx.history_len();
        if br.len() != len || bb.len() != len {
            return Err(Error::domain(format!(
                "initial histories must have {len} entries, got {} and {}",
                br.len(),
                bb.len()
            )));
        }
        if br.iter().chain(&bb).any(|&b| !(b.is_finite() && b >= 0.0)) {
            return Err(Error::domain(
                "initial births must be finite and non-negative",
            ));
        }
        if !(price.is_finite() && price >= 0.0) {
            return Err(Error::domain(
                "initial price must be finite and non-negative",
            ));
        }
        Ok(SimState {
            indices: idx,
            reproducing: BirthHistory::new(br, idx.k_a0, idx.k_a1),
            butchery: BirthHistory::new(bb, idx.k_omega0, idx.k_omega1),
            price,
            step: 0,
        })
    }

    pub fn indices(&self) -> DiscreteIndices {
        self.indices
    }

    /// Index of the last completed step (0 before the first one).
    pub fn step_index(&self) -> u64 {
        self.step
    }

    pub fn price(&self) -> f64 {
        self.price
    }

    pub fn reproducing(&self) -> &BirthHistory {
        &self.reproducing
    }

    pub fn butchery(&self) -> &BirthHistory {
        &self.butchery
    }

    /// Mature populations `(N_r, N_b)` the next step will see.
    pub fn window_sums(&self) -> (f64, f64) {
        (self.reproducing.window_sum(), self.butchery.window_sum())
    }

    /// Same as [`SimState::window_sums`], by direct summation.
    pub fn naive_window_sums(&self) -> (f64, f64) {
        (
            self.reproducing.naive_window_sum(),
            self.butchery.naive_window_sum(),
        )
    }

    /// Total living population of each line, juveniles included: births of
    /// the last `kA1` (resp. `kOmega1`) steps. Never below the mature window.
    pub fn totals(&self) -> (f64, f64) {
        (self.reproducing.alive_sum(), self.butchery.alive_sum())
    }

    /// FNV-1a hash of the exact bits of both histories and the price.
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut feed = |x: f64| {
            for b in x.to_bits().to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        for x in self.reproducing.oldest_first() {
            feed(x);
        }
        for x in self.butchery.oldest_first() {
            feed(x);
        }
        feed(self.price);
        h
    }

    /// Advance one step.
    pub fn step(&mut self, p: &Parameters) -> Result<StepValues> {
        let k = self.step + 1;
        let q = f64::from(p.q);
        let n_r = self.reproducing.window_sum();
        let n_b = self.butchery.window_sum();
        let supply = q * n_b / self.indices.butchery_width() as f64;

        let prev = self.price;
        let force = market_force(p.demand(prev), supply, p.market_force)
            .map_err(|e| Error::domain(format!("step {k}: {e}")))?;
        let raw_price = prev + p.lambda * prev * force / q;
        check(raw_price, k, "price")?;
        let price = raw_price.max(0.0);

        let season = seasonality_at_step(k, p.q, p.rho);
        let r = p.breeder_fraction(price);
        let births = match p.birth_law {
            BirthLaw::Proportional => season * n_r * p.fertility(n_r) / q,
            BirthLaw::AppendixLiteral => p.m0 / q * season * p.fertility(n_r),
        };
        let b_r = births * r;
        let b_b = births * (2.0 - r);
        check(b_r, k, "reproducing births")?;
        check(b_b, k, "butchery births")?;
        check(supply, k, "supply")?;

        self.reproducing.push(b_r);
        self.butchery.push(b_b);
        self.price = price;
        self.step = k;
        Ok(StepValues {
            n_r,
            n_b,
            supply,
            price,
            b_r,
            b_b,
        })
    }
}

#[inline]
fn check(x: f64, step: u64, quantity: &'static str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { step, quantity })
    }
}

/// Recorded quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Nr,
    Nb,
    S,
    P,
    Br,
    Bb,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::Nr, Var::Nb, Var::S, Var::P, Var::Br, Var::Bb];

    pub fn column_name(self) -> &'static str {
        match self {
            Var::Nr => "N_r",
            Var::Nb => "N_b",
            Var::S => "S",
            Var::P => "P",
            Var::Br => "B_r",
            Var::Bb => "B_b",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl std::str::FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Nr" | "N_r" => Ok(Var::Nr),
            "Nb" | "N_b" => Ok(Var::Nb),
            "S" => Ok(Var::S),
            "P" => Ok(Var::P),
            "Br" | "B_r" => Ok(Var::Br),
            "Bb" | "B_b" => Ok(Var::Bb),
            other => Err(Error::domain(format!("unknown variable `{other}`"))),
        }
    }
}

/// Small set of [`Var`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VarSet(u8);

impl VarSet {
    pub const NONE: VarSet = VarSet(0);
    pub const ALL: VarSet = VarSet(0b11_1111);

    pub fn of(vars: &[Var]) -> Self {
        VarSet(vars.iter().fold(0, |acc, v| acc | v.bit()))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & v.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |&v| self.contains(v))
    }
}

/// What to keep from a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordSpec {
    /// Variables kept at grid resolution.
    pub grid: VarSet,
    /// Keep every `grid_stride`-th step.
    pub grid_stride: u64,
    /// First step eligible for grid recording (burn-in skip).
    pub grid_from_step: u64,
    /// Variables kept at integer times.
    pub yearly: VarSet,
    /// First year eligible for yearly recording.
    pub yearly_from_year: u64,
    /// Record total populations of both lines alongside the grid series.
    pub totals: bool,
}

impl Default for RecordSpec {
    fn default() -> Self {
        RecordSpec {
            grid: VarSet::ALL,
            grid_stride: 1,
            grid_from_step: 1,
            yearly: VarSet::ALL,
            yearly_from_year: 1,
            totals: false,
        }
    }
}

impl RecordSpec {
    pub fn yearly_only(vars: VarSet, from_year: u64) -> Self {
        RecordSpec {
            grid: VarSet::NONE,
            yearly: vars,
            yearly_from_year: from_year,
            ..Default::default()
        }
    }

    pub fn nothing() -> Self {
        RecordSpec {
            grid: VarSet::NONE,
            yearly: VarSet::NONE,
            ..Default::default()
        }
    }

    fn records_grid(&self, k: u64) -> bool {
        (!self.grid.is_empty() || self.totals)
            && k >= self.grid_from_step
            && (k - self.grid_from_step).is_multiple_of(self.grid_stride)
    }
}

/// Column store for a subset of [`Var`]s.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Columns {
    vars: VarSet,
    data: [Vec<f64>; 6],
}

impl Columns {
    fn new(vars: VarSet) -> Self {
        Columns {
            vars,
            data: Default::default(),
        }
    }

    fn push(&mut self, v: &StepValues) {
        for var in self.vars.iter() {
            self.data[var as usize].push(v.get(var));
        }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn get(&self, var: Var) -> Option<&[f64]> {
        self.vars
            .contains(var)
            .then(|| self.data[var as usize].as_slice())
    }

    pub fn take(&mut self, var: Var) -> Option<Vec<f64>> {
        self.vars
            .contains(var)
            .then(|| std::mem::take(&mut self.data[var as usize]))
    }
}

/// Recorded output of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub q: u32,
    /// Step index of the first grid record.
    pub grid_first_step: u64,
    pub grid_stride: u64,
    /// Number of grid records (also the length of each grid column).
    pub grid_len: usize,
    pub grid: Columns,
    /// `(reproducing, butchery)` totals per grid record, when requested.
    pub totals: Option<(Vec<f64>, Vec<f64>)>,
    /// Year of the first yearly record.
    pub yearly_first_year: u64,
    pub yearly_len: usize,
    pub yearly: Columns,
}

impl Trajectory {
    fn empty(q: u32, spec: &RecordSpec) -> Self {
        Trajectory {
            q,
            grid_first_step: 0,
            grid_stride: spec.grid_stride,
            grid_len: 0,
            grid: Columns::new(spec.grid),
            totals: spec.totals.then(Default::default),
            yearly_first_year: 0,
            yearly_len: 0,
            yearly: Columns::new(spec.yearly),
        }
    }

    /// Time in years of grid record `i`.
    pub fn grid_time(&self, i: usize) -> f64 {
        (self.grid_first_step + i as u64 * self.grid_stride) as f64 / f64::from(self.q)
    }

    pub fn grid_step(&self, i: usize) -> u64 {
        self.grid_first_step + i as u64 * self.grid_stride
    }

    pub fn year(&self, i: usize) -> u64 {
        self.yearly_first_year + i as u64
    }

    pub fn is_empty(&self) -> bool {
        self.grid_len == 0 && self.yearly_len == 0
    }
}

/// A parameter set together with its evolving state.
#[derive(Debug, Clone)]
pub struct Simulator {
    params: Parameters,
    state: SimState,
}

impl Simulator {
    pub fn new(params: Parameters, seed: u64) -> Result<Self> {
        let state = SimState::new(&params, seed)?;
        Ok(Simulator { params, state })
    }

    pub fn from_state(params: Parameters, state: SimState) -> Self {
        Simulator { params, state }
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn state(&self) -> &SimState {
        &self.state
    }

    /// Run `steps` steps, handing every step's values and the post-step
    /// state to `observe`.
    pub fn run_with<F>(&mut self, steps: u64, mut observe: F) -> Result<()>
    where
        F: FnMut(u64, &StepValues, &SimState),
    {
        for _ in 0..steps {
            let v = self.state.step(&self.params)?;
            observe(self.state.step_index(), &v, &self.state);
        }
        Ok(())
    }

    /// Continue for `years` more years, recording per `spec`. Step and year
    /// thresholds in `spec` are absolute.
    pub fn extend(&mut self, years: u64, spec: &RecordSpec) -> Result<Trajectory> {
        if spec.grid_stride == 0 {
            return Err(Error::domain("grid stride must be >= 1"));
        }
        let q = self.params.q;
        let qu = u64::from(q);
        let mut traj = Trajectory::empty(q, spec);
        let yearly_on = !spec.yearly.is_empty();
        self.run_with(years * qu, |k, v, state| {
            if spec.records_grid(k) {
                if traj.grid_len == 0 {
                    traj.grid_first_step = k;
                }
                traj.grid.push(v);
                if let Some((tr, tb)) = traj.totals.as_mut() {
                    let (r, b) = state.totals();
                    tr.push(r);
                    tb.push(b);
                }
                traj.grid_len += 1;
            }
            if yearly_on && k % qu == 0 && k / qu >= spec.yearly_from_year {
                if traj.yearly_len == 0 {
                    traj.yearly_first_year = k / qu;
                }
                traj.yearly.push(v);
                traj.yearly_len += 1;
            }
        })?;
        Ok(traj)
    }
}

/// Run `years` years from the seeded initial condition.
pub fn simulate(
    params: &Parameters,
    seed: u64,
    years: u64,
    spec: &RecordSpec,
) -> Result<Trajectory> {
    if years == 0 {
        return Err(Error::domain("simulation length must be at least one year"));
    }
    Simulator::new(params.clone(), seed)?.extend(years, spec)
}
