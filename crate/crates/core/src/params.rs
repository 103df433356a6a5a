//! Model parameters, presets and the flat `key=value` configuration format.
//!
//! Config keys use the conventional symbol names (`A0`, `Omega1`, `alphaD`,
//! `R_const`, ...). Everything round-trips through [`Parameters::to_pairs`]
//! and [`Parameters::set`]; floats are rendered with Rust's shortest
//! round-trip formatting so a rendered config reproduces the exact bits.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How the per-step birth counts are formed from the mature population.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BirthLaw {
    /// `B = (1/q) m_rho N m(N) R`, the discretization of the continuous
    /// birth density `m_rho(t) m(N_r) N_r R(P)`.
    Proportional,
    /// `B = (m0/q) m_rho m(N) R`, the discrete birth formula taken
    /// literally: no `N` factor and `m0` applied twice.
    AppendixLiteral,
}

impl BirthLaw {
    pub fn as_str(self) -> &'static str {
        match self {
            BirthLaw::Proportional => "proportional",
            BirthLaw::AppendixLiteral => "appendix_literal",
        }
    }
}

impl FromStr for BirthLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proportional" => Ok(BirthLaw::Proportional),
            "appendix_literal" | "literal" => Ok(BirthLaw::AppendixLiteral),
            other => Err(Error::invalid(
                "birth_law",
                format!("`{other}` is not one of proportional, appendix_literal"),
            )),
        }
    }
}

impl fmt::Display for BirthLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Functional form of the market force driving `P'/P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarketForceKind {
    /// `(D - S) / (D + S)`, bounded in `[-1, 1]`.
    RelativeSpread,
    /// `(D - S) / S`.
    ExcessOverSupply,
}

impl MarketForceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MarketForceKind::RelativeSpread => "relative_spread",
            MarketForceKind::ExcessOverSupply => "excess_over_supply",
        }
    }
}

impl FromStr for MarketForceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relative_spread" => Ok(MarketForceKind::RelativeSpread),
            "excess_over_supply" => Ok(MarketForceKind::ExcessOverSupply),
            other => Err(Error::invalid(
                "market_force",
                format!("`{other}` is not one of relative_spread, excess_over_supply"),
            )),
        }
    }
}

impl fmt::Display for MarketForceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named parameter settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Pork-like main setting.
    Sp,
    /// `Sp` with the breeder fraction frozen at 0.955.
    Hh1,
    /// `Sp` with `R0 = 0.4`, `R1 = 0.9`, `D0 = 30`: satisfies all three
    /// attractor hypotheses (persistence, demand, supply).
    Tg,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Sp, Preset::Hh1, Preset::Tg];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Sp => "SP",
            Preset::Hh1 => "HH1",
            Preset::Tg => "TG",
        }
    }

    pub fn params(self) -> Parameters {
        match self {
            Preset::Sp => Parameters::sp(),
            Preset::Hh1 => Parameters::hh1(),
            Preset::Tg => Parameters::tg(),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SP" => Ok(Preset::Sp),
            "HH1" | "HH₁" => Ok(Preset::Hh1),
            "TG" => Ok(Preset::Tg),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

/// Breeder fraction used by the `HH1` preset.
pub const HH1_BREEDER_FRACTION: f64 = 0.955;

/// All model constants and coefficient-function choices for one experiment.
///
/// Ages are in years, rates per year, prices in arbitrary price units.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameters {
    /// Age at which females start reproducing.
    pub a0: f64,
    /// Age at which females stop reproducing.
    pub a1: f64,
    /// Minimal butchery age.
    pub omega0: f64,
    /// Maximal butchery age.
    pub omega1: f64,
    /// Maximal yearly fertility (female pups per female per year).
    pub m0: f64,
    /// Density exponent of the fertility function.
    pub gamma: f64,
    /// Winter fraction of the year, no births during it.
    pub rho: f64,
    /// Market temperature.
    pub lambda: f64,
    /// Demand at zero price.
    pub d0: f64,
    /// Exponential decay rate of demand in price.
    pub alpha_d: f64,
    /// Lower bound of the breeder fraction.
    pub r0: f64,
    /// Upper bound of the breeder fraction.
    pub r1: f64,
    /// Price threshold of the breeder strategy.
    pub p0: f64,
    /// Steepness `d` of the breeder strategy.
    pub steepness: f64,
    pub birth_law: BirthLaw,
    pub market_force: MarketForceKind,
    /// Steps per year.
    pub q: u32,
    /// Constant breeder fraction overriding the price-dependent strategy.
    pub r_const: Option<f64>,
    /// Price at the start of the simulation.
    pub initial_price: f64,
}

impl Default for Parameters {
    fn default() -> Self {
        Self::sp()
    }
}

impl Parameters {
    pub fn sp() -> Self {
        Parameters {
            a0: 0.18,
            a1: 2.0,
            omega0: 0.18,
            omega1: 2.0,
            m0: 5.0,
            gamma: 8.25,
            rho: 0.79,
            lambda: 1.0,
            d0: 5.0,
            alpha_d: 1.0,
            r0: 0.0,
            r1: 1.0,
            p0: 1.0,
            steepness: 4.0,
            birth_law: BirthLaw::Proportional,
            market_force: MarketForceKind::RelativeSpread,
            q: 100,
            r_const: None,
            initial_price: 1.0,
        }
    }

    pub fn hh1() -> Self {
        Parameters {
            r_const: Some(HH1_BREEDER_FRACTION),
            ..Self::sp()
        }
    }

    pub fn tg() -> Self {
        Parameters {
            r0: 0.4,
            r1: 0.9,
            d0: 30.0,
            ..Self::sp()
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(name: &str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ))
            }
        }
        positive("A0", self.a0)?;
        positive("Omega0", self.omega0)?;
        if !(self.a1.is_finite() && self.a1 > self.a0) {
            return Err(Error::invalid("A1", "must satisfy 0 < A0 < A1"));
        }
        if !(self.omega1.is_finite() && self.omega1 > self.omega0) {
            return Err(Error::invalid("Omega1", "must satisfy 0 < Omega0 < Omega1"));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::invalid("rho", "must lie in (0, 1)"));
        }
        if !(self.r0 >= 0.0 && self.r0 <= self.r1 && self.r1 <= 1.0) {
            return Err(Error::invalid("R0", "must satisfy 0 <= R0 <= R1 <= 1"));
        }
        if self.q == 0 {
            return Err(Error::invalid("q", "must be >= 1"));
        }
        positive("m0", self.m0)?;
        positive("lambda", self.lambda)?;
        positive("D0", self.d0)?;
        positive("alphaD", self.alpha_d)?;
        positive("P0", self.p0)?;
        positive("d", self.steepness)?;
        if !(self.gamma.is_finite() && self.gamma >= 1.0) {
            return Err(Error::invalid(
                "gamma",
                format!("must be >= 1, got {}", self.gamma),
            ));
        }
        if let Some(r) = self.r_const {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::invalid("R_const", "must lie in [0, 1]"));
            }
        }
        if !(self.initial_price.is_finite() && self.initial_price >= 0.0) {
            return Err(Error::invalid("P_init", "must be finite and >= 0"));
        }
        Ok(())
    }

    /// Config keys in canonical order.
    pub const KEYS: [&'static str; 19] = [
        "A0",
        "A1",
        "Omega0",
        "Omega1",
        "m0",
        "gamma",
        "rho",
        "lambda",
        "D0",
        "alphaD",
        "R0",
        "R1",
        "P0",
        "d",
        "q",
        "birth_law",
        "market_force",
        "R_const",
        "P_init",
    ];

    fn scalar_mut(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "A0" => &mut self.a0,
            "A1" => &mut self.a1,
            "Omega0" => &mut self.omega0,
            "Omega1" => &mut self.omega1,
            "m0" => &mut self.m0,
            "gamma" => &mut self.gamma,
            "rho" => &mut self.rho,
            "lambda" => &mut self.lambda,
            "D0" => &mut self.d0,
            "alphaD" => &mut self.alpha_d,
            "R0" => &mut self.r0,
            "R1" => &mut self.r1,
            "P0" => &mut self.p0,
            "d" => &mut self.steepness,
            "P_init" => &mut self.initial_price,
            _ => return None,
        })
    }

    /// Read a real-valued field by config key (`R_const` reads as NaN when unset).
    pub fn scalar(&self, key: &str) -> Option<f64> {
        match key {
            "q" => Some(f64::from(self.q)),
            "R_const" => Some(self.r_const.unwrap_or(f64::NAN)),
            _ => self.clone().scalar_mut(key).map(|v| *v),
        }
    }

    /// Overwrite a real-valued field by config key. Does not validate.
    pub fn set_scalar(&mut self, key: &str, value: f64) -> Result<()> {
        if key == "R_const" {
            self.r_const = Some(value);
            return Ok(());
        }
        match self.scalar_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::UnknownKey(key.to_string())),
        }
    }

    /// Set any field from its textual config value. Does not validate.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "birth_law" => self.birth_law = value.parse()?,
            "market_force" => self.market_force = value.parse()?,
            "q" => {
                self.q = value.parse().map_err(|_| {
                    Error::invalid("q", format!("`{value}` is not a positive integer"))
                })?
            }
            "R_const" => {
                self.r_const = match value {
                    "" | "none" => None,
                    v => Some(parse_f64(key, v)?),
                }
            }
            _ => {
                let parsed = parse_f64(key, value)?;
                let slot = self
                    .scalar_mut(key)
                    .ok_or_else(|| Error::UnknownKey(key.to_string()))?;
                *slot = parsed;
            }
        }
        Ok(())
    }

    /// Render every field as `(key, value)` in [`Parameters::KEYS`] order.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        Self::KEYS
            .iter()
            .map(|&k| {
                let v = match k {
                    "birth_law" => self.birth_law.to_string(),
                    "market_force" => self.market_force.to_string(),
                    "q" => self.q.to_string(),
                    "R_const" => self.r_const.map_or_else(|| "none".to_string(), fmt_f64),
                    _ => fmt_f64(self.scalar(k).expect("scalar key")),
                };
                (k, v)
            })
            .collect()
    }

    /// Apply a list of overrides, then validate.
    pub fn with_overrides<'a, I>(mut self, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        for (k, v) in pairs {
            self.set(k, v)?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn dt(&self) -> f64 {
        1.0 / f64::from(self.q)
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::invalid(key, format!("`{value}` is not a number")))
}

/// Shortest round-trip decimal rendering, switching to exponent notation for
/// very small or very large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Parse flat `key=value` text. Blank lines and `#` comments are skipped;
/// whitespace around keys and values is trimmed. Order is preserved.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Config {
            line: i + 1,
            reason: format!("expected key=value, got `{line}`"),
        })?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::Config {
                line: i + 1,
                reason: "empty key".into(),
            });
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

pub fn is_parameter_key(key: &str) -> bool {
    Parameters::KEYS.contains(&key)
}
