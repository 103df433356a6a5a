//! Simulation and chaos diagnostics for a livestock population model
//! coupled to a meat market.
//!
//! Breeders split newborn females between a reproducing line and a
//! butchery line according to the current price; the price responds to the
//! gap between demand and the supply of mature butchery animals. With
//! maturation delays and density-dependent seasonal fertility the system
//! shows irregular multi-year price cycles.
//!
//! Layout:
//! - [`params`], [`model`], [`constants`]: parameters, coefficient functions
//!   and a-priori bounds.
//! - [`sim`], [`bounds`]: the discrete-time engine and a bounds monitor.
//! - [`analysis`]: autocorrelation, sign-word entropy, delay embedding and
//!   box-counting dimension.
//! - [`sweep`]: bifurcation diagrams over one parameter.
//! - [`io`]: CSV and manifest output.

pub mod analysis;
pub mod bounds;
pub mod constants;
pub mod error;
mod history;
pub mod io;
pub mod model;
pub mod params;
pub mod rng;
pub mod sim;
pub mod sweep;

pub use history::BirthHistory;

pub use bounds::{check_bounds, BoundsMonitor, BoundsReport};
pub use constants::{derive_constants, DerivedConstants};
pub use error::{Error, Result};
pub use params::{BirthLaw, MarketForceKind, Parameters, Preset};
pub use sim::{
    discretize, simulate, DiscreteIndices, RecordSpec, SimState, Simulator, StepValues, Trajectory,
    Var, VarSet,
};
