//! Chaos diagnostics on recorded series.

pub mod acf;
pub mod boxcount;
pub mod chaos;
pub mod embed;
pub mod entropy;
pub mod regression;

pub use acf::{autocorrelation, AcfResult};
pub use boxcount::{box_count, fractal_dimension, DimensionFit, DimensionOptions, FitRangeRule};
pub use chaos::{chaos_analysis, ChaosOptions, ChaosReport};
pub use embed::{delay_embed, PointCloud};
pub use entropy::{combinatorial_entropy, entropy_table, log_returns, sign_returns};
pub use regression::{entropy_slope, ols, theil_sen, LinearFit, RegressionMethod};
