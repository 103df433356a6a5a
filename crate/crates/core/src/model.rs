//! Coefficient functions of the coupled population/price model.

use crate::error::{Error, Result};
use crate::params::{MarketForceKind, Parameters};

/// Density-dependent fertility `m(N) = m0 * max(N, 1)^(-gamma)`.
#[inline]
pub fn fertility(n: f64, m0: f64, gamma: f64) -> f64 {
    if n <= 1.0 {
        m0
    } else {
        m0 * n.powf(-gamma)
    }
}

/// Step seasonality: `1/(1 - rho)` on the first `1 - rho` of every year, 0
/// during winter. Unit mass per year.
#[inline]
pub fn seasonality(t: f64, rho: f64) -> f64 {
    let phase = t - t.floor();
    seasonality_at_phase(phase, rho)
}

#[inline]
pub(crate) fn seasonality_at_phase(phase: f64, rho: f64) -> f64 {
    if phase < 1.0 - rho {
        1.0 / (1.0 - rho)
    } else {
        0.0
    }
}

/// Seasonality at grid time `k/q`. The phase is taken from `k mod q` so it
/// is exact for arbitrarily large step indices.
#[inline]
pub fn seasonality_at_step(k: u64, q: u32, rho: f64) -> f64 {
    let phase = (k % u64::from(q)) as f64 / f64::from(q);
    seasonality_at_phase(phase, rho)
}

/// Exponential demand `D(P) = D0 exp(-alphaD P)`.
#[inline]
pub fn demand(p: f64, d0: f64, alpha_d: f64) -> f64 {
    d0 * (-alpha_d * p).exp()
}

/// Price at which demand equals `supply`, clamped at 0 when `supply >= D0`.
/// Returns `+inf` for zero supply.
pub fn inverse_demand(supply: f64, d0: f64, alpha_d: f64) -> f64 {
    if supply <= 0.0 {
        f64::INFINITY
    } else {
        ((d0 / supply).ln() / alpha_d).max(0.0)
    }
}

/// Breeder strategy shape: `x^d / 2` below 1, logistic above. Both branches
/// equal 1/2 at `x = 1`.
#[inline]
pub fn strategy_shape(x: f64, d: f64) -> f64 {
    if x < 1.0 {
        x.powf(d) / 2.0
    } else {
        1.0 / (1.0 + (-2.0 * d * (x - 1.0)).exp())
    }
}

/// Fraction of newborn females sent to the reproducing line at price `p`.
#[inline]
pub fn breeder_fraction(p: f64, r0: f64, r1: f64, p0: f64, d: f64) -> f64 {
    r0 + (r1 - r0) * strategy_shape(p / p0, d)
}

/// Normalized demand/supply imbalance.
pub fn market_force(demand: f64, supply: f64, kind: MarketForceKind) -> Result<f64> {
    match kind {
        MarketForceKind::RelativeSpread => {
            let total = demand + supply;
            if total > 0.0 {
                Ok((demand - supply) / total)
            } else {
                Err(Error::domain("market force undefined for D = S = 0"))
            }
        }
        MarketForceKind::ExcessOverSupply => {
            if supply > 0.0 {
                Ok((demand - supply) / supply)
            } else {
                Err(Error::domain(
                    "excess-over-supply force undefined for S = 0",
                ))
            }
        }
    }
}

impl Parameters {
    #[inline]
    pub fn fertility(&self, n: f64) -> f64 {
        fertility(n, self.m0, self.gamma)
    }

    #[inline]
    pub fn demand(&self, p: f64) -> f64 {
        demand(p, self.d0, self.alpha_d)
    }

    /// Breeder fraction, honoring the constant override of `HH1`-style runs.
    #[inline]
    pub fn breeder_fraction(&self, p: f64) -> f64 {
        match self.r_const {
            Some(r) => r,
            None => breeder_fraction(p, self.r0, self.r1, self.p0, self.steepness),
        }
    }

    /// Supremum of the seasonality function.
    pub fn seasonality_max(&self) -> f64 {
        1.0 / (1.0 - self.rho)
    }
}

/// Average breeder fraction (ignoring any constant override) along a price
/// series. This is how the frozen `HH1` value is obtained from an `SP` run.
pub fn mean_breeder_fraction(params: &Parameters, prices: &[f64]) -> Option<f64> {
    if prices.is_empty() {
        return None;
    }
    let sum: f64 = prices
        .iter()
        .map(|&p| breeder_fraction(p, params.r0, params.r1, params.p0, params.steepness))
        .sum();
    Some(sum / prices.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fertility_examples() {
        assert_eq!(fertility(0.5, 5.0, 8.25), 5.0);
        assert_eq!(fertility(1.0, 5.0, 8.25), 5.0);
        // 5 * 2^-8.25, evaluated independently as 5 / (256 * 2^0.25)
        let expected = 5.0 / (256.0 * 2f64.sqrt().sqrt());
        assert!((fertility(2.0, 5.0, 8.25) - expected).abs() < 1e-15);
        assert!((expected - 0.0164238).abs() < 1e-7);
    }

    #[test]
    fn fertility_grid_properties() {
        // log-spaced N in [1e-6, 1e6]
        let mut prev = f64::INFINITY;
        for i in 0..=1200 {
            let n = 10f64.powf(-6.0 + 12.0 * i as f64 / 1200.0);
            let m = fertility(n, 5.0, 8.25);
            assert!(m <= prev);
            assert!(m > 0.0);
            assert!(n * m <= 5.0 * (1.0 + 1e-15));
            prev = m;
        }
    }

    #[test]
    fn seasonality_examples() {
        assert!((seasonality(0.1, 0.79) - 1.0 / 0.21).abs() < 1e-12);
        assert!((seasonality(0.1, 0.79) - 4.76190).abs() < 1e-5);
        assert_eq!(seasonality(0.5, 0.79), 0.0);
        assert_eq!(seasonality(1.5, 0.79), 0.0);
        assert!(seasonality(-0.9, 0.79) > 0.0);
    }

    #[test]
    fn seasonality_has_unit_mass_on_grid() {
        // exact whenever the season boundary q (1 - rho) falls on the grid
        for q in [100u32, 200, 300] {
            let mass: f64 = (0..u64::from(q))
                .map(|k| seasonality_at_step(k, q, 0.79))
                .sum::<f64>()
                / f64::from(q);
            assert!((mass - 1.0).abs() < 1e-12, "q={q} mass={mass}");
        }
        assert_eq!(
            seasonality_at_step(10_000_000_000_005, 100, 0.79),
            1.0 / (1.0 - 0.79)
        );
    }

    #[test]
    fn demand_examples() {
        assert_eq!(demand(0.0, 5.0, 1.0), 5.0);
        assert!((demand(1.0, 5.0, 1.0) - 1.83940).abs() < 1e-5);
        assert_eq!(demand(1e6, 5.0, 1.0), 0.0);
        let p = inverse_demand(2.0, 5.0, 1.0);
        assert!((demand(p, 5.0, 1.0) - 2.0).abs() < 1e-12);
        assert_eq!(inverse_demand(0.0, 5.0, 1.0), f64::INFINITY);
        assert_eq!(inverse_demand(10.0, 5.0, 1.0), 0.0);
    }

    #[test]
    fn breeder_examples() {
        assert_eq!(breeder_fraction(0.0, 0.2, 0.9, 1.0, 4.0), 0.2);
        assert_eq!(breeder_fraction(1.0, 0.2, 0.9, 1.0, 4.0), 0.2 + 0.7 / 2.0);
        let expected = 1.0 / (1.0 + (-8f64).exp());
        assert!((breeder_fraction(2.0, 0.0, 1.0, 1.0, 4.0) - expected).abs() < 1e-15);
        assert!((expected - 0.999665).abs() < 1e-6);
    }

    #[test]
    fn breeder_continuous_at_threshold() {
        let left = breeder_fraction(1.0 - 1e-15, 0.0, 1.0, 1.0, 4.0);
        let right = breeder_fraction(1.0, 0.0, 1.0, 1.0, 4.0);
        assert!((left - right).abs() < 1e-12);
    }

    #[test]
    fn breeder_monotone_dense_grid() {
        let mut prev = -1.0;
        for i in 0..=100_000 {
            let p = 5.0 * i as f64 / 100_000.0;
            let r = breeder_fraction(p, 0.1, 0.8, 1.3, 4.0);
            assert!(r >= prev);
            assert!((0.1..0.8).contains(&r));
            prev = r;
        }
    }

    #[test]
    fn breeder_respects_constant_override() {
        let p = Parameters::hh1();
        assert_eq!(p.breeder_fraction(0.0), 0.955);
        assert_eq!(p.breeder_fraction(7.0), 0.955);
    }

    #[test]
    fn market_force_examples() {
        use MarketForceKind::*;
        assert_eq!(market_force(3.0, 3.0, RelativeSpread).unwrap(), 0.0);
        assert_eq!(market_force(5.0, 0.0, RelativeSpread).unwrap(), 1.0);
        assert_eq!(market_force(1.0, 3.0, RelativeSpread).unwrap(), -0.5);
        assert_eq!(market_force(1.0, 4.0, ExcessOverSupply).unwrap(), -0.75);
        assert!(market_force(0.0, 0.0, RelativeSpread).is_err());
        assert!(market_force(1.0, 0.0, ExcessOverSupply).is_err());
    }

    #[test]
    fn mean_breeder_fraction_ignores_override() {
        let p = Parameters::hh1();
        let m = mean_breeder_fraction(&p, &[0.0, 1.0]).unwrap();
        assert_eq!(m, 0.25);
        assert!(mean_breeder_fraction(&p, &[]).is_none());
    }

    proptest! {
        #[test]
        fn relative_spread_antisymmetric(d in 0.0f64..1e3, s in 0.0f64..1e3) {
            prop_assume!(d + s > 0.0);
            let a = market_force(d, s, MarketForceKind::RelativeSpread).unwrap();
            let b = market_force(s, d, MarketForceKind::RelativeSpread).unwrap();
            prop_assert_eq!(a, -b);
            prop_assert!((-1.0..=1.0).contains(&a));
        }

        #[test]
        fn force_sign_matches_imbalance(d in 0.0f64..1e3, s in 1e-9f64..1e3) {
            for kind in [MarketForceKind::RelativeSpread, MarketForceKind::ExcessOverSupply] {
                let f = market_force(d, s, kind).unwrap();
                prop_assert_eq!(f.partial_cmp(&0.0), (d - s).partial_cmp(&0.0));
            }
        }
    }
}
