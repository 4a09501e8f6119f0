//! Monthly statistics to the five sculpture parameters.
//!
//! * height: deaths min-max normalized onto `[height_min, height_max]` inches
//! * inner spokes: percent of the year's deaths, rounded
//! * inner twist: wounded share scaled to `[0, 180]` degrees
//! * outer spokes: percent of the year's shootings, rounded
//! * outer twist: shooting-free share of the month scaled to `[-180, 0]` degrees

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data_model::{totals, AggregateTotals, MonthlyRecord, YearDataset};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EncodeError {
    #[error("killed = {killed} lies outside the dataset range [{min}, {max}]")]
    KilledOutOfRange { killed: u64, min: u64, max: u64 },
    #[error("share denominator is zero (part = {part})")]
    ZeroWhole { part: u64 },
    #[error("part {part} exceeds whole {whole}")]
    PartExceedsWhole { part: u64, whole: u64 },
    #[error("inner twist strategy `{strategy}` is undefined: {reason}")]
    UndefinedTwist { strategy: InnerTwistStrategy, reason: &'static str },
    #[error("days without shooting {days} outside 0..={days_in_month}")]
    DaysOutOfRange { days: u64, days_in_month: u64 },
    #[error("invalid encoding config: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerTwistStrategy {
    /// `180 · wounded / total_wounded`
    #[default]
    Proportion,
    /// `180 · (wounded − min) / (max − min)`
    MinMax,
}

impl InnerTwistStrategy {
    pub const ALL: [InnerTwistStrategy; 2] = [InnerTwistStrategy::Proportion, InnerTwistStrategy::MinMax];
}

impl std::fmt::Display for InnerTwistStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InnerTwistStrategy::Proportion => "proportion",
            InnerTwistStrategy::MinMax => "minmax",
        })
    }
}

impl std::str::FromStr for InnerTwistStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proportion" => Ok(Self::Proportion),
            "minmax" => Ok(Self::MinMax),
            other => Err(format!("unknown inner twist strategy `{other}` (expected proportion or minmax)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rounding {
    #[default]
    HalfAwayFromZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", default)]
pub struct EncodingConfig<S: Scalar> {
    pub height_min: S,
    pub height_max: S,
    pub inner_twist_strategy: InnerTwistStrategy,
    pub rounding: Rounding,
    pub spoke_floor: u32,
}

impl<S: Scalar> Default for EncodingConfig<S> {
    fn default() -> Self {
        Self {
            height_min: S::lit(3.0),
            height_max: S::lit(8.0),
            inner_twist_strategy: InnerTwistStrategy::Proportion,
            rounding: Rounding::HalfAwayFromZero,
            spoke_floor: 1,
        }
    }
}

impl<S: Scalar> EncodingConfig<S> {
    pub fn validate(&self) -> Result<(), EncodeError> {
        if !(self.height_min < self.height_max) || !self.height_min.is_finite() || !self.height_max.is_finite() {
            return Err(EncodeError::Config(format!(
                "height_min ({}) must be below height_max ({})",
                self.height_min, self.height_max
            )));
        }
        if self.height_min <= S::zero() {
            return Err(EncodeError::Config("height_min must be positive".into()));
        }
        if self.spoke_floor < 1 {
            return Err(EncodeError::Config("spoke_floor must be at least 1".into()));
        }
        Ok(())
    }
}

/// Encoded parameters for one month. Heights are inches, twists degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SculptureParams<S: Scalar> {
    pub month: u32,
    pub height: S,
    pub inner_spoke_count: u32,
    pub inner_twist: S,
    pub outer_spoke_count: u32,
    pub outer_twist: S,
}

pub fn height_for_deaths<S: Scalar>(
    killed: u64,
    min_killed: u64,
    max_killed: u64,
    cfg: &EncodingConfig<S>,
) -> Result<S, EncodeError> {
    if killed < min_killed || killed > max_killed {
        return Err(EncodeError::KilledOutOfRange { killed, min: min_killed, max: max_killed });
    }
    let span = cfg.height_max - cfg.height_min;
    if min_killed == max_killed {
        return Ok(cfg.height_min + span * S::half());
    }
    if killed == max_killed {
        return Ok(cfg.height_max);
    }
    let t = S::from_count(killed - min_killed) / S::from_count(max_killed - min_killed);
    Ok(cfg.height_min + span * t)
}

/// `round(100 · part / whole)`, half away from zero, clamped below by `spoke_floor`.
/// Integer arithmetic, so exact shares such as 6/100 never suffer float error.
pub fn spoke_count<S: Scalar>(part: u64, whole: u64, cfg: &EncodingConfig<S>) -> Result<u32, EncodeError> {
    if whole == 0 {
        return Err(EncodeError::ZeroWhole { part });
    }
    if part > whole {
        return Err(EncodeError::PartExceedsWhole { part, whole });
    }
    let rounded = match cfg.rounding {
        Rounding::HalfAwayFromZero => (200 * part as u128 + whole as u128) / (2 * whole as u128),
    };
    Ok((rounded as u32).max(cfg.spoke_floor))
}

pub fn inner_twist<S: Scalar>(wounded: u64, agg: &AggregateTotals, cfg: &EncodingConfig<S>) -> Result<S, EncodeError> {
    let deg = S::lit(180.0);
    let raw = match cfg.inner_twist_strategy {
        InnerTwistStrategy::Proportion => {
            if agg.total_wounded == 0 {
                return Err(EncodeError::UndefinedTwist {
                    strategy: InnerTwistStrategy::Proportion,
                    reason: "total wounded is zero",
                });
            }
            deg * S::from_count(wounded) / S::from_count(agg.total_wounded)
        }
        InnerTwistStrategy::MinMax => {
            if agg.max_wounded <= agg.min_wounded {
                return Err(EncodeError::UndefinedTwist {
                    strategy: InnerTwistStrategy::MinMax,
                    reason: "max wounded equals min wounded",
                });
            }
            let above = wounded.saturating_sub(agg.min_wounded);
            deg * S::from_count(above) / S::from_count(agg.max_wounded - agg.min_wounded)
        }
    };
    Ok(raw.max(S::zero()).min(deg))
}

/// `-180 · days_without / days_in_month` degrees.
pub fn outer_twist<S: Scalar>(days_without: u64, days_in_month: u64) -> Result<S, EncodeError> {
    if days_in_month == 0 || days_without > days_in_month {
        return Err(EncodeError::DaysOutOfRange { days: days_without, days_in_month });
    }
    if days_without == 0 {
        return Ok(S::zero());
    }
    Ok(-(S::lit(180.0) * S::from_count(days_without)) / S::from_count(days_in_month))
}

pub fn encode_month<S: Scalar>(
    rec: &MonthlyRecord,
    agg: &AggregateTotals,
    cfg: &EncodingConfig<S>,
) -> Result<SculptureParams<S>, EncodeError> {
    cfg.validate()?;
    Ok(SculptureParams {
        month: rec.month,
        height: height_for_deaths(rec.killed, agg.min_killed, agg.max_killed, cfg)?,
        inner_spoke_count: spoke_count(rec.killed, agg.total_killed, cfg)?,
        inner_twist: inner_twist(rec.wounded, agg, cfg)?,
        outer_spoke_count: spoke_count(rec.shootings, agg.total_shootings, cfg)?,
        outer_twist: outer_twist(rec.days_without_shooting as u64, rec.days_in_month as u64)?,
    })
}

/// Twelve parameter sets, January..December.
pub fn encode_year<S: Scalar>(
    ds: &YearDataset,
    cfg: &EncodingConfig<S>,
) -> Result<Vec<SculptureParams<S>>, EncodeError> {
    let agg = totals(ds);
    ds.records().iter().map(|r| encode_month(r, &agg, cfg)).collect()
}

/// Result of re-encoding one month's inner twist under a strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct StrategyTrial<S: Scalar> {
    pub strategy: InnerTwistStrategy,
    /// `None` when the strategy is undefined for this dataset.
    pub inner_twist: Option<S>,
    pub matches_target: bool,
}

/// Evaluates every inner-twist strategy for `month` against a target angle.
pub fn inner_twist_strategy_sweep<S: Scalar>(
    ds: &YearDataset,
    cfg: &EncodingConfig<S>,
    month: u32,
    target_deg: S,
    tol_deg: S,
) -> Vec<StrategyTrial<S>> {
    let agg = totals(ds);
    let Some(rec) = ds.month(month) else { return Vec::new() };
    InnerTwistStrategy::ALL
        .iter()
        .map(|&strategy| {
            let trial = EncodingConfig { inner_twist_strategy: strategy, ..*cfg };
            let twist = inner_twist(rec.wounded, &agg, &trial).ok();
            StrategyTrial {
                strategy,
                inner_twist: twist,
                matches_target: twist.is_some_and(|t| (t - target_deg).abs() <= tol_deg),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data_model::days_in_month;
    use crate::data_model::test_data::build;

    fn cfg() -> EncodingConfig<f64> {
        EncodingConfig::default()
    }

    #[test]
    fn height_endpoints_and_midpoint() {
        assert_eq!(height_for_deaths(150, 50, 150, &cfg()).unwrap(), 8.0);
        assert_eq!(height_for_deaths(50, 50, 150, &cfg()).unwrap(), 3.0);
        assert_eq!(height_for_deaths(100, 50, 150, &cfg()).unwrap(), 5.5);
        assert_eq!(height_for_deaths(7, 7, 7, &cfg()).unwrap(), 5.5);
        assert!(matches!(height_for_deaths(151, 50, 150, &cfg()), Err(EncodeError::KilledOutOfRange { .. })));
        assert!(matches!(height_for_deaths(49, 50, 150, &cfg()), Err(EncodeError::KilledOutOfRange { .. })));
    }

    #[test]
    fn spoke_anchors() {
        assert_eq!(spoke_count(6, 100, &cfg()).unwrap(), 6);
        assert_eq!(spoke_count(42, 700, &cfg()).unwrap(), 6);
        assert_eq!(spoke_count(47, 586, &cfg()).unwrap(), 8);
        assert_eq!(spoke_count(0, 586, &cfg()).unwrap(), 1);
        // 12.5% rounds up, 12.4% down
        assert_eq!(spoke_count(1, 8, &cfg()).unwrap(), 13);
        assert_eq!(spoke_count(124, 1000, &cfg()).unwrap(), 12);
        assert_eq!(spoke_count(5, 5, &cfg()).unwrap(), 100);
        assert!(matches!(spoke_count(1, 0, &cfg()), Err(EncodeError::ZeroWhole { .. })));
        assert!(matches!(spoke_count(6, 5, &cfg()), Err(EncodeError::PartExceedsWhole { .. })));
    }

    #[test]
    fn spoke_floor_configurable() {
        let c = EncodingConfig { spoke_floor: 3, ..cfg() };
        assert_eq!(spoke_count(1, 100, &c).unwrap(), 3);
        assert_eq!(spoke_count(10, 100, &c).unwrap(), 10);
    }

    fn agg(total: u64, min: u64, max: u64) -> AggregateTotals {
        AggregateTotals {
            total_shootings: 1,
            total_killed: 1,
            total_wounded: total,
            min_killed: 0,
            max_killed: 1,
            min_wounded: min,
            max_wounded: max,
        }
    }

    #[test]
    fn inner_twist_strategies() {
        assert_eq!(inner_twist(500, &agg(1000, 10, 900), &cfg()).unwrap(), 90.0);
        let mm = EncodingConfig { inner_twist_strategy: InnerTwistStrategy::MinMax, ..cfg() };
        assert_eq!(inner_twist(10, &agg(1000, 10, 900), &mm).unwrap(), 0.0);
        assert_eq!(inner_twist(900, &agg(1000, 10, 900), &mm).unwrap(), 180.0);
        let e = inner_twist(10, &agg(0, 0, 0), &cfg()).unwrap_err();
        assert!(e.to_string().contains("proportion"));
        let e = inner_twist(10, &agg(120, 10, 10), &mm).unwrap_err();
        assert!(e.to_string().contains("minmax"));
    }

    #[test]
    fn outer_twist_values() {
        assert_eq!(outer_twist::<f64>(23, 30).unwrap(), -138.0);
        assert_eq!(outer_twist::<f64>(0, 31).unwrap(), 0.0);
        assert!(outer_twist::<f64>(0, 31).unwrap().is_sign_positive());
        assert_eq!(outer_twist::<f64>(31, 31).unwrap(), -180.0);
        assert!(outer_twist::<f64>(32, 31).is_err());
        assert_eq!(outer_twist::<f32>(23, 30).unwrap(), -138.0);
    }

    #[test]
    fn april_like_record() {
        // 42/711 ≈ 5.9% of deaths, 47/586 ≈ 8.0% of shootings, 23 of 30 days shooting-free
        let ds = build(2024, |m| match m {
            4 => (47, 42, 100, 23),
            1 => (586 - 47 - 10 * 49, 711 - 42 - 10 * 60, 100, 5),
            _ => (49, 60, 100, 5),
        });
        let p = encode_year(&ds, &cfg()).unwrap();
        let april = p[3];
        assert_eq!((april.inner_spoke_count, april.outer_spoke_count, april.outer_twist), (6, 8, -138.0));
        assert_eq!(april.height, 3.0);
    }

    #[test]
    fn identical_months_get_midpoint() {
        let ds = build(2023, |m| (10, 5, 20, if days_in_month(2023, m) == 31 { 20 } else { 19 }));
        let p = encode_year(&ds, &cfg()).unwrap();
        assert!(p.iter().all(|x| x.height == 5.5 && x.inner_spoke_count == 8 && x.outer_spoke_count == 8));
        assert!(p.iter().all(|x| x.inner_twist == p[0].inner_twist));
    }

    #[test]
    fn sweep_reports_each_strategy() {
        let ds = build(2024, |m| (10, m as u64, m as u64 * 10, 3));
        let sweep = inner_twist_strategy_sweep(&ds, &cfg(), 12, 180.0, 0.5);
        assert_eq!(sweep.len(), 2);
        assert!(!sweep[0].matches_target);
        assert!(sweep[1].matches_target);
    }

    #[test]
    fn zero_wounded_year_fails_proportion() {
        let ds = build(2024, |_| (10, 5, 0, 3));
        assert!(matches!(encode_year(&ds, &cfg()), Err(EncodeError::UndefinedTwist { .. })));
    }
}
