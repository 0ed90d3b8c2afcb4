//! Multiplicative Holt-Winters smoothing.
//!
//! ```text
//! Level:    T_t = α y_t / S_{t-L} + (1 - α)(T_{t-1} + b_{t-1})
//! Trend:    b_t = β (T_t - T_{t-1}) + (1 - β) b_{t-1}
//! Season:   S_t = γ y_t / T_t + (1 - γ) S_{t-L}
//! Forecast: ŷ_{t+h} = (T_t + h b_t) S_{t+h-L}
//! ```
//!
//! Initialization takes the training mean as the level, a zero trend and,
//! for each period position, the mean of that position across cycles divided
//! by the level. Seasonal indices are never renormalized.

use std::collections::VecDeque;

use thiserror::Error;

use crate::series::SeasonalSeries;

/// Magnitude below which a divisor is treated as degenerate.
pub const BLOWUP_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HwError {
    #[error("training length {len} is not a multiple of the period {period}")]
    NotMultipleOfPeriod { len: usize, period: usize },
    #[error("training length {len} is shorter than two periods ({period} each)")]
    TooShort { len: usize, period: usize },
    #[error("smoothing parameter {name} = {value} is outside [0, 1]")]
    ParamOutOfRange { name: &'static str, value: f64 },
    #[error("observation {0} is not strictly positive")]
    NonPositiveObservation(f64),
    #[error("numerically degenerate state after {t} observations")]
    DivisionBlowup { t: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SmoothingParams {
    /// Defaults used by the untuned baseline.
    pub const DEFAULT: SmoothingParams = SmoothingParams {
        alpha: 0.2,
        beta: 0.1,
        gamma: 0.6,
    };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, HwError> {
        for (name, value) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(HwError::ParamOutOfRange { name, value });
            }
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// Accepts a `[alpha, beta, gamma]` slice.
    pub fn from_slice(p: &[f64]) -> Result<Self, HwError> {
        assert_eq!(p.len(), 3, "expected three smoothing parameters");
        Self::new(p[0], p[1], p[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

/// Level, trend and the last `L` seasonal indices (oldest first).
#[derive(Debug, Clone, PartialEq)]
pub struct HwState {
    level: f64,
    trend: f64,
    seasonal: VecDeque<f64>,
    t: usize,
}

impl HwState {
    /// Builds a state directly. `seasonal` is ordered oldest to newest.
    pub fn from_parts(level: f64, trend: f64, seasonal: Vec<f64>, t: usize) -> Self {
        assert!(seasonal.len() >= 2, "seasonal ring needs at least two entries");
        Self {
            level,
            trend,
            seasonal: seasonal.into(),
            t,
        }
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn trend(&self) -> f64 {
        self.trend
    }

    /// Seasonal ring, oldest entry first.
    pub fn seasonal(&self) -> Vec<f64> {
        self.seasonal.iter().copied().collect()
    }

    pub fn period(&self) -> usize {
        self.seasonal.len()
    }

    /// Number of observations absorbed since initialization.
    pub fn observations(&self) -> usize {
        self.t
    }

    pub fn step(&self, y: f64, params: SmoothingParams) -> Result<HwState, HwError> {
        let mut next = self.clone();
        next.absorb(y, params)?;
        Ok(next)
    }

    fn absorb(&mut self, y: f64, p: SmoothingParams) -> Result<(), HwError> {
        if !(y > 0.0) {
            return Err(HwError::NonPositiveObservation(y));
        }
        let blowup = HwError::DivisionBlowup { t: self.t };
        let s_old = *self.seasonal.front().expect("ring is never empty");
        if !(s_old.abs() >= BLOWUP_EPS) {
            return Err(blowup);
        }
        let level = p.alpha * y / s_old + (1.0 - p.alpha) * (self.level + self.trend);
        if !(level.abs() >= BLOWUP_EPS) || !level.is_finite() {
            return Err(blowup);
        }
        let trend = p.beta * (level - self.level) + (1.0 - p.beta) * self.trend;
        let season = p.gamma * y / level + (1.0 - p.gamma) * s_old;
        if !trend.is_finite() || !season.is_finite() {
            return Err(blowup);
        }
        self.level = level;
        self.trend = trend;
        self.seasonal.pop_front();
        self.seasonal.push_back(season);
        self.t += 1;
        Ok(())
    }
}

/// Initial state from a training series of at least two whole cycles.
pub fn initialize(train: &SeasonalSeries) -> Result<HwState, HwError> {
    let period = train.period();
    let values = train.values();
    let len = values.len();
    if len % period != 0 {
        return Err(HwError::NotMultipleOfPeriod { len, period });
    }
    if len < 2 * period {
        return Err(HwError::TooShort { len, period });
    }
    let cycles = (len / period) as f64;
    let level = values.iter().sum::<f64>() / len as f64;
    let seasonal = (0..period)
        .map(|k| {
            let position_mean =
                values.iter().skip(k).step_by(period).sum::<f64>() / cycles;
            position_mean / level
        })
        .collect();
    Ok(HwState {
        level,
        trend: 0.0,
        seasonal,
        t: 0,
    })
}

/// A state that has absorbed a whole training series.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub state: HwState,
    pub params: SmoothingParams,
    pub train_length: usize,
}

impl FittedModel {
    /// Forecasts `horizon` steps past the end of training. Horizons beyond one
    /// period reuse the final seasonal ring cyclically.
    pub fn forecast(&self, horizon: usize) -> Vec<f64> {
        let state = &self.state;
        let period = state.period();
        (1..=horizon)
            .map(|h| (state.level + state.trend * h as f64) * state.seasonal[(h - 1) % period])
            .collect()
    }
}

pub fn fit(train: &SeasonalSeries, params: SmoothingParams) -> Result<FittedModel, HwError> {
    let mut state = initialize(train)?;
    for &y in train.values() {
        state.absorb(y, params)?;
    }
    Ok(FittedModel {
        state,
        params,
        train_length: train.len(),
    })
}
