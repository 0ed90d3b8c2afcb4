//! Synthetic seasonal data with linear growth and multiplicative noise.

use thiserror::Error;

use crate::rng::StreamRng;
use crate::series::SeasonalSeries;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid generator parameters: {0}")]
pub struct InvalidParams(pub String);

#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    pub seed: u64,
    pub cycles: usize,
    pub period: usize,
    pub base: f64,
    /// Added to the cycle level once per cycle.
    pub growth: f64,
    /// Largest deviation of the seasonal pattern from 1, in `[0, 1)`.
    pub pattern_spread: f64,
    /// Half-width of the uniform multiplicative noise, in `[0, 0.2]`.
    pub noise: f64,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self {
            seed: 7,
            cycles: 9,
            period: 6,
            base: 1000.0,
            growth: 40.0,
            pattern_spread: 0.25,
            noise: 0.05,
        }
    }
}

/// Mean-one pattern: a centred triangle wave scaled so its largest deviation
/// from 1 is `spread`.
pub fn seasonal_pattern(period: usize, spread: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..period)
        .map(|k| (2.0 * k as f64 / period as f64 - 1.0).abs())
        .collect();
    let centre = raw.iter().sum::<f64>() / period as f64;
    let max_dev = raw.iter().map(|r| (r - centre).abs()).fold(0.0, f64::max);
    raw.iter()
        .map(|r| {
            if max_dev == 0.0 {
                1.0
            } else {
                1.0 + spread * (r - centre) / max_dev
            }
        })
        .collect()
}

/// `y[j·L + k] = (base + growth·j) · s[k] · (1 + ε)`, with `ε` drawn uniformly
/// from `[-noise, noise)` (one draw per point, in order). Points are labelled
/// `cycle-position`, both one-based.
pub fn synth_generate(params: &SynthParams) -> Result<SeasonalSeries, InvalidParams> {
    let SynthParams {
        seed,
        cycles,
        period,
        base,
        growth,
        pattern_spread,
        noise,
    } = *params;
    let bad = |msg: String| Err(InvalidParams(msg));
    if cycles < 3 {
        return bad(format!("cycles must be at least 3, got {cycles}"));
    }
    if period < 2 {
        return bad(format!("period must be at least 2, got {period}"));
    }
    if !(base > 0.0 && base.is_finite()) {
        return bad(format!("base must be positive, got {base}"));
    }
    if !growth.is_finite() || base + growth * (cycles - 1) as f64 <= 0.0 {
        return bad(format!("growth {growth} drives the level non-positive"));
    }
    if !(0.0..1.0).contains(&pattern_spread) {
        return bad(format!("pattern_spread must be in [0, 1), got {pattern_spread}"));
    }
    if !(0.0..=0.2).contains(&noise) {
        return bad(format!("noise must be in [0, 0.2], got {noise}"));
    }

    let pattern = seasonal_pattern(period, pattern_spread);
    let mut rng = StreamRng::new(seed);
    let mut values = Vec::with_capacity(cycles * period);
    let mut labels = Vec::with_capacity(cycles * period);
    for j in 0..cycles {
        let level = base + growth * j as f64;
        for (k, s) in pattern.iter().enumerate() {
            let eps = if noise > 0.0 { rng.uniform(-noise, noise) } else { 0.0 };
            values.push(level * s * (1.0 + eps));
            labels.push(format!("{}-{}", j + 1, k + 1));
        }
    }
    SeasonalSeries::new(values, period, labels).map_err(|e| InvalidParams(e.to_string()))
}
