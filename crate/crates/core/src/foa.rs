//! Fruit-fly optimization over scalar parameters.
//!
//! Each parameter has its own swarm, located at a point in the plane. Every
//! generation a swarm releases `sizepop` flies at uniform offsets in
//! `[-flight_range, flight_range)` around its location. A fly's parameter
//! value is its smell-concentration judgment value, the inverse of its
//! distance to the origin clamped into `[JUDGMENT_FLOOR, 1]`. Candidate `i`
//! takes fly `i` from every swarm. Fitness is minimized. After each
//! generation every swarm moves to its fly in that generation's best
//! candidate (unless every candidate was rejected), while the best candidate
//! seen so far is kept separately and returned.
//!
//! Random draw order is fixed: initial locations swarm by swarm (`x` then
//! `y`), then per generation all offsets of swarm 0 fly by fly (`x` then
//! `y`), then swarm 1, and so on. All draws of a generation happen before
//! any objective call, so parallel evaluation does not change results.

use thiserror::Error;

use crate::exec::Execution;
use crate::rng::StreamRng;

/// Lower clamp for judgment values; keeps parameters away from exactly zero.
pub const JUDGMENT_FLOOR: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FoaError {
    #[error("fly at the origin has no judgment value")]
    OriginSingularity,
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error("seed candidate has {got} values for {expected} parameters")]
    SeedLength { expected: usize, got: usize },
    #[error("seed candidate value {0} is outside [{JUDGMENT_FLOOR}, 1]")]
    SeedOutOfRange(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoaConfig {
    /// Flies per swarm per generation.
    pub sizepop: usize,
    /// Generation budget.
    pub maxgen: usize,
    /// Half-width of the per-fly offset on each coordinate.
    pub flight_range: f64,
    /// Initial swarm locations are uniform in `[init_low, init_high)` on both axes.
    pub init_low: f64,
    pub init_high: f64,
    pub seed: u64,
    /// Stop after this many consecutive generations without strict improvement.
    pub patience: Option<usize>,
    pub execution: Execution,
}

impl Default for FoaConfig {
    fn default() -> Self {
        Self {
            sizepop: 50,
            maxgen: 20,
            flight_range: 1.0,
            init_low: 0.0,
            init_high: 1.0,
            seed: 2020,
            patience: None,
            execution: Execution::default(),
        }
    }
}

impl FoaConfig {
    pub fn validate(&self) -> Result<(), FoaError> {
        let bad = |msg: &str| Err(FoaError::InvalidConfig(msg.to_owned()));
        if self.sizepop == 0 {
            return bad("sizepop must be at least 1");
        }
        if self.maxgen == 0 {
            return bad("maxgen must be at least 1");
        }
        if !(self.flight_range > 0.0 && self.flight_range.is_finite()) {
            return bad("flight_range must be positive and finite");
        }
        if !(self.init_low < self.init_high)
            || !self.init_low.is_finite()
            || !self.init_high.is_finite()
        {
            return bad("init_low must be below init_high");
        }
        if self.patience == Some(0) {
            return bad("patience must be at least 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlyPosition {
    pub x: f64,
    pub y: f64,
}

impl FlyPosition {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// A position whose judgment value is `value` (for `value` in `(0, 1]`).
    pub fn encoding(value: f64) -> Self {
        Self { x: 1.0 / value, y: 0.0 }
    }
}

/// `clamp(1 / sqrt(x² + y²), JUDGMENT_FLOOR, 1)`.
pub fn judgment_value(position: FlyPosition) -> Result<f64, FoaError> {
    let FlyPosition { x, y } = position;
    if x == 0.0 && y == 0.0 {
        return Err(FoaError::OriginSingularity);
    }
    let dist = (x * x + y * y).sqrt();
    Ok((1.0 / dist).clamp(JUDGMENT_FLOOR, 1.0))
}

/// `sizepop` flies scattered around `origin`, two draws per fly.
pub fn spawn_generation(
    origin: FlyPosition,
    config: &FoaConfig,
    rng: &mut StreamRng,
) -> Vec<FlyPosition> {
    let r = config.flight_range;
    (0..config.sizepop)
        .map(|_| {
            let dx = rng.uniform(-r, r);
            let dy = rng.uniform(-r, r);
            FlyPosition::new(origin.x + dx, origin.y + dy)
        })
        .collect()
}

/// Best-so-far snapshot taken at the end of a generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationBest {
    /// Best fitness seen up to and including this generation.
    pub fitness: f64,
    /// Lowest fitness among this generation's candidates.
    pub generation_fitness: f64,
    /// Parameter values of the best-so-far candidate.
    pub judgment_values: Vec<f64>,
    /// Fly positions of the best-so-far candidate, one per parameter.
    pub positions: Vec<FlyPosition>,
    /// Swarm locations at the end of the generation (the search route).
    pub swarm_locations: Vec<FlyPosition>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedCandidate {
    pub generation: usize,
    pub params: Vec<f64>,
    /// `f64::INFINITY` when the objective rejected the candidate.
    pub fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationTrace {
    pub best_per_generation: Vec<GenerationBest>,
    pub generations_run: usize,
    pub candidates: Vec<EvaluatedCandidate>,
}

impl OptimizationTrace {
    pub fn evaluations(&self) -> usize {
        self.candidates.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoaOutcome {
    pub best: Vec<f64>,
    pub best_fitness: f64,
    pub trace: OptimizationTrace,
}

/// Minimizes `objective` over `n_params` values in `[JUDGMENT_FLOOR, 1]`.
///
/// Objective errors and NaN results count as infinitely bad fitness.
pub fn run_foa<F, E>(objective: F, n_params: usize, config: &FoaConfig) -> Result<FoaOutcome, FoaError>
where
    F: Fn(&[f64]) -> Result<f64, E> + Sync + Send,
{
    run_foa_seeded(objective, n_params, config, None)
}

/// Like [`run_foa`], but candidate 0 of the first generation is replaced by
/// `seed_candidate`. Its swarm positions are the points on the positive
/// x-axis that encode those values.
pub fn run_foa_seeded<F, E>(
    objective: F,
    n_params: usize,
    config: &FoaConfig,
    seed_candidate: Option<&[f64]>,
) -> Result<FoaOutcome, FoaError>
where
    F: Fn(&[f64]) -> Result<f64, E> + Sync + Send,
{
    config.validate()?;
    if n_params == 0 {
        return Err(FoaError::InvalidConfig("at least one parameter is required".into()));
    }
    if let Some(seed) = seed_candidate {
        if seed.len() != n_params {
            return Err(FoaError::SeedLength {
                expected: n_params,
                got: seed.len(),
            });
        }
        if let Some(&v) = seed.iter().find(|v| !(JUDGMENT_FLOOR..=1.0).contains(*v)) {
            return Err(FoaError::SeedOutOfRange(v));
        }
    }

    let mut rng = StreamRng::new(config.seed);
    let mut origins: Vec<FlyPosition> = (0..n_params)
        .map(|_| {
            let x = rng.uniform(config.init_low, config.init_high);
            let y = rng.uniform(config.init_low, config.init_high);
            FlyPosition::new(x, y)
        })
        .collect();

    let mut best: Option<(Vec<f64>, Vec<FlyPosition>)> = None;
    let mut best_fitness = f64::INFINITY;
    let mut stale = 0usize;
    let mut trace = OptimizationTrace {
        best_per_generation: Vec::with_capacity(config.maxgen),
        generations_run: 0,
        candidates: Vec::with_capacity(config.maxgen * config.sizepop),
    };

    for generation in 0..config.maxgen {
        // swarm-major: flies[s][i] is fly i of swarm s
        let mut flies: Vec<Vec<FlyPosition>> = origins
            .iter()
            .map(|&origin| spawn_generation(origin, config, &mut rng))
            .collect();

        let mut candidates: Vec<Option<Vec<f64>>> = (0..config.sizepop)
            .map(|i| {
                flies
                    .iter()
                    .map(|swarm| judgment_value(swarm[i]).ok())
                    .collect()
            })
            .collect();

        if generation == 0 {
            if let Some(seed) = seed_candidate {
                for (swarm, &value) in flies.iter_mut().zip(seed) {
                    swarm[0] = FlyPosition::encoding(value);
                }
                candidates[0] = Some(seed.to_vec());
            }
        }

        let fitness: Vec<f64> = config.execution.map(&candidates, |candidate| match candidate {
            Some(params) => match objective(params) {
                Ok(f) if !f.is_nan() => f,
                _ => f64::INFINITY,
            },
            None => f64::INFINITY,
        });

        // lowest index wins ties
        let (winner, &generation_fitness) = fitness
            .iter()
            .enumerate()
            .fold((0, &fitness[0]), |acc, (i, f)| if *f < *acc.1 { (i, f) } else { acc });

        let positions: Vec<FlyPosition> = flies.iter().map(|swarm| swarm[winner]).collect();
        if generation_fitness.is_finite() {
            origins.clone_from(&positions);
        }
        if generation_fitness < best_fitness || best.is_none() {
            let params = candidates[winner]
                .clone()
                .unwrap_or_else(|| vec![JUDGMENT_FLOOR; n_params]);
            stale = if generation_fitness < best_fitness { 0 } else { stale + 1 };
            best_fitness = best_fitness.min(generation_fitness);
            best = Some((params, positions));
        } else {
            stale += 1;
        }

        for (params, f) in candidates.into_iter().zip(&fitness) {
            trace.candidates.push(EvaluatedCandidate {
                generation,
                params: params.unwrap_or_default(),
                fitness: *f,
            });
        }
        let (params, positions) = best.clone().expect("set in the first generation");
        trace.best_per_generation.push(GenerationBest {
            fitness: best_fitness,
            generation_fitness,
            judgment_values: params,
            positions,
            swarm_locations: origins.clone(),
        });
        trace.generations_run += 1;

        if config.patience.is_some_and(|p| stale >= p) {
            break;
        }
    }

    let (best, _) = best.expect("at least one generation ran");
    Ok(FoaOutcome {
        best,
        best_fitness,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn abs_objective(target: f64) -> impl Fn(&[f64]) -> Result<f64, Infallible> + Sync + Send {
        move |p: &[f64]| Ok((p[0] - target).abs())
    }

    #[test]
    fn judgment_examples() {
        assert!((judgment_value(FlyPosition::new(3.0, 4.0)).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(judgment_value(FlyPosition::new(1.0, 0.0)).unwrap(), 1.0);
        assert_eq!(judgment_value(FlyPosition::new(0.5, 0.0)).unwrap(), 1.0);
        assert_eq!(judgment_value(FlyPosition::new(1e6, 0.0)).unwrap(), JUDGMENT_FLOOR);
        assert_eq!(
            judgment_value(FlyPosition::new(0.0, 0.0)).unwrap_err(),
            FoaError::OriginSingularity
        );
    }

    #[test]
    fn encoding_round_trips_judgment() {
        for v in [0.2, 0.1, 0.6, 1.0, 0.37] {
            let j = judgment_value(FlyPosition::encoding(v)).unwrap();
            assert!((j - v).abs() < 1e-15);
        }
    }

    #[test]
    fn spawn_counts_and_zero_range() {
        let mut rng = StreamRng::new(1);
        let origin = FlyPosition::new(0.3, 0.7);
        let config = FoaConfig::default();
        assert_eq!(spawn_generation(origin, &config, &mut rng).len(), 50);

        let still = FoaConfig {
            flight_range: 0.0,
            sizepop: 7,
            ..FoaConfig::default()
        };
        let flies = spawn_generation(origin, &still, &mut rng);
        assert!(flies.iter().all(|f| *f == origin));
    }

    #[test]
    fn spawn_is_deterministic_and_bounded() {
        let config = FoaConfig::default();
        let origin = FlyPosition::new(2.0, -1.0);
        let a = spawn_generation(origin, &config, &mut StreamRng::new(9));
        let b = spawn_generation(origin, &config, &mut StreamRng::new(9));
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|f| (f.x - 2.0).abs() <= 1.0 && (f.y + 1.0).abs() <= 1.0));
    }

    #[test]
    fn single_generation_run() {
        let config = FoaConfig {
            maxgen: 1,
            ..FoaConfig::default()
        };
        let out = run_foa(abs_objective(0.5), 1, &config).unwrap();
        assert_eq!(out.trace.generations_run, 1);
        let min = out
            .trace
            .candidates
            .iter()
            .map(|c| c.fitness)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(out.best_fitness, min);
        assert_eq!(out.trace.best_per_generation[0].fitness, min);
    }

    #[test]
    fn finds_scalar_target() {
        let out = run_foa(abs_objective(0.2), 1, &FoaConfig::default()).unwrap();
        // exhaustive scan on a 0.001 grid puts the optimum at 0.2
        let grid_best = (1..=1000)
            .map(|k| k as f64 / 1000.0)
            .min_by(|a, b| (a - 0.2).abs().total_cmp(&(b - 0.2).abs()))
            .unwrap();
        assert!((out.best[0] - grid_best).abs() < 0.05, "got {}", out.best[0]);
    }

    #[test]
    fn counts_every_evaluation() {
        let calls = AtomicUsize::new(0);
        let config = FoaConfig {
            sizepop: 13,
            maxgen: 4,
            ..FoaConfig::default()
        };
        let out = run_foa(
            |p: &[f64]| {
                calls.fetch_add(1, Ordering::Relaxed);
                if p[0] > 0.9 {
                    Err("reject")
                } else {
                    Ok(p[0] + p[1])
                }
            },
            2,
            &config,
        )
        .unwrap();
        assert_eq!(out.trace.evaluations(), 13 * 4);
        assert_eq!(calls.load(Ordering::Relaxed), 13 * 4);
    }

    #[test]
    fn seed_candidate_is_evaluated_exactly() {
        let seed = [0.2, 0.1, 0.6];
        let out = run_foa_seeded(
            |p: &[f64]| Ok::<_, Infallible>(p.iter().sum()),
            3,
            &FoaConfig::default(),
            Some(&seed),
        )
        .unwrap();
        assert_eq!(out.trace.candidates[0].params, seed.to_vec());
        assert!(out.best_fitness <= 0.9);
    }

    #[test]
    fn seed_candidate_validation() {
        let cfg = FoaConfig::default();
        let obj = abs_objective(0.5);
        assert!(matches!(
            run_foa_seeded(&obj, 1, &cfg, Some(&[0.5, 0.5])),
            Err(FoaError::SeedLength { .. })
        ));
        assert!(matches!(
            run_foa_seeded(&obj, 1, &cfg, Some(&[0.0])),
            Err(FoaError::SeedOutOfRange(_))
        ));
    }

    #[test]
    fn patience_stops_early() {
        let config = FoaConfig {
            patience: Some(2),
            ..FoaConfig::default()
        };
        // constant objective never strictly improves after generation 0
        let out = run_foa(|_: &[f64]| Ok::<_, Infallible>(1.0), 2, &config).unwrap();
        assert_eq!(out.trace.generations_run, 3);
    }

    #[test]
    fn all_rejected_still_returns() {
        let out = run_foa(|_: &[f64]| Err::<f64, _>("no"), 3, &FoaConfig::default()).unwrap();
        assert_eq!(out.best_fitness, f64::INFINITY);
        assert_eq!(out.best.len(), 3);
    }

    #[test]
    fn config_validation() {
        let bad = [
            FoaConfig { sizepop: 0, ..FoaConfig::default() },
            FoaConfig { maxgen: 0, ..FoaConfig::default() },
            FoaConfig { flight_range: 0.0, ..FoaConfig::default() },
            FoaConfig { init_low: 1.0, init_high: 1.0, ..FoaConfig::default() },
            FoaConfig { patience: Some(0), ..FoaConfig::default() },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(FoaError::InvalidConfig(_))), "{cfg:?}");
        }
    }
}
