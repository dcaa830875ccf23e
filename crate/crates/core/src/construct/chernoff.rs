//! Monte Carlo check of the tail bound `Pr(X >= 6x) <= e^{-x}` for `x >= E(X)/3`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::per_trial;
use crate::error::{invalid, Result};
use crate::sampling::rng_from_seed;

/// Trials simulated per derived seed.
const BLOCK: u64 = 1024;

/// A sum of independent variables in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum BoundedSum {
    Bernoulli { count: usize, p: f64 },
    Constant { count: usize, value: f64 },
    Uniform { count: usize },
}

impl BoundedSum {
    pub fn mean(&self) -> f64 {
        match *self {
            Self::Bernoulli { count, p } => count as f64 * p,
            Self::Constant { count, value } => count as f64 * value,
            Self::Uniform { count } => count as f64 / 2.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::Bernoulli { p, .. } => (0.0..=1.0).contains(&p),
            Self::Constant { value, .. } => (0.0..=1.0).contains(&value),
            Self::Uniform { .. } => true,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid("variables must take values in [0, 1]"))
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Bernoulli { count, p } => (0..count).filter(|_| rng.random_bool(p)).count() as f64,
            Self::Constant { count, value } => count as f64 * value,
            Self::Uniform { count } => (0..count).map(|_| rng.random::<f64>()).sum(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChernoffCheck {
    pub trials: u64,
    pub mean: f64,
    /// Observed frequency of `X >= 6x`.
    pub empirical: f64,
    /// `e^{-x}`.
    pub bound: f64,
    /// Standard error of a frequency with success probability `bound`.
    pub sigma: f64,
    /// `empirical <= bound + 3 sigma`.
    pub holds: bool,
}

pub fn chernoff_tail_check(
    trials: u64,
    dist: BoundedSum,
    x_param: f64,
    seed: u64,
) -> Result<ChernoffCheck> {
    dist.validate()?;
    if trials == 0 {
        return Err(invalid("trials must be positive"));
    }
    let mean = dist.mean();
    if !(x_param.is_finite() && x_param >= mean / 3.0) {
        return Err(invalid(format!(
            "need x >= E(X) / 3 = {}, got {x_param}",
            mean / 3.0
        )));
    }
    let threshold = 6.0 * x_param;
    let blocks = trials.div_ceil(BLOCK);
    let hits: u64 = per_trial(blocks, seed, |s| {
        let mut rng = rng_from_seed(s);
        (0..BLOCK).filter(|_| dist.sample(&mut rng) >= threshold).count() as u64
    })
    .into_iter()
    .sum();
    let total = blocks * BLOCK;
    let empirical = hits as f64 / total as f64;
    let bound = (-x_param).exp();
    let sigma = (bound * (1.0 - bound) / total as f64).sqrt();
    Ok(ChernoffCheck {
        trials: total,
        mean,
        empirical,
        bound,
        sigma,
        holds: empirical <= bound + 3.0 * sigma,
    })
}
