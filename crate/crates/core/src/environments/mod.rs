//! Reward sources.
//!
//! Every source is oblivious: for a given [`RngStream`] the whole K×n reward
//! tensor is fixed before the game starts. Cells are generated on demand from
//! a counter-based uniform `u(k, t)`, so reading them in the order a learner
//! happens to pull them gives exactly the tensor [`realize`] materializes.

use std::fs;
use std::path::Path;

use crate::error::{BaiError, Result};
use crate::learners::RewardFeed;
use crate::model::{ArmIndex, GapProfile, HindsightGaps, RewardMatrix};
use crate::rng::{CellSampler, RngStream};

mod adversary;
mod presets;

pub use adversary::{
    deception_adversary, estimate_low_pull_arm, pull_count_profile, switch_adversary_pair,
    two_phase_adversary_pair, AdversaryBlueprint, SwitchPair, TwoPhasePair,
};
pub use presets::{preset, PresetOptions, SetupCGaps, SetupEMode, SetupId};

#[derive(Debug, Clone, PartialEq)]
pub enum RewardSource {
    /// i.i.d. Bernoulli rewards.
    Bernoulli { means: Vec<f64> },
    /// Bar-k follows an early Bernoulli mean up to the switch round and a
    /// late Bernoulli mean afterwards; the other arms keep their base means.
    SwitchAdversary(AdversaryBlueprint),
    /// Bernoulli up to the switch round (bar-k at its early mean), then
    /// deterministic: bar-k receives the late value, every other arm 0.
    TwoPhaseAdversary(AdversaryBlueprint),
    /// All rewards are 0 up to `blackout_until`, Bernoulli afterwards.
    DeceptionAdversary { means: Vec<f64>, blackout_until: usize },
    FixedMatrix(RewardMatrix),
}

fn check_means(means: &[f64]) -> Result<()> {
    if means.len() < 2 {
        return Err(BaiError::domain("need at least two arms"));
    }
    if let Some(bad) = means.iter().find(|m| !(0.0..=1.0).contains(*m)) {
        return Err(BaiError::domain(format!("mean {bad} outside [0, 1]")));
    }
    Ok(())
}

fn bernoulli(mean: f64, u: f64) -> f64 {
    if u < mean {
        1.0
    } else {
        0.0
    }
}

enum Cell {
    Bernoulli(f64),
    Fixed(f64),
}

pub fn bernoulli_source(means: &[f64]) -> Result<RewardSource> {
    check_means(means)?;
    Ok(RewardSource::Bernoulli {
        means: means.to_vec(),
    })
}

impl RewardSource {
    pub fn kind_name(&self) -> &'static str {
        match self {
            RewardSource::Bernoulli { .. } => "bernoulli",
            RewardSource::SwitchAdversary(_) => "switch",
            RewardSource::TwoPhaseAdversary(_) => "two-phase",
            RewardSource::DeceptionAdversary { .. } => "deception",
            RewardSource::FixedMatrix(_) => "matrix",
        }
    }

    pub fn num_arms(&self) -> usize {
        match self {
            RewardSource::Bernoulli { means } | RewardSource::DeceptionAdversary { means, .. } => {
                means.len()
            }
            RewardSource::SwitchAdversary(b) | RewardSource::TwoPhaseAdversary(b) => {
                b.base_means.len()
            }
            RewardSource::FixedMatrix(m) => m.num_arms(),
        }
    }

    /// Longest game the source is defined for, if it has one.
    pub fn horizon(&self) -> Option<usize> {
        match self {
            RewardSource::SwitchAdversary(b) | RewardSource::TwoPhaseAdversary(b) => Some(b.horizon),
            RewardSource::DeceptionAdversary { .. } | RewardSource::Bernoulli { .. } => None,
            RewardSource::FixedMatrix(m) => Some(m.horizon()),
        }
    }

    /// Whether rewards are i.i.d. across rounds.
    pub fn is_stochastic(&self) -> bool {
        matches!(self, RewardSource::Bernoulli { .. })
    }

    pub fn check_horizon(&self, n: usize) -> Result<()> {
        match self.horizon() {
            Some(h) if n > h => Err(BaiError::domain(format!(
                "{} source is defined for {h} rounds, asked for {n}",
                self.kind_name()
            ))),
            _ => Ok(()),
        }
    }

    fn cell(&self, arm: usize, t: usize) -> Cell {
        match self {
            RewardSource::Bernoulli { means } => Cell::Bernoulli(means[arm]),
            RewardSource::SwitchAdversary(b) => {
                if arm != b.bar_k.zero_based() {
                    Cell::Bernoulli(b.base_means[arm])
                } else if t <= b.switch_round {
                    Cell::Bernoulli(b.early_mean)
                } else {
                    Cell::Bernoulli(b.late_value)
                }
            }
            RewardSource::TwoPhaseAdversary(b) => {
                let is_bar = arm == b.bar_k.zero_based();
                match (t <= b.switch_round, is_bar) {
                    (true, true) => Cell::Bernoulli(b.early_mean),
                    (true, false) => Cell::Bernoulli(b.base_means[arm]),
                    (false, true) => Cell::Fixed(b.late_value),
                    (false, false) => Cell::Fixed(0.0),
                }
            }
            RewardSource::DeceptionAdversary {
                means,
                blackout_until,
            } => {
                if t <= *blackout_until {
                    Cell::Fixed(0.0)
                } else {
                    Cell::Bernoulli(means[arm])
                }
            }
            RewardSource::FixedMatrix(m) => Cell::Fixed(m.get(arm, t)),
        }
    }

    /// Expected reward of a cell.
    pub fn expected_reward(&self, arm: usize, t: usize) -> f64 {
        match self.cell(arm, t) {
            Cell::Bernoulli(mean) | Cell::Fixed(mean) => mean,
        }
    }

    /// Expected cumulative gain of each arm over `n` rounds.
    pub fn expected_gains(&self, n: usize) -> Vec<f64> {
        (0..self.num_arms())
            .map(|arm| (1..=n).map(|t| self.expected_reward(arm, t)).sum())
            .collect()
    }

    /// Gap profile of the per-round average expected rewards over `n`
    /// rounds; for a Bernoulli source this is the profile of its means.
    pub fn expected_profile(&self, n: usize) -> Result<GapProfile> {
        match self {
            RewardSource::Bernoulli { means } => GapProfile::from_means(means),
            _ => {
                let avg: Vec<f64> = self
                    .expected_gains(n)
                    .into_iter()
                    .map(|g| g / n as f64)
                    .collect();
                GapProfile::from_means(&avg)
            }
        }
    }

    /// The reward tensor this source produces under `stream`.
    pub fn stream(&self, stream: RngStream) -> RewardStream<'_> {
        RewardStream {
            source: self,
            cells: stream.reward_cells(),
        }
    }

    /// Arm the learner is scored against: the arm with the highest mean for
    /// a stochastic source, otherwise the best arm in hindsight of the
    /// realized first `n` columns.
    pub fn ground_truth(&self, stream: RngStream, n: usize) -> Result<ArmIndex> {
        match self {
            RewardSource::Bernoulli { means } => Ok(GapProfile::from_means(means)?.best_arm()),
            _ => Ok(HindsightGaps::from_matrix(&realize(self, stream, n)?)?.best_arm()),
        }
    }

    /// Every arm attaining the highest mean (stochastic) or the highest
    /// realized cumulative gain over `n` rounds.
    pub fn best_arms(&self, stream: RngStream, n: usize) -> Result<Vec<ArmIndex>> {
        let values = match self {
            RewardSource::Bernoulli { means } => means.clone(),
            _ => realize(self, stream, n)?.row_sums(),
        };
        let top = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == top)
            .map(|(k, _)| ArmIndex::from_zero_based(k))
            .collect())
    }
}

/// A source bound to one random stream. Implements [`RewardFeed`].
pub struct RewardStream<'a> {
    source: &'a RewardSource,
    cells: CellSampler,
}

impl RewardStream<'_> {
    pub fn source(&self) -> &RewardSource {
        self.source
    }
}

impl RewardFeed for RewardStream<'_> {
    fn num_arms(&self) -> usize {
        self.source.num_arms()
    }

    fn reward(&mut self, arm: usize, t: usize) -> f64 {
        match self.source.cell(arm, t) {
            Cell::Fixed(g) => g,
            Cell::Bernoulli(mean) => bernoulli(mean, self.cells.uniform(arm, t)),
        }
    }
}

/// Materializes the first `n` columns of the tensor.
pub fn realize(source: &RewardSource, stream: RngStream, n: usize) -> Result<RewardMatrix> {
    source.check_horizon(n)?;
    let mut feed = source.stream(stream);
    Ok(RewardMatrix::from_fn(source.num_arms(), n, |arm, t| {
        feed.reward(arm, t)
    }))
}

/// Parses K rows × n columns of comma-separated rewards in `[0, 1]`, no header.
pub fn matrix_from_csv_str(text: &str) -> Result<RewardMatrix> {
    let mut rows = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                cell.trim().parse::<f64>().map_err(|e| {
                    BaiError::domain(format!("line {}: `{}`: {e}", line_no + 1, cell.trim()))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    RewardMatrix::from_rows(rows)
}

pub fn matrix_from_csv_path(path: impl AsRef<Path>) -> Result<RewardMatrix> {
    matrix_from_csv_str(&fs::read_to_string(path)?)
}

pub fn fixed_matrix_source(matrix: RewardMatrix) -> Result<RewardSource> {
    if matrix.num_arms() < 2 {
        return Err(BaiError::domain("need at least two arms"));
    }
    Ok(RewardSource::FixedMatrix(matrix))
}
