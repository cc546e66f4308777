//! Cumulative-gain estimators.
//!
//! [`ImportanceWeightedTally`] keeps `G̃_{k,t} = Σ g_{k,t'} 1{I_t' = k} / p_{k,t'}`,
//! which is unbiased for the cumulative gain whatever the adversary does, as
//! long as the probability recorded with each pull is the one it was drawn
//! from. [`EmpiricalMeanTally`] keeps per-arm reward sums and pull counts for
//! the elimination baselines.

use crate::error::{BaiError, Result};
use crate::model::{order_by_value, ArmIndex, ProbabilityVector};

fn check_reward(reward: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&reward) {
        return Err(BaiError::domain(format!("reward {reward} outside [0, 1]")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImportanceWeightedTally {
    totals: Vec<f64>,
    rounds_seen: usize,
}

impl ImportanceWeightedTally {
    pub fn new(k: usize) -> Self {
        ImportanceWeightedTally {
            totals: vec![0.0; k],
            rounds_seen: 0,
        }
    }

    /// Adds `reward / probs[pulled]` to the pulled arm.
    pub fn update(&mut self, pulled: ArmIndex, reward: f64, probs: &ProbabilityVector) -> Result<()> {
        self.record(pulled, reward, probs.get(pulled))
    }

    /// Same as [`update`](Self::update) when only the pulled arm's
    /// probability is at hand.
    pub fn record(&mut self, pulled: ArmIndex, reward: f64, prob: f64) -> Result<()> {
        check_reward(reward)?;
        if !(prob > 0.0 && prob <= 1.0) {
            return Err(BaiError::domain(format!("pull probability {prob}")));
        }
        if reward > 0.0 {
            self.totals[pulled.zero_based()] += reward / prob;
        }
        self.rounds_seen += 1;
        Ok(())
    }

    pub fn totals(&self) -> &[f64] {
        &self.totals
    }

    pub fn total(&self, arm: ArmIndex) -> f64 {
        self.totals[arm.zero_based()]
    }

    pub fn rounds_seen(&self) -> usize {
        self.rounds_seen
    }

    pub fn num_arms(&self) -> usize {
        self.totals.len()
    }

    /// `argmax_k G̃_k`, ties by ascending index (all-zero totals give arm 1).
    pub fn leader(&self) -> ArmIndex {
        ArmIndex::from_zero_based(order_by_value(&self.totals)[0])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMeanTally {
    reward_sums: Vec<f64>,
    pull_counts: Vec<usize>,
    rounds_seen: usize,
}

impl EmpiricalMeanTally {
    pub fn new(k: usize) -> Self {
        EmpiricalMeanTally {
            reward_sums: vec![0.0; k],
            pull_counts: vec![0; k],
            rounds_seen: 0,
        }
    }

    pub fn record(&mut self, pulled: ArmIndex, reward: f64) -> Result<()> {
        check_reward(reward)?;
        let k = pulled.zero_based();
        self.reward_sums[k] += reward;
        self.pull_counts[k] += 1;
        self.rounds_seen += 1;
        Ok(())
    }

    pub fn reward_sums(&self) -> &[f64] {
        &self.reward_sums
    }

    pub fn pull_counts(&self) -> &[usize] {
        &self.pull_counts
    }

    pub fn rounds_seen(&self) -> usize {
        self.rounds_seen
    }

    /// Plain empirical mean `sum / T_k`.
    pub fn mean(&self, arm: ArmIndex) -> Result<f64> {
        let k = arm.zero_based();
        match self.pull_counts[k] {
            0 => Err(BaiError::NeverPulled(arm)),
            count => Ok(self.reward_sums[k] / count as f64),
        }
    }

    /// `Ĝ_k = n · sum / T_k`, the mean rescaled to a cumulative gain over `n` rounds.
    pub fn scaled_estimate(&self, arm: ArmIndex, horizon: usize) -> Result<f64> {
        Ok(horizon as f64 * self.mean(arm)?)
    }
}
