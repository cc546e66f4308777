//! Sequential fixed-budget learners.
//!
//! Every learner follows the same protocol: each round it [`select`]s an arm
//! (and reports the probability with which that arm was drawn), it then
//! [`observe`]s the single reward of that arm, and after the last round it
//! [`recommend`]s an arm.
//!
//! [`select`]: Learner::select
//! [`observe`]: Learner::observe
//! [`recommend`]: Learner::recommend

use std::fmt;
use std::str::FromStr;

use crate::error::{BaiError, Result};
use crate::model::ArmIndex;
use crate::rng::StreamRng;

mod elimination;
mod randomized;

pub use elimination::{
    sequential_halving_schedule, successive_rejects_schedule, PhaseSchedule, PhasedElimination,
    StaticUniform,
};
pub use randomized::{
    mixed_policy, p1_policy, rule_policy, zipf_rank_cdf, ImportanceWeightedLearner, SamplingRule,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LearnerKind {
    Rule,
    P1,
    MixedP1Rule,
    SuccessiveRejects,
    SequentialHalving,
    StaticUniform,
}

impl LearnerKind {
    pub const ALL: [LearnerKind; 6] = [
        LearnerKind::Rule,
        LearnerKind::P1,
        LearnerKind::MixedP1Rule,
        LearnerKind::SuccessiveRejects,
        LearnerKind::SequentialHalving,
        LearnerKind::StaticUniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LearnerKind::Rule => "rule",
            LearnerKind::P1 => "p1",
            LearnerKind::MixedP1Rule => "mixed",
            LearnerKind::SuccessiveRejects => "sr",
            LearnerKind::SequentialHalving => "sh",
            LearnerKind::StaticUniform => "uniform",
        }
    }

    /// Whether the learner samples at random and weights by importance.
    pub fn is_randomized(self) -> bool {
        matches!(
            self,
            LearnerKind::Rule | LearnerKind::P1 | LearnerKind::MixedP1Rule
        )
    }

    /// Smallest horizon the learner accepts for `k` arms.
    pub fn min_budget(self, k: usize) -> usize {
        match self {
            LearnerKind::Rule | LearnerKind::P1 | LearnerKind::MixedP1Rule => 1,
            LearnerKind::SuccessiveRejects => k * (k + 1) / 2,
            LearnerKind::SequentialHalving => k * ceil_log2(k),
            LearnerKind::StaticUniform => k,
        }
    }

    /// Builds a fresh learner for `k` arms and horizon `n`. Rule, P1 and
    /// the mixture are anytime and ignore `n`.
    pub fn build(self, k: usize, n: usize) -> Result<Box<dyn Learner>> {
        if k < 2 {
            return Err(BaiError::domain(format!("need at least two arms, got {k}")));
        }
        Ok(match self {
            LearnerKind::Rule => Box::new(ImportanceWeightedLearner::new(SamplingRule::Uniform, k)?),
            LearnerKind::P1 => {
                Box::new(ImportanceWeightedLearner::new(SamplingRule::RankReciprocal, k)?)
            }
            LearnerKind::MixedP1Rule => Box::new(ImportanceWeightedLearner::new(SamplingRule::Mixture, k)?),
            LearnerKind::SuccessiveRejects => {
                Box::new(PhasedElimination::new(successive_rejects_schedule(k, n)?))
            }
            LearnerKind::SequentialHalving => {
                Box::new(PhasedElimination::new(sequential_halving_schedule(k, n)?))
            }
            LearnerKind::StaticUniform => Box::new(StaticUniform::new(k, n)?),
        })
    }
}

impl fmt::Display for LearnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LearnerKind {
    type Err = BaiError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "rule" => LearnerKind::Rule,
            "p1" => LearnerKind::P1,
            "mixed" | "mixedp1rule" | "mixed-p1-rule" => LearnerKind::MixedP1Rule,
            "sr" | "successive-rejects" => LearnerKind::SuccessiveRejects,
            "sh" | "sequential-halving" => LearnerKind::SequentialHalving,
            "uniform" | "static-uniform" | "staticuniform" => LearnerKind::StaticUniform,
            other => return Err(BaiError::config(format!("unknown learner `{other}`"))),
        })
    }
}

pub(crate) fn ceil_log2(k: usize) -> usize {
    if k <= 1 {
        0
    } else {
        (usize::BITS - (k - 1).leading_zeros()) as usize
    }
}

/// An arm drawn for the current round and the probability it was drawn with
/// (1.0 for deterministic schedules).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pull {
    pub arm: ArmIndex,
    pub prob: f64,
}

pub trait Learner: Send {
    fn kind(&self) -> LearnerKind;

    fn num_arms(&self) -> usize;

    fn select(&mut self, rng: &mut StreamRng) -> Result<Pull>;

    /// Feeds back the reward of the arm returned by the last `select`.
    fn observe(&mut self, pull: Pull, reward: f64) -> Result<()>;

    fn recommend(&self) -> Result<ArmIndex>;
}

/// Read access to an oblivious reward tensor, one cell at a time.
pub trait RewardFeed {
    fn num_arms(&self) -> usize;

    /// `g_{k,t}` for zero-based arm `arm` and 1-based round `t`.
    fn reward(&mut self, arm: usize, t: usize) -> f64;
}

impl RewardFeed for crate::model::RewardMatrix {
    fn num_arms(&self) -> usize {
        crate::model::RewardMatrix::num_arms(self)
    }

    fn reward(&mut self, arm: usize, t: usize) -> f64 {
        self.get(arm, t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PullRecord {
    pub t: usize,
    pub arm: ArmIndex,
    pub prob: f64,
    pub reward: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeLog {
    pub pulls: Vec<PullRecord>,
    pub recommendation: ArmIndex,
}

impl EpisodeLog {
    /// Pull counts per zero-based arm over rounds `1..=until`.
    pub fn pull_counts(&self, k: usize, until: usize) -> Vec<usize> {
        let mut counts = vec![0; k];
        for p in self.pulls.iter().take_while(|p| p.t <= until) {
            counts[p.arm.zero_based()] += 1;
        }
        counts
    }
}

/// Plays `n` rounds of the protocol and returns the recommendation. When
/// `log` is given every pull is appended to it.
pub fn play(
    learner: &mut dyn Learner,
    feed: &mut dyn RewardFeed,
    n: usize,
    rng: &mut StreamRng,
    mut log: Option<&mut Vec<PullRecord>>,
) -> Result<ArmIndex> {
    if feed.num_arms() != learner.num_arms() {
        return Err(BaiError::domain(format!(
            "learner has {} arms, environment {}",
            learner.num_arms(),
            feed.num_arms()
        )));
    }
    if n == 0 {
        return Err(BaiError::domain("the horizon must be positive"));
    }
    for t in 1..=n {
        let pull = learner.select(rng)?;
        let reward = feed.reward(pull.arm.zero_based(), t);
        learner.observe(pull, reward)?;
        if let Some(log) = log.as_deref_mut() {
            log.push(PullRecord {
                t,
                arm: pull.arm,
                prob: pull.prob,
                reward,
            });
        }
    }
    learner.recommend()
}

/// Builds `kind` for the feed and plays a full logged episode.
pub fn run_learner(
    kind: LearnerKind,
    feed: &mut dyn RewardFeed,
    n: usize,
    rng: &mut StreamRng,
) -> Result<EpisodeLog> {
    let mut learner = kind.build(feed.num_arms(), n)?;
    let mut pulls = Vec::with_capacity(n);
    let recommendation = play(learner.as_mut(), feed, n, rng, Some(&mut pulls))?;
    Ok(EpisodeLog {
        pulls,
        recommendation,
    })
}

pub fn successive_rejects(feed: &mut dyn RewardFeed, n: usize, rng: &mut StreamRng) -> Result<EpisodeLog> {
    run_learner(LearnerKind::SuccessiveRejects, feed, n, rng)
}

pub fn sequential_halving(feed: &mut dyn RewardFeed, n: usize, rng: &mut StreamRng) -> Result<EpisodeLog> {
    run_learner(LearnerKind::SequentialHalving, feed, n, rng)
}

pub fn static_uniform(feed: &mut dyn RewardFeed, n: usize, rng: &mut StreamRng) -> Result<EpisodeLog> {
    run_learner(LearnerKind::StaticUniform, feed, n, rng)
}
