//! Deterministic-schedule baselines: Successive Rejects, Sequential Halving
//! and static uniform allocation.
//!
//! Within a phase the active arms are pulled round-robin in index order.
//! At the end of a phase the active arms are ranked by empirical mean (ties
//! towards the lower index) and only the leading `survivors` are kept.

use std::collections::VecDeque;

use super::{ceil_log2, Learner, LearnerKind, Pull};
use crate::error::{BaiError, Result};
use crate::estimators::EmpiricalMeanTally;
use crate::model::{order_by_value, ArmIndex};
use crate::rng::StreamRng;

/// Per-phase pull budgets of an elimination schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSchedule {
    pub learner: LearnerKind,
    pub num_arms: usize,
    pub horizon: usize,
    /// Pulls of every active arm in each phase.
    pub per_arm: Vec<usize>,
    /// Active arms in each phase.
    pub active: Vec<usize>,
    /// Arms kept after each phase.
    pub survivors: Vec<usize>,
    /// Rounds appended to the final phase so that the total is exactly `n`.
    pub leftover: usize,
}

impl PhaseSchedule {
    pub fn total_pulls(&self) -> usize {
        self.per_arm
            .iter()
            .zip(&self.active)
            .map(|(b, a)| b * a)
            .sum::<usize>()
            + self.leftover
    }
}

fn check_budget(learner: LearnerKind, k: usize, n: usize) -> Result<()> {
    if k < 2 {
        return Err(BaiError::domain(format!("need at least two arms, got {k}")));
    }
    let required = learner.min_budget(k);
    if n < required {
        return Err(BaiError::BudgetTooSmall {
            learner: learner.name(),
            k,
            n,
            required,
        });
    }
    Ok(())
}

/// Successive Rejects: `K - 1` phases with cumulative per-arm budgets
/// `n_j = ceil((n - K) / (loḡ(K) (K + 1 - j)))`, where
/// `loḡ(K) = 1/2 + sum_{i=2}^{K} 1/i`.
pub fn successive_rejects_schedule(k: usize, n: usize) -> Result<PhaseSchedule> {
    check_budget(LearnerKind::SuccessiveRejects, k, n)?;
    let log_bar = 0.5 + (2..=k).map(|i| 1.0 / i as f64).sum::<f64>();
    let cumulative: Vec<usize> = (1..k)
        .map(|j| ((n - k) as f64 / (log_bar * (k + 1 - j) as f64)).ceil() as usize)
        .collect();
    let mut per_arm = Vec::with_capacity(k - 1);
    let mut previous = 0;
    for &c in &cumulative {
        per_arm.push(c - previous);
        previous = c;
    }
    let active: Vec<usize> = (0..k - 1).map(|j| k - j).collect();
    let survivors = active.iter().map(|a| a - 1).collect();
    let mut schedule = PhaseSchedule {
        learner: LearnerKind::SuccessiveRejects,
        num_arms: k,
        horizon: n,
        per_arm,
        active,
        survivors,
        leftover: 0,
    };
    let used = schedule.total_pulls();
    schedule.leftover = n.checked_sub(used).ok_or_else(|| {
        BaiError::domain(format!("successive rejects schedule uses {used} > {n} pulls"))
    })?;
    Ok(schedule)
}

/// Sequential Halving: `ceil(log2 K)` phases, per-arm budget
/// `floor(n / (|active| · ceil(log2 K)))`, keeping the better half (rounded up).
pub fn sequential_halving_schedule(k: usize, n: usize) -> Result<PhaseSchedule> {
    check_budget(LearnerKind::SequentialHalving, k, n)?;
    let phases = ceil_log2(k);
    let mut active = Vec::with_capacity(phases);
    let mut survivors = Vec::with_capacity(phases);
    let mut per_arm = Vec::with_capacity(phases);
    let mut current = k;
    for _ in 0..phases {
        active.push(current);
        per_arm.push(n / (current * phases));
        current = current.div_ceil(2);
        survivors.push(current);
    }
    debug_assert_eq!(current, 1);
    let mut schedule = PhaseSchedule {
        learner: LearnerKind::SequentialHalving,
        num_arms: k,
        horizon: n,
        per_arm,
        active,
        survivors,
        leftover: 0,
    };
    schedule.leftover = n - schedule.total_pulls();
    Ok(schedule)
}

/// Runs a [`PhaseSchedule`] against the rewards it observes.
pub struct PhasedElimination {
    schedule: PhaseSchedule,
    tally: EmpiricalMeanTally,
    active: Vec<usize>,
    phase: usize,
    queue: VecDeque<usize>,
}

impl PhasedElimination {
    pub fn new(schedule: PhaseSchedule) -> Self {
        let k = schedule.num_arms;
        let mut learner = PhasedElimination {
            tally: EmpiricalMeanTally::new(k),
            active: (0..k).collect(),
            phase: 0,
            queue: VecDeque::new(),
            schedule,
        };
        learner.fill_queue();
        learner
    }

    pub fn schedule(&self) -> &PhaseSchedule {
        &self.schedule
    }

    /// Zero-based arms still in the race.
    pub fn active_arms(&self) -> &[usize] {
        &self.active
    }

    pub fn tally(&self) -> &EmpiricalMeanTally {
        &self.tally
    }

    fn is_final_phase(&self) -> bool {
        self.phase + 1 == self.schedule.per_arm.len()
    }

    fn fill_queue(&mut self) {
        for _ in 0..self.schedule.per_arm[self.phase] {
            self.queue.extend(self.active.iter().copied());
        }
        if self.is_final_phase() {
            let active = &self.active;
            self.queue
                .extend((0..self.schedule.leftover).map(|i| active[i % active.len()]));
        }
    }

    fn eliminate(&mut self) -> Result<()> {
        let means = self
            .active
            .iter()
            .map(|&arm| self.tally.mean(ArmIndex::from_zero_based(arm)))
            .collect::<Result<Vec<f64>>>()?;
        let keep = self.schedule.survivors[self.phase];
        let mut kept: Vec<usize> = order_by_value(&means)
            .into_iter()
            .take(keep)
            .map(|i| self.active[i])
            .collect();
        kept.sort_unstable();
        self.active = kept;
        Ok(())
    }
}

impl Learner for PhasedElimination {
    fn kind(&self) -> LearnerKind {
        self.schedule.learner
    }

    fn num_arms(&self) -> usize {
        self.schedule.num_arms
    }

    fn select(&mut self, _rng: &mut StreamRng) -> Result<Pull> {
        while self.queue.is_empty() {
            if self.is_final_phase() {
                return Err(BaiError::domain(format!(
                    "{} schedule exhausted after {} rounds",
                    self.schedule.learner, self.schedule.horizon
                )));
            }
            self.eliminate()?;
            self.phase += 1;
            self.fill_queue();
        }
        let arm = self.queue.pop_front().expect("queue is not empty");
        Ok(Pull {
            arm: ArmIndex::from_zero_based(arm),
            prob: 1.0,
        })
    }

    fn observe(&mut self, pull: Pull, reward: f64) -> Result<()> {
        self.tally.record(pull.arm, reward)
    }

    fn recommend(&self) -> Result<ArmIndex> {
        if !self.queue.is_empty() || !self.is_final_phase() {
            return Err(BaiError::domain("recommendation requested before the budget is spent"));
        }
        let means = self
            .active
            .iter()
            .map(|&arm| self.tally.mean(ArmIndex::from_zero_based(arm)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(ArmIndex::from_zero_based(
            self.active[order_by_value(&means)[0]],
        ))
    }
}

/// Round-robin allocation of `n` pulls; with `K ∤ n` the lowest-indexed arms
/// receive one extra pull. Recommends the best empirical mean.
pub struct StaticUniform {
    tally: EmpiricalMeanTally,
    next: usize,
}

impl StaticUniform {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        check_budget(LearnerKind::StaticUniform, k, n)?;
        Ok(StaticUniform {
            tally: EmpiricalMeanTally::new(k),
            next: 0,
        })
    }

    pub fn tally(&self) -> &EmpiricalMeanTally {
        &self.tally
    }
}

impl Learner for StaticUniform {
    fn kind(&self) -> LearnerKind {
        LearnerKind::StaticUniform
    }

    fn num_arms(&self) -> usize {
        self.tally.pull_counts().len()
    }

    fn select(&mut self, _rng: &mut StreamRng) -> Result<Pull> {
        let arm = self.next;
        self.next = (self.next + 1) % self.num_arms();
        Ok(Pull {
            arm: ArmIndex::from_zero_based(arm),
            prob: 1.0,
        })
    }

    fn observe(&mut self, pull: Pull, reward: f64) -> Result<()> {
        self.tally.record(pull.arm, reward)
    }

    fn recommend(&self) -> Result<ArmIndex> {
        let means = (0..self.num_arms())
            .map(|arm| self.tally.mean(ArmIndex::from_zero_based(arm)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(ArmIndex::from_zero_based(order_by_value(&means)[0]))
    }
}
