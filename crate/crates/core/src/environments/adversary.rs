//! Adversarial reward constructions.
//!
//! Both pair constructions start from a base problem with `μ_1 = 1/2` and
//! `μ_k = 1/2 - Δ_k`, and modify a single under-explored arm `bar_k`. The
//! lower-bound arguments pick that arm existentially; here it is either given
//! by the caller or estimated from simulated pull counts with
//! [`estimate_low_pull_arm`].

use rayon::prelude::*;

use super::{check_means, RewardSource};
use crate::error::{BaiError, Result};
use crate::learners::{LearnerKind, RewardFeed};
use crate::model::{ArmIndex, GapProfile, SortedGaps};
use crate::rng::RngStream;

/// Parameters of a two-segment adversary on arm `bar_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryBlueprint {
    /// `μ^BASE`.
    pub base_means: Vec<f64>,
    pub bar_k: ArmIndex,
    /// Last round of the first segment.
    pub switch_round: usize,
    /// Bernoulli mean of `bar_k` up to `switch_round`.
    pub early_mean: f64,
    /// Bar-k's late Bernoulli mean (switch) or deterministic reward (two-phase).
    pub late_value: f64,
    pub horizon: usize,
}

impl AdversaryBlueprint {
    fn validate(&self) -> Result<()> {
        check_means(&self.base_means)?;
        if self.bar_k.get() < 2 || self.bar_k.get() > self.base_means.len() {
            return Err(BaiError::domain(format!(
                "bar-k must lie in [2, {}], got {}",
                self.base_means.len(),
                self.bar_k
            )));
        }
        for (what, v) in [("early mean", self.early_mean), ("late value", self.late_value)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(BaiError::domain(format!("bar-k {what} {v} outside [0, 1]")));
            }
        }
        if self.switch_round > self.horizon {
            return Err(BaiError::domain("switch round beyond the horizon"));
        }
        Ok(())
    }
}

/// `μ_1 = 1/2`, `μ_k = 1/2 - Δ_k` from a profile whose best arm is arm 1.
fn base_means(profile: &GapProfile) -> Result<Vec<f64>> {
    if profile.best_arm().get() != 1 {
        return Err(BaiError::domain(
            "adversary constructions expect arm 1 to be the best arm",
        ));
    }
    let means: Vec<f64> = profile
        .gaps()
        .iter()
        .enumerate()
        .map(|(k, g)| if k == 0 { 0.5 } else { 0.5 - g })
        .collect();
    check_means(&means)?;
    Ok(means)
}

fn check_bar_k(bar_k: ArmIndex, k: usize) -> Result<()> {
    if bar_k.get() < 2 || bar_k.get() > k {
        return Err(BaiError::domain(format!("bar-k must lie in [2, {k}], got {bar_k}")));
    }
    Ok(())
}

/// `ceil(n · a)`, ignoring floating-point residue when `n · a` is an integer.
fn rounds_for_fraction(n: usize, a: f64) -> usize {
    let x = n as f64 * a;
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * x.max(1.0) {
        nearest as usize
    } else {
        x.ceil() as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchPair {
    /// Stationary problem where bar-k is the best arm at `1/2 + Δ_1/2`.
    pub sto: RewardSource,
    /// Bar-k at its base mean for `t <= n_i`, at `1/2 + Δ_1/2` afterwards.
    pub adv: RewardSource,
    pub blueprint: AdversaryBlueprint,
    /// `a_i = Δ_1 / Δ_(i)`.
    pub fraction: f64,
}

/// The stochastic/adversarial pair that share every arm but `bar_k`, with the
/// switch at `n_i = ceil(n · Δ_1 / Δ_(i))`.
pub fn switch_adversary_pair(
    base: &GapProfile,
    bar_k: ArmIndex,
    i: usize,
    n: usize,
) -> Result<SwitchPair> {
    let k = base.num_arms();
    check_bar_k(bar_k, k)?;
    if i < 2 || i > k {
        return Err(BaiError::domain(format!("i must lie in [2, {k}], got {i}")));
    }
    let means = base_means(base)?;
    let delta_1 = base.min_gap();
    let fraction = delta_1 / base.sorted_gaps()[i - 1];
    let switch_round = rounds_for_fraction(n, fraction).min(n);
    let boosted = 0.5 + delta_1 / 2.0;

    let blueprint = AdversaryBlueprint {
        early_mean: means[bar_k.zero_based()],
        late_value: boosted,
        base_means: means.clone(),
        bar_k,
        switch_round,
        horizon: n,
    };
    blueprint.validate()?;
    let mut sto_means = means;
    sto_means[bar_k.zero_based()] = boosted;
    check_means(&sto_means)?;
    Ok(SwitchPair {
        sto: RewardSource::Bernoulli { means: sto_means },
        adv: RewardSource::SwitchAdversary(blueprint.clone()),
        blueprint,
        fraction,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhasePair {
    pub adv1: RewardSource,
    pub adv2: RewardSource,
    pub first: AdversaryBlueprint,
    pub second: AdversaryBlueprint,
}

/// Two problems that agree everywhere except on bar-k during the first
/// `ceil(n/2)` rounds, where the second raises its mean by `2Δ_1`. After that
/// both are deterministic: bar-k receives `Δ_bar_k - Δ_1`, every other arm 0.
pub fn two_phase_adversary_pair(base: &GapProfile, bar_k: ArmIndex, n: usize) -> Result<TwoPhasePair> {
    let k = base.num_arms();
    check_bar_k(bar_k, k)?;
    let means = base_means(base)?;
    let delta_1 = base.min_gap();
    let delta_bar = base.gap(bar_k);
    let late = delta_bar - delta_1;
    if !(0.0..=1.0).contains(&late) {
        return Err(BaiError::domain(format!(
            "Δ_bar_k - Δ_1 = {late} outside [0, 1]"
        )));
    }
    let first_len = n.div_ceil(2);
    let early = means[bar_k.zero_based()];
    let first = AdversaryBlueprint {
        base_means: means,
        bar_k,
        switch_round: first_len,
        early_mean: early,
        late_value: late,
        horizon: n,
    };
    first.validate()?;
    let second = AdversaryBlueprint {
        early_mean: early + 2.0 * delta_1,
        ..first.clone()
    };
    second.validate()?;
    Ok(TwoPhasePair {
        adv1: RewardSource::TwoPhaseAdversary(first.clone()),
        adv2: RewardSource::TwoPhaseAdversary(second.clone()),
        first,
        second,
    })
}

/// Zero rewards for `t <= blackout_until`, Bernoulli(`means`) afterwards.
pub fn deception_adversary(means: &[f64], blackout_until: usize, n: usize) -> Result<RewardSource> {
    check_means(means)?;
    if blackout_until > n {
        return Err(BaiError::domain(format!(
            "blackout {blackout_until} longer than the horizon {n}"
        )));
    }
    Ok(RewardSource::DeceptionAdversary {
        means: means.to_vec(),
        blackout_until,
    })
}

/// Average number of pulls of each arm during rounds `1..=phase_end`, over
/// `reps` episodes on streams `(master_seed, 0..reps)`.
pub fn pull_count_profile(
    learner: LearnerKind,
    source: &RewardSource,
    n: usize,
    phase_end: usize,
    reps: usize,
    master_seed: u64,
) -> Result<Vec<f64>> {
    source.check_horizon(n)?;
    let k = source.num_arms();
    let totals = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let stream = RngStream::new(master_seed, rep);
            let mut agent = learner.build(k, n)?;
            let mut feed = source.stream(stream);
            let mut rng = stream.learner_rng();
            let mut counts = vec![0usize; k];
            // Only the first `phase_end` rounds matter.
            for t in 1..=phase_end.min(n) {
                let pull = agent.select(&mut rng)?;
                let reward = feed.reward(pull.arm.zero_based(), t);
                agent.observe(pull, reward)?;
                counts[pull.arm.zero_based()] += 1;
            }
            Ok(counts)
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let mut sums = vec![0usize; k];
    for counts in totals {
        for (s, c) in sums.iter_mut().zip(counts) {
            *s += c;
        }
    }
    Ok(sums.into_iter().map(|s| s as f64 / reps as f64).collect())
}

/// The arm in `[2, K]` with the fewest average pulls over rounds
/// `1..=phase_end` (ties towards the lower index).
pub fn estimate_low_pull_arm(
    learner: LearnerKind,
    source: &RewardSource,
    n: usize,
    phase_end: usize,
    reps: usize,
    master_seed: u64,
) -> Result<ArmIndex> {
    if reps < 100 {
        return Err(BaiError::domain(format!("need at least 100 repetitions, got {reps}")));
    }
    let averages = pull_count_profile(learner, source, n, phase_end, reps, master_seed)?;
    let mut best = 1;
    for arm in 2..averages.len() {
        if averages[arm] < averages[best] {
            best = arm;
        }
    }
    Ok(ArmIndex::from_zero_based(best))
}
