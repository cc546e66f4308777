//! Rule, P1 and their half-and-half mixture.
//!
//! All three sample an arm at random every round, weight the observed reward
//! by the inverse of the probability it was drawn with, and recommend the arm
//! with the largest importance-weighted cumulative gain.
//!
//! P1 draws a *rank* `r` with probability `1 / (r · H_K)` and pulls the arm
//! currently holding that rank. Only the pulled arm's estimate moves each
//! round, and it can only move up, so the ranking is maintained by insertion
//! instead of a full sort.

use rand::Rng;

use super::{Learner, LearnerKind, Pull};
use crate::error::Result;
use crate::estimators::ImportanceWeightedTally;
use crate::model::{harmonic, rank_by_value, ArmIndex, ProbabilityVector};
use crate::rng::StreamRng;

/// Rule: every arm with probability `1/K`, whatever the round.
pub fn rule_policy(k: usize) -> ProbabilityVector {
    ProbabilityVector::uniform(k)
}

/// P1: arm of rank `r` (by decreasing `G̃`, ties by index) with probability
/// `1 / (r · H_K)`. Takes no horizon.
pub fn p1_policy(tally: &ImportanceWeightedTally) -> ProbabilityVector {
    let k = tally.num_arms();
    let h = harmonic(k).expect("at least one arm");
    let probs = rank_by_value(tally.totals())
        .into_iter()
        .map(|rank| rank_probability(rank, h))
        .collect();
    ProbabilityVector::new(probs).expect("rank-reciprocal weights form a distribution")
}

/// The per-round mixture `½ · 1/K + ½ · p1_policy`.
pub fn mixed_policy(tally: &ImportanceWeightedTally) -> ProbabilityVector {
    let k = tally.num_arms();
    let p1 = p1_policy(tally);
    let probs = p1
        .as_slice()
        .iter()
        .map(|&p| mixture_probability(k, p))
        .collect();
    ProbabilityVector::new(probs).expect("convex combination of distributions")
}

fn rank_probability(rank: usize, harmonic_k: f64) -> f64 {
    1.0 / (rank as f64 * harmonic_k)
}

fn mixture_probability(k: usize, p1: f64) -> f64 {
    0.5 / k as f64 + 0.5 * p1
}

/// Cumulative distribution of the rank drawn by P1: entry `r - 1` is
/// `P(rank <= r)`. The last entry is pinned to 1.
pub fn zipf_rank_cdf(k: usize) -> Vec<f64> {
    let h = harmonic(k).expect("at least one arm");
    let mut acc = 0.0;
    let mut cdf: Vec<f64> = (1..=k)
        .map(|r| {
            acc += rank_probability(r, h);
            acc
        })
        .collect();
    if let Some(last) = cdf.last_mut() {
        *last = 1.0;
    }
    cdf
}

/// Draws a 1-based rank from a cumulative distribution.
fn draw_rank(cdf: &[f64], u: f64) -> usize {
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1) + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingRule {
    /// Rule
    Uniform,
    /// P1
    RankReciprocal,
    /// Fair per-round coin between the two.
    Mixture,
}

/// Arms ordered by decreasing estimate, ties by index.
#[derive(Debug, Clone)]
struct Ranking {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl Ranking {
    fn new(k: usize) -> Self {
        Ranking {
            order: (0..k).collect(),
            position: (0..k).collect(),
        }
    }

    /// Restores the order after `arm`'s total increased.
    fn promote(&mut self, arm: usize, totals: &[f64]) {
        let mut pos = self.position[arm];
        while pos > 0 {
            let above = self.order[pos - 1];
            let ahead = totals[arm] > totals[above] || (totals[arm] == totals[above] && arm < above);
            if !ahead {
                break;
            }
            self.order[pos] = above;
            self.position[above] = pos;
            pos -= 1;
        }
        self.order[pos] = arm;
        self.position[arm] = pos;
    }

    fn rank_of(&self, arm: usize) -> usize {
        self.position[arm] + 1
    }

    fn arm_at(&self, rank: usize) -> usize {
        self.order[rank - 1]
    }
}

pub struct ImportanceWeightedLearner {
    rule: SamplingRule,
    tally: ImportanceWeightedTally,
    ranking: Ranking,
    rank_cdf: Vec<f64>,
    harmonic_k: f64,
}

impl ImportanceWeightedLearner {
    pub fn new(rule: SamplingRule, k: usize) -> Result<Self> {
        Ok(ImportanceWeightedLearner {
            rule,
            tally: ImportanceWeightedTally::new(k),
            ranking: Ranking::new(k),
            rank_cdf: zipf_rank_cdf(k),
            harmonic_k: harmonic(k)?,
        })
    }

    pub fn tally(&self) -> &ImportanceWeightedTally {
        &self.tally
    }

    /// The distribution the next `select` draws from.
    pub fn policy(&self) -> ProbabilityVector {
        match self.rule {
            SamplingRule::Uniform => rule_policy(self.tally.num_arms()),
            SamplingRule::RankReciprocal => p1_policy(&self.tally),
            SamplingRule::Mixture => mixed_policy(&self.tally),
        }
    }

    /// Zero-based arms by current rank.
    pub fn ranked_arms(&self) -> &[usize] {
        &self.ranking.order
    }

    fn k(&self) -> usize {
        self.tally.num_arms()
    }

    fn uniform_arm(&self, rng: &mut StreamRng) -> usize {
        rng.random_range(0..self.k())
    }

    fn ranked_arm(&self, rng: &mut StreamRng) -> usize {
        let rank = draw_rank(&self.rank_cdf, rng.random::<f64>());
        self.ranking.arm_at(rank)
    }
}

impl Learner for ImportanceWeightedLearner {
    fn kind(&self) -> LearnerKind {
        match self.rule {
            SamplingRule::Uniform => LearnerKind::Rule,
            SamplingRule::RankReciprocal => LearnerKind::P1,
            SamplingRule::Mixture => LearnerKind::MixedP1Rule,
        }
    }

    fn num_arms(&self) -> usize {
        self.k()
    }

    fn select(&mut self, rng: &mut StreamRng) -> Result<Pull> {
        let k = self.k();
        let (arm, prob) = match self.rule {
            SamplingRule::Uniform => (self.uniform_arm(rng), 1.0 / k as f64),
            SamplingRule::RankReciprocal => {
                let arm = self.ranked_arm(rng);
                (arm, rank_probability(self.ranking.rank_of(arm), self.harmonic_k))
            }
            SamplingRule::Mixture => {
                let arm = if rng.random::<f64>() < 0.5 {
                    self.uniform_arm(rng)
                } else {
                    self.ranked_arm(rng)
                };
                // The estimator must use the probability of the mixture, not
                // of the component that happened to fire.
                let p1 = rank_probability(self.ranking.rank_of(arm), self.harmonic_k);
                (arm, mixture_probability(k, p1))
            }
        };
        Ok(Pull {
            arm: ArmIndex::from_zero_based(arm),
            prob,
        })
    }

    fn observe(&mut self, pull: Pull, reward: f64) -> Result<()> {
        self.tally.record(pull.arm, reward, pull.prob)?;
        if reward > 0.0 && self.rule != SamplingRule::Uniform {
            self.ranking
                .promote(pull.arm.zero_based(), self.tally.totals());
        }
        Ok(())
    }

    fn recommend(&self) -> Result<ArmIndex> {
        Ok(self.tally.leader())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{play, RewardFeed};
    use crate::model::{order_by_value, RewardMatrix};
    use crate::rng::RngStream;
    use proptest::prelude::*;
    use rand::Rng;

    fn tally_with(totals: &[f64]) -> ImportanceWeightedTally {
        let mut t = ImportanceWeightedTally::new(totals.len());
        for (i, &g) in totals.iter().enumerate() {
            if g > 0.0 {
                t.record(ArmIndex::from_zero_based(i), 1.0, 1.0 / g).unwrap();
            }
        }
        t
    }

    #[test]
    fn rule_is_uniform_and_time_invariant() {
        assert_eq!(rule_policy(4).as_slice(), &[0.25; 4]);
        assert_eq!(rule_policy(2).as_slice(), &[0.5; 2]);
        let mut learner = ImportanceWeightedLearner::new(SamplingRule::Uniform, 4).unwrap();
        let mut rng = RngStream::new(0, 0).learner_rng();
        for _ in 0..50 {
            let pull = learner.select(&mut rng).unwrap();
            assert_eq!(pull.prob, 0.25);
            learner.observe(pull, 1.0).unwrap();
            assert_eq!(learner.policy(), rule_policy(4));
        }
    }

    #[test]
    fn p1_three_arms_in_rank_order() {
        let p = p1_policy(&tally_with(&[3.0, 2.0, 1.0]));
        let expected = [6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0];
        for (a, b) in p.as_slice().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn p1_first_round_favours_arm_one() {
        let learner = ImportanceWeightedLearner::new(SamplingRule::RankReciprocal, 5).unwrap();
        let p = learner.policy();
        let h = harmonic(5).unwrap();
        assert_eq!(p.get(ArmIndex::from_zero_based(0)), 1.0 / h);
        assert!(p.as_slice().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn p1_floor_and_mixture_floor() {
        for k in 2..40 {
            let t = tally_with(&(0..k).map(|i| (i * 7 % 5) as f64).collect::<Vec<_>>());
            let h = harmonic(k).unwrap();
            assert!(p1_policy(&t).min() >= 1.0 / (k as f64 * h) * (1.0 - 1e-15));
            assert!(mixed_policy(&t).min() >= 0.5 / k as f64);
            let total: f64 = mixed_policy(&t).as_slice().iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mixture_two_arms() {
        let p = mixed_policy(&tally_with(&[1.0, 0.0]));
        assert!((p.as_slice()[0] - 7.0 / 12.0).abs() < 1e-15);
        assert!((p.as_slice()[1] - 5.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn recommendation_is_argmax_with_index_ties() {
        assert_eq!(tally_with(&[0.0, 5.5, 0.0]).leader().get(), 2);
        assert_eq!(tally_with(&[0.0, 0.0, 0.0]).leader().get(), 1);
    }

    #[test]
    fn rule_single_round_enumeration() {
        // K = 2, n = 1, g = ((1), (0)). Pulling arm 1 gives G̃ = (2, 0),
        // pulling arm 2 gives (0, 0): both recommend arm 1.
        for (arm, expected_totals) in [(0usize, [2.0, 0.0]), (1, [0.0, 0.0])] {
            let mut learner = ImportanceWeightedLearner::new(SamplingRule::Uniform, 2).unwrap();
            let reward = if arm == 0 { 1.0 } else { 0.0 };
            learner
                .observe(
                    Pull {
                        arm: ArmIndex::from_zero_based(arm),
                        prob: 0.5,
                    },
                    reward,
                )
                .unwrap();
            assert_eq!(learner.tally().totals(), &expected_totals);
            assert_eq!(learner.recommend().unwrap().get(), 1);
        }
    }

    #[test]
    fn zipf_cdf_is_monotone_and_complete() {
        let cdf = zipf_rank_cdf(7);
        assert!(cdf.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*cdf.last().unwrap(), 1.0);
        assert_eq!(draw_rank(&cdf, 0.0), 1);
        assert_eq!(draw_rank(&cdf, 0.999_999_999), 7);
    }

    /// Straightforward P1: recompute the policy vector from scratch every
    /// round and sample through the rank CDF with the same uniform.
    fn reference_p1(feed: &mut RewardMatrix, n: usize, seed: u64) -> (Vec<usize>, Vec<f64>, ArmIndex) {
        let k = RewardFeed::num_arms(feed);
        let mut rng = RngStream::new(seed, 0).learner_rng();
        let mut tally = ImportanceWeightedTally::new(k);
        let cdf = zipf_rank_cdf(k);
        let mut arms = vec![];
        let mut probs = vec![];
        for t in 1..=n {
            let policy = p1_policy(&tally);
            let order = order_by_value(tally.totals());
            let rank = draw_rank(&cdf, rng.random::<f64>());
            let arm = order[rank - 1];
            let p = policy.as_slice()[arm];
            tally.record(ArmIndex::from_zero_based(arm), feed.reward(arm, t), p).unwrap();
            arms.push(arm);
            probs.push(p);
        }
        (arms, probs, tally.leader())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn incremental_ranking_matches_full_sort(
            rows in prop::collection::vec(prop::collection::vec(0u8..=4, 60), 2..9),
            seed in any::<u64>(),
        ) {
            let rows: Vec<Vec<f64>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x as f64 / 4.0).collect())
                .collect();
            let n = rows[0].len();
            let mut m = RewardMatrix::from_rows(rows).unwrap();
            let (ref_arms, ref_probs, ref_rec) = reference_p1(&mut m.clone(), n, seed);

            let k = RewardFeed::num_arms(&m);
            let mut learner = ImportanceWeightedLearner::new(SamplingRule::RankReciprocal, k).unwrap();
            let mut rng = RngStream::new(seed, 0).learner_rng();
            let mut log = vec![];
            let rec = play(&mut learner, &mut m, n, &mut rng, Some(&mut log)).unwrap();
            prop_assert_eq!(rec, ref_rec);
            for (i, p) in log.iter().enumerate() {
                prop_assert_eq!(p.arm.zero_based(), ref_arms[i]);
                prop_assert_eq!(p.prob, ref_probs[i]);
            }
            let reference = order_by_value(learner.tally().totals());
            prop_assert_eq!(learner.ranked_arms(), reference.as_slice());
        }

        #[test]
        fn p1_policy_is_scale_invariant(
            totals in prop::collection::vec(0u16..50, 2..20),
            scale in 1.0f64..100.0,
        ) {
            let a: Vec<f64> = totals.iter().map(|&x| x as f64).collect();
            let b: Vec<f64> = a.iter().map(|x| x * scale).collect();
            prop_assert_eq!(p1_policy(&tally_with(&a)), p1_policy(&tally_with(&b)));
        }

        #[test]
        fn every_round_respects_the_probability_floor(
            seed in any::<u64>(),
            k in 2usize..12,
        ) {
            let h = harmonic(k).unwrap();
            let mut cells = RngStream::new(seed, 1).reward_cells();
            for rule in [SamplingRule::Uniform, SamplingRule::RankReciprocal, SamplingRule::Mixture] {
                let mut learner = ImportanceWeightedLearner::new(rule, k).unwrap();
                let mut rng = RngStream::new(seed, 0).learner_rng();
                let floor = match rule {
                    SamplingRule::Mixture => 0.5 / k as f64,
                    _ => 1.0 / (k as f64 * h),
                };
                for t in 1..=100 {
                    let policy = learner.policy();
                    prop_assert!(policy.min() >= floor * (1.0 - 1e-12));
                    let pull = learner.select(&mut rng).unwrap();
                    prop_assert_eq!(pull.prob, policy.get(pull.arm));
                    let reward = if cells.uniform(pull.arm.zero_based(), t) < 0.5 { 1.0 } else { 0.0 };
                    learner.observe(pull, reward).unwrap();
                }
            }
        }
    }
}
