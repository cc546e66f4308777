//! Domain values shared by every other module: arm indices, gap profiles of
//! stochastic instances, gaps in hindsight of a realized reward tensor,
//! probability vectors, harmonic normalization and deterministic ranking.
//!
//! Arms are 1-based everywhere they cross the public surface. Ties are always
//! broken towards the lower arm index, so that every run is a deterministic
//! function of its seed.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{BaiError, Result};

/// Absolute tolerance on the sum of a [`ProbabilityVector`].
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-12;

/// A 1-based arm index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArmIndex(usize);

impl ArmIndex {
    /// Checked constructor: `1 <= index <= k`.
    pub fn new(index: usize, k: usize) -> Result<Self> {
        if index == 0 || index > k {
            return Err(BaiError::domain(format!(
                "arm index {index} outside [1, {k}]"
            )));
        }
        Ok(ArmIndex(index))
    }

    pub fn from_zero_based(i: usize) -> Self {
        ArmIndex(i + 1)
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn zero_based(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for ArmIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `sum_{k=1}^{K} 1/k`, the normalizer of rank-reciprocal sampling weights.
pub fn harmonic(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(BaiError::domain("harmonic number of 0"));
    }
    Ok((1..=k).map(|i| 1.0 / i as f64).sum())
}

/// Ranks values by decreasing order. `ranks[i]` is the 1-based rank of arm
/// `i + 1`; equal values are ranked by ascending arm index.
pub fn rank_by_value(values: &[f64]) -> Vec<usize> {
    let order = order_by_value(values);
    let mut ranks = vec![0; values.len()];
    for (position, &arm) in order.iter().enumerate() {
        ranks[arm] = position + 1;
    }
    ranks
}

/// Zero-based arm indices sorted by decreasing value, ties by index.
pub fn order_by_value(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| compare_desc(values, a, b));
    order
}

/// Inverse of a 1-based rank permutation: `inverse[r - 1]` is the zero-based
/// arm holding rank `r`.
pub fn invert_ranks(ranks: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; ranks.len()];
    for (arm, &rank) in ranks.iter().enumerate() {
        inverse[rank - 1] = arm;
    }
    inverse
}

fn compare_desc(values: &[f64], a: usize, b: usize) -> Ordering {
    values[b]
        .partial_cmp(&values[a])
        .unwrap_or(Ordering::Equal)
        .then(a.cmp(&b))
}

/// Index of the unique maximum, or `NonUniqueBestArm` if it is attained twice.
pub(crate) fn unique_argmax(values: &[f64]) -> Result<usize> {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    let ties = values.iter().filter(|&&v| v == values[best]).count();
    if ties > 1 {
        return Err(BaiError::NonUniqueBestArm);
    }
    Ok(best)
}

/// `|max_{i != k} x_i - x_k|` for every `k`.
fn gaps_of(values: &[f64]) -> Vec<f64> {
    let order = order_by_value(values);
    let (first, second) = (values[order[0]], values[order[1]]);
    values
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let best_other = if k == order[0] { second } else { first };
            (best_other - v).abs()
        })
        .collect()
}

/// Anything exposing gaps sorted in ascending order, `Δ_(1) <= ... <= Δ_(K)`.
pub trait SortedGaps {
    fn sorted_gaps(&self) -> &[f64];

    fn num_arms(&self) -> usize {
        self.sorted_gaps().len()
    }
}

/// Arm means of a stochastic instance together with the derived gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct GapProfile {
    means: Vec<f64>,
    gaps: Vec<f64>,
    sorted_gaps: Vec<f64>,
    rank_of: Vec<usize>,
    by_rank: Vec<usize>,
}

impl GapProfile {
    pub fn from_means(means: &[f64]) -> Result<Self> {
        if means.len() < 2 {
            return Err(BaiError::domain(format!(
                "need at least two arms, got {}",
                means.len()
            )));
        }
        if let Some(bad) = means.iter().find(|m| !(0.0..=1.0).contains(*m)) {
            return Err(BaiError::domain(format!("mean {bad} outside [0, 1]")));
        }
        unique_argmax(means)?;
        let gaps = gaps_of(means);
        let rank_of = rank_by_value(means);
        let by_rank = invert_ranks(&rank_of);
        // Rank order by decreasing mean is ascending gap order, with the
        // best and second-best arm sharing the smallest gap.
        let sorted_gaps = by_rank.iter().map(|&arm| gaps[arm]).collect();
        Ok(GapProfile {
            means: means.to_vec(),
            gaps,
            sorted_gaps,
            rank_of,
            by_rank,
        })
    }

    pub fn num_arms(&self) -> usize {
        self.means.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Gaps indexed by zero-based arm.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn gap(&self, arm: ArmIndex) -> f64 {
        self.gaps[arm.zero_based()]
    }

    /// 1-based rank `<k>` of an arm (rank 1 is the best arm).
    pub fn rank_of(&self, arm: ArmIndex) -> usize {
        self.rank_of[arm.zero_based()]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank_of
    }

    /// The arm holding 1-based rank `rank`.
    pub fn arm_at_rank(&self, rank: usize) -> ArmIndex {
        ArmIndex::from_zero_based(self.by_rank[rank - 1])
    }

    pub fn best_arm(&self) -> ArmIndex {
        self.arm_at_rank(1)
    }

    /// `Δ_(1)`, the smallest gap.
    pub fn min_gap(&self) -> f64 {
        self.sorted_gaps[0]
    }

    /// `H1 = sum_k 1/Δ_k^2`.
    pub fn h1(&self) -> f64 {
        self.gaps.iter().map(|g| 1.0 / (g * g)).sum()
    }
}

impl SortedGaps for GapProfile {
    fn sorted_gaps(&self) -> &[f64] {
        &self.sorted_gaps
    }
}

/// A K×n matrix of rewards in `[0, 1]`, row `k` holding arm `k`'s gains.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardMatrix {
    k: usize,
    n: usize,
    cells: Vec<f64>,
}

impl RewardMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(BaiError::domain("reward matrix without rows"));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(BaiError::domain("reward matrix rows have unequal length"));
        }
        let cells: Vec<f64> = rows.into_iter().flatten().collect();
        if let Some(bad) = cells.iter().find(|g| !(0.0..=1.0).contains(*g)) {
            return Err(BaiError::domain(format!("reward {bad} outside [0, 1]")));
        }
        Ok(RewardMatrix { k, n, cells })
    }

    pub(crate) fn from_fn(k: usize, n: usize, mut cell: impl FnMut(usize, usize) -> f64) -> Self {
        let mut cells = Vec::with_capacity(k * n);
        for arm in 0..k {
            for t in 1..=n {
                cells.push(cell(arm, t));
            }
        }
        RewardMatrix { k, n, cells }
    }

    pub fn num_arms(&self) -> usize {
        self.k
    }

    pub fn horizon(&self) -> usize {
        self.n
    }

    /// Reward of zero-based arm `arm` at 1-based round `t`.
    pub fn get(&self, arm: usize, t: usize) -> f64 {
        self.cells[arm * self.n + (t - 1)]
    }

    pub fn row(&self, arm: usize) -> &[f64] {
        &self.cells[arm * self.n..(arm + 1) * self.n]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.k).map(|arm| self.row(arm).iter().sum()).collect()
    }
}

/// Cumulative gains of a realized reward tensor and the gaps in hindsight.
#[derive(Debug, Clone, PartialEq)]
pub struct HindsightGaps {
    cumulative_gains: Vec<f64>,
    gaps: Vec<f64>,
    sorted_gaps: Vec<f64>,
    best_arm: ArmIndex,
    horizon: usize,
}

impl HindsightGaps {
    pub fn from_matrix(rewards: &RewardMatrix) -> Result<Self> {
        Self::from_cumulative(rewards.row_sums(), rewards.horizon())
    }

    pub fn from_cumulative(cumulative_gains: Vec<f64>, horizon: usize) -> Result<Self> {
        if cumulative_gains.len() < 2 {
            return Err(BaiError::domain("need at least two arms"));
        }
        if horizon == 0 {
            return Err(BaiError::domain("hindsight gaps need at least one round"));
        }
        let best = unique_argmax(&cumulative_gains)?;
        let gaps: Vec<f64> = gaps_of(&cumulative_gains)
            .into_iter()
            .map(|g| g / horizon as f64)
            .collect();
        let sorted_gaps = order_by_value(&cumulative_gains)
            .into_iter()
            .map(|arm| gaps[arm])
            .collect();
        Ok(HindsightGaps {
            cumulative_gains,
            gaps,
            sorted_gaps,
            best_arm: ArmIndex::from_zero_based(best),
            horizon,
        })
    }

    pub fn cumulative_gains(&self) -> &[f64] {
        &self.cumulative_gains
    }

    /// Per-round gaps `Δ^g_k`, indexed by zero-based arm.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn best_arm(&self) -> ArmIndex {
        self.best_arm
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }
}

impl SortedGaps for HindsightGaps {
    fn sorted_gaps(&self) -> &[f64] {
        &self.sorted_gaps
    }
}

/// A sampling distribution over arms with strictly positive entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(BaiError::domain("empty probability vector"));
        }
        if let Some(bad) = probs.iter().find(|p| p.is_nan() || **p <= 0.0) {
            return Err(BaiError::domain(format!("probability {bad} is not positive")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(BaiError::domain(format!("probabilities sum to {total}")));
        }
        Ok(ProbabilityVector(probs))
    }

    pub fn uniform(k: usize) -> Self {
        ProbabilityVector(vec![1.0 / k as f64; k])
    }

    pub fn get(&self, arm: ArmIndex) -> f64 {
        self.0[arm.zero_based()]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn gaps_of_three_arms() {
        let p = GapProfile::from_means(&[0.5, 0.4, 0.3]).unwrap();
        let expected = [0.1, 0.1, 0.2];
        for (g, e) in p.gaps().iter().zip(expected) {
            assert!(close(*g, e));
        }
        for (g, e) in p.sorted_gaps().iter().zip(expected) {
            assert!(close(*g, e));
        }
        assert_eq!(p.best_arm().get(), 1);
    }

    #[test]
    fn one_group_of_bad_arms_has_flat_gaps() {
        let mut means = vec![0.5];
        means.extend(std::iter::repeat_n(0.4, 19));
        let p = GapProfile::from_means(&means).unwrap();
        assert_eq!(p.num_arms(), 20);
        assert!(p.gaps().iter().all(|g| close(*g, 0.1)));
    }

    #[test]
    fn tied_best_is_rejected() {
        assert!(matches!(
            GapProfile::from_means(&[0.5, 0.5, 0.3]),
            Err(BaiError::NonUniqueBestArm)
        ));
    }

    #[test]
    fn degenerate_profiles_are_rejected() {
        assert!(matches!(GapProfile::from_means(&[0.5]), Err(BaiError::Domain(_))));
        assert!(matches!(
            GapProfile::from_means(&[1.2, 0.1]),
            Err(BaiError::Domain(_))
        ));
    }

    #[test]
    fn non_best_ties_rank_by_index() {
        let p = GapProfile::from_means(&[0.3, 0.9, 0.3, 0.5]).unwrap();
        assert_eq!(p.ranks(), &[3, 1, 4, 2]);
        assert_eq!(p.arm_at_rank(3).get(), 1);
    }

    #[test]
    fn hindsight_two_arms() {
        let m = RewardMatrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let h = HindsightGaps::from_matrix(&m).unwrap();
        assert_eq!(h.cumulative_gains(), &[2.0, 0.0]);
        assert_eq!(h.gaps(), &[1.0, 1.0]);
        assert_eq!(h.best_arm().get(), 1);
    }

    #[test]
    fn hindsight_three_arms() {
        let m = RewardMatrix::from_rows(vec![
            vec![1.0, 1.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0; 4],
        ])
        .unwrap();
        let h = HindsightGaps::from_matrix(&m).unwrap();
        assert_eq!(h.cumulative_gains(), &[2.0, 1.0, 0.0]);
        assert_eq!(h.gaps(), &[0.25, 0.25, 0.5]);
        assert_eq!(h.sorted_gaps(), &[0.25, 0.25, 0.5]);
    }

    #[test]
    fn hindsight_tied_rows_are_rejected() {
        let m = RewardMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]])
            .unwrap();
        assert!(matches!(
            HindsightGaps::from_matrix(&m),
            Err(BaiError::NonUniqueBestArm)
        ));
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), 1.0);
        assert!(close(harmonic(3).unwrap(), 11.0 / 6.0));
        assert!(harmonic(0).is_err());
    }

    #[test]
    fn harmonic_is_below_log_plus_one() {
        let mut h = 0.0;
        for k in 1..=1_000_000usize {
            h += 1.0 / k as f64;
            assert!(h <= (k as f64).ln() + 1.0 + 1e-12, "K = {k}");
        }
    }

    #[test]
    fn harmonic_increments() {
        for k in 2..200 {
            let d = harmonic(k).unwrap() - harmonic(k - 1).unwrap();
            assert!((d - 1.0 / k as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn ranking_examples() {
        assert_eq!(rank_by_value(&[0.0, 0.0, 0.0]), vec![1, 2, 3]);
        assert_eq!(rank_by_value(&[0.2, 0.9, 0.5]), vec![3, 1, 2]);
        assert_eq!(rank_by_value(&[1.0, 1.0, 0.5]), vec![1, 2, 3]);
    }

    #[test]
    fn probability_vector_validation() {
        assert!(ProbabilityVector::new(vec![0.5, 0.5]).is_ok());
        assert!(ProbabilityVector::new(vec![1.0, 0.0]).is_err());
        assert!(ProbabilityVector::new(vec![0.6, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
    }

    fn means_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0u32..=1000, 2..12)
            .prop_map(|v| v.into_iter().map(|x| x as f64 / 1000.0).collect())
    }

    proptest! {
        #[test]
        fn two_smallest_gaps_coincide(means in means_strategy()) {
            if let Ok(p) = GapProfile::from_means(&means) {
                prop_assert_eq!(p.sorted_gaps()[0], p.sorted_gaps()[1]);
                prop_assert!(p.sorted_gaps().windows(2).all(|w| w[0] <= w[1]));
            }
        }

        #[test]
        fn gaps_are_equivariant_under_relabeling(
            means in means_strategy(),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            if let Ok(p) = GapProfile::from_means(&means) {
                let mut perm: Vec<usize> = (0..means.len()).collect();
                perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                let permuted: Vec<f64> = perm.iter().map(|&i| means[i]).collect();
                let q = GapProfile::from_means(&permuted).unwrap();
                for (j, &i) in perm.iter().enumerate() {
                    prop_assert_eq!(q.gaps()[j], p.gaps()[i]);
                }
                prop_assert_eq!(q.sorted_gaps(), p.sorted_gaps());
            }
        }

        #[test]
        fn constant_rows_recover_stochastic_gaps(
            ticks in prop::collection::vec(0u32..=1024, 2..12),
            n in 1usize..20,
        ) {
            // Dyadic means keep row sums and their differences exact.
            let means: Vec<f64> = ticks.into_iter().map(|x| x as f64 / 1024.0).collect();
            if let Ok(p) = GapProfile::from_means(&means) {
                let rows = means.iter().map(|&m| vec![m; n]).collect();
                let h = HindsightGaps::from_matrix(&RewardMatrix::from_rows(rows).unwrap()).unwrap();
                prop_assert_eq!(h.best_arm(), p.best_arm());
                prop_assert_eq!(h.gaps(), p.gaps());
                prop_assert_eq!(h.sorted_gaps(), p.sorted_gaps());
            }
        }

        #[test]
        fn rank_inverse_is_identity(values in prop::collection::vec(-5i32..5, 1..30)) {
            let values: Vec<f64> = values.into_iter().map(f64::from).collect();
            let ranks = rank_by_value(&values);
            let inverse = invert_ranks(&ranks);
            for (r, &arm) in inverse.iter().enumerate() {
                prop_assert_eq!(ranks[arm], r + 1);
            }
            prop_assert_eq!(inverse, order_by_value(&values));
        }
    }
}
