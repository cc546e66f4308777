// The importance-weighted gain estimate is unbiased under uniform sampling.
//
// A fixed 3 x 50 reward matrix is replayed many times; the average estimate
// of each arm's cumulative gain is compared with the true sum.

use rand::Rng;
use robust_bai::estimators::ImportanceWeightedTally;
use robust_bai::{ArmIndex, ProbabilityVector, RewardMatrix, RngStream};

pub fn fixed_matrix() -> RewardMatrix {
    let rows = (0..3)
        .map(|k| (0..50).map(|t| ((k * 7 + t * 3) % 10) as f64 / 10.0).collect())
        .collect();
    RewardMatrix::from_rows(rows).expect("rewards in [0, 1]")
}

/// Per arm: (true gain, mean estimate, standard error of the mean).
type ArmEstimate = (f64, f64, f64);

pub fn estimate(reps: usize, seed: u64) -> Result<Vec<ArmEstimate>, Box<dyn std::error::Error>> {
    let m = fixed_matrix();
    let k = m.num_arms();
    let uniform = ProbabilityVector::uniform(k);
    let mut sum = vec![0.0; k];
    let mut sum_sq = vec![0.0; k];
    for r in 0..reps {
        let mut rng = RngStream::new(seed, r as u64).learner_rng();
        let mut tally = ImportanceWeightedTally::new(k);
        for t in 1..=m.horizon() {
            let arm = ArmIndex::from_zero_based(rng.random_range(0..k));
            tally.update(arm, m.get(arm.zero_based(), t), &uniform)?;
        }
        for (i, g) in tally.totals().iter().enumerate() {
            sum[i] += g;
            sum_sq[i] += g * g;
        }
    }
    let n = reps as f64;
    Ok(m.row_sums()
        .into_iter()
        .enumerate()
        .map(|(i, truth)| {
            let mean = sum[i] / n;
            let var = (sum_sq[i] / n - mean * mean) * n / (n - 1.0);
            (truth, mean, (var / n).sqrt())
        })
        .collect())
}

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    Ok(estimate(20_000, 7)?
        .into_iter()
        .enumerate()
        .map(|(k, (truth, mean, se))| {
            format!("arm {}: G = {truth:.2}, mean estimate = {mean:.3} (se {se:.3}, z = {:.2})", k + 1, (mean - truth) / se)
        })
        .collect())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
