// Uninformative early rewards against a deterministic schedule.
//
// The best arm carries the highest index, so when the first phase sees only
// zeros Successive Rejects drops it on the index tie-break. Rule keeps
// sampling every arm and recovers.

use robust_bai::environments::deception_adversary;
use robust_bai::harness::estimate_error_rate;
use robust_bai::learners::{successive_rejects_schedule, LearnerKind};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let means = [0.3, 0.3, 0.3, 0.7];
    let n = 400;
    let schedule = successive_rejects_schedule(means.len(), n)?;
    let blackout = schedule.per_arm[0] * schedule.active[0];
    let source = deception_adversary(&means, blackout, n)?;
    let mut lines = vec![format!("zero rewards for the first {blackout} of {n} rounds")];
    for learner in [LearnerKind::SuccessiveRejects, LearnerKind::Rule, LearnerKind::P1] {
        let r = estimate_error_rate("deception", learner, &source, n, 300, 4)?;
        lines.push(format!("{:<4} error {:.3}", learner.name(), r.error_rate));
    }
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
