// The two-phase construction: two problems whose hindsight best arms differ
// but which only disagree on one arm during the first half of the game.

use robust_bai::environments::{preset, two_phase_adversary_pair, PresetOptions, SetupId};
use robust_bai::harness::estimate_error_rate;
use robust_bai::learners::LearnerKind;
use robust_bai::{ArmIndex, GapProfile};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let profile = GapProfile::from_means(&preset(SetupId::D, PresetOptions::default()))?;
    let n = 2000;
    let pair = two_phase_adversary_pair(&profile, ArmIndex::new(6, 6)?, n)?;
    let g1 = pair.adv1.expected_gains(n);
    let g2 = pair.adv2.expected_gains(n);
    let mut lines = vec![format!(
        "expected gain of arm 6: {:.1} vs {:.1} (arm 1: {:.1})",
        g1[5], g2[5], g1[0]
    )];
    for learner in [LearnerKind::SuccessiveRejects, LearnerKind::SequentialHalving, LearnerKind::Rule] {
        let e1 = estimate_error_rate("adv1", learner, &pair.adv1, n, 200, 2)?;
        let e2 = estimate_error_rate("adv2", learner, &pair.adv2, n, 200, 2)?;
        lines.push(format!(
            "{:<4} error on ADV1 {:.3}, on ADV2 {:.3}, sum {:.3}",
            learner.name(),
            e1.error_rate,
            e2.error_rate,
            e1.error_rate + e2.error_rate
        ));
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
