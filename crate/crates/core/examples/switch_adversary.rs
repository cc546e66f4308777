// The switch construction on setup B.
//
// The stochastic problem makes bar-k the best arm; the adversarial one keeps
// bar-k at its base mean until `n_i = ceil(n Δ_1 / Δ_(i))`, which leaves arm 1
// best in hindsight. A learner that barely samples bar-k early cannot tell
// the two apart.

use robust_bai::environments::{preset, switch_adversary_pair, PresetOptions, SetupId};
use robust_bai::harness::{estimate_error_rate, run_adversary, AdversaryKind, AdversarySpec};
use robust_bai::learners::LearnerKind;
use robust_bai::{ArmIndex, GapProfile};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let means = preset(SetupId::B, PresetOptions::default());
    let profile = GapProfile::from_means(&means)?;
    let n = 1500;
    let pair = switch_adversary_pair(&profile, ArmIndex::new(20, 20)?, 20, n)?;
    let mut lines = vec![format!(
        "a_i = {:.3}, switch after round {} of {n}",
        pair.fraction, pair.blueprint.switch_round
    )];
    for learner in [LearnerKind::SuccessiveRejects, LearnerKind::Rule, LearnerKind::P1] {
        let sto = estimate_error_rate("sto", learner, &pair.sto, n, 200, 1)?;
        let adv = estimate_error_rate("adv", learner, &pair.adv, n, 200, 1)?;
        lines.push(format!(
            "{:<4} STO error {:.3}, ADV error {:.3}",
            learner.name(),
            sto.error_rate,
            adv.error_rate
        ));
    }

    // Same experiment with bar-k estimated from SR's pull counts.
    let spec = AdversarySpec {
        kind: AdversaryKind::Switch,
        setup: "B".into(),
        means,
        bar_k: None,
        i: None,
        blackout: None,
        learner: LearnerKind::SuccessiveRejects,
        n,
        repetitions: 200,
        master_seed: 1,
        workers: 1,
    };
    for r in run_adversary(&spec)?.rows {
        lines.push(format!("{} ({}): error {:.3}", r.setup, r.learner, r.error_rate));
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
