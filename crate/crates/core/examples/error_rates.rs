// Monte Carlo error rates of every learner on one preset.

use robust_bai::environments::SetupId;
use robust_bai::harness::{monte_carlo, ExperimentConfig, SetupSpec};
use robust_bai::learners::LearnerKind;

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let mut cfg = ExperimentConfig::new(SetupSpec::Preset(SetupId::D), LearnerKind::ALL.to_vec(), 400);
    cfg.master_seed = 3;
    let report = monte_carlo(&cfg)?;
    let mut lines = vec![format!("setup D, n = {}, {} repetitions", cfg.horizon()?, cfg.repetitions)];
    for r in &report.rows {
        let bound = r.theory_bound.map_or(String::new(), |b| format!("  bound {b:.3e}"));
        lines.push(format!(
            "{:<8} error {:.3}  95% CI [{:.3}, {:.3}]{bound}",
            r.learner.name(),
            r.error_rate,
            r.ci_low,
            r.ci_high
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
