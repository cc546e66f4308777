// Minimizing the P1 complexity over allocation vectors.
//
// Prints every candidate family's value and the refined minimum, and
// compares the minimum with `H_BOB ln^2 K`.

use robust_bai::complexity::{allocation_candidates, h_p1_of, ComplexityReport};
use robust_bai::environments::{preset, PresetOptions, SetupId};
use robust_bai::GapProfile;

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let families = ["a = 1", "a = 1/i", "a = 1/sqrt(i)", "a = D1/Di"];
    let mut lines = Vec::new();
    for id in SetupId::ALL {
        let profile = GapProfile::from_means(&preset(id, PresetOptions::default()))?;
        let report = ComplexityReport::of(&profile);
        let values = allocation_candidates(&profile)
            .iter()
            .map(|a| h_p1_of(&profile, a))
            .collect::<Result<Vec<_>, _>>()?;
        let ln_k = (profile.num_arms() as f64).ln();
        let mut line = format!("{id}:");
        for (name, v) in families.iter().zip(&values) {
            line.push_str(&format!(" [{name}] {v:.0}"));
        }
        line.push_str(&format!(
            " | min {:.0} | H_P1 / (H_BOB ln^2 K) = {:.3}",
            report.h_p1,
            report.h_p1 / (report.h_bob * ln_k * ln_k)
        ));
        lines.push(line);
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
