// Config file in, CSV out; the bytes do not depend on the worker count.

use robust_bai::harness::{monte_carlo, parse_config, write_csv};

const CONFIG: &str = "\
# P1 against the baselines on setup F
setup = F
learners = p1, sr, uniform
n = 3000
repetitions = 100
master_seed = 11
";

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let mut outputs = Vec::new();
    for workers in [1, 4] {
        let mut cfg = parse_config(CONFIG, None)?;
        cfg.workers = workers;
        let mut buf = Vec::new();
        write_csv(&monte_carlo(&cfg)?, &mut buf)?;
        outputs.push(String::from_utf8(buf)?);
    }
    if outputs[0] != outputs[1] {
        return Err("CSV differs between worker counts".into());
    }
    Ok(outputs[0].lines().map(str::to_string).collect())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
