//! `key = value` experiment files.

use std::fs;
use std::path::{Path, PathBuf};

use crate::environments::{bernoulli_source, preset, PresetOptions, RewardSource, SetupCGaps, SetupEMode, SetupId};
use crate::error::{BaiError, Result};
use crate::learners::LearnerKind;
use crate::model::GapProfile;

/// Overrides the `workers` key.
pub const WORKERS_ENV: &str = "BAI_WORKERS";

#[derive(Debug, Clone, PartialEq)]
pub enum SetupSpec {
    Preset(SetupId),
    Means(Vec<f64>),
}

impl SetupSpec {
    /// Value of the `setup` CSV column.
    pub fn label(&self) -> String {
        match self {
            SetupSpec::Preset(id) => id.to_string(),
            SetupSpec::Means(_) => "custom".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub setup: SetupSpec,
    pub learners: Vec<LearnerKind>,
    /// `None` means `round(H1)`.
    pub n: Option<usize>,
    pub repetitions: usize,
    pub master_seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub options: PresetOptions,
}

impl ExperimentConfig {
    pub fn new(setup: SetupSpec, learners: Vec<LearnerKind>, repetitions: usize) -> Self {
        ExperimentConfig {
            setup,
            learners,
            n: None,
            repetitions,
            master_seed: 0,
            workers: default_workers(),
            out: None,
            options: PresetOptions::default(),
        }
    }

    pub fn means(&self) -> Vec<f64> {
        match &self.setup {
            SetupSpec::Preset(id) => preset(*id, self.options),
            SetupSpec::Means(m) => m.clone(),
        }
    }

    pub fn source(&self) -> Result<RewardSource> {
        bernoulli_source(&self.means()).map_err(|e| BaiError::config(e.to_string()))
    }

    /// The configured horizon, or `round(H1)`.
    pub fn horizon(&self) -> Result<usize> {
        let n = match self.n {
            Some(n) => n,
            None => {
                let p = GapProfile::from_means(&self.means()).map_err(|e| BaiError::config(e.to_string()))?;
                p.h1().round() as usize
            }
        };
        let k = self.means().len();
        if n < k {
            return Err(BaiError::config(format!("n = {n} is below K = {k}")));
        }
        Ok(n)
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| BaiError::config(format!("`{key}`: cannot parse `{value}`: {e}")))
}

/// Parses a config file body. `workers_env` is the value of [`WORKERS_ENV`],
/// if set.
pub fn parse_config(text: &str, workers_env: Option<&str>) -> Result<ExperimentConfig> {
    let mut setup = None;
    let mut means = None;
    let mut learners = None;
    let mut repetitions = None;
    let mut cfg = ExperimentConfig::new(SetupSpec::Means(Vec::new()), Vec::new(), 0);

    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(BaiError::config(format!("line {}: expected `key = value`", no + 1)));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "setup" => setup = Some(value.parse::<SetupId>()?),
            "means" => {
                means = Some(
                    value
                        .split(',')
                        .map(|m| parse_num::<f64>(key, m.trim()))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            "learners" => {
                learners = Some(
                    value
                        .split(',')
                        .map(|l| l.trim().parse::<LearnerKind>().map_err(|e| BaiError::config(e.to_string())))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            "n" => cfg.n = Some(parse_num(key, value)?),
            "repetitions" => repetitions = Some(parse_num::<usize>(key, value)?),
            "master_seed" => cfg.master_seed = parse_num(key, value)?,
            "workers" => cfg.workers = parse_num(key, value)?,
            "out" => cfg.out = Some(PathBuf::from(value)),
            "setup_e_mode" => {
                cfg.options.setup_e = match value {
                    "table" => SetupEMode::TableConsistent,
                    "printed" => SetupEMode::Printed,
                    _ => return Err(BaiError::config(format!("setup_e_mode must be table or printed, got `{value}`"))),
                }
            }
            "setup_c_gaps" => {
                cfg.options.setup_c = match value {
                    "exact" => SetupCGaps::Exact,
                    "rounded3" => SetupCGaps::Rounded3,
                    _ => return Err(BaiError::config(format!("setup_c_gaps must be exact or rounded3, got `{value}`"))),
                }
            }
            _ => return Err(BaiError::config(format!("line {}: unknown key `{key}`", no + 1))),
        }
    }

    cfg.setup = match (setup, means) {
        (Some(id), None) => SetupSpec::Preset(id),
        (None, Some(m)) => SetupSpec::Means(m),
        (Some(_), Some(_)) => return Err(BaiError::config("give either `setup` or `means`, not both")),
        (None, None) => return Err(BaiError::config("missing `setup` or `means`")),
    };
    cfg.learners = learners.ok_or_else(|| BaiError::config("missing `learners`"))?;
    if cfg.learners.is_empty() {
        return Err(BaiError::config("`learners` is empty"));
    }
    cfg.repetitions = repetitions.ok_or_else(|| BaiError::config("missing `repetitions`"))?;
    if cfg.repetitions == 0 {
        return Err(BaiError::config("repetitions must be at least 1"));
    }
    if let Some(w) = workers_env {
        cfg.workers = parse_num(WORKERS_ENV, w.trim())?;
    }
    if cfg.workers == 0 {
        return Err(BaiError::config("workers must be at least 1"));
    }
    cfg.source()?;
    cfg.horizon()?;
    Ok(cfg)
}

/// Reads a config file, honouring [`WORKERS_ENV`].
pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| BaiError::config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text, std::env::var(WORKERS_ENV).ok().as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file() {
        let text = "# demo\nsetup = D\nlearners = p1, rule ,sr\nn = 900 # budget\nrepetitions = 50\n\
                    master_seed = 7\nworkers = 3\nout = /tmp/x.csv\n";
        let c = parse_config(text, None).unwrap();
        assert_eq!(c.setup, SetupSpec::Preset(SetupId::D));
        assert_eq!(c.learners, vec![LearnerKind::P1, LearnerKind::Rule, LearnerKind::SuccessiveRejects]);
        assert_eq!(c.horizon().unwrap(), 900);
        assert_eq!((c.repetitions, c.master_seed, c.workers), (50, 7, 3));
        assert_eq!(c.out, Some(PathBuf::from("/tmp/x.csv")));
    }

    #[test]
    fn environment_overrides_workers() {
        let c = parse_config("setup = A\nlearners = rule\nrepetitions = 1\nworkers = 2", Some("16")).unwrap();
        assert_eq!(c.workers, 16);
        assert!(parse_config("setup = A\nlearners = rule\nrepetitions = 1", Some("x")).is_err());
    }

    #[test]
    fn default_horizon_is_h1() {
        let c = parse_config("setup = A\nlearners = rule\nrepetitions = 1", None).unwrap();
        assert_eq!(c.horizon().unwrap(), 2000);
        let c = parse_config("means = 0.5, 0.4\nlearners = rule\nrepetitions = 1", None).unwrap();
        assert_eq!(c.horizon().unwrap(), 200);
        assert_eq!(c.setup.label(), "custom");
    }

    #[test]
    fn preset_flags() {
        let c = parse_config(
            "setup = E\nsetup_e_mode = printed\nsetup_c_gaps = rounded3\nlearners = rule\nrepetitions = 1",
            None,
        )
        .unwrap();
        assert_eq!(c.options.setup_e, SetupEMode::Printed);
        assert_eq!(c.options.setup_c, SetupCGaps::Rounded3);
    }

    #[test]
    fn errors_are_config_errors() {
        let bad = [
            "learners = rule\nrepetitions = 1",
            "setup = A\nmeans = 0.5,0.4\nlearners = rule\nrepetitions = 1",
            "setup = A\nrepetitions = 1",
            "setup = A\nlearners = nope\nrepetitions = 1",
            "setup = A\nlearners = rule\nrepetitions = 0",
            "setup = A\nlearners = rule\nrepetitions = 1\ncolour = red",
            "setup = A\nlearners = rule\nrepetitions = 1\nn = 5",
            "setup = Z\nlearners = rule\nrepetitions = 1",
            "means = 0.5, 0.5\nlearners = rule\nrepetitions = 1",
            "means = 0.5, 1.5\nlearners = rule\nrepetitions = 1",
            "setup = A\nlearners = rule\nrepetitions = 1\nsetup_e_mode = other",
            "setup = A\nlearners rule",
        ];
        for text in bad {
            let e = parse_config(text, None).unwrap_err();
            assert_eq!(e.exit_code(), 2, "{text}: {e}");
        }
    }
}
