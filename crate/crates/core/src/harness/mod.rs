//! Monte Carlo experiment engine.
//!
//! Repetition `r` of an experiment always uses [`RngStream`]
//! `(master_seed, r)`, whatever the worker count. Learners in the same
//! experiment share the reward tensors of each repetition.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::complexity::{h_p1_min, h_unif};
use crate::environments::RewardSource;
use crate::error::{BaiError, Result};
use crate::learners::{play, LearnerKind, PullRecord};
use crate::model::{harmonic, ArmIndex, GapProfile, SortedGaps};
use crate::rng::RngStream;

mod adversarial;
mod config;
mod report;
mod table;

pub use adversarial::{adversary_sources, dominant_index, run_adversary, AdversaryKind, AdversarySpec, BAR_K_ESTIMATION_REPS};
pub use config::{load_config, parse_config, ExperimentConfig, SetupSpec, WORKERS_ENV};
pub use report::{emit_csv, format_real, wilson_interval, write_csv, ErrorRateReport, ErrorRateRow, CSV_HEADER};
pub use table::{table1, Table1Options, Table1Row, PUBLISHED_TABLE1};

/// Outcome of one game.
#[derive(Debug, Clone, PartialEq)]
pub struct Episode {
    pub recommendation: ArmIndex,
    pub best_arm: ArmIndex,
    pub success: bool,
    pub log: Vec<PullRecord>,
}

/// Plays `n` rounds of `learner` against `source` on `stream`, scored against
/// the source's ground truth.
pub fn run_episode(learner: LearnerKind, source: &RewardSource, n: usize, stream: RngStream) -> Result<Episode> {
    let (recommendation, log) = play_once(learner, source, n, stream, true)?;
    let best_arm = source.ground_truth(stream, n)?;
    Ok(Episode {
        recommendation,
        best_arm,
        success: recommendation == best_arm,
        log,
    })
}

fn play_once(
    learner: LearnerKind,
    source: &RewardSource,
    n: usize,
    stream: RngStream,
    keep_log: bool,
) -> Result<(ArmIndex, Vec<PullRecord>)> {
    source.check_horizon(n)?;
    let mut agent = learner.build(source.num_arms(), n)?;
    let mut feed = source.stream(stream);
    let mut rng = stream.learner_rng();
    let mut log = Vec::new();
    let rec = play(
        agent.as_mut(),
        &mut feed,
        n,
        &mut rng,
        if keep_log { Some(&mut log) } else { None },
    )?;
    Ok((rec, log))
}

/// Number of misidentifications over repetitions `0..reps`. When several
/// arms tie for the best realized gain, recommending any of them counts as
/// correct.
pub fn count_errors(
    learner: LearnerKind,
    source: &RewardSource,
    n: usize,
    reps: usize,
    master_seed: u64,
) -> Result<usize> {
    (0..reps as u64)
        .into_par_iter()
        .map(|r| {
            let stream = RngStream::new(master_seed, r);
            let (rec, _) = play_once(learner, source, n, stream, false)?;
            Ok(usize::from(!source.best_arms(stream, n)?.contains(&rec)))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Runs `f` on a dedicated pool with `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| BaiError::domain(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Error-rate estimate of one learner on one source.
pub fn estimate_error_rate(
    setup: &str,
    learner: LearnerKind,
    source: &RewardSource,
    n: usize,
    reps: usize,
    master_seed: u64,
) -> Result<ErrorRateRow> {
    if reps == 0 {
        return Err(BaiError::config("repetitions must be at least 1"));
    }
    let start = Instant::now();
    let errors = count_errors(learner, source, n, reps, master_seed)?;
    let theory_bound = learner_bound(learner, source, n)?;
    Ok(ErrorRateRow::new(
        setup,
        learner,
        n,
        reps,
        errors,
        theory_bound,
        master_seed,
        start.elapsed(),
    ))
}

/// Every learner of `config` on its source, on a pool of `config.workers`.
pub fn monte_carlo(config: &ExperimentConfig) -> Result<ErrorRateReport> {
    let source = config.source()?;
    let n = config.horizon()?;
    for &learner in &config.learners {
        let need = learner.min_budget(source.num_arms());
        if n < need {
            return Err(BaiError::config(format!(
                "n = {n} is below the {} learner's minimum budget {need}",
                learner
            )));
        }
    }
    let label = config.setup.label();
    let rows = with_workers(config.workers, || {
        config
            .learners
            .iter()
            .map(|&learner| {
                estimate_error_rate(&label, learner, &source, n, config.repetitions, config.master_seed)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let wall_time: Duration = rows.iter().map(|r| r.wall_time).sum();
    Ok(ErrorRateReport { rows, wall_time })
}

/// Theoretical error-rate ceilings at horizon `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoreticalBounds {
    /// `K exp(-3n / (28 H_UNIF))`.
    pub rule_adversarial: f64,
    /// `2 K^3 n exp(-n / (128 H_P1))`, when `H_P1` is known.
    pub p1_stochastic: Option<f64>,
    /// `K exp(-3n / (40 H_K H_UNIF))`.
    pub p1_adversarial: f64,
}

impl TheoreticalBounds {
    pub fn rule_vacuous(&self) -> bool {
        self.rule_adversarial >= 1.0
    }
}

/// Bounds from sorted gaps (stochastic or hindsight); `h_p1` enables the
/// stochastic P1 bound.
pub fn theoretical_bounds<G: SortedGaps + ?Sized>(gaps: &G, n: usize, h_p1: Option<f64>) -> Result<TheoreticalBounds> {
    let k = gaps.num_arms();
    let kf = k as f64;
    let nf = n as f64;
    let hu = h_unif(gaps);
    Ok(TheoreticalBounds {
        rule_adversarial: kf * (-3.0 * nf / (28.0 * hu)).exp(),
        p1_stochastic: h_p1.map(|h| 2.0 * kf.powi(3) * nf * (-nf / (128.0 * h)).exp()),
        p1_adversarial: kf * (-3.0 * nf / (40.0 * harmonic(k)? * hu)).exp(),
    })
}

/// The bound reported next to a learner's error rate: Rule and P1 on
/// stochastic sources only.
pub fn learner_bound(learner: LearnerKind, source: &RewardSource, n: usize) -> Result<Option<f64>> {
    let RewardSource::Bernoulli { means } = source else {
        return Ok(None);
    };
    let profile = GapProfile::from_means(means)?;
    Ok(match learner {
        LearnerKind::Rule => Some(theoretical_bounds(&profile, n, None)?.rule_adversarial),
        LearnerKind::P1 => {
            theoretical_bounds(&profile, n, Some(h_p1_min(&profile).0))?.p1_stochastic
        }
        _ => None,
    })
}
