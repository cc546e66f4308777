//! Error rates of a learner on the adversarial constructions.

use std::fmt;
use std::str::FromStr;

use super::{estimate_error_rate, with_workers, ErrorRateReport};
use crate::complexity::h_bob_terms;
use crate::environments::{
    bernoulli_source, deception_adversary, estimate_low_pull_arm, switch_adversary_pair,
    two_phase_adversary_pair, RewardSource,
};
use crate::error::{BaiError, Result};
use crate::learners::LearnerKind;
use crate::model::{ArmIndex, GapProfile};

/// Repetitions used to pick bar-k when it is not given.
pub const BAR_K_ESTIMATION_REPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdversaryKind {
    Switch,
    TwoPhase,
    Deception,
}

impl fmt::Display for AdversaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdversaryKind::Switch => "switch",
            AdversaryKind::TwoPhase => "two-phase",
            AdversaryKind::Deception => "deception",
        })
    }
}

impl FromStr for AdversaryKind {
    type Err = BaiError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "switch" => Ok(AdversaryKind::Switch),
            "two-phase" => Ok(AdversaryKind::TwoPhase),
            "deception" => Ok(AdversaryKind::Deception),
            other => Err(BaiError::config(format!("unknown adversary `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdversarySpec {
    pub kind: AdversaryKind,
    /// Label written in the `setup` column.
    pub setup: String,
    pub means: Vec<f64>,
    /// Estimated against the base problem when `None`.
    pub bar_k: Option<usize>,
    /// Sorted-gap index of the switch; defaults to the argmax of `k / Δ_(k)`.
    pub i: Option<usize>,
    /// Deception blackout length; defaults to `n / 2`.
    pub blackout: Option<usize>,
    pub learner: LearnerKind,
    pub n: usize,
    pub repetitions: usize,
    pub master_seed: u64,
    pub workers: usize,
}

/// Smallest sorted position attaining `max_k k / Δ_(k)`.
pub fn dominant_index(profile: &GapProfile) -> usize {
    let terms = h_bob_terms(profile);
    let mut best = 0;
    for (i, &t) in terms.iter().enumerate() {
        if t > terms[best] {
            best = i;
        }
    }
    best + 1
}

/// Labelled sources of one construction.
pub type LabelledSources = Vec<(String, RewardSource)>;

/// Sources of an adversarial experiment, labelled, plus the bar-k used.
pub fn adversary_sources(spec: &AdversarySpec) -> Result<(LabelledSources, Option<ArmIndex>)> {
    let base = bernoulli_source(&spec.means)?;
    let profile = GapProfile::from_means(&spec.means)?;
    let k = spec.means.len();
    let label = |role: &str| format!("{}/{}-{role}", spec.setup, spec.kind);
    let pick_bar_k = |phase_end: usize| -> Result<ArmIndex> {
        match spec.bar_k {
            Some(b) => ArmIndex::new(b, k),
            None => estimate_low_pull_arm(
                spec.learner,
                &base,
                spec.n,
                phase_end,
                BAR_K_ESTIMATION_REPS,
                spec.master_seed,
            ),
        }
    };
    Ok(match spec.kind {
        AdversaryKind::Switch => {
            let i = spec.i.unwrap_or_else(|| dominant_index(&profile));
            let probe = switch_adversary_pair(&profile, ArmIndex::from_zero_based(1), i, spec.n)?;
            let bar_k = pick_bar_k(probe.blueprint.switch_round)?;
            let pair = switch_adversary_pair(&profile, bar_k, i, spec.n)?;
            (vec![(label("sto"), pair.sto), (label("adv"), pair.adv)], Some(bar_k))
        }
        AdversaryKind::TwoPhase => {
            let bar_k = pick_bar_k(spec.n.div_ceil(2))?;
            let pair = two_phase_adversary_pair(&profile, bar_k, spec.n)?;
            (vec![(label("adv1"), pair.adv1), (label("adv2"), pair.adv2)], Some(bar_k))
        }
        AdversaryKind::Deception => {
            let t0 = spec.blackout.unwrap_or(spec.n / 2);
            (vec![(label("adv"), deception_adversary(&spec.means, t0, spec.n)?)], None)
        }
    })
}

/// One row per source of the construction.
pub fn run_adversary(spec: &AdversarySpec) -> Result<ErrorRateReport> {
    with_workers(spec.workers, || {
        let (sources, _) = adversary_sources(spec)?;
        let rows = sources
            .iter()
            .map(|(label, source)| {
                estimate_error_rate(label, spec.learner, source, spec.n, spec.repetitions, spec.master_seed)
            })
            .collect::<Result<Vec<_>>>()?;
        let wall_time = rows.iter().map(|r| r.wall_time).sum();
        Ok(ErrorRateReport { rows, wall_time })
    })?
}
