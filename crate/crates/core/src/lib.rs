//! Fixed-budget best-arm identification under stochastic and adversarial
//! rewards.
//!
//! The crate is organised the way an experiment is: [`model`] holds the
//! domain values (arms, gaps, probability vectors), [`estimators`] the two
//! cumulative-gain estimators, [`learners`] the sequential policies,
//! [`complexity`] the complexity measures, [`environments`] the reward
//! sources (stochastic presets and oblivious adversaries), and [`harness`]
//! the Monte Carlo runner and report emission.
//!
//! ```
//! use robust_bai::complexity::{h_bob, h_sr, h_unif};
//! use robust_bai::environments::{preset, PresetOptions, SetupId};
//! use robust_bai::model::GapProfile;
//!
//! let means = preset(SetupId::D, PresetOptions::default());
//! let profile = GapProfile::from_means(&means).unwrap();
//! assert_eq!(h_sr(&profile).round(), 400.0);
//! assert_eq!(h_bob(&profile).round(), 500.0);
//! assert!(h_unif(&profile) > 937.0);
//! ```

pub mod complexity;
pub mod environments;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod learners;
pub mod model;
pub mod rng;

pub use error::{BaiError, Result};
pub use model::{ArmIndex, GapProfile, HindsightGaps, ProbabilityVector, RewardMatrix};
pub use rng::RngStream;
