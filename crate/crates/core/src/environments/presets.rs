//! The eight Bernoulli benchmark instances. The best arm always has mean 1/2.

use std::fmt;
use std::str::FromStr;

use crate::error::BaiError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetupId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl SetupId {
    pub const ALL: [SetupId; 8] = [
        SetupId::A,
        SetupId::B,
        SetupId::C,
        SetupId::D,
        SetupId::E,
        SetupId::F,
        SetupId::G,
        SetupId::H,
    ];

    pub fn description(self) -> &'static str {
        match self {
            SetupId::A => "One group of bad arms",
            SetupId::B => "Two groups of bad arms",
            SetupId::C => "Geometric progression",
            SetupId::D => "6 arms divided into three groups",
            SetupId::E => "Arithmetic progression",
            SetupId::F => "2 good arms and a large group of bad arms",
            SetupId::G => "Three groups of bad arms",
            SetupId::H => "Square-root gaps",
        }
    }

    pub fn letter(self) -> char {
        (b'A' + self as u8) as char
    }
}

impl fmt::Display for SetupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for SetupId {
    type Err = BaiError;

    fn from_str(s: &str) -> Result<Self, BaiError> {
        let s = s.trim();
        let mut chars = s.chars();
        match (chars.next().map(|c| c.to_ascii_uppercase()), chars.next()) {
            (Some(c @ 'A'..='H'), None) => Ok(SetupId::ALL[(c as u8 - b'A') as usize]),
            _ => Err(BaiError::config(format!("unknown setup `{s}` (expected A..H)"))),
        }
    }
}

/// Reading of setup E's means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SetupEMode {
    /// Gaps `0.025 (i - 1)`, consistent with the published complexity row
    /// (3200 / 3200 / 24000).
    #[default]
    TableConsistent,
    /// Means `0.5 - 0.025 i` as printed; gives `H_SR = 800`.
    Printed,
}

/// Gap arithmetic for setup C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SetupCGaps {
    /// Gaps `0.37^i` exactly.
    #[default]
    Exact,
    /// Gaps rounded to three decimals (0.137, 0.051, 0.019), which reproduces
    /// the published row 5540 / 5540 / 11080.
    Rounded3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PresetOptions {
    pub setup_e: SetupEMode,
    pub setup_c: SetupCGaps,
}

fn groups(k: usize, groups: &[(usize, f64)]) -> Vec<f64> {
    let mut means = vec![0.5];
    for &(count, mean) in groups {
        means.extend(std::iter::repeat_n(mean, count));
    }
    debug_assert_eq!(means.len(), k);
    means
}

/// Per-arm means of a benchmark setup; arm 1 is the best arm.
pub fn preset(id: SetupId, options: PresetOptions) -> Vec<f64> {
    match id {
        SetupId::A => groups(20, &[(19, 0.4)]),
        SetupId::B => groups(20, &[(5, 0.42), (14, 0.38)]),
        SetupId::C => {
            let mut means = vec![0.5];
            for i in 2..=4 {
                let gap = 0.37f64.powi(i);
                let gap = match options.setup_c {
                    SetupCGaps::Exact => gap,
                    SetupCGaps::Rounded3 => (gap * 1000.0).round() / 1000.0,
                };
                means.push(0.5 - gap);
            }
            means
        }
        SetupId::D => groups(6, &[(1, 0.42), (2, 0.4), (2, 0.35)]),
        SetupId::E => {
            let mut means = vec![0.5];
            means.extend((2..=15).map(|i| match options.setup_e {
                SetupEMode::TableConsistent => 0.5 - 0.025 * (i - 1) as f64,
                SetupEMode::Printed => 0.5 - 0.025 * i as f64,
            }));
            means
        }
        SetupId::F => groups(20, &[(1, 0.48), (18, 0.37)]),
        SetupId::G => groups(30, &[(5, 0.45), (14, 0.43), (10, 0.38)]),
        SetupId::H => {
            let k = 100.0;
            let mut means = vec![0.5];
            means.extend((2..=100).map(|i| 0.5 - 0.25 * (i as f64 / (2.0 * k)).sqrt()));
            means
        }
    }
}
