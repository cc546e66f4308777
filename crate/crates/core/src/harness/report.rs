//! Error-rate reports and their CSV form.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use crate::error::Result;
use crate::learners::LearnerKind;

const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95% for `errors` out of `reps`.
pub fn wilson_interval(errors: usize, reps: usize) -> (f64, f64) {
    let n = reps as f64;
    let p = errors as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // Clamp so the interval always contains the point estimate.
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRateRow {
    pub setup: String,
    pub learner: LearnerKind,
    pub n: usize,
    pub repetitions: usize,
    pub errors: usize,
    pub error_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub theory_bound: Option<f64>,
    pub seed: u64,
    pub wall_time: Duration,
}

impl ErrorRateRow {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        setup: &str,
        learner: LearnerKind,
        n: usize,
        repetitions: usize,
        errors: usize,
        theory_bound: Option<f64>,
        seed: u64,
        wall_time: Duration,
    ) -> Self {
        let (ci_low, ci_high) = wilson_interval(errors, repetitions);
        ErrorRateRow {
            setup: setup.to_string(),
            learner,
            n,
            repetitions,
            errors,
            error_rate: errors as f64 / repetitions as f64,
            ci_low,
            ci_high,
            theory_bound,
            seed,
            wall_time,
        }
    }

    /// One binomial standard deviation at the observed rate.
    pub fn sigma(&self) -> f64 {
        (self.error_rate * (1.0 - self.error_rate) / self.repetitions as f64).sqrt()
    }

    pub fn vacuous(&self) -> Option<bool> {
        self.theory_bound.map(|b| b >= 1.0)
    }

    pub fn overlaps(&self, other: &ErrorRateRow) -> bool {
        self.ci_low <= other.ci_high && other.ci_low <= self.ci_high
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ErrorRateReport {
    pub rows: Vec<ErrorRateRow>,
    pub wall_time: Duration,
}

impl ErrorRateReport {
    pub fn row(&self, learner: LearnerKind) -> Option<&ErrorRateRow> {
        self.rows.iter().find(|r| r.learner == learner)
    }
}

pub const CSV_HEADER: &str = "setup,learner,n,repetitions,errors,error_rate,ci_low,ci_high,theory_bound,vacuous,seed";

/// `x` with 10 significant digits, trailing zeros trimmed.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // Rounding may carry into a new digit (9.9999999999 -> 10.00000000).
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.9e}");
        let (mantissa, e) = s.split_once('e').unwrap();
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{e}")
    }
}

/// Writes the CSV body (header included) to `out`.
pub fn write_csv(report: &ErrorRateReport, out: &mut impl Write) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.setup,
            r.learner,
            r.n,
            r.repetitions,
            r.errors,
            format_real(r.error_rate),
            format_real(r.ci_low),
            format_real(r.ci_high),
            r.theory_bound.map(format_real).unwrap_or_default(),
            r.vacuous().map(|v| v.to_string()).unwrap_or_default(),
            r.seed
        )?;
    }
    Ok(())
}

pub fn emit_csv(report: &ErrorRateReport, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_csv(report, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(errors: usize, reps: usize) -> ErrorRateRow {
        ErrorRateRow::new("D", LearnerKind::Rule, 100, reps, errors, Some(0.25), 3, Duration::ZERO)
    }

    #[test]
    fn wilson_known_values() {
        let (lo, hi) = wilson_interval(0, 10);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.2775327998628892).abs() < 1e-12);
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.4038315303659956).abs() < 1e-12);
        assert!((hi - 0.5961684696340044).abs() < 1e-12);
        let (lo, hi) = wilson_interval(10, 10);
        assert_eq!(hi, 1.0);
        assert!(lo < 1.0);
    }

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(0.5), "0.5");
        assert_eq!(format_real(1.0 / 3.0), "0.3333333333");
        assert_eq!(format_real(2.0 / 3.0), "0.6666666667");
        assert_eq!(format_real(0.1939645), "0.1939645");
        assert_eq!(format_real(12345.678901234), "12345.6789");
        assert_eq!(format_real(3.0), "3");
        assert_eq!(format_real(9.99999999999), "10");
        assert_eq!(format_real(1.5e-7), "1.5e-7");
        assert_eq!(format_real(2.0e12), "2e12");
    }

    #[test]
    fn empty_report_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&ErrorRateReport::default(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn one_row_report() {
        let report = ErrorRateReport {
            rows: vec![row(1, 4)],
            wall_time: Duration::from_secs(1),
        };
        let mut buf = Vec::new();
        write_csv(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(!text.contains('\r'));
        assert!(lines[1].starts_with("D,rule,100,4,1,0.25,"), "{}", lines[1]);
        assert!(lines[1].ends_with(",0.25,false,3"), "{}", lines[1]);
    }

    #[test]
    fn emitted_file_matches_writer() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let report = ErrorRateReport {
            rows: vec![row(3, 40), row(0, 40)],
            wall_time: Duration::ZERO,
        };
        emit_csv(&report, &path).unwrap();
        let mut buf = Vec::new();
        write_csv(&report, &mut buf).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), buf);
    }

    #[test]
    fn interval_contains_rate() {
        for reps in [1, 2, 7, 100, 4000] {
            for errors in 0..=reps.min(50) {
                let r = row(errors, reps);
                assert!(r.ci_low <= r.error_rate && r.error_rate <= r.ci_high);
            }
        }
    }
}
