use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::series::MatrixPowerSeries;
use crate::{Error, Result};

/// Closed-form families.
pub const SLACK_CLOSED_FORM: f64 = 1e-9;
/// Randomized families; absorbs accumulated spectral-norm tolerance.
pub const SLACK_RANDOM: f64 = 1e-7;

/// At most this many violation witnesses are kept per report.
pub const MAX_VIOLATIONS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// The check is vacuous for the given inputs (documented collapse).
    Degenerate,
    /// Violations observed by a check that runs in report mode.
    Finding,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Degenerate => "degenerate",
            Status::Finding => "finding",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether violations are failures or findings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Assert,
    Report,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub sample: usize,
    pub fingerprint: String,
    pub margin: f64,
}

/// Outcome of one inequality over a sweep. `min_margin` is the smallest
/// `RHS − LHS` seen; a margin below `−slack` is a violation.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub inequality_id: String,
    pub grid: String,
    pub samples: usize,
    pub evaluations: usize,
    pub seed: u64,
    pub slack: f64,
    pub min_margin: f64,
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub mode: Mode,
    pub degenerate: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(inequality_id: &str, slack: f64) -> Self {
        Self {
            inequality_id: inequality_id.into(),
            grid: String::new(),
            samples: 0,
            evaluations: 0,
            seed: 0,
            slack,
            min_margin: f64::INFINITY,
            violations: Vec::new(),
            violation_count: 0,
            mode: Mode::Assert,
            degenerate: false,
            notes: Vec::new(),
        }
    }

    pub fn with_grid(mut self, grid: impl Into<String>) -> Self {
        self.grid = grid.into();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn mark_degenerate(&mut self) {
        self.degenerate = true;
    }

    /// Records one evaluation with margin `RHS − LHS`. The fingerprint is
    /// only built for violations.
    pub fn record(&mut self, sample: usize, margin: f64, fingerprint: impl FnOnce() -> String) {
        self.evaluations += 1;
        // NaN margins count as violations.
        if !(margin >= self.min_margin) {
            self.min_margin = if margin.is_nan() { f64::NAN } else { margin };
        }
        if !(margin >= -self.slack) {
            self.violation_count += 1;
            self.violations.push(Violation {
                sample,
                fingerprint: fingerprint(),
                margin,
            });
            self.trim_violations();
        }
    }

    fn trim_violations(&mut self) {
        self.violations.sort_by(|a, b| {
            a.sample
                .cmp(&b.sample)
                .then_with(|| a.fingerprint.cmp(&b.fingerprint))
        });
        self.violations.truncate(MAX_VIOLATIONS);
    }

    pub fn status(&self) -> Status {
        if self.degenerate {
            return Status::Degenerate;
        }
        let violated = self.violation_count > 0 || self.min_margin.is_nan();
        match (violated, self.mode) {
            (false, _) => Status::Pass,
            (true, Mode::Assert) => Status::Fail,
            (true, Mode::Report) => Status::Finding,
        }
    }

    /// Combines two partial reports of the same check. Associative and
    /// commutative.
    pub fn merge(mut self, other: Self) -> Result<Self> {
        if self.inequality_id != other.inequality_id {
            return Err(Error::InvalidInput(format!(
                "cannot merge reports '{}' and '{}'",
                self.inequality_id, other.inequality_id
            )));
        }
        self.samples += other.samples;
        self.evaluations += other.evaluations;
        if !(other.min_margin >= self.min_margin) {
            self.min_margin = other.min_margin;
        }
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.trim_violations();
        self.degenerate |= other.degenerate;
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
        self.notes.sort();
        Ok(self)
    }
}

/// Short stable identifier of a series: size, degree and an FNV-1a hash of
/// the coefficient bits.
pub fn fingerprint(f: &MatrixPowerSeries) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for c in f.coeffs() {
        for z in c.entries() {
            for bits in [z.re.to_bits(), z.im.to_bits()] {
                for byte in bits.to_le_bytes() {
                    hash ^= u64::from(byte);
                    hash = hash.wrapping_mul(0x0100_0000_01b3);
                }
            }
        }
    }
    format!("d{}:D{}:{hash:016x}", f.dim(), f.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn status_follows_margins_and_mode() {
        let mut r = VerificationReport::new("x", 1e-9);
        r.record(0, 0.5, || "a".into());
        r.record(1, -1e-10, || "b".into());
        assert_eq!(r.status(), Status::Pass);
        assert_eq!(r.min_margin, -1e-10);
        r.record(2, -1e-3, || "c".into());
        assert_eq!(r.status(), Status::Fail);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.clone().with_mode(Mode::Report).status(), Status::Finding);
        r.mark_degenerate();
        assert_eq!(r.status(), Status::Degenerate);
    }

    #[test]
    fn nan_margin_is_a_violation() {
        let mut r = VerificationReport::new("x", 1e-9);
        r.record(0, f64::NAN, || "nan".into());
        assert_eq!(r.status(), Status::Fail);
    }

    #[test]
    fn merge_is_order_independent() {
        let mk = |id: usize, m: f64| {
            let mut r = VerificationReport::new("x", 1e-9).with_samples(1);
            r.record(id, m, || id.to_string());
            r
        };
        let a = mk(0, -1.0)
            .merge(mk(1, 0.2))
            .unwrap()
            .merge(mk(2, -0.5))
            .unwrap();
        let b = mk(2, -0.5)
            .merge(mk(0, -1.0).merge(mk(1, 0.2)).unwrap())
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.samples, 3);
        assert!(mk(0, 1.0)
            .merge(VerificationReport::new("y", 1e-9))
            .is_err());
    }
}
