use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The identity a report certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    Theorem31,
    Prop41,
    Lemma41,
    Lemma51,
    Lemma52Watson,
    ConstantsRatio,
    Invariance,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::Theorem31 => "theorem31",
            Identity::Prop41 => "prop41",
            Identity::Lemma41 => "lemma41",
            Identity::Lemma51 => "lemma51_52",
            Identity::Lemma52Watson => "watson",
            Identity::ConstantsRatio => "constants",
            Identity::Invariance => "invariance",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a row decides pass or fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// `|lhs − rhs| ≤ tol`.
    Absolute(f64),
    /// `|lhs − rhs| ≤ tol · |rhs|`.
    Relative(f64),
    /// `|lhs − rhs| ≤ k · stderr`.
    Sigma { k: f64, stderr: f64 },
    /// Exact equality established elsewhere (rational arithmetic).
    Exact,
    /// The row records an expected outcome; `passed` is set by the caller.
    Expectation,
}

/// One sub-check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub criterion: Criterion,
    pub passed: bool,
    /// Exact values or error messages.
    pub detail: String,
}

impl CheckRow {
    pub fn compare(label: String, lhs: f64, rhs: f64, criterion: Criterion) -> Self {
        let abs_err = (lhs - rhs).abs();
        let rel_err = if rhs != 0.0 { abs_err / rhs.abs() } else { abs_err };
        let passed = match criterion {
            Criterion::Absolute(t) => abs_err <= t,
            Criterion::Relative(t) => abs_err <= t * rhs.abs(),
            Criterion::Sigma { k, stderr } => abs_err <= k * stderr,
            Criterion::Exact => abs_err == 0.0,
            Criterion::Expectation => true,
        };
        Self { label, lhs, rhs, abs_err, rel_err, criterion, passed, detail: String::new() }
    }

    /// A sub-check that could not be evaluated; it fails without aborting the suite.
    pub fn error(label: String, err: &crate::Error) -> Self {
        Self {
            label,
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            criterion: Criterion::Expectation,
            passed: false,
            detail: alloc::format!("{err}"),
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }
}

/// Outcome of a verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub identity: Identity,
    pub grid: Vec<String>,
    pub rows: Vec<CheckRow>,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub verdict: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(identity: Identity, tolerance: f64) -> Self {
        Self {
            identity,
            grid: Vec::new(),
            rows: Vec::new(),
            max_abs_err: 0.0,
            max_rel_err: 0.0,
            tolerance,
            verdict: true,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: CheckRow) {
        self.rows.push(row);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Recomputes the summary fields from the rows; expectation rows are left
    /// out of the error maxima.
    pub fn finish(mut self) -> Self {
        let measured = self.rows.iter().filter(|r| r.criterion != Criterion::Expectation);
        self.max_abs_err = measured.clone().map(|r| r.abs_err).fold(0.0, nan_max);
        self.max_rel_err = measured.map(|r| r.rel_err).fold(0.0, nan_max);
        self.verdict = self.rows.iter().all(|r| r.passed);
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.passed)
    }

    /// Merges reports of the same identity (e.g. one per space) in order.
    pub fn merge(identity: Identity, tolerance: f64, parts: Vec<VerificationReport>) -> Self {
        let mut out = Self::new(identity, tolerance);
        for p in parts {
            out.grid.extend(p.grid);
            out.rows.extend(p.rows);
            for n in p.notes {
                if !out.notes.contains(&n) {
                    out.notes.push(n);
                }
            }
        }
        out.finish()
    }
}

fn nan_max(acc: f64, x: f64) -> f64 {
    if x.is_nan() || acc.is_nan() {
        f64::NAN
    } else {
        acc.max(x)
    }
}
