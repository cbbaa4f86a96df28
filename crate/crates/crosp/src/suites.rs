//! Running verification suites over several spaces and rendering reports.

use clap::ValueEnum;
use crosp_core::spaces::SpaceSpec;
use crosp_core::verify::{
    self, lemma52_default_grid, watson_default_points, CheckRow, Criterion, VerificationReport, WForm, LEMMA41_GRID,
    TOL_CHAIN, TOL_QUADRATURE, TOL_SERIES, TOL_SIGMA, TOL_WATSON,
};
use rayon::prelude::*;

use crate::doc::{csv_lines, text_table, Field, Record};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem31,
    Prop41,
    Lemma41,
    #[value(name = "lemma51_52", alias = "lemma51", alias = "lemma52")]
    Lemma5152,
    Watson,
    Constants,
    Invariance,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Theorem31,
        Suite::Prop41,
        Suite::Lemma41,
        Suite::Lemma5152,
        Suite::Watson,
        Suite::Constants,
        Suite::Invariance,
    ];

    /// Suites parameterized by a space.
    pub fn per_space(self) -> bool {
        matches!(self, Suite::Theorem31 | Suite::Prop41 | Suite::Constants | Suite::Invariance)
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Theorem31 => TOL_SERIES,
            Suite::Prop41 => TOL_CHAIN,
            Suite::Lemma41 | Suite::Lemma5152 => TOL_QUADRATURE,
            Suite::Watson => TOL_WATSON,
            Suite::Constants => 1e-12,
            Suite::Invariance | Suite::All => TOL_SIGMA,
        }
    }

    pub fn default_n_max(self) -> usize {
        match self {
            Suite::Lemma41 => 12,
            Suite::Lemma5152 => 8,
            Suite::Watson => 6,
            _ => 0,
        }
    }
}

/// Suite parameters; `None` means the suite's default.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub spaces: Vec<SpaceSpec>,
    pub grid_size: usize,
    pub l_max: usize,
    pub n_max: Option<usize>,
    pub n_points: usize,
    pub samples: u64,
    pub seed: u64,
    pub tol: Option<f64>,
    pub tol_sigma: f64,
    pub printed: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            spaces: SpaceSpec::default_catalog(),
            grid_size: 181,
            l_max: 20,
            n_max: None,
            n_points: 100,
            samples: 1_000_000,
            seed: 0,
            tol: None,
            tol_sigma: TOL_SIGMA,
            printed: false,
        }
    }
}

fn on_spaces(
    spaces: &[SpaceSpec],
    f: impl Fn(&SpaceSpec) -> Result<VerificationReport> + Sync + Send,
) -> Result<Vec<VerificationReport>> {
    spaces.par_iter().map(f).collect()
}

/// Runs one suite (or all of them); one report per space for the space-wise
/// suites, in the order the spaces were given.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    let tol = opts.tol.unwrap_or(suite.default_tol());
    let n_max = opts.n_max.unwrap_or(suite.default_n_max());
    Ok(match suite {
        Suite::All => {
            let parts: Vec<Vec<VerificationReport>> = Suite::EACH
                .par_iter()
                .map(|&s| {
                    let mut o = opts.clone();
                    if s == Suite::Invariance {
                        o.spaces.retain(SpaceSpec::supports_sampling);
                    }
                    run_suite(s, &o)
                })
                .collect::<Result<_>>()?;
            parts.into_iter().flatten().collect()
        }
        Suite::Theorem31 => on_spaces(&opts.spaces, |s| Ok(verify::verify_theorem31(s, opts.grid_size, tol)))?,
        Suite::Prop41 => on_spaces(&opts.spaces, |s| Ok(verify::verify_prop41(s, opts.l_max, tol)))?,
        Suite::Constants => on_spaces(&opts.spaces, |s| {
            Ok(verify::verify_constants(s, tol, Some((opts.samples, opts.seed))))
        })?,
        Suite::Invariance => on_spaces(&opts.spaces, |s| {
            Ok(verify::verify_invariance(s, opts.n_points, opts.samples, opts.seed, opts.tol_sigma)?)
        })?,
        Suite::Lemma41 => vec![verify::verify_lemma41(n_max, &LEMMA41_GRID, tol)],
        Suite::Lemma5152 => {
            let form = if opts.printed { WForm::Printed } else { WForm::Corrected };
            vec![verify::verify_lemma51_52(n_max, &LEMMA41_GRID, &lemma52_default_grid(), form, tol)]
        }
        Suite::Watson => vec![verify::verify_watson(n_max, &watson_default_points(), tol)],
    })
}

fn criterion_text(c: &Criterion) -> String {
    match c {
        Criterion::Absolute(t) => format!("abs<={t:e}"),
        Criterion::Relative(t) => format!("rel<={t:e}"),
        Criterion::Sigma { k, stderr } => format!("<={k}sigma(stderr={stderr:e})"),
        Criterion::Exact => "exact".into(),
        Criterion::Expectation => "expectation".into(),
    }
}

fn row_record(r: &CheckRow) -> Record {
    Record::new()
        .with("label", r.label.as_str())
        .with("lhs", r.lhs)
        .with("rhs", r.rhs)
        .with("abs_err", r.abs_err)
        .with("rel_err", r.rel_err)
        .with("criterion", criterion_text(&r.criterion))
        .with("passed", r.passed)
        .with("detail", r.detail.as_str())
}

fn verdict_text(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

pub fn report_record(rep: &VerificationReport) -> Record {
    let strings = |v: &[String]| Field::List(v.iter().map(|s| Field::from(s.as_str())).collect());
    Record::new()
        .with("identity", rep.identity.name())
        .with("verdict", verdict_text(rep.verdict))
        .with("tolerance", rep.tolerance)
        .with("max_abs_err", rep.max_abs_err)
        .with("max_rel_err", rep.max_rel_err)
        .with("failures", rep.failures().count())
        .with("grid", strings(&rep.grid))
        .with("notes", strings(&rep.notes))
        .with("rows", Field::List(rep.rows.iter().map(|r| Field::Obj(row_record(r))).collect()))
}

const ROW_COLUMNS: [&str; 9] = ["identity", "label", "lhs", "rhs", "abs_err", "rel_err", "criterion", "passed", "detail"];

fn row_cells(rep: &VerificationReport, r: &CheckRow) -> Vec<String> {
    let mut cells = vec![rep.identity.name().to_owned()];
    cells.extend(row_record(r).0.into_iter().map(|(_, v)| v.cell()));
    cells
}

/// Every row of every report as CSV.
pub fn reports_csv(reports: &[VerificationReport]) -> String {
    let header: Vec<String> = ROW_COLUMNS.iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<String>> = reports.iter().flat_map(|rep| rep.rows.iter().map(move |r| row_cells(rep, r))).collect();
    csv_lines(&header, &rows)
}

/// A human-readable summary: one block per report with its rows and notes.
pub fn reports_table(reports: &[VerificationReport]) -> String {
    let header: Vec<String> = ["label", "lhs", "rhs", "abs_err", "rel_err", "passed", "detail"].iter().map(|s| s.to_string()).collect();
    let mut out = String::new();
    for rep in reports {
        out.push_str(&format!(
            "== {} [{}] max_abs_err={:e} max_rel_err={:e} tol={:e}\n",
            rep.identity,
            verdict_text(rep.verdict).to_uppercase(),
            rep.max_abs_err,
            rep.max_rel_err,
            rep.tolerance
        ));
        for g in &rep.grid {
            out.push_str(&format!("   grid: {g}\n"));
        }
        let rows: Vec<Vec<String>> = rep
            .rows
            .iter()
            .map(|r| {
                let c = row_cells(rep, r);
                vec![c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone(), c[5].clone(), c[7].clone(), c[8].clone()]
            })
            .collect();
        for line in text_table(&header, &rows).lines() {
            out.push_str("   ");
            out.push_str(line);
            out.push('\n');
        }
        for n in &rep.notes {
            out.push_str(&format!("   note: {n}\n"));
        }
    }
    out
}
