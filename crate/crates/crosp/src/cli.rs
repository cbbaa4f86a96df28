//! The `crosp` command line.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crosp_core::discrepancy::{shard_rng, DEFAULT_SHARDS};
use crosp_core::harmonic::{avg_symdiff, ExpansionCoeffs};
use crosp_core::spaces::{avg_chordal, gamma_const, sample_uniform, RadiusMeasure, SpaceSpec};

use crate::doc::{text_table, Field, Record};
use crate::error::{exit, Error, Result};
use crate::io::{distance_csv, load_input, point_set_record, write_text, Input};
use crate::parallel;
use crate::suites::{report_record, reports_csv, reports_table, run_suite, Suite, SuiteOptions};

#[derive(Debug, Parser)]
#[command(name = "crosp", version, about = "Discrepancy and distance energies on compact rank-one symmetric spaces")]
pub struct Cli {
    /// Base seed of every random stream.
    #[arg(long, global = true, env = "CROSP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Leave out the `meta` block (version, timestamp) so output is reproducible byte for byte.
    #[arg(long, global = true)]
    pub no_meta: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Chordal,
    Geodesic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Closed,
    Series,
    Mc,
}

fn parse_space(s: &str) -> std::result::Result<SpaceSpec, String> {
    s.parse().map_err(|e: crosp_core::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the default catalog with (d, d0, m).
    Spaces,
    /// Print γ(Q), ⟨τ⟩ and ⟨θ^Δ⟩ for a space.
    Constants {
        #[arg(long, value_parser = parse_space)]
        space: SpaceSpec,
    },
    /// Draw a uniform point set (JSON) or its distance matrix (`--format csv`).
    Gen {
        #[arg(long, value_parser = parse_space)]
        space: SpaceSpec,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        label: Option<String>,
    },
    /// Sum of pairwise distances over ordered pairs.
    Energy {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = MetricArg::Chordal)]
        metric: MetricArg,
    },
    /// Ball quadratic discrepancy λ[ξ♮, D_N].
    Discrepancy {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Route::Closed)]
        route: Route,
        /// Monte Carlo samples for `--route mc`.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Series truncation tolerance per pair for `--route series`.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Point-set JSON, or a distance-matrix CSV (requires --space).
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_space)]
    pub space: Option<SpaceSpec>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// A catalog name such as `cp2`, or `all` for the default catalog.
    #[arg(long, default_value = "all")]
    pub space: String,
    #[arg(long, default_value_t = 181)]
    pub grid_size: usize,
    #[arg(long, default_value_t = 20)]
    pub l_max: usize,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Points in the random set of the invariance suite.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 3.0)]
    pub tol_sigma: f64,
    /// Compare against the printed product form of W_n (expected to fail).
    #[arg(long)]
    pub printed: bool,
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("crosp: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Error::Usage("--threads must be positive".into()));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| Error::Usage(format!("cannot start worker threads: {e}")))?;
    let (text, code) = pool.install(|| dispatch(cli))?;
    match &cli.out {
        Some(path) => write_text(path, &text)?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn config(cli: &Cli) -> Record {
    let mut r = Record::new().with("command", command_name(&cli.command));
    match &cli.command {
        Command::Spaces => {}
        Command::Constants { space } => r.push("space", space.to_string()),
        Command::Gen { space, n, label } => {
            r.push("space", space.to_string());
            r.push("n", *n);
            r.push("label", label.clone());
        }
        Command::Energy { input, metric } => {
            push_input(&mut r, input);
            r.push("metric", format!("{metric:?}").to_lowercase());
        }
        Command::Discrepancy { input, route, samples, tol } => {
            push_input(&mut r, input);
            r.push("route", route_name(*route));
            r.push("samples", *samples);
            r.push("tol", *tol);
        }
        Command::Verify(v) => {
            r.push("suite", suite_name(v.suite));
            r.push("space", v.space.as_str());
            r.push("grid_size", v.grid_size);
            r.push("l_max", v.l_max);
            r.push("n_max", v.n_max);
            r.push("n", v.n);
            r.push("samples", v.samples);
            r.push("tol", v.tol);
            r.push("tol_sigma", v.tol_sigma);
            r.push("printed", v.printed);
        }
    }
    r.push("seed", cli.seed);
    r.push("format", format!("{:?}", cli.format).to_lowercase());
    r.push("threads", cli.threads);
    r
}

fn push_input(r: &mut Record, input: &InputArgs) {
    r.push("in", input.input.display().to_string());
    r.push("space", input.space.map(|s| s.to_string()));
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spaces => "spaces",
        Command::Constants { .. } => "constants",
        Command::Gen { .. } => "gen",
        Command::Energy { .. } => "energy",
        Command::Discrepancy { .. } => "discrepancy",
        Command::Verify(_) => "verify",
    }
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default()
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Closed => "closed",
        Route::Series => "series",
        Route::Mc => "mc",
    }
}

fn meta() -> Record {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Record::new()
        .with("version", env!("CARGO_PKG_VERSION"))
        .with("timestamp_unix", secs)
        .with("worker_threads", rayon::current_num_threads())
}

/// Appends `config` and, unless suppressed, `meta`.
fn finish(cli: &Cli, mut body: Record) -> Record {
    body.push("config", config(cli));
    if !cli.no_meta {
        body.push("meta", meta());
    }
    body
}

fn render(cli: &Cli, body: Record) -> String {
    let doc = finish(cli, body);
    match cli.format {
        Format::Json => doc.to_json(),
        Format::Table => doc.to_table(),
        Format::Csv => doc.to_csv(),
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    let ok = |text| Ok((text, exit::SUCCESS));
    match &cli.command {
        Command::Spaces => spaces(cli),
        Command::Constants { space } => {
            let body = Record::new()
                .with("quantity", "constants")
                .with("space", space.to_string())
                .with("d", space.d)
                .with("d0", space.d0)
                .with("m", space.m)
                .with("gamma", gamma_const(space))
                .with("avg_chordal", avg_chordal(space))
                .with("avg_symdiff", avg_symdiff(space, &RadiusMeasure::CanonicalSine));
            ok(render(cli, body))
        }
        Command::Gen { space, n, label } => {
            let mut rng = shard_rng(cli.seed, DEFAULT_SHARDS + 1);
            let label = label.clone().unwrap_or_else(|| format!("uniform {space}, N = {n}, seed {}", cli.seed));
            let mut set = sample_uniform(space, *n, &mut rng)?;
            set.label = label;
            match cli.format {
                Format::Json => ok(finish(cli, point_set_record(&set)).to_json()),
                Format::Csv => ok(distance_csv(&set.distance_matrix())),
                Format::Table => Err(Error::Usage("gen writes json or csv".into())),
            }
        }
        Command::Energy { input, metric } => {
            let data = load_input(&input.input, input.space)?;
            let metric = match metric {
                MetricArg::Chordal => crosp_core::discrepancy::Metric::Chordal,
                MetricArg::Geodesic => crosp_core::discrepancy::Metric::Geodesic,
            };
            let value = match &data {
                Input::Points(p) => parallel::pair_sum(p, metric),
                Input::Matrix(_, m) => parallel::pair_sum(m, metric),
            };
            if data.is_empty() {
                eprintln!("crosp: warning: empty point set, the sum is 0");
            }
            let body = Record::new()
                .with("quantity", "pair_sum")
                .with("metric", format!("{metric:?}").to_lowercase())
                .with("value", value)
                .with("space", data.space().to_string())
                .with("n_points", data.len());
            ok(render(cli, body))
        }
        Command::Discrepancy { input, route, samples, tol } => {
            let data = load_input(&input.input, input.space)?;
            let space = *data.space();
            let (value, stderr) = match (route, &data) {
                (Route::Closed, Input::Points(p)) => (parallel::lambda_closed(&space, p), None),
                (Route::Closed, Input::Matrix(_, m)) => (parallel::lambda_closed(&space, m), None),
                (Route::Series, _) => {
                    let coeffs = ExpansionCoeffs::full(&space, &RadiusMeasure::CanonicalSine)?;
                    let v = match &data {
                        Input::Points(p) => parallel::lambda_series(&coeffs, p, *tol)?,
                        Input::Matrix(_, m) => parallel::lambda_series(&coeffs, m, *tol)?,
                    };
                    (v, None)
                }
                (Route::Mc, Input::Points(p)) => {
                    let e = parallel::lambda_mc(p, *samples, cli.seed)?;
                    (e.value, Some(e.stderr))
                }
                (Route::Mc, Input::Matrix(..)) => {
                    return Err(Error::Usage("the Monte Carlo route needs point coordinates, not distances".into()))
                }
            };
            let mut body = Record::new()
                .with("quantity", "lambda")
                .with("value", value)
                .with("stderr", stderr)
                .with("route", route_name(*route))
                .with("space", space.to_string())
                .with("n_points", data.len());
            if *route == Route::Mc {
                body.push("samples", *samples);
                body.push("seed", cli.seed);
            }
            ok(render(cli, body))
        }
        Command::Verify(v) => verify(cli, v),
    }
}

fn spaces(cli: &Cli) -> Result<(String, i32)> {
    let catalog = SpaceSpec::default_catalog();
    let row = |s: &SpaceSpec| {
        Record::new()
            .with("name", s.to_string())
            .with("family", s.family.code())
            .with("n", s.n)
            .with("d", s.d)
            .with("d0", s.d0)
            .with("m", s.m)
            .with("sampling", s.supports_sampling())
    };
    let text = match cli.format {
        Format::Json => {
            let list = Field::List(catalog.iter().map(|s| Field::Obj(row(s))).collect());
            finish(cli, Record::new().with("spaces", list)).to_json()
        }
        Format::Csv | Format::Table => {
            let rows: Vec<Vec<String>> =
                catalog.iter().map(|s| row(s).0.into_iter().map(|(_, v)| v.cell()).collect()).collect();
            let header: Vec<String> = row(&catalog[0]).0.into_iter().map(|(k, _)| k).collect();
            if cli.format == Format::Csv {
                crate::doc::csv_lines(&header, &rows)
            } else {
                text_table(&header, &rows)
            }
        }
    };
    Ok((text, exit::SUCCESS))
}

fn verify(cli: &Cli, v: &VerifyArgs) -> Result<(String, i32)> {
    let spaces = if v.space.eq_ignore_ascii_case("all") {
        let mut all = SpaceSpec::default_catalog();
        if v.suite == Suite::Invariance {
            all.retain(SpaceSpec::supports_sampling);
        }
        all
    } else {
        vec![v.space.parse::<SpaceSpec>().map_err(Error::Core)?]
    };
    let opts = SuiteOptions {
        spaces,
        grid_size: v.grid_size,
        l_max: v.l_max,
        n_max: v.n_max,
        n_points: v.n,
        samples: v.samples,
        seed: cli.seed,
        tol: v.tol,
        tol_sigma: v.tol_sigma,
        printed: v.printed,
    };
    let reports = run_suite(v.suite, &opts)?;
    let pass = reports.iter().all(|r| r.verdict);
    let text = match cli.format {
        Format::Json => {
            let body = Record::new()
                .with("quantity", "verification")
                .with("suite", suite_name(v.suite))
                .with("verdict", if pass { "pass" } else { "fail" })
                .with("reports", Field::List(reports.iter().map(|r| Field::Obj(report_record(r))).collect()));
            finish(cli, body).to_json()
        }
        Format::Csv => reports_csv(&reports),
        Format::Table => {
            let mut t = reports_table(&reports);
            t.push_str(if pass { "verdict: PASS\n" } else { "verdict: FAIL\n" });
            t
        }
    };
    Ok((text, if pass { exit::SUCCESS } else { exit::VERIFICATION_FAILED }))
}
