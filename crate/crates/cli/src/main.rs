mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rug::Rational;

use pi26::analytic::{self, AnalyticConfig, Estimator};
use pi26::decimal::{parse_decimal, positional, scientific};
use pi26::pipeline::{self, DeltaSeries, OffsetForm};
use pi26::poly;
use pi26::table::{self, PrimeCountTable, MAX_EXPONENT};
use pi26::verify::{self, VerifyConfig};

use output::{emit, Format, Rows};

/// Extrapolation of π(10^n) by exact interpolation and continued-fraction
/// correction, with high-precision analytic comparisons.
#[derive(Debug, Parser)]
#[command(name = "pi26", version)]
struct Cli {
    /// Tab-separated π(10^n) table replacing the built-in one.
    #[arg(long, global = true)]
    table: Option<PathBuf>,

    /// Decimal digits: working precision for `approx` (default 60),
    /// rendered significant digits elsewhere.
    #[arg(long, global = true)]
    digits: Option<u32>,

    /// Largest x the prime sieve may count to.
    #[arg(long, global = true, default_value_t = table::DEFAULT_ORACLE_LIMIT)]
    oracle_limit: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Output file (a directory for `figures`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The π(10^n) table, cross-checked against the sieve where it reaches.
    Table,
    /// Recompute every published value and compare with the fixtures.
    Verify,
    /// Interpolating polynomial through the first n table values.
    Poly {
        #[arg(long)]
        n: u32,
    },
    /// Folded continued-fraction coefficients of the corrective function Φ_n.
    Phi {
        #[arg(long)]
        n: u32,
    },
    /// Relative shortfalls δ_m of the polynomial extrapolations.
    Delta,
    /// Relative errors δ′_m of the corrected extrapolations.
    DeltaPrime,
    /// Corrected extrapolation of π(10^26) and the conjectured ranges.
    Conjecture {
        #[arg(long, default_value = "7e-9")]
        psi_low: String,
        #[arg(long, default_value = "7.1e-9")]
        psi_high: String,
        #[arg(long, value_enum, default_value_t = OffsetArg::FirstOrder)]
        offset_form: OffsetArg,
    },
    /// Analytic approximations of π(10^n).
    Approx {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        #[arg(long, default_value_t = analytic::DEFAULT_JMAX)]
        jmax: u32,
    },
    /// Write the figure datasets fig2_1.csv and fig2_2.csv into --out.
    Figures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OffsetArg {
    FirstOrder,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Pnt,
    Li,
    R,
    Refined,
    All,
}

impl Which {
    fn estimators(self) -> Vec<Estimator> {
        match self {
            Which::Pnt => vec![Estimator::Pnt],
            Which::Li => vec![Estimator::Li],
            Which::R => vec![Estimator::R],
            Which::Refined => vec![Estimator::Refined],
            Which::All => Estimator::ALL.to_vec(),
        }
    }
}

const PHI_DIGITS: u32 = 50;
const TABLE_DIGITS: u32 = 6;
const FIGURE_DIGITS: u32 = 20;
const MIN_ORACLE_LIMIT: u64 = 100;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if cli.oracle_limit < MIN_ORACLE_LIMIT {
        bail!("--oracle-limit must be at least {MIN_ORACLE_LIMIT}");
    }
    if cli.digits == Some(0) {
        bail!("--digits must be positive");
    }
    let table = PrimeCountTable::load(cli.table.as_deref())?;
    let rows = match &cli.command {
        Command::Table => table_rows(&table, cli.oracle_limit)?,
        Command::Verify => {
            let config = VerifyConfig {
                oracle_limit: cli.oracle_limit,
                analytic: AnalyticConfig {
                    digits: cli.digits.unwrap_or(analytic::DEFAULT_DIGITS),
                    ..AnalyticConfig::default()
                },
            };
            let report = verify::run(&table, config);
            let mut rows = Rows::new(&["group", "name", "expected", "actual", "pass"]);
            for r in &report.records {
                rows.push(vec![
                    r.group.into(),
                    r.name.clone(),
                    r.expected.clone(),
                    r.actual.clone(),
                    r.pass.to_string(),
                ]);
            }
            rows.human = Some(report.to_string());
            emit(&rows.render(cli.format)?, cli.out.as_deref())?;
            return Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Poly { n } => poly_rows(&table, *n)?,
        Command::Phi { n } => phi_rows(&table, *n, cli.digits.unwrap_or(PHI_DIGITS))?,
        Command::Delta => delta_rows(&table, cli.digits.unwrap_or(TABLE_DIGITS), false)?,
        Command::DeltaPrime => delta_rows(&table, cli.digits.unwrap_or(TABLE_DIGITS), true)?,
        Command::Conjecture {
            psi_low,
            psi_high,
            offset_form,
        } => {
            let form = match offset_form {
                OffsetArg::FirstOrder => OffsetForm::FirstOrder,
                OffsetArg::Exact => OffsetForm::Exact,
            };
            conjecture_rows(
                &table,
                &parse_bound(psi_low)?,
                &parse_bound(psi_high)?,
                form,
            )?
        }
        Command::Approx { n, which, jmax } => {
            let config = AnalyticConfig {
                digits: cli.digits.unwrap_or(analytic::DEFAULT_DIGITS),
                j_max: *jmax,
            };
            approx_rows(&table, *n, which.estimators(), config)?
        }
        Command::Figures => {
            let Some(dir) = cli.out.as_deref() else {
                bail!("figures needs --out <dir>");
            };
            write_figures(&table, dir, cli.digits.unwrap_or(FIGURE_DIGITS))?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    emit(&rows.render(cli.format)?, cli.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn parse_bound(s: &str) -> Result<Rational> {
    parse_decimal(s)
        .map(|d| d.value)
        .with_context(|| format!("not a decimal number: {s:?}"))
}

fn table_rows(table: &PrimeCountTable, oracle_limit: u64) -> Result<Rows> {
    let mut max_n = 0;
    while max_n < MAX_EXPONENT
        && 10u64
            .checked_pow(max_n + 1)
            .is_some_and(|x| x <= oracle_limit)
    {
        max_n += 1;
    }
    let report = table::verify_table(table, max_n, oracle_limit)?;
    let mut rows = Rows::new(&["n", "pi", "sieve", "status"]);
    for entry in table.entries() {
        let check = report.checks.iter().find(|c| c.n == entry.n);
        let (sieve, status) = match check {
            Some(c) => (
                c.sieve_value.to_string(),
                if c.passed() { "ok" } else { "MISMATCH" },
            ),
            None => (String::new(), "unchecked"),
        };
        rows.push(vec![
            entry.n.to_string(),
            entry.value.to_string(),
            sieve,
            status.into(),
        ]);
    }
    Ok(rows)
}

fn poly_rows(table: &PrimeCountTable, n: u32) -> Result<Rows> {
    let p = poly::fit_polynomial(table, n)?;
    let mut rows = Rows::new(&["power", "coefficient"]);
    for (power, c) in p.coeffs().iter().enumerate().rev() {
        rows.push(vec![power.to_string(), c.to_string()]);
    }
    rows.human = Some(format!("P_{n}(x) = {p}\n"));
    Ok(rows)
}

fn phi_rows(table: &PrimeCountTable, n: u32, digits: u32) -> Result<Rows> {
    let folded = pipeline::corrective_phi(table, n)?.folded()?;
    let mut rows = Rows::new(&["name", "value"]);
    for (i, c) in folded.heads.iter().enumerate() {
        rows.push(vec![format!("c{}", i + 1), render(c, digits)]);
    }
    rows.push(vec!["K".into(), render(&folded.slope, digits)]);
    Ok(rows)
}

fn render(x: &Rational, digits: u32) -> String {
    if *x == 0 {
        "0".into()
    } else {
        positional(x, digits)
    }
}

fn delta_rows(table: &PrimeCountTable, digits: u32, corrected: bool) -> Result<Rows> {
    let series = DeltaSeries::compute(table)?;
    let (header, values) = if corrected {
        ("delta_prime", series.delta_prime())
    } else {
        ("delta", series.delta())
    };
    let mut rows = Rows::new(&["m", header]);
    for (m, v) in values {
        rows.push(vec![m.to_string(), scientific(v, digits)]);
    }
    Ok(rows)
}

fn conjecture_rows(
    table: &PrimeCountTable,
    low: &Rational,
    high: &Rational,
    form: OffsetForm,
) -> Result<Rows> {
    let r = pipeline::conjecture(table, low, high, form)?;
    let mut rows = Rows::new(&["name", "value"]);
    let mut add = |name: &str, value: String| rows.push(vec![name.into(), value]);
    add("center", r.center.to_string());
    add(
        "psi_low",
        scientific(&r.psi_low, 6).replace("0.00000e0", "0"),
    );
    add(
        "psi_high",
        scientific(&r.psi_high, 6).replace("0.00000e0", "0"),
    );
    add("offset_form", r.form.to_string());
    add("offset_low", r.offset_low.to_string());
    add("offset_high", r.offset_high.to_string());
    add("symmetric_low", r.symmetric_low.to_string());
    add("symmetric_high", r.symmetric_high.to_string());
    add("onesided_low", r.onesided_low.to_string());
    add("onesided_high", r.onesided_high.to_string());
    if let Some(psi) = &r.psi_abs {
        add("psi_abs_at_25", scientific(psi, 6));
    }
    Ok(rows)
}

fn approx_rows(
    table: &PrimeCountTable,
    n: u32,
    estimators: Vec<Estimator>,
    config: AnalyticConfig,
) -> Result<Rows> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let mut rows = Rows::new(&["n", "estimator", "rounded", "delta_double_prime"]);
    for e in estimators {
        let rounded = analytic::rounded_estimate(e, n, config)?;
        let delta = match table.get(n) {
            Some(actual) => {
                let d = Rational::from((rug::Integer::from(actual - &rounded), actual.clone()));
                scientific(&d, TABLE_DIGITS)
            }
            None => "-".into(),
        };
        rows.push(vec![
            n.to_string(),
            e.to_string(),
            rounded.to_string(),
            delta,
        ]);
    }
    Ok(rows)
}

fn write_figures(table: &PrimeCountTable, dir: &Path, digits: u32) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let series = DeltaSeries::compute(table)?;
    let mut fig1 = Rows::new(&["m", "delta"]);
    for (m, v) in series.delta() {
        fig1.push(vec![m.to_string(), positional(v, digits)]);
    }
    let mut fig2 = Rows::new(&["m", "abs_delta_prime"]);
    for (m, v) in series.delta_prime() {
        fig2.push(vec![
            m.to_string(),
            positional(&Rational::from(v.abs_ref()), digits),
        ]);
    }
    for (name, rows) in [("fig2_1.csv", fig1), ("fig2_2.csv", fig2)] {
        let path = dir.join(name);
        emit(&rows.render(Format::Csv)?, Some(&path))?;
        println!("{}", path.display());
    }
    Ok(())
}
