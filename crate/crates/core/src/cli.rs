//! Command-line front end. Exit codes: 0 success, 1 validation error,
//! 2 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::acceptance;
use crate::bias::{bias_assignment, bias_table};
use crate::config::RunConfig;
use crate::coulomb::{ClassCombinations, CoulombCoefficients, EdgeCoefficients};
use crate::ehm::{compare_effective, DotArray, DEFAULT_W_INTRA};
use crate::error::{Error, Result};
use crate::evolve::{nmax_quarter_period, run_protocol, sweep_scaling, InitialFrame, SweepParameter};
use crate::hamiltonian::{build_lattice_hamiltonian, DecompositionMode, HamiltonianForm};
use crate::lattice::{Boundary, EdgeClass, Lattice};

pub const THREADS_ENV: &str = "CLUSTERFORGE_THREADS";
/// Significant digits kept in JSON and CSV output.
pub const OUTPUT_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "clusterforge", version, about = "Cluster-state generation in double-dot charge-qubit lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Edge coefficient table.
    Coeffs {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Distinct bias values by row and column class.
    BiasTable {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Lattice Hamiltonian as a JSON list of Pauli terms.
    DumpHamiltonian {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = FormArg::Reduced)]
        form: FormArg,
    },
    /// Run the generation protocol and print the report.
    Evolve {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Infidelity scaling as CSV.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = SweepArg::Tunneling)]
        param: SweepArg,
        /// Comma-separated values (μeV for tunneling, N for an N×N lattice).
        #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.1, 0.2])]
        values: Vec<f64>,
    },
    /// Qubit count reachable at a given fidelity.
    Nmax {
        #[arg(long = "F")]
        fidelity: f64,
        /// Tunneling [μeV].
        #[arg(long = "T")]
        tunneling: f64,
        /// Mean |V'| [μeV].
        #[arg(long = "Vbar")]
        vbar: f64,
    },
    /// Extended Hubbard oracle against the two-qubit Hamiltonian.
    EhmCheck {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = DEFAULT_W_INTRA)]
        w_intra: f64,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormArg {
    Full,
    Reduced,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepArg {
    Tunneling,
    Size,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Open,
    Cylinder,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Exact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FrameArg {
    Tilted,
    Lab,
}

/// Config file plus flag overrides.
#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long, value_enum)]
    boundary: Option<BoundaryArg>,
    /// Tunneling [μeV].
    #[arg(long = "T")]
    tunneling: Option<f64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long = "k-prime")]
    k_prime: Option<i64>,
    #[arg(long, value_enum)]
    initial_frame: Option<FrameArg>,
    #[arg(long)]
    compensate: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.rows {
            cfg.rows = v;
        }
        if let Some(v) = self.cols {
            cfg.cols = v;
        }
        if let Some(b) = self.boundary {
            cfg.boundary = match b {
                BoundaryArg::Open => Boundary::Open,
                BoundaryArg::Cylinder => Boundary::CylindricalInColumns,
            };
        }
        if let Some(t) = self.tunneling {
            cfg.t_uev = t;
        }
        if let Some(m) = self.mode {
            cfg.mode = match m {
                ModeArg::Paper => DecompositionMode::Paper,
                ModeArg::Exact => DecompositionMode::Exact,
            };
        }
        if let Some(k) = self.k {
            cfg.k = k;
        }
        if let Some(k) = self.k_prime {
            cfg.k_prime = k;
        }
        if let Some(f) = self.initial_frame {
            cfg.initial_frame = match f {
                FrameArg::Tilted => InitialFrame::Tilted,
                FrameArg::Lab => InitialFrame::Lab,
            };
        }
        if self.compensate {
            cfg.compensate_tunneling = true;
        }
        if self.output.is_some() {
            cfg.output = self.output.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Formats `x` with [`OUTPUT_DIGITS`] significant digits in the shortest form.
pub fn format_float(x: f64) -> String {
    round_sig(x).to_string()
}

fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", OUTPUT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_sig).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to [`OUTPUT_DIGITS`] significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct CoeffRow {
    class: EdgeClass,
    #[serde(rename = "ς_00")]
    s00: f64,
    #[serde(rename = "ς_01")]
    s01: f64,
    #[serde(rename = "ς_10")]
    s10: f64,
    #[serde(rename = "ς_11")]
    s11: f64,
    #[serde(rename = "ς_plus")]
    plus: f64,
    #[serde(rename = "ς_minus")]
    minus: f64,
    #[serde(rename = "Δς_plus")]
    delta_plus: f64,
    #[serde(rename = "Δς_minus")]
    delta_minus: f64,
}

impl CoeffRow {
    fn new(e: &EdgeCoefficients, c: &ClassCombinations) -> Self {
        CoeffRow {
            class: e.class,
            s00: e.s00,
            s01: e.s01,
            s10: e.s10,
            s11: e.s11,
            plus: c.plus,
            minus: c.minus,
            delta_plus: c.delta_plus,
            delta_minus: c.delta_minus,
        }
    }

    fn record(&self) -> Vec<String> {
        let class = match self.class {
            EdgeClass::Symmetric => "symmetric",
            EdgeClass::Asymmetric => "asymmetric",
        };
        std::iter::once(class.to_string())
            .chain(
                [
                    self.s00,
                    self.s01,
                    self.s10,
                    self.s11,
                    self.plus,
                    self.minus,
                    self.delta_plus,
                    self.delta_minus,
                ]
                .iter()
                .map(|x| format_float(*x)),
            )
            .collect()
    }
}

#[derive(Serialize)]
struct CoeffReport {
    rows: Vec<CoeffRow>,
    #[serde(rename = "ς")]
    sigma: f64,
    #[serde(rename = "Δς")]
    delta_sigma: f64,
    minus_mismatch_rel: f64,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct NmaxReport {
    #[serde(rename = "F")]
    fidelity: f64,
    #[serde(rename = "T_ueV")]
    tunneling: f64,
    #[serde(rename = "Vbar_ueV")]
    vbar: f64,
    nmax: f64,
}

/// Output of one command: text for stdout (or `--output`) and its exit status.
struct Outcome {
    text: String,
    output: Option<PathBuf>,
    code: i32,
}

impl Outcome {
    fn ok(text: String, output: Option<PathBuf>) -> Self {
        Outcome { text, output, code: 0 }
    }
}

fn coefficients(cfg: &RunConfig) -> Result<CoulombCoefficients> {
    CoulombCoefficients::compute(&cfg.lattice_spec(), &cfg.material()?)
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Coeffs { run, format } => {
            let cfg = run.resolve()?;
            let c = coefficients(&cfg)?;
            let rows = vec![
                CoeffRow::new(&c.sym, &c.sym_comb),
                CoeffRow::new(&c.asym, &c.asym_comb),
            ];
            let text = match format {
                Format::Csv => csv_text(
                    &[
                        "class", "ς_00", "ς_01", "ς_10", "ς_11", "ς_plus", "ς_minus", "Δς_plus",
                        "Δς_minus",
                    ],
                    rows.iter().map(CoeffRow::record).collect(),
                )?,
                Format::Json => {
                    let mut warnings = Vec::new();
                    if c.minus_mismatch_rel > cfg.tolerances.minus_rel {
                        warnings.push(format!(
                            "symmetric and asymmetric ZZ strengths differ by {:.3}%",
                            100.0 * c.minus_mismatch_rel
                        ));
                    }
                    to_json(&CoeffReport {
                        rows,
                        sigma: c.sigma,
                        delta_sigma: c.delta_sigma,
                        minus_mismatch_rel: c.minus_mismatch_rel,
                        warnings,
                    })?
                }
            };
            Ok(Outcome::ok(text, cfg.output))
        }
        Command::BiasTable { run, format } => {
            let cfg = run.resolve()?;
            let lattice = Lattice::build(cfg.lattice_spec())?;
            let c = coefficients(&cfg)?;
            let rows = bias_table(&lattice, &bias_assignment(&lattice, &c, cfg.k, cfg.k_prime)?);
            let text = match format {
                Format::Json => to_json(&rows)?,
                Format::Csv => csv_text(
                    &["m_class", "n_class", "formula", "value_μeV"],
                    rows.iter()
                        .map(|r| {
                            vec![
                                r.m_class.clone(),
                                r.n_class.clone(),
                                r.formula.clone(),
                                format_float(r.value_uev),
                            ]
                        })
                        .collect(),
                )?,
            };
            Ok(Outcome::ok(text, cfg.output))
        }
        Command::DumpHamiltonian { run, form } => {
            let cfg = run.resolve()?;
            let lattice = Lattice::build(cfg.lattice_spec())?;
            let c = coefficients(&cfg)?;
            let scheme = bias_assignment(&lattice, &c, cfg.k, cfg.k_prime)?;
            let form = match form {
                FormArg::Full => HamiltonianForm::Full,
                FormArg::Reduced => HamiltonianForm::Reduced,
            };
            let h = build_lattice_hamiltonian(&lattice, &c, &scheme, cfg.t_uev, cfg.mode, form)?;
            // exact coefficients, so that the dump re-parses to the same operator
            let mut text = serde_json::to_string_pretty(&h.to_json_terms())?;
            text.push('\n');
            Ok(Outcome::ok(text, cfg.output))
        }
        Command::Evolve { run } => {
            let cfg = run.resolve()?;
            let report = run_protocol(&cfg.protocol()?)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            Ok(Outcome::ok(to_json(&report)?, cfg.output))
        }
        Command::Sweep { run, param, values } => {
            let cfg = run.resolve()?;
            let param = match param {
                SweepArg::Tunneling => SweepParameter::Tunneling,
                SweepArg::Size => SweepParameter::LinearSize,
            };
            let table = sweep_scaling(&cfg.protocol()?, param, &values)?;
            eprintln!("log-log slope of 1-F_exact: {}", format_float(table.slope));
            let text = csv_text(
                &["param", "one_minus_f_exact", "one_minus_f_formula", "residual_norm"],
                table
                    .rows
                    .iter()
                    .map(|r| {
                        [r.param, r.one_minus_f_exact, r.one_minus_f_formula, r.residual_norm]
                            .iter()
                            .map(|x| format_float(*x))
                            .collect()
                    })
                    .collect(),
            )?;
            Ok(Outcome::ok(text, cfg.output))
        }
        Command::Nmax {
            fidelity,
            tunneling,
            vbar,
        } => {
            let nmax = nmax_quarter_period(fidelity, vbar, tunneling)?;
            let text = to_json(&NmaxReport {
                fidelity,
                tunneling,
                vbar,
                nmax,
            })?;
            Ok(Outcome::ok(text, None))
        }
        Command::EhmCheck { run, w_intra } => {
            let cfg = run.resolve()?;
            let spec = cfg.lattice_spec();
            let material = cfg.material()?;
            let c = coefficients(&cfg)?;
            let lattice = Lattice::build(spec)?;
            let scheme = bias_assignment(&lattice, &c, cfg.k, cfg.k_prime)?;
            let v = [scheme.vprime[0], *scheme.vprime.last().expect("non-empty lattice")];
            let reports = [(EdgeClass::Symmetric, &c.sym), (EdgeClass::Asymmetric, &c.asym)]
                .into_iter()
                .map(|(class, edge)| {
                    let array = DotArray::pair(&spec, material, class, 0.0, cfg.t_uev, v)
                        .with_w_intra(w_intra);
                    compare_effective(&array, edge)
                })
                .collect::<Result<Vec<_>>>()?;
            let worst = reports.iter().map(|r| r.max_deviation_uev).fold(0.0, f64::max);
            let mut out = Outcome::ok(to_json(&reports)?, cfg.output);
            if worst > acceptance::EHM_TOL {
                eprintln!(
                    "error: oracle deviation {} μeV exceeds {} μeV",
                    format_float(worst),
                    acceptance::EHM_TOL
                );
                out.code = 2;
            }
            Ok(out)
        }
        Command::Selftest => {
            let mut text = String::new();
            let mut failed = 0;
            for r in acceptance::run_all() {
                failed += usize::from(!r.passed);
                text.push_str(&r.line());
                text.push('\n');
            }
            text.push_str(&format!(
                "{} of {} criteria passed\n",
                acceptance::N_CRITERIA - failed,
                acceptance::N_CRITERIA
            ));
            Ok(Outcome {
                text,
                output: None,
                code: if failed == 0 { 0 } else { 2 },
            })
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a pool may already exist when called more than once in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        2
    } else {
        1
    }
}

/// Runs the CLI and returns the process exit code.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            if code == 1 {
                eprintln!("\nconfig schema (v1):\n{}", RunConfig::schema_text());
            }
            return code;
        }
    };
    let result = configure_threads().and_then(|_| dispatch(cli.command));
    match result {
        Ok(out) => {
            let written = match &out.output {
                Some(path) => std::fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 1;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Config(_)) {
                eprintln!("\nconfig schema (v1):\n{}", RunConfig::schema_text());
            }
            exit_code(&e)
        }
    }
}
