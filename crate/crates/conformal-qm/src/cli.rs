//! Command-line front end: verification suites, single-point map and
//! decomposition queries, constants dumps, and plot-ready CSV data.
//!
//! Exit codes: 0 when everything passes, 1 when a verification check
//! fails, 2 on usage or configuration errors.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::conformal::{map_forward, map_inverse, MapParams};
use crate::eigenstates::{hydrogen_state, oscillator_state, QuantumNumbers};
use crate::error::{Error, Result};
use crate::units::{derive_scales, System, UnitSpec};
use crate::verify::{decompose_lambda, run_suite, SuiteConfig, VerificationReport};

#[derive(Debug, Parser)]
#[command(
    name = "conformal-qm",
    version,
    about = "Verify complex-time conformal maps for hydrogen and oscillator eigenstates"
)]
struct Cli {
    /// Unit system: atomic, si, or file:<path> with key=value constants.
    #[arg(long, global = true, env = "CONFORMAL_QM_UNITS")]
    units: Option<String>,

    /// key=value defaults for the verify/plot-data flags
    /// (system, n, points, seed, format, tol_analytic, tol_fd, checks, output).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the verification suite and emit a report.
    Verify(VerifyArgs),
    /// Map a spacetime point into complex coordinates.
    Map(MapArgs),
    /// Decompose the lambda-map relation into monomials.
    Decompose(DecomposeArgs),
    /// Print the active constants and derived scales.
    Constants(ConstantsArgs),
    /// Write radial profiles and residuals as CSV.
    PlotData(PlotDataArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Hydrogen,
    Oscillator,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Which system(s) to verify.
    #[arg(long, value_enum)]
    system: Option<SystemArg>,

    /// Hydrogen principal quantum number bound: all (n, l, k) with n up
    /// to this value are verified.
    #[arg(long)]
    n: Option<u32>,

    /// Sample-cloud size per state.
    #[arg(long)]
    points: Option<usize>,

    /// Seed for every sample cloud.
    #[arg(long)]
    seed: Option<u64>,

    /// Tolerance for analytic-path residuals.
    #[arg(long)]
    tol_analytic: Option<f64>,

    /// Tolerance for finite-difference cross-checks.
    #[arg(long)]
    tol_fd: Option<f64>,

    /// Report format.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,

    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Comma-separated check names to run (default: all).
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,

    /// Test hook: scale every eigenvalue entering the residual equations
    /// by this factor to force failures.
    #[arg(long)]
    corrupt_energy: Option<f64>,
}

#[derive(Debug, Args)]
struct MapArgs {
    /// Spatial point as x1,x2,x3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,

    /// Time coordinate.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t: f64,

    /// Energy eigenvalue the map is bound to (nonzero).
    #[arg(long = "E", allow_hyphen_values = true)]
    energy: f64,

    /// Map length scale b.
    #[arg(long, default_value_t = 1.0)]
    b: f64,

    /// Map exponent lambda.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,

    /// Planck constant over 2 pi.
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    /// Map exponent lambda (> 0).
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,

    /// Map length scale b (> 0).
    #[arg(long, default_value_t = 1.0)]
    b: f64,
}

#[derive(Debug, Args)]
struct ConstantsArgs {
    /// Which system's derived scales to include.
    #[arg(long, value_enum, default_value_t = SystemArg::Both)]
    system: SystemArg,
}

#[derive(Debug, Args)]
struct PlotDataArgs {
    #[arg(long, value_enum, default_value_t = SystemArg::Hydrogen)]
    system: SystemArg,

    /// Principal (hydrogen) or radial (oscillator) quantum number.
    #[arg(long)]
    n: u32,

    /// Orbital quantum number.
    #[arg(long, default_value_t = 0)]
    l: u32,

    /// Magnetic quantum number.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    k: i32,

    /// Grid start (defaults to 0.01 x the state length scale).
    #[arg(long)]
    r_min: Option<f64>,

    /// Grid end (defaults to 12 x the state length scale).
    #[arg(long)]
    r_max: Option<f64>,

    /// Number of grid rows.
    #[arg(long, default_value_t = 200)]
    grid: usize,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parse arguments from the process environment and execute.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Execute with explicit arguments; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders its own message; --help/--version are not errors.
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let file_defaults = match &cli.config {
        Some(path) => parse_defaults_file(path)?,
        None => BTreeMap::new(),
    };
    let units: UnitSpec = cli
        .units
        .as_deref()
        .map(str::parse)
        .transpose()?
        .unwrap_or(UnitSpec::Atomic);

    match cli.command {
        Command::Verify(args) => cmd_verify(args, units, &file_defaults),
        Command::Map(args) => cmd_map(args),
        Command::Decompose(args) => cmd_decompose(args, units),
        Command::Constants(args) => cmd_constants(args, units),
        Command::PlotData(args) => cmd_plot_data(args, units, &file_defaults),
    }
}

fn parse_defaults_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("{}:{}: expected key=value", path.display(), lineno + 1))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn default_from<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("config key '{key}': cannot parse '{raw}'"))),
    }
}

fn parse_system_arg(raw: &str) -> Result<SystemArg> {
    match raw.to_ascii_lowercase().as_str() {
        "hydrogen" => Ok(SystemArg::Hydrogen),
        "oscillator" => Ok(SystemArg::Oscillator),
        "both" => Ok(SystemArg::Both),
        other => Err(Error::Config(format!("unknown system '{other}'"))),
    }
}

fn cmd_verify(
    args: VerifyArgs,
    units: UnitSpec,
    defaults: &BTreeMap<String, String>,
) -> Result<i32> {
    let system = match args.system {
        Some(s) => s,
        None => match defaults.get("system") {
            Some(raw) => parse_system_arg(raw)?,
            None => SystemArg::Both,
        },
    };
    let systems = match system {
        SystemArg::Hydrogen => vec![System::Hydrogen],
        SystemArg::Oscillator => vec![System::Oscillator],
        SystemArg::Both => vec![System::Hydrogen, System::Oscillator],
    };
    let base = SuiteConfig::default();
    let n_max = args.n.or(default_from(defaults, "n")?).unwrap_or(base.hydrogen_n_max);
    if systems.contains(&System::Hydrogen) && n_max == 0 {
        return Err(Error::InvalidQuantumNumbers(
            "hydrogen verification needs n >= 1 (principal quantum number)".to_string(),
        ));
    }
    let checks = if !args.checks.is_empty() {
        args.checks
    } else if let Some(raw) = defaults.get("checks") {
        raw.split(',').map(|s| s.trim().to_string()).collect()
    } else {
        Vec::new()
    };

    let config = SuiteConfig {
        suite_name: "cli".to_string(),
        units: units.clone(),
        systems,
        hydrogen_n_max: n_max,
        n_points: args.points.or(default_from(defaults, "points")?).unwrap_or(base.n_points),
        seed: args.seed.or(default_from(defaults, "seed")?).unwrap_or(base.seed),
        tol_analytic: args
            .tol_analytic
            .or(default_from(defaults, "tol_analytic")?)
            .unwrap_or(base.tol_analytic),
        tol_fd: args.tol_fd.or(default_from(defaults, "tol_fd")?).unwrap_or(base.tol_fd),
        corrupt_energy: args.corrupt_energy.or(default_from(defaults, "corrupt_energy")?),
        check_filter: checks,
        ..base
    };

    let report = run_suite(&config)?;

    let format = match args.format {
        Some(f) => f,
        None => match defaults.get("format").map(String::as_str) {
            Some("csv") => OutputFormat::Csv,
            Some("json") | None => OutputFormat::Json,
            Some(other) => return Err(Error::Config(format!("unknown format '{other}'"))),
        },
    };
    let output = args.output.or_else(|| defaults.get("output").map(PathBuf::from));
    let rendered = match format {
        OutputFormat::Json => report_to_json(&report)?,
        OutputFormat::Csv => report_to_csv(&report),
    };
    write_output(output.as_deref(), &rendered)?;

    Ok(if report.overall_pass { 0 } else { 1 })
}

fn cmd_map(args: MapArgs) -> Result<i32> {
    if args.x.len() != 3 {
        return Err(Error::Config("--x needs exactly three components".to_string()));
    }
    let p = MapParams::new(args.energy, args.b, args.lambda, args.hbar)?;
    let x = [args.x[0], args.x[1], args.x[2]];
    let ev = map_forward(x, args.t, &p)?;
    let conj = ev.conjugated();
    let (x_back, t_back) = map_inverse(&ev, &p)?;
    let roundtrip_error = (0..3).map(|i| (x_back[i] - x[i]).abs()).sum::<f64>()
        + (t_back - args.t).abs();

    #[derive(Serialize)]
    struct MapOutput {
        z: [f64; 3],
        s: String,
        s_conjugate: String,
        roundtrip_error: f64,
        s_precise: ComplexParts,
        s_conjugate_precise: ComplexParts,
    }
    #[derive(Serialize)]
    struct ComplexParts {
        re: f64,
        im: f64,
    }

    let out = MapOutput {
        z: ev.z,
        s: format_complex(ev.s),
        s_conjugate: format_complex(conj.s),
        roundtrip_error,
        s_precise: ComplexParts { re: ev.s.re, im: ev.s.im },
        s_conjugate_precise: ComplexParts { re: conj.s.re, im: conj.s.im },
    };
    println!("{}", to_json_17(&out)?);
    Ok(0)
}

fn cmd_decompose(args: DecomposeArgs, units: UnitSpec) -> Result<i32> {
    let constants = units.load()?;
    let scales = derive_scales(&constants, System::Hydrogen)?;
    let report = decompose_lambda(args.lambda, args.b, &scales)?;
    println!("{}", to_json_17(&report)?);
    Ok(0)
}

fn cmd_constants(args: ConstantsArgs, units: UnitSpec) -> Result<i32> {
    let constants = units.load()?;

    #[derive(Serialize)]
    struct ConstantsOutput {
        units: String,
        constants: crate::units::PhysicalConstants,
        #[serde(skip_serializing_if = "Option::is_none")]
        hydrogen: Option<crate::units::DerivedScales>,
        #[serde(skip_serializing_if = "Option::is_none")]
        oscillator: Option<crate::units::DerivedScales>,
    }

    let hydrogen = (args.system != SystemArg::Oscillator)
        .then(|| derive_scales(&constants, System::Hydrogen))
        .transpose()?;
    let oscillator = (args.system != SystemArg::Hydrogen)
        .then(|| derive_scales(&constants, System::Oscillator))
        .transpose()?;
    let out = ConstantsOutput { units: units.label(), constants, hydrogen, oscillator };
    println!("{}", to_json_17(&out)?);
    Ok(0)
}

fn cmd_plot_data(
    args: PlotDataArgs,
    units: UnitSpec,
    defaults: &BTreeMap<String, String>,
) -> Result<i32> {
    if args.grid < 2 {
        return Err(Error::Config("--grid needs at least 2 rows".to_string()));
    }
    let constants = units.load()?;
    let qn = QuantumNumbers::new(args.n, args.l, args.k);
    let (state, growth) = match args.system {
        SystemArg::Hydrogen => {
            let scales = derive_scales(&constants, System::Hydrogen)?;
            let state = hydrogen_state(&scales, qn)?;
            let a0 = scales.alpha0;
            (state, Box::new(move |r: f64| (r / a0).exp()) as Box<dyn Fn(f64) -> f64>)
        }
        SystemArg::Oscillator => {
            let scales = derive_scales(&constants, System::Oscillator)?;
            let state = oscillator_state(&scales, qn)?;
            let b = scales.b;
            (state, Box::new(move |r: f64| (r * r / (b * b)).exp()) as Box<dyn Fn(f64) -> f64>)
        }
        SystemArg::Both => {
            return Err(Error::Config("plot-data needs a single system".to_string()));
        }
    };

    let scale = state.length_scale();
    let r_min = args.r_min.unwrap_or(0.01 * scale).max(state.r_min());
    let r_max = args.r_max.unwrap_or(12.0 * scale);
    if r_max <= r_min {
        return Err(Error::Config(format!("empty radial range [{r_min}, {r_max}]")));
    }

    let kinetic = -state.scales.hbar * state.scales.hbar / (2.0 * state.scales.mu);
    let lf = state.qn.l as f64;
    let mut csv = String::from("r,R_nl,R_tilde,residual_abs\n");
    for i in 0..args.grid {
        let r = r_min + (r_max - r_min) * i as f64 / (args.grid - 1) as f64;
        let (rad, rad1, rad2) = state.radial_jet(r)?;
        let r_tilde = rad * growth(r);
        // Radial equation residual at this radius.
        let radial_lap = rad2 + 2.0 * rad1 / r - lf * (lf + 1.0) * rad / (r * r);
        let residual =
            (kinetic * radial_lap + state.scales.potential(r) * rad - state.energy * rad).abs();
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig12(r),
            fmt_sig12(rad),
            fmt_sig12(r_tilde),
            fmt_sig12(residual)
        ));
    }

    let output = args.output.or_else(|| defaults.get("output").map(PathBuf::from));
    write_output(output.as_deref(), &csv)?;
    Ok(0)
}

fn write_output(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(path) => {
            std::fs::write(path, body).map_err(|err| {
                Error::Config(format!("cannot write {}: {err}", path.display()))
            })?;
        }
        None => {
            io::stdout().write_all(body.as_bytes())?;
            if !body.ends_with('\n') {
                println!();
            }
        }
    }
    Ok(())
}

/// Compact complex rendering with at most four decimals, e.g. "0+2i"
/// or "1-0.6667i".
fn format_complex(c: Complex64) -> String {
    let re = fmt_trim4(c.re);
    let sign = if c.im < 0.0 { "-" } else { "+" };
    let im = fmt_trim4(c.im.abs());
    format!("{re}{sign}{im}i")
}

fn fmt_trim4(value: f64) -> String {
    let s = format!("{value:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// CSV numbers carry 12 significant digits.
fn fmt_sig12(value: f64) -> String {
    format!("{value:.11e}")
}

/// JSON serializer printing every float with 17 significant digits, so
/// values round-trip bit-exactly and reports are byte-stable.
struct Sig17Formatter {
    indent: usize,
}

impl Sig17Formatter {
    fn newline<W: ?Sized + io::Write>(&self, writer: &mut W) -> io::Result<()> {
        writer.write_all(b"\n")?;
        for _ in 0..self.indent {
            writer.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent += 1;
        writer.write_all(b"[")
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent -= 1;
        self.newline(writer)?;
        writer.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if !first {
            writer.write_all(b",")?;
        }
        self.newline(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent += 1;
        writer.write_all(b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent -= 1;
        self.newline(writer)?;
        writer.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if !first {
            writer.write_all(b",")?;
        }
        self.newline(writer)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        writer.write_all(b": ")
    }
}

/// Serialize any value with the 17-significant-digit float format.
pub fn to_json_17<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, Sig17Formatter { indent: 0 });
    value
        .serialize(&mut ser)
        .map_err(|err| Error::Config(format!("serialization failed: {err}")))?;
    Ok(String::from_utf8(buf).expect("serializer emits UTF-8"))
}

/// Render a verification report as JSON (the stable report schema).
pub fn report_to_json(report: &VerificationReport) -> Result<String> {
    let mut body = to_json_17(report)?;
    body.push('\n');
    Ok(body)
}

/// Render a verification report as CSV (12 significant digits).
pub fn report_to_csv(report: &VerificationReport) -> String {
    let mut out = String::from("name,eq_ref,n_points,max_abs,max_rel,mean_abs,tol,pass\n");
    for check in &report.checks {
        out.push_str(&format!(
            "{},\"{}\",{},{},{},{},{},{}\n",
            check.name,
            check.eq_ref.replace('"', "\"\""),
            check.n_points,
            fmt_sig12(check.max_abs),
            fmt_sig12(check.max_rel),
            fmt_sig12(check.mean_abs),
            fmt_sig12(check.tol),
            check.pass
        ));
    }
    out
}
