//! `fracderiv` — command-line front end for the complex-order derivative
//! library: evaluate closed-form solutions, emit the differential equation a
//! parameter set generates, cross-validate against RK4, scan phase-shift
//! boundaries, check the telescoping series identity, and reproduce the
//! built-in figures as CSV/SVG.
//!
//! Exit codes: 0 success (validation passed), 1 validation threshold
//! exceeded, 2 parameter/specification error, 3 runtime integration error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracderiv::solvers::{
    abel_ode, bessel_ode, gen_oscillator_ode, solve_abel, solve_bessel, solve_oscillator,
    AbelSpec, BesselSpec, CoeffFn, OdeOrder, OdeSpec, OscillatorSpec, SolutionEvaluator,
};
use fracderiv::validate::{
    phase_boundary, series_identity_check, validate_solution_scaled, CircularKind, RkConfig,
    DEFAULT_BOUNDARY_DX, DEFAULT_BOUNDARY_EPS, DEFAULT_BOUNDARY_TERMS, DEFAULT_BOUNDARY_X_MAX,
};
use fracderiv::{Complex, Error};
use fracderiv_cli::csv::{Cell, Table};
use fracderiv_cli::figures::{self, FigureName};
use fracderiv_cli::parse::{self, Window};
use fracderiv_cli::presets;

/// Environment variable naming the default output directory.
const OUTPUT_DIR_VAR: &str = "FRACDERIV_OUTPUT_DIR";

#[derive(Parser)]
#[command(name = "fracderiv", version, about = "Complex-order derivative solution families: solve, validate, plot")]
struct Cli {
    /// Directory for output files (default: $FRACDERIV_OUTPUT_DIR, else .)
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a closed-form solution on a window and write CSV (t, F_re, F_im)
    Solve(SolveArgs),
    /// Write the differential equation generated by a parameter set
    Generate(GenerateArgs),
    /// Integrate the generated equation with RK4 and compare to the closed form
    Validate(ValidateArgs),
    /// Scan one truncated sinusoid derivative for its phase-shift validity boundary
    Boundary(BoundaryArgs),
    /// Evaluate the telescoping identity residual |series − 1|
    SeriesCheck(SeriesCheckArgs),
    /// Reproduce a built-in figure as CSV and SVG
    Figure(FigureArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Abel,
    Bessel,
    Oscillator,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Abel => "abel",
            Family::Bessel => "bessel",
            Family::Oscillator => "oscillator",
        }
    }
}

/// Solution-family parameters. Which flags are required depends on
/// `--family`; complex values are written `re` or `re±imI`.
#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// abel/bessel damping-exponent parameter
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    a: Option<Complex>,
    /// abel forcing exponent / bessel frequency coefficient
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    b: Option<Complex>,
    /// abel coefficient amplitude / bessel power-law exponent
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    c: Option<Complex>,
    /// initial value F(0)
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    f0: Option<Complex>,
    /// oscillator derivative order
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    p: Option<Complex>,
    /// oscillator frequency
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    n: Option<Complex>,
    /// oscillator sine amplitude
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    an: Option<Complex>,
    /// oscillator cosine amplitude
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    bn: Option<Complex>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    /// Sample window start:end:count (inclusive endpoints)
    #[arg(long, value_parser = parse::window, allow_hyphen_values = true)]
    t: Window,
    /// Output CSV path (default: <out-dir>/solve_<family>.csv)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    /// Output CSV path (default: <out-dir>/generate_<family>.csv)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ValidatePreset {
    Fig2a,
    Fig2b,
    Fig2c,
}

#[derive(Args)]
struct ValidateArgs {
    /// Use a reference parameter set (window, step, threshold included)
    #[arg(long, value_enum, conflicts_with = "family")]
    preset: Option<ValidatePreset>,
    #[command(flatten)]
    fam: FamilyArgs,
    /// Sample window start:end:count (inclusive endpoints)
    #[arg(long, value_parser = parse::window, allow_hyphen_values = true)]
    t: Option<Window>,
    /// RK4 step size
    #[arg(long)]
    h: Option<f64>,
    /// Pass threshold on max_rel_err
    #[arg(long)]
    threshold: Option<f64>,
    /// Scale the RK initial conditions by this factor (negative control)
    #[arg(long)]
    perturb_ic: Option<f64>,
    /// Output CSV path (default: <out-dir>/validate_<name>.csv)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Sin,
    Cos,
}

#[derive(Args)]
struct BoundaryArgs {
    /// Which sinusoid the truncated derivative series comes from
    #[arg(long, value_enum)]
    kind: Kind,
    /// Derivative order
    #[arg(long, allow_hyphen_values = true)]
    r: f64,
    /// Series truncation length
    #[arg(long, default_value_t = DEFAULT_BOUNDARY_TERMS)]
    n_terms: usize,
    /// Scan ceiling
    #[arg(long, default_value_t = DEFAULT_BOUNDARY_X_MAX)]
    x_max: f64,
    /// Agreement tolerance
    #[arg(long, default_value_t = DEFAULT_BOUNDARY_EPS)]
    eps: f64,
    /// Scan grid spacing
    #[arg(long, default_value_t = DEFAULT_BOUNDARY_DX)]
    dx: f64,
}

#[derive(Args)]
struct SeriesCheckArgs {
    /// Evaluation point (complex)
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    w: Complex,
    /// Gamma-argument offset (not a nonpositive integer)
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    c: Complex,
    /// Sharpening exponent (positive integer)
    #[arg(long)]
    n: u32,
    /// Truncation length M (at least 2)
    #[arg(long)]
    m: usize,
}

#[derive(Args)]
struct FigureArgs {
    /// Which figure to reproduce
    #[arg(value_enum)]
    name: FigureName,
}

enum RunError {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Lib(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_dir = cli
        .out_dir
        .or_else(|| std::env::var_os(OUTPUT_DIR_VAR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args, &out_dir),
        Command::Generate(args) => cmd_generate(args, &out_dir),
        Command::Validate(args) => cmd_validate(args, &out_dir),
        Command::Boundary(args) => cmd_boundary(args),
        Command::SeriesCheck(args) => cmd_series_check(args),
        Command::Figure(args) => cmd_figure(args, &out_dir),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(RunError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Spec(_) | Error::Pole { .. } | Error::Domain(_) => 2,
                Error::Singularity { .. } | Error::Overflow { .. } | Error::Precision { .. } => 3,
            })
        }
        Err(RunError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn require(value: Option<Complex>, flag: &str, family: Family) -> Result<Complex, Error> {
    value.ok_or_else(|| {
        Error::Spec(format!("family {} requires {flag}", family.name()))
    })
}

/// Builds the (equation, closed form) pair for a fully specified family.
fn build_family(fam: &FamilyArgs) -> Result<(OdeSpec, SolutionEvaluator, Family), Error> {
    let family = fam
        .family
        .ok_or_else(|| Error::Spec(String::from("--family is required (or use --preset)")))?;
    match family {
        Family::Abel => {
            let spec = AbelSpec::new(
                require(fam.a, "--a", family)?,
                require(fam.b, "--b", family)?,
                require(fam.c, "--c", family)?,
                require(fam.f0, "--f0", family)?,
            )?;
            Ok((abel_ode(&spec), solve_abel(&spec), family))
        }
        Family::Bessel => {
            let spec = BesselSpec::new(
                require(fam.a, "--a", family)?,
                require(fam.b, "--b", family)?,
                require(fam.c, "--c", family)?,
                require(fam.f0, "--f0", family)?,
            )?;
            Ok((bessel_ode(&spec), solve_bessel(&spec), family))
        }
        Family::Oscillator => {
            let spec = OscillatorSpec::new(
                require(fam.p, "--p", family)?,
                require(fam.n, "--n", family)?,
                require(fam.an, "--an", family)?,
                require(fam.bn, "--bn", family)?,
            )?;
            Ok((gen_oscillator_ode(&spec), solve_oscillator(&spec), family))
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), std::io::Error> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, contents)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_solve(args: SolveArgs, out_dir: &Path) -> Result<u8, RunError> {
    let (_, sol, family) = build_family(&args.fam)?;
    let mut table = Table::new(&["t", "F_re", "F_im"]);
    for t in args.t.grid() {
        let f = sol.value(t)?;
        table.push(vec![Cell::Num(t), Cell::Num(f.re), Cell::Num(f.im)]);
    }
    let path = args
        .out
        .unwrap_or_else(|| out_dir.join(format!("solve_{}.csv", family.name())));
    write_file(&path, &table.render())?;
    Ok(0)
}

/// One complex number in flag notation: `re` when purely real, `re±imI`
/// otherwise.
fn fmt_complex(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}I", z.re, z.im)
    } else {
        format!("{}+{}I", z.re, z.im)
    }
}

fn fmt_coeff_fn(f: &CoeffFn) -> String {
    let terms = f.terms();
    if terms.is_empty() {
        return String::from("0");
    }
    terms
        .iter()
        .map(|term| {
            let coeff = fmt_complex(term.coeff);
            let coeff = if coeff.contains(['+', 'I']) { format!("({coeff})") } else { coeff };
            if term.exponent == Complex::new(0.0, 0.0) {
                coeff
            } else {
                format!("{coeff}*t^{{{}}}", fmt_complex(term.exponent))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cmd_generate(args: GenerateArgs, out_dir: &Path) -> Result<u8, RunError> {
    let (ode, _, family) = build_family(&args.fam)?;
    let mut table = Table::new(&["part", "coeff_re", "coeff_im", "exponent_re", "exponent_im"]);
    let parts: [(&str, &CoeffFn); 3] =
        [("damping", &ode.damping), ("stiffness", &ode.stiffness), ("forcing", &ode.forcing)];
    for (name, f) in parts {
        for term in f.terms() {
            table.push(vec![
                Cell::Text(name.to_string()),
                Cell::Num(term.coeff.re),
                Cell::Num(term.coeff.im),
                Cell::Num(term.exponent.re),
                Cell::Num(term.exponent.im),
            ]);
        }
    }
    match ode.order {
        OdeOrder::First => println!(
            "F' + [{}] F = {}",
            fmt_coeff_fn(&ode.stiffness),
            fmt_coeff_fn(&ode.forcing)
        ),
        OdeOrder::Second => println!(
            "F'' + [{}] F' + [{}] F = {}",
            fmt_coeff_fn(&ode.damping),
            fmt_coeff_fn(&ode.stiffness),
            fmt_coeff_fn(&ode.forcing)
        ),
    }
    let path = args
        .out
        .unwrap_or_else(|| out_dir.join(format!("generate_{}.csv", family.name())));
    write_file(&path, &table.render())?;
    Ok(0)
}

fn cmd_validate(args: ValidateArgs, out_dir: &Path) -> Result<u8, RunError> {
    let (ode, sol, name, defaults) = match args.preset {
        Some(ValidatePreset::Fig2a) => {
            let spec = presets::abel_reference();
            (abel_ode(&spec), solve_abel(&spec), "fig2a", Some(presets::abel_validation()))
        }
        Some(ValidatePreset::Fig2b) => {
            let spec = presets::bessel_reference();
            (bessel_ode(&spec), solve_bessel(&spec), "fig2b", Some(presets::bessel_validation()))
        }
        Some(ValidatePreset::Fig2c) => {
            let spec = presets::oscillator_reference();
            (
                gen_oscillator_ode(&spec),
                solve_oscillator(&spec),
                "fig2c",
                Some(presets::oscillator_validation()),
            )
        }
        None => {
            let (ode, sol, family) = build_family(&args.fam)?;
            (ode, sol, family.name(), None)
        }
    };
    let window = args
        .t
        .or(defaults.as_ref().map(|d| d.window))
        .ok_or_else(|| Error::Spec(String::from("--t window is required without a preset")))?;
    let h = args.h.or(defaults.as_ref().map(|d| d.h)).unwrap_or(1e-3);
    let threshold = args
        .threshold
        .or(defaults.as_ref().map(|d| d.threshold))
        .unwrap_or(1e-6);
    let cfg = RkConfig::new(h, window.start, window.end)?.with_samples(window.count);
    let report = validate_solution_scaled(&ode, &sol, &cfg, args.perturb_ic.unwrap_or(1.0))?;

    let mut table =
        Table::new(&["t", "closed_form_re", "closed_form_im", "rk_re", "rk_im", "abs_err"]);
    for i in 0..report.grid.len() {
        let (cf, rk) = (report.closed_form[i], report.rk[i]);
        table.push(vec![
            Cell::Num(report.grid[i]),
            Cell::Num(cf.re),
            Cell::Num(cf.im),
            Cell::Num(rk.re),
            Cell::Num(rk.im),
            Cell::Num((cf - rk).norm()),
        ]);
    }
    let path = args.out.unwrap_or_else(|| out_dir.join(format!("validate_{name}.csv")));
    write_file(&path, &table.render())?;
    println!("max_rel_err={}", report.max_rel_err);
    Ok(if report.max_rel_err <= threshold { 0 } else { 1 })
}

fn cmd_boundary(args: BoundaryArgs) -> Result<u8, RunError> {
    if !(args.x_max.is_finite() && args.x_max > 0.0) {
        return Err(Error::Spec(String::from("--x-max must be positive and finite")).into());
    }
    if !(args.dx.is_finite() && args.dx > 0.0 && args.dx <= args.x_max) {
        return Err(Error::Spec(String::from("--dx must be positive and at most --x-max")).into());
    }
    if !(args.eps.is_finite() && args.eps > 0.0) {
        return Err(Error::Spec(String::from("--eps must be positive and finite")).into());
    }
    if !args.r.is_finite() {
        return Err(Error::Spec(String::from("--r must be finite")).into());
    }
    if args.n_terms == 0 {
        return Err(Error::Spec(String::from("--n-terms must be at least 1")).into());
    }
    let kind = match args.kind {
        Kind::Sin => CircularKind::Sin,
        Kind::Cos => CircularKind::Cos,
    };
    let result = phase_boundary(kind, args.r, args.n_terms, args.x_max, args.eps, args.dx);
    match result.boundary {
        Some(b) => println!("boundary={b}"),
        None => println!("boundary=none"),
    }
    Ok(0)
}

fn cmd_series_check(args: SeriesCheckArgs) -> Result<u8, RunError> {
    let residual = series_identity_check(args.w, args.c, args.n, args.m)?;
    println!("residual={residual}");
    Ok(0)
}

fn cmd_figure(args: FigureArgs, out_dir: &Path) -> Result<u8, RunError> {
    let fig = figures::build(args.name)?;
    let stem = args.name.file_stem();
    write_file(&out_dir.join(format!("{stem}.csv")), &fig.csv.render())?;
    write_file(&out_dir.join(format!("{stem}.svg")), &fig.svg)?;
    Ok(0)
}
