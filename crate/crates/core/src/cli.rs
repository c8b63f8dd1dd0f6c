//! The `hopf-area` command line.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0    | success |
//! | 2    | bad flags, unreadable or malformed input, non-unit spherical vertex |
//! | 3    | numerical failure (degenerate vertex, antipodal edge, too few edges, ...) |
//!
//! Failures print one line to stderr that starts with a stable token, e.g.
//! `DegenerateVertex index=0: exterior angle at vertex 0 is undefined`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::curves::Curve;
use crate::error::Error;
use crate::io::{
    convergence_sweep, format_significant, parse_space, parse_spherical, read_to_string, sweep_sizes,
    write_convergence_csv, write_points, InputError, VertexFormat,
};
use crate::polygon::{signed_area, AreaMethod};
use crate::quat::SpherePoint;
use crate::torsion::total_torsion;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const SIGNIFICANT_DIGITS: usize = 17;

#[derive(Debug, Parser)]
#[command(name = "hopf-area", version, about = "Signed areas of spherical polygons and total torsion of space polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signed area of a spherical polygon, in (-2π, 2π].
    Area(AreaArgs),
    /// Total torsion 2π − Area(tangent indicatrix) of a closed space polygon.
    Torsion(TorsionArgs),
    /// Write samples of a test curve.
    Sample(SampleArgs),
    /// Area or torsion of a test curve over a geometric range of sample counts, as CSV.
    Converge(ConvergeArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Vertex file, one `x,y,z` per line (csv) or `{"vertices": [[x,y,z], ...]}` (json).
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long)]
    pub format: Option<VertexFormat>,
    #[arg(long, default_value = "hopf")]
    pub method: AreaMethod,
    /// Pole for the pole-fan and oracle methods.
    #[arg(long, value_parser = parse_pole, allow_hyphen_values = true)]
    pub pole: Option<SpherePoint>,
    /// Print `{"area": ..., "method": ..., "n": ...}` instead of the bare number.
    #[arg(long)]
    pub json_out: bool,
}

#[derive(Debug, Args)]
pub struct AreaArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct TorsionArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub curve: Curve,
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
    pub n: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    pub format: VertexFormat,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub curve: Curve,
    /// Comma-separated methods.
    #[arg(long, value_delimiter = ',', default_value = "hopf,gauss-bonnet")]
    pub methods: Vec<AreaMethod>,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(3..))]
    pub n_min: u64,
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(3..))]
    pub n_max: u64,
    #[arg(long, default_value_t = 2.0, value_parser = parse_factor)]
    pub n_factor: f64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_pole(s: &str) -> Result<SpherePoint, String> {
    let coords: Vec<f64> = s
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|_| format!("`{c}` is not a number")))
        .collect::<Result<_, _>>()?;
    match coords[..] {
        [x, y, z] => SpherePoint::new(x, y, z).map_err(|e| e.to_string()),
        _ => Err(format!("expected x,y,z but got {} values", coords.len())),
    }
}

fn parse_factor(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(f) if f > 1.0 && f.is_finite() => Ok(f),
        _ => Err(format!("`{s}` must be a number greater than 1")),
    }
}

/// Everything that can end a command early.
#[derive(Debug)]
enum Failure {
    Input(InputError),
    Numerical(Error),
    Usage(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerical(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(InputError::Io(e))
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Numerical(_) => EXIT_NUMERICAL,
            Failure::Input(_) | Failure::Usage(_) => EXIT_USAGE,
        }
    }

    fn report(&self) -> String {
        match self {
            Failure::Numerical(e) => match e.index() {
                Some(i) => format!("{} index={i}: {e}", e.token()),
                None => format!("{}: {e}", e.token()),
            },
            Failure::Input(e @ InputError::Parse { line, column, .. }) => {
                format!("{} line={line} column={column}: {e}", e.token())
            }
            Failure::Input(e @ InputError::NotUnit { index, norm }) => {
                format!("{} index={index} norm={norm}: {e}", e.token())
            }
            Failure::Input(e) => format!("{}: {e}", e.token()),
            Failure::Usage(msg) => format!("UsageError: {msg}"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Area(a) => cmd_area(&a.input, stdout),
        Command::Torsion(a) => cmd_torsion(&a.input, stdout),
        Command::Sample(a) => cmd_sample(&a, stdout),
        Command::Converge(a) => cmd_converge(&a, stdout),
    };
    match result.and_then(|()| stdout.flush().map_err(Failure::from)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.report());
            f.exit_code()
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let file = File::open(path).map_err(|e| Failure::Usage(format!("cannot open {}: {e}", path.display())))?;
    Ok(read_to_string(file)?)
}

fn input_format(args: &InputArgs) -> VertexFormat {
    args.format.unwrap_or_else(|| VertexFormat::from_path(&args.input))
}

fn print_value(out: &mut dyn Write, key: &str, value: f64, args: &InputArgs, n: usize) -> Result<(), Failure> {
    if args.json_out {
        let doc = json!({ key: value, "method": args.method.name(), "n": n });
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "{}", format_significant(value, SIGNIFICANT_DIGITS))?;
    }
    Ok(())
}

fn cmd_area(args: &InputArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let poly = parse_spherical(&read_input(&args.input)?, input_format(args))?;
    let area = signed_area(&poly, args.method, args.pole)?;
    print_value(out, "area", area.radians(), args, poly.len())
}

fn cmd_torsion(args: &InputArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let curve = parse_space(&read_input(&args.input)?, input_format(args))?;
    let torsion = total_torsion(&curve, args.method)?;
    print_value(out, "torsion", torsion.radians(), args, curve.len())
}

/// Runs `body` against the file at `path`, or against stdout.
fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
        }
        None => body(stdout)?,
    }
    Ok(())
}

fn cmd_sample(args: &SampleArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let points = args.curve.sample(args.n as usize)?.points();
    with_output(args.output.as_deref(), out, |w| write_points(w, &points, args.format))
}

fn cmd_converge(args: &ConvergeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if args.n_min > args.n_max {
        return Err(Failure::Usage(format!("--n-min {} exceeds --n-max {}", args.n_min, args.n_max)));
    }
    let sizes = sweep_sizes(args.n_min as usize, args.n_max as usize, args.n_factor);
    let rows = convergence_sweep(args.curve, &args.methods, &sizes);
    with_output(args.output.as_deref(), out, |w| write_convergence_csv(w, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("hopf-area").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn pole_flag() {
        assert_eq!(parse_pole("0,0,2").unwrap(), SpherePoint::K);
        assert_eq!(parse_pole("-1, 0, 0").unwrap(), SpherePoint::I.antipode());
        assert!(parse_pole("0,0").is_err());
        assert!(parse_pole("0,0,0").is_err());
        assert!(parse_pole("a,0,0").is_err());
    }

    #[test]
    fn bad_flags_exit_two() {
        assert_eq!(run_capture(&["sample", "--curve", "spiral", "--n", "8"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["sample", "--curve", "trefoil", "--n", "2"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["converge", "--curve", "trefoil", "--n-factor", "1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["converge", "--curve", "trefoil", "--n-min", "100", "--n-max", "50"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["area", "--input", "/nonexistent/file.csv"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_is_not_an_error() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("converge"));
    }

    #[test]
    fn sample_to_stdout() {
        let (code, out, _) = run_capture(&["sample", "--curve", "cardioid", "--n", "4"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().next(), Some("0,0,-1"));
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn converge_to_stdout() {
        let (code, out, _) = run_capture(&["converge", "--curve", "cardioid", "--methods", "hopf,oracle", "--n-min", "16", "--n-max", "64"]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], "n,method,value,runtime_ns");
        assert_eq!(lines.len(), 7);
        assert!(lines[1].starts_with("16,hopf,") && lines[2].starts_with("16,oracle,") && lines[6].starts_with("64,oracle,"));
    }

    #[test]
    fn failure_reports() {
        let f = Failure::Numerical(Error::DegenerateVertex { index: 0 });
        assert_eq!(f.exit_code(), EXIT_NUMERICAL);
        assert!(f.report().starts_with("DegenerateVertex index=0"));
        let f = Failure::Numerical(Error::TooFewEdges { found: 1 });
        assert!(f.report().starts_with("TooFewEdges: "));
        let f = Failure::Input(InputError::NotUnit { index: 0, norm: 2.0 });
        assert_eq!(f.exit_code(), EXIT_USAGE);
        assert!(f.report().starts_with("NotUnit index=0 norm=2"));
    }
}
