//! The `confnat` command line: sampling, evaluation, fitting, transport and
//! optimization over the conformally natural family, with CSV or JSON-lines output.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain or numeric error (and a
//! failed `check`), 3 non-convergence.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use confnat::estimation::karcher_descent;
use confnat::rng::DEFAULT_SEED;
use confnat::{
    cem_optimize, fit_mle, hyp_distance, CemConfig, ConfNatural, DiscPoint, Error, KarcherConfig, MoebiusTransform,
    RngStream, WrappedCauchy,
};

mod check;
pub mod format;

use format::{num, parse_complex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "confnat",
    version,
    about = "Conformally natural distributions on the Poincaré disc"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Measure {
    Hyp,
    Lebesgue,
}

type Complex = (f64, f64);

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw points from F(alpha, a)
    Sample {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Complex,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Draw angles from the wrapped Cauchy law wC(a)
    WcSample {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Complex,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Density of F(alpha, a) at z
    Pdf {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Complex,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex,
        /// Reference measure: hyperbolic area or Euclidean area
        #[arg(long, value_enum, default_value_t = Measure::Hyp)]
        measure: Measure,
    },
    /// Radial probability P{|Z| < b}
    Cdf {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Complex,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
    /// Parameters of the law of g(Z) for g(z) = e^{i theta} (g_a − z) / (1 − conj(g_a) z)
    Pushforward {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Complex,
        #[arg(long = "g-a", value_parser = parse_complex, allow_hyphen_values = true)]
        g_a: Complex,
        #[arg(long = "g-theta", allow_hyphen_values = true)]
        g_theta: f64,
    },
    /// Karcher mean of a CSV point cloud with header re,im
    Karcher {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9, allow_hyphen_values = true)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = 1000)]
        max_iter: usize,
    },
    /// Maximum-likelihood fit of F(alpha, a) to a CSV point cloud
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "fixed-alpha", allow_hyphen_values = true)]
        fixed_alpha: Option<f64>,
    },
    /// Cross-entropy minimization of a builtin objective
    Optimize {
        /// Only builtin:distance, the hyperbolic distance to --target
        #[arg(long)]
        objective: String,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        target: Complex,
        #[arg(long, default_value_t = 200)]
        pop: usize,
        #[arg(long, default_value_t = 40)]
        iters: usize,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        alpha0: f64,
        #[arg(long = "alpha-growth", default_value_t = 1.15, allow_hyphen_values = true)]
        alpha_growth: f64,
        #[arg(long = "elite-frac", default_value_t = 0.2, allow_hyphen_values = true)]
        elite_frac: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the built-in identity suite
    Check,
}

/// Failures of a subcommand, each mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Math(Error),
    Input(String),
    NoConvergence(String),
    CheckFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } => Failure::NoConvergence(e.to_string()),
            e => Failure::Math(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(format!("i/o error: {e}"))
    }
}

fn disc_point(name: &str, (re, im): Complex) -> Result<DiscPoint, Failure> {
    DiscPoint::new(re, im).map_err(|e| match e {
        Error::Domain(msg) => Failure::Math(Error::Domain(format!("--{name}: {msg}"))),
        e => Failure::Math(e),
    })
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let code = match &f {
                Failure::Usage(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    EXIT_USAGE
                }
                Failure::Math(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_DOMAIN
                }
                Failure::Input(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    EXIT_DOMAIN
                }
                Failure::NoConvergence(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    EXIT_NONCONVERGENCE
                }
                Failure::CheckFailed => {
                    let _ = writeln!(err, "error: identity suite failed");
                    EXIT_DOMAIN
                }
            };
            let _ = out.flush();
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Sample {
            alpha,
            a,
            n,
            seed,
            format,
        } => {
            let law = ConfNatural::new(alpha, disc_point("a", a)?)?;
            let draws = law.sample(&mut RngStream::new(seed), n);
            let mut out = io::BufWriter::new(out);
            if format == Format::Csv {
                writeln!(out, "index,re,im,radius")?;
            }
            for (i, z) in draws.iter().enumerate() {
                let (re, im, r) = (num(z.re()), num(z.im()), num(z.modulus()));
                match format {
                    Format::Csv => writeln!(out, "{i},{re},{im},{r}")?,
                    Format::Json => writeln!(out, r#"{{"index":{i},"re":{re},"im":{im},"radius":{r}}}"#)?,
                }
            }
            out.flush()?;
        }
        Command::WcSample { a, n, seed, format } => {
            let law = WrappedCauchy::new(disc_point("a", a)?);
            let draws = law.sample(&mut RngStream::new(seed), n);
            let mut out = io::BufWriter::new(out);
            if format == Format::Csv {
                writeln!(out, "index,phi")?;
            }
            for (i, p) in draws.iter().enumerate() {
                let phi = num(p.phi());
                match format {
                    Format::Csv => writeln!(out, "{i},{phi}")?,
                    Format::Json => writeln!(out, r#"{{"index":{i},"phi":{phi}}}"#)?,
                }
            }
            out.flush()?;
        }
        Command::Pdf { alpha, a, z, measure } => {
            let law = ConfNatural::new(alpha, disc_point("a", a)?)?;
            let z = disc_point("z", z)?;
            let value = match measure {
                Measure::Hyp => law.pdf_hyp(z),
                Measure::Lebesgue => law.pdf_lebesgue(z),
            };
            writeln!(out, "{}", num(value))?;
        }
        Command::Cdf { alpha, a, b } => {
            let law = ConfNatural::new(alpha, disc_point("a", a)?)?;
            writeln!(out, "{}", num(law.radial_cdf(b)?))?;
        }
        Command::Pushforward { alpha, a, g_a, g_theta } => {
            let law = ConfNatural::new(alpha, disc_point("a", a)?)?;
            let g = MoebiusTransform::new(disc_point("g-a", g_a)?, g_theta)?;
            let moved = law.pushforward(&g);
            let loc = moved.location();
            writeln!(out, "alpha,re,im")?;
            writeln!(out, "{},{},{}", num(moved.alpha()), num(loc.re()), num(loc.im()))?;
        }
        Command::Karcher { input, tol, max_iter } => {
            let points = read_points(&input)?;
            let cfg = KarcherConfig {
                tol,
                max_iter,
                ..Default::default()
            };
            let trace = karcher_descent(&points, None, &cfg)?;
            writeln!(out, "re,im,iterations")?;
            writeln!(
                out,
                "{},{},{}",
                num(trace.point.re()),
                num(trace.point.im()),
                trace.iterations
            )?;
        }
        Command::Fit { input, fixed_alpha } => {
            let points = read_points(&input)?;
            let fit = fit_mle(&points, fixed_alpha)?;
            writeln!(
                out,
                r#"{{"alpha_hat":{},"a_re":{},"a_im":{},"log_likelihood":{},"iterations":{},"converged":{}}}"#,
                num(fit.alpha_hat),
                num(fit.a_hat.re()),
                num(fit.a_hat.im()),
                num(fit.log_likelihood),
                fit.iterations,
                fit.converged
            )?;
            if !fit.converged {
                return Err(Failure::NoConvergence(format!(
                    "likelihood still improving after {} rounds",
                    fit.iterations
                )));
            }
        }
        Command::Optimize {
            objective,
            target,
            pop,
            iters,
            alpha0,
            alpha_growth,
            elite_frac,
            seed,
        } => {
            if objective != "builtin:distance" {
                return Err(Failure::Usage(format!(
                    "unknown objective '{objective}' (available: builtin:distance)"
                )));
            }
            let target = disc_point("target", target)?;
            let cfg = CemConfig {
                population: pop,
                elite_frac,
                iterations: iters,
                alpha0,
                alpha_growth,
            };
            let outcome = cem_optimize(|z| hyp_distance(z, target), &cfg, &mut RngStream::new(seed))?;
            let mut out = io::BufWriter::new(out);
            writeln!(out, "iteration,re,im,alpha,best_value")?;
            for e in &outcome.trace {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    e.iteration,
                    num(e.a.re()),
                    num(e.a.im()),
                    num(e.alpha),
                    num(e.best_value)
                )?;
            }
            out.flush()?;
        }
        Command::Check => {
            if !check::run_suite(out)? {
                return Err(Failure::CheckFailed);
            }
        }
    }
    Ok(())
}

/// Reads a CSV point cloud with columns `re,im`. Rows are numbered from 1,
/// not counting the header.
fn read_points(path: &Path) -> Result<Vec<DiscPoint>, Failure> {
    let file = File::open(path).map_err(|e| Failure::Input(format!("cannot open {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        .clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Failure::Input(format!("{}: header must contain '{name}'", path.display())))
    };
    let (re_col, im_col) = (column("re")?, column("im")?);

    let mut points = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let row = k + 1;
        let record = record.map_err(|e| Failure::Input(format!("row {row}: {e}")))?;
        let field = |col: usize| -> Result<f64, Failure> {
            let text = record.get(col).unwrap_or("");
            text.parse()
                .map_err(|_| Failure::Input(format!("row {row}: '{text}' is not a number")))
        };
        let (re, im) = (field(re_col)?, field(im_col)?);
        let z = DiscPoint::new(re, im).map_err(|e| match e {
            Error::Domain(msg) => Failure::Input(format!("row {row}: {msg}")),
            e => Failure::Math(e),
        })?;
        points.push(z);
    }
    Ok(points)
}
