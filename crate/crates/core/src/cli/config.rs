use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::inversion::linspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// q-Fourier transform surface of one function
    Transform,
    /// Built-in fixed-q degeneracy demonstration
    Counterexample,
    /// q -> 1+ slice and inverse transform round trip
    Invert,
    /// Like `transform`, defaulting to a q grid over [1, 1.9]
    Sweep,
    /// Run the invariant suite
    Selfcheck,
}

impl Command {
    fn uses_q(self) -> bool {
        matches!(
            self,
            Command::Transform | Command::Sweep | Command::Counterexample
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// `min:max:count`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Grid {
    /// Grid nodes snapped to 15 significant digits, so a grid typed in
    /// decimal yields the decimals as typed (1.4, not 1.4000000000000001).
    pub fn points(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.count)
            .into_iter()
            .map(|v| format!("{v:.14e}").parse().expect("formatted float"))
            .collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{:?}:{}", self.min, self.max, self.count)
    }
}

impl Serialize for Grid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("expected min:max:count, got '{s}'"));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{t}' is not a finite number"))
        };
        let (min, max) = (num(min)?, num(max)?);
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("'{count}' is not a point count"))?;
        if count == 0 {
            return Err("grid count must be >= 1".into());
        }
        if min > max {
            return Err(format!("grid min {min} exceeds max {max}"));
        }
        if count == 1 && min != max {
            return Err(format!("a 1-point grid needs min == max, got {min}:{max}"));
        }
        Ok(Grid { min, max, count })
    }
}

fn parse_eps(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("'{t}' is not a number"))
        })
        .collect()
}

#[derive(Debug, Parser)]
#[command(name = "qft", version, about = "q-Fourier transform with floating q")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// q-Fourier transform surface of one function
    Transform(Flags),
    /// Fixed-q degeneracy of the Hilhorst pair and its floating-q separation
    Counterexample(Flags),
    /// Reconstruct f from the q -> 1+ slice of its transform
    Invert(Flags),
    /// Transform over a q grid on [1, 1.9]
    Sweep(Flags),
    /// Run the invariant suite
    Selfcheck(Flags),
}

#[derive(Debug, Args)]
struct Flags {
    /// indicator:a,b | powerlaw:a,b,beta,lambda | powerlaw-hilhorst:a,b,q |
    /// qgauss:q,width,radius | tabulated:path
    #[arg(long = "fn", value_name = "SPEC")]
    function: Option<String>,
    /// k grid, min:max:count
    #[arg(long, value_name = "GRID", allow_hyphen_values = true)]
    k: Option<String>,
    /// q grid, min:max:count
    #[arg(long, value_name = "GRID", allow_hyphen_values = true)]
    q: Option<String>,
    /// x grid for reconstructions, min:max:count
    #[arg(long, value_name = "GRID", allow_hyphen_values = true)]
    x: Option<String>,
    /// Decreasing eps values for the q -> 1+ limit, comma separated
    #[arg(long, value_name = "LIST")]
    eps: Option<String>,
    /// Relative quadrature tolerance
    #[arg(long, value_name = "TOL")]
    tol: Option<String>,
    /// Fail `invert` when the slice edge exceeds this fraction of its peak
    #[arg(long, value_name = "RATIO")]
    edge_threshold: Option<String>,
    /// Output file; stdout when absent
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// TOML file with defaults for any of the above
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(rename = "fn")]
    function: Option<String>,
    k: Option<String>,
    q: Option<String>,
    x: Option<String>,
    eps: Option<Vec<f64>>,
    tol: Option<f64>,
    edge_threshold: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(rename = "fn")]
    pub function: Option<String>,
    pub k: Grid,
    pub q: Grid,
    pub x: Grid,
    pub eps: Vec<f64>,
    pub tol: f64,
    pub edge_threshold: Option<f64>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug)]
pub enum UsageError {
    /// Help, version, or a malformed command line, rendered by clap.
    Clap(clap::Error),
    Invalid {
        field: &'static str,
        message: String,
    },
}

impl UsageError {
    fn invalid(field: &'static str, message: impl Into<String>) -> Self {
        UsageError::Invalid {
            field,
            message: message.into(),
        }
    }

    /// Help and version requests are not failures.
    pub fn is_informational(&self) -> bool {
        matches!(self, UsageError::Clap(e) if !e.use_stderr())
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UsageError::Clap(e) => write!(f, "{}", e.render()),
            UsageError::Invalid { field, message } => write!(f, "invalid {field}: {message}"),
        }
    }
}

impl std::error::Error for UsageError {}

fn grid_default(command: Command, axis: char) -> &'static str {
    match (command, axis) {
        (Command::Invert, 'k') => "-10:10:401",
        (_, 'k') => "-5:5:101",
        (Command::Transform, 'q') => "1.5:1.5:1",
        (Command::Counterexample, 'q') => "1.1:1.7:7",
        (_, 'q') => "1:1.9:10",
        _ => "-0.5:1.5:256",
    }
}

fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

/// Parse `args` (without the program name) into a validated [`RunConfig`].
///
/// `config_text` stands in for the contents of `--config`; when it is `None`
/// and `--config` is given, the file is read. Flags win over file values.
pub fn parse_config<I, T>(args: I, config_text: Option<&str>) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("qft")).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(UsageError::Clap)?;
    let (command, flags) = match cli.command {
        Sub::Transform(f) => (Command::Transform, f),
        Sub::Counterexample(f) => (Command::Counterexample, f),
        Sub::Invert(f) => (Command::Invert, f),
        Sub::Sweep(f) => (Command::Sweep, f),
        Sub::Selfcheck(f) => (Command::Selfcheck, f),
    };

    let owned;
    let text = match (config_text, &flags.config) {
        (Some(t), _) => Some(t),
        (None, Some(path)) => {
            owned = std::fs::read_to_string(path)
                .map_err(|e| UsageError::invalid("config", format!("{}: {e}", path.display())))?;
            Some(owned.as_str())
        }
        (None, None) => None,
    };
    let file: FileConfig = match text {
        Some(t) => toml::from_str(t).map_err(|e| UsageError::invalid("config", e.to_string()))?,
        None => FileConfig::default(),
    };

    let grid = |field: &'static str, axis: char, flag: Option<String>, file: Option<String>| {
        let raw = pick(flag, file).unwrap_or_else(|| grid_default(command, axis).to_string());
        raw.parse::<Grid>()
            .map_err(|m| UsageError::invalid(field, m))
    };
    let k = grid("k", 'k', flags.k, file.k)?;
    let q = grid("q", 'q', flags.q, file.q)?;
    let x = grid("x", 'x', flags.x, file.x)?;
    if command.uses_q() && !(q.min >= 1.0 && q.max < 2.0) {
        return Err(UsageError::invalid(
            "q",
            format!("q range {q} must lie in [1, 2)"),
        ));
    }
    if command == Command::Counterexample && q.min <= 1.0 {
        return Err(UsageError::invalid("q", "counterexample probes need q > 1"));
    }

    let eps = match flags.eps {
        Some(s) => parse_eps(&s).map_err(|m| UsageError::invalid("eps", m))?,
        None => file
            .eps
            .unwrap_or_else(|| crate::inversion::SliceOptions::default().eps_sequence),
    };
    if eps.is_empty() || eps.iter().any(|e| !(e.is_finite() && *e > 0.0 && *e < 1.0)) {
        return Err(UsageError::invalid("eps", "values must lie in (0, 1)"));
    }
    if eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(UsageError::invalid("eps", "values must strictly decrease"));
    }

    let number = |field: &'static str, flag: Option<String>, file: Option<f64>| match flag {
        Some(s) => s
            .trim()
            .parse::<f64>()
            .map(Some)
            .map_err(|_| UsageError::invalid(field, format!("'{s}' is not a number"))),
        None => Ok(file),
    };
    let tol = number("tol", flags.tol, file.tol)?.unwrap_or(1e-9);
    if !(tol.is_finite() && tol > 0.0 && tol < 1.0) {
        return Err(UsageError::invalid(
            "tol",
            format!("{tol} is not in (0, 1)"),
        ));
    }
    let edge_threshold = number("edge_threshold", flags.edge_threshold, file.edge_threshold)?;
    if let Some(t) = edge_threshold {
        if !(t > 0.0) {
            return Err(UsageError::invalid(
                "edge_threshold",
                format!("{t} is not > 0"),
            ));
        }
    }

    let out = pick(flags.out, file.out);
    if let Some(path) = &out {
        let parent = path.parent().filter(|p| !p.as_os_str().is_empty());
        if let Some(dir) = parent {
            if !dir.is_dir() {
                return Err(UsageError::invalid(
                    "out",
                    format!("directory {} does not exist", dir.display()),
                ));
            }
        }
        if path.is_dir() {
            return Err(UsageError::invalid(
                "out",
                format!("{} is a directory", path.display()),
            ));
        }
    }

    let function = pick(flags.function, file.function);
    if function.is_some() && command == Command::Counterexample {
        return Err(UsageError::invalid(
            "fn",
            "counterexample uses its built-in window pair",
        ));
    }
    if let Some(desc) = &function {
        super::fnspec::parse_function(desc).map_err(|m| UsageError::invalid("fn", m))?;
    } else if matches!(command, Command::Transform | Command::Sweep) {
        return Err(UsageError::invalid(
            "fn",
            "--fn is required for this command",
        ));
    }

    Ok(RunConfig {
        command,
        function,
        k,
        q,
        x,
        eps,
        tol,
        edge_threshold,
        out,
        format: pick(flags.format, file.format).unwrap_or_default(),
    })
}

impl RunConfig {
    pub fn out_path(&self) -> Option<&Path> {
        self.out.as_deref()
    }
}
