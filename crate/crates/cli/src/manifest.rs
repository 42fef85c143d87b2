use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use dirac_pauli::spectrum::MAX_QUANTUM_NUMBER;
use dirac_pauli::{Branch, Convention, FieldConfig, PartnerMode};

#[derive(Debug, Parser)]
#[command(name = "dirac-pauli", version, about = "Bound states in the central field E(r) = a + b/r")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandLine,
}

#[derive(Debug, Subcommand)]
pub enum CommandLine {
    /// Energy levels for a range of (n, ell)
    Spectrum(Options),
    /// Sample one normalized state on a log grid
    Wavefunction(Options),
    /// Run the residual, shooting and normalization checks
    Verify(Options),
    /// Energy sweeps behind the two figures
    Figures(Options),
    /// Sweep one field parameter
    Sweep(Options),
}

impl CommandLine {
    pub fn split(self) -> (Command, Options) {
        match self {
            CommandLine::Spectrum(o) => (Command::Spectrum, o),
            CommandLine::Wavefunction(o) => (Command::Wavefunction, o),
            CommandLine::Verify(o) => (Command::Verify, o),
            CommandLine::Figures(o) => (Command::Figures, o),
            CommandLine::Sweep(o) => (Command::Sweep, o),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Wavefunction,
    Verify,
    Figures,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    A,
    B,
    Mu,
}

impl SweepParam {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::A => "a",
            SweepParam::B => "b",
            SweepParam::Mu => "mu",
        }
    }
}

/// Flags shared by every command. All are optional so that a config file can
/// supply them; flags win over the file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    #[arg(long, value_parser = parse_from_str::<Branch>)]
    #[serde(default, deserialize_with = "from_str_opt")]
    pub branch: Option<Branch>,
    #[arg(long, value_parser = parse_from_str::<Convention>)]
    #[serde(default, deserialize_with = "from_str_opt")]
    pub convention: Option<Convention>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub ell_max: Option<u32>,
    /// Figure number, 1 (energy against a) or 2 (energy against b)
    #[arg(long)]
    pub which: Option<u8>,
    #[arg(long, allow_negative_numbers = true)]
    pub min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub max: Option<f64>,
    /// Number of sweep or grid points
    #[arg(long)]
    pub steps: Option<usize>,
    /// Parameter swept by `sweep`
    #[arg(long, value_enum)]
    pub param: Option<SweepParam>,
    /// Partner component used by `wavefunction`
    #[arg(long, value_parser = parse_from_str::<PartnerMode>)]
    #[serde(default, deserialize_with = "from_str_opt")]
    pub partner: Option<PartnerMode>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat JSON object with the same keys as the long flags
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

fn parse_from_str<T: std::str::FromStr<Err = String>>(s: &str) -> Result<T, String> {
    s.parse()
}

fn from_str_opt<'de, D, T>(d: D) -> Result<Option<T>, D::Error>
where
    D: serde::Deserializer<'de>,
    T: std::str::FromStr<Err = String>,
{
    let s: Option<String> = Option::deserialize(d)?;
    s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
}

macro_rules! overlay {
    ($flags:expr, $file:expr, $($field:ident),*) => {
        Options { $($field: $flags.$field.or($file.$field),)* config: None }
    };
}

impl Options {
    /// `self` with every unset field taken from `file`.
    pub fn over(self, file: Options) -> Options {
        overlay!(
            self, file, branch, convention, a, b, mu, n, ell, n_max, ell_max, which, min, max, steps, param,
            partner, format, out
        )
    }
}

/// A validated request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: Command,
    pub cfg: FieldConfig,
    pub branch: Branch,
    pub convention: Convention,
    pub n_range: (u32, u32),
    pub ell_range: (u32, u32),
    pub which: u8,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub param: SweepParam,
    pub partner: PartnerMode,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_STEPS: usize = 201;
pub const DEFAULT_GRID_POINTS: usize = 200;

fn read_config(path: &Path) -> Result<Options, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
}

fn range(what: &str, fixed: Option<u32>, max: Option<u32>, default_max: u32) -> Result<(u32, u32), String> {
    let r = match fixed {
        Some(v) => (v, v),
        None => (0, max.unwrap_or(default_max)),
    };
    if r.1 > MAX_QUANTUM_NUMBER {
        return Err(format!("{what} = {} exceeds the limit {MAX_QUANTUM_NUMBER}", r.1));
    }
    Ok(r)
}

impl RunManifest {
    /// Merges the config file under the flags and validates the result.
    pub fn resolve(command: Command, flags: Options) -> Result<Self, String> {
        let opts = match &flags.config {
            Some(path) => {
                let file = read_config(path)?;
                flags.over(file)
            }
            None => flags,
        };

        let figures = command == Command::Figures;
        let which = opts.which.unwrap_or(1);
        if figures && !(which == 1 || which == 2) {
            return Err(format!("--which must be 1 or 2, got {which}"));
        }
        // figure defaults: mu = -0.001 with the other field parameter fixed at 1
        let (default_mu, default_conv) = if figures { (-0.001, Some(Convention::PaperLiteral)) } else { (0.001, None) };
        let branch = opts.branch.unwrap_or(Branch::Plus);
        let convention = opts.convention.or(default_conv).unwrap_or(Convention::default_for(branch));
        let a = opts.a.unwrap_or(1.0);
        let b = opts.b.unwrap_or(1.0);
        let mu = opts.mu.unwrap_or(default_mu);
        let cfg = FieldConfig::new(a, b, mu).map_err(|e| e.to_string())?;

        let default_max = if command == Command::Verify { 2 } else { 0 };
        let n_range = range("n", opts.n, opts.n_max, default_max)?;
        let ell_range = range("ell", opts.ell, opts.ell_max, default_max)?;

        let steps = opts.steps.unwrap_or(if command == Command::Wavefunction { DEFAULT_GRID_POINTS } else { DEFAULT_STEPS });
        if steps < 2 {
            return Err(format!("--steps must be at least 2, got {steps}"));
        }
        let (min, max) = match command {
            Command::Wavefunction => (opts.min.unwrap_or(0.05), opts.max.unwrap_or(f64::NAN)),
            _ => (opts.min.unwrap_or(0.0), opts.max.unwrap_or(10.0)),
        };
        if !min.is_finite() || !(max.is_nan() || (max.is_finite() && max > min)) {
            return Err(format!("invalid range [{min}, {max}]"));
        }
        if command == Command::Wavefunction && !(min > 0.0) {
            return Err(format!("--min must be positive for a radial grid, got {min}"));
        }

        let format = opts.format.unwrap_or(if command == Command::Verify { Format::Json } else { Format::Csv });
        if command == Command::Verify && format != Format::Json {
            return Err("verify only writes JSON".into());
        }

        Ok(Self {
            command,
            cfg,
            branch,
            convention,
            n_range,
            ell_range,
            which,
            min,
            max,
            steps,
            param: opts.param.unwrap_or(SweepParam::A),
            partner: opts.partner.unwrap_or_default(),
            format,
            out: opts.out,
        })
    }
}
