use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fueter_core::{FueterConfig, OdeConfig, QuadratureConfig, Rectangle};
use serde::Deserialize;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "fueter", version, about = "Forward and inverse Fueter mapping in R^{m+1}")]
pub struct Cli {
    /// TOML file with defaults for any of the flags below; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate Ft[h, P_k] on a grid
    Forward(Flags),
    /// Build the Fueter primitive of a named axial field
    Invert(Flags),
    /// Invert, apply the forward map again and report residuals
    Roundtrip(Flags),
    /// Evaluate Ft[z^n, P_k] for n = 0..=nmax
    Kernel(Flags),
    /// Compare the closed-form examples with the numerical pipeline
    Oracles(Flags),
    /// Run the full acceptance suite
    Selftest(Flags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Forward(_) => "forward",
            Self::Invert(_) => "invert",
            Self::Roundtrip(_) => "roundtrip",
            Self::Kernel(_) => "kernel",
            Self::Oracles(_) => "oracles",
            Self::Selftest(_) => "selftest",
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Self::Forward(f)
            | Self::Invert(f)
            | Self::Roundtrip(f)
            | Self::Kernel(f)
            | Self::Oracles(f)
            | Self::Selftest(f) => f,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Debug, Default)]
pub struct Flags {
    /// odd dimension of the vector part, 3 <= m <= 9
    #[arg(long)]
    pub m: Option<usize>,
    /// degree of P_k
    #[arg(long)]
    pub k: Option<u32>,
    /// rectangle a,b,c,d in the (x0, r) half-plane
    #[arg(long)]
    pub rect: Option<String>,
    /// grid size nx0,nr
    #[arg(long)]
    pub grid: Option<String>,
    /// holomorphic function: z^n, recip, arctan, z*arctan, log
    #[arg(long)]
    pub h: Option<String>,
    /// axial field: a built-in name, ft:<h>, or a tabulated grid JSON file
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub quad_tol: Option<f64>,
    #[arg(long)]
    pub ode_steps: Option<usize>,
    /// 2N initial values α_0..α_{N-1}, β_0..β_{N-1} at x0 = a
    #[arg(long)]
    pub init: Option<String>,
    /// largest n for the kernel command
    #[arg(long)]
    pub nmax: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub m: Option<usize>,
    pub k: Option<u32>,
    pub rect: Option<[f64; 4]>,
    pub grid: Option<[usize; 2]>,
    pub h: Option<String>,
    pub field: Option<String>,
    pub quad_tol: Option<f64>,
    pub ode_steps: Option<usize>,
    pub init: Option<Vec<f64>>,
    pub nmax: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved and validated settings for one run.
#[derive(Debug)]
pub struct RunConfig {
    pub command: &'static str,
    pub m: usize,
    pub k: u32,
    pub rect: Rectangle,
    pub grid: (usize, usize),
    pub h: Option<String>,
    pub field: Option<String>,
    pub quad: QuadratureConfig,
    pub ode: OdeConfig,
    pub init: Option<Vec<f64>>,
    pub nmax: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|_| CliError::Config(format!("--{flag}: cannot parse {s:?}")))
        })
        .collect()
}

fn exactly<const N: usize, T: Copy + std::str::FromStr>(flag: &str, text: &str) -> Result<[T; N], CliError> {
    let v = parse_list::<T>(flag, text)?;
    v.try_into()
        .map_err(|v: Vec<T>| CliError::Config(format!("--{flag} expects {N} comma-separated values, got {}", v.len())))
}

impl RunConfig {
    /// Flags override the config file, which overrides the defaults.
    pub fn resolve(command: &Command, file: FileConfig) -> Result<Self, CliError> {
        let flags = command.flags();
        let m = flags.m.or(file.m).unwrap_or(3);
        let k = flags.k.or(file.k).unwrap_or(0);
        if m.is_multiple_of(2) || !(3..=9).contains(&m) {
            return Err(CliError::Config(format!("m must be odd with 3 <= m <= 9, got m = {m}")));
        }
        FueterConfig::new(m, k).map_err(|e| CliError::Config(e.to_string()))?;
        let rect = match &flags.rect {
            Some(s) => exactly::<4, f64>("rect", s)?,
            None => file.rect.unwrap_or([0.0, 1.0, 0.5, 1.5]),
        };
        let rect = Rectangle::new(rect[0], rect[1], rect[2], rect[3]).map_err(|e| CliError::Config(e.to_string()))?;
        let grid = match &flags.grid {
            Some(s) => exactly::<2, usize>("grid", s)?,
            None => file.grid.unwrap_or([10, 10]),
        };
        if grid.contains(&0) {
            return Err(CliError::Config("grid sizes must be positive".into()));
        }
        let mut quad = QuadratureConfig::default();
        if let Some(tol) = flags.quad_tol.or(file.quad_tol) {
            if tol.is_nan() || tol <= 0.0 {
                return Err(CliError::Config(format!("quadrature tolerance must be positive, got {tol}")));
            }
            quad.abs_tol = tol;
        }
        let mut ode = OdeConfig::default();
        if let Some(steps) = flags.ode_steps.or(file.ode_steps) {
            if steps == 0 {
                return Err(CliError::Config("ODE step count must be positive".into()));
            }
            ode.steps = steps;
        }
        let init = match &flags.init {
            Some(s) => Some(parse_list::<f64>("init", s)?),
            None => file.init,
        };
        let order = k as usize + (m - 1) / 2;
        if let Some(init) = &init {
            if init.len() != 2 * order {
                return Err(CliError::Config(format!(
                    "--init needs 2N = {} values for m = {m}, k = {k}, got {}",
                    2 * order,
                    init.len()
                )));
            }
        }
        let cfg = Self {
            command: command.name(),
            m,
            k,
            rect,
            grid: (grid[0], grid[1]),
            h: flags.h.clone().or(file.h),
            field: flags.field.clone().or(file.field),
            quad,
            ode,
            init,
            nmax: flags.nmax.or(file.nmax),
            out: flags.out.clone().or(file.out),
            format: flags.format.or(file.format).unwrap_or(Format::Json),
        };
        match cfg.command {
            "forward" if cfg.h.is_none() => Err(CliError::Config("forward needs --h".into())),
            "invert" | "roundtrip" if cfg.field.is_none() => {
                Err(CliError::Config(format!("{} needs --field", cfg.command)))
            }
            "forward" | "invert" => Ok(cfg),
            _ if cfg.format == Format::Csv => Err(CliError::Config(format!(
                "CSV output is only available for grid commands, not {}",
                cfg.command
            ))),
            _ => Ok(cfg),
        }
    }
}
