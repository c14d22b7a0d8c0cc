//! Command-line front end: `project`, `localize` and `simulate`.

pub mod config;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use fwloc::{localize, run_simulation, write_csv, GroundPoint, PixelPoint};

pub use config::AppConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Domain(fwloc::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// Errors raised while building models from the configuration.
    pub(crate) fn from_setup(e: fwloc::Error) -> Self {
        CliError::Config(e.to_string())
    }

    fn from_domain(e: fwloc::Error) -> Self {
        if e.is_geometric() {
            CliError::Domain(e)
        } else {
            CliError::Config(e.to_string())
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Config(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fwloc", version, about = "Fisheye ground-target localization")]
pub struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Master random seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(flatten)]
    pub overrides: Overrides,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pixel at which a ground point appears.
    #[command(allow_negative_numbers = true)]
    Project { x: f64, y: f64 },
    /// Ground point seen at a pixel.
    #[command(allow_negative_numbers = true)]
    Localize { u: f64, v: f64 },
    /// Repeated noisy localization of the configured target.
    Simulate {
        #[arg(long)]
        trials: Option<usize>,
        /// CSV destination; standard output when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Zero every noise standard deviation.
        #[arg(long)]
        no_noise: bool,
    },
}

/// Per-key overrides of the configuration file, named after the TOML key.
#[derive(Debug, Default, Args)]
pub struct Overrides {
    #[arg(long = "intrinsics.u0", global = true, value_name = "PX")]
    pub u0: Option<f64>,
    #[arg(long = "intrinsics.v0", global = true, value_name = "PX")]
    pub v0: Option<f64>,
    #[arg(long = "intrinsics.mu", global = true, value_name = "PX")]
    pub mu: Option<f64>,
    #[arg(long = "intrinsics.mv", global = true, value_name = "PX")]
    pub mv: Option<f64>,
    #[arg(long = "intrinsics.k1", global = true)]
    pub k1: Option<f64>,
    #[arg(long = "intrinsics.k2", global = true)]
    pub k2: Option<f64>,
    #[arg(long = "intrinsics.k3", global = true)]
    pub k3: Option<f64>,
    #[arg(long = "intrinsics.k4", global = true)]
    pub k4: Option<f64>,
    #[arg(long = "intrinsics.k5", global = true)]
    pub k5: Option<f64>,
    #[arg(long = "intrinsics.theta_max_deg", global = true, value_name = "DEG")]
    pub theta_max_deg: Option<f64>,
    #[arg(long = "intrinsics.width", global = true, value_name = "PX")]
    pub width: Option<u32>,
    #[arg(long = "intrinsics.height", global = true, value_name = "PX")]
    pub image_height: Option<u32>,
    #[arg(long = "pose.height_m", global = true, value_name = "M")]
    pub height_m: Option<f64>,
    #[arg(long = "pose.tilt_deg", global = true, value_name = "DEG")]
    pub tilt_deg: Option<f64>,
    #[arg(
        long = "target.x",
        global = true,
        value_name = "M",
        allow_negative_numbers = true
    )]
    pub target_x: Option<f64>,
    #[arg(
        long = "target.y",
        global = true,
        value_name = "M",
        allow_negative_numbers = true
    )]
    pub target_y: Option<f64>,
    #[arg(long = "noise.tilt_mean_deg", global = true, value_name = "DEG")]
    pub tilt_mean_deg: Option<f64>,
    #[arg(long = "noise.tilt_std_deg", global = true, value_name = "DEG")]
    pub tilt_std_deg: Option<f64>,
    #[arg(long = "noise.height_std_m", global = true, value_name = "M")]
    pub height_std_m: Option<f64>,
    #[arg(long = "noise.pixel_std_px", global = true, value_name = "PX")]
    pub pixel_std_px: Option<f64>,
    #[arg(long = "filter.alpha", global = true)]
    pub alpha: Option<f64>,
}

impl Overrides {
    fn entries(&self) -> Vec<(String, toml::Value)> {
        let floats = [
            ("intrinsics.u0", self.u0),
            ("intrinsics.v0", self.v0),
            ("intrinsics.mu", self.mu),
            ("intrinsics.mv", self.mv),
            ("intrinsics.k1", self.k1),
            ("intrinsics.k2", self.k2),
            ("intrinsics.k3", self.k3),
            ("intrinsics.k4", self.k4),
            ("intrinsics.k5", self.k5),
            ("intrinsics.theta_max_deg", self.theta_max_deg),
            ("pose.height_m", self.height_m),
            ("pose.tilt_deg", self.tilt_deg),
            ("target.x", self.target_x),
            ("target.y", self.target_y),
            ("noise.tilt_mean_deg", self.tilt_mean_deg),
            ("noise.tilt_std_deg", self.tilt_std_deg),
            ("noise.height_std_m", self.height_std_m),
            ("noise.pixel_std_px", self.pixel_std_px),
            ("filter.alpha", self.alpha),
        ];
        let ints = [
            ("intrinsics.width", self.width),
            ("intrinsics.height", self.image_height),
        ];
        floats
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k.to_string(), toml::Value::Float(v))))
            .chain(
                ints.into_iter().filter_map(|(k, v)| {
                    v.map(|v| (k.to_string(), toml::Value::Integer(v.into())))
                }),
            )
            .collect()
    }
}

impl Cli {
    /// Reads the configuration file (if any) and applies every command-line
    /// override, including the subcommand-specific ones.
    pub fn load_config(&self) -> Result<AppConfig, CliError> {
        let text = match &self.config {
            Some(path) => fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?,
            None => String::new(),
        };
        let mut entries = self.overrides.entries();
        if let Some(seed) = self.seed {
            let seed = i64::try_from(seed).map_err(|_| {
                CliError::Config(format!("seed {seed} does not fit in a TOML integer"))
            })?;
            entries.push(("seed".into(), toml::Value::Integer(seed)));
        }
        if let Command::Simulate {
            trials: Some(n), ..
        } = self.command
        {
            entries.push(("trials".into(), toml::Value::Integer(n as i64)));
        }
        let mut cfg = AppConfig::load(&text, &entries)?;
        if let Command::Simulate { no_noise: true, .. } = self.command {
            cfg.noise.tilt_std_deg = 0.0;
            cfg.noise.height_std_m = 0.0;
            cfg.noise.pixel_std_px = 0.0;
        }
        Ok(cfg)
    }
}

pub fn cmd_project<W: Write>(cfg: &AppConfig, x: f64, y: f64, out: &mut W) -> Result<(), CliError> {
    let cam = cfg.intrinsics()?;
    let pose = cfg.pose()?;
    let p = cam
        .project(&pose, GroundPoint::new(x, y))
        .map_err(CliError::from_domain)?;
    writeln!(out, "{:.3} {:.3}", p.u, p.v)?;
    Ok(())
}

/// Pixels off the sensor are refused before any lens math.
pub fn cmd_localize<W: Write>(
    cfg: &AppConfig,
    u: f64,
    v: f64,
    out: &mut W,
) -> Result<(), CliError> {
    let cam = cfg.intrinsics()?;
    let pose = cfg.pose()?;
    let p = PixelPoint::new(u, v);
    if !cam.contains_pixel(p) {
        return Err(CliError::Domain(fwloc::Error::PixelOutsideFrame(u, v)));
    }
    let g = localize(&cam, &pose, p).map_err(CliError::from_domain)?;
    writeln!(out, "{:.4} {:.4}", g.x, g.y)?;
    Ok(())
}

/// Runs the simulation, writes the per-trial CSV to `csv_out` and the
/// summary table to `summary_out`.
pub fn cmd_simulate<C: Write, S: Write>(
    cfg: &AppConfig,
    csv_out: C,
    summary_out: &mut S,
) -> Result<(), CliError> {
    let sim = cfg.sim_config()?;
    let (records, stats) = run_simulation(&sim).map_err(CliError::from_domain)?;
    write_csv(&records, csv_out)?;
    writeln!(summary_out, "{stats}")?;
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.load_config()?;
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    match &cli.command {
        Command::Project { x, y } => cmd_project(&cfg, *x, *y, &mut stdout),
        Command::Localize { u, v } => cmd_localize(&cfg, *u, *v, &mut stdout),
        Command::Simulate {
            out: Some(path), ..
        } => {
            let file = fs::File::create(path)
                .map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?;
            cmd_simulate(&cfg, io::BufWriter::new(file), &mut stdout)
        }
        Command::Simulate { out: None, .. } => {
            let stderr = io::stderr();
            cmd_simulate(&cfg, &mut stdout, &mut stderr.lock())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(f: impl FnOnce(&mut Vec<u8>) -> Result<(), CliError>) -> Result<String, CliError> {
        let mut buf = Vec::new();
        f(&mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    fn straight_down() -> AppConfig {
        let mut c = AppConfig::default();
        c.pose.tilt_deg = 0.0;
        c
    }

    #[test]
    fn project_principal_point() {
        let out = capture(|w| cmd_project(&straight_down(), 0.0, 0.0, w)).unwrap();
        assert_eq!(out, "320.000 240.000\n");
    }

    #[test]
    fn project_worked_scenario() {
        let out = capture(|w| cmd_project(&AppConfig::default(), 4.0, 3.0, w)).unwrap();
        let v: Vec<f64> = out.split_whitespace().map(|s| s.parse().unwrap()).collect();
        assert!(
            (v[0] - 147.0).abs() < 0.5 && (v[1] - 423.7).abs() < 0.5,
            "{out}"
        );
    }

    #[test]
    fn project_out_of_view() {
        let err = capture(|w| cmd_project(&straight_down(), 1000.0, 0.0, w)).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("field of view"));
    }

    #[test]
    fn localize_examples() {
        let out = capture(|w| cmd_localize(&straight_down(), 320.0, 240.0, w)).unwrap();
        assert_eq!(out, "0.0000 0.0000\n");

        let out = capture(|w| cmd_localize(&AppConfig::default(), 147.0, 423.7, w)).unwrap();
        let v: Vec<f64> = out.split_whitespace().map(|s| s.parse().unwrap()).collect();
        assert!(
            (v[0] - 4.0).abs() < 0.01 && (v[1] - 3.0).abs() < 0.01,
            "{out}"
        );
    }

    #[test]
    fn localize_off_sensor() {
        let err = capture(|w| cmd_localize(&AppConfig::default(), -5.0, 240.0, w)).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn localize_off_lens_with_large_sensor() {
        let mut cfg = AppConfig::default();
        cfg.intrinsics.width = 5000;
        cfg.intrinsics.height = 5000;
        let err = capture(|w| cmd_localize(&cfg, 4000.0, 240.0, w)).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("radius outside lens image"));
    }

    #[test]
    fn simulate_noiseless_single_trial() {
        let mut cfg = AppConfig {
            trials: 1,
            ..AppConfig::default()
        };
        cfg.noise.tilt_std_deg = 0.0;
        cfg.noise.height_std_m = 0.0;
        let mut csv = Vec::new();
        let summary = capture(|w| cmd_simulate(&cfg, &mut csv, w)).unwrap();
        let csv = String::from_utf8(csv).unwrap();
        let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        for (i, truth) in [(3, 4.0), (4, 3.0), (5, 4.0), (6, 3.0)] {
            let v: f64 = row[i].parse().unwrap();
            assert!((v - truth).abs() < 1e-6);
        }
        assert!(summary.contains("failures: 0 of 1"));
    }

    #[test]
    fn simulate_invisible_target_is_config_error() {
        let mut cfg = AppConfig::default();
        cfg.target.x = -500.0;
        let err = capture(|w| cmd_simulate(&cfg, Vec::new(), w)).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn cli_overrides_parse() {
        let cli = Cli::try_parse_from([
            "fwloc",
            "--seed",
            "7",
            "--pose.tilt_deg",
            "12.5",
            "simulate",
            "--trials",
            "3",
            "--no-noise",
            "--target.x",
            "-1.5",
        ])
        .unwrap();
        let cfg = cli.load_config().unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.trials, 3);
        assert_eq!(cfg.pose.tilt_deg, 12.5);
        assert_eq!(cfg.target.x, -1.5);
        assert_eq!(cfg.noise.height_std_m, 0.0);
    }

    #[test]
    fn negative_positionals() {
        let cli = Cli::try_parse_from(["fwloc", "project", "-3", "2"]).unwrap();
        assert!(matches!(cli.command, Command::Project { x, y } if x == -3.0 && y == 2.0));
    }
}
