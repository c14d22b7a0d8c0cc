//! Repeated noisy localization of a fixed target.
//!
//! Each trial draws a measured pose (and optionally a perturbed pixel) from
//! its own random stream, localizes the target's true pixel with the
//! measured pose, and records the result. The raw X and Y series are then
//! smoothed in trial order by two independent low-pass filters.

use std::fmt;
use std::io;

use rayon::prelude::*;

use crate::camera::{CameraIntrinsics, PixelPoint};
use crate::error::{Error, Result};
use crate::filter::LowPassFilter;
use crate::geometry::{CameraPose, GroundPoint};
use crate::localization::localize;
use crate::noise::{sample_noisy_pixel, sample_noisy_pose, trial_rng, NoiseSpec};

/// Header of the per-trial CSV.
pub const CSV_HEADER: [&str; 8] = [
    "trial",
    "noisy_tilt_deg",
    "noisy_height_m",
    "raw_x",
    "raw_y",
    "filt_x",
    "filt_y",
    "status",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub intrinsics: CameraIntrinsics,
    pub true_pose: CameraPose,
    pub target: GroundPoint,
    pub noise: NoiseSpec,
    pub alpha: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SimConfig {
    /// Target at (4, 3) seen from 10 m at 37 deg tilt, 90 trials.
    fn default() -> Self {
        Self {
            intrinsics: CameraIntrinsics::default(),
            true_pose: CameraPose {
                height: 10.0,
                tilt: 37f64.to_radians(),
            },
            target: GroundPoint::new(4.0, 3.0),
            noise: NoiseSpec::default(),
            alpha: LowPassFilter::DEFAULT_ALPHA,
            trials: 90,
            seed: 1,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if !self.noise.is_valid() {
            return Err(Error::InvalidConfig(
                "noise standard deviations must be finite and non-negative".into(),
            ));
        }
        LowPassFilter::new(self.alpha)?;
        self.true_pose.validate()
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    Located {
        raw: GroundPoint,
        filtered: GroundPoint,
    },
    Failed(Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub index: usize,
    /// Radians.
    pub noisy_tilt: f64,
    pub noisy_height: f64,
    pub outcome: TrialOutcome,
}

impl TrialRecord {
    pub fn located(&self) -> Option<(GroundPoint, GroundPoint)> {
        match self.outcome {
            TrialOutcome::Located { raw, filtered } => Some((raw, filtered)),
            TrialOutcome::Failed(_) => None,
        }
    }
}

/// Mean and population variance of one axis, before and after filtering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisStats {
    pub mean_raw: f64,
    pub mean_filtered: f64,
    pub var_raw: f64,
    pub var_filtered: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimStats {
    pub x: AxisStats,
    pub y: AxisStats,
    pub successes: usize,
    pub failure_count: usize,
}

/// How trials are scheduled. Results do not depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

struct RawTrial {
    index: usize,
    pose: CameraPose,
    result: Result<GroundPoint>,
}

fn run_trial(cfg: &SimConfig, truth_px: PixelPoint, index: usize) -> RawTrial {
    let mut rng = trial_rng(cfg.seed, index as u64);
    let pose = sample_noisy_pose(&cfg.noise, cfg.true_pose.height, &mut rng);
    let px = sample_noisy_pixel(&cfg.noise, truth_px, &mut rng);
    RawTrial {
        index,
        pose,
        result: localize(&cfg.intrinsics, &pose, px),
    }
}

pub fn run_simulation(cfg: &SimConfig) -> Result<(Vec<TrialRecord>, SimStats)> {
    run_simulation_with(cfg, Execution::default())
}

pub fn run_simulation_with(
    cfg: &SimConfig,
    exec: Execution,
) -> Result<(Vec<TrialRecord>, SimStats)> {
    cfg.validate()?;
    let truth_px = cfg
        .intrinsics
        .project(&cfg.true_pose, cfg.target)
        .map_err(|e| {
            Error::InvalidConfig(format!("target is not visible under the true pose: {e}"))
        })?;

    let raw: Vec<RawTrial> = match exec {
        Execution::Sequential => (0..cfg.trials)
            .map(|i| run_trial(cfg, truth_px, i))
            .collect(),
        Execution::Parallel => (0..cfg.trials)
            .into_par_iter()
            .map(|i| run_trial(cfg, truth_px, i))
            .collect(),
    };

    let mut fx = LowPassFilter::new(cfg.alpha)?;
    let mut fy = LowPassFilter::new(cfg.alpha)?;
    let records: Vec<TrialRecord> = raw
        .into_iter()
        .map(|t| {
            let outcome = match t.result {
                Ok(g) => TrialOutcome::Located {
                    raw: g,
                    filtered: GroundPoint::new(fx.step(g.x), fy.step(g.y)),
                },
                Err(e) => TrialOutcome::Failed(e),
            };
            TrialRecord {
                index: t.index,
                noisy_tilt: t.pose.tilt,
                noisy_height: t.pose.height,
                outcome,
            }
        })
        .collect();

    let stats = summarize(&records)?;
    Ok((records, stats))
}

fn mean_var(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let (n, sum) = xs.clone().fold((0usize, 0.0), |(n, s), x| (n + 1, s + x));
    let mean = sum / n as f64;
    let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
    (mean, var)
}

/// Means and population variances over the successful trials.
pub fn summarize(records: &[TrialRecord]) -> Result<SimStats> {
    let ok: Vec<(GroundPoint, GroundPoint)> =
        records.iter().filter_map(TrialRecord::located).collect();
    if ok.is_empty() {
        return Err(Error::NoSuccessfulTrials);
    }
    let axis = |get: fn(&GroundPoint) -> f64| {
        let (mean_raw, var_raw) = mean_var(ok.iter().map(|(r, _)| get(r)));
        let (mean_filtered, var_filtered) = mean_var(ok.iter().map(|(_, f)| get(f)));
        AxisStats {
            mean_raw,
            mean_filtered,
            var_raw,
            var_filtered,
        }
    };
    Ok(SimStats {
        x: axis(|g| g.x),
        y: axis(|g| g.y),
        successes: ok.len(),
        failure_count: records.len() - ok.len(),
    })
}

/// Writes one CSV row per trial. Failed trials leave the coordinate
/// columns empty and carry the error name in `status`.
pub fn write_csv<W: io::Write>(records: &[TrialRecord], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let (coords, status) = match &r.outcome {
            TrialOutcome::Located { raw, filtered } => (
                [raw.x, raw.y, filtered.x, filtered.y].map(|v| format!("{v:.9}")),
                "ok",
            ),
            TrialOutcome::Failed(e) => (Default::default(), e.name()),
        };
        let [rx, ry, fx, fy] = coords;
        w.write_record([
            r.index.to_string(),
            format!("{:.9}", r.noisy_tilt.to_degrees()),
            format!("{:.9}", r.noisy_height),
            rx,
            ry,
            fx,
            fy,
            status.to_string(),
        ])?;
    }
    w.flush()
}

impl fmt::Display for SimStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<8}{:>18}{:>18}{:>18}{:>18}",
            "", "Mean (original)", "Mean (filtering)", "Var. (original)", "Var. (filtering)"
        )?;
        for (label, a) in [("X / m", &self.x), ("Y / m", &self.y)] {
            writeln!(
                f,
                "{:<8}{:>18.4}{:>18.4}{:>18.4}{:>18.4}",
                label, a.mean_raw, a.mean_filtered, a.var_raw, a.var_filtered
            )?;
        }
        write!(
            f,
            "failures: {} of {}",
            self.failure_count,
            self.failure_count + self.successes
        )
    }
}
