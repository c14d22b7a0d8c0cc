//! TOML run configuration.
//!
//! Every key is optional; missing keys take the defaults of the 640x480
//! camera flying at 10 m with a 37 degree tilt. Angles are in degrees.
//!
//! ```toml
//! seed = 1
//! trials = 90
//!
//! [intrinsics]
//! u0 = 320.0
//! v0 = 240.0
//! mu = 188.0
//! mv = 188.0
//! k1 = 3.55
//! k2 = 0.03
//! k3 = 0.0
//! k4 = 0.0
//! k5 = 0.0
//! theta_max_deg = 75.0
//! width = 640
//! height = 480
//!
//! [pose]
//! height_m = 10.0
//! tilt_deg = 37.0
//!
//! [target]
//! x = 4.0
//! y = 3.0
//!
//! [noise]
//! tilt_mean_deg = 37.0
//! tilt_std_deg = 0.1
//! height_std_m = 0.5
//! pixel_std_px = 0.0
//!
//! [filter]
//! alpha = 0.125
//! ```

use serde::{Deserialize, Serialize};

use fwloc::{CameraIntrinsics, CameraPose, GroundPoint, IntrinsicParams, NoiseSpec, SimConfig};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntrinsicsSection {
    pub u0: f64,
    pub v0: f64,
    pub mu: f64,
    pub mv: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub k5: f64,
    pub theta_max_deg: f64,
    pub width: u32,
    pub height: u32,
}

impl Default for IntrinsicsSection {
    fn default() -> Self {
        let p = IntrinsicParams::default();
        Self {
            u0: p.u0,
            v0: p.v0,
            mu: p.mu,
            mv: p.mv,
            k1: p.k[0],
            k2: p.k[1],
            k3: p.k[2],
            k4: p.k[3],
            k5: p.k[4],
            theta_max_deg: 75.0,
            width: p.width,
            height: p.height,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PoseSection {
    pub height_m: f64,
    pub tilt_deg: f64,
}

impl Default for PoseSection {
    fn default() -> Self {
        Self {
            height_m: 10.0,
            tilt_deg: 37.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TargetSection {
    pub x: f64,
    pub y: f64,
}

impl Default for TargetSection {
    fn default() -> Self {
        Self { x: 4.0, y: 3.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseSection {
    pub tilt_mean_deg: f64,
    pub tilt_std_deg: f64,
    pub height_std_m: f64,
    pub pixel_std_px: f64,
}

impl Default for NoiseSection {
    fn default() -> Self {
        let n = NoiseSpec::default();
        Self {
            tilt_mean_deg: n.tilt_mean_deg,
            tilt_std_deg: n.tilt_std_deg,
            height_std_m: n.height_std_m,
            pixel_std_px: n.pixel_std_px,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterSection {
    pub alpha: f64,
}

impl Default for FilterSection {
    fn default() -> Self {
        Self { alpha: 0.125 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppConfig {
    pub seed: u64,
    pub trials: usize,
    pub intrinsics: IntrinsicsSection,
    pub pose: PoseSection,
    pub target: TargetSection,
    pub noise: NoiseSection,
    pub filter: FilterSection,
}

impl Default for AppConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            trials: 90,
            intrinsics: IntrinsicsSection::default(),
            pose: PoseSection::default(),
            target: TargetSection::default(),
            noise: NoiseSection::default(),
            filter: FilterSection::default(),
        }
    }
}

/// Sets `path` (dot separated) in `table`, creating intermediate tables.
fn set_path(table: &mut toml::Table, path: &str, value: toml::Value) -> Result<(), CliError> {
    let mut parts = path.split('.').peekable();
    let mut cur = table;
    while let Some(part) = parts.next() {
        if parts.peek().is_none() {
            cur.insert(part.to_string(), value);
            return Ok(());
        }
        let entry = cur
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        cur = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("`{part}` is not a table")))?;
    }
    Ok(())
}

impl AppConfig {
    /// Parses a TOML document and applies `overrides` (dotted key, value)
    /// on top of it before deserializing.
    pub fn load(text: &str, overrides: &[(String, toml::Value)]) -> Result<Self, CliError> {
        let mut table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        if overrides.is_empty() {
            return table
                .try_into()
                .map_err(|e: toml::de::Error| CliError::Config(e.to_string()));
        }
        for (key, value) in overrides {
            set_path(&mut table, key, value.clone())?;
        }
        // Round-trip through text so deserialization errors carry the key path.
        let merged = toml::to_string(&table).map_err(|e| CliError::Config(e.to_string()))?;
        toml::from_str(&merged).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn intrinsics(&self) -> Result<CameraIntrinsics, CliError> {
        let s = &self.intrinsics;
        CameraIntrinsics::new(IntrinsicParams {
            u0: s.u0,
            v0: s.v0,
            mu: s.mu,
            mv: s.mv,
            k: [s.k1, s.k2, s.k3, s.k4, s.k5],
            theta_max: s.theta_max_deg.to_radians(),
            width: s.width,
            height: s.height,
        })
        .map_err(CliError::from_setup)
    }

    pub fn pose(&self) -> Result<CameraPose, CliError> {
        CameraPose::from_degrees(self.pose.height_m, self.pose.tilt_deg)
            .map_err(CliError::from_setup)
    }

    pub fn noise(&self) -> NoiseSpec {
        NoiseSpec {
            tilt_mean_deg: self.noise.tilt_mean_deg,
            tilt_std_deg: self.noise.tilt_std_deg,
            height_std_m: self.noise.height_std_m,
            pixel_std_px: self.noise.pixel_std_px,
        }
    }

    pub fn sim_config(&self) -> Result<SimConfig, CliError> {
        let cfg = SimConfig {
            intrinsics: self.intrinsics()?,
            true_pose: self.pose()?,
            target: GroundPoint::new(self.target.x, self.target.y),
            noise: self.noise(),
            alpha: self.filter.alpha,
            trials: self.trials,
            seed: self.seed,
        };
        cfg.validate().map_err(CliError::from_setup)?;
        Ok(cfg)
    }
}
