//! Ground-target localization from a single wide-angle camera image.
//!
//! Given the camera's height above flat ground and its tilt from the
//! vertical, a detected pixel is mapped back to ground-plane coordinates
//! through a polynomial fisheye lens model. The crate also carries the
//! noise model, low-pass filter and Monte-Carlo harness used to study how
//! attitude and altitude errors propagate into the position estimate.

pub mod camera;
pub mod error;
pub mod filter;
pub mod geometry;
pub mod localization;
pub mod noise;
pub mod roots;
pub mod sim;

pub use camera::{CameraIntrinsics, IntrinsicParams, LensPoint, PixelPoint};
pub use error::{Error, Result};
pub use filter::LowPassFilter;
pub use geometry::{
    direction_angles, CameraPoint, CameraPose, GroundPoint, RotationMatrix, UnitVector3, WorldPoint,
};
pub use localization::{localization_error, localize};
pub use noise::{sample_noisy_pixel, sample_noisy_pose, trial_rng, NoiseSpec};
pub use sim::{
    run_simulation, run_simulation_with, summarize, write_csv, Execution, SimConfig, SimStats,
    TrialOutcome, TrialRecord,
};
