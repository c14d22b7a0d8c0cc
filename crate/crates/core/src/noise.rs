//! Seeded Gaussian measurement noise.
//!
//! Every trial draws from its own ChaCha8 stream: the generator is seeded
//! with the master seed and then switched to stream number `trial_index`.
//! Within a trial the standard-normal draws happen in a fixed order: tilt,
//! height, pixel `u`, pixel `v`. All four are drawn even when the matching
//! standard deviation is zero, so enabling one noise source never shifts
//! the values of another.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::camera::PixelPoint;
use crate::geometry::CameraPose;

/// Noisy heights are kept at or above this many meters.
pub const MIN_HEIGHT: f64 = 0.01;

/// Gaussian noise levels. Angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub tilt_mean_deg: f64,
    pub tilt_std_deg: f64,
    pub height_std_m: f64,
    pub pixel_std_px: f64,
}

impl Default for NoiseSpec {
    /// Attitude error 0.1 deg around a 37 deg tilt, barometer error 0.5 m,
    /// no pixel noise.
    fn default() -> Self {
        Self {
            tilt_mean_deg: 37.0,
            tilt_std_deg: 0.1,
            height_std_m: 0.5,
            pixel_std_px: 0.0,
        }
    }
}

impl NoiseSpec {
    /// Same tilt mean with every standard deviation set to zero.
    pub fn noiseless(self) -> Self {
        Self {
            tilt_std_deg: 0.0,
            height_std_m: 0.0,
            pixel_std_px: 0.0,
            ..self
        }
    }

    pub fn is_valid(&self) -> bool {
        self.tilt_mean_deg.is_finite()
            && [self.tilt_std_deg, self.height_std_m, self.pixel_std_px]
                .iter()
                .all(|s| s.is_finite() && *s >= 0.0)
    }
}

/// Random stream for one trial.
pub fn trial_rng(master_seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index);
    rng
}

fn normal<R: Rng + ?Sized>(rng: &mut R, mean: f64, std: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    mean + std * z
}

/// Draws a measured pose: tilt around `spec.tilt_mean_deg`, height around
/// `true_height`. Height is clamped to [`MIN_HEIGHT`].
pub fn sample_noisy_pose<R: Rng + ?Sized>(
    spec: &NoiseSpec,
    true_height: f64,
    rng: &mut R,
) -> CameraPose {
    let tilt_deg = normal(rng, spec.tilt_mean_deg, spec.tilt_std_deg);
    let height = normal(rng, true_height, spec.height_std_m).max(MIN_HEIGHT);
    CameraPose {
        height,
        tilt: tilt_deg.to_radians(),
    }
}

/// Perturbs `u` then `v` with independent Gaussian noise.
pub fn sample_noisy_pixel<R: Rng + ?Sized>(
    spec: &NoiseSpec,
    p: PixelPoint,
    rng: &mut R,
) -> PixelPoint {
    let u = normal(rng, p.u, spec.pixel_std_px);
    let v = normal(rng, p.v, spec.pixel_std_px);
    PixelPoint::new(u, v)
}
