//! Pixel-to-ground localization.
//!
//! The detected pixel is turned into a camera-frame ray through the lens
//! model, rotated into the world frame using the measured tilt, and
//! intersected with the ground plane `height` meters below the camera.

use crate::camera::{CameraIntrinsics, PixelPoint};
use crate::error::{Error, Result};
use crate::geometry::{direction_angles, CameraPose, GroundPoint};

/// Rays closer than this to the horizontal are treated as missing the ground.
pub const HORIZON_GUARD: f64 = 1e-9;

/// Ground coordinates of the target seen at pixel `p`.
pub fn localize(c: &CameraIntrinsics, pose: &CameraPose, p: PixelPoint) -> Result<GroundPoint> {
    if !(pose.height > 0.0 && pose.height.is_finite()) {
        return Err(Error::InvalidPose(format!(
            "height must be positive, got {}",
            pose.height
        )));
    }
    let ray_cam = c.pixel_to_ray(p)?;
    let ray_world = pose.rotation().camera_dir_to_world(&ray_cam);
    let (theta, phi) = direction_angles(ray_world.x(), ray_world.y(), ray_world.z())?;
    if theta >= std::f64::consts::FRAC_PI_2 - HORIZON_GUARD {
        return Err(Error::NoGroundIntersection);
    }
    let range = pose.height * theta.tan();
    let (s, co) = phi.sin_cos();
    Ok(GroundPoint::new(range * co, range * s))
}

/// Euclidean distance between two ground points.
pub fn localization_error(truth: GroundPoint, estimate: GroundPoint) -> f64 {
    (truth.x - estimate.x).hypot(truth.y - estimate.y)
}
