//! Coordinate frames and the single-axis tilt rotation.
//!
//! Three frames are involved:
//!
//! * the ground plane, with `x` pointing east and `y` pointing north, origin
//!   directly below the camera;
//! * the world frame, centred on the camera with axes parallel to the ground
//!   axes and `z` pointing down toward the ground, so a ground target sits at
//!   `z = height`;
//! * the camera frame, with `z` along the optical axis. It differs from the
//!   world frame by a rotation of `tilt` about the shared `y` axis.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Target position on the ground plane, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPoint {
    pub x: f64,
    pub y: f64,
}

impl GroundPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Lift onto the ground plane of a camera at `height`.
    pub fn to_world(self, height: f64) -> WorldPoint {
        WorldPoint::new(self.x, self.y, height)
    }
}

/// Point in the camera-centred world frame, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorldPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl WorldPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }
}

/// Point in the camera frame, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl CameraPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        Vector3::new(self.x, self.y, self.z).norm()
    }
}

/// Unit-norm direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3(Vector3<f64>);

impl UnitVector3 {
    pub const Z: UnitVector3 = UnitVector3(Vector3::new(0.0, 0.0, 1.0));

    /// Normalizes `(x, y, z)`. Fails on a zero or non-finite vector.
    pub fn new_normalize(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vector3::new(x, y, z);
        let n = v.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::DegenerateDirection);
        }
        Ok(Self(v / n))
    }

    /// Direction from spherical angles: `theta` from the `z` axis, `phi`
    /// measured from `x` toward `y`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self(Vector3::new(cp * st, sp * st, ct))
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }

    pub fn dot(&self, other: &UnitVector3) -> f64 {
        self.0.dot(&other.0)
    }
}

/// Proper rotation (orthonormal, determinant +1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix(Matrix3<f64>);

impl RotationMatrix {
    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    /// World-to-camera rotation for a camera tilted by `tilt` radians about
    /// the `y` axis:
    ///
    /// ```text
    /// | cos b  0  -sin b |
    /// |   0    1    0    |
    /// | sin b  0   cos b |
    /// ```
    pub fn from_tilt(tilt: f64) -> Self {
        let (s, c) = tilt.sin_cos();
        #[rustfmt::skip]
        let m = Matrix3::new(
            c,   0.0, -s,
            0.0, 1.0, 0.0,
            s,   0.0, c,
        );
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn world_to_camera(&self, p: WorldPoint) -> CameraPoint {
        let v = self.0 * p.to_vector();
        CameraPoint::new(v.x, v.y, v.z)
    }

    /// Applies the rotation to a direction.
    pub fn rotate(&self, v: &UnitVector3) -> UnitVector3 {
        UnitVector3(self.0 * v.0)
    }

    /// Maps a camera-frame direction back into the world frame. The inverse
    /// of a rotation is its transpose.
    pub fn camera_dir_to_world(&self, v: &UnitVector3) -> UnitVector3 {
        UnitVector3(self.0.tr_mul(&v.0))
    }
}

/// Camera height above the ground and tilt of the optical axis away from
/// the downward vertical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraPose {
    /// Meters.
    pub height: f64,
    /// Radians, `0` looks straight down.
    pub tilt: f64,
}

impl CameraPose {
    pub fn new(height: f64, tilt: f64) -> Result<Self> {
        let pose = Self { height, tilt };
        pose.validate()?;
        Ok(pose)
    }

    pub fn from_degrees(height: f64, tilt_deg: f64) -> Result<Self> {
        Self::new(height, tilt_deg.to_radians())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.height > 0.0 && self.height.is_finite()) {
            return Err(Error::InvalidPose(format!(
                "height must be positive, got {}",
                self.height
            )));
        }
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&self.tilt) {
            return Err(Error::InvalidPose(format!(
                "tilt must lie in [0, 90) degrees, got {} deg",
                self.tilt.to_degrees()
            )));
        }
        Ok(())
    }

    pub fn rotation(&self) -> RotationMatrix {
        RotationMatrix::from_tilt(self.tilt)
    }
}

/// Polar angle from the `z` axis in `[0, pi]` and azimuth of the `(x, y)`
/// footprint in `(-pi, pi]`.
///
/// The azimuth uses the two-argument arctangent so that the sign of `y`
/// survives; an on-axis vector gets azimuth 0.
pub fn direction_angles(x: f64, y: f64, z: f64) -> Result<(f64, f64)> {
    let n = (x * x + y * y + z * z).sqrt();
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::DegenerateDirection);
    }
    let theta = (z / n).clamp(-1.0, 1.0).acos();
    let phi = if x == 0.0 && y == 0.0 {
        0.0
    } else {
        y.atan2(x)
    };
    Ok((theta, phi))
}
