//! Radially symmetric fisheye lens model.
//!
//! A ray at incidence angle `theta` from the optical axis lands on the lens
//! plane at radius
//!
//! ```text
//! r(theta) = k1*theta + k2*theta^3 + k3*theta^5 + k4*theta^7 + k5*theta^9
//! ```
//!
//! along the ray's azimuth. Lens-plane coordinates map to pixels by a
//! per-axis scale and the principal point: `u = mu*x + u0`, `v = mv*y + v0`.

use crate::error::{Error, Result};
use crate::geometry::{direction_angles, CameraPose, GroundPoint, UnitVector3};
use crate::roots::{newton_bisect, Tolerance};

/// Samples used when checking that `r(theta)` is strictly increasing.
const MONOTONE_GRID: usize = 4096;

/// Raw lens parameters. Angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntrinsicParams {
    pub u0: f64,
    pub v0: f64,
    pub mu: f64,
    pub mv: f64,
    pub k: [f64; 5],
    pub theta_max: f64,
    pub width: u32,
    pub height: u32,
}

impl Default for IntrinsicParams {
    /// The 640x480 camera with a 150 degree field of view.
    fn default() -> Self {
        Self {
            u0: 320.0,
            v0: 240.0,
            mu: 188.0,
            mv: 188.0,
            k: [3.55, 0.03, 0.0, 0.0, 0.0],
            theta_max: 75f64.to_radians(),
            width: 640,
            height: 480,
        }
    }
}

/// Validated lens model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraIntrinsics {
    params: IntrinsicParams,
    r_max: f64,
}

impl Default for CameraIntrinsics {
    fn default() -> Self {
        Self::new(IntrinsicParams::default()).expect("default intrinsics are valid")
    }
}

/// Lens-plane point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LensPoint {
    pub x: f64,
    pub y: f64,
}

impl LensPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Image point in pixels, origin at the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelPoint {
    pub u: f64,
    pub v: f64,
}

impl PixelPoint {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }
}

fn poly(k: &[f64; 5], theta: f64) -> f64 {
    let t2 = theta * theta;
    theta * (k[0] + t2 * (k[1] + t2 * (k[2] + t2 * (k[3] + t2 * k[4]))))
}

fn poly_derivative(k: &[f64; 5], theta: f64) -> f64 {
    let t2 = theta * theta;
    k[0] + t2 * (3.0 * k[1] + t2 * (5.0 * k[2] + t2 * (7.0 * k[3] + t2 * 9.0 * k[4])))
}

impl CameraIntrinsics {
    pub fn new(params: IntrinsicParams) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidIntrinsics(msg));
        let p = &params;
        if ![p.u0, p.v0, p.mu, p.mv, p.theta_max]
            .iter()
            .chain(p.k.iter())
            .all(|v| v.is_finite())
        {
            return bad("parameters must be finite".into());
        }
        if p.mu <= 0.0 || p.mv <= 0.0 {
            return bad(format!(
                "pixel scales must be positive (mu={}, mv={})",
                p.mu, p.mv
            ));
        }
        if !(p.theta_max > 0.0 && p.theta_max <= std::f64::consts::FRAC_PI_2) {
            return bad(format!(
                "theta_max must lie in (0, 90] degrees, got {} deg",
                p.theta_max.to_degrees()
            ));
        }
        if p.width == 0 || p.height == 0 {
            return bad("image size must be non-zero".into());
        }
        for i in 0..=MONOTONE_GRID {
            let theta = p.theta_max * i as f64 / MONOTONE_GRID as f64;
            let d = poly_derivative(&p.k, theta);
            if d <= 0.0 {
                return bad(format!(
                    "r(theta) is not strictly increasing near {} deg (r'={d})",
                    theta.to_degrees()
                ));
            }
        }
        Ok(Self {
            params,
            r_max: poly(&p.k, p.theta_max),
        })
    }

    pub fn params(&self) -> &IntrinsicParams {
        &self.params
    }

    pub fn theta_max(&self) -> f64 {
        self.params.theta_max
    }

    /// Lens radius at `theta_max`.
    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn r_of_theta(&self, theta: f64) -> Result<f64> {
        if !(0.0..=self.params.theta_max).contains(&theta) {
            return Err(Error::IncidenceAngleOutOfRange(theta));
        }
        Ok(poly(&self.params.k, theta))
    }

    /// Inverts `r(theta)` on `[0, theta_max]`.
    pub fn theta_of_r(&self, r: f64) -> Result<f64> {
        if !(0.0..=self.r_max).contains(&r) {
            return Err(Error::RadiusOutsideLens(r));
        }
        if r == 0.0 {
            return Ok(0.0);
        }
        let k = &self.params.k;
        let theta = newton_bisect(
            |t| (poly(k, t) - r, poly_derivative(k, t)),
            0.0,
            self.params.theta_max,
            r / k[0],
            Tolerance::default(),
        );
        Ok(theta)
    }

    pub fn lens_to_pixel(&self, p: LensPoint) -> PixelPoint {
        PixelPoint::new(
            self.params.mu * p.x + self.params.u0,
            self.params.mv * p.y + self.params.v0,
        )
    }

    pub fn pixel_to_lens(&self, p: PixelPoint) -> LensPoint {
        LensPoint::new(
            (p.u - self.params.u0) / self.params.mu,
            (p.v - self.params.v0) / self.params.mv,
        )
    }

    /// Whether the pixel falls on the `width x height` sensor.
    pub fn contains_pixel(&self, p: PixelPoint) -> bool {
        (0.0..=self.params.width as f64).contains(&p.u)
            && (0.0..=self.params.height as f64).contains(&p.v)
    }

    /// Pixel at which a ground target appears for a camera at `pose`.
    pub fn project(&self, pose: &CameraPose, g: GroundPoint) -> Result<PixelPoint> {
        pose.validate()?;
        let c = pose.rotation().world_to_camera(g.to_world(pose.height));
        if c.z <= 0.0 {
            return Err(Error::BehindCamera);
        }
        let (theta, phi) = direction_angles(c.x, c.y, c.z)?;
        if theta > self.params.theta_max {
            return Err(Error::OutsideFieldOfView(theta));
        }
        let r = poly(&self.params.k, theta);
        let (s, co) = phi.sin_cos();
        Ok(self.lens_to_pixel(LensPoint::new(r * co, r * s)))
    }

    /// Camera-frame direction of the ray imaged at `p`.
    pub fn pixel_to_ray(&self, p: PixelPoint) -> Result<UnitVector3> {
        let lens = self.pixel_to_lens(p);
        let r = lens.x.hypot(lens.y);
        let phi = if r == 0.0 { 0.0 } else { lens.y.atan2(lens.x) };
        let theta = self.theta_of_r(r)?;
        Ok(UnitVector3::from_angles(theta, phi))
    }
}
