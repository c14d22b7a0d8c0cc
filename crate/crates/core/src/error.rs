use thiserror::Error;

/// Errors raised by the projection, localization and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate direction")]
    DegenerateDirection,
    #[error("incidence angle out of range: {0:.6} rad")]
    IncidenceAngleOutOfRange(f64),
    #[error("radius outside lens image: {0:.6}")]
    RadiusOutsideLens(f64),
    #[error("target outside field of view: incidence {:.3} deg", .0.to_degrees())]
    OutsideFieldOfView(f64),
    #[error("target behind camera")]
    BehindCamera,
    #[error("ray does not intersect ground")]
    NoGroundIntersection,
    #[error("pixel outside image frame: ({0}, {1})")]
    PixelOutsideFrame(f64, f64),
    #[error("no successful trials")]
    NoSuccessfulTrials,
    #[error("invalid intrinsics: {0}")]
    InvalidIntrinsics(String),
    #[error("invalid pose: {0}")]
    InvalidPose(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// True for failures that come from the scene geometry (field of view,
    /// horizon, lens radius) rather than from bad parameters.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            Error::DegenerateDirection
                | Error::IncidenceAngleOutOfRange(_)
                | Error::RadiusOutsideLens(_)
                | Error::OutsideFieldOfView(_)
                | Error::BehindCamera
                | Error::NoGroundIntersection
                | Error::PixelOutsideFrame(..)
        )
    }

    /// Short, stable name of the failure without the numeric detail.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DegenerateDirection => "degenerate direction",
            Error::IncidenceAngleOutOfRange(_) => "incidence angle out of range",
            Error::RadiusOutsideLens(_) => "radius outside lens image",
            Error::OutsideFieldOfView(_) => "target outside field of view",
            Error::BehindCamera => "target behind camera",
            Error::NoGroundIntersection => "ray does not intersect ground",
            Error::PixelOutsideFrame(..) => "pixel outside image frame",
            Error::NoSuccessfulTrials => "no successful trials",
            Error::InvalidIntrinsics(_) => "invalid intrinsics",
            Error::InvalidPose(_) => "invalid pose",
            Error::InvalidConfig(_) => "invalid configuration",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
