//! First-order low-pass (exponential smoothing) filter.

use crate::error::{Error, Result};

/// Recursive smoother `out = alpha * x + (1 - alpha) * prev`.
///
/// The first sample initializes the output directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowPassFilter {
    alpha: f64,
    prev_output: Option<f64>,
}

impl LowPassFilter {
    pub const DEFAULT_ALPHA: f64 = 0.125;

    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "filter alpha must lie in (0, 1], got {alpha}"
            )));
        }
        Ok(Self {
            alpha,
            prev_output: None,
        })
    }

    /// Filter whose memory already holds `prev`.
    pub fn with_state(alpha: f64, prev: f64) -> Result<Self> {
        let mut f = Self::new(alpha)?;
        f.prev_output = Some(prev);
        Ok(f)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn last(&self) -> Option<f64> {
        self.prev_output
    }

    pub fn step(&mut self, x: f64) -> f64 {
        let out = match self.prev_output {
            None => x,
            Some(prev) => self.alpha * x + (1.0 - self.alpha) * prev,
        };
        self.prev_output = Some(out);
        out
    }

    pub fn reset(&mut self) {
        self.prev_output = None;
    }
}

impl Default for LowPassFilter {
    fn default() -> Self {
        Self {
            alpha: Self::DEFAULT_ALPHA,
            prev_output: None,
        }
    }
}
