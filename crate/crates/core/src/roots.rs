//! Safeguarded Newton iteration for monotone scalar functions.

/// Iteration limits for [`newton_bisect`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub step: f64,
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            step: 1e-12,
            max_iter: 100,
        }
    }
}

/// Finds a root of `f` inside `[lo, hi]` where `f(lo) <= 0 <= f(hi)`.
///
/// `fdf` returns the function value and its derivative. Newton steps that
/// leave the current bracket, or that have a non-positive derivative, are
/// replaced by bisection. The bracket shrinks every iteration, so the
/// method converges whenever a sign change exists.
pub fn newton_bisect<F>(fdf: F, mut lo: f64, mut hi: f64, x0: f64, tol: Tolerance) -> f64
where
    F: Fn(f64) -> (f64, f64),
{
    let mut x = x0.clamp(lo, hi);
    for _ in 0..tol.max_iter {
        let (fx, dfx) = fdf(x);
        if fx == 0.0 {
            return x;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }

        let newton = x - fx / dfx;
        let next = if dfx > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };

        let step = (next - x).abs();
        x = next;
        if step < tol.step {
            break;
        }
    }
    x
}
