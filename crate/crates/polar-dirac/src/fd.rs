//! Central finite differences with Richardson-based order measurement.

/// Difference scheme; the order of accuracy is the scheme's name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Central2,
    Central4,
}

/// Central-difference first derivative of a scalar function.
pub fn central<F: Fn(f64) -> f64>(f: F, x: f64, h: f64, scheme: Scheme) -> f64 {
    match scheme {
        Scheme::Central2 => (f(x + h) - f(x - h)) / (2.0 * h),
        Scheme::Central4 => {
            (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
        }
    }
}

/// Stencil offsets and weights (per 1/h) of a scheme, for differencing
/// structured values entry by entry.
pub fn stencil(scheme: Scheme, h: f64) -> Vec<(f64, f64)> {
    match scheme {
        Scheme::Central2 => vec![(h, 0.5 / h), (-h, -0.5 / h)],
        Scheme::Central4 => vec![
            (h, 8.0 / (12.0 * h)),
            (-h, -8.0 / (12.0 * h)),
            (2.0 * h, -1.0 / (12.0 * h)),
            (-2.0 * h, 1.0 / (12.0 * h)),
        ],
    }
}

/// Observed convergence order by Richardson extrapolation: compares the
/// derivative at h, h/2 and h/4.
pub fn convergence_order<F: Fn(f64) -> f64 + Copy>(f: F, x: f64, h: f64, scheme: Scheme) -> f64 {
    let d1 = central(f, x, h, scheme);
    let d2 = central(f, x, 0.5 * h, scheme);
    let d4 = central(f, x, 0.25 * h, scheme);
    let num = (d1 - d2).abs();
    let den = (d2 - d4).abs();
    if den == 0.0 {
        return f64::INFINITY;
    }
    (num / den).log2()
}
