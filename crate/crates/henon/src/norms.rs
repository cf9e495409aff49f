//! Weighted sup norms, the Dirichlet seminorm, and empirical decay
//! exponents of grid functions.

use crate::error::{Error, Result};
use crate::fd::derivative_values;
use crate::gamma::unit_sphere_area;
use crate::grid::RadialFunction;
use crate::params::ProblemParams;
use crate::quad::trapezoid;
use crate::real::Real;

/// The open interval of weight exponents ((N/(N+2))(N-2), N-2) in which the
/// weighted fixed-point analysis of the equation is carried out.
pub fn weight_band<R: Real>(params: &ProblemParams<R>) -> (R, R) {
    let n = params.n_real();
    let two = R::of(2.0);
    ((n / (n + two)) * (n - two), n - two)
}

/// sup over r of (1+r)^β |f(r)|: the discrete sup over the grid, extended
/// past the last node through the tail exponent when the function carries
/// one. A tail with β + exponent > 0 makes the supremum infinite; exponents
/// β outside [`weight_band`] are allowed but warned about, as the contraction
/// estimates that motivate this norm hold only inside the band.
pub fn weighted_sup_norm<R: Real>(
    f: &RadialFunction<R>,
    beta: R,
    params: &ProblemParams<R>,
) -> R {
    let (lo, hi) = weight_band(params);
    if beta <= lo || beta >= hi {
        log::warn!(
            "weight exponent {beta} outside the contraction band ({lo}, {hi}) for N = {}",
            params.n_dim
        );
    }
    let mut sup = R::zero();
    for (&r, &v) in f.grid.nodes().iter().zip(&f.values) {
        sup = sup.max((R::one() + r).powf(beta) * v.abs());
    }
    if let Some(tail) = f.tail {
        // beyond R: |f| ~ |f(R)|(r/R)^e, so (1+r)^β|f| is eventually
        // monotone; it decays iff β + e < 0, in which case the grid sup
        // already dominates the tail
        if beta + tail.exponent > R::zero() && f.values.last().is_some_and(|v| *v != R::zero()) {
            log::warn!(
                "weight (1+r)^{beta} overwhelms the r^{} tail; norm is infinite",
                tail.exponent
            );
            return R::infinity();
        }
    }
    sup
}

/// (∫_{ℝ^N} |∇f|²)^{1/2} for radial f: (Nω_N ∫ f'(r)² r^{N-1} dr)^{1/2} by
/// trapezoid on the grid, plus the exact tail integral under the generic
/// decay f ~ c·r^{2-N} with c matched at the last node. Functions that
/// vanish at the last node (compact support) get a zero tail automatically.
pub fn dirichlet_seminorm<R: Real>(f: &RadialFunction<R>, params: &ProblemParams<R>) -> R {
    let n = params.n_real();
    let df = derivative_values(f);
    let integrand: Vec<R> = f
        .grid
        .nodes()
        .iter()
        .zip(&df)
        .map(|(&r, &d)| d * d * r.powf(n - R::one()))
        .collect();
    let bulk = trapezoid(&f.grid, &integrand);
    // f ~ c r^{2-N} gives f'² r^{N-1} ~ c²(N-2)² r^{1-N}, whose integral
    // over (R, ∞) is c²(N-2)R^{2-N} with c = f(R)·R^{N-2}
    let r_out = f.grid.r_outer();
    let f_out = *f.values.last().expect("grids are nonempty");
    let tail = (n - R::of(2.0)) * f_out * f_out * r_out.powf(n - R::of(2.0));
    // Nω_N = area of the unit sphere
    let total = (bulk + tail) * unit_sphere_area::<R>(params.n_dim);
    total.max(R::zero()).sqrt()
}

/// Least-squares slope of log|f| against log r over the window: the
/// empirical decay exponent. The window must contain at least two nodes and
/// the values on it must be nonzero and of one sign (the fit is on |f|, so
/// a consistently negative tail is fine; a sign change inside the window
/// means the "decay rate" is not a power law and is refused).
pub fn decay_fit<R: Real>(f: &RadialFunction<R>, window: (R, R)) -> Result<R> {
    let range = f.grid.window(window.0, window.1);
    if range.len() < 2 {
        return Err(Error::WindowTooNarrow {
            lo: window.0.to_f64().unwrap_or(f64::NAN),
            hi: window.1.to_f64().unwrap_or(f64::NAN),
        });
    }
    let vals = &f.values[range.clone()];
    let nodes = &f.grid.nodes()[range];
    if let Some(i) = vals.iter().position(|v| *v == R::zero()) {
        return Err(Error::ZeroInWindow(nodes[i].to_f64().unwrap_or(f64::NAN)));
    }
    if vals.iter().any(|v| v.signum() != vals[0].signum()) {
        return Err(Error::MixedSignsInWindow);
    }
    // slope of log|v| vs log r
    let m = R::of_usize(vals.len());
    let (mut sx, mut sy, mut sxx, mut sxy) = (R::zero(), R::zero(), R::zero(), R::zero());
    for (&r, &v) in nodes.iter().zip(vals) {
        let x = r.ln();
        let y = v.abs().ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    Ok((m * sxy - sx * sy) / (m * sxx - sx * sx))
}
