//! Residual operators: how far a sampled function is from solving the
//! radial equation, and how far a bi-radial callable is from solving the
//! full equation at α = 2. These are the instruments behind "is an exact
//! solution" claims: exact solutions show O(h²) residuals, anything else
//! does not.

use crate::error::{Error, Result};
use crate::fd::fd_weights;
use crate::grid::RadialFunction;
use crate::params::ProblemParams;
use crate::real::Real;

/// The operator u ↦ -u'' - ((dim-1)/r)u' - coeff·r^alpha·(u + shift)^exponent
/// with a signed power (odd extension) so that slightly negative samples do
/// not produce NaN. `dim` is real-valued: fictitious (non-integer) dimensions
/// from the variable change s = r^{(2+α)/2} are first-class here.
#[derive(Clone, Copy, Debug)]
pub struct RadialOperator<R: Real> {
    pub dim: R,
    pub coeff: R,
    pub alpha: R,
    pub exponent: R,
    pub shift: R,
}

impl<R: Real> RadialOperator<R> {
    /// The equation's own operator: dim = N, coeff = C(α), exponent = p_α.
    pub fn equation(params: &ProblemParams<R>) -> Self {
        Self {
            dim: params.n_real(),
            coeff: params.c_alpha,
            alpha: params.alpha,
            exponent: params.p_alpha,
            shift: R::zero(),
        }
    }

    /// The shifted variant -u'' - ((N-1)/r)u' - C(α)r^α(u+γ)^{p_α} solved by
    /// the truncated profile on the ball of radius 1/ε, with γ = U(1/ε).
    pub fn shifted_equation(params: &ProblemParams<R>, gamma: R) -> Self {
        Self { shift: gamma, ..Self::equation(params) }
    }
}

pub(crate) fn signed_pow<R: Real>(u: R, p: R) -> R {
    u.signum() * u.abs().powf(p)
}

/// Pointwise residual of the operator on a sampled function: second-order
/// centered stencils at interior nodes, one-sided 3-point stencils at the
/// two ends (first-order there; ends are excluded from O(h²) claims).
pub fn residual_radial_general<R: Real>(
    f: &RadialFunction<R>,
    op: &RadialOperator<R>,
) -> Result<RadialFunction<R>> {
    let n = f.grid.n();
    if n < 5 {
        return Err(Error::GridTooCoarse { nodes: n, required: 5 });
    }
    let nodes = f.grid.nodes();
    let mut out = vec![R::zero(); n];
    for i in 0..n {
        let (j0, x) = if i == 0 {
            (0, &nodes[0..3])
        } else if i == n - 1 {
            (n - 3, &nodes[n - 3..n])
        } else {
            (i - 1, &nodes[i - 1..i + 2])
        };
        let r = nodes[i];
        let w1 = fd_weights(r, x, 1);
        let w2 = fd_weights(r, x, 2);
        let mut du = R::zero();
        let mut ddu = R::zero();
        for (k, (&a, &b)) in w1.iter().zip(w2.iter()).enumerate() {
            du += a * f.values[j0 + k];
            ddu += b * f.values[j0 + k];
        }
        let u = f.values[i];
        out[i] = -ddu - (op.dim - R::one()) / r * du
            - op.coeff * r.powf(op.alpha) * signed_pow(u + op.shift, op.exponent);
    }
    RadialFunction::from_values(f.grid.clone(), out)
}

/// Residual against the equation itself.
pub fn residual_radial<R: Real>(
    f: &RadialFunction<R>,
    params: &ProblemParams<R>,
) -> Result<RadialFunction<R>> {
    residual_radial_general(f, &RadialOperator::equation(params))
}

/// Residual against the γ-shifted nonlinearity (the form satisfied by the
/// truncated profile inside the ball of radius 1/ε).
pub fn residual_radial_shifted<R: Real>(
    f: &RadialFunction<R>,
    params: &ProblemParams<R>,
    gamma: R,
) -> Result<RadialFunction<R>> {
    residual_radial_general(f, &RadialOperator::shifted_equation(params, gamma))
}

/// Max interior residual of -Δu - C(2)|x|² u^{p_2} for a function of the
/// bi-radial variables (s, t) = (|x'|, |x''|), x ∈ ℝ^{N/2} × ℝ^{N/2}:
///
///   Δu = u_ss + ((N/2-1)/s) u_s + u_tt + ((N/2-1)/t) u_t.
///
/// The quarter-plane [0, extent]² is covered by cell-centered nodes
/// (i+½)h, so the axes carry no nodes; the 5-point star reaches across them
/// by even reflection, which is exact for the symmetric functions at hand.
/// The outermost cell layer has no outward neighbor and is skipped.
pub fn residual_biradial<R: Real, F: Fn(R, R) -> R>(
    u: F,
    params: &ProblemParams<R>,
    extent: R,
    h: R,
) -> Result<R> {
    if !params.n_dim.is_multiple_of(2) || params.n_dim < 4 {
        return Err(Error::InvalidParameter(format!(
            "bi-radial coordinates need even N >= 4, got {}",
            params.n_dim
        )));
    }
    let m = (extent / h).to_f64().unwrap_or(0.0).round() as usize;
    if m < 4 {
        return Err(Error::GridTooCoarse { nodes: m, required: 4 });
    }
    let half_dim = params.n_real().half() - R::one(); // (N/2 - 1)
    let node = |i: usize| (R::of_usize(i) + R::of(0.5)) * h;
    // cache one row at a time would complicate the reflection; the grid is
    // small enough (≤ ~1200²) to evaluate the five-point star directly
    let mut worst = R::zero();
    for i in 0..m - 1 {
        let s = node(i);
        for j in 0..m - 1 {
            let t = node(j);
            let c = u(s, t);
            // even reflection across each axis: the ghost value at index -1
            // equals the value at index 0
            let s_minus = if i == 0 { c } else { u(node(i - 1), t) };
            let s_plus = u(node(i + 1), t);
            let t_minus = if j == 0 { c } else { u(s, node(j - 1)) };
            let t_plus = u(s, node(j + 1));
            let uss = (s_plus - R::of(2.0) * c + s_minus) / (h * h);
            let utt = (t_plus - R::of(2.0) * c + t_minus) / (h * h);
            let us = (s_plus - s_minus) / (R::of(2.0) * h);
            let ut = (t_plus - t_minus) / (R::of(2.0) * h);
            let lap = uss + half_dim / s * us + utt + half_dim / t * ut;
            let rho2 = s * s + t * t;
            let res = -lap
                - params.c_alpha * rho2.powf(params.alpha.half())
                    * signed_pow(c, params.p_alpha);
            if !res.is_finite() {
                return Err(Error::NonFinite(i * m + j));
            }
            worst = worst.max(res.abs());
        }
    }
    Ok(worst)
}
