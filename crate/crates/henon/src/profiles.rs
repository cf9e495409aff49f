//! Closed-form objects attached to the equation: the explicit radial
//! solutions, the dilation kernel element, first eigenfunctions, the limit
//! eigenfunction, and the explicit nonradial family in bi-radial
//! coordinates.

use crate::error::{Error, Result};
use crate::grid::{RadialFunction, RadialGrid};
use crate::params::ProblemParams;
use crate::real::Real;

/// (1 + r^q)^(-m), stable for r up to (and beyond) 1e8 by factoring the
/// leading power out of the bracket when r > 1. Requires q > 0, m ≥ 0.
pub(crate) fn bracket_pow<R: Real>(r: R, q: R, m: R) -> R {
    if r <= R::one() {
        (R::one() + r.powf(q)).powf(-m)
    } else {
        let t = r.powf(-q);
        r.powf(-q * m) * (R::one() + t).powf(-m)
    }
}

/// The radial solution profile with height 1 at the origin:
/// U(r) = (1 + r^{2+α})^{-(N-2)/(2+α)}.
pub fn u_value<R: Real>(params: &ProblemParams<R>, r: R) -> R {
    let q = R::of(2.0) + params.alpha;
    bracket_pow(r, q, (params.n_real() - R::of(2.0)) / q)
}

/// dU/dr = -(N-2) r^{1+α} (1 + r^{2+α})^{-(N-2)/(2+α) - 1}, evaluated in a
/// factored form for large r so no intermediate overflows.
pub fn u_derivative<R: Real>(params: &ProblemParams<R>, r: R) -> R {
    let n2 = params.n_real() - R::of(2.0);
    let q = R::of(2.0) + params.alpha;
    let m = n2 / q;
    if r <= R::one() {
        -n2 * r.powf(q - R::one()) * (R::one() + r.powf(q)).powf(-m - R::one())
    } else {
        let t = r.powf(-q);
        // r^{q-1} · r^{-q(m+1)} = r^{-(N-1)}
        -n2 * r.powf(-(params.n_real() - R::one())) * (R::one() + t).powf(-m - R::one())
    }
}

/// Which closed form a [`RadialProfile`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProfileKind<R: Real> {
    /// U(r) = (1 + r^{2+α})^{-(N-2)/(2+α)}, the height-1 solution.
    U,
    /// The dilated solution λ^{(N-2)/2} (1 + λ^{2+α} r^{2+α})^{-(N-2)/(2+α)}.
    ULambda { lambda: R },
    /// U(r) - U(1/ε): the solution of the Dirichlet problem on the ball of
    /// radius 1/ε (shifted nonlinearity), zero at r = 1/ε, extended by zero.
    UEps { eps: R },
    /// Z(r) = (1 - r^{2+α})(1 + r^{2+α})^{-(N+α)/(2+α)}: the dilation
    /// direction, spanning the radial kernel of the linearized operator.
    Z,
    /// ψ_{1,k}(r) = r^k (1 + r^{2+α})^{-(N+2k-2)/(2+α)}: first eigenfunction
    /// of the mode-k linearized problem, eigenvalue Λ_{1,k}.
    PsiFirst { k: u32 },
    /// z(r) = r^{(2+α)/2} (1 + r^{2+α})^{-(N+α)/(2+α)}: first eigenfunction
    /// of the limiting 1/r²-weighted problem.
    ZLimit,
}

/// A closed-form radial function, evaluable anywhere on [0, ∞).
#[derive(Clone, Copy, Debug)]
pub struct RadialProfile<R: Real> {
    pub params: ProblemParams<R>,
    pub kind: ProfileKind<R>,
}

impl<R: Real> RadialProfile<R> {
    pub fn new(params: ProblemParams<R>, kind: ProfileKind<R>) -> Result<Self> {
        match kind {
            ProfileKind::ULambda { lambda } if !(lambda > R::zero()) => Err(
                Error::InvalidParameter(format!("lambda must be positive, got {lambda}")),
            ),
            ProfileKind::UEps { eps } if !(eps > R::zero()) => Err(Error::InvalidParameter(
                format!("eps must be positive, got {eps}"),
            )),
            _ => Ok(Self { params, kind }),
        }
    }

    pub fn eval(&self, r: R) -> R {
        debug_assert!(r >= R::zero());
        let p = &self.params;
        let n = p.n_real();
        let two = R::of(2.0);
        let q = two + p.alpha;
        match self.kind {
            ProfileKind::U => u_value(p, r),
            ProfileKind::ULambda { lambda } => {
                lambda.powf((n - two) / two) * u_value(p, lambda * r)
            }
            ProfileKind::UEps { eps } => {
                let edge = R::one() / eps;
                if r > edge {
                    R::zero()
                } else {
                    u_value(p, r) - u_value(p, edge)
                }
            }
            ProfileKind::Z => {
                if r <= R::one() {
                    let rq = r.powf(q);
                    (R::one() - rq) * (R::one() + rq).powf(-(n + p.alpha) / q)
                } else {
                    // (1-r^q)/(1+r^q) · (1+r^q)^{1-(N+α)/q}, both factors stable
                    let t = r.powf(-q);
                    let ratio = (t - R::one()) / (t + R::one());
                    ratio * bracket_pow(r, q, (n - two) / q)
                }
            }
            ProfileKind::PsiFirst { k } => {
                let kr = R::of_u32(k);
                let m = (n + two * kr - two) / q;
                if r == R::zero() {
                    if k == 0 { R::one() } else { R::zero() }
                } else if r <= R::one() {
                    r.powf(kr) * (R::one() + r.powf(q)).powf(-m)
                } else {
                    let t = r.powf(-q);
                    r.powf(-(n - two + kr)) * (R::one() + t).powf(-m)
                }
            }
            ProfileKind::ZLimit => {
                let m = (n + p.alpha) / q;
                if r == R::zero() {
                    R::zero()
                } else if r <= R::one() {
                    r.powf(q / two) * (R::one() + r.powf(q)).powf(-m)
                } else {
                    let t = r.powf(-q);
                    r.powf(q / two - (n + p.alpha)) * (R::one() + t).powf(-m)
                }
            }
        }
    }

    /// Power-law exponent of the tail: eval(r) ~ c·r^exponent as r → ∞.
    /// None for the compactly supported kind.
    pub fn tail_exponent(&self) -> Option<R> {
        let p = &self.params;
        let n2 = p.n_real() - R::of(2.0);
        match self.kind {
            ProfileKind::U | ProfileKind::ULambda { .. } | ProfileKind::Z => Some(-n2),
            ProfileKind::UEps { .. } => None,
            ProfileKind::PsiFirst { k } => Some(-(n2 + R::of_u32(k))),
            // q/2 - (N+α) = -(2N+α-2)/2
            ProfileKind::ZLimit => {
                Some(-(R::of(2.0) * p.n_real() + p.alpha - R::of(2.0)) / R::of(2.0))
            }
        }
    }

    /// Samples onto a grid, attaching tail metadata when the profile has a
    /// power-law tail.
    pub fn sample(&self, grid: &RadialGrid<R>) -> RadialFunction<R> {
        let values = grid.nodes().iter().map(|&r| self.eval(r)).collect();
        let f = RadialFunction::from_values(grid.clone(), values)
            .expect("closed forms are finite everywhere");
        match self.tail_exponent() {
            Some(e) => f.with_tail(e),
            None => f,
        }
    }
}

/// A point (|x'|, |x''|) of the bi-radial quarter-plane for the split
/// x = (x', x'') ∈ ℝ^{N/2} × ℝ^{N/2}, N even.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiRadialPoint<R: Real> {
    pub s: R,
    pub t: R,
}

/// The explicit nonradial family at α = 2, N even:
///
/// u(s, t) = (1 + (s²+t²)² - 2a(s²-t²) + a²)^{-(N-2)/4}.
///
/// The denominator satisfies den ≥ (s²+t²-|a|)² + 1 ≥ 1 for every real a, so
/// it cannot vanish; the guard exists to surface invalid inputs (NaN,
/// overflow) rather than silently propagate them. a = 0 collapses the family
/// to the radial solution at r = √(s²+t²).
pub fn eval_nonradial_explicit<R: Real>(
    params: &ProblemParams<R>,
    a: R,
    point: BiRadialPoint<R>,
) -> Result<R> {
    check_biradial_params(params)?;
    let (s, t) = (point.s, point.t);
    let rho2 = s * s + t * t;
    let y = s * s - t * t;
    let den = R::one() + rho2 * rho2 - R::of(2.0) * a * y + a * a;
    if !(den > R::zero()) {
        return Err(Error::NonpositiveDenominator {
            value: den.to_f64().unwrap_or(f64::NAN),
            s: s.to_f64().unwrap_or(f64::NAN),
            t: t.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = params.n_real();
    Ok(den.powf(-(n - R::of(2.0)) / R::of(4.0)))
}

fn check_biradial_params<R: Real>(params: &ProblemParams<R>) -> Result<()> {
    if (params.alpha - R::of(2.0)).abs() > R::of(1e-12) {
        return Err(Error::InvalidParameter(format!(
            "the explicit nonradial family requires alpha = 2, got {}",
            params.alpha
        )));
    }
    if !params.n_dim.is_multiple_of(2) || params.n_dim < 4 {
        return Err(Error::InvalidParameter(format!(
            "the explicit nonradial family requires even N >= 4, got {}",
            params.n_dim
        )));
    }
    Ok(())
}

/// Result of [`check_harmonic_gradient_condition`].
#[derive(Clone, Copy, Debug)]
pub struct GradientConditionReport<R: Real> {
    pub max_abs_deviation: R,
    pub samples: usize,
}

/// Verifies |∇Y|² = ((2+α)/2)² |x|^α for Y(x) = |x'|² - |x''|² at α = 2:
/// both sides are evaluated by their own formulas (lhs = 4s² + 4t², rhs via
/// powers of s²+t²) and must agree to rounding.
pub fn check_harmonic_gradient_condition<R: Real>(
    params: &ProblemParams<R>,
    samples: &[BiRadialPoint<R>],
) -> Result<GradientConditionReport<R>> {
    check_biradial_params(params)?;
    let two = R::of(2.0);
    let coeff = ((two + params.alpha) / two).powi(2);
    let mut worst = R::zero();
    for pt in samples {
        let rho2 = pt.s * pt.s + pt.t * pt.t;
        let lhs = R::of(4.0) * (pt.s * pt.s) + R::of(4.0) * (pt.t * pt.t);
        let rhs = coeff * rho2.powf(params.alpha / two);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(GradientConditionReport { max_abs_deviation: worst, samples: samples.len() })
}
