//! Integral identities satisfied by the closed-form solutions, the
//! Pohozaev balance on truncated balls, and the weighted Sobolev constant
//! with its extremality check. Each check reports lhs, rhs and relative
//! error rather than a bare boolean, so tolerances stay the caller's call.

use crate::error::{Error, Result};
use crate::fd::derivative_values;
use crate::gamma::{gamma, unit_sphere_area};
use crate::grid::RadialFunction;
use crate::params::ProblemParams;
use crate::profiles::{u_derivative, u_value, ProfileKind, RadialProfile};
use crate::quad::{integrate, integrate_to_infinity, power_tail, trapezoid, QuadOptions};
use crate::real::Real;

/// One verified identity: left side (quadrature), right side (closed form),
/// and their relative discrepancy.
#[derive(Clone, Debug)]
pub struct IdentityReport<R: Real> {
    pub name: String,
    pub lhs: R,
    pub rhs: R,
    pub rel_error: R,
}

impl<R: Real> IdentityReport<R> {
    pub fn new(name: impl Into<String>, lhs: R, rhs: R) -> Self {
        let floor = R::of(1e-30);
        let rel_error = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(floor);
        Self { name: name.into(), lhs, rhs, rel_error }
    }
}

/// Mass of the dilated solution against the weight:
/// Nω_N ∫ r^{α+N-1} U_{λ}^{p_α} dr = Nω_N / (λ^{(N-2)/2} (N+α)).
pub fn weighted_mass_identity<R: Real>(
    params: &ProblemParams<R>,
    lambda: R,
) -> Result<IdentityReport<R>> {
    if !(lambda > R::zero()) {
        return Err(Error::InvalidParameter(format!(
            "dilation parameter must be positive, got {lambda}"
        )));
    }
    let n = params.n_real();
    let area = unit_sphere_area::<R>(params.n_dim);
    let prof = RadialProfile::new(*params, ProfileKind::ULambda { lambda })?;
    let opt = QuadOptions::default();
    let lhs = area
        * integrate_to_infinity(
            |r: R| r.powf(params.alpha + n - R::one()) * prof.eval(r).powf(params.p_alpha),
            R::zero(),
            &opt,
        )?;
    let rhs = area / (lambda.powf((n - R::of(2.0)).half()) * (n + params.alpha));
    Ok(IdentityReport::new("weighted-mass-of-dilated-solution", lhs, rhs))
}

/// Pairing of the dilation direction with the linearized weight:
/// Nω_N ∫ r^{α+N-1} Z U^{p_α - 1} dr = -Nω_N (N-2)/(C(α) p_α) < 0.
pub fn kernel_pairing_identity<R: Real>(params: &ProblemParams<R>) -> Result<IdentityReport<R>> {
    let n = params.n_real();
    let area = unit_sphere_area::<R>(params.n_dim);
    let z = RadialProfile::new(*params, ProfileKind::Z)?;
    let opt = QuadOptions::default();
    let lhs = area
        * integrate_to_infinity(
            |r: R| {
                r.powf(params.alpha + n - R::one())
                    * z.eval(r)
                    * u_value(params, r).powf(params.p_alpha - R::one())
            },
            R::zero(),
            &opt,
        )?;
    let rhs = -area * (n - R::of(2.0)) / (params.c_alpha * params.p_alpha);
    Ok(IdentityReport::new("kernel-weight-pairing", lhs, rhs))
}

/// Pohozaev balance on the ball of radius 1/ε for the truncated solution
/// u = U - γ, γ = U(1/ε), which solves the γ-shifted equation with zero
/// boundary values:
///
///   -C(α)Nω_N γ^{p+1}/((p+1) ε^{α+N})
///     + ((N-2)/2) γ C(α) Nω_N ∫₀^{1/ε} r^{α+N-1} (u+γ)^p dr
///   = (1/(2ε)) Nω_N R^{N-1} u'(R)²,   R = 1/ε.
///
/// The first term is the boundary flux of the potential, nonzero because
/// the shifted nonlinearity does not vanish at the boundary.
pub fn pohozaev_check<R: Real>(params: &ProblemParams<R>, eps: R) -> Result<IdentityReport<R>> {
    pohozaev_probe(params, eps, R::one())
}

/// Same balance with the solution replaced by factor·u (γ untouched): at
/// factor = 1 this is [`pohozaev_check`]; any other factor is not a solution
/// and the two sides split apart, which makes the check falsifiable.
pub fn pohozaev_probe<R: Real>(
    params: &ProblemParams<R>,
    eps: R,
    factor: R,
) -> Result<IdentityReport<R>> {
    if !(eps > R::zero() && eps < R::one()) {
        return Err(Error::InvalidParameter(format!(
            "truncation parameter must be in (0,1), got {eps}"
        )));
    }
    let n = params.n_real();
    let (c, p, a) = (params.c_alpha, params.p_alpha, params.alpha);
    let area = unit_sphere_area::<R>(params.n_dim);
    let edge = R::one() / eps;
    let gamma_height = u_value(params, edge);
    let opt = QuadOptions::default();
    let volume_term = integrate(
        |r: R| {
            let u = factor * (u_value(params, r) - gamma_height);
            r.powf(a + n - R::one()) * (u + gamma_height).powf(p)
        },
        R::zero(),
        edge,
        &opt,
    )?;
    let boundary_potential =
        -c * area * gamma_height.powf(p + R::one()) / ((p + R::one()) * eps.powf(a + n));
    let lhs = boundary_potential + (n - R::of(2.0)).half() * gamma_height * c * area * volume_term;
    let du = factor * u_derivative(params, edge);
    let rhs = area * edge.powf(n - R::one()) * du * du / (R::of(2.0) * eps);
    Ok(IdentityReport::new("pohozaev-balance", lhs, rhs))
}

/// S(M) = M(M-2) [Γ(M/2)² / (2Γ(M))]^{2/M}, the sharp constant of the
/// unweighted Sobolev inequality in (possibly fractional) dimension M.
pub fn sobolev_s<R: Real>(m: R) -> R {
    m * (m - R::of(2.0))
        * (gamma(m.half()).powi(2) / (R::of(2.0) * gamma(m))).powf(R::of(2.0) / m)
}

/// The sharp constant of the weighted Sobolev inequality
/// ∫|∇f|² ≥ C(α,N) (∫|x|^α |f|^{(2N+2α)/(N-2)})^{(N-2)/(N+α)}:
///
///   C(α,N) = ((α+2)/2)^{(2N-2+α)/(N+α)} · S(M) · (2π^{N/2}/Γ(N/2))^{(2+α)/(N+α)}
///
/// with M = 2(N+α)/(2+α) the fictitious dimension.
pub fn sobolev_constant<R: Real>(params: &ProblemParams<R>) -> R {
    let n = params.n_real();
    let a = params.alpha;
    let two = R::of(2.0);
    let half_area = two * R::of(std::f64::consts::PI).powf(n.half()) / gamma(n.half());
    ((a + two).half()).powf((two * n - two + a) / (n + a))
        * sobolev_s(params.m_dim)
        * half_area.powf((two + a) / (n + a))
}

/// The quotient ∫|∇f|² / (∫|x|^α|f|^{2N+2α over N-2})^{(N-2)/(N+α)} for a
/// sampled radial function: trapezoid sums plus power tails matched at the
/// last node under the generic decay f ~ c·r^{2-N}.
pub fn sobolev_quotient<R: Real>(f: &RadialFunction<R>, params: &ProblemParams<R>) -> Result<R> {
    if f.max_abs() == R::zero() {
        return Err(Error::ZeroFunction);
    }
    let n = params.n_real();
    let a = params.alpha;
    let area = unit_sphere_area::<R>(params.n_dim);
    let crit = (R::of(2.0) * n + R::of(2.0) * a) / (n - R::of(2.0));
    let nodes = f.grid.nodes();
    let r_out = f.grid.r_outer();
    let f_out = *f.values.last().expect("nonempty");

    let df = derivative_values(f);
    let grad_vals: Vec<R> =
        nodes.iter().zip(&df).map(|(&r, &d)| d * d * r.powf(n - R::one())).collect();
    let grad_tail = (n - R::of(2.0)) * f_out * f_out * r_out.powf(n - R::of(2.0));
    let num = area * (trapezoid(&f.grid, &grad_vals) + grad_tail);

    let den_vals: Vec<R> = nodes
        .iter()
        .zip(&f.values)
        .map(|(&r, &v)| r.powf(a + n - R::one()) * v.abs().powf(crit))
        .collect();
    let den_exp = a + n - R::one() - (n - R::of(2.0)) * crit; // = -(N+α+1)
    let den_edge = r_out.powf(a + n - R::one()) * f_out.abs().powf(crit);
    let den_tail = power_tail(r_out, den_edge, den_exp)?;
    let den = area * (trapezoid(&f.grid, &den_vals) + den_tail);
    Ok(num / den.powf((n - R::of(2.0)) / (n + a)))
}

/// The same quotient for the explicit extremal family, evaluated by
/// adaptive quadrature with the analytic derivative — accurate to roughly
/// quadrature tolerance rather than grid resolution. Only the solution
/// profiles are supported; other shapes go through [`sobolev_quotient`].
pub fn sobolev_quotient_profile<R: Real>(profile: &RadialProfile<R>) -> Result<R> {
    let params = profile.params;
    let lambda = match profile.kind {
        ProfileKind::U => R::one(),
        ProfileKind::ULambda { lambda } => lambda,
        _ => {
            return Err(Error::InvalidParameter(
                "analytic quotient path supports only the solution profiles".into(),
            ))
        }
    };
    let n = params.n_real();
    let a = params.alpha;
    let area = unit_sphere_area::<R>(params.n_dim);
    let crit = (R::of(2.0) * n + R::of(2.0) * a) / (n - R::of(2.0));
    let pref = lambda.powf((n - R::of(2.0)).half());
    let opt = QuadOptions::default();
    let num = area
        * integrate_to_infinity(
            |r: R| {
                let d = pref * lambda * u_derivative(&params, lambda * r);
                d * d * r.powf(n - R::one())
            },
            R::zero(),
            &opt,
        )?;
    let den = area
        * integrate_to_infinity(
            |r: R| r.powf(a + n - R::one()) * (pref * u_value(&params, lambda * r)).powf(crit),
            R::zero(),
            &opt,
        )?;
    if den == R::zero() {
        return Err(Error::ZeroFunction);
    }
    Ok(num / den.powf((n - R::of(2.0)) / (n + a)))
}
