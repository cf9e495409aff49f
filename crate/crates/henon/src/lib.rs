//! Numerical toolkit for the spectral and bifurcation structure of the
//! Hénon equation
//!
//! ```text
//! -Δu = (N+α)(N-2) |x|^α u^{(N+2+2α)/(N-2)}   on ℝ^N,  N ≥ 3,  α ≥ 0,
//! ```
//!
//! linearized at its explicit radial solution. The crate provides
//!
//! * derived constants, spherical-harmonic bookkeeping, closed-form
//!   eigenvalues, Morse index and kernel arithmetic ([`params`]),
//! * the closed-form radial profiles and the explicit nonradial family
//!   ([`profiles`]),
//! * finite-volume discretizations of the linearized eigenproblems in
//!   three equivalent forms, with certified eigenvalue brackets
//!   ([`spectral`]),
//! * bifurcation-point location and branch labelling ([`bifurcation`]),
//! * quadrature, norms, residuals and integral-identity checks backing the
//!   above ([`quad`], [`norms`], [`residual`], [`identities`]),
//! * a radial shooting solver for the unit-ball Dirichlet problem
//!   ([`shooting`]).
//!
//! Everything numeric is generic over the scalar through [`real::Real`]
//! (implemented for `f32` and `f64`); the crate root re-exports `f64`
//! aliases for the common entry points.

// negated comparisons are deliberate so NaN fails closed; stencil and
// assembly loops index several arrays at related offsets
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bifurcation;
pub mod error;
pub mod real;

pub mod params;

pub mod fd;
pub mod gamma;
pub mod grid;
pub mod identities;
pub mod norms;
pub mod profiles;
pub mod quad;
pub mod residual;
pub mod shooting;
pub mod spectral;
pub mod tridiag;

pub use bifurcation::{
    bifurcation_diagram, branch_labels, find_alpha_k, morse_jump_table, BifurcationPoint,
    DiagramRow, MorseJump, MorseTable,
};
pub use error::{Error, Result};
pub use real::Real;

pub use grid::{GridScheme, RadialFunction, RadialGrid, TailDecay};
pub use identities::{sobolev_constant, sobolev_quotient, IdentityReport};
pub use norms::{decay_fit, dirichlet_seminorm, weighted_sup_norm};
pub use params::{harmonic_multiplicity, ModeContribution, MorseReport, ProblemParams};
pub use profiles::{BiRadialPoint, ProfileKind, RadialProfile};
pub use residual::{residual_biradial, residual_radial, RadialOperator};
pub use shooting::{compose_radial, shoot_bvp, solve_unit_ball, ShootingResult, UnitBallReport};
pub use spectral::{
    eigen_slope, first_eigen_sign_check, radial_nondegeneracy_check, sign_changes,
    solve_transformed, EigenPair, SlopeReport, SpectralForm, SpectralProblem,
};

/// `f64` aliases for the most-used generic types.
pub type Params = ProblemParams<f64>;
/// See [`RadialGrid`].
pub type Grid = RadialGrid<f64>;
/// See [`RadialProfile`].
pub type Profile = RadialProfile<f64>;
/// See [`RadialFunction`].
pub type RadialFn = RadialFunction<f64>;
