//! Problem constants and the exact spectral arithmetic attached to them:
//! derived exponents, spherical-harmonic eigenvalues and multiplicities,
//! closed-form first eigenvalues, Morse index, kernel dimension.

use crate::error::{Error, Result};
use crate::real::Real;

/// Tolerance for deciding that a floating-point `alpha` is one of the
/// degenerate values 2(k-1). CLI input arrives as decimal text, so exact
/// integer tests would misclassify values like `2.0000000001`.
pub const ALPHA_EVEN_TOL: f64 = 1e-9;

/// Parameters of the equation -Δu = C(α)|x|^α u^{p_α} on ℝ^N together with
/// the constants derived from (N, α).
///
/// `c_alpha = (N+α)(N-2)` normalizes the explicit solution to height 1 at the
/// origin, `p_alpha = (N+2+2α)/(N-2)` is the critical growth exponent, and
/// `m_dim = 2(N+α)/(2+α)` is the (generally fractional) dimension in which
/// the substitution s = r^{(2+α)/2} turns the radial operator into a plain
/// Laplacian. All three are pure functions of (N, α): rebuilding the struct
/// from the same inputs is bit-identical.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemParams<R: Real> {
    pub n_dim: u32,
    pub alpha: R,
    pub c_alpha: R,
    pub p_alpha: R,
    pub m_dim: R,
}

impl<R: Real> ProblemParams<R> {
    pub fn new(n_dim: u32, alpha: R) -> Result<Self> {
        if n_dim < 3 {
            return Err(Error::DimensionTooSmall(n_dim));
        }
        if !(alpha >= R::zero()) {
            return Err(Error::NegativeAlpha(alpha.to_f64().unwrap_or(f64::NAN)));
        }
        let n = R::of_u32(n_dim);
        let two = R::of(2.0);
        Ok(Self {
            n_dim,
            alpha,
            c_alpha: (n + alpha) * (n - two),
            p_alpha: (n + two + two * alpha) / (n - two),
            m_dim: two * (n + alpha) / (two + alpha),
        })
    }

    #[inline]
    pub fn n_real(&self) -> R {
        R::of_u32(self.n_dim)
    }

    /// Same dimension, different exponent.
    pub fn with_alpha(&self, alpha: R) -> Result<Self> {
        Self::new(self.n_dim, alpha)
    }

    /// Eigenvalue of the Laplace-Beltrami operator on the unit sphere
    /// S^{N-1} for spherical harmonics of degree k: μ_k = k(N-2+k).
    pub fn mu(&self, k: u32) -> R {
        let kr = R::of_u32(k);
        kr * (self.n_real() - R::of(2.0) + kr)
    }

    /// Dimension of the space of degree-k spherical harmonics on S^{N-1}.
    /// See [`harmonic_multiplicity`].
    pub fn harmonic_multiplicity(&self, k: u32) -> Result<u64> {
        harmonic_multiplicity(self.n_dim, k)
    }

    /// First eigenvalue of the linearized operator restricted to the mode-k
    /// angular component, in closed form:
    ///
    /// Λ_{1,k} = (N-2+2k)(N+α+2k) / ((N+2+2α)(N+α)).
    ///
    /// Λ_{1,k} < 1 exactly when k < (α+2)/2, with equality at k = (α+2)/2.
    pub fn lambda_first_closed(&self, k: u32) -> R {
        let n = self.n_real();
        let a = self.alpha;
        let two = R::of(2.0);
        let twok = two * R::of_u32(k);
        (n - two + twok) * (n + a + twok) / ((n + two + two * a) * (n + a))
    }

    /// Morse index of the radial solution: the number of independent
    /// directions along which the second variation is negative, summed with
    /// angular multiplicities. Mode k contributes iff Λ_{1,k} < 1, which is
    /// equivalent to k < (α+2)/2; the index is therefore left-continuous in
    /// α and jumps exactly when α crosses an even integer from below.
    pub fn morse_index(&self) -> Result<MorseReport<R>> {
        let threshold = (self.alpha + R::of(2.0)) / R::of(2.0);
        let mut per_mode = Vec::new();
        let mut total: u64 = 0;
        let mut k = 0u32;
        loop {
            let contributes = R::of_u32(k) < threshold;
            let multiplicity = self.harmonic_multiplicity(k)?;
            per_mode.push(ModeContribution {
                k,
                lambda_first: self.lambda_first_closed(k),
                multiplicity,
                contributes,
            });
            if contributes {
                total += multiplicity;
                k += 1;
            } else {
                // one non-contributing row for context, then stop
                break;
            }
        }
        Ok(MorseReport { params: *self, per_mode, total })
    }

    /// Dimension of the kernel of the linearized operator: 1 (the dilation
    /// direction, always present) plus the dimension of the degree-k
    /// harmonics when α equals the degenerate value 2(k-1), k ≥ 1.
    /// Evenness is decided within [`ALPHA_EVEN_TOL`].
    pub fn kernel_dimension(&self) -> Result<u64> {
        if let Some(k) = self.degenerate_mode() {
            Ok(1 + self.harmonic_multiplicity(k)?)
        } else {
            Ok(1)
        }
    }

    /// The mode index k ≥ 1 with α = 2(k-1), if α sits at a degenerate value.
    pub fn degenerate_mode(&self) -> Option<u32> {
        let a = self.alpha.to_f64()?;
        let k = (a / 2.0).round();
        if k >= 0.0 && (a - 2.0 * k).abs() <= ALPHA_EVEN_TOL {
            Some(k as u32 + 1)
        } else {
            None
        }
    }

    /// Limit of the first eigenvalue of the 1/r²-weighted linearized problem
    /// as the truncation radius goes to infinity:
    ///
    /// Λ₁(α) = -(2N+α-2)(α+2)/4.
    pub fn lambda_limit(&self) -> R {
        let n = self.n_real();
        let a = self.alpha;
        let two = R::of(2.0);
        -(two * n + a - two) * (a + two) / R::of(4.0)
    }
}

/// One row of a [`MorseReport`].
#[derive(Clone, Copy, Debug)]
pub struct ModeContribution<R: Real> {
    pub k: u32,
    pub lambda_first: R,
    pub multiplicity: u64,
    pub contributes: bool,
}

/// Morse index with its per-mode breakdown. The listed modes are all
/// contributing ones plus the first non-contributing one.
#[derive(Clone, Debug)]
pub struct MorseReport<R: Real> {
    pub params: ProblemParams<R>,
    pub per_mode: Vec<ModeContribution<R>>,
    pub total: u64,
}

/// Dimension of the space of degree-k spherical harmonics in N variables,
///
///   (N+2k-2) (N+k-3)! / ((N-2)! k!)  =  (N+2k-2) C(N+k-3, k) / (N-2),
///
/// computed as an exact integer by an incremental binomial product (no raw
/// factorials, no floats). Supported for N + k ≤ 60; beyond that the result
/// may not fit the return type and a range error is raised. N = 2 is allowed
/// with the usual convention dim = 2 for k ≥ 1 (sin/cos pairs) and 1 for
/// k = 0, which closes the Pascal-type recurrence
/// dim(N,k) = dim(N-1,k) + dim(N,k-1).
pub fn harmonic_multiplicity(n_dim: u32, k: u32) -> Result<u64> {
    if n_dim < 2 {
        return Err(Error::DimensionTooSmall(n_dim));
    }
    if n_dim + k > 60 {
        return Err(Error::MultiplicityRange(n_dim + k));
    }
    if k == 0 {
        return Ok(1);
    }
    if n_dim == 2 {
        return Ok(2);
    }
    // C(N+k-3, k) by stepwise multiply/divide; exact at every step because
    // each prefix is itself a binomial coefficient.
    let mut binom: u128 = 1;
    for j in 1..=u128::from(k) {
        binom = binom * (u128::from(n_dim) - 3 + j) / j;
    }
    let numer = binom * u128::from(n_dim + 2 * k - 2);
    let denom = u128::from(n_dim - 2);
    debug_assert_eq!(numer % denom, 0, "multiplicity must be an integer");
    u64::try_from(numer / denom).map_err(|_| Error::MultiplicityRange(n_dim + k))
}

/// The k-th degenerate exponent, α_k = 2(k-1) for k ≥ 1: the value of α at
/// which the mode-k eigenvalue crosses 1 and the limit problem satisfies
/// (2N+α_k-2)(α_k+2)/4 = μ_k (an algebraic identity in N, asserted here in
/// exact integer arithmetic).
pub fn alpha_k_exact<R: Real>(k: u32) -> R {
    assert!(k >= 1, "degenerate exponents are indexed from k = 1");
    debug_assert!((3u64..=12).all(|n| {
        let a = 2 * (u64::from(k) - 1);
        (2 * n + a - 2) * (a + 2) / 4 == u64::from(k) * (n - 2 + u64::from(k))
    }));
    R::of(2.0) * (R::of_u32(k) - R::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = ProblemParams<f64>;

    #[test]
    fn derived_constants() {
        let p = P::new(3, 2.0).unwrap();
        assert_eq!(p.c_alpha, 5.0);
        assert_eq!(p.p_alpha, 9.0);
        assert_eq!(p.m_dim, 2.5);
        assert!(p.p_alpha > 1.0 && p.m_dim > 2.0);

        let p = P::new(4, 0.0).unwrap();
        assert_eq!(p.c_alpha, 8.0);
        assert_eq!(p.p_alpha, 3.0);
        assert_eq!(p.m_dim, 4.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(P::new(2, 1.0), Err(Error::DimensionTooSmall(2))));
        assert!(matches!(P::new(3, -0.5), Err(Error::NegativeAlpha(_))));
        assert!(matches!(P::new(3, f64::NAN), Err(Error::NegativeAlpha(_))));
    }

    #[test]
    fn recomputation_is_bit_identical() {
        let a = P::new(5, 1.7).unwrap();
        let b = P::new(5, 1.7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sphere_eigenvalues() {
        let p3 = P::new(3, 0.0).unwrap();
        assert_eq!(p3.mu(0), 0.0);
        assert_eq!(p3.mu(2), 6.0);
        let p4 = P::new(4, 0.0).unwrap();
        assert_eq!(p4.mu(1), 3.0);
    }

    #[test]
    fn multiplicities() {
        // dimension 3: 2k+1
        assert_eq!(harmonic_multiplicity(3, 2).unwrap(), 5);
        for k in 0..=12 {
            assert_eq!(harmonic_multiplicity(3, k).unwrap(), u64::from(2 * k + 1));
        }
        // constants are one-dimensional in every N
        for n in 3..=10 {
            assert_eq!(harmonic_multiplicity(n, 0).unwrap(), 1);
        }
        // independent oracle for (N=4, k=2): count degree-2 harmonic
        // polynomials in 4 variables. Quadratic monomials x_i x_j span a
        // 10-dimensional space; the Laplacian maps it onto constants
        // (1-dimensional), leaving 9 harmonics.
        assert_eq!(harmonic_multiplicity(4, 2).unwrap(), 9);
        // dimension 4: (k+1)^2
        for k in 0..=12 {
            assert_eq!(harmonic_multiplicity(4, k).unwrap(), u64::from((k + 1) * (k + 1)));
        }
        assert!(matches!(
            harmonic_multiplicity(10, 51),
            Err(Error::MultiplicityRange(61))
        ));
    }

    #[test]
    fn pascal_recurrence() {
        for n in 3..=10u32 {
            for k in 1..=12u32 {
                let lhs = harmonic_multiplicity(n, k).unwrap();
                let rhs = harmonic_multiplicity(n - 1, k).unwrap()
                    + harmonic_multiplicity(n, k - 1).unwrap();
                assert_eq!(lhs, rhs, "N={n} k={k}");
            }
        }
    }

    #[test]
    fn closed_first_eigenvalues() {
        let p = P::new(3, 2.0).unwrap();
        assert_eq!(p.lambda_first_closed(2), 1.0);
        assert!((p.lambda_first_closed(1) - 7.0 / 15.0).abs() < 1e-15);
        let p = P::new(3, 0.0).unwrap();
        assert_eq!(p.lambda_first_closed(1), 1.0); // translation mode
    }

    #[test]
    fn lambda_first_threshold() {
        // Λ_{1,k} < 1 iff k < (α+2)/2, equality at the boundary.
        for &(n, a) in &[(3u32, 0.0), (3, 1.0), (4, 2.0), (5, 3.5), (6, 0.7)] {
            let p = P::new(n, a).unwrap();
            for k in 0..8u32 {
                let lam = p.lambda_first_closed(k);
                let below = f64::from(k) < (a + 2.0) / 2.0;
                assert_eq!(lam < 1.0, below, "N={n} a={a} k={k} lam={lam}");
                if f64::from(k) == (a + 2.0) / 2.0 {
                    assert_eq!(lam, 1.0);
                }
            }
        }
    }

    #[test]
    fn lambda_first_increasing_in_k() {
        for &(n, a) in &[(3u32, 0.0), (4, 1.3), (7, 2.0)] {
            let p = P::new(n, a).unwrap();
            for k in 0..10u32 {
                assert!(p.lambda_first_closed(k + 1) > p.lambda_first_closed(k));
            }
        }
    }

    #[test]
    fn morse_totals() {
        assert_eq!(P::new(3, 0.0).unwrap().morse_index().unwrap().total, 1);
        assert_eq!(P::new(3, 1.0).unwrap().morse_index().unwrap().total, 4); // 1 + 3
        assert_eq!(P::new(3, 3.0).unwrap().morse_index().unwrap().total, 9); // 1 + 3 + 5
    }

    #[test]
    fn morse_report_is_consistent() {
        let rep = P::new(4, 2.4).unwrap().morse_index().unwrap();
        let sum: u64 = rep
            .per_mode
            .iter()
            .filter(|m| m.contributes)
            .map(|m| m.multiplicity)
            .sum();
        assert_eq!(sum, rep.total);
        for m in &rep.per_mode {
            assert_eq!(m.contributes, m.lambda_first < 1.0);
            assert_eq!(m.contributes, f64::from(m.k) < (2.4 + 2.0) / 2.0);
        }
        // trailing context row does not contribute
        assert!(!rep.per_mode.last().unwrap().contributes);
    }

    #[test]
    fn morse_jump_at_even_alpha() {
        for n in 3..=8u32 {
            for k in 1..=6u32 {
                let at = 2.0 * (f64::from(k) - 1.0);
                let lo = P::new(n, (at - 1e-6).max(0.0)).unwrap();
                let hi = P::new(n, at + 1e-6).unwrap();
                let jump = hi.morse_index().unwrap().total - lo.morse_index().unwrap().total;
                if at > 0.0 {
                    assert_eq!(jump, harmonic_multiplicity(n, k).unwrap(), "N={n} k={k}");
                }
                // left-continuity: the value AT the even alpha equals the
                // value just below it
                let at_exact = P::new(n, at).unwrap();
                assert_eq!(at_exact.morse_index().unwrap().total, lo.morse_index().unwrap().total);
            }
        }
    }

    #[test]
    fn kernel_dimensions() {
        assert_eq!(P::new(5, 1.3).unwrap().kernel_dimension().unwrap(), 1);
        assert_eq!(P::new(3, 0.0).unwrap().kernel_dimension().unwrap(), 4); // 1 + 3 translations
        assert_eq!(P::new(4, 2.0).unwrap().kernel_dimension().unwrap(), 10); // 1 + 9
        // tolerance band
        assert_eq!(P::new(4, 2.0 + 0.5e-9).unwrap().kernel_dimension().unwrap(), 10);
        assert_eq!(P::new(4, 2.0 + 1e-7).unwrap().kernel_dimension().unwrap(), 1);
    }

    #[test]
    fn limit_eigenvalues() {
        assert_eq!(P::new(3, 2.0).unwrap().lambda_limit(), -6.0);
        assert_eq!(P::new(3, 0.0).unwrap().lambda_limit(), -2.0);
        assert_eq!(P::new(4, 2.0).unwrap().lambda_limit(), -8.0);
    }

    #[test]
    fn degenerate_exponents() {
        assert_eq!(alpha_k_exact::<f64>(1), 0.0);
        assert_eq!(alpha_k_exact::<f64>(2), 2.0);
        assert_eq!(alpha_k_exact::<f64>(4), 6.0);
        // limit eigenvalue meets -μ_k exactly at α = 2(k-1)
        for n in 3..=8u32 {
            for k in 1..=6u32 {
                let p = P::new(n, alpha_k_exact(k)).unwrap();
                assert_eq!(p.lambda_limit() + p.mu(k), 0.0, "N={n} k={k}");
            }
        }
    }

    #[test]
    fn works_in_f32() {
        let p = ProblemParams::<f32>::new(3, 2.0f32).unwrap();
        assert_eq!(p.c_alpha, 5.0f32);
        assert_eq!(p.lambda_first_closed(2), 1.0f32);
        assert_eq!(p.lambda_limit(), -6.0f32);
    }
}
