//! Symmetric tridiagonal pencils (A, B) with B diagonal positive: Sturm
//! counts, Gershgorin bounds, bisection eigenvalues, inverse-iteration
//! eigenvectors.
//!
//! The discretized problems live here as pencils A z = λ B z rather than as
//! the congruent standard form B^{-1/2}AB^{-1/2}, because the geometric
//! grids carry weights spanning ~30 decades: forming the standard matrix
//! squares that spread and overflows, while LDL pivot counting on A - λB is
//! scale-safe.

use crate::error::{Error, Result};
use crate::real::Real;

/// Symmetric tridiagonal matrix: `diag` of length n, `off` of length n-1.
#[derive(Clone, Debug)]
pub struct SymTridiag<R: Real> {
    pub diag: Vec<R>,
    pub off: Vec<R>,
}

impl<R: Real> SymTridiag<R> {
    pub fn new(diag: Vec<R>, off: Vec<R>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal must have length n-1");
        Self { diag, off }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }
}

/// Generalized eigenproblem A z = λ B z with A symmetric tridiagonal and
/// B diagonal, positive. All eigenvalues are real and simple when the
/// off-diagonals are nonzero (a Jacobi pencil), which is the discretized
/// situation throughout.
#[derive(Clone, Debug)]
pub struct Pencil<R: Real> {
    pub a: SymTridiag<R>,
    pub b: Vec<R>,
}

impl<R: Real> Pencil<R> {
    pub fn new(a: SymTridiag<R>, b: Vec<R>) -> Result<Self> {
        if b.len() != a.n() {
            return Err(Error::InvalidParameter(format!(
                "B has {} entries for an {}-dimensional A",
                b.len(),
                a.n()
            )));
        }
        if let Some(v) = b.iter().find(|v| !(**v > R::zero()) || !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "B must be positive and finite, found {v}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// Number of pencil eigenvalues strictly below x: the count of negative
    /// pivots in the LDLᵀ sweep of A - xB (Sylvester inertia). Zero pivots
    /// are nudged to -tiny; the ±inf intermediates that a tiny pivot causes
    /// are harmless under IEEE arithmetic (the standard Sturm safeguard).
    pub fn count_below(&self, x: R) -> usize {
        let mut count = 0usize;
        let mut d_prev = R::one();
        for i in 0..self.n() {
            let mut d = self.a.diag[i] - x * self.b[i];
            if i > 0 {
                let e = self.a.off[i - 1];
                d -= e * e / d_prev;
            }
            if d == R::zero() {
                d = -R::min_positive_value();
            }
            if d < R::zero() {
                count += 1;
            }
            d_prev = d;
        }
        count
    }

    /// Closed interval certain to contain every eigenvalue: Gershgorin rows
    /// of B⁻¹A, center a_ii/b_i, radius (|off_{i-1}| + |off_i|)/b_i.
    pub fn gershgorin(&self) -> (R, R) {
        let n = self.n();
        let mut lo = R::infinity();
        let mut hi = R::neg_infinity();
        for i in 0..n {
            let mut radius = R::zero();
            if i > 0 {
                radius += self.a.off[i - 1].abs();
            }
            if i + 1 < n {
                radius += self.a.off[i].abs();
            }
            let center = self.a.diag[i];
            lo = lo.min((center - radius) / self.b[i]);
            hi = hi.max((center + radius) / self.b[i]);
        }
        (lo, hi)
    }

    /// The j-th smallest eigenvalue (0-based) by Sturm bisection, to
    /// absolute tolerance `atol` plus a few ulps relative.
    pub fn eigenvalue(&self, j: usize, atol: R) -> Result<R> {
        if j >= self.n() {
            return Err(Error::InvalidParameter(format!(
                "eigenvalue index {j} out of range for dimension {}",
                self.n()
            )));
        }
        let (glo, ghi) = self.gershgorin();
        let margin = (ghi.abs().max(glo.abs()) + R::one()) * R::of(1e-9);
        let mut lo = glo;
        let mut hi = ghi + margin;
        debug_assert!(self.count_below(lo) == 0);
        if self.count_below(hi) < j + 1 {
            return Err(Error::BisectionStalled(0));
        }
        for _ in 0..600 {
            let mid = (lo + hi).half();
            if hi - lo <= atol + R::epsilon() * R::of(8.0) * mid.abs() {
                return Ok(mid);
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::BisectionStalled(600))
    }

    /// The `count` smallest eigenvalues, ascending.
    pub fn eigenvalues(&self, count: usize, atol: R) -> Result<Vec<R>> {
        (0..count).map(|j| self.eigenvalue(j, atol)).collect()
    }

    /// Eigenvector for a converged eigenvalue via inverse iteration on the
    /// slightly shifted pencil: x ← (A - σB)⁻¹ B x, three rounds from a
    /// constant start, ∞-normalized. The relative shift keeps A - σB
    /// invertible at working precision while staying inside the eigenvalue's
    /// bisection interval.
    pub fn eigenvector(&self, value: R) -> Result<Vec<R>> {
        let n = self.n();
        let sigma = value * (R::one() + R::of(1e-13)) + R::of(1e-14);
        let diag: Vec<R> = (0..n).map(|i| self.a.diag[i] - sigma * self.b[i]).collect();
        let lu = LuTridiag::factor(&diag, &self.a.off);
        let mut x = vec![R::one(); n];
        for _ in 0..3 {
            let rhs: Vec<R> = x.iter().zip(&self.b).map(|(v, b)| *v * *b).collect();
            x = lu.solve(&rhs);
            let norm = x.iter().fold(R::zero(), |m, v| m.max(v.abs()));
            if !(norm > R::zero()) || !norm.is_finite() {
                return Err(Error::InverseIterationFailed);
            }
            for v in &mut x {
                *v /= norm;
            }
        }
        Ok(x)
    }
}

/// LU factorization of a (here symmetric) tridiagonal matrix with partial
/// pivoting; row swaps introduce a second superdiagonal. The layout follows
/// the classic banded-LU scheme: multipliers in `dl`, U's three bands in
/// `d`, `du`, `du2`, swap flags in `swapped`.
struct LuTridiag<R: Real> {
    dl: Vec<R>,
    d: Vec<R>,
    du: Vec<R>,
    du2: Vec<R>,
    swapped: Vec<bool>,
}

impl<R: Real> LuTridiag<R> {
    fn factor(diag: &[R], off: &[R]) -> Self {
        let n = diag.len();
        let mut dl = off.to_vec();
        let mut d = diag.to_vec();
        let mut du = off.to_vec();
        let mut du2 = vec![R::zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        // scale-aware substitute for exactly singular pivots, so inverse
        // iteration at a converged eigenvalue solves a nearby nonsingular
        // system instead of dividing by zero
        let scale = diag.iter().chain(off.iter()).fold(R::zero(), |m, v| m.max(v.abs()));
        let tiny = (scale + R::one()) * R::epsilon() * R::of(1e-3);
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == R::zero() {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
                if i + 2 < n {
                    du2[i] = R::zero();
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if let Some(last) = d.last_mut() {
            if *last == R::zero() {
                *last = tiny;
            }
        }
        Self { dl, d, du, du2, swapped }
    }

    fn solve(&self, rhs: &[R]) -> Vec<R> {
        let n = self.d.len();
        let mut x = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                x.swap(i, i + 1);
            }
            let update = x[i];
            x[i + 1] -= self.dl[i] * update;
        }
        x[n - 1] /= self.d[n - 1];
        if n > 1 {
            x[n - 2] = (x[n - 2] - self.du[n - 2] * x[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.du[i] * x[i + 1] - self.du2[i] * x[i + 2]) / self.d[i];
        }
        x
    }
}
