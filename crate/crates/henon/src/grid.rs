//! One-dimensional radial grids and grid-sampled functions.

use crate::error::{Error, Result};
use crate::real::Real;

/// Default ratio between the innermost node and the outer radius of a
/// geometric grid. Resolves both the r^α degeneracy at the origin and slow
/// power-law tails without wasting nodes on either.
pub const GEOMETRIC_INNER_FRACTION: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridScheme {
    Uniform,
    Geometric,
}

/// Strictly increasing nodes in (0, R]. The origin is excluded (functions
/// are cell-centered near r = 0) and the outer radius is always a node.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid<R: Real> {
    nodes: Vec<R>,
    scheme: GridScheme,
}

impl<R: Real> RadialGrid<R> {
    /// n equally spaced nodes h, 2h, ..., nh = R.
    pub fn uniform(r_outer: R, n: usize) -> Self {
        assert!(n >= 2 && r_outer > R::zero());
        let h = r_outer / R::of_usize(n);
        let mut nodes: Vec<R> = (1..=n).map(|i| R::of_usize(i) * h).collect();
        *nodes.last_mut().unwrap() = r_outer;
        Self { nodes, scheme: GridScheme::Uniform }
    }

    /// n nodes in constant ratio spanning [10⁻⁶ R, R].
    pub fn geometric(r_outer: R, n: usize) -> Self {
        Self::geometric_span(R::of(GEOMETRIC_INNER_FRACTION) * r_outer, r_outer, n)
    }

    /// n nodes in constant ratio spanning [r_inner, r_outer].
    pub fn geometric_span(r_inner: R, r_outer: R, n: usize) -> Self {
        assert!(n >= 2 && r_inner > R::zero() && r_outer > r_inner);
        let step = (r_outer / r_inner).ln() / R::of_usize(n - 1);
        let mut nodes: Vec<R> = (0..n)
            .map(|i| r_inner * (R::of_usize(i) * step).exp())
            .collect();
        *nodes.last_mut().unwrap() = r_outer;
        Self { nodes, scheme: GridScheme::Geometric }
    }

    #[inline]
    pub fn nodes(&self) -> &[R] {
        &self.nodes
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn r_outer(&self) -> R {
        *self.nodes.last().unwrap()
    }

    #[inline]
    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    /// Indices of nodes with r in [lo, hi].
    pub fn window(&self, lo: R, hi: R) -> std::ops::Range<usize> {
        let start = self.nodes.partition_point(|&r| r < lo);
        let end = self.nodes.partition_point(|&r| r <= hi);
        start..end
    }
}

/// Known power-law tail of a grid function: f(r) ~ c·r^exponent beyond the
/// outer radius, with c inferred from the outermost sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailDecay<R: Real> {
    pub exponent: R,
}

/// Values of a radial function on a grid, with optional tail metadata used
/// by norms and quadratures to account for the part of ℝ^N beyond the grid.
#[derive(Clone, Debug)]
pub struct RadialFunction<R: Real> {
    pub grid: RadialGrid<R>,
    pub values: Vec<R>,
    pub tail: Option<TailDecay<R>>,
}

impl<R: Real> RadialFunction<R> {
    pub fn from_values(grid: RadialGrid<R>, values: Vec<R>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::InvalidParameter(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.n()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, values, tail: None })
    }

    pub fn with_tail(mut self, exponent: R) -> Self {
        self.tail = Some(TailDecay { exponent });
        self
    }

    /// Applies f pointwise to the samples; drops tail metadata, which the
    /// map generally invalidates.
    pub fn map(&self, f: impl Fn(R) -> R) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
            tail: None,
        }
    }

    pub fn max_abs(&self) -> R {
        self.values.iter().fold(R::zero(), |m, &v| m.max(v.abs()))
    }
}
