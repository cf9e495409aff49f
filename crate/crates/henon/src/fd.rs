//! Finite-difference weights on arbitrary nodes (Fornberg's recursion) and
//! derivative evaluation on radial grids.

use crate::grid::RadialFunction;
use crate::real::Real;

/// Weights w such that f^(order)(x0) ≈ Σ w[i]·f(nodes[i]), exact for
/// polynomials of degree nodes.len()-1. Nodes must be pairwise distinct.
pub fn fd_weights<R: Real>(x0: R, nodes: &[R], order: usize) -> Vec<R> {
    let n = nodes.len();
    assert!(n > order, "need more than `order` nodes");
    let mut w = vec![vec![R::zero(); order + 1]; n];
    w[0][0] = R::one();
    let mut c1 = R::one();
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = R::one();
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    w[i][k] = c1 * (R::of_usize(k) * w[i - 1][k - 1] - c5 * w[i - 1][k]) / c2;
                }
                w[i][0] = -c1 * c5 * w[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                w[j][k] = (c4 * w[j][k] - R::of_usize(k) * w[j][k - 1]) / c3;
            }
            w[j][0] = c4 * w[j][0] / c3;
        }
        c1 = c2;
    }
    w.into_iter().map(|row| row[order]).collect()
}

/// First derivative at every node: three-point stencils, centered in the
/// interior and one-sided at the two ends. Second-order on smooth grids.
pub fn derivative_values<R: Real>(f: &RadialFunction<R>) -> Vec<R> {
    let r = f.grid.nodes();
    let v = &f.values;
    let n = r.len();
    assert!(n >= 3);
    let mut out = vec![R::zero(); n];
    let stencil = |at: usize, lo: usize| -> R {
        let w = fd_weights(r[at], &r[lo..lo + 3], 1);
        w[0] * v[lo] + w[1] * v[lo + 1] + w[2] * v[lo + 2]
    };
    out[0] = stencil(0, 0);
    for i in 1..n - 1 {
        out[i] = stencil(i, i - 1);
    }
    out[n - 1] = stencil(n - 1, n - 3);
    out
}
