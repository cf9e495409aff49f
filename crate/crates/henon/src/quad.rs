//! Quadrature: adaptive Gauss-Kronrod (G7,K15) on finite intervals,
//! semi-infinite integrals by inversion of the tail, and trapezoid sums on
//! radial grids with exact power-law tail corrections.

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::real::Real;

// 15-point Kronrod nodes (positive half, descending) and weights, with the
// embedded 7-point Gauss weights, as used by QUADPACK's dqk15.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and panel budget for the adaptive scheme.
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions<R: Real> {
    pub rel_tol: R,
    pub abs_tol: R,
    pub max_panels: usize,
}

impl<R: Real> Default for QuadOptions<R> {
    fn default() -> Self {
        // 1e-12 relative in f64; degrades gracefully to ~100 ulps in f32
        let rel = R::of(1e-12).max(R::epsilon() * R::of(100.0));
        Self { rel_tol: rel, abs_tol: R::of(1e-14).max(R::min_positive_value()), max_panels: 4000 }
    }
}

/// One (G7, K15) evaluation on [lo, hi]: returns (kronrod, |kronrod - gauss|).
fn gk15<R: Real, F: Fn(R) -> R>(f: &F, lo: R, hi: R) -> (R, R) {
    let half = (hi - lo).half();
    let mid = (lo + hi).half();
    let mut kronrod = R::zero();
    let mut gauss = R::zero();
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let x = R::of(x);
        let contrib = if i == 7 {
            f(mid)
        } else {
            f(mid - half * x) + f(mid + half * x)
        };
        kronrod += R::of(wk) * contrib;
        if i % 2 == 1 {
            gauss += R::of(WG[i / 2]) * contrib;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// ∫_lo^hi f, globally adaptive: the panel with the largest |K15 − G7| gap
/// is bisected until the summed gap meets the tolerance. Global refinement
/// (rather than per-panel tolerance splitting) is what lets integrable
/// endpoint singularities converge: panels hugging the singular point carry
/// geometrically shrinking error mass.
pub fn integrate<R: Real, F: Fn(R) -> R>(f: F, lo: R, hi: R, opt: &QuadOptions<R>) -> Result<R> {
    if lo == hi {
        return Ok(R::zero());
    }
    struct Panel<R> {
        a: R,
        b: R,
        val: R,
        err: R,
        splittable: bool,
    }
    let make = |a: R, b: R| {
        let (val, err) = gk15(&f, a, b);
        let m = (a + b).half();
        Panel { a, b, val, err, splittable: m > a && m < b }
    };
    let mut panels = vec![make(lo, hi)];
    loop {
        let total: R = panels.iter().map(|p| p.val).sum();
        let err: R = panels.iter().map(|p| p.err).sum();
        let tol = opt.abs_tol.max(opt.rel_tol * total.abs());
        // a non-finite partial sum means the integrand blew up (divergent
        // integral or broken callable); no amount of refinement fixes that
        if !total.is_finite() {
            return Err(Error::QuadratureNonConvergence {
                estimate: total.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        if err <= tol {
            return Ok(total);
        }
        // NaN panel errors (a NaN integrand sample) sort as worst so the
        // offending panel is refined first and the failure surfaces
        let key = |p: &Panel<R>| if p.err.is_nan() { R::infinity() } else { p.err };
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .max_by(|(_, p), (_, q)| {
                key(p).partial_cmp(&key(q)).unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|(i, _)| i);
        let (i, exhausted) = match worst {
            Some(i) if panels.len() < opt.max_panels => (i, false),
            _ => (0, true),
        };
        if exhausted {
            return Err(Error::QuadratureNonConvergence {
                estimate: total.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let Panel { a, b, .. } = panels.swap_remove(i);
        let m = (a + b).half();
        panels.push(make(a, m));
        panels.push(make(m, b));
    }
}

/// ∫_lo^∞ f for integrands with an integrable power tail. The range is split
/// at c = max(lo, 1); the far part is mapped onto (0, 1] by r = c/u, under
/// which a tail f ~ r^{-s}, s > 1, becomes the integrable u^{s-2}. Panel
/// nodes never touch u = 0, so 1 < s < 2 is handled by adaptivity.
pub fn integrate_to_infinity<R: Real, F: Fn(R) -> R>(
    f: F,
    lo: R,
    opt: &QuadOptions<R>,
) -> Result<R> {
    debug_assert!(lo >= R::zero());
    let cut = lo.max(R::one());
    let near = if lo < cut { integrate(&f, lo, cut, opt)? } else { R::zero() };
    let far = integrate(|u: R| f(cut / u) * cut / (u * u), R::zero(), R::one(), opt)?;
    Ok(near + far)
}

/// Trapezoid rule over an explicit node set. The nodes start at r₁ > 0 on
/// radial grids; the untouched [0, r₁] sliver is the caller's business
/// (negligible for geometric grids, whose first node is at 10⁻⁶·R).
pub fn trapezoid_nodes<R: Real>(nodes: &[R], values: &[R]) -> R {
    debug_assert_eq!(nodes.len(), values.len());
    let mut acc = R::zero();
    for i in 1..nodes.len() {
        acc += (values[i] + values[i - 1]) * (nodes[i] - nodes[i - 1]).half();
    }
    acc
}

/// Trapezoid rule of grid-aligned integrand values.
pub fn trapezoid<R: Real>(grid: &RadialGrid<R>, values: &[R]) -> R {
    trapezoid_nodes(grid.nodes(), values)
}

/// Exact ∫_R^∞ c·r^p dr for the power tail matched to value v at r = R
/// (c = v·R^{-p}): equals v·R/(-p-1). Requires p < -1 for convergence.
pub fn power_tail<R: Real>(r_outer: R, value_at_outer: R, exponent: R) -> Result<R> {
    if !(exponent < -R::one()) {
        return Err(Error::InvalidParameter(format!(
            "tail exponent must be < -1 for an integrable tail, got {exponent}"
        )));
    }
    Ok(value_at_outer * r_outer / (-exponent - R::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn opt() -> QuadOptions<f64> {
        QuadOptions::default()
    }

    #[test]
    fn polynomials_are_exact() {
        let i = integrate(|x: f64| x * x, 0.0, 1.0, &opt()).unwrap();
        assert_relative_eq!(i, 1.0 / 3.0, max_relative = 1e-15);
        // degree 13 is inside the K15 exactness range on a single panel
        let j = integrate(|x: f64| x.powi(13) - 3.0 * x.powi(5), -1.0, 2.0, &opt()).unwrap();
        let exact = (2.0f64.powi(14) - 1.0) / 14.0 - 3.0 * (2.0f64.powi(6) - 1.0) / 6.0;
        assert_relative_eq!(j, exact, max_relative = 1e-13);
    }

    #[test]
    fn classic_values() {
        let s = integrate(|x: f64| x.sin(), 0.0, PI, &opt()).unwrap();
        assert_relative_eq!(s, 2.0, max_relative = 1e-13);
        let e = integrate(|x: f64| x.exp(), 0.0, 1.0, &opt()).unwrap();
        assert_relative_eq!(e, 1.0f64.exp() - 1.0, max_relative = 1e-14);
    }

    #[test]
    fn endpoint_singularity_via_adaptivity() {
        let i = integrate(|x: f64| x.sqrt().recip(), 0.0, 1.0, &opt()).unwrap();
        assert_relative_eq!(i, 2.0, max_relative = 1e-9);
    }

    #[test]
    fn divergent_integral_is_reported() {
        let r = integrate(|x: f64| 1.0 / x, 0.0, 1.0, &opt());
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn semi_infinite() {
        let i = integrate_to_infinity(|x: f64| 1.0 / (1.0 + x * x), 0.0, &opt()).unwrap();
        assert_relative_eq!(i, PI / 2.0, max_relative = 1e-12);
        let j = integrate_to_infinity(|x: f64| x.powi(-2), 1.0, &opt()).unwrap();
        assert_relative_eq!(j, 1.0, max_relative = 1e-13);
        // lower limit beyond the unit cut
        let k = integrate_to_infinity(|x: f64| x.powi(-3), 5.0, &opt()).unwrap();
        assert_relative_eq!(k, 1.0 / 50.0, max_relative = 1e-12);
    }

    #[test]
    fn slowly_decaying_tail() {
        // s = 3/2: transformed integrand behaves like u^{-1/2} at u = 0
        let i = integrate_to_infinity(|x: f64| x.powf(-1.5), 1.0, &opt()).unwrap();
        assert_relative_eq!(i, 2.0, max_relative = 1e-9);
    }

    #[test]
    fn halving_tolerance_is_consistent() {
        let f = |x: f64| (x * x).sin() + 1.0 / (1.0 + x);
        let coarse = QuadOptions { rel_tol: 1e-8, ..opt() };
        let fine = QuadOptions { rel_tol: 5e-9, ..opt() };
        let a = integrate(f, 0.0, 10.0, &coarse).unwrap();
        let b = integrate(f, 0.0, 10.0, &fine).unwrap();
        assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0));
    }

    #[test]
    fn trapezoid_linear_exact() {
        let grid = RadialGrid::uniform(4.0, 9);
        let vals: Vec<f64> = grid.nodes().iter().map(|&r| 3.0 * r - 1.0).collect();
        let r1 = grid.nodes()[0];
        let exact = 1.5 * (16.0 - r1 * r1) - (4.0 - r1);
        assert_relative_eq!(trapezoid(&grid, &vals), exact, max_relative = 1e-14);
    }

    #[test]
    fn power_tail_matches_quadrature() {
        let tail = power_tail(10.0, 10.0f64.powi(-3), -3.0).unwrap();
        assert_relative_eq!(tail, 0.5 * 10.0f64.powi(-2), max_relative = 1e-15);
        let quad = integrate_to_infinity(|x: f64| x.powi(-3), 10.0, &opt()).unwrap();
        assert_relative_eq!(tail, quad, max_relative = 1e-12);
        assert!(power_tail(10.0, 1.0, -0.5).is_err());
    }
}
