//! The eight subcommands. Each builds a [`Report`]; sweeps fan out over
//! rayon and are reassembled in deterministic order.

use clap::Args;
use rayon::prelude::*;
use serde_json::{json, Value};

use henon::identities::{
    kernel_pairing_identity, pohozaev_check, sobolev_quotient_profile, weighted_mass_identity,
};
use henon::profiles::{check_harmonic_gradient_condition, eval_nonradial_explicit};
use henon::residual::residual_radial_general;
use henon::{
    bifurcation_diagram, compose_radial, eigen_slope, find_alpha_k, harmonic_multiplicity,
    morse_jump_table, residual_biradial, shoot_bvp, sobolev_constant, solve_unit_ball,
    BiRadialPoint, Params, Profile, ProfileKind, RadialOperator, SpectralForm, SpectralProblem,
};

use crate::report::{Check, Report};
use crate::Failure;

/// First eigenvalue of the mode-k linearized eigenproblem on truncated
/// balls, against the closed form.
#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Space dimension N >= 3
    #[arg(long)]
    pub n: u32,
    /// Weight exponent alpha >= 0
    #[arg(long)]
    pub alpha: f64,
    /// Mode indices, comma separated
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub k: Vec<u32>,
    /// Truncation radii R, comma separated
    #[arg(long, value_delimiter = ',', default_value = "200")]
    pub radius: Vec<f64>,
    /// Truncation parameters eps = 1/R (alternative to --radius)
    #[arg(long, value_delimiter = ',', conflicts_with = "radius")]
    pub eps: Option<Vec<f64>>,
    /// Radial grid nodes
    #[arg(long, default_value_t = 8000)]
    pub nodes: usize,
}

pub fn spectrum(args: &SpectrumArgs, tol: f64) -> Result<Report, Failure> {
    let params = Params::new(args.n, args.alpha)?;
    let radii = resolve_radii(&args.radius, args.eps.as_deref())?;
    let jobs: Vec<(u32, f64)> =
        args.k.iter().flat_map(|&k| radii.iter().map(move |&r| (k, r))).collect();
    let rows: Vec<(Value, Check)> = jobs
        .par_iter()
        .map(|&(k, r)| -> henon::Result<(Value, Check)> {
            let computed = SpectralProblem::new(params, SpectralForm::Lambda { k }, r, args.nodes)?
                .solve(1)?[0]
                .value;
            let closed = params.lambda_first_closed(k);
            let check = Check::rel(format!("mode-{k} eigenvalue vs closed form at R={r}"), computed, closed, tol);
            let row = json!({
                "n": args.n, "alpha": args.alpha, "k": k, "radius": r, "nodes": args.nodes,
                "lambda_1": computed, "closed_form": closed, "rel_error": check.rel_error,
            });
            Ok((row, check))
        })
        .collect::<henon::Result<_>>()?;
    let (results, checks) = rows.into_iter().unzip();
    Ok(Report {
        command: "spectrum",
        config: json!({
            "command": "spectrum", "n": args.n, "alpha": args.alpha, "k": args.k,
            "radius": radii, "nodes": args.nodes, "tol": tol,
        }),
        columns: vec!["n", "alpha", "k", "radius", "nodes", "lambda_1", "closed_form", "rel_error"],
        results,
        checks,
    })
}

/// Morse index and kernel dimension along an alpha grid, with each index
/// increase checked against the multiplicities of the entering modes.
#[derive(Args, Debug)]
pub struct MorseArgs {
    /// Space dimension N >= 3
    #[arg(long)]
    pub n: u32,
    /// Single value "A" or range "MIN,MAX,STEPS" (STEPS grid points)
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
}

pub fn morse(args: &MorseArgs) -> Result<Report, Failure> {
    let grid = alpha_grid(&args.alpha)?;
    let mut results = Vec::with_capacity(grid.len());
    for &a in &grid {
        let p = Params::new(args.n, a)?;
        results.push(json!({
            "alpha": a,
            "morse_index": p.morse_index()?.total,
            "kernel_dimension": p.kernel_dimension()?,
        }));
    }
    let mut checks = Vec::new();
    if grid.len() >= 2 {
        let table = morse_jump_table(&Params::new(args.n, grid[0])?, &grid)?;
        // each interval where the index moved: measured difference vs the
        // multiplicities attributed to the even values crossed
        for i in 0..grid.len() - 1 {
            let diff = table.morse[i + 1] - table.morse[i];
            if diff == 0 {
                continue;
            }
            let attributed: u64 = table
                .jumps
                .iter()
                .filter(|j| grid[i] <= j.location && j.location < grid[i + 1])
                .map(|j| j.size)
                .sum();
            checks.push(Check::rel(
                format!("Morse increase over [{}, {}) vs entering multiplicities", grid[i], grid[i + 1]),
                diff as f64,
                attributed as f64,
                0.0,
            ));
        }
    }
    Ok(Report {
        command: "morse",
        config: json!({"command": "morse", "n": args.n, "alpha": grid}),
        columns: vec!["alpha", "morse_index", "kernel_dimension"],
        results,
        checks,
    })
}

/// Locate the bifurcation values alpha_k on truncated balls and compare
/// them with the exact 2(k-1).
#[derive(Args, Debug)]
pub struct BifurcateArgs {
    /// Space dimension N >= 3
    #[arg(long)]
    pub n: u32,
    /// Mode indices k >= 1, comma separated
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub k: Vec<u32>,
    /// Truncation radii R, comma separated
    #[arg(long, value_delimiter = ',', default_value = "200")]
    pub radius: Vec<f64>,
    /// Truncation parameters eps = 1/R (alternative to --radius)
    #[arg(long, value_delimiter = ',', conflicts_with = "radius")]
    pub eps: Option<Vec<f64>>,
    /// Radial grid nodes
    #[arg(long, default_value_t = 8000)]
    pub nodes: usize,
    /// Initial root bracket "LO,HI", expanded as needed (single k only)
    #[arg(long, value_delimiter = ',')]
    pub bracket: Option<Vec<f64>>,
}

pub fn bifurcate(args: &BifurcateArgs, tol: f64) -> Result<Report, Failure> {
    let base = Params::new(args.n, 0.0)?;
    let radii = resolve_radii(&args.radius, args.eps.as_deref())?;
    let bracket = match &args.bracket {
        Some(b) if b.len() != 2 => {
            return Err(Failure::Validation(format!(
                "--bracket takes LO,HI; got {} values",
                b.len()
            )))
        }
        Some(b) if args.k.len() > 1 => {
            return Err(Failure::Validation(format!(
                "--bracket {b:?} applies to a single mode; got {} modes",
                args.k.len()
            )))
        }
        Some(b) => Some((b[0], b[1])),
        None => None,
    };
    let jobs: Vec<(u32, f64)> =
        args.k.iter().flat_map(|&k| radii.iter().map(move |&r| (k, r))).collect();
    let rows: Vec<(Value, Check)> = jobs
        .par_iter()
        .map(|&(k, r)| -> henon::Result<(Value, Check)> {
            let point = find_alpha_k(&base, k, 1.0 / r, bracket, args.nodes)?;
            let exact = 2.0 * (f64::from(k) - 1.0);
            let name = format!("alpha_{k} vs exact at R={r}");
            let check = if exact > 0.0 {
                Check::rel(name, point.alpha_root, exact, tol)
            } else {
                // k = 1 bifurcates at 0; the comparison is absolute there
                Check::bound(name, point.alpha_root, exact, point.alpha_root.abs() <= tol)
            };
            let row = json!({
                "n": args.n, "k": k, "radius": r, "alpha_root": point.alpha_root,
                "exact": exact, "residual": point.residual, "limit_gap": point.limit_gap,
            });
            Ok((row, check))
        })
        .collect::<henon::Result<_>>()?;
    let (results, checks) = rows.into_iter().unzip();
    Ok(Report {
        command: "bifurcate",
        config: json!({
            "command": "bifurcate", "n": args.n, "k": args.k, "radius": radii,
            "nodes": args.nodes, "bracket": bracket.map(|(lo, hi)| vec![lo, hi]), "tol": tol,
        }),
        columns: vec!["n", "k", "radius", "alpha_root", "exact", "residual", "limit_gap"],
        results,
        checks,
    })
}

/// Bifurcation diagram rows (k, R, alpha_root, limit_gap, branch labels)
/// for k = 2..kmax over a list of radii.
#[derive(Args, Debug)]
pub struct DiagramArgs {
    /// Space dimension N >= 3
    #[arg(long)]
    pub n: u32,
    /// Largest mode index (rows cover k = 2..=kmax)
    #[arg(long)]
    pub kmax: u32,
    /// Truncation radii R, comma separated
    #[arg(long, value_delimiter = ',', default_value = "200")]
    pub radius: Vec<f64>,
    /// Truncation parameters eps = 1/R (alternative to --radius)
    #[arg(long, value_delimiter = ',', conflicts_with = "radius")]
    pub eps: Option<Vec<f64>>,
    /// Radial grid nodes
    #[arg(long, default_value_t = 8000)]
    pub nodes: usize,
}

pub fn diagram(args: &DiagramArgs) -> Result<Report, Failure> {
    let base = Params::new(args.n, 0.0)?;
    let radii = resolve_radii(&args.radius, args.eps.as_deref())?;
    let eps_list: Vec<f64> = radii.iter().map(|r| 1.0 / r).collect();
    let rows = bifurcation_diagram(&base, args.kmax, &eps_list, args.nodes)?;
    // rows come ordered k-major, radius-minor, matching the radii list
    let results: Vec<Value> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let r = radii[i % radii.len()];
            let mut labels = row.branch_labels.join("+");
            if row.conjectured_vertical {
                labels.push('*');
            }
            json!({
                "k": row.point.k, "R": r, "alpha_root": row.point.alpha_root,
                "limit_gap": row.point.limit_gap, "branch_labels": labels,
                "conjectured_vertical": row.conjectured_vertical,
            })
        })
        .collect();
    Ok(Report {
        command: "diagram",
        config: json!({
            "command": "diagram", "n": args.n, "kmax": args.kmax, "radius": radii,
            "nodes": args.nodes,
        }),
        columns: vec!["k", "R", "alpha_root", "limit_gap", "branch_labels"],
        results,
        checks: Vec::new(),
    })
}

/// The weighted Sobolev quotient of the (dilated) solution profile against
/// the sharp constant.
#[derive(Args, Debug)]
pub struct SobolevArgs {
    /// Space dimension N >= 3
    #[arg(long)]
    pub n: u32,
    /// Weight exponents, comma separated
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub alpha: Vec<f64>,
    /// Dilation parameters, comma separated
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub lambda: Vec<f64>,
}

pub fn sobolev(args: &SobolevArgs, tol: f64) -> Result<Report, Failure> {
    let mut results = Vec::new();
    let mut checks = Vec::new();
    for &a in &args.alpha {
        let p = Params::new(args.n, a)?;
        let constant = sobolev_constant(&p);
        for &lam in &args.lambda {
            let profile = Profile::new(p, ProfileKind::ULambda { lambda: lam })?;
            let quotient = sobolev_quotient_profile(&profile)?;
            let check = Check::rel(
                format!("quotient vs sharp constant (alpha={a}, lambda={lam})"),
                quotient,
                constant,
                tol,
            );
            results.push(json!({
                "n": args.n, "alpha": a, "lambda": lam,
                "quotient": quotient, "constant": constant, "rel_error": check.rel_error,
            }));
            checks.push(check);
        }
    }
    Ok(Report {
        command: "sobolev",
        config: json!({
            "command": "sobolev", "n": args.n, "alpha": args.alpha,
            "lambda": args.lambda, "tol": tol,
        }),
        columns: vec!["n", "alpha", "lambda", "quotient", "constant", "rel_error"],
        results,
        checks,
    })
}

/// Dirichlet problem -Δu = |x|^alpha u^p on the unit ball: boundary height
/// d* (two independent ways) or first-zero radii for given heights.
#[derive(Args, Debug)]
pub struct BvpArgs {
    /// Space dimension N >= 3
    #[arg(long)]
    pub n: u32,
    /// Weight exponent alpha >= 0
    #[arg(long)]
    pub alpha: f64,
    /// Nonlinearity exponent, 1 < p < (N+2+2*alpha)/(N-2)
    #[arg(long)]
    pub p: f64,
    /// Center heights to shoot from (omit to solve for the unit-ball height d*)
    #[arg(long, value_delimiter = ',')]
    pub d: Option<Vec<f64>>,
}

pub fn bvp(args: &BvpArgs, tol: f64) -> Result<Report, Failure> {
    let params = Params::new(args.n, args.alpha)?;
    let (results, checks, columns) = match &args.d {
        Some(heights) => {
            let shots: Vec<(f64, f64)> = heights
                .par_iter()
                .map(|&d| -> henon::Result<(f64, f64)> {
                    Ok((d, shoot_bvp(&params, args.p, d)?.zero_radius))
                })
                .collect::<henon::Result<_>>()?;
            let results: Vec<Value> = shots
                .iter()
                .map(|&(d, zr)| {
                    json!({"n": args.n, "alpha": args.alpha, "p": args.p, "d": d, "zero_radius": zr})
                })
                .collect();
            // every shot determines every other through the scaling law
            let (d0, zr0) = shots[0];
            let checks = shots[1..]
                .iter()
                .map(|&(d, zr)| {
                    let predicted = zr0 * (d / d0).powf(-(args.p - 1.0) / 2.0);
                    Check::rel(format!("zero radius at d={d} vs scaling law"), zr, predicted, tol)
                })
                .collect();
            (results, checks, vec!["n", "alpha", "p", "d", "zero_radius"])
        }
        None => {
            let report = solve_unit_ball(&params, args.p)?;
            let results = vec![json!({
                "n": args.n, "alpha": args.alpha, "p": args.p,
                "d_scaling": report.d_scaling, "d_direct": report.d_direct,
                "zero_radius": report.result.zero_radius,
            })];
            let checks = vec![
                Check::rel("boundary height two ways", report.d_scaling, report.d_direct, tol),
                Check::rel("first zero sits on the unit sphere", report.result.zero_radius, 1.0, 1e-6),
            ];
            (results, checks, vec!["n", "alpha", "p", "d_scaling", "d_direct", "zero_radius"])
        }
    };
    Ok(Report {
        command: "bvp",
        config: json!({
            "command": "bvp", "n": args.n, "alpha": args.alpha, "p": args.p,
            "d": args.d, "tol": tol,
        }),
        columns,
        results,
        checks,
    })
}

/// Integral identities of the closed forms at one parameter point.
#[derive(Args, Debug)]
pub struct IdentitiesArgs {
    /// Space dimension N >= 3
    #[arg(long)]
    pub n: u32,
    /// Weight exponent alpha >= 0
    #[arg(long)]
    pub alpha: f64,
    /// Dilation parameter of the mass identity
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Truncation parameter of the Pohozaev balance
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
}

pub fn identities(args: &IdentitiesArgs, tol: f64) -> Result<Report, Failure> {
    let p = Params::new(args.n, args.alpha)?;
    let reports = [
        weighted_mass_identity(&p, args.lambda)?,
        kernel_pairing_identity(&p)?,
        pohozaev_check(&p, args.eps)?,
    ];
    let checks: Vec<Check> =
        reports.iter().map(|r| Check::rel(r.name.clone(), r.lhs, r.rhs, tol)).collect();
    Ok(Report {
        command: "identities",
        config: json!({
            "command": "identities", "n": args.n, "alpha": args.alpha,
            "lambda": args.lambda, "eps": args.eps, "tol": tol,
        }),
        columns: Vec::new(),
        results: Vec::new(),
        checks,
    })
}

/// Bundled verification suite over eigenvalues, identities, indices,
/// residual orders, and the unit-ball solver.
#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Smaller grids and a reduced case list (tolerances widen accordingly)
    #[arg(long)]
    pub quick: bool,
}

type VerifyJob = Box<dyn Fn() -> henon::Result<Vec<Check>> + Send + Sync>;

pub fn verify(args: &VerifyArgs) -> Result<Report, Failure> {
    let quick = args.quick;
    let mut jobs: Vec<VerifyJob> = Vec::new();

    let (r_eig, n_eig, tol_eig) =
        if quick { (100.0, 2000, 1e-2) } else { (200.0, 8000, 1e-3) };
    jobs.push(Box::new(move || {
        let p = Params::new(3, 2.0)?;
        let got =
            SpectralProblem::new(p, SpectralForm::Lambda { k: 2 }, r_eig, n_eig)?.solve(1)?[0]
                .value;
        Ok(vec![Check::rel(
            format!("mode-2 eigenvalue vs closed form (N=3, alpha=2, R={r_eig})"),
            got,
            p.lambda_first_closed(2),
            tol_eig,
        )])
    }));
    if !quick {
        jobs.push(Box::new(|| {
            let p = Params::new(4, 1.0)?;
            let got = SpectralProblem::new(p, SpectralForm::Lambda { k: 0 }, 200.0, 8000)?
                .solve(1)?[0]
                .value;
            Ok(vec![Check::rel(
                "mode-0 eigenvalue vs closed form (N=4, alpha=1, R=200)",
                got,
                p.lambda_first_closed(0),
                1e-3,
            )])
        }));
    }

    let (r_lim, n_lim) = if quick { (50.0, 2000) } else { (100.0, 8000) };
    let mut limit_cases = vec![(3u32, -6.0)];
    if !quick {
        limit_cases.push((4, -8.0));
    }
    for (n_dim, want) in limit_cases {
        jobs.push(Box::new(move || {
            let p = Params::new(n_dim, 2.0)?;
            let got =
                SpectralProblem::new(p, SpectralForm::Weighted, r_lim, n_lim)?.solve(1)?[0].value;
            Ok(vec![Check::rel(
                format!("weighted eigenvalue vs limit (N={n_dim}, alpha=2, R={r_lim})"),
                got,
                want,
                1e-2,
            )])
        }));
    }

    if !quick {
        jobs.push(Box::new(|| {
            let report = eigen_slope(&Params::new(3, 2.0)?, 0.01, 1e-2, 8000)?;
            Ok(vec![Check::rel(
                "eigenvalue slope vs limit (N=3, alpha=2)",
                report.slope,
                report.limit,
                5e-2,
            )])
        }));
    }

    let n_sign = if quick { 1000 } else { 4000 };
    jobs.push(Box::new(move || {
        let p = Params::new(3, 1.0)?;
        let pairs = SpectralProblem::new(p, SpectralForm::Weighted, 10.0, n_sign)?.solve(2)?;
        Ok(vec![
            Check::bound(
                "first weighted eigenvalue negative (N=3, alpha=1, R=10)",
                pairs[0].value,
                0.0,
                pairs[0].value < 0.0,
            ),
            Check::bound(
                "second weighted eigenvalue positive (N=3, alpha=1, R=10)",
                pairs[1].value,
                0.0,
                pairs[1].value > 0.0,
            ),
        ])
    }));

    jobs.push(Box::new(|| {
        let below = Params::new(3, 2.0 - 1e-6)?.morse_index()?.total;
        let above = Params::new(3, 2.0 + 1e-6)?.morse_index()?.total;
        Ok(vec![Check::rel(
            "Morse jump at alpha=2 vs mode-2 multiplicity (N=3)",
            (above - below) as f64,
            harmonic_multiplicity(3, 2)? as f64,
            0.0,
        )])
    }));
    jobs.push(Box::new(|| {
        Ok(vec![Check::rel(
            "kernel dimension at alpha=2 (N=4)",
            Params::new(4, 2.0)?.kernel_dimension()? as f64,
            (1 + harmonic_multiplicity(4, 2)?) as f64,
            0.0,
        )])
    }));

    let mut identity_cases = vec![(3u32, 1.0, 1.0, 0.1)];
    if !quick {
        identity_cases.push((4, 2.0, 2.0, 0.05));
    }
    for (n_dim, a, lam, eps) in identity_cases {
        jobs.push(Box::new(move || {
            let p = Params::new(n_dim, a)?;
            let mass = weighted_mass_identity(&p, lam)?;
            let pairing = kernel_pairing_identity(&p)?;
            let poho = pohozaev_check(&p, eps)?;
            Ok(vec![
                Check::rel(format!("{} (N={n_dim}, alpha={a}, lambda={lam})", mass.name), mass.lhs, mass.rhs, 1e-4),
                Check::rel(format!("{} (N={n_dim}, alpha={a})", pairing.name), pairing.lhs, pairing.rhs, 1e-4),
                Check::rel(format!("{} (N={n_dim}, alpha={a}, eps={eps})", poho.name), poho.lhs, poho.rhs, 1e-4),
            ])
        }));
    }

    let sobolev_alphas: &[f64] = if quick { &[1.0] } else { &[0.0, 1.0, 2.0] };
    for &a in sobolev_alphas {
        jobs.push(Box::new(move || {
            let p = Params::new(3, a)?;
            let q = sobolev_quotient_profile(&Profile::new(p, ProfileKind::U)?)?;
            Ok(vec![Check::rel(
                format!("Sobolev quotient extremality (N=3, alpha={a})"),
                q,
                sobolev_constant(&p),
                1e-4,
            )])
        }));
    }
    if !quick {
        jobs.push(Box::new(|| {
            let p = Params::new(3, 1.0)?;
            let base = sobolev_quotient_profile(&Profile::new(p, ProfileKind::U)?)?;
            let dilated = sobolev_quotient_profile(
                &Profile::new(p, ProfileKind::ULambda { lambda: 3.0 })?,
            )?;
            Ok(vec![Check::rel("Sobolev quotient dilation invariance (lambda=3)", dilated, base, 1e-6)])
        }));
    }

    jobs.push(Box::new(|| {
        let report = solve_unit_ball(&Params::new(3, 1.0)?, 3.0)?;
        Ok(vec![Check::rel(
            "unit-ball boundary height two ways (N=3, alpha=1, p=3)",
            report.d_scaling,
            report.d_direct,
            5e-3,
        )])
    }));
    if !quick {
        jobs.push(Box::new(|| {
            let p = Params::new(3, 1.0)?;
            let zr1 = shoot_bvp(&p, 3.0, 1.0)?.zero_radius;
            let zr2 = shoot_bvp(&p, 3.0, 2.0)?.zero_radius;
            Ok(vec![Check::rel(
                "zero-radius scaling exponent (N=3, alpha=1, p=3)",
                (zr2.ln() - zr1.ln()) / 2.0f64.ln(),
                -1.0,
                1e-2,
            )])
        }));
        jobs.push(Box::new(|| {
            let report = solve_unit_ball(&Params::new(3, 1.0)?, 3.0)?;
            let op = RadialOperator { dim: 3.0, coeff: 1.0, alpha: 1.0, exponent: 3.0, shift: 0.0 };
            let max_res = |nodes: usize| -> henon::Result<f64> {
                let u = compose_radial(&report.result, nodes)?;
                let res = residual_radial_general(&u, &op)?;
                let range = res.grid.window(0.25, 0.95);
                Ok(res.values[range].iter().fold(0.0f64, |m, v| m.max(v.abs())))
            };
            let ratio = max_res(200)? / max_res(400)?;
            Ok(vec![Check::bound(
                "composed residual convergence order (N=3, alpha=1, p=3)",
                ratio,
                4.0,
                (3.3..=4.7).contains(&ratio),
            )])
        }));
        jobs.push(Box::new(|| {
            let p = Params::new(4, 2.0)?;
            let u = |s, t| eval_nonradial_explicit(&p, 0.5, BiRadialPoint { s, t }).unwrap();
            let ratio = residual_biradial(u, &p, 6.0, 0.04)? / residual_biradial(u, &p, 6.0, 0.02)?;
            Ok(vec![Check::bound(
                "bi-radial residual convergence order (N=4, alpha=2, a=0.5)",
                ratio,
                4.0,
                (3.5..=4.5).contains(&ratio),
            )])
        }));
        jobs.push(Box::new(|| {
            let point = find_alpha_k(&Params::new(3, 0.0)?, 2, 0.01, None, 4000)?;
            Ok(vec![Check::rel(
                "bifurcation value alpha_2 (N=3, R=100)",
                point.alpha_root,
                2.0,
                2e-2,
            )])
        }));
    }

    jobs.push(Box::new(|| {
        let p = Params::new(4, 2.0)?;
        let samples: Vec<BiRadialPoint<f64>> = (0..12)
            .flat_map(|i| {
                (0..12).map(move |j| BiRadialPoint {
                    s: 0.05 + 0.15 * f64::from(i),
                    t: 0.05 + 0.12 * f64::from(j),
                })
            })
            .collect();
        let report = check_harmonic_gradient_condition(&p, &samples)?;
        Ok(vec![Check::bound(
            "harmonic gradient identity (N=4, alpha=2)",
            report.max_abs_deviation,
            1e-12,
            report.max_abs_deviation <= 1e-12,
        )])
    }));

    let groups: Vec<Vec<Check>> =
        jobs.par_iter().map(|job| job()).collect::<henon::Result<_>>()?;
    let checks: Vec<Check> = groups.into_iter().flatten().collect();
    Ok(Report {
        command: "verify",
        config: json!({"command": "verify", "quick": quick}),
        columns: Vec::new(),
        results: Vec::new(),
        checks,
    })
}

fn resolve_radii(radius: &[f64], eps: Option<&[f64]>) -> Result<Vec<f64>, Failure> {
    let radii: Vec<f64> = match eps {
        Some(list) => {
            if let Some(bad) = list.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
                return Err(Failure::Validation(format!("eps must lie in (0,1), got {bad}")));
            }
            list.iter().map(|e| 1.0 / e).collect()
        }
        None => radius.to_vec(),
    };
    if let Some(bad) = radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        return Err(Failure::Validation(format!("radius must be positive and finite, got {bad}")));
    }
    Ok(radii)
}

/// "A" -> [A]; "MIN,MAX,STEPS" -> STEPS equispaced points from MIN to MAX.
fn alpha_grid(values: &[f64]) -> Result<Vec<f64>, Failure> {
    match values {
        [single] => Ok(vec![*single]),
        [min, max, steps] => {
            let count = *steps as usize;
            if steps.fract() != 0.0 || count < 2 {
                return Err(Failure::Validation(format!(
                    "STEPS must be an integer >= 2, got {steps}"
                )));
            }
            if max <= min || !max.is_finite() || !min.is_finite() {
                return Err(Failure::Validation(format!(
                    "alpha range needs finite MAX > MIN, got [{min}, {max}]"
                )));
            }
            let h = (max - min) / (count as f64 - 1.0);
            let mut grid: Vec<f64> =
                (0..count).map(|i| min + h * i as f64).collect();
            grid[count - 1] = *max;
            Ok(grid)
        }
        other => Err(Failure::Validation(format!(
            "--alpha takes one value or MIN,MAX,STEPS; got {} values",
            other.len()
        ))),
    }
}
