use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use qfmin_core::l2::example1_convergence;
use qfmin_core::minimizers::{classify, Definiteness};
use qfmin_core::oracle::{kkt_solve, reduced_solve};
use qfmin_core::pinv::ep_residual;
use qfmin_core::{
    eigh, is_ep, pinv, principal_angle_diag, rank_decide, reverse_order_holds, solve, sqrt_psd,
    svd, Complex64, Matrix, Method, Scalar, SolveMethod, Tol,
};

use crate::document::{
    AngleDoc, CheckReport, DiagnosticDoc, L2Row, L2Table, ResultDocument, ReverseOrderDoc,
    VerifyDoc,
};
use crate::num::Num;
use crate::problem::{env_overrides, ProblemFile, TolOverrides};

#[derive(Debug, Parser)]
#[command(name = "qfmin", version, about = "Minimize ⟨x, Tx⟩ subject to Ax = b")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a problem file and print the result as JSON.
    Solve(SolveArgs),
    /// Report structural properties of the problem's T and A.
    Check(CheckArgs),
    /// Truncated shift problem: minima of growing sections against 7π²/24.
    L2demo(L2demoArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub problem: PathBuf,
    /// auto, posdef, posdef-diag or psd-complement.
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    pub method: SolveMethod,
    /// Cross-check against the Lagrange multiplier oracle.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub rtol: Option<f64>,
    #[arg(long)]
    pub pd_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub problem: PathBuf,
}

#[derive(Debug, Args)]
pub struct L2demoArgs {
    /// Comma-separated, strictly ascending section sizes.
    #[arg(long)]
    pub sizes: String,
    /// Also write the table as CSV to this path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<SolveMethod, String> {
    s.parse().map_err(|e: qfmin_core::Error| e.to_string())
}

/// Runs one command and returns what belongs on stdout. `env_rtol` is the
/// raw value of `QFMIN_RTOL`.
pub fn run(cli: &Cli, env_rtol: Option<&str>) -> Result<String> {
    match &cli.command {
        Command::Solve(args) => {
            let file = ProblemFile::load(&args.problem)?;
            let flags = TolOverrides {
                rtol: args.rtol,
                pd_tol: args.pd_tol,
                ..Default::default()
            };
            let tol = flags
                .over(file.tol.over(env_overrides(env_rtol)?))
                .apply(Tol::default())?;
            let doc = if file.is_complex() {
                solve_doc::<Complex64>(&file, tol, args.method, args.verify)?
            } else {
                solve_doc::<f64>(&file, tol, args.method, args.verify)?
            };
            to_json(&doc)
        }
        Command::Check(args) => {
            let file = ProblemFile::load(&args.problem)?;
            let tol = file
                .tol
                .over(env_overrides(env_rtol)?)
                .apply(Tol::default())?;
            let report = if file.is_complex() {
                check_report::<Complex64>(&file, &tol)?
            } else {
                check_report::<f64>(&file, &tol)?
            };
            to_json(&report)
        }
        Command::L2demo(args) => {
            let table = l2_table(&parse_sizes(&args.sizes)?)?;
            if let Some(path) = &args.csv {
                std::fs::write(path, table.to_csv())
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            to_json(&table)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn solve_doc<S: Scalar<Real = f64>>(
    file: &ProblemFile,
    tol: Tol,
    method: SolveMethod,
    verify: bool,
) -> Result<ResultDocument> {
    let p = file.problem::<S>(tol)?;
    let r = solve(&p, method)?;
    let mut doc = ResultDocument::from_result(&r);
    if verify {
        let o = match r.method {
            Method::PsdComplement => reduced_solve(p.t(), p.a(), p.b(), p.tol())?,
            _ => kkt_solve(p.t(), p.a(), p.b(), p.tol())?,
        };
        let min_gap = (r.min_value - o.min_value).abs() / o.min_value.abs().max(1.0);
        let x_gap = r.xhat.distance(&o.x) / o.x.norm().max(1.0);
        doc.verify = Some(VerifyDoc {
            oracle_min: Num(o.min_value),
            oracle_gap: Num(min_gap.max(x_gap)),
        });
    }
    Ok(doc)
}

pub fn check_report<S: Scalar<Real = f64>>(file: &ProblemFile, tol: &Tol) -> Result<CheckReport> {
    let t = file.t_matrix::<S>()?;
    let a = file.a_matrix::<S>()?;
    ensure!(
        t.is_square(),
        "t must be square, got {}x{}",
        t.rows(),
        t.cols()
    );
    ensure!(
        a.cols() == t.rows(),
        "a has {} columns but t is {}x{}",
        a.cols(),
        t.rows(),
        t.cols()
    );
    let rank = rank_decide(&svd(&t)?.sigma, tol, t.shape()).rank;
    let mut report = CheckReport {
        ep: is_ep(&t, tol)?,
        ep_residual: Num(ep_residual(&t, tol)?),
        class: "non-Hermitian".into(),
        rank,
        eigenvalues: None,
        reverse_order: None,
        principal_angle: None,
        diagnostics: Vec::new(),
    };
    if !t.is_hermitian(tol.htol) {
        return Ok(report);
    }
    let e = eigh(&t.hermitian_part())?;
    report.eigenvalues = Some(e.lambda.iter().map(|&l| Num(l)).collect());
    let b = match classify(&e.lambda, tol) {
        Definiteness::Indefinite => {
            report.class = "indefinite".into();
            return Ok(report);
        }
        Definiteness::PositiveDefinite => {
            report.class = "PD".into();
            pinv(&sqrt_psd(&t, tol)?, tol)?
        }
        Definiteness::SingularPsd { .. } => {
            report.class = "PSD-singular".into();
            // U₁R†: the eigenbasis of R(T) scaled by λ^(-1/2).
            let gate = tol.pd_rtol(t.rows()) * e.max_abs();
            let keep: Vec<usize> = (0..e.lambda.len())
                .filter(|&i| e.lambda[i] > gate)
                .collect();
            let inv_root: Vec<f64> = keep.iter().map(|&i| e.lambda[i].sqrt().recip()).collect();
            e.q.select_columns(&keep)
                .matmul(&Matrix::from_real_diag(&inv_root))?
        }
    };
    let ro = reverse_order_holds(&a, &b, tol)?;
    report.reverse_order = Some(ReverseOrderDoc {
        holds: ro.holds,
        residual_ii: Num(ro.residual_ii),
        residual_iii: Num(ro.residual_iii),
        direct_residual: Num(ro.direct_residual),
    });
    let angle = principal_angle_diag(&a, &b, tol)?;
    report.principal_angle = Some(AngleDoc {
        angle: Num(angle.angle),
        intersection_dim: angle.intersection_dim,
    });
    report
        .diagnostics
        .extend(angle.warning.as_ref().map(DiagnosticDoc::from));
    Ok(report)
}

pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let sizes = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<usize>()
                .with_context(|| format!("invalid size {p:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    if sizes.is_empty() {
        bail!("--sizes needs at least one section size");
    }
    Ok(sizes)
}

pub fn l2_table(sizes: &[usize]) -> Result<L2Table> {
    let s = example1_convergence::<f64>(sizes)?;
    Ok(L2Table {
        limit: Num(s.limit),
        rows: (0..s.sizes.len())
            .map(|i| L2Row {
                n: s.sizes[i],
                min_value: Num(s.min_values[i]),
                abs_error: Num(s.errors[i]),
            })
            .collect(),
    })
}
