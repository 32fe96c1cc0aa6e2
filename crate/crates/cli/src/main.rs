mod args;
mod complex;
mod output;

use std::process::ExitCode;

use clap::Parser;
use lfadjoint::kernels::{principal_coefficients, residual_coefficients};
use lfadjoint::operators::{composition_matrix, multiplication_matrix};
use lfadjoint::verify::{
    cowen_difference, kernel_report, run_compact_decay, run_exact_identity, run_finite_rank, run_heller_a,
    run_heller_b, run_perturbation, suite_checks, Mode, OperatorRecipe,
};
use lfadjoint::{KernelCoefficients, Map64, Operator64, Series64, VerificationReport, Weights64};
use rayon::prelude::*;

use args::{Cli, Command, Format, MatrixKind, OutputArgs, Space, Verify};
use complex::{parse_complex, parse_complex_list, parse_map};
use output::{csv_rows, emit, float, json, report_bytes, resolve};

/// Bad input: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Weights(a) => {
            let w = weights(&a.space, a.ell, a.trunc)?;
            let rows = w.beta().iter().enumerate().map(|(n, b)| [n.to_string(), float(*b)]);
            emit(
                &csv_rows(&["n", "beta"], rows)?,
                resolve(a.out.as_deref(), "weights.csv"),
            )?;
            Ok(true)
        }
        Command::Matrix(a) => {
            let w = weights(&a.space, a.ell, a.trunc)?;
            let m = matrix(&a, &w)?;
            let bytes = if a.singular_values {
                let rows = m
                    .singular_values()
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| [i.to_string(), float(s)]);
                csv_rows(&["index", "sigma"], rows)?
            } else {
                let n = m.order() + 1;
                let rows = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| {
                    let z = m.get(i, j);
                    [i.to_string(), j.to_string(), float(z.re), float(z.im)]
                });
                csv_rows(&["row", "col", "re", "im"], rows)?
            };
            emit(&bytes, resolve(a.out.as_deref(), "matrix.csv"))?;
            Ok(true)
        }
        Command::Kernel(a) => {
            let report = kernel_report(a.alpha, a.trunc, a.tol)?;
            let bytes = match a.output.format {
                Format::Json => json(&report)?,
                Format::Csv => {
                    let w = Weights64::a2alpha(a.alpha, a.trunc)?;
                    let k = KernelCoefficients::from_weights(&w);
                    let p = principal_coefficients(a.alpha, a.trunc)?;
                    let r = residual_coefficients(a.alpha, a.trunc)?;
                    let rows = (0..=a.trunc).map(|n| {
                        [
                            n.to_string(),
                            float(k.coefficients()[n]),
                            float(p[n]),
                            float(r.coefficients[n]),
                        ]
                    });
                    csv_rows(&["n", "kernel", "principal", "residual"], rows)?
                }
            };
            emit(
                &bytes,
                resolve(a.output.out.as_deref(), &file_name("kernel", a.output.format)),
            )?;
            Ok(report.pass)
        }
        Command::Verify(v) => verify(v),
        Command::Suite(out) => suite(&out),
    }
}

fn weights(space: &Space, ell: f64, order: usize) -> Result<Weights64, Usage> {
    if order == 0 {
        return Err(Usage("--trunc must be at least 1".into()));
    }
    Ok(match (space.alpha, space.t) {
        (Some(alpha), None) => Weights64::a2alpha(alpha, order)?,
        (None, Some(t)) => Weights64::power_law(t, ell, order)?,
        _ => return Err(Usage("exactly one of --alpha and --t is required".into())),
    })
}

fn mode(space: &Space) -> Mode<f64> {
    match (space.alpha, space.t) {
        (Some(alpha), _) => Mode::Alpha(alpha),
        (None, Some(t)) => Mode::Power(t),
        (None, None) => unreachable!("clap enforces the group"),
    }
}

fn map(s: &str) -> Result<Map64, Usage> {
    let [a, b, c, d] = parse_map(s)?;
    let m = Map64::new(a, b, c, d)?;
    m.require_self_map()?;
    Ok(m)
}

fn matrix(a: &args::MatrixArgs, w: &Weights64) -> Result<Operator64, Usage> {
    let need_map = || {
        a.map
            .as_deref()
            .ok_or_else(|| Usage(format!("--map is required for {:?}", a.kind)))
    };
    Ok(match a.kind {
        MatrixKind::Composition => composition_matrix(&map(need_map()?)?, w, a.trunc)?,
        MatrixKind::CowenDifference => cowen_difference(&map(need_map()?)?, w, mode(&a.space), a.trunc)?,
        MatrixKind::Multiplication => {
            let coeffs = parse_complex_list(
                a.symbol
                    .as_deref()
                    .ok_or_else(|| Usage("--symbol is required".into()))?,
            )?;
            multiplication_matrix(&Series64::from_slice(&coeffs, a.trunc), w, a.trunc)?
        }
    })
}

/// Verification orders are powers of two in 32..=1024.
fn check_trunc(m: usize) -> Result<(), Usage> {
    if !(32..=1024).contains(&m) || !m.is_power_of_two() {
        return Err(Usage(format!(
            "--trunc must be a power of two between 32 and 1024, got {m}"
        )));
    }
    Ok(())
}

fn block(m: usize, k: Option<usize>) -> Result<usize, Usage> {
    let k = k.unwrap_or(m / 8);
    if k > m / 8 {
        return Err(Usage(format!("--block must be at most M/8 = {}, got {k}", m / 8)));
    }
    Ok(k)
}

fn file_name(stem: &str, format: Format) -> String {
    match format {
        Format::Json => format!("{stem}.json"),
        Format::Csv => format!("{stem}.csv"),
    }
}

fn finish(report: VerificationReport, out: &OutputArgs) -> Outcome {
    let bytes = report_bytes(&report, out.format)?;
    emit(
        &bytes,
        resolve(out.out.as_deref(), &file_name(&report.check, out.format)),
    )?;
    Ok(report.pass)
}

fn verify(v: Verify) -> Outcome {
    match v {
        Verify::Cowen(a) => {
            check_trunc(a.trunc.trunc)?;
            let m = a.trunc.trunc;
            let phi = map(&a.map)?;
            let report = match mode(&a.space) {
                Mode::Alpha(alpha) if alpha + 2.0 > 0.0 => {
                    run_exact_identity(&phi, alpha, m, block(m, a.block)?, a.tol)?
                }
                Mode::Alpha(alpha) => run_finite_rank(&phi, alpha, m, a.rel_tol)?,
                Mode::Power(t) => run_compact_decay(&phi, t, a.ell, m)?,
            };
            finish(report, &a.output)
        }
        Verify::Compact(a) => {
            check_trunc(a.trunc.trunc)?;
            finish(run_compact_decay(&map(&a.map)?, a.t, a.ell, a.trunc.trunc)?, &a.output)
        }
        Verify::Perturbation(a) => {
            check_trunc(a.trunc.trunc)?;
            let m = a.trunc.trunc;
            let b1 = Weights64::a2alpha(-2.0 * a.t - 1.0, 2 * m)?;
            let b2 = Weights64::power_law(a.t, a.ell, 2 * m)?;
            let recipe = OperatorRecipe::Composition(map(&a.map)?);
            finish(
                run_perturbation(&b1, &b2, &recipe, m, block(m, a.block)?, a.tol)?,
                &a.output,
            )
        }
        Verify::HellerA(a) => {
            check_trunc(a.trunc.trunc)?;
            finish(run_heller_a(&map(&a.map)?, a.t, a.trunc.trunc)?, &a.output)
        }
        Verify::HellerB(a) => {
            check_trunc(a.trunc.trunc)?;
            let (lambda, u) = (parse_complex(&a.lambda)?, parse_complex(&a.u)?);
            finish(run_heller_b(lambda, u, a.t, a.trunc.trunc)?, &a.output)
        }
    }
}

fn suite(out: &OutputArgs) -> Outcome {
    let results: Vec<_> = suite_checks().into_par_iter().map(|c| (c.name, (c.run)())).collect();
    let mut reports = Vec::with_capacity(results.len());
    let mut ok = true;
    for (name, result) in results {
        match result {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("{name}: error: {e}");
                ok = false;
            }
        }
    }
    reports.sort_by_key(|r| r.sort_key());
    for r in &reports {
        eprintln!("{}", r.summary());
        ok &= r.pass;
    }
    let bytes = match out.format {
        Format::Json => json(&reports)?,
        Format::Csv => {
            let rows = reports.iter().map(|r| {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                [
                    r.check.clone(),
                    params.join(";"),
                    r.truncations[0].to_string(),
                    r.pass.to_string(),
                ]
            });
            csv_rows(&["check", "params", "trunc", "pass"], rows)?
        }
    };
    emit(&bytes, resolve(out.out.as_deref(), &file_name("suite", out.format)))?;
    Ok(ok)
}
