//! Command runners. Each returns a report or a [`CliError`] carrying the
//! process exit code; printing is left to the binary.

use std::fmt;

use comaxdom_core::analysis::{
    cauchy_bound, enestrom_kakeya, find_roots, match_root_list, prime_power_r, shape_analyze,
    verify_root_claims, AnnulusBounds, RootSet,
};
use comaxdom_core::domination::{comaximal_domination, DominationResult, Method};
use comaxdom_core::numtheory::factorize;
use comaxdom_core::published::{expand_conjugates, PQ_LIST_ZEROS, PRIME_POWER_32_ZEROS};
use comaxdom_core::verify::{corrected_ok, verify_n, ClaimStatus, SweepOptions};
use comaxdom_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::parallel;
use crate::report::{
    coefficient_strings, finite, rational_string, root_rows, to_f64, BoundsView, Discrepancy,
    RootSummary, RunReport, ShapeView, SweepReport, SweepRow,
};

/// Largest modulus the single-`n` commands accept.
pub const N_MAX: u64 = 10_000;
/// Inclusive bounds of a `verify` range.
pub const SWEEP_MIN: u64 = 2;
pub const SWEEP_MAX: u64 = 200;
/// Agreement required against a printed zero list, per coordinate.
pub const ZERO_LIST_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Discrepancy = 1,
    InvalidArgument = 2,
    Precondition = 3,
    NonConvergence = 4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: ExitCode::InvalidArgument,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ShapeMismatch(_)
            | Error::GraphTooLarge { .. }
            | Error::TooManyClasses { .. } => ExitCode::Precondition,
            _ => ExitCode::InvalidArgument,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn check_n(n: u64) -> Result<(), CliError> {
    if (2..=N_MAX).contains(&n) {
        Ok(())
    } else {
        Err(CliError::invalid(format!(
            "n must lie in 2..={N_MAX}, got {n}"
        )))
    }
}

/// Applies `--published`: each method with an as-printed variant is swapped
/// for it, and `auto` picks the printed formula matching the shape of `n`.
pub fn resolve_method(n: u64, method: Method, published: bool) -> Result<Method, CliError> {
    if !published {
        return Ok(method);
    }
    Ok(match method {
        Method::ClosedPrimePower => Method::ClosedPrimePowerPublished,
        Method::ClosedPqPowers => Method::ClosedPqPowersPublished,
        Method::Auto => {
            let f = factorize(n)?;
            match f.factors() {
                [(_, m)] if *m >= 2 => Method::ClosedPrimePowerPublished,
                [(_, a), (_, b)] if a + b > 2 => Method::ClosedPqPowersPublished,
                [(_, 1), (_, 1), (_, 1)] => Method::G2PqrPublished,
                _ => Method::Blowup,
            }
        }
        other => other,
    })
}

fn dominate(n: u64, method: Method, published: bool) -> Result<DominationResult, CliError> {
    check_n(n)?;
    let method = resolve_method(n, method, published)?;
    Ok(comaximal_domination(n, method)?)
}

fn base_report(command: &str, d: &DominationResult, published: bool) -> RunReport {
    RunReport {
        command: command.into(),
        n: d.n,
        methods_run: vec![d.method.name().into()],
        published,
        polynomial: coefficient_strings(&d.polynomial),
        degree: d.polynomial.degree().unwrap_or(0),
        gamma: d.gamma,
        shape: None,
        bounds: None,
        root_summary: None,
        roots: Vec::new(),
        discrepancies: vec![Discrepancy::new(
            "degree_equals_n",
            d.method.is_published_variant(),
            d.degree_matches_order,
            format!("degree {}, n = {}", d.polynomial.degree().unwrap_or(0), d.n),
        )],
    }
}

pub fn compute(n: u64, method: Method, published: bool) -> Result<RunReport, CliError> {
    let d = dominate(n, method, published)?;
    Ok(base_report("compute", &d, published))
}

pub fn analyze(n: u64, method: Method, published: bool) -> Result<RunReport, CliError> {
    let d = dominate(n, method, published)?;
    let mut report = base_report("analyze", &d, published);
    let shape = shape_analyze(&d.polynomial)?;
    let bounds = enestrom_kakeya(&d.polynomial)?;
    let printed = d.method.is_published_variant();
    report
        .methods_run
        .extend(["shape_analyze".into(), "enestrom_kakeya".into()]);
    report.discrepancies.push(Discrepancy::new(
        "unimodal",
        printed,
        shape.unimodal,
        format!(
            "oscillations {}, modes {:?}",
            shape.oscillations, shape.mode_indices
        ),
    ));
    report.discrepancies.push(Discrepancy::new(
        "log_concave",
        printed,
        shape.log_concave,
        match shape.first_log_concavity_violation {
            None => "no violation".into(),
            Some(i) => format!("first violation at index {i}"),
        },
    ));
    if let Some(row) = prime_power_radius_row(n, &bounds)? {
        report.discrepancies.push(row);
    }
    report.shape = Some(ShapeView::from(&shape));
    report.bounds = Some(BoundsView::new(&bounds, cauchy_bound(&d.polynomial)?));
    Ok(report)
}

/// Compares the annulus outer radius with the closed-form prime-power value.
fn prime_power_radius_row(n: u64, bounds: &AnnulusBounds) -> Result<Option<Discrepancy>, CliError> {
    let Some((p, m)) = factorize(n)?.as_prime_power().filter(|&(_, m)| m >= 2) else {
        return Ok(None);
    };
    let closed = prime_power_r(p, m)?;
    Ok(Some(Discrepancy::new(
        "prime_power_outer_radius",
        true,
        bounds.big_r == closed,
        format!(
            "Enestrom-Kakeya R = {}, closed form {}",
            rational_string(&bounds.big_r),
            rational_string(&closed)
        ),
    )))
}

/// Everything `roots` computes, for callers that also draw the figure.
pub struct RootsRun {
    pub report: RunReport,
    pub roots: RootSet,
    pub bounds: AnnulusBounds,
}

pub fn roots(
    n: u64,
    method: Method,
    published: bool,
    tol: f64,
    max_iter: usize,
) -> Result<RootsRun, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::invalid("--tol must be a positive number"));
    }
    if max_iter == 0 {
        return Err(CliError::invalid("--max-iter must be positive"));
    }
    let d = dominate(n, method, published)?;
    let mut report = base_report("roots", &d, published);
    let p = &d.polynomial;
    let rs = find_roots(p, tol, max_iter)?;
    let bounds = enestrom_kakeya(p)?;
    let claims = verify_root_claims(p, &rs, &bounds)?;
    report.methods_run.push("aberth_ehrlich".into());

    let rows = &mut report.discrepancies;
    rows.push(Discrepancy::new(
        "root_annulus",
        false,
        claims.annulus_violations.is_empty(),
        format!(
            "{} violations; nonzero moduli in [{:.9}, {:.9}], annulus [{}, {}]",
            claims.annulus_violations.len(),
            claims.min_nonzero_modulus,
            claims.max_nonzero_modulus,
            rational_string(&bounds.r),
            rational_string(&bounds.big_r)
        ),
    ));
    rows.push(Discrepancy::new(
        "vieta_sum",
        false,
        claims.vieta_sum_ok,
        format!(
            "sum {:.12} {:+.3e}i, expected {:.12}",
            claims.vieta_sum.re, claims.vieta_sum.im, claims.vieta_sum_expected
        ),
    ));
    rows.push(Discrepancy::new(
        "vieta_product",
        false,
        claims.vieta_product_ok,
        format!("relative error {:.3e}", claims.vieta_product_rel_error),
    ));
    rows.push(Discrepancy::new(
        "conjugate_pairing",
        false,
        claims.unpaired.is_empty(),
        format!("{} unpaired roots", claims.unpaired.len()),
    ));
    if let Some(row) = modulus_bound_row(n, claims.max_nonzero_modulus)? {
        rows.push(row);
    }
    let printed_lists: &[(&str, &[(f64, f64)])] = if d.method.is_published_variant() {
        if n == 32 {
            &[("printed_zero_list_p_power", &PRIME_POWER_32_ZEROS)]
        } else {
            &[]
        }
    } else if n == 15 || n == 21 {
        &[("printed_zero_list_21_values", &PQ_LIST_ZEROS)]
    } else {
        &[]
    };
    for (claim, list) in printed_lists {
        let reference = expand_conjugates(list);
        let m = match_root_list(&rs.roots, &reference, ZERO_LIST_TOL);
        let detail = match m.max_coordinate_error {
            Some(e) => format!(
                "{} values, max coordinate error {e:.3e} (tolerance {ZERO_LIST_TOL:e})",
                m.reference
            ),
            None => format!(
                "{} computed roots vs {} printed values",
                m.computed, m.reference
            ),
        };
        rows.push(Discrepancy::new(claim, true, m.matches, detail));
    }

    let nonzero: Vec<f64> = rs
        .roots
        .iter()
        .map(|z| z.norm())
        .filter(|&x| x > 0.0)
        .collect();
    report.root_summary = Some(RootSummary {
        converged: rs.converged,
        iterations_used: rs.iterations_used,
        zero_multiplicity: rs.zero_multiplicity,
        tol,
        max_iter,
        min_nonzero_modulus: nonzero.iter().copied().reduce(f64::min).and_then(finite),
        max_nonzero_modulus: nonzero.iter().copied().reduce(f64::max).and_then(finite),
    });
    report.roots = root_rows(&rs);
    report.bounds = Some(BoundsView::new(&bounds, cauchy_bound(p)?));
    Ok(RootsRun {
        report,
        roots: rs,
        bounds,
    })
}

/// `n = p^m`: nonzero moduli below the closed-form radius; `n = pq`: below
/// `(pq - 1) / 2`.
fn modulus_bound_row(n: u64, max_modulus: f64) -> Result<Option<Discrepancy>, CliError> {
    let f = factorize(n)?;
    let (claim, bound) = match f.factors() {
        [(p, m)] if *m >= 2 => ("prime_power_modulus_bound", prime_power_r(*p, *m)?),
        [(p, 1), (q, 1)] => (
            "pq_modulus_bound",
            BigRational::new(BigInt::from(p * q - 1), BigInt::from(2)),
        ),
        _ => return Ok(None),
    };
    let limit = to_f64(&bound);
    let ok = max_modulus < limit;
    Ok(Some(Discrepancy::new(
        claim,
        false,
        ok,
        format!(
            "max nonzero modulus {:.9} against {}",
            max_modulus,
            rational_string(&bound)
        ),
    )))
}

/// Parses an inclusive `a..b` range.
pub fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| CliError::invalid(format!("range must look like a..b, got {s:?}")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| CliError::invalid(format!("bad range bound {t:?}")))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b || a < SWEEP_MIN || b > SWEEP_MAX {
        return Err(CliError::invalid(format!(
            "range must satisfy {SWEEP_MIN} <= a <= b <= {SWEEP_MAX}, got {a}..{b}"
        )));
    }
    Ok((a, b))
}

pub fn verify(a: u64, b: u64, brute: bool, brute_g2: bool) -> Result<SweepReport, CliError> {
    if a > b || a < SWEEP_MIN || b > SWEEP_MAX {
        return Err(CliError::invalid(format!(
            "range must satisfy {SWEEP_MIN} <= a <= b <= {SWEEP_MAX}"
        )));
    }
    let opts = SweepOptions { brute, brute_g2 };
    let per_n: Vec<_> = (a..=b)
        .into_par_iter()
        .map(|n| verify_n(n, opts, &mut |g| parallel::brute_force(g)))
        .collect::<Result<_, _>>()?;
    let claims: Vec<_> = per_n.into_iter().flatten().collect();
    let verified = claims
        .iter()
        .filter(|r| r.status == ClaimStatus::Verified)
        .count();
    Ok(SweepReport {
        command: "verify".into(),
        range: [a, b],
        brute,
        brute_g2,
        corrected_ok: corrected_ok(&claims),
        verified,
        discrepant: claims.len() - verified,
        rows: claims.iter().map(SweepRow::from).collect(),
    })
}
