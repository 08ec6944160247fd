use comaxdom_core::analysis::{AnnulusBounds, RootSet, ShapeReport};
use comaxdom_core::verify::ClaimRow;
use comaxdom_core::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Wording shipped with every shape projection so readers know which count
/// `oscillations` is.
pub const OSCILLATION_CONVENTION: &str = "oscillations counts local-maximum plateaus after merging equal neighbours \
     (a monotone sequence has 1; unimodal iff at most 1); direction_reversals counts strict rise/fall changes";

/// Result of a single `compute`, `analyze` or `roots` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub n: u64,
    pub methods_run: Vec<String>,
    pub published: bool,
    /// Coefficients from `x^0` upward as decimal strings.
    pub polynomial: Vec<String>,
    pub degree: usize,
    pub gamma: usize,
    pub shape: Option<ShapeView>,
    pub bounds: Option<BoundsView>,
    pub root_summary: Option<RootSummary>,
    pub roots: Vec<RootRow>,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeView {
    pub unimodal: bool,
    pub log_concave: bool,
    pub newton_satisfied: bool,
    pub oscillations: usize,
    pub direction_reversals: usize,
    pub mode_indices: Vec<usize>,
    pub first_log_concavity_violation: Option<usize>,
    pub first_newton_violation: Option<usize>,
    pub oscillation_convention: String,
}

impl From<&ShapeReport> for ShapeView {
    fn from(s: &ShapeReport) -> Self {
        Self {
            unimodal: s.unimodal,
            log_concave: s.log_concave,
            newton_satisfied: s.newton_satisfied,
            oscillations: s.oscillations,
            direction_reversals: s.direction_reversals,
            mode_indices: s.mode_indices.clone(),
            first_log_concavity_violation: s.first_log_concavity_violation,
            first_newton_violation: s.first_newton_violation,
            oscillation_convention: OSCILLATION_CONVENTION.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsView {
    /// Exact inner radius as `num/den`.
    pub r: String,
    /// Exact outer radius as `num/den`.
    pub big_r: String,
    pub r_approx: f64,
    pub big_r_approx: f64,
    pub gamma_multiplicity: usize,
    pub window: [usize; 2],
    pub window_is_full: bool,
    pub cauchy_bound: f64,
}

impl BoundsView {
    pub fn new(b: &AnnulusBounds, cauchy_bound: f64) -> Self {
        Self {
            r: rational_string(&b.r),
            big_r: rational_string(&b.big_r),
            r_approx: b.r_f64(),
            big_r_approx: b.big_r_f64(),
            gamma_multiplicity: b.gamma_multiplicity,
            window: [b.window.0, b.window.1],
            window_is_full: b.window_is_full,
            cauchy_bound,
        }
    }
}

pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSummary {
    pub converged: bool,
    pub iterations_used: usize,
    pub zero_multiplicity: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub min_nonzero_modulus: Option<f64>,
    pub max_nonzero_modulus: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootRow {
    pub re: f64,
    pub im: f64,
    /// `None` when the solver could not evaluate the root.
    pub residual: Option<f64>,
}

pub fn root_rows(rs: &RootSet) -> Vec<RootRow> {
    rs.roots
        .iter()
        .zip(&rs.residuals)
        .map(|(z, &res)| RootRow {
            re: z.re,
            im: z.im,
            residual: res.is_finite().then_some(res),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub claim_id: String,
    pub kind: String,
    pub status: String,
    pub detail: String,
}

impl Discrepancy {
    pub fn new(claim_id: &str, published: bool, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            claim_id: claim_id.into(),
            kind: if published { "published" } else { "corrected" }.into(),
            status: if ok { "verified" } else { "discrepant" }.into(),
            detail: detail.into(),
        }
    }
}

/// Result of a `verify` sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub command: String,
    pub range: [u64; 2],
    pub brute: bool,
    pub brute_g2: bool,
    pub corrected_ok: bool,
    pub verified: usize,
    pub discrepant: usize,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u64,
    pub claim_id: String,
    pub kind: String,
    pub status: String,
    pub detail: String,
}

impl From<&ClaimRow> for SweepRow {
    fn from(r: &ClaimRow) -> Self {
        Self {
            n: r.n,
            claim_id: r.claim_id.clone(),
            kind: r.kind.name().into(),
            status: r.status.name().into(),
            detail: r.detail.clone(),
        }
    }
}

pub fn coefficient_strings(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

/// Inverse of [`coefficient_strings`].
pub fn parse_coefficients(c: &[String]) -> Option<IntPoly> {
    c.iter()
        .map(|s| s.parse::<BigInt>().ok())
        .collect::<Option<Vec<_>>>()
        .map(IntPoly::from_coeffs)
}

pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
