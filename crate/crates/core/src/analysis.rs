//! Coefficient-shape checks and root location.
//!
//! Shape checks run in exact integer arithmetic. Root finding switches to
//! `f64` only after the `x^γ` factor is divided out and the remaining
//! coefficients are scaled by their largest magnitude.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::polynomial::IntPoly;
use crate::{Error, Result};

/// Coefficient-sequence shape over indices `0..=degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub unimodal: bool,
    /// Every index inside a local-maximum plateau.
    pub mode_indices: Vec<usize>,
    /// Local-maximum plateaus after equal neighbors are merged. A monotone
    /// sequence has one; unimodal iff at most one.
    pub oscillations: usize,
    /// Strict rise/fall direction changes after plateau merging.
    pub direction_reversals: usize,
    pub log_concave: bool,
    pub first_log_concavity_violation: Option<usize>,
    pub newton_satisfied: bool,
    pub first_newton_violation: Option<usize>,
}

pub fn shape_analyze(p: &IntPoly) -> Result<ShapeReport> {
    if p.is_zero() {
        return Err(Error::InvalidArgument(
            "shape of the zero polynomial is undefined".into(),
        ));
    }
    if p.has_negative_coeff() {
        return Err(Error::InvalidArgument(
            "polynomial has a negative coefficient".into(),
        ));
    }
    let e = p.coeffs();
    let d = e.len() - 1;

    // Plateaus as (start, end_inclusive).
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for i in 0..=d {
        match runs.last_mut() {
            Some(run) if e[run.1] == e[i] => run.1 = i,
            _ => runs.push((i, i)),
        }
    }
    let value = |run: &(usize, usize)| &e[run.0];
    let rising: Vec<bool> = runs
        .windows(2)
        .map(|w| value(&w[1]) > value(&w[0]))
        .collect();
    let direction_reversals = rising.windows(2).filter(|w| w[0] != w[1]).count();

    let mut mode_indices = Vec::new();
    let mut oscillations = 0;
    for (k, run) in runs.iter().enumerate() {
        let above_prev = k == 0 || value(&runs[k - 1]) < value(run);
        let above_next = k + 1 == runs.len() || value(&runs[k + 1]) < value(run);
        if above_prev && above_next {
            oscillations += 1;
            mode_indices.extend(run.0..=run.1);
        }
    }

    let first_log_concavity_violation = (1..d).find(|&i| &e[i] * &e[i] < &e[i - 1] * &e[i + 1]);
    let first_newton_violation = (1..d).find(|&i| {
        let lhs = &e[i] * &e[i] * BigInt::from(i) * BigInt::from(d - i);
        let rhs = &e[i - 1] * &e[i + 1] * BigInt::from(i + 1) * BigInt::from(d - i + 1);
        lhs < rhs
    });

    Ok(ShapeReport {
        unimodal: oscillations <= 1,
        mode_indices,
        oscillations,
        direction_reversals,
        log_concave: first_log_concavity_violation.is_none(),
        first_log_concavity_violation,
        newton_satisfied: first_newton_violation.is_none(),
        first_newton_violation,
    })
}

/// Eneström–Kakeya annulus `r ≤ |z| ≤ R` for the zeros of `p / x^γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnulusBounds {
    pub r: BigRational,
    pub big_r: BigRational,
    /// Multiplicity of the root at zero.
    pub gamma_multiplicity: usize,
    /// Positive-coefficient window `[start, end]` of the cofactor that the
    /// ratios were taken over.
    pub window: (usize, usize),
    /// False when interior zeros forced a narrower window.
    pub window_is_full: bool,
}

impl AnnulusBounds {
    pub fn r_f64(&self) -> f64 {
        self.r.to_f64().unwrap_or(f64::NAN)
    }

    pub fn big_r_f64(&self) -> f64 {
        self.big_r.to_f64().unwrap_or(f64::NAN)
    }
}

/// `r` and `R` are the min and max of `e_i / e_{i+1}` over the cofactor left
/// after removing `x^γ`.
pub fn enestrom_kakeya(p: &IntPoly) -> Result<AnnulusBounds> {
    if p.has_negative_coeff() {
        return Err(Error::InvalidArgument(
            "annulus needs nonnegative coefficients".into(),
        ));
    }
    let gamma = p.lowest_degree().ok_or_else(|| {
        Error::InvalidArgument("annulus of the zero polynomial is undefined".into())
    })?;
    let cofactor = p.unshift(gamma);
    let c = cofactor.coeffs();

    let mut best = (0usize, 0usize);
    let mut start = None;
    for i in 0..=c.len() {
        let positive = i < c.len() && c[i].is_positive();
        match (positive, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if i - s > best.1 + 1 - best.0 {
                    best = (s, i - 1);
                }
                start = None;
            }
            _ => {}
        }
    }
    if best.1 == best.0 {
        return Err(Error::InvalidArgument(
            "annulus needs at least two consecutive positive coefficients".into(),
        ));
    }
    let ratios = (best.0..best.1).map(|i| BigRational::new(c[i].clone(), c[i + 1].clone()));
    let (mut r, mut big_r): (Option<BigRational>, Option<BigRational>) = (None, None);
    for q in ratios {
        if r.as_ref().is_none_or(|m| q < *m) {
            r = Some(q.clone());
        }
        if big_r.as_ref().is_none_or(|m| q > *m) {
            big_r = Some(q);
        }
    }
    Ok(AnnulusBounds {
        r: r.unwrap_or_default(),
        big_r: big_r.unwrap_or_default(),
        gamma_multiplicity: gamma,
        window: best,
        window_is_full: best == (0, c.len() - 1),
    })
}

/// `(p(p-1) + 2αp + α(α-1)) / (2(α+p))` with `α = p^{m-1}`: the ratio of the
/// `x^{α+p-2}` and `x^{α+p-1}` coefficients of the as-printed prime-power
/// polynomial.
pub fn prime_power_r(p: u64, m: u32) -> Result<BigRational> {
    if m < 2 {
        return Err(Error::ShapeMismatch(alloc::format!(
            "exponent {m} is below 2"
        )));
    }
    let p = BigInt::from(p);
    let alpha = p.pow(m - 1);
    let num = &p * (&p - 1) + BigInt::from(2) * &alpha * &p + &alpha * (&alpha - 1);
    let den = BigInt::from(2) * (&alpha + &p);
    Ok(BigRational::new(num, den))
}

/// `1 + max_{i<d} |a_i| / |a_d|`. Infinite when the ratio overflows `f64`.
pub fn cauchy_bound(p: &IntPoly) -> Result<f64> {
    let lead = p
        .leading()
        .ok_or_else(|| Error::InvalidArgument("Cauchy bound of the zero polynomial".into()))?
        .abs();
    let c = p.coeffs();
    let max = c[..c.len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    Ok(1.0
        + BigRational::new(max, lead)
            .to_f64()
            .unwrap_or(f64::INFINITY))
}

/// Numerical roots of an integer polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    /// The `zero_multiplicity` exact zeros first, then the rest ordered by
    /// real then imaginary part.
    pub roots: Vec<Complex64>,
    /// Backward error `|p(z)| / Σ|a_i||z|^i` per root.
    pub residuals: Vec<f64>,
    pub zero_multiplicity: usize,
    pub iterations_used: usize,
    pub converged: bool,
}

pub const MAX_ROOT_DEGREE: usize = 2000;
const ANGLE_OFFSET: f64 = 0.4;
/// Extra sweeps once every residual is below `tol`. A small backward error
/// can still leave a large forward error on ill-conditioned roots.
const POLISH_SWEEPS: usize = 4;

/// Deflates `x^γ`, then runs Aberth–Ehrlich iteration with Jacobi-style
/// sweeps from equally spaced starts on a circle of radius `cauchy/2`.
///
/// Not converging within `max_iter` sweeps is reported through
/// `converged = false`, not as an error.
pub fn find_roots(p: &IntPoly, tol: f64, max_iter: usize) -> Result<RootSet> {
    let degree = match p.degree() {
        Some(d) if (1..=MAX_ROOT_DEGREE).contains(&d) => d,
        _ => {
            return Err(Error::InvalidArgument(alloc::format!(
                "root finding needs degree in 1..={MAX_ROOT_DEGREE}"
            )))
        }
    };
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let gamma = p.lowest_degree().unwrap_or(0);
    let cofactor = p.unshift(gamma);
    let m = degree - gamma;
    let mut out = RootSet {
        roots: alloc::vec![Complex64::new(0.0, 0.0); gamma],
        residuals: alloc::vec![0.0; gamma],
        zero_multiplicity: gamma,
        iterations_used: 0,
        converged: true,
    };
    if m == 0 {
        return Ok(out);
    }

    let scale = cofactor
        .coeffs()
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    let coeffs: Vec<DoubleF64> = cofactor
        .coeffs()
        .iter()
        .map(|c| DoubleF64::from_ratio(c, &scale))
        .collect();
    let underflow = cofactor
        .coeffs()
        .iter()
        .zip(&coeffs)
        .any(|(c, f)| !c.is_zero() && (f.hi == 0.0 || !f.hi.is_finite()));
    let bound = 1.0
        + coeffs[..m]
            .iter()
            .fold(0.0f64, |a, c| a.max(libm::fabs(c.hi)))
            / libm::fabs(coeffs[m].hi);
    let radius = bound / 2.0;

    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / m as f64 + ANGLE_OFFSET;
            Complex64::new(radius * libm::cos(theta), radius * libm::sin(theta))
        })
        .collect();
    if underflow || !bound.is_finite() {
        out.roots.extend(z);
        out.residuals.extend(core::iter::repeat_n(f64::INFINITY, m));
        out.converged = false;
        return Ok(out);
    }

    let eval = Evaluator { coeffs: &coeffs };
    let mut residuals: Vec<f64> = z.iter().map(|&zk| eval.residual(zk)).collect();
    let mut settled = false;
    let mut iterations = 0;
    let mut polish = 0;
    while iterations < max_iter && polish < POLISH_SWEEPS {
        let (next, largest_step) = aberth_sweep(&eval, &z);
        z = next;
        iterations += 1;
        residuals = z.iter().map(|&zk| eval.residual(zk)).collect();
        settled = largest_step < tol;
        if settled && residuals.iter().all(|&r| r < tol) {
            polish += 1;
        }
    }
    let converged = settled && residuals.iter().all(|&r| r < tol);

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        z[a].re
            .total_cmp(&z[b].re)
            .then(z[a].im.total_cmp(&z[b].im))
    });
    out.roots.extend(order.iter().map(|&i| z[i]));
    out.residuals.extend(order.iter().map(|&i| residuals[i]));
    out.iterations_used = iterations;
    out.converged = converged;
    Ok(out)
}

/// One Jacobi-style Aberth update of every approximation, with the largest
/// correction relative to `max(1, |z|)`.
fn aberth_sweep(eval: &Evaluator<'_>, z: &[Complex64]) -> (Vec<Complex64>, f64) {
    let mut largest = 0.0f64;
    let next = (0..z.len())
        .map(|k| {
            let zk = z[k];
            let w = eval.newton_step(zk);
            let repulsion: Complex64 = (0..z.len())
                .filter(|&j| j != k)
                .map(|j| (zk - z[j]).inv())
                .sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                largest = largest.max(step.norm() / zk.norm().max(1.0));
                zk - step
            } else {
                largest = f64::INFINITY;
                zk
            }
        })
        .collect();
    (next, largest)
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DoubleF64 {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> DoubleF64 {
    let s = a + b;
    let bb = s - a;
    DoubleF64 {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

fn two_prod(a: f64, b: f64) -> DoubleF64 {
    let p = a * b;
    DoubleF64 {
        hi: p,
        lo: libm::fma(a, b, -p),
    }
}

impl DoubleF64 {
    const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    fn from_ratio(c: &BigInt, scale: &BigInt) -> Self {
        let exact = BigRational::new(c.clone(), scale.clone());
        let hi = exact.to_f64().unwrap_or(0.0);
        let lo = BigRational::from_float(hi)
            .map(|h| (exact - h).to_f64().unwrap_or(0.0))
            .unwrap_or(0.0);
        Self { hi, lo }
    }

    fn add(self, o: Self) -> Self {
        let s = two_sum(self.hi, o.hi);
        let lo = s.lo + self.lo + o.lo;
        let hi = s.hi + lo;
        Self {
            hi,
            lo: lo - (hi - s.hi),
        }
    }

    fn mul_f64(self, b: f64) -> Self {
        let p = two_prod(self.hi, b);
        let lo = p.lo + self.lo * b;
        let hi = p.hi + lo;
        Self {
            hi,
            lo: lo - (hi - p.hi),
        }
    }

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// Complex value with double-double parts; multiplied only by `f64` points.
#[derive(Debug, Clone, Copy)]
struct ComplexDd {
    re: DoubleF64,
    im: DoubleF64,
}

impl ComplexDd {
    const ZERO: Self = Self {
        re: DoubleF64::ZERO,
        im: DoubleF64::ZERO,
    };

    fn mul_add(self, y: Complex64, c: Self) -> Self {
        Self {
            re: self
                .re
                .mul_f64(y.re)
                .add(self.im.mul_f64(y.im).neg())
                .add(c.re),
            im: self.re.mul_f64(y.im).add(self.im.mul_f64(y.re)).add(c.im),
        }
    }

    fn value(self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Compensated Horner evaluation that switches to the reversed polynomial in
/// `1/z` outside the unit disc so large moduli never overflow.
struct Evaluator<'a> {
    coeffs: &'a [DoubleF64],
}

impl Evaluator<'_> {
    /// `(q(y), q'(y), Σ|a_i||y|^i)` for the coefficient order given.
    fn horner<'b>(
        iter: impl Iterator<Item = &'b DoubleF64>,
        y: Complex64,
    ) -> (Complex64, Complex64, f64) {
        let ay = y.norm();
        let mut v = ComplexDd::ZERO;
        let mut dv = ComplexDd::ZERO;
        let mut mag = 0.0;
        for &c in iter {
            dv = dv.mul_add(y, v);
            v = v.mul_add(
                y,
                ComplexDd {
                    re: c,
                    im: DoubleF64::ZERO,
                },
            );
            mag = mag * ay + libm::fabs(c.hi);
        }
        (v.value(), dv.value(), mag)
    }

    /// `p(z) / p'(z)`.
    fn newton_step(&self, z: Complex64) -> Complex64 {
        if z.norm() <= 1.0 {
            let (v, dv, _) = Self::horner(self.coeffs.iter().rev(), z);
            v / dv
        } else {
            // p(z) = z^d q(1/z) with q the reversed polynomial, so
            // p/p' = z q(y) / (d q(y) - y q'(y)) at y = 1/z.
            let d = (self.coeffs.len() - 1) as f64;
            let y = z.inv();
            let (v, dv, _) = Self::horner(self.coeffs.iter(), y);
            z * v / (v * d - y * dv)
        }
    }

    fn residual(&self, z: Complex64) -> f64 {
        let (v, _, mag) = if z.norm() <= 1.0 {
            Self::horner(self.coeffs.iter().rev(), z)
        } else {
            Self::horner(self.coeffs.iter(), z.inv())
        };
        if mag == 0.0 {
            0.0
        } else {
            v.norm() / mag
        }
    }
}

/// Consistency checks of a root set against its polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct RootClaims {
    /// Indices of nonzero roots outside `[r - ε, R + ε]`, `ε = 1e-9·R`.
    pub annulus_violations: Vec<usize>,
    pub min_nonzero_modulus: f64,
    pub max_nonzero_modulus: f64,
    pub vieta_sum: Complex64,
    pub vieta_sum_expected: f64,
    pub vieta_sum_ok: bool,
    /// `|Π z / expected - 1|` over nonzero roots.
    pub vieta_product_rel_error: f64,
    pub vieta_product_ok: bool,
    /// Indices of non-real roots with no conjugate partner.
    pub unpaired: Vec<usize>,
}

impl RootClaims {
    pub fn all_ok(&self) -> bool {
        self.annulus_violations.is_empty()
            && self.vieta_sum_ok
            && self.vieta_product_ok
            && self.unpaired.is_empty()
    }
}

pub const VIETA_REL_TOL: f64 = 1e-6;
pub const PAIRING_TOL: f64 = 1e-6;

pub fn verify_root_claims(
    p: &IntPoly,
    roots: &RootSet,
    bounds: &AnnulusBounds,
) -> Result<RootClaims> {
    let d = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidArgument("root claims need degree at least 1".into()))?;
    if roots.roots.len() != d {
        return Err(Error::InvalidArgument(alloc::format!(
            "{} roots supplied for a degree-{d} polynomial",
            roots.roots.len()
        )));
    }
    let gamma = roots.zero_multiplicity;
    let nonzero = &roots.roots[gamma..];
    let (r, big_r) = (bounds.r_f64(), bounds.big_r_f64());
    let eps = 1e-9 * big_r;
    let annulus_violations = nonzero
        .iter()
        .enumerate()
        .filter(|(_, z)| {
            let m = z.norm();
            !(m >= r - eps && m <= big_r + eps)
        })
        .map(|(i, _)| gamma + i)
        .collect();
    let moduli = nonzero.iter().map(|z| z.norm());
    let min_nonzero_modulus = moduli.clone().fold(f64::INFINITY, f64::min);
    let max_nonzero_modulus = moduli.fold(0.0, f64::max);

    let c = p.coeffs();
    let lead = &c[d];
    let vieta_sum_expected = -BigRational::new(c[d - 1].clone(), lead.clone())
        .to_f64()
        .unwrap_or(f64::NAN);
    let vieta_sum: Complex64 = roots.roots.iter().sum();
    let sum_err = (vieta_sum - vieta_sum_expected).norm();
    let vieta_sum_ok = sum_err <= VIETA_REL_TOL * libm::fabs(vieta_sum_expected).max(1.0);

    // Product of nonzero roots is (-1)^{d-γ} a_γ / a_d, compared in log form.
    let expected = BigRational::new(c[gamma].clone(), lead.clone());
    let expected_neg = (expected.is_negative()) ^ ((d - gamma) % 2 == 1);
    let expected_ln = ln_abs_ratio(&expected);
    let (ln_mod, arg) = nonzero.iter().fold((0.0, 0.0), |(l, a), z| {
        (l + libm::log(z.norm()), a + libm::atan2(z.im, z.re))
    });
    let arg_expected = if expected_neg { PI } else { 0.0 };
    let ratio = Complex64::from_polar(libm::exp(ln_mod - expected_ln), arg - arg_expected);
    let vieta_product_rel_error = (ratio - 1.0).norm();
    let vieta_product_ok = vieta_product_rel_error <= VIETA_REL_TOL;

    let mut used = alloc::vec![false; nonzero.len()];
    let mut unpaired = Vec::new();
    for k in 0..nonzero.len() {
        if used[k] {
            continue;
        }
        let z = nonzero[k];
        let tol = PAIRING_TOL * z.norm().max(1.0);
        if libm::fabs(z.im) <= tol {
            used[k] = true;
            continue;
        }
        let partner = (0..nonzero.len())
            .filter(|&j| j != k && !used[j])
            .map(|j| (j, (nonzero[j] - z.conj()).norm()))
            .filter(|&(_, dist)| dist <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        used[k] = true;
        match partner {
            Some((j, _)) => used[j] = true,
            None => unpaired.push(gamma + k),
        }
    }

    Ok(RootClaims {
        annulus_violations,
        min_nonzero_modulus,
        max_nonzero_modulus,
        vieta_sum,
        vieta_sum_expected,
        vieta_sum_ok,
        vieta_product_rel_error,
        vieta_product_ok,
        unpaired,
    })
}

fn ln_abs_ratio(q: &BigRational) -> f64 {
    let ln_int = |x: &BigInt| -> f64 {
        let bits = x.bits();
        if bits <= 1000 {
            libm::log(libm::fabs(x.to_f64().unwrap_or(f64::NAN)))
        } else {
            let shift = bits - 64;
            let top: BigInt = x.abs() >> shift;
            libm::log(top.to_f64().unwrap_or(f64::NAN)) + shift as f64 * core::f64::consts::LN_2
        }
    };
    ln_int(q.numer()) - ln_int(q.denom())
}

/// Result of matching a computed root list against a reference list.
#[derive(Debug, Clone, PartialEq)]
pub struct RootListMatch {
    pub computed: usize,
    pub reference: usize,
    /// Largest per-coordinate distance over a greedy nearest pairing; `None`
    /// when the counts differ.
    pub max_coordinate_error: Option<f64>,
    pub matches: bool,
}

/// Pairs each reference value with its nearest unused computed root and
/// checks every real/imaginary coordinate difference is at most `tol`.
pub fn match_root_list(computed: &[Complex64], reference: &[Complex64], tol: f64) -> RootListMatch {
    if computed.len() != reference.len() {
        return RootListMatch {
            computed: computed.len(),
            reference: reference.len(),
            max_coordinate_error: None,
            matches: false,
        };
    }
    let mut used = alloc::vec![false; computed.len()];
    let mut worst = 0.0f64;
    for r in reference {
        let best = (0..computed.len())
            .filter(|&j| !used[j])
            .map(|j| {
                let d = computed[j] - r;
                (j, libm::fabs(d.re).max(libm::fabs(d.im)))
            })
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((j, err)) = best {
            used[j] = true;
            worst = worst.max(err);
        }
    }
    RootListMatch {
        computed: computed.len(),
        reference: reference.len(),
        max_coordinate_error: Some(worst),
        matches: worst <= tol,
    }
}
