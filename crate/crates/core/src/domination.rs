//! Domination polynomials, computed three independent ways.
//!
//! * [`BruteForce`] enumerates every vertex subset of an explicit graph.
//! * [`blowup_domination`] sums over subsets of divisor classes only, which is
//!   exponential in the number of proper divisors instead of in `n`.
//! * The `closed_*` functions evaluate the known formulas for special shapes
//!   of `n`, including the as-printed variants that [`crate::verify`] arbitrates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numtheory::{euler_phi, factorize, is_prime};
use crate::polynomial::IntPoly;
use crate::ringgraph::{build_blowup_spec, build_comaximal, BlowupSpec, SimpleGraph};
use crate::{Error, Result};

/// Largest graph the subset enumeration accepts.
pub const BRUTE_FORCE_CAP: usize = 30;
/// Largest number of divisor classes the blow-up sum accepts.
pub const CLASS_CAP: usize = 24;

const LOW_BITS: usize = 16;

/// Subset enumeration split as `S = high | low`: closed-neighborhood covers of
/// every low subset are tabulated once, then each high subset scans the table.
///
/// The high range can be partitioned freely; per-size counts from disjoint
/// ranges add up to the same totals.
#[derive(Debug, Clone)]
pub struct BruteForce {
    order: usize,
    low_bits: usize,
    full: u64,
    high_masks: Vec<u64>,
    low_cover: Vec<u64>,
    low_pop: Vec<u8>,
}

impl BruteForce {
    pub fn new(g: &SimpleGraph) -> Result<Self> {
        let order = g.order();
        if order > BRUTE_FORCE_CAP {
            return Err(Error::GraphTooLarge {
                order,
                cap: BRUTE_FORCE_CAP,
            });
        }
        let masks = g.closed_neighborhoods().unwrap_or_default();
        let low_bits = order.min(LOW_BITS);
        let mut low_cover = alloc::vec![0u64; 1 << low_bits];
        let mut low_pop = alloc::vec![0u8; 1 << low_bits];
        for s in 1usize..1 << low_bits {
            let bit = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            low_cover[s] = low_cover[rest] | masks[bit];
            low_pop[s] = low_pop[rest] + 1;
        }
        Ok(Self {
            order,
            low_bits,
            full: if order == 64 {
                u64::MAX
            } else {
                (1u64 << order) - 1
            },
            high_masks: masks[low_bits..].to_vec(),
            low_cover,
            low_pop,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of high-part subsets; valid ranges lie in `0..high_count()`.
    pub fn high_count(&self) -> u64 {
        1 << (self.order - self.low_bits)
    }

    /// Dominating-set counts by size over high subsets in `range`.
    pub fn count_range(&self, range: Range<u64>) -> Vec<u64> {
        let mut counts = alloc::vec![0u64; self.order + 1];
        for high in range {
            let mut cover = 0u64;
            let mut h = high;
            while h != 0 {
                cover |= self.high_masks[h.trailing_zeros() as usize];
                h &= h - 1;
            }
            let need = self.full & !cover;
            let base = high.count_ones() as usize;
            for (lc, &lp) in self.low_cover.iter().zip(&self.low_pop) {
                if lc & need == need {
                    counts[base + lp as usize] += 1;
                }
            }
        }
        counts
    }

    pub fn finish(counts: &[u64]) -> IntPoly {
        IntPoly::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// `D(G, x)` by enumerating all `2^|V|` subsets.
pub fn brute_force_counts(g: &SimpleGraph) -> Result<IntPoly> {
    let bf = BruteForce::new(g)?;
    Ok(BruteForce::finish(&bf.count_range(0..bf.high_count())))
}

/// `D(G1 ∪ G2) = D(G1) · D(G2)`.
pub fn union_compose(d1: &IntPoly, d2: &IntPoly) -> IntPoly {
    d1 * d2
}

/// `D(G1 ∨ G2) = ((1+x)^|G1| - 1)((1+x)^|G2| - 1) + D(G1) + D(G2)`.
///
/// A side of order zero is the empty graph and leaves the other operand as is.
pub fn join_compose(d1: &IntPoly, order1: usize, d2: &IntPoly, order2: usize) -> IntPoly {
    if order1 == 0 {
        return d2.clone();
    }
    if order2 == 0 {
        return d1.clone();
    }
    IntPoly::complete_graph(order1) * IntPoly::complete_graph(order2) + d1 + d2
}

/// `D(G_2, x)` for the blow-up of `G_n` over all proper-divisor classes.
///
/// A dominating set hits some set `T` of classes. Every class outside `T`
/// needs a `G_n`-neighbor in `T`; a class inside `T` with such a neighbor may
/// be hit by any nonempty subset, and one without must be taken whole.
pub fn blowup_g2(spec: &BlowupSpec) -> Result<IntPoly> {
    let t = spec.class_count();
    if t > CLASS_CAP {
        return Err(Error::TooManyClasses {
            classes: t,
            cap: CLASS_CAP,
        });
    }
    let nbr = spec.neighbor_masks();
    // Visit classes in ascending size so collected sizes come out sorted.
    let mut by_size: Vec<usize> = (0..t).collect();
    by_size.sort_by_key(|&i| (spec.class_sizes[i], i));

    // key = [total size of fully-taken classes, sizes of freely-hit classes...]
    let mut terms: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut key: Vec<u64> = Vec::with_capacity(t + 1);
    for set in 0u64..1 << t {
        let dominated = (0..t).all(|j| set >> j & 1 == 1 || nbr[j] & set != 0);
        if !dominated {
            continue;
        }
        key.clear();
        key.push(0);
        for &i in &by_size {
            if set >> i & 1 == 1 {
                if nbr[i] & set != 0 {
                    key.push(spec.class_sizes[i]);
                } else {
                    key[0] += spec.class_sizes[i];
                }
            }
        }
        match terms.get_mut(key.as_slice()) {
            Some(c) => *c += 1,
            None => {
                terms.insert(key.clone(), 1);
            }
        }
    }

    let mut complete_cache: BTreeMap<u64, IntPoly> = BTreeMap::new();
    let mut total = IntPoly::zero();
    for (key, count) in terms {
        let mut term = IntPoly::one();
        for &m in &key[1..] {
            let f = complete_cache
                .entry(m)
                .or_insert_with(|| IntPoly::complete_graph(m as usize));
            term = term * &*f;
        }
        total = total + term.shift(key[0] as usize).scale(&BigInt::from(count));
    }
    Ok(total)
}

/// Assemble `D(Γ(Z_n))` as `K_φ(n) ∨ ({0} ∪ G_2)` from `D(G_2)`.
pub fn assemble_comaximal(spec: &BlowupSpec, g2: &IntPoly) -> IntPoly {
    let h = union_compose(&IntPoly::monomial(1), g2);
    let h_order = 1 + spec.g2_order() as usize;
    let units = spec.unit_count as usize;
    join_compose(&IntPoly::complete_graph(units), units, &h, h_order)
}

/// `D(Γ(Z_n), x)` through the class blow-up.
pub fn blowup_domination(spec: &BlowupSpec) -> Result<IntPoly> {
    Ok(assemble_comaximal(spec, &blowup_g2(spec)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    /// Resolves to [`Method::Blowup`].
    Auto,
    Brute,
    Blowup,
    ClosedPrime,
    ClosedPrimePower,
    ClosedPrimePowerPublished,
    ClosedPq,
    ClosedPqPowers,
    ClosedPqPowersPublished,
    G2PqrPublished,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Brute => "brute",
            Method::Blowup => "blowup",
            Method::ClosedPrime => "closed_prime",
            Method::ClosedPrimePower => "closed_prime_power",
            Method::ClosedPrimePowerPublished => "closed_prime_power_published",
            Method::ClosedPq => "closed_pq",
            Method::ClosedPqPowers => "closed_pq_powers",
            Method::ClosedPqPowersPublished => "closed_pq_powers_published",
            Method::G2PqrPublished => "g2_pqr_published",
        }
    }

    /// Methods reproducing a printed formula verbatim, flaws included.
    pub fn is_published_variant(self) -> bool {
        matches!(
            self,
            Method::ClosedPrimePowerPublished
                | Method::ClosedPqPowersPublished
                | Method::G2PqrPublished
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationResult {
    pub n: u64,
    pub method: Method,
    pub polynomial: IntPoly,
    /// Lowest index with a nonzero coefficient.
    pub gamma: usize,
    /// Whether the degree equals `n`. Only as-printed variants may fail this.
    pub degree_matches_order: bool,
}

pub fn comaximal_domination(n: u64, method: Method) -> Result<DominationResult> {
    let f = factorize(n)?;
    let method = if method == Method::Auto {
        Method::Blowup
    } else {
        method
    };
    let polynomial = match method {
        Method::Auto | Method::Blowup => blowup_domination(&build_blowup_spec(n)?)?,
        Method::Brute => {
            if n as usize > BRUTE_FORCE_CAP {
                return Err(Error::GraphTooLarge {
                    order: n as usize,
                    cap: BRUTE_FORCE_CAP,
                });
            }
            brute_force_counts(&build_comaximal(n)?)?
        }
        Method::ClosedPrime => closed_prime(n)?,
        Method::ClosedPrimePower | Method::ClosedPrimePowerPublished => {
            let (p, m) = f.as_prime_power().filter(|&(_, m)| m >= 2).ok_or_else(|| {
                Error::ShapeMismatch(format!("{n} is not a prime power p^m with m >= 2"))
            })?;
            let variant = if method == Method::ClosedPrimePower {
                PrimePowerVariant::Corrected
            } else {
                PrimePowerVariant::Published
            };
            closed_prime_power(p, m, variant)?
        }
        Method::ClosedPq => match f.factors() {
            [(p, 1), (q, 1)] => closed_pq(*p, *q)?,
            _ => {
                return Err(Error::ShapeMismatch(format!(
                    "{n} is not a product pq of two distinct primes"
                )))
            }
        },
        Method::ClosedPqPowers => match f.factors() {
            [(p, a), (q, b)] => closed_pq_powers(*p, *a, *q, *b)?,
            _ => {
                return Err(Error::ShapeMismatch(format!(
                    "{n} does not have exactly two distinct prime factors"
                )))
            }
        },
        Method::ClosedPqPowersPublished => match f.factors() {
            [(p, a), (q, b)] => closed_pq_powers_published(*p, *a, *q, *b)?,
            _ => {
                return Err(Error::ShapeMismatch(format!(
                    "{n} does not have exactly two distinct prime factors"
                )))
            }
        },
        Method::G2PqrPublished => match f.factors() {
            [(p, 1), (q, 1), (r, 1)] => {
                let g2 = g2_pqr_published(*p, *q, *r)?;
                let n = n as usize;
                IntPoly::binomial_power(n) - IntPoly::binomial_power(n - f.euler_phi() as usize)
                    + g2.shift(1)
            }
            _ => {
                return Err(Error::ShapeMismatch(format!(
                    "{n} is not a product pqr of three distinct primes"
                )))
            }
        },
    };
    let gamma = polynomial.lowest_degree().unwrap_or(0);
    let degree_matches_order = polynomial.degree() == Some(n as usize);
    Ok(DominationResult {
        n,
        method,
        polynomial,
        gamma,
        degree_matches_order,
    })
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!("{p} is not prime")))
    }
}

/// `(1+x)^p - 1`.
pub fn closed_prime(p: u64) -> Result<IntPoly> {
    require_prime(p)?;
    Ok(IntPoly::complete_graph(p as usize))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimePowerVariant {
    /// `(1+x)^{p^m} - (1+x)^{p^{m-1}} + x^{p^{m-1}}`.
    Corrected,
    /// `(1+x)^{p^{m-1}}((1+x)^p - 1) + x^{p^{m-1}}`, as printed. Equal to the
    /// corrected form only for `m = 2`.
    Published,
}

pub fn closed_prime_power(p: u64, m: u32, variant: PrimePowerVariant) -> Result<IntPoly> {
    require_prime(p)?;
    if m < 2 {
        return Err(Error::ShapeMismatch(format!("exponent {m} is below 2")));
    }
    let alpha = p.pow(m - 1) as usize;
    Ok(match variant {
        PrimePowerVariant::Corrected => {
            IntPoly::binomial_power(p.pow(m) as usize) - IntPoly::binomial_power(alpha)
                + IntPoly::monomial(alpha)
        }
        PrimePowerVariant::Published => {
            IntPoly::binomial_power(alpha) * IntPoly::complete_graph(p as usize)
                + IntPoly::monomial(alpha)
        }
    })
}

fn require_prime_pair(p: u64, q: u64) -> Result<()> {
    require_prime(p)?;
    require_prime(q)?;
    if p >= q {
        return Err(Error::ShapeMismatch(format!(
            "primes must satisfy p < q, got {p} and {q}"
        )));
    }
    Ok(())
}

/// `(1+x)^{pq} - (1+x)^{p+q-1} + x((1+x)^{p-1} - 1)((1+x)^{q-1} - 1) + x^p + x^q`.
pub fn closed_pq(p: u64, q: u64) -> Result<IntPoly> {
    require_prime_pair(p, q)?;
    let (p, q) = (p as usize, q as usize);
    Ok(
        IntPoly::binomial_power(p * q) - IntPoly::binomial_power(p + q - 1)
            + (IntPoly::complete_graph(p - 1) * IntPoly::complete_graph(q - 1)).shift(1)
            + IntPoly::monomial(p)
            + IntPoly::monomial(q),
    )
}

/// `n = p^a q^b`:
/// `(1+x)^n - (1+x)^{n-φ(n)} + x^{n/pq}[((1+x)^{s} - 1)((1+x)^{t} - 1) + x^{s} + x^{t}]`
/// with `s = n(q-1)/pq` and `t = n(p-1)/pq`. The `a = b = 1` case is [`closed_pq`].
///
/// The `n/pq` isolated vertices of `{0} ∪ G_2` multiply every dominating set
/// of the bipartite part, including the two one-side-only terms.
pub fn closed_pq_powers(p: u64, a: u32, q: u64, b: u32) -> Result<IntPoly> {
    pq_powers(p, a, q, b, PrimePowerVariant::Corrected)
}

/// The two-prime-power formula as printed: `x^{n/pq}` multiplies only the
/// product term, so `x^{s} + x^{t}` stand unshifted.
pub fn closed_pq_powers_published(p: u64, a: u32, q: u64, b: u32) -> Result<IntPoly> {
    pq_powers(p, a, q, b, PrimePowerVariant::Published)
}

fn pq_powers(p: u64, a: u32, q: u64, b: u32, variant: PrimePowerVariant) -> Result<IntPoly> {
    require_prime_pair(p, q)?;
    if a == 0 || b == 0 {
        return Err(Error::ShapeMismatch("exponents must be positive".into()));
    }
    if a == 1 && b == 1 && variant == PrimePowerVariant::Corrected {
        return closed_pq(p, q);
    }
    let n = p.pow(a) * q.pow(b);
    let phi = euler_phi(n);
    let isolated = (n / (p * q)) as usize;
    let q_side = isolated * (q as usize - 1);
    let p_side = isolated * (p as usize - 1);
    let n = n as usize;
    let bipartite = IntPoly::complete_graph(q_side) * IntPoly::complete_graph(p_side);
    let singles = IntPoly::monomial(q_side) + IntPoly::monomial(p_side);
    let tail = match variant {
        PrimePowerVariant::Corrected => (bipartite + singles).shift(isolated),
        PrimePowerVariant::Published => bipartite.shift(isolated) + singles,
    };
    Ok(IntPoly::binomial_power(n) - IntPoly::binomial_power(n - phi as usize) + tail)
}

fn require_prime_triple(p: u64, q: u64, r: u64) -> Result<()> {
    require_prime_pair(p, q)?;
    require_prime_pair(q, r)
}

/// The printed three-factor product for `D(G_2)` when `n = pqr`:
/// `Π ((1+x)^{φ(d)} - 1)(1+x)^{φ(d')} + x^{φ(d')}` over the pairs
/// `(d, d') ∈ {(pq, r), (pr, q), (qr, p)}`.
pub fn g2_pqr_published(p: u64, q: u64, r: u64) -> Result<IntPoly> {
    require_prime_triple(p, q, r)?;
    let factor = |big: u64, small: u64| {
        let (big, small) = (euler_phi(big) as usize, euler_phi(small) as usize);
        IntPoly::complete_graph(big) * IntPoly::binomial_power(small) + IntPoly::monomial(small)
    };
    Ok(factor(p * q, r) * factor(p * r, q) * factor(q * r, p))
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Per-case totals of the eight printed case sums (a)–(h) for `n = pqr`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqrCaseCounts {
    pub k: u64,
    pub cases: [BigInt; 8],
}

impl PqrCaseCounts {
    pub fn total(&self) -> BigInt {
        self.cases.iter().sum()
    }
}

/// Evaluates cases (a)–(h) exactly as printed. Case (h) takes the three
/// small classes `A_qr, A_pr, A_pq` whole, so it contributes only at
/// `k = φ(p) + φ(q) + φ(r)`.
pub fn pqr_case_counts(p: u64, q: u64, r: u64, k: u64) -> Result<PqrCaseCounts> {
    require_prime_triple(p, q, r)?;
    let (fp, fq, fr) = (euler_phi(p), euler_phi(q), euler_phi(r));
    let (fpq, fpr, fqr) = (euler_phi(p * q), euler_phi(p * r), euler_phi(q * r));
    let k = k as i64;

    // Σ_{a,b ≥ 1, c ≥ 0, a+b+c = target} C(x,a) C(y,b) C(z,c)
    let three = |target: i64, x: u64, y: u64, z: u64| -> BigInt {
        let mut s = BigInt::zero();
        for a in 1..=x as i64 {
            for b in 1..=y as i64 {
                s += binomial(x, a) * binomial(y, b) * binomial(z, target - a - b);
            }
        }
        s
    };
    // Σ_{a ≥ 1, b ≥ 0, a+b = target} C(x,a) C(y,b)
    let two = |target: i64, x: u64, y: u64| -> BigInt {
        (1..=x as i64)
            .map(|a| binomial(x, a) * binomial(y, target - a))
            .sum()
    };

    let mut case_a = BigInt::zero();
    for a in 1..=fpq as i64 {
        for b in 1..=fpr as i64 {
            for c in 1..=fqr as i64 {
                case_a += binomial(fpq, a)
                    * binomial(fpr, b)
                    * binomial(fqr, c)
                    * binomial(fp + fq + fr, k - a - b - c);
            }
        }
    }
    let (ip, iq, ir) = (fp as i64, fq as i64, fr as i64);
    let cases = [
        case_a,
        three(k - ip, fpq, fpr, fq + fr),
        three(k - iq, fpq, fqr, fp + fr),
        three(k - ir, fpr, fqr, fp + fq),
        two(k - ip - iq, fpq, fr),
        two(k - ip - ir, fpr, fq),
        two(k - iq - ir, fqr, fp),
        if k == ip + iq + ir {
            BigInt::one()
        } else {
            BigInt::zero()
        },
    ];
    Ok(PqrCaseCounts { k: k as u64, cases })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundPoint {
    pub x: BigRational,
    /// `D(x) - RHS(x)`.
    pub difference: BigRational,
    pub sign: Ordering,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub n: u64,
    pub square_free: bool,
    pub rhs: IntPoly,
    /// `D - RHS` as a polynomial.
    pub difference: IntPoly,
    /// Equality is claimed exactly when `n` has a single prime factor.
    pub equality_expected: bool,
    pub equality_holds: bool,
    pub points: Vec<LowerBoundPoint>,
}

/// Compares `D(Γ(Z_n))` against the lower-bound expression at each point.
///
/// The bound is `(1+x)^n - (1+x)^{n-φ(n)} + x` for square-free `n` and
/// `... + x^{p_1^{n_1 - 1}}` otherwise. Signs are reported, not asserted.
pub fn lower_bound_check(n: u64, sample_points: &[BigRational]) -> Result<LowerBoundReport> {
    let f = factorize(n)?;
    let d = blowup_domination(&build_blowup_spec(n)?)?;
    let square_free = f.is_square_free();
    let tail = if square_free {
        1
    } else {
        let (p1, n1) = f.factors()[0];
        p1.pow(n1 - 1) as usize
    };
    let nu = n as usize;
    let rhs = IntPoly::binomial_power(nu) - IntPoly::binomial_power(nu - f.euler_phi() as usize)
        + IntPoly::monomial(tail);
    let difference = &d - &rhs;
    let points = sample_points
        .iter()
        .map(|x| {
            let diff = difference.eval(x);
            let sign = if diff.is_zero() {
                Ordering::Equal
            } else if diff.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            LowerBoundPoint {
                x: x.clone(),
                difference: diff,
                sign,
            }
        })
        .collect();
    Ok(LowerBoundReport {
        n,
        square_free,
        equality_expected: f.omega() == 1,
        equality_holds: difference.is_zero(),
        rhs,
        difference,
        points,
    })
}
