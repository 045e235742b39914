//! Counting formulas for weighted trees and the harness that checks them
//! against exhaustive enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Float, FloatConst, One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::binomial;
use crate::dyck::{enumerate_words, enumerate_words_with_edges};
use crate::partition::{PartitionError, Passport};
use crate::series::{f_series, h_series};
use crate::tree::{classify, unrooted_census, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("b(m, n) needs 1 <= m <= n, got m = {m}, n = {n}")]
    OutOfRange { m: usize, n: usize },
    #[error("weight must be at least 1")]
    ZeroWeight,
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("rooted count for {0} is not an integer")]
    NonIntegral(String),
}

/// `a_0..a_max` from `a_0 = a_1 = 1`, `a_{n+1} = a_n + Σ_{k=0}^{n} a_k a_{n-k}`.
///
/// Generic so that fixed-width integers can be used where overflow is not a
/// concern; see [`a_rec`] for the arbitrary-precision version.
pub fn a_recurrence<T>(max: usize) -> Vec<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let mut a = vec![T::one()];
    if max >= 1 {
        a.push(T::one());
    }
    for n in 1..max {
        let convolution = (0..=n).fold(T::zero(), |acc, k| &acc + &(&a[k] * &a[n - k]));
        let next = &a[n] + &convolution;
        a.push(next);
    }
    a
}

pub fn a_rec(max: usize) -> Vec<BigUint> {
    a_recurrence(max)
}

pub fn catalan(m: usize) -> BigUint {
    binomial(2 * m, m) / (m + 1)
}

/// `b_{m,n} = C(n-1, m-1) · Cat_m`.
pub fn b_explicit(m: usize, n: usize) -> Result<BigUint, CensusError> {
    if m < 1 || m > n {
        return Err(CensusError::OutOfRange { m, n });
    }
    Ok(binomial(n - 1, m - 1) * catalan(m))
}

/// `b_{1,n}, ..., b_{n,n}`.
pub fn b_row(n: usize) -> Vec<BigUint> {
    (1..=n)
        .map(|m| b_explicit(m, n).expect("1 <= m <= n"))
        .collect()
}

/// `c_n = Σ_m b_{m,n} / m`.
pub fn c_exact(n: usize) -> Result<BigRational, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroWeight);
    }
    Ok(b_row(n)
        .into_iter()
        .enumerate()
        .map(|(i, b)| BigRational::new(BigInt::from(b), BigInt::from(i + 1)))
        .fold(BigRational::zero(), |acc, x| acc + x))
}

/// Leading-order estimate `(1/2) sqrt(5/π) 5^n n^{-3/2}`.
///
/// Overflows to infinity once `5^n` leaves the range of `F`; use
/// [`asymptotic_estimate_scaled`] beyond that.
pub fn asymptotic_estimate<F: Float + FloatConst>(n: usize) -> Result<F, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroWeight);
    }
    let half = F::one() / (F::one() + F::one());
    let five = F::from(5).expect("5 fits every float");
    let nf = F::from(n).expect("n fits every float");
    let lead = half * (five / F::PI()).sqrt();
    Ok(lead * five.powi(n as i32) * nf.powf(-(F::one() + half)))
}

/// A positive float `mantissa · 10^exponent` with `1 <= mantissa < 10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledFloat {
    pub mantissa: f64,
    pub exponent: i64,
}

impl ScaledFloat {
    fn from_log10(log10: f64) -> Self {
        let exponent = log10.floor();
        ScaledFloat {
            mantissa: 10f64.powf(log10 - exponent),
            exponent: exponent as i64,
        }
    }

    pub fn log10(&self) -> f64 {
        self.mantissa.log10() + self.exponent as f64
    }
}

impl fmt::Display for ScaledFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}e{}", self.mantissa, self.exponent)
    }
}

/// [`asymptotic_estimate`] evaluated in log space, valid for any `n >= 1`.
pub fn asymptotic_estimate_scaled(n: usize) -> Result<ScaledFloat, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroWeight);
    }
    let nf = n as f64;
    let log10 =
        (0.5 * (5.0 / std::f64::consts::PI).sqrt()).log10() + nf * 5f64.log10() - 1.5 * nf.log10();
    Ok(ScaledFloat::from_log10(log10))
}

fn log10_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite below 2^1000").log10();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.log10() + shift as f64 * 2f64.log10()
}

/// `a_n` divided by its leading-order estimate, computed in log space.
pub fn asymptotic_ratio(n: usize, a_n: &BigUint) -> Result<f64, CensusError> {
    let estimate = asymptotic_estimate_scaled(n)?;
    Ok(10f64.powf(log10_big(a_n) - estimate.log10()))
}

/// An ordinary tree of weight `n` has `n` edges and therefore `n + 1`
/// vertices; passports with any other vertex count are not realized.
fn realizable_by_ordinary(passport: &Passport) -> Result<bool, CensusError> {
    if passport.n() == 0 {
        return Err(CensusError::ZeroWeight);
    }
    Ok(passport.alpha().k() + passport.beta().k() == passport.n() + 1)
}

/// `Σ_T 1/|Aut T|` over ordinary trees with this passport: `N(α) N(β)`, or
/// zero when the vertex count rules out every ordinary tree.
pub fn ordinary_unrooted_mass(passport: &Passport) -> Result<BigRational, CensusError> {
    if !realizable_by_ordinary(passport)? {
        return Ok(BigRational::zero());
    }
    Ok(passport.alpha().big_n()? * passport.beta().big_n()?)
}

/// Rooted ordinary trees with this passport: `n N(α) N(β)`.
pub fn ordinary_rooted_count(passport: &Passport) -> Result<BigUint, CensusError> {
    let mass = ordinary_unrooted_mass(passport)?;
    let count = mass * BigRational::from_integer(BigInt::from(passport.n()));
    if !count.is_integer() {
        return Err(CensusError::NonIntegral(passport.to_string()));
    }
    Ok(count
        .to_integer()
        .to_biguint()
        .expect("product of nonnegative factors"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassportTally {
    pub rooted: usize,
    pub mass: BigRational,
}

/// Rooted counts and automorphism-weighted masses of ordinary trees of
/// weight `n`, grouped by passport, by exhaustive enumeration.
pub fn brute_force_passport_census(n: usize) -> BTreeMap<Passport, PassportTally> {
    let mut tally: BTreeMap<Passport, PassportTally> = BTreeMap::new();
    let empty = || PassportTally {
        rooted: 0,
        mass: BigRational::zero(),
    };
    for word in enumerate_words_with_edges(n, n) {
        let passport = RootedTree::from_dyck(&word).passport().expect("n >= 1");
        tally.entry(passport).or_insert_with(empty).rooted += 1;
    }
    for class in classify(enumerate_words_with_edges(n, n)) {
        let passport = RootedTree::from_dyck(&class.canonical_code)
            .passport()
            .expect("n >= 1");
        let entry = tally.entry(passport).or_insert_with(empty);
        entry.mass += BigRational::new(BigInt::one(), BigInt::from(class.aut_order));
    }
    tally
}

/// The exact counts for one weight.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusRow {
    pub n: usize,
    pub a_n: BigUint,
    pub b_row: Vec<BigUint>,
    pub c_n: BigRational,
    pub asymptotic_estimate: f64,
}

pub fn census_row(n: usize) -> Result<CensusRow, CensusError> {
    let a_n = a_rec(n).pop().expect("non-empty");
    Ok(CensusRow {
        n,
        a_n,
        b_row: b_row(n),
        c_n: c_exact(n)?,
        asymptotic_estimate: asymptotic_estimate(n)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegResult {
    pub name: String,
    /// Largest weight the leg covered.
    pub upto: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub bound: usize,
    pub legs: Vec<LegResult>,
    pub words_enumerated: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.legs.iter().all(|l| l.passed)
    }

    pub fn first_failure(&self) -> Option<&LegResult> {
        self.legs.iter().find(|l| !l.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.legs.iter().map(|l| l.name.len()).max().unwrap_or(0);
        for leg in &self.legs {
            let status = if leg.passed { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status}  {:<width$}  n<={:<3} {}",
                leg.name, leg.upto, leg.detail
            )?;
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{overall}: {} legs, n_max = {}, enumeration bound = {}",
            self.legs.len(),
            self.n_max,
            self.bound
        )
    }
}

/// Default cap on weights reached by exhaustive enumeration.
pub const DEFAULT_BOUND: usize = 8;

struct Leg {
    name: &'static str,
    upto: usize,
    mismatch: Option<String>,
    summary: String,
}

impl From<Leg> for LegResult {
    fn from(leg: Leg) -> Self {
        LegResult {
            name: leg.name.to_string(),
            upto: leg.upto,
            passed: leg.mismatch.is_none(),
            detail: leg.mismatch.unwrap_or(leg.summary),
        }
    }
}

fn first_mismatch<T: PartialEq + fmt::Display>(
    label: &str,
    pairs: impl IntoIterator<Item = (usize, T, T)>,
) -> Option<String> {
    pairs
        .into_iter()
        .find(|(_, x, y)| x != y)
        .map(|(n, x, y)| format!("{label} differs at n = {n}: {x} vs {y}"))
}

/// Checks every formula against its independent routes. Formula-only legs
/// run to `n_max`; enumeration legs stop at `min(n_max, bound)`.
pub fn cross_verify(n_max: usize, bound: usize) -> VerifyReport {
    let brute = n_max.min(bound);
    let a = a_rec(n_max);
    let mut legs = Vec::new();
    let mut words_enumerated = 0usize;

    let f = f_series::<BigRational>(n_max);
    legs.push(Leg {
        name: "a_n: recurrence = series f(t)",
        upto: n_max,
        mismatch: match f.integer_coeffs() {
            Err(e) => Some(e.to_string()),
            Ok(coeffs) => first_mismatch(
                "a_n",
                coeffs
                    .into_iter()
                    .zip(&a)
                    .enumerate()
                    .map(|(n, (s, r))| (n, s, BigInt::from(r.clone()))),
            ),
        },
        summary: format!("a_{n_max} = {}", a[n_max]),
    });

    let counts: Vec<Vec<usize>> = (0..=brute)
        .map(|n| {
            let mut by_edges = vec![0usize; n + 1];
            for w in enumerate_words(n) {
                by_edges[w.edge_count()] += 1;
            }
            by_edges
        })
        .collect();
    words_enumerated += counts.iter().flatten().sum::<usize>();
    legs.push(Leg {
        name: "a_n: recurrence = enumeration",
        upto: brute,
        mismatch: first_mismatch(
            "a_n",
            counts
                .iter()
                .enumerate()
                .map(|(n, c)| (n, BigUint::from(c.iter().sum::<usize>()), a[n].clone())),
        ),
        summary: format!("{} words", counts.iter().flatten().sum::<usize>()),
    });

    let series_mismatch = match h_series(n_max) {
        Err(e) => Some(e.to_string()),
        Ok(h) => (1..=n_max).find_map(|n| {
            (1..=n).find_map(|m| {
                let explicit = BigInt::from(b_explicit(m, n).ok()?);
                let coeff = h.coeff(m, n);
                (explicit != coeff).then(|| format!("b({m},{n}): {explicit} vs {coeff}"))
            })
        }),
    };
    legs.push(Leg {
        name: "b_mn: explicit = series h(s,t)",
        upto: n_max,
        mismatch: series_mismatch,
        summary: "closed form = fixed point".to_string(),
    });

    legs.push(Leg {
        name: "b_mn: explicit = enumeration",
        upto: brute,
        mismatch: (1..=brute).find_map(|n| {
            (1..=n).find_map(|m| {
                let explicit = b_explicit(m, n).ok()?;
                let counted = BigUint::from(counts[n][m]);
                (explicit != counted).then(|| format!("b({m},{n}): {explicit} vs {counted}"))
            })
        }),
        summary: format!("rows 1..={brute}"),
    });

    legs.push(Leg {
        name: "sum_m b_mn = a_n",
        upto: n_max,
        mismatch: first_mismatch(
            "row sum",
            (1..=n_max).map(|n| (n, b_row(n).iter().sum::<BigUint>(), a[n].clone())),
        ),
        summary: "s = 1 substitution".to_string(),
    });

    let mut census_summary = String::new();
    let mut census_mismatch = None;
    for n in 1..=brute {
        let classes = unrooted_census(n);
        words_enumerated += a[n].to_usize().unwrap_or(0);
        let mass = classes.iter().fold(BigRational::zero(), |acc, c| {
            acc + BigRational::new(BigInt::one(), BigInt::from(c.aut_order))
        });
        let rooted: usize = classes.iter().map(|c| c.rooted_count()).sum();
        let expected = c_exact(n).expect("n >= 1");
        if mass != expected {
            census_mismatch = Some(format!("c_{n}: {expected} vs census {mass}"));
            break;
        }
        if BigUint::from(rooted) != a[n] {
            census_mismatch = Some(format!("rootings at n = {n}: {rooted} vs {}", a[n]));
            break;
        }
        census_summary = format!("c_{n} = {mass}, {} classes", classes.len());
    }
    legs.push(Leg {
        name: "c_n: formula = sum 1/|Aut|",
        upto: brute,
        mismatch: census_mismatch,
        summary: census_summary,
    });

    if brute >= 4 {
        let classes = unrooted_census(4);
        let rooted: usize = classes.iter().map(|c| c.rooted_count()).sum();
        let mut profile = BTreeMap::new();
        for c in &classes {
            *profile.entry(c.aut_order).or_insert(0usize) += 1;
        }
        let expected_profile = BTreeMap::from([(1, 10), (2, 4), (4, 2)]);
        let mismatch = if rooted != 36 {
            Some(format!("rooted weight-4 total = {rooted}, expected 36"))
        } else if classes.len() != 16 || profile != expected_profile {
            Some(format!(
                "weight-4 classes {} with profile {profile:?}",
                classes.len()
            ))
        } else {
            None
        };
        legs.push(Leg {
            name: "weight-4 example",
            upto: 4,
            mismatch,
            summary: "rooted weight-4 total = 36; 16 classes (aut 1: 10, aut 2: 4, aut 4: 2)"
                .to_string(),
        });
    }

    let mut gj_mismatch = None;
    let mut passports_checked = 0usize;
    'outer: for n in 1..=brute {
        let census = brute_force_passport_census(n);
        let mut total = BigUint::zero();
        for (passport, tally) in &census {
            passports_checked += 1;
            let rooted = ordinary_rooted_count(passport);
            let mass = ordinary_unrooted_mass(passport);
            match (rooted, mass) {
                (Ok(r), Ok(m)) if r == BigUint::from(tally.rooted) && m == tally.mass => {
                    total += r;
                }
                (r, m) => {
                    gj_mismatch = Some(format!(
                        "passport {passport}: formula ({r:?}, {m:?}) vs brute force ({}, {})",
                        tally.rooted, tally.mass
                    ));
                    break 'outer;
                }
            }
        }
        if total != catalan(n) {
            gj_mismatch = Some(format!("n = {n}: passport total {total} vs Cat_{n}"));
            break;
        }
    }
    legs.push(Leg {
        name: "passport formula = brute force",
        upto: brute,
        mismatch: gj_mismatch,
        summary: format!("{passports_checked} passports"),
    });

    VerifyReport {
        n_max,
        bound,
        legs: legs.into_iter().map(LegResult::from).collect(),
        words_enumerated,
    }
}
