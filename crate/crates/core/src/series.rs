//! Truncated formal power series in `t`, and bivariate series in `(s, t)`
//! stored as a polynomial in `s` for every power of `t`.
//!
//! Coefficients are generic. Ring operations work over any [`Num`] type;
//! division and square roots need a [`Field`] whose square roots are exact
//! where they exist, such as `BigRational`, or `f64` for approximate work.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has zero constant term")]
    DivisionByNonUnit,
    #[error("constant term has no square root in the coefficient field")]
    NonSquareConstantTerm,
    #[error("series is not divisible by {0}")]
    NotDivisible(&'static str),
    #[error("closed form and fixed point disagree at t^{0}")]
    Disagreement(usize),
    #[error("coefficient of t^{0} is not an integer")]
    NonIntegral(usize),
}

pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Field for Ratio<T>
where
    T: Clone + Debug + Integer + Signed,
    Ratio<T>: FromPrimitive,
{
}
impl Field for f32 {}
impl Field for f64 {}

/// Square root within the coefficient type, `None` when there is none.
pub trait SquareRoot: Sized {
    fn square_root(&self) -> Option<Self>;
}

impl<T> SquareRoot for Ratio<T>
where
    T: Clone + Integer + Roots + Signed,
{
    fn square_root(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        (rn.clone() * rn.clone() == *n && rd.clone() * rd.clone() == *d).then(|| Ratio::new(rn, rd))
    }
}

impl SquareRoot for f64 {
    fn square_root(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl SquareRoot for f32 {
    fn square_root(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

fn constant<C: FromPrimitive>(v: i64) -> C {
    C::from_i64(v).expect("small integer constants are representable")
}

/// `c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})`.
///
/// Binary operations return a series of the smaller operand order.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Clone + Num> TruncatedSeries<C> {
    /// Series of order `order` from leading coefficients; missing ones are zero
    /// and extra ones are dropped.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    /// `1 + t + t^2 + ...`
    pub fn geometric(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![C::one(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&C> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order()))
    }

    pub fn scale(&self, factor: &C) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        }
    }

    /// Divides by `t`, lowering the order by one.
    pub fn divide_by_t(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotDivisible("t"));
        }
        let mut coeffs = self.coeffs[1..].to_vec();
        if coeffs.is_empty() {
            coeffs.push(C::zero());
        }
        Ok(TruncatedSeries { coeffs })
    }
}

impl<C: Field> TruncatedSeries<C> {
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        Self::one(self.order()).checked_div(self)
    }

    /// Exact truncated quotient `self / divisor`.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let order = self.order().min(divisor.order());
        let lead = divisor.coeffs[0].clone();
        if lead.is_zero() {
            return Err(SeriesError::DivisionByNonUnit);
        }
        let mut q: Vec<C> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 0..n {
                acc = acc - q[k].clone() * divisor.coeffs[n - k].clone();
            }
            q.push(acc / lead.clone());
        }
        Ok(TruncatedSeries { coeffs: q })
    }
}

impl<C: Field + SquareRoot> TruncatedSeries<C> {
    /// The square root with the principal root of the constant term, from
    /// `r_n = (a_n - Σ_{k=1}^{n-1} r_k r_{n-k}) / (2 r_0)`.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let r0 = self.coeffs[0]
            .square_root()
            .filter(|r| !r.is_zero())
            .ok_or(SeriesError::NonSquareConstantTerm)?;
        let two_r0 = r0.clone() + r0.clone();
        let mut r = Vec::with_capacity(self.coeffs.len());
        r.push(r0);
        for n in 1..self.coeffs.len() {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc = acc - r[k].clone() * r[n - k].clone();
            }
            r.push(acc / two_r0.clone());
        }
        Ok(TruncatedSeries { coeffs: r })
    }
}

impl TruncatedSeries<BigRational> {
    /// Coefficients as integers, or the first index whose denominator is not 1.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NonIntegral(n))
                }
            })
            .collect()
    }
}

impl<C: Clone + Num> Add for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;

    fn add(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<C: Clone + Num> Sub for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;

    fn sub(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<C: Clone + Num> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;

    fn mul(self, rhs: Self) -> TruncatedSeries<C> {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(C::zero(), |acc, k| {
                    acc + self.coeffs[k].clone() * rhs.coeffs[n - k].clone()
                })
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl<C: Clone + Num + Neg<Output = C>> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;

    fn neg(self) -> TruncatedSeries<C> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// `f(t) = (1 - t - sqrt(1 - 6t + 5t^2)) / (2t)` to order `order`.
///
/// The numerator is expanded one order further so that the division by `t`
/// still leaves `order + 1` coefficients.
pub fn f_series<C: Field + SquareRoot>(order: usize) -> TruncatedSeries<C> {
    let top = order + 1;
    let radicand = TruncatedSeries::new(vec![constant(1), constant(-6), constant(5)], top);
    let root = radicand.sqrt().expect("constant term is 1");
    let one_minus_t = TruncatedSeries::new(vec![constant(1), constant(-1)], top);
    let numerator = &one_minus_t - &root;
    let shifted = numerator
        .divide_by_t()
        .expect("the chosen root cancels the constant term");
    shifted.scale(&(C::one() / constant(2)))
}

/// `Σ_n Σ_m c_{m,n} s^m t^n`, one dense polynomial in `s` per power of `t`.
///
/// Slices carry no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateSeries<C> {
    slices: Vec<Vec<C>>,
}

fn trim<C: Zero>(mut p: Vec<C>) -> Vec<C> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_add<C: Clone + Num>(a: &[C], b: &[C]) -> Vec<C> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(C::zero);
            let y = b.get(i).cloned().unwrap_or_else(C::zero);
            x + y
        })
        .collect();
    trim(out)
}

fn poly_mul<C: Clone + Num>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(out)
}

impl<C: Clone + Num> BivariateSeries<C> {
    /// Builds a series of the given `t`-order from per-slice `s`-coefficients.
    pub fn new(slices: Vec<Vec<C>>, order: usize) -> Self {
        let mut slices: Vec<Vec<C>> = slices.into_iter().map(trim).collect();
        slices.resize(order + 1, Vec::new());
        BivariateSeries { slices }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![vec![C::one()]], order)
    }

    pub fn order(&self) -> usize {
        self.slices.len() - 1
    }

    /// Coefficients of `s^0, s^1, ...` in front of `t^n`.
    pub fn slice(&self, n: usize) -> &[C] {
        &self.slices[n]
    }

    pub fn coeff(&self, m: usize, n: usize) -> C {
        self.slices
            .get(n)
            .and_then(|p| p.get(m))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Substitutes a value for `s`.
    pub fn at_s(&self, s: &C) -> TruncatedSeries<C> {
        let coeffs = self
            .slices
            .iter()
            .map(|p| {
                p.iter()
                    .rev()
                    .fold(C::zero(), |acc, c| acc * s.clone() + c.clone())
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.slices.clone(), order.min(self.order()))
    }

    pub fn scale(&self, factor: &C) -> Self {
        let slices = self
            .slices
            .iter()
            .map(|p| p.iter().map(|c| c.clone() * factor.clone()).collect())
            .collect();
        Self::new(slices, self.order())
    }

    pub fn divide_by_t(&self) -> Result<Self, SeriesError> {
        if !self.slices[0].is_empty() {
            return Err(SeriesError::NotDivisible("t"));
        }
        let order = self.order().saturating_sub(1);
        Ok(Self::new(self.slices[1..].to_vec(), order))
    }

    pub fn divide_by_s(&self) -> Result<Self, SeriesError> {
        let mut slices = Vec::with_capacity(self.slices.len());
        for p in &self.slices {
            match p.first() {
                None => slices.push(Vec::new()),
                Some(c) if c.is_zero() => slices.push(p[1..].to_vec()),
                Some(_) => return Err(SeriesError::NotDivisible("s")),
            }
        }
        Ok(Self::new(slices, self.order()))
    }
}

impl<C: Field> BivariateSeries<C> {
    /// Square root for a series whose `t^0` slice is the constant 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if self.slices[0] != [C::one()] {
            return Err(SeriesError::NonSquareConstantTerm);
        }
        let half = C::one() / constant(2);
        let mut r: Vec<Vec<C>> = vec![vec![C::one()]];
        for n in 1..self.slices.len() {
            let mut acc = self.slices[n].clone();
            for k in 1..n {
                let prod = poly_mul(&r[k], &r[n - k]);
                let neg: Vec<C> = prod.into_iter().map(|c| C::zero() - c).collect();
                acc = poly_add(&acc, &neg);
            }
            r.push(trim(acc.into_iter().map(|c| c * half.clone()).collect()));
        }
        Ok(Self::new(r, self.order()))
    }
}

impl BivariateSeries<BigRational> {
    pub fn to_integers(&self) -> Result<BivariateSeries<BigInt>, SeriesError> {
        let mut slices = Vec::with_capacity(self.slices.len());
        for (n, p) in self.slices.iter().enumerate() {
            let row = p
                .iter()
                .map(|c| {
                    if c.is_integer() {
                        Ok(c.to_integer())
                    } else {
                        Err(SeriesError::NonIntegral(n))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            slices.push(row);
        }
        Ok(BivariateSeries::new(slices, self.order()))
    }
}

impl<C: Clone + Num> Add for &BivariateSeries<C> {
    type Output = BivariateSeries<C>;

    fn add(self, rhs: Self) -> BivariateSeries<C> {
        let order = self.order().min(rhs.order());
        let slices = (0..=order)
            .map(|n| poly_add(&self.slices[n], &rhs.slices[n]))
            .collect();
        BivariateSeries::new(slices, order)
    }
}

impl<C: Clone + Num> Sub for &BivariateSeries<C> {
    type Output = BivariateSeries<C>;

    fn sub(self, rhs: Self) -> BivariateSeries<C> {
        let order = self.order().min(rhs.order());
        let slices = (0..=order)
            .map(|n| {
                let neg: Vec<C> = rhs.slices[n]
                    .iter()
                    .map(|c| C::zero() - c.clone())
                    .collect();
                poly_add(&self.slices[n], &neg)
            })
            .collect();
        BivariateSeries::new(slices, order)
    }
}

impl<C: Clone + Num> Mul for &BivariateSeries<C> {
    type Output = BivariateSeries<C>;

    fn mul(self, rhs: Self) -> BivariateSeries<C> {
        let order = self.order().min(rhs.order());
        let slices = (0..=order)
            .map(|n| {
                (0..=n).fold(Vec::new(), |acc, k| {
                    poly_add(&acc, &poly_mul(&self.slices[k], &rhs.slices[n - k]))
                })
            })
            .collect();
        BivariateSeries::new(slices, order)
    }
}

/// `h(s,t) = (1 - t - sqrt(1 - (2+4s)t + (1+4s)t^2)) / (2st)` to `t`-order `order`.
pub fn h_closed_form<C: Field>(order: usize) -> BivariateSeries<C> {
    let top = order + 1;
    let radicand = BivariateSeries::new(
        vec![
            vec![constant(1)],
            vec![constant(-2), constant(-4)],
            vec![constant(1), constant(4)],
        ],
        top,
    );
    let root = radicand.sqrt().expect("constant slice is 1");
    let one_minus_t = BivariateSeries::new(vec![vec![constant(1)], vec![constant(-1)]], top);
    let numerator = &one_minus_t - &root;
    numerator
        .divide_by_t()
        .and_then(|q| q.divide_by_s())
        .expect("the chosen root cancels against 1 - t")
        .scale(&(C::one() / constant(2)))
}

/// Successive iterates of `h ← 1 + (st/(1-t)) h^2` starting from `h = 1`.
///
/// Iterate `k` is exact through `t^k`, so the last of the `order + 1`
/// iterates is the full truncated fixed point.
pub fn h_fixed_point_iterates<C: Clone + Num>(order: usize) -> Vec<BivariateSeries<C>> {
    // st/(1-t) = Σ_{i≥1} s t^i
    let kernel_slices = (0..=order)
        .map(|i| {
            if i == 0 {
                Vec::new()
            } else {
                vec![C::zero(), C::one()]
            }
        })
        .collect();
    let kernel = BivariateSeries::new(kernel_slices, order);
    let one = BivariateSeries::one(order);
    let mut iterates = vec![one.clone()];
    for _ in 0..=order {
        let h = iterates.last().expect("seeded");
        let next = &one + &(&kernel * &(h * h));
        iterates.push(next);
    }
    iterates
}

pub fn h_fixed_point<C: Clone + Num>(order: usize) -> BivariateSeries<C> {
    h_fixed_point_iterates(order)
        .pop()
        .expect("at least one iterate")
}

/// `h(s,t)` with integer coefficients, computed by the closed form and by the
/// fixed point; the two must agree exactly.
pub fn h_series(order: usize) -> Result<BivariateSeries<BigInt>, SeriesError> {
    let closed = h_closed_form::<BigRational>(order).to_integers()?;
    let fixed: BivariateSeries<BigInt> = h_fixed_point(order);
    if let Some(n) = (0..=order).find(|&n| closed.slice(n) != fixed.slice(n)) {
        return Err(SeriesError::Disagreement(n));
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RationalSeries;
    use num_traits::One;

    fn rs(coeffs: &[i64], order: usize) -> RationalSeries {
        TruncatedSeries::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
            order,
        )
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ring_examples() {
        let a = rs(&[1, 1], 4);
        let b = rs(&[1, -1], 4);
        assert_eq!(&a * &b, rs(&[1, 0, -1], 4));
        assert_eq!(&a + &b, rs(&[2], 4));
        assert_eq!(&a - &b, rs(&[0, 2], 4));

        let geo = rs(&[1, -1], 6).inverse().unwrap();
        assert_eq!(geo, rs(&[1; 7], 6));
        assert_eq!(geo, TruncatedSeries::geometric(6));

        let product = &rs(&[1, -1], 5) * &rs(&[1, -5], 5);
        assert_eq!(product, rs(&[1, -6, 5], 5));
        let back = rs(&[1, -6, 5], 5).checked_div(&rs(&[1, -5], 5)).unwrap();
        assert_eq!(back, rs(&[1, -1], 5));
    }

    #[test]
    fn order_is_minimum_of_operands() {
        let a = rs(&[1, 2, 3], 5);
        let b = rs(&[1, 1], 3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!(a.checked_div(&b).unwrap().order(), 3);
    }

    #[test]
    fn division_by_non_unit() {
        assert_eq!(
            rs(&[1], 3).checked_div(&rs(&[0, 1], 3)),
            Err(SeriesError::DivisionByNonUnit)
        );
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(rs(&[1], 5).sqrt().unwrap(), rs(&[1], 5));
        assert_eq!(rs(&[1, -2, 1], 8).sqrt().unwrap(), rs(&[1, -1], 8));
        assert_eq!(rs(&[4, 4, 1], 6).sqrt().unwrap(), rs(&[2, 1], 6));
        let r = rs(&[1, -6, 5], 10).sqrt().unwrap();
        assert_eq!(&r * &r, rs(&[1, -6, 5], 10));
        assert_eq!(r.integer_coeffs().unwrap()[..4], ints(&[1, -3, -2, -6])[..]);
        assert_eq!(
            rs(&[2, 1], 3).sqrt(),
            Err(SeriesError::NonSquareConstantTerm)
        );
        assert_eq!(rs(&[-1], 3).sqrt(), Err(SeriesError::NonSquareConstantTerm));
        assert_eq!(
            rs(&[0, 1], 3).sqrt(),
            Err(SeriesError::NonSquareConstantTerm)
        );
    }

    #[test]
    fn f_series_prefix() {
        let f: RationalSeries = f_series(8);
        assert_eq!(
            f.integer_coeffs().unwrap(),
            ints(&[1, 1, 3, 10, 36, 137, 543, 2219, 9285])
        );
    }

    #[test]
    fn f_series_in_floats() {
        let f: TruncatedSeries<f64> = f_series(8);
        let expected = [1.0, 1.0, 3.0, 10.0, 36.0, 137.0, 543.0, 2219.0, 9285.0];
        for (got, want) in f.coeffs().iter().zip(expected) {
            assert!((got - want).abs() < 1e-6 * want, "{got} vs {want}");
        }
        let g: TruncatedSeries<f32> = f_series(4);
        assert!((g.coeffs()[4] - 36.0).abs() < 1e-3);
    }

    #[test]
    fn h_slices() {
        let h = h_series(6).unwrap();
        assert_eq!(h.slice(0), &ints(&[1])[..]);
        assert_eq!(h.slice(1), &ints(&[0, 1])[..]);
        assert_eq!(h.slice(2), &ints(&[0, 1, 2])[..]);
        assert_eq!(h.slice(3), &ints(&[0, 1, 4, 5])[..]);
        assert_eq!(h.slice(4), &ints(&[0, 1, 6, 15, 14])[..]);
        assert_eq!(h.coeff(3, 4), BigInt::from(15));
        assert_eq!(h.coeff(9, 4), BigInt::from(0));
    }

    #[test]
    fn h_at_one_is_f() {
        let h: BivariateSeries<BigRational> = h_closed_form(16);
        let f: RationalSeries = f_series(16);
        assert_eq!(h.at_s(&BigRational::one()), f);
    }

    #[test]
    fn fixed_point_stabilizes() {
        let iterates = h_fixed_point_iterates::<BigInt>(12);
        for k in 0..iterates.len() - 1 {
            for n in 0..=k.min(12) {
                assert_eq!(
                    iterates[k].slice(n),
                    iterates[k + 1].slice(n),
                    "iterate {k}, t^{n}"
                );
            }
        }
    }

    #[test]
    fn bivariate_division_errors() {
        let h = BivariateSeries::<BigInt>::one(3);
        assert_eq!(h.divide_by_t(), Err(SeriesError::NotDivisible("t")));
        assert_eq!(h.divide_by_s(), Err(SeriesError::NotDivisible("s")));
        let two =
            BivariateSeries::<BigRational>::new(vec![vec![BigRational::from_integer(2.into())]], 2);
        assert_eq!(two.sqrt(), Err(SeriesError::NonSquareConstantTerm));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sqrt_squares_back(tail in proptest::collection::vec(-20i64..20, 0..8), order in 0usize..10) {
                let mut coeffs = vec![1i64];
                coeffs.extend(tail);
                let a = rs(&coeffs, order);
                let r = a.sqrt().unwrap();
                prop_assert_eq!(&r * &r, a);
            }

            #[test]
            fn division_inverts_multiplication(
                a in proptest::collection::vec(-9i64..9, 1..6),
                b in proptest::collection::vec(-9i64..9, 0..6),
            ) {
                let mut b = b;
                b.insert(0, 3);
                let a = rs(&a, 7);
                let b = rs(&b, 7);
                prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
            }
        }
    }
}
