//! Truncated formal power series with exact integer coefficients, and the
//! closed forms built from the partition generating function `P(x)`.
//!
//! Nothing here touches floating point except [`growth_bound`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    OrderMismatch { left: usize, right: usize },
    TruncateUp { from: usize, to: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::OrderMismatch { left, right } => {
                write!(f, "series orders differ ({left} vs {right})")
            }
            SeriesError::TruncateUp { from, to } => {
                write!(f, "cannot extend a series of order {from} to order {to}")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// `c_0 + c_1 x + … + c_K x^K + O(x^{K+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Series of order `coeffs.len() − 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    /// A polynomial read as a series of the given order (extra terms are
    /// dropped, missing ones are zero).
    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        let mut coeffs: Vec<BigInt> = values.iter().take(order + 1).map(|&v| BigInt::from(v)).collect();
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Truncation degree `K` (inclusive).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `[x^k]`, or `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&BigInt> {
        self.coeffs.get(k)
    }

    /// `[x^k]` with negative `k` read as zero.
    ///
    /// # Panics
    /// If `k` exceeds the truncation order.
    pub fn coeff_at(&self, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(|| panic!("[x^{k}] requested from a series of order {}", self.order()))
    }

    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::TruncateUp { from: self.order(), to: order });
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check_orders(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Cauchy product; both operands must have the same order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        Ok(self.mul_truncating(other))
    }

    /// Cauchy product truncated to the smaller of the two orders.
    pub fn mul_truncating(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, factor: i64) -> Self {
        let f = BigInt::from(factor);
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * &f).collect() }
    }

    /// Multiplication by `x^s`, keeping the order.
    pub fn shift(&self, s: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for k in s..=order {
            coeffs[k] = self.coeffs[k - s].clone();
        }
        TruncatedSeries { coeffs }
    }

    /// Division by `1 − x`: `c_k = Σ_{i ≤ k} a_i`.
    pub fn prefix_sum(&self) -> Self {
        let mut acc = BigInt::zero();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Multiplication by `1 − x`; undoes [`TruncatedSeries::prefix_sum`].
    pub fn first_difference(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for k in (1..coeffs.len()).rev() {
            coeffs[k] = &self.coeffs[k] - &self.coeffs[k - 1];
        }
        TruncatedSeries { coeffs }
    }

    /// Coefficients as decimal strings.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        use alloc::string::ToString;
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] + O(x^{})", self.order() + 1)
    }
}

/// `P(x) = Σ p(k) x^k` through `x^order`, via Euler's pentagonal recurrence
/// `p(k) = Σ_{m ≥ 1} (−1)^{m+1} [p(k − m(3m−1)/2) + p(k − m(3m+1)/2)]`.
pub fn partition_series(order: usize) -> TruncatedSeries {
    let mut p: Vec<BigInt> = Vec::with_capacity(order + 1);
    p.push(BigInt::one());
    for k in 1..=order {
        let mut sum = BigInt::zero();
        let mut m = 1usize;
        loop {
            let g1 = m * (3 * m - 1) / 2;
            if g1 > k {
                break;
            }
            let mut term = p[k - g1].clone();
            let g2 = m * (3 * m + 1) / 2;
            if g2 <= k {
                term += &p[k - g2];
            }
            if m % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
            m += 1;
        }
        p.push(sum);
    }
    TruncatedSeries { coeffs: p }
}

/// `P(x)²` through `x^order`.
pub fn partition_squared(order: usize) -> TruncatedSeries {
    let p = partition_series(order);
    p.mul_truncating(&p)
}

/// `R_n(x) = 2(2 + x) x^{n−1} P(x)²` through `x^order`.
///
/// # Panics
/// If `n == 0`.
pub fn r_series(n: usize, order: usize) -> TruncatedSeries {
    assert!(n >= 1, "R_n is defined for n >= 1");
    let p2 = partition_squared(order);
    let two_plus_x = TruncatedSeries::from_i64s(&[4, 2], order);
    two_plus_x.mul_truncating(&p2).shift(n - 1)
}

/// A value that is exact only inside a stated regime; outside it the number
/// is still computed but must not be treated as authoritative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegimeValue<T> {
    pub value: T,
    pub in_regime: bool,
}

/// `k ≤ 2n − 7`, where the closed form for 1324-avoiders is a theorem.
pub fn in_theorem_regime(n: usize, k: usize) -> bool {
    k + 7 <= 2 * n
}

/// `k ≤ n − 2`, where every column of the count table is constant.
pub fn in_constant_regime(n: usize, k: usize) -> bool {
    k + 2 <= n
}

/// Where [`av_closed`] and [`diff_closed`] are exact.
pub fn closed_form_valid(n: usize, k: usize) -> bool {
    in_theorem_regime(n, k) || in_constant_regime(n, k)
}

/// `[x^k](P(x)² − R_n(x)/(1 − x))`.
pub fn av_closed(n: usize, k: usize) -> RegimeValue<BigInt> {
    let p2 = partition_squared(k);
    let value = p2.coeffs[k].clone() - r_series(n, k).prefix_sum().coeffs[k].clone();
    RegimeValue { value, in_regime: closed_form_valid(n, k) }
}

/// `[x^k] R_n(x)`, the predicted `av_{n+1}^k − av_n^k`.
pub fn diff_closed(n: usize, k: usize) -> RegimeValue<BigInt> {
    let value = r_series(n, k).coeffs[k].clone();
    RegimeValue { value, in_regime: closed_form_valid(n, k) }
}

/// Literal expansion of `2(1 + x)(2 − x²)/(1 − x) · P(x)²`.
pub fn b_formula_series(order: usize) -> TruncatedSeries {
    let numerator = TruncatedSeries::from_i64s(&[4, 4, -2, -2], order);
    numerator.prefix_sum().mul_truncating(&partition_squared(order))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundError {
    OutOfDomain,
    Parse(String),
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundError::OutOfDomain => f.write_str("c must satisfy 0 < c <= 1"),
            BoundError::Parse(s) => write!(f, "not a rational number: {s}"),
        }
    }
}

impl core::error::Error for BoundError {}

/// Parses `"p/q"` or a plain decimal such as `"0.813"` into an exact ratio.
pub fn parse_ratio(s: &str) -> Result<Ratio<u64>, BoundError> {
    let s = s.trim();
    let err = || BoundError::Parse(String::from(s));
    if let Some((num, den)) = s.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| err())?;
        let den: u64 = den.trim().parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        return Ok(Ratio::new(num, den));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
        || frac.len() > 18
    {
        return Err(err());
    }
    let den = 10u64.pow(frac.len() as u32);
    let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| err())? };
    let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| err())? };
    let num = int
        .checked_mul(den)
        .and_then(|v| v.checked_add(frac))
        .ok_or_else(err)?;
    Ok(Ratio::new(num, den))
}

/// The constant `c` bounding where each row of the count table peaks,
/// together with the quantities derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundInput {
    c: Ratio<u64>,
}

impl BoundInput {
    pub fn new(c: Ratio<u64>) -> Result<Self, BoundError> {
        if c.is_zero() || c > Ratio::one() {
            return Err(BoundError::OutOfDomain);
        }
        Ok(BoundInput { c })
    }

    pub fn c(&self) -> Ratio<u64> {
        self.c
    }

    /// `m_n = C(n, 2)`.
    pub fn m(n: u64) -> u64 {
        n * n.saturating_sub(1) / 2
    }

    /// `c_n = ⌊c · m_n⌋`.
    pub fn c_n(&self, n: u64) -> u64 {
        let m = Self::m(n) as u128;
        (m * *self.c.numer() as u128 / *self.c.denom() as u128) as u64
    }

    /// `ρ = exp(π √(2/3))`.
    pub fn rho() -> f64 {
        libm::exp(core::f64::consts::PI * libm::sqrt(2.0 / 3.0))
    }

    /// `ρ^{√c} = exp(π √(2c/3))`.
    pub fn bound(&self) -> f64 {
        let c = *self.c.numer() as f64 / *self.c.denom() as f64;
        libm::exp(core::f64::consts::PI * libm::sqrt(2.0 * c / 3.0))
    }
}

/// `exp(π √(2c/3))` for `0 < c ≤ 1`.
pub fn growth_bound(c: Ratio<u64>) -> Result<f64, BoundError> {
    Ok(BoundInput::new(c)?.bound())
}
