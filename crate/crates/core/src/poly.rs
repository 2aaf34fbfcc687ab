//! Dense univariate polynomials with exact integer coefficients.
//!
//! Heavy computations run over a [`Coeff`] type: first in checked `i128`,
//! and again in `BigInt` if anything overflows. Results are stored as
//! [`IntPolynomial`] (arbitrary precision, constant term first).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact ring arithmetic that may report overflow.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Coefficient-vector arithmetic (constant term first) over any [`Coeff`].
pub(crate) mod dense {
    use super::Coeff;

    pub fn trim<C: Coeff>(mut p: Vec<C>) -> Vec<C> {
        while p.last().is_some_and(Coeff::is_zero) {
            p.pop();
        }
        p
    }

    pub fn add<C: Coeff>(a: &[C], b: &[C]) -> Option<Vec<C>> {
        let mut out = Vec::with_capacity(a.len().max(b.len()));
        for i in 0..a.len().max(b.len()) {
            out.push(match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x.checked_add(y)?,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            });
        }
        Some(trim(out))
    }

    pub fn sub<C: Coeff>(a: &[C], b: &[C]) -> Option<Vec<C>> {
        let mut out = Vec::with_capacity(a.len().max(b.len()));
        for i in 0..a.len().max(b.len()) {
            out.push(match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x.checked_sub(y)?,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => C::zero().checked_sub(y)?,
                (None, None) => unreachable!(),
            });
        }
        Some(trim(out))
    }

    pub fn mul<C: Coeff>(a: &[C], b: &[C]) -> Option<Vec<C>> {
        if a.is_empty() || b.is_empty() {
            return Some(Vec::new());
        }
        let mut out = vec![C::zero(); a.len() + b.len() - 1];
        // matching polynomials of trees have every other coefficient zero
        let nonzero: Vec<(usize, &C)> = b.iter().enumerate().filter(|(_, y)| !y.is_zero()).collect();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &nonzero {
                out[i + j] = out[i + j].checked_add(&x.checked_mul(y)?)?;
            }
        }
        Some(trim(out))
    }

    /// `x * p`
    pub fn shift<C: Coeff>(p: &[C]) -> Vec<C> {
        if p.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(p.len() + 1);
        out.push(C::zero());
        out.extend_from_slice(p);
        out
    }

    pub fn one<C: Coeff>() -> Vec<C> {
        vec![C::from_i64(1)]
    }
}

/// Runs `f` in `i128`; on overflow reruns it in `BigInt`.
pub(crate) fn exact_with_fallback<F, G>(small: F, big: G) -> IntPolynomial
where
    F: FnOnce() -> Option<Vec<i128>>,
    G: FnOnce() -> Option<Vec<BigInt>>,
{
    match small() {
        Some(c) => IntPolynomial::new(c.iter().map(Coeff::to_bigint).collect()),
        None => IntPolynomial::new(big().expect("BigInt arithmetic never overflows")),
    }
}

/// A polynomial with arbitrary-precision integer coefficients, constant term
/// first. The leading coefficient is non-zero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        IntPolynomial { coeffs: dense::trim(coeffs) }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![<BigInt as Zero>::zero(); k + 1];
        c[k] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Horner evaluation in `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Number of roots strictly greater than `num / 2^bits`, with multiplicity.
    ///
    /// Only valid for real-rooted polynomials, where Descartes' rule of signs
    /// applied to the Taylor shift is exact. The computation is exact.
    pub fn roots_above(&self, num: &BigInt, bits: u32) -> usize {
        let Some(d) = self.degree() else { return 0 };
        // r(z) = 2^(bits*d) p(z / 2^bits), then shift z -> num + y
        let mut r: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c << (bits as usize * (d - i)))
            .collect();
        for i in 0..d {
            for j in (i..d).rev() {
                let t = num * &r[j + 1];
                r[j] += t;
            }
        }
        let mut changes = 0;
        let mut last: Option<bool> = None;
        for c in &r {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            if last.is_some_and(|l| l != neg) {
                changes += 1;
            }
            last = Some(neg);
        }
        changes
    }

    /// Largest real root of a real-rooted polynomial, to absolute accuracy
    /// better than `1e-10`. `None` for constants.
    ///
    /// A Newton iteration started above every root gives a candidate, which
    /// is then bracketed exactly with [`roots_above`](Self::roots_above) at
    /// two dyadic points. If the bracket fails (ill-conditioned evaluation),
    /// the root is isolated by exact bisection instead and Newton only
    /// polishes inside the final bracket.
    pub fn largest_real_root(&self) -> Option<f64> {
        const BITS: u32 = 40;
        const SLACK: i64 = 1 << 5; // 2^-35, about 2.9e-11
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let low = self.coeffs.iter().position(|c| !Zero::is_zero(c)).unwrap_or(0);
        if low == d {
            return Some(0.0);
        }
        let reduced = IntPolynomial::new(self.coeffs[low..].to_vec());
        let bound = reduced.cauchy_bound();
        let scale = (1u64 << BITS) as f64;
        let to_dyadic = |x: f64| BigInt::from_f64((x * scale).floor()).unwrap_or_default();
        let from_dyadic = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN) / scale;

        let root = match reduced.newton_from_above(bound) {
            Some(r) if r.is_finite() && r.abs() < 1e6 => {
                let lo = to_dyadic(r) - SLACK;
                let hi = to_dyadic(r) + SLACK + 1;
                if reduced.roots_above(&hi, BITS) == 0 && reduced.roots_above(&lo, BITS) >= 1 {
                    Some(r)
                } else {
                    None
                }
            }
            _ => None,
        };
        let root = root.unwrap_or_else(|| {
            let mut lo = to_dyadic(-bound) - 1;
            let mut hi = to_dyadic(bound) + 1;
            while &hi - &lo > BigInt::from(SLACK) {
                let mid: BigInt = (&lo + &hi) >> 1usize;
                if reduced.roots_above(&mid, BITS) >= 1 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let (lo, hi) = (from_dyadic(&lo), from_dyadic(&hi));
            reduced.newton_polish(hi, lo, hi)
        });
        Some(if low > 0 { root.max(0.0) } else { root })
    }

    /// `1 + max |c_i / c_d|`, an upper bound on the modulus of every root.
    fn cauchy_bound(&self) -> f64 {
        let lead = self.leading().and_then(ToPrimitive::to_f64).unwrap_or(1.0).abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY).abs())
            .fold(0.0, f64::max);
        1.0 + m / lead
    }

    fn newton_from_above(&self, start: f64) -> Option<f64> {
        let dp = self.derivative();
        let mut x = start;
        for _ in 0..2000 {
            let fx = self.eval_f64(x);
            let dx = dp.eval_f64(x);
            if !fx.is_finite() || !dx.is_finite() {
                return None;
            }
            if fx == 0.0 || dx == 0.0 {
                return Some(x);
            }
            let next = x - fx / dx;
            if next.partial_cmp(&x) != Some(std::cmp::Ordering::Less) || x - next <= 1e-16 * x.abs().max(1.0) {
                return Some(next.min(x));
            }
            x = next;
        }
        Some(x)
    }

    fn newton_polish(&self, start: f64, lo: f64, hi: f64) -> f64 {
        let dp = self.derivative();
        let mut x = start;
        for _ in 0..100 {
            let (fx, dx) = (self.eval_f64(x), dp.eval_f64(x));
            if fx == 0.0 || dx == 0.0 || !fx.is_finite() || !dx.is_finite() {
                break;
            }
            let next = x - fx / dx;
            if !(lo..=hi).contains(&next) || next == x {
                break;
            }
            x = next;
        }
        x
    }

    /// JSON integer array, constant term first. Coefficients of any size are
    /// written as plain JSON numbers.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        format!("[{}]", body.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 1, msg: msg.to_string() };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad("expected a JSON array"))?;
        if inner.trim().is_empty() {
            return Ok(Self::zero());
        }
        let coeffs = inner
            .split(',')
            .map(|s| s.trim().parse::<BigInt>().map_err(|_| bad(&format!("not an integer: {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(dense::add(&self.coeffs, &rhs.coeffs).expect("exact"))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(dense::sub(&self.coeffs, &rhs.coeffs).expect("exact"))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(dense::mul(&self.coeffs, &rhs.coeffs).expect("exact"))
    }
}
