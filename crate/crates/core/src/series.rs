//! Truncated power series `c_0 + c_1 x + … + c_N x^N + O(x^{N+1})`.
//!
//! Every binary operation requires both operands at the same truncation
//! order `N`; mixing orders is an error rather than an implicit minimum.

use std::fmt::{self, Debug, Display};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{int, GradedPoly, Rational};
use crate::{Error, Result};

/// Coefficient ring of a truncated series: an algebra over Q.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    /// The rational value when the coefficient lies in Q.
    fn as_rational(&self) -> Option<Rational>;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Coefficient for GradedPoly {
    fn zero() -> Self {
        GradedPoly::zero()
    }
    fn one() -> Self {
        GradedPoly::one()
    }
    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Rational) -> Self {
        GradedPoly::scale(self, c)
    }
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
}

#[derive(Clone, PartialEq)]
pub struct TruncSeries<C: Coefficient = GradedPoly> {
    coeffs: Vec<C>,
}

const NEWTON_CAP: usize = 64;

impl<C: Coefficient> TruncSeries<C> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncSeries { coeffs }
    }

    /// Builds a series of order `order` from `(exponent, coefficient)` pairs;
    /// exponents above the order are dropped.
    pub fn from_sparse<I: IntoIterator<Item = (usize, C)>>(order: usize, terms: I) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in terms {
            if k <= order {
                s.coeffs[k] = s.coeffs[k].add(&c);
            }
        }
        s
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series variable `x` itself.
    pub fn var(order: usize) -> Self {
        Self::from_sparse(order, [(1, C::one())])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::MixedOrder(self.order(), other.order()))
        }
    }

    /// Drops terms above `order`. Asking for a higher order is an error.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InvalidInput(format!(
                "cannot raise truncation order {} to {order}",
                self.order()
            )));
        }
        Ok(TruncSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    /// Zero-pads to a higher order. Only sound when the caller knows the
    /// missing coefficients cannot influence the result it is after.
    pub(crate) fn pad(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order.max(self.order()) + 1, C::zero());
        TruncSeries { coeffs: c }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(self.zip(other, C::add))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(self.zip(other, C::sub))
    }

    fn zip(&self, other: &Self, f: fn(&C, &C) -> C) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-<Rational as One>::one())
    }

    pub fn map<D: Coefficient, F: Fn(&C) -> D>(&self, f: F) -> TruncSeries<D> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| acc.mul_unchecked(self))
    }

    /// Term-wise derivative; the order drops by one (order 0 stays order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        TruncSeries {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&int(k as i64 + 1)))
                .collect(),
        }
    }

    /// Term-wise antiderivative with zero constant; the order rises by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&Rational::new(1.into(), (k as i64 + 1).into()))),
        );
        TruncSeries { coeffs }
    }

    /// Multiplies by `x`, raising the order by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = vec![C::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries { coeffs }
    }

    /// Divides by `x`, lowering the order by one. The constant term must vanish.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput("constant term is nonzero".into()));
        }
        if self.order() == 0 {
            return Err(Error::InvalidInput("cannot divide an order-0 series by x".into()));
        }
        Ok(TruncSeries { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `f(g(x))`; `g` must have zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.same_order(g)?;
        if !g.coeffs[0].is_zero() {
            return Err(Error::InvalidInput("inner series has nonzero constant term".into()));
        }
        Ok(self.compose_unchecked(g))
    }

    fn compose_unchecked(&self, g: &Self) -> Self {
        let n = g.order();
        let mut acc = Self::constant(self.coeffs.last().cloned().unwrap_or_else(C::zero), n);
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul_unchecked(g);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .as_rational()
            .filter(|c| !Zero::is_zero(c))
            .ok_or_else(|| Error::InvalidInput("constant term is not an invertible rational".into()))?;
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(C::one().scale(&inv0));
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out.push(acc.scale(&-&inv0));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `self / g` through the common order.
    pub fn div(&self, g: &Self) -> Result<Self> {
        self.same_order(g)?;
        Ok(self.mul_unchecked(&g.inverse()?))
    }

    /// Compositional inverse of `x + …` by Newton iteration
    /// `g ← g − (f(g) − x) / f′(g)`.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if !self.coeffs[0].is_zero() || n == 0 {
            return Err(Error::InvalidInput("series must have zero constant term".into()));
        }
        if self.coeffs[1] != C::one() {
            return Err(Error::InvalidInput("linear coefficient must be 1".into()));
        }
        let x = Self::var(n);
        // the x^N coefficient of f′ is unknown but only reaches degree N+1 of the correction
        let df = self.derivative().pad(n);
        let mut g = x.clone();
        for _ in 0..NEWTON_CAP {
            let resid = self.compose_unchecked(&g).sub(&x)?;
            if resid.is_zero() {
                return Ok(g);
            }
            let step = resid.div(&df.compose_unchecked(&g))?;
            g = g.sub(&step)?;
        }
        Err(Error::Consistency("reversion did not converge".into()))
    }

    /// Square root with constant term 1 by Newton iteration `g ← (g + f/g)/2`.
    pub fn sqrt_unit(&self) -> Result<Self> {
        if self.coeffs[0] != C::one() {
            return Err(Error::InvalidInput("constant term must be 1".into()));
        }
        let half = Rational::new(1.into(), 2.into());
        let mut g = Self::one(self.order());
        for _ in 0..NEWTON_CAP {
            if g.mul_unchecked(&g) == *self {
                return Ok(g);
            }
            g = g.add(&self.div(&g)?)?.scale(&half);
        }
        Err(Error::Consistency("square root did not converge".into()))
    }

    /// True iff only exponents `≡ 1 (mod 4)` carry nonzero coefficients.
    pub fn is_odd4(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(k, c)| k % 4 == 1 || c.is_zero())
    }

    /// True iff only exponents `≡ r (mod m)` carry nonzero coefficients.
    pub fn is_supported_on(&self, r: usize, m: usize) -> bool {
        self.coeffs.iter().enumerate().all(|(k, c)| k % m == r || c.is_zero())
    }
}

/// `f(g)` for a single-variable series; free-function alias of [`TruncSeries::compose`].
pub fn compose<C: Coefficient>(f: &TruncSeries<C>, g: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    f.compose(g)
}

pub fn revert<C: Coefficient>(f: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    f.revert()
}

pub fn sqrt_unit<C: Coefficient>(f: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    f.sqrt_unit()
}

pub fn integrate<C: Coefficient>(f: &TruncSeries<C>) -> TruncSeries<C> {
    f.integrate()
}

pub fn series_div<C: Coefficient>(f: &TruncSeries<C>, g: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    f.div(g)
}

impl TruncSeries<GradedPoly> {
    /// Substitutes β = 0 in every coefficient.
    pub fn at_beta_zero(&self) -> Self {
        self.map(GradedPoly::at_beta_zero)
    }
}

impl<C: Coefficient + Display> TruncSeries<C> {
    /// Human-readable form in the variable `var`.
    pub fn display_in(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            parts.push(if k == 0 {
                c.to_string()
            } else if c.as_rational().is_some_and(|r| r.is_one()) {
                x
            } else {
                format!("({c})*{x}")
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O({var}^{})", parts.join(" + "), self.order() + 1)
    }
}

impl<C: Coefficient + Display> Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl<C: Coefficient> Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncSeries").field("coeffs", &self.coeffs).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson<C> {
    order: usize,
    coeffs: Vec<C>,
}

impl<C: Coefficient + Serialize> Serialize for TruncSeries<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson { order: self.order(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de, C: Coefficient + Deserialize<'de>> Deserialize<'de> for TruncSeries<C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::<C>::deserialize(d)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(serde::de::Error::custom("coefficient count must equal order + 1"));
        }
        Ok(TruncSeries { coeffs: raw.coeffs })
    }
}
