//! Exact number types and the graded ring Q[α, β].
//!
//! `α` has Legendre degree 1 and `β` Legendre degree 2; automorphic weight is
//! four times the Legendre degree and topological degree eight times it.

mod gaussian;
mod graded;
mod modp;

pub use gaussian::{parse_rational, GaussianRational};
pub use graded::GradedPoly;
pub use modp::{dehom_gcd, FpGradedPoly, FpPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// `a^{-1} mod p` for `a` not divisible by `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (g, x, _) = egcd(a as i128 % p as i128, p as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(p as i128) as u64)
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

pub(crate) fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Image of a p-integral rational in F_p, or `None` when p divides the denominator.
pub fn rational_mod_p(r: &Rational, p: u64) -> Option<u64> {
    let den = bigint_mod(r.denom(), p);
    let inv = inv_mod(den, p)?;
    Some(((bigint_mod(r.numer(), p) as u128 * inv as u128) % p as u128) as u64)
}

pub fn is_p_integral_rational(r: &Rational, p: u64) -> bool {
    !(r.denom() % BigInt::from(p)).is_zero()
}

/// Exponent of `p` in a nonzero integer.
pub fn p_adic_valuation(n: &BigInt, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::InvalidInput("valuation of zero".into()));
    }
    ensure_prime(p)?;
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// JSON form of a rational: decimal strings for numerator and denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for Rational {
    type Error = Error;

    fn try_from(j: &RationalJson) -> Result<Self> {
        parse_ratio(&j.num, &j.den)
    }
}

pub(crate) fn parse_ratio(num: &str, den: &str) -> Result<Rational> {
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad integer {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad integer {den:?}")))?;
    if d.is_zero() {
        return Err(Error::InvalidInput("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn inverse_of_sixteen_mod_five() {
        assert_eq!(inv_mod(16, 5), Some(1));
        assert_eq!(rational_mod_p(&rat(1, 16), 5), Some(1));
        assert_eq!(rational_mod_p(&rat(-1, 1), 5), Some(4));
        assert_eq!(rational_mod_p(&rat(6, 5), 5), None);
    }

    #[test]
    fn valuations() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(p_adic_valuation(&BigInt::from(20), 5).unwrap(), 1);
        assert_eq!(p_adic_valuation(&BigInt::from(-250), 5).unwrap(), 3);
        assert!(p_adic_valuation(&BigInt::zero(), 5).is_err());
        assert!(p_adic_valuation(&BigInt::from(7), 4).is_err());
    }

    #[test]
    fn rational_json_rejects_zero_denominator() {
        let j = RationalJson { num: "1".into(), den: "0".into() };
        assert!(Rational::try_from(&j).is_err());
        let j = RationalJson::from(&rat(-3, 6));
        assert_eq!((j.num.as_str(), j.den.as_str()), ("-1", "2"));
    }
}
