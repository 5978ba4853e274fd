use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::graded::fmt_monomial;
use super::inv_mod;
use crate::{Error, Result};

/// Polynomial in α, β over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpGradedPoly {
    p: u64,
    terms: BTreeMap<(u32, u32), u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl FpGradedPoly {
    pub fn zero(p: u64) -> Self {
        FpGradedPoly { p, terms: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), u64)>>(p: u64, iter: I) -> Self {
        let mut out = Self::zero(p);
        for ((i, j), c) in iter {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn monomial(p: u64, i: u32, j: u32, c: u64) -> Self {
        Self::from_terms(p, [((i, j), c)])
    }

    fn add_term(&mut self, i: u32, j: u32, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(0);
        *e = (*e + c) % self.p;
        if *e == 0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> u64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn alpha_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed characteristics");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.p - 1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = Self::zero(self.p);
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                out.add_term(i1 + i2, j1 + j2, mulmod(c1, c2, self.p));
            }
        }
        out
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::from_terms(self.p, self.terms().map(|(i, j, d)| ((i, j), mulmod(c % self.p, d, self.p))))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::monomial(self.p, 0, 0, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Remainder of division by `v1` in the variable α over F_p[β].
    ///
    /// `v1` must have a constant (β-free) nonzero α-leading coefficient so
    /// the division never leaves F_p[β].
    pub fn reduce_mod_v1(&self, v1: &Self) -> Result<Self> {
        self.check_same(v1);
        let m = v1
            .alpha_degree()
            .ok_or_else(|| Error::InvalidInput("division by zero polynomial".into()))?;
        let lead: Vec<(u32, u64)> = v1
            .terms()
            .filter(|&(i, _, _)| i == m)
            .map(|(_, j, c)| (j, c))
            .collect();
        let lc = match lead.as_slice() {
            [(0, c)] => *c,
            _ => {
                return Err(Error::InvalidInput(
                    "α-leading coefficient of divisor is not a unit of F_p".into(),
                ))
            }
        };
        let lc_inv = inv_mod(lc, self.p).expect("nonzero residue is invertible");
        let mut rem = self.clone();
        while let Some(d) = rem.alpha_degree() {
            if d < m {
                break;
            }
            // top α-coefficient of the remainder, a polynomial in β
            let top: Vec<(u32, u64)> = rem
                .terms()
                .filter(|&(i, _, _)| i == d)
                .map(|(_, j, c)| (j, c))
                .collect();
            let mut q = Self::zero(self.p);
            for (j, c) in top {
                q.add_term(d - m, j, mulmod(c, lc_inv, self.p));
            }
            rem = rem.sub(&q.mul(v1));
        }
        Ok(rem)
    }

    /// Dehomogenization at β = 1, as a univariate polynomial in x = α.
    pub fn dehomogenize(&self) -> FpPoly {
        let deg = self.alpha_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![0u64; deg + 1];
        for (i, _, c) in self.terms() {
            coeffs[i as usize] = (coeffs[i as usize] + c) % self.p;
        }
        FpPoly::new(self.p, coeffs)
    }

    /// Substitutes β = 0.
    pub fn at_beta_zero(&self) -> Self {
        Self::from_terms(self.p, self.terms().filter(|&(_, j, _)| j == 0).map(|(i, j, c)| ((i, j), c)))
    }
}

impl FpGradedPoly {
    /// The polynomial without the trailing modulus.
    pub fn display_terms(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), &c)| {
                let mono = fmt_monomial(i, j);
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    _ => format!("{c}*{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for FpGradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.display_terms(), self.p)
    }
}

#[derive(Serialize)]
struct FpTermJson {
    i: u32,
    j: u32,
    c: u64,
}

impl Serialize for FpGradedPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            p: u64,
            terms: Vec<FpTermJson>,
        }
        Raw {
            p: self.p,
            terms: self.terms().map(|(i, j, c)| FpTermJson { i, j, c }).collect(),
        }
        .serialize(s)
    }
}

/// Univariate polynomial over F_p, coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p).expect("unit");
                Self::new(self.p, self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect())
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    /// Euclidean remainder.
    pub fn rem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let d = divisor.coeffs.len() - 1;
        let inv = inv_mod(divisor.coeffs[d], self.p).expect("unit");
        let mut r = self.coeffs.clone();
        while r.len() > d && !r.is_empty() {
            let k = r.len() - 1;
            let q = mulmod(r[k], inv, self.p);
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                let idx = k - d + i;
                r[idx] = (r[idx] + self.p - mulmod(q, c, self.p)) % self.p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Self::new(self.p, r)
    }

    /// Monic gcd; `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, _) => c.to_string(),
                (1, 1) => "x".into(),
                (1, _) => format!("{c}*x"),
                (_, 1) => format!("x^{k}"),
                _ => format!("{c}*x^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Monic gcd of the dehomogenizations `a(x, 1)` and `b(x, 1)` over F_p.
pub fn dehom_gcd(a: &FpGradedPoly, b: &FpGradedPoly) -> Result<FpPoly> {
    a.check_same(b);
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
    }
    let g = a.dehomogenize().gcd(&b.dehomogenize());
    if g.is_zero() {
        // both dehomogenizations vanish identically only if both inputs do
        return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
    }
    Ok(g)
}
