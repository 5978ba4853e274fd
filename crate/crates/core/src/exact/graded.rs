use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ensure_prime, fmt_rational, parse_ratio, rational_mod_p, FpGradedPoly, Rational};
use crate::{Error, Result};

/// Polynomial in α (degree 1) and β (degree 2) with rational coefficients.
///
/// Terms are keyed by the exponent pair `(i, j)` of `α^i β^j`; zero
/// coefficients are never stored, so the zero polynomial is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn alpha() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn beta() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        GradedPoly { terms }
    }

    /// Builds a polynomial from `(i, j, coefficient)` triples, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rational)>>(iter: I) -> Self {
        let mut p = GradedPoly::zero();
        for (i, j, c) in iter {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> + '_ {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    /// The value as a rational when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Largest Legendre degree `i + 2j` among the terms. Undefined for zero.
    pub fn legendre_degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| i + 2 * j)
            .max()
            .ok_or_else(|| Error::InvalidInput("degree of the zero polynomial".into()))
    }

    /// True when every monomial has the same Legendre degree (vacuously for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&(i, j)| i + 2 * j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn weight(&self) -> Result<u32> {
        Ok(4 * self.legendre_degree()?)
    }

    pub fn topological_degree(&self) -> Result<u32> {
        Ok(8 * self.legendre_degree()?)
    }

    pub fn alpha_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GradedPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<F: Fn(&Rational) -> Rational>(&self, f: F) -> Self {
        GradedPoly::from_terms(self.terms().map(|(i, j, c)| (i, j, f(c))))
    }

    /// Substitutes β = 0.
    pub fn at_beta_zero(&self) -> Self {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, j), _)| j == 0)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// The image in Q[β] = Q[α, β]/(α): the α-free part.
    pub fn mod_alpha(&self) -> Self {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, _), _)| i == 0)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// True iff α divides the polynomial in Q[α, β].
    pub fn divisible_by_alpha(&self) -> bool {
        self.terms.keys().all(|&(i, _)| i > 0)
    }

    pub fn eval(&self, alpha: &Rational, beta: &Rational) -> Rational {
        self.terms().fold(Rational::zero(), |acc, (i, j, c)| {
            acc + c * num_traits::pow(alpha.clone(), i as usize) * num_traits::pow(beta.clone(), j as usize)
        })
    }

    /// True iff every coefficient has denominator prime to `p`.
    pub fn is_p_integral(&self, p: u64) -> Result<bool> {
        ensure_prime(p)?;
        Ok(self
            .terms
            .values()
            .all(|c| super::is_p_integral_rational(c, p)))
    }

    /// Coefficient-wise image in F_p[α, β].
    pub fn reduce_mod_p(&self, p: u64) -> Result<FpGradedPoly> {
        ensure_prime(p)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (&(i, j), c) in &self.terms {
            let r = rational_mod_p(c, p).ok_or_else(|| {
                Error::Precondition(format!("coefficient {} is not {p}-integral", fmt_rational(c)))
            })?;
            terms.push(((i, j), r));
        }
        Ok(FpGradedPoly::from_terms(p, terms))
    }
}

impl Add<&GradedPoly> for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub<&GradedPoly> for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul<&GradedPoly> for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $m(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $m(self, rhs: &GradedPoly) -> GradedPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

impl From<Rational> for GradedPoly {
    fn from(c: Rational) -> Self {
        GradedPoly::constant(c)
    }
}

pub(crate) fn fmt_monomial(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("α".to_string()),
        _ => parts.push(format!("α^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("β".to_string()),
        _ => parts.push(format!("β^{j}")),
    }
    parts.join("*")
}

/// Decreasing α-degree, e.g. `231/16*α^6 - 315/16*α^4*β + 105/16*α^2*β^2 - 5/16*β^3`.
impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = fmt_monomial(i, j);
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: u32,
    j: u32,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for GradedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .terms()
                .map(|(i, j, c)| TermJson {
                    i,
                    j,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut out = GradedPoly::zero();
        for t in raw.terms {
            let c = parse_ratio(&t.num, &t.den).map_err(serde::de::Error::custom)?;
            out.add_term(t.i, t.j, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn a() -> GradedPoly {
        GradedPoly::alpha()
    }
    fn b() -> GradedPoly {
        GradedPoly::beta()
    }

    fn p6() -> GradedPoly {
        GradedPoly::from_terms([
            (6, 0, rat(231, 16)),
            (4, 1, rat(-315, 16)),
            (2, 2, rat(105, 16)),
            (0, 3, rat(-5, 16)),
        ])
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&a() * &a(), GradedPoly::monomial(2, 0, int(1)));
        let d = &(&a() * &a()) - &b();
        assert!(d.is_homogeneous());
        assert_eq!(d.legendre_degree().unwrap(), 2);
        let half = (&(&a() * &a()).scale(&int(3)) - &b()).scale(&rat(1, 2));
        assert_eq!(half.scale(&int(2)), &(&a() * &a()).scale(&int(3)) - &b());
        assert!((&a() - &a()).is_zero());
    }

    #[test]
    fn degrees() {
        assert!(GradedPoly::zero().legendre_degree().is_err());
        assert_eq!(p6().legendre_degree().unwrap(), 6);
        assert_eq!(p6().weight().unwrap(), 24);
        assert_eq!(p6().topological_degree().unwrap(), 48);
        assert!(!(&a() + &b()).is_homogeneous());
    }

    #[test]
    fn p_integrality() {
        assert!(!a().scale(&rat(6, 5)).is_p_integral(5).unwrap());
        assert!(a().is_p_integral(5).unwrap());
        assert!(p6().is_p_integral(5).unwrap());
        assert!(!p6().is_p_integral(2).unwrap());
        assert!(a().is_p_integral(6).is_err());
    }

    #[test]
    fn reduction_mod_p() {
        let r = p6().reduce_mod_p(5).unwrap();
        // 231/16 = 1, -315/16 = 0, 105/16 = 0, -5/16 = 0 mod 5
        assert_eq!(r.coeff(0, 3), 0);
        assert_eq!(r.coeff(6, 0), 1);
        let last = GradedPoly::monomial(0, 3, rat(1, 16)).reduce_mod_p(5).unwrap();
        assert_eq!(last.coeff(0, 3), 1);
        let d = (&(&a() * &a()) - &b()).reduce_mod_p(5).unwrap();
        assert_eq!(d.coeff(2, 0), 1);
        assert_eq!(d.coeff(0, 1), 4);
        assert!(a().scale(&int(5)).reduce_mod_p(5).unwrap().is_zero());
        assert!(matches!(
            a().scale(&rat(1, 5)).reduce_mod_p(5),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn display_is_decreasing_in_alpha() {
        assert_eq!(
            p6().to_string(),
            "231/16*α^6 - 315/16*α^4*β + 105/16*α^2*β^2 - 5/16*β^3"
        );
        assert_eq!((-&a()).to_string(), "-α");
        assert_eq!(GradedPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_schema() {
        let s = serde_json::to_string(&GradedPoly::monomial(1, 2, rat(-6, 5))).unwrap();
        assert_eq!(s, r#"{"terms":[{"i":1,"j":2,"num":"-6","den":"5"}]}"#);
        let back: GradedPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, GradedPoly::monomial(1, 2, rat(-6, 5)));
    }

    fn arb_poly() -> impl Strategy<Value = GradedPoly> {
        prop::collection::vec((0u32..4, 0u32..3, -9i64..10, 1i64..7), 0..5)
            .prop_map(|v| GradedPoly::from_terms(v.into_iter().map(|(i, j, n, d)| (i, j, rat(n, d)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
        }

        #[test]
        fn json_round_trip(x in arb_poly()) {
            let back: GradedPoly = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn homogeneity_under_products(d1 in 0u32..5, d2 in 0u32..5, c in 1i64..9) {
            let h = |d: u32| GradedPoly::from_terms((0..=d / 2).map(|j| (d - 2 * j, j, rat(c + j as i64, 3))));
            let prod = &h(d1) * &h(d2);
            prop_assert!(prod.is_homogeneous());
            prop_assert_eq!(prod.legendre_degree().unwrap(), d1 + d2);
            prop_assert!((&h(d1) + &h(d1).scale(&int(2))).is_homogeneous());
        }

        #[test]
        fn integrality_closed_under_products(x in arb_poly(), y in arb_poly()) {
            for p in [5u64, 7, 13] {
                if x.is_p_integral(p).unwrap() && y.is_p_integral(p).unwrap() {
                    prop_assert!((&x * &y).is_p_integral(p).unwrap());
                }
            }
        }
    }
}
