//! One-dimensional formal group laws from formal logarithms.
//!
//! `F(x, y) = exp(log x + log y)` with `exp` the compositional inverse of
//! `log`. Laws are checked for the unit, commutativity and associativity
//! axioms when they are built; a law failing any of them is never returned.

pub mod multi;

use serde::{Serialize, Serializer};

use crate::curve::{log_phi, t_of_v};
use crate::exact::{int, GradedPoly};
use crate::legendre::log_phi_l;
use crate::series::TruncSeries;
use crate::{Error, Result};
pub use multi::MultiSeries;

/// Two-variable series `Σ c_{ab} x^a y^b`, truncated at total degree `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiTruncSeries(MultiSeries);

impl BiTruncSeries {
    pub fn from_multi(s: MultiSeries) -> Self {
        assert_eq!(s.nvars(), 2);
        BiTruncSeries(s)
    }

    pub fn as_multi(&self) -> &MultiSeries {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn coeff(&self, a: u32, b: u32) -> GradedPoly {
        self.0.coeff(&[a, b])
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &GradedPoly)> {
        self.0.terms().map(|(e, c)| (e[0], e[1], c))
    }

    pub fn x(order: usize) -> Self {
        BiTruncSeries(MultiSeries::var(2, order, 0))
    }

    pub fn y(order: usize) -> Self {
        BiTruncSeries(MultiSeries::var(2, order, 1))
    }

    pub fn swap(&self) -> Self {
        BiTruncSeries(self.0.permute(&[1, 0]))
    }

    pub fn at_beta_zero(&self) -> Self {
        BiTruncSeries(self.0.map(GradedPoly::at_beta_zero))
    }

    /// Part of total degree `d`.
    pub fn component(&self, d: usize) -> Self {
        BiTruncSeries(self.0.component(d))
    }
}

#[derive(Serialize)]
struct BiTermJson<'a> {
    a: u32,
    b: u32,
    poly: &'a GradedPoly,
}

impl Serialize for BiTruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<BiTermJson> = self.terms().map(|(a, b, poly)| BiTermJson { a, b, poly }).collect();
        v.serialize(s)
    }
}

impl std::fmt::Display for BiTruncSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for d in 0..=self.order() {
            for (a, b, c) in self.terms().filter(|(a, b, _)| (a + b) as usize == d) {
                let mono = match (a, b) {
                    (0, 0) => String::new(),
                    _ => {
                        let xs = match a {
                            0 => String::new(),
                            1 => "x".into(),
                            _ => format!("x^{a}"),
                        };
                        let ys = match b {
                            0 => String::new(),
                            1 => "y".into(),
                            _ => format!("y^{b}"),
                        };
                        [xs, ys].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("*")
                    }
                };
                if c == &GradedPoly::one() && !mono.is_empty() {
                    parts.push(mono);
                } else if mono.is_empty() {
                    parts.push(format!("{c}"));
                } else {
                    parts.push(format!("({c})*{mono}"));
                }
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O({})", parts.join(" + "), self.order() + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub unit: bool,
    pub commutative: bool,
    pub associative: bool,
    pub log_additive: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.unit && self.commutative && self.associative && self.log_additive
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalGroupLaw {
    pub law: BiTruncSeries,
    pub log: TruncSeries,
    pub exp: TruncSeries,
    pub order: usize,
}

/// Compositional inverse of a normalized logarithm.
pub fn exp_from_log(log: &TruncSeries) -> Result<TruncSeries> {
    log.revert()
}

/// The law with logarithm `log`, verified against the group law axioms.
pub fn build_fgl(log: &TruncSeries) -> Result<FormalGroupLaw> {
    let order = log.order();
    let exp = exp_from_log(log)?;
    let sum = MultiSeries::embed(log, 2, 0).add(&MultiSeries::embed(log, 2, 1))?;
    let law = BiTruncSeries(MultiSeries::compose_univariate(&exp, &sum)?);
    let fgl = FormalGroupLaw { law, log: log.clone(), exp, order };
    let report = fgl.check_axioms()?;
    if !report.all_hold() {
        return Err(Error::Consistency(format!("formal group law axioms failed: {report:?}")));
    }
    Ok(fgl)
}

impl FormalGroupLaw {
    pub fn check_axioms(&self) -> Result<AxiomReport> {
        let n = self.order;
        let f = self.law.as_multi();
        let x = MultiSeries::var(2, n, 0);
        let y = MultiSeries::var(2, n, 1);
        let zero = MultiSeries::zero(2, n);
        let unit = f.substitute(&[x.clone(), zero.clone()])? == x && f.substitute(&[zero, y.clone()])? == y;
        let commutative = self.law.swap() == self.law;

        let (a, b, c) = (MultiSeries::var(3, n, 0), MultiSeries::var(3, n, 1), MultiSeries::var(3, n, 2));
        let fab = f.substitute(&[a.clone(), b.clone()])?;
        let fbc = f.substitute(&[b, c.clone()])?;
        let associative = f.substitute(&[fab, c])? == f.substitute(&[a, fbc])?;

        let lhs = MultiSeries::compose_univariate(&self.log, f)?;
        let rhs = MultiSeries::embed(&self.log, 2, 0).add(&MultiSeries::embed(&self.log, 2, 1))?;
        Ok(AxiomReport { unit, commutative, associative, log_additive: lhs == rhs })
    }

    /// True iff every coefficient of the law is p-integral.
    pub fn is_p_integral(&self, p: u64) -> Result<bool> {
        for (_, _, c) in self.law.terms() {
            if !c.is_p_integral(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(x√(1 − 2αy⁴) + y√(1 − 2αx⁴)) / (1 + 2αx²y²)` expanded through total degree `N`.
pub fn euler_law(order: usize) -> Result<BiTruncSeries> {
    if order < 1 {
        return Err(Error::InvalidInput("Euler law needs order ≥ 1".into()));
    }
    let two_alpha = GradedPoly::alpha().scale(&int(2));
    let root = TruncSeries::from_sparse(order, [(0, GradedPoly::one()), (4, -&two_alpha)]).sqrt_unit()?;
    let x = MultiSeries::var(2, order, 0);
    let y = MultiSeries::var(2, order, 1);
    let numer = x
        .mul(&MultiSeries::embed(&root, 2, 1))?
        .add(&y.mul(&MultiSeries::embed(&root, 2, 0))?)?;
    let recip = TruncSeries::one(order).div(&TruncSeries::from_sparse(
        order,
        [(0, GradedPoly::one()), (1, two_alpha)],
    ))?;
    let x2y2 = x.mul(&x)?.mul(&y)?.mul(&y)?;
    let denom_inv = MultiSeries::compose_univariate(&recip, &x2y2)?;
    Ok(BiTruncSeries(numer.mul(&denom_inv)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct LawDifference {
    pub a: u32,
    pub b: u32,
    pub from_log: GradedPoly,
    pub closed_form: GradedPoly,
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerComparison {
    pub order: usize,
    pub matches: bool,
    pub differences: Vec<LawDifference>,
}

/// Compares the Legendre law at β = 0 with the closed Euler form, listing
/// every coefficient where they disagree.
pub fn euler_comparison(order: usize) -> Result<EulerComparison> {
    let from_log = build_fgl(&log_phi_l(order).at_beta_zero())?.law;
    let closed = euler_law(order)?;
    let mut keys: Vec<(u32, u32)> = from_log.terms().map(|(a, b, _)| (a, b)).collect();
    keys.extend(closed.terms().map(|(a, b, _)| (a, b)));
    keys.sort_unstable();
    keys.dedup();
    let differences: Vec<LawDifference> = keys
        .into_iter()
        .filter_map(|(a, b)| {
            let (l, c) = (from_log.coeff(a, b), closed.coeff(a, b));
            (l != c).then_some(LawDifference { a, b, from_log: l, closed_form: c })
        })
        .collect();
    Ok(EulerComparison { order, matches: differences.is_empty(), differences })
}

/// `t(F_φ(x, y)) = F_{φ^L}(t(x), t(y))` through order `N`, with `t = t(v)`.
pub fn iso_check(order: usize) -> Result<bool> {
    iso_check_with(&t_of_v(order)?, order)
}

/// As [`iso_check`] with a caller-supplied reparametrization.
pub fn iso_check_with(t: &TruncSeries, order: usize) -> Result<bool> {
    let f_curve = build_fgl(&log_phi(order)?)?.law;
    let f_legendre = build_fgl(&log_phi_l(order))?.law;
    let lhs = MultiSeries::compose_univariate(t, f_curve.as_multi())?;
    let rhs = f_legendre
        .as_multi()
        .substitute(&[MultiSeries::embed(t, 2, 0), MultiSeries::embed(t, 2, 1)])?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn additive_and_multiplicative() {
        let add = build_fgl(&TruncSeries::var(7)).unwrap();
        let want = MultiSeries::var(2, 7, 0).add(&MultiSeries::var(2, 7, 1)).unwrap();
        assert_eq!(add.law.as_multi(), &want);
        // −ln(1 − x) = Σ x^k / k
        let n = 7;
        let log = TruncSeries::from_sparse(n, (1..=n).map(|k| (k, GradedPoly::constant(rat(1, k as i64)))));
        let mult = build_fgl(&log).unwrap();
        let xy = MultiSeries::var(2, n, 0).mul(&MultiSeries::var(2, n, 1)).unwrap();
        assert_eq!(mult.law.as_multi(), &want.sub(&xy).unwrap());
    }

    #[test]
    fn exponential_of_legendre_log() {
        assert_eq!(exp_from_log(&TruncSeries::var(9)).unwrap(), TruncSeries::var(9));
        let log = log_phi_l(13);
        let exp = exp_from_log(&log).unwrap();
        assert_eq!(exp.coeff(5), &GradedPoly::alpha().scale(&rat(-1, 5)));
        assert_eq!(log.compose(&exp).unwrap(), TruncSeries::var(13));
    }

    #[test]
    fn euler_degree_five() {
        let e = euler_law(13).unwrap();
        assert_eq!(e.coeff(1, 0), GradedPoly::one());
        assert_eq!(e.coeff(0, 1), GradedPoly::one());
        assert_eq!(e, e.swap());
        let a = GradedPoly::alpha();
        let want = BiTruncSeries(MultiSeries::from_terms(
            2,
            13,
            [
                (vec![4, 1], -&a),
                (vec![3, 2], a.scale(&int(-2))),
                (vec![2, 3], a.scale(&int(-2))),
                (vec![1, 4], -&a),
            ],
        ));
        assert_eq!(e.component(5), want);
        // F_E(x, 0) = x
        for (a, b, _) in e.terms() {
            assert!(b > 0 || a == 1);
        }
    }

    #[test]
    fn legendre_law_at_beta_zero_is_euler() {
        let cmp = euler_comparison(13).unwrap();
        assert!(cmp.matches, "{:?}", cmp.differences);
    }

    #[test]
    fn isomorphism() {
        assert!(iso_check(1).unwrap());
        assert!(iso_check(9).unwrap());
        assert!(!iso_check_with(&TruncSeries::var(5), 5).unwrap());
    }

    #[test]
    fn legendre_law_integrality() {
        let f = build_fgl(&log_phi_l(13)).unwrap();
        assert!(f.is_p_integral(5).unwrap());
        assert!(f.is_p_integral(13).unwrap());
        // rational logarithm with 1/5 is not 5-integral, the law is
        assert!(!f.log.coeff(5).is_p_integral(5).unwrap());
    }

    #[test]
    fn broken_law_is_rejected() {
        let f = build_fgl(&log_phi_l(9)).unwrap();
        let mut bad = f.clone();
        bad.law = BiTruncSeries(
            f.law.as_multi().add(&MultiSeries::from_terms(2, 9, [(vec![2, 1], GradedPoly::one())])).unwrap(),
        );
        let r = bad.check_axioms().unwrap();
        assert!(!r.commutative);
        assert!(!r.all_hold());
    }
}
