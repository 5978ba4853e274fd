//! The genus-two family `y² = x(x⁴ − 2αx² + β)`, its chart at infinity
//! `v² = u(1 − 2αu² + βu⁴)`, and the two formal logarithms read off from
//! the distinguished differential `du/2v`.

pub mod symbolic;

use serde::Serialize;

use crate::exact::{int, rat, GaussianRational, GradedPoly, Rational};
use crate::series::TruncSeries;
use crate::{Error, Result};
use symbolic::{compose_maps, identity_map, Laurent, ALPHA, BETA, GAMMA, X, Y};

const NEWTON_CAP: usize = 64;

/// The family over Q[α, β]; smooth away from `β(α² − β) = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CurveFamily;

impl CurveFamily {
    /// `y² − x(x⁴ − 2αx² + β)` in the affine chart C′.
    pub fn affine_equation() -> Laurent {
        let (a, b, x, y) = (Laurent::var(ALPHA), Laurent::var(BETA), Laurent::var(X), Laurent::var(Y));
        let quartic = x
            .powi(4)
            .unwrap()
            .sub(&a.mul(&x.powi(2).unwrap()).scale(&GaussianRational::from_ints(2, 0)))
            .add(&b);
        y.powi(2).unwrap().sub(&x.mul(&quartic))
    }

    /// `v² − u(1 − 2αu² + βu⁴)` in the chart C″, written in the variables x = u, y = v.
    pub fn chart_equation() -> Laurent {
        let (a, b, u, v) = (Laurent::var(ALPHA), Laurent::var(BETA), Laurent::var(X), Laurent::var(Y));
        let quartic = Laurent::int(1)
            .sub(&a.mul(&u.powi(2).unwrap()).scale(&GaussianRational::from_ints(2, 0)))
            .add(&b.mul(&u.powi(4).unwrap()));
        v.powi(2).unwrap().sub(&u.mul(&quartic))
    }

    /// `β(α² − β)`.
    pub fn discriminant() -> GradedPoly {
        let a = GradedPoly::alpha();
        let b = GradedPoly::beta();
        &b * &(&(&a * &a) - &b)
    }
}

/// `u(1 − 2αu² + βu⁴) = u − 2αu³ + βu⁵` as a polynomial in `u`, padded to `order`.
fn chart_quintic(order: usize) -> TruncSeries {
    TruncSeries::from_sparse(
        order.max(5),
        [
            (1, GradedPoly::one()),
            (3, GradedPoly::alpha().scale(&int(-2))),
            (5, GradedPoly::beta()),
        ],
    )
}

/// `1 − 6αu² + 5βu⁴`, the u-derivative of the chart quintic.
fn chart_quintic_derivative(order: usize) -> TruncSeries {
    TruncSeries::from_sparse(
        order.max(4),
        [
            (0, GradedPoly::one()),
            (2, GradedPoly::alpha().scale(&int(-6))),
            (4, GradedPoly::beta().scale(&int(5))),
        ],
    )
}

/// Confirms `d/du[u(1 − 2αu² + βu⁴)] = 1 − 6αu² + 5βu⁴` before it is used.
pub fn quintic_derivative_precheck() -> bool {
    chart_quintic(6).derivative() == chart_quintic_derivative(5)
}

/// Evaluates a polynomial stored as a series at a series argument, keeping
/// every term of the polynomial regardless of the argument's order.
fn eval_poly(poly: &TruncSeries, arg: &TruncSeries) -> TruncSeries {
    let n = arg.order();
    let mut acc = TruncSeries::zero(n);
    let mut power = TruncSeries::one(n);
    for (k, c) in poly.coeffs().iter().enumerate() {
        if k > 0 {
            power = power.mul(arg).expect("same order");
        }
        if !c.is_zero() {
            acc = acc.add(&power.scale_coeff(c)).expect("same order");
        }
    }
    acc
}

fn u_of_v(order: usize) -> Result<TruncSeries> {
    let quintic = chart_quintic(order);
    let dquintic = chart_quintic_derivative(order);
    let v2 = TruncSeries::from_sparse(order, [(2, GradedPoly::one())]);
    let mut u = v2.clone();
    for _ in 0..NEWTON_CAP {
        let phi = eval_poly(&quintic, &u).sub(&v2)?;
        if phi.is_zero() {
            return Ok(u);
        }
        u = u.sub(&phi.div(&eval_poly(&dquintic, &u))?)?;
    }
    Err(Error::Consistency("chart solve did not converge".into()))
}

/// The branch `u(v) = v² + 2αv⁶ + (12α² − β)v¹⁰ + …` of the chart C″ through the origin.
pub fn solve_u_of_v(order: usize) -> Result<TruncSeries> {
    if order < 2 {
        return Err(Error::InvalidInput("chart solve needs order ≥ 2".into()));
    }
    u_of_v(order)
}

/// `∫ dv / (1 − 6αu(v)² + 5βu(v)⁴)` through `v^N`.
pub fn log_phi(order: usize) -> Result<TruncSeries> {
    if order < 1 {
        return Err(Error::InvalidInput("logarithm needs order ≥ 1".into()));
    }
    let n = order - 1;
    let u = u_of_v(n)?;
    let denom = eval_poly(&chart_quintic_derivative(n), &u);
    Ok(TruncSeries::one(n).div(&denom)?.integrate())
}

/// `1 − 2αt⁴ + βt⁸` truncated at `order`.
pub fn legendre_quartic(order: usize) -> TruncSeries {
    TruncSeries::from_sparse(
        order,
        [
            (0, GradedPoly::one()),
            (4, GradedPoly::alpha().scale(&int(-2))),
            (8, GradedPoly::beta()),
        ],
    )
}

/// `v(t) = t·(1 − 2αt⁴ + βt⁸)^{1/2}`, the parametrization with `u(t) = t²`.
pub fn v_of_t(order: usize) -> Result<TruncSeries> {
    if order < 1 {
        return Err(Error::InvalidInput("v(t) needs order ≥ 1".into()));
    }
    Ok(legendre_quartic(order - 1).sqrt_unit()?.shift_up())
}

/// `t(v)`, the compositional inverse of [`v_of_t`].
pub fn t_of_v(order: usize) -> Result<TruncSeries> {
    v_of_t(order)?.revert()
}

/// `(t², v(t))` lies on C″: `v(t)² = t²(1 − 2αt⁴ + βt⁸)` through `t^order`.
pub fn parametrization_check(order: usize) -> Result<bool> {
    let v = v_of_t(order)?;
    let t2 = TruncSeries::from_sparse(order, [(2, GradedPoly::one())]);
    let rhs = eval_poly(&chart_quintic(order), &t2);
    Ok(v.mul(&v)? == rhs)
}

/// `(du/dt)/(2v(t)) = (1 − 2αt⁴ + βt⁸)^{-1/2}` through `t^order`.
pub fn differential_check(order: usize) -> Result<bool> {
    differential_check_with(&v_of_t(order + 1)?, order)
}

/// As [`differential_check`] with a caller-supplied `v(t)` of order `order + 1`.
pub fn differential_check_with(v: &TruncSeries, order: usize) -> Result<bool> {
    if v.order() != order + 1 {
        return Err(Error::MixedOrder(v.order(), order + 1));
    }
    let du = TruncSeries::from_sparse(order + 1, [(1, GradedPoly::constant(int(2)))]);
    // both sides vanish at t = 0; cancel one factor of t first
    let lhs = du.shift_down()?.div(&v.scale(&int(2)).shift_down()?)?;
    let rhs = TruncSeries::one(order).div(&legendre_quartic(order).sqrt_unit()?)?;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum NormalForm {
    /// `Y² = X⁵ + X`, reached at α = 0.
    Bolza { equation: String },
    /// `Y² = X⁵ + X³ + jX` with `j = β/(4α²) ∉ {0, 1/4}`.
    Family {
        #[serde(serialize_with = "ser_rational")]
        j: Rational,
        equation: String,
    },
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::exact::RationalJson::from(r).serialize(s)
}

/// Normal form of the member with parameters `(α₀, β₀)`.
pub fn curve_normal_form(alpha: &Rational, beta: &Rational) -> Result<NormalForm> {
    use num_traits::Zero;
    if beta.is_zero() {
        return Err(Error::InvalidInput("singular member: β = 0".into()));
    }
    if (alpha * alpha - beta).is_zero() {
        return Err(Error::InvalidInput("singular member: α² − β = 0".into()));
    }
    if alpha.is_zero() {
        return Ok(NormalForm::Bolza { equation: "Y^2 = X^5 + X".into() });
    }
    let j = beta / (alpha * alpha * int(4));
    debug_assert!(!j.is_zero() && j != rat(1, 4));
    let equation = format!("Y^2 = X^5 + X^3 + ({})*X", crate::exact::fmt_rational(&j));
    Ok(NormalForm::Family { j, equation })
}

#[derive(Debug, Clone, Serialize)]
pub struct AutomorphismReport {
    pub chart_glue: bool,
    pub order_four_preserves_curve: bool,
    pub order_four_squared_is_hyperelliptic: bool,
    pub involution_preserves_curve: bool,
    pub involution_squares_to_identity: bool,
}

impl AutomorphismReport {
    pub fn all_hold(&self) -> bool {
        self.chart_glue
            && self.order_four_preserves_curve
            && self.order_four_squared_is_hyperelliptic
            && self.involution_preserves_curve
            && self.involution_squares_to_identity
    }
}

/// `(x, y) ↦ (−x, unit·y)`; the automorphism of order four uses `unit = i`.
pub fn order_four_map(unit: GaussianRational) -> [Laurent; 5] {
    let mut m = identity_map();
    m[X] = Laurent::var(X).scale(&GaussianRational::from_ints(-1, 0));
    m[Y] = Laurent::var(Y).scale(&unit);
    m
}

/// `(x, y) ↦ (γ²/x, −γ³y/x³)` with `γ⁴ = β`.
pub fn involution_map() -> [Laurent; 5] {
    let g = Laurent::var(GAMMA);
    let xinv = Laurent::var(X).powi(-1).unwrap();
    let mut m = identity_map();
    m[X] = g.powi(2).unwrap().mul(&xinv);
    m[Y] = g
        .powi(3)
        .unwrap()
        .mul(&Laurent::var(Y))
        .mul(&xinv.powi(3).unwrap())
        .scale(&GaussianRational::from_ints(-1, 0));
    m
}

/// True iff pulling the curve equation back along `map` gives a monomial
/// multiple of the equation (modulo `γ⁴ = β`).
pub fn preserves_curve(map: &[Laurent; 5]) -> bool {
    let e = CurveFamily::affine_equation();
    match e.substitute(map) {
        Some(pulled) => pulled.is_monomial_multiple(&e, Laurent::reduce_gamma4),
        None => false,
    }
}

fn maps_equal(a: &[Laurent; 5], b: &[Laurent; 5]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.reduce_gamma4() == y.reduce_gamma4())
}

pub fn automorphism_checks() -> AutomorphismReport {
    let e1 = CurveFamily::affine_equation();
    let e2 = CurveFamily::chart_equation();
    // x = 1/u, y = v/u³ carries C′ to u⁻⁶·C″
    let mut glue = identity_map();
    glue[X] = Laurent::var(X).powi(-1).unwrap();
    glue[Y] = Laurent::var(Y).mul(&Laurent::var(X).powi(-3).unwrap());
    let chart_glue = e1
        .substitute(&glue)
        .map(|p| p.mul(&Laurent::var(X).powi(6).unwrap()) == e2)
        .unwrap_or(false);

    let rot = order_four_map(GaussianRational::i());
    let mut hyperelliptic = identity_map();
    hyperelliptic[Y] = Laurent::var(Y).scale(&GaussianRational::from_ints(-1, 0));
    let rot2 = compose_maps(&rot, &rot).expect("polynomial map");

    let inv = involution_map();
    let inv2 = compose_maps(&inv, &inv);

    AutomorphismReport {
        chart_glue,
        order_four_preserves_curve: preserves_curve(&rot),
        order_four_squared_is_hyperelliptic: maps_equal(&rot2, &hyperelliptic),
        involution_preserves_curve: preserves_curve(&inv),
        involution_squares_to_identity: inv2.is_some_and(|m| maps_equal(&m, &identity_map())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::log_phi_l;

    fn a() -> GradedPoly {
        GradedPoly::alpha()
    }

    #[test]
    fn chart_solve_coefficients() {
        let u = solve_u_of_v(13).unwrap();
        assert_eq!(u.coeff(2), &GradedPoly::one());
        assert_eq!(u.coeff(6), &a().scale(&int(2)));
        assert_eq!(u.coeff(10), &(&(&a() * &a()).scale(&int(12)) - &GradedPoly::beta()));
        assert!(u.is_supported_on(2, 4));
        // defining equation holds exactly
        let lhs = eval_poly(&chart_quintic(13), &u);
        assert_eq!(lhs, TruncSeries::from_sparse(13, [(2, GradedPoly::one())]));
        assert!(solve_u_of_v(1).is_err());
    }

    #[test]
    fn precheck_holds() {
        assert!(quintic_derivative_precheck());
    }

    #[test]
    fn log_phi_shape() {
        let l = log_phi(13).unwrap();
        assert!(l.is_odd4());
        assert_eq!(l.coeff(1), &GradedPoly::one());
        assert_eq!(l.coeff(5), &a().scale(&rat(6, 5)));
        for k in 0..=3 {
            let c = l.coeff(4 * k + 1);
            assert!(c.is_homogeneous());
            assert_eq!(c.legendre_degree().unwrap() as usize, k);
        }
        assert!(log_phi(0).is_err());
    }

    #[test]
    fn reparametrization_identity() {
        for n in [5, 9, 13, 17] {
            let lhs = log_phi(n).unwrap();
            let rhs = log_phi_l(n).compose(&t_of_v(n).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "order {n}");
        }
    }

    #[test]
    fn v_of_t_values() {
        let v = v_of_t(13).unwrap();
        assert_eq!(v.coeff(1), &GradedPoly::one());
        assert_eq!(v.coeff(5), &-a());
        for c in v.coeffs() {
            for (_, _, q) in c.terms() {
                let d = q.denom().clone();
                assert_eq!(&d & (&d - num_bigint::BigInt::from(1)), num_bigint::BigInt::from(0), "denominator {d} not a power of 2");
            }
        }
        assert!(parametrization_check(13).unwrap());
        let t = t_of_v(9).unwrap();
        assert_eq!(t.coeff(5), &a());
    }

    #[test]
    fn differential() {
        assert!(differential_check(1).unwrap());
        assert!(differential_check(8).unwrap());
        assert!(differential_check(13).unwrap());
        let bumped = v_of_t(9)
            .unwrap()
            .add(&TruncSeries::from_sparse(9, [(9, GradedPoly::one())]))
            .unwrap();
        assert!(!differential_check_with(&bumped, 8).unwrap());
    }

    #[test]
    fn normal_forms() {
        assert!(matches!(curve_normal_form(&int(0), &int(1)).unwrap(), NormalForm::Bolza { .. }));
        match curve_normal_form(&int(1), &int(2)).unwrap() {
            NormalForm::Family { j, .. } => assert_eq!(j, rat(1, 2)),
            other => panic!("{other:?}"),
        }
        let err = curve_normal_form(&int(1), &int(1)).unwrap_err();
        assert!(err.to_string().contains("α² − β = 0"));
        let err = curve_normal_form(&int(3), &int(0)).unwrap_err();
        assert!(err.to_string().contains("β = 0"));
    }

    #[test]
    fn automorphisms() {
        let r = automorphism_checks();
        assert!(r.all_hold(), "{r:?}");
        assert!(!preserves_curve(&order_four_map(GaussianRational::one())));
    }

    #[test]
    fn discriminant_degree() {
        assert_eq!(CurveFamily::discriminant().legendre_degree().unwrap(), 4);
    }
}
