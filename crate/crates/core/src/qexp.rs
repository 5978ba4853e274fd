//! Fourier expansions at the cusp in the variable `s = q^{1/2} = e^{πiτ}`.
//!
//! The theta conventions are `θ₁₀(τ) = Σ_n e^{πi(n+1/2)²τ}` and
//! `θ₀₁(τ) = Σ_n (−1)^n e^{πin²τ}`; only fourth powers appear, so every
//! expansion lies in `Q[[s]]`.

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::{int, is_p_integral_rational, rat, GradedPoly, Rational, RationalJson};
use crate::series::TruncSeries;
use crate::{Error, Result};

/// Absolute tolerance for numeric zero checks.
pub const ZERO_TOL: f64 = 1e-6;
/// Relative tolerance for convergence self-consistency.
pub const REL_TOL: f64 = 1e-8;

/// A rational power series in `s`, exact through `s^K`.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion(TruncSeries<Rational>);

impl QExpansion {
    pub fn from_series(s: TruncSeries<Rational>) -> Self {
        QExpansion(s)
    }

    pub fn series(&self) -> &TruncSeries<Rational> {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        self.0.coeff(k)
    }

    pub fn is_integral(&self) -> bool {
        self.0.coeffs().iter().all(|c| c.is_integer())
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.0.coeffs().iter().all(|c| is_p_integral_rational(c, p))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.0.coeffs().iter().position(|c| !c.is_zero())
    }

    fn lift(&self, f: impl FnOnce(&TruncSeries<Rational>) -> Result<TruncSeries<Rational>>) -> Result<Self> {
        f(&self.0).map(QExpansion)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.lift(|s| s.add(&o.0))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.lift(|s| s.sub(&o.0))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.lift(|s| s.mul(&o.0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QExpansion(self.0.scale(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        QExpansion(self.0.pow(e))
    }
}

impl std::fmt::Display for QExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0.display_in("s"))
    }
}

impl Serialize for QExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<RationalJson> = self.0.coeffs().iter().map(RationalJson::from).collect();
        let mut st = s.serialize_struct("QExpansion", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// `(θ₁₀⁴, θ₀₁⁴)` through `s^K`.
pub fn theta_fourth_powers(order: usize) -> Result<(QExpansion, QExpansion)> {
    if order < 1 {
        return Err(Error::InvalidInput("q-expansion order must be ≥ 1".into()));
    }
    let tri = TruncSeries::from_sparse(
        order,
        (0..).map(|n: usize| n * (n + 1)).take_while(|&e| e <= order).map(|e| (e, int(1))),
    );
    let t10 = tri.pow(4).shift_up().truncate(order)?.scale(&int(16));
    let sq = TruncSeries::from_sparse(
        order,
        std::iter::once((0, int(1))).chain(
            (1..)
                .map(|n: usize| (n * n, n))
                .take_while(|&(e, _)| e <= order)
                .map(|(e, n)| (e, int(if n % 2 == 0 { 2 } else { -2 }))),
        ),
    );
    Ok((QExpansion(t10), QExpansion(sq.pow(4))))
}

/// The expansions of `δ′, ε′, α, β, Δ_G`.
#[derive(Clone, Debug, Serialize)]
pub struct Forms {
    pub delta_p: QExpansion,
    pub eps_p: QExpansion,
    pub alpha: QExpansion,
    pub beta: QExpansion,
    pub delta_g: QExpansion,
}

impl Forms {
    /// `α = −2⁷(ε′ − δ′²/2)`, `β = 2¹²δ′⁴`, `Δ_G = 2⁶ε′(ε′ − δ′²)`.
    pub fn from_primitives(delta_p: QExpansion, eps_p: QExpansion) -> Result<Self> {
        let d2 = delta_p.mul(&delta_p)?;
        let alpha = eps_p.sub(&d2.scale(&rat(1, 2)))?.scale(&int(-128));
        let beta = d2.mul(&d2)?.scale(&int(4096));
        let delta_g = eps_p.mul(&eps_p.sub(&d2)?)?.scale(&int(64));
        Ok(Forms { delta_p, eps_p, alpha, beta, delta_g })
    }

    pub fn get(&self, name: FormName) -> &QExpansion {
        match name {
            FormName::DeltaPrime => &self.delta_p,
            FormName::EpsPrime => &self.eps_p,
            FormName::Alpha => &self.alpha,
            FormName::Beta => &self.beta,
            FormName::DeltaG => &self.delta_g,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormName {
    DeltaPrime,
    EpsPrime,
    Alpha,
    Beta,
    DeltaG,
}

impl std::str::FromStr for FormName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "delta" | "deltap" | "delta_p" | "delta'" => Ok(FormName::DeltaPrime),
            "eps" | "epsp" | "eps_p" | "eps'" | "epsilon" => Ok(FormName::EpsPrime),
            "alpha" => Ok(FormName::Alpha),
            "beta" => Ok(FormName::Beta),
            "deltag" | "delta_g" | "disc" => Ok(FormName::DeltaG),
            _ => Err(Error::InvalidInput(format!(
                "unknown form '{s}' (expected alpha, beta, delta_g, delta_p, eps_p)"
            ))),
        }
    }
}

/// `δ′ = (θ₁₀⁴ − θ₀₁⁴)/8`, `ε′ = −θ₁₀⁴θ₀₁⁴/16` and the forms built from them.
pub fn forms(order: usize) -> Result<Forms> {
    if order < 2 {
        return Err(Error::InvalidInput("forms need order ≥ 2".into()));
    }
    let (t10, t01) = theta_fourth_powers(order)?;
    let delta_p = t10.sub(&t01)?.scale(&rat(1, 8));
    let eps_p = t10.mul(&t01)?.scale(&rat(-1, 16));
    Forms::from_primitives(delta_p, eps_p)
}

fn integrality_and_identity_of(f: &Forms) -> Result<bool> {
    let integral = f.alpha.is_integral()
        && f.delta_g.is_integral()
        && f.delta_p.scale(&int(8)).is_integral()
        && f.eps_p.is_integral();
    let residual = f.alpha.mul(&f.alpha)?.sub(&f.beta)?.sub(&f.delta_g.scale(&int(256)))?;
    Ok(integral && residual.is_zero())
}

/// `α, Δ_G, 8δ′, ε′` have integer coefficients and `α² = 2⁸Δ_G + β` through `s^K`.
pub fn integrality_and_identity(order: usize) -> Result<bool> {
    integrality_and_identity_of(&forms(order)?)
}

/// As [`integrality_and_identity`] with `Δ_G` taken from the caller.
pub fn integrality_and_identity_with(order: usize, delta_g: QExpansion) -> Result<bool> {
    let mut f = forms(order)?;
    f.delta_g = delta_g;
    integrality_and_identity_of(&f)
}

/// `s = e^{πiτ}`; `τ` must lie in the upper half-plane.
pub fn nome(tau: Complex64) -> Result<Complex64> {
    if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
        return Err(Error::InvalidInput(format!("τ = {tau} is not in the upper half-plane")));
    }
    Ok((Complex64::i() * std::f64::consts::PI * tau).exp())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Evaluation {
    pub re: f64,
    pub im: f64,
    pub trunc_bound: f64,
}

impl Evaluation {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Growth exponent assumed for the tail estimate: `|c_k| ≤ A k^8`.
const TAIL_DEGREE: i32 = 8;

/// `Σ c_k s^k` by Horner, with an estimate of the neglected tail.
///
/// The tail bound takes `A = max_k |c_k|/k^8` over the known coefficients
/// and sums `A m^8 |s|^m` for `m > K`.
pub fn eval_form(form: &QExpansion, tau: Complex64) -> Result<Evaluation> {
    let s = nome(tau)?;
    let r = s.norm();
    if r >= 1.0 {
        return Err(Error::InvalidInput(format!("|s| = {r} ≥ 1, series diverges")));
    }
    let coeffs: Vec<f64> = form
        .series()
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let mut acc = Complex64::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * s + c;
    }
    let a = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.abs() / (k as f64).powi(TAIL_DEGREE))
        .fold(0.0, f64::max);
    let mut tail = 0.0;
    let mut m = form.order() + 1;
    loop {
        let term = a * (m as f64).powi(TAIL_DEGREE) * r.powi(m as i32);
        tail += term;
        if term <= tail * 1e-17 || term == 0.0 || m > form.order() + 100_000 {
            break;
        }
        m += 1;
    }
    Ok(Evaluation { re: acc.re, im: acc.im, trunc_bound: tail })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TransformResiduals {
    pub residual_c4: f64,
    pub residual_s: f64,
}

/// Residuals of `α((1+τ)/(1−τ)) = −(1−τ)⁴/4 · α(τ)` and `α(−1/τ) = τ⁴α(τ)`.
pub fn transform_check(tau: Complex64, order: usize) -> Result<TransformResiduals> {
    let alpha = forms(order)?.alpha;
    let one = Complex64::one();
    if (one - tau).norm() == 0.0 || tau.norm() == 0.0 {
        return Err(Error::InvalidInput("τ is a pole of the transformation".into()));
    }
    let a = eval_form(&alpha, tau)?.value();
    let a_c4 = eval_form(&alpha, (one + tau) / (one - tau))?.value();
    let a_s = eval_form(&alpha, -one / tau)?.value();
    Ok(TransformResiduals {
        residual_c4: (a_c4 + (one - tau).powi(4) / 4.0 * a).norm(),
        residual_s: (a_s - tau.powi(4) * a).norm(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JValue {
    Finite { re: f64, im: f64 },
    Pole { alpha_abs: f64 },
}

/// `j_G = β/(4α²)`, or a pole signal where `|α| < 10⁻⁶`.
pub fn j_g(tau: Complex64, order: usize) -> Result<JValue> {
    j_g_with_tol(tau, order, ZERO_TOL)
}

/// As [`j_g`] with a caller-chosen pole threshold on `|α|`.
pub fn j_g_with_tol(tau: Complex64, order: usize, tol: f64) -> Result<JValue> {
    let f = forms(order)?;
    let a = eval_form(&f.alpha, tau)?.value();
    if a.norm() < tol {
        return Ok(JValue::Pole { alpha_abs: a.norm() });
    }
    let j = eval_form(&f.beta, tau)?.value() / (4.0 * a * a);
    Ok(JValue::Finite { re: j.re, im: j.im })
}

/// `Σ c_{ij} α^i β^j` with the expansions of `α` and `β`.
pub fn substitute_forms(poly: &GradedPoly, f: &Forms) -> Result<QExpansion> {
    let order = f.alpha.order();
    let mut acc = QExpansion(TruncSeries::zero(order));
    let mut alpha_pows = vec![QExpansion(TruncSeries::one(order))];
    let mut beta_pows = vec![QExpansion(TruncSeries::one(order))];
    for (i, j, c) in poly.terms() {
        while alpha_pows.len() <= i as usize {
            let next = alpha_pows.last().unwrap().mul(&f.alpha)?;
            alpha_pows.push(next);
        }
        while beta_pows.len() <= j as usize {
            let next = beta_pows.last().unwrap().mul(&f.beta)?;
            beta_pows.push(next);
        }
        acc = acc.add(&alpha_pows[i as usize].mul(&beta_pows[j as usize])?.scale(c))?;
    }
    Ok(acc)
}

/// `v_1` and `v_2` at `p`, expanded at the cusp, are p-integral through `s^K`.
pub fn genus_qexp_consistency(p: u64, order: usize) -> Result<bool> {
    let f = forms(order)?;
    for v in crate::chromatic::hazewinkel_images(p, 2)? {
        if !substitute_forms(&v, &f)?.is_p_integral(p) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // r_4(n) = 8 Σ_{d | n, 4 ∤ d} d, the number of representations as four squares
    fn r4(n: usize) -> i64 {
        if n == 0 {
            return 1;
        }
        8 * (1..=n).filter(|d| n % d == 0 && d % 4 != 0).sum::<usize>() as i64
    }

    // representations of n as a sum of four triangular numbers: σ(2n + 1)
    fn t4(n: usize) -> i64 {
        let m = 2 * n + 1;
        (1..=m).filter(|d| m % d == 0).sum::<usize>() as i64
    }

    #[test]
    fn theta_oracles() {
        let k = 40;
        let (t10, t01) = theta_fourth_powers(k).unwrap();
        // θ₀₁⁴(s) = Σ (−1)^n r_4(n) s^n
        for n in 0..=k {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(t01.coeff(n), &int(sign * r4(n)), "n = {n}");
        }
        // θ₁₀⁴ = 16 s Σ t_4(n) s^{2n}
        for n in 0..=k {
            let want = if n % 2 == 1 { 16 * t4((n - 1) / 2) } else { 0 };
            assert_eq!(t10.coeff(n), &int(want), "n = {n}");
        }
    }

    #[test]
    fn leading_terms() {
        let f = forms(10).unwrap();
        assert_eq!(f.delta_p.coeff(0), &rat(-1, 8));
        assert_eq!(f.eps_p.coeff(0), &int(0));
        assert_eq!(f.eps_p.coeff(1), &int(-1));
        assert_eq!(f.alpha.coeff(0), &int(1));
        assert_eq!(f.delta_g.valuation(), Some(1));
        assert_eq!(f.delta_g.coeff(1), &int(1));
        assert_eq!(f.beta.coeff(0), &int(1));
    }

    #[test]
    fn identity_and_negative_control() {
        assert!(integrality_and_identity(50).unwrap());
        let f = forms(20).unwrap();
        let wrong = f.eps_p.mul(&f.eps_p).unwrap().scale(&int(64));
        assert!(!integrality_and_identity_with(20, wrong).unwrap());
        // β from δ′ alone and from the identity agree
        let alt = f.alpha.mul(&f.alpha).unwrap().sub(&f.delta_g.scale(&int(256))).unwrap();
        assert_eq!(alt, f.beta);
    }

    #[test]
    fn zeros_and_pole() {
        let f = forms(40).unwrap();
        let bolza = Complex64::new(1.0, 2f64.sqrt());
        let a = eval_form(&f.alpha, bolza).unwrap();
        assert!(a.value().norm() < 1e-8, "{a:?}");
        let b = eval_form(&f.beta, Complex64::i()).unwrap();
        assert!(b.value().norm() < 1e-6, "{b:?}");
        let far = eval_form(&f.alpha, Complex64::new(0.3, 12.0)).unwrap();
        assert!((far.value() - 1.0).norm() < 1e-12);
        assert!(matches!(j_g(bolza, 40).unwrap(), JValue::Pole { .. }));
        match j_g(Complex64::i(), 40).unwrap() {
            JValue::Finite { re, im } => assert!(re.abs() < 1e-6 && im.abs() < 1e-6),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn j_converges() {
        let tau = Complex64::new(0.0, 2.0);
        let (JValue::Finite { re: a, im: b }, JValue::Finite { re: c, im: d }) =
            (j_g(tau, 40).unwrap(), j_g(tau, 60).unwrap())
        else {
            panic!("unexpected pole");
        };
        let (x, y) = (Complex64::new(a, b), Complex64::new(c, d));
        assert!((x - y).norm() <= REL_TOL * y.norm());
    }

    #[test]
    fn transformations() {
        let r = transform_check(Complex64::new(0.0, 2.0), 60).unwrap();
        assert!(r.residual_c4 < 1e-6 && r.residual_s < 1e-6, "{r:?}");
        let r = transform_check(Complex64::new(0.2, 1.3), 60).unwrap();
        assert!(r.residual_c4 < 1e-6 && r.residual_s < 1e-6, "{r:?}");
        // a wrong weight fails
        let alpha = forms(60).unwrap().alpha;
        let tau = Complex64::new(0.1, 1.5);
        let lhs = eval_form(&alpha, -1.0 / tau).unwrap().value();
        let rhs = tau.powi(2) * eval_form(&alpha, tau).unwrap().value();
        assert!((lhs - rhs).norm() > 1e-3);
        assert!(transform_check(Complex64::new(0.0, -1.0), 10).is_err());
    }

    #[test]
    fn translation_by_two() {
        let alpha = forms(30).unwrap().alpha;
        let tau = Complex64::new(0.37, 0.9);
        let a = eval_form(&alpha, tau).unwrap().value();
        let b = eval_form(&alpha, tau + 2.0).unwrap().value();
        assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn genus_expansions() {
        let f = forms(20).unwrap();
        assert_eq!(substitute_forms(&GradedPoly::alpha(), &f).unwrap(), f.alpha);
        assert!(genus_qexp_consistency(5, 20).unwrap());
        // a non-integral polynomial is caught
        let bad = GradedPoly::alpha().scale(&rat(1, 5));
        assert!(!substitute_forms(&bad, &f).unwrap().is_p_integral(5));
    }

    #[test]
    fn json_shape() {
        let f = forms(3).unwrap();
        let v = serde_json::to_value(&f.delta_p).unwrap();
        assert_eq!(v["order"], 3);
        assert_eq!(v["coeffs"][0]["num"], "-1");
        assert_eq!(v["coeffs"][0]["den"], "8");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn doubling_order_within_bound(re in -1.0f64..1.0, im in 0.6f64..3.0) {
            let tau = Complex64::new(re, im);
            let lo = forms(20).unwrap();
            let hi = forms(40).unwrap();
            for name in [FormName::Alpha, FormName::Beta, FormName::DeltaG] {
                let a = eval_form(lo.get(name), tau).unwrap();
                let b = eval_form(hi.get(name), tau).unwrap();
                prop_assert!((a.value() - b.value()).norm() <= a.trunc_bound + 1e-12);
            }
        }
    }
}
