//! Images of the Hazewinkel generators under the Legendre genus and the
//! regularity checks that make the resulting theory Landweber exact at
//! height two.
//!
//! For a prime `p ≡ 1 (mod 4)` the coefficient of `x^{p^n}` in the Legendre
//! logarithm is `ℓ_n = P_{(p^n−1)/4} / p^n`, and the generators come from
//! `p ℓ_n = Σ_{i<n} ℓ_i v_{n−i}^{p^i}` with `ℓ_0 = 1`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::exact::{binomial, dehom_gcd, ensure_prime, int, p_adic_valuation, rat, FpGradedPoly, FpPoly, GradedPoly, Rational};
use crate::legendre::LegendreTable;
use crate::{Error, Result};

fn check_prime(p: u64) -> Result<()> {
    ensure_prime(p)?;
    if p % 4 != 1 {
        return Err(Error::UnsupportedPrime {
            p,
            reason: "only split primes p ≡ 1 (mod 4) carry nonzero logarithm coefficients at x^{p^n}".into(),
        });
    }
    Ok(())
}

fn index(p: u64, n: u32) -> Result<usize> {
    let pn = p
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{n} overflows")))?;
    Ok(((pn - 1) / 4) as usize)
}

/// `ℓ_0 .. ℓ_n` and `v_1 .. v_n` for one prime, sharing a Legendre table.
struct Generators {
    ell: Vec<GradedPoly>,
    v: Vec<GradedPoly>,
}

fn generators(p: u64, n_max: u32, mut progress: impl FnMut(&str)) -> Result<Generators> {
    check_prime(p)?;
    if n_max == 0 {
        return Err(Error::InvalidInput("generator index must be ≥ 1".into()));
    }
    let top = index(p, n_max)?;
    progress(&format!("building Legendre table through P_{top}"));
    let table = LegendreTable::new(top);
    let mut ell = vec![GradedPoly::one()];
    let mut v: Vec<GradedPoly> = vec![GradedPoly::zero()];
    let mut pn = BigInt::from(1);
    for n in 1..=n_max {
        pn *= p;
        let l_n = table.get(index(p, n)?).scale(&Rational::new(1.into(), pn.clone()));
        let mut acc = l_n.scale(&int(p as i64));
        for i in 1..n {
            let e = (p as u32)
                .checked_pow(i)
                .ok_or_else(|| Error::InvalidInput("exponent overflow".into()))?;
            acc = &acc - &(&ell[i as usize] * &v[(n - i) as usize].pow(e));
        }
        progress(&format!("v_{n} done"));
        ell.push(l_n);
        v.push(acc);
    }
    Ok(Generators { ell, v })
}

/// `ℓ_n = P_{(p^n−1)/4} / p^n`.
pub fn ell(n: u32, p: u64) -> Result<GradedPoly> {
    check_prime(p)?;
    if n == 0 {
        return Ok(GradedPoly::one());
    }
    let table = LegendreTable::new(index(p, n)?);
    let pn = BigInt::from(p).pow(n);
    Ok(table.get(index(p, n)?).scale(&Rational::new(1.into(), pn)))
}

/// The image of the `n`-th Hazewinkel generator at `p`.
pub fn hazewinkel_v(n: u32, p: u64) -> Result<GradedPoly> {
    let g = generators(p, n, |_| {})?;
    Ok(g.v[n as usize].clone())
}

/// `v_1, …, v_n` at once.
pub fn hazewinkel_images(p: u64, n_max: u32) -> Result<Vec<GradedPoly>> {
    Ok(generators(p, n_max, |_| {})?.v.split_off(1))
}

/// `v_1 = P_{(p−1)/4}`.
pub fn v1_closed_form(p: u64) -> Result<GradedPoly> {
    check_prime(p)?;
    Ok(LegendreTable::new(index(p, 1)?).get(index(p, 1)?).clone())
}

/// `v_2 = (P_{(p²−1)/4} − P_{(p−1)/4}^{p+1}) / p`.
pub fn v2_closed_form(p: u64) -> Result<GradedPoly> {
    check_prime(p)?;
    let table = LegendreTable::new(index(p, 2)?);
    let v1 = table.get(index(p, 1)?);
    Ok((table.get(index(p, 2)?) - &v1.pow(p as u32 + 1)).scale(&rat(1, p as i64)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LandweberVerdicts {
    pub v1_nonzero_mod_p: bool,
    pub v2_nonzero_mod_p_v1: bool,
    pub height2_cozero_check: bool,
}

impl LandweberVerdicts {
    pub fn all_pass(&self) -> bool {
        self.v1_nonzero_mod_p && self.v2_nonzero_mod_p_v1 && self.height2_cozero_check
    }
}

/// Outcome of the regularity ladder at one prime.
#[derive(Debug, Clone, Serialize)]
pub struct LandweberReport {
    pub p: u64,
    pub verdicts: LandweberVerdicts,
    pub v1_mod_p: FpGradedPoly,
    /// `v_2 mod (p, v_1)`, absent when `v_1` is not a valid divisor.
    pub v2_mod_p_v1: Option<FpGradedPoly>,
    /// Monic gcd of `v_1(x, 1)` and `v_2(x, 1)` over F_p.
    pub gcd: Option<String>,
    pub v1_at_beta_zero_nonzero: bool,
    pub v2_at_beta_zero_nonzero: bool,
    pub notes: Vec<String>,
}

fn landweber_from(p: u64, v1: &GradedPoly, v2: &GradedPoly) -> Result<LandweberReport> {
    let mut notes = Vec::new();
    let v1p = v1.reduce_mod_p(p)?;
    let v2p = v2.reduce_mod_p(p)?;
    let v1_nonzero = !v1p.is_zero();

    let v2_mod = match v1p.reduce_mod_v1(&v1p) {
        Ok(_) => Some(v2p.reduce_mod_v1(&v1p)?),
        Err(e) => {
            notes.push(format!("reduction modulo v1 unavailable: {e}"));
            None
        }
    };
    let v2_nonzero = v2_mod.as_ref().is_some_and(|r| !r.is_zero());

    // Common zeros of two homogeneous forms are lines through the origin:
    // those with β ≠ 0 are roots of the gcd at β = 1, the remaining one is β = 0.
    // Every common line must lie on Δ_G = (α² − β)/2⁸ = 0, i.e. x² = 1 at β = 1.
    let (gcd, gcd_ok) = match dehom_gcd(&v1p, &v2p) {
        Ok(g) => {
            let d = g.degree().unwrap_or(0) as u32;
            let disc = FpPoly::new(p, vec![p - 1, 0, 1]);
            let ok = g.divides(&disc.pow(d.max(1)));
            if !ok {
                notes.push(format!("gcd {g} has a root off α² = β"));
            }
            (Some(g.to_string()), ok)
        }
        Err(e) => {
            notes.push(format!("gcd undefined: {e}"));
            (None, false)
        }
    };
    let v1_ray = !v1p.at_beta_zero().is_zero();
    let v2_ray = !v2p.at_beta_zero().is_zero();
    if !(v1_ray || v2_ray) {
        notes.push("v1 and v2 share the zero line β = 0, where Δ_G ≠ 0".into());
    }
    Ok(LandweberReport {
        p,
        verdicts: LandweberVerdicts {
            v1_nonzero_mod_p: v1_nonzero,
            v2_nonzero_mod_p_v1: v2_nonzero,
            height2_cozero_check: gcd_ok && (v1_ray || v2_ray),
        },
        v1_mod_p: v1p,
        v2_mod_p_v1: v2_mod,
        gcd,
        v1_at_beta_zero_nonzero: v1_ray,
        v2_at_beta_zero_nonzero: v2_ray,
        notes,
    })
}

/// Runs the checks (a) `v_1 ≢ 0 mod p`, (b) `v_2 ≢ 0 mod (p, v_1)` and
/// (c) every common zero of `v_1, v_2` over the algebraic closure of F_p
/// lies on `Δ_G = 0`.
pub fn landweber_check(p: u64) -> Result<LandweberReport> {
    let g = generators(p, 2, |_| {})?;
    landweber_from(p, &g.v[1], &g.v[2])
}

#[derive(Debug, Clone, Serialize)]
pub struct VGenReport {
    pub p: u64,
    pub v: Vec<GradedPoly>,
    pub ell: Vec<GradedPoly>,
    pub integrality: Vec<bool>,
    pub landweber: LandweberVerdicts,
    pub details: Vec<String>,
}

impl VGenReport {
    pub fn all_integral(&self) -> bool {
        self.integrality.iter().all(|&b| b)
    }
}

/// Computes `v_1 .. v_{n_max}` and records whether each is p-integral.
pub fn key_lemma_check(p: u64, n_max: u32) -> Result<VGenReport> {
    key_lemma_check_with_progress(p, n_max, |_| {})
}

pub fn key_lemma_check_with_progress(p: u64, n_max: u32, progress: impl FnMut(&str)) -> Result<VGenReport> {
    let g = generators(p, n_max.max(2), progress)?;
    let mut details = Vec::new();
    let n = n_max as usize;
    let mut integrality = Vec::with_capacity(n);
    for (k, v) in g.v[1..=n].iter().enumerate() {
        let ok = v.is_p_integral(p)?;
        integrality.push(ok);
        let deg = if v.is_zero() {
            "zero".to_string()
        } else {
            format!("degree {}", v.legendre_degree()?)
        };
        details.push(format!(
            "v_{} has {} terms, {deg}, {}",
            k + 1,
            v.len(),
            if ok { "p-integral" } else { "NOT p-integral" }
        ));
    }
    let landweber = if g.v[1].is_p_integral(p)? && g.v[2].is_p_integral(p)? {
        let r = landweber_from(p, &g.v[1], &g.v[2])?;
        details.extend(r.notes.iter().cloned());
        r.verdicts
    } else {
        details.push("Landweber checks skipped: v1 or v2 not p-integral".into());
        LandweberVerdicts { v1_nonzero_mod_p: false, v2_nonzero_mod_p_v1: false, height2_cozero_check: false }
    };
    Ok(VGenReport {
        p,
        v: g.v[1..=n].to_vec(),
        ell: g.ell[1..=n].to_vec(),
        integrality,
        landweber,
        details,
    })
}

/// The three reductions at p = 5 modulo `(5, v_1 = α)`.
#[derive(Debug, Clone, Serialize)]
pub struct Cor1Report {
    pub v1: GradedPoly,
    pub v2_reduced: FpGradedPoly,
    pub disc_cubed_reduced: FpGradedPoly,
    pub delta_g_cubed_reduced: FpGradedPoly,
    pub target: FpGradedPoly,
    pub holds: bool,
}

pub fn cor1_report() -> Result<Cor1Report> {
    let p = 5;
    let g = generators(p, 2, |_| {})?;
    let v1p = g.v[1].reduce_mod_p(p)?;
    let v2_reduced = g.v[2].reduce_mod_p(p)?.reduce_mod_v1(&v1p)?;
    let disc = &GradedPoly::alpha().pow(2) - &GradedPoly::beta();
    let disc_cubed_reduced = disc.pow(3).reduce_mod_p(p)?.reduce_mod_v1(&v1p)?;
    let delta_g = disc.scale(&rat(1, 256));
    let delta_g_cubed_reduced = delta_g.pow(3).reduce_mod_p(p)?.reduce_mod_v1(&v1p)?;
    let target = FpGradedPoly::monomial(p, 0, 3, 4);
    let holds = g.v[1] == GradedPoly::alpha()
        && v2_reduced == target
        && disc_cubed_reduced == target
        && delta_g_cubed_reduced == target;
    Ok(Cor1Report { v1: g.v[1].clone(), v2_reduced, disc_cubed_reduced, delta_g_cubed_reduced, target, holds })
}

/// `v_2 ≡ −β³ ≡ (α² − β)³ ≡ Δ_G³ (mod (5, v_1))`.
pub fn cor1_check() -> Result<bool> {
    Ok(cor1_report()?.holds)
}

#[derive(Debug, Clone, Serialize)]
pub struct Cor2Report {
    pub p: u64,
    /// `n = (p² − 1)/8`.
    pub half_index: u64,
    /// `C(2n, n)`, as a decimal string in JSON.
    #[serde(serialize_with = "ser_decimal")]
    pub binomial: BigInt,
    pub valuation: u32,
    pub alpha_divides_v1: bool,
    /// `p v_2 ≡ C(2n, n) (−β/4)^n (mod α)` over the rationals.
    pub congruence_holds: bool,
    /// `v_2 mod (p, v_1)` computed directly.
    pub v2_mod_p_v1_nonzero: bool,
    /// The valuation argument alone forces `v_2 ∉ (p, α) ⊇ (p, v_1)`.
    pub argument_concludes: bool,
}

fn ser_decimal<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// For `p ≡ 5 (mod 8)`, `v_2` is nonzero modulo `(p, v_1)`.
pub fn cor2_check(p: u64) -> Result<Cor2Report> {
    ensure_prime(p)?;
    if p % 8 != 5 {
        return Err(Error::UnsupportedPrime { p, reason: "the binomial argument needs p ≡ 5 (mod 8)".into() });
    }
    let g = generators(p, 2, |_| {})?;
    let (v1, v2) = (&g.v[1], &g.v[2]);
    let n = (p * p - 1) / 8;
    let c = binomial(2 * n, n);
    let valuation = p_adic_valuation(&c, p)?;
    let alpha_divides_v1 = v1.divisible_by_alpha();

    let quarter = Rational::new(BigInt::from(-1), BigInt::from(4));
    let rhs = GradedPoly::monomial(
        0,
        n as u32,
        Rational::from_integer(c.clone()) * num_traits::pow(quarter, n as usize),
    );
    let congruence_holds = v2.scale(&int(p as i64)).mod_alpha() == rhs;

    let v1p = v1.reduce_mod_p(p)?;
    let v2_mod_p_v1_nonzero = !v2.reduce_mod_p(p)?.reduce_mod_v1(&v1p)?.is_zero();
    Ok(Cor2Report {
        p,
        half_index: n,
        binomial: c,
        valuation,
        alpha_divides_v1,
        congruence_holds,
        v2_mod_p_v1_nonzero,
        argument_concludes: valuation == 1 && alpha_divides_v1 && congruence_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::{legendre, log_phi_l};
    use crate::series::TruncSeries;

    #[test]
    fn ell_values() {
        assert_eq!(ell(1, 5).unwrap(), GradedPoly::alpha().scale(&rat(1, 5)));
        assert_eq!(ell(2, 5).unwrap(), legendre(6).scale(&rat(1, 25)));
        assert_eq!(ell(1, 13).unwrap(), legendre(3).scale(&rat(1, 13)));
        // ℓ_n is the x^{p^n} coefficient of the logarithm
        assert_eq!(&ell(2, 5).unwrap(), log_phi_l(25).coeff(25));
        assert_eq!(&ell(1, 13).unwrap(), log_phi_l(13).coeff(13));
    }

    #[test]
    fn non_split_primes_rejected() {
        for p in [3, 7, 11, 19] {
            assert!(matches!(hazewinkel_v(1, p), Err(Error::UnsupportedPrime { .. })));
            assert!(matches!(landweber_check(p), Err(Error::UnsupportedPrime { .. })));
        }
        assert!(ell(1, 9).is_err());
        assert!(matches!(cor2_check(17), Err(Error::UnsupportedPrime { .. })));
    }

    #[test]
    fn low_generators() {
        assert_eq!(hazewinkel_v(1, 5).unwrap(), GradedPoly::alpha());
        let p3 = GradedPoly::from_terms([(3, 0, rat(5, 2)), (1, 1, rat(-3, 2))]);
        assert_eq!(hazewinkel_v(1, 13).unwrap(), p3);
        let v2 = hazewinkel_v(2, 5).unwrap();
        assert_eq!(v2, (&legendre(6) - &GradedPoly::alpha().pow(6)).scale(&rat(1, 5)));
        assert!(v2.is_p_integral(5).unwrap());
        assert!(v2.is_homogeneous());
        assert_eq!(v2.legendre_degree().unwrap(), 6);
    }

    #[test]
    fn closed_forms_match_recursion() {
        for p in [5, 13, 29] {
            assert_eq!(hazewinkel_v(1, p).unwrap(), v1_closed_form(p).unwrap());
            assert_eq!(hazewinkel_v(2, p).unwrap(), v2_closed_form(p).unwrap());
        }
    }

    #[test]
    fn key_lemma_small() {
        let r = key_lemma_check(5, 3).unwrap();
        assert_eq!(r.v.len(), 3);
        assert!(r.all_integral());
        for (k, v) in r.v.iter().enumerate() {
            assert_eq!(v.legendre_degree().unwrap() as u64, (5u64.pow(k as u32 + 1) - 1) / 4);
        }
        assert!(r.landweber.all_pass());
        let r = key_lemma_check(13, 1).unwrap();
        assert_eq!(r.v.len(), 1);
    }

    #[test]
    fn cor1() {
        let r = cor1_report().unwrap();
        assert!(r.holds);
        assert_eq!(r.v2_reduced.to_string(), "4*β^3 (mod 5)");
    }

    // Legendre's formula: ν_p(C(2n, n)) = Σ_k (⌊2n/p^k⌋ − 2⌊n/p^k⌋).
    fn binomial_valuation_oracle(n: u64, p: u64) -> u32 {
        let mut v = 0;
        let mut q = p;
        while q <= 2 * n {
            v += (2 * n / q - 2 * (n / q)) as u32;
            q *= p;
        }
        v
    }

    // Kummer: ν_p(C(2n, n)) is the number of carries adding n + n in base p.
    fn kummer_carries(mut n: u64, p: u64) -> u32 {
        let (mut carry, mut count) = (0, 0);
        while n > 0 || carry > 0 {
            let d = 2 * (n % p) + carry;
            carry = u64::from(d >= p);
            count += carry as u32;
            n /= p;
        }
        count
    }

    #[test]
    fn cor2_small_primes() {
        for p in [5u64, 13] {
            let r = cor2_check(p).unwrap();
            let n = (p * p - 1) / 8;
            assert_eq!(r.valuation, binomial_valuation_oracle(n, p));
            assert_eq!(r.valuation, kummer_carries(n, p));
            assert_eq!(r.valuation, 1);
            assert!(r.alpha_divides_v1 && r.congruence_holds && r.v2_mod_p_v1_nonzero && r.argument_concludes);
        }
        assert_eq!(cor2_check(5).unwrap().binomial, BigInt::from(20));
        for p in [29u64, 37, 53, 61] {
            assert_eq!(kummer_carries((p * p - 1) / 8, p), 1);
        }
    }

    #[test]
    fn landweber_at_five_and_thirteen() {
        let r = landweber_check(5).unwrap();
        assert!(r.verdicts.all_pass(), "{:?}", r.notes);
        assert_eq!(r.v2_mod_p_v1.unwrap(), FpGradedPoly::monomial(5, 0, 3, 4));
        let r = landweber_check(13).unwrap();
        assert!(r.verdicts.all_pass(), "{:?}", r.notes);
    }

    #[test]
    fn binomial_series_identity() {
        // (1 + βt⁸)^{−1/2} = Σ C(2n, n)(−β/4)^n t^{8n}
        let order = 48;
        let s = TruncSeries::from_sparse(order, [(0, GradedPoly::one()), (8, GradedPoly::beta())]).sqrt_unit().unwrap();
        let inv = TruncSeries::one(order).div(&s).unwrap();
        for n in 0..=6u64 {
            let c = Rational::from_integer(binomial(2 * n, n))
                * num_traits::pow(rat(-1, 4), n as usize);
            assert_eq!(inv.coeff(8 * n as usize), &GradedPoly::monomial(0, n as u32, c));
        }
        assert!(inv.is_supported_on(0, 8));
        // and P_{2n}(0, β) is the same coefficient
        assert_eq!(legendre(6).mod_alpha(), GradedPoly::monomial(0, 3, rat(-20, 64)));
        assert!(legendre(7).mod_alpha().is_zero());
    }
}
