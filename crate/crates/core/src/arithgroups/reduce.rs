//! Reduction of points of the upper half-plane into the fundamental domain
//! `{|Re τ| ≤ 1, |τ − 1| ≥ √2, |τ + 1| ≥ √2}` of `G`.

use num_complex::Complex64;
use serde::Serialize;

use super::{cayley_inverse, is_unitary_member, GaussianMatrix, GaussianMatrix2, Generator, Letter};
use crate::{Error, Result};

/// Boundary slack for domain membership.
pub const DOMAIN_EPS: f64 = 1e-12;
/// Maximum number of generator applications.
pub const MAX_STEPS: usize = 10_000;

#[derive(Debug, Clone, Serialize)]
pub struct Reduction {
    pub tau_reduced: Complex64Json,
    /// Letters applied in order, first applied first.
    #[serde(serialize_with = "ser_word")]
    pub word: Vec<Letter>,
    /// `matrix · τ = tau_reduced`.
    pub matrix: GaussianMatrix2,
    /// `g₀⁻¹ · matrix · g₀ ∈ U(1,1; Z[i])`, checked exactly.
    pub certified: bool,
    /// `|matrix · τ − tau_reduced|`.
    pub mapping_residual: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Complex64Json {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Json {
    fn from(z: Complex64) -> Self {
        Complex64Json { re: z.re, im: z.im }
    }
}

fn ser_word<S: serde::Serializer>(w: &[Letter], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&word_string(w))
}

/// Letters separated by spaces, `id` for the empty word.
pub fn word_string(w: &[Letter]) -> String {
    if w.is_empty() {
        "id".into()
    } else {
        w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl Reduction {
    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.tau_reduced.re, self.tau_reduced.im)
    }
}

pub fn in_fundamental_domain(tau: Complex64) -> bool {
    let r2 = std::f64::consts::SQRT_2;
    tau.im > 0.0
        && tau.re.abs() <= 1.0 + DOMAIN_EPS
        && (tau - 1.0).norm() >= r2 - DOMAIN_EPS
        && (tau + 1.0).norm() >= r2 - DOMAIN_EPS
}

/// Greedy reduction: translate by `∓2` into the strip, then apply `C`
/// or `C⁻¹` whenever `τ` lies inside one of the circles, which strictly
/// increases the imaginary part.
pub fn reduce_to_fundamental_domain(tau: Complex64) -> Result<Reduction> {
    if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
        return Err(Error::InvalidInput(format!("τ = {tau} is not in the upper half-plane")));
    }
    let r2 = std::f64::consts::SQRT_2;
    let mut z = tau;
    let mut word = Vec::new();
    let mut m = GaussianMatrix::identity(2);
    for _ in 0..MAX_STEPS {
        let letter = if z.re > 1.0 + DOMAIN_EPS {
            Letter { generator: Generator::T, inverse: true }
        } else if z.re < -1.0 - DOMAIN_EPS {
            Letter { generator: Generator::T, inverse: false }
        } else if (z - 1.0).norm() < r2 - DOMAIN_EPS {
            Letter { generator: Generator::C, inverse: false }
        } else if (z + 1.0).norm() < r2 - DOMAIN_EPS {
            Letter { generator: Generator::C, inverse: true }
        } else {
            let certified = is_unitary_member(&cayley_inverse(&m));
            let mapping_residual = (m.mobius_f64(tau) - z).norm();
            return Ok(Reduction { tau_reduced: z.into(), word, matrix: m, certified, mapping_residual });
        };
        let g = letter.matrix();
        z = g.mobius_f64(z);
        m = g.mul(&m);
        word.push(letter);
    }
    Err(Error::ReductionFailure(format!("no convergence after {MAX_STEPS} steps from τ = {tau}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn interior_and_translation() {
        let r = reduce_to_fundamental_domain(Complex64::i()).unwrap();
        assert!(r.word.is_empty() && r.certified);
        assert_eq!(word_string(&r.word), "id");
        let r = reduce_to_fundamental_domain(Complex64::new(4.0, 1.0)).unwrap();
        assert_eq!(word_string(&r.word), "T^-1 T^-1");
        assert!((r.tau() - Complex64::i()).norm() < 1e-15);
        assert!(r.certified);
    }

    #[test]
    fn near_real_axis() {
        let r = reduce_to_fundamental_domain(Complex64::new(0.1, 0.1)).unwrap();
        assert!(r.certified && in_fundamental_domain(r.tau()));
        assert!(r.mapping_residual < 1e-9);
        assert!(reduce_to_fundamental_domain(Complex64::new(0.0, -1.0)).is_err());
    }

    proptest! {
        #[test]
        fn reduces(re in -20.0f64..20.0, im in 0.01f64..5.0) {
            let r = reduce_to_fundamental_domain(Complex64::new(re, im)).unwrap();
            prop_assert!(r.certified);
            prop_assert!(in_fundamental_domain(r.tau()));
            prop_assert!(r.mapping_residual < 1e-8 * (1.0 + r.tau().norm()));
        }
    }
}
