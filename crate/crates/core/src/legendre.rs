//! Homogeneous Legendre polynomials `P_k(α, β)`, defined by
//! `(1 − 2αu + βu²)^{-1/2} = Σ P_k(α, β) u^k`, and the logarithm of the
//! Legendre genus whose derivative is `Σ P_k(α, β) x^{4k}`.

use num_traits::One;
use serde::Serialize;

use crate::exact::{int, rat, GradedPoly, Rational};
use crate::series::TruncSeries;

/// `P_0, …, P_K` built by the three-term recurrence
/// `(k+1) P_{k+1} = (2k+1) α P_k − k β P_{k−1}`.
#[derive(Clone, Debug)]
pub struct LegendreTable {
    entries: Vec<GradedPoly>,
}

impl LegendreTable {
    pub fn new(max_index: usize) -> Self {
        let mut t = LegendreTable { entries: vec![GradedPoly::one()] };
        t.extend_to(max_index);
        t
    }

    pub fn extend_to(&mut self, max_index: usize) {
        let alpha = GradedPoly::alpha();
        let beta = GradedPoly::beta();
        while self.entries.len() <= max_index {
            let k = self.entries.len() - 1;
            let next = if k == 0 {
                alpha.clone()
            } else {
                let a = (&alpha * &self.entries[k]).scale(&int(2 * k as i64 + 1));
                let b = (&beta * &self.entries[k - 1]).scale(&int(k as i64));
                (&a - &b).scale(&rat(1, k as i64 + 1))
            };
            self.entries.push(next);
        }
    }

    pub fn max_index(&self) -> usize {
        self.entries.len() - 1
    }

    /// `P_k`; panics when `k` is past the table.
    pub fn get(&self, k: usize) -> &GradedPoly {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[GradedPoly] {
        &self.entries
    }
}

pub fn legendre(k: usize) -> GradedPoly {
    LegendreTable::new(k).get(k).clone()
}

/// Expands `(1 − 2αu + βu²)^{-1/2}` through `u^K` by series square root
/// and inversion, and compares it with the recurrence table.
pub fn generating_check(max_index: usize) -> bool {
    generating_series(max_index)
        .map(|g| g.coeffs() == LegendreTable::new(max_index).entries())
        .unwrap_or(false)
}

pub fn generating_series(max_index: usize) -> crate::Result<TruncSeries> {
    let quad = TruncSeries::from_sparse(
        max_index,
        [
            (0, GradedPoly::one()),
            (1, GradedPoly::alpha().scale(&int(-2))),
            (2, GradedPoly::beta()),
        ],
    );
    TruncSeries::one(max_index).div(&quad.sqrt_unit()?)
}

/// `log_{φ^L}(x) = Σ_k P_k x^{4k+1}/(4k+1)` through `x^N`.
pub fn log_phi_l(order: usize) -> TruncSeries {
    let table = LegendreTable::new(order.saturating_sub(1) / 4);
    TruncSeries::from_sparse(
        order,
        table
            .entries()
            .iter()
            .enumerate()
            .map(|(k, p)| (4 * k + 1, p.scale(&rat(1, 4 * k as i64 + 1)))),
    )
}

/// The genus on `CP^l`: `P_{l/4}` when `4 | l`, zero otherwise.
pub fn cp_coefficient(l: usize) -> GradedPoly {
    if l % 4 == 0 {
        legendre(l / 4)
    } else {
        GradedPoly::zero()
    }
}

/// Dehomogenization `P(x, 1)` evaluated at a rational point.
pub fn eval_dehomogenized(p: &GradedPoly, x: &Rational) -> Rational {
    p.eval(x, &Rational::one())
}

#[derive(Debug, Clone, Serialize)]
pub struct LegendreEntry {
    pub k: usize,
    pub poly: GradedPoly,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p6() -> GradedPoly {
        GradedPoly::from_terms([
            (6, 0, rat(231, 16)),
            (4, 1, rat(-315, 16)),
            (2, 2, rat(105, 16)),
            (0, 3, rat(-5, 16)),
        ])
    }

    #[test]
    fn anchors() {
        assert_eq!(legendre(0), GradedPoly::one());
        assert_eq!(legendre(1), GradedPoly::alpha());
        assert_eq!(
            legendre(2),
            GradedPoly::from_terms([(2, 0, rat(3, 2)), (0, 1, rat(-1, 2))])
        );
        assert_eq!(
            legendre(3),
            GradedPoly::from_terms([(3, 0, rat(5, 2)), (1, 1, rat(-3, 2))])
        );
        assert_eq!(legendre(6), p6());
    }

    #[test]
    fn generating_function_agrees() {
        assert!(generating_check(0));
        assert!(generating_check(2));
        assert!(generating_check(6));
        assert!(generating_check(20));
    }

    #[test]
    fn table_invariants() {
        let t = LegendreTable::new(30);
        for (k, p) in t.entries().iter().enumerate() {
            assert!(p.is_homogeneous());
            assert_eq!(p.legendre_degree().unwrap() as usize, k);
            assert_eq!(eval_dehomogenized(p, &int(1)), int(1), "P_{k}(1,1)");
        }
    }

    #[test]
    fn log_coefficients() {
        let l = log_phi_l(13);
        assert!(l.is_odd4());
        assert_eq!(l.coeff(1), &GradedPoly::one());
        assert_eq!(l.coeff(5), &GradedPoly::alpha().scale(&rat(1, 5)));
        assert!(l.coeff(3).is_zero());
        assert_eq!(l.coeff(13), &legendre(3).scale(&rat(1, 13)));
        for n in 1..20 {
            assert!(log_phi_l(n).is_odd4());
            assert_eq!(log_phi_l(n).order(), n);
        }
    }

    #[test]
    fn cp_values() {
        assert_eq!(cp_coefficient(0), GradedPoly::one());
        assert_eq!(cp_coefficient(4), GradedPoly::alpha());
        assert!(cp_coefficient(3).is_zero());
        assert_eq!(cp_coefficient(24), p6());
    }
}
