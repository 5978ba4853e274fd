//! Laurent polynomials over Q(i) in α, β, γ, x, y, used to check curve
//! automorphisms by substitution.

use std::collections::BTreeMap;

use crate::exact::GaussianRational;

pub const ALPHA: usize = 0;
pub const BETA: usize = 1;
pub const GAMMA: usize = 2;
pub const X: usize = 3;
pub const Y: usize = 4;
const NVARS: usize = 5;

type Exp = [i32; NVARS];

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<Exp, GaussianRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term([0; NVARS], c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_ints(n, 0))
    }

    pub fn var(k: usize) -> Self {
        let mut e = [0; NVARS];
        e[k] = 1;
        Self::term(e, GaussianRational::one())
    }

    pub fn term(e: Exp, c: GaussianRational) -> Self {
        let mut out = Self::zero();
        out.add_term(e, c);
        out
    }

    fn add_term(&mut self, e: Exp, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&GaussianRational::from_ints(-1, 0)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (e, d) in &self.terms {
            out.add_term(*e, d * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for k in 0..NVARS {
                    e[k] += e2[k];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn as_monomial(&self) -> Option<(Exp, GaussianRational)> {
        match self.terms.len() {
            1 => self.terms.iter().next().map(|(e, c)| (*e, c.clone())),
            _ => None,
        }
    }

    /// Integer power; negative exponents require a monomial.
    pub fn powi(&self, e: i32) -> Option<Self> {
        if e >= 0 {
            return Some((0..e).fold(Self::int(1), |acc, _| acc.mul(self)));
        }
        let (exp, c) = self.as_monomial()?;
        let inv = Self::term(exp.map(|v| -v), c.inv()?);
        inv.powi(-e)
    }

    /// Replaces each variable `k` by `images[k]`.
    pub fn substitute(&self, images: &[Laurent; NVARS]) -> Option<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for k in 0..NVARS {
                if e[k] != 0 {
                    t = t.mul(&images[k].powi(e[k])?);
                }
            }
            out = out.add(&t);
        }
        Some(out)
    }

    /// Normal form modulo `γ⁴ = β`: γ-exponents reduced into `0..4`.
    pub fn reduce_gamma4(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e = *e;
            let q = e[GAMMA].div_euclid(4);
            e[GAMMA] = e[GAMMA].rem_euclid(4);
            e[BETA] += q;
            out.add_term(e, c.clone());
        }
        out
    }

    /// True iff `self = m · other` for a single monomial `m`, after applying `normal`.
    pub fn is_monomial_multiple(&self, other: &Self, normal: impl Fn(&Self) -> Self) -> bool {
        let (a, b) = (normal(self), normal(other));
        if b.is_zero() {
            return a.is_zero();
        }
        let (eb, cb) = b.terms.iter().next().map(|(e, c)| (*e, c.clone())).expect("nonzero");
        a.terms.iter().any(|(ea, ca)| {
            let mut e = *ea;
            for k in 0..NVARS {
                e[k] -= eb[k];
            }
            let m = Self::term(e, ca / &cb);
            normal(&m.mul(&b)) == a
        })
    }
}

/// A polynomial map; variables not moved are mapped to themselves.
pub fn identity_map() -> [Laurent; NVARS] {
    [Laurent::var(0), Laurent::var(1), Laurent::var(2), Laurent::var(3), Laurent::var(4)]
}

/// `outer ∘ inner`: substitute `inner` into each image of `outer`.
pub fn compose_maps(outer: &[Laurent; NVARS], inner: &[Laurent; NVARS]) -> Option<[Laurent; NVARS]> {
    let mut out = identity_map();
    for k in 0..NVARS {
        out[k] = outer[k].substitute(inner)?;
    }
    Some(out)
}
