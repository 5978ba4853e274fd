//! Sparse multivariate truncated series with Q[α, β] coefficients,
//! truncated by total degree.

use std::collections::BTreeMap;

use crate::exact::{GradedPoly, Rational};
use crate::series::TruncSeries;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    nvars: usize,
    order: usize,
    terms: BTreeMap<Vec<u32>, GradedPoly>,
}

fn total(e: &[u32]) -> usize {
    e.iter().map(|&k| k as usize).sum()
}

impl MultiSeries {
    pub fn zero(nvars: usize, order: usize) -> Self {
        MultiSeries { nvars, order, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(vec![0; nvars], GradedPoly::one());
        s
    }

    /// The `k`-th variable.
    pub fn var(nvars: usize, order: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        let mut s = Self::zero(nvars, order);
        s.add_term(e, GradedPoly::one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, GradedPoly)>>(nvars: usize, order: usize, iter: I) -> Self {
        let mut s = Self::zero(nvars, order);
        for (e, c) in iter {
            assert_eq!(e.len(), nvars);
            s.add_term(e, c);
        }
        s
    }

    fn add_term(&mut self, e: Vec<u32>, c: GradedPoly) {
        if c.is_zero() || total(&e) > self.order {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, e: &[u32]) -> GradedPoly {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &GradedPoly)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> GradedPoly {
        self.coeff(&vec![0; self.nvars])
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::InvalidInput("variable counts differ".into()));
        }
        if self.order != o.order {
            return Err(Error::MixedOrder(self.order, o.order));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn scale(&self, c: &GradedPoly) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map(|d| d.scale(c))
    }

    pub fn map<F: Fn(&GradedPoly) -> GradedPoly>(&self, f: F) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), f(d));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(self.nvars, self.order);
        for (e1, c1) in &self.terms {
            let d1 = total(e1);
            for (e2, c2) in &o.terms {
                if d1 + total(e2) > self.order {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Embeds a univariate series as a series in variable `k`.
    pub fn embed(f: &TruncSeries, nvars: usize, k: usize) -> Self {
        let mut s = Self::zero(nvars, f.order());
        for (d, c) in f.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[k] = d as u32;
            s.add_term(e, c.clone());
        }
        s
    }

    /// `f(inner)` for univariate `f`; `inner` needs zero constant term.
    pub fn compose_univariate(f: &TruncSeries, inner: &Self) -> Result<Self> {
        if !inner.constant_term().is_zero() {
            return Err(Error::InvalidInput("inner series has nonzero constant term".into()));
        }
        if f.order() != inner.order {
            return Err(Error::MixedOrder(f.order(), inner.order));
        }
        let mut acc = Self::zero(inner.nvars, inner.order);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(inner)?;
            acc.add_term(vec![0; inner.nvars], c.clone());
        }
        Ok(acc)
    }

    /// `self(args[0], …, args[n-1])`; every argument needs zero constant term.
    pub fn substitute(&self, args: &[Self]) -> Result<Self> {
        if args.len() != self.nvars {
            return Err(Error::InvalidInput("wrong number of arguments".into()));
        }
        let first = args.first().ok_or_else(|| Error::InvalidInput("no arguments".into()))?;
        let (nv, order) = (first.nvars, first.order);
        for a in args {
            if a.nvars != nv || a.order != order {
                return Err(Error::InvalidInput("arguments disagree in shape".into()));
            }
            if !a.constant_term().is_zero() {
                return Err(Error::InvalidInput("argument has nonzero constant term".into()));
            }
        }
        // powers[k][m] = args[k]^m
        let mut powers: Vec<Vec<Self>> = Vec::with_capacity(args.len());
        for a in args {
            let mut ps = vec![Self::one(nv, order)];
            for m in 1..=order {
                let next = ps[m - 1].mul(a)?;
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut out = Self::zero(nv, order);
        for (e, c) in &self.terms {
            let mut t = Self::one(nv, order).scale(c);
            for (k, &m) in e.iter().enumerate() {
                if m > 0 {
                    t = t.mul(&powers[k][m as usize])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Reorders variables: variable `k` of the result is variable `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            let ne: Vec<u32> = perm.iter().map(|&k| e[k]).collect();
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            if total(e) == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn geometric_in_two_variables() {
        // 1/(1 - (x + y)) through total degree 3 has binomial coefficients
        let inner = MultiSeries::var(2, 3, 0).add(&MultiSeries::var(2, 3, 1)).unwrap();
        let geo = TruncSeries::from_coeffs(vec![GradedPoly::one(); 4]);
        let s = MultiSeries::compose_univariate(&geo, &inner).unwrap();
        assert_eq!(s.coeff(&[2, 1]), GradedPoly::constant(int(3)));
        assert_eq!(s.coeff(&[1, 1]), GradedPoly::constant(int(2)));
        assert!(s.coeff(&[3, 1]).is_zero());
    }

    #[test]
    fn substitute_identity() {
        let f = MultiSeries::from_terms(2, 5, [(vec![1, 0], GradedPoly::one()), (vec![2, 3], GradedPoly::alpha())]);
        let args = [MultiSeries::var(2, 5, 0), MultiSeries::var(2, 5, 1)];
        assert_eq!(f.substitute(&args).unwrap(), f);
        let swapped = f.permute(&[1, 0]);
        assert_eq!(swapped.coeff(&[3, 2]), GradedPoly::alpha());
    }
}
