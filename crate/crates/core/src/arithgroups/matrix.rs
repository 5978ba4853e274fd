//! Dense matrices over Q(i) and 4×4 integer matrices.

use std::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::exact::{int, GaussianRational};

/// A `rows × cols` matrix over Q(i), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

/// 2×2 matrices are the common case; the alias documents intent.
pub type GaussianMatrix2 = GaussianMatrix;

impl GaussianMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        GaussianMatrix { rows, cols, data }
    }

    /// Entries given as `(re, im)` integer pairs.
    pub fn from_ints(rows: usize, cols: usize, entries: &[(i64, i64)]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect())
    }

    pub fn from_real_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&a| GaussianRational::from_ints(a, 0)).collect())
    }

    /// `(a b; c d)`.
    pub fn m2(a: GaussianRational, b: GaussianRational, c: GaussianRational, d: GaussianRational) -> Self {
        Self::new(2, 2, vec![a, b, c, d])
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![GaussianRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for k in 0..n {
            m.set(k, k, GaussianRational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    fn zip(&self, o: &Self, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Self::new(self.rows, self.cols, self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zero(self.rows, o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                let mut acc = GaussianRational::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), o.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|a| -a).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(GaussianRational::conj).collect())
    }

    /// Entrywise real part.
    pub fn re(&self) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|a| GaussianRational::real(a.re.clone())).collect())
    }

    /// Entrywise imaginary part, as a real matrix.
    pub fn im(&self) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|a| GaussianRational::real(a.im.clone())).collect())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_gaussian_integral(&self) -> bool {
        self.data.iter().all(GaussianRational::is_gaussian_integer)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|a| a.im.is_zero())
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a.get(col, col).inv()?;
            for c in 0..n {
                a.set(col, c, a.get(col, c) * &p);
                inv.set(col, c, inv.get(col, c) * &p);
            }
            for r in (0..n).filter(|&r| r != col) {
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    a.set(r, c, a.get(r, c) - &(&f * a.get(col, c)));
                    inv.set(r, c, inv.get(r, c) - &(&f * inv.get(col, c)));
                }
            }
        }
        Some(inv)
    }

    /// Determinant by elimination.
    pub fn det(&self) -> GaussianRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return GaussianRational::zero();
            };
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                }
                det = -&det;
            }
            let p = a.get(col, col).clone();
            det = &det * &p;
            let pinv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                let f = a.get(r, col) * &pinv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    a.set(r, c, a.get(r, c) - &(&f * a.get(col, c)));
                }
            }
        }
        det
    }

    /// The `nr × nc` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let mut out = Self::zero(nr, nc);
        for r in 0..nr {
            for c in 0..nc {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    /// `(a b; c d)` from four equal square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        let mut out = Self::zero(2 * n, 2 * n);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, n), (c, n, 0), (d, n, n)] {
            for r in 0..n {
                for col in 0..n {
                    out.set(r0 + r, c0 + col, blk.get(r, col).clone());
                }
            }
        }
        out
    }

    /// `(a | b)` side by side.
    pub fn hstack(a: &Self, b: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        let mut out = Self::zero(a.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                out.set(r, c, a.get(r, c).clone());
            }
            for c in 0..b.cols {
                out.set(r, a.cols + c, b.get(r, c).clone());
            }
        }
        out
    }

    /// Möbius action `(aτ + b)/(cτ + d)` of a 2×2 matrix; `None` at the pole.
    pub fn mobius(&self, tau: &GaussianRational) -> Option<GaussianRational> {
        assert_eq!((self.rows, self.cols), (2, 2));
        let num = &(self.get(0, 0) * tau) + self.get(0, 1);
        let den = &(self.get(1, 0) * tau) + self.get(1, 1);
        Some(&num * &den.inv()?)
    }

    /// Floating-point Möbius action.
    pub fn mobius_f64(&self, tau: Complex64) -> Complex64 {
        let c = |r, k| self.get(r, k).to_complex();
        (c(0, 0) * tau + c(0, 1)) / (c(1, 0) * tau + c(1, 1))
    }

    pub fn to_int4(&self) -> Option<IntMatrix4> {
        if (self.rows, self.cols) != (4, 4) || !self.is_real() || !self.is_gaussian_integral() {
            return None;
        }
        let mut m = [[0i64; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.get(r, c).re.to_integer().to_i64()?;
            }
        }
        Some(IntMatrix4(m))
    }
}

impl Serialize for GaussianMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[GaussianRational]> = self.data.chunks(self.cols).collect();
        rows.serialize(s)
    }
}

impl fmt::Display for GaussianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .chunks(self.cols)
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// A 4×4 integer matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix4(pub [[i64; 4]; 4]);

impl IntMatrix4 {
    pub fn identity() -> Self {
        let mut m = [[0; 4]; 4];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = 1;
        }
        IntMatrix4(m)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = [[0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..4).map(|k| self.0[r][k] * o.0[k][c]).sum();
            }
        }
        IntMatrix4(m)
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.0[c][r];
            }
        }
        IntMatrix4(m)
    }

    /// Flips the sign of the two off-diagonal 2×2 blocks.
    pub fn sigma(&self) -> Self {
        let mut m = self.0;
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                if (r < 2) != (c < 2) {
                    *cell = -*cell;
                }
            }
        }
        IntMatrix4(m)
    }

    /// `gᵗ J₀ g = J₀`.
    pub fn is_symplectic(&self) -> bool {
        let j0 = j0();
        self.transpose().mul(&j0).mul(self) == j0
    }

    /// Inverse of a symplectic matrix, `−J₀ gᵗ J₀`.
    pub fn symplectic_inverse(&self) -> Self {
        let j0 = j0();
        let m = j0.mul(&self.transpose()).mul(&j0);
        IntMatrix4(m.0.map(|row| row.map(|x| -x)))
    }

    pub fn to_gaussian(&self) -> GaussianMatrix {
        GaussianMatrix::from_real_ints(4, 4, &self.0.concat())
    }
}

impl fmt::Display for IntMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.0.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
            if k < 3 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// `J₀ = (0 𝟙; −𝟙 0)`.
pub fn j0() -> IntMatrix4 {
    IntMatrix4([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
}

#[cfg(test)]
pub(crate) fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

pub(crate) fn half() -> GaussianRational {
    GaussianRational::real(crate::exact::rat(1, 2))
}

pub(crate) fn is_real_integer(x: &GaussianRational) -> bool {
    x.im.is_zero() && x.re.is_integer()
}

pub(crate) fn real_int(n: i64) -> GaussianRational {
    GaussianRational::real(int(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn arb_matrix(n: usize) -> impl Strategy<Value = GaussianMatrix> {
        proptest::collection::vec((-5i64..5, -5i64..5, 1i64..4), n * n).prop_map(move |v| {
            GaussianMatrix::new(
                n,
                n,
                v.into_iter().map(|(a, b, d)| GaussianRational::new(rat(a, d), rat(b, d))).collect(),
            )
        })
    }

    #[test]
    fn inverse_and_det() {
        let m = GaussianMatrix::from_ints(2, 2, &[(1, 1), (1, 0), (1, 0), (1, -1)]);
        assert_eq!(m.det(), g(1, 0));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), GaussianMatrix::identity(2));
        assert!(GaussianMatrix::from_real_ints(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        assert!(j0().is_symplectic());
        assert_eq!(j0().symplectic_inverse().mul(&j0()), IntMatrix4::identity());
    }

    proptest! {
        #[test]
        fn det_multiplicative(a in arb_matrix(3), b in arb_matrix(3)) {
            prop_assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(a.mul(&inv), GaussianMatrix::identity(3));
            } else {
                prop_assert!(a.det().is_zero());
            }
        }
    }
}
