//! Exact Gaussian rationals `a + bi` with `a, b ∈ ℚ`, and dense matrices
//! over them.
//!
//! Values are normalized eagerly (lowest terms, positive denominators), so
//! structural equality is mathematical equality.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub type Rational = Ratio<i128>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    re: Rational,
    im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::from_integer(1))
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(Rational::from_integer(v.into()), Rational::zero())
    }

    /// `num/den` as a real value. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(Rational::new(num.into(), den.into()), Rational::zero())
    }

    /// `(num/den)·i`. Panics if `den == 0`.
    pub fn imag_frac(num: i64, den: i64) -> Self {
        Self::new(Rational::zero(), Rational::new(num.into(), den.into()))
    }

    pub fn re(&self) -> Rational {
        self.re
    }

    pub fn im(&self) -> Rational {
        self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        Ok(Self::new(
            self.re.checked_add(&o.re).ok_or(Error::Overflow("gauss add"))?,
            self.im.checked_add(&o.im).ok_or(Error::Overflow("gauss add"))?,
        ))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        Ok(Self::new(
            self.re.checked_sub(&o.re).ok_or(Error::Overflow("gauss sub"))?,
            self.im.checked_sub(&o.im).ok_or(Error::Overflow("gauss sub"))?,
        ))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let ov = || Error::Overflow("gauss mul");
        let m = |a: &Rational, b: &Rational| a.checked_mul(b).ok_or_else(ov);
        let re = m(&self.re, &o.re)?.checked_sub(&m(&self.im, &o.im)?).ok_or_else(ov)?;
        let im = m(&self.re, &o.im)?.checked_add(&m(&self.im, &o.re)?).ok_or_else(ov)?;
        Ok(Self::new(re, im))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Singular);
        }
        let ov = || Error::Overflow("gauss div");
        let norm =
            o.re.checked_mul(&o.re)
                .and_then(|a| o.im.checked_mul(&o.im).and_then(|b| a.checked_add(&b)))
                .ok_or_else(ov)?;
        let num = self.checked_mul(&o.conj())?;
        Ok(Self::new(
            num.re.checked_div(&norm).ok_or_else(ov)?,
            num.im.checked_div(&norm).ok_or_else(ov)?,
        ))
    }

    pub fn scale(&self, c: Rational) -> Result<Self> {
        self.checked_mul(&Self::new(c, Rational::zero()))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<i64> for GaussRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if *r.denom() == 1 {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `a`, `a/b`, `ci`, `c/di`, `a+ci`, `a/b-c/di`.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im > Rational::zero() {
                write!(f, "+")?;
            }
        }
        fmt_rational(&self.im, f)?;
        write!(f, "i")
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRational>,
}

impl GaussMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<GaussRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadLength {
                rows,
                cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<GaussRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::BadLength {
                rows: rows.len(),
                cols,
                got: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| GaussRational::from_int(i64::from(i == j)))
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).into())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> GaussRational {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[GaussRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "gauss mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = GaussRational::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&a.checked_mul(&other.get(k, j))?)?;
                }
                data.push(acc);
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "gauss add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: Rational) -> Result<Self> {
        let data = self.data.iter().map(|a| a.scale(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows reordered so that row `i` of the result is row `order[i]`.
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        Self::from_fn(order.len(), self.cols, |i, j| self.get(order[i], j))
    }

    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.cols, p % self.cols))
    }

    pub fn to_complex_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(GaussRational::to_complex).collect())
            .collect()
    }

    /// Exact inverse by Gauss–Jordan elimination over `ℚ(i)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a: Vec<Vec<GaussRational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<GaussRational>> = (0..n)
            .map(|i| (0..n).map(|j| GaussRational::from_int(i64::from(i == j))).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col];
            for j in 0..n {
                a[col][j] = a[col][j].checked_div(&p)?;
                inv[col][j] = inv[col][j].checked_div(&p)?;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col];
                for j in 0..n {
                    a[r][j] = a[r][j].checked_sub(&factor.checked_mul(&a[col][j])?)?;
                    inv[r][j] = inv[r][j].checked_sub(&factor.checked_mul(&inv[col][j])?)?;
                }
            }
        }
        Self::from_rows(inv)
    }
}

impl fmt::Debug for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GaussMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussRational {
        GaussRational::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    #[test]
    fn normalizes_to_lowest_terms() {
        let a = GaussRational::frac(6, -4);
        assert_eq!(*a.re().numer(), -3);
        assert_eq!(*a.re().denom(), 2);
        assert_eq!(a, GaussRational::frac(-3, 2));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRational::i();
        assert_eq!(i.checked_mul(&i).unwrap(), GaussRational::from_int(-1));
        assert_eq!(GaussRational::one().checked_div(&i).unwrap(), g(0, -1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRational::frac(3, 2).to_string(), "3/2");
        assert_eq!(GaussRational::imag_frac(-2, 3).to_string(), "-2/3i");
        assert_eq!(g(1, 2).to_string(), "1+2i");
        assert_eq!(g(1, -2).to_string(), "1-2i");
        assert_eq!(g(0, 0).to_string(), "0");
    }

    #[test]
    fn inverse_of_identity_and_diagonal() {
        let id = GaussMatrix::identity(3);
        assert_eq!(id.inverse().unwrap(), id);
        let d = GaussMatrix::from_rows(vec![vec![g(2, 0), g(0, 0)], vec![g(0, 0), g(0, 1)]]).unwrap();
        let expected =
            GaussMatrix::from_rows(vec![vec![GaussRational::frac(1, 2), g(0, 0)], vec![g(0, 0), g(0, -1)]]).unwrap();
        assert_eq!(d.inverse().unwrap(), expected);
    }

    #[test]
    fn singular_input_is_rejected() {
        let s = GaussMatrix::from_rows(vec![vec![g(1, 1), g(2, 2)], vec![g(1, 0), g(2, 0)]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    proptest! {
        #[test]
        fn inverse_times_matrix_is_identity(
            entries in proptest::collection::vec((-5i64..=5, -5i64..=5), 9)
        ) {
            let m = GaussMatrix::new(3, 3, entries.iter().map(|&(a, b)| g(a, b)).collect()).unwrap();
            if let Ok(inv) = m.inverse() {
                prop_assert_eq!(m.mul(&inv).unwrap(), GaussMatrix::identity(3));
                prop_assert_eq!(inv.mul(&m).unwrap(), GaussMatrix::identity(3));
            }
        }
    }
}
