//! Dense exact integer matrices.
//!
//! Every adjacency, sign and incidence matrix in the crate is an
//! [`IntMatrix`]. Arithmetic is checked: products accumulate in `i128` and
//! any result that does not fit in `i64` is reported as
//! [`Error::Overflow`] instead of wrapping.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadLength {
                rows,
                cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
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

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i64::from(i == j))
    }

    /// `J_n`.
    pub fn all_ones(n: usize) -> Self {
        Self::from_fn(n, n, |_, _| 1)
    }

    /// Anti-diagonal permutation matrix `R_n`.
    pub fn back_identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i64::from(i + j + 1 == n))
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { 0 })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow(op)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", i64::checked_sub)
    }

    pub fn negate(&self) -> Result<Self> {
        self.scalar_mul(-1)
    }

    pub fn scalar_mul(&self, c: i64) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow("scalar_mul")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix product. Row accumulators are `i128`, so only the final
    /// entries need to fit in `i64`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (n, m) = (self.rows, other.cols);
        let mut data = Vec::with_capacity(n * m);
        let mut acc = vec![0i128; m];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as i128;
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot += a * b as i128;
                }
            }
            for &v in &acc {
                data.push(i64::try_from(v).map_err(|_| Error::Overflow("mul"))?);
            }
        }
        Ok(Self { rows: n, cols: m, data })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut result = Self::identity(self.rows);
        for _ in 0..e {
            result = result.mul(self)?;
        }
        Ok(result)
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let (ai, bi) = (i / other.rows, i % other.rows);
            for j in 0..cols {
                let (aj, bj) = (j / other.cols, j % other.cols);
                let v = self
                    .get(ai, aj)
                    .checked_mul(other.get(bi, bj))
                    .ok_or(Error::Overflow("kron"))?;
                data.push(v);
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Assembles a grid of blocks. Blocks in a grid row must share a height
    /// and blocks in a grid column must share a width.
    pub fn block_compose(blocks: &[Vec<IntMatrix>]) -> Result<Self> {
        let grid_rows = blocks.len();
        let grid_cols = blocks.first().map_or(0, Vec::len);
        if blocks.iter().any(|r| r.len() != grid_cols) {
            return Err(Error::RaggedBlocks("grid rows have different lengths".into()));
        }
        if grid_rows == 0 || grid_cols == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::RaggedBlocks(format!(
                        "block ({bi}, {bj}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[bi], widths[bj]
                    )));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut data = Vec::with_capacity(rows * cols);
        for (bi, row) in blocks.iter().enumerate() {
            for r in 0..heights[bi] {
                for b in row {
                    data.extend_from_slice(b.row(r));
                }
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// The `size`-by-`size` block at block coordinates `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, size: usize) -> Self {
        Self::from_fn(size, size, |i, j| self.get(bi * size + i, bj * size + j))
    }

    /// Simultaneous row and column permutation: entry `(i, j)` of the result
    /// is entry `(order[i], order[j])` of `self`.
    pub fn permute_symmetric(&self, order: &[usize]) -> Self {
        Self::from_fn(order.len(), order.len(), |i, j| self.get(order[i], order[j]))
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (i + 1..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i..self.cols).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// True when every entry lies in `allowed`.
    pub fn entries_in(&self, allowed: &[i64]) -> bool {
        self.data.iter().all(|v| allowed.contains(v))
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.cols];
        for i in 0..self.rows {
            for (s, v) in sums.iter_mut().zip(self.row(i)) {
                *s += v;
            }
        }
        sums
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// First cell where `self` and `other` differ, if any.
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

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
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

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn kron_identity_with_ones_is_block_diagonal() {
        let k = IntMatrix::identity(2).kron(&IntMatrix::all_ones(2)).unwrap();
        assert_eq!(k, m(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1]]));
    }

    #[test]
    fn kron_ones_with_identity() {
        let k = IntMatrix::all_ones(2).kron(&IntMatrix::identity(2)).unwrap();
        assert_eq!(k, m(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 1]]));
    }

    #[test]
    fn kron_i10_j16_by_definition() {
        let k = IntMatrix::identity(10).kron(&IntMatrix::all_ones(16)).unwrap();
        assert_eq!(k.shape(), (160, 160));
        for i in 0..160 {
            for j in 0..160 {
                assert_eq!(k.get(i, j), i64::from(i / 16 == j / 16));
            }
        }
    }

    #[test]
    fn block_compose_small_grids() {
        let one = |v| m(&[&[v]]);
        let g = IntMatrix::block_compose(&[vec![one(1), one(2)], vec![one(3), one(4)]]).unwrap();
        assert_eq!(g, m(&[&[1, 2], &[3, 4]]));

        let z = IntMatrix::zeros(2, 2);
        let j = IntMatrix::all_ones(2);
        let g = IntMatrix::block_compose(&[vec![j.clone(), z.clone()], vec![z, j]]).unwrap();
        assert_eq!(g, IntMatrix::identity(2).kron(&IntMatrix::all_ones(2)).unwrap());

        let grid: Vec<Vec<IntMatrix>> = (0..10)
            .map(|_| (0..10).map(|_| IntMatrix::zeros(16, 16)).collect())
            .collect();
        assert_eq!(IntMatrix::block_compose(&grid).unwrap().shape(), (160, 160));
    }

    #[test]
    fn block_compose_rejects_ragged() {
        let g = IntMatrix::block_compose(&[
            vec![IntMatrix::zeros(1, 1), IntMatrix::zeros(1, 2)],
            vec![IntMatrix::zeros(2, 1), IntMatrix::zeros(1, 2)],
        ]);
        assert!(matches!(g, Err(Error::RaggedBlocks(_))));
    }

    #[test]
    fn back_identity_is_anti_diagonal() {
        assert_eq!(IntMatrix::back_identity(3), m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
    }

    #[test]
    fn ones_squared() {
        let j = IntMatrix::all_ones(4);
        assert_eq!(j.mul(&j).unwrap(), j.scalar_mul(4).unwrap());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = m(&[&[i64::MAX, 1]]);
        assert_eq!(big.add(&big), Err(Error::Overflow("add")));
        let col = m(&[&[1], &[1]]);
        assert_eq!(big.mul(&col), Err(Error::Overflow("mul")));
        assert_eq!(big.scalar_mul(2), Err(Error::Overflow("scalar_mul")));
        assert_eq!(big.kron(&m(&[&[2]])), Err(Error::Overflow("kron")));
    }

    #[test]
    fn dimension_mismatch() {
        let a = IntMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            a.add(&IntMatrix::zeros(3, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(IntMatrix::new(2, 2, vec![1, 2, 3]).is_err());
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-9i64..=9, rows * cols).prop_map(move |d| IntMatrix::new(rows, cols, d).unwrap())
    }

    proptest! {
        #[test]
        fn transpose_is_involution(a in matrix(3, 5)) {
            prop_assert_eq!(a.transpose().transpose(), a);
        }

        #[test]
        fn transpose_reverses_products(a in matrix(3, 4), b in matrix(4, 2)) {
            let lhs = a.mul(&b).unwrap().transpose();
            let rhs = b.transpose().mul(&a.transpose()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mul_associates_and_distributes(
            a in matrix(2, 3), b in matrix(3, 3), c in matrix(3, 2), d in matrix(3, 3)
        ) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let dist = a.mul(&b.add(&d).unwrap()).unwrap();
            prop_assert_eq!(dist, a.mul(&b).unwrap().add(&a.mul(&d).unwrap()).unwrap());
        }

        #[test]
        fn kron_mixed_product(
            a in matrix(2, 3), b in matrix(2, 2), c in matrix(3, 2), d in matrix(2, 3)
        ) {
            let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
            let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
