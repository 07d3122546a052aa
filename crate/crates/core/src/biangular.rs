//! Row projectors of a normalized Hadamard matrix, the symmetric and skew
//! regular biangular matrices built from them over the addition table of
//! `Z_{n−1}`, and the class-4 association schemes they decompose into.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::gauss::{GaussMatrix, GaussRational};
use crate::hadamard::{is_hadamard, is_normalized, SignMatrix};
use crate::matrix::IntMatrix;
use crate::scheme::{verify_scheme, AssociationScheme};

/// `C_i = h_iᵀh_i` for the rows `h_1, …, h_n` of a normalized Hadamard
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowProjectors {
    n: usize,
    mats: Vec<IntMatrix>,
}

impl RowProjectors {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `C_i` for `1 ≤ i ≤ n`.
    pub fn c(&self, i: usize) -> &IntMatrix {
        &self.mats[i - 1]
    }

    pub fn mats(&self) -> &[IntMatrix] {
        &self.mats
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Builds the row projectors and verifies `C_1 = J`, `C_iC_j = 0`,
/// `C_i² = nC_i`, `ΣC_i = nI`, zero line sums for `i ≥ 2` and
/// `Σ_{i≥2} C_i² = n²I − nJ`.
pub fn row_projectors(h: &SignMatrix) -> Result<RowProjectors> {
    if !is_hadamard(h) {
        return Err(Error::NotHadamard);
    }
    if !is_normalized(h) {
        return Err(Error::NotNormalized);
    }
    let n = h.order();
    let m = h.matrix();
    let mats: Vec<IntMatrix> = (0..n)
        .map(|i| IntMatrix::from_fn(n, n, |a, b| m.get(i, a) * m.get(i, b)))
        .collect();
    let ni = n as i64;
    let j = IntMatrix::all_ones(n);
    let eye = IntMatrix::identity(n);

    if mats[0] != j {
        return Err(fail("C_1 != J"));
    }
    for (a, ca) in mats.iter().enumerate() {
        for (b, cb) in mats.iter().enumerate() {
            let prod = ca.mul(cb)?;
            let expected = if a == b {
                ca.scalar_mul(ni)?
            } else {
                IntMatrix::zeros(n, n)
            };
            if prod != expected {
                return Err(fail(format!("C_{}C_{} identity", a + 1, b + 1)));
            }
        }
    }
    let mut total = IntMatrix::zeros(n, n);
    let mut squares = IntMatrix::zeros(n, n);
    for (a, c) in mats.iter().enumerate() {
        total = total.add(c)?;
        if a > 0 {
            squares = squares.add(&c.mul(c)?)?;
            if c.row_sums().iter().chain(&c.col_sums()).any(|&s| s != 0) {
                return Err(fail(format!("C_{} has a nonzero line sum", a + 1)));
            }
        }
    }
    if total != eye.scalar_mul(ni)? {
        return Err(fail("sum of C_i != nI"));
    }
    if squares != eye.scalar_mul(ni * ni)?.sub(&j.scalar_mul(ni)?)? {
        return Err(fail("sum of C_i^2 over i >= 2 != n^2 I - nJ"));
    }
    Ok(RowProjectors { n, mats })
}

/// Addition table of `Z_q` on the symbols `2, …, q + 1`.
pub fn addition_latin(q: usize) -> Vec<Vec<usize>> {
    (0..q).map(|i| (0..q).map(|j| (i + j) % q + 2).collect()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Symmetric,
    Skew,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Symmetric => "symmetric",
            Variant::Skew => "skew",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "symmetric" => Ok(Variant::Symmetric),
            "skew" => Ok(Variant::Skew),
            other => Err(format!("unknown variant `{other}` (expected symmetric or skew)")),
        }
    }
}

/// A regular biangular `±1` matrix of order `n(n − 1)`, in `n − 1` block
/// rows of `n` rows each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiangularMatrix {
    n: usize,
    variant: Variant,
    m: IntMatrix,
}

impl BiangularMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    /// Number of row classes, `n − 1`.
    pub fn classes(&self) -> usize {
        self.n - 1
    }
}

/// `n(n−1)I − n·I_{n−1} ⊗ (J_n − I_n)`.
pub fn expected_gram(n: usize) -> Result<IntMatrix> {
    let ni = n as i64;
    let inner = IntMatrix::all_ones(n).sub(&IntMatrix::identity(n))?;
    IntMatrix::identity(n * (n - 1))
        .scalar_mul(ni * (ni - 1))?
        .sub(&IntMatrix::identity(n - 1).kron(&inner)?.scalar_mul(ni)?)
}

fn block_skew_violation(m: &IntMatrix, q: usize, size: usize) -> Option<(usize, usize)> {
    for i in 0..q {
        for j in 0..q {
            if i != j && m.block(i, j, size).transpose() != m.block(j, i, size).negate().ok()? {
                return Some((i, j));
            }
        }
    }
    None
}

/// Block `(i, j)` is `C_{l(i,j)}`; in the skew variant blocks below the
/// block diagonal are negated. Verifies the Gram identity and the
/// variant's symmetry type before returning.
pub fn biangular(h: &SignMatrix, variant: Variant) -> Result<BiangularMatrix> {
    let n = h.order();
    if n < 2 {
        return Err(Error::ParameterMismatch(format!("order {n} is below 2")));
    }
    let c = row_projectors(h)?;
    let q = n - 1;
    let latin = addition_latin(q);
    let grid: Vec<Vec<IntMatrix>> = (0..q)
        .map(|i| {
            (0..q)
                .map(|j| {
                    let blk = c.c(latin[i][j]);
                    if variant == Variant::Skew && i > j {
                        blk.negate()
                    } else {
                        Ok(blk.clone())
                    }
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let m = IntMatrix::block_compose(&grid)?;
    if let Some(cell) = m.mul(&m.transpose())?.first_difference(&expected_gram(n)?) {
        return Err(fail(format!("MM^T differs from the Gram identity at {cell:?}")));
    }
    match variant {
        Variant::Symmetric => {
            if let Some(cell) = m.first_asymmetry() {
                return Err(fail(format!("M is not symmetric at {cell:?}")));
            }
        }
        Variant::Skew => {
            if let Some(cell) = block_skew_violation(&m, q, n) {
                return Err(fail(format!("blocks {cell:?} are not skew")));
            }
        }
    }
    Ok(BiangularMatrix { n, variant, m })
}

pub fn biangular_symmetric(h: &SignMatrix) -> Result<BiangularMatrix> {
    biangular(h, Variant::Symmetric)
}

pub fn biangular_skew(h: &SignMatrix) -> Result<BiangularMatrix> {
    biangular(h, Variant::Skew)
}

/// Normalized inner-product magnitudes `|⟨u, v⟩| / len` for distinct rows
/// in the same class and in different classes. Errors if either is not
/// constant.
pub fn inner_product_magnitudes(b: &BiangularMatrix) -> Result<(Ratio<i64>, Ratio<i64>)> {
    let m = b.matrix();
    let gram = m.mul(&m.transpose())?;
    let len = m.cols() as i64;
    let mut same: Option<i64> = None;
    let mut cross: Option<i64> = None;
    for u in 0..m.rows() {
        for v in 0..m.rows() {
            if u == v {
                continue;
            }
            let slot = if u / b.n == v / b.n { &mut same } else { &mut cross };
            let value = gram.get(u, v).abs();
            match *slot {
                None => *slot = Some(value),
                Some(prev) if prev != value => {
                    return Err(fail(format!("inner products of rows {u}, {v} break regularity")))
                }
                Some(_) => {}
            }
        }
    }
    let ratio = |v: Option<i64>| Ratio::new(v.unwrap_or(0), len);
    Ok((ratio(same), ratio(cross)))
}

/// Splits `M` into `A_0, …, A_4` and verifies them as an association
/// scheme, together with `M = A_0 + A_1 − A_2 + A_3 − A_4`,
/// `A_1 + A_2 = (J − I) ⊗ J_n`, `A_0 + A_3 + A_4 = I ⊗ J_n` and the
/// variant's symmetry pattern.
pub fn scheme_from_biangular(b: &BiangularMatrix) -> Result<AssociationScheme> {
    let n = b.n;
    let q = b.classes();
    let m = b.matrix();
    let order = m.rows();
    let same = |r: usize, c: usize| r / n == c / n;
    let part = |pick: &dyn Fn(usize, usize, i64) -> bool| {
        IntMatrix::from_fn(order, order, |r, c| i64::from(pick(r, c, m.get(r, c))))
    };
    let mats = vec![
        IntMatrix::identity(order),
        part(&|r, c, v| !same(r, c) && v == 1),
        part(&|r, c, v| !same(r, c) && v == -1),
        part(&|r, c, v| same(r, c) && r != c && v == 1),
        part(&|r, c, v| same(r, c) && r != c && v == -1),
    ];

    let signed = mats[0].add(&mats[1])?.sub(&mats[2])?.add(&mats[3])?.sub(&mats[4])?;
    if &signed != m {
        return Err(fail("M != A_0 + A_1 - A_2 + A_3 - A_4"));
    }
    let jn = IntMatrix::all_ones(n);
    let off = IntMatrix::all_ones(q).sub(&IntMatrix::identity(q))?.kron(&jn)?;
    if mats[1].add(&mats[2])? != off {
        return Err(fail("A_1 + A_2 != (J - I) ⊗ J_n"));
    }
    if mats[0].add(&mats[3])?.add(&mats[4])? != IntMatrix::identity(q).kron(&jn)? {
        return Err(fail("A_0 + A_3 + A_4 != I ⊗ J_n"));
    }

    let s = verify_scheme(mats)?;
    let mats = s.mats();
    if !mats[3].is_symmetric() || !mats[4].is_symmetric() {
        return Err(fail("A_3 or A_4 is not symmetric"));
    }
    match b.variant {
        Variant::Symmetric if !s.is_symmetric() => return Err(fail("scheme is not symmetric")),
        Variant::Skew if mats[1].transpose() != mats[2] => return Err(fail("A_1^T != A_2")),
        _ => {}
    }
    Ok(s)
}

/// Closed-form intersection matrices and eigenmatrices at a given `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedTables {
    /// `B_0, …, B_4`.
    pub b: Vec<IntMatrix>,
    /// First eigenmatrix in the published row order.
    pub p: GaussMatrix,
    pub q: GaussMatrix,
}

/// `num / den`, required to be an integer.
fn exact(num: i64, den: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::ParameterMismatch(format!("{num}/{den} is not an integer")));
    }
    Ok(num / den)
}

/// Intersection matrices `B_1, …, B_4` and `P`, `Q` of the class-4 scheme
/// for `n ≡ 0 (mod 4)`.
pub fn biangular_expected(n: usize, variant: Variant) -> Result<ExpectedTables> {
    if n < 4 || n % 4 != 0 {
        return Err(Error::ParameterMismatch(format!(
            "n = {n} is not a positive multiple of 4"
        )));
    }
    let ni = n as i64;
    let a = exact(ni * ni - 2 * ni, 2)?;
    let b3 = exact(ni * ni - 3 * ni, 4)?;
    let b4 = exact(ni * ni - 4 * ni, 4)?;
    let s0 = exact(ni * ni, 4)?;
    let b2 = exact(ni * ni - 2 * ni, 4)?;
    let q4 = exact(ni, 4)?;
    let h = exact(ni, 2)?;

    // Rows j = 1 and j = 2 of B_1 and B_2 trade places in the skew case.
    let row_k1 = vec![a, b3, b3, b4, b2];
    let row_k2 = vec![0, b3, b3, s0, b2];
    let (b1_r1, b1_r2, b2_r1, b2_r2) = match variant {
        Variant::Symmetric => (row_k1.clone(), row_k2.clone(), row_k2, row_k1),
        Variant::Skew => (row_k2.clone(), row_k1.clone(), row_k1, row_k2),
    };
    let bmat = |rows: Vec<Vec<i64>>| IntMatrix::from_rows(&rows);
    let b = vec![
        IntMatrix::identity(5),
        bmat(vec![
            vec![0, 1, 0, 0, 0],
            b1_r1,
            b1_r2,
            vec![0, q4 - 1, q4, 0, 0],
            vec![0, q4, q4, 0, 0],
        ])?,
        bmat(vec![
            vec![0, 0, 1, 0, 0],
            b2_r1,
            b2_r2,
            vec![0, q4, q4 - 1, 0, 0],
            vec![0, q4, q4, 0, 0],
        ])?,
        bmat(vec![
            vec![0, 0, 0, 1, 0],
            vec![0, q4 - 1, q4, 0, 0],
            vec![0, q4, q4 - 1, 0, 0],
            vec![h - 1, 0, 0, h - 2, 0],
            vec![0, 0, 0, 0, h - 1],
        ])?,
        bmat(vec![
            vec![0, 0, 0, 0, 1],
            vec![0, q4, q4, 0, 0],
            vec![0, q4, q4, 0, 0],
            vec![0, 0, 0, 0, h - 1],
            vec![h, 0, 0, h, 0],
        ])?,
    ];

    let r = GaussRational::from_int;
    let unit = |v: i64| match variant {
        Variant::Symmetric => GaussRational::from_int(v),
        Variant::Skew => GaussRational::imag_frac(v, 1),
    };
    let p = GaussMatrix::from_rows(vec![
        vec![r(1), r(ni * (ni - 2) / 2), r(ni * (ni - 2) / 2), r((ni - 2) / 2), r(h)],
        vec![r(1), r(0), r(0), r((ni - 2) / 2), r(-h)],
        vec![r(1), r(-h), r(-h), r((ni - 2) / 2), r(h)],
        vec![r(1), unit(-h), unit(h), r(-1), r(0)],
        vec![r(1), unit(h), unit(-h), r(-1), r(0)],
    ])?;
    let half = |v: i64| match variant {
        Variant::Symmetric => GaussRational::frac(v, 2),
        Variant::Skew => GaussRational::imag_frac(v, 2),
    };
    let t = (ni - 1) * (ni - 2) / 2;
    let q = GaussMatrix::from_rows(vec![
        vec![r(1), r(ni - 1), r(ni - 2), r(t), r(t)],
        vec![r(1), r(0), r(-1), half(-(ni - 1)), half(ni - 1)],
        vec![r(1), r(0), r(-1), half(ni - 1), half(-(ni - 1))],
        vec![r(1), r(ni - 1), r(ni - 2), r(-ni + 1), r(-ni + 1)],
        vec![r(1), r(-ni + 1), r(ni - 2), r(0), r(0)],
    ])?;
    Ok(ExpectedTables { b, p, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::sylvester;
    use crate::scheme::{align_rows, verify_eigensystem};

    #[test]
    fn projectors_of_order_two() {
        let c = row_projectors(&sylvester(1)).unwrap();
        assert_eq!(c.c(1), &IntMatrix::all_ones(2));
        assert_eq!(c.c(2), &IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap());
    }

    #[test]
    fn projectors_of_order_four() {
        let c = row_projectors(&sylvester(2)).unwrap();
        let sum = c.c(2).add(c.c(3)).unwrap().add(c.c(4)).unwrap();
        let expected = IntMatrix::identity(4)
            .scalar_mul(4)
            .unwrap()
            .sub(&IntMatrix::all_ones(4))
            .unwrap();
        assert_eq!(sum, expected);
        assert!(c.c(2).mul(c.c(3)).unwrap().is_zero());
    }

    #[test]
    fn projectors_reject_bad_input() {
        let flipped = sylvester(2).matrix().negate().unwrap();
        assert_eq!(
            row_projectors(&SignMatrix::new(flipped).unwrap()),
            Err(Error::NotNormalized)
        );
        assert_eq!(
            row_projectors(&SignMatrix::new(IntMatrix::all_ones(4)).unwrap()),
            Err(Error::NotHadamard)
        );
    }

    #[test]
    fn latin_squares() {
        assert_eq!(addition_latin(1), vec![vec![2]]);
        let l = addition_latin(3);
        for i in 0..3 {
            let mut row = l[i].clone();
            row.sort_unstable();
            assert_eq!(row, vec![2, 3, 4]);
            for j in 0..3 {
                assert_eq!(l[i][j], l[j][i]);
            }
        }
    }

    #[test]
    fn biangular_order_twelve() {
        for variant in [Variant::Symmetric, Variant::Skew] {
            let b = biangular(&sylvester(2), variant).unwrap();
            assert_eq!(b.matrix().shape(), (12, 12));
            let (same, cross) = inner_product_magnitudes(&b).unwrap();
            assert_eq!(same, Ratio::new(1, 3));
            assert_eq!(cross, Ratio::from_integer(0));
        }
        assert!(biangular_symmetric(&sylvester(2)).unwrap().matrix().is_symmetric());
        assert!(!biangular_skew(&sylvester(2)).unwrap().matrix().is_symmetric());
    }

    #[test]
    fn schemes_match_closed_forms() {
        for variant in [Variant::Symmetric, Variant::Skew] {
            let s = scheme_from_biangular(&biangular(&sylvester(2), variant).unwrap()).unwrap();
            assert_eq!(s.valencies(), vec![1, 4, 4, 1, 2]);
            assert_eq!(s.is_symmetric(), variant == Variant::Symmetric);
            let t = biangular_expected(4, variant).unwrap();
            for i in 0..5 {
                assert_eq!(s.intersection_matrix(i).unwrap(), t.b[i], "B_{i} {variant}");
            }
            let (p, _) = align_rows(&t.p, &t.q, s.n()).unwrap().unwrap();
            verify_eigensystem(&s, &p, &t.q).unwrap();
        }
    }

    #[test]
    fn skew_p_rows_three_and_four_pair_swapped() {
        let t = biangular_expected(4, Variant::Skew).unwrap();
        let (_, perm) = align_rows(&t.p, &t.q, 12).unwrap().unwrap();
        assert_eq!(perm, vec![0, 1, 2, 4, 3]);
        let t = biangular_expected(4, Variant::Symmetric).unwrap();
        let (_, perm) = align_rows(&t.p, &t.q, 12).unwrap().unwrap();
        assert_eq!(perm, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn expected_tables_need_multiple_of_four() {
        assert!(biangular_expected(6, Variant::Symmetric).is_err());
        assert!(biangular_expected(2, Variant::Skew).is_err());
    }
}
