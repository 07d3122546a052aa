//! Commutative association schemes: axiom verification, intersection
//! numbers, exact eigensystem verification against supplied `P` and `Q`, and
//! a numeric eigenmatrix computation used as a cross-check.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::gauss::{GaussMatrix, GaussRational, Rational};
use crate::matrix::IntMatrix;

/// A violated scheme axiom or eigensystem identity, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("no relation matrices")]
    Empty,
    #[error("A_{index} is {rows}x{cols}, expected {n}x{n}")]
    Shape {
        index: usize,
        rows: usize,
        cols: usize,
        n: usize,
    },
    #[error("A_{index} has entry {value} at ({row}, {col})")]
    NotZeroOne {
        index: usize,
        row: usize,
        col: usize,
        value: i64,
    },
    #[error("A_0 is not the identity at ({0}, {1})")]
    NotIdentity(usize, usize),
    #[error("cell ({row}, {col}) lies in {count} relations")]
    NotPartition { row: usize, col: usize, count: usize },
    #[error("A_{0} is zero")]
    EmptyRelation(usize),
    #[error("transpose of A_{index} is not a relation (A_{index}^T at ({row}, {col}))")]
    NotTransposeClosed { index: usize, row: usize, col: usize },
    #[error("A_{i}A_{j} is not constant on A_{k}: {expected} expected, {got} at ({row}, {col})")]
    NotConstant {
        i: usize,
        j: usize,
        k: usize,
        expected: i64,
        got: i64,
        row: usize,
        col: usize,
    },
    #[error("A_{i}A_{j} != A_{j}A_{i} at ({row}, {col})")]
    NotCommutative { i: usize, j: usize, row: usize, col: usize },
    #[error("{name} is {rows}x{cols}, expected {size}x{size}")]
    EigenShape {
        name: &'static str,
        rows: usize,
        cols: usize,
        size: usize,
    },
    #[error("{identity} fails at ({row}, {col})")]
    Identity { identity: String, row: usize, col: usize },
}

type SchemeResult<T> = std::result::Result<T, SchemeError>;

/// A verified association scheme `A_0, …, A_d` with its intersection
/// numbers `p_ij^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationScheme {
    n: usize,
    mats: Vec<IntMatrix>,
    symmetric: bool,
    transpose: Vec<usize>,
    /// `p[i][j][k]`.
    p: Vec<Vec<Vec<i64>>>,
}

fn first_support(m: &IntMatrix) -> Option<(usize, usize)> {
    m.as_slice()
        .iter()
        .position(|&v| v != 0)
        .map(|pos| (pos / m.cols(), pos % m.cols()))
}

fn check_shapes(mats: &[IntMatrix]) -> SchemeResult<usize> {
    let n = mats.first().ok_or(SchemeError::Empty)?.rows();
    for (index, m) in mats.iter().enumerate() {
        if m.shape() != (n, n) {
            return Err(SchemeError::Shape {
                index,
                rows: m.rows(),
                cols: m.cols(),
                n,
            });
        }
        for row in 0..n {
            for col in 0..n {
                let value = m.get(row, col);
                if value != 0 && value != 1 {
                    return Err(SchemeError::NotZeroOne { index, row, col, value });
                }
            }
        }
    }
    Ok(n)
}

fn check_identity_and_partition(mats: &[IntMatrix], n: usize) -> SchemeResult<()> {
    if let Some((r, c)) = mats[0].first_difference(&IntMatrix::identity(n)) {
        return Err(SchemeError::NotIdentity(r, c));
    }
    if let Some(i) = (1..mats.len()).find(|&i| mats[i].is_zero()) {
        return Err(SchemeError::EmptyRelation(i));
    }
    for row in 0..n {
        for col in 0..n {
            let count = mats.iter().filter(|m| m.get(row, col) == 1).count();
            if count != 1 {
                return Err(SchemeError::NotPartition { row, col, count });
            }
        }
    }
    Ok(())
}

/// For each `i`, the `j` with `A_j = A_iᵀ`.
fn transpose_map(mats: &[IntMatrix]) -> SchemeResult<Vec<usize>> {
    mats.iter()
        .enumerate()
        .map(|(index, m)| {
            let t = m.transpose();
            // Relations partition the cells, so the support cell decides.
            let (r, c) = first_support(&t).expect("nonzero relation");
            let j = mats.iter().position(|a| a.get(r, c) == 1).expect("partition");
            match mats[j].first_difference(&t) {
                None => Ok(j),
                Some((row, col)) => Err(SchemeError::NotTransposeClosed { index, row, col }),
            }
        })
        .collect()
}

/// Reads `p_ij^k` at one support cell of each `A_k` and verifies that
/// `A_iA_j` agrees with `Σ_k p_ij^k A_k` on every cell.
fn intersection_tensor(mats: &[IntMatrix]) -> Result<Vec<Vec<Vec<i64>>>> {
    let d1 = mats.len();
    let n = mats[0].rows();
    let support: Vec<(usize, usize)> = mats
        .iter()
        .map(|m| first_support(m).expect("nonzero relation"))
        .collect();
    // Relation index of every cell.
    let mut class = vec![0usize; n * n];
    for (k, m) in mats.iter().enumerate() {
        for (pos, &v) in m.as_slice().iter().enumerate() {
            if v == 1 {
                class[pos] = k;
            }
        }
    }
    let mut p = vec![vec![vec![0i64; d1]; d1]; d1];
    for i in 0..d1 {
        for j in 0..d1 {
            let prod = mats[i].mul(&mats[j])?;
            for k in 0..d1 {
                let (r, c) = support[k];
                p[i][j][k] = prod.get(r, c);
            }
            for (pos, &got) in prod.as_slice().iter().enumerate() {
                let k = class[pos];
                if got != p[i][j][k] {
                    return Err(SchemeError::NotConstant {
                        i,
                        j,
                        k,
                        expected: p[i][j][k],
                        got,
                        row: pos / n,
                        col: pos % n,
                    }
                    .into());
                }
            }
        }
    }
    Ok(p)
}

fn check_commutative(mats: &[IntMatrix], p: &[Vec<Vec<i64>>]) -> SchemeResult<()> {
    let d1 = mats.len();
    for i in 0..d1 {
        for j in i + 1..d1 {
            if let Some(k) = (0..d1).find(|&k| p[i][j][k] != p[j][i][k]) {
                let (row, col) = first_support(&mats[k]).expect("nonzero relation");
                return Err(SchemeError::NotCommutative { i, j, row, col });
            }
        }
    }
    Ok(())
}

/// Verifies the scheme axioms exactly: `A_0 = I`, the relations partition
/// `J`, closure under transposition, products in the span with constant
/// coefficients on each relation, and commutativity.
pub fn verify_scheme(mats: Vec<IntMatrix>) -> Result<AssociationScheme> {
    let n = check_shapes(&mats)?;
    check_identity_and_partition(&mats, n)?;
    let transpose = transpose_map(&mats)?;
    let p = intersection_tensor(&mats)?;
    check_commutative(&mats, &p)?;
    let symmetric = transpose.iter().enumerate().all(|(i, &t)| i == t);
    Ok(AssociationScheme {
        n,
        mats,
        symmetric,
        transpose,
        p,
    })
}

impl AssociationScheme {
    /// Number of points.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Class number.
    pub fn d(&self) -> usize {
        self.mats.len() - 1
    }

    pub fn mats(&self) -> &[IntMatrix] {
        &self.mats
    }

    pub fn matrix(&self, i: usize) -> Result<&IntMatrix> {
        self.mats.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            max: self.d(),
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// The `j` with `A_j = A_iᵀ`.
    pub fn transpose_of(&self, i: usize) -> usize {
        self.transpose[i]
    }

    pub fn p(&self, i: usize, j: usize, k: usize) -> i64 {
        self.p[i][j][k]
    }

    pub fn valencies(&self) -> Vec<i64> {
        (0..=self.d()).map(|i| self.p[i][self.transpose[i]][0]).collect()
    }

    /// `B_i = (p_ij^k)` with rows indexed by `j` and columns by `k`.
    pub fn intersection_matrix(&self, i: usize) -> Result<IntMatrix> {
        if i > self.d() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.d(),
            });
        }
        let d1 = self.d() + 1;
        Ok(IntMatrix::from_fn(d1, d1, |j, k| self.p[i][j][k]))
    }

    pub fn relation_graph(&self, i: usize) -> Result<Digraph> {
        if i == 0 || i > self.d() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.d(),
            });
        }
        Digraph::new(self.mats[i].clone())
    }

    /// Product in Bose–Mesner coordinates.
    fn algebra_mul(&self, x: &[GaussRational], y: &[GaussRational]) -> Result<Vec<GaussRational>> {
        let d1 = self.d() + 1;
        let mut z = vec![GaussRational::zero(); d1];
        for a in 0..d1 {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..d1 {
                if y[b].is_zero() {
                    continue;
                }
                let xy = x[a].checked_mul(&y[b])?;
                for (c, zc) in z.iter_mut().enumerate() {
                    let coef = self.p[a][b][c];
                    if coef != 0 {
                        *zc = zc.checked_add(&xy.checked_mul(&coef.into())?)?;
                    }
                }
            }
        }
        Ok(z)
    }

    /// `Σ_a x_a A_a` as an explicit matrix.
    pub fn materialize(&self, x: &[GaussRational]) -> GaussMatrix {
        let mut class = vec![0usize; self.n * self.n];
        for (k, m) in self.mats.iter().enumerate() {
            for (pos, &v) in m.as_slice().iter().enumerate() {
                if v == 1 {
                    class[pos] = k;
                }
            }
        }
        GaussMatrix::from_fn(self.n, self.n, |r, c| x[class[r * self.n + c]])
    }
}

/// First and second eigenmatrices with the primitive idempotents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSystem {
    pub p: GaussMatrix,
    pub q: GaussMatrix,
    /// `E_j` in the basis `A_0, …, A_d`: coordinate `a` is `Q_aj / n`.
    pub coordinates: Vec<Vec<GaussRational>>,
    pub idempotents: Vec<GaussMatrix>,
}

fn identity_error(identity: impl Into<String>, (row, col): (usize, usize)) -> Error {
    SchemeError::Identity {
        identity: identity.into(),
        row,
        col,
    }
    .into()
}

fn check_square(name: &'static str, m: &GaussMatrix, size: usize) -> Result<()> {
    if m.shape() != (size, size) {
        return Err(SchemeError::EigenShape {
            name,
            rows: m.rows(),
            cols: m.cols(),
            size,
        }
        .into());
    }
    Ok(())
}

/// Verifies that `P` and `Q` are the eigenmatrices of the scheme, in exact
/// Gaussian-rational arithmetic: `PQ = QP = nI`, `E_0 = J/n`,
/// `E_iE_j = δ_ij E_i`, `ΣE_j = I`, `A_j = Σ_i P_ij E_i` and the first row
/// of `P` equal to the valencies. Stops at the first violated identity.
pub fn verify_eigensystem(s: &AssociationScheme, p: &GaussMatrix, q: &GaussMatrix) -> Result<EigenSystem> {
    let d1 = s.d() + 1;
    check_square("P", p, d1)?;
    check_square("Q", q, d1)?;
    let n_i = GaussMatrix::identity(d1).scale(Rational::from_integer(s.n() as i128))?;
    if let Some(cell) = p.mul(q)?.first_difference(&n_i) {
        return Err(identity_error("PQ = nI", cell));
    }
    if let Some(cell) = q.mul(p)?.first_difference(&n_i) {
        return Err(identity_error("QP = nI", cell));
    }
    let valencies = s.valencies();
    if let Some(j) = (0..d1).find(|&j| p.get(0, j) != valencies[j].into()) {
        return Err(identity_error("P row 0 = valencies", (0, j)));
    }

    let inv_n = Rational::new(1, s.n() as i128);
    let coordinates: Vec<Vec<GaussRational>> = (0..d1)
        .map(|j| (0..d1).map(|a| q.get(a, j).scale(inv_n)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let j_over_n = GaussRational::new(inv_n, Rational::from_integer(0));
    if let Some(a) = (0..d1).find(|&a| coordinates[0][a] != j_over_n) {
        return Err(identity_error("E_0 = J/n", (0, a)));
    }
    for a in 0..d1 {
        let mut sum = GaussRational::zero();
        for e in &coordinates {
            sum = sum.checked_add(&e[a])?;
        }
        if sum != GaussRational::from_int(i64::from(a == 0)) {
            return Err(identity_error("sum of E_j = I", (a, a)));
        }
    }
    for i in 0..d1 {
        for j in 0..d1 {
            let prod = s.algebra_mul(&coordinates[i], &coordinates[j])?;
            let expected = if i == j {
                coordinates[i].clone()
            } else {
                vec![GaussRational::zero(); d1]
            };
            if let Some(a) = (0..d1).find(|&a| prod[a] != expected[a]) {
                return Err(identity_error(format!("E_{i}E_{j} (coefficient of A_{a})"), (i, j)));
            }
        }
    }
    for j in 0..d1 {
        for a in 0..d1 {
            let mut sum = GaussRational::zero();
            for (i, e) in coordinates.iter().enumerate() {
                sum = sum.checked_add(&p.get(i, j).checked_mul(&e[a])?)?;
            }
            if sum != GaussRational::from_int(i64::from(a == j)) {
                return Err(identity_error(format!("A_{j} = sum_i P_i{j} E_i"), (j, a)));
            }
        }
    }
    let idempotents = coordinates.iter().map(|e| s.materialize(e)).collect();
    Ok(EigenSystem {
        p: p.clone(),
        q: q.clone(),
        coordinates,
        idempotents,
    })
}

/// Reorders the rows of `P` so that `PQ = nI`, when some row permutation
/// achieves it. Returns the permuted matrix and the permutation (new row
/// `c` is old row `perm[c]`).
pub fn align_rows(p: &GaussMatrix, q: &GaussMatrix, n: usize) -> Result<Option<(GaussMatrix, Vec<usize>)>> {
    let size = p.rows();
    check_square("P", p, size)?;
    check_square("Q", q, size)?;
    let prod = p.mul(q)?;
    let target = GaussRational::from_int(n as i64);
    let mut perm = vec![usize::MAX; size];
    for r in 0..size {
        let hits: Vec<usize> = (0..size).filter(|&c| !prod.get(r, c).is_zero()).collect();
        match hits[..] {
            [c] if prod.get(r, c) == target && perm[c] == usize::MAX => perm[c] = r,
            _ => return Ok(None),
        }
    }
    Ok(Some((p.permute_rows(&perm), perm)))
}

/// Numeric eigenmatrices from [`compute_eigenmatrices`].
#[derive(Debug, Clone, PartialEq)]
pub struct NumericEigen {
    pub p: Vec<Vec<Complex64>>,
    pub q: Vec<Vec<Complex64>>,
    /// Coefficients `c_1, …, c_d` of the generic combination that worked.
    pub coefficients: Vec<i64>,
    pub attempts: usize,
}

const GENERIC_PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
const MAX_ATTEMPTS: usize = 5;
/// Roots closer than this (relative to the root scale) count as repeated.
const ROOT_SEPARATION: f64 = 1e-6;
const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// Characteristic polynomial `det(xI − M)` by Faddeev–LeVerrier, exact in
/// `i128`. Coefficients are returned highest degree first (monic).
pub fn characteristic_polynomial(m: &[Vec<i128>]) -> Result<Vec<i128>> {
    let n = m.len();
    let overflow = || Error::Overflow("characteristic polynomial");
    let mut coeffs = vec![1i128];
    let mut mk = vec![vec![0i128; n]; n];
    let mut c_prev = 1i128;
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i128;
                for l in 0..n {
                    acc = m[i][l]
                        .checked_mul(mk[l][j])
                        .and_then(|v| acc.checked_add(v))
                        .ok_or_else(overflow)?;
                }
                next[i][j] = acc;
            }
            next[i][i] = next[i][i].checked_add(c_prev).ok_or_else(overflow)?;
        }
        mk = next;
        let mut trace = 0i128;
        for i in 0..n {
            for l in 0..n {
                trace = m[i][l]
                    .checked_mul(mk[l][i])
                    .and_then(|v| trace.checked_add(v))
                    .ok_or_else(overflow)?;
            }
        }
        let k = k as i128;
        if trace % k != 0 {
            return Err(Error::Verification("inexact Faddeev-LeVerrier division".into()));
        }
        c_prev = -trace / k;
        coeffs.push(c_prev);
    }
    Ok(coeffs)
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of a monic polynomial by Aberth–Ehrlich iteration.
pub fn polynomial_roots(coeffs: &[i128]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let c: Vec<f64> = coeffs.iter().map(|&v| v as f64).collect();
    // Cauchy bound on root moduli.
    let radius = 1.0 + c[1..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / degree as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, angle)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < 1e-15 {
            return Ok(z);
        }
    }
    // Accept if the residuals are small despite stalled steps.
    let scale = c.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if z.iter()
        .all(|&r| horner(&c, r).0.norm() <= 1e-6 * scale * r.norm().max(1.0).powi(degree as i32))
    {
        Ok(z)
    } else {
        Err(Error::RootFinding("Aberth iteration did not converge".into()))
    }
}

/// Complex LU solve with partial pivoting.
fn solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        if a[piv][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for j in col..n {
                let v = a[col][j];
                a[r][j] -= f * v;
            }
            let v = b[col];
            b[r] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let s: Complex64 = (r + 1..n).map(|j| a[r][j] * x[j]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Eigenvector of `m` for an approximate eigenvalue, by inverse iteration.
fn eigenvector(m: &[Vec<f64>], lambda: Complex64) -> Option<Vec<Complex64>> {
    let n = m.len();
    let shift = lambda + Complex64::new(1e-10, 1e-10) * lambda.norm().max(1.0);
    let a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new(m[i][j], 0.0) - if i == j { shift } else { 0.0.into() })
                .collect()
        })
        .collect();
    let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + i as f64 * 0.1, 0.3)).collect();
    for _ in 0..3 {
        v = solve(a.clone(), v)?;
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return None;
        }
        v.iter_mut().for_each(|x| *x /= norm);
    }
    Some(v)
}

fn invert(m: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(f64::from(u8::from(i == j)), 0.0))
            .collect();
        cols.push(solve(m.to_vec(), e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

fn lexicographic(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

fn attempt(s: &AssociationScheme, coefficients: &[i64]) -> Result<Option<Vec<Vec<Complex64>>>> {
    let d1 = s.d() + 1;
    let b: Vec<IntMatrix> = (0..d1).map(|i| s.intersection_matrix(i)).collect::<Result<_>>()?;
    let mut generic = vec![vec![0i128; d1]; d1];
    for (a, &c) in coefficients.iter().enumerate() {
        for j in 0..d1 {
            for k in 0..d1 {
                generic[j][k] += c as i128 * b[a + 1].get(j, k) as i128;
            }
        }
    }
    let roots = polynomial_roots(&characteristic_polynomial(&generic)?)?;
    let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.norm()));
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() < ROOT_SEPARATION * scale {
                return Ok(None);
            }
        }
    }
    let generic_f: Vec<Vec<f64>> = generic.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
    let mut rows = Vec::with_capacity(d1);
    for &root in &roots {
        let Some(mut u) = eigenvector(&generic_f, root) else {
            return Ok(None);
        };
        if u[0].norm() < 1e-12 {
            return Ok(None);
        }
        let u0 = u[0];
        u.iter_mut().for_each(|x| *x /= u0);
        // Every B_a must share the eigenvector, with eigenvalue u_a.
        for (a, ba) in b.iter().enumerate() {
            for j in 0..d1 {
                let bu: Complex64 = (0..d1).map(|k| u[k] * ba.get(j, k) as f64).sum();
                let tol = RESIDUAL_TOLERANCE * (1.0 + u[a].norm()) * (1.0 + u[j].norm());
                if (bu - u[a] * u[j]).norm() > tol * d1 as f64 {
                    return Ok(None);
                }
            }
        }
        rows.push(u);
    }
    Ok(Some(rows))
}

/// Numeric `P` and `Q = nP⁻¹` from the intersection matrices.
///
/// Rows of `P` are the common right eigenvectors of the `B_a`, normalized to
/// first entry 1, found from one generic combination `Σ c_a B_a`. The first
/// combination uses small primes; retries draw coefficients from a ChaCha
/// stream seeded by `seed`. Rows are sorted by descending real part of the
/// `A_1` column with a lexicographic tie-break.
pub fn compute_eigenmatrices(s: &AssociationScheme, seed: u64) -> Result<NumericEigen> {
    let d = s.d();
    if d > GENERIC_PRIMES.len() {
        return Err(Error::RootFinding(format!("class {d} exceeds the supported maximum")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coefficients: Vec<i64> = GENERIC_PRIMES[..d].to_vec();
    for attempts in 1..=MAX_ATTEMPTS {
        if let Some(mut p) = attempt(s, &coefficients)? {
            p.sort_by(|x, y| {
                let key = |r: &[Complex64]| r.get(1).map_or(0.0, |v| v.re);
                key(y).total_cmp(&key(x)).then_with(|| lexicographic(x, y))
            });
            let inv = invert(&p).ok_or(Error::Singular)?;
            let n = s.n() as f64;
            let q = inv.iter().map(|r| r.iter().map(|v| v * n).collect()).collect();
            return Ok(NumericEigen {
                p,
                q,
                coefficients,
                attempts,
            });
        }
        coefficients = (0..d).map(|_| rng.gen_range(2..=97)).collect();
    }
    Err(Error::RootFinding(format!(
        "no generic combination separated the eigenvalues in {MAX_ATTEMPTS} attempts"
    )))
}

/// Matches numeric rows to exact rows within `tol`. Returns, for each
/// numeric row, the index of the exact row it equals.
pub fn match_rows(numeric: &[Vec<Complex64>], exact: &GaussMatrix, tol: f64) -> Option<Vec<usize>> {
    let exact = exact.to_complex_rows();
    if numeric.len() != exact.len() {
        return None;
    }
    let mut used = vec![false; exact.len()];
    let mut mapping = Vec::with_capacity(numeric.len());
    for row in numeric {
        let hit = (0..exact.len()).find(|&e| {
            !used[e] && exact[e].len() == row.len() && exact[e].iter().zip(row).all(|(a, b)| (a - b).norm() <= tol)
        })?;
        used[hit] = true;
        mapping.push(hit);
    }
    Some(mapping)
}
