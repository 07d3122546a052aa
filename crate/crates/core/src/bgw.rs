//! Balanced generalized weighing matrices over cyclic groups, their
//! expansion `G = [H·g^{w_ij}·R]` into twin asymmetric designs, and the
//! class-5 association scheme assembled from the twins.

use crate::biangular::row_projectors;
use crate::error::{Error, Result};
use crate::gauss::{GaussMatrix, GaussRational};
use crate::hadamard::{is_hadamard, normalize, SignMatrix};
use crate::matrix::IntMatrix;
use crate::nrd::{is_drad, DradParams};
use crate::scheme::{verify_scheme, AssociationScheme};

/// Square matrix over `{0} ∪ C_m`. Entry `0` is the zero element and
/// `i ∈ 1..=m` denotes `g^i`, so `m` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    size: usize,
    group_order: u32,
    entries: Vec<u32>,
}

impl GroupRingMatrix {
    pub fn new(size: usize, group_order: u32, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::BadLength {
                rows: size,
                cols: size,
                got: entries.len(),
            });
        }
        if group_order == 0 {
            return Err(Error::InvalidGroupRing("group order must be positive".into()));
        }
        if let Some(pos) = entries.iter().position(|&e| e > group_order) {
            return Err(Error::InvalidGroupRing(format!(
                "entry {} at ({}, {}) exceeds group order {group_order}",
                entries[pos],
                pos / size,
                pos % size
            )));
        }
        Ok(Self {
            size,
            group_order,
            entries,
        })
    }

    pub fn from_rows(group_order: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let size = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::BadLength {
                rows: size,
                cols: size,
                got: bad.len(),
            });
        }
        Self::new(size, group_order, rows.concat())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn group_order(&self) -> u32 {
        self.group_order
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.size + j]
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.size * self.size)
            .map(|p| self.get(p % self.size, p / self.size))
            .collect();
        Self {
            size: self.size,
            group_order: self.group_order,
            entries,
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.size.max(1)).map(<[u32]>::to_vec).collect()
    }
}

const W10_PRINTED: [[u32; 10]; 10] = [
    [0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [4, 0, 3, 7, 5, 6, 8, 1, 4, 2],
    [4, 7, 0, 3, 8, 5, 6, 2, 1, 4],
    [4, 3, 7, 0, 6, 8, 5, 4, 2, 1],
    [4, 1, 4, 2, 0, 3, 7, 5, 6, 8],
    [4, 2, 1, 4, 7, 0, 3, 8, 5, 6],
    [4, 4, 2, 1, 3, 7, 0, 6, 8, 5],
    [4, 5, 6, 8, 1, 4, 2, 0, 3, 7],
    [4, 8, 5, 6, 2, 1, 4, 7, 0, 3],
    [4, 6, 8, 5, 4, 2, 1, 3, 7, 0],
];

/// The skew BGW(10, 9, 8) over `C_8`, with the first-row entries taken as
/// the identity `g^8`. Each expanded block `H·g^w·R` is symmetric, so a
/// skew `G` needs `w_ji ≡ w_ij + 4 (mod 8)`; this holds for every pair
/// with the first row at `g^8` and the first column at `g^4`.
pub fn w10() -> GroupRingMatrix {
    let mut rows: Vec<Vec<u32>> = W10_PRINTED.iter().map(|r| r.to_vec()).collect();
    for e in rows[0].iter_mut().skip(1) {
        *e = 8;
    }
    GroupRingMatrix::from_rows(8, &rows).expect("10x10 table")
}

/// The table exactly as transcribed, with `g^1` along the first row. It is
/// a BGW(10, 9, 8) but does not expand to a skew-symmetric `G`.
pub fn w10_as_printed() -> GroupRingMatrix {
    let rows: Vec<Vec<u32>> = W10_PRINTED.iter().map(|r| r.to_vec()).collect();
    GroupRingMatrix::from_rows(8, &rows).expect("10x10 table")
}

/// The first BGW condition that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BgwViolation {
    RowWeight {
        row: usize,
        weight: usize,
    },
    ColumnWeight {
        col: usize,
        weight: usize,
    },
    /// `lam` is not a multiple of the group order.
    Indivisible,
    /// In the quotient multiset of rows (or columns) `a`, `b`, the element
    /// `g^element` appears `count` times.
    Unbalanced {
        columns: bool,
        a: usize,
        b: usize,
        element: u32,
        count: usize,
    },
}

impl std::fmt::Display for BgwViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BgwViolation::RowWeight { row, weight } => write!(f, "row {row} has weight {weight}"),
            BgwViolation::ColumnWeight { col, weight } => write!(f, "column {col} has weight {weight}"),
            BgwViolation::Indivisible => write!(f, "lambda is not a multiple of the group order"),
            BgwViolation::Unbalanced {
                columns,
                a,
                b,
                element,
                count,
            } => write!(
                f,
                "{} {a}, {b}: g^{element} appears {count} times",
                if *columns { "columns" } else { "rows" }
            ),
        }
    }
}

fn unbalanced_rows(w: &GroupRingMatrix, per_element: usize, columns: bool) -> Option<BgwViolation> {
    let m = w.group_order();
    let s = w.size();
    for a in 0..s {
        for b in a + 1..s {
            let mut counts = vec![0usize; m as usize];
            for r in 0..s {
                let (x, y) = (w.get(a, r), w.get(b, r));
                if x != 0 && y != 0 {
                    counts[((x + m - y) % m) as usize] += 1;
                }
            }
            if let Some(e) = counts.iter().position(|&c| c != per_element) {
                return Some(BgwViolation::Unbalanced {
                    columns,
                    a,
                    b,
                    element: if e == 0 { m } else { e as u32 },
                    count: counts[e],
                });
            }
        }
    }
    None
}

/// Checks BGW`(size, k, lam)`: every row and column has `k` nonzero
/// entries and, for rows and for columns, every pair's quotient multiset
/// `{x·y⁻¹}` covers the group `lam / m` times.
pub fn bgw_violation(w: &GroupRingMatrix, k: usize, lam: usize) -> Option<BgwViolation> {
    let s = w.size();
    for row in 0..s {
        let weight = (0..s).filter(|&c| w.get(row, c) != 0).count();
        if weight != k {
            return Some(BgwViolation::RowWeight { row, weight });
        }
    }
    for col in 0..s {
        let weight = (0..s).filter(|&r| w.get(r, col) != 0).count();
        if weight != k {
            return Some(BgwViolation::ColumnWeight { col, weight });
        }
    }
    let m = w.group_order() as usize;
    if lam % m != 0 {
        return Some(BgwViolation::Indivisible);
    }
    unbalanced_rows(w, lam / m, false).or_else(|| unbalanced_rows(&w.transpose(), lam / m, true))
}

pub fn is_bgw(w: &GroupRingMatrix, k: usize, lam: usize) -> bool {
    bgw_violation(w, k, lam).is_none()
}

/// Negacirculant generator of order `4n²`: a `2n × 2n` grid of `2n`-blocks
/// with `I` on the block superdiagonal and `−I` in the bottom-left corner.
pub fn negacirculant_generator(n: usize) -> IntMatrix {
    let b = 2 * n;
    IntMatrix::from_fn(b * b, b * b, |r, c| {
        let (bi, bj) = (r / b, c / b);
        if r % b != c % b {
            0
        } else if bj == bi + 1 {
            1
        } else if bi == b - 1 && bj == 0 {
            -1
        } else {
            0
        }
    })
}

/// `gen^i`.
pub fn rho(gen: &IntMatrix, i: u32) -> Result<IntMatrix> {
    gen.pow(i)
}

/// Negacirculant block matrix with first block row `(0, C_2, …, C_{2n})`,
/// each later row shifted right with wrapped blocks negated. The row
/// projectors come from the normalization of `h2n`. Verifies that the
/// result commutes with the generator.
pub fn h_block(h2n: &SignMatrix) -> Result<IntMatrix> {
    if !is_hadamard(h2n) {
        return Err(Error::NotHadamard);
    }
    let b = h2n.order();
    let c = row_projectors(&normalize(h2n)?)?;
    let grid: Vec<Vec<IntMatrix>> = (0..b)
        .map(|r| {
            (0..b)
                .map(|col| {
                    let shift = (col + b - r) % b;
                    if shift == 0 {
                        Ok(IntMatrix::zeros(b, b))
                    } else if col < r {
                        c.c(shift + 1).negate()
                    } else {
                        Ok(c.c(shift + 1).clone())
                    }
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let h = IntMatrix::block_compose(&grid)?;
    let gen = negacirculant_generator(b / 2);
    if h.mul(&gen)? != gen.mul(&h)? {
        return Err(Error::Verification("H does not commute with the generator".into()));
    }
    Ok(h)
}

/// `R_{2n} ⊗ I_{2n}` with `R_{2n}` the back identity.
pub fn r_matrix(n: usize) -> IntMatrix {
    IntMatrix::back_identity(2 * n)
        .kron(&IntMatrix::identity(2 * n))
        .expect("permutation matrices")
}

/// `G = [H·gen^{w_ij}·R]`, with zero blocks where `w_ij` is the zero element.
pub fn expand(w: &GroupRingMatrix, h: &IntMatrix, gen: &IntMatrix, r: &IntMatrix) -> Result<IntMatrix> {
    let order = h.rows();
    for other in [gen, r] {
        if other.shape() != h.shape() || !h.is_square() {
            return Err(Error::DimensionMismatch {
                op: "expand",
                left: h.shape(),
                right: other.shape(),
            });
        }
    }
    let blocks: Vec<IntMatrix> = (1..=w.group_order())
        .map(|i| h.mul(&rho(gen, i)?)?.mul(r))
        .collect::<Result<_>>()?;
    let grid: Vec<Vec<IntMatrix>> = (0..w.size())
        .map(|i| {
            (0..w.size())
                .map(|j| match w.get(i, j) {
                    0 => IntMatrix::zeros(order, order),
                    e => blocks[e as usize - 1].clone(),
                })
                .collect()
        })
        .collect();
    IntMatrix::block_compose(&grid)
}

/// The `+1` and `−1` parts of a skew `{−1, 0, 1}` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPair {
    pub a1: IntMatrix,
    pub a2: IntMatrix,
    pub params: DradParams,
}

/// Splits `G` into its positive and negative parts and verifies that they
/// are transposes of each other and that the positive part is a DRAD.
pub fn twin_split(g: &IntMatrix) -> Result<TwinPair> {
    if !g.entries_in(&[-1, 0, 1]) {
        return Err(Error::Verification("G has entries outside {-1, 0, 1}".into()));
    }
    let a1 = g.map(|v| i64::from(v == 1));
    let a2 = g.map(|v| i64::from(v == -1));
    if let Some(cell) = a2.first_difference(&a1.transpose()) {
        return Err(Error::Verification(format!("A_2 != A_1^T at {cell:?}")));
    }
    let digraph = crate::digraph::Digraph::new(a1.clone())?;
    let params = is_drad(&digraph).ok_or_else(|| Error::Verification("A_1 is not a DRAD".into()))?;
    Ok(TwinPair { a1, a2, params })
}

/// One product `A_iA_j = Σ_k c_k A_k` from the class-5 identity list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductIdentity {
    pub i: usize,
    pub j: usize,
    pub coefficients: [i64; 6],
}

impl ProductIdentity {
    pub fn name(&self) -> String {
        format!("A_{}A_{}", self.i, self.j)
    }
}

/// Closed-form products and eigenmatrices of the class-5 scheme at `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class5Tables {
    /// One identity per unordered pair `1 ≤ i ≤ j ≤ 5`.
    pub identities: Vec<ProductIdentity>,
    pub p: GaussMatrix,
    pub q: GaussMatrix,
}

impl Class5Tables {
    /// Full tensor `p[i][j][k]`, filled in by `A_0` and commutativity.
    pub fn tensor(&self) -> Vec<Vec<Vec<i64>>> {
        let mut p = vec![vec![vec![0i64; 6]; 6]; 6];
        for i in 0..6 {
            p[0][i][i] = 1;
            p[i][0][i] = 1;
        }
        for id in &self.identities {
            p[id.i][id.j] = id.coefficients.to_vec();
            p[id.j][id.i] = id.coefficients.to_vec();
        }
        p
    }
}

fn class5_identities(n: i64) -> Vec<ProductIdentity> {
    let t = 2 * n - 1;
    let c11 = (n - 1) * t * (2 * n * n - n);
    let e = t * t * (n * n - n);
    let f = 2 * n * (n - 1) * t;
    let g = 4 * n * (n - 1);
    let raw: [(usize, usize, [i64; 6]); 15] = [
        (1, 1, [0, c11, c11, c11, n * n * t * t, c11]),
        (2, 2, [0, c11, c11, c11, n * n * t * t, c11]),
        (1, 2, [n * n * t * t + e, e, e, e, e, e]),
        (1, 3, [0, f, f, f, 0, n * t * t]),
        (2, 3, [0, f, f, f, 0, n * t * t]),
        (1, 4, [0, n - 1, n, 0, 0, 0]),
        (1, 5, [0, 2 * n * (n - 1), 2 * n * (n - 1), n * t, 0, 0]),
        (2, 5, [0, 2 * n * (n - 1), 2 * n * (n - 1), n * t, 0, 0]),
        (2, 4, [0, n, n - 1, 0, 0, 0]),
        (3, 3, [2 * n * t * t, g, g, g, 2 * n * t * t, 0]),
        (3, 4, [0, 0, 0, t, 0, 0]),
        (3, 5, [0, 2 * n, 2 * n, 0, 0, 0]),
        (4, 4, [t, 0, 0, 0, 2 * n - 2, 0]),
        (4, 5, [0, 0, 0, 0, 0, t]),
        (5, 5, [2 * n * t, 0, 0, 0, 2 * n * t, g]),
    ];
    raw.iter()
        .map(|&(i, j, coefficients)| ProductIdentity { i, j, coefficients })
        .collect()
}

fn class5_tables(n: usize, as_printed: bool) -> Result<Class5Tables> {
    if n == 0 {
        return Err(Error::ParameterMismatch("n must be positive".into()));
    }
    let n = n as i64;
    let t = 2 * n - 1;
    let m = 2 * n * n - 2 * n + 1;
    let r = GaussRational::from_int;
    let im = |v: i64| GaussRational::imag_frac(v, 1);
    let nt = n * t;
    let p = GaussMatrix::from_rows(vec![
        vec![r(1), r(nt * t * t), r(nt * t * t), r(2 * nt * t), r(t), r(2 * nt)],
        vec![r(1), r(nt), r(nt), r(-2 * nt), r(t), r(-2 * n)],
        vec![r(1), im(nt), im(-nt), r(0), r(-1), r(0)],
        vec![r(1), im(-nt), im(nt), r(0), r(-1), r(0)],
        vec![r(1), r(-nt), r(-nt), r(-2 * n), r(t), r(2 * nt)],
        vec![
            r(1),
            r(-nt),
            r(-nt),
            r(if as_printed { -2 * nt } else { 2 * nt }),
            r(t),
            r(-2 * n),
        ],
    ])?;
    let frac = |v: i64| GaussRational::frac(v, t);
    let ifrac = |v: i64| GaussRational::imag_frac(v, t);
    let q = GaussMatrix::from_rows(vec![
        vec![r(1), r(t * m), r(2 * nt * m), r(2 * nt * m), r(t * t), r(t * m)],
        vec![r(1), frac(m), ifrac(-2 * n * m), ifrac(2 * n * m), r(-1), frac(-m)],
        vec![r(1), frac(m), ifrac(2 * n * m), ifrac(-2 * n * m), r(-1), frac(-m)],
        vec![r(1), r(-m), r(0), r(0), r(-1), r(if as_printed { -t } else { m })],
        if as_printed {
            vec![r(1), r(m), r(-2 * n * m), r(-2 * n * m), r(t * t), r(m)]
        } else {
            vec![r(1), r(t * m), r(-2 * n * m), r(-2 * n * m), r(t * t), r(t * m)]
        },
        vec![r(1), r(-m), r(0), r(0), r(t * t), r(-m)],
    ])?;
    Ok(Class5Tables {
        identities: class5_identities(n),
        p,
        q,
    })
}

/// Closed-form tables with `P_{5,3} = 2n(2n−1)`, `Q_{3,5} = m` and
/// `Q_{4,1} = Q_{4,5} = (2n−1)m`, the values that satisfy `PQ = nI`.
pub fn class5_expected(n: usize) -> Result<Class5Tables> {
    class5_tables(n, false)
}

/// Closed-form tables with the published signs and entries in those three
/// places.
pub fn class5_expected_as_printed(n: usize) -> Result<Class5Tables> {
    class5_tables(n, true)
}

/// Every intermediate object of the class-5 construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class5Construction {
    pub n: usize,
    pub h: IntMatrix,
    pub g: IntMatrix,
    pub twin: TwinPair,
    pub scheme: AssociationScheme,
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

/// Builds `A_0, …, A_5` from a skew BGW`(p²+1, p², p²−1)` over `C_{4n}`
/// (`p = 2n − 1`) and a Hadamard matrix of order `2n`, and verifies the
/// scheme, the block identities and every product identity.
pub fn class5_construction(n: usize, w: &GroupRingMatrix, h2n: &SignMatrix) -> Result<Class5Construction> {
    if n == 0 || h2n.order() != 2 * n {
        return Err(Error::ParameterMismatch(format!(
            "Hadamard order {} does not equal 2n = {}",
            h2n.order(),
            2 * n
        )));
    }
    let p = 2 * n - 1;
    let points = p * p + 1;
    if w.size() != points || w.group_order() as usize != 4 * n {
        return Err(Error::ParameterMismatch(format!(
            "expected a {points}x{points} table over C_{}, got {}x{} over C_{}",
            4 * n,
            w.size(),
            w.size(),
            w.group_order()
        )));
    }
    if let Some(v) = bgw_violation(w, p * p, p * p - 1) {
        return Err(Error::ParameterMismatch(format!(
            "not a BGW({points}, {}, {}): {v}",
            p * p,
            p * p - 1
        )));
    }
    let h = h_block(h2n)?;
    let g = expand(w, &h, &negacirculant_generator(n), &r_matrix(n))?;
    check(g.is_skew_symmetric(), "G is not skew-symmetric")?;
    let twin = twin_split(&g)?;

    let b = 2 * n;
    let block = b * b;
    let order = block * points;
    let jb = IntMatrix::all_ones(b);
    let a4 = IntMatrix::identity(b * points).kron(&jb.sub(&IntMatrix::identity(b))?)?;
    let a5 = IntMatrix::identity(points).kron(&IntMatrix::all_ones(block).sub(&IntMatrix::identity(b).kron(&jb)?)?)?;
    let identity = IntMatrix::identity(order);
    let a3 = IntMatrix::all_ones(order)
        .sub(&identity)?
        .sub(&twin.a1)?
        .sub(&twin.a2)?
        .sub(&a4)?
        .sub(&a5)?;

    let outside = IntMatrix::all_ones(order).sub(&IntMatrix::identity(points).kron(&IntMatrix::all_ones(block))?)?;
    check(
        twin.a1.add(&twin.a2)?.add(&a3)? == outside,
        "A_1 + A_2 + A_3 != J - I ⊗ J_{4n^2}",
    )?;
    let diag = IntMatrix::identity(points).kron(&IntMatrix::all_ones(block).sub(&IntMatrix::identity(block))?)?;
    check(a4.add(&a5)? == diag, "A_4 + A_5 != I ⊗ (J - I)")?;

    let scheme = verify_scheme(vec![identity, twin.a1.clone(), twin.a2.clone(), a3, a4, a5])?;
    let mats = scheme.mats();
    check(mats[1].transpose() == mats[2], "A_1^T != A_2")?;
    check(
        (3..=5).all(|i| mats[i].is_symmetric()),
        "A_3, A_4, A_5 are not all symmetric",
    )?;
    check(!scheme.is_symmetric(), "scheme is symmetric")?;

    for id in class5_identities(n as i64) {
        for k in 0..6 {
            let got = scheme.p(id.i, id.j, k);
            if got != id.coefficients[k] {
                return Err(Error::Verification(format!(
                    "{}: coefficient of A_{k} is {got}, expected {}",
                    id.name(),
                    id.coefficients[k]
                )));
            }
        }
    }
    Ok(Class5Construction { n, h, g, twin, scheme })
}

pub fn class5_scheme(n: usize, w: &GroupRingMatrix, h2n: &SignMatrix) -> Result<AssociationScheme> {
    class5_construction(n, w, h2n).map(|c| c.scheme)
}

/// The built-in 160-point instance: `n = 2`, [`w10`] and Sylvester's
/// matrix of order 4.
pub fn drad160() -> Result<Class5Construction> {
    class5_construction(2, &w10(), &crate::hadamard::sylvester(2))
}
