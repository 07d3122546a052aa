//! Hadamard matrices, Bush-type and skew-Bush-type recognition, and the
//! correspondence between skew-Bush-type Hadamard matrices of order `4n²`
//! and DRAD`(4n², 2n² − n, n² − n)`s whose vertex set splits into `2n`
//! cocliques of size `2n`.

use crate::digraph::{verify_coclique_partition, Digraph, PartFailure};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::nrd::{is_drad, DradParams};

/// Square matrix with entries in `{+1, −1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix(IntMatrix);

impl SignMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.rows(), m.cols()));
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let value = m.get(i, j);
                if value != 1 && value != -1 {
                    return Err(Error::NotSignMatrix { row: i, col: j, value });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }
}

/// `HHᵀ = nI`. Orders other than 1, 2 and multiples of 4 are rejected
/// without computing the product.
pub fn is_hadamard(h: &SignMatrix) -> bool {
    let n = h.order();
    if !(n <= 2 || n % 4 == 0) {
        return false;
    }
    let m = h.matrix();
    m.mul(&m.transpose())
        .map(|g| g == IntMatrix::identity(n).scalar_mul(n as i64).expect("small"))
        .unwrap_or(false)
}

/// Sylvester's Hadamard matrix of order `2^k`.
pub fn sylvester(k: u32) -> SignMatrix {
    let base = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]).expect("2x2");
    let mut h = IntMatrix::identity(1);
    for _ in 0..k {
        h = h.kron(&base).expect("entries stay ±1");
    }
    SignMatrix(h)
}

pub fn is_normalized(h: &SignMatrix) -> bool {
    let m = h.matrix();
    let n = h.order();
    (0..n).all(|j| m.get(0, j) == 1) && (0..n).all(|i| m.get(i, 0) == 1)
}

/// Flips column signs to make the first row all ones, then row signs to
/// make the first column all ones.
pub fn normalize(h: &SignMatrix) -> Result<SignMatrix> {
    if !is_hadamard(h) {
        return Err(Error::NotHadamard);
    }
    let m = h.matrix();
    let col = IntMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j) * m.get(0, j));
    let both = IntMatrix::from_fn(m.rows(), m.cols(), |i, j| col.get(i, j) * col.get(i, 0));
    Ok(SignMatrix(both))
}

/// A sign matrix of order `(2n)²` viewed as a `2n × 2n` grid of `2n × 2n`
/// blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartitionedHadamard {
    base: SignMatrix,
    block: usize,
}

/// `2n` when `order = 4n²` with `n ≥ 1`.
fn block_size(order: usize) -> Option<usize> {
    let b = (order as f64).sqrt().round() as usize;
    (b >= 2 && b % 2 == 0 && b * b == order).then_some(b)
}

impl BlockPartitionedHadamard {
    pub fn new(base: SignMatrix) -> Result<Self> {
        let block = block_size(base.order()).ok_or(Error::NotBlockOrder(base.order()))?;
        Ok(Self { base, block })
    }

    pub fn from_matrix(m: IntMatrix) -> Result<Self> {
        Self::new(SignMatrix::new(m)?)
    }

    pub fn base(&self) -> &SignMatrix {
        &self.base
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.base.matrix()
    }

    /// Block size `2n`.
    pub fn block(&self) -> usize {
        self.block
    }

    /// The `n` in `4n²`.
    pub fn half(&self) -> usize {
        self.block / 2
    }

    pub fn block_at(&self, i: usize, j: usize) -> IntMatrix {
        self.matrix().block(i, j, self.block)
    }
}

/// The first Bush-type condition that fails, if any.
pub fn bush_type_violation(h: &BlockPartitionedHadamard) -> Option<String> {
    if !is_hadamard(h.base()) {
        return Some("not a Hadamard matrix".into());
    }
    let b = h.block();
    let j = IntMatrix::all_ones(b);
    let zero = IntMatrix::zeros(b, b);
    for bi in 0..b {
        for bj in 0..b {
            let blk = h.block_at(bi, bj);
            if bi == bj {
                if blk != j {
                    return Some(format!("diagonal block {bi} is not J_{b}"));
                }
            } else if blk.mul(&j).ok()? != zero || j.mul(&blk).ok()? != zero {
                return Some(format!("block ({bi}, {bj}) has nonzero row or column sums"));
            }
        }
    }
    None
}

pub fn is_bush_type(h: &BlockPartitionedHadamard) -> bool {
    bush_type_violation(h).is_none()
}

fn block_identity_ones(b: usize) -> IntMatrix {
    IntMatrix::identity(b)
        .kron(&IntMatrix::all_ones(b))
        .expect("0/1 entries")
}

/// The first skew-Bush-type condition that fails, if any.
pub fn skew_bush_violation(h: &BlockPartitionedHadamard) -> Option<String> {
    if let Some(v) = bush_type_violation(h) {
        return Some(v);
    }
    let rest = h.matrix().sub(&block_identity_ones(h.block())).ok()?;
    (!rest.is_skew_symmetric()).then(|| "H - I⊗J is not skew-symmetric".to_string())
}

pub fn is_skew_bush_type(h: &BlockPartitionedHadamard) -> bool {
    skew_bush_violation(h).is_none()
}

/// All order-4 skew-Bush-type matrices with diagonal blocks `J₂` and
/// off-diagonal blocks `±[[1, −1], [−1, 1]]`.
pub fn search_order4_skew_bush() -> Vec<BlockPartitionedHadamard> {
    let k = IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).expect("2x2");
    let j = IntMatrix::all_ones(2);
    let mut found = Vec::new();
    for upper in [1, -1] {
        for lower in [1, -1] {
            let m = IntMatrix::block_compose(&[
                vec![j.clone(), k.scalar_mul(upper).expect("small")],
                vec![k.scalar_mul(lower).expect("small"), j.clone()],
            ])
            .expect("square blocks");
            let h = BlockPartitionedHadamard::from_matrix(m).expect("order 4");
            if is_skew_bush_type(&h) {
                found.push(h);
            }
        }
    }
    found
}

/// The order-4 skew-Bush-type fixture: upper block `−[[1,−1],[−1,1]]`.
/// Its digraph is the 4-cycle 0→2→1→3→0.
pub fn skew_bush_order4() -> BlockPartitionedHadamard {
    BlockPartitionedHadamard::from_matrix(
        IntMatrix::from_rows(&[
            vec![1, 1, -1, 1],
            vec![1, 1, 1, -1],
            vec![1, -1, 1, 1],
            vec![-1, 1, 1, 1],
        ])
        .expect("4x4"),
    )
    .expect("order 4")
}

fn expected_drad(n: usize) -> DradParams {
    let n = n as i64;
    DradParams {
        v: (4 * n * n) as usize,
        k: 2 * n * n - n,
        lambda: n * n - n,
    }
}

/// `A = (J − H)/2` together with the `2n` diagonal-block cocliques.
pub fn skew_bush_to_drad(h: &BlockPartitionedHadamard) -> Result<(Digraph, Vec<Vec<usize>>)> {
    if let Some(v) = skew_bush_violation(h) {
        return Err(Error::NotSkewBush(v));
    }
    let order = h.base().order();
    let b = h.block();
    let a = IntMatrix::all_ones(order).sub(h.matrix())?.map(|v| v / 2);
    let g = Digraph::new(a)?;
    let expected = expected_drad(h.half());
    match is_drad(&g) {
        Some(p) if p == expected => {}
        other => {
            return Err(Error::Verification(format!(
                "(J - H)/2 has DRAD parameters {other:?}, expected {expected}"
            )))
        }
    }
    let parts: Vec<Vec<usize>> = (0..b).map(|i| (i * b..(i + 1) * b).collect()).collect();
    for part in &parts {
        if let Some((x, y)) = g.arc_within(part)? {
            return Err(Error::Verification(format!("diagonal block contains arc {x} -> {y}")));
        }
    }
    Ok((g, parts))
}

/// `H = Aᵀ − A + I ⊗ J` after reordering vertices so the parts are
/// consecutive (parts in the given order, ascending within each part).
///
/// This is the inverse of `A = (J − H)/2`. The other sign choice,
/// `A − Aᵀ + I ⊗ J`, is the transpose and also skew-Bush-type.
///
/// The partition is certified with the Hoffman machinery first: every part
/// must be a coclique attaining the bound and, since `−n` is the only
/// eigenvalue with minimal real part, each outside vertex sends exactly `n`
/// arcs into each part. That is what makes the off-diagonal blocks of `H`
/// sum to zero.
pub fn drad_to_skew_bush(g: &Digraph, partition: &[Vec<usize>]) -> Result<BlockPartitionedHadamard> {
    let order = g.order();
    let b = block_size(order).ok_or(Error::NotBlockOrder(order))?;
    let expected = expected_drad(b / 2);
    match is_drad(g) {
        Some(p) if p == expected => {}
        other => {
            return Err(Error::ParameterMismatch(format!(
                "digraph has DRAD parameters {other:?}, expected {expected}"
            )))
        }
    }
    if partition.len() != b || partition.iter().any(|p| p.len() != b) {
        return Err(Error::NotPartition(format!("expected {b} parts of size {b}")));
    }
    let report = verify_coclique_partition(g, partition)?;
    match &report.first_failure {
        None => {}
        Some((idx, PartFailure::NotCoclique(x, y))) => {
            return Err(Error::NotPartition(format!(
                "part {idx} is not a coclique: arc {x} -> {y}"
            )))
        }
        Some((idx, PartFailure::DoesNotAttain { size })) => {
            return Err(Error::Verification(format!(
                "part {idx} of size {size} does not attain the Hoffman bound"
            )))
        }
    }
    let n = (b / 2) as i64;
    for (idx, part) in report.parts.iter().enumerate() {
        let part = part.as_ref().expect("all parts are cocliques");
        if !(part.condition_ii_applicable && part.condition_ii && part.condition_ii_value == Some(n)) {
            return Err(Error::Verification(format!(
                "part {idx} does not receive exactly {n} arcs from each outside vertex"
            )));
        }
    }

    let mut ordering: Vec<usize> = Vec::with_capacity(order);
    for part in partition {
        let mut p = part.clone();
        p.sort_unstable();
        ordering.extend(p);
    }
    let a = g.adjacency().permute_symmetric(&ordering);
    let h = a.transpose().sub(&a)?.add(&block_identity_ones(b))?;
    let h = BlockPartitionedHadamard::from_matrix(h)?;
    if let Some(v) = skew_bush_violation(&h) {
        return Err(Error::Verification(format!("constructed matrix: {v}")));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_hadamard_checks() {
        let h2 = SignMatrix::new(IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]).unwrap()).unwrap();
        assert!(is_hadamard(&h2));
        assert!(!is_hadamard(&SignMatrix::new(IntMatrix::all_ones(4)).unwrap()));
        assert!(is_hadamard(&sylvester(4)));
        assert_eq!(sylvester(4).order(), 16);
        assert!(SignMatrix::new(IntMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn sylvester_and_normalize() {
        assert_eq!(sylvester(0).matrix(), &IntMatrix::identity(1));
        assert_eq!(normalize(&sylvester(2)).unwrap(), sylvester(2));
        // Negate a row and a column: normalization restores first row/column.
        let m = sylvester(3).into_matrix();
        let flipped = IntMatrix::from_fn(8, 8, |i, j| {
            m.get(i, j) * if i == 3 { -1 } else { 1 } * if j == 0 || j == 5 { -1 } else { 1 }
        });
        let h = normalize(&SignMatrix::new(flipped).unwrap()).unwrap();
        assert!(is_normalized(&h));
        assert!(is_hadamard(&h));
        assert_eq!(
            normalize(&SignMatrix::new(IntMatrix::all_ones(2)).unwrap()),
            Err(Error::NotHadamard)
        );
    }

    #[test]
    fn order_divisibility_sanity() {
        for order in [3usize, 5, 6, 10] {
            let m = SignMatrix::new(IntMatrix::all_ones(order)).unwrap();
            assert!(!is_hadamard(&m));
        }
    }

    #[test]
    fn exhaustive_search_contains_fixture() {
        let found = search_order4_skew_bush();
        assert_eq!(found.len(), 2);
        assert!(found.contains(&skew_bush_order4()));
        assert!(is_bush_type(&skew_bush_order4()));
        assert!(is_skew_bush_type(&skew_bush_order4()));
    }

    #[test]
    fn sylvester_is_not_bush_type() {
        let h = BlockPartitionedHadamard::new(sylvester(2)).unwrap();
        assert_eq!(bush_type_violation(&h), Some("diagonal block 0 is not J_2".to_string()));
    }

    #[test]
    fn symmetric_bush_type_is_not_skew() {
        let k = IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap();
        let j = IntMatrix::all_ones(2);
        let m = IntMatrix::block_compose(&[vec![j.clone(), k.clone()], vec![k, j]]).unwrap();
        let h = BlockPartitionedHadamard::from_matrix(m).unwrap();
        assert!(is_bush_type(&h));
        assert!(!is_skew_bush_type(&h));
        assert!(matches!(skew_bush_to_drad(&h), Err(Error::NotSkewBush(_))));
    }

    #[test]
    fn block_order_must_be_4n_squared() {
        assert_eq!(
            BlockPartitionedHadamard::new(sylvester(3)),
            Err(Error::NotBlockOrder(8))
        );
        assert!(BlockPartitionedHadamard::new(sylvester(4)).is_ok());
    }

    #[test]
    fn order4_round_trip() {
        let h = skew_bush_order4();
        let (g, parts) = skew_bush_to_drad(&h).unwrap();
        let cycle = Digraph::from_arcs(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(g, cycle);
        assert_eq!(parts, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(drad_to_skew_bush(&g, &parts).unwrap(), h);
        // The opposite sign convention yields the transpose, also skew-Bush.
        let a = g.adjacency();
        let other = a.sub(&a.transpose()).unwrap().add(&block_identity_ones(2)).unwrap();
        assert_eq!(other, h.matrix().transpose());
        assert!(is_skew_bush_type(
            &BlockPartitionedHadamard::from_matrix(other).unwrap()
        ));
    }

    #[test]
    fn d2h_rejects_bad_inputs() {
        let cycle = Digraph::from_arcs(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert!(matches!(
            drad_to_skew_bush(&cycle, &[vec![0, 1, 2], vec![3]]),
            Err(Error::NotPartition(_))
        ));
        assert!(matches!(
            drad_to_skew_bush(&cycle, &[vec![0, 2], vec![1, 3]]),
            Err(Error::NotPartition(_))
        ));
        // The Paley tournament on 7 vertices is a DRAD but of the wrong order.
        let arcs: Vec<_> = (0..7).flat_map(|x| [1, 2, 4].map(|s| (x, (x + s) % 7))).collect();
        let p7 = Digraph::from_arcs(7, &arcs).unwrap();
        assert_eq!(drad_to_skew_bush(&p7, &[]), Err(Error::NotBlockOrder(7)));
        // Order 4 but wrong λ: the transitive-free 4-vertex digraph 0→1, 2→3.
        let wrong = Digraph::from_arcs(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            drad_to_skew_bush(&wrong, &[vec![0, 2], vec![1, 3]]),
            Err(Error::ParameterMismatch(_))
        ));
    }
}
