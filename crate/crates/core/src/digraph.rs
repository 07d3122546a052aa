//! Loop-free digraphs, the Hoffman coclique bound for strongly connected
//! regular normal digraphs, and certification of cocliques that attain it.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::spectral::{self, MinRealPart};

/// Snap distance above which θ_min is not treated as rational.
pub const RATIONAL_SNAP_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    adjacency: IntMatrix,
}

impl Digraph {
    /// Wraps a square 0/1 matrix with zero diagonal.
    pub fn new(adjacency: IntMatrix) -> Result<Self> {
        if !adjacency.is_square() {
            return Err(Error::NotSquare(adjacency.rows(), adjacency.cols()));
        }
        for i in 0..adjacency.rows() {
            for j in 0..adjacency.cols() {
                let v = adjacency.get(i, j);
                if v != 0 && v != 1 {
                    return Err(Error::InvalidAdjacency(format!(
                        "entry {v} at ({i}, {j}) is not 0 or 1"
                    )));
                }
            }
            if adjacency.get(i, i) != 0 {
                return Err(Error::InvalidAdjacency(format!("loop at vertex {i}")));
            }
        }
        Ok(Self { adjacency })
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if let Some(&vertex) = arcs.iter().flat_map(|(x, y)| [x, y]).find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex, order: n });
        }
        Self::new(IntMatrix::from_fn(n, n, |x, y| i64::from(arcs.contains(&(x, y)))))
    }

    pub fn order(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn into_adjacency(self) -> IntMatrix {
        self.adjacency
    }

    #[inline]
    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.adjacency.get(x, y) == 1
    }

    pub fn arc_count(&self) -> usize {
        self.adjacency.as_slice().iter().filter(|&&v| v == 1).count()
    }

    /// `k` when every in-degree and out-degree equals `k`.
    pub fn regularity(&self) -> Option<usize> {
        let out = self.adjacency.row_sums();
        let inn = self.adjacency.col_sums();
        let k = *out.first()?;
        (out.iter().chain(&inn).all(|&d| d == k)).then_some(k as usize)
    }

    /// `A + Aᵀ` is a 0/1 matrix.
    pub fn is_asymmetric(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (x + 1..n).all(|y| !(self.has_arc(x, y) && self.has_arc(y, x))))
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.order();
        if n <= 1 {
            return true;
        }
        let mut graph = DiGraph::<(), ()>::with_capacity(n, self.arc_count());
        let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
        for x in 0..n {
            for y in 0..n {
                if self.has_arc(x, y) {
                    graph.add_edge(nodes[x], nodes[y], ());
                }
            }
        }
        tarjan_scc(&graph).len() == 1
    }

    fn check_vertices(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&v| v >= self.order()) {
            Some(&vertex) => Err(Error::VertexOutOfRange {
                vertex,
                order: self.order(),
            }),
            None => Ok(()),
        }
    }

    /// An arc with both ends in `set`, if one exists.
    pub fn arc_within(&self, set: &[usize]) -> Result<Option<(usize, usize)>> {
        self.check_vertices(set)?;
        for &x in set {
            for &y in set {
                if self.has_arc(x, y) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_coclique(&self, set: &[usize]) -> Result<bool> {
        Ok(self.arc_within(set)?.is_none())
    }

    /// `r` such that `A + Aᵀ = J_n − I_r ⊗ J_{n/r}`, if the symmetric part
    /// has that shape.
    pub fn block_complement_r(&self) -> Option<usize> {
        let n = self.order();
        if n == 0 {
            return None;
        }
        let sym = |x: usize, y: usize| self.adjacency.get(x, y) + self.adjacency.get(y, x);
        let block = (0..n).filter(|&y| sym(0, y) == 0).count();
        if block == 0 || n % block != 0 {
            return None;
        }
        let ok = (0..n).all(|x| (0..n).all(|y| sym(x, y) == i64::from(x / block != y / block)));
        ok.then_some(n / block)
    }
}

/// Nearest-simplest rational to `x`: the first denominator `q ≤ max_den`
/// whose best numerator lies within [`RATIONAL_SNAP_TOLERANCE`].
pub fn rationalize(x: f64, max_den: usize) -> Option<Ratio<i64>> {
    (1..=max_den.max(1) as i64).find_map(|q| {
        let p = (x * q as f64).round();
        ((x - p / q as f64).abs() <= RATIONAL_SNAP_TOLERANCE).then(|| Ratio::new(p as i64, q))
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Exact(Ratio<i64>),
    /// θ_min did not snap to a small-denominator rational.
    Approximate(f64),
}

impl BoundValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            BoundValue::Approximate(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BoundValue::Exact(_))
    }

    /// Whether an integer size equals this bound.
    pub fn equals(&self, size: usize) -> bool {
        match self {
            BoundValue::Exact(r) => *r == Ratio::from_integer(size as i64),
            BoundValue::Approximate(v) => (v - size as f64).abs() <= RATIONAL_SNAP_TOLERANCE,
        }
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundValue::Exact(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            BoundValue::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            BoundValue::Approximate(v) => write!(f, "~{v:.9}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HoffmanBound {
    pub n: usize,
    pub k: usize,
    pub theta_min: f64,
    pub theta_min_exact: Option<Ratio<i64>>,
    pub bound: BoundValue,
    pub min_real_part: MinRealPart,
}

impl HoffmanBound {
    /// Whether `count == −factor·θ_min`.
    fn matches_multiple(&self, count: i64, factor: i64) -> bool {
        match self.theta_min_exact {
            Some(t) => Ratio::from_integer(count) == -t * factor,
            None => (count as f64 + factor as f64 * self.theta_min).abs() <= RATIONAL_SNAP_TOLERANCE,
        }
    }
}

/// `n(−θ_min)/(k − θ_min)` for a strongly connected `k`-regular normal digraph.
pub fn hoffman_bound(g: &Digraph) -> Result<HoffmanBound> {
    let n = g.order();
    if let Some((i, j)) = spectral::normality_witness(g.adjacency())? {
        return Err(Error::NotNormal(i, j));
    }
    let k = g.regularity().ok_or(Error::NotRegular)?;
    if k == 0 {
        return Err(Error::NoArcs);
    }
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let min = spectral::min_real_part(g)?;
    let theta = min.theta_min;
    let exact = rationalize(theta, 2 * n);
    let bound = match exact {
        Some(t) => BoundValue::Exact(-t * n as i64 / (Ratio::from_integer(k as i64) - t)),
        None => BoundValue::Approximate(n as f64 * -theta / (k as f64 - theta)),
    };
    Ok(HoffmanBound {
        n,
        k,
        theta_min: theta,
        theta_min_exact: exact,
        bound,
        min_real_part: min,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HoffmanReport {
    pub k: usize,
    pub theta_min: f64,
    pub bound: BoundValue,
    pub coclique_size: usize,
    pub attains: bool,
    /// Every outside vertex has `−2θ_min` arcs to or from the coclique.
    pub condition_i: bool,
    /// The common in+out count over outside vertices, when constant.
    pub condition_i_value: Option<i64>,
    /// Exactly one eigenvalue has real part `θ_min`.
    pub condition_ii_applicable: bool,
    /// Every outside vertex has `−θ_min` arcs into the coclique.
    pub condition_ii: bool,
    pub condition_ii_value: Option<i64>,
    /// First outside vertex violating a checked condition.
    pub witness: Option<usize>,
}

fn constant(values: &[i64]) -> Option<i64> {
    let first = *values.first()?;
    values.iter().all(|&v| v == first).then_some(first)
}

fn report_with(g: &Digraph, bound: &HoffmanBound, set: &[usize]) -> Result<HoffmanReport> {
    if let Some((x, y)) = g.arc_within(set)? {
        return Err(Error::NotCoclique(x, y));
    }
    let n = g.order();
    let mut member = vec![false; n];
    for &v in set {
        member[v] = true;
    }
    let size = member.iter().filter(|&&m| m).count();
    let attains = bound.bound.equals(size);
    let applicable = bound.min_real_part.purely_real;
    let mut report = HoffmanReport {
        k: bound.k,
        theta_min: bound.theta_min,
        bound: bound.bound,
        coclique_size: size,
        attains,
        condition_i: false,
        condition_i_value: None,
        condition_ii_applicable: applicable,
        condition_ii: false,
        condition_ii_value: None,
        witness: None,
    };
    if !attains {
        return Ok(report);
    }
    let outside: Vec<usize> = (0..n).filter(|&x| !member[x]).collect();
    let out_counts: Vec<i64> = outside
        .iter()
        .map(|&x| set.iter().filter(|&&y| g.has_arc(x, y)).count() as i64)
        .collect();
    let both_counts: Vec<i64> = outside
        .iter()
        .zip(&out_counts)
        .map(|(&x, &o)| o + set.iter().filter(|&&y| g.has_arc(y, x)).count() as i64)
        .collect();

    let bad_i = both_counts.iter().position(|&c| !bound.matches_multiple(c, 2));
    report.condition_i = bad_i.is_none();
    report.condition_i_value = constant(&both_counts);
    report.witness = bad_i.map(|p| outside[p]);
    if applicable {
        let bad_ii = out_counts.iter().position(|&c| !bound.matches_multiple(c, 1));
        report.condition_ii = bad_ii.is_none();
        report.condition_ii_value = constant(&out_counts);
        report.witness = report.witness.or(bad_ii.map(|p| outside[p]));
    }
    Ok(report)
}

/// Bound, attainment and both equality conditions for the coclique `set`.
pub fn hoffman_report(g: &Digraph, set: &[usize]) -> Result<HoffmanReport> {
    g.check_vertices(set)?;
    if let Some((x, y)) = g.arc_within(set)? {
        return Err(Error::NotCoclique(x, y));
    }
    let bound = hoffman_bound(g)?;
    report_with(g, &bound, set)
}

#[derive(Debug, Clone, PartialEq)]
pub enum PartFailure {
    /// The part contains this arc.
    NotCoclique(usize, usize),
    DoesNotAttain {
        size: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    pub bound: HoffmanBound,
    /// One entry per part; `None` for parts that are not cocliques.
    pub parts: Vec<Option<HoffmanReport>>,
    pub first_failure: Option<(usize, PartFailure)>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks that every part of a vertex partition is a coclique attaining
/// the Hoffman bound.
pub fn verify_coclique_partition(g: &Digraph, parts: &[Vec<usize>]) -> Result<PartitionReport> {
    let n = g.order();
    let mut seen = vec![false; n];
    for part in parts {
        g.check_vertices(part)?;
        for &v in part {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotPartition(format!("vertex {v} appears twice")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::NotPartition(format!("vertex {v} is not covered")));
    }
    let bound = hoffman_bound(g)?;
    let mut reports = Vec::with_capacity(parts.len());
    let mut first_failure = None;
    for (idx, part) in parts.iter().enumerate() {
        if let Some((x, y)) = g.arc_within(part)? {
            first_failure.get_or_insert((idx, PartFailure::NotCoclique(x, y)));
            reports.push(None);
            continue;
        }
        let r = report_with(g, &bound, part)?;
        if !r.attains {
            first_failure.get_or_insert((idx, PartFailure::DoesNotAttain { size: r.coclique_size }));
        }
        reports.push(Some(r));
    }
    Ok(PartitionReport {
        bound,
        parts: reports,
        first_failure,
    })
}

/// Largest coclique by exhaustive search. Intended for tiny digraphs only.
pub fn max_coclique_brute_force(g: &Digraph) -> usize {
    let n = g.order();
    assert!(n <= 24, "exhaustive search is limited to 24 vertices");
    // Neighbourhood masks in either direction.
    let masks: Vec<u32> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| g.has_arc(x, y) || g.has_arc(y, x))
                .fold(0u32, |m, y| m | (1 << y))
        })
        .collect();
    let mut best = 0;
    for subset in 0u32..(1u32 << n) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        let independent = (0..n)
            .filter(|&x| subset & (1 << x) != 0)
            .all(|x| masks[x] & subset == 0);
        if independent {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle() -> Digraph {
        Digraph::from_arcs(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn rejects_loops_and_non_binary() {
        assert!(Digraph::new(IntMatrix::identity(2)).is_err());
        assert!(Digraph::new(IntMatrix::from_rows(&[vec![0, 2], vec![0, 0]]).unwrap()).is_err());
        assert!(Digraph::new(IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(four_cycle().regularity(), Some(1));
        assert_eq!(Digraph::from_arcs(3, &[(0, 1)]).unwrap().regularity(), None);
    }

    #[test]
    fn predicates() {
        let g = four_cycle();
        assert!(g.is_coclique(&[0, 1]).unwrap());
        assert!(!g.is_coclique(&[0, 2]).unwrap());
        assert!(matches!(
            g.is_coclique(&[0, 9]),
            Err(Error::VertexOutOfRange { vertex: 9, order: 4 })
        ));
        assert!(g.is_asymmetric());
        assert!(g.is_strongly_connected());

        let edge = Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!edge.is_asymmetric());

        let two_cycles = Digraph::from_arcs(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        assert!(!two_cycles.is_strongly_connected());
    }

    #[test]
    fn rationalize_snaps_small_denominators() {
        assert_eq!(rationalize(-1.0000000001, 8), Some(Ratio::from_integer(-1)));
        assert_eq!(rationalize(-0.5, 8), Some(Ratio::new(-1, 2)));
        assert_eq!(rationalize(std::f64::consts::SQRT_2, 4), None);
    }

    #[test]
    fn four_cycle_bound_and_report() {
        let g = four_cycle();
        let b = hoffman_bound(&g).unwrap();
        assert_eq!(b.k, 1);
        assert_eq!(b.theta_min_exact, Some(Ratio::from_integer(-1)));
        assert_eq!(b.bound, BoundValue::Exact(Ratio::from_integer(2)));

        let r = hoffman_report(&g, &[0, 1]).unwrap();
        assert!(r.attains);
        assert!(r.condition_i);
        assert_eq!(r.condition_i_value, Some(2));
        assert!(r.condition_ii_applicable);
        assert!(r.condition_ii);
        assert_eq!(r.condition_ii_value, Some(1));
        assert_eq!(r.witness, None);
    }

    #[test]
    fn smaller_coclique_does_not_attain() {
        let r = hoffman_report(&four_cycle(), &[0]).unwrap();
        assert!(!r.attains);
        assert!(!r.condition_i);
        assert!(!r.condition_ii);
    }

    #[test]
    fn report_rejects_non_coclique() {
        assert_eq!(hoffman_report(&four_cycle(), &[0, 2]), Err(Error::NotCoclique(0, 2)));
    }

    #[test]
    fn bound_preconditions_are_distinct() {
        let path = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(hoffman_bound(&path), Err(Error::NotNormal(..))));
        let empty = Digraph::new(IntMatrix::zeros(3, 3)).unwrap();
        assert_eq!(hoffman_bound(&empty), Err(Error::NoArcs));
        let two_cycles = Digraph::from_arcs(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        assert_eq!(hoffman_bound(&two_cycles), Err(Error::NotStronglyConnected));
        // Normal but irregular: disjoint union of an edge and an isolated vertex.
        let irregular = Digraph::from_arcs(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(hoffman_bound(&irregular), Err(Error::NotRegular));
    }

    #[test]
    fn partitions() {
        let g = four_cycle();
        let ok = verify_coclique_partition(&g, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(ok.passed());
        let bad = verify_coclique_partition(&g, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(bad.first_failure, Some((0, PartFailure::NotCoclique(0, 2))));
        assert!(matches!(
            verify_coclique_partition(&g, &[vec![0, 1], vec![2]]),
            Err(Error::NotPartition(_))
        ));
        assert!(matches!(
            verify_coclique_partition(&g, &[vec![0, 1], vec![1, 2, 3]]),
            Err(Error::NotPartition(_))
        ));
    }

    #[test]
    fn block_complement_detection() {
        assert_eq!(four_cycle().block_complement_r(), Some(2));
        let tri = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tri.block_complement_r(), Some(3));
        let path = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.block_complement_r(), None);
    }

    #[test]
    fn brute_force_coclique() {
        assert_eq!(max_coclique_brute_force(&four_cycle()), 2);
        let tri = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(max_coclique_brute_force(&tri), 1);
    }
}
