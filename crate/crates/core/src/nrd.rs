//! Normally regular digraphs: asymmetric digraphs with
//! `AAᵀ = kI + λ(A + Aᵀ) + μ(J − I − A − Aᵀ)`, and doubly regular asymmetric
//! digraphs (DRADs), the case `λ = μ`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::digraph::Digraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NrdParams {
    pub n: usize,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl fmt::Display for NrdParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n, self.k, self.lambda, self.mu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DradParams {
    pub v: usize,
    pub k: i64,
    pub lambda: i64,
}

impl fmt::Display for DradParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v, self.k, self.lambda)
    }
}

/// Why a digraph is not normally regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NrdViolation {
    Empty,
    /// Both `(x, y)` and `(y, x)` are arcs.
    NotAsymmetric(usize, usize),
    /// `AAᵀ` differs from the parameter expression at this cell.
    Cell {
        row: usize,
        col: usize,
        expected: i64,
        got: i64,
    },
}

impl fmt::Display for NrdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NrdViolation::Empty => write!(f, "digraph has no vertices"),
            NrdViolation::NotAsymmetric(x, y) => write!(f, "arcs in both directions between {x} and {y}"),
            NrdViolation::Cell {
                row,
                col,
                expected,
                got,
            } => write!(f, "(AA^T)[{row}][{col}] = {got}, expected {expected}"),
        }
    }
}

/// Extracts `(n, k, λ, μ)` and verifies the defining identity on every cell.
///
/// `k` is read from the first row sum, `λ` from the first cell with
/// `(A + Aᵀ)_{xy} = 1` and `μ` from the first off-diagonal cell with
/// `(A + Aᵀ)_{xy} = 0`. A class with no cells leaves its parameter free; it is
/// then set equal to the other one (so tournaments and edgeless digraphs
/// report `λ = μ`).
pub fn check_nrd(g: &Digraph) -> std::result::Result<NrdParams, NrdViolation> {
    let n = g.order();
    if n == 0 {
        return Err(NrdViolation::Empty);
    }
    for x in 0..n {
        for y in x + 1..n {
            if g.has_arc(x, y) && g.has_arc(y, x) {
                return Err(NrdViolation::NotAsymmetric(x, y));
            }
        }
    }
    let a = g.adjacency();
    let gram = a.mul(&a.transpose()).expect("0/1 products fit in i64");
    let adjacent = |x: usize, y: usize| g.has_arc(x, y) || g.has_arc(y, x);
    let k = gram.get(0, 0);
    let cells = || {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y)
    };
    let lambda = cells().find(|&(x, y)| adjacent(x, y)).map(|(x, y)| gram.get(x, y));
    let mu = cells().find(|&(x, y)| !adjacent(x, y)).map(|(x, y)| gram.get(x, y));
    let (lambda, mu) = match (lambda, mu) {
        (Some(l), Some(m)) => (l, m),
        (Some(l), None) => (l, l),
        (None, Some(m)) => (m, m),
        (None, None) => (0, 0),
    };
    for x in 0..n {
        for y in 0..n {
            let expected = if x == y {
                k
            } else if adjacent(x, y) {
                lambda
            } else {
                mu
            };
            let got = gram.get(x, y);
            if got != expected {
                return Err(NrdViolation::Cell {
                    row: x,
                    col: y,
                    expected,
                    got,
                });
            }
        }
    }
    Ok(NrdParams { n, k, lambda, mu })
}

pub fn nrd_parameters(g: &Digraph) -> Option<NrdParams> {
    check_nrd(g).ok()
}

pub fn is_drad(g: &Digraph) -> Option<DradParams> {
    nrd_parameters(g).filter(|p| p.lambda == p.mu).map(|p| DradParams {
        v: p.n,
        k: p.k,
        lambda: p.lambda,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenvalueKind {
    Real,
    /// `±√(μ − k)`, real part 0.
    ImaginaryPair,
    /// `−n/(2r) ± √(radicand)`.
    ShiftedRootPair,
}

/// An eigenvalue value (or conjugate pair) `real_part ± √radicand`. A
/// negative radicand gives a non-real pair with real part `real_part`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraicEigenvalue {
    pub kind: EigenvalueKind,
    pub real_part: Ratio<i64>,
    pub radicand: Ratio<i64>,
}

impl AlgebraicEigenvalue {
    /// Real parts of the values this entry stands for.
    pub fn real_parts(&self) -> Vec<f64> {
        let re = self.real_part.to_f64().unwrap_or(f64::NAN);
        let rad = self.radicand.to_f64().unwrap_or(f64::NAN);
        if self.kind == EigenvalueKind::Real || rad <= 0.0 {
            vec![re]
        } else {
            vec![re + rad.sqrt(), re - rad.sqrt()]
        }
    }

    /// Whether the values are real.
    pub fn is_real(&self) -> bool {
        self.kind == EigenvalueKind::Real || self.radicand >= Ratio::zero()
    }
}

impl fmt::Display for AlgebraicEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EigenvalueKind::Real => write!(f, "{}", self.real_part),
            _ => write!(f, "{} ± sqrt({})", self.real_part, self.radicand),
        }
    }
}

/// Eigenvalue values of a normally regular digraph whose symmetric part is
/// `J_n − I_r ⊗ J_{n/r}`. Multiplicities are not predicted.
///
/// An eigenvalue `α` orthogonal to the all-ones vector satisfies
/// `|α|² = k − μ + (λ − μ)(α + ᾱ)` with `Re α ∈ {0, −n/(2r)}`. Real part 0
/// gives `±√(μ − k)`. Real part `−n/(2r)` gives imaginary part squared
/// `k − μ + (μ − λ)n/r − n²/(4r²)`, so the radicand stored for that pair is
/// its negation.
pub fn lemma_e_spectrum(params: &NrdParams, r: usize) -> Result<Vec<AlgebraicEigenvalue>> {
    let n = params.n;
    if r == 0 || n % r != 0 {
        return Err(Error::NotDivisor(r, n));
    }
    let (n, r) = (n as i64, r as i64);
    let k = Ratio::from_integer(params.k);
    let lambda = Ratio::from_integer(params.lambda);
    let mu = Ratio::from_integer(params.mu);
    let shift = Ratio::new(n, 2 * r);
    let imag_sq = k - mu + (mu - lambda) * Ratio::new(n, r) - shift * shift;
    Ok(vec![
        AlgebraicEigenvalue {
            kind: EigenvalueKind::Real,
            real_part: k,
            radicand: Ratio::zero(),
        },
        AlgebraicEigenvalue {
            kind: EigenvalueKind::ImaginaryPair,
            real_part: Ratio::zero(),
            radicand: mu - k,
        },
        AlgebraicEigenvalue {
            kind: EigenvalueKind::ShiftedRootPair,
            real_part: -shift,
            radicand: -imag_sq,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;

    fn four_cycle() -> Digraph {
        Digraph::from_arcs(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn four_cycle_parameters() {
        let p = nrd_parameters(&four_cycle()).unwrap();
        assert_eq!(
            p,
            NrdParams {
                n: 4,
                k: 1,
                lambda: 0,
                mu: 0
            }
        );
        assert_eq!(is_drad(&four_cycle()), Some(DradParams { v: 4, k: 1, lambda: 0 }));
    }

    #[test]
    fn undirected_triangle_is_not_asymmetric() {
        let tri = Digraph::new(IntMatrix::all_ones(3).sub(&IntMatrix::identity(3)).unwrap()).unwrap();
        assert_eq!(check_nrd(&tri), Err(NrdViolation::NotAsymmetric(0, 1)));
        assert_eq!(nrd_parameters(&tri), None);
    }

    #[test]
    fn nrd_with_distinct_lambda_mu_is_not_a_drad() {
        // Z_7 with connection set {1, 3}: differences ±1, ±3 are arcs and
        // share no common out-neighbour, differences ±2 share exactly one.
        let g = circulant(7, &[1, 3]);
        assert_eq!(
            nrd_parameters(&g),
            Some(NrdParams {
                n: 7,
                k: 2,
                lambda: 0,
                mu: 1
            })
        );
        assert_eq!(is_drad(&g), None);

        let p7 = circulant(7, &[1, 2, 4]);
        assert_eq!(is_drad(&p7), Some(DradParams { v: 7, k: 3, lambda: 1 }));

        // Z_8 with {1, 2}: AAᵀ has 1 at difference ±1 but 0 at ±2.
        assert!(matches!(
            check_nrd(&circulant(8, &[1, 2])),
            Err(NrdViolation::Cell { .. })
        ));
    }

    fn circulant(n: usize, set: &[usize]) -> Digraph {
        let arcs: Vec<_> = (0..n).flat_map(|x| set.iter().map(move |s| (x, (x + s) % n))).collect();
        Digraph::from_arcs(n, &arcs).unwrap()
    }

    #[test]
    fn lemma_spectrum_of_four_cycle() {
        let p = NrdParams {
            n: 4,
            k: 1,
            lambda: 0,
            mu: 0,
        };
        let s = lemma_e_spectrum(&p, 2).unwrap();
        assert_eq!(s[0].real_part, Ratio::from_integer(1));
        assert_eq!(s[1].real_part, Ratio::zero());
        assert_eq!(s[1].radicand, Ratio::from_integer(-1));
        assert_eq!(s[2].real_part, Ratio::from_integer(-1));
        assert_eq!(s[2].radicand, Ratio::zero());
    }

    #[test]
    fn lemma_spectrum_of_skew_bush_family() {
        for n in 1..6i64 {
            let p = NrdParams {
                n: (4 * n * n) as usize,
                k: 2 * n * n - n,
                lambda: n * n - n,
                mu: n * n - n,
            };
            let s = lemma_e_spectrum(&p, (2 * n) as usize).unwrap();
            assert_eq!(s[0].real_part, Ratio::from_integer(2 * n * n - n));
            assert_eq!(s[1].radicand, Ratio::from_integer(-n * n));
            assert_eq!(s[2].real_part, Ratio::from_integer(-n));
            assert_eq!(s[2].radicand, Ratio::zero());
        }
    }

    #[test]
    fn shifted_pair_of_directed_triangle_is_non_real() {
        // Eigenvalues of the 3-cycle: 1 and −1/2 ± i√3/2.
        let tri = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let p = nrd_parameters(&tri).unwrap();
        let s = lemma_e_spectrum(&p, 3).unwrap();
        assert_eq!(s[2].real_part, Ratio::new(-1, 2));
        assert_eq!(s[2].radicand, Ratio::new(-3, 4));
        assert!(!s[2].is_real());
        assert_eq!(s[2].real_parts(), vec![-0.5]);
    }

    #[test]
    fn degenerate_imaginary_pair() {
        let p = NrdParams {
            n: 4,
            k: 2,
            lambda: 0,
            mu: 2,
        };
        let s = lemma_e_spectrum(&p, 2).unwrap();
        assert_eq!(s[1].radicand, Ratio::zero());
        assert_eq!(s[1].real_parts(), vec![0.0]);
    }

    #[test]
    fn r_must_divide_n() {
        let p = NrdParams {
            n: 4,
            k: 1,
            lambda: 0,
            mu: 0,
        };
        assert_eq!(lemma_e_spectrum(&p, 3), Err(Error::NotDivisor(3, 4)));
    }
}
