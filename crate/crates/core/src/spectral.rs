//! Floating-point spectra of symmetric integer matrices and the real-part
//! spectrum of normal digraphs.
//!
//! For a normal adjacency matrix `A` the eigenvalues of `(A + Aᵀ)/2` are the
//! real parts of the eigenvalues of `A`. The symmetric part is formed as the
//! integer matrix `A + Aᵀ` and halved only after diagonalization.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Off-diagonal convergence threshold relative to the Frobenius norm.
pub const JACOBI_RELATIVE_TOLERANCE: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are treated as one value.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Largest off-diagonal magnitude left after the final sweep.
    pub residual: f64,
    pub sweeps: usize,
}

impl SymmetricSpectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Distinct values, clustered at [`CLUSTER_TOLERANCE`], with their
    /// multiplicities.
    pub fn distinct(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &v in &self.eigenvalues {
            match out.last_mut() {
                Some((last, count)) if (v - *last).abs() <= CLUSTER_TOLERANCE => *count += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

struct Decomposition {
    values: Vec<f64>,
    /// Column `j` (stored as `vectors[r * n + j]`) is the eigenvector of `values[j]`.
    vectors: Option<Vec<f64>>,
    residual: f64,
    sweeps: usize,
}

fn jacobi(m: &IntMatrix, scale: f64, want_vectors: bool) -> Result<Decomposition> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    if let Some((i, j)) = m.first_asymmetry() {
        return Err(Error::NotSymmetric(i, j));
    }
    let n = m.rows();
    let mut a: Vec<f64> = m.as_slice().iter().map(|&v| v as f64 * scale).collect();
    let mut v = want_vectors.then(|| {
        let mut id = vec![0.0; n * n];
        (0..n).for_each(|i| id[i * n + i] = 1.0);
        id
    });
    let frobenius = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = JACOBI_RELATIVE_TOLERANCE * frobenius;
    let max_off = |a: &[f64]| {
        let mut best = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                best = best.max(a[p * n + q].abs());
            }
        }
        best
    };

    let mut sweeps = 0;
    let mut residual = max_off(&a);
    while residual >= threshold && frobenius > 0.0 {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < threshold * 1e-3 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let (arp, arq) = (a[r * n + p], a[r * n + q]);
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                if let Some(v) = v.as_mut() {
                    for r in 0..n {
                        let (vrp, vrq) = (v[r * n + p], v[r * n + q]);
                        v[r * n + p] = vrp - s * (vrq + tau * vrp);
                        v[r * n + q] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
        residual = max_off(&a);
    }
    Ok(Decomposition {
        values: (0..n).map(|i| a[i * n + i]).collect(),
        vectors: v,
        residual,
        sweeps,
    })
}

fn sorted(values: Vec<f64>) -> Vec<f64> {
    let mut values = values;
    values.sort_by(f64::total_cmp);
    values
}

/// Eigenvalues of an exactly symmetric integer matrix by cyclic Jacobi
/// rotations.
pub fn jacobi_eigenvalues(m: &IntMatrix) -> Result<SymmetricSpectrum> {
    let d = jacobi(m, 1.0, false)?;
    Ok(SymmetricSpectrum {
        eigenvalues: sorted(d.values),
        residual: d.residual,
        sweeps: d.sweeps,
    })
}

/// Exact test of `M Mᵀ = Mᵀ M`.
pub fn is_normal(m: &IntMatrix) -> Result<bool> {
    Ok(normality_witness(m)?.is_none())
}

/// First cell where `M Mᵀ` and `Mᵀ M` differ.
pub fn normality_witness(m: &IntMatrix) -> Result<Option<(usize, usize)>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let t = m.transpose();
    Ok(m.mul(&t)?.first_difference(&t.mul(m)?))
}

fn require_normal(g: &Digraph) -> Result<IntMatrix> {
    let a = g.adjacency();
    if let Some((i, j)) = normality_witness(a)? {
        return Err(Error::NotNormal(i, j));
    }
    a.add(&a.transpose())
}

/// Real parts of the eigenvalues of a normal digraph's adjacency matrix,
/// ascending, with multiplicity.
pub fn re_spectrum(g: &Digraph) -> Result<SymmetricSpectrum> {
    let sym = require_normal(g)?;
    let d = jacobi(&sym, 0.5, false)?;
    Ok(SymmetricSpectrum {
        eigenvalues: sorted(d.values),
        residual: d.residual,
        sweeps: d.sweeps,
    })
}

/// Minimum real part of the adjacency spectrum. An edgeless digraph yields 0.
pub fn theta_min(g: &Digraph) -> Result<f64> {
    Ok(re_spectrum(g)?.min())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinRealPart {
    pub theta_min: f64,
    /// Number of eigenvalues (with multiplicity) whose real part is `theta_min`.
    pub multiplicity: usize,
    /// Whether every eigenvalue with real part `theta_min` equals `theta_min`,
    /// i.e. exactly one eigenvalue value has that real part.
    pub purely_real: bool,
}

/// Decides whether the minimal real part is attained by a real eigenvalue
/// only.
///
/// `S = A + Aᵀ` and `K = A − Aᵀ` commute for normal `A`, and on the
/// eigenspace of `S` belonging to `2θ_min` the eigenvalues of `A` are
/// `θ_min ± i·t` with `t` ranging over the spectrum of `K/2` there. So the
/// minimum is attained only by the real value `θ_min` iff `K` annihilates
/// that eigenspace.
pub fn min_real_part(g: &Digraph) -> Result<MinRealPart> {
    let sym = require_normal(g)?;
    let a = g.adjacency();
    let skew = a.sub(&a.transpose())?;
    let n = a.rows();
    let d = jacobi(&sym, 0.5, true)?;
    let vectors = d.vectors.expect("requested");
    let theta = d.values.iter().copied().fold(f64::INFINITY, f64::min);
    if n == 0 {
        return Ok(MinRealPart {
            theta_min: 0.0,
            multiplicity: 0,
            purely_real: true,
        });
    }
    let cluster: Vec<usize> = (0..n)
        .filter(|&j| (d.values[j] - theta).abs() <= CLUSTER_TOLERANCE)
        .collect();
    let mut worst = 0.0f64;
    for &j in &cluster {
        for r in 0..n {
            let kv: f64 = skew
                .row(r)
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(c, &k)| k as f64 * vectors[c * n + j])
                .sum();
            worst = worst.max(kv.abs());
        }
    }
    Ok(MinRealPart {
        theta_min: theta,
        multiplicity: cluster.len(),
        purely_real: worst <= CLUSTER_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Directed 4-cycle 0→2→1→3→0.
    fn four_cycle() -> Digraph {
        Digraph::from_arcs(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn all_ones_spectrum() {
        let s = jacobi_eigenvalues(&IntMatrix::all_ones(4)).unwrap();
        assert!(close(&s.eigenvalues, &[0.0, 0.0, 0.0, 4.0], 1e-10), "{s:?}");
    }

    #[test]
    fn identity_spectrum() {
        let s = jacobi_eigenvalues(&IntMatrix::identity(3)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert_eq!(s.sweeps, 0);
    }

    #[test]
    fn four_cycle_symmetric_part() {
        // A + Aᵀ of the 4-cycle is the undirected 4-cycle 0-2-1-3-0 with
        // characteristic polynomial x⁴ − 4x², roots {−2, 0, 0, 2}.
        let a = four_cycle().adjacency().clone();
        let s = jacobi_eigenvalues(&a.add(&a.transpose()).unwrap()).unwrap();
        assert!(close(&s.eigenvalues, &[-2.0, 0.0, 0.0, 2.0], 1e-10), "{s:?}");
        let re = re_spectrum(&four_cycle()).unwrap();
        assert!(close(&re.eigenvalues, &[-1.0, 0.0, 0.0, 1.0], 1e-10));
    }

    #[test]
    fn rejects_asymmetric_input() {
        let a = four_cycle().adjacency().clone();
        assert!(matches!(jacobi_eigenvalues(&a), Err(Error::NotSymmetric(..))));
    }

    #[test]
    fn theta_min_of_four_cycle() {
        // Permutation matrix of a 4-cycle: eigenvalues are the 4th roots of unity.
        assert!((theta_min(&four_cycle()).unwrap() + 1.0).abs() < 1e-10);
        let m = min_real_part(&four_cycle()).unwrap();
        assert_eq!(m.multiplicity, 1);
        assert!(m.purely_real);
    }

    #[test]
    fn theta_min_of_directed_triangle_is_complex_pair() {
        // Eigenvalues 1, −1/2 ± i√3/2: the minimum real part comes from a pair.
        let g = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let m = min_real_part(&g).unwrap();
        assert!((m.theta_min + 0.5).abs() < 1e-10);
        assert_eq!(m.multiplicity, 2);
        assert!(!m.purely_real);
    }

    #[test]
    fn edgeless_theta_min_is_zero() {
        let g = Digraph::new(IntMatrix::zeros(3, 3)).unwrap();
        assert_eq!(theta_min(&g).unwrap(), 0.0);
    }

    #[test]
    fn normality() {
        let sym = IntMatrix::from_rows(&[vec![1, 2], vec![2, 5]]).unwrap();
        assert!(is_normal(&sym).unwrap());
        // Directed path 0→1→2: AAᵀ = diag(1,1,0), AᵀA = diag(0,1,1).
        let path = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_normal(path.adjacency()).unwrap());
        assert_eq!(normality_witness(path.adjacency()).unwrap(), Some((0, 0)));
        assert!(matches!(theta_min(&path), Err(Error::NotNormal(0, 0))));
        assert!(is_normal(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn trace_matches_eigenvalue_sum() {
        let m = IntMatrix::from_rows(&[
            vec![4, 1, -2, 2],
            vec![1, 2, 0, 1],
            vec![-2, 0, 3, -2],
            vec![2, 1, -2, -1],
        ])
        .unwrap();
        let s = jacobi_eigenvalues(&m).unwrap();
        assert!((s.sum() - m.trace() as f64).abs() < 1e-8 * 4.0 * 4.0);
    }
}
