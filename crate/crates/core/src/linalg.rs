//! Small exact and floating-point linear algebra helpers: Gaussian
//! elimination over the rationals and a Jacobi eigensolver used for singular
//! values of small Jacobian matrices.

use crate::expr::Rat;
use num_traits::Zero;

/// Row-echelon rank of a rational matrix, computed exactly.
pub fn rank_exact(matrix: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = matrix.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        match pivot {
            None => {
                col += 1;
                continue;
            }
            Some(p) => {
                m.swap(rank, p);
                let inv = m[rank][col].clone().recip();
                for c in col..cols {
                    let v = m[rank][c].clone() * inv.clone();
                    m[rank][c] = v;
                }
                for r in 0..rows {
                    if r != rank && !m[r][col].is_zero() {
                        let factor = m[r][col].clone();
                        for c in col..cols {
                            let sub = factor.clone() * m[rank][c].clone();
                            m[r][c] -= sub;
                        }
                    }
                }
                rank += 1;
                col += 1;
            }
        }
    }
    rank
}

/// Result of an exact linear solve on a (possibly overdetermined) system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Full column rank, every equation satisfied.
    Unique(Vec<Rat>),
    /// Full column rank but some equations contradict the pivot solution;
    /// the candidate from the pivot rows is returned for diagnosis.
    Inconsistent(Vec<Rat>),
    /// Fewer independent rows than unknowns.
    RankDeficient,
}

pub fn solve_rows(a: &[Vec<Rat>], b: &[Rat]) -> SolveOutcome {
    let rows = a.len();
    if rows == 0 || rows != b.len() {
        return SolveOutcome::RankDeficient;
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].clone().recip();
        for c in col..=cols {
            let v = m[rank][c].clone() * inv.clone();
            m[rank][c] = v;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let sub = factor.clone() * m[rank][c].clone();
                    m[r][c] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    if rank < cols {
        return SolveOutcome::RankDeficient;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return SolveOutcome::Inconsistent(x);
        }
    }
    SolveOutcome::Unique(x)
}

/// Exact solution of `A x = b`; `None` unless unique and consistent.
pub fn solve_exact(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    match solve_rows(a, b) {
        SolveOutcome::Unique(x) => Some(x),
        _ => None,
    }
}

/// Singular values of a small dense matrix via Jacobi iteration on `M Mᵀ`.
pub fn singular_values(m: &[Vec<f64>]) -> Vec<f64> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut gram = vec![vec![0.0; rows]; rows];
    for i in 0..rows {
        for j in 0..rows {
            let mut s = 0.0;
            for k in 0..cols {
                s += m[i][k] * m[j][k];
            }
            gram[i][j] = s;
        }
    }
    let mut eig = symmetric_eigenvalues(&mut gram);
    for v in &mut eig {
        *v = v.max(0.0).sqrt();
    }
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eig
}

/// Rank with an absolute singular-value threshold.
pub fn rank_f64(m: &[Vec<f64>], threshold: f64) -> usize {
    singular_values(m)
        .into_iter()
        .filter(|&s| s > threshold)
        .count()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
fn symmetric_eigenvalues(a: &mut [Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Determinant of a 3x3 float matrix.
pub fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
