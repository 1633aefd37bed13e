//! Flat-metric dense kernels: cyclic Jacobi diagonalization of Hermitian
//! matrices, weighted Gram–Schmidt, and the matrix pseudo-inverse built on them.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: CMatrix,
}

/// Diagonalizes a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Only the Hermitian part `(H + Hᴴ)/2` is used. Sweeps continue until the
/// off-diagonal Frobenius mass is below machine precision relative to `‖H‖_F`.
pub fn hermitian_jacobi(h: &CMatrix) -> HermitianEigen {
    let n = h.nrows();
    assert_eq!(n, h.ncols(), "Jacobi needs a square matrix");
    let mut a = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = CMatrix::identity(n, n);
    let scale = a.norm();
    if n > 1 && scale > 0.0 {
        let target = f64::EPSILON * scale;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= target {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Below this the rotation angle underflows to zero.
    if mag <= 0.5 * f64::EPSILON * (app.abs() * aqq.abs()).sqrt() {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    // Phase first makes the pivot real, then a real rotation zeroes it.
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // G = diag(1, conj(phase)) · [[c, s], [-s, c]]
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase.conj() * (-s);
    let g_qq = phase.conj() * c;

    let n = a.nrows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// `Σ_i w_i x_i conj(y_i)`.
pub fn weighted_dot(w: &[f64], x: &[Complex64], y: &[Complex64]) -> Complex64 {
    w.iter()
        .zip(x.iter().zip(y))
        .map(|(&wi, (&xi, &yi))| xi * yi.conj() * wi)
        .sum()
}

/// Modified Gram–Schmidt (two passes) in the inner product weighted by `w`.
///
/// Candidates whose residual norm falls to `tol · max_k ‖x_k‖_w` or below are
/// treated as dependent and dropped. Returns orthonormal vectors together with
/// the indices of the candidates that contributed them.
pub fn weighted_gram_schmidt(
    w: &[f64],
    candidates: &[Vec<Complex64>],
    tol: f64,
) -> (Vec<Vec<Complex64>>, Vec<usize>) {
    let norm = |x: &[Complex64]| weighted_dot(w, x, x).re.max(0.0).sqrt();
    let scale = candidates.iter().map(|x| norm(x)).fold(0.0, f64::max);
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut used = Vec::new();
    if scale == 0.0 {
        return (basis, used);
    }
    for (k, x) in candidates.iter().enumerate() {
        let mut r = x.clone();
        for _ in 0..2 {
            for b in &basis {
                let coef = weighted_dot(w, &r, b);
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri -= coef * bi;
                }
            }
        }
        let rn = norm(&r);
        if rn > tol * scale {
            for ri in r.iter_mut() {
                *ri /= rn;
            }
            basis.push(r);
            used.push(k);
        }
    }
    (basis, used)
}

/// Columns of a matrix as owned vectors.
pub fn columns(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.ncols())
        .map(|j| m.column(j).iter().copied().collect())
        .collect()
}

/// Numerical rank via flat Gram–Schmidt on the columns.
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    let w = vec![1.0; m.nrows()];
    weighted_gram_schmidt(&w, &columns(m), tol).0.len()
}

/// Flat Moore–Penrose inverse of an arbitrary square or rectangular matrix,
/// `A⁺ = (AᴴA)⁺ Aᴴ` with eigenvalues of `AᴴA` below `tol · λ_max` discarded.
pub fn pinv_flat(a: &CMatrix, tol: f64) -> CMatrix {
    let gram = a.adjoint() * a;
    let eig = hermitian_jacobi(&gram);
    let lmax = eig.values.iter().copied().fold(0.0, f64::max);
    let mut inv = CMatrix::zeros(a.ncols(), a.ncols());
    if lmax > 0.0 {
        for (k, &l) in eig.values.iter().enumerate() {
            if l > tol * lmax {
                let col = eig.vectors.column(k);
                inv += (col * col.adjoint()) * Complex64::new(1.0 / l, 0.0);
            }
        }
    }
    inv * a.adjoint()
}

pub fn diag(values: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values))
}

pub fn real_diag(values: &[f64]) -> CMatrix {
    CMatrix::from_fn(values.len(), values.len(), |i, j| {
        if i == j {
            Complex64::new(values[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}
