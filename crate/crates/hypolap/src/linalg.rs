//! Dense complex matrix helpers used by all matrix-model computations.
//!
//! Matrices are `ndarray::Array2<Complex64>`; the handful of factorizations
//! needed at our sizes (inverse, determinant, Hermitian eigenvalues, matrix
//! exponential) are implemented directly on that storage.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

pub type CMat = Array2<Complex64>;
pub type CVec = Array1<Complex64>;

pub const ZERO_C: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE_C: Complex64 = Complex64::new(1.0, 0.0);
pub const I_C: Complex64 = Complex64::new(0.0, 1.0);

pub fn czeros(n: usize) -> CMat {
    Array2::from_elem((n, n), ZERO_C)
}

pub fn ceye(n: usize) -> CMat {
    let mut m = czeros(n);
    for i in 0..n {
        m[[i, i]] = ONE_C;
    }
    m
}

pub fn scale(m: &CMat, c: Complex64) -> CMat {
    m.mapv(|z| z * c)
}

pub fn adjoint(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a.dot(b) - b.dot(a)
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a.dot(b) + b.dot(a)
}

/// Largest absolute entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn fro_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product a ⊗ b.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::from_elem((ra * rb, ca * cb), ZERO_C);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[[i, j]];
            if aij == ZERO_C {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[[i * rb + k, j * cb + l]] = aij * b[[k, l]];
                }
            }
        }
    }
    out
}

/// Matrix exponential by scaling-and-squaring with a Taylor kernel.
pub fn expm(m: &CMat) -> CMat {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    let norm = one_norm(m);
    let mut squarings = 0u32;
    let mut scaled = m.clone();
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
        let s = 0.5f64.powi(squarings as i32);
        scaled = m.mapv(|z| z * s);
    }
    // Taylor series; after scaling the norm is <= 0.5 so 20 terms reach
    // well below f64 epsilon.
    let mut result = ceye(n);
    let mut term = ceye(n);
    for k in 1..=20 {
        term = term.dot(&scaled).mapv(|z| z / k as f64);
        result = result + &term;
        if max_abs(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

fn one_norm(m: &CMat) -> f64 {
    let (r, c) = m.dim();
    (0..c)
        .map(|j| (0..r).map(|i| m[[i, j]].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// LU decomposition with partial pivoting; returns (lu, perm, sign, singular).
fn lu_decompose(m: &CMat) -> (CMat, Vec<usize>, f64, bool) {
    let n = m.nrows();
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let mut singular = false;
    for k in 0..n {
        let mut p = k;
        let mut best = lu[[k, k]].norm();
        for i in k + 1..n {
            let v = lu[[i, k]].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            singular = true;
            continue;
        }
        if p != k {
            for j in 0..n {
                let tmp = lu[[k, j]];
                lu[[k, j]] = lu[[p, j]];
                lu[[p, j]] = tmp;
            }
            perm.swap(k, p);
            sign = -sign;
        }
        let pivot = lu[[k, k]];
        for i in k + 1..n {
            let f = lu[[i, k]] / pivot;
            lu[[i, k]] = f;
            for j in k + 1..n {
                let v = lu[[k, j]];
                lu[[i, j]] = lu[[i, j]] - f * v;
            }
        }
    }
    (lu, perm, sign, singular)
}

pub fn det(m: &CMat) -> Complex64 {
    let (lu, _, sign, singular) = lu_decompose(m);
    if singular {
        return ZERO_C;
    }
    let mut d = Complex64::new(sign, 0.0);
    for i in 0..m.nrows() {
        d *= lu[[i, i]];
    }
    d
}

/// Solve m x = rhs for all columns of rhs.
pub fn solve(m: &CMat, rhs: &CMat) -> Option<CMat> {
    let n = m.nrows();
    let (lu, perm, _, singular) = lu_decompose(m);
    if singular {
        return None;
    }
    let k = rhs.ncols();
    let mut x = Array2::from_elem((n, k), ZERO_C);
    for col in 0..k {
        // forward substitution on permuted rhs
        let mut y = vec![ZERO_C; n];
        for i in 0..n {
            let mut s = rhs[[perm[i], col]];
            for j in 0..i {
                s -= lu[[i, j]] * y[j];
            }
            y[i] = s;
        }
        // back substitution
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in i + 1..n {
                s -= lu[[i, j]] * x[[j, col]];
            }
            x[[i, col]] = s / lu[[i, i]];
        }
    }
    Some(x)
}

pub fn inv(m: &CMat) -> Option<CMat> {
    solve(m, &ceye(m.nrows()))
}

/// Eigenvalues of a Hermitian matrix by the cyclic Jacobi method.
///
/// Returns eigenvalues in ascending order. The input is checked to be
/// Hermitian only up to roundoff by symmetrizing first.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    hermitian_eigen(m).0
}

/// Hermitian eigendecomposition (values ascending, matching eigenvector
/// columns).
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    let mut a = (m + &adjoint(m)).mapv(|z| z * 0.5);
    let mut v = ceye(n);
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[[p, q]].norm_sqr();
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + fro_norm(&a)) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[[p, q]];
                if apq.norm() < 1e-300 {
                    continue;
                }
                let app = a[[p, p]].re;
                let aqq = a[[q, q]].re;
                // Unitary 2x2 rotation diagonalizing the (p,q) block.
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // columns p,q of a and v updated: G = [[c, s*phase],[ -s*conj(phase), c]]
                for i in 0..n {
                    let aip = a[[i, p]];
                    let aiq = a[[i, q]];
                    a[[i, p]] = aip * c - aiq * s * phase.conj();
                    a[[i, q]] = aip * s * phase + aiq * c;
                }
                for j in 0..n {
                    let apj = a[[p, j]];
                    let aqj = a[[q, j]];
                    a[[p, j]] = apj * c - aqj * s * phase;
                    a[[q, j]] = apj * s * phase.conj() + aqj * c;
                }
                for i in 0..n {
                    let vip = v[[i, p]];
                    let viq = v[[i, q]];
                    v[[i, p]] = vip * c - viq * s * phase.conj();
                    v[[i, q]] = vip * s * phase + viq * c;
                }
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[[i, i]].re, i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let vals: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut vecs = czeros(n);
    for (newcol, &(_, oldcol)) in pairs.iter().enumerate() {
        for i in 0..n {
            vecs[[i, newcol]] = v[[i, oldcol]];
        }
    }
    (vals, vecs)
}

/// Real matrix to complex.
pub fn to_complex(m: &Array2<f64>) -> CMat {
    m.mapv(|x| Complex64::new(x, 0.0))
}

/// SVD-free numerical rank via column-pivoted Gram elimination on A^H A.
/// Adequate for the small subspace computations here.
pub fn rank_with_tol(m: &CMat, tol: f64) -> usize {
    // Use eigenvalues of the Hermitian Gram matrix; singular values are
    // their square roots.
    let g = adjoint(m).dot(m);
    let evs = hermitian_eigenvalues(&g);
    evs.iter().filter(|&&l| l.max(0.0).sqrt() > tol).count()
}

/// Orthonormal basis (columns) of the kernel of `m` w.r.t. the standard
/// Hermitian product, via the eigendecomposition of the Gram matrix.
pub fn kernel_basis(m: &CMat, tol: f64) -> CMat {
    let g = adjoint(m).dot(m);
    let (vals, vecs) = hermitian_eigen(&g);
    let n = m.ncols();
    let cols: Vec<usize> = (0..n).filter(|&i| vals[i].max(0.0).sqrt() <= tol).collect();
    let mut out = Array2::from_elem((n, cols.len()), ZERO_C);
    for (j, &c) in cols.iter().enumerate() {
        for i in 0..n {
            out[[i, j]] = vecs[[i, c]];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_rotation_generator() {
        // exp(theta J) on R^2 is the rotation matrix.
        let theta = 0.7;
        let mut j = czeros(2);
        j[[0, 1]] = Complex64::new(-theta, 0.0);
        j[[1, 0]] = Complex64::new(theta, 0.0);
        let r = expm(&j);
        assert!((r[[0, 0]].re - theta.cos()).abs() < 1e-14);
        assert!((r[[1, 0]].re - theta.sin()).abs() < 1e-14);
    }

    #[test]
    fn inverse_and_det() {
        let mut m = ceye(3);
        m[[0, 1]] = Complex64::new(2.0, 1.0);
        m[[2, 0]] = Complex64::new(-0.5, 0.3);
        m[[1, 2]] = Complex64::new(0.0, -1.0);
        let mi = inv(&m).unwrap();
        assert!(max_abs(&(m.dot(&mi) - ceye(3))) < 1e-12);
        let d = det(&m);
        // det of the product must be 1
        let dd = det(&mi) * d;
        assert!((dd - ONE_C).norm() < 1e-12);
    }

    #[test]
    fn hermitian_eigs() {
        let mut m = czeros(2);
        m[[0, 0]] = Complex64::new(1.0, 0.0);
        m[[1, 1]] = Complex64::new(-1.0, 0.0);
        m[[0, 1]] = Complex64::new(0.0, 2.0);
        m[[1, 0]] = Complex64::new(0.0, -2.0);
        let evs = hermitian_eigenvalues(&m);
        let expected = 5.0f64.sqrt();
        assert!((evs[0] + expected).abs() < 1e-12);
        assert!((evs[1] - expected).abs() < 1e-12);
    }
}
