//! Internal dense-symmetric and sparse-iterative eigenvalue routines.
//!
//! The bipartition scan needs the largest eigenvalue of a Hermitian Gram
//! matrix. Small matrices (dimension ≤ 64) go through a full symmetric
//! eigendecomposition of the real 2d×2d embedding (Householder
//! tridiagonalization + implicit-shift QL); larger ones use power iteration
//! applied directly to the sparse amplitude matrix, which never forms the
//! Gram matrix at all.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Gram matrices up to this dimension are diagonalized densely; above it the
/// power iteration takes over.
pub(crate) const MAX_DENSE_DIM: usize = 64;

const POWER_MAX_ITERATIONS: usize = 200_000;

#[inline]
fn pythag<T: Scalar>(a: T, b: T) -> T {
    let (a, b) = (a.abs(), b.abs());
    if a > b {
        let r = b / a;
        a * (T::one() + r * r).sqrt()
    } else if b > T::zero() {
        let r = a / b;
        b * (T::one() + r * r).sqrt()
    } else {
        T::zero()
    }
}

#[inline]
fn sign_of<T: Scalar>(a: T, b: T) -> T {
    if b >= T::zero() {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Householder reduction of a real symmetric matrix to tridiagonal form,
/// eigenvalues-only variant: on return `d` holds the diagonal and `e` the
/// subdiagonal (with `e[0] = 0`). The input matrix is consumed as scratch.
#[allow(clippy::needless_range_loop)] // indexed form follows the recurrences
fn tridiagonalize<T: Scalar>(a: &mut [Vec<T>], d: &mut [T], e: &mut [T]) {
    let n = a.len();
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = T::zero();
        if l > 0 {
            let mut scale = T::zero();
            for k in 0..=l {
                scale += a[i][k].abs();
            }
            if scale == T::zero() {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= T::zero() { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut f_acc = T::zero();
                for j in 0..=l {
                    let mut g_acc = T::zero();
                    for k in 0..=j {
                        g_acc += a[j][k] * a[i][k];
                    }
                    for k in (j + 1)..=l {
                        g_acc += a[k][j] * a[i][k];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[i][j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let fj = a[i][j];
                    let gj = e[j] - hh * fj;
                    e[j] = gj;
                    for k in 0..=j {
                        let delta = fj * e[k] + gj * a[i][k];
                        a[j][k] -= delta;
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
    }
    e[0] = T::zero();
    for i in 0..n {
        d[i] = a[i][i];
    }
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix; leaves the
/// eigenvalues (unordered) in `d`.
fn ql_eigenvalues<T: Scalar>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();
    let two = T::from_f64(2.0);
    for l in 0..n {
        let mut iterations = 0usize;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::NoConvergence { iterations });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = pythag(g, T::one());
            g = d[m] - d[l] + e[l] / (g + sign_of(r, g));
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = pythag(f, g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

/// All eigenvalues of a real symmetric matrix (row-major, square), sorted
/// descending. The matrix is consumed.
pub(crate) fn symmetric_eigenvalues<T: Scalar>(mut a: Vec<Vec<T>>) -> Result<Vec<T>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tridiagonalize(&mut a, &mut d, &mut e);
    ql_eigenvalues(&mut d, &mut e)?;
    d.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(d)
}

/// Largest eigenvalue of a Hermitian matrix given in row-major complex form,
/// via the real symmetric embedding [[Re, −Im], [Im, Re]] (every eigenvalue
/// of the original appears twice in the embedding).
pub(crate) fn hermitian_largest_eigenvalue<T: Scalar>(g: &[Complex<T>], dim: usize) -> Result<T> {
    debug_assert_eq!(g.len(), dim * dim);
    if dim == 1 {
        return Ok(g[0].re);
    }
    let n = 2 * dim;
    let mut a = vec![vec![T::zero(); n]; n];
    for i in 0..dim {
        for j in 0..dim {
            let v = g[i * dim + j];
            a[i][j] = v.re;
            a[i][j + dim] = -v.im;
            a[i + dim][j] = v.im;
            a[i + dim][j + dim] = v.re;
        }
    }
    let eigs = symmetric_eigenvalues(a)?;
    Ok(eigs[0])
}

/// Sparse amplitude matrix of a state under a fixed bipartition, with the
/// summed ("big") side remapped to compact column ids.
pub(crate) struct SparseCutMatrix<T: Scalar> {
    pub dim_small: usize,
    pub num_big: usize,
    /// (small index, remapped big index, amplitude)
    pub entries: Vec<(u32, u32, Complex<T>)>,
}

/// Largest eigenvalue of M·M† by power iteration on the sparse factors,
/// starting from the normalized all-ones vector. Convergence requires the
/// relative eigenvalue change to stay below the scalar's power tolerance on
/// two consecutive iterations.
pub(crate) fn power_largest_gram<T: Scalar>(m: &SparseCutMatrix<T>) -> Result<T> {
    let d = m.dim_small;
    let zero = Complex::new(T::zero(), T::zero());
    let init = T::one() / T::from_f64(d as f64).sqrt();
    let mut x = vec![Complex::new(init, T::zero()); d];
    let mut y = vec![zero; m.num_big];
    let mut z = vec![zero; d];
    let mut previous = T::from_f64(-1.0);
    let mut stable = 0usize;
    for _ in 0..POWER_MAX_ITERATIONS {
        for slot in y.iter_mut() {
            *slot = zero;
        }
        for &(s, b, amp) in &m.entries {
            y[b as usize] += amp.conj() * x[s as usize];
        }
        // Rayleigh quotient for normalized x: x† M M† x = ‖M†x‖².
        let mut lambda = T::zero();
        for v in &y {
            lambda += v.norm_sqr();
        }
        for slot in z.iter_mut() {
            *slot = zero;
        }
        for &(s, b, amp) in &m.entries {
            z[s as usize] += amp * y[b as usize];
        }
        let mut z_norm_sq = T::zero();
        for v in &z {
            z_norm_sq += v.norm_sqr();
        }
        let z_norm = z_norm_sq.sqrt();
        if z_norm <= T::ZERO_NORM_TOLERANCE {
            // M†x vanished: x sits in the kernel; the state must have been
            // inconsistent with the cut. Treat as converged-to-zero.
            return Ok(T::zero());
        }
        let inv = T::one() / z_norm;
        for (xi, zi) in x.iter_mut().zip(&z) {
            *xi = *zi * inv;
        }
        if (lambda - previous).abs() <= T::POWER_TOLERANCE * lambda.max(T::epsilon()) {
            stable += 1;
            if stable >= 2 {
                return Ok(lambda);
            }
        } else {
            stable = 0;
        }
        previous = lambda;
    }
    Err(Error::NoConvergence {
        iterations: POWER_MAX_ITERATIONS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_diagonal_matrix() {
        let a: Vec<Vec<f64>> = vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ];
        let eigs = symmetric_eigenvalues(a).unwrap();
        assert!((eigs[0] - 3.0).abs() < 1e-12);
        assert!((eigs[1] - 2.0).abs() < 1e-12);
        assert!((eigs[2] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_two_by_two() {
        // [[2, 1], [1, 2]] -> 3, 1
        let a: Vec<Vec<f64>> = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let eigs = symmetric_eigenvalues(a).unwrap();
        assert!((eigs[0] - 3.0).abs() < 1e-12);
        assert!((eigs[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_preserve_trace_and_handle_degeneracy() {
        // Projector onto the all-ones direction in 4 dims, scaled: eigenvalues 4, 0, 0, 0.
        let a = vec![vec![1.0f64; 4]; 4];
        let eigs = symmetric_eigenvalues(a).unwrap();
        assert!((eigs[0] - 4.0).abs() < 1e-12);
        for &e in &eigs[1..] {
            assert!(e.abs() < 1e-12);
        }
    }

    #[test]
    fn hermitian_embedding_matches_known_spectrum() {
        // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
        let g: Vec<Complex<f64>> = vec![
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(0.0, -1.0),
            Complex::new(1.0, 0.0),
        ];
        let top = hermitian_largest_eigenvalue(&g, 2).unwrap();
        assert!((top - 2.0).abs() < 1e-12);
    }

    #[test]
    fn power_iteration_matches_dense_on_small_case() {
        // M = [[1, 1], [0, 1]] (real): M M^T = [[2, 1], [1, 1]], eigenvalues (3±sqrt5)/2.
        let m = SparseCutMatrix {
            dim_small: 2,
            num_big: 2,
            entries: vec![
                (0, 0, Complex::new(1.0f64, 0.0)),
                (0, 1, Complex::new(1.0, 0.0)),
                (1, 1, Complex::new(1.0, 0.0)),
            ],
        };
        let top = power_largest_gram(&m).unwrap();
        let expected = (3.0 + 5.0f64.sqrt()) / 2.0;
        assert!((top - expected).abs() < 1e-10, "got {top}, want {expected}");
    }

    #[test]
    fn power_iteration_handles_degenerate_top_eigenvalue() {
        // M = identity scaled by 0.7: Gram has the fourfold eigenvalue 0.49.
        let entries = (0..4)
            .map(|k| (k as u32, k as u32, Complex::new(0.7f64, 0.0)))
            .collect();
        let m = SparseCutMatrix {
            dim_small: 4,
            num_big: 4,
            entries,
        };
        let top = power_largest_gram(&m).unwrap();
        assert!((top - 0.49).abs() < 1e-12);
    }

    #[test]
    fn symmetric_random_cross_check_against_characteristic_sum() {
        // Trace equals eigenvalue sum; Frobenius norm squared equals sum of squares.
        let a = vec![
            vec![0.3, -0.2, 0.5, 0.1],
            vec![-0.2, 1.7, 0.0, -0.4],
            vec![0.5, 0.0, -0.9, 0.2],
            vec![0.1, -0.4, 0.2, 0.6],
        ];
        let trace: f64 = (0..4).map(|i| a[i][i]).sum();
        let frob: f64 = a.iter().flatten().map(|v| v * v).sum();
        let eigs = symmetric_eigenvalues(a).unwrap();
        let eig_sum: f64 = eigs.iter().sum();
        let eig_sq: f64 = eigs.iter().map(|v| v * v).sum();
        assert!((trace - eig_sum).abs() < 1e-12);
        assert!((frob - eig_sq).abs() < 1e-11);
    }
}
