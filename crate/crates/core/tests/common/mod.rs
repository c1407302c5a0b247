#![allow(dead_code)] // shared between test targets that each use a subset

//! Test-side oracle: explicit reduced density matrices diagonalized by
//! cyclic Jacobi. Deliberately a different route from the production path
//! (sparse Gram matrix + Householder/QL or power iteration) so the two can
//! check each other.

use frustrant::{Bipartition, PureState64};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::Rng;

/// Dense reduced density matrix on the given sites (row-major, dimension
/// 2^k where k = sites.len()).
pub fn reduced_density_matrix(state: &PureState64, sites: &[usize]) -> Vec<Complex64> {
    let k = sites.len();
    let dim = 1usize << k;
    let n = state.num_sites();
    let environment: Vec<usize> = (0..n).filter(|s| !sites.contains(s)).collect();
    let mut by_environment: std::collections::BTreeMap<u64, Vec<(usize, Complex64)>> =
        std::collections::BTreeMap::new();
    for (idx, amp) in state.iter() {
        let mut a = 0u64;
        for (pos, &s) in sites.iter().enumerate() {
            a |= idx.bit(s) << pos;
        }
        let mut b = 0u64;
        for (pos, &s) in environment.iter().enumerate() {
            b |= idx.bit(s) << pos;
        }
        by_environment.entry(b).or_default().push((a as usize, amp));
    }
    let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
    for group in by_environment.values() {
        for &(i, vi) in group {
            for &(j, vj) in group {
                rho[i * dim + j] += vi * vj.conj();
            }
        }
    }
    rho
}

/// Cyclic Jacobi eigenvalue iteration for a real symmetric matrix.
#[allow(clippy::needless_range_loop)]
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    let scale: f64 = a
        .iter()
        .flatten()
        .map(|v| v.abs())
        .fold(0.0, f64::max)
        .max(1.0);
    for _sweep in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
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

/// All eigenvalues of a Hermitian matrix (row-major complex), descending,
/// via the real 2d×2d embedding. The embedding doubles every eigenvalue;
/// adjacent pairs of the sorted spectrum are averaged back into one value.
pub fn hermitian_eigenvalues(h: &[Complex64], dim: usize) -> Vec<f64> {
    let n = 2 * dim;
    let mut a = vec![vec![0.0f64; n]; n];
    for i in 0..dim {
        for j in 0..dim {
            let v = h[i * dim + j];
            a[i][j] = v.re;
            a[i][j + dim] = -v.im;
            a[i + dim][j] = v.im;
            a[i + dim][j + dim] = v.re;
        }
    }
    let mut eigs = jacobi_eigenvalues(a);
    eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let mut out = Vec::with_capacity(dim);
    for pair in eigs.chunks(2) {
        assert!(
            (pair[0] - pair[1]).abs() < 1e-10,
            "embedding eigenvalues failed to pair: {} vs {}",
            pair[0],
            pair[1]
        );
        out.push((pair[0] + pair[1]) / 2.0);
    }
    out
}

/// Eigenvalues of the reduced state on the smaller side of a cut,
/// descending.
pub fn reduced_eigenvalues(state: &PureState64, cut: &Bipartition) -> Vec<f64> {
    let a = cut.part_a();
    let b = cut.part_b();
    let sites = if a.len() <= b.len() { a } else { b };
    let rho = reduced_density_matrix(state, &sites);
    hermitian_eigenvalues(&rho, 1 << sites.len())
}

/// Brute-force largest squared Schmidt coefficient over all bipartitions.
pub fn brute_force_lambda_sq_max(state: &PureState64) -> f64 {
    let cuts = frustrant::enumerate_bipartitions(state.num_sites()).unwrap();
    cuts.iter()
        .map(|cut| reduced_eigenvalues(state, cut)[0])
        .fold(f64::MIN, f64::max)
}

/// Random normalized sparse state with the given number of sites and
/// at most `max_terms` nonzero amplitudes.
pub fn random_state(rng: &mut StdRng, n: usize, max_terms: usize) -> PureState64 {
    use frustrant::BasisIndex;
    let dim = 1u64 << n;
    let terms = rng.random_range(2..=max_terms.min(dim as usize));
    let mut entries = Vec::with_capacity(terms);
    for _ in 0..terms {
        let idx = rng.random_range(0..dim);
        let re = rng.random_range(-1.0..1.0);
        let im = rng.random_range(-1.0..1.0);
        entries.push((BasisIndex(idx), Complex64::new(re, im)));
    }
    PureState64::from_amplitudes(n, entries)
        .unwrap()
        .normalize()
        .unwrap_or_else(|_| {
            // pathological cancellation: fall back to a basis state
            frustrant::basis_state(frustrant::BasisIndex(0), n).unwrap()
        })
}

/// Applies a single-qubit unitary to one site of a state.
pub fn apply_single_qubit(
    state: &PureState64,
    u: &[[Complex64; 2]; 2],
    site: usize,
) -> PureState64 {
    use frustrant::BasisIndex;
    let mask = 1u64 << site;
    let mut entries = Vec::with_capacity(2 * state.term_count());
    for (idx, amp) in state.iter() {
        let bit = idx.bit(site) as usize;
        entries.push((BasisIndex(idx.0 & !mask), u[0][bit] * amp));
        entries.push((BasisIndex(idx.0 | mask), u[1][bit] * amp));
    }
    PureState64::from_amplitudes(state.num_sites(), entries).unwrap()
}

/// Random SU(2) matrix.
pub fn random_unitary(rng: &mut StdRng) -> [[Complex64; 2]; 2] {
    let theta = rng.random_range(0.0..std::f64::consts::PI);
    let phi = rng.random_range(0.0..2.0 * std::f64::consts::PI);
    let chi = rng.random_range(0.0..2.0 * std::f64::consts::PI);
    let a = Complex64::new(phi.cos(), phi.sin()) * (theta / 2.0).cos();
    let b = Complex64::new(chi.cos(), chi.sin()) * (theta / 2.0).sin();
    [[a, -b.conj()], [b, a.conj()]]
}
