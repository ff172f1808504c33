//! Singular vectors via the Hermitian eigendecomposition of `MᴴM`.
//!
//! nalgebra's SVD occasionally returns an inaccurate spectrum when it also
//! accumulates singular vectors (complex input, or repeated singular values).
//! The values-only SVD and the Hermitian eigensolver are both reliable, so
//! values come from the former and vectors from the latter.

use nalgebra::SymmetricEigen;

use crate::{CMatrix, CVector};

/// Singular values of `m`, from the values-only SVD.
pub(crate) fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// Eigenpairs of `MᴴM` sorted by ascending eigenvalue.
fn gram_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let SymmetricEigen {
        eigenvalues,
        eigenvectors,
    } = (m.adjoint() * m).symmetric_eigen();
    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]));
    let values = order.iter().map(|&k| eigenvalues[k]).collect();
    let vectors = CMatrix::from_columns(&order.iter().map(|&k| eigenvectors.column(k)).collect::<Vec<_>>());
    (values, vectors)
}

/// A unit vector `w` with `‖Mw‖₂ = ‖M‖₂`.
pub(crate) fn top_right_singular_vector(m: &CMatrix) -> CVector {
    let (_, vectors) = gram_eigen(m);
    vectors.column(vectors.ncols() - 1).into_owned()
}

/// Orthonormal basis of the numerical nullspace: directions whose singular
/// value is at most `rel_cutoff · σ_max`. Everything is null when `M = 0`.
pub(crate) fn nullspace(m: &CMatrix, rel_cutoff: f64) -> Vec<CVector> {
    let n = m.ncols();
    let sigma = singular_values(m);
    let sigma_max = sigma.iter().copied().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return (0..n).map(|k| CVector::from_fn(n, |i, _| if i == k { 1.0.into() } else { 0.0.into() })).collect();
    }
    let rank = sigma.iter().filter(|&&s| s > rel_cutoff * sigma_max).count();
    let (_, vectors) = gram_eigen(m);
    (0..n - rank).map(|k| vectors.column(k).into_owned()).collect()
}

/// Minimum-norm least-squares solution of `Mx = b`, ignoring directions
/// with singular value at most `rel_cutoff · σ_max`.
pub(crate) fn least_squares(m: &CMatrix, b: &CVector, rel_cutoff: f64) -> CVector {
    let n = m.ncols();
    let (values, vectors) = gram_eigen(m);
    let top = values.last().copied().unwrap_or(0.0).max(0.0);
    let rhs = m.adjoint() * b;
    let mut x = CVector::zeros(n);
    for (k, &lambda) in values.iter().enumerate() {
        if top == 0.0 || lambda.max(0.0).sqrt() <= rel_cutoff * top.sqrt() {
            continue;
        }
        let v = vectors.column(k);
        x += v * ((v.adjoint() * &rhs)[0] / lambda);
    }
    x
}
