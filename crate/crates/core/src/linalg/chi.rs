//! Complex embedding of quaternionic matrices.
//!
//! Writing each entry as `a + b·j` with `a, b` complex splits an n-by-n
//! quaternionic matrix into `A = A1 + A2·j` and embeds it as the 2n-by-2n
//! complex matrix `[[A1, A2], [-conj(A2), conj(A1)]]`. The embedding is a
//! real-algebra homomorphism that turns adjoints into conjugate transposes
//! and preserves invertibility, which reduces every spectral question in
//! this crate to standard complex linear algebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::quat::Quaternion;

pub type CMatrix = DMatrix<Complex64>;

/// Embeds a square quaternionic matrix as its 2n-by-2n complex image.
pub fn chi_embed(a: &QMatrix) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "complex embedding needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (a1, a2) = a.entry(i, j).complex_pair();
            m[(i, j)] = a1;
            m[(i, j + n)] = a2;
            m[(i + n, j)] = -a2.conj();
            m[(i + n, j + n)] = a1.conj();
        }
    }
    Ok(m)
}

/// Inverse of `chi_embed` on its image. The two block copies are averaged,
/// and the deviation from the exact block structure must stay below
/// `tol · max(1, ||M||_max)`.
pub fn chi_extract(m: &CMatrix, tol: f64) -> Result<QMatrix> {
    let rows = m.nrows();
    if rows != m.ncols() || rows % 2 != 0 || rows == 0 {
        return Err(Error::Shape(format!(
            "inverse embedding needs an even square matrix, got {}x{}",
            rows,
            m.ncols()
        )));
    }
    let n = rows / 2;
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut dev: f64 = 0.0;
    let mut out = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let m11 = m[(i, j)];
            let m12 = m[(i, j + n)];
            let m21 = m[(i + n, j)];
            let m22 = m[(i + n, j + n)];
            dev = dev.max((m11 - m22.conj()).norm());
            dev = dev.max((m12 + m21.conj()).norm());
            let a1 = (m11 + m22.conj()) * 0.5;
            let a2 = (m12 - m21.conj()) * 0.5;
            out.set(i, j, Quaternion::from_complex_pair(a1, a2));
        }
    }
    if dev > tol * scale {
        return Err(Error::Structure { dev, tol: tol * scale });
    }
    Ok(out)
}

/// Ascending eigenvalues and matching eigenvector columns of a Hermitian
/// complex matrix.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let se = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Ascending eigenvalues only.
pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Eigenvalues of a general complex matrix via the Schur decomposition.
pub(crate) fn general_eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    let schur = m
        .clone()
        .try_schur(1.0e-13, 100_000)
        .ok_or_else(|| Error::Numeric("Schur iteration failed to converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| Error::Numeric("Schur decomposition returned no eigenvalues".into()))?;
    Ok(ev.iter().copied().collect())
}

/// `(sigma_min, sigma_max)` of a complex matrix.
pub(crate) fn extremal_singular_values(m: &CMatrix) -> (f64, f64) {
    let sv = nalgebra::linalg::SVD::new(m.clone(), false, false).singular_values;
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for &s in sv.iter() {
        lo = lo.min(s);
        hi = hi.max(s);
    }
    (lo, hi)
}

pub(crate) fn complex_inverse(m: &CMatrix) -> Option<CMatrix> {
    m.clone().try_inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_matrix;

    #[test]
    fn embed_j_scalar() {
        let m = chi_embed(&QMatrix::diag(&[Quaternion::J])).unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(m[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(1, 0)], Complex64::new(-1.0, 0.0));
        assert_eq!(m[(1, 1)], Complex64::new(0.0, 0.0));
        let back = chi_extract(&m, 1e-10).unwrap();
        assert_eq!(back.entry(0, 0), Quaternion::J);
    }

    #[test]
    fn embed_identity() {
        for n in 1..4 {
            let m = chi_embed(&QMatrix::identity(n)).unwrap();
            assert_eq!(m, CMatrix::identity(2 * n, 2 * n));
            let back = chi_extract(&m, 1e-10).unwrap();
            assert!(back.approx_eq(&QMatrix::identity(n), 0.0));
        }
    }

    #[test]
    fn homomorphism_scalar_case() {
        let i = QMatrix::diag(&[Quaternion::I]);
        let j = QMatrix::diag(&[Quaternion::J]);
        let lhs = chi_embed(&i.matmul(&j).unwrap()).unwrap();
        let rhs = chi_embed(&i).unwrap() * chi_embed(&j).unwrap();
        assert!((lhs - rhs).iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn homomorphism_and_adjoint_random() {
        for seed in 0..20 {
            let n = 1 + (seed as usize % 6);
            let a = random_matrix(n, n, 1000 + seed);
            let b = random_matrix(n, n, 2000 + seed);
            let lhs = chi_embed(&a.matmul(&b).unwrap()).unwrap();
            let rhs = chi_embed(&a).unwrap() * chi_embed(&b).unwrap();
            let dev = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(dev <= 1e-11, "homomorphism deviation {dev}");

            let adj = chi_embed(&a.adjoint()).unwrap();
            let her = chi_embed(&a).unwrap().adjoint();
            let dev = (adj - her).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(dev <= 4.0 * f64::EPSILON, "adjoint deviation {dev}");
        }
    }

    #[test]
    fn round_trip_random() {
        for seed in 0..10 {
            let n = 1 + (seed as usize % 5);
            let a = random_matrix(n, n, 3000 + seed);
            let back = chi_extract(&chi_embed(&a).unwrap(), 1e-10).unwrap();
            assert!(back.approx_eq(&a, 1e-13));
        }
    }

    #[test]
    fn structure_violation_detected() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 0)] = Complex64::new(1.0, 0.5);
        // conj block no longer matches
        assert!(matches!(
            chi_extract(&m, 1e-10),
            Err(Error::Structure { .. })
        ));
    }

    #[test]
    fn non_square_rejected() {
        let a = QMatrix::zeros(2, 3);
        assert!(matches!(chi_embed(&a), Err(Error::Shape(_))));
    }
}
