//! Seeded random generators for quaternionic test data.
//!
//! Everything here is deterministic in the seed: the stream is a fixed
//! ChaCha8 cipher, so the same seed yields the same values on every
//! platform and thread count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector};
use crate::quat::Quaternion;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_quaternion_with(rng: &mut impl Rng) -> Quaternion {
    let x0: f64 = StandardNormal.sample(rng);
    let x1: f64 = StandardNormal.sample(rng);
    let x2: f64 = StandardNormal.sample(rng);
    let x3: f64 = StandardNormal.sample(rng);
    Quaternion::new(x0, x1, x2, x3)
}

pub fn random_quaternion(seed: u64) -> Quaternion {
    random_quaternion_with(&mut rng_from_seed(seed))
}

pub fn random_vector_with(rng: &mut impl Rng, dim: usize) -> QVector {
    QVector::from_fn(dim, |_| random_quaternion_with(rng))
}

pub fn random_unit_vector_with(rng: &mut impl Rng, dim: usize) -> QVector {
    loop {
        let v = random_vector_with(rng, dim);
        if v.norm() > 1e-6 {
            return v.normalized().expect("nonzero norm");
        }
    }
}

pub fn random_unit_vector(dim: usize, seed: u64) -> QVector {
    random_unit_vector_with(&mut rng_from_seed(seed), dim)
}

pub fn random_matrix_with(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| random_quaternion_with(rng))
}

pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> QMatrix {
    random_matrix_with(&mut rng_from_seed(seed), rows, cols)
}

/// Random self-adjoint matrix `(G + adjoint(G)) / 2`.
pub fn random_self_adjoint_with(rng: &mut impl Rng, n: usize) -> QMatrix {
    let g = random_matrix_with(rng, n, n);
    (&g + &g.adjoint()).scale(0.5)
}

pub fn random_self_adjoint(n: usize, seed: u64) -> QMatrix {
    random_self_adjoint_with(&mut rng_from_seed(seed), n)
}

/// Random positive self-adjoint matrix `adjoint(G)·G + shift·I`.
pub fn random_positive_with(rng: &mut impl Rng, n: usize, shift: f64) -> QMatrix {
    let g = random_matrix_with(rng, n, n);
    let p = &g.adjoint() * &g;
    &p + &QMatrix::identity(n).scale(shift)
}

pub fn random_positive(n: usize, seed: u64, shift: f64) -> QMatrix {
    random_positive_with(&mut rng_from_seed(seed), n, shift)
}

/// Random unitary matrix by quaternionic Gram–Schmidt on a seeded Gaussian
/// draw. Columns are orthonormalized with right-side coefficients, so the
/// result satisfies both `adjoint(U)·U = I` and `U·adjoint(U) = I`.
pub fn random_unitary(n: usize, seed: u64) -> Result<QMatrix> {
    random_unitary_with(&mut rng_from_seed(seed), n)
}

pub fn random_unitary_with(rng: &mut impl Rng, n: usize) -> Result<QMatrix> {
    if n == 0 {
        return Err(Error::Precondition("unitary dimension must be >= 1".into()));
    }
    for attempt in 0..8 {
        let g = random_matrix_with(rng, n, n);
        if let Some(u) = gram_schmidt_columns(&g) {
            debug_assert!(u.is_unitary(1e-10));
            return Ok(u);
        }
        let _ = attempt;
    }
    Err(Error::Generation {
        what: "rank-deficient draws while building a unitary matrix".into(),
        attempts: 8,
    })
}

/// Orthonormalizes the columns of `g` in place order, subtracting
/// `u_j · <u_j|v>` for each previously finished column. A second pass over
/// the same column removes the rounding left by the first. Returns `None`
/// if a column collapses below tolerance.
fn gram_schmidt_columns(g: &QMatrix) -> Option<QMatrix> {
    let n = g.rows();
    let mut cols: Vec<QVector> = (0..n).map(|j| g.column(j)).collect();
    for j in 0..n {
        let mut v = cols[j].clone();
        for _pass in 0..2 {
            for u in cols.iter().take(j) {
                let c = u.inner(&v).expect("same dim");
                v = &v - &u.scale_right(c);
            }
        }
        let norm = v.norm();
        if norm < 1e-8 {
            return None;
        }
        cols[j] = v.scale(1.0 / norm);
    }
    Some(QMatrix::from_columns(&cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_unitary() {
        for n in 1..=5 {
            let u = random_unitary(n, 42 + n as u64).unwrap();
            assert!(u.is_unitary(1e-10), "n = {n}");
        }
    }

    #[test]
    fn unitary_1x1_is_unit_quaternion() {
        let u = random_unitary(1, 3).unwrap();
        assert!((u.entry(0, 0).norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn deterministic_in_seed() {
        let a = random_unitary(3, 99).unwrap();
        let b = random_unitary(3, 99).unwrap();
        assert!(a.approx_eq(&b, 0.0));
        let c = random_unitary(3, 100).unwrap();
        assert!(!a.approx_eq(&c, 1e-6));
    }
}
