//! Right quaternionic vectors and matrices.
//!
//! Vectors live in the right module `H^d`: scalars act on the right,
//! `(phi·q)_k = phi_k·q`. The inner product is conjugate-linear in the first
//! slot and right-linear in the second,
//! `<phi|psi> = sum_k conj(phi_k)·psi_k`, so `<phi|psi q> = <phi|psi> q` and
//! `<phi q|psi> = conj(q) <phi|psi>`. Matrices act on the left of column
//! vectors and are therefore right linear.

mod chi;
mod spectrum;

pub use chi::{chi_embed, chi_extract, CMatrix};
pub use spectrum::SSpectrum;

/// Hermitian eigendecomposition of the complex embedding of a self-adjoint
/// quaternionic matrix: ascending eigenvalues with eigenvector columns.
pub(crate) fn hermitian_eigen_embedded(b: &QMatrix) -> crate::error::Result<(Vec<f64>, CMatrix)> {
    Ok(chi::hermitian_eigen(&chi_embed(b)?))
}

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Element of `H^d` under right scalar multiplication.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector {
    entries: Vec<Quaternion>,
}

impl QVector {
    pub fn new(entries: Vec<Quaternion>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Shape("vector dimension must be >= 1".into()));
        }
        Ok(QVector { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        QVector {
            entries: vec![Quaternion::ZERO; dim.max(1)],
        }
    }

    /// Standard basis vector `e_k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = QVector::zeros(dim);
        v.entries[k] = Quaternion::ONE;
        v
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize) -> Quaternion) -> Self {
        QVector {
            entries: (0..dim.max(1)).map(|k| f(k)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, k: usize) -> Quaternion {
        self.entries[k]
    }

    pub fn set(&mut self, k: usize, q: Quaternion) {
        self.entries[k] = q;
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quaternion> {
        self.entries.iter()
    }

    /// Right scalar action `phi·q`.
    pub fn scale_right(&self, q: Quaternion) -> QVector {
        QVector {
            entries: self.entries.iter().map(|&e| e * q).collect(),
        }
    }

    /// Real scalar multiple.
    pub fn scale(&self, r: f64) -> QVector {
        QVector {
            entries: self.entries.iter().map(|&e| e * r).collect(),
        }
    }

    /// `<self|other> = sum_k conj(self_k)·other_k`.
    pub fn inner(&self, other: &QVector) -> Result<Quaternion> {
        if self.dim() != other.dim() {
            return Err(Error::Shape(format!(
                "inner product of dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let mut acc = Quaternion::ZERO;
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            acc += a.conj() * *b;
        }
        Ok(acc)
    }

    /// `||phi||² = <phi|phi>`, accumulated as a real sum.
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<QVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn approx_eq(&self, other: &QVector, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| a.approx_eq(*b, tol))
    }

    pub fn max_dev(&self, other: &QVector) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.max_dev(*b))
            .fold(0.0, f64::max)
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, o: &QVector) -> QVector {
        assert_eq!(self.dim(), o.dim(), "vector addition dimension mismatch");
        QVector {
            entries: self
                .entries
                .iter()
                .zip(o.entries.iter())
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, o: &QVector) -> QVector {
        assert_eq!(self.dim(), o.dim(), "vector subtraction dimension mismatch");
        QVector {
            entries: self
                .entries
                .iter()
                .zip(o.entries.iter())
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

/// Right-linear operator `H^cols -> H^rows` as a quaternionic matrix,
/// stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Quaternion>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix dimensions must be >= 1".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows: rows.max(1),
            cols: cols.max(1),
            entries: vec![Quaternion::ZERO; rows.max(1) * cols.max(1)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Quaternion::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let rows = rows.max(1);
        let cols = cols.max(1);
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        QMatrix { rows, cols, entries }
    }

    pub fn diag(values: &[Quaternion]) -> Self {
        let n = values.len();
        let mut m = QMatrix::zeros(n, n);
        for (k, &v) in values.iter().enumerate() {
            m.set(k, k, v);
        }
        m
    }

    pub fn diag_real(values: &[f64]) -> Self {
        QMatrix::diag(&values.iter().map(|&r| Quaternion::from_real(r)).collect::<Vec<_>>())
    }

    pub fn from_columns(cols: &[QVector]) -> Self {
        let rows = cols[0].dim();
        QMatrix::from_fn(rows, cols.len(), |i, j| cols[j].entry(i))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Quaternion {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        self.entries[i * self.cols + j] = q;
    }

    pub fn column(&self, j: usize) -> QVector {
        QVector::from_fn(self.rows, |i| self.entry(i, j))
    }

    /// Conjugate transpose: `(adjoint A)_{ij} = conj(A_{ji})`.
    pub fn adjoint(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).conj())
    }

    /// Checked matrix product, entries `sum_k A_{ik}·B_{kj}` in that order.
    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Quaternion::ZERO;
                for k in 0..self.cols {
                    acc += self.entry(i, k) * other.entry(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Checked matrix-vector product.
    pub fn apply(&self, v: &QVector) -> Result<QVector> {
        if self.cols != v.dim() {
            return Err(Error::Shape(format!(
                "applying {}x{} matrix to vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(QVector::from_fn(self.rows, |i| {
            let mut acc = Quaternion::ZERO;
            for k in 0..self.cols {
                acc += self.entry(i, k) * v.entry(k);
            }
            acc
        }))
    }

    /// Real scalar multiple. Quaternionic scalar multiples of operators are
    /// not right linear and are deliberately not provided.
    pub fn scale(&self, r: f64) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * r).collect(),
        }
    }

    /// Rank-one operator `|v><w|` with entries `v_i·conj(w_j)`.
    pub fn outer(v: &QVector, w: &QVector) -> QMatrix {
        QMatrix::from_fn(v.dim(), w.dim(), |i, j| v.entry(i) * w.entry(j).conj())
    }

    /// Rank-one operator `|v> mid <w|` with entries `v_i·mid·conj(w_j)`;
    /// the middle scalar does not commute, so the order matters.
    pub fn outer_scaled(v: &QVector, mid: Quaternion, w: &QVector) -> QMatrix {
        QMatrix::from_fn(v.dim(), w.dim(), |i, j| v.entry(i) * mid * w.entry(j).conj())
    }

    /// Adds `scale · |v><v|` in place; the accumulation primitive for frame
    /// operators. Requires a square receiver of matching dimension.
    pub fn add_scaled_projector(&mut self, v: &QVector, scale: f64) {
        debug_assert_eq!(self.rows, v.dim());
        debug_assert_eq!(self.cols, v.dim());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let t = v.entry(i) * v.entry(j).conj() * scale;
                let cur = self.entry(i, j);
                self.set(i, j, cur + t);
            }
        }
    }

    /// Max quaternion norm over entries.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Max entrywise deviation from `other`.
    pub fn max_dev(&self, other: &QMatrix) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &QMatrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.max_dev(other) <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix addition shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(o.entries.iter())
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix subtraction shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(o.entries.iter())
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

/// Unchecked product sugar; panics on shape mismatch.
impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        self.matmul(o).expect("matrix product shape mismatch")
    }
}

impl Mul<&QVector> for &QMatrix {
    type Output = QVector;
    fn mul(self, v: &QVector) -> QVector {
        self.apply(v).expect("matrix-vector shape mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, k: usize) -> QVector {
        QVector::basis(d, k)
    }

    #[test]
    fn inner_product_conventions() {
        let e1 = e(2, 0);
        let e2 = e(2, 1);
        assert_eq!(e1.inner(&e1).unwrap(), Quaternion::ONE);
        assert_eq!(e1.inner(&e2).unwrap(), Quaternion::ZERO);
        // <e1 j | e1 k> = conj(j)·k = -i
        let a = e1.scale_right(Quaternion::J);
        let b = e1.scale_right(Quaternion::K);
        assert_eq!(a.inner(&b).unwrap(), -Quaternion::I);
    }

    #[test]
    fn inner_product_linearity() {
        let phi = QVector::new(vec![Quaternion::new(1.0, 2.0, 0.0, -1.0), Quaternion::J]).unwrap();
        let psi = QVector::new(vec![Quaternion::K, Quaternion::new(0.5, 0.0, -1.0, 2.0)]).unwrap();
        let q = Quaternion::new(0.3, -0.2, 0.9, 1.1);
        let lhs = phi.inner(&psi.scale_right(q)).unwrap();
        let rhs = phi.inner(&psi).unwrap() * q;
        assert!(lhs.approx_eq(rhs, 1e-13));
        let lhs2 = phi.scale_right(q).inner(&psi).unwrap();
        let rhs2 = q.conj() * phi.inner(&psi).unwrap();
        assert!(lhs2.approx_eq(rhs2, 1e-13));
        let sym = phi.inner(&psi).unwrap().conj();
        assert!(sym.approx_eq(psi.inner(&phi).unwrap(), 1e-13));
    }

    #[test]
    fn inner_dim_mismatch() {
        let a = QVector::zeros(2);
        let b = QVector::zeros(3);
        assert!(matches!(a.inner(&b), Err(Error::Shape(_))));
    }

    #[test]
    fn matmul_examples() {
        let a = QMatrix::from_fn(2, 2, |i, j| Quaternion::from_real((i * 2 + j) as f64 + 1.0));
        let id = QMatrix::identity(2);
        assert!(a.matmul(&id).unwrap().approx_eq(&a, 0.0));
        // diag(i)·diag(j) = diag(k)
        let di = QMatrix::diag(&[Quaternion::I]);
        let dj = QMatrix::diag(&[Quaternion::J]);
        assert_eq!(di.matmul(&dj).unwrap().entry(0, 0), Quaternion::K);
        // permutation action on a basis column
        let swap = QMatrix::from_fn(2, 2, |i, j| {
            if i != j { Quaternion::ONE } else { Quaternion::ZERO }
        });
        assert!(swap.apply(&e(2, 0)).unwrap().approx_eq(&e(2, 1), 0.0));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(
            QMatrix::diag(&[Quaternion::I]).adjoint().entry(0, 0),
            -Quaternion::I
        );
        let id = QMatrix::identity(3);
        assert!(id.adjoint().approx_eq(&id, 0.0));
        let mut m = QMatrix::zeros(2, 2);
        m.set(0, 1, Quaternion::J);
        let adj = m.adjoint();
        assert_eq!(adj.entry(1, 0), -Quaternion::J);
        assert_eq!(adj.entry(0, 1), Quaternion::ZERO);
        assert!(m.adjoint().adjoint().approx_eq(&m, 0.0));
    }

    #[test]
    fn right_linearity_of_action() {
        let a = crate::random::random_matrix(3, 3, 5);
        let phi = crate::random::random_unit_vector(3, 6);
        let psi = crate::random::random_unit_vector(3, 7);
        let q = Quaternion::new(0.1, 2.0, -0.7, 0.4);
        let p = Quaternion::new(-1.0, 0.3, 0.0, 1.2);
        let lhs = a
            .apply(&(&phi.scale_right(q) + &psi.scale_right(p)))
            .unwrap();
        let rhs = &a.apply(&phi).unwrap().scale_right(q) + &a.apply(&psi).unwrap().scale_right(p);
        assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn outer_is_rank_one_projector_shape() {
        let v = QVector::new(vec![Quaternion::ONE, Quaternion::I]).unwrap();
        let m = QMatrix::outer(&v, &v);
        // |v><v| phi = v <v|phi>
        let phi = crate::random::random_unit_vector(2, 8);
        let lhs = m.apply(&phi).unwrap();
        let rhs = v.scale_right(v.inner(&phi).unwrap());
        assert!(lhs.approx_eq(&rhs, 1e-13));
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(QVector::new(vec![]).is_err());
        assert!(QMatrix::new(0, 1, vec![]).is_err());
    }
}
