//! S-spectrum calculus for square quaternionic matrices.
//!
//! A quaternion `lambda` is in the S-spectrum of `A` when
//! `R_lambda(A) = A² − 2·Re(lambda)·A + |lambda|²·I` fails to be invertible.
//! Since `R_lambda` depends on `lambda` only through `(Re lambda, |lambda|)`,
//! the spectrum is a union of similarity spheres. All spectral computation
//! here routes through the complex embedding: its eigenvalues come in
//! conjugate pairs `a ± b·i`, and each pair is one sphere `(a, |b|)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::chi::{
    chi_embed, chi_extract, complex_inverse, extremal_singular_values, general_eigenvalues,
    hermitian_eigen, hermitian_eigenvalues, CMatrix,
};
use crate::linalg::QMatrix;
use crate::quat::{Quaternion, SphereRep};
use crate::tol;

/// S-spectrum as a deduplicated, `(a, b)`-sorted list of similarity spheres.
#[derive(Clone, Debug, PartialEq)]
pub struct SSpectrum {
    spheres: Vec<SphereRep>,
    is_real: bool,
}

impl SSpectrum {
    pub fn spheres(&self) -> &[SphereRep] {
        &self.spheres
    }

    /// True when the spectrum lies on the real axis, as it always does for
    /// self-adjoint inputs.
    pub fn is_real(&self) -> bool {
        self.is_real
    }

    /// S-spectral radius, the largest modulus over the spheres.
    pub fn radius(&self) -> f64 {
        self.spheres
            .iter()
            .map(|s| s.radius())
            .fold(0.0, f64::max)
    }

    pub fn min_real(&self) -> f64 {
        self.spheres.first().map(|s| s.a).unwrap_or(f64::NAN)
    }

    pub fn max_real(&self) -> f64 {
        self.spheres.last().map(|s| s.a).unwrap_or(f64::NAN)
    }

    /// Symmetric Hausdorff distance between two sphere sets in the
    /// `(a, b)` half-plane; robust against deduplication differences.
    pub fn set_distance(&self, other: &SSpectrum) -> f64 {
        let one_sided = |from: &[SphereRep], to: &[SphereRep]| -> f64 {
            from.iter()
                .map(|s| {
                    to.iter()
                        .map(|t| (s.a - t.a).hypot(s.b - t.b))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max)
        };
        one_sided(&self.spheres, &other.spheres).max(one_sided(&other.spheres, &self.spheres))
    }
}

/// Clusters eigenvalue images into spheres: sort by `(a, b)`, then merge
/// runs whose members stay within `tol` of the run head.
fn dedup_spheres(mut reps: Vec<SphereRep>, tol: f64) -> Vec<SphereRep> {
    reps.sort_by(SphereRep::cmp_key);
    let mut out: Vec<SphereRep> = Vec::new();
    for r in reps {
        match out.last() {
            Some(last) if (last.a - r.a).abs() <= tol && (last.b - r.b).abs() <= tol => {}
            _ => out.push(r),
        }
    }
    out
}

impl QMatrix {
    fn require_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        Ok(())
    }

    /// Max entry of `|A − adjoint(A)|` bounded by `tol`.
    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.is_square() && self.max_dev(&self.adjoint()) <= tol
    }

    /// Positivity of a self-adjoint matrix: minimum embedded eigenvalue
    /// at least `−tol`.
    pub fn is_positive(&self, tol: f64) -> Result<bool> {
        self.require_square("positivity")?;
        let dev = self.max_dev(&self.adjoint());
        if dev > tol {
            return Err(Error::NotSelfAdjoint { dev, tol });
        }
        let eigs = hermitian_eigenvalues(&chi_embed(self)?);
        Ok(eigs.first().copied().unwrap_or(0.0) >= -tol)
    }

    /// Both `adjoint(U)·U` and `U·adjoint(U)` within `tol` of the identity.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let id = QMatrix::identity(self.rows());
        let adj = self.adjoint();
        adj.matmul(self).map(|m| m.max_dev(&id) <= tol).unwrap_or(false)
            && self.matmul(&adj).map(|m| m.max_dev(&id) <= tol).unwrap_or(false)
    }

    /// Operator norm, the largest singular value of the complex embedding.
    pub fn op_norm(&self) -> f64 {
        if self.is_square() {
            extremal_singular_values(&chi_embed(self).expect("square")).1
        } else {
            // Rectangular operators are embedded blockwise the same way;
            // pad to square to reuse the same route.
            let n = self.rows().max(self.cols());
            let mut padded = QMatrix::zeros(n, n);
            for i in 0..self.rows() {
                for j in 0..self.cols() {
                    padded.set(i, j, self.entry(i, j));
                }
            }
            extremal_singular_values(&chi_embed(&padded).expect("square")).1
        }
    }

    /// Inverse through the complex embedding, gated by the relative rank
    /// tolerance on the singular values.
    pub fn inverse(&self) -> Result<QMatrix> {
        self.inverse_with_tol(tol::RANK)
    }

    pub fn inverse_with_tol(&self, rank_tol: f64) -> Result<QMatrix> {
        self.require_square("inverse")?;
        let embedded = chi_embed(self)?;
        let (smin, smax) = extremal_singular_values(&embedded);
        if smin <= rank_tol * smax || smax == 0.0 {
            return Err(Error::Singular {
                cond: if smin > 0.0 { smax / smin } else { f64::INFINITY },
            });
        }
        let inv = complex_inverse(&embedded).ok_or(Error::Singular { cond: smax / smin })?;
        chi_extract(&inv, tol::SYM)
    }

    /// Square root of a positive self-adjoint matrix by Hermitian
    /// eigendecomposition of the embedding, clamping negative rounding
    /// noise to zero.
    pub fn sqrt_psd(&self) -> Result<QMatrix> {
        self.require_square("square root")?;
        let dev = self.max_dev(&self.adjoint());
        if dev > tol::SELF_ADJOINT {
            return Err(Error::NotSelfAdjoint {
                dev,
                tol: tol::SELF_ADJOINT,
            });
        }
        let embedded = chi_embed(self)?;
        let (values, vectors) = hermitian_eigen(&embedded);
        let scale = values.iter().map(|v| v.abs()).fold(1.0, f64::max);
        if let Some(&min) = values.first() {
            if min < -tol::SELF_ADJOINT * scale {
                return Err(Error::NotPositive {
                    min_eig: min,
                    tol: tol::SELF_ADJOINT * scale,
                });
            }
        }
        let roots = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            values.len(),
            values
                .iter()
                .map(|&v| Complex64::new(v.max(0.0).sqrt(), 0.0)),
        ));
        let rebuilt = &vectors * roots * vectors.adjoint();
        chi_extract(&rebuilt, tol::SYM)
    }

    /// Extremal Rayleigh quotients of a self-adjoint matrix: the smallest
    /// and largest embedded eigenvalue, which are also the endpoints of the
    /// S-spectrum.
    pub fn rayleigh_bounds(&self) -> Result<(f64, f64)> {
        self.require_square("Rayleigh bounds")?;
        let dev = self.max_dev(&self.adjoint());
        if dev > tol::SELF_ADJOINT {
            return Err(Error::NotSelfAdjoint {
                dev,
                tol: tol::SELF_ADJOINT,
            });
        }
        let eigs = hermitian_eigenvalues(&chi_embed(self)?);
        Ok((eigs[0], eigs[eigs.len() - 1]))
    }

    /// `R_lambda(A) = A² − 2·Re(lambda)·A + |lambda|²·I`.
    pub fn s_resolvent(&self, lambda: Quaternion) -> QMatrix {
        self.require_square("S-resolvent").expect("square matrix");
        let a2 = self.matmul(self).expect("square");
        let lin = self.scale(-2.0 * lambda.re());
        let cons = QMatrix::identity(self.rows()).scale(lambda.norm_sqr());
        &(&a2 + &lin) + &cons
    }

    /// Smallest singular value of the embedded `R_lambda(A)`, the residual
    /// used to classify spectrum membership.
    pub fn resolvent_residual(&self, lambda: Quaternion) -> Result<f64> {
        let r = self.s_resolvent(lambda);
        Ok(extremal_singular_values(&chi_embed(&r)?).0)
    }

    /// S-spectrum as similarity spheres. Self-adjoint inputs take the
    /// Hermitian route and report a real spectrum; everything else goes
    /// through the Schur decomposition of the embedding. Each returned
    /// sphere is re-verified to make the resolvent singular, and one probe
    /// beyond the operator norm is verified to be a resolvent point.
    pub fn s_spectrum(&self) -> Result<SSpectrum> {
        self.require_square("S-spectrum")?;
        let embedded = chi_embed(self)?;
        let self_adjoint = self.is_self_adjoint(tol::SELF_ADJOINT);
        let reps: Vec<SphereRep> = if self_adjoint {
            hermitian_eigenvalues(&embedded)
                .into_iter()
                .map(|a| SphereRep::new(a, 0.0))
                .collect()
        } else {
            general_eigenvalues(&embedded)?
                .into_iter()
                .map(|z| SphereRep::new(z.re, z.im.abs()))
                .collect()
        };
        let spheres = dedup_spheres(reps, tol::DEDUP);
        let is_real = self_adjoint || spheres.iter().all(|s| s.b <= tol::DEDUP);
        let spectrum = SSpectrum { spheres, is_real };

        // Postcondition: spheres are singular points of the resolvent and a
        // point beyond the norm is regular. Scales are floored at one so the
        // test stays meaningful for tiny matrices.
        let (_, smax) = extremal_singular_values(&embedded);
        let threshold = tol::SPEC_RESIDUAL * smax.max(1.0) * smax.max(1.0);
        for s in spectrum.spheres() {
            let residual = self.resolvent_residual(s.representative())?;
            if residual > threshold {
                return Err(Error::Invariant {
                    what: format!("sphere ({}, {}) is not singular for the resolvent", s.a, s.b),
                    residual,
                    tol: threshold,
                });
            }
        }
        let probe = Quaternion::from_real(smax + 1.0);
        let probe_residual = self.resolvent_residual(probe)?;
        if probe_residual <= threshold {
            return Err(Error::Invariant {
                what: "probe point beyond the operator norm is not a resolvent point".into(),
                residual: probe_residual,
                tol: threshold,
            });
        }
        Ok(spectrum)
    }

    /// S-spectral radius.
    pub fn s_radius(&self) -> Result<f64> {
        Ok(self.s_spectrum()?.radius())
    }
}
