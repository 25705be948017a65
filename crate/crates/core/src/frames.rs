//! Rank-n continuous frames over a quadrature-discretized quaternion domain.
//!
//! The continuous measure is represented by a finite weighted point set: a
//! frame is a family of `n` linearly independent vectors per sample point
//! together with a positive weight. The frame operator
//! `A = sum_m w_m sum_i |eta_m^i><eta_m^i|` must be positive, self-adjoint,
//! and invertible; its extremal Rayleigh quotients `(m, M)` are the optimal
//! frame bounds. Every theorem proved for the continuous objects is exact
//! for point masses, which is what makes the transform zoo here testable.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector};
use crate::quat::Quaternion;
use crate::random::{
    random_quaternion_with, random_unit_vector_with, random_vector_with, rng_from_seed,
};
use crate::tol;

/// One quadrature node: a sample location in `H`, a positive weight, and the
/// rank-n vector family attached to the node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadPoint {
    #[serde(rename = "q")]
    location: Quaternion,
    #[serde(rename = "w")]
    weight: f64,
    vectors: Vec<QVector>,
}

impl QuadPoint {
    pub fn new(location: Quaternion, weight: f64, vectors: Vec<QVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Validation("a point needs at least one vector".into()));
        }
        let d = vectors[0].dim();
        if vectors.iter().any(|v| v.dim() != d) {
            return Err(Error::Shape("vectors at a point must share one dimension".into()));
        }
        if vectors.len() > d {
            return Err(Error::Validation(format!(
                "rank {} exceeds space dimension {d}",
                vectors.len()
            )));
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::Validation(format!(
                "weights must be strictly positive and finite, got {weight}"
            )));
        }
        Ok(QuadPoint {
            location,
            weight,
            vectors,
        })
    }

    pub fn location(&self) -> Quaternion {
        self.location
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn rank_n(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &QVector {
        &self.vectors[i]
    }

    /// Gram matrix `G_{ik} = <eta^i|eta^k>` of the family.
    pub fn gram(&self) -> QMatrix {
        let n = self.rank_n();
        QMatrix::from_fn(n, n, |i, k| {
            self.vectors[i].inner(&self.vectors[k]).expect("same dim")
        })
    }

    /// Smallest over largest eigenvalue of the embedded Gram matrix; the
    /// linear-independence figure of merit.
    pub fn independence_ratio(&self) -> Result<f64> {
        let (lo, hi) = self.gram().rayleigh_bounds()?;
        if hi <= 0.0 {
            return Ok(0.0);
        }
        Ok(lo / hi)
    }
}

/// Report from a randomized frame-inequality check.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub trials: usize,
    pub min_observed: f64,
    pub max_observed: f64,
    pub lower: f64,
    pub upper: f64,
    pub epsilon: f64,
}

/// A rank-n continuous frame over a finite weighted point set, with its
/// frame operator and optimal bounds cached at construction.
#[derive(Clone, Debug)]
pub struct QuadFrame {
    d: usize,
    n: usize,
    points: Vec<QuadPoint>,
    op: QMatrix,
    lower: f64,
    upper: f64,
}

impl QuadFrame {
    /// Assembles and validates a frame. The operator is accumulated in
    /// fixed order (points ascending, vectors ascending) so rebuilds are
    /// bit-reproducible; per-point independence and membership of the
    /// operator in GL are verified.
    pub fn build(points: Vec<QuadPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::NotAFrame("empty point set".into()));
        }
        let d = points[0].dim();
        let n = points[0].rank_n();
        for (m, p) in points.iter().enumerate() {
            if p.dim() != d || p.rank_n() != n {
                return Err(Error::Shape(format!(
                    "point {m} has (d, n) = ({}, {}), expected ({d}, {n})",
                    p.dim(),
                    p.rank_n()
                )));
            }
            let ratio = p.independence_ratio()?;
            if !(ratio > tol::LI) {
                return Err(Error::DependentFamily { point: m, ratio });
            }
        }

        let mut op = QMatrix::zeros(d, d);
        for p in &points {
            for v in &p.vectors {
                op.add_scaled_projector(v, p.weight);
            }
        }

        let dev = op.max_dev(&op.adjoint());
        if dev > tol::SELF_ADJOINT {
            return Err(Error::NotSelfAdjoint {
                dev,
                tol: tol::SELF_ADJOINT,
            });
        }
        let (lower, upper) = op.rayleigh_bounds()?;
        if lower < -tol::SELF_ADJOINT * upper.abs().max(1.0) {
            return Err(Error::NotPositive {
                min_eig: lower,
                tol: tol::SELF_ADJOINT,
            });
        }
        if lower <= tol::RANK * upper.max(1.0) {
            return Err(Error::NotAFrame(format!(
                "frame operator not invertible: lower bound {lower:.3e} vs upper {upper:.3e}"
            )));
        }
        Ok(QuadFrame {
            d,
            n,
            points,
            op,
            lower,
            upper,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[QuadPoint] {
        &self.points
    }

    pub fn point(&self, m: usize) -> Result<&QuadPoint> {
        self.points.get(m).ok_or(Error::Index {
            index: m,
            len: self.points.len(),
        })
    }

    pub fn frame_operator(&self) -> &QMatrix {
        &self.op
    }

    /// Optimal frame bounds `(m, M)`.
    pub fn bounds(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    /// Width (snugness) `(M − m) / (M + m)`, zero exactly for tight frames.
    pub fn width(&self) -> f64 {
        (self.upper - self.lower) / (self.upper + self.lower)
    }

    pub fn is_tight(&self, tol: f64) -> bool {
        let target = QMatrix::identity(self.d).scale(self.upper);
        self.op.max_dev(&target) <= tol
    }

    pub fn is_self_dual(&self, tol: f64) -> bool {
        self.op.max_dev(&QMatrix::identity(self.d)) <= tol
    }

    /// `s(phi) = sum_m w_m sum_i |<eta_m^i|phi>|²`, accumulated directly
    /// from the point data in fixed order, independent of the cached
    /// operator.
    pub fn sample_sum(&self, phi: &QVector) -> Result<f64> {
        if phi.dim() != self.d {
            return Err(Error::Shape(format!(
                "vector dimension {} vs frame dimension {}",
                phi.dim(),
                self.d
            )));
        }
        let mut acc = 0.0;
        for p in &self.points {
            let mut point_acc = 0.0;
            for v in &p.vectors {
                point_acc += v.inner(phi)?.norm_sqr();
            }
            acc += p.weight * point_acc;
        }
        Ok(acc)
    }

    /// Checks the frame inequality on seeded random unit vectors with slack
    /// `epsilon = bounds_rel · M`. A violation returns the witness vector.
    pub fn check_bounds(&self, trials: usize, seed: u64) -> Result<BoundsReport> {
        self.check_bounds_with(trials, seed, tol::BOUNDS_REL)
    }

    pub fn check_bounds_with(&self, trials: usize, seed: u64, rel: f64) -> Result<BoundsReport> {
        let mut rng = rng_from_seed(seed);
        let eps = rel * self.upper;
        let mut min_observed = f64::INFINITY;
        let mut max_observed = f64::NEG_INFINITY;
        for _ in 0..trials {
            let phi = random_unit_vector_with(&mut rng, self.d);
            let s = self.sample_sum(&phi)?;
            min_observed = min_observed.min(s);
            max_observed = max_observed.max(s);
            if s < self.lower - eps || s > self.upper + eps {
                return Err(Error::BoundViolation {
                    value: s,
                    lo: self.lower - eps,
                    hi: self.upper + eps,
                    witness: phi,
                });
            }
        }
        Ok(BoundsReport {
            trials,
            min_observed,
            max_observed,
            lower: self.lower,
            upper: self.upper,
            epsilon: eps,
        })
    }

    /// Rebuilds the frame with per-node vector families produced by `f`,
    /// keeping locations and weights.
    pub(crate) fn map_points_with(
        &self,
        mut f: impl FnMut(usize, &QuadPoint) -> Result<Vec<QVector>>,
    ) -> Result<QuadFrame> {
        let mut points = Vec::with_capacity(self.points.len());
        for (m, p) in self.points.iter().enumerate() {
            points.push(QuadPoint::new(p.location, p.weight, f(m, p)?)?);
        }
        QuadFrame::build(points)
    }

    /// Rebuilds the frame with every vector mapped through `f`, keeping
    /// locations and weights.
    fn map_vectors(&self, mut f: impl FnMut(&QVector) -> Result<QVector>) -> Result<QuadFrame> {
        let mut points = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let mut vectors = Vec::with_capacity(p.rank_n());
            for v in &p.vectors {
                vectors.push(f(v)?);
            }
            points.push(QuadPoint::new(p.location, p.weight, vectors)?);
        }
        QuadFrame::build(points)
    }

    /// Dual frame: vectors `A⁻¹·eta` at the same nodes; its operator is
    /// `A⁻¹` and its bounds are `(1/M, 1/m)`.
    pub fn dual(&self) -> Result<QuadFrame> {
        let inv = self.op.inverse()?;
        self.map_vectors(|v| inv.apply(v))
    }

    /// Canonical tight frame: vectors `A^{−1/2}·eta`; its operator is the
    /// identity, so it is tight and self-dual.
    pub fn canonical_tight(&self) -> Result<QuadFrame> {
        let root_inv = self.op.sqrt_psd()?.inverse()?;
        self.map_vectors(|v| root_inv.apply(v))
    }

    /// Frame with vectors `T·eta` for invertible `T`; the operator maps to
    /// `T·A·adjoint(T)`.
    pub fn transform(&self, t: &QMatrix) -> Result<QuadFrame> {
        if t.rows() != self.d || t.cols() != self.d {
            return Err(Error::Shape(format!(
                "transform must be {d}x{d}, got {}x{}",
                t.rows(),
                t.cols(),
                d = self.d
            )));
        }
        // Membership in GL; the error carries the condition estimate.
        t.inverse()?;
        self.map_vectors(|v| t.apply(v))
    }

    /// Transform by a unitary operator; bounds and width are preserved.
    pub fn unitary_transform(&self, u: &QMatrix) -> Result<QuadFrame> {
        if !u.is_unitary(tol::UNITARY) {
            let dev = unitary_deviation(u);
            return Err(Error::NotUnitary {
                dev,
                tol: tol::UNITARY,
            });
        }
        self.transform(u)
    }

    /// Per-point mixing `xi^i = sum_j eta^j · u_{ji}` by one unitary n-by-n
    /// matrix per node; preserves each `S(q)` and the frame operator.
    pub fn gauge_transform(&self, gauges: &[QMatrix]) -> Result<QuadFrame> {
        if gauges.len() != self.points.len() {
            return Err(Error::Shape(format!(
                "{} gauge matrices for {} points",
                gauges.len(),
                self.points.len()
            )));
        }
        let mut points = Vec::with_capacity(self.points.len());
        for (p, u) in self.points.iter().zip(gauges.iter()) {
            points.push(gauge_point(p, u)?);
        }
        QuadFrame::build(points)
    }

    /// Unweighted per-point operator `S(q_m) = sum_i |eta^i><eta^i|`,
    /// positive with rank exactly n.
    pub fn point_operator(&self, m: usize) -> Result<QMatrix> {
        let p = self.point(m)?;
        let mut s = QMatrix::zeros(self.d, self.d);
        for v in &p.vectors {
            s.add_scaled_projector(v, 1.0);
        }
        Ok(s)
    }

    /// Same dimensions, node locations, and weights, compared exactly.
    pub fn same_geometry(&self, other: &QuadFrame) -> bool {
        self.d == other.d
            && self.n == other.n
            && self.points.len() == other.points.len()
            && self
                .points
                .iter()
                .zip(other.points.iter())
                .all(|(a, b)| a.location == b.location && a.weight == b.weight)
    }
}

fn unitary_deviation(u: &QMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let id = QMatrix::identity(u.rows());
    let adj = u.adjoint();
    let a = adj.matmul(u).map(|m| m.max_dev(&id)).unwrap_or(f64::INFINITY);
    let b = u.matmul(&adj).map(|m| m.max_dev(&id)).unwrap_or(f64::INFINITY);
    a.max(b)
}

fn gauge_point(p: &QuadPoint, u: &QMatrix) -> Result<QuadPoint> {
    let n = p.rank_n();
    if u.rows() != n || u.cols() != n {
        return Err(Error::Shape(format!(
            "gauge matrix must be {n}x{n}, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    if !u.is_unitary(tol::UNITARY) {
        return Err(Error::NotUnitary {
            dev: unitary_deviation(u),
            tol: tol::UNITARY,
        });
    }
    let mut vectors = Vec::with_capacity(n);
    for i in 0..n {
        let mut xi = QVector::zeros(p.dim());
        for j in 0..n {
            xi = &xi + &p.vector(j).scale_right(u.entry(j, i));
        }
        vectors.push(xi);
    }
    QuadPoint::new(p.location, p.weight, vectors)
}

/// Recovers the per-point unitary relating two frames with identical
/// geometry and identical per-point operators: `u = G⁻¹·C` with `G` the Gram
/// matrix of the first family and `C_{ki} = <eta^k|xi^i>`. Fails with a
/// not-gauge-related error when some `S(q)` differs, and with an
/// inconsistency error when the solved matrix is not unitary.
pub fn recover_gauge(f: &QuadFrame, g: &QuadFrame) -> Result<Vec<QMatrix>> {
    if !f.same_geometry(g) {
        return Err(Error::Shape(
            "gauge recovery needs identical points, weights, and (d, n)".into(),
        ));
    }
    let mut gauges = Vec::with_capacity(f.num_points());
    for m in 0..f.num_points() {
        let s_f = f.point_operator(m)?;
        let s_g = g.point_operator(m)?;
        let dev = s_f.max_dev(&s_g);
        if dev > tol::OP_EQ {
            return Err(Error::NotGaugeRelated(format!(
                "S(q) differs at point {m} by {dev:.3e}"
            )));
        }
        let p_f = f.point(m)?;
        let p_g = g.point(m)?;
        let n = f.rank_n();
        let gram = p_f.gram();
        let cross = QMatrix::from_fn(n, n, |k, i| {
            p_f.vector(k).inner(p_g.vector(i)).expect("same dim")
        });
        let u = gram.inverse()?.matmul(&cross)?;
        if !u.is_unitary(tol::OP_EQ) {
            return Err(Error::Inconsistent(format!(
                "change of basis at point {m} deviates from unitarity by {:.3e}",
                unitary_deviation(&u)
            )));
        }
        // Reconstruction check: xi^i = sum_j eta^j u_{ji}.
        let rebuilt = gauge_point(p_f, &u)?;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            worst = worst.max(rebuilt.vector(i).max_dev(p_g.vector(i)));
        }
        if worst > tol::OP_EQ {
            return Err(Error::Inconsistent(format!(
                "gauge reconstruction at point {m} off by {worst:.3e}"
            )));
        }
        gauges.push(u);
    }
    Ok(gauges)
}

/// Whether `g` is the dual of `f`: same geometry and vectors matching
/// `A^{-1}·eta` entrywise within `tol_eq`.
pub fn is_dual_pair(f: &QuadFrame, g: &QuadFrame, tol_eq: f64) -> Result<bool> {
    if !f.same_geometry(g) {
        return Ok(false);
    }
    let dual = f.dual()?;
    for m in 0..f.num_points() {
        for i in 0..f.rank_n() {
            if dual
                .point(m)?
                .vector(i)
                .max_dev(g.point(m)?.vector(i))
                > tol_eq
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Optimal discrete frame bounds for a finite vector family, with the
/// frame verdict.
#[derive(Clone, Debug)]
pub struct DiscreteBounds {
    pub lower: f64,
    pub upper: f64,
    pub is_frame: bool,
}

/// Computes the extremal Rayleigh quotients of `sum_k |phi_k><phi_k|`. The
/// family is a frame exactly when the lower bound is positive.
pub fn discrete_frame_bounds(vectors: &[QVector]) -> Result<DiscreteBounds> {
    if vectors.is_empty() {
        return Err(Error::Validation("empty vector family".into()));
    }
    let d = vectors[0].dim();
    if vectors.iter().any(|v| v.dim() != d) {
        return Err(Error::Shape("vectors must share one dimension".into()));
    }
    let mut op = QMatrix::zeros(d, d);
    for v in vectors {
        op.add_scaled_projector(v, 1.0);
    }
    let (lower, upper) = op.rayleigh_bounds()?;
    Ok(DiscreteBounds {
        lower,
        upper,
        is_frame: lower > tol::RANK * upper.max(1.0),
    })
}

/// Discrete frame: a finite family satisfying the frame inequality with a
/// positive lower bound.
#[derive(Clone, Debug)]
pub struct DiscreteFrame {
    d: usize,
    vectors: Vec<QVector>,
    lower: f64,
    upper: f64,
}

impl DiscreteFrame {
    pub fn new(vectors: Vec<QVector>) -> Result<Self> {
        let bounds = discrete_frame_bounds(&vectors)?;
        if !bounds.is_frame {
            return Err(Error::NotAFrame(format!(
                "lower frame bound {:.3e} is not positive",
                bounds.lower
            )));
        }
        Ok(DiscreteFrame {
            d: vectors[0].dim(),
            vectors,
            lower: bounds.lower,
            upper: bounds.upper,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }
}

/// Deterministic random frame: locations are standard Gaussian quaternions,
/// weights uniform in `[0.5, 1.5]`, vectors Gaussian with per-point
/// independence enforced by resampling (up to 8 attempts per point, then up
/// to 8 fresh frames when the assembled operator is not invertible).
pub fn random_frame(d: usize, n: usize, num_points: usize, seed: u64) -> Result<QuadFrame> {
    if n == 0 || n > d {
        return Err(Error::Precondition(format!(
            "rank must satisfy 1 <= n <= d, got n = {n}, d = {d}"
        )));
    }
    if num_points == 0 {
        return Err(Error::Precondition("at least one point is required".into()));
    }
    if n * num_points < d {
        return Err(Error::Precondition(format!(
            "n·M = {} cannot span dimension {d}",
            n * num_points
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut last_err: Option<Error> = None;
    for _frame_attempt in 0..8 {
        let mut points = Vec::with_capacity(num_points);
        'points: for _ in 0..num_points {
            let location = random_quaternion_with(&mut rng);
            let weight = 0.5 + rng.random_range(0.0..1.0);
            for _vec_attempt in 0..8 {
                let vectors: Vec<QVector> =
                    (0..n).map(|_| random_vector_with(&mut rng, d)).collect();
                let p = QuadPoint::new(location, weight, vectors)?;
                if p.independence_ratio()? > tol::LI {
                    points.push(p);
                    continue 'points;
                }
            }
            last_err = Some(Error::Generation {
                what: format!("independent family of rank {n} in dimension {d}"),
                attempts: 8,
            });
            continue;
        }
        if points.len() < num_points {
            continue;
        }
        match QuadFrame::build(points) {
            Ok(frame) => return Ok(frame),
            Err(e @ Error::NotAFrame(_)) | Err(e @ Error::DependentFamily { .. }) => {
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(Error::Generation {
        what: format!("random frame with d = {d}, n = {n}, M = {num_points}"),
        attempts: 8,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_unit_vector, random_unitary};

    /// Single point, weight one, vectors the standard basis: the Parseval
    /// frame with operator I.
    pub(crate) fn parseval_frame(d: usize) -> QuadFrame {
        let vectors = (0..d).map(|k| QVector::basis(d, k)).collect();
        let p = QuadPoint::new(Quaternion::ZERO, 1.0, vectors).unwrap();
        QuadFrame::build(vec![p]).unwrap()
    }

    /// Three rank-1 points {e1, e1, e2} in H²: operator diag(2, 1).
    pub(crate) fn diag21_frame() -> QuadFrame {
        let mk = |k: usize, re: f64| {
            QuadPoint::new(
                Quaternion::from_real(re),
                1.0,
                vec![QVector::basis(2, k)],
            )
            .unwrap()
        };
        QuadFrame::build(vec![mk(0, 0.0), mk(0, 1.0), mk(1, 2.0)]).unwrap()
    }

    #[test]
    fn parseval_case() {
        let f = parseval_frame(2);
        assert!(f.frame_operator().approx_eq(&QMatrix::identity(2), 1e-12));
        let (lo, hi) = f.bounds();
        assert!((lo - 1.0).abs() <= 1e-10 && (hi - 1.0).abs() <= 1e-10);
        assert!(f.width() <= 1e-10);
        assert!(f.is_tight(1e-8) && f.is_self_dual(1e-8));
        let report = f.check_bounds(100, 5).unwrap();
        assert!((report.min_observed - 1.0).abs() <= 1e-12);
        assert!((report.max_observed - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn diag21_case() {
        let f = diag21_frame();
        assert!(f
            .frame_operator()
            .approx_eq(&QMatrix::diag_real(&[2.0, 1.0]), 1e-12));
        let (lo, hi) = f.bounds();
        assert!((lo - 1.0).abs() <= 1e-10 && (hi - 2.0).abs() <= 1e-10);
        assert!((f.width() - 1.0 / 3.0).abs() <= 1e-12);
        assert!(!f.is_tight(1e-8) && !f.is_self_dual(1e-8));
        assert!((f.sample_sum(&QVector::basis(2, 0)).unwrap() - 2.0).abs() <= 1e-12);
        assert!((f.sample_sum(&QVector::basis(2, 1)).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn dependent_family_rejected() {
        let e1 = QVector::basis(2, 0);
        let p = QuadPoint::new(Quaternion::ZERO, 1.0, vec![e1.clone(), e1.scale(2.0)]).unwrap();
        match QuadFrame::build(vec![p]) {
            Err(Error::DependentFamily { point, .. }) => assert_eq!(point, 0),
            other => panic!("expected dependence error, got {other:?}"),
        }
    }

    #[test]
    fn deficient_span_is_not_a_frame() {
        let p = QuadPoint::new(Quaternion::ZERO, 1.0, vec![QVector::basis(2, 0)]).unwrap();
        assert!(matches!(
            QuadFrame::build(vec![p]),
            Err(Error::NotAFrame(_))
        ));
    }

    #[test]
    fn zero_weight_rejected() {
        assert!(matches!(
            QuadPoint::new(Quaternion::ZERO, 0.0, vec![QVector::basis(2, 0)]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn dual_examples() {
        let f = parseval_frame(2);
        let dual = f.dual().unwrap();
        assert!(dual.frame_operator().approx_eq(f.frame_operator(), 1e-10));

        let f = diag21_frame();
        let dual = f.dual().unwrap();
        assert!(dual
            .frame_operator()
            .approx_eq(&QMatrix::diag_real(&[0.5, 1.0]), 1e-10));
        assert!(dual.point(0).unwrap().vector(0).approx_eq(&QVector::basis(2, 0).scale(0.5), 1e-12));
        let (lo, hi) = dual.bounds();
        assert!((lo - 0.5).abs() <= 1e-9 && (hi - 1.0).abs() <= 1e-9);
        // dual is an involution and preserves the width
        let back = dual.dual().unwrap();
        for m in 0..f.num_points() {
            for i in 0..f.rank_n() {
                assert!(back
                    .point(m)
                    .unwrap()
                    .vector(i)
                    .approx_eq(f.point(m).unwrap().vector(i), 1e-9));
            }
        }
        assert!((dual.width() - f.width()).abs() <= 1e-9);
    }

    #[test]
    fn tight_examples() {
        let f = diag21_frame();
        let tight = f.canonical_tight().unwrap();
        assert!(tight
            .frame_operator()
            .approx_eq(&QMatrix::identity(2), 1e-8));
        assert!(tight.width() <= 1e-9);
        let expected = QVector::basis(2, 0).scale(1.0 / 2.0_f64.sqrt());
        assert!(tight.point(0).unwrap().vector(0).approx_eq(&expected, 1e-12));
        let report = tight.check_bounds(200, 9).unwrap();
        assert!((report.min_observed - 1.0).abs() <= 1e-8);
        assert!((report.max_observed - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn transform_examples() {
        let f = parseval_frame(2);
        let id = f.transform(&QMatrix::identity(2)).unwrap();
        assert!(id.frame_operator().approx_eq(f.frame_operator(), 1e-12));

        let t = QMatrix::diag_real(&[2.0, 1.0]);
        let g = f.transform(&t).unwrap();
        assert!(g
            .frame_operator()
            .approx_eq(&QMatrix::diag_real(&[4.0, 1.0]), 1e-10));

        // T = A^{-1/2} reproduces the canonical tight frame
        let f = diag21_frame();
        let root_inv = f.frame_operator().sqrt_psd().unwrap().inverse().unwrap();
        let via_transform = f.transform(&root_inv).unwrap();
        let tight = f.canonical_tight().unwrap();
        assert!(via_transform
            .frame_operator()
            .approx_eq(tight.frame_operator(), 1e-9));

        assert!(matches!(
            f.transform(&QMatrix::diag_real(&[1.0, 0.0])),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn unitary_transform_examples() {
        let f = diag21_frame();
        let same = f.unitary_transform(&QMatrix::identity(2)).unwrap();
        assert!(same.frame_operator().approx_eq(f.frame_operator(), 1e-12));

        let swap = QMatrix::from_fn(2, 2, |i, j| {
            if i != j { Quaternion::ONE } else { Quaternion::ZERO }
        });
        let g = f.unitary_transform(&swap).unwrap();
        assert!(g
            .frame_operator()
            .approx_eq(&QMatrix::diag_real(&[1.0, 2.0]), 1e-10));
        assert!((g.width() - f.width()).abs() <= 1e-9);
        let d = g
            .frame_operator()
            .s_spectrum()
            .unwrap()
            .set_distance(&f.frame_operator().s_spectrum().unwrap());
        assert!(d <= 1e-8);

        assert!(matches!(
            f.unitary_transform(&QMatrix::diag_real(&[2.0, 1.0])),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn gauge_examples() {
        let f = random_frame(3, 2, 4, 21).unwrap();
        let identity_gauge = vec![QMatrix::identity(2); 4];
        let same = f.gauge_transform(&identity_gauge).unwrap();
        assert!(same.frame_operator().approx_eq(f.frame_operator(), 1e-12));

        // permutation gauge swaps the vectors but keeps S(q)
        let swap = QMatrix::from_fn(2, 2, |i, j| {
            if i != j { Quaternion::ONE } else { Quaternion::ZERO }
        });
        let swapped = f.gauge_transform(&vec![swap; 4]).unwrap();
        for m in 0..4 {
            assert!(swapped
                .point(m)
                .unwrap()
                .vector(0)
                .approx_eq(f.point(m).unwrap().vector(1), 1e-12));
            assert!(swapped
                .point_operator(m)
                .unwrap()
                .approx_eq(&f.point_operator(m).unwrap(), 1e-10));
        }

        // diagonal unit-quaternion gauge keeps S(q)
        let h = Quaternion::new(0.5, 0.5, 0.5, 0.5); // unit
        let diag_gauge = QMatrix::diag(&[h, h]);
        let g = f.gauge_transform(&vec![diag_gauge; 4]).unwrap();
        for m in 0..4 {
            assert!(g
                .point_operator(m)
                .unwrap()
                .approx_eq(&f.point_operator(m).unwrap(), 1e-9));
        }
        assert!(g.frame_operator().approx_eq(f.frame_operator(), 1e-9));

        assert!(matches!(
            f.gauge_transform(&vec![QMatrix::diag_real(&[2.0, 1.0]); 4]),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn point_operator_examples() {
        let f = parseval_frame(2);
        assert!(f
            .point_operator(0)
            .unwrap()
            .approx_eq(&QMatrix::identity(2), 1e-12));

        let p = QuadPoint::new(Quaternion::ZERO, 1.0, vec![QVector::basis(2, 0)]).unwrap();
        let q = QuadPoint::new(Quaternion::ONE, 1.0, vec![QVector::basis(2, 1)]).unwrap();
        let f = QuadFrame::build(vec![p, q]).unwrap();
        assert!(f
            .point_operator(0)
            .unwrap()
            .approx_eq(&QMatrix::diag_real(&[1.0, 0.0]), 1e-12));

        // {e1, e1+e2}: S = [[2, 1], [1, 1]]
        let e1 = QVector::basis(2, 0);
        let e12 = &QVector::basis(2, 0) + &QVector::basis(2, 1);
        let p = QuadPoint::new(Quaternion::ZERO, 1.0, vec![e1, e12]).unwrap();
        let f = QuadFrame::build(vec![p]).unwrap();
        let expected = QMatrix::new(
            2,
            2,
            vec![
                Quaternion::from_real(2.0),
                Quaternion::ONE,
                Quaternion::ONE,
                Quaternion::ONE,
            ],
        )
        .unwrap();
        assert!(f.point_operator(0).unwrap().approx_eq(&expected, 1e-12));
        assert!(f.point_operator(7).is_err());
    }

    #[test]
    fn gauge_recovery_round_trip() {
        let f = random_frame(3, 2, 5, 33).unwrap();
        let mut rng = rng_from_seed(34);
        let gauges: Vec<QMatrix> = (0..5)
            .map(|_| crate::random::random_unitary_with(&mut rng, 2).unwrap())
            .collect();
        let g = f.gauge_transform(&gauges).unwrap();
        let recovered = recover_gauge(&f, &g).unwrap();
        for (u, v) in gauges.iter().zip(recovered.iter()) {
            assert!(u.approx_eq(v, 1e-8));
        }
        // G = F recovers the identity gauge
        let trivial = recover_gauge(&f, &f).unwrap();
        for u in trivial {
            assert!(u.approx_eq(&QMatrix::identity(2), 1e-9));
        }
        // a non-gauge transform is rejected
        let mut t = QMatrix::identity(3);
        t.set(0, 0, Quaternion::from_real(2.0));
        let h = f.transform(&t).unwrap();
        assert!(matches!(
            recover_gauge(&f, &h),
            Err(Error::NotGaugeRelated(_))
        ));
    }

    #[test]
    fn discrete_bounds_examples() {
        let basis: Vec<QVector> = (0..3).map(|k| QVector::basis(3, k)).collect();
        let b = discrete_frame_bounds(&basis).unwrap();
        assert!((b.lower - 1.0).abs() <= 1e-10 && (b.upper - 1.0).abs() <= 1e-10);
        assert!(b.is_frame);

        let fam = vec![
            QVector::basis(2, 0),
            QVector::basis(2, 0),
            QVector::basis(2, 1),
        ];
        let b = discrete_frame_bounds(&fam).unwrap();
        assert!((b.lower - 1.0).abs() <= 1e-10 && (b.upper - 2.0).abs() <= 1e-10);

        let deficient = vec![QVector::basis(2, 0)];
        let b = discrete_frame_bounds(&deficient).unwrap();
        assert!(!b.is_frame);
        assert!(DiscreteFrame::new(deficient).is_err());
    }

    #[test]
    fn random_frame_contract() {
        let f = random_frame(2, 1, 4, 77).unwrap();
        assert!(f.bounds().0 > 0.0);
        let again = random_frame(2, 1, 4, 77).unwrap();
        for m in 0..4 {
            assert!(again
                .point(m)
                .unwrap()
                .vector(0)
                .approx_eq(f.point(m).unwrap().vector(0), 0.0));
            assert_eq!(again.point(m).unwrap().weight(), f.point(m).unwrap().weight());
        }
        assert!(matches!(
            random_frame(2, 3, 1, 5),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            random_frame(4, 1, 2, 5),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bounds_check_rejects_corrupted_bounds() {
        let f = diag21_frame();
        // impossible bounds come from a hand-corrupted clone
        let mut broken = f.clone();
        broken.lower = 1.5;
        broken.upper = 1.6;
        match broken.check_bounds(50, 3) {
            Err(Error::BoundViolation { witness, .. }) => {
                assert_eq!(witness.dim(), 2);
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn unitary_transform_preserves_bounds_random() {
        for seed in 0..5 {
            let f = random_frame(4, 2, 6, 2000 + seed).unwrap();
            let u = random_unitary(4, 2100 + seed).unwrap();
            let g = f.unitary_transform(&u).unwrap();
            let (lo, hi) = f.bounds();
            let (glo, ghi) = g.bounds();
            assert!((lo - glo).abs() <= 1e-8 && (hi - ghi).abs() <= 1e-8);
            assert!((f.width() - g.width()).abs() <= 1e-9);
            // operator law: op(gF) = T op(F) T†
            let law = u
                .matmul(f.frame_operator())
                .unwrap()
                .matmul(&u.adjoint())
                .unwrap();
            assert!(g.frame_operator().approx_eq(&law, 1e-8));
        }
    }

    #[test]
    fn frame_inequality_oracle_small() {
        let f = random_frame(2, 1, 5, 55).unwrap();
        let (lo, hi) = f.bounds();
        for seed in 0..200 {
            let phi = random_unit_vector(2, 3000 + seed);
            let s = f.sample_sum(&phi).unwrap();
            assert!(s >= lo - 1e-9 * hi && s <= hi + 1e-9 * hi);
        }
    }
}
