//! Analysis operators, frame reproducing kernels, and frame equivalences.
//!
//! The analysis map sends a vector to its sample field
//! `Phi_i(q_m) = <eta_m^i|phi>`. Under the kernel inner product (pullback of
//! the space inner product along the analysis map) it is an isometry onto
//! its range, and that range is a reproducing kernel Hilbert space with the
//! block kernel `K_{ij}(p, q) = <eta_p^i|A^{-1} eta_q^j>`. The decision
//! procedures at the bottom certify when two frames share a kernel up to
//! per-point unitary gauges, producing an explicit witness `(T, u)`.

use crate::error::{Error, Result};
use crate::frames::QuadFrame;
use crate::linalg::{QMatrix, QVector};
use crate::quat::Quaternion;
use crate::random::rng_from_seed;
use crate::tol;
use rand::Rng;

/// An `H^n`-valued function on the quadrature nodes: the value of index `i`
/// at point `m` sits at `m·n + i`. Weights are not baked in; they enter
/// through the norms.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleField {
    n: usize,
    num_points: usize,
    values: Vec<Quaternion>,
}

impl SampleField {
    pub fn zeros(num_points: usize, n: usize) -> Self {
        SampleField {
            n,
            num_points,
            values: vec![Quaternion::ZERO; n * num_points],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn get(&self, m: usize, i: usize) -> Quaternion {
        self.values[m * self.n + i]
    }

    pub fn set(&mut self, m: usize, i: usize, q: Quaternion) {
        self.values[m * self.n + i] = q;
    }

    /// The `H^n` value at one node.
    pub fn point_values(&self, m: usize) -> QVector {
        QVector::from_fn(self.n, |i| self.get(m, i))
    }

    pub fn set_point_values(&mut self, m: usize, v: &QVector) {
        for i in 0..self.n {
            self.set(m, i, v.entry(i));
        }
    }

    /// Right scalar action, pointwise.
    pub fn scale_right(&self, q: Quaternion) -> SampleField {
        SampleField {
            n: self.n,
            num_points: self.num_points,
            values: self.values.iter().map(|&v| v * q).collect(),
        }
    }

    pub fn plus(&self, other: &SampleField) -> SampleField {
        debug_assert_eq!((self.n, self.num_points), (other.n, other.num_points));
        SampleField {
            n: self.n,
            num_points: self.num_points,
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn max_dev(&self, other: &SampleField) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `Phi_i(q_m) = <eta_m^i|phi>`, the unweighted sample field of `phi`.
pub fn analysis_apply(frame: &QuadFrame, phi: &QVector) -> Result<SampleField> {
    if phi.dim() != frame.dim() {
        return Err(Error::Shape(format!(
            "vector dimension {} vs frame dimension {}",
            phi.dim(),
            frame.dim()
        )));
    }
    let mut field = SampleField::zeros(frame.num_points(), frame.rank_n());
    for (m, p) in frame.points().iter().enumerate() {
        for (i, v) in p.vectors().iter().enumerate() {
            field.set(m, i, v.inner(phi)?);
        }
    }
    Ok(field)
}

/// Ambient squared norm `sum_m w_m sum_i |Phi_i(q_m)|²`.
pub fn field_norm_sqr(frame: &QuadFrame, field: &SampleField) -> Result<f64> {
    check_field_shape(frame, field)?;
    let mut acc = 0.0;
    for (m, p) in frame.points().iter().enumerate() {
        let mut point_acc = 0.0;
        for i in 0..frame.rank_n() {
            point_acc += field.get(m, i).norm_sqr();
        }
        acc += p.weight() * point_acc;
    }
    Ok(acc)
}

/// Ambient inner product `sum_m w_m sum_i conj(Phi_i)·Psi_i`.
pub fn field_inner(frame: &QuadFrame, a: &SampleField, b: &SampleField) -> Result<Quaternion> {
    check_field_shape(frame, a)?;
    check_field_shape(frame, b)?;
    let mut acc = Quaternion::ZERO;
    for (m, p) in frame.points().iter().enumerate() {
        for i in 0..frame.rank_n() {
            acc += a.get(m, i).conj() * b.get(m, i) * p.weight();
        }
    }
    Ok(acc)
}

fn check_field_shape(frame: &QuadFrame, field: &SampleField) -> Result<()> {
    if field.n() != frame.rank_n() || field.num_points() != frame.num_points() {
        return Err(Error::Shape(format!(
            "field shape ({}, {}) vs frame shape ({}, {})",
            field.num_points(),
            field.n(),
            frame.num_points(),
            frame.rank_n()
        )));
    }
    Ok(())
}

/// The synthesis `A^{-1} sum_m w_m sum_i eta_m^i · Phi_i(q_m)` without any
/// range test; callers decide how to use the residual.
fn synthesize(frame: &QuadFrame, field: &SampleField) -> Result<QVector> {
    check_field_shape(frame, field)?;
    let mut acc = QVector::zeros(frame.dim());
    for (m, p) in frame.points().iter().enumerate() {
        for (i, v) in p.vectors().iter().enumerate() {
            acc = &acc + &v.scale_right(field.get(m, i) * p.weight());
        }
    }
    frame.frame_operator().inverse()?.apply(&acc)
}

/// Relative distance of a field from the analysis range: synthesize, re-apply
/// the analysis map, and compare in the ambient norm.
pub fn range_residual(frame: &QuadFrame, field: &SampleField) -> Result<f64> {
    let back = analysis_apply(frame, &synthesize(frame, field)?)?;
    let num = field_norm_sqr(frame, &back.plus(&field.scale_right(-Quaternion::ONE)))?.sqrt();
    let den = field_norm_sqr(frame, field)?.sqrt().max(1.0);
    Ok(num / den)
}

/// The unique preimage of an in-range field under the analysis map.
pub fn pullback(frame: &QuadFrame, field: &SampleField) -> Result<QVector> {
    let phi = synthesize(frame, field)?;
    let back = analysis_apply(frame, &phi)?;
    let num = field_norm_sqr(frame, &back.plus(&field.scale_right(-Quaternion::ONE)))?.sqrt();
    let den = field_norm_sqr(frame, field)?.sqrt().max(1.0);
    let residual = num / den;
    if residual > tol::RANGE_RESIDUAL {
        return Err(Error::OffRange { residual });
    }
    Ok(phi)
}

/// Kernel-space inner product of two in-range fields, computed by pulling
/// both back to the underlying space; the analysis map is an isometry for
/// this product.
pub fn rkhs_inner(frame: &QuadFrame, a: &SampleField, b: &SampleField) -> Result<Quaternion> {
    let pa = pullback(frame, a)?;
    let pb = pullback(frame, b)?;
    pa.inner(&pb)
}

/// The stacked analysis matrix: row block `(m, i)` holds
/// `sqrt(w_m) · <eta_m^i|`, so `adjoint(W)·W` is the frame operator and
/// `||W·phi||² = s(phi)`.
#[derive(Clone, Debug)]
pub struct AnalysisOperator {
    matrix: QMatrix,
}

impl AnalysisOperator {
    pub fn new(frame: &QuadFrame) -> Self {
        let n = frame.rank_n();
        let rows = n * frame.num_points();
        let matrix = QMatrix::from_fn(rows, frame.dim(), |r, b| {
            let m = r / n;
            let i = r % n;
            let p = &frame.points()[m];
            p.vector(i).entry(b).conj() * p.weight().sqrt()
        });
        AnalysisOperator { matrix }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }
}

/// Block-indexed reproducing kernel `K_{ij}(p, q) = <eta_p^i|A^{-1} eta_q^j>`
/// over all pairs of quadrature nodes.
#[derive(Clone, Debug)]
pub struct FrameKernel {
    n: usize,
    num_points: usize,
    weights: Vec<f64>,
    blocks: Vec<QMatrix>,
}

impl FrameKernel {
    /// Computes every block and verifies the three kernel properties:
    /// positive diagonal, Hermitian symmetry across node pairs, and the
    /// quadrature reproducing identity.
    pub fn compute(frame: &QuadFrame) -> Result<FrameKernel> {
        let inv = frame.frame_operator().inverse()?;
        let n = frame.rank_n();
        let num_points = frame.num_points();
        // dual vectors A^{-1}·eta, computed once per (node, index)
        let mut duals: Vec<Vec<QVector>> = Vec::with_capacity(num_points);
        for p in frame.points() {
            duals.push(
                p.vectors()
                    .iter()
                    .map(|v| inv.apply(v))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut blocks = Vec::with_capacity(num_points * num_points);
        for p in 0..num_points {
            for q in 0..num_points {
                blocks.push(QMatrix::from_fn(n, n, |i, j| {
                    frame.points()[p]
                        .vector(i)
                        .inner(&duals[q][j])
                        .expect("same dim")
                }));
            }
        }
        let kernel = FrameKernel {
            n,
            num_points,
            weights: frame.points().iter().map(|p| p.weight()).collect(),
            blocks,
        };
        kernel.verify_properties()?;
        Ok(kernel)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn block(&self, p: usize, q: usize) -> &QMatrix {
        &self.blocks[p * self.num_points + q]
    }

    fn verify_properties(&self) -> Result<()> {
        // (a) positive diagonal entries at coincident nodes
        for q in 0..self.num_points {
            let b = self.block(q, q);
            for i in 0..self.n {
                let v = b.entry(i, i);
                if !(v.re() > 0.0) || v.im_norm() > tol::OP_EQ {
                    return Err(Error::Invariant {
                        what: format!("kernel diagonal K_{i}{i}({q},{q}) is not positive"),
                        residual: v.im_norm().max(-v.re()),
                        tol: tol::OP_EQ,
                    });
                }
            }
        }
        // (b) Hermitian symmetry K(p,q) = adjoint(K(q,p))
        for p in 0..self.num_points {
            for q in p..self.num_points {
                let dev = self.block(p, q).max_dev(&self.block(q, p).adjoint());
                if dev > tol::OP_EQ {
                    return Err(Error::Invariant {
                        what: format!("kernel symmetry between nodes {p} and {q}"),
                        residual: dev,
                        tol: tol::OP_EQ,
                    });
                }
            }
        }
        // (c) reproducing identity sum_k w_k K(p,q_k) K(q_k,r) = K(p,r)
        let dev = self.reproducing_residual();
        if dev > tol::OP_EQ {
            return Err(Error::Invariant {
                what: "kernel reproducing identity".into(),
                residual: dev,
                tol: tol::OP_EQ,
            });
        }
        Ok(())
    }

    /// Max entry deviation in the quadrature reproducing identity.
    pub fn reproducing_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for p in 0..self.num_points {
            for r in 0..self.num_points {
                let mut acc = QMatrix::zeros(self.n, self.n);
                for k in 0..self.num_points {
                    let prod = self.block(p, k).matmul(self.block(k, r)).expect("n x n");
                    acc = &acc + &prod.scale(self.weights[k]);
                }
                worst = worst.max(acc.max_dev(self.block(p, r)));
            }
        }
        worst
    }

    /// Max entry deviation across all blocks from another kernel.
    pub fn max_dev(&self, other: &FrameKernel) -> Result<f64> {
        if self.n != other.n || self.num_points != other.num_points {
            return Err(Error::Shape(format!(
                "kernel shapes ({}, {}) vs ({}, {})",
                self.num_points, self.n, other.num_points, other.n
            )));
        }
        Ok(self
            .blocks
            .iter()
            .zip(other.blocks.iter())
            .map(|(a, b)| a.max_dev(b))
            .fold(0.0, f64::max))
    }
}

/// Kernel evaluation: applies the reproducing identity
/// `sum_j sum_k w_k K_{ij}(q_m, q_k)·Phi_j(q_k)` to an in-range field and
/// verifies it reproduces the stored value `Phi_i(q_m)`.
pub fn evaluate(
    frame: &QuadFrame,
    kernel: &FrameKernel,
    field: &SampleField,
    m: usize,
    i: usize,
) -> Result<Quaternion> {
    check_field_shape(frame, field)?;
    if m >= kernel.num_points() || i >= kernel.n() {
        return Err(Error::Index {
            index: m.max(i),
            len: kernel.num_points().max(kernel.n()),
        });
    }
    let residual = range_residual(frame, field)?;
    if residual > tol::RANGE_RESIDUAL {
        return Err(Error::OffRange { residual });
    }
    let mut acc = Quaternion::ZERO;
    for k in 0..kernel.num_points() {
        let block = kernel.block(m, k);
        for j in 0..kernel.n() {
            acc += block.entry(i, j) * field.get(k, j) * kernel.weights()[k];
        }
    }
    let direct = field.get(m, i);
    let dev = acc.max_dev(direct);
    let scale = field.max_abs().max(1.0);
    if dev > tol::OP_EQ * scale {
        return Err(Error::Invariant {
            what: format!("evaluation identity at node {m}, index {i}"),
            residual: dev,
            tol: tol::OP_EQ * scale,
        });
    }
    Ok(acc)
}

/// Entrywise equality of two kernels at tolerance `tol`.
pub fn kernels_equal(a: &FrameKernel, b: &FrameKernel, tol: f64) -> Result<bool> {
    Ok(a.max_dev(b)? <= tol)
}

/// Whether `K2(p, q) = adjoint(u(p))·K1(p, q)·u(q)` holds for every block.
pub fn kernel_gauge_related(
    k1: &FrameKernel,
    k2: &FrameKernel,
    gauges: &[QMatrix],
    tol_eq: f64,
) -> Result<bool> {
    if k1.n != k2.n || k1.num_points != k2.num_points {
        return Err(Error::Shape("kernel index sets differ".into()));
    }
    if gauges.len() != k1.num_points {
        return Err(Error::Shape(format!(
            "{} gauges for {} nodes",
            gauges.len(),
            k1.num_points
        )));
    }
    for u in gauges {
        if !u.is_unitary(tol::UNITARY) {
            return Err(Error::NotUnitary {
                dev: f64::INFINITY,
                tol: tol::UNITARY,
            });
        }
    }
    for p in 0..k1.num_points {
        for q in 0..k1.num_points {
            let expected = gauges[p]
                .adjoint()
                .matmul(k1.block(p, q))?
                .matmul(&gauges[q])?;
            if expected.max_dev(k2.block(p, q)) > tol_eq {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Witness for kernel equivalence: `eta~_q^i = sum_j (T·eta_q^j)·u(q)_{ji}`
/// with the second frame operator equal to `T·A·adjoint(T)`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub transform: QMatrix,
    pub gauge: Vec<QMatrix>,
}

/// Decides kernel equivalence of two frames over the same nodes and
/// produces a witness when they are.
///
/// The search whitens both frames (their canonical tight frames share the
/// kernels) and reduces the problem to one global unitary `V` intertwining
/// the whitened per-point operators, `V·S1(q)·adjoint(V) = S2(q)` for all
/// nodes. `V` is found by matching eigenbases of random weighted averages
/// of the two operator families and resolving the per-eigenvector
/// quaternionic phases along a connectivity graph. Every candidate is
/// verified against the full relations before a witness is returned, so a
/// returned witness is always valid; `None` means no witness was found.
pub fn kernel_equivalent(f: &QuadFrame, g: &QuadFrame) -> Result<Option<EquivalenceWitness>> {
    if !f.same_geometry(g) {
        return Err(Error::Shape(
            "kernel equivalence needs identical nodes, weights, and (d, n)".into(),
        ));
    }
    let f_tight = f.canonical_tight()?;
    let g_tight = g.canonical_tight()?;
    let s1: Vec<QMatrix> = (0..f.num_points())
        .map(|m| f_tight.point_operator(m))
        .collect::<Result<_>>()?;
    let s2: Vec<QMatrix> = (0..g.num_points())
        .map(|m| g_tight.point_operator(m))
        .collect::<Result<_>>()?;

    let v = match intertwining_unitary(&s1, &s2)? {
        Some(v) => v,
        None => return Ok(None),
    };

    // Per-node gauge from the whitened families: least squares on
    // X = V·H·u, i.e. u = G^{-1}·adjoint(H)·adjoint(V)·X.
    let mut gauges = Vec::with_capacity(f.num_points());
    let v_adj = v.adjoint();
    for m in 0..f.num_points() {
        let h = QMatrix::from_columns(f_tight.point(m)?.vectors());
        let x = QMatrix::from_columns(g_tight.point(m)?.vectors());
        let gram = f_tight.point(m)?.gram();
        let u = gram
            .inverse()?
            .matmul(&h.adjoint())?
            .matmul(&v_adj)?
            .matmul(&x)?;
        if !u.is_unitary(tol::EQUIV) {
            return Ok(None);
        }
        gauges.push(u);
    }

    // T = A~^{1/2}·V·A^{-1/2}
    let transform = g
        .frame_operator()
        .sqrt_psd()?
        .matmul(&v)?
        .matmul(&f.frame_operator().sqrt_psd()?.inverse()?)?;

    let witness = EquivalenceWitness { transform, gauge: gauges };
    if verify_witness(f, g, &witness, tol::EQUIV)? {
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

/// Checks both witness relations at tolerance `tol_eq`, scaled by the size
/// of the frames involved.
pub fn verify_witness(
    f: &QuadFrame,
    g: &QuadFrame,
    witness: &EquivalenceWitness,
    tol_eq: f64,
) -> Result<bool> {
    if witness.gauge.len() != f.num_points() {
        return Err(Error::Shape("one gauge matrix per node is required".into()));
    }
    let scale = g
        .points()
        .iter()
        .flat_map(|p| p.vectors())
        .map(|v| v.norm())
        .fold(1.0, f64::max);
    for m in 0..f.num_points() {
        let u = &witness.gauge[m];
        let pf = f.point(m)?;
        let pg = g.point(m)?;
        let transformed: Vec<QVector> = pf
            .vectors()
            .iter()
            .map(|v| witness.transform.apply(v))
            .collect::<Result<_>>()?;
        for i in 0..f.rank_n() {
            let mut mixed = QVector::zeros(f.dim());
            for (j, tv) in transformed.iter().enumerate() {
                mixed = &mixed + &tv.scale_right(u.entry(j, i));
            }
            if mixed.max_dev(pg.vector(i)) > tol_eq * scale {
                return Ok(false);
            }
        }
    }
    let mapped = witness
        .transform
        .matmul(f.frame_operator())?
        .matmul(&witness.transform.adjoint())?;
    let op_scale = g.frame_operator().max_abs().max(1.0);
    Ok(mapped.max_dev(g.frame_operator()) <= tol_eq * op_scale)
}

/// The reverse operator of the equivalence construction,
/// `T' = sum_p w_p sum_{i,k} |eta_p^i> u(p)_{ik} <eta~_p^k| A~^{-1}`;
/// for a valid witness it inverts the witness transform on the whole space
/// because frame vectors are total.
pub fn reverse_transform(
    f: &QuadFrame,
    g: &QuadFrame,
    witness: &EquivalenceWitness,
) -> Result<QMatrix> {
    if !f.same_geometry(g) {
        return Err(Error::Shape("frames over different nodes".into()));
    }
    let g_inv = g.frame_operator().inverse()?;
    let mut acc = QMatrix::zeros(f.dim(), f.dim());
    for (m, (pf, pg)) in f.points().iter().zip(g.points().iter()).enumerate() {
        let u = &witness.gauge[m];
        for i in 0..f.rank_n() {
            for k in 0..f.rank_n() {
                let dual_g = g_inv.apply(pg.vector(k))?;
                let outer = QMatrix::outer_scaled(pf.vector(i), u.entry(i, k), &dual_g);
                acc = &acc + &outer.scale(pf.weight());
            }
        }
    }
    Ok(acc)
}

/// A member of the self-dual tight subclass of the equivalence class of
/// `f`: `xi_q^i = sum_j (U·eta^_q^j)·u(q)_{ji}` built over the canonical
/// tight vectors. The result always has the identity frame operator and a
/// kernel gauge-related to the kernel of `f`.
pub fn tight_orbit_member(
    f: &QuadFrame,
    u_global: &QMatrix,
    gauges: &[QMatrix],
) -> Result<QuadFrame> {
    let tight = f.canonical_tight()?;
    let rotated = tight.unitary_transform(u_global)?;
    let member = rotated.gauge_transform(gauges)?;
    let dev = member
        .frame_operator()
        .max_dev(&QMatrix::identity(f.dim()));
    if dev > tol::OP_EQ {
        return Err(Error::Invariant {
            what: "tight orbit member frame operator".into(),
            residual: dev,
            tol: tol::OP_EQ,
        });
    }
    Ok(member)
}

/// Per-point operator transform `eta~_q^i = sum_j (T(q)·eta_q^j)·u(q)_{ji}`.
/// No relation between the two frame operators is imposed; a rank collapse
/// at some node surfaces as a dependent-family error.
pub fn bundle_transform(
    f: &QuadFrame,
    point_ops: &[QMatrix],
    gauges: &[QMatrix],
) -> Result<QuadFrame> {
    if point_ops.len() != f.num_points() {
        return Err(Error::Shape(format!(
            "{} point operators for {} nodes",
            point_ops.len(),
            f.num_points()
        )));
    }
    let transformed = f.map_points_with(|m, p| {
        let t = &point_ops[m];
        if t.rows() != f.dim() || t.cols() != f.dim() {
            return Err(Error::Shape(format!(
                "point operator {m} must be {d}x{d}",
                d = f.dim()
            )));
        }
        p.vectors()
            .iter()
            .map(|v| t.apply(v))
            .collect::<Result<Vec<_>>>()
    })?;
    transformed.gauge_transform(gauges)
}

/// Orthogonal projector onto the span of the vector family at node `m`:
/// `P = H·G^{-1}·adjoint(H)` with `H` the stacked columns and `G` their Gram
/// matrix.
pub fn point_projector(f: &QuadFrame, m: usize) -> Result<QMatrix> {
    let p = f.point(m)?;
    let h = QMatrix::from_columns(p.vectors());
    let gram_inv = p.gram().inverse()?;
    h.matmul(&gram_inv)?.matmul(&h.adjoint())
}

/// Decides whether `g` is the image of `f` under one global unitary,
/// `eta~_q^i = U·eta_q^i` for every node and index. The candidate is
/// `U = (sum_q w_q sum_i |eta~><eta|)·A^{-1}`, which reproduces the unitary
/// exactly when one exists; it is then verified.
pub fn unitary_equivalent(f: &QuadFrame, g: &QuadFrame) -> Result<Option<QMatrix>> {
    if !f.same_geometry(g) {
        return Err(Error::Shape(
            "unitary equivalence needs identical nodes, weights, and (d, n)".into(),
        ));
    }
    let d = f.dim();
    let mut acc = QMatrix::zeros(d, d);
    for (pf, pg) in f.points().iter().zip(g.points().iter()) {
        for (vf, vg) in pf.vectors().iter().zip(pg.vectors().iter()) {
            acc = &acc + &QMatrix::outer(vg, vf).scale(pf.weight());
        }
    }
    let u = acc.matmul(&f.frame_operator().inverse()?)?;
    if !u.is_unitary(tol::EQUIV) {
        return Ok(None);
    }
    let scale = g
        .points()
        .iter()
        .flat_map(|p| p.vectors())
        .map(|v| v.norm())
        .fold(1.0, f64::max);
    for (pf, pg) in f.points().iter().zip(g.points().iter()) {
        for (vf, vg) in pf.vectors().iter().zip(pg.vectors().iter()) {
            if u.apply(vf)?.max_dev(vg) > tol::EQUIV * scale {
                return Ok(None);
            }
        }
    }
    Ok(Some(u))
}

/// Searches for a unitary `V` with `V·S1(q)·adjoint(V) = S2(q)` for every
/// node, the simultaneous-conjugation core of the equivalence decision.
fn intertwining_unitary(s1: &[QMatrix], s2: &[QMatrix]) -> Result<Option<QMatrix>> {
    let d = s1[0].rows();
    let num = s1.len();
    let scale = s1
        .iter()
        .chain(s2.iter())
        .map(|s| s.max_abs())
        .fold(1.0, f64::max);
    let mut rng = rng_from_seed(0x51_6672_616d);
    for attempt in 0..8 {
        // Random positive weights couple the family into one self-adjoint
        // matrix per side; a shared conjugation must match their spectra.
        let weights: Vec<f64> = (0..num)
            .map(|_| if attempt == 0 { 1.0 } else { 0.5 + rng.random_range(0.0..1.0) })
            .collect();
        let combine = |family: &[QMatrix]| -> QMatrix {
            let mut acc = QMatrix::zeros(d, d);
            for (s, &w) in family.iter().zip(weights.iter()) {
                acc = &acc + &s.scale(w);
            }
            acc
        };
        let b1 = combine(s1);
        let b2 = combine(s2);
        let e1 = hermitian_eigenpairs(&b1)?;
        let e2 = hermitian_eigenpairs(&b2)?;
        let spectra_match = e1
            .iter()
            .zip(e2.iter())
            .all(|((l1, _), (l2, _))| (l1 - l2).abs() <= 1e-7 * scale.max(1.0));
        if !spectra_match {
            // A conjugation would force equal spectra for every weighting.
            return Ok(None);
        }

        if let Some(v) = phase_matched_unitary(&e1, &e2, s1, s2, scale)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Builds `V` mapping the eigenbasis of the first family sum onto the
/// second, resolving the per-eigenvector right quaternionic phases from the
/// off-diagonal matrix elements of the point operators.
///
/// The phases obey `conj(g_k)·m2_{kl}·g_l = m1_{kl}` for all nodes and all
/// index pairs. The solution set is a torsor, not a group orbit — fixing
/// one phase to 1 is not sound — but left and right quaternion products
/// are real-linear, so the whole system is a real null-space problem in
/// the 4d phase components.
fn phase_matched_unitary(
    e1: &[(f64, QVector)],
    e2: &[(f64, QVector)],
    s1: &[QMatrix],
    s2: &[QMatrix],
    scale: f64,
) -> Result<Option<QMatrix>> {
    let d = e1.len();
    // Matrix elements m1[q](k, l) = <v_k|S1(q)·v_l> and the same for side 2.
    let elements = |family: &[QMatrix], basis: &[(f64, QVector)]| -> Result<Vec<QMatrix>> {
        family
            .iter()
            .map(|s| {
                Ok(QMatrix::from_fn(d, d, |k, l| {
                    basis[k]
                        .1
                        .inner(&s.apply(&basis[l].1).expect("shape"))
                        .expect("shape")
                }))
            })
            .collect()
    };
    let m1 = elements(s1, e1)?;
    let m2 = elements(s2, e2)?;

    // Constraint rows: m2_{kl}·g_l − g_k·m1_{kl} = 0, four real equations
    // per node and pair. Column block 4k holds the components of g_k.
    let mut rows: Vec<[f64; 4]> = Vec::new(); // per-row dense storage below
    let mut dense: Vec<Vec<f64>> = Vec::new();
    let negligible = 1e-12 * scale.max(1.0);
    for q in 0..m1.len() {
        for k in 0..d {
            for l in (k + 1)..d {
                let a1 = m1[q].entry(k, l);
                let a2 = m2[q].entry(k, l);
                if a1.norm().max(a2.norm()) <= negligible {
                    continue;
                }
                let left = left_mul_matrix(a2);
                let right = right_mul_matrix(a1);
                for r in 0..4 {
                    let mut row = vec![0.0; 4 * d];
                    for c in 0..4 {
                        row[4 * l + c] += left[r][c];
                        row[4 * k + c] -= right[r][c];
                    }
                    dense.push(row);
                }
            }
        }
    }
    rows.clear();

    let mut phases: Vec<Quaternion> = if dense.is_empty() {
        vec![Quaternion::ONE; d]
    } else {
        let nrows = dense.len();
        let mat = nalgebra::DMatrix::<f64>::from_fn(nrows, 4 * d, |r, c| dense[r][c]);
        let svd = nalgebra::linalg::SVD::new(mat, false, true);
        let v_t = svd.v_t.as_ref().expect("requested");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
        // Null basis: directions with negligible singular value, plus at
        // minimum the very smallest direction.
        let sigma_max = order
            .iter()
            .map(|&i| svd.singular_values[i])
            .fold(0.0, f64::max);
        let null_tol = 1e-6 * sigma_max.max(1e-12);
        let mut null_basis: Vec<Vec<f64>> = order
            .iter()
            .filter(|&&i| svd.singular_values[i] <= null_tol)
            .map(|&i| v_t.row(i).iter().copied().collect())
            .collect();
        if null_basis.is_empty() {
            null_basis.push(v_t.row(order[0]).iter().copied().collect());
        }
        // Combine null directions so every phase block is sizable.
        let mut solution = null_basis[0].clone();
        for k in 0..d {
            let block_norm = |v: &[f64], k: usize| -> f64 {
                (v[4 * k..4 * k + 4].iter().map(|x| x * x).sum::<f64>()).sqrt()
            };
            if block_norm(&solution, k) < 0.3 {
                if let Some(best) = null_basis
                    .iter()
                    .max_by(|a, b| block_norm(a, k).total_cmp(&block_norm(b, k)))
                {
                    for (s, b) in solution.iter_mut().zip(best.iter()) {
                        *s += *b;
                    }
                }
            }
        }
        (0..d)
            .map(|k| {
                Quaternion::new(
                    solution[4 * k],
                    solution[4 * k + 1],
                    solution[4 * k + 2],
                    solution[4 * k + 3],
                )
            })
            .collect()
    };
    for g in phases.iter_mut() {
        let n = g.norm();
        if n < 1e-8 {
            return Ok(None);
        }
        *g = *g / n;
    }

    // V maps v_k to z_k·g_k.
    let cols: Vec<QVector> = (0..d)
        .map(|k| e2[k].1.scale_right(phases[k]))
        .collect();
    let basis1 = QMatrix::from_columns(&e1.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
    let v = QMatrix::from_columns(&cols).matmul(&basis1.adjoint())?;
    if !v.is_unitary(1e-7) {
        return Ok(None);
    }
    let v_adj = v.adjoint();
    for (a, b) in s1.iter().zip(s2.iter()) {
        let conj = v.matmul(a)?.matmul(&v_adj)?;
        if conj.max_dev(b) > 1e-7 * scale.max(1.0) {
            return Ok(None);
        }
    }
    Ok(Some(v))
}

/// 4-by-4 real matrix of left multiplication `x -> q·x` on components.
fn left_mul_matrix(q: Quaternion) -> [[f64; 4]; 4] {
    let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let mut m = [[0.0; 4]; 4];
    for (c, e) in basis.iter().enumerate() {
        let col = q * *e;
        m[0][c] = col.x0;
        m[1][c] = col.x1;
        m[2][c] = col.x2;
        m[3][c] = col.x3;
    }
    m
}

/// 4-by-4 real matrix of right multiplication `x -> x·q` on components.
fn right_mul_matrix(q: Quaternion) -> [[f64; 4]; 4] {
    let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let mut m = [[0.0; 4]; 4];
    for (c, e) in basis.iter().enumerate() {
        let col = *e * q;
        m[0][c] = col.x0;
        m[1][c] = col.x1;
        m[2][c] = col.x2;
        m[3][c] = col.x3;
    }
    m
}

/// Orthonormal quaternionic eigenpairs of a self-adjoint matrix, extracted
/// from the Hermitian eigendecomposition of the complex embedding. The
/// embedded eigenvectors come in conjugate pairs spanning one quaternionic
/// line each; a rank filter keeps exactly `d` independent representatives.
fn hermitian_eigenpairs(b: &QMatrix) -> Result<Vec<(f64, QVector)>> {
    let d = b.rows();
    let (values, vectors) = crate::linalg::hermitian_eigen_embedded(b)?;
    let mut out: Vec<(f64, QVector)> = Vec::with_capacity(d);
    for (idx, &lambda) in values.iter().enumerate() {
        if out.len() == d {
            break;
        }
        let col = vectors.column(idx);
        let mut v = QVector::from_fn(d, |i| {
            Quaternion::from_complex_pair(col[i], -col[i + d].conj())
        });
        // orthogonalize against accepted eigenvectors (two passes)
        for _ in 0..2 {
            for (_, u) in &out {
                let c = u.inner(&v)?;
                v = &v - &u.scale_right(c);
            }
        }
        let norm = v.norm();
        if norm > 0.3 {
            out.push((lambda, v.scale(1.0 / norm)));
        }
    }
    if out.len() != d {
        return Err(Error::Numeric(format!(
            "recovered {} of {d} quaternionic eigenvectors",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{random_frame, QuadPoint};
    use crate::random::{random_unit_vector, random_unitary_with};

    fn parseval_frame(d: usize) -> QuadFrame {
        let vectors = (0..d).map(|k| QVector::basis(d, k)).collect();
        QuadFrame::build(vec![QuadPoint::new(Quaternion::ZERO, 1.0, vectors).unwrap()]).unwrap()
    }

    fn diag21_frame() -> QuadFrame {
        let mk = |k: usize, re: f64| {
            QuadPoint::new(Quaternion::from_real(re), 1.0, vec![QVector::basis(2, k)]).unwrap()
        };
        QuadFrame::build(vec![mk(0, 0.0), mk(0, 1.0), mk(1, 2.0)]).unwrap()
    }

    /// Fresh random vectors over the same nodes and weights as `f`.
    fn reseeded_vectors(f: &QuadFrame, seed: u64) -> QuadFrame {
        let mut rng = rng_from_seed(seed);
        f.map_points_with(|_, p| {
            Ok((0..p.rank_n())
                .map(|_| crate::random::random_vector_with(&mut rng, p.dim()))
                .collect())
        })
        .unwrap()
    }

    #[test]
    fn analysis_examples() {
        let f = parseval_frame(2);
        let phi = QVector::basis(2, 0);
        let field = analysis_apply(&f, &phi).unwrap();
        assert_eq!(field.get(0, 0), Quaternion::ONE);
        assert_eq!(field.get(0, 1), Quaternion::ZERO);

        let f = diag21_frame();
        let field = analysis_apply(&f, &phi).unwrap();
        assert_eq!(field.get(0, 0), Quaternion::ONE);
        assert_eq!(field.get(1, 0), Quaternion::ONE);
        assert_eq!(field.get(2, 0), Quaternion::ZERO);

        let zero = analysis_apply(&f, &QVector::zeros(2)).unwrap();
        assert!(zero.max_abs() == 0.0);
    }

    #[test]
    fn analysis_is_right_linear() {
        let f = random_frame(3, 2, 5, 1).unwrap();
        let phi = random_unit_vector(3, 2);
        let psi = random_unit_vector(3, 3);
        let a = Quaternion::new(0.2, -1.0, 0.5, 0.7);
        let b = Quaternion::new(1.0, 0.1, -0.3, 0.0);
        let lhs = analysis_apply(&f, &(&phi.scale_right(a) + &psi.scale_right(b))).unwrap();
        let rhs = analysis_apply(&f, &phi)
            .unwrap()
            .scale_right(a)
            .plus(&analysis_apply(&f, &psi).unwrap().scale_right(b));
        assert!(lhs.max_dev(&rhs) <= 1e-11);
    }

    #[test]
    fn pullback_round_trip() {
        let f = random_frame(3, 2, 5, 4).unwrap();
        let phi = random_unit_vector(3, 5);
        let field = analysis_apply(&f, &phi).unwrap();
        let back = pullback(&f, &field).unwrap();
        assert!(back.max_dev(&phi) <= 1e-9);

        let zero = SampleField::zeros(f.num_points(), f.rank_n());
        assert!(pullback(&f, &zero).unwrap().norm() <= 1e-12);

        let q = Quaternion::new(0.3, 1.0, -0.2, 0.6);
        let scaled = pullback(&f, &field.scale_right(q)).unwrap();
        assert!(scaled.max_dev(&phi.scale_right(q)) <= 1e-9);

        // off-range fields are rejected
        let mut off = field.clone();
        off.set(0, 0, off.get(0, 0) + Quaternion::from_real(10.0));
        assert!(matches!(pullback(&f, &off), Err(Error::OffRange { .. })));
    }

    #[test]
    fn rkhs_inner_isometry() {
        let f = random_frame(3, 2, 5, 6).unwrap();
        let phi = random_unit_vector(3, 7);
        let field = analysis_apply(&f, &phi).unwrap();
        let norm = rkhs_inner(&f, &field, &field).unwrap();
        assert!((norm.re() - 1.0).abs() <= 1e-9 && norm.im_norm() <= 1e-10);

        // right linearity in the second slot
        let psi = random_unit_vector(3, 8);
        let other = analysis_apply(&f, &psi).unwrap();
        let q = Quaternion::new(0.0, 0.4, -1.1, 0.3);
        let lhs = rkhs_inner(&f, &field, &other.scale_right(q)).unwrap();
        let rhs = rkhs_inner(&f, &field, &other).unwrap() * q;
        assert!(lhs.approx_eq(rhs, 1e-9));

        // orthogonal preimages stay orthogonal
        let e0 = analysis_apply(&f, &QVector::basis(3, 0)).unwrap();
        let e1 = analysis_apply(&f, &QVector::basis(3, 1)).unwrap();
        assert!(rkhs_inner(&f, &e0, &e1).unwrap().norm() <= 1e-9);
    }

    #[test]
    fn analysis_operator_factorizes_frame_op() {
        for seed in 0..5 {
            let f = random_frame(3, 2, 4 + seed as usize, 100 + seed).unwrap();
            let w = AnalysisOperator::new(&f);
            let a = w.matrix().adjoint().matmul(w.matrix()).unwrap();
            assert!(a.max_dev(f.frame_operator()) <= 1e-8);
            // injectivity through the lower bound: ||W phi||^2 >= m ||phi||^2
            let phi = random_unit_vector(3, 200 + seed);
            let img = w.matrix().apply(&phi).unwrap();
            assert!(img.norm_sqr() >= f.bounds().0 - 1e-9);
        }
    }

    #[test]
    fn kernel_examples() {
        // Parseval single node: K(q0, q0) = I
        let f = parseval_frame(2);
        let k = FrameKernel::compute(&f).unwrap();
        assert!(k.block(0, 0).approx_eq(&QMatrix::identity(2), 1e-12));

        // diag(2,1) frame: between the two e1 nodes the block is 1/2
        let f = diag21_frame();
        let k = FrameKernel::compute(&f).unwrap();
        assert!(k
            .block(0, 1)
            .approx_eq(&QMatrix::diag_real(&[0.5]), 1e-10));
        // symmetry across the diagonal
        for p in 0..3 {
            for q in 0..3 {
                assert!(k.block(p, q).max_dev(&k.block(q, p).adjoint()) <= 1e-12);
            }
        }
    }

    #[test]
    fn evaluate_reproduces_field_values() {
        let f = random_frame(3, 2, 4, 9).unwrap();
        let k = FrameKernel::compute(&f).unwrap();
        let phi = random_unit_vector(3, 10);
        let field = analysis_apply(&f, &phi).unwrap();
        for m in 0..f.num_points() {
            for i in 0..f.rank_n() {
                let v = evaluate(&f, &k, &field, m, i).unwrap();
                assert!(v.max_dev(field.get(m, i)) <= 1e-8);
            }
        }
        let q = Quaternion::new(0.5, -0.5, 0.5, 0.5);
        let scaled = field.scale_right(q);
        let v = evaluate(&f, &k, &scaled, 1, 0).unwrap();
        assert!(v.max_dev(scaled.get(1, 0)) <= 1e-8);
        assert!(evaluate(&f, &k, &field, 99, 0).is_err());
    }

    #[test]
    fn dual_and_unitary_share_kernel() {
        let f = random_frame(3, 2, 4, 11).unwrap();
        let k = FrameKernel::compute(&f).unwrap();
        let kd = FrameKernel::compute(&f.dual().unwrap()).unwrap();
        assert!(kernels_equal(&k, &kd, 1e-8).unwrap());

        let u = crate::random::random_unitary(3, 12).unwrap();
        let ku = FrameKernel::compute(&f.unitary_transform(&u).unwrap()).unwrap();
        assert!(kernels_equal(&k, &ku, 1e-8).unwrap());

        // a global invertible transform never changes the kernel: it is a
        // kernel equivalence with identity gauge
        let f = diag21_frame();
        let k = FrameKernel::compute(&f).unwrap();
        let t = QMatrix::diag_real(&[2.0, 1.0]);
        let kt = FrameKernel::compute(&f.transform(&t).unwrap()).unwrap();
        assert!(kernels_equal(&k, &kt, 1e-8).unwrap());

        // fresh vectors over the same nodes do change it
        let f = random_frame(3, 2, 4, 112).unwrap();
        let k = FrameKernel::compute(&f).unwrap();
        let k2 = FrameKernel::compute(&reseeded_vectors(&f, 113)).unwrap();
        assert!(!kernels_equal(&k, &k2, 1e-8).unwrap());
    }

    #[test]
    fn gauge_kernel_relation() {
        let f = random_frame(3, 2, 4, 13).unwrap();
        let mut rng = rng_from_seed(14);
        let gauges: Vec<QMatrix> = (0..4)
            .map(|_| random_unitary_with(&mut rng, 2).unwrap())
            .collect();
        let g = f.gauge_transform(&gauges).unwrap();
        let k1 = FrameKernel::compute(&f).unwrap();
        let k2 = FrameKernel::compute(&g).unwrap();
        assert!(kernel_gauge_related(&k1, &k2, &gauges, 1e-8).unwrap());

        // identity gauge reduces to equality
        let ids = vec![QMatrix::identity(2); 4];
        assert!(kernel_gauge_related(&k1, &k1, &ids, 1e-8).unwrap());

        // unrelated frames fail
        let h = reseeded_vectors(&f, 15);
        let k3 = FrameKernel::compute(&h).unwrap();
        assert!(!kernel_gauge_related(&k1, &k3, &gauges, 1e-8).unwrap());

        // analysis fields transform as u(q)^dagger
        let phi = random_unit_vector(3, 16);
        let field_f = analysis_apply(&f, &phi).unwrap();
        let field_g = analysis_apply(&g, &phi).unwrap();
        for m in 0..4 {
            let expected = gauges[m].adjoint().apply(&field_f.point_values(m)).unwrap();
            assert!(expected.max_dev(&field_g.point_values(m)) <= 1e-9);
        }
    }

    #[test]
    fn kernel_equivalence_round_trip() {
        let f = random_frame(3, 2, 4, 17).unwrap();
        let mut rng = rng_from_seed(18);
        let gauges: Vec<QMatrix> = (0..4)
            .map(|_| random_unitary_with(&mut rng, 2).unwrap())
            .collect();
        let t0 = crate::random::random_matrix(3, 3, 19);
        let g = f.transform(&t0).unwrap().gauge_transform(&gauges).unwrap();

        let witness = kernel_equivalent(&f, &g).unwrap().expect("equivalent");
        assert!(verify_witness(&f, &g, &witness, tol::EQUIV).unwrap());
        // the reverse construction inverts the witness transform
        let rev = reverse_transform(&f, &g, &witness).unwrap();
        let prod = rev.matmul(&witness.transform).unwrap();
        assert!(prod.max_dev(&QMatrix::identity(3)) <= 1e-7);
    }

    #[test]
    fn dual_is_kernel_equivalent_with_identity_gauge() {
        let f = random_frame(3, 2, 4, 20).unwrap();
        let g = f.dual().unwrap();
        let witness = kernel_equivalent(&f, &g).unwrap().expect("dual equivalent");
        for u in &witness.gauge {
            assert!(u.max_dev(&QMatrix::identity(2)) <= 1e-7);
        }
        let inv = f.frame_operator().inverse().unwrap();
        assert!(witness.transform.max_dev(&inv) <= 1e-6);
    }

    #[test]
    fn unrelated_frames_are_not_equivalent() {
        let f = random_frame(3, 2, 4, 21).unwrap();
        let g = reseeded_vectors(&f, 22);
        assert!(kernel_equivalent(&f, &g).unwrap().is_none());
    }

    #[test]
    fn tight_orbit_examples() {
        let f = random_frame(3, 2, 4, 23).unwrap();
        let id3 = QMatrix::identity(3);
        let ids = vec![QMatrix::identity(2); 4];
        let base = tight_orbit_member(&f, &id3, &ids).unwrap();
        let tight = f.canonical_tight().unwrap();
        for m in 0..4 {
            for i in 0..2 {
                assert!(base
                    .point(m)
                    .unwrap()
                    .vector(i)
                    .max_dev(tight.point(m).unwrap().vector(i)) <= 1e-10);
            }
        }

        let u = crate::random::random_unitary(3, 24).unwrap();
        let member = tight_orbit_member(&f, &u, &ids).unwrap();
        assert!(member
            .frame_operator()
            .max_dev(&QMatrix::identity(3)) <= 1e-8);
        let k = FrameKernel::compute(&f).unwrap();
        let km = FrameKernel::compute(&member).unwrap();
        assert!(kernels_equal(&k, &km, 1e-8).unwrap());

        let mut rng = rng_from_seed(25);
        let gauges: Vec<QMatrix> = (0..4)
            .map(|_| random_unitary_with(&mut rng, 2).unwrap())
            .collect();
        let member = tight_orbit_member(&f, &u, &gauges).unwrap();
        let km = FrameKernel::compute(&member).unwrap();
        assert!(kernel_gauge_related(&k, &km, &gauges, 1e-8).unwrap());
    }

    #[test]
    fn bundle_transform_examples() {
        let f = random_frame(3, 2, 4, 26).unwrap();
        let ids_t = vec![QMatrix::identity(3); 4];
        let ids_u = vec![QMatrix::identity(2); 4];
        let same = bundle_transform(&f, &ids_t, &ids_u).unwrap();
        for m in 0..4 {
            assert!(same
                .point(m)
                .unwrap()
                .vector(0)
                .max_dev(f.point(m).unwrap().vector(0)) <= 1e-12);
        }

        // T(q) = T·P(q) with global invertible T gives kernel equivalence
        let t = crate::random::random_matrix(3, 3, 27);
        let mut rng = rng_from_seed(28);
        let gauges: Vec<QMatrix> = (0..4)
            .map(|_| random_unitary_with(&mut rng, 2).unwrap())
            .collect();
        let point_ops: Vec<QMatrix> = (0..4)
            .map(|m| t.matmul(&point_projector(&f, m).unwrap()).unwrap())
            .collect();
        let g = bundle_transform(&f, &point_ops, &gauges).unwrap();
        let k1 = FrameKernel::compute(&f).unwrap();
        let k2 = FrameKernel::compute(&g).unwrap();
        assert!(kernel_gauge_related(&k1, &k2, &gauges, 1e-8).unwrap());
        assert!(kernel_equivalent(&f, &g).unwrap().is_some());

        // independent per-point operators break the relation in general
        let free_ops: Vec<QMatrix> = (0..4)
            .map(|m| crate::random::random_matrix(3, 3, 300 + m as u64))
            .collect();
        let h = bundle_transform(&f, &free_ops, &ids_u).unwrap();
        let k3 = FrameKernel::compute(&h).unwrap();
        assert!(!kernels_equal(&k1, &k3, 1e-8).unwrap());
    }

    #[test]
    fn point_projector_examples() {
        let f = parseval_frame(2);
        assert!(point_projector(&f, 0)
            .unwrap()
            .approx_eq(&QMatrix::identity(2), 1e-10));

        let p = QuadPoint::new(Quaternion::ZERO, 1.0, vec![QVector::basis(2, 0)]).unwrap();
        let q = QuadPoint::new(Quaternion::ONE, 1.0, vec![QVector::basis(2, 1)]).unwrap();
        let f = QuadFrame::build(vec![p, q]).unwrap();
        assert!(point_projector(&f, 0)
            .unwrap()
            .approx_eq(&QMatrix::diag_real(&[1.0, 0.0]), 1e-12));

        let v = &QVector::basis(2, 0) + &QVector::basis(2, 1);
        let p = QuadPoint::new(Quaternion::ZERO, 1.0, vec![v]).unwrap();
        let q = QuadPoint::new(Quaternion::ONE, 1.0, vec![QVector::basis(2, 1)]).unwrap();
        let f = QuadFrame::build(vec![p, q]).unwrap();
        let half = QMatrix::from_fn(2, 2, |_, _| Quaternion::from_real(0.5));
        let proj = point_projector(&f, 0).unwrap();
        assert!(proj.approx_eq(&half, 1e-12));
        // idempotent self-adjoint, fixes the family
        assert!(proj.matmul(&proj).unwrap().max_dev(&proj) <= 1e-9);
        assert!(proj.max_dev(&proj.adjoint()) <= 1e-9);
    }

    #[test]
    fn unitary_equivalence_decision() {
        let f = random_frame(3, 2, 4, 29).unwrap();
        let u0 = crate::random::random_unitary(3, 30).unwrap();
        let g = f.unitary_transform(&u0).unwrap();
        let u = unitary_equivalent(&f, &g).unwrap().expect("unitary pair");
        assert!(u.max_dev(&u0) <= 1e-7);

        let h = reseeded_vectors(&f, 31);
        assert!(unitary_equivalent(&f, &h).unwrap().is_none());
    }
}

