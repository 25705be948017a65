//! Independent reference computations for extremal Rayleigh quotients.
//!
//! Everything here deliberately avoids the complex embedding and its
//! eigensolvers: only quaternion products, inner products, and operator
//! actions assembled directly from the raw data. Random unit vectors give
//! interior witnesses (every sampled quotient lies between the true
//! extremes); shifted power iteration sharpens the best samples toward the
//! extremes themselves. Test suites compare these numbers against the
//! embedded eigenvalue route.

use crate::error::Result;
use crate::frames::QuadFrame;
use crate::linalg::{QMatrix, QVector};
use crate::random::{random_unit_vector_with, rng_from_seed};

/// Sampled and refined extremal Rayleigh quotients.
#[derive(Clone, Copy, Debug)]
pub struct Extrema {
    /// Smallest quotient over the random samples; an upper witness for the
    /// true minimum.
    pub sampled_min: f64,
    /// Largest quotient over the random samples; a lower witness for the
    /// true maximum.
    pub sampled_max: f64,
    /// Power-iteration refinement of the minimum.
    pub refined_min: f64,
    /// Power-iteration refinement of the maximum.
    pub refined_max: f64,
}

/// Extremal quotients `<A phi|phi>` of a self-adjoint matrix over unit
/// vectors.
pub fn rayleigh_extrema(
    a: &QMatrix,
    samples: usize,
    iters: usize,
    seed: u64,
) -> Result<Extrema> {
    let action = |phi: &QVector| a.apply(phi);
    let quotient = |phi: &QVector| -> Result<f64> { Ok(a.apply(phi)?.inner(phi)?.re()) };
    extrema_impl(a.rows(), a.frobenius_norm(), samples, iters, seed, action, quotient)
}

/// Extremal frame sums `s(phi)` of a frame over unit vectors. The operator
/// action is re-assembled from the per-node rank-one terms, never the
/// cached frame operator.
pub fn frame_sum_extrema(
    frame: &QuadFrame,
    samples: usize,
    iters: usize,
    seed: u64,
) -> Result<Extrema> {
    let action = |phi: &QVector| -> Result<QVector> {
        let mut acc = QVector::zeros(frame.dim());
        for p in frame.points() {
            for v in p.vectors() {
                acc = &acc + &v.scale_right(v.inner(phi)? * p.weight());
            }
        }
        Ok(acc)
    };
    let quotient = |phi: &QVector| frame.sample_sum(phi);
    // trace bound: sum of weighted squared norms dominates every quotient
    let trace: f64 = frame
        .points()
        .iter()
        .map(|p| p.weight() * p.vectors().iter().map(|v| v.norm_sqr()).sum::<f64>())
        .sum();
    extrema_impl(frame.dim(), trace, samples, iters, seed, action, quotient)
}

fn extrema_impl(
    dim: usize,
    norm_bound: f64,
    samples: usize,
    iters: usize,
    seed: u64,
    action: impl Fn(&QVector) -> Result<QVector>,
    quotient: impl Fn(&QVector) -> Result<f64>,
) -> Result<Extrema> {
    let mut rng = rng_from_seed(seed);
    let mut sampled_min = f64::INFINITY;
    let mut sampled_max = f64::NEG_INFINITY;
    let mut best_min = QVector::basis(dim, 0);
    let mut best_max = best_min.clone();
    for _ in 0..samples {
        let phi = random_unit_vector_with(&mut rng, dim);
        let s = quotient(&phi)?;
        if s < sampled_min {
            sampled_min = s;
            best_min = phi.clone();
        }
        if s > sampled_max {
            sampled_max = s;
            best_max = phi;
        }
    }

    // Max: iterate A + c·I with c just past the norm bound, so the largest
    // shifted magnitude is c + max.
    let c_up = norm_bound + 1.0;
    let refined_max = power_refine(&action, &quotient, &best_max, c_up, 1.0, iters)?;
    // Min: iterate c·I − A with c just above the refined maximum, so the
    // dominant magnitude is c − min.
    let c_down = refined_max + 0.05 * (refined_max - sampled_min).abs() + 1e-6 * norm_bound.max(1.0);
    let refined_min = power_refine(&action, &quotient, &best_min, c_down, -1.0, iters)?;
    Ok(Extrema {
        sampled_min,
        sampled_max,
        refined_min: refined_min.min(sampled_min),
        refined_max: refined_max.max(sampled_max),
    })
}

/// Power iteration on `sign·A + c·I`, returning the quotient of the final
/// iterate. Every iterate is a unit vector, so the result is always an
/// attained quotient.
fn power_refine(
    action: &impl Fn(&QVector) -> Result<QVector>,
    quotient: &impl Fn(&QVector) -> Result<f64>,
    start: &QVector,
    shift: f64,
    sign: f64,
    iters: usize,
) -> Result<f64> {
    let mut phi = start.clone();
    for _ in 0..iters {
        let applied = action(&phi)?;
        let next = &applied.scale(sign) + &phi.scale(shift);
        let norm = next.norm();
        if norm == 0.0 {
            break;
        }
        phi = next.scale(1.0 / norm);
    }
    quotient(&phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::random_frame;
    use crate::random::random_positive;

    #[test]
    fn matches_embedded_eigenvalues_small() {
        for seed in 0..5 {
            let n = 1 + (seed as usize % 3);
            let a = random_positive(n, 40 + seed, 0.3);
            let (lo, hi) = a.rayleigh_bounds().unwrap();
            let ex = rayleigh_extrema(&a, 20_000, 4000, 7 + seed).unwrap();
            // sampled values are interior witnesses
            assert!(ex.sampled_min >= lo - 1e-8);
            assert!(ex.sampled_max <= hi + 1e-8);
            // refined values reach the extremes
            assert!((ex.refined_min - lo).abs() <= 1e-4, "min {} vs {}", ex.refined_min, lo);
            assert!((ex.refined_max - hi).abs() <= 1e-4, "max {} vs {}", ex.refined_max, hi);
        }
    }

    #[test]
    fn frame_extrema_bracket_bounds() {
        let frame = random_frame(3, 1, 6, 13).unwrap();
        let (lo, hi) = frame.bounds();
        let ex = frame_sum_extrema(&frame, 20_000, 4000, 99).unwrap();
        assert!(ex.sampled_min >= lo - 1e-8 && ex.sampled_max <= hi + 1e-8);
        assert!((ex.refined_min - lo).abs() <= 1e-3);
        assert!((ex.refined_max - hi).abs() <= 1e-3);
    }
}
