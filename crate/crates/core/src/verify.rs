//! Invariant battery: runs every module-level law against one frame and
//! reports per-check residuals next to the tolerances in force.

use crate::error::{Error, Result};
use crate::frames::{recover_gauge, QuadFrame};
use crate::kernels::{
    analysis_apply, evaluate, field_norm_sqr, kernel_gauge_related, kernels_equal, pullback,
    rkhs_inner, AnalysisOperator, FrameKernel,
};
use crate::linalg::QMatrix;
use crate::random::{random_unit_vector_with, random_unitary_with, rng_from_seed};
use crate::report::Report;
use crate::tol::Tol;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub note: Option<String>,
}

impl Check {
    fn measured(name: &'static str, residual: f64, tol: f64) -> Self {
        Check {
            name,
            residual,
            tol,
            pass: residual <= tol,
            note: None,
        }
    }

    fn failed(name: &'static str, tol: f64, note: String) -> Self {
        Check {
            name,
            residual: f64::INFINITY,
            tol,
            pass: false,
            note: Some(note),
        }
    }
}

fn run(
    checks: &mut Vec<Check>,
    name: &'static str,
    tol: f64,
    body: impl FnOnce() -> Result<f64>,
) {
    let check = match body() {
        Ok(residual) => Check::measured(name, residual, tol),
        Err(Error::Invariant { residual, tol: t, what }) => Check {
            name,
            residual,
            tol: t,
            pass: false,
            note: Some(what),
        },
        Err(e) => Check::failed(name, tol, e.to_string()),
    };
    checks.push(check);
}

/// Executes the full invariant battery against `frame` and reports each
/// residual. The verdict is `pass` only when every check holds.
pub fn verify_suite(frame: &QuadFrame, seed: u64, tol: &Tol) -> (Report, Vec<Check>, bool) {
    let mut checks: Vec<Check> = Vec::new();
    let mut rng = rng_from_seed(seed);

    // Frame inequality over random unit vectors.
    {
        let (lo, hi) = frame.bounds();
        run(&mut checks, "frame_inequality", tol.bounds_rel * hi, || {
            let report = frame.check_bounds_with(1000, seed, tol.bounds_rel)?;
            let below = (lo - report.min_observed).max(0.0);
            let above = (report.max_observed - hi).max(0.0);
            Ok(below.max(above))
        });
    }

    // A = adjoint(W)·W for the stacked analysis matrix.
    run(&mut checks, "analysis_factorization", tol.op_eq, || {
        let w = AnalysisOperator::new(frame);
        let product = w.matrix().adjoint().matmul(w.matrix())?;
        Ok(product.max_dev(frame.frame_operator()))
    });

    // Dual frame: operator, bounds, involution, width.
    run(&mut checks, "dual_operator", tol.op_eq, || {
        let dual = frame.dual()?;
        let inv = frame.frame_operator().inverse()?;
        Ok(dual.frame_operator().max_dev(&inv))
    });
    run(&mut checks, "dual_bounds", tol.equiv, || {
        let dual = frame.dual()?;
        let (lo, hi) = frame.bounds();
        let (dlo, dhi) = dual.bounds();
        let r1 = ((dlo - 1.0 / hi) / (1.0 / hi)).abs();
        let r2 = ((dhi - 1.0 / lo) / (1.0 / lo)).abs();
        Ok(r1.max(r2))
    });
    run(&mut checks, "dual_involution", tol.field_eq, || {
        let back = frame.dual()?.dual()?;
        let mut worst: f64 = 0.0;
        for m in 0..frame.num_points() {
            for i in 0..frame.rank_n() {
                worst = worst.max(
                    back.point(m)?
                        .vector(i)
                        .max_dev(frame.point(m)?.vector(i)),
                );
            }
        }
        Ok(worst)
    });
    run(&mut checks, "dual_width", tol.field_eq, || {
        Ok((frame.dual()?.width() - frame.width()).abs())
    });

    // Canonical tight frame is self-dual.
    run(&mut checks, "tight_operator", tol.op_eq, || {
        let tight = frame.canonical_tight()?;
        Ok(tight
            .frame_operator()
            .max_dev(&QMatrix::identity(frame.dim())))
    });

    // Gauge freedom: random per-node unitaries leave S(q) and A unchanged,
    // and the gauge is recoverable.
    {
        let gauges: std::result::Result<Vec<QMatrix>, Error> = (0..frame.num_points())
            .map(|_| random_unitary_with(&mut rng, frame.rank_n()))
            .collect();
        match gauges {
            Ok(gauges) => {
                run(&mut checks, "gauge_invariance", tol.field_eq, || {
                    let g = frame.gauge_transform(&gauges)?;
                    let mut worst = g.frame_operator().max_dev(frame.frame_operator());
                    for m in 0..frame.num_points() {
                        worst = worst
                            .max(g.point_operator(m)?.max_dev(&frame.point_operator(m)?));
                    }
                    Ok(worst)
                });
                run(&mut checks, "gauge_recovery", tol.op_eq, || {
                    let g = frame.gauge_transform(&gauges)?;
                    let recovered = recover_gauge(frame, &g)?;
                    let mut worst: f64 = 0.0;
                    for (u, v) in gauges.iter().zip(recovered.iter()) {
                        worst = worst.max(u.max_dev(v));
                    }
                    Ok(worst)
                });
            }
            Err(e) => {
                checks.push(Check::failed("gauge_invariance", tol.field_eq, e.to_string()));
            }
        }
    }

    // Kernel properties (a)-(c); the constructor verifies (a) and (b) and
    // the reproducing identity is the reported residual.
    run(&mut checks, "kernel_reproducing", tol.op_eq, || {
        Ok(FrameKernel::compute(frame)?.reproducing_residual())
    });

    // Dual frame shares the kernel.
    run(&mut checks, "dual_kernel_equal", tol.op_eq, || {
        let k = FrameKernel::compute(frame)?;
        let kd = FrameKernel::compute(&frame.dual()?)?;
        Ok(k.max_dev(&kd)?)
    });

    // Analysis isometry and the evaluation identity.
    {
        let phi = random_unit_vector_with(&mut rng, frame.dim());
        run(&mut checks, "analysis_isometry", tol.field_eq, || {
            let field = analysis_apply(frame, &phi)?;
            let norm = rkhs_inner(frame, &field, &field)?;
            Ok((norm.re() - phi.norm_sqr()).abs().max(norm.im_norm()))
        });
        run(&mut checks, "pullback_round_trip", tol.field_eq, || {
            let field = analysis_apply(frame, &phi)?;
            Ok(pullback(frame, &field)?.max_dev(&phi))
        });
        run(&mut checks, "evaluation_identity", tol.op_eq, || {
            let kernel = FrameKernel::compute(frame)?;
            let field = analysis_apply(frame, &phi)?;
            let mut worst: f64 = 0.0;
            for m in 0..frame.num_points() {
                for i in 0..frame.rank_n() {
                    let value = evaluate(frame, &kernel, &field, m, i)?;
                    worst = worst.max(value.max_dev(field.get(m, i)));
                }
            }
            Ok(worst)
        });
        run(&mut checks, "ambient_norm_equivalence", tol.field_eq, || {
            // (1/||A||)·||Phi||² <= ||Phi||_eta² <= ||A^{-1}||·||Phi||²
            let field = analysis_apply(frame, &phi)?;
            let ambient = field_norm_sqr(frame, &field)?;
            let eta = rkhs_inner(frame, &field, &field)?.re();
            let upper = frame.frame_operator().inverse()?.op_norm() * ambient;
            let lower = ambient / frame.frame_operator().op_norm();
            Ok((lower - eta).max(eta - upper).max(0.0))
        });
    }

    // Unitary transform: width preserved and the kernel unchanged.
    match random_unitary_with(&mut rng, frame.dim()) {
        Ok(u) => {
            run(&mut checks, "unitary_width", tol.field_eq, || {
                Ok((frame.unitary_transform(&u)?.width() - frame.width()).abs())
            });
            run(&mut checks, "unitary_kernel_equal", tol.op_eq, || {
                let k = FrameKernel::compute(frame)?;
                let ku = FrameKernel::compute(&frame.unitary_transform(&u)?)?;
                Ok(k.max_dev(&ku)?)
            });
        }
        Err(e) => checks.push(Check::failed("unitary_width", tol.field_eq, e.to_string())),
    }

    // Gauge-related kernels satisfy the block relation.
    {
        let mut rng2 = rng_from_seed(seed ^ 0x9e3779b97f4a7c15);
        let gauges: std::result::Result<Vec<QMatrix>, Error> = (0..frame.num_points())
            .map(|_| random_unitary_with(&mut rng2, frame.rank_n()))
            .collect();
        if let Ok(gauges) = gauges {
            run(&mut checks, "gauge_kernel_relation", tol.op_eq, || {
                let k1 = FrameKernel::compute(frame)?;
                let k2 = FrameKernel::compute(&frame.gauge_transform(&gauges)?)?;
                if kernel_gauge_related(&k1, &k2, &gauges, tol.op_eq)? {
                    Ok(0.0)
                } else {
                    Ok(f64::INFINITY)
                }
            });
        }
    }

    // Sanity: a dual kernel comparison through the equality predicate.
    run(&mut checks, "self_kernel_equal", tol.op_eq, || {
        let k = FrameKernel::compute(frame)?;
        if kernels_equal(&k, &k, tol.op_eq)? {
            Ok(0.0)
        } else {
            Ok(f64::INFINITY)
        }
    });

    let all_pass = checks.iter().all(|c| c.pass);
    let mut report = Report::new("verify");
    report.push_int("frame.d", frame.dim() as i64);
    report.push_int("frame.n", frame.rank_n() as i64);
    report.push_int("frame.points", frame.num_points() as i64);
    let (lo, hi) = frame.bounds();
    report.push_float("metric.m", lo);
    report.push_float("metric.M", hi);
    report.push_float("metric.width", frame.width());
    report.push_tolerances(tol);
    for c in &checks {
        report.push_float(format!("check.{}.residual", c.name), c.residual);
        report.push_float(format!("check.{}.tol", c.name), c.tol);
        if let Some(note) = &c.note {
            report.push_text(format!("check.{}.note", c.name), note.clone());
        }
        report.push_text(
            format!("check.{}", c.name),
            if c.pass { "pass" } else { "fail" },
        );
    }
    report.push_text("verdict", if all_pass { "pass" } else { "fail" });
    (report, checks, all_pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::random_frame;

    #[test]
    fn battery_passes_on_random_frame() {
        let frame = random_frame(3, 2, 6, 9).unwrap();
        let (report, checks, pass) = verify_suite(&frame, 42, &Tol::default());
        assert!(pass, "failed checks: {:?}", checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        let text = report.render();
        assert!(text.contains("check.frame_inequality = pass"));
        assert!(text.contains("verdict = pass"));
    }

    #[test]
    fn battery_is_deterministic() {
        let frame = random_frame(2, 1, 4, 3).unwrap();
        let (r1, _, _) = verify_suite(&frame, 7, &Tol::default());
        let (r2, _, _) = verify_suite(&frame, 7, &Tol::default());
        assert_eq!(r1.render(), r2.render());
    }
}
