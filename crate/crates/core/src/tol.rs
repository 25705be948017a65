//! Numerical tolerances, grouped so the CLI can override them by name.

use crate::error::{Error, Result};

/// Relative invertibility threshold: smallest over largest singular value.
pub const RANK: f64 = 1e-10;
/// Per-point linear-independence threshold on the Gram spectrum.
pub const LI: f64 = 1e-10;
/// Block-structure tolerance for the inverse complex embedding.
pub const SYM: f64 = 1e-10;
/// Self-adjointness check, max entry of |A - adjoint(A)|.
pub const SELF_ADJOINT: f64 = 1e-10;
/// Unitarity check, max entry of |U adjoint(U) - I| and the transpose pair.
pub const UNITARY: f64 = 1e-10;
/// Sphere deduplication on (a, b).
pub const DEDUP: f64 = 1e-8;
/// Spectral residual: sigma_min of the embedded resolvent vs this times
/// the squared embedding norm.
pub const SPEC_RESIDUAL: f64 = 1e-8;
/// Operator-level equality checks (dual, tight, kernel properties).
pub const OP_EQ: f64 = 1e-8;
/// Field and per-point invariance checks (gauge, sample fields).
pub const FIELD_EQ: f64 = 1e-9;
/// Witness verification for the equivalence theorems.
pub const EQUIV: f64 = 1e-7;
/// Relative residual bound for analysis-range membership.
pub const RANGE_RESIDUAL: f64 = 1e-8;
/// Relative slack factor for the frame inequality (times the upper bound).
pub const BOUNDS_REL: f64 = 1e-9;
/// Tight / self-dual classification.
pub const TIGHT: f64 = 1e-8;

/// Named tolerance set. `default()` carries the values above; the `strict`
/// profile divides each by ten.
#[derive(Clone, Debug)]
pub struct Tol {
    pub rank: f64,
    pub li: f64,
    pub sym: f64,
    pub self_adjoint: f64,
    pub unitary: f64,
    pub dedup: f64,
    pub spec_residual: f64,
    pub op_eq: f64,
    pub field_eq: f64,
    pub equiv: f64,
    pub range_residual: f64,
    pub bounds_rel: f64,
    pub tight: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            rank: RANK,
            li: LI,
            sym: SYM,
            self_adjoint: SELF_ADJOINT,
            unitary: UNITARY,
            dedup: DEDUP,
            spec_residual: SPEC_RESIDUAL,
            op_eq: OP_EQ,
            field_eq: FIELD_EQ,
            equiv: EQUIV,
            range_residual: RANGE_RESIDUAL,
            bounds_rel: BOUNDS_REL,
            tight: TIGHT,
        }
    }
}

impl Tol {
    pub fn strict() -> Self {
        let d = Tol::default();
        Tol {
            rank: d.rank / 10.0,
            li: d.li / 10.0,
            sym: d.sym / 10.0,
            self_adjoint: d.self_adjoint / 10.0,
            unitary: d.unitary / 10.0,
            dedup: d.dedup / 10.0,
            spec_residual: d.spec_residual / 10.0,
            op_eq: d.op_eq / 10.0,
            field_eq: d.field_eq / 10.0,
            equiv: d.equiv / 10.0,
            range_residual: d.range_residual / 10.0,
            bounds_rel: d.bounds_rel / 10.0,
            tight: d.tight / 10.0,
        }
    }

    /// Profile lookup for the `QFRAME_TOL_PROFILE` environment variable.
    pub fn from_profile(name: &str) -> Result<Self> {
        match name {
            "default" => Ok(Tol::default()),
            "strict" => Ok(Tol::strict()),
            other => Err(Error::Validation(format!(
                "unknown tolerance profile '{other}' (expected 'strict' or 'default')"
            ))),
        }
    }

    /// Overrides one tolerance by name, the `--tol name=value` hook.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value > 0.0) {
            return Err(Error::Validation(format!(
                "tolerance '{name}' must be positive, got {value}"
            )));
        }
        match name {
            "rank" => self.rank = value,
            "li" => self.li = value,
            "sym" => self.sym = value,
            "self_adjoint" => self.self_adjoint = value,
            "unitary" => self.unitary = value,
            "dedup" => self.dedup = value,
            "spec_residual" => self.spec_residual = value,
            "op_eq" => self.op_eq = value,
            "field_eq" => self.field_eq = value,
            "equiv" => self.equiv = value,
            "range_residual" => self.range_residual = value,
            "bounds_rel" => self.bounds_rel = value,
            "tight" => self.tight = value,
            other => {
                return Err(Error::Validation(format!("unknown tolerance '{other}'")));
            }
        }
        Ok(())
    }

    /// Name/value pairs in a fixed order, used by reports.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("rank", self.rank),
            ("li", self.li),
            ("sym", self.sym),
            ("self_adjoint", self.self_adjoint),
            ("unitary", self.unitary),
            ("dedup", self.dedup),
            ("spec_residual", self.spec_residual),
            ("op_eq", self.op_eq),
            ("field_eq", self.field_eq),
            ("equiv", self.equiv),
            ("range_residual", self.range_residual),
            ("bounds_rel", self.bounds_rel),
            ("tight", self.tight),
        ]
    }
}
