//! Quaternionic linear algebra, S-spectra, and rank-n continuous frames on
//! right quaternionic Hilbert spaces.
//!
//! The crate is organized around four layers:
//!
//! * [`quat`] — quaternion scalars and similarity spheres;
//! * [`linalg`] — right quaternionic vectors and matrices, the complex
//!   embedding, and the S-spectrum calculus;
//! * [`frames`] — rank-n continuous frames over finite weighted point sets:
//!   frame operators, bounds, duals, tight frames, and gauge freedom;
//! * [`kernels`] — the analysis operator, frame reproducing kernels, and
//!   decision procedures for the kernel/gauge/unitary/bundle equivalences.
//!
//! [`io`], [`report`], and [`verify`] provide the file formats, deterministic
//! reports, and the invariant battery behind the `qframes` command-line tool.

pub mod error;
pub mod frames;
pub mod io;
pub mod kernels;
pub mod linalg;
pub mod oracle;
pub mod quat;
pub mod random;
pub mod report;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use frames::{DiscreteFrame, QuadFrame, QuadPoint};
pub use kernels::FrameKernel;
pub use linalg::{QMatrix, QVector, SSpectrum};
pub use quat::{Quaternion, SphereRep};
pub use tol::Tol;
