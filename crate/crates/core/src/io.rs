//! File formats and canonical serialization.
//!
//! All formats are versioned JSON with quaternions as 4-element real
//! arrays. Serialization is canonical: field order is fixed by the struct
//! declarations and floats render through the shortest round-trip form, so
//! equal values always produce byte-identical files and `save ∘ load ∘ save`
//! is the identity on bytes.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{QuadFrame, QuadPoint};
use crate::linalg::{QMatrix, QVector};
use crate::quat::Quaternion;

pub const FORMAT_VERSION: u32 = 1;

/// On-disk frame: dimensions plus one record per quadrature node.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameFile {
    pub version: u32,
    pub d: usize,
    pub n: usize,
    pub points: Vec<PointRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRecord {
    pub q: Quaternion,
    pub w: f64,
    pub vectors: Vec<Vec<Quaternion>>,
}

/// On-disk matrix, row-major nested arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub version: u32,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Quaternion>>,
}

/// On-disk gauge: one n-by-n matrix per quadrature node.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaugeFile {
    pub version: u32,
    pub n: usize,
    pub matrices: Vec<Vec<Vec<Quaternion>>>,
}

/// On-disk kernel: one n-by-n block per ordered node pair, row-major in
/// `(p, q)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelFile {
    pub version: u32,
    pub n: usize,
    pub points: usize,
    pub reproducing_residual: f64,
    pub blocks: Vec<Vec<Vec<Quaternion>>>,
}

fn check_version(version: u32) -> Result<()> {
    if version != FORMAT_VERSION {
        return Err(Error::Validation(format!(
            "unsupported format version {version}, expected {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

fn parse_err(path: &Path, e: serde_json::Error) -> Error {
    Error::Parse(format!(
        "{}: line {}, column {}: {e}",
        path.display(),
        e.line(),
        e.column()
    ))
}

fn canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

impl FrameFile {
    pub fn from_frame(frame: &QuadFrame) -> Self {
        FrameFile {
            version: FORMAT_VERSION,
            d: frame.dim(),
            n: frame.rank_n(),
            points: frame
                .points()
                .iter()
                .map(|p| PointRecord {
                    q: p.location(),
                    w: p.weight(),
                    vectors: p
                        .vectors()
                        .iter()
                        .map(|v| v.iter().copied().collect())
                        .collect(),
                })
                .collect(),
        }
    }

    /// Validates the records through the frame constructor.
    pub fn into_frame(self) -> Result<QuadFrame> {
        check_version(self.version)?;
        let mut points = Vec::with_capacity(self.points.len());
        for (m, rec) in self.points.into_iter().enumerate() {
            if rec.vectors.len() != self.n {
                return Err(Error::Validation(format!(
                    "point {m} carries {} vector families, expected n = {}",
                    rec.vectors.len(),
                    self.n
                )));
            }
            let mut vectors = Vec::with_capacity(self.n);
            for entries in rec.vectors {
                if entries.len() != self.d {
                    return Err(Error::Validation(format!(
                        "point {m} has a vector of length {}, expected d = {}",
                        entries.len(),
                        self.d
                    )));
                }
                vectors.push(QVector::new(entries)?);
            }
            points.push(QuadPoint::new(rec.q, rec.w, vectors)?);
        }
        QuadFrame::build(points)
    }
}

impl MatrixFile {
    pub fn from_matrix(m: &QMatrix) -> Self {
        MatrixFile {
            version: FORMAT_VERSION,
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.entry(i, j)).collect())
                .collect(),
        }
    }

    pub fn into_matrix(self) -> Result<QMatrix> {
        check_version(self.version)?;
        if self.entries.len() != self.rows
            || self.entries.iter().any(|row| row.len() != self.cols)
        {
            return Err(Error::Validation(format!(
                "entry grid does not match declared shape {}x{}",
                self.rows, self.cols
            )));
        }
        QMatrix::new(
            self.rows,
            self.cols,
            self.entries.into_iter().flatten().collect(),
        )
    }
}

impl GaugeFile {
    pub fn from_gauges(gauges: &[QMatrix]) -> Result<Self> {
        let n = gauges
            .first()
            .map(|g| g.rows())
            .ok_or_else(|| Error::Validation("empty gauge list".into()))?;
        Ok(GaugeFile {
            version: FORMAT_VERSION,
            n,
            matrices: gauges
                .iter()
                .map(|g| {
                    (0..g.rows())
                        .map(|i| (0..g.cols()).map(|j| g.entry(i, j)).collect())
                        .collect()
                })
                .collect(),
        })
    }

    pub fn into_gauges(self) -> Result<Vec<QMatrix>> {
        check_version(self.version)?;
        self.matrices
            .into_iter()
            .enumerate()
            .map(|(k, rows)| {
                if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
                    return Err(Error::Validation(format!(
                        "gauge matrix {k} is not {n}x{n}",
                        n = self.n
                    )));
                }
                QMatrix::new(self.n, self.n, rows.into_iter().flatten().collect())
            })
            .collect()
    }
}

impl KernelFile {
    pub fn from_kernel(kernel: &crate::kernels::FrameKernel) -> Self {
        let n = kernel.n();
        let points = kernel.num_points();
        let mut blocks = Vec::with_capacity(points * points);
        for p in 0..points {
            for q in 0..points {
                let b = kernel.block(p, q);
                blocks.push(
                    (0..n)
                        .map(|i| (0..n).map(|j| b.entry(i, j)).collect())
                        .collect(),
                );
            }
        }
        KernelFile {
            version: FORMAT_VERSION,
            n,
            points,
            reproducing_residual: kernel.reproducing_residual(),
            blocks,
        }
    }
}

fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, e))
}

pub fn load_frame(path: impl AsRef<Path>) -> Result<QuadFrame> {
    load_json::<FrameFile>(path.as_ref())?.into_frame()
}

pub fn save_frame(frame: &QuadFrame, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, canonical_json(&FrameFile::from_frame(frame)))?;
    Ok(())
}

pub fn frame_to_string(frame: &QuadFrame) -> String {
    canonical_json(&FrameFile::from_frame(frame))
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<QMatrix> {
    load_json::<MatrixFile>(path.as_ref())?.into_matrix()
}

pub fn save_matrix(m: &QMatrix, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, canonical_json(&MatrixFile::from_matrix(m)))?;
    Ok(())
}

pub fn load_gauge(path: impl AsRef<Path>) -> Result<Vec<QMatrix>> {
    load_json::<GaugeFile>(path.as_ref())?.into_gauges()
}

pub fn save_gauge(gauges: &[QMatrix], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, canonical_json(&GaugeFile::from_gauges(gauges)?))?;
    Ok(())
}

pub fn save_kernel(kernel: &crate::kernels::FrameKernel, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, canonical_json(&KernelFile::from_kernel(kernel)))?;
    Ok(())
}
