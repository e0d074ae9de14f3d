//! Shift, shrink and rotate: `z = M * (shrink * (x - o))`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{arg, Error, Result};
use crate::rng::RngState;

/// A square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Data(format!("matrix with {dim} rows is not square")));
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn mul_vec_into(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.mul_vec_into(v, &mut out);
        out
    }

    /// `max |(M^T M - I)_{ij}|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.dim)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformSpec {
    pub shift: Vec<f64>,
    pub rotation: Matrix,
    pub bias: f64,
    pub shrink: f64,
}

impl TransformSpec {
    pub fn identity(dim: usize) -> Self {
        Self {
            shift: vec![0.0; dim],
            rotation: Matrix::identity(dim),
            bias: 0.0,
            shrink: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.rotation.dim() != self.shift.len() {
            return Err(Error::Data(format!(
                "rotation is {0}x{0} but shift has {1} entries",
                self.rotation.dim(),
                self.shift.len()
            )));
        }
        let defect = self.rotation.orthogonality_defect();
        if !(defect < tol) {
            return Err(Error::Data(format!(
                "rotation matrix is not orthogonal (defect {defect:e} >= {tol:e})"
            )));
        }
        Ok(())
    }

    /// Writes `z` for `x` into `out`, using `scratch` for the shifted point.
    pub(crate) fn apply_into(&self, x: &[f64], scratch: &mut [f64], out: &mut [f64]) {
        for ((s, xi), oi) in scratch.iter_mut().zip(x).zip(&self.shift) {
            *s = self.shrink * (xi - oi);
        }
        self.rotation.mul_vec_into(scratch, out);
    }
}

pub fn apply_transform(spec: &TransformSpec, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != spec.dim() {
        return arg(format!(
            "point has {} coordinates, transform expects {}",
            x.len(),
            spec.dim()
        ));
    }
    let mut scratch = vec![0.0; x.len()];
    let mut out = vec![0.0; x.len()];
    spec.apply_into(x, &mut scratch, &mut out);
    Ok(out)
}

/// Haar-distributed orthogonal matrix: Gram-Schmidt on a Gaussian matrix.
///
/// Columns are orthonormalised twice (CGS2), which keeps the defect at the
/// level of rounding error. The implied R factor has a positive diagonal,
/// so no further sign correction is needed.
pub fn random_orthogonal(rng: &mut RngState, dim: usize) -> Matrix {
    let mut cols: Vec<Vec<f64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.normal(0.0, 1.0).unwrap()).collect())
        .collect();
    for j in 0..dim {
        for _pass in 0..2 {
            for k in 0..j {
                let dot: f64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a * b).sum();
                let (head, tail) = cols.split_at_mut(j);
                for (a, b) in tail[0].iter_mut().zip(&head[k]) {
                    *a -= dot * b;
                }
            }
        }
        let norm = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in cols[j].iter_mut() {
            *v /= norm;
        }
    }
    let mut data = vec![0.0; dim * dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            data[i * dim + j] = *v;
        }
    }
    Matrix { dim, data }
}

const LOAD_ORTHOGONALITY_TOL: f64 = 1e-6;

/// Loads shift, rotation and optional bias from a plain-text transform file.
///
/// Layout: line 1 holds `D`, line 2 the `D` shift values, the next `D` lines
/// the rotation rows, and an optional final line the bias. Blank lines are
/// ignored.
pub fn load_transform_data(path: &Path, dim: usize) -> Result<TransformSpec> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_transform_data(&text, dim).map_err(|e| match e {
        Error::Data(msg) => Error::Data(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_transform_data(text: &str, dim: usize) -> Result<TransformSpec> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let numbers = |line: &str, lineno: usize| -> Result<Vec<f64>> {
        line.split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::Data(format!("line {lineno}: cannot parse '{tok}'")))
            })
            .collect()
    };
    let header = lines
        .first()
        .ok_or_else(|| Error::Data("empty transform file".into()))?;
    let declared: usize = header
        .parse()
        .map_err(|_| Error::Data(format!("line 1: expected dimension, got '{header}'")))?;
    if declared != dim {
        return Err(Error::Data(format!(
            "file declares D={declared}, expected D={dim}"
        )));
    }
    if lines.len() < dim + 2 || lines.len() > dim + 3 {
        return Err(Error::Data(format!(
            "expected {} or {} non-empty lines for D={dim}, found {}",
            dim + 2,
            dim + 3,
            lines.len()
        )));
    }
    let shift = numbers(lines[1], 2)?;
    if shift.len() != dim {
        return Err(Error::Data(format!(
            "line 2: expected {dim} shift values, found {}",
            shift.len()
        )));
    }
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let row = numbers(lines[2 + i], 3 + i)?;
        if row.len() != dim {
            return Err(Error::Data(format!(
                "line {}: expected {dim} rotation entries, found {}",
                3 + i,
                row.len()
            )));
        }
        rows.push(row);
    }
    let bias = match lines.get(dim + 2) {
        Some(line) => {
            let v = numbers(line, dim + 3)?;
            if v.len() != 1 {
                return Err(Error::Data(format!("line {}: expected a single bias", dim + 3)));
            }
            v[0]
        }
        None => 0.0,
    };
    let spec = TransformSpec {
        shift,
        rotation: Matrix::from_rows(rows)?,
        bias,
        shrink: 1.0,
    };
    spec.validate(LOAD_ORTHOGONALITY_TOL)?;
    Ok(spec)
}

pub fn format_transform_data(spec: &TransformSpec) -> String {
    let d = spec.dim();
    let mut out = String::new();
    let join = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "{d}");
    let _ = writeln!(out, "{}", join(&spec.shift));
    for i in 0..d {
        let _ = writeln!(out, "{}", join(spec.rotation.row(i)));
    }
    let _ = writeln!(out, "{:?}", spec.bias);
    out
}

pub fn write_transform_data(path: &Path, spec: &TransformSpec) -> Result<()> {
    fs::write(path, format_transform_data(spec)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seed_rng;

    #[test]
    fn identity_transform_is_noop() {
        let spec = TransformSpec::identity(3);
        assert_eq!(apply_transform(&spec, &[1.0, -2.0, 3.0]).unwrap(), vec![1.0, -2.0, 3.0]);
    }

    #[test]
    fn shift_point_maps_to_origin() {
        let mut rng = seed_rng(4);
        let spec = TransformSpec {
            shift: vec![3.0, -1.5, 7.25],
            rotation: random_orthogonal(&mut rng, 3),
            bias: 300.0,
            shrink: 0.05,
        };
        let z = apply_transform(&spec, &[3.0, -1.5, 7.25]).unwrap();
        assert!(z.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn quarter_turn() {
        let spec = TransformSpec {
            shift: vec![0.0; 2],
            rotation: Matrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap(),
            bias: 0.0,
            shrink: 1.0,
        };
        assert_eq!(apply_transform(&spec, &[1.0, 0.0]).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn dimension_mismatch() {
        let spec = TransformSpec::identity(3);
        assert!(matches!(apply_transform(&spec, &[1.0]), Err(Error::Argument(_))));
    }

    #[test]
    fn random_orthogonal_properties() {
        let mut rng = seed_rng(10);
        let m1 = random_orthogonal(&mut rng, 1);
        assert!((m1.get(0, 0).abs() - 1.0).abs() < 1e-15);
        let m = random_orthogonal(&mut rng, 50);
        assert!(m.orthogonality_defect() < 1e-10);
        let x: Vec<f64> = (0..50).map(|_| rng.normal(0.0, 3.0).unwrap()).collect();
        let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let nmx = m.mul_vec(&x).iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((nx - nmx).abs() < 1e-10);
    }

    #[test]
    fn parse_identity_file() {
        let text = "2\n0.5 -1\n1 0\n0 1\n";
        let spec = parse_transform_data(text, 2).unwrap();
        assert_eq!(spec.shift, vec![0.5, -1.0]);
        assert!(spec.rotation.is_identity());
        assert_eq!(spec.bias, 0.0);
    }

    #[test]
    fn parse_rejects_bad_files() {
        assert!(matches!(parse_transform_data("2\n0 0\n1 0\n", 2), Err(Error::Data(_))));
        assert!(matches!(parse_transform_data("3\n0 0 0\n", 2), Err(Error::Data(_))));
        assert!(matches!(
            parse_transform_data("2\n0 0\n1 0\n0 2\n", 2),
            Err(Error::Data(_))
        ));
        assert!(matches!(parse_transform_data("2\n0 x\n1 0\n0 1\n", 2), Err(Error::Data(_))));
    }

    #[test]
    fn file_round_trip() {
        let mut rng = seed_rng(2);
        let spec = TransformSpec {
            shift: (0..6).map(|_| rng.uniform_in(-80.0, 80.0)).collect(),
            rotation: random_orthogonal(&mut rng, 6),
            bias: 1100.0,
            shrink: 1.0,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.txt");
        write_transform_data(&path, &spec).unwrap();
        let back = load_transform_data(&path, 6).unwrap();
        for (a, b) in spec.shift.iter().zip(&back.shift) {
            assert!((a - b).abs() < 1e-12);
        }
        for i in 0..6 {
            for j in 0..6 {
                assert!((spec.rotation.get(i, j) - back.rotation.get(i, j)).abs() < 1e-12);
            }
        }
        assert_eq!(spec.bias, back.bias);
        assert!(matches!(
            load_transform_data(&dir.path().join("missing"), 6),
            Err(Error::Io { .. })
        ));
    }
}
