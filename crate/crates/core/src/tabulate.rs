//! Exact tabulation of basis functions at points, dof-matrix export, and the
//! file formats shared with downstream consumers. Rationals are written as
//! `"p/q"` strings everywhere.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{FeecError, Result};
use crate::form::combos;
use crate::geometry::{CellKind, RefCell};
use crate::linalg::det;
use crate::rational::Rational;
use crate::space::PolySpace;
use crate::verify::{canonical_space, cell_dofs};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub cell: String,
    pub s: usize,
    pub k: i64,
    pub basis_ordering: String,
    pub component_ordering: Vec<String>,
    pub dof_ordering: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub basis_index: usize,
    pub point: Vec<Rational>,
    pub values: Vec<Rational>,
}

/// A point rejected because it lies outside the reference cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointError {
    pub point_index: usize,
    pub point: Vec<Rational>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabulationFile {
    pub header: Header,
    /// Point-major, then basis index.
    pub rows: Vec<Row>,
    #[serde(default)]
    pub errors: Vec<PointError>,
}

/// Names of the raw form components, e.g. `dx1^dx3`.
pub fn component_names(s: usize) -> Vec<String> {
    if s == 0 {
        return vec!["1".into()];
    }
    combos(4, s).iter().map(|c| c.iter().map(|i| format!("dx{}", i + 1)).collect::<Vec<_>>().join("^")).collect()
}

/// Description of the canonical basis order.
pub fn basis_ordering(cell: CellKind, s: usize) -> String {
    match (cell, s) {
        (CellKind::Pentatope, 0) => {
            "Bernstein products of barycentrics, exponents over compositions with the first entry descending".into()
        }
        (CellKind::TetPrism, 0) => "segment barycentric powers (outer, nu1^k first) times tetrahedral barycentric powers (inner)".into(),
        (CellKind::Pentatope, 4) => "monomials by total degree then lexicographic exponent".into(),
        (CellKind::Pentatope, _) => "full polynomial forms, then Koszul images of homogeneous forms, both monomial-ordered".into(),
        (CellKind::TetPrism, _) => "tensor factors in assembly order: segment factor outer, tetrahedral factor inner".into(),
    }
}

pub const DOF_ORDERING: &str = "boundary entities in lattice order (vertex, edge, triangle, quad, tet, prism facet), then interior groups";

fn header(cell: CellKind, s: usize, k: i64) -> Header {
    Header {
        cell: cell.name().into(),
        s,
        k,
        basis_ordering: basis_ordering(cell, s),
        component_ordering: component_names(s),
        dof_ordering: DOF_ORDERING.into(),
    }
}

fn validate(cell: CellKind, s: usize, k: i64) -> Result<()> {
    if k < 1 || s > 4 {
        return Err(FeecError::InvalidArgument(format!("need k >= 1 and s <= 4, got k={k} s={s}")));
    }
    let _ = cell;
    Ok(())
}

fn tabulate_space(sp: &PolySpace, cell: CellKind, s: usize, k: i64, points: &[Vec<Rational>]) -> TabulationFile {
    let rc = RefCell::new(cell);
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (pi, p) in points.iter().enumerate() {
        if p.len() != 4 || !rc.contains_point(p) {
            let message = if p.len() != 4 {
                format!("expected 4 coordinates, got {}", p.len())
            } else {
                FeecError::OutsideCell(p.iter().map(Rational::to_pq).collect::<Vec<_>>().join(",")).to_string()
            };
            errors.push(PointError { point_index: pi, point: p.clone(), message });
            continue;
        }
        for (bi, b) in sp.basis().iter().enumerate() {
            rows.push(Row { basis_index: bi, point: p.clone(), values: b.comps().iter().map(|c| c.eval(p)).collect() });
        }
    }
    TabulationFile { header: header(cell, s, k), rows, errors }
}

/// Evaluates every canonical basis member at every point. Points outside
/// the cell become error records.
pub fn tabulate(cell: CellKind, s: usize, k: i64, points: &[Vec<Rational>]) -> Result<TabulationFile> {
    validate(cell, s, k)?;
    Ok(tabulate_space(&canonical_space(cell, k, s)?, cell, s, k, points))
}

/// Re-evaluates a tabulation at its own points and compares exactly.
pub fn reproduces(file: &TabulationFile) -> Result<bool> {
    let cell: CellKind = file.header.cell.parse()?;
    let mut points: Vec<Vec<Rational>> = Vec::new();
    for r in &file.rows {
        if points.last() != Some(&r.point) {
            points.push(r.point.clone());
        }
    }
    let mut again = tabulate(cell, file.header.s, file.header.k, &points)?;
    again.errors = file.errors.clone();
    Ok(&again == file)
}

impl TabulationFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tabulation serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FeecError::Parse(e.to_string()))
    }

    /// One header line: `basis_index,x1,x2,x3,x4,<components>`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("basis_index,x1,x2,x3,x4");
        for c in &self.header.component_ordering {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> =
                std::iter::once(r.basis_index.to_string()).chain(r.point.iter().chain(&r.values).map(Rational::to_pq)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the CSV rendering back into rows; the header metadata is
    /// supplied by the caller.
    pub fn rows_from_csv(text: &str) -> Result<Vec<Row>> {
        let mut lines = text.lines();
        let head = lines.next().ok_or_else(|| FeecError::Parse("empty CSV".into()))?;
        let ncomp = head.split(',').count().checked_sub(5).ok_or_else(|| FeecError::Parse("short CSV header".into()))?;
        lines
            .filter(|l| !l.is_empty())
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                if f.len() != 5 + ncomp {
                    return Err(FeecError::Parse(format!("expected {} fields: {l}", 5 + ncomp)));
                }
                let basis_index = f[0].parse().map_err(|_| FeecError::Parse(format!("bad index {:?}", f[0])))?;
                let nums: Vec<Rational> = f[1..].iter().map(|x| x.parse()).collect::<Result<_>>()?;
                Ok(Row { basis_index, point: nums[..4].to_vec(), values: nums[4..].to_vec() })
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = format!("{} s={} k={} components [{}]\n", h.cell, h.s, h.k, h.component_ordering.join(", "));
        for r in &self.rows {
            let pt: Vec<String> = r.point.iter().map(|x| x.to_string()).collect();
            let vals: Vec<String> = r.values.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{:>4} ({}) -> [{}]", r.basis_index, pt.join(", "), vals.join(", "));
        }
        for e in &self.errors {
            let _ = writeln!(out, "error at point {}: {}", e.point_index, e.message);
        }
        out
    }
}

/// Reads points as a JSON array of coordinate arrays, or as one point per
/// line with comma or whitespace separated rationals (`#` starts a comment).
pub fn parse_points(text: &str) -> Result<Vec<Vec<Rational>>> {
    let t = text.trim_start();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| FeecError::Parse(e.to_string()));
    }
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).map(str::parse).collect())
        .collect()
}

/// Square dof-by-basis matrix with its determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DofMatrixFile {
    pub cell: String,
    pub s: usize,
    pub k: i64,
    /// `entity-kind[vertices]/group` per row.
    pub dofs: Vec<String>,
    pub matrix: Vec<Vec<Rational>>,
    pub det: Rational,
}

pub fn dof_matrix_file(cell: CellKind, s: usize, k: i64) -> Result<DofMatrixFile> {
    validate(cell, s, k)?;
    let sp = canonical_space(cell, k, s)?;
    let d = cell_dofs(cell, k, s)?;
    let m = crate::dofs::dof_matrix(&d, sp.basis())?;
    let dt = det(&m)?;
    let labels = d
        .iter()
        .map(|x| {
            let vs: Vec<String> = x.entity.verts.iter().map(|v| v.to_string()).collect();
            format!("{}[{}]/{}", x.entity.kind.name(), vs.join(","), x.group)
        })
        .collect();
    Ok(DofMatrixFile { cell: cell.name().into(), s, k, dofs: labels, matrix: m.to_rows(), det: dt })
}

impl DofMatrixFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes") + "\n"
    }

    /// Header `dof,b0,b1,...`, one line per dof, then a `det` line.
    pub fn to_csv(&self) -> String {
        let n = self.matrix.first().map_or(0, Vec::len);
        let mut out = String::from("dof");
        for j in 0..n {
            let _ = write!(out, ",b{j}");
        }
        out.push('\n');
        for (label, row) in self.dofs.iter().zip(&self.matrix) {
            let vals: Vec<String> = row.iter().map(Rational::to_pq).collect();
            let _ = writeln!(out, "\"{label}\",{}", vals.join(","));
        }
        let _ = writeln!(out, "det,{}", self.det.to_pq());
        out
    }

    pub fn to_text(&self) -> String {
        format!("{} s={} k={}: {}x{} dof matrix, det = {}\n", self.cell, self.s, self.k, self.matrix.len(), self.matrix.len(), self.det)
    }
}
