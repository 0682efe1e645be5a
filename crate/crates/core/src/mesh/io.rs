//! Plain-text mesh format and legacy VTK export.
//!
//! Mesh text format: first line `<num_vertices> <num_cells>`, then one
//! `x1 x2` line per vertex, then one `a b c` line (zero-based, counterclockwise)
//! per cell. Blank lines and lines starting with `#` are ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::{Point2, Triangulation};

pub fn write_mesh<W: Write>(tri: &Triangulation, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", tri.vertices().len(), tri.num_cells())?;
    for v in tri.vertices() {
        writeln!(out, "{:e} {:e}", v.x1, v.x2)?;
    }
    for c in tri.cells() {
        writeln!(out, "{} {} {}", c[0], c[1], c[2])?;
    }
    Ok(())
}

pub fn read_mesh<R: Read>(input: R) -> Result<Triangulation> {
    let mut lines = BufReader::new(input)
        .lines()
        .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty() && !s.trim_start().starts_with('#')));
    let mut next = || -> Result<String> {
        lines.next().ok_or_else(|| Error::Parse("unexpected end of mesh file".into()))?.map_err(Error::from)
    };
    let header = next()?;
    let counts = parse_fields::<usize>(&header, 2)?;
    let mut vertices = Vec::with_capacity(counts[0]);
    for _ in 0..counts[0] {
        let v = parse_fields::<f64>(&next()?, 2)?;
        vertices.push(Point2::new(v[0], v[1]));
    }
    let mut cells = Vec::with_capacity(counts[1]);
    for _ in 0..counts[1] {
        let c = parse_fields::<usize>(&next()?, 3)?;
        cells.push([c[0], c[1], c[2]]);
    }
    Triangulation::new(vertices, cells)
}

fn parse_fields<T: std::str::FromStr>(line: &str, n: usize) -> Result<Vec<T>> {
    let fields: Vec<T> = line
        .split_whitespace()
        .map(|s| s.parse::<T>().map_err(|_| Error::Parse(format!("bad field {s:?} in line {line:?}"))))
        .collect::<Result<_>>()?;
    if fields.len() != n {
        return Err(Error::Parse(format!("expected {n} fields in line {line:?}")));
    }
    Ok(fields)
}

/// Field attached to a VTK export.
#[derive(Debug, Clone)]
pub enum VtkField {
    CellScalar { name: String, values: Vec<f64> },
    CellVector { name: String, values: Vec<[f64; 2]> },
    PointScalar { name: String, values: Vec<f64> },
}

impl VtkField {
    fn len(&self) -> usize {
        match self {
            VtkField::CellScalar { values, .. } | VtkField::PointScalar { values, .. } => values.len(),
            VtkField::CellVector { values, .. } => values.len(),
        }
    }

    fn is_cell(&self) -> bool {
        !matches!(self, VtkField::PointScalar { .. })
    }
}

/// Legacy ASCII unstructured grid.
pub fn write_vtk<W: Write>(tri: &Triangulation, fields: &[VtkField], mut out: W) -> Result<()> {
    for f in fields {
        let expected = if f.is_cell() { tri.num_cells() } else { tri.vertices().len() };
        if f.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: f.len() });
        }
    }
    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(out, "prcr triangulation")?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET UNSTRUCTURED_GRID")?;
    writeln!(out, "POINTS {} double", tri.vertices().len())?;
    for v in tri.vertices() {
        writeln!(out, "{:e} {:e} 0", v.x1, v.x2)?;
    }
    let nc = tri.num_cells();
    writeln!(out, "CELLS {} {}", nc, 4 * nc)?;
    for c in tri.cells() {
        writeln!(out, "3 {} {} {}", c[0], c[1], c[2])?;
    }
    writeln!(out, "CELL_TYPES {nc}")?;
    for _ in 0..nc {
        writeln!(out, "5")?;
    }
    let (cell_fields, point_fields): (Vec<_>, Vec<_>) = fields.iter().partition(|f| f.is_cell());
    if !cell_fields.is_empty() {
        writeln!(out, "CELL_DATA {nc}")?;
        write_fields(&mut out, &cell_fields)?;
    }
    if !point_fields.is_empty() {
        writeln!(out, "POINT_DATA {}", tri.vertices().len())?;
        write_fields(&mut out, &point_fields)?;
    }
    Ok(())
}

fn write_fields<W: Write>(out: &mut W, fields: &[&VtkField]) -> Result<()> {
    for f in fields {
        match f {
            VtkField::CellScalar { name, values } | VtkField::PointScalar { name, values } => {
                writeln!(out, "SCALARS {name} double 1")?;
                writeln!(out, "LOOKUP_TABLE default")?;
                for v in values {
                    writeln!(out, "{v:e}")?;
                }
            }
            VtkField::CellVector { name, values } => {
                writeln!(out, "VECTORS {name} double")?;
                for v in values {
                    writeln!(out, "{:e} {:e} 0", v[0], v[1])?;
                }
            }
        }
    }
    Ok(())
}

pub fn export_vtk(tri: &Triangulation, fields: &[VtkField], path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_vtk(tri, fields, &mut w)?;
    w.flush()?;
    Ok(())
}
