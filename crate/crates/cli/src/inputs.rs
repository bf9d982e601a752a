//! Input-file parsing: point sets, line/hyperplane sets, variety families,
//! and non-degenerate forms. CSV files hold one object per row as canonical
//! field indices; `.json` files hold the same data as arrays. Family and
//! form descriptions are JSON only.

use std::path::Path;

use fqlab_core::distances::NonDegenerateForm;
use fqlab_core::pldist::{HyperplaneRep, LineRep};
use fqlab_core::varieties::{point_index, sum_of_squares_table, zero_table, VarietyFamily};
use fqlab_core::{Error, FieldCtx, FieldElem, Result};

fn parse_err(path: &Path, what: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{}: {what}", path.display()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| parse_err(path, e))
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Rows of integers from CSV (or a JSON array of arrays).
fn read_rows(path: &Path) -> Result<Vec<Vec<u64>>> {
    let text = read(path)?;
    if is_json(path) {
        serde_json::from_str(&text).map_err(|e| parse_err(path, e))
    } else {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(',')
                .map(|cell| {
                    cell.trim()
                        .parse::<u64>()
                        .map_err(|e| parse_err(path, format!("line {}: {e}", lineno + 1)))
                })
                .collect::<Result<Vec<u64>>>()?;
            rows.push(row);
        }
        Ok(rows)
    }
}

fn row_elems(ctx: &FieldCtx, row: &[u64]) -> Result<Vec<FieldElem>> {
    row.iter().map(|&v| ctx.elem(v)).collect()
}

/// Points with `dim` coordinates each, returned as canonical indices.
pub fn load_points(ctx: &FieldCtx, path: &Path, dim: usize) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for row in read_rows(path)? {
        if row.len() != dim {
            return Err(parse_err(
                path,
                format!("expected {dim} coordinates, got {}", row.len()),
            ));
        }
        out.push(point_index(ctx, &row_elems(ctx, &row)?));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Points as coordinate vectors (for the circle/sphere scans).
pub fn load_coordinate_points(
    ctx: &FieldCtx,
    path: &Path,
    dim: usize,
) -> Result<Vec<Vec<FieldElem>>> {
    let mut out = Vec::new();
    for row in read_rows(path)? {
        if row.len() != dim {
            return Err(parse_err(
                path,
                format!("expected {dim} coordinates, got {}", row.len()),
            ));
        }
        out.push(row_elems(ctx, &row)?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Lines as `a, b, c` coefficient rows.
pub fn load_lines(ctx: &FieldCtx, path: &Path) -> Result<Vec<LineRep>> {
    let mut out = Vec::new();
    for row in read_rows(path)? {
        if row.len() != 3 {
            return Err(parse_err(
                path,
                format!("expected 3 coefficients, got {}", row.len()),
            ));
        }
        let e = row_elems(ctx, &row)?;
        out.push(LineRep::new(ctx, e[0], e[1], e[2])?);
    }
    Ok(out)
}

/// Hyperplanes as `a_1, ..., a_d, a_{d+1}` coefficient rows.
pub fn load_hyperplanes(ctx: &FieldCtx, path: &Path, d: usize) -> Result<Vec<HyperplaneRep>> {
    let mut out = Vec::new();
    for row in read_rows(path)? {
        if row.len() != d + 1 {
            return Err(parse_err(
                path,
                format!("expected {} coefficients, got {}", d + 1, row.len()),
            ));
        }
        out.push(HyperplaneRep::new(ctx, row_elems(ctx, &row)?)?);
    }
    Ok(out)
}

/// Polynomial table entry in a family/form description: a named generator
/// or an explicit evaluation table.
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum TableSpec {
    Named(String),
    Table(Vec<u64>),
}

impl TableSpec {
    fn build(&self, ctx: &FieldCtx, d: usize) -> Result<Vec<FieldElem>> {
        match self {
            TableSpec::Named(name) => match name.as_str() {
                "named:zero" | "zero" => Ok(zero_table(ctx, d)),
                "named:sum_of_squares" | "sum_of_squares" => Ok(sum_of_squares_table(ctx, d)),
                other => Err(Error::Parse(format!("unknown named table {other:?}"))),
            },
            TableSpec::Table(values) => values.iter().map(|&v| ctx.elem(v)).collect(),
        }
    }
}

#[derive(serde::Deserialize)]
struct FamilyFile {
    d: usize,
    k: usize,
    h: Vec<TableSpec>,
    b: Vec<Vec<u32>>,
}

/// Family description JSON: `{d, k, h: [table or "named:..."], b: [[ints]]}`.
pub fn load_family(ctx: &FieldCtx, path: &Path) -> Result<VarietyFamily> {
    let file: FamilyFile = serde_json::from_str(&read(path)?).map_err(|e| parse_err(path, e))?;
    let h = file
        .h
        .iter()
        .map(|spec| spec.build(ctx, file.d))
        .collect::<Result<Vec<_>>>()?;
    VarietyFamily::new(ctx, file.d, file.k, h, file.b)
}

#[derive(serde::Deserialize)]
struct FormFile {
    d: usize,
    g1: TableSpec,
    g2: TableSpec,
    b: Vec<u32>,
    c: Vec<u32>,
    #[serde(rename = "M")]
    m: Vec<u64>,
}

/// Form description JSON: `{d, g1, g2, b, c, M: row-major entries}`.
pub fn load_form(ctx: &FieldCtx, path: &Path) -> Result<NonDegenerateForm> {
    let file: FormFile = serde_json::from_str(&read(path)?).map_err(|e| parse_err(path, e))?;
    let g1 = file.g1.build(ctx, file.d)?;
    let g2 = file.g2.build(ctx, file.d)?;
    let m = file
        .m
        .iter()
        .map(|&v| ctx.elem(v))
        .collect::<Result<Vec<_>>>()?;
    NonDegenerateForm::new(ctx, file.d, g1, g2, file.b, file.c, m)
}

/// Named family selector or an inline family description.
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum FamilySpec {
    Named(String),
    Inline {
        d: usize,
        k: usize,
        h: Vec<TableSpec>,
        b: Vec<Vec<u32>>,
    },
}

/// Experiment config JSON:
/// `{q?, p, e?, d, k, family, mode: "V"|"W", samples?, seed?, sizes?}`.
#[derive(serde::Deserialize)]
pub struct ExperimentConfig {
    pub q: Option<u64>,
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    d: usize,
    k: usize,
    family: FamilySpec,
    pub mode: String,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    /// Fixed `[|P|, |V|]` subset sizes; absent means uniform random sizes.
    pub sizes: Option<(u64, u64)>,
}

fn one() -> u32 {
    1
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let cfg: ExperimentConfig =
            serde_json::from_str(&read(path)?).map_err(|e| parse_err(path, e))?;
        Ok(cfg)
    }

    pub fn field(&self) -> Result<FieldCtx> {
        let ctx = FieldCtx::new(self.p, self.e)?;
        if let Some(q) = self.q {
            if q != ctx.q() {
                return Err(Error::Parse(format!(
                    "config says q = {q} but p^e = {}",
                    ctx.q()
                )));
            }
        }
        Ok(ctx)
    }

    pub fn family(&self, ctx: &FieldCtx) -> Result<VarietyFamily> {
        match &self.family {
            FamilySpec::Named(name) => match name.as_str() {
                "flat" => VarietyFamily::flats(ctx, self.d, self.k),
                "spheres" => VarietyFamily::spheres(ctx, self.d),
                "twisted" => VarietyFamily::twisted(ctx, self.d, self.k),
                other => Err(Error::Parse(format!("unknown family {other:?}"))),
            },
            FamilySpec::Inline { d, k, h, b } => {
                let tables = h
                    .iter()
                    .map(|spec| spec.build(ctx, *d))
                    .collect::<Result<Vec<_>>>()?;
                VarietyFamily::new(ctx, *d, *k, tables, b.clone())
            }
        }
    }
}

/// Inline point list `"x,y,z;x,y,z;..."` for `sphere-through`.
pub fn parse_inline_points(ctx: &FieldCtx, text: &str, dim: usize) -> Result<Vec<Vec<FieldElem>>> {
    let mut out = Vec::new();
    for chunk in text.split(';') {
        let coords = chunk
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad coordinate {c:?}: {e}")))
                    .and_then(|v| ctx.elem(v))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dim {
            return Err(Error::Parse(format!(
                "expected {dim} coordinates per point, got {}",
                coords.len()
            )));
        }
        out.push(coords);
    }
    Ok(out)
}
