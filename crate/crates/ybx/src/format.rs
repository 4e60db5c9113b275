//! TOML file formats for weights, R-weights, twists, grids and grid states.
//!
//! Readers go through `toml`; writers emit keys in canonical order by hand
//! so equal inputs give byte-identical files.
//!
//! A weight file:
//!
//! ```toml
//! n = 2
//! field = "rational"
//! tag = "S"
//!
//! [a]
//! "0" = "1/2"
//! "1" = "1/2"
//!
//! [b]
//! "0,1" = "-2/1"
//! "1,0" = "-2/1"
//!
//! [c]
//! "0,1" = "9/2"
//! "1,0" = "3/2"
//! ```
//!
//! With `field = "float"` values are TOML floats and an optional
//! `tolerance` applies to every value. R files use tables `A`, `B`, `C`
//! and may contain zeros; twist files hold `n` and one of `rho` or `zeta`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use toml::{Table, Value};
use ybx_core::lattice::{Grid, GridState};
use ybx_core::model::{ordered_pairs, PairTable, Tag};
use ybx_core::scalar::DEFAULT_TOLERANCE;
use ybx_core::transforms::{RhoTwist, ZetaTwist};
use ybx_core::{RWeightSet, Scalar, WeightSet};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Syntax { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] ybx_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Float,
}

impl Field {
    fn name(self) -> &'static str {
        match self {
            Field::Rational => "rational",
            Field::Float => "float",
        }
    }

    fn of(values: &[Scalar]) -> Field {
        if values.iter().all(Scalar::is_exact) {
            Field::Rational
        } else {
            Field::Float
        }
    }
}

pub fn read_table(path: &Path) -> Result<Table> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_table(&text).map_err(|message| FormatError::Syntax {
        path: path.to_path_buf(),
        message,
    })
}

fn parse_table(text: &str) -> std::result::Result<Table, String> {
    text.parse::<Table>().map_err(|e| e.to_string().trim_end().to_string())
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| FormatError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn get_usize(t: &Table, key: &str) -> Result<usize> {
    match t.get(key) {
        Some(Value::Integer(i)) if *i >= 0 => Ok(*i as usize),
        Some(other) => Err(invalid(format!("`{key}` must be a nonnegative integer, got {other}"))),
        None => Err(invalid(format!("missing `{key}`"))),
    }
}

fn get_table<'a>(t: &'a Table, key: &str) -> Result<&'a Table> {
    match t.get(key) {
        Some(Value::Table(inner)) => Ok(inner),
        Some(_) => Err(invalid(format!("`{key}` must be a table"))),
        None => Err(invalid(format!("missing table [{key}]"))),
    }
}

fn header(t: &Table) -> Result<(usize, Field, f64)> {
    let n = get_usize(t, "n")?;
    let field = match t.get("field") {
        None => Field::Rational,
        Some(Value::String(s)) if s == "rational" => Field::Rational,
        Some(Value::String(s)) if s == "float" => Field::Float,
        Some(other) => return Err(invalid(format!("unknown field {other}"))),
    };
    let tolerance = match t.get("tolerance") {
        None => DEFAULT_TOLERANCE,
        Some(Value::Float(x)) if *x >= 0.0 => *x,
        Some(other) => return Err(invalid(format!("bad tolerance {other}"))),
    };
    Ok((n, field, tolerance))
}

fn scalar_value(v: &Value, field: Field, tolerance: f64, key: &str) -> Result<Scalar> {
    match (field, v) {
        (Field::Rational, Value::String(s)) => Ok(s.parse::<Scalar>()?),
        (Field::Rational, Value::Integer(i)) => Ok(Scalar::from(*i)),
        (Field::Float, Value::Float(x)) => Ok(Scalar::float_with_tolerance(*x, tolerance)),
        (Field::Float, Value::Integer(i)) => Ok(Scalar::float_with_tolerance(*i as f64, tolerance)),
        _ => Err(invalid(format!(
            "`{key}` has value {v} not valid for field {}",
            field.name()
        ))),
    }
}

fn parse_pair_key(key: &str) -> Option<(usize, usize)> {
    let (i, j) = key.split_once(',')?;
    Some((i.trim().parse().ok()?, j.trim().parse().ok()?))
}

fn read_singles(t: &Table, name: &str, n: usize, field: Field, tol: f64) -> Result<Vec<Scalar>> {
    let table = get_table(t, name)?;
    if let Some(k) = table.keys().find(|k| k.parse::<usize>().map_or(true, |i| i >= n)) {
        return Err(invalid(format!("[{name}] has unexpected key \"{k}\"")));
    }
    (0..n)
        .map(|i| {
            let key = i.to_string();
            let v = table
                .get(&key)
                .ok_or_else(|| invalid(format!("[{name}] is missing \"{key}\"")))?;
            scalar_value(v, field, tol, &format!("{name}.{key}"))
        })
        .collect()
}

fn read_pairs(t: &Table, name: &str, n: usize, field: Field, tol: f64) -> Result<PairTable<Scalar>> {
    let table = get_table(t, name)?;
    let bad_key = |k: &String| match parse_pair_key(k) {
        Some((i, j)) => i >= n || j >= n || i == j,
        None => true,
    };
    if let Some(k) = table.keys().find(|k| bad_key(k)) {
        return Err(invalid(format!("[{name}] has unexpected key \"{k}\"")));
    }
    let mut values = Vec::with_capacity(n * n.saturating_sub(1));
    for (i, j) in ordered_pairs(n) {
        let v = table
            .iter()
            .find(|(k, _)| parse_pair_key(k) == Some((i, j)))
            .map(|(_, v)| v)
            .ok_or_else(|| invalid(format!("[{name}] is missing \"{i},{j}\"")))?;
        values.push(scalar_value(v, field, tol, &format!("{name}.{i},{j}"))?);
    }
    Ok(PairTable::from_vec(n, values)?)
}

fn scalar_literal(x: &Scalar) -> String {
    if x.is_exact() {
        format!("\"{x}\"")
    } else {
        format!("{x}")
    }
}

fn write_header(out: &mut String, n: usize, field: Field, tolerance: Option<f64>) {
    let _ = writeln!(out, "n = {n}");
    let _ = writeln!(out, "field = \"{}\"", field.name());
    if let (Field::Float, Some(tol)) = (field, tolerance) {
        let _ = writeln!(out, "tolerance = {tol:?}");
    }
}

fn write_singles(out: &mut String, name: &str, values: &[Scalar]) {
    let _ = writeln!(out, "\n[{name}]");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "\"{i}\" = {}", scalar_literal(v));
    }
}

fn write_pairs(out: &mut String, name: &str, table: &PairTable<Scalar>) {
    let _ = writeln!(out, "\n[{name}]");
    for ((i, j), v) in table.iter() {
        let _ = writeln!(out, "\"{i},{j}\" = {}", scalar_literal(v));
    }
}

fn float_tolerance(values: &[Scalar]) -> Option<f64> {
    values.iter().find_map(|v| match v {
        Scalar::Float { tolerance, .. } => Some(*tolerance),
        Scalar::Rational(_) => None,
    })
}

pub fn parse_weights(text: &str) -> Result<WeightSet> {
    let t = parse_table(text).map_err(invalid)?;
    weights_from_table(&t)
}

fn weights_from_table(t: &Table) -> Result<WeightSet> {
    let (n, field, tol) = header(t)?;
    let tag = match t.get("tag") {
        Some(Value::String(s)) => Tag::from(s.as_str()),
        None => Tag::Custom(String::new()),
        Some(other) => return Err(invalid(format!("`tag` must be a string, got {other}"))),
    };
    let a = read_singles(t, "a", n, field, tol)?;
    let b = read_pairs(t, "b", n, field, tol)?;
    let c = read_pairs(t, "c", n, field, tol)?;
    Ok(WeightSet::new(n, a, b, c, tag)?)
}

pub fn read_weights(path: &Path) -> Result<WeightSet> {
    weights_from_table(&read_table(path)?).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: FormatError) -> FormatError {
    match e {
        FormatError::Invalid(m) => FormatError::Invalid(format!("{}: {m}", path.display())),
        FormatError::Model(m) => FormatError::Invalid(format!("{}: {m}", path.display())),
        other => other,
    }
}

pub fn weights_to_string(w: &WeightSet) -> String {
    let all: Vec<Scalar> = w
        .a_values()
        .iter()
        .chain(w.b_table().values())
        .chain(w.c_table().values())
        .cloned()
        .collect();
    let mut out = String::new();
    write_header(&mut out, w.n(), Field::of(&all), float_tolerance(&all));
    let tag = w.tag().to_string();
    if !tag.is_empty() {
        let _ = writeln!(out, "tag = \"{}\"", tag.replace('\\', "\\\\").replace('"', "\\\""));
    }
    write_singles(&mut out, "a", w.a_values());
    write_pairs(&mut out, "b", w.b_table());
    write_pairs(&mut out, "c", w.c_table());
    out
}

pub fn parse_r(text: &str) -> Result<RWeightSet> {
    r_from_table(&parse_table(text).map_err(invalid)?)
}

fn r_from_table(t: &Table) -> Result<RWeightSet> {
    let (n, field, tol) = header(t)?;
    let a = read_singles(t, "A", n, field, tol)?;
    let b = read_pairs(t, "B", n, field, tol)?;
    let c = read_pairs(t, "C", n, field, tol)?;
    Ok(RWeightSet::from_parts(a, b, c)?)
}

pub fn read_r(path: &Path) -> Result<RWeightSet> {
    r_from_table(&read_table(path)?).map_err(|e| with_path(path, e))
}

pub fn r_to_string(r: &RWeightSet) -> String {
    let n = r.n();
    let mut out = String::new();
    write_header(&mut out, n, Field::of(r.values()), float_tolerance(r.values()));
    let a: Vec<Scalar> = (0..n).map(|i| r.a(i).clone()).collect();
    write_singles(&mut out, "A", &a);
    write_pairs(&mut out, "B", &PairTable::from_fn(n, |i, j| r.b(i, j).clone()));
    write_pairs(&mut out, "C", &PairTable::from_fn(n, |i, j| r.c(i, j).clone()));
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Twist {
    Rho(RhoTwist),
    Zeta(ZetaTwist),
}

fn twist_from_table(t: &Table, expect: &str) -> Result<Twist> {
    let (n, field, tol) = header(t)?;
    let table = read_pairs(t, expect, n, field, tol)?;
    match expect {
        "rho" => Ok(Twist::Rho(RhoTwist::new(table)?)),
        _ => Ok(Twist::Zeta(ZetaTwist::new(table)?)),
    }
}

pub fn read_rho(path: &Path) -> Result<RhoTwist> {
    match twist_from_table(&read_table(path)?, "rho").map_err(|e| with_path(path, e))? {
        Twist::Rho(r) => Ok(r),
        Twist::Zeta(_) => unreachable!(),
    }
}

pub fn read_zeta(path: &Path) -> Result<ZetaTwist> {
    match twist_from_table(&read_table(path)?, "zeta").map_err(|e| with_path(path, e))? {
        Twist::Zeta(z) => Ok(z),
        Twist::Rho(_) => unreachable!(),
    }
}

pub fn twist_to_string(twist: &Twist) -> String {
    let (name, table) = match twist {
        Twist::Rho(r) => ("rho", r.table()),
        Twist::Zeta(z) => ("zeta", z.table()),
    };
    let mut out = String::new();
    write_header(
        &mut out,
        table.n(),
        Field::of(table.values()),
        float_tolerance(table.values()),
    );
    write_pairs(&mut out, name, table);
    out
}

fn color_list(t: &Table, key: &str) -> Result<Vec<usize>> {
    let Some(Value::Array(items)) = t.get(key) else {
        return Err(invalid(format!("missing array `{key}`")));
    };
    items
        .iter()
        .map(|v| match v {
            Value::Integer(i) if *i >= 0 => Ok(*i as usize),
            other => Err(invalid(format!("`{key}` entry {other} is not a color"))),
        })
        .collect()
}

fn color_rows(t: &Table, key: &str) -> Result<Vec<Vec<usize>>> {
    let Some(Value::Array(rows)) = t.get(key) else {
        return Err(invalid(format!("missing array `{key}`")));
    };
    rows.iter()
        .map(|row| {
            let mut wrapper = Table::new();
            wrapper.insert(key.to_string(), row.clone());
            color_list(&wrapper, key)
        })
        .collect()
}

/// Reads a grid file; `row_weights` paths are relative to the grid file.
pub fn read_grid(path: &Path) -> Result<Grid> {
    let t = read_table(path)?;
    let wrap = |e| with_path(path, e);
    let rows = get_usize(&t, "rows").map_err(wrap)?;
    let cols = get_usize(&t, "cols").map_err(wrap)?;
    let Some(Value::Array(files)) = t.get("row_weights") else {
        return Err(wrap(invalid("missing array `row_weights`")));
    };
    if files.len() != rows {
        return Err(wrap(invalid(format!(
            "`row_weights` lists {} files for {rows} rows",
            files.len()
        ))));
    }
    let base = path.parent().unwrap_or(Path::new("."));
    let weights = files
        .iter()
        .map(|f| match f {
            Value::String(rel) => read_weights(&base.join(rel)),
            other => Err(invalid(format!("`row_weights` entry {other} is not a path"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let top = color_list(&t, "top").map_err(wrap)?;
    if top.len() != cols {
        return Err(wrap(invalid(format!(
            "`top` has {} colors for {cols} columns",
            top.len()
        ))));
    }
    let grid = Grid::new(
        weights,
        top,
        color_list(&t, "bottom").map_err(wrap)?,
        color_list(&t, "left").map_err(wrap)?,
        color_list(&t, "right").map_err(wrap)?,
    )
    .map_err(|e| wrap(e.into()))?;
    Ok(grid)
}

/// Reads a state file with `horizontal` and `vertical` edge-color arrays.
pub fn read_state(path: &Path) -> Result<GridState> {
    let t = read_table(path)?;
    let wrap = |e| with_path(path, e);
    let horizontal = color_rows(&t, "horizontal").map_err(wrap)?;
    let vertical = color_rows(&t, "vertical").map_err(wrap)?;
    GridState::new(horizontal, vertical).map_err(|e| wrap(e.into()))
}

pub fn state_to_string(state: &GridState) -> String {
    let rows = |v: &[Vec<usize>]| v.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join(", ");
    format!(
        "horizontal = [{}]\nvertical = [{}]\n",
        rows(&state.horizontal),
        rows(&state.vertical)
    )
}
