//! CSV reading and writing helpers: sample parsing with line-number error
//! reporting, the derivative file format, and round-trip-exact float output.

use crate::CliError;
use std::io::BufRead;

/// 17 significant digits: round-trip exact for f64.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// One parsed sample row, tagged with its 1-based input line number.
#[derive(Debug, Clone, Copy)]
pub struct SampleRow {
    pub line: usize,
    pub y: f64,
    pub f: f64,
}

pub fn parse_header(line: &str, lineno: usize) -> Result<(), CliError> {
    if line.trim() != "y,f" {
        return Err(CliError::Parse(format!(
            "line {lineno}: expected header `y,f`, got `{}`",
            line.trim()
        )));
    }
    Ok(())
}

pub fn parse_sample_row(line: &str, lineno: usize) -> Result<Option<SampleRow>, CliError> {
    let trimmed = line.trim();
    if trimmed.is_empty() {
        return Ok(None);
    }
    let mut parts = trimmed.split(',');
    let y = parts
        .next()
        .ok_or_else(|| CliError::Parse(format!("line {lineno}: missing y field")))?;
    let f = parts
        .next()
        .ok_or_else(|| CliError::Parse(format!("line {lineno}: missing f field")))?;
    if parts.next().is_some() {
        return Err(CliError::Parse(format!(
            "line {lineno}: expected exactly two fields"
        )));
    }
    let y: f64 = y
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("line {lineno}: non-numeric y field `{y}`")))?;
    let f: f64 = f
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("line {lineno}: non-numeric f field `{f}`")))?;
    if !y.is_finite() || !f.is_finite() {
        return Err(CliError::Parse(format!("line {lineno}: non-finite value")));
    }
    Ok(Some(SampleRow { line: lineno, y, f }))
}

/// Parse a whole `y,f` stream: sortable rows, duplicate abscissas rejected
/// with the offending line number.
pub fn parse_samples(reader: impl BufRead) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let mut rows: Vec<SampleRow> = Vec::new();
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Parse("empty input".into()))?
        .map_err(CliError::from)?;
    parse_header(&header, 1)?;
    for (idx, line) in lines.enumerate() {
        let line = line.map_err(CliError::from)?;
        if let Some(row) = parse_sample_row(&line, idx + 2)? {
            rows.push(row);
        }
    }
    if rows.len() < 2 {
        return Err(CliError::Parse(format!(
            "need at least 2 sample rows, got {}",
            rows.len()
        )));
    }
    rows.sort_by(|a, b| a.y.partial_cmp(&b.y).unwrap());
    for w in rows.windows(2) {
        if w[1].y == w[0].y {
            return Err(CliError::Parse(format!(
                "line {}: duplicate abscissa y = {}",
                w[1].line, w[1].y
            )));
        }
    }
    Ok((
        rows.iter().map(|r| r.y).collect(),
        rows.iter().map(|r| r.f).collect(),
    ))
}

/// Derivative file: header `end,order,value`, one row per endpoint (`a` or
/// `b`) and order `1..m-1`; every slot must be present.
pub fn parse_derivs_file(path: &std::path::Path, m: usize) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut derivs_a = vec![None; m - 1];
    let mut derivs_b = vec![None; m - 1];
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "end,order,value" => {}
        _ => {
            return Err(CliError::Parse(
                "derivative file must start with header `end,order,value`".into(),
            ))
        }
    }
    for (idx, line) in lines {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let parts: Vec<&str> = trimmed.split(',').collect();
        if parts.len() != 3 {
            return Err(CliError::Parse(format!(
                "derivative file line {lineno}: expected three fields"
            )));
        }
        let order: usize = parts[1].trim().parse().map_err(|_| {
            CliError::Parse(format!("derivative file line {lineno}: bad order field"))
        })?;
        if order == 0 || order > m - 1 {
            return Err(CliError::Parse(format!(
                "derivative file line {lineno}: order must be 1..{}",
                m - 1
            )));
        }
        let value: f64 = parts[2].trim().parse().map_err(|_| {
            CliError::Parse(format!("derivative file line {lineno}: bad value field"))
        })?;
        match parts[0].trim() {
            "a" => derivs_a[order - 1] = Some(value),
            "b" => derivs_b[order - 1] = Some(value),
            other => {
                return Err(CliError::Parse(format!(
                    "derivative file line {lineno}: end must be `a` or `b`, got `{other}`"
                )))
            }
        }
    }
    let unwrap_all = |v: Vec<Option<f64>>, end: &str| -> Result<Vec<f64>, CliError> {
        v.into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    CliError::Parse(format!(
                        "derivative file: missing order {} at end `{end}`",
                        i + 1
                    ))
                })
            })
            .collect()
    };
    Ok((unwrap_all(derivs_a, "a")?, unwrap_all(derivs_b, "b")?))
}
