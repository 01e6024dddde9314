//! Plain-text instance and schedule files.
//!
//! Instance grammar (`#` starts a comment, blank lines are skipped, the final
//! newline is optional):
//!
//! ```text
//! t n
//! <t rows of t space-separated non-negative setup times>
//! <n rows: processing_time deadline type>
//! ```
//!
//! A deadline of `-1` means no deadline. Types are `0..t`. Parsed matrices
//! must satisfy the setup-matrix invariants (zero diagonal, triangle
//! inequality); defects are reported with the offending line.

use crate::model::{Deadline, Instance, Job, JobId, SetupMatrix, SetupViolation, TypeId};

/// A file-format defect, located by its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Content lines with their original line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (i + 1, line)
        })
        .filter(|(_, line)| !line.is_empty())
}

fn parse_u64(line: usize, token: &str, what: &str) -> Result<u64, ParseError> {
    token
        .parse::<u64>()
        .map_err(|_| err(line, format!("{what} must be a non-negative integer, got `{token}`")))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| err(1, "missing header line"))?;
    let mut tokens = header.split_whitespace();
    let (Some(t_tok), Some(n_tok), None) = (tokens.next(), tokens.next(), tokens.next()) else {
        return Err(err(header_line, "header must be `type_count job_count`"));
    };
    let t = parse_u64(header_line, t_tok, "type count")? as usize;
    let n = parse_u64(header_line, n_tok, "job count")? as usize;
    if t == 0 {
        return Err(err(header_line, "type count must be positive"));
    }
    if n == 0 {
        return Err(err(header_line, "job count must be positive"));
    }

    let mut cells = Vec::with_capacity(t * t);
    let mut row_lines = Vec::with_capacity(t);
    for row in 0..t {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| err(header_line, format!("expected {t} setup matrix rows")))?;
        row_lines.push(line_no);
        let row_cells: Vec<&str> = line.split_whitespace().collect();
        if row_cells.len() != t {
            return Err(err(
                line_no,
                format!("setup row {row} has {} entries, expected {t}", row_cells.len()),
            ));
        }
        for cell in row_cells {
            cells.push(parse_u64(line_no, cell, "setup time")?);
        }
    }

    let mut jobs = Vec::with_capacity(n);
    for _ in 0..n {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| err(header_line, format!("expected {n} job lines")))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(line_no, "job line must be `processing deadline type`"));
        }
        let processing_time = parse_u64(line_no, fields[0], "processing time")?;
        let deadline = if fields[1] == "-1" {
            Deadline::Infinite
        } else {
            Deadline::Finite(parse_u64(line_no, fields[1], "deadline")?)
        };
        let type_id = parse_u64(line_no, fields[2], "type")? as usize;
        if type_id >= t {
            return Err(err(line_no, format!("type out of range: {type_id} (type count is {t})")));
        }
        jobs.push(Job {
            processing_time,
            deadline,
            type_id: TypeId(type_id),
        });
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(err(line_no, "unexpected content after the last job line"));
    }

    let setup = SetupMatrix::new(t, cells);
    let violations = setup.validate();
    if let Some(first) = violations.first() {
        let (row, message) = match *first {
            SetupViolation::NonZeroDiagonal(TypeId(a)) => {
                (a, format!("setup matrix diagonal entry ({a},{a}) must be 0"))
            }
            SetupViolation::TriangleInequality(TypeId(a), TypeId(b), TypeId(c)) => (
                a,
                format!("setup matrix violates the triangle inequality on types ({a},{b},{c})"),
            ),
        };
        return Err(err(row_lines[row], message));
    }
    Instance::new(jobs, setup).map_err(|e| err(header_line, e.to_string()))
}

/// Canonical serialization; `parse_instance` inverts it exactly.
pub fn write_instance(instance: &Instance) -> String {
    let t = instance.type_count();
    let mut out = format!("{t} {}\n", instance.len());
    for a in 0..t {
        let row: Vec<String> = (0..t)
            .map(|b| instance.setup().get(TypeId(a), TypeId(b)).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for job in instance.jobs() {
        let deadline = match job.deadline {
            Deadline::Finite(d) => d.to_string(),
            Deadline::Infinite => "-1".to_string(),
        };
        out.push_str(&format!(
            "{} {deadline} {}\n",
            job.processing_time, job.type_id.0
        ));
    }
    out
}

/// A schedule file: whitespace-separated job indices, `#` comments allowed.
pub fn parse_schedule_order(text: &str) -> Result<Vec<JobId>, ParseError> {
    let mut order = Vec::new();
    for (line_no, line) in content_lines(text) {
        for token in line.split_whitespace() {
            order.push(JobId(parse_u64(line_no, token, "job index")? as usize));
        }
    }
    if order.is_empty() {
        return Err(err(1, "schedule file contains no job indices"));
    }
    Ok(order)
}

pub fn write_schedule_order(order: &[JobId]) -> String {
    let fields: Vec<String> = order.iter().map(|j| j.0.to_string()).collect();
    format!("{}\n", fields.join(" "))
}

/// A standalone setup-matrix file: a line with `t`, then `t` rows of `t`
/// non-negative integers. Validated like the matrix of an instance file.
pub fn parse_setup_matrix(text: &str) -> Result<SetupMatrix, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| err(1, "missing type count"))?;
    let mut tokens = header.split_whitespace();
    let (Some(t_tok), None) = (tokens.next(), tokens.next()) else {
        return Err(err(header_line, "header must be a single type count"));
    };
    let t = parse_u64(header_line, t_tok, "type count")? as usize;
    if t == 0 {
        return Err(err(header_line, "type count must be positive"));
    }
    let mut cells = Vec::with_capacity(t * t);
    for row in 0..t {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| err(header_line, format!("expected {t} matrix rows")))?;
        let row_cells: Vec<&str> = line.split_whitespace().collect();
        if row_cells.len() != t {
            return Err(err(
                line_no,
                format!("matrix row {row} has {} entries, expected {t}", row_cells.len()),
            ));
        }
        for cell in row_cells {
            cells.push(parse_u64(line_no, cell, "setup time")?);
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(err(line_no, "unexpected content after the matrix"));
    }
    let setup = SetupMatrix::new(t, cells);
    if let Some(v) = setup.validate().first() {
        return Err(err(header_line, format!("invalid setup matrix: {v:?}")));
    }
    Ok(setup)
}

/// Two-column benchmark data: one `processing_time deadline` pair per line.
pub fn parse_pairs(text: &str) -> Result<Vec<(u64, u64)>, ParseError> {
    let mut pairs = Vec::new();
    for (line_no, line) in content_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(line_no, "expected `processing_time deadline`"));
        }
        pairs.push((
            parse_u64(line_no, fields[0], "processing time")?,
            parse_u64(line_no, fields[1], "deadline")?,
        ));
    }
    if pairs.is_empty() {
        return Err(err(1, "no data lines found"));
    }
    Ok(pairs)
}
