//! Argument decoding and the error type that fixes the exit code.

use std::fmt;
use std::path::Path;

use fmonoid_core::parse::{parse_monomial, parse_polynomial, parse_scalar};
use fmonoid_core::{Error, Field, Monomial, Polynomial, Scalar, SetDescriptor};

pub enum CliError {
    /// Bad input; exit code 2.
    Input(String),
    /// Parse failure inside `input` at byte `pos`; exit code 2.
    Parse { input: String, pos: usize, msg: String },
    /// Well-formed input without a solution in budget; exit code 1.
    NoSolution(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Parse { .. } => 2,
            CliError::NoSolution(_) => 1,
        }
    }

    fn with_input(e: Error, input: &str) -> CliError {
        match e {
            Error::Parse { pos, msg } => CliError::Parse {
                input: input.to_string(),
                pos,
                msg,
            },
            other => other.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted(_) | Error::Degenerate(_) | Error::Division(_) => {
                CliError::NoSolution(e.to_string())
            }
            Error::Parse { pos, msg } => CliError::Input(format!("parse error at byte {pos}: {msg}")),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("invalid JSON: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::NoSolution(m) => write!(f, "no solution: {m}"),
            CliError::Parse { input, pos, msg } => {
                // show the offending line with a caret under the position
                let line_start = input[..*pos].rfind('\n').map_or(0, |i| i + 1);
                let line_end = input[*pos..].find('\n').map_or(input.len(), |i| pos + i);
                let col = input[line_start..*pos].chars().count();
                writeln!(f, "error: parse error at byte {pos}: {msg}")?;
                writeln!(f, "  {}", &input[line_start..line_end])?;
                write!(f, "  {}^", " ".repeat(col))
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// `@path` or an existing file path yields the file contents; anything else
/// is taken literally.
pub fn read_arg(arg: &str) -> CliResult<String> {
    if let Some(path) = arg.strip_prefix('@') {
        return Ok(std::fs::read_to_string(path)?);
    }
    if !arg.contains('*') && !arg.contains('+') && Path::new(arg).is_file() {
        return Ok(std::fs::read_to_string(arg)?);
    }
    Ok(arg.to_string())
}

pub fn field(text: &str) -> CliResult<Field> {
    text.parse::<Field>()
        .map_err(|e| CliError::with_input(e, text))
}

/// A polynomial as text in the grammar, or as its JSON form.
pub fn polynomial(arg: &str, field: Field) -> CliResult<Polynomial> {
    let text = read_arg(arg)?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let p: Polynomial = serde_json::from_str(trimmed)?;
        if p.field() == field {
            return Ok(p);
        }
        return p.to_field(field).ok_or_else(|| {
            CliError::Input(format!("polynomial over {} does not convert to {field}", p.field()))
        });
    }
    parse_polynomial(trimmed, field).map_err(|e| CliError::with_input(e, trimmed))
}

pub fn monomial(arg: &str) -> CliResult<Monomial> {
    let text = read_arg(arg)?;
    parse_monomial(text.trim()).map_err(|e| CliError::with_input(e, text.trim()))
}

pub fn scalar(text: &str, field: Field) -> CliResult<Scalar> {
    parse_scalar(text, field).map_err(|e| CliError::with_input(e, text))
}

/// Comma-separated coefficients.
pub fn scalars(text: &str, field: Field) -> CliResult<Vec<Scalar>> {
    text.split(',').map(|t| scalar(t.trim(), field)).collect()
}

pub fn set(text: &str) -> CliResult<SetDescriptor> {
    let text = read_arg(text)?;
    text.trim()
        .parse::<SetDescriptor>()
        .map_err(|e| CliError::with_input(e, text.trim()))
}

/// `N` means seeds `base..base+N`; a comma list is taken as given.
pub fn seeds(text: &str, base: u64) -> CliResult<Vec<u64>> {
    let bad = |_| CliError::Input(format!("bad seed list {text:?}"));
    if text.contains(',') {
        return text.split(',').map(|s| s.trim().parse::<u64>().map_err(bad)).collect();
    }
    let n: u64 = text.trim().parse().map_err(bad)?;
    if n == 0 {
        return Err(CliError::Input("at least one seed is required".into()));
    }
    Ok((base..base + n).collect())
}
