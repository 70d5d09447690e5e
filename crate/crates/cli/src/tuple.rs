//! `--tuple` syntax: comma-separated exponents, `NxR` repeating `N` R times.

use brieskorn_core::ExponentTuple;

use crate::error::CliError;

pub fn parse_tuple(text: &str) -> Result<ExponentTuple, CliError> {
    let err = |column: usize, msg: String| {
        CliError::Input(format!("tuple '{text}', column {column}: {msg}"))
    };
    let mut exponents = Vec::new();
    let mut column = 1;
    for item in text.split(',') {
        let trimmed = item.trim();
        let col = column + (item.len() - item.trim_start().len());
        column += item.chars().count() + 1;
        if trimmed.is_empty() {
            return Err(err(col, "empty entry".into()));
        }
        let (value, times) = match trimmed.split_once(['x', 'X']) {
            Some((v, r)) => {
                let r: usize = r
                    .trim()
                    .parse()
                    .map_err(|_| err(col, format!("bad repetition count in '{trimmed}'")))?;
                if r == 0 {
                    return Err(err(col, "repetition count must be positive".into()));
                }
                (v.trim(), r)
            }
            None => (trimmed, 1),
        };
        let a: i64 = value
            .parse()
            .map_err(|_| err(col, format!("'{value}' is not an integer")))?;
        if a < 2 {
            return Err(err(col, format!("exponent {a} < 2")));
        }
        exponents.extend(std::iter::repeat_n(a, times));
    }
    if exponents.len() < 2 {
        return Err(err(1, "need at least two exponents".into()));
    }
    ExponentTuple::new(exponents).map_err(|e| err(1, e.to_string()))
}

/// `lo:hi`, or a single degree.
pub fn parse_window(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Input(format!("window '{text}': expected LO:HI"));
    let (lo, hi) = match text.split_once(':') {
        Some((lo, hi)) => (
            lo.trim().parse().map_err(|_| bad())?,
            hi.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let d = text.trim().parse().map_err(|_| bad())?;
            (d, d)
        }
    };
    if lo > hi {
        return Err(CliError::Input(format!("window '{text}': empty range")));
    }
    Ok((lo, hi))
}
