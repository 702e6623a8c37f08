use crate::error::{Error, Result};

/// Non-blank, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses every whitespace-separated word of `line` as `T`.
pub(crate) fn numbers<T: std::str::FromStr>(no: usize, line: &str, what: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|w| w.parse::<T>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(no, format!("expected {what}")))
}
