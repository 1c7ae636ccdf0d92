//! Shared readers for the small versioned text data files (word lists,
//! lexicons, stemmer rule tables).

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{origin}:{line}: {reason}")]
    Invalid {
        origin: String,
        line: usize,
        reason: String,
    },
}

impl DataError {
    pub(crate) fn invalid(origin: &str, line: usize, reason: impl Into<String>) -> Self {
        DataError::Invalid {
            origin: origin.to_string(),
            line,
            reason: reason.into(),
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, DataError> {
    fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Iterates `(line_number, line)` over lines that are neither blank nor
/// `#` comments. Line numbers are 1-based.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Parses a one-word-per-line list. Words are lowercased and trimmed.
pub fn parse_word_list(text: &str, origin: &str) -> Result<Vec<String>, DataError> {
    content_lines(text)
        .map(|(n, l)| {
            let word = l.trim();
            if word.chars().any(char::is_whitespace) {
                Err(DataError::invalid(origin, n, format!("expected a single word, got {word:?}")))
            } else {
                Ok(word.to_lowercase())
            }
        })
        .collect()
}

pub fn load_word_list(path: &Path) -> Result<Vec<String>, DataError> {
    parse_word_list(&read_file(path)?, &path.display().to_string())
}
