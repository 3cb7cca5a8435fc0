//! Files of labelled formulas.
//!
//! ```text
//! # comment
//! R1: p & <>p & <>~p
//! R2: [](p -> <>p & <>~p)
//! ```
//!
//! The formula a file denotes is the left-nested conjunction of its
//! entries in file order.

use thiserror::Error;

use super::{parse_fol, parse_hybrid, parse_ld, FolFormula, HybridFormula, LdFormula, ParseError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NamedFileError {
    #[error("line {line}: expected 'LABEL: formula'")]
    MissingLabel { line: usize },
    #[error("line {line}: invalid label '{label}'")]
    BadLabel { line: usize, label: String },
    #[error("line {line}: duplicate label '{label}'")]
    DuplicateLabel { line: usize, label: String },
    #[error("line {line}: {source}")]
    Syntax {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("no formulas in file")]
    Empty,
}

/// Parsed entries of a labelled-formula file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFormulas<F> {
    pub entries: Vec<(String, F)>,
}

impl<F: Clone> NamedFormulas<F> {
    pub fn parse(
        text: &str,
        parse: impl Fn(&str) -> Result<F, ParseError>,
    ) -> Result<NamedFormulas<F>, NamedFileError> {
        let mut entries: Vec<(String, F)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let (label, formula) = body.split_once(':').ok_or(NamedFileError::MissingLabel { line })?;
            let label = label.trim();
            let valid = !label.is_empty()
                && label
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '+'));
            if !valid {
                return Err(NamedFileError::BadLabel {
                    line,
                    label: label.to_string(),
                });
            }
            if entries.iter().any(|(l, _)| l == label) {
                return Err(NamedFileError::DuplicateLabel {
                    line,
                    label: label.to_string(),
                });
            }
            let f = parse(formula).map_err(|source| NamedFileError::Syntax { line, source })?;
            entries.push((label.to_string(), f));
        }
        if entries.is_empty() {
            return Err(NamedFileError::Empty);
        }
        Ok(NamedFormulas { entries })
    }

    pub fn get(&self, label: &str) -> Option<&F> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, f)| f)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|(l, _)| l.as_str()).collect()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &F> {
        self.entries.iter().map(|(_, f)| f)
    }
}

impl NamedFormulas<LdFormula> {
    pub fn parse_ld(text: &str) -> Result<Self, NamedFileError> {
        NamedFormulas::parse(text, parse_ld)
    }

    pub fn conjunction(&self) -> LdFormula {
        LdFormula::conjunction(self.formulas().cloned())
    }
}

impl NamedFormulas<HybridFormula> {
    pub fn parse_hybrid(text: &str) -> Result<Self, NamedFileError> {
        NamedFormulas::parse(text, parse_hybrid)
    }

    pub fn conjunction(&self) -> HybridFormula {
        HybridFormula::conjunction(self.formulas().cloned())
    }
}

impl NamedFormulas<FolFormula> {
    pub fn parse_fol(text: &str) -> Result<Self, NamedFileError> {
        NamedFormulas::parse(text, parse_fol)
    }

    pub fn conjunction(&self) -> FolFormula {
        FolFormula::conjunction(self.formulas().cloned()).expect("named files are non-empty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entries_and_conjoins() {
        let f = NamedFormulas::parse_ld("# c\nA: p\n\nB-2: []q\n").unwrap();
        assert_eq!(f.labels(), ["A", "B-2"]);
        assert_eq!(f.conjunction(), parse_ld("p & []q").unwrap());
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            NamedFormulas::parse_ld("A: p\nB p\n"),
            Err(NamedFileError::MissingLabel { line: 2 })
        );
        assert!(matches!(
            NamedFormulas::parse_ld("A: p\nA: q\n"),
            Err(NamedFileError::DuplicateLabel { line: 2, .. })
        ));
        assert!(matches!(
            NamedFormulas::parse_ld("A: p &\n"),
            Err(NamedFileError::Syntax { line: 1, .. })
        ));
        assert_eq!(NamedFormulas::parse_ld("# only\n"), Err(NamedFileError::Empty));
    }
}
