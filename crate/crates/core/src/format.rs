//! The JSON semigroup file format: `{"name", "elements", "table"}`, rows
//! indexed by the left factor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{magma_violation, FiniteSemigroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupFile {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl SemigroupFile {
    pub fn from_semigroup(s: &FiniteSemigroup) -> Self {
        SemigroupFile {
            name: s.name().to_string(),
            elements: s.names().to_vec(),
            table: s.rows(),
        }
    }

    pub fn into_semigroup(self) -> Result<FiniteSemigroup> {
        if self.elements.len() != self.table.len() {
            return Err(Error::BadNames);
        }
        FiniteSemigroup::new(self.name, self.elements, &self.table)
    }

    /// The first associativity violation, for files read as plain magmas.
    pub fn violation(&self) -> Result<Option<(usize, usize, usize)>> {
        magma_violation(&self.table)
    }
}

pub fn parse_file(text: &str) -> Result<SemigroupFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse(text: &str) -> Result<FiniteSemigroup> {
    parse_file(text)?.into_semigroup()
}

pub fn emit(s: &FiniteSemigroup) -> String {
    serde_json::to_string_pretty(&SemigroupFile::from_semigroup(s)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_catalog() {
        for entry in catalog::catalog() {
            assert_eq!(parse(&emit(&entry.semigroup)).unwrap(), entry.semigroup);
        }
    }

    #[test]
    fn rejects_non_associative() {
        let text = r#"{"name":"m","elements":["p","q"],"table":[[0,0],[1,0]]}"#;
        assert!(matches!(parse(text), Err(Error::NotAssociative { .. })));
        assert!(parse_file(text).unwrap().violation().unwrap().is_some());
        assert!(matches!(parse("{"), Err(Error::Parse(_))));
    }
}
