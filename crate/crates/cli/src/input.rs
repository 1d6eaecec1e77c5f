use std::fmt;

use cayley::catalog;
use cayley::format::{self, SemigroupFile};
use cayley::{CayleyMachine, ElementId, ElementSet, FiniteSemigroup, Mode};

use crate::Input;

#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<cayley::Error> for CliError {
    fn from(e: cayley::Error) -> Self {
        CliError(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn fail<T>(message: impl Into<String>) -> CliResult<T> {
    Err(CliError(message.into()))
}

pub fn read_file(input: &Input) -> CliResult<SemigroupFile> {
    if let Some(key) = &input.catalog {
        return match catalog::lookup(key) {
            Some(entry) => Ok(SemigroupFile::from_semigroup(&entry.semigroup)),
            None => fail(format!("unknown catalog key {key:?}")),
        };
    }
    let path = input.file.as_ref().expect("clap requires a file or --catalog");
    let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(format::parse_file(&text)?)
}

pub fn load(input: &Input) -> CliResult<FiniteSemigroup> {
    Ok(read_file(input)?.into_semigroup()?)
}

/// Splits a comma separated list; the empty string is the empty word.
fn split(text: &str) -> Vec<&str> {
    if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',').map(str::trim).collect()
    }
}

/// A word of element names, resolved against a machine's domain (so θ, or
/// `theta`, and an adjoined identity are accepted where they exist).
pub fn parse_word(machine: &CayleyMachine, text: &str) -> CliResult<Vec<ElementId>> {
    split(text)
        .into_iter()
        .map(|name| match machine.find_value(name) {
            Some(v) => Ok(v),
            None => fail(format!("unknown element {name:?}")),
        })
        .collect()
}

/// A word over the elements of `S` itself.
pub fn parse_elements(s: &FiniteSemigroup, text: &str) -> CliResult<Vec<ElementId>> {
    split(text).into_iter().map(|name| resolve(s, name)).collect()
}

/// Element names, or numeric ids when no element has that name.
pub fn parse_ids(s: &FiniteSemigroup, text: &str) -> CliResult<ElementSet> {
    let ids = parse_elements(s, text)?;
    if ids.is_empty() {
        return fail("the element set must be non-empty");
    }
    Ok(ids.into_iter().collect())
}

fn resolve(s: &FiniteSemigroup, name: &str) -> CliResult<ElementId> {
    if let Some(e) = s.find(name) {
        return Ok(e);
    }
    match name.parse::<usize>() {
        Ok(i) if i < s.order() => Ok(ElementId::new(i)),
        _ => fail(format!("unknown element {name:?}")),
    }
}

pub fn parse_mode(s: &FiniteSemigroup, text: &str) -> CliResult<Mode> {
    match text.split_once('=') {
        None if text == "full" => Ok(Mode::Full),
        Some(("ideal", ids)) => Ok(Mode::Ideal(parse_ids(s, ids)?)),
        Some(("trace", ids)) => Ok(Mode::Trace(parse_ids(s, ids)?)),
        _ => fail(format!("unknown mode {text:?}; expected full, ideal=<elements> or trace=<elements>")),
    }
}
