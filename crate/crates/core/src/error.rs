use thiserror::Error;

use crate::semigroup::ElementId;

/// Errors raised across the crate.
///
/// Mathematical verdicts (a failed verification, an enumeration that ran past
/// its bound) are reported as values, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not associative: ({i}·{j})·{k} != {i}·({j}·{k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("table entry at row {row}, column {col} is {value}, outside 0..{order}")]
    OutOfRangeEntry {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("table must be a non-empty square array, got {rows} rows with a row of length {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("semigroup has {order} elements, more than the supported {limit}")]
    TooLarge { order: usize, limit: usize },

    #[error("element names must be distinct and one per element")]
    BadNames,

    #[error("not an ideal: {left}·{right} falls outside the given set")]
    NotAnIdeal { left: ElementId, right: ElementId },

    #[error("the set must be non-empty")]
    EmptySet,

    #[error("element id {0} is out of range")]
    UnknownElement(usize),

    #[error("exhaustive generation is limited to order {limit}, asked for {requested}")]
    BoundExceeded { requested: usize, limit: usize },

    #[error("semigroup has no zero element")]
    NoZero,

    #[error("semigroup is not aperiodic")]
    NotAperiodic,

    #[error("the given elements do not form a J-class")]
    NotAJClass,

    #[error("left action is not independent of the column: {s} on row {a}")]
    InconsistentAction { s: ElementId, a: usize },

    #[error("letter {0} is not in the input alphabet of this machine")]
    AlphabetMismatch(ElementId),

    #[error("value {0} is not an element of the base semigroup and cannot index a generator")]
    NotAGenerator(ElementId),

    #[error("generator word must be non-empty")]
    EmptyWord,

    #[error("machine construction exceeded the state budget of {0}")]
    StateBudgetExceeded(usize),

    #[error("operands belong to different machines")]
    MachineMismatch,

    #[error("enumeration did not complete")]
    IncompleteEnumeration,

    #[error("map is not a surjective morphism: {0}")]
    NotAMorphism(String),

    #[error("witness evaluation disagrees with the enumerated table: {0}")]
    WitnessMismatch(String),

    #[error("subset is not closed under multiplication: {left}·{right}")]
    NotClosed { left: ElementId, right: ElementId },

    #[error("not a product chain: entry {index} is not a right multiple of its predecessor")]
    NotAChain { index: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("the product kills row {a}: the new_a set is undefined")]
    ActionKilled { a: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
