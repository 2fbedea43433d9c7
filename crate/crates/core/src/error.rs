use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("component list is empty")]
    EmptyComponentList,
    #[error("component index {0} appears more than once")]
    DuplicateIndex(usize),
    #[error("component index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("component {index} connects to {target}, which does not exist")]
    DanglingConnection { index: usize, target: usize },
    #[error("component {0} connects to itself")]
    SelfConnection(usize),
    #[error("component {index} has non-positive {field}")]
    NonPositiveDimension { index: usize, field: &'static str },
    #[error("component {index} is {width_mm} mm wide but the cabinet rows are {usable_width_mm} mm")]
    ComponentTooWide { index: usize, width_mm: f64, usable_width_mm: f64 },
    #[error("invalid cabinet: {0}")]
    InvalidCabinet(String),
    #[error("layout is not a permutation of 1..={0}")]
    InvalidLayout(usize),
    #[error("component {0} is not placed")]
    UnknownIndex(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("archive is empty")]
    EmptyArchive,
    #[error("{n} components exceed the enumeration limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("line {line}, column {column}: {reason}")]
    Parse { line: usize, column: usize, reason: String },
    #[error("at {path}: {reason}")]
    JsonParse { path: String, reason: String },
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("invalid value for {field}: {reason}")]
    InvalidValue { field: String, reason: String },
}
