use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} out of range for order {v}")]
    PointOutOfRange { v: usize, point: usize },
    #[error("degenerate triple ({0}, {1}, {2}): points must be pairwise distinct")]
    DegenerateTriple(usize, usize, usize),
    #[error("window length {l} out of range: need 3 <= l <= {v}")]
    WindowOutOfRange { v: usize, l: usize },
    #[error("sequence of length {len} is not a permutation of 0..{v}")]
    NotAPermutation { v: usize, len: usize },
    #[error("order {v} is not admissible: need v >= 3 and v = 0 or 1 (mod 3)")]
    InadmissibleOrder { v: usize },
    #[error("every directed triple system of order {v} has a {v}-good sequencing")]
    AlwaysSequenceable { v: usize },
    #[error("not a valid directed triple system: {0}")]
    InvalidDesign(String),
    #[error("sequencing is not {l}-good for the design")]
    SequencingNotGood { l: usize },
    #[error("construction produced a defective design: {0}")]
    Construction(String),
    #[error("unbounded search refused for order {v}: supply a node or time budget")]
    BudgetRequired { v: usize },
    #[error("budget exhausted after counting {counted} sequencings; result is partial")]
    PartialCount { counted: u64 },
    #[error("canonical forms are only computed up to order {max}, got {v}")]
    UnsupportedOrder { v: usize, max: usize },
    #[error("twofold triple system is invalid: {0}")]
    InvalidTts(String),
    #[error("pairwise balanced design is invalid: {0}")]
    InvalidPbd(String),
    #[error("no filler of order {size} for block {block:?}")]
    MissingFiller { size: usize, block: Vec<usize> },
    #[error("bad block index {index}: the design has {count} blocks")]
    BadBlockIndex { index: usize, count: usize },
    #[error("block size {block} does not match bad design order {design}")]
    BadBlockSize { block: usize, design: usize },
    #[error("initial triples share the directed edge ({0}, {1})")]
    DuplicateInitialEdge(usize, usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("proof rejected at {location}: {problem}")]
    ProofCheck { location: String, problem: String },
    #[error("unknown catalog entry {name:?}; available: {available}")]
    UnknownCatalogEntry { name: String, available: String },
}
