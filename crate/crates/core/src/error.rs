use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("arrow `{arrow}` is a loop at vertex `{vertex}`")]
    Loop { arrow: String, vertex: String },
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow label `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph is not bipartitely oriented: vertex `{0}` has both incoming and outgoing arrows")]
    NotBipartitelyOriented(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexSetError {
    #[error("index set must be nonempty")]
    Empty,
    #[error("index {member} lies outside [1, {max}]")]
    OutOfRange { member: usize, max: usize },
    #[error("index set members must be strictly increasing")]
    NotIncreasing,
    #[error("point count n must be positive")]
    ZeroPoints,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("stage tuples have differing lengths ({0} and {1})")]
    RaggedStages(usize, usize),
    #[error("stage tuples have length {found}, expected |I| - 1 = {expected}")]
    StageLength { expected: usize, found: usize },
    #[error("index has {found} entries for {what}, graph has {expected}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("facet index k = {k} outside 1..={max}")]
    FacetOutOfRange { k: usize, max: usize },
    #[error("facet of an index set with a single member is undefined")]
    NoFacets,
    #[error("index is not stable with respect to {0}")]
    NotStable(String),
    #[error("tuple has {found} entries, expected n = {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("tuple entry {0} does not name a node of the expanded graph")]
    UnknownNode(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("cell `{cell}` in dimension {dim} has {found} faces, expected {expected}")]
    FaceCount {
        dim: usize,
        cell: String,
        expected: usize,
        found: usize,
    },
    #[error("face `{face}` of cell `{cell}` is not a cell of dimension {dim}")]
    UnknownFace { dim: usize, cell: String, face: String },
    #[error("duplicate cell key `{0}`")]
    DuplicateCell(String),
    #[error("generator {generator} does not commute with d_{index} at cell `{cell}` (dimension {dim})")]
    ActionNotCommuting {
        generator: usize,
        dim: usize,
        cell: String,
        index: usize,
    },
    #[error("generator {generator} is not a permutation of the {dim}-cells")]
    NotAPermutation { generator: usize, dim: usize },
    #[error("predicted cell count {predicted} exceeds the bound {bound}")]
    TooLarge { predicted: u128, bound: u128 },
    #[error("face index {index} out of range for a {dim}-cell")]
    FaceOutOfRange { index: usize, dim: usize },
    #[error("invalid cell: {0}")]
    InvalidCell(String),
}
