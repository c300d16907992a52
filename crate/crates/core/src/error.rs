use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable set is empty")]
    NoVariables,
    #[error("duplicate or empty variable name {0:?}")]
    BadVariableName(String),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("operands live over different variable sets ({left} vs {right} variables)")]
    VariableMismatch { left: usize, right: usize },
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generator {0} is the unit monomial")]
    UnitGenerator(String),
    #[error("generators are not a minimal generating set: {0} divides {1}")]
    NotMinimal(String, String),
    #[error("ideal is not squarefree: generator {0}")]
    NotSquarefree(String),
    #[error("unknown vertex or variable {0:?}")]
    UnknownVertex(String),
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("facets are not an antichain: facet {0} is contained in facet {1}")]
    FacetContainment(usize, usize),
    #[error("facet index {0} out of range")]
    FacetIndex(usize),
    #[error("{0} is not a facet of the complex")]
    NotAFacet(String),
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("generator {0} is divisible by every variable, so its dual facet is empty")]
    EmptyDualFacet(String),
    #[error("facet {0} is the whole vertex universe")]
    FullFacet(String),
    #[error("size guard exceeded: {what} is {got}, limit {limit}")]
    Guard { what: &'static str, got: usize, limit: usize },
    #[error("complex is not a quasi-forest")]
    NotQuasiForest,
    #[error("not a simplicial forest")]
    NotSimplicialForest,
    #[error("labeled complex has {vertices} vertices but {labels} labels")]
    LabelCount { vertices: usize, labels: usize },
    #[error("differentials do not compose to zero at degree {0}")]
    NonZeroSquare(usize),
    #[error("frame does not have the graph shape: {0}")]
    FrameShape(String),
    #[error("no spanning tree produced; the ideal does not have projective dimension at most one")]
    NoSpanningTree,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
