use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("permutation closure exceeds {limit} elements")]
    ClosureTooLarge { limit: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("group order {order} exceeds configured bound {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("no prime p = 1 mod {exponent} with p^2 > 4*{order} found below {bound}")]
    NoSuitablePrime {
        exponent: usize,
        order: usize,
        bound: u64,
    },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("objects belong to different groups")]
    MismatchedGroup,
    #[error("class function is not rational-valued")]
    NotRationalValued,
    #[error("value at a cyclic subgroup depends on the chosen generator")]
    GeneratorDependent,
    #[error("cover is not Galois (derived graph disconnected or not a covering map)")]
    NotGalois,
    #[error("no connected voltage assignment found after {attempts} attempts")]
    NoConnectedAssignmentFound { attempts: usize },
    #[error("representation is defined over a different group than the cover")]
    GroupMismatch,
    #[error("base graph is not a bouquet")]
    NotBouquet,
    #[error("Euler characteristic of the base graph is zero")]
    EulerZero,
    #[error("exponent vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("interpolated degree {found} differs from closed form {expected}")]
    InterpolationMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("coefficients do not define a Brauer relation")]
    NotABrauerRelation,
    #[error("wrong group: {0}")]
    WrongGroup(String),
    #[error("Euler characteristic zero with a non-cyclic Galois group")]
    NonCyclicOnEulerZero,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid cyclic family: {0}")]
    InvalidFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value is not a rational integer")]
    NotInteger,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
