use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// Verification *failures* (a relation that does not hold, an unstable
/// configuration) are reported as data in the respective report types; the
/// variants here are for calls that cannot produce a result at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),
    #[error("operation not supported over this ring: {0}")]
    UnsupportedRing(String),

    #[error("no coordinate is a unit in {0}")]
    NoUnitCoordinate(String),
    #[error("elements are dependent (cross-product test failed) computing `{0}`")]
    DependentElements(String),
    #[error("isotropic element `{0}`")]
    Isotropic(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("sort clash on `{0}`")]
    SortClash(String),
    #[error("not a monomorphism: {0}")]
    NotMonomorphism(String),
    #[error("invalid base embedding: {0}")]
    InvalidBase(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),

    #[error("element `{0}` has no propagation rule")]
    UncoveredElement(String),
    #[error("element `{0}` has more than one propagation rule")]
    DuplicateRule(String),
    #[error("rule for `{target}` uses `{arg}` before it is defined")]
    ScheduleOrder { target: String, arg: String },
    #[error("rule for `{0}` has arguments or target of the wrong sort")]
    RuleSort(String),
    #[error("incidence ({point}, {line}) violated")]
    IncidenceViolation { point: String, line: String },
    #[error("marked point `{0}` is not finite")]
    InfiniteMarkedPoint(String),
    #[error("expected {expected} inputs, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("functional check failed: {0}")]
    FunctionalCheck(String),
    #[error("composition mismatch: {0}")]
    Composition(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("point is not a solution: equation {0} does not vanish")]
    NotASolution(usize),

    #[error("identification collision: {0}")]
    IdentificationCollision(String),
    #[error("invalid labelled graph: {0}")]
    InvalidGraph(String),
    #[error("unsupported edge label {0}")]
    UnsupportedLabel(u32),

    #[error("singular matrix")]
    SingularMatrix,
    #[error("representation does not satisfy relation {0}")]
    RelationFailure(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("matrix is not a scalar multiple of an orthogonal matrix: {0}")]
    NotOrthogonal(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
