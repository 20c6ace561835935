use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q0 = {0}")]
    PoleAtQ0(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("normalization exceeded the step budget of {0} rule applications")]
    NonTerminating(usize),
    #[error("operands belong to different presentations")]
    MixedPresentation,
    #[error("presentation has no star structure")]
    NoStarStructure,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad presentation: {0}")]
    BadPresentation(String),

    #[error("degenerate vectors: w^T v = {0}, expected 1")]
    DegenerateVectors(String),
    #[error("bad degrees: {0}")]
    BadDegrees(String),
    #[error("missing Hopf-Galois witness c''(x)c'''")]
    MissingWitness,
    #[error("element does not belong to this line module: {0}")]
    WrongModule(String),
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("no g_lower satisfies the Gram identities: {0}")]
    SingularGram(String),
    #[error("element is not Hermitian: {0}")]
    NotHermitian(String),
    #[error("no inverse found at bounded degree: {0}")]
    NotInvertible(String),
    #[error("map is not a bimodule map: {0}")]
    NotBimoduleMap(String),
    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("tensor elements belong to different line modules")]
    MixedModule,
    #[error("no Hermitian metric attached")]
    NoMetric,
    #[error("no star operation L -> conj(L): 2g != 0 in the grading group")]
    NoStarOnL,
    #[error("no central Hermitian fourth root of {0}")]
    NoFourthRoot(String),
    #[error("metric is not star compatible: alpha = {0}")]
    NotStarCompatible(String),

    #[error("forms belong to different calculi")]
    MixedDga,
    #[error("form is not in Omega^1 A: {0}")]
    NotInOmegaA(String),
    #[error("no star operation on forms for this calculus")]
    NoFormStar,

    #[error("grid mismatch")]
    GridMismatch,

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
