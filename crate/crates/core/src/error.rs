use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical precondition failures carry the variant names used in reports;
/// `Parse` and `Invalid` describe malformed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no cyclotomic factorization")]
    ZeroPolynomial,
    #[error("degree {degree} is outside the complex range {lo}..={hi}")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("module has free rank {free_rank}; a torsion module is required")]
    NotTorsion { free_rank: usize },
    #[error("generator images have gcd {gcd}; the map to Z is not onto")]
    NotEpimorphism { gcd: i64 },
    #[error("relator {index} has total image {image} under the epimorphism")]
    RelatorNotInKernel { index: usize, image: i64 },
    #[error("psi-kernel did not stabilize below m = {cap}")]
    NoStabilization { cap: usize },
    #[error("direction is not closed: d(eta) != 0")]
    NotClosed,
    #[error("direction does not lie in W_1")]
    NotW1,
    #[error("direction does not lie in F^1")]
    NotF1,
    #[error("d(a) does not equal eta1 - eta2")]
    WitnessMismatch,
    #[error("map is not a morphism of cdgas: {0}")]
    NotMorphism(String),
    #[error("module is not semisimple or not annihilated by some t^N - 1")]
    NotSemisimpleOrNotUnityPowerTorsion,
    #[error("eigenvalues are not all roots of unity (offending factor {0})")]
    NotRootsOfUnity(String),
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("arrangement has rank {rank}; an essential planar arrangement is required")]
    NotEssential { rank: usize },
    #[error("multiplicity of (t-1) is {found}, expected d-1 = {expected}")]
    InconsistentFixedPart { found: usize, expected: usize },
    #[error("non-unipotent part has odd degree {0}")]
    OddNonUnityPart(usize),
    #[error("independent computations disagree: {0}")]
    OracleMismatch(String),
    #[error("no built-in presentation for this arrangement: {0}")]
    NoPresentation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name as reported by the command-line tool.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            Error::NotTorsion { .. } => "NotTorsion",
            Error::NotEpimorphism { .. } => "NotEpimorphism",
            Error::RelatorNotInKernel { .. } => "RelatorNotInKernel",
            Error::NoStabilization { .. } => "NoStabilization",
            Error::NotClosed => "NotClosed",
            Error::NotW1 => "NotW1",
            Error::NotF1 => "NotF1",
            Error::WitnessMismatch => "WitnessMismatch",
            Error::NotMorphism(_) => "NotMorphism",
            Error::NotSemisimpleOrNotUnityPowerTorsion => "NotSemisimpleOrNotUnityPowerTorsion",
            Error::NotRootsOfUnity(_) => "NotRootsOfUnity",
            Error::DuplicateLine(..) => "DuplicateLine",
            Error::NotEssential { .. } => "NotEssential",
            Error::InconsistentFixedPart { .. } => "InconsistentFixedPart",
            Error::OddNonUnityPart(_) => "OddNonUnityPart",
            Error::OracleMismatch(_) => "OracleMismatch",
            Error::NoPresentation(_) => "NoPresentation",
            Error::Invalid(_) => "Invalid",
            Error::Parse(_) => "Parse",
        }
    }

    /// Whether the error describes malformed input rather than a failed
    /// mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Invalid(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
