use thiserror::Error;

/// Errors shared across the crate. Variant names follow the operations that
/// raise them; failures of the Q-conditions themselves are report data, not
/// errors.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("tolerances must be strictly positive")]
    InvalidTolerance,
    #[error("Gram matrix is not Hermitian as stored")]
    NotHermitian,
    #[error("Hermitian form does not have signature (-,+,+)")]
    SignatureError,
    #[error("projective point needs a nonzero representative")]
    ZeroVector,
    #[error("operation requires a nonisotropic point")]
    IsotropicArgument,
    #[error("points are projectively equal; their span is degenerate")]
    DegenerateSpan,
    #[error("line_relation requires positive (polar) points")]
    NotPolarPoints,
    #[error("matrix is not an isometry of the form: {0}")]
    NotIsometry(&'static str),
    #[error("isometry is not loxodromic")]
    NotLoxodromic,
    #[error("eigenvalues too close to separate at eq_tol")]
    EigenFailure,
    #[error("isometry is not hyperbolic (real loxodromic with trace > 3)")]
    NotHyperbolic,
    #[error("could not locate the loxodromic axis")]
    AxisFailure,
    #[error("sign triple admits at most one +1 entry")]
    BadSignTriple,
    #[error("surface coordinates violate their invariants: {0}")]
    InvalidCoords(&'static str),
    #[error("triple is degenerate (orthogonal pair or single complex line)")]
    DegenerateTriple,
    #[error("relation with delta = 1 is empty for sign list (+,-,-,-,-)")]
    DeltaOne,
    #[error("conj(delta)*tau is not real > 3: cannot decompose")]
    TraceMismatch,
    #[error("pentagon invariant violated: {0}")]
    PentagonInvariant(&'static str),
    #[error("bending frame construction failed")]
    FrameFailure,
    #[error("relation residual blew up after bending")]
    ResidualBlowup,
    #[error("check requires Q1 to hold")]
    PreconditionQ1,
    #[error("check requires Q1-Q3 to hold")]
    PreconditionQ123,
    #[error("argument lies on the arg branch cut")]
    ArgBranch,
    #[error("bisector spine is degenerate")]
    DegenerateSpine,
    #[error("complex geodesics are not ultraparallel")]
    NotUltraparallel,
    #[error("point is not on the boundary of the complex geodesic")]
    NotOnBoundary,
    #[error("cyclic-order product has nonzero real part")]
    RealPartNonzero,
    #[error("isometry does not preserve the complex geodesic")]
    NotInvariant,
    #[error("isometry restricted to the slice is not hyperbolic")]
    NotHyperbolicOnSlice,
    #[error("meridional side selection is ambiguous at eq_tol")]
    SideAmbiguous,
    #[error("direction test '{0}' disagrees with the section pattern")]
    PatternMismatch(&'static str),
    #[error("no rational representative (denominator <= 12) in the mod-2 window")]
    WindowMiss,
    #[error("orbifold Euler characteristic needs n >= 5")]
    BadN,
    #[error("operation requires a verified quadrangle (all of Q1-Q4)")]
    QuadrangleNotVerified,
    #[error("invalid input: {0}")]
    Input(String),
}
