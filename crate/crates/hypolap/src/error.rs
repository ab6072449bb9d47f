use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum HypolapError {
    #[error("Jacobi identity violated: residual {residual:.3e} at basis triple ({i},{j},{k})")]
    JacobiViolation { i: usize, j: usize, k: usize, residual: f64 },

    #[error("bilinear form is not invariant: residual {residual:.3e}")]
    NonInvariantForm { residual: f64 },

    #[error("theta is not a B-preserving Lie-algebra involution: {reason}")]
    ThetaNotInvolution { reason: String },

    #[error("matrices do not define a Lie-algebra representation: residual {residual:.3e}")]
    NotARepresentation { residual: f64 },

    #[error("Ad(k) a != a: residual {residual:.3e}")]
    NotCommuting { residual: f64 },

    #[error("singular subspace solve: {context}")]
    SingularSubspaceSolve { context: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("endomorphism is not B-antisymmetric: residual {residual:.3e}")]
    NotAntisymmetric { residual: f64 },

    #[error("Tr^odd requires a pure-parity operator, got mixed parity")]
    MixedParityForOddTrace,

    #[error("identity {id} failed: {detail}")]
    IdentityFailed { id: String, detail: String },

    #[error("polynomial degree {degree} exceeds the Wick-calculus cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("spectrum leaves the domain of the chosen phi: {reason}")]
    SpectrumOutOfDomain { reason: String },

    #[error("C is not central / D^2 != C: residual {residual:.3e}")]
    CNotCentral { residual: f64 },

    #[error("integrand too singular at the s=0 endpoint")]
    EndpointSingularity,

    #[error("sinh((x+i theta)/2) vanishes at eigenvalue {value}")]
    SingularSinh { value: f64 },

    #[error("square-root branch tracking failed: {reason}")]
    BranchTrackingFailure { reason: String },

    #[error("quadrature over k(gamma) of dimension {dim} not supported (cap {cap})")]
    QuadratureDim { dim: usize, cap: usize },

    #[error("preset has rank-one orbital data only; requested configuration has dim b(gamma) = {dim}")]
    RankTooHigh { dim: usize },

    #[error("Euler class of N_{{X(gamma)/X(k)}} has positive rank; not desk-computable")]
    EulerClassNonScalar,

    #[error("group step too large: |exp argument| = {norm:.3e} > 1")]
    StepTooLarge { norm: f64 },

    #[error("insufficient tail events for the escape fit: {context}")]
    InsufficientTailEvents { context: String },

    #[error("beta^2 = {beta_sq:.6} beyond the analytic-continuation guard {guard:.6}")]
    DomainGuard { beta_sq: f64, guard: f64 },

    #[error("preset not found: {name}")]
    PresetNotFound { name: String },

    #[error("{0}")]
    Other(String),
}
