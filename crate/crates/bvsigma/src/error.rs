use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("segment index {index} out of range: list has {segments} segments")]
    IndexOutOfRange { index: usize, segments: usize },
    #[error("line coefficients a and b must not both be zero")]
    DegenerateLine,
    #[error("point list must be nonempty")]
    EmptyPointList,
    #[error("set must be nonempty")]
    EmptySet,
    #[error("point {0} lies outside the function domain")]
    PointOutsideDomain(String),
    #[error("function domain does not match the supplied set")]
    DomainMismatch,
    #[error("exact-mode magnitude is irrational; evaluate in float mode instead")]
    IrrationalMagnitude,
    #[error("value table mixes exact and float entries")]
    MixedValueModes,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("ray points must be collinear with the origin and strictly decreasing in modulus")]
    InvalidRay,
    #[error("guardrail exceeded: {0}")]
    Guardrail(String),
    #[error("origin missing from the set")]
    OriginMissing,
    #[error("moduli rule must be strictly decreasing to zero: {0}")]
    InvalidRule(String),
    #[error("ray directions must be pairwise distinct")]
    DuplicateRayAngles,
    #[error("extra points must be nonzero and off every ray")]
    ExtrasOnRay,
    #[error("set leftovers are nonempty; relocate them first (move_isolated_point)")]
    NonEmptyLeftovers,
    #[error("point {0} must not belong to the base set")]
    PointInBaseSet(String),
    #[error("bijection maps must compose to the identity")]
    NotABijection,
    #[error("ray counts or ray lengths do not match")]
    RayMismatch,
    #[error("need k > l >= 1 for the interleaving construction")]
    BadInterleaveArgs,
    #[error("polygon must be strictly convex with at least 3 vertices, counterclockwise")]
    NotStrictlyConvex,
    #[error("affine map must be invertible")]
    SingularAffineMap,
    #[error("point {0} must lie strictly inside the polygon")]
    NotInterior(String),
    #[error("{0} is not a k-ray spec")]
    NotKRay(String),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("domain must be a truncation of {{0}} union {{1/n}}")]
    NotUnitFractionDomain,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
