use thiserror::Error;

/// Errors reported by group construction, algebra arithmetic and the
/// verification machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    InvalidParams(String),

    #[error("non-canonical family label: {0}")]
    NonCanonical(String),

    #[error("theta outside the admissible parameter range: {0}")]
    ThetaOutOfRange(String),

    #[error("degenerate parameters (l = 1) need degenerate mode: {0}")]
    DegenerateMode(String),

    #[error("unsupported field degree {0} (supported: 1..=8)")]
    FieldDegree(u8),

    #[error("inversion of zero in GF(2^{0})")]
    ZeroInverse(u8),

    #[error("element is not a unit (augmentation is zero)")]
    NotAUnit,

    #[error("element does not lie in the expected subspace: {0}")]
    NotInSubspace(String),

    #[error("agemo of a non-abelian subgroup is unsupported")]
    NonAbelianAgemo,

    #[error("agemo-center comparison needs r >= l (got r = {r}, l = {l})")]
    AgemoRange { r: u32, l: u32 },

    #[error("Jennings basis needs l >= 2 and a canonical family label: {0}")]
    JenningsUnavailable(String),

    #[error("order mismatch: {0}")]
    OrderMismatch(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("element outside the socle or not a central involution")]
    NotCentralInvolution,

    #[error("relation checks have not passed; no homomorphism to extend")]
    RelationsNotVerified,

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
