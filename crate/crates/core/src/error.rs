use thiserror::Error;

/// Domain errors shared by every module in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Matrix rejected by the Seifert-matrix validator.
    #[error("not a Seifert matrix: {0}")]
    NotSeifert(String),

    /// A parameter is outside its documented domain.
    #[error("bad parameter: {0}")]
    BadParameter(String),

    /// Lookup in the knot catalog failed.
    #[error("not found: {0}")]
    NotFound(String),

    /// Vector/matrix dimensions are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An axis was supplied for a pattern of nonzero winding number.
    #[error("axis supplied with nonzero winding number")]
    AxisWithNonzeroWinding,

    /// A Blanchfield self-pairing required to be nonzero is zero.
    #[error("trivial pairing: {0}")]
    TrivialPairing(String),

    /// The Alexander polynomial is a unit where a nontrivial one is required.
    #[error("unit Alexander polynomial: {0}")]
    UnitAlexander(String),

    /// Mod-p reduction collapsed a denominator to zero.
    #[error("bad reduction mod {p}: {detail}")]
    BadReduction { p: u64, detail: String },

    /// The linking-form presentation matrix is singular.
    #[error("degenerate presentation: {0}")]
    DegeneratePresentation(String),

    /// A realization search ran out of budget before finding a witness knot.
    #[error("realization budget exceeded: {0}")]
    RealizationBudgetExceeded(String),

    /// The interval-refinement ladder ended without a certified answer.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Malformed input text or JSON.
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally valid JSON with a field violating its schema.
    #[error("schema error: {0}")]
    Schema(String),
}
