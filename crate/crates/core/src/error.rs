use thiserror::Error;

/// Reasons a finite quantale table is rejected. Every law violation names
/// the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("not a lattice: {reason} (witness {witness:?})")]
    NotALattice { reason: String, witness: Vec<String> },
    #[error("tensor is not associative: ({0} & {1}) & {2} != {0} & ({1} & {2})")]
    NotAssociative(String, String, String),
    #[error("tensor is not commutative: {0} & {1} != {1} & {0}")]
    NotCommutative(String, String),
    #[error("`{unit}` is not a unit for the tensor (fails at {witness})")]
    NotUnital { unit: String, witness: String },
    #[error("unit `{unit}` is not the top element `{top}`")]
    NotIntegral { unit: String, top: String },
    #[error("tensor does not distribute over joins: {p} & ({q} v {r})")]
    NotDistributive { p: String, q: String, r: String },
    #[error("grid is not closed under {tnorm}: {a} & {b} = {value}")]
    ChainNotClosed {
        tnorm: String,
        a: String,
        b: String,
        value: String,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("not a Q-order: {0}")]
    NotAQOrder(crate::qorder::OrderViolation),
    #[error("power set has {count} elements, enumeration budget is {budget}")]
    PowerTooLarge { count: u128, budget: u64 },
    #[error("objects are valued in different quantales")]
    QuantaleMismatch,
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("fuzzy set has {found} values but the base has {expected} points")]
    BaseMismatch { expected: usize, found: usize },
    #[error("not a fuzzy lower set: phi({y}) & A({x},{y}) > phi({x})")]
    NotLower { x: usize, y: usize },
    #[error("not a fuzzy upper set: A({x},{y}) & psi({x}) > psi({y})")]
    NotUpper { x: usize, y: usize },
    #[error("budget exceeded in {what}: {count} > {budget}")]
    BudgetExceeded {
        what: &'static str,
        count: u128,
        budget: u64,
    },
    #[error("sequence is not forward Cauchy: A(x_{j}, x_{k}) < 1 recurs in every tail")]
    NotForwardCauchy { j: usize, k: usize },
    #[error("grid has {points} points, at least 17 are required")]
    GridTooCoarse { points: usize },
    #[error("ordinal-sum decomposition does not match the t-norm: {0}")]
    DecompositionMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Work limits for the exhaustive procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum size of a search space `|Q|^|A|` that may be enumerated.
    pub enumeration: u64,
    /// Maximum number of elementary pair checks per decider call.
    pub pair_checks: u64,
    /// Largest ideal space for which the second-level space is attempted.
    pub ideal_space_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: 5_000_000,
            pair_checks: 5_000_000,
            ideal_space_cap: 512,
        }
    }
}

impl Budget {
    pub fn with_limit(limit: u64) -> Self {
        Budget {
            enumeration: limit,
            pair_checks: limit,
            ..Budget::default()
        }
    }

    pub(crate) fn charge_pairs(&self, what: &'static str, count: u128) -> Result<()> {
        if count > self.pair_checks as u128 {
            return Err(Error::BudgetExceeded {
                what,
                count,
                budget: self.pair_checks,
            });
        }
        Ok(())
    }

    pub(crate) fn check_power(&self, base: usize, exponent: usize) -> Result<()> {
        let count = checked_power(base, exponent);
        if count > self.enumeration as u128 {
            return Err(Error::PowerTooLarge {
                count,
                budget: self.enumeration,
            });
        }
        Ok(())
    }
}

/// `base^exponent`, saturating at `u128::MAX`.
pub(crate) fn checked_power(base: usize, exponent: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exponent {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
