use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeP(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("modulus has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    MixedFields,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("CRT moduli are not pairwise coprime")]
    NonCoprimeModuli,
    #[error("element is not invertible modulo {0}")]
    NotInvertible(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("not in standard form: {0}")]
    NotStandardForm(String),
    #[error("conflicting approximation targets: {0}")]
    ConflictingTargets(String),
    #[error("operation requires characteristic {expected}, field has characteristic {got}")]
    WrongCharacteristic { expected: &'static str, got: u32 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error("iteration cap of {0} steps reached")]
    IterationCap(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("no solution of the index congruences: {0}")]
    NoSolution(String),
    #[error("model is inseparable")]
    InseparableModel,
    #[error("basis matrix is singular")]
    SingularBasisMatrix,
    #[error("enumeration budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("input cubic is reducible")]
    ReducibleInput,
    #[error("pure cubic (no linear term); only impure extensions are supported")]
    PureCubic,
    #[error("cannot bring cubic into standard form here: {0}")]
    NotReducibleHere(String),
    #[error("cubic is reducible over F_q(x)")]
    ReducibleCubic,
    #[error("cubic is inseparable")]
    Inseparable,
    #[error("parse error: {0}")]
    Parse(String),
}
