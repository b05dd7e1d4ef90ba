use thiserror::Error;

/// Errors raised while evaluating gyrogroup operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GyroError {
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("numerical overflow: {0}")]
    NumericalOverflow(String),
    #[error("element {0} has no unique two-sided inverse")]
    NoInverse(usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("order {order} exceeds the configured cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("{0}")]
    InvalidSubset(String),
}

/// Errors raised when an action table or homomorphism is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action table has {actual} entries, expected {expected}")]
    Shape { expected: usize, actual: usize },
    #[error("action table is for a group of order {table}, carrier has order {carrier}")]
    OrderMismatch { table: usize, carrier: usize },
    #[error("entry {element}·{point} = {value} is out of range")]
    OutOfRange {
        element: usize,
        point: usize,
        value: usize,
    },
    #[error("identity axiom fails: 0·{point} = {image}")]
    Identity { point: usize, image: usize },
    #[error("compatibility axiom fails: {a}·({b}·{x}) != ({a}⊕{b})·{x}")]
    Compatibility { a: usize, b: usize, x: usize },
    #[error("image of {element} is not a permutation of the point set")]
    NotPermutation { element: usize },
    #[error("not a homomorphism: σ({a}⊕{b}) != σ({a})∘σ({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("subset is not invariant: {a}·{y} leaves it")]
    NotInvariant { a: usize, y: usize },
    #[error("point {0} is out of range")]
    PointOutOfRange(usize),
    #[error("G-sets are over different carriers")]
    CarrierMismatch,
    #[error("the point set is empty")]
    EmptyPointSet,
}

/// Failures of analysis routines whose postconditions are theorems.
///
/// For validated inputs these are unreachable; they are reported rather
/// than hidden so that a broken invariant surfaces with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("{property} violated at {witness:?}")]
    TheoremViolation {
        property: &'static str,
        witness: Vec<usize>,
    },
    #[error("coset criterion fails: {0}")]
    CriterionNotSatisfied(String),
    #[error("left cosets of the subgyrogroup overlap: cosets {0} and {1}")]
    CosetsOverlap(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Gyro(#[from] GyroError),
}
