use crate::equations::Var;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("partition parts must be positive and weakly decreasing")]
    InvalidParts,
    #[error("operation requires a nonempty partition")]
    EmptyPartition,
    #[error("partition weights differ ({left} vs {right})")]
    WeightMismatch { left: usize, right: usize },
    #[error("no almost rectangular partition of {m} into {k} parts")]
    TooManyParts { m: usize, k: usize },
    #[error("partition has no (a,b) decomposition")]
    NoAbDecomposition,
    #[error("(u, r) = ({u}, {r}) does not satisfy u > r >= 2")]
    InvalidStableQ { u: usize, r: usize },
    #[error("(k, l) = ({k}, {l}) outside 1..={k_max} x 1..={l_max}")]
    IndexOutOfRange {
        k: usize,
        l: usize,
        k_max: usize,
        l_max: usize,
    },
    #[error("invalid order matrix k={k}, l'={lprime}, r={r}")]
    InvalidOrderMatrix { k: usize, lprime: usize, r: usize },
    #[error("power {s} is below the range of the closed form")]
    PowerTooSmall { s: usize },
    #[error("variable {0} is outside the coordinate ring of Q")]
    VariableOutOfRange(Var),
    #[error("variable {0} is not assigned")]
    UnassignedVariable(Var),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is below the sampling threshold 2^31")]
    PrimeTooSmall(u64),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("sampled Jordan types have no dominance maximum")]
    NoDominanceMaximum,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("closed form disagrees with the corank route at (k, l) = ({k}, {l})")]
    ClosedFormMismatch { k: usize, l: usize },
    #[error("cannot parse partition: {0}")]
    Parse(&'static str),
}
