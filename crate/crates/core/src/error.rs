use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("walk reduces to the empty word")]
    ContractibleLoop,
    #[error("letters {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("walk contains an inverse eps letter or no eps letter at all")]
    NotMonotone,
    #[error("loop is not simple")]
    NotSimple,
    #[error("inputs are homotopic")]
    HomotopicInputs,
    #[error("rank {r} and total degree {d} are not coprime")]
    NotCoprime { r: i64, d: i64 },
    #[error("search bounds exceeded: n={n}, r={r}")]
    SearchTooLarge { n: usize, r: usize },
    #[error("map does not commute with the differentials")]
    NotChainMap,
    #[error("complex is not minimal")]
    NotMinimal,
    #[error("twist curve is not simple")]
    NotSimpleTwistCurve,
    #[error("loop is not spherical: {0}")]
    NotSpherical(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
