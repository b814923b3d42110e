use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("hooks are not strictly decreasing: {0}")]
    IncompatibleHooks(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("plethysm undefined: {0}")]
    PlethysmUndefined(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("weight is not a character of the parabolic: {0}")]
    NotParabolicWeight(String),
    #[error("cutoff too large: {what} needs {needed} entries, bound is {bound}")]
    CutoffTooLarge {
        what: String,
        needed: usize,
        bound: usize,
    },
    #[error("representatives missing for {0}")]
    RepresentativesMissing(String),
    #[error("top component is not one-dimensional: dim R_{{{p},{q}}} = {dim}")]
    TopNotOneDimensional { p: usize, q: usize, dim: usize },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("no nonnegative integer solution: {0}")]
    NonIntegerSolution(String),
    #[error("perturbation series did not terminate within {0} iterations")]
    SeriesDiverged(usize),
    #[error("h-tableaux have different shapes")]
    ShapeMismatch,
    #[error("tableau is already standard")]
    AlreadyStandard,
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
}

pub type Result<T> = std::result::Result<T, Error>;
