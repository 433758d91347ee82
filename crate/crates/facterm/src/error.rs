use crate::fmor::GeneratorToken;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("coordinate {value} out of range 0..={max}")]
    Range { value: usize, max: usize },
    #[error("cannot compose: {0}")]
    Compose(String),
    #[error("generator {token} does not apply to {string}: {reason}")]
    Generator {
        token: GeneratorToken,
        string: String,
        reason: String,
    },
    #[error("token {position}: {source}")]
    Word {
        position: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid morphism: {0}")]
    Morphism(String),
    #[error("wrong class: {0}")]
    Class(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("invalid category: {0}")]
    Category(String),
    #[error("not a factorization system: {0}")]
    Factorization(String),
    #[error("not a factorization-preserving functor: {0}")]
    Functor(String),
    #[error("table does not cover: {0}")]
    Coverage(String),
    #[error("distributive law violated: {0}")]
    DistLaw(String),
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("invalid cell: {0}")]
    Cell(String),
    #[error("search too large: {0}")]
    Resource(String),
}
