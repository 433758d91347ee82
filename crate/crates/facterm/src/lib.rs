//! Exact finite computations around factorization systems: grid strings over
//! `{h, v}` and their morphisms, finite categories with a factorization
//! system, nerves and the Segal condition, distributive laws and their
//! base-graded form, homology of square-probe simplicial sets, and low
//! orientals.

pub mod error;
pub mod fincat;
pub mod fmor;
pub mod fstring;
pub mod nerve;
pub mod orientals;
pub mod sdelta;
pub mod spans;

mod monotone;

pub use error::{Error, Result};
pub use fmor::{
    canonical_word, classify, compose, embed_simplicial, enumerate_morphisms,
    factor_active_inert, factor_covering_inclusion, from_word, generator, ClassFlags, FMorphism,
    GeneratorToken, SimplicialKind, SimplicialOp,
};
pub use fstring::{FString, GridPoint, Letter};
