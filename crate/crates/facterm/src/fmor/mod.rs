//! Morphisms between grid strings.
//!
//! A morphism `S -> S'` is a pair of monotone maps `a: [n] -> [n']`,
//! `b: [m] -> [m']` whose product sends `sq(S)` into `sq(S')`. Rows and
//! columns of a staircase region are intervals, so every functor between the
//! regions that keeps horizontal and vertical arrows apart splits this way;
//! the test suite checks that claim against a direct search over point maps.

mod canonical;
mod classes;
mod generators;
pub mod relations;
mod simplicial;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fstring::{FString, GridPoint};
use crate::monotone::{is_monotone, monotone_maps};

pub use canonical::canonical_word;
pub use classes::{
    classify, covering_factorizations_literal, factor_active_inert, factor_covering_inclusion,
    pushforward, ClassFlags,
};
pub use generators::{from_word, generator, generators_on, parse_word, word_to_string, GeneratorToken};
pub use simplicial::{embed_simplicial, simplicial_object, SimplicialKind, SimplicialOp};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FMorphism {
    source: FString,
    target: FString,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl FMorphism {
    pub fn new(source: FString, target: FString, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let (n, m, n2, m2) = (source.n(), source.m(), target.n(), target.m());
        if a.len() != n + 1 || b.len() != m + 1 {
            return Err(Error::Morphism(format!(
                "coordinate maps need {} and {} entries, got {} and {}",
                n + 1,
                m + 1,
                a.len(),
                b.len()
            )));
        }
        if let Some(&v) = a.iter().find(|&&v| v > n2) {
            return Err(Error::Range { value: v, max: n2 });
        }
        if let Some(&v) = b.iter().find(|&&v| v > m2) {
            return Err(Error::Range { value: v, max: m2 });
        }
        if !is_monotone(&a) || !is_monotone(&b) {
            return Err(Error::Morphism("coordinate maps must be monotone".into()));
        }
        let (hs, ht) = (source.heights(), target.heights());
        for x in 0..=n {
            if ht[a[x]] > b[hs[x]] {
                return Err(Error::Morphism(format!(
                    "point ({x},{}) of {source} lands at ({},{}) below the path of {target}",
                    hs[x], a[x], b[hs[x]]
                )));
            }
        }
        Ok(FMorphism { source, target, a, b })
    }

    pub(crate) fn new_unchecked(source: FString, target: FString, a: Vec<usize>, b: Vec<usize>) -> Self {
        debug_assert!(FMorphism::new(source.clone(), target.clone(), a.clone(), b.clone()).is_ok());
        FMorphism { source, target, a, b }
    }

    pub fn identity(s: &FString) -> Self {
        FMorphism {
            a: (0..=s.n()).collect(),
            b: (0..=s.m()).collect(),
            source: s.clone(),
            target: s.clone(),
        }
    }

    /// Translation by `(dx, dy)`; fails unless the image stays in the region.
    pub fn translation(source: &FString, target: &FString, dx: usize, dy: usize) -> Result<Self> {
        FMorphism::new(
            source.clone(),
            target.clone(),
            (0..=source.n()).map(|x| x + dx).collect(),
            (0..=source.m()).map(|y| y + dy).collect(),
        )
    }

    pub fn source(&self) -> &FString {
        &self.source
    }

    pub fn target(&self) -> &FString {
        &self.target
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.a.iter().enumerate().all(|(i, &v)| i == v)
            && self.b.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn apply(&self, p: GridPoint) -> Result<GridPoint> {
        if !self.source.contains(p)? {
            return Err(Error::Domain(format!("{p} is not in sq{}", self.source)));
        }
        Ok(GridPoint::new(self.a[p.x], self.b[p.y]))
    }

    /// Image of `(0,0)`.
    pub fn origin(&self) -> GridPoint {
        GridPoint::new(self.a[0], self.b[0])
    }

    /// Image of `(n,m)`.
    pub fn end(&self) -> GridPoint {
        GridPoint::new(*self.a.last().unwrap(), *self.b.last().unwrap())
    }
}

impl fmt::Display for FMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} a={:?} b={:?}", self.source, self.target, self.a, self.b)
    }
}

impl<'de> Deserialize<'de> for FMorphism {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            source: FString,
            target: FString,
            a: Vec<usize>,
            b: Vec<usize>,
        }
        let r = Raw::deserialize(de)?;
        FMorphism::new(r.source, r.target, r.a, r.b).map_err(serde::de::Error::custom)
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(g: &FMorphism, f: &FMorphism) -> Result<FMorphism> {
    if f.target != g.source {
        return Err(Error::Compose(format!(
            "target {} of the first map differs from source {} of the second",
            f.target, g.source
        )));
    }
    Ok(FMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        a: f.a.iter().map(|&x| g.a[x]).collect(),
        b: f.b.iter().map(|&y| g.b[y]).collect(),
    })
}

/// Every morphism `S -> T`, sorted.
pub fn enumerate_morphisms(s: &FString, t: &FString) -> Vec<FMorphism> {
    let (hs, ht) = (s.heights(), t.heights());
    let bs = monotone_maps(s.m() + 1, t.m());
    let mut out = Vec::new();
    for a in monotone_maps(s.n() + 1, t.n()) {
        for b in &bs {
            if (0..hs.len()).all(|x| ht[a[x]] <= b[hs[x]]) {
                out.push(FMorphism {
                    source: s.clone(),
                    target: t.clone(),
                    a: a.clone(),
                    b: b.clone(),
                });
            }
        }
    }
    out
}
