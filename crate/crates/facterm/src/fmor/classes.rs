//! Morphism classes and the two factorization systems on grid strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmor::FMorphism;
use crate::fstring::{FString, GridPoint, Letter};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFlags {
    pub active: bool,
    pub inert: bool,
    pub inclusion: bool,
    pub permutation: bool,
    pub covering: bool,
    pub ap: bool,
}

/// The image path: each source segment contributes `h^Δa` or `v^Δb`.
pub fn pushforward(f: &FMorphism) -> FString {
    let mut word = Vec::new();
    let (mut x, mut y) = (0, 0);
    for &l in f.source().letters() {
        match l {
            Letter::H => {
                word.extend(std::iter::repeat(Letter::H).take(f.a()[x + 1] - f.a()[x]));
                x += 1;
            }
            Letter::V => {
                word.extend(std::iter::repeat(Letter::V).take(f.b()[y + 1] - f.b()[y]));
                y += 1;
            }
        }
    }
    FString::new(word)
}

fn is_translation(f: &FMorphism) -> bool {
    let (a0, b0) = (f.a()[0], f.b()[0]);
    f.a().iter().enumerate().all(|(x, &v)| v == a0 + x)
        && f.b().iter().enumerate().all(|(y, &v)| v == b0 + y)
}

fn endpoint_preserving(f: &FMorphism) -> bool {
    f.origin() == GridPoint::new(0, 0) && f.end() == GridPoint::new(f.target().n(), f.target().m())
}

/// `f = inert ∘ active`, through the pushforward string.
pub fn factor_active_inert(f: &FMorphism) -> (FMorphism, FMorphism) {
    let mid = pushforward(f);
    let (a0, b0) = (f.a()[0], f.b()[0]);
    let act = FMorphism::new_unchecked(
        f.source().clone(),
        mid.clone(),
        f.a().iter().map(|v| v - a0).collect(),
        f.b().iter().map(|v| v - b0).collect(),
    );
    let inert = FMorphism::translation(&mid, f.target(), a0, b0)
        .expect("the image path lies in the target region");
    (act, inert)
}

/// Path-vertex indices of the smallest substring of the target whose region
/// receives the image: the last vertex below the image's origin and the first
/// vertex above its end, in the product order.
fn minimal_window(j: &FMorphism) -> (usize, usize) {
    let path = j.target().path_vertices();
    let (lo, hi) = (j.origin(), j.end());
    let p = path.iter().rposition(|&q| q.le(lo)).expect("(0,0) is below everything");
    let q = path.iter().position(|&q| hi.le(q)).expect("(n,m) is above everything");
    (p, q)
}

fn factor_through_window(j: &FMorphism, p: usize, q: usize) -> Result<(FMorphism, FMorphism)> {
    let path = j.target().path_vertices();
    let mid = j.target().substring(p, q);
    let (o, lo) = (path[p], j.origin());
    let cov = FMorphism::translation(j.source(), &mid, lo.x - o.x, lo.y - o.y)?;
    let inc = FMorphism::translation(&mid, j.target(), o.x, o.y)?;
    Ok((cov, inc))
}

/// `j = inclusion ∘ covering` for an inert `j`.
pub fn factor_covering_inclusion(j: &FMorphism) -> Result<(FMorphism, FMorphism)> {
    if !is_translation(j) {
        return Err(Error::Class(format!("{j} is not inert")));
    }
    let (p, q) = minimal_window(j);
    Ok(factor_through_window(j, p, q).expect("the minimal window receives the image"))
}

/// The factorization obtained by reading the window endpoints off the image
/// corners directly: start at the path vertex in the column of the image's
/// origin, stop at the last path vertex in the row of the image's end. Kept to
/// document that this choice is not always the initial one.
pub fn covering_factorizations_literal(j: &FMorphism) -> Result<(FMorphism, FMorphism)> {
    if !is_translation(j) {
        return Err(Error::Class(format!("{j} is not inert")));
    }
    let path = j.target().path_vertices();
    let (lo, hi) = (j.origin(), j.end());
    let p = path.iter().position(|q| q.x == lo.x).expect("every column meets the path");
    let q = path.iter().rposition(|q| q.y == hi.y).expect("every row meets the path");
    if p > q {
        return Err(Error::Domain("window endpoints cross".into()));
    }
    factor_through_window(j, p, q)
}

pub fn classify(f: &FMorphism) -> ClassFlags {
    let ap = endpoint_preserving(f);
    let inert = is_translation(f);
    let active = ap && &pushforward(f) == f.target();
    let permutation = inert && f.source().n() == f.target().n() && f.source().m() == f.target().m();
    let inclusion = inert && {
        let o = f.origin();
        let path: std::collections::HashSet<GridPoint> = f.target().path_vertices().into_iter().collect();
        f.source()
            .path_vertices()
            .iter()
            .all(|v| path.contains(&GridPoint::new(v.x + o.x, v.y + o.y)))
    };
    let covering = inert && {
        let (p, q) = minimal_window(f);
        p == 0 && q == f.target().len()
    };
    ClassFlags { active, inert, inclusion, permutation, covering, ap }
}
