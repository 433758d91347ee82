//! The three embeddings of the simplex category: all-horizontal strings,
//! all-vertical strings, and the staircases `(vh)^n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmor::GeneratorToken;
use crate::fstring::{FString, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimplicialKind {
    H,
    V,
    T,
}

/// A generating operator, described by its source `[n]`:
/// `Face { n, i }` is `δ_i: [n] -> [n+1]` with `i <= n+1`, and
/// `Degeneracy { n, j }` is `σ_j: [n] -> [n-1]` with `j < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimplicialOp {
    Face { n: usize, i: usize },
    Degeneracy { n: usize, j: usize },
}

pub fn simplicial_object(kind: SimplicialKind, n: usize) -> FString {
    match kind {
        SimplicialKind::H => FString::new(vec![Letter::H; n]),
        SimplicialKind::V => FString::new(vec![Letter::V; n]),
        SimplicialKind::T => FString::new([Letter::V, Letter::H].repeat(n)),
    }
}

/// Source string and generator word of the image of `op`.
pub fn embed_simplicial(kind: SimplicialKind, op: SimplicialOp) -> Result<(FString, Vec<GeneratorToken>)> {
    use GeneratorToken::*;
    let word = match op {
        SimplicialOp::Face { n, i } => {
            if i > n + 1 {
                return Err(Error::Domain(format!("δ_{i} is not a face of [{}]", n + 1)));
            }
            match kind {
                SimplicialKind::H => vec![DeltaH(i)],
                SimplicialKind::V => vec![DeltaV(i)],
                SimplicialKind::T if i == 0 => vec![DeltaH(0), DeltaV(0)],
                SimplicialKind::T if i == n + 1 => vec![DeltaV(n + 1), DeltaH(n + 1)],
                SimplicialKind::T => vec![DeltaH(i), DeltaV(i), Gamma { j: i + 1, i: i - 1 }],
            }
        }
        SimplicialOp::Degeneracy { n, j } => {
            if j >= n {
                return Err(Error::Domain(format!("σ_{j} is not a degeneracy of [{n}]")));
            }
            match kind {
                SimplicialKind::H => vec![SigmaH(j)],
                SimplicialKind::V => vec![SigmaV(j)],
                SimplicialKind::T => vec![SigmaH(j), SigmaV(j)],
            }
        }
    };
    let n = match op {
        SimplicialOp::Face { n, .. } | SimplicialOp::Degeneracy { n, .. } => n,
    };
    Ok((simplicial_object(kind, n), word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmor::{compose, from_word, FMorphism};

    fn image(kind: SimplicialKind, op: SimplicialOp) -> FMorphism {
        let (s, w) = embed_simplicial(kind, op).unwrap();
        from_word(&w, &s).unwrap()
    }

    fn face(n: usize, i: usize) -> SimplicialOp {
        SimplicialOp::Face { n, i }
    }

    fn degen(n: usize, j: usize) -> SimplicialOp {
        SimplicialOp::Degeneracy { n, j }
    }

    #[test]
    fn staircases() {
        assert_eq!(simplicial_object(SimplicialKind::T, 2).word_string(), "vhvh");
        let (s, w) = embed_simplicial(SimplicialKind::T, face(1, 1)).unwrap();
        assert_eq!(s.word_string(), "vh");
        let f = from_word(&w, &s).unwrap();
        assert_eq!(f.target().word_string(), "vhvh");
        // The diagonal vertex k of [1] goes to vertex δ_1(k) of [2].
        assert_eq!(f.a(), &[0, 2]);
        assert_eq!(f.b(), &[0, 2]);
        assert!(embed_simplicial(SimplicialKind::H, face(1, 3)).is_err());
        assert!(embed_simplicial(SimplicialKind::T, degen(1, 1)).is_err());
    }

    fn std_face(i: usize, k: usize) -> usize {
        if k < i { k } else { k + 1 }
    }

    fn std_degen(j: usize, k: usize) -> usize {
        if k <= j { k } else { k - 1 }
    }

    /// Each image acts on the diagonal vertices exactly as the operator does,
    /// so the simplicial identities are inherited.
    #[test]
    fn images_act_on_vertices_like_the_operator() {
        for kind in [SimplicialKind::H, SimplicialKind::V, SimplicialKind::T] {
            for n in 0..4 {
                for i in 0..=n + 1 {
                    let f = image(kind, face(n, i));
                    for k in 0..=n {
                        let c = if kind == SimplicialKind::V { f.b()[k] } else { f.a()[k] };
                        assert_eq!(c, std_face(i, k));
                    }
                }
                for j in 0..n {
                    let f = image(kind, degen(n, j));
                    for k in 0..=n {
                        let c = if kind == SimplicialKind::V { f.b()[k] } else { f.a()[k] };
                        assert_eq!(c, std_degen(j, k));
                    }
                }
            }
        }
    }

    #[test]
    fn staircase_faces_satisfy_face_identities() {
        for n in 0..3 {
            for j in 0..=n + 1 {
                for i in 0..=j {
                    let lhs = compose(&image(SimplicialKind::T, face(n + 1, i)), &image(SimplicialKind::T, face(n, j)));
                    let rhs = compose(&image(SimplicialKind::T, face(n + 1, j + 1)), &image(SimplicialKind::T, face(n, i)));
                    assert_eq!(lhs.unwrap(), rhs.unwrap(), "n={n} i={i} j={j}");
                }
            }
        }
    }
}
