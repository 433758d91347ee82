//! The defining relations among generators, instantiated on a given string.
//!
//! Words are in application order. Corner swaps follow the convention of
//! [`GeneratorToken::Gamma`]: `γ_{j,i}` acts at the corner `(i, j)`, whose
//! `h` is the one running from `x=i` and whose `v` is the `j`-th.

use serde::Serialize;

use crate::fmor::{from_word, GeneratorToken};
use crate::fstring::{FString, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationInstance {
    pub family: &'static str,
    pub source: FString,
    pub lhs: Vec<GeneratorToken>,
    pub rhs: Vec<GeneratorToken>,
}

impl RelationInstance {
    /// Both sides must apply and agree.
    pub fn check(&self) -> Result<(), String> {
        let l = from_word(&self.lhs, &self.source).map_err(|e| format!("left side: {e}"))?;
        let r = from_word(&self.rhs, &self.source).map_err(|e| format!("right side: {e}"))?;
        if l == r {
            Ok(())
        } else {
            Err(format!("{l} differs from {r}"))
        }
    }
}

#[derive(Clone, Copy)]
enum Axis {
    H,
    V,
}

impl Axis {
    fn face(self, i: usize) -> GeneratorToken {
        match self {
            Axis::H => GeneratorToken::DeltaH(i),
            Axis::V => GeneratorToken::DeltaV(i),
        }
    }

    fn degen(self, i: usize) -> GeneratorToken {
        match self {
            Axis::H => GeneratorToken::SigmaH(i),
            Axis::V => GeneratorToken::SigmaV(i),
        }
    }

    fn len(self, s: &FString) -> usize {
        match self {
            Axis::H => s.n(),
            Axis::V => s.m(),
        }
    }
}

/// Corners `(j, i)` where the path goes up into `(i, j)` and then right.
pub fn corners(s: &FString) -> Vec<(usize, usize)> {
    let path = s.path_vertices();
    let w = s.letters();
    (1..w.len())
        .filter(|&p| w[p - 1] == Letter::V && w[p] == Letter::H)
        .map(|p| (path[p].y, path[p].x))
        .collect()
}

fn gamma(j: usize, i: usize) -> GeneratorToken {
    GeneratorToken::Gamma { j, i }
}

pub fn relation_instances(s: &FString) -> Vec<RelationInstance> {
    use GeneratorToken::*;
    let (n, m) = (s.n(), s.m());
    let mut out = Vec::new();
    let mut push = |family: &'static str, lhs: Vec<GeneratorToken>, rhs: Vec<GeneratorToken>| {
        out.push(RelationInstance { family, source: s.clone(), lhs, rhs });
    };

    for axis in [Axis::H, Axis::V] {
        let len = axis.len(s);
        for j in 0..=len + 1 {
            for i in 0..=j {
                push("face-face", vec![axis.face(j), axis.face(i)], vec![axis.face(i), axis.face(j + 1)]);
            }
        }
        for j in 0..len.saturating_sub(1) {
            for i in 0..=j {
                push("degeneracy-degeneracy", vec![axis.degen(i), axis.degen(j)], vec![axis.degen(j + 1), axis.degen(i)]);
            }
        }
        for i in 0..=len + 1 {
            for j in 0..=len {
                let rhs = if i < j {
                    vec![axis.degen(j - 1), axis.face(i)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    vec![axis.degen(j), axis.face(i - 1)]
                };
                push("degeneracy-face", vec![axis.face(i), axis.degen(j)], rhs);
            }
        }
    }

    for i in 0..=n + 1 {
        for j in 0..m {
            push("mixed", vec![DeltaH(i), SigmaV(j)], vec![SigmaV(j), DeltaH(i)]);
        }
        for j in 0..=m + 1 {
            if (i, j) != (0, 0) && (i, j) != (n + 1, m + 1) {
                push("mixed", vec![DeltaH(i), DeltaV(j)], vec![DeltaV(j), DeltaH(i)]);
            }
        }
    }
    for i in 0..n {
        for j in 0..=m + 1 {
            push("mixed", vec![DeltaV(j), SigmaH(i)], vec![SigmaH(i), DeltaV(j)]);
        }
        for j in 0..m {
            push("mixed", vec![SigmaH(i), SigmaV(j)], vec![SigmaV(j), SigmaH(i)]);
        }
    }

    // Swaps commute whenever both orders make sense.
    for j in 1..=m {
        for i in 0..n {
            for k in 1..=m {
                for t in 0..n {
                    if (j, i) == (k, t) {
                        continue;
                    }
                    let lhs = vec![gamma(k, t), gamma(j, i)];
                    let rhs = vec![gamma(j, i), gamma(k, t)];
                    if from_word(&lhs, s).is_ok() && from_word(&rhs, s).is_ok() {
                        push("swap-swap", lhs, rhs);
                    }
                }
            }
        }
    }

    for (j, i) in corners(s) {
        push("swap-degeneracy", vec![gamma(j, i), SigmaH(i)], vec![SigmaH(i)]);
        push("swap-degeneracy", vec![gamma(j, i), SigmaV(j - 1)], vec![SigmaV(j - 1)]);
        for k in (0..n).filter(|&k| k != i) {
            let i2 = if k < i { i - 1 } else { i };
            push("swap-degeneracy", vec![gamma(j, i), SigmaH(k)], vec![SigmaH(k), gamma(j, i2)]);
        }
        for k in (0..m).filter(|&k| k + 1 != j) {
            let j2 = if k + 1 < j { j - 1 } else { j };
            push("swap-degeneracy", vec![gamma(j, i), SigmaV(k)], vec![SigmaV(k), gamma(j2, i)]);
        }

        push("swap-face", vec![DeltaH(i + 1), gamma(j, i), gamma(j, i + 1)], vec![gamma(j, i), DeltaH(i + 1)]);
        push("swap-face", vec![DeltaV(j), gamma(j + 1, i), gamma(j, i)], vec![gamma(j, i), DeltaV(j)]);
        for k in (0..=n + 1).filter(|&k| k != i + 1) {
            let i2 = if k <= i { i + 1 } else { i };
            push("swap-face", vec![DeltaH(k), gamma(j, i2)], vec![gamma(j, i), DeltaH(k)]);
        }
        for k in (0..=m + 1).filter(|&k| k != j) {
            let j2 = if k < j { j + 1 } else { j };
            push("swap-face", vec![DeltaV(k), gamma(j2, i)], vec![gamma(j, i), DeltaV(k)]);
        }
    }

    push("corner-faces", vec![DeltaH(0), DeltaV(0), gamma(1, 0)], vec![DeltaV(0), DeltaH(0)]);
    push(
        "corner-faces",
        vec![DeltaV(m + 1), DeltaH(n + 1), gamma(m + 1, n)],
        vec![DeltaH(n + 1), DeltaV(m + 1)],
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corners_of_a_staircase() {
        let s: FString = "vhvvh".parse().unwrap();
        assert_eq!(corners(&s), vec![(1, 0), (3, 1)]);
    }

    #[test]
    fn all_relations_hold_on_short_strings() {
        for s in FString::all_up_to(4) {
            for r in relation_instances(&s) {
                assert_eq!(r.check(), Ok(()), "{} on {}: {:?} = {:?}", r.family, s, r.lhs, r.rhs);
            }
        }
    }
}
