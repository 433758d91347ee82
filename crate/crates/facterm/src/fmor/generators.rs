//! Elementary morphisms and words of them.
//!
//! Conventions (coordinates, not segments):
//! - `σh_i`, `0 <= i < n`: the degeneracy `[n] -> [n-1]` that merges `i` and
//!   `i+1`; it deletes the `h` running from `x=i` to `x=i+1`.
//! - `δh_i`, `0 <= i <= n+1`: the face `[n] -> [n+1]` that misses `i`.
//!   `δh_0` prepends an `h`, `δh_{n+1}` appends one, and an interior `δh_i`
//!   doubles the `i`-th `h`.
//! - `σv`, `δv`: the same on the vertical coordinate.
//! - `γ_{j,i}`: the path turns at `(i, j)` from going up to going right; the
//!   generator replaces that `vh` by `hv`, leaving both coordinates alone.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmor::{compose, FMorphism};
use crate::fstring::{FString, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorToken {
    SigmaH(usize),
    SigmaV(usize),
    DeltaH(usize),
    DeltaV(usize),
    Gamma { j: usize, i: usize },
}

impl GeneratorToken {
    pub fn is_degeneracy(self) -> bool {
        matches!(self, GeneratorToken::SigmaH(_) | GeneratorToken::SigmaV(_))
    }

    pub fn is_face(self) -> bool {
        matches!(self, GeneratorToken::DeltaH(_) | GeneratorToken::DeltaV(_))
    }

    pub fn is_gamma(self) -> bool {
        matches!(self, GeneratorToken::Gamma { .. })
    }

    /// A face at an end of its axis, judged against the string it acts on.
    pub fn is_boundary_face_on(self, s: &FString) -> bool {
        match self {
            GeneratorToken::DeltaH(i) => i == 0 || i == s.n() + 1,
            GeneratorToken::DeltaV(i) => i == 0 || i == s.m() + 1,
            _ => false,
        }
    }
}

impl fmt::Display for GeneratorToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorToken::SigmaH(i) => write!(f, "σh{i}"),
            GeneratorToken::SigmaV(i) => write!(f, "σv{i}"),
            GeneratorToken::DeltaH(i) => write!(f, "δh{i}"),
            GeneratorToken::DeltaV(i) => write!(f, "δv{i}"),
            GeneratorToken::Gamma { j, i } => write!(f, "γ{j},{i}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawToken {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
}

impl Serialize for GeneratorToken {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, index) = match *self {
            GeneratorToken::SigmaH(k) => ("gh", k),
            GeneratorToken::SigmaV(k) => ("gv", k),
            GeneratorToken::DeltaH(k) => ("dh", k),
            GeneratorToken::DeltaV(k) => ("dv", k),
            GeneratorToken::Gamma { j, i } => {
                return RawToken { kind: "gamma".into(), index: None, j: Some(j), i: Some(i) }
                    .serialize(ser)
            }
        };
        RawToken { kind: kind.into(), index: Some(index), j: None, i: None }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GeneratorToken {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = RawToken::deserialize(de)?;
        let index = || r.index.ok_or_else(|| D::Error::custom(format!("{} needs an index", r.kind)));
        Ok(match r.kind.as_str() {
            "gh" | "sh" => GeneratorToken::SigmaH(index()?),
            "gv" | "sv" => GeneratorToken::SigmaV(index()?),
            "dh" => GeneratorToken::DeltaH(index()?),
            "dv" => GeneratorToken::DeltaV(index()?),
            "gamma" => match (r.j, r.i) {
                (Some(j), Some(i)) => GeneratorToken::Gamma { j, i },
                _ => return Err(D::Error::custom("gamma needs both j and i")),
            },
            other => return Err(D::Error::custom(format!("unknown generator kind {other:?}"))),
        })
    }
}

/// Parse a whitespace-separated word such as `sh0 dv1 g2,0` (Greek letters
/// also accepted).
pub fn parse_word(text: &str) -> Result<Vec<GeneratorToken>> {
    text.split_whitespace().map(parse_token).collect()
}

fn parse_token(tok: &str) -> Result<GeneratorToken> {
    let bad = || Error::Parse(format!("unrecognised generator {tok:?}"));
    let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
    let t = tok
        .replace('σ', "s")
        .replace('δ', "d")
        .replace('γ', "g")
        .replace(['_', '{', '}', '(', ')'], "");
    let rest = |p: &str| t.strip_prefix(p);
    if let Some(r) = rest("sh").or_else(|| rest("gh")) {
        return Ok(GeneratorToken::SigmaH(num(r)?));
    }
    if let Some(r) = rest("sv").or_else(|| rest("gv")) {
        return Ok(GeneratorToken::SigmaV(num(r)?));
    }
    if let Some(r) = rest("dh") {
        return Ok(GeneratorToken::DeltaH(num(r)?));
    }
    if let Some(r) = rest("dv") {
        return Ok(GeneratorToken::DeltaV(num(r)?));
    }
    if let Some(r) = rest("gamma").or_else(|| rest("g")) {
        let (j, i) = r.split_once(',').ok_or_else(bad)?;
        return Ok(GeneratorToken::Gamma { j: num(j)?, i: num(i)? });
    }
    Err(bad())
}

pub fn word_to_string(word: &[GeneratorToken]) -> String {
    word.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

/// Position in the word of the `k`-th (1-based) occurrence of `letter`.
fn nth_letter(s: &FString, letter: Letter, k: usize) -> usize {
    s.letters()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == letter)
        .nth(k - 1)
        .map(|(p, _)| p)
        .expect("occurrence exists")
}

pub fn generator(tok: GeneratorToken, s: &FString) -> Result<FMorphism> {
    let (n, m) = (s.n(), s.m());
    let fail = |reason: String| Error::Generator { token: tok, string: s.to_string(), reason };
    let mut word = s.letters().to_vec();
    let id_a: Vec<usize> = (0..=n).collect();
    let id_b: Vec<usize> = (0..=m).collect();
    let (a, b) = match tok {
        GeneratorToken::SigmaH(i) | GeneratorToken::SigmaV(i) => {
            let (letter, len) = if matches!(tok, GeneratorToken::SigmaH(_)) {
                (Letter::H, n)
            } else {
                (Letter::V, m)
            };
            if i >= len {
                return Err(fail(format!("needs index below {len}")));
            }
            word.remove(nth_letter(s, letter, i + 1));
            let squash: Vec<usize> = (0..=len).map(|x| if x <= i { x } else { x - 1 }).collect();
            if letter == Letter::H {
                (squash, id_b)
            } else {
                (id_a, squash)
            }
        }
        GeneratorToken::DeltaH(i) | GeneratorToken::DeltaV(i) => {
            let (letter, len) = if matches!(tok, GeneratorToken::DeltaH(_)) {
                (Letter::H, n)
            } else {
                (Letter::V, m)
            };
            if i > len + 1 {
                return Err(fail(format!("needs index at most {}", len + 1)));
            }
            let at = if i == 0 {
                0
            } else if i == len + 1 {
                word.len()
            } else {
                nth_letter(s, letter, i)
            };
            word.insert(at, letter);
            let skip: Vec<usize> = (0..=len).map(|x| if x < i { x } else { x + 1 }).collect();
            if letter == Letter::H {
                (skip, id_b)
            } else {
                (id_a, skip)
            }
        }
        GeneratorToken::Gamma { j, i } => {
            let path = s.path_vertices();
            let at = (0..s.len().saturating_sub(1)).find(|&p| {
                path[p].x == i
                    && path[p].y + 1 == j
                    && word[p] == Letter::V
                    && word[p + 1] == Letter::H
            });
            let Some(p) = at else {
                return Err(fail(format!("the path does not turn from v to h at ({i},{j})")));
            };
            word.swap(p, p + 1);
            (id_a, id_b)
        }
    };
    Ok(FMorphism::new_unchecked(s.clone(), FString::new(word), a, b))
}

/// Every generator that applies to `s`.
pub fn generators_on(s: &FString) -> Vec<GeneratorToken> {
    use GeneratorToken::*;
    let (n, m) = (s.n(), s.m());
    let mut out: Vec<GeneratorToken> = (0..n).map(SigmaH).chain((0..m).map(SigmaV)).collect();
    out.extend((0..=n + 1).map(DeltaH));
    out.extend((0..=m + 1).map(DeltaV));
    out.extend(crate::fmor::relations::corners(s).into_iter().map(|(j, i)| Gamma { j, i }));
    out
}

/// Apply the tokens left to right starting from `s`.
pub fn from_word(word: &[GeneratorToken], s: &FString) -> Result<FMorphism> {
    let mut acc = FMorphism::identity(s);
    for (position, &tok) in word.iter().enumerate() {
        let g = generator(tok, acc.target())
            .map_err(|e| Error::Word { position, source: Box::new(e) })?;
        acc = compose(&g, &acc).expect("generator starts where the word stands");
    }
    Ok(acc)
}
