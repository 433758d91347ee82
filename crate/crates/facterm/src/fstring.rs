//! Words over `{h, v}` and the staircase regions they cut out of a grid.
//!
//! Reading a word left to right, `h` steps right and `v` steps up, tracing a
//! path from `(0,0)` to `(n,m)`. The region `sq(S)` is everything on or above
//! that path.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    H,
    V,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::H => 'h',
            Letter::V => 'v',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: usize,
    pub y: usize,
}

impl GridPoint {
    pub const fn new(x: usize, y: usize) -> Self {
        GridPoint { x, y }
    }

    /// Product order.
    pub fn le(self, other: GridPoint) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FString {
    word: Vec<Letter>,
}

impl FString {
    pub fn new(word: Vec<Letter>) -> Self {
        FString { word }
    }

    pub fn empty() -> Self {
        FString { word: Vec::new() }
    }

    /// Build from alternating run lengths, starting with an `h`-run.
    pub fn from_blocks(blocks: &[usize]) -> Self {
        let mut word = Vec::new();
        for (k, &len) in blocks.iter().enumerate() {
            let l = if k % 2 == 0 { Letter::H } else { Letter::V };
            word.extend(std::iter::repeat(l).take(len));
        }
        FString { word }
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn n(&self) -> usize {
        self.word.iter().filter(|&&l| l == Letter::H).count()
    }

    pub fn m(&self) -> usize {
        self.word.len() - self.n()
    }

    /// Alternating run lengths `(i0|j0|i1|...)`; the first entry counts the
    /// leading `h`s and may be zero. The empty word has no blocks.
    pub fn blocks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut expect = Letter::H;
        let mut run = 0;
        for &l in &self.word {
            if l != expect {
                out.push(run);
                run = 0;
                expect = l;
            }
            run += 1;
        }
        if !self.word.is_empty() {
            out.push(run);
        }
        out
    }

    /// Plain `hv` spelling; the empty word spells as the empty string.
    pub fn word_string(&self) -> String {
        self.word.iter().map(|l| l.as_char()).collect()
    }

    /// `heights()[x] = min_y(x)` for every `x` in `0..=n`.
    pub fn heights(&self) -> Vec<usize> {
        let mut hs = Vec::with_capacity(self.n() + 1);
        hs.push(0);
        let mut vs = 0;
        for &l in &self.word {
            match l {
                Letter::H => hs.push(vs),
                Letter::V => vs += 1,
            }
        }
        hs
    }

    pub fn min_y(&self, x: usize) -> Result<usize> {
        let n = self.n();
        if x > n {
            return Err(Error::Range { value: x, max: n });
        }
        Ok(self.heights()[x])
    }

    pub fn contains(&self, p: GridPoint) -> Result<bool> {
        let (n, m) = (self.n(), self.m());
        if p.x > n {
            return Err(Error::Range { value: p.x, max: n });
        }
        if p.y > m {
            return Err(Error::Range { value: p.y, max: m });
        }
        Ok(p.y >= self.heights()[p.x])
    }

    pub fn path_vertices(&self) -> Vec<GridPoint> {
        let mut p = GridPoint::new(0, 0);
        let mut out = vec![p];
        for &l in &self.word {
            match l {
                Letter::H => p.x += 1,
                Letter::V => p.y += 1,
            }
            out.push(p);
        }
        out
    }

    /// Every point of `sq(S)`, sorted by `(x, y)`.
    pub fn region(&self) -> Vec<GridPoint> {
        let m = self.m();
        self.heights()
            .iter()
            .enumerate()
            .flat_map(|(x, &h)| (h..=m).map(move |y| GridPoint::new(x, y)))
            .collect()
    }

    /// The letters between path vertices `from` and `to` (indices into
    /// `path_vertices`).
    pub fn substring(&self, from: usize, to: usize) -> FString {
        FString::new(self.word[from..to].to_vec())
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> Vec<FString> {
        let mut out = vec![FString::empty()];
        let mut layer = vec![FString::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * 2);
            for s in &layer {
                for l in [Letter::H, Letter::V] {
                    let mut w = s.word.clone();
                    w.push(l);
                    next.push(FString::new(w));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// The word `h^i v^j`, used for rectangles.
    pub fn rectangle(n: usize, m: usize) -> Self {
        FString::from_blocks(&[n, m])
    }
}

impl Ord for FString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for FString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Block notation, trailing empty runs omitted; `*` for the empty word.
impl fmt::Display for FString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("*");
        }
        let parts: Vec<String> = self.blocks().iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join("|"))
    }
}

impl FromStr for FString {
    type Err = Error;

    /// Accepts `*`, a plain word such as `hvhhv`, or block notation such as
    /// `(1|1|2|1)` with zero runs allowed.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "*" {
            return Ok(FString::empty());
        }
        if let Some(inner) = s.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed block notation {s:?}")))?;
            if inner.trim().is_empty() {
                return Ok(FString::empty());
            }
            let blocks = inner
                .split('|')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad run length {t:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if blocks.iter().sum::<usize>() > 1 << 16 {
                return Err(Error::Parse(format!("string {s:?} is unreasonably long")));
            }
            return Ok(FString::from_blocks(&blocks));
        }
        let word = s
            .chars()
            .map(|c| match c {
                'h' | 'H' => Ok(Letter::H),
                'v' | 'V' => Ok(Letter::V),
                _ => Err(Error::Parse(format!("unexpected {c:?} in string {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FString { word })
    }
}

impl Serialize for FString {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(1))?;
        map.serialize_entry("word", &self.word_string())?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for FString {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Bare(String),
            Wrapped { word: String },
        }
        let s = match Raw::deserialize(de)? {
            Raw::Bare(s) | Raw::Wrapped { word: s } => s,
        };
        s.parse().map_err(serde::de::Error::custom)
    }
}
