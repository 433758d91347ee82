//! Cells of the oriental `O(n)` as signed sets of simplex faces.
//!
//! A `k`-cell is a sequence of levels `(x_i^-, x_i^+)`, `0 <= i <= k`, each a
//! set of `i`-faces. The top level is a single set (`x_k^- = x_k^+`); it is
//! empty exactly for identities. Each member set of level `i + 1` must move
//! `x_i^-` to `x_i^+`, with the roles of even and odd faces alternating
//! with the parity of `i`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient simplex the enumerator accepts.
pub const MAX_AMBIENT: usize = 3;

/// An injective monotone `[l] -> [n]`, kept as its sorted image.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Face(Vec<usize>);

impl Face {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Cell(format!("face {vertices:?} is not a strictly increasing nonempty list")));
        }
        Ok(Face(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// `u ∘ δ_j`.
    pub fn delete(&self, j: usize) -> Face {
        let mut v = self.0.clone();
        v.remove(j);
        Face(v)
    }
}

impl TryFrom<Vec<usize>> for Face {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Face::new(v)
    }
}

impl From<Face> for Vec<usize> {
    fn from(f: Face) -> Self {
        f.0
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().any(|&v| v > 9) { "." } else { "" };
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromStr for Face {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad face {s:?}"));
        let vertices: Vec<usize> = if s.contains('.') {
            s.split('.').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        Face::new(vertices)
    }
}

/// All `dim`-faces of `[n]`, sorted.
pub fn faces(n: usize, dim: usize) -> Vec<Face> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(next: usize, n: usize, want: usize, cur: &mut Vec<usize>, out: &mut Vec<Face>) {
        if cur.len() == want {
            out.push(Face(cur.clone()));
            return;
        }
        for v in next..=n {
            cur.push(v);
            go(v + 1, n, want, cur, out);
            cur.pop();
        }
    }
    go(0, n, dim + 1, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Level {
    pub minus: BTreeSet<Face>,
    pub plus: BTreeSet<Face>,
}

impl Level {
    pub fn get(&self, s: Sign) -> &BTreeSet<Face> {
        match s {
            Sign::Minus => &self.minus,
            Sign::Plus => &self.plus,
        }
    }

    fn flat(set: BTreeSet<Face>) -> Level {
        Level { minus: set.clone(), plus: set }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrCell {
    pub n: usize,
    pub levels: Vec<Level>,
}

impl OrCell {
    pub fn new(n: usize, levels: Vec<Level>) -> Self {
        OrCell { n, levels }
    }

    pub fn object(n: usize, v: usize) -> Result<Self> {
        let f = Face::new(vec![v])?;
        Ok(OrCell { n, levels: vec![Level::flat([f].into())] })
    }

    pub fn dim(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() > 0 && self.levels[self.dim()].minus.is_empty() && self.levels[self.dim()].plus.is_empty()
    }

    /// Parse the display form; the ambient dimension is not part of it.
    pub fn parse_in(n: usize, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad cell {text:?}: {why}"));
        let body = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses"))?;
        let set = |s: &str| -> Result<BTreeSet<Face>> {
            let inner = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(|| bad("expected braces"))?;
            if inner.trim().is_empty() {
                return Ok(BTreeSet::new());
            }
            inner.split(',').map(|f| f.trim().parse()).collect()
        };
        let mut levels = Vec::new();
        for (i, part) in body.split('|').enumerate() {
            let part = part.trim();
            let cut = part.find("},").ok_or_else(|| bad("expected two sets per level"))?;
            let (first, second) = (set(&part[..=cut])?, set(part[cut + 2..].trim())?);
            levels.push(if i % 2 == 0 {
                Level { plus: first, minus: second }
            } else {
                Level { minus: first, plus: second }
            });
        }
        Ok(OrCell { n, levels })
    }
}

/// `(x_0^+, x_0^- | x_1^-, x_1^+ | ...)`, the sign order alternating by level.
impl fmt::Display for OrCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &BTreeSet<Face>| format!("{{{}}}", s.iter().map(Face::to_string).collect::<Vec<_>>().join(","));
        let parts: Vec<String> = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                if i % 2 == 0 {
                    format!("{},{}", set(&l.plus), set(&l.minus))
                } else {
                    format!("{},{}", set(&l.minus), set(&l.plus))
                }
            })
            .collect();
        write!(f, "({})", parts.join("|"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    /// The cell has no levels, or a face has the wrong dimension or leaves `[n]`.
    Shape { level: usize, reason: String },
    /// Bullet one: `x_0^±` are singletons.
    Singleton { sign: Sign, size: usize },
    /// Bullet two: `face` is an even (or odd) face of two members of `x_{level}^sign`.
    SharedFace { level: usize, sign: Sign, even: bool, face: Face },
    /// Bullet three: `x_{level+1}^by` does not move `x_level^-` to `x_level^+`.
    Movement { level: usize, by: Sign },
    /// The top level holds two different sets.
    Top { level: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { level, reason } => write!(f, "level {level}: {reason}"),
            Violation::Singleton { sign, size } => write!(f, "x_0^{sign} has {size} elements"),
            Violation::SharedFace { level, sign, even, face } => write!(
                f,
                "{face} is an {} face of two members of x_{level}^{sign}",
                if *even { "even" } else { "odd" }
            ),
            Violation::Movement { level, by } => write!(f, "x_{}^{by} does not move x_{level}^- to x_{level}^+", level + 1),
            Violation::Top { level } => write!(f, "top level {level} has different signed sets"),
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Cell(v.to_string())
    }
}

/// Even and odd boundary faces of a set, failing on a repeated face.
fn halves(set: &BTreeSet<Face>) -> std::result::Result<(BTreeSet<Face>, BTreeSet<Face>), (bool, Face)> {
    let (mut even, mut odd) = (BTreeSet::new(), BTreeSet::new());
    for u in set {
        for j in 0..=u.dim() {
            let side = if j % 2 == 0 { &mut even } else { &mut odd };
            let f = u.delete(j);
            if !side.insert(f.clone()) {
                return Err((j % 2 == 0, f));
            }
        }
    }
    Ok((even, odd))
}

fn moves(level: usize, lower: &Level, members: &BTreeSet<Face>) -> std::result::Result<bool, (bool, Face)> {
    let (even, odd) = halves(members)?;
    let (fwd, back) = if level % 2 == 0 { (even, odd) } else { (odd, even) };
    let forward: BTreeSet<Face> = lower.minus.union(&fwd).filter(|f| !back.contains(f)).cloned().collect();
    let backward: BTreeSet<Face> = lower.plus.union(&back).filter(|f| !fwd.contains(f)).cloned().collect();
    Ok(forward == lower.plus && backward == lower.minus)
}

pub fn validate_cell(c: &OrCell) -> std::result::Result<(), Violation> {
    let k = match c.levels.len() {
        0 => return Err(Violation::Shape { level: 0, reason: "no levels".into() }),
        len => len - 1,
    };
    for (i, l) in c.levels.iter().enumerate() {
        for f in l.minus.iter().chain(&l.plus) {
            if f.dim() != i || f.vertices().iter().any(|&v| v > c.n) {
                return Err(Violation::Shape { level: i, reason: format!("face {f} is not an {i}-face of [{}]", c.n) });
            }
        }
    }
    for sign in [Sign::Minus, Sign::Plus] {
        let size = c.levels[0].get(sign).len();
        if size != 1 {
            return Err(Violation::Singleton { sign, size });
        }
    }
    if c.levels[k].minus != c.levels[k].plus {
        return Err(Violation::Top { level: k });
    }
    for i in 0..k {
        for by in [Sign::Minus, Sign::Plus] {
            match moves(i, &c.levels[i], c.levels[i + 1].get(by)) {
                Err((even, face)) => return Err(Violation::SharedFace { level: i + 1, sign: by, even, face }),
                Ok(false) => return Err(Violation::Movement { level: i, by }),
                Ok(true) => {}
            }
        }
    }
    Ok(())
}

/// `d_p^sign`: keep the levels below `p` and flatten level `p` to one side.
pub fn boundary(c: &OrCell, p: usize, sign: Sign) -> Result<OrCell> {
    if p > c.dim() {
        return Err(Error::Domain(format!("boundary index {p} exceeds the dimension {}", c.dim())));
    }
    let mut levels = c.levels[..p].to_vec();
    levels.push(Level::flat(c.levels[p].get(sign).clone()));
    Ok(OrCell { n: c.n, levels })
}

/// View `c` as an identity cell of dimension `k`.
pub fn identity_cell(c: &OrCell, k: usize) -> Result<OrCell> {
    if k < c.dim() {
        return Err(Error::Domain(format!("cannot lower a {}-cell to dimension {k}", c.dim())));
    }
    let mut out = c.clone();
    out.levels.resize(k + 1, Level::default());
    Ok(out)
}

/// `y *_p x`, defined when the `p`-target of `x` is the `p`-source of `y`.
pub fn compose_cells(y: &OrCell, x: &OrCell, p: usize) -> Result<OrCell> {
    if x.n != y.n || x.dim() != y.dim() {
        return Err(Error::Compose(format!("cells {x} and {y} differ in ambient or dimension")));
    }
    if p >= x.dim() {
        return Err(Error::Compose(format!("composition index {p} must be below the dimension {}", x.dim())));
    }
    if boundary(x, p, Sign::Plus)? != boundary(y, p, Sign::Minus)? {
        return Err(Error::Compose(format!("target of {x} along {p} is not the source of {y}")));
    }
    let mut levels = x.levels[..p].to_vec();
    levels.push(Level { minus: x.levels[p].minus.clone(), plus: y.levels[p].plus.clone() });
    for (a, b) in x.levels[p + 1..].iter().zip(&y.levels[p + 1..]) {
        levels.push(Level {
            minus: a.minus.union(&b.minus).cloned().collect(),
            plus: a.plus.union(&b.plus).cloned().collect(),
        });
    }
    Ok(OrCell { n: x.n, levels })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub n: usize,
    pub k: usize,
    pub nondegenerate: Vec<OrCell>,
    pub degenerate: Vec<OrCell>,
}

impl Census {
    pub fn all(&self) -> impl Iterator<Item = &OrCell> {
        self.nondegenerate.iter().chain(&self.degenerate)
    }
}

fn subsets(items: &[Face]) -> Vec<BTreeSet<Face>> {
    (0u64..1 << items.len())
        .map(|m| (0..items.len()).filter(|&i| m >> i & 1 == 1).map(|i| items[i].clone()).collect())
        .collect()
}

/// All valid `k`-cells of `O(n)`, top level first, then level by level
/// downwards: a choice of `x_i^-` determines `x_i^+` by movement.
pub fn enumerate_cells(n: usize, k: usize) -> Result<Census> {
    if n > MAX_AMBIENT {
        return Err(Error::Resource(format!("orientals are enumerated up to n = {MAX_AMBIENT}, got {n}")));
    }
    if k > n {
        return Err(Error::Domain(format!("cell dimension {k} exceeds n = {n}")));
    }
    let choices: Vec<Vec<BTreeSet<Face>>> = (0..=k)
        .map(|i| {
            let fs = faces(n, i);
            if i == 0 {
                fs.into_iter().map(|f| BTreeSet::from([f])).collect()
            } else {
                subsets(&fs)
            }
        })
        .collect();
    let mut out = Vec::new();
    for top in &choices[k] {
        let mut levels = vec![Level::default(); k + 1];
        levels[k] = Level::flat(top.clone());
        descend(n, k, &choices, &mut levels, &mut out);
    }
    out.sort();
    let (degenerate, nondegenerate) = out.into_iter().partition(OrCell::is_degenerate);
    Ok(Census { n, k, nondegenerate, degenerate })
}

fn descend(n: usize, i: usize, choices: &[Vec<BTreeSet<Face>>], levels: &mut Vec<Level>, out: &mut Vec<OrCell>) {
    if i == 0 {
        let cell = OrCell { n, levels: levels.clone() };
        if validate_cell(&cell).is_ok() {
            out.push(cell);
        }
        return;
    }
    let below = i - 1;
    let Ok((even, odd)) = halves(&levels[i].minus) else { return };
    let (fwd, back) = if below % 2 == 0 { (even, odd) } else { (odd, even) };
    for minus in &choices[below] {
        let plus: BTreeSet<Face> = minus.union(&fwd).filter(|f| !back.contains(f)).cloned().collect();
        let lower = Level { minus: minus.clone(), plus };
        let fits = [Sign::Minus, Sign::Plus].iter().all(|&s| moves(below, &lower, levels[i].get(s)) == Ok(true));
        if fits {
            levels[below] = lower;
            descend(n, below, choices, levels, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(n: usize, s: &str) -> OrCell {
        OrCell::parse_in(n, s).unwrap()
    }

    #[test]
    fn principal_triangle() {
        let c = cell(2, "({2},{0}|{01,12},{02}|{012},{012})");
        assert_eq!(validate_cell(&c), Ok(()));
        assert_eq!(boundary(&c, 1, Sign::Minus).unwrap(), cell(2, "({2},{0}|{01,12},{01,12})"));
        assert_eq!(boundary(&c, 1, Sign::Plus).unwrap(), cell(2, "({2},{0}|{02},{02})"));
        assert_eq!(boundary(&c, 0, Sign::Minus).unwrap(), OrCell::object(2, 0).unwrap());
    }

    #[test]
    fn edges_compose_along_a_vertex() {
        let a = cell(2, "({1},{0}|{01},{01})");
        let b = cell(2, "({2},{1}|{12},{12})");
        let ba = compose_cells(&b, &a, 0).unwrap();
        assert_eq!(ba, cell(2, "({2},{0}|{01,12},{01,12})"));
        assert!(compose_cells(&a, &b, 0).is_err());
    }

    #[test]
    fn identities_validate_and_violations_are_named() {
        let id = identity_cell(&OrCell::object(2, 1).unwrap(), 2).unwrap();
        assert_eq!(id.to_string(), "({1},{1}|{},{}|{},{})");
        assert_eq!(validate_cell(&id), Ok(()));
        assert!(id.is_degenerate());

        let twice = cell(2, "({2},{0}|{01,02},{01,02})");
        assert!(matches!(validate_cell(&twice), Err(Violation::SharedFace { level: 1, even: false, .. })));
        let not_singleton = cell(1, "({0,1},{0}|{01},{01})");
        assert!(matches!(validate_cell(&not_singleton), Err(Violation::Singleton { .. })));
        let backwards = cell(1, "({0},{1}|{01},{01})");
        assert!(matches!(validate_cell(&backwards), Err(Violation::Movement { level: 0, .. })));
        let open = cell(2, "({2},{0}|{02},{01,12})");
        assert!(matches!(validate_cell(&open), Err(Violation::Top { level: 1 })));
        let outside = cell(1, "({2},{0}|{02},{02})");
        assert!(matches!(validate_cell(&outside), Err(Violation::Shape { .. })));
    }

    #[test]
    fn guards() {
        assert!(matches!(enumerate_cells(4, 1), Err(Error::Resource(_))));
        assert!(enumerate_cells(1, 2).is_err());
        assert_eq!(enumerate_cells(0, 0).unwrap().nondegenerate.len(), 1);
    }

    #[test]
    fn display_and_json_round_trip() {
        let c = cell(3, "({3},{0}|{01,12,23},{02,23}|{012},{012})");
        assert_eq!(OrCell::parse_in(3, &c.to_string()).unwrap(), c);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.starts_with(r#"{"n":3,"levels":[{"minus":[[0]],"plus":[[3]]}"#));
        assert_eq!(serde_json::from_str::<OrCell>(&json).unwrap(), c);
        assert!(serde_json::from_str::<OrCell>(r#"{"n":1,"levels":[{"minus":[[1,0]],"plus":[]}]}"#).is_err());
    }
}
