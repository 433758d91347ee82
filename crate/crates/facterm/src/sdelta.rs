//! The simplicial set of square probes into `sq(S)` and its integer homology.
//!
//! An `m`-simplex is a morphism from the full `m × m` square into `sq(S)`,
//! that is a pair of monotone maps `a: [m] -> [n]`, `b: [m] -> [m_S]` with
//! every `(a(i), b(j))` in the region. Since the region is an up-set in `y`
//! and heights grow with `x`, the single corner `(a(m), b(0))` decides it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::fstring::FString;
use crate::monotone::monotone_maps;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SqSimplex {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl SqSimplex {
    pub fn dim(&self) -> usize {
        self.a.len() - 1
    }

    pub fn is_valid_in(&self, s: &FString) -> bool {
        let hs = s.heights();
        self.a.len() == self.b.len()
            && self.a.last().is_some_and(|&x| x <= s.n())
            && self.b.last().is_some_and(|&y| y <= s.m())
            && self.a.windows(2).all(|w| w[0] <= w[1])
            && self.b.windows(2).all(|w| w[0] <= w[1])
            && hs[*self.a.last().unwrap()] <= self.b[0]
    }

    pub fn is_degenerate(&self) -> bool {
        (0..self.dim()).any(|j| self.a[j] == self.a[j + 1] && self.b[j] == self.b[j + 1])
    }

    /// Omit index `i` from both coordinates.
    pub fn face(&self, i: usize) -> SqSimplex {
        let mut f = self.clone();
        f.a.remove(i);
        f.b.remove(i);
        f
    }

    /// Repeat index `j` in both coordinates.
    pub fn degeneracy(&self, j: usize) -> SqSimplex {
        let mut f = self.clone();
        f.a.insert(j, self.a[j]);
        f.b.insert(j, self.b[j]);
        f
    }
}

/// All `m`-simplices, sorted.
pub fn simplices(s: &FString, m: usize) -> Vec<SqSimplex> {
    let hs = s.heights();
    let bs = monotone_maps(m + 1, s.m());
    let mut out = Vec::new();
    for a in monotone_maps(m + 1, s.n()) {
        let floor = hs[a[m]];
        for b in bs.iter().filter(|b| b[0] >= floor) {
            out.push(SqSimplex { a: a.clone(), b: b.clone() });
        }
    }
    out.sort();
    out
}

pub fn nondegenerate(s: &FString, m: usize) -> Vec<SqSimplex> {
    simplices(s, m).into_iter().filter(|x| !x.is_degenerate()).collect()
}

/// Nondegenerate simplices are strictly increasing chains of points, so none
/// exist above this dimension.
pub fn top_dimension(s: &FString) -> usize {
    s.n() + s.m()
}

/// Row-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: vec![BTreeMap::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries[r].get(&c).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: BigInt) {
        let e = self.entries[r].entry(c).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            self.entries[r].remove(&c);
        }
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, BigInt> {
        &self.entries[r]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.is_empty())
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = SparseMatrix::zero(self.rows, other.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (&k, x) in row {
                for (&j, y) in &other.entries[k] {
                    out.add_to(i, j, x * y);
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }
}

/// `∂_m`: rows are the nondegenerate `(m-1)`-simplices, columns the
/// nondegenerate `m`-simplices, both sorted.
pub fn boundary_matrix(s: &FString, m: usize) -> SparseMatrix {
    assert!(m >= 1, "boundaries start in degree one");
    let lower = nondegenerate(s, m - 1);
    let upper = nondegenerate(s, m);
    boundary_between(&lower, &upper)
}

fn boundary_between(lower: &[SqSimplex], upper: &[SqSimplex]) -> SparseMatrix {
    let index: HashMap<&SqSimplex, usize> = lower.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut d = SparseMatrix::zero(lower.len(), upper.len());
    for (c, x) in upper.iter().enumerate() {
        for i in 0..=x.dim() {
            if let Some(&r) = index.get(&x.face(i)) {
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                d.add_to(r, c, sign);
            }
        }
    }
    d
}

/// Normalized chains in every degree up to the top.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    /// `boundaries[m - 1]` is `∂_m`.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn of(s: &FString) -> Self {
        let bases: Vec<Vec<SqSimplex>> = (0..=top_dimension(s)).map(|m| nondegenerate(s, m)).collect();
        let boundaries = bases.windows(2).map(|w| boundary_between(&w[0], &w[1])).collect();
        ChainComplex { ranks: bases.iter().map(Vec::len).collect(), boundaries }
    }

    pub fn squares_vanish(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
pub fn smith_normal_form(m: &SparseMatrix) -> Vec<BigInt> {
    let mut e = Eliminator::new(m);
    let mut diagonal = Vec::new();
    while let Some(p) = e.step() {
        diagonal.push(p);
    }
    invariant_factors(diagonal)
}

/// Turn any diagonal into the divisibility chain with the same cokernel.
fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let (mut units, mut rest): (Vec<BigInt>, Vec<BigInt>) = d.drain(..).partition(|x| x.is_one());
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let (g, l) = (rest[i].gcd(&rest[j]), rest[i].lcm(&rest[j]));
            rest[i] = g;
            rest[j] = l;
        }
    }
    rest.sort();
    let (more_units, mut rest): (Vec<BigInt>, Vec<BigInt>) = rest.into_iter().partition(|x| x.is_one());
    units.extend(more_units);
    units.append(&mut rest);
    units
}

/// Sparse elimination with column-occupancy bookkeeping. Unit pivots are
/// taken greedily; otherwise the smallest entry is reduced Euclid-style.
struct Eliminator {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
    live: BTreeSet<(usize, usize)>,
}

impl Eliminator {
    fn new(m: &SparseMatrix) -> Self {
        let mut cols = vec![BTreeSet::new(); m.cols];
        for (r, row) in m.entries.iter().enumerate() {
            for &c in row.keys() {
                cols[c].insert(r);
            }
        }
        let live = m.entries.iter().enumerate().filter(|(_, row)| !row.is_empty()).map(|(r, row)| (row.len(), r)).collect();
        Eliminator { rows: m.entries.clone(), cols, live }
    }

    fn set(&mut self, r: usize, c: usize, v: BigInt) {
        let before = self.rows[r].len();
        if v.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.rows[r].insert(c, v);
            self.cols[c].insert(r);
        }
        self.relen(r, before);
    }

    fn relen(&mut self, r: usize, before: usize) {
        let after = self.rows[r].len();
        if before != after || after == 0 {
            self.live.remove(&(before, r));
            if after > 0 {
                self.live.insert((after, r));
            }
        }
    }

    /// `row[target] -= q * row[source]`.
    fn row_op(&mut self, target: usize, source: usize, q: &BigInt) {
        let src: Vec<(usize, BigInt)> = self.rows[source].iter().map(|(&c, v)| (c, v.clone())).collect();
        for (c, v) in src {
            let cur = self.rows[target].get(&c).cloned().unwrap_or_else(BigInt::zero);
            self.set(target, c, cur - q * v);
        }
    }

    /// `col[target] -= q * col[source]`.
    fn col_op(&mut self, target: usize, source: usize, q: &BigInt) {
        let rows: Vec<usize> = self.cols[source].iter().copied().collect();
        for r in rows {
            let v = self.rows[r][&source].clone();
            let cur = self.rows[r].get(&target).cloned().unwrap_or_else(BigInt::zero);
            self.set(r, target, cur - q * v);
        }
    }

    fn remove(&mut self, r: usize, c: usize) {
        let before = self.rows[r].len();
        for &k in self.rows[r].keys() {
            self.cols[k].remove(&r);
        }
        self.rows[r].clear();
        self.relen(r, before);
        debug_assert!(self.cols[c].is_empty());
    }

    fn unit_pivot(&self) -> Option<(usize, usize)> {
        for &(_, r) in &self.live {
            let best = self.rows[r]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(&c, _)| self.cols[c].len())
                .map(|(&c, _)| c);
            if let Some(c) = best {
                return Some((r, c));
            }
        }
        None
    }

    fn smallest(&self) -> Option<(usize, usize)> {
        self.live
            .iter()
            .flat_map(|&(_, r)| self.rows[r].iter().map(move |(&c, v)| (v.abs(), r, c)))
            .min()
            .map(|(_, r, c)| (r, c))
    }

    /// Eliminate one pivot and return its absolute value.
    fn step(&mut self) -> Option<BigInt> {
        loop {
            let (r, c) = self.unit_pivot().or_else(|| self.smallest())?;
            let p = self.rows[r][&c].clone();
            let mut clean = true;
            let others: Vec<usize> = self.cols[c].iter().copied().filter(|&r2| r2 != r).collect();
            for r2 in others {
                let q = &self.rows[r2][&c] / &p;
                self.row_op(r2, r, &q);
                clean &= !self.cols[c].contains(&r2);
            }
            if !clean {
                continue;
            }
            let others: Vec<usize> = self.rows[r].keys().copied().filter(|&c2| c2 != c).collect();
            for c2 in others {
                let q = &self.rows[r][&c2] / &p;
                self.col_op(c2, c, &q);
                clean &= !self.rows[r].contains_key(&c2);
            }
            if !clean {
                continue;
            }
            self.remove(r, c);
            return Some(p.abs());
        }
    }
}

fn torsion_json<S: Serializer>(t: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(t.len()))?;
    for x in t {
        match u64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(serialize_with = "torsion_json")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Homology in degrees `0..=top_dimension(s)`.
pub fn homology(s: &FString) -> Vec<HomologyGroup> {
    let cx = ChainComplex::of(s);
    let factors: Vec<Vec<BigInt>> = cx.boundaries.iter().map(smith_normal_form).collect();
    (0..cx.ranks.len())
        .map(|k| {
            let out_rank = if k == 0 { 0 } else { factors[k - 1].len() };
            let (in_rank, torsion) = match factors.get(k) {
                Some(f) => (f.len(), f.iter().filter(|x| !x.is_one()).cloned().collect()),
                None => (0, Vec::new()),
            };
            HomologyGroup { rank: cx.ranks[k] - out_rank - in_rank, torsion }
        })
        .collect()
}
