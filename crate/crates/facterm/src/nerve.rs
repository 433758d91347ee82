//! Nerves of factorization systems.
//!
//! The value at `S` is the set of class-preserving functors `sq(S) -> F`.
//! Unique factorization determines such a functor from its values on the
//! path, so a [`PathLabeling`] is all we store; [`grid_fill`] recovers the
//! rest one unit square at a time.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{check_fs, factorize_morphism, FSCategory, FSFunctor, FinCat};
use crate::fmor::relations::relation_instances;
use crate::fmor::{
    canonical_word, embed_simplicial, generator, generators_on, simplicial_object, FMorphism,
    GeneratorToken, SimplicialKind, SimplicialOp,
};
use crate::fstring::{FString, GridPoint, Letter};

/// Objects at the path vertices and morphisms along the path segments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathLabeling {
    pub string: FString,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl PathLabeling {
    pub fn point(object: usize) -> Self {
        PathLabeling { string: FString::empty(), vertices: vec![object], edges: Vec::new() }
    }

    pub fn validate(&self, f: &FSCategory) -> Result<()> {
        let c = f.cat();
        let fail = |m: String| Err(Error::Domain(format!("labeling of {}: {m}", self.string)));
        if self.vertices.len() != self.string.len() + 1 || self.edges.len() != self.string.len() {
            return fail("wrong number of entries".into());
        }
        if self.vertices.iter().any(|&x| x >= c.num_objects()) || self.edges.iter().any(|&e| e >= c.num_morphisms()) {
            return fail("index out of range".into());
        }
        for (k, (&e, &l)) in self.edges.iter().zip(self.string.letters()).enumerate() {
            if c.dom(e) != self.vertices[k] || c.cod(e) != self.vertices[k + 1] {
                return fail(format!("segment {k} does not connect its vertices"));
            }
            let marked = if l == Letter::H { f.is_h(e) } else { f.is_v(e) };
            if !marked {
                return fail(format!("segment {k} carries {} outside its class", c.name(e)));
            }
        }
        Ok(())
    }

    /// Morphism names along the path, or the object name for `*`.
    pub fn name(&self, c: &FinCat) -> String {
        if self.edges.is_empty() {
            return c.object_name(self.vertices[0]).to_string();
        }
        self.edges.iter().map(|&e| c.name(e)).collect::<Vec<_>>().join(" ; ")
    }

    /// The composite along the whole path.
    pub fn composite(&self, c: &FinCat) -> usize {
        self.edges.iter().fold(c.identity(self.vertices[0]), |acc, &e| c.compose(e, acc).expect("composable path"))
    }

    pub fn map(&self, p: &FSFunctor) -> PathLabeling {
        PathLabeling {
            string: self.string.clone(),
            vertices: self.vertices.iter().map(|&x| p.objects[x]).collect(),
            edges: self.edges.iter().map(|&e| p.morphisms[e]).collect(),
        }
    }
}

fn labelings(f: &FSCategory, s: &FString) -> Vec<PathLabeling> {
    let c = f.cat();
    let mut out_h = vec![Vec::new(); c.num_objects()];
    let mut out_v = vec![Vec::new(); c.num_objects()];
    for m in 0..c.num_morphisms() {
        if f.is_h(m) {
            out_h[c.dom(m)].push(m);
        }
        if f.is_v(m) {
            out_v[c.dom(m)].push(m);
        }
    }
    let mut out = Vec::new();
    let mut current = PathLabeling { string: s.clone(), vertices: Vec::new(), edges: Vec::new() };
    fn extend(
        c: &FinCat,
        out_h: &[Vec<usize>],
        out_v: &[Vec<usize>],
        current: &mut PathLabeling,
        out: &mut Vec<PathLabeling>,
    ) {
        let k = current.edges.len();
        if k == current.string.len() {
            out.push(current.clone());
            return;
        }
        let here = current.vertices[k];
        let choices = if current.string.letters()[k] == Letter::H { &out_h[here] } else { &out_v[here] };
        for &e in choices {
            current.edges.push(e);
            current.vertices.push(c.cod(e));
            extend(c, out_h, out_v, current, out);
            current.edges.pop();
            current.vertices.pop();
        }
    }
    for x in 0..c.num_objects() {
        current.vertices.push(x);
        extend(c, &out_h, &out_v, &mut current, &mut out);
        current.vertices.pop();
    }
    out.sort();
    out
}

/// All labelings of the path of `s`, sorted.
pub fn nerve_value(f: &FSCategory, s: &FString) -> Result<Vec<PathLabeling>> {
    check_fs(f)?;
    Ok(labelings(f, s))
}

/// Which unit square to fill next; both must give the same result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillOrder {
    /// Columns right to left, each bottom to top.
    Columns,
    /// Rows bottom to top, each right to left.
    Rows,
}

/// A labeling of every unit edge of `sq(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridFill {
    string: FString,
    objects: BTreeMap<GridPoint, usize>,
    right: BTreeMap<GridPoint, usize>,
    up: BTreeMap<GridPoint, usize>,
}

impl GridFill {
    pub fn string(&self) -> &FString {
        &self.string
    }

    pub fn object(&self, p: GridPoint) -> Option<usize> {
        self.objects.get(&p).copied()
    }

    /// The edge from `p` to `p + (1, 0)`.
    pub fn right(&self, p: GridPoint) -> Option<usize> {
        self.right.get(&p).copied()
    }

    /// The edge from `p` to `p + (0, 1)`.
    pub fn up(&self, p: GridPoint) -> Option<usize> {
        self.up.get(&p).copied()
    }

    /// The value on `p <= q`, composed up the column of `p` and then along
    /// the row of `q`; that route stays inside the region.
    pub fn morphism(&self, c: &FinCat, p: GridPoint, q: GridPoint) -> Result<usize> {
        let start = self
            .object(p)
            .ok_or_else(|| Error::Domain(format!("{p} is not in sq{}", self.string)))?;
        if !p.le(q) || self.object(q).is_none() {
            return Err(Error::Domain(format!("no arrow {p} -> {q} in sq{}", self.string)));
        }
        let mut acc = c.identity(start);
        for y in p.y..q.y {
            acc = c.compose(self.up[&GridPoint::new(p.x, y)], acc).expect("filled edges compose");
        }
        for x in p.x..q.x {
            acc = c.compose(self.right[&GridPoint::new(x, q.y)], acc).expect("filled edges compose");
        }
        Ok(acc)
    }

    pub fn path_labeling(&self) -> PathLabeling {
        let path = self.string.path_vertices();
        let vertices = path.iter().map(|p| self.objects[p]).collect();
        let edges = self
            .string
            .letters()
            .iter()
            .zip(&path)
            .map(|(&l, p)| if l == Letter::H { self.right[p] } else { self.up[p] })
            .collect();
        PathLabeling { string: self.string.clone(), vertices, edges }
    }

    /// Every unit square commutes.
    pub fn squares_commute(&self, c: &FinCat) -> bool {
        self.right.iter().all(|(&p, &bottom)| {
            let (Some(&left), Some(&right), Some(&top)) = (
                self.up.get(&p),
                self.up.get(&GridPoint::new(p.x + 1, p.y)),
                self.right.get(&GridPoint::new(p.x, p.y + 1)),
            ) else {
                return true;
            };
            c.compose(right, bottom) == c.compose(top, left)
        })
    }
}

pub fn grid_fill(f: &FSCategory, lab: &PathLabeling) -> Result<GridFill> {
    grid_fill_in(f, lab, FillOrder::Columns)
}

pub fn grid_fill_in(f: &FSCategory, lab: &PathLabeling, order: FillOrder) -> Result<GridFill> {
    lab.validate(f)?;
    let c = f.cat();
    let s = &lab.string;
    let path = s.path_vertices();
    let mut fill = GridFill {
        string: s.clone(),
        objects: BTreeMap::new(),
        right: BTreeMap::new(),
        up: BTreeMap::new(),
    };
    for (k, p) in path.iter().enumerate() {
        fill.objects.insert(*p, lab.vertices[k]);
    }
    for (k, &l) in s.letters().iter().enumerate() {
        let edges = if l == Letter::H { &mut fill.right } else { &mut fill.up };
        edges.insert(path[k], lab.edges[k]);
    }
    let (n, m, hs) = (s.n(), s.m(), s.heights());
    let hs = &hs;
    let squares: Vec<GridPoint> = match order {
        FillOrder::Columns => (0..n).rev().flat_map(|x| (hs[x + 1]..m).map(move |y| GridPoint::new(x, y))).collect(),
        FillOrder::Rows => (0..m)
            .flat_map(|y| (0..n).rev().filter(move |&x| y >= hs[x + 1]).map(move |x| GridPoint::new(x, y)))
            .collect(),
    };
    for p in squares {
        let bottom = fill.right[&p];
        let right = fill.up[&GridPoint::new(p.x + 1, p.y)];
        let diagonal = c
            .compose(right, bottom)
            .ok_or_else(|| Error::Domain(format!("edges at {p} do not compose")))?;
        let (v, h) = factorize_morphism(f, diagonal)?;
        fill.up.insert(p, v);
        fill.right.insert(GridPoint::new(p.x, p.y + 1), h);
        fill.objects.insert(GridPoint::new(p.x, p.y + 1), c.cod(v));
    }
    Ok(fill)
}

/// Precompose a labeling of the target of `g` with `g`.
pub fn restrict(f: &FSCategory, g: &FMorphism, lab: &PathLabeling) -> Result<PathLabeling> {
    if &lab.string != g.target() {
        return Err(Error::Domain(format!("labeling of {} given for a map into {}", lab.string, g.target())));
    }
    let fill = grid_fill(f, lab)?;
    let image: Vec<GridPoint> = g.source().path_vertices().iter().map(|&p| g.apply(p)).collect::<Result<_>>()?;
    let vertices = image.iter().map(|&p| fill.objects[&p]).collect();
    let edges = image.windows(2).map(|w| fill.morphism(f.cat(), w[0], w[1])).collect::<Result<_>>()?;
    Ok(PathLabeling { string: g.source().clone(), vertices, edges })
}

/// Restriction of a table along one generator, from the values at its
/// target to the values at its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMap {
    pub gen: GeneratorToken,
    pub source: FString,
    pub table: Vec<usize>,
}

/// Finite sets on every string up to a length bound, with maps along the
/// generators between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelTable {
    bound: usize,
    values: BTreeMap<FString, Vec<String>>,
    maps: BTreeMap<(FString, GeneratorToken), (FString, Vec<usize>)>,
}

pub const DEFAULT_BOUND: usize = 6;

impl ModelTable {
    pub fn new(bound: usize, values: BTreeMap<FString, Vec<String>>, maps: Vec<GeneratorMap>) -> Result<Self> {
        let mut table = ModelTable { bound, values, maps: BTreeMap::new() };
        for GeneratorMap { gen, source, table: entries } in maps {
            let g = generator(gen, &source)?;
            let target = g.target().clone();
            let (Some(src_vals), Some(tgt_vals)) = (table.values.get(&source), table.values.get(&target)) else {
                return Err(Error::Coverage(format!("{gen} on {source} leaves the listed strings")));
            };
            if entries.len() != tgt_vals.len() || entries.iter().any(|&k| k >= src_vals.len()) {
                return Err(Error::Domain(format!("map along {gen} on {source} has the wrong shape")));
            }
            if table.maps.insert((source.clone(), gen), (target, entries)).is_some() {
                return Err(Error::Domain(format!("map along {gen} on {source} is listed twice")));
            }
        }
        Ok(table)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn strings(&self) -> impl Iterator<Item = &FString> {
        self.values.keys()
    }

    pub fn values(&self, s: &FString) -> Option<&[String]> {
        self.values.get(s).map(|v| v.as_slice())
    }

    fn values_or_err(&self, s: &FString) -> Result<&[String]> {
        self.values(s).ok_or_else(|| Error::Coverage(format!("no values at {s}")))
    }

    pub fn map(&self, source: &FString, gen: GeneratorToken) -> Option<&[usize]> {
        self.maps.get(&(source.clone(), gen)).map(|(_, t)| t.as_slice())
    }

    /// Restrict `elem` (a value at the end of the word) back to `source`.
    pub fn restrict_word(&self, source: &FString, word: &[GeneratorToken], elem: usize) -> Result<usize> {
        let mut strings = vec![source.clone()];
        for &t in word {
            let next = generator(t, strings.last().unwrap())?.target().clone();
            strings.push(next);
        }
        let size = self.values_or_err(strings.last().unwrap())?.len();
        if elem >= size {
            return Err(Error::Range { value: elem, max: size.saturating_sub(1) });
        }
        let mut elem = elem;
        for (s, &t) in strings.iter().zip(word).rev() {
            let table = self.map(s, t).ok_or_else(|| Error::Coverage(format!("no map along {t} on {s}")))?;
            elem = table[elem];
        }
        Ok(elem)
    }

    pub fn restrict_morphism(&self, g: &FMorphism, elem: usize) -> Result<usize> {
        self.restrict_word(g.source(), &canonical_word(g), elem)
    }

    /// Drop one value at `s`. Maps out of `s` are dropped too, since they
    /// may point at it.
    pub fn remove_element(&mut self, s: &FString, k: usize) -> Result<()> {
        let vals = self.values.get_mut(s).ok_or_else(|| Error::Coverage(format!("no values at {s}")))?;
        if k >= vals.len() {
            return Err(Error::Range { value: k, max: vals.len().saturating_sub(1) });
        }
        vals.remove(k);
        self.maps.retain(|(source, _), _| source != s);
        for (target, entries) in self.maps.values_mut() {
            if target == s {
                entries.remove(k);
            }
        }
        Ok(())
    }

    /// Check both sides of every defining relation whose strings are covered.
    pub fn check_functoriality(&self) -> std::result::Result<(), String> {
        for s in self.values.keys() {
            for rel in relation_instances(s) {
                let Ok(g) = crate::fmor::from_word(&rel.lhs, s) else { continue };
                let Some(size) = self.values(g.target()).map(|v| v.len()) else { continue };
                for elem in 0..size {
                    let l = self.restrict_word(s, &rel.lhs, elem);
                    let r = self.restrict_word(s, &rel.rhs, elem);
                    match (l, r) {
                        (Ok(l), Ok(r)) if l != r => {
                            return Err(format!("{} on {s}: value {elem} restricts to {l} and {r}", rel.family))
                        }
                        (Ok(_), Ok(_)) => {}
                        _ => break,
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ModelTableJson {
    bound: usize,
    values: BTreeMap<String, Vec<String>>,
    maps: Vec<GeneratorMap>,
}

impl Serialize for ModelTable {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ModelTableJson {
            bound: self.bound,
            values: self.values.iter().map(|(s, v)| (s.to_string(), v.clone())).collect(),
            maps: self
                .maps
                .iter()
                .map(|((source, gen), (_, table))| GeneratorMap { gen: *gen, source: source.clone(), table: table.clone() })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ModelTable {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ModelTableJson::deserialize(de)?;
        let mut values = BTreeMap::new();
        for (k, v) in raw.values {
            values.insert(FString::parse(&k).map_err(D::Error::custom)?, v);
        }
        ModelTable::new(raw.bound, values, raw.maps).map_err(D::Error::custom)
    }
}

/// The nerve of `f` on every string of length at most `bound`.
pub fn nerve_table(f: &FSCategory, bound: usize) -> Result<ModelTable> {
    check_fs(f)?;
    let c = f.cat();
    let strings = FString::all_up_to(bound);
    let labs: HashMap<FString, Vec<PathLabeling>> = strings.iter().map(|s| (s.clone(), labelings(f, s))).collect();
    let index: HashMap<&PathLabeling, usize> =
        labs.values().flat_map(|v| v.iter().enumerate().map(|(k, l)| (l, k))).collect();
    let mut maps = Vec::new();
    for s in &strings {
        for gen in generators_on(s) {
            let g = generator(gen, s)?;
            let Some(targets) = labs.get(g.target()) else { continue };
            let table = targets.iter().map(|l| Ok(index[&restrict(f, &g, l)?])).collect::<Result<_>>()?;
            maps.push(GeneratorMap { gen, source: s.clone(), table });
        }
    }
    let values = labs.iter().map(|(s, v)| (s.clone(), v.iter().map(|l| l.name(c)).collect())).collect();
    ModelTable::new(bound, values, maps)
}

/// Does `T(S)` split as the fiber product of its values on the segments of
/// `S` over the values at the path vertices?
pub fn segal_check(t: &ModelTable, s: &FString) -> Result<bool> {
    let size = t.values_or_err(s)?.len();
    if s.len() <= 1 {
        return Ok(true);
    }
    let point = FString::empty();
    t.values_or_err(&point)?;
    let ends = |l: Letter, k: usize| -> Result<(usize, usize)> {
        let e = FString::new(vec![l]);
        let far = if l == Letter::H { (1, 0) } else { (0, 1) };
        let start = t.restrict_morphism(&FMorphism::translation(&point, &e, 0, 0)?, k)?;
        let end = t.restrict_morphism(&FMorphism::translation(&point, &e, far.0, far.1)?, k)?;
        Ok((start, end))
    };
    let mut segment_ends: HashMap<Letter, Vec<(usize, usize)>> = HashMap::new();
    for l in [Letter::H, Letter::V] {
        let e = FString::new(vec![l]);
        let Some(vals) = t.values(&e) else {
            if s.letters().contains(&l) {
                return Err(Error::Coverage(format!("no values at {e}")));
            }
            continue;
        };
        segment_ends.insert(l, (0..vals.len()).map(|k| ends(l, k)).collect::<Result<_>>()?);
    }

    let path = s.path_vertices();
    let inclusions: Vec<FMorphism> = s
        .letters()
        .iter()
        .zip(&path)
        .map(|(&l, p)| FMorphism::translation(&FString::new(vec![l]), s, p.x, p.y))
        .collect::<Result<_>>()?;
    let mut image = BTreeSet::new();
    for elem in 0..size {
        let parts: Vec<usize> = inclusions.iter().map(|g| t.restrict_morphism(g, elem)).collect::<Result<_>>()?;
        let matched = parts.windows(2).zip(s.letters().windows(2)).all(|(w, l)| {
            segment_ends[&l[0]][w[0]].1 == segment_ends[&l[1]][w[1]].0
        });
        if !matched || !image.insert(parts) {
            return Ok(false);
        }
    }
    // Count the fiber product, walking along the path.
    let points = t.values_or_err(&point)?.len();
    let mut count = vec![1u128; points];
    for &l in s.letters() {
        let mut next = vec![0u128; points];
        for &(a, b) in &segment_ends[&l] {
            next[b] += count[a];
        }
        count = next;
    }
    Ok(count.iter().sum::<u128>() == image.len() as u128)
}

fn simplicial_word(kind: SimplicialKind, ops: &[SimplicialOp]) -> Result<Vec<GeneratorToken>> {
    let mut word = Vec::new();
    for &op in ops {
        word.extend(embed_simplicial(kind, op)?.1);
    }
    Ok(word)
}

/// Faces carrying the edge `[1]` onto the edge `(i, i+1)` of `[k]`.
fn spine_ops(k: usize, i: usize) -> Vec<SimplicialOp> {
    let mut ops: Vec<SimplicialOp> = (1..k - i).map(|n| SimplicialOp::Face { n, i: n + 1 }).collect();
    ops.extend((k - i..k).map(|n| SimplicialOp::Face { n, i: 0 }));
    ops
}

/// Recover the factorization system from a table that reaches `vhvh`:
/// objects at `*`, morphisms at `vh`, composites from `vhvh`.
pub fn extract(t: &ModelTable) -> Result<FSCategory> {
    use SimplicialKind::T;
    let one = simplicial_object(T, 1);
    let two = simplicial_object(T, 2);
    let objects = t.values_or_err(&FString::empty())?.to_vec();
    let names = t.values_or_err(&one)?.to_vec();
    let along = |op: SimplicialOp, elem: usize| -> Result<usize> {
        let (src, word) = embed_simplicial(T, op)?;
        t.restrict_word(&src, &word, elem)
    };
    let nm = names.len();
    let dom: Vec<usize> = (0..nm).map(|f| along(SimplicialOp::Face { n: 0, i: 1 }, f)).collect::<Result<_>>()?;
    let cod: Vec<usize> = (0..nm).map(|f| along(SimplicialOp::Face { n: 0, i: 0 }, f)).collect::<Result<_>>()?;
    let ids: Vec<usize> =
        (0..objects.len()).map(|x| along(SimplicialOp::Degeneracy { n: 1, j: 0 }, x)).collect::<Result<_>>()?;

    let mut table = vec![vec![None; nm]; nm];
    for z in 0..t.values_or_err(&two)?.len() {
        let f = along(SimplicialOp::Face { n: 1, i: 2 }, z)?;
        let g = along(SimplicialOp::Face { n: 1, i: 0 }, z)?;
        let gf = along(SimplicialOp::Face { n: 1, i: 1 }, z)?;
        if table[g][f].replace(gf).is_some() {
            return Err(Error::Reconstruction(format!("{} after {} has two fillers", names[g], names[f])));
        }
    }
    let morphisms = (0..nm)
        .map(|f| crate::fincat::Morphism { name: names[f].clone(), dom: dom[f], cod: cod[f] })
        .collect();
    let cat = FinCat::new(objects, morphisms, table)
        .map_err(|e| Error::Reconstruction(format!("the extracted composition is not a category: {e}")))?;
    if (0..ids.len()).any(|x| cat.identity(x) != ids[x]) {
        return Err(Error::Reconstruction("degenerate values are not the identities".into()));
    }

    let marked = |gen: GeneratorToken| -> Result<Vec<bool>> {
        let short = generator(gen, &one)?.target().clone();
        let mut flags = vec![false; nm];
        for k in 0..t.values_or_err(&short)?.len() {
            flags[t.restrict_word(&one, &[gen], k)?] = true;
        }
        Ok(flags)
    };
    let h = marked(GeneratorToken::SigmaV(0))?;
    let v = marked(GeneratorToken::SigmaH(0))?;
    FSCategory::new(cat, h, v).map_err(|e| Error::Reconstruction(e.to_string()))
}

/// A simplex of an ordinary nerve: its first vertex and its edges.
type Chain = (usize, Vec<usize>);

fn chains(c: &FinCat, allowed: &dyn Fn(usize) -> bool, k: usize) -> BTreeSet<Chain> {
    let mut layer: Vec<Chain> = (0..c.num_objects()).map(|x| (x, Vec::new())).collect();
    for _ in 0..k {
        let mut next = Vec::new();
        for (x, edges) in layer {
            let end = edges.last().map_or(x, |&e| c.cod(e));
            for m in (0..c.num_morphisms()).filter(|&m| allowed(m) && c.dom(m) == end) {
                let mut e = edges.clone();
                e.push(m);
                next.push((x, e));
            }
        }
        layer = next;
    }
    layer.into_iter().collect()
}

fn chain_face(c: &FinCat, (x, edges): &Chain, i: usize) -> Chain {
    let k = edges.len();
    let mut e = edges.clone();
    if i == 0 {
        let first = e.remove(0);
        (c.cod(first), e)
    } else if i == k {
        e.pop();
        (*x, e)
    } else {
        let g = e.remove(i);
        e[i - 1] = c.compose(g, e[i - 1]).expect("composable chain");
        (*x, e)
    }
}

fn chain_degeneracy(c: &FinCat, (x, edges): &Chain, j: usize) -> Chain {
    let vertex = if j == 0 { *x } else { c.cod(edges[j - 1]) };
    let mut e = edges.clone();
    e.insert(j, c.identity(vertex));
    (*x, e)
}

/// Where one of the three simplicial restrictions of a nerve disagrees with
/// the ordinary nerve it should be.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComparison {
    pub kind: SimplicialKind,
    pub levels: usize,
    pub mismatch: Option<String>,
}

fn compare_simplicial(f: &FSCategory, t: &ModelTable, kind: SimplicialKind, levels: usize) -> Result<Option<String>> {
    let c = f.cat();
    let allowed: Box<dyn Fn(usize) -> bool> = match kind {
        SimplicialKind::H => Box::new(|m| f.is_h(m)),
        SimplicialKind::V => Box::new(|m| f.is_v(m)),
        SimplicialKind::T => Box::new(|_| true),
    };
    let point = labelings(f, &FString::empty());
    let edge = simplicial_object(kind, 1);
    let edge_labs = labelings(f, &edge);

    let mut simplices: Vec<Vec<Chain>> = Vec::new();
    for k in 0..=levels {
        let obj = simplicial_object(kind, k);
        let size = t.values_or_err(&obj)?.len();
        let mut level = Vec::with_capacity(size);
        for elem in 0..size {
            let chain = if k == 0 {
                (point[elem].vertices[0], Vec::new())
            } else {
                let mut edges = Vec::with_capacity(k);
                for i in 0..k {
                    let e = t.restrict_word(&edge, &simplicial_word(kind, &spine_ops(k, i))?, elem)?;
                    edges.push(edge_labs[e].composite(c));
                }
                (c.dom(edges[0]), edges)
            };
            level.push(chain);
        }
        let distinct: BTreeSet<Chain> = level.iter().cloned().collect();
        if distinct.len() != level.len() || distinct != chains(c, &*allowed, k) {
            return Ok(Some(format!("level {k} is not the set of {k}-chains")));
        }
        simplices.push(level);
    }
    for k in 1..=levels {
        for i in 0..=k {
            let (src, word) = embed_simplicial(kind, SimplicialOp::Face { n: k - 1, i })?;
            for (elem, chain) in simplices[k].iter().enumerate() {
                let face = t.restrict_word(&src, &word, elem)?;
                if simplices[k - 1][face] != chain_face(c, chain, i) {
                    return Ok(Some(format!("face {i} at level {k} disagrees")));
                }
            }
        }
    }
    for k in 0..levels {
        for j in 0..=k {
            let (src, word) = embed_simplicial(kind, SimplicialOp::Degeneracy { n: k + 1, j })?;
            for (elem, chain) in simplices[k].iter().enumerate() {
                let up = t.restrict_word(&src, &word, elem)?;
                if simplices[k + 1][up] != chain_degeneracy(c, chain, j) {
                    return Ok(Some(format!("degeneracy {j} at level {k} disagrees")));
                }
            }
        }
    }
    Ok(None)
}

/// Compare the horizontal, vertical and staircase restrictions of the nerve
/// of `f` with the nerves of `H`, `V` and the underlying category.
pub fn roundtrip_extract(f: &FSCategory, levels: usize) -> Result<Vec<SimplicialComparison>> {
    let t = nerve_table(f, 2 * levels)?;
    [SimplicialKind::H, SimplicialKind::V, SimplicialKind::T]
        .into_iter()
        .map(|kind| Ok(SimplicialComparison { kind, levels, mismatch: compare_simplicial(f, &t, kind, levels)? }))
        .collect()
}
