//! Spans of finite sets, distributive laws between two categories on the
//! same objects, and the same data graded over a base factorization system.
//!
//! Conventions: `v ∘ h` means `h` first. The swap `γ` takes a composable
//! `(h, v)` to `(ṽ, h̃)` with `h̃ ∘ ṽ = v ∘ h`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{check_fs, check_fs_functor, FSCategory, FSFunctor, FinCat, Morphism};

/// `left <- apex -> right`, with finite sets given by their sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    left: usize,
    right: usize,
    lleg: Vec<usize>,
    rleg: Vec<usize>,
}

impl Span {
    pub fn new(left: usize, right: usize, lleg: Vec<usize>, rleg: Vec<usize>) -> Result<Self> {
        if lleg.len() != rleg.len() {
            return Err(Error::Domain("the two legs have different sources".into()));
        }
        if lleg.iter().any(|&a| a >= left) || rleg.iter().any(|&b| b >= right) {
            return Err(Error::Domain("a leg leaves its target set".into()));
        }
        Ok(Span { left, right, lleg, rleg })
    }

    pub fn identity(n: usize) -> Self {
        Span { left: n, right: n, lleg: (0..n).collect(), rleg: (0..n).collect() }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn apex(&self) -> usize {
        self.lleg.len()
    }

    pub fn lleg(&self) -> &[usize] {
        &self.lleg
    }

    pub fn rleg(&self) -> &[usize] {
        &self.rleg
    }

    /// Apex elements sorted by their legs; two spans are isomorphic exactly
    /// when these agree.
    pub fn leg_profile(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.lleg.iter().copied().zip(self.rleg.iter().copied()).collect();
        v.sort();
        v
    }

    pub fn is_isomorphic(&self, other: &Span) -> bool {
        self.left == other.left && self.right == other.right && self.leg_profile() == other.leg_profile()
    }
}

/// The fiber product of `s1` and `s2` over their common middle, as pairs of
/// apex elements in lexicographic order.
pub fn fiber_pairs(s2: &Span, s1: &Span) -> Result<Vec<(usize, usize)>> {
    if s1.right != s2.left {
        return Err(Error::Compose(format!("middle sets of sizes {} and {} differ", s1.right, s2.left)));
    }
    Ok((0..s1.apex())
        .flat_map(|a1| (0..s2.apex()).map(move |a2| (a1, a2)))
        .filter(|&(a1, a2)| s1.rleg[a1] == s2.lleg[a2])
        .collect())
}

/// `s2 ∘ s1`; apex element `k` is the `k`-th pair of [`fiber_pairs`].
pub fn compose_spans(s2: &Span, s1: &Span) -> Result<Span> {
    let pairs = fiber_pairs(s2, s1)?;
    Ok(Span {
        left: s1.left,
        right: s2.right,
        lleg: pairs.iter().map(|&(a1, _)| s1.lleg[a1]).collect(),
        rleg: pairs.iter().map(|&(_, a2)| s2.rleg[a2]).collect(),
    })
}

/// Two categories on the same objects and a swap between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistLaw {
    h: FinCat,
    v: FinCat,
    gamma: BTreeMap<(usize, usize), (usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BeckViolation {
    Category { which: char, report: crate::fincat::CategoryReport },
    Missing { h: String, v: String },
    Shape { h: String, v: String },
    LeftUnit { v: String },
    RightUnit { h: String },
    HorizontalComposite { second: String, first: String, v: String },
    VerticalComposite { h: String, second: String, first: String },
}

impl fmt::Display for BeckViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BeckViolation::Category { which, report } => write!(out, "{which} is not a category: {report}"),
            BeckViolation::Missing { h, v } => write!(out, "no swap for ({h}, {v})"),
            BeckViolation::Shape { h, v } => write!(out, "the swap of ({h}, {v}) does not have the same ends"),
            BeckViolation::LeftUnit { v } => write!(out, "swapping an identity past {v} is not trivial"),
            BeckViolation::RightUnit { h } => write!(out, "swapping {h} past an identity is not trivial"),
            BeckViolation::HorizontalComposite { second, first, v } => {
                write!(out, "swapping {second} ∘ {first} past {v} differs from swapping them one at a time")
            }
            BeckViolation::VerticalComposite { h, second, first } => {
                write!(out, "swapping {h} past {second} ∘ {first} differs from swapping them one at a time")
            }
        }
    }
}

impl From<BeckViolation> for Error {
    fn from(v: BeckViolation) -> Self {
        Error::DistLaw(v.to_string())
    }
}

impl DistLaw {
    /// Both categories must list the same objects in the same order.
    pub fn new(h: FinCat, v: FinCat, gamma: BTreeMap<(usize, usize), (usize, usize)>) -> Result<Self> {
        if h.objects() != v.objects() {
            return Err(Error::DistLaw("the two categories have different objects".into()));
        }
        let in_range = gamma.iter().all(|(&(a, b), &(c, d))| {
            a < h.num_morphisms() && c < v.num_morphisms() && b < v.num_morphisms() && d < h.num_morphisms()
        });
        if !in_range {
            return Err(Error::DistLaw("swap entry out of range".into()));
        }
        Ok(DistLaw { h, v, gamma })
    }

    pub fn h(&self) -> &FinCat {
        &self.h
    }

    pub fn v(&self) -> &FinCat {
        &self.v
    }

    pub fn gamma(&self, h: usize, v: usize) -> Option<(usize, usize)> {
        self.gamma.get(&(h, v)).copied()
    }

    pub fn set_gamma(&mut self, h: usize, v: usize, out: (usize, usize)) {
        self.gamma.insert((h, v), out);
    }

    pub fn objects(&self) -> &[String] {
        self.h.objects()
    }

    /// A name-keyed description, independent of how morphisms are indexed.
    pub fn canonical_form(&self) -> NamedDistLaw {
        let named = |c: &FinCat| {
            let morphisms = (0..c.num_morphisms())
                .map(|f| (c.name(f).to_string(), c.object_name(c.dom(f)).to_string(), c.object_name(c.cod(f)).to_string()))
                .collect();
            let composites = (0..c.num_morphisms())
                .flat_map(|g| (0..c.num_morphisms()).map(move |f| (g, f)))
                .filter_map(|(g, f)| c.compose(g, f).map(|gf| ((c.name(g).into(), c.name(f).into()), c.name(gf).into())))
                .collect();
            (morphisms, composites)
        };
        let (hm, hc) = named(&self.h);
        let (vm, vc) = named(&self.v);
        NamedDistLaw {
            objects: self.objects().iter().cloned().collect(),
            h_morphisms: hm,
            v_morphisms: vm,
            h_composites: hc,
            v_composites: vc,
            gamma: self
                .gamma
                .iter()
                .map(|(&(h, v), &(vp, hp))| {
                    ((self.h.name(h).into(), self.v.name(v).into()), (self.v.name(vp).into(), self.h.name(hp).into()))
                })
                .collect(),
        }
    }
}

type Names = (String, String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedDistLaw {
    pub objects: BTreeSet<String>,
    pub h_morphisms: BTreeSet<(String, String, String)>,
    pub v_morphisms: BTreeSet<(String, String, String)>,
    pub h_composites: BTreeMap<Names, String>,
    pub v_composites: BTreeMap<Names, String>,
    pub gamma: BTreeMap<Names, Names>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SwapJson {
    h: String,
    v: String,
    vp: String,
    hp: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistLawJson {
    objects: Vec<String>,
    #[serde(rename = "H")]
    h: FinCat,
    #[serde(rename = "V")]
    v: FinCat,
    gamma: Vec<SwapJson>,
}

impl Serialize for DistLaw {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        DistLawJson {
            objects: self.objects().to_vec(),
            h: self.h.clone(),
            v: self.v.clone(),
            gamma: self
                .gamma
                .iter()
                .map(|(&(h, v), &(vp, hp))| SwapJson {
                    h: self.h.name(h).into(),
                    v: self.v.name(v).into(),
                    vp: self.v.name(vp).into(),
                    hp: self.h.name(hp).into(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DistLaw {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DistLawJson::deserialize(de)?;
        if raw.objects != raw.h.objects() {
            return Err(D::Error::custom("objects differ from those of H"));
        }
        let look = |c: &FinCat, n: &str| c.morphism_index(n).ok_or_else(|| D::Error::custom(format!("unknown morphism {n:?}")));
        let mut gamma = BTreeMap::new();
        for s in &raw.gamma {
            let key = (look(&raw.h, &s.h)?, look(&raw.v, &s.v)?);
            if gamma.insert(key, (look(&raw.v, &s.vp)?, look(&raw.h, &s.hp)?)).is_some() {
                return Err(D::Error::custom(format!("swap of ({}, {}) listed twice", s.h, s.v)));
            }
        }
        DistLaw::new(raw.h, raw.v, gamma).map_err(D::Error::custom)
    }
}

pub fn check_beck(d: &DistLaw) -> std::result::Result<(), BeckViolation> {
    let (h, v) = (&d.h, &d.v);
    crate::fincat::validate_category(h).map_err(|report| BeckViolation::Category { which: 'H', report })?;
    crate::fincat::validate_category(v).map_err(|report| BeckViolation::Category { which: 'V', report })?;
    let names = |a: usize, b: usize| (h.name(a).to_string(), v.name(b).to_string());
    let swap = |a: usize, b: usize| {
        d.gamma(a, b).ok_or_else(|| {
            let (h, v) = names(a, b);
            BeckViolation::Missing { h, v }
        })
    };
    let composable = |a: usize, b: usize| h.cod(a) == v.dom(b);
    for a in 0..h.num_morphisms() {
        for b in (0..v.num_morphisms()).filter(|&b| composable(a, b)) {
            let (vp, hp) = swap(a, b)?;
            if v.dom(vp) != h.dom(a) || h.cod(hp) != v.cod(b) || v.cod(vp) != h.dom(hp) {
                let (h, v) = names(a, b);
                return Err(BeckViolation::Shape { h, v });
            }
        }
    }
    for b in 0..v.num_morphisms() {
        let id = h.identity(v.dom(b));
        if swap(id, b)? != (b, h.identity(v.cod(b))) {
            return Err(BeckViolation::LeftUnit { v: v.name(b).into() });
        }
    }
    for a in 0..h.num_morphisms() {
        let id = v.identity(h.cod(a));
        if swap(a, id)? != (v.identity(h.dom(a)), a) {
            return Err(BeckViolation::RightUnit { h: h.name(a).into() });
        }
    }
    for a1 in 0..h.num_morphisms() {
        for a2 in (0..h.num_morphisms()).filter(|&a2| h.dom(a2) == h.cod(a1)) {
            let a21 = h.compose(a2, a1).unwrap();
            for b in (0..v.num_morphisms()).filter(|&b| composable(a2, b)) {
                let (b1, a2p) = swap(a2, b)?;
                let (b2, a1p) = swap(a1, b1)?;
                if swap(a21, b)? != (b2, h.compose(a2p, a1p).unwrap()) {
                    return Err(BeckViolation::HorizontalComposite {
                        second: h.name(a2).into(),
                        first: h.name(a1).into(),
                        v: v.name(b).into(),
                    });
                }
            }
        }
    }
    for a in 0..h.num_morphisms() {
        for b1 in (0..v.num_morphisms()).filter(|&b1| composable(a, b1)) {
            for b2 in (0..v.num_morphisms()).filter(|&b2| v.dom(b2) == v.cod(b1)) {
                let (b1p, ap) = swap(a, b1)?;
                let (b2p, app) = swap(ap, b2)?;
                if swap(a, v.compose(b2, b1).unwrap())? != (v.compose(b2p, b1p).unwrap(), app) {
                    return Err(BeckViolation::VerticalComposite {
                        h: h.name(a).into(),
                        second: v.name(b2).into(),
                        first: v.name(b1).into(),
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn distlaw_from_fs(f: &FSCategory) -> Result<DistLaw> {
    check_fs(f)?;
    let c = f.cat();
    let (h, h_old) = f.marked(true);
    let (v, v_old) = f.marked(false);
    let new_of = |old: &[usize]| {
        let mut m = vec![usize::MAX; c.num_morphisms()];
        for (i, &k) in old.iter().enumerate() {
            m[k] = i;
        }
        m
    };
    let (h_new, v_new) = (new_of(&h_old), new_of(&v_old));
    let mut gamma = BTreeMap::new();
    for (a, &ha) in h_old.iter().enumerate() {
        for (b, &vb) in v_old.iter().enumerate() {
            if let Some(diag) = c.compose(vb, ha) {
                let (vp, hp) = f.factor(diag);
                gamma.insert((a, b), (v_new[vp], h_new[hp]));
            }
        }
    }
    DistLaw::new(h, v, gamma)
}

/// Morphisms are pairs `(v, h)`, read as `h ∘ v`.
pub fn fs_from_distlaw(d: &DistLaw) -> Result<FSCategory> {
    check_beck(d)?;
    let (h, v) = (&d.h, &d.v);
    let keys: Vec<(usize, usize)> = (0..v.num_morphisms())
        .flat_map(|b| (0..h.num_morphisms()).map(move |a| (b, a)))
        .filter(|&(b, a)| v.cod(b) == h.dom(a))
        .collect();
    let plain = |&(b, a): &(usize, usize)| match (v.is_identity(b), h.is_identity(a)) {
        (true, _) => h.name(a).to_string(),
        (false, true) => v.name(b).to_string(),
        (false, false) => format!("{} ; {}", v.name(b), h.name(a)),
    };
    let tagged = |&(b, a): &(usize, usize)| match (v.is_identity(b), h.is_identity(a)) {
        (true, true) => h.name(a).to_string(),
        _ => format!("v:{} ; h:{}", v.name(b), h.name(a)),
    };
    let mut seen = HashSet::new();
    let clash = keys.iter().any(|k| !seen.insert(plain(k)));
    let cat = FinCat::generated(
        h.objects().to_vec(),
        keys.clone(),
        |k| if clash { tagged(k) } else { plain(k) },
        |&(b, _)| v.dom(b),
        |&(_, a)| h.cod(a),
        |&(b2, a2), &(b1, a1)| {
            let (bt, at) = d.gamma(a1, b2).expect("checked swap");
            (v.compose(bt, b1).unwrap(), h.compose(a2, at).unwrap())
        },
    );
    let hflag = keys.iter().map(|&(b, _)| v.is_identity(b)).collect();
    let vflag = keys.iter().map(|&(_, a)| h.is_identity(a)).collect();
    FSCategory::new(cat, hflag, vflag)
}

/// Morphisms of the graded system lying over one base morphism, with their
/// ends as positions in the object fibers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fiber {
    pub elements: Vec<String>,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
}

/// `eg ∘ ef = result`, with `eg` over `g`, `ef` over `f` and `result` over
/// the base composite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Composite {
    pub g: usize,
    pub eg: usize,
    pub f: usize,
    pub ef: usize,
    pub result: usize,
}

/// Swap of `(eh, ev)` over `(h, v)` into `(vp, hp)`, which lie over the
/// factors of `v ∘ h` in the base.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Swap {
    pub h: usize,
    pub eh: usize,
    pub v: usize,
    pub ev: usize,
    pub vp: usize,
    pub hp: usize,
}

/// A distributive law graded over a base factorization system. Fibers are
/// indexed by base object and base morphism; a morphism outside `H` (or
/// `V`) has an empty horizontal (or vertical) fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDistLaw {
    pub base: FSCategory,
    pub objects: Vec<Vec<String>>,
    pub h: Vec<Fiber>,
    pub v: Vec<Fiber>,
    pub unit_h: Vec<Vec<usize>>,
    pub unit_v: Vec<Vec<usize>>,
    pub compose_h: Vec<Composite>,
    pub compose_v: Vec<Composite>,
    pub swap: Vec<Swap>,
}

/// Cut `p: G -> F` into its fibers.
pub fn lax_data_from_functor(g: &FSCategory, base: &FSCategory, p: &FSFunctor) -> Result<BaseDistLaw> {
    check_fs(g)?;
    check_fs(base)?;
    check_fs_functor(g, base, p)?;
    let (gc, bc) = (g.cat(), base.cat());
    let mut position = vec![0; gc.num_objects()];
    let mut objects = vec![Vec::new(); bc.num_objects()];
    for x in 0..gc.num_objects() {
        let fiber = &mut objects[p.objects[x]];
        position[x] = fiber.len();
        fiber.push(gc.object_name(x).to_string());
    }
    let fibers = |marked: &dyn Fn(usize) -> bool| {
        let mut out = vec![Fiber::default(); bc.num_morphisms()];
        let mut pos = vec![usize::MAX; gc.num_morphisms()];
        for m in (0..gc.num_morphisms()).filter(|&m| marked(m)) {
            let fib = &mut out[p.morphisms[m]];
            pos[m] = fib.elements.len();
            fib.elements.push(gc.name(m).to_string());
            fib.dom.push(position[gc.dom(m)]);
            fib.cod.push(position[gc.cod(m)]);
        }
        (out, pos)
    };
    let (h, hpos) = fibers(&|m| g.is_h(m));
    let (v, vpos) = fibers(&|m| g.is_v(m));
    let units = |pos: &[usize]| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); bc.num_objects()];
        for x in 0..gc.num_objects() {
            out[p.objects[x]].push(pos[gc.identity(x)]);
        }
        out
    };
    let composites = |marked: &dyn Fn(usize) -> bool, pos: &[usize]| {
        let mut out = Vec::new();
        for m2 in (0..gc.num_morphisms()).filter(|&m| marked(m)) {
            for m1 in (0..gc.num_morphisms()).filter(|&m| marked(m)) {
                if let Some(m21) = gc.compose(m2, m1) {
                    out.push(Composite {
                        g: p.morphisms[m2],
                        eg: pos[m2],
                        f: p.morphisms[m1],
                        ef: pos[m1],
                        result: pos[m21],
                    });
                }
            }
        }
        out.sort();
        out
    };
    let compose_h = composites(&|m| g.is_h(m), &hpos);
    let compose_v = composites(&|m| g.is_v(m), &vpos);
    let mut swap = Vec::new();
    for a in (0..gc.num_morphisms()).filter(|&m| g.is_h(m)) {
        for b in (0..gc.num_morphisms()).filter(|&m| g.is_v(m)) {
            if let Some(diag) = gc.compose(b, a) {
                let (vp, hp) = g.factor(diag);
                swap.push(Swap {
                    h: p.morphisms[a],
                    eh: hpos[a],
                    v: p.morphisms[b],
                    ev: vpos[b],
                    vp: vpos[vp],
                    hp: hpos[hp],
                });
            }
        }
    }
    swap.sort();
    Ok(BaseDistLaw {
        base: base.clone(),
        objects,
        h,
        v,
        unit_h: units(&hpos),
        unit_v: units(&vpos),
        compose_h,
        compose_v,
        swap,
    })
}

impl BaseDistLaw {
    /// The graded form of a plain distributive law, over the point.
    pub fn over_point(d: &DistLaw) -> BaseDistLaw {
        let point = crate::fincat::trivial_fs(&crate::fincat::fixtures::terminal(), crate::fincat::Direction::H);
        let fiber = |c: &FinCat| Fiber {
            elements: (0..c.num_morphisms()).map(|f| c.name(f).to_string()).collect(),
            dom: (0..c.num_morphisms()).map(|f| c.dom(f)).collect(),
            cod: (0..c.num_morphisms()).map(|f| c.cod(f)).collect(),
        };
        let composites = |c: &FinCat| {
            let mut out = Vec::new();
            for g in 0..c.num_morphisms() {
                for f in 0..c.num_morphisms() {
                    if let Some(gf) = c.compose(g, f) {
                        out.push(Composite { g: 0, eg: g, f: 0, ef: f, result: gf });
                    }
                }
            }
            out
        };
        let units = |c: &FinCat| vec![(0..c.num_objects()).map(|x| c.identity(x)).collect()];
        BaseDistLaw {
            base: point,
            objects: vec![d.objects().to_vec()],
            h: vec![fiber(&d.h)],
            v: vec![fiber(&d.v)],
            unit_h: units(&d.h),
            unit_v: units(&d.v),
            compose_h: composites(&d.h),
            compose_v: composites(&d.v),
            swap: d
                .gamma
                .iter()
                .map(|(&(eh, ev), &(vp, hp))| Swap { h: 0, eh, v: 0, ev, vp, hp })
                .collect(),
        }
    }
}

fn reconstruction(m: impl Into<String>) -> Error {
    Error::Reconstruction(m.into())
}

/// Glue the fibers of one class into a category over the base.
fn total_category(
    b: &BaseDistLaw,
    fibers: &[Fiber],
    units: &[Vec<usize>],
    composites: &[Composite],
    marked: &dyn Fn(usize) -> bool,
    class: char,
) -> Result<(FinCat, Vec<(usize, usize)>)> {
    let bc = b.base.cat();
    let offsets: Vec<usize> = b.objects.iter().scan(0, |acc, f| {
        let o = *acc;
        *acc += f.len();
        Some(o)
    }).collect();
    let objects: Vec<String> = b.objects.iter().flatten().cloned().collect();
    let mut keys = Vec::new();
    let mut morphisms = Vec::new();
    for (m, fib) in fibers.iter().enumerate() {
        if !fib.elements.is_empty() && !marked(m) {
            return Err(reconstruction(format!("{class}-fiber over {} which is not in {class}", bc.name(m))));
        }
        if fib.dom.len() != fib.elements.len() || fib.cod.len() != fib.elements.len() {
            return Err(reconstruction(format!("{class}-fiber over {} has legs of the wrong length", bc.name(m))));
        }
        for (e, name) in fib.elements.iter().enumerate() {
            let (x, y) = (bc.dom(m), bc.cod(m));
            if fib.dom[e] >= b.objects[x].len() || fib.cod[e] >= b.objects[y].len() {
                return Err(reconstruction(format!("{name} has an end outside its object fiber")));
            }
            keys.push((m, e));
            morphisms.push(Morphism { name: name.clone(), dom: offsets[x] + fib.dom[e], cod: offsets[y] + fib.cod[e] });
        }
    }
    let index: BTreeMap<(usize, usize), usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut table = vec![vec![None; keys.len()]; keys.len()];
    for c in composites {
        let (Some(&g), Some(&f)) = (index.get(&(c.g, c.eg)), index.get(&(c.f, c.ef))) else {
            return Err(reconstruction(format!("{class}-composite names an unknown element")));
        };
        let gf = bc
            .compose(c.g, c.f)
            .ok_or_else(|| reconstruction(format!("{class}-composite over a non-composable pair")))?;
        let &r = index
            .get(&(gf, c.result))
            .ok_or_else(|| reconstruction(format!("{class}-composite lands outside the fiber over {}", bc.name(gf))))?;
        if morphisms[f].cod != morphisms[g].dom {
            return Err(reconstruction(format!("{class}-composite of non-composable elements")));
        }
        table[g][f] = Some(r);
    }
    for g in 0..keys.len() {
        for f in 0..keys.len() {
            if morphisms[f].cod == morphisms[g].dom && table[g][f].is_none() {
                return Err(reconstruction(format!(
                    "no {class}-composite of {} after {}",
                    morphisms[g].name, morphisms[f].name
                )));
            }
        }
    }
    let cat = FinCat::new(objects, morphisms, table)
        .map_err(|e| reconstruction(format!("the {class}-fibers do not form a category: {e}")))?;
    if units.len() != b.objects.len() {
        return Err(reconstruction(format!("{class}-units have the wrong shape")));
    }
    for (x, u) in units.iter().enumerate() {
        let id = bc.identity(x);
        if u.len() != b.objects[x].len() {
            return Err(reconstruction(format!("{class}-units over {} have the wrong length", bc.object_name(x))));
        }
        for (k, &e) in u.iter().enumerate() {
            if index.get(&(id, e)) != Some(&cat.identity(offsets[x] + k)) {
                return Err(reconstruction(format!("{class}-unit of {} is not an identity", b.objects[x][k])));
            }
        }
    }
    Ok((cat, keys))
}

/// Rebuild the total system and its projection to the base.
pub fn functor_from_lax_data(b: &BaseDistLaw) -> Result<(FSCategory, FSFunctor)> {
    check_fs(&b.base).map_err(|e| reconstruction(format!("the base is not a factorization system: {e}")))?;
    let base = &b.base;
    let bc = base.cat();
    if b.objects.len() != bc.num_objects() || b.h.len() != bc.num_morphisms() || b.v.len() != bc.num_morphisms() {
        return Err(reconstruction("fibers do not match the base"));
    }
    let (hc, hkeys) = total_category(b, &b.h, &b.unit_h, &b.compose_h, &|m| base.is_h(m), 'H')?;
    let (vc, vkeys) = total_category(b, &b.v, &b.unit_v, &b.compose_v, &|m| base.is_v(m), 'V')?;
    let hindex: BTreeMap<(usize, usize), usize> = hkeys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let vindex: BTreeMap<(usize, usize), usize> = vkeys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut gamma = BTreeMap::new();
    for s in &b.swap {
        let (Some(&a), Some(&bb)) = (hindex.get(&(s.h, s.eh)), vindex.get(&(s.v, s.ev))) else {
            return Err(reconstruction("swap names an unknown element"));
        };
        let diag = bc.compose(s.v, s.h).ok_or_else(|| reconstruction("swap over a non-composable pair"))?;
        let (vt, ht) = base.factor(diag);
        let (Some(&vp), Some(&hp)) = (vindex.get(&(vt, s.vp)), hindex.get(&(ht, s.hp))) else {
            return Err(reconstruction(format!(
                "swap of ({}, {}) does not land over the base factorization",
                hc.name(a),
                vc.name(bb)
            )));
        };
        if gamma.insert((a, bb), (vp, hp)).is_some() {
            return Err(reconstruction(format!("swap of ({}, {}) listed twice", hc.name(a), vc.name(bb))));
        }
    }
    let object_base: Vec<usize> = b.objects.iter().enumerate().flat_map(|(x, f)| std::iter::repeat(x).take(f.len())).collect();
    let d = DistLaw::new(hc, vc, gamma)?;
    check_beck(&d).map_err(|v| reconstruction(format!("Beck condition fails: {v}")))?;
    let g = fs_from_distlaw(&d).map_err(|e| reconstruction(e.to_string()))?;
    // Pair (v, h) of fs_from_distlaw, enumerated in the same order.
    let pairs: Vec<(usize, usize)> = (0..d.v.num_morphisms())
        .flat_map(|bb| (0..d.h.num_morphisms()).map(move |a| (bb, a)))
        .filter(|&(bb, a)| d.v.cod(bb) == d.h.dom(a))
        .collect();
    let p = FSFunctor {
        objects: object_base,
        morphisms: pairs.iter().map(|&(bb, a)| bc.compose(hkeys[a].0, vkeys[bb].0).unwrap()).collect(),
    };
    check_fs_functor(&g, base, &p).map_err(|e| reconstruction(format!("the projection is not a functor: {e}")))?;
    Ok((g, p))
}
