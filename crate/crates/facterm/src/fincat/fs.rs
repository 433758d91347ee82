use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{validate_category, FinCat, FinCatJson};

/// A finite category with two marked wide subcategories `H` and `V` such
/// that every morphism is `h ∘ v` in exactly one way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSCategory {
    cat: FinCat,
    hflag: Vec<bool>,
    vflag: Vec<bool>,
    /// `(v, h)` for morphisms with exactly one factorization.
    factors: Vec<Option<(usize, usize)>>,
    counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FsViolation {
    Category { report: crate::fincat::CategoryReport },
    IdentityNotMarked { morphism: String, class: char },
    NotClosed { class: char, g: String, f: String },
    Factorizations { morphism: String, count: usize },
}

impl fmt::Display for FsViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FsViolation::Category { report } => write!(out, "{report}"),
            FsViolation::IdentityNotMarked { morphism, class } => write!(out, "identity {morphism} is not in {class}"),
            FsViolation::NotClosed { class, g, f } => write!(out, "{g} ∘ {f} leaves {class}"),
            FsViolation::Factorizations { morphism, count } => {
                write!(out, "{morphism} has {count} factorizations instead of one")
            }
        }
    }
}

impl From<FsViolation> for Error {
    fn from(v: FsViolation) -> Self {
        Error::Factorization(v.to_string())
    }
}

impl FSCategory {
    /// Attach flags without checking anything.
    pub fn new_unchecked(cat: FinCat, hflag: Vec<bool>, vflag: Vec<bool>) -> Self {
        let nm = cat.num_morphisms();
        assert!(hflag.len() == nm && vflag.len() == nm, "one flag per morphism");
        let mut counts = vec![0; nm];
        let mut factors = vec![None; nm];
        for v in (0..nm).filter(|&v| vflag[v]) {
            for h in (0..nm).filter(|&h| hflag[h] && cat.dom(h) == cat.cod(v)) {
                if let Some(f) = cat.compose(h, v) {
                    counts[f] += 1;
                    factors[f] = Some((v, h));
                }
            }
        }
        for f in 0..nm {
            if counts[f] != 1 {
                factors[f] = None;
            }
        }
        FSCategory { cat, hflag, vflag, factors, counts }
    }

    pub fn new(cat: FinCat, hflag: Vec<bool>, vflag: Vec<bool>) -> Result<Self> {
        let f = FSCategory::new_unchecked(cat, hflag, vflag);
        check_fs(&f)?;
        Ok(f)
    }

    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn is_h(&self, f: usize) -> bool {
        self.hflag[f]
    }

    pub fn is_v(&self, f: usize) -> bool {
        self.vflag[f]
    }

    pub fn hflags(&self) -> &[bool] {
        &self.hflag
    }

    pub fn vflags(&self) -> &[bool] {
        &self.vflag
    }

    /// `(v, h)` with `h ∘ v = f`, for categories that pass [`check_fs`].
    pub fn factor(&self, f: usize) -> (usize, usize) {
        self.factors[f].expect("unique factorization")
    }

    pub fn num_objects(&self) -> usize {
        self.cat.num_objects()
    }

    pub fn num_morphisms(&self) -> usize {
        self.cat.num_morphisms()
    }

    /// The marked subcategory `H` (or `V`) as a category in its own right,
    /// with the map from its morphisms back to ours.
    pub fn marked(&self, horizontal: bool) -> (FinCat, Vec<usize>) {
        self.cat.subcategory(if horizontal { &self.hflag } else { &self.vflag })
    }
}

pub fn check_fs(f: &FSCategory) -> std::result::Result<(), FsViolation> {
    let c = &f.cat;
    validate_category(c).map_err(|report| FsViolation::Category { report })?;
    for (class, flags) in [('H', &f.hflag), ('V', &f.vflag)] {
        for x in 0..c.num_objects() {
            let id = c.identity(x);
            if !flags[id] {
                return Err(FsViolation::IdentityNotMarked { morphism: c.name(id).to_string(), class });
            }
        }
        for g in (0..c.num_morphisms()).filter(|&g| flags[g]) {
            for k in (0..c.num_morphisms()).filter(|&k| flags[k]) {
                if let Some(gk) = c.compose(g, k) {
                    if !flags[gk] {
                        return Err(FsViolation::NotClosed {
                            class,
                            g: c.name(g).to_string(),
                            f: c.name(k).to_string(),
                        });
                    }
                }
            }
        }
    }
    for m in 0..c.num_morphisms() {
        if f.counts[m] != 1 {
            return Err(FsViolation::Factorizations { morphism: c.name(m).to_string(), count: f.counts[m] });
        }
    }
    Ok(())
}

pub fn factorize_morphism(f: &FSCategory, m: usize) -> Result<(usize, usize)> {
    if m >= f.num_morphisms() {
        return Err(Error::Domain(format!("no morphism with index {m}")));
    }
    f.factors[m].ok_or_else(|| {
        Error::Factorization(format!("{} has {} factorizations", f.cat.name(m), f.counts[m]))
    })
}

impl Serialize for FSCategory {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        FinCatJson::from_cat(&self.cat, Some((&self.hflag, &self.vflag))).serialize(ser)
    }
}

/// Reads the table and flags without validating; see [`check_fs`].
impl<'de> Deserialize<'de> for FSCategory {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = FinCatJson::deserialize(de)?;
        let (c, h, v) = raw.into_parts().map_err(serde::de::Error::custom)?;
        Ok(FSCategory::new_unchecked(c, h, v))
    }
}

/// Object and morphism maps, by index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FSFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl FSFunctor {
    pub fn identity(f: &FSCategory) -> Self {
        FSFunctor { objects: (0..f.num_objects()).collect(), morphisms: (0..f.num_morphisms()).collect() }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FSFunctor) -> FSFunctor {
        FSFunctor {
            objects: first.objects.iter().map(|&x| self.objects[x]).collect(),
            morphisms: first.morphisms.iter().map(|&f| self.morphisms[f]).collect(),
        }
    }

    pub fn is_constant(&self, tgt: &FSCategory) -> bool {
        self.morphisms.iter().all(|&f| tgt.cat().is_identity(f))
            && self.objects.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn check_fs_functor(src: &FSCategory, tgt: &FSCategory, p: &FSFunctor) -> Result<()> {
    let (c, d) = (src.cat(), tgt.cat());
    let fail = |m: String| Err(Error::Functor(m));
    if p.objects.len() != c.num_objects() || p.morphisms.len() != c.num_morphisms() {
        return fail("maps have the wrong size".into());
    }
    if p.objects.iter().any(|&x| x >= d.num_objects()) || p.morphisms.iter().any(|&f| f >= d.num_morphisms()) {
        return fail("maps leave the target".into());
    }
    for f in 0..c.num_morphisms() {
        let pf = p.morphisms[f];
        if d.dom(pf) != p.objects[c.dom(f)] || d.cod(pf) != p.objects[c.cod(f)] {
            return fail(format!("{} is sent to {} with the wrong ends", c.name(f), d.name(pf)));
        }
        if (src.is_h(f) && !tgt.is_h(pf)) || (src.is_v(f) && !tgt.is_v(pf)) {
            return fail(format!("{} is sent to {} outside its class", c.name(f), d.name(pf)));
        }
    }
    for x in 0..c.num_objects() {
        if p.morphisms[c.identity(x)] != d.identity(p.objects[x]) {
            return fail(format!("identity of {} is not preserved", c.object_name(x)));
        }
    }
    for g in 0..c.num_morphisms() {
        for f in 0..c.num_morphisms() {
            if let Some(gf) = c.compose(g, f) {
                if d.compose(p.morphisms[g], p.morphisms[f]) != Some(p.morphisms[gf]) {
                    return fail(format!("composite {} ∘ {} is not preserved", c.name(g), c.name(f)));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::{arrow, chaotic, product_fs, sq_as_fscat, trivial_fs, Direction};
    use crate::fstring::FString;

    #[test]
    fn grid_regions_have_unique_factorization() {
        for s in FString::all_up_to(5) {
            assert_eq!(check_fs(&sq_as_fscat(&s)), Ok(()), "{s}");
        }
    }

    #[test]
    fn everything_in_both_classes_fails() {
        let c = arrow(1);
        let all = vec![true; c.num_morphisms()];
        let f = FSCategory::new_unchecked(c, all.clone(), all);
        match check_fs(&f) {
            Err(FsViolation::Factorizations { morphism, count }) => {
                assert_eq!(morphism, "0->1");
                assert_eq!(count, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn factorizations_in_products() {
        let sq = product_fs(&arrow(1), &arrow(1));
        let c = sq.cat();
        let diag = c.morphism_index("(0->1,0->1)").unwrap();
        let (v, h) = factorize_morphism(&sq, diag).unwrap();
        assert_eq!(c.name(v), "(0,0->1)");
        assert_eq!(c.name(h), "(0->1,1)");
        let id = c.identity(0);
        assert_eq!(factorize_morphism(&sq, id).unwrap(), (id, id));
        let (v, _) = factorize_morphism(&sq, h).unwrap();
        assert!(c.is_identity(v));
    }

    #[test]
    fn chaotic_with_everything_horizontal() {
        assert_eq!(check_fs(&trivial_fs(&chaotic(1), Direction::H)), Ok(()));
    }

    #[test]
    fn json_round_trip() {
        let f = sq_as_fscat(&"hv".parse().unwrap());
        let text = serde_json::to_string(&f).unwrap();
        let back: FSCategory = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }
}
