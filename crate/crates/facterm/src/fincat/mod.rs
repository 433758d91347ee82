//! Finite categories given by explicit composition tables, and factorization
//! systems on them.

mod completion;
pub mod fixtures;
mod fs;
mod search;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use completion::{complete, core_groupoid, is_complete};
pub use fixtures::{product_fs, sq_as_fscat, trivial_fs, Direction};
pub use fs::{check_fs, check_fs_functor, factorize_morphism, FSCategory, FSFunctor, FsViolation};
pub use search::{enumerate_fs_functors, find_isomorphism, FunctorSearch};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// Composition is a dense table: `table[g][f]` is `g ∘ f` when defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<usize>>,
    table: Vec<Vec<Option<usize>>>,
}

/// The first thing wrong with a composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CategoryReport {
    MissingIdentity { object: String },
    Composition { g: String, f: String, detail: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for CategoryReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryReport::MissingIdentity { object } => write!(out, "object {object} has no identity"),
            CategoryReport::Composition { g, f, detail } => write!(out, "{g} ∘ {f}: {detail}"),
            CategoryReport::Associativity { h, g, f } => {
                write!(out, "({h} ∘ {g}) ∘ {f} differs from {h} ∘ ({g} ∘ {f})")
            }
        }
    }
}

impl From<CategoryReport> for Error {
    fn from(r: CategoryReport) -> Self {
        Error::Category(r.to_string())
    }
}

impl FinCat {
    /// Assemble a table, checking only that indices are in range and names
    /// are unique. Identities are detected as neutral endomorphisms.
    pub fn from_parts(objects: Vec<String>, morphisms: Vec<Morphism>, table: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let (no, nm) = (objects.len(), morphisms.len());
        let mut seen = std::collections::HashSet::new();
        if let Some(o) = objects.iter().find(|o| !seen.insert(o.as_str())) {
            return Err(Error::Parse(format!("object {o:?} listed twice")));
        }
        seen.clear();
        if let Some(f) = morphisms.iter().find(|f| !seen.insert(f.name.as_str())) {
            return Err(Error::Parse(format!("morphism {:?} listed twice", f.name)));
        }
        if let Some(f) = morphisms.iter().find(|f| f.dom >= no || f.cod >= no) {
            return Err(Error::Parse(format!("morphism {:?} has an unknown end", f.name)));
        }
        if table.len() != nm || table.iter().any(|row| row.len() != nm) {
            return Err(Error::Parse(format!("composition table must be {nm} by {nm}")));
        }
        if table.iter().flatten().flatten().any(|&k| k >= nm) {
            return Err(Error::Parse("composition table names an unknown morphism".into()));
        }
        let mut c = FinCat { objects, morphisms, identities: vec![None; no], table };
        c.identities = (0..no).map(|x| c.find_identity(x)).collect();
        Ok(c)
    }

    fn find_identity(&self, x: usize) -> Option<usize> {
        let nm = self.morphisms.len();
        (0..nm).find(|&e| {
            let m = &self.morphisms[e];
            m.dom == x
                && m.cod == x
                && (0..nm).all(|f| self.morphisms[f].cod != x || self.table[e][f] == Some(f))
                && (0..nm).all(|g| self.morphisms[g].dom != x || self.table[g][e] == Some(g))
        })
    }

    /// Assemble and validate.
    pub fn new(objects: Vec<String>, morphisms: Vec<Morphism>, table: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let c = FinCat::from_parts(objects, morphisms, table)?;
        validate_category(&c)?;
        Ok(c)
    }

    /// Build a category from structured morphism keys and a composition law
    /// on them. The caller guarantees the law is a category.
    pub fn generated<K: Ord + Clone>(
        objects: Vec<String>,
        keys: Vec<K>,
        name: impl Fn(&K) -> String,
        dom: impl Fn(&K) -> usize,
        cod: impl Fn(&K) -> usize,
        compose: impl Fn(&K, &K) -> K,
    ) -> FinCat {
        let index: BTreeMap<K, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let morphisms: Vec<Morphism> = keys
            .iter()
            .map(|k| Morphism { name: name(k), dom: dom(k), cod: cod(k) })
            .collect();
        let table = keys
            .iter()
            .map(|g| {
                keys.iter()
                    .map(|f| (cod(f) == dom(g)).then(|| index[&compose(g, f)]))
                    .collect()
            })
            .collect();
        FinCat::from_parts(objects, morphisms, table).expect("generated categories are well formed")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    /// Identity of `x`; only meaningful on validated categories.
    pub fn identity(&self, x: usize) -> usize {
        self.identities[x].expect("validated categories have identities")
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.dom(f)] == Some(f)
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g][f]
    }

    pub fn table(&self) -> &[Vec<Option<usize>>] {
        &self.table
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.dom(f) == x && self.cod(f) == y).collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.dom(f), self.cod(f));
        self.hom(y, x).into_iter().find(|&g| {
            self.compose(g, f) == Some(self.identity(x)) && self.compose(f, g) == Some(self.identity(y))
        })
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|f| f.name == name)
    }

    /// The wide subcategory on the kept morphisms (which must contain the
    /// identities and be closed under composition).
    pub fn subcategory(&self, keep: &[bool]) -> (FinCat, Vec<usize>) {
        let old: Vec<usize> = (0..self.morphisms.len()).filter(|&f| keep[f]).collect();
        let new_of: HashMap<usize, usize> = old.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let morphisms = old.iter().map(|&f| self.morphisms[f].clone()).collect();
        let table = old
            .iter()
            .map(|&g| {
                old.iter()
                    .map(|&f| self.table[g][f].map(|k| new_of[&k]))
                    .collect()
            })
            .collect();
        let c = FinCat::from_parts(self.objects.clone(), morphisms, table).expect("subcategory of a category");
        (c, old)
    }
}

pub fn validate_category(c: &FinCat) -> std::result::Result<(), CategoryReport> {
    let nm = c.morphisms.len();
    for (x, id) in c.identities.iter().enumerate() {
        if id.is_none() {
            return Err(CategoryReport::MissingIdentity { object: c.objects[x].clone() });
        }
    }
    for g in 0..nm {
        for f in 0..nm {
            let composable = c.cod(f) == c.dom(g);
            let report = |detail: &str| CategoryReport::Composition {
                g: c.name(g).to_string(),
                f: c.name(f).to_string(),
                detail: detail.to_string(),
            };
            match (composable, c.table[g][f]) {
                (true, None) => return Err(report("composable but undefined")),
                (false, Some(_)) => return Err(report("defined on a non-composable pair")),
                (true, Some(k)) if c.dom(k) != c.dom(f) || c.cod(k) != c.cod(g) => {
                    return Err(report("composite has the wrong ends"))
                }
                _ => {}
            }
        }
    }
    for f in 0..nm {
        for g in (0..nm).filter(|&g| c.dom(g) == c.cod(f)) {
            let gf = c.table[g][f].unwrap();
            for h in (0..nm).filter(|&h| c.dom(h) == c.cod(g)) {
                let hg = c.table[h][g].unwrap();
                if c.table[hg][f] != c.table[h][gf] {
                    return Err(CategoryReport::Associativity {
                        h: c.name(h).to_string(),
                        g: c.name(g).to_string(),
                        f: c.name(f).to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct MorphismJson {
    pub id: String,
    pub dom: String,
    pub cod: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct FinCatJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub compose: Vec<Vec<Option<String>>>,
}

impl FinCatJson {
    pub(crate) fn from_cat(c: &FinCat, flags: Option<(&[bool], &[bool])>) -> Self {
        FinCatJson {
            objects: c.objects.clone(),
            morphisms: c
                .morphisms
                .iter()
                .enumerate()
                .map(|(i, f)| MorphismJson {
                    id: f.name.clone(),
                    dom: c.objects[f.dom].clone(),
                    cod: c.objects[f.cod].clone(),
                    h: flags.map(|(h, _)| h[i]),
                    v: flags.map(|(_, v)| v[i]),
                })
                .collect(),
            compose: c
                .table
                .iter()
                .map(|row| row.iter().map(|k| k.map(|k| c.morphisms[k].name.clone())).collect())
                .collect(),
        }
    }

    pub(crate) fn into_parts(self) -> Result<(FinCat, Vec<bool>, Vec<bool>)> {
        let obj: HashMap<&str, usize> = self.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let lookup = |o: &str| {
            obj.get(o)
                .copied()
                .ok_or_else(|| Error::Parse(format!("unknown object {o:?}")))
        };
        let mut morphisms = Vec::new();
        let (mut h, mut v) = (Vec::new(), Vec::new());
        for m in &self.morphisms {
            morphisms.push(Morphism { name: m.id.clone(), dom: lookup(&m.dom)?, cod: lookup(&m.cod)? });
            h.push(m.h.unwrap_or(false));
            v.push(m.v.unwrap_or(false));
        }
        let mor: HashMap<&str, usize> = self.morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();
        let table = self
            .compose
            .iter()
            .map(|row| {
                row.iter()
                    .map(|k| match k {
                        None => Ok(None),
                        Some(k) => mor
                            .get(k.as_str())
                            .map(|&i| Some(i))
                            .ok_or_else(|| Error::Parse(format!("unknown morphism {k:?} in table"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let cat = FinCat::from_parts(self.objects.clone(), morphisms, table)?;
        Ok((cat, h, v))
    }
}

impl Serialize for FinCat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        FinCatJson::from_cat(self, None).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FinCat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = FinCatJson::deserialize(de)?;
        raw.into_parts().map(|(c, _, _)| c).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{arrow, cyclic_group};
    use super::*;

    #[test]
    fn group_table_is_a_category() {
        let z2 = cyclic_group(2);
        assert_eq!(validate_category(&z2), Ok(()));
        assert_eq!(z2.num_morphisms(), 2);
        assert_eq!(z2.inverse(1), Some(1));
    }

    #[test]
    fn broken_associativity_is_pinpointed() {
        // Two objects; a, b: 0 -> 1 and an endomorphism e of 1 with e∘a = b,
        // e∘b = a, e∘e = e. Then (e∘e)∘a = e∘a = b but also e∘(e∘a) = e∘b = a.
        let objects = vec!["0".to_string(), "1".to_string()];
        let mk = |n: &str, d, c| Morphism { name: n.into(), dom: d, cod: c };
        let morphisms = vec![mk("i0", 0, 0), mk("i1", 1, 1), mk("a", 0, 1), mk("b", 0, 1), mk("e", 1, 1)];
        let mut table = vec![vec![None; 5]; 5];
        table[0][0] = Some(0);
        for f in [1, 2, 3, 4] {
            table[1][f] = Some(f);
        }
        table[2][0] = Some(2);
        table[3][0] = Some(3);
        table[4][1] = Some(4);
        table[4][2] = Some(3);
        table[4][3] = Some(2);
        table[4][4] = Some(4);
        let c = FinCat::from_parts(objects, morphisms, table).unwrap();
        assert_eq!(
            validate_category(&c),
            Err(CategoryReport::Associativity { h: "e".into(), g: "e".into(), f: "a".into() })
        );
    }

    #[test]
    fn missing_identity_and_bad_shape() {
        let c = FinCat::from_parts(
            vec!["x".into()],
            vec![Morphism { name: "f".into(), dom: 0, cod: 0 }],
            vec![vec![None]],
        )
        .unwrap();
        assert_eq!(validate_category(&c), Err(CategoryReport::MissingIdentity { object: "x".into() }));
        assert!(FinCat::from_parts(vec!["x".into()], vec![], vec![vec![None]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = arrow(2);
        let text = serde_json::to_string(&c).unwrap();
        let back: FinCat = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<FinCat>(r#"{"objects":["a"],"morphisms":[],"compose":[[null]]}"#).is_err());
    }
}
