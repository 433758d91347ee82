//! The groupoid core of a factorization system and the collapse of it.

use crate::error::Result;
use crate::fincat::{FSCategory, FSFunctor, FinCat};

/// Invertible morphisms whose vertical and horizontal factors are invertible
/// inside their own classes.
pub fn core_groupoid(f: &FSCategory) -> FSCategory {
    let keep = core_flags(f);
    let (cat, old) = f.cat().subcategory(&keep);
    let h = old.iter().map(|&k| f.is_h(k)).collect();
    let v = old.iter().map(|&k| f.is_v(k)).collect();
    FSCategory::new_unchecked(cat, h, v)
}

fn core_flags(f: &FSCategory) -> Vec<bool> {
    let c = f.cat();
    let inverse_in = |m: usize, flags: &dyn Fn(usize) -> bool| c.inverse(m).is_some_and(flags);
    (0..c.num_morphisms())
        .map(|m| {
            let (v, h) = f.factor(m);
            c.inverse(m).is_some() && inverse_in(v, &|k| f.is_v(k)) && inverse_in(h, &|k| f.is_h(k))
        })
        .collect()
}

/// No invertible square can be mapped in non-trivially.
pub fn is_complete(f: &FSCategory) -> bool {
    let c = f.cat();
    core_flags(f).iter().enumerate().all(|(m, &core)| !core || c.is_identity(m))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.0[hi] = lo;
        true
    }
}

/// Collapse the core: identify core-connected objects, every core morphism
/// with an identity, and close the identification under composition through
/// core connectors. Returns the quotient and the quotient functor.
pub fn complete(f: &FSCategory) -> Result<(FSCategory, FSFunctor)> {
    let c = f.cat();
    let (no, nm) = (c.num_objects(), c.num_morphisms());
    let core = core_flags(f);
    let mut objs = UnionFind::new(no);
    for m in (0..nm).filter(|&m| core[m]) {
        objs.union(c.dom(m), c.cod(m));
    }
    // connectors[x][y]: core morphisms x -> y.
    let mut connectors = vec![vec![Vec::new(); no]; no];
    for m in (0..nm).filter(|&m| core[m]) {
        connectors[c.dom(m)][c.cod(m)].push(m);
    }
    let through = |g: usize, k: usize, f1: usize| c.compose(g, c.compose(k, f1).unwrap()).unwrap();

    let mut mors = UnionFind::new(nm);
    for m in (0..nm).filter(|&m| core[m]) {
        mors.union(m, c.identity(c.dom(m)));
        mors.union(m, c.identity(c.cod(m)));
    }
    loop {
        let mut changed = false;
        for g in 0..nm {
            for f1 in 0..nm {
                let links = &connectors[c.cod(f1)][c.dom(g)];
                let Some(&first) = links.first() else { continue };
                let base = through(g, first, f1);
                for &k in &links[1..] {
                    changed |= mors.union(base, through(g, k, f1));
                }
                // Compatibility with the classes of both factors.
                for g2 in 0..nm {
                    if g2 != g && mors.find(g2) == mors.find(g) {
                        if let Some(&k) = connectors[c.cod(f1)][c.dom(g2)].first() {
                            changed |= mors.union(base, through(g2, k, f1));
                        }
                    }
                }
                for f2 in 0..nm {
                    if f2 != f1 && mors.find(f2) == mors.find(f1) {
                        if let Some(&k) = connectors[c.cod(f2)][c.dom(g)].first() {
                            changed |= mors.union(base, through(g, k, f2));
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let obj_rep: Vec<usize> = (0..no).map(|x| objs.find(x)).collect();
    let obj_classes: Vec<usize> = {
        let mut v: Vec<usize> = obj_rep.clone();
        v.sort();
        v.dedup();
        v
    };
    let obj_index = |x: usize| obj_classes.binary_search(&obj_rep[x]).unwrap();
    let mor_rep: Vec<usize> = (0..nm).map(|m| mors.find(m)).collect();
    let mor_classes: Vec<usize> = {
        let mut v = mor_rep.clone();
        v.sort();
        v.dedup();
        v
    };
    let mor_index = |m: usize| mor_classes.binary_search(&mor_rep[m]).unwrap();

    let objects = obj_classes.iter().map(|&x| c.object_name(x).to_string()).collect();
    let cat = FinCat::generated(
        objects,
        (0..mor_classes.len()).collect(),
        |&k| c.name(mor_classes[k]).to_string(),
        |&k| obj_index(c.dom(mor_classes[k])),
        |&k| obj_index(c.cod(mor_classes[k])),
        |&g, &f1| {
            let (g, f1) = (mor_classes[g], mor_classes[f1]);
            let k = connectors[c.cod(f1)][c.dom(g)][0];
            mor_index(through(g, k, f1))
        },
    );
    let mut h = vec![false; mor_classes.len()];
    let mut v = vec![false; mor_classes.len()];
    for m in 0..nm {
        h[mor_index(m)] |= f.is_h(m);
        v[mor_index(m)] |= f.is_v(m);
    }
    let quotient = FSCategory::new(cat, h, v)?;
    let functor = FSFunctor {
        objects: (0..no).map(obj_index).collect(),
        morphisms: (0..nm).map(mor_index).collect(),
    };
    Ok((quotient, functor))
}
