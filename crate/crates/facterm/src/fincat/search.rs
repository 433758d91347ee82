//! Backtracking search for factorization-preserving functors.
//!
//! Objects are assigned first, then the non-identity marked morphisms (which
//! generate everything through the unique factorization); the remaining
//! morphisms are forced and the result is checked in full.

use crate::fincat::{check_fs_functor, FSCategory, FSFunctor};

pub struct FunctorSearch<'a> {
    src: &'a FSCategory,
    tgt: &'a FSCategory,
    bijective: bool,
    limit: Option<usize>,
    object_ok: Option<Box<dyn Fn(usize, usize) -> bool + 'a>>,
    morphism_ok: Option<Box<dyn Fn(usize, usize) -> bool + 'a>>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(src: &'a FSCategory, tgt: &'a FSCategory) -> Self {
        FunctorSearch { src, tgt, bijective: false, limit: None, object_ok: None, morphism_ok: None }
    }

    pub fn bijective(mut self) -> Self {
        self.bijective = true;
        self
    }

    pub fn limit(mut self, n: usize) -> Self {
        self.limit = Some(n);
        self
    }

    pub fn objects_where(mut self, ok: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.object_ok = Some(Box::new(ok));
        self
    }

    pub fn morphisms_where(mut self, ok: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.morphism_ok = Some(Box::new(ok));
        self
    }

    pub fn run(&self) -> Vec<FSFunctor> {
        let (c, d) = (self.src.cat(), self.tgt.cat());
        if self.bijective
            && (c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms())
        {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut objects = Vec::with_capacity(c.num_objects());
        self.assign_objects(&mut objects, &mut out);
        out.sort();
        out
    }

    fn full(&self, out: &[FSFunctor]) -> bool {
        self.limit.is_some_and(|l| out.len() >= l)
    }

    fn assign_objects(&self, objects: &mut Vec<usize>, out: &mut Vec<FSFunctor>) {
        let (c, d) = (self.src.cat(), self.tgt.cat());
        if self.full(out) {
            return;
        }
        if objects.len() == c.num_objects() {
            self.assign_generators(objects, out);
            return;
        }
        let x = objects.len();
        for y in 0..d.num_objects() {
            if self.bijective && objects.contains(&y) {
                continue;
            }
            if self.object_ok.as_ref().is_some_and(|ok| !ok(x, y)) {
                continue;
            }
            objects.push(y);
            self.assign_objects(objects, out);
            objects.pop();
        }
    }

    fn assign_generators(&self, objects: &[usize], out: &mut Vec<FSFunctor>) {
        let (c, d) = (self.src.cat(), self.tgt.cat());
        let nm = c.num_morphisms();
        let mut image: Vec<Option<usize>> = vec![None; nm];
        for x in 0..c.num_objects() {
            image[c.identity(x)] = Some(d.identity(objects[x]));
        }
        let gens: Vec<usize> = (0..nm)
            .filter(|&f| !c.is_identity(f) && (self.src.is_h(f) || self.src.is_v(f)))
            .collect();
        // For each generator, the composites inside its class that become
        // checkable once it is assigned.
        let mut position = vec![usize::MAX; nm];
        for (k, &g) in gens.iter().enumerate() {
            position[g] = k;
        }
        let rank = |f: usize| if c.is_identity(f) { 0 } else { position[f] + 1 };
        let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); gens.len()];
        for g in 0..nm {
            for f in 0..nm {
                let Some(gf) = c.compose(g, f) else { continue };
                let same_class = (self.src.is_h(g) && self.src.is_h(f)) || (self.src.is_v(g) && self.src.is_v(f));
                if !same_class {
                    continue;
                }
                let last = rank(g).max(rank(f)).max(rank(gf));
                if last > 0 {
                    checks[last - 1].push((g, f, gf));
                }
            }
        }
        self.assign_next(0, &gens, &checks, objects, &mut image, out);
    }

    fn assign_next(
        &self,
        k: usize,
        gens: &[usize],
        checks: &[Vec<(usize, usize, usize)>],
        objects: &[usize],
        image: &mut Vec<Option<usize>>,
        out: &mut Vec<FSFunctor>,
    ) {
        let (c, d) = (self.src.cat(), self.tgt.cat());
        if self.full(out) {
            return;
        }
        if k == gens.len() {
            self.finish(objects, image, out);
            return;
        }
        let f = gens[k];
        let (x, y) = (objects[c.dom(f)], objects[c.cod(f)]);
        for t in d.hom(x, y) {
            if (self.src.is_h(f) && !self.tgt.is_h(t)) || (self.src.is_v(f) && !self.tgt.is_v(t)) {
                continue;
            }
            if self.morphism_ok.as_ref().is_some_and(|ok| !ok(f, t)) {
                continue;
            }
            image[f] = Some(t);
            let consistent = checks[k].iter().all(|&(g, h, gh)| {
                d.compose(image[g].unwrap(), image[h].unwrap()) == image[gh]
            });
            if consistent {
                self.assign_next(k + 1, gens, checks, objects, image, out);
            }
            image[f] = None;
        }
    }

    fn finish(&self, objects: &[usize], image: &[Option<usize>], out: &mut Vec<FSFunctor>) {
        let (c, d) = (self.src.cat(), self.tgt.cat());
        let mut morphisms = Vec::with_capacity(c.num_morphisms());
        for f in 0..c.num_morphisms() {
            let t = match image[f] {
                Some(t) => t,
                None => {
                    let (v, h) = self.src.factor(f);
                    match d.compose(image[h].unwrap(), image[v].unwrap()) {
                        Some(t) => t,
                        None => return,
                    }
                }
            };
            if self.morphism_ok.as_ref().is_some_and(|ok| !ok(f, t)) {
                return;
            }
            morphisms.push(t);
        }
        if self.bijective {
            let mut seen = vec![false; d.num_morphisms()];
            for &t in &morphisms {
                if std::mem::replace(&mut seen[t], true) {
                    return;
                }
            }
        }
        let p = FSFunctor { objects: objects.to_vec(), morphisms };
        if check_fs_functor(self.src, self.tgt, &p).is_ok() {
            if self.bijective {
                // The inverse must also keep the classes.
                let back_ok = (0..c.num_morphisms()).all(|f| {
                    self.src.is_h(f) == self.tgt.is_h(p.morphisms[f])
                        && self.src.is_v(f) == self.tgt.is_v(p.morphisms[f])
                });
                if !back_ok {
                    return;
                }
            }
            out.push(p);
        }
    }
}

pub fn enumerate_fs_functors(src: &FSCategory, tgt: &FSCategory) -> Vec<FSFunctor> {
    FunctorSearch::new(src, tgt).run()
}

/// An isomorphism of factorization systems, if there is one.
pub fn find_isomorphism(src: &FSCategory, tgt: &FSCategory) -> Option<FSFunctor> {
    FunctorSearch::new(src, tgt).bijective().limit(1).run().pop()
}
