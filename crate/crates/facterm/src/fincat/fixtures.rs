//! Small categories and factorization systems used throughout the tests.
//! Identities carry the name of their object.

use serde::{Deserialize, Serialize};

use crate::fincat::{FSCategory, FinCat};
use crate::fstring::{FString, GridPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    H,
    V,
}

fn poset(objects: Vec<String>, le: impl Fn(usize, usize) -> bool) -> FinCat {
    let n = objects.len();
    let keys: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| le(x, y))
        .collect();
    let names = objects.clone();
    FinCat::generated(
        objects,
        keys,
        |&(x, y)| if x == y { names[x].clone() } else { format!("{}->{}", names[x], names[y]) },
        |&(x, _)| x,
        |&(_, y)| y,
        |&(_, z), &(x, _)| (x, z),
    )
}

/// The ordinal `[n] = {0 < 1 < ... < n}`.
pub fn arrow(n: usize) -> FinCat {
    poset((0..=n).map(|i| i.to_string()).collect(), |x, y| x <= y)
}

/// The chaotic category on `n+1` objects: exactly one morphism between any
/// two objects.
pub fn chaotic(n: usize) -> FinCat {
    poset((0..=n).map(|i| i.to_string()).collect(), |_, _| true)
}

pub fn terminal() -> FinCat {
    poset(vec!["*".to_string()], |_, _| true)
}

/// The cyclic group of order `k` as a one-object category.
pub fn cyclic_group(k: usize) -> FinCat {
    FinCat::generated(
        vec!["*".to_string()],
        (0..k).collect(),
        |g| g.to_string(),
        |_| 0,
        |_| 0,
        |g, f| (g + f) % k,
    )
}

/// Points on or above the path, ordered as in the plane; horizontal
/// morphisms keep `y`, vertical ones keep `x`.
pub fn sq_as_fscat(s: &FString) -> FSCategory {
    let pts = s.region();
    let names: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
    let cat = poset(names, |a, b| pts[a].le(pts[b]));
    let ends = |f: usize| (pts[cat.dom(f)], pts[cat.cod(f)]);
    let h = (0..cat.num_morphisms()).map(|f| ends(f).0.y == ends(f).1.y).collect();
    let v = (0..cat.num_morphisms()).map(|f| ends(f).0.x == ends(f).1.x).collect();
    FSCategory::new_unchecked(cat, h, v)
}

/// Index of a grid point among the objects of [`sq_as_fscat`].
pub fn sq_object(s: &FString, p: GridPoint) -> Option<usize> {
    s.region().iter().position(|&q| q == p)
}

pub fn product_cat(c: &FinCat, d: &FinCat) -> FinCat {
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let objects = (0..nc)
        .flat_map(|x| (0..nd).map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", c.object_name(x), d.object_name(y)))
        .collect();
    let keys: Vec<(usize, usize)> = (0..c.num_morphisms())
        .flat_map(|f| (0..d.num_morphisms()).map(move |g| (f, g)))
        .collect();
    FinCat::generated(
        objects,
        keys,
        |&(f, g)| format!("({},{})", c.name(f), d.name(g)),
        |&(f, g)| c.dom(f) * nd + d.dom(g),
        |&(f, g)| c.cod(f) * nd + d.cod(g),
        |&(f2, g2), &(f1, g1)| (c.compose(f2, f1).unwrap(), d.compose(g2, g1).unwrap()),
    )
}

/// `C × D` with `H = C × identities` and `V = identities × D`.
pub fn product_fs(c: &FinCat, d: &FinCat) -> FSCategory {
    let p = product_cat(c, d);
    let nd = d.num_morphisms();
    let h = (0..p.num_morphisms()).map(|k| d.is_identity(k % nd)).collect();
    let v = (0..p.num_morphisms()).map(|k| c.is_identity(k / nd)).collect();
    FSCategory::new_unchecked(p, h, v)
}

/// Everything in one class, identities only in the other.
pub fn trivial_fs(c: &FinCat, direction: Direction) -> FSCategory {
    let all = vec![true; c.num_morphisms()];
    let ids = (0..c.num_morphisms()).map(|f| c.is_identity(f)).collect();
    match direction {
        Direction::H => FSCategory::new_unchecked(c.clone(), all, ids),
        Direction::V => FSCategory::new_unchecked(c.clone(), ids, all),
    }
}

/// Named factorization systems with at most four objects and fourteen
/// morphisms.
pub fn fixture_pool() -> Vec<(String, FSCategory)> {
    let mut pool = Vec::new();
    for s in FString::all_up_to(3) {
        let f = sq_as_fscat(&s);
        if f.num_objects() <= 4 && f.num_morphisms() <= 14 {
            pool.push((format!("sq{s}"), f));
        }
    }
    pool.push(("[1]x[1]".into(), product_fs(&arrow(1), &arrow(1))));
    pool.push(("[1]xc1".into(), product_fs(&arrow(1), &chaotic(1))));
    pool.push(("c1x[1]".into(), product_fs(&chaotic(1), &arrow(1))));
    pool.push(("Z2xZ2".into(), product_fs(&cyclic_group(2), &cyclic_group(2))));
    pool.push(("Z2x[1]".into(), product_fs(&cyclic_group(2), &arrow(1))));
    pool.push(("c1x*".into(), product_fs(&chaotic(1), &terminal())));
    pool.push(("*".into(), trivial_fs(&terminal(), Direction::H)));
    for (name, c) in [
        ("c1", chaotic(1)),
        ("c2", chaotic(2)),
        ("[1]", arrow(1)),
        ("[2]", arrow(2)),
        ("[3]", arrow(3)),
        ("Z2", cyclic_group(2)),
        ("Z3", cyclic_group(3)),
    ] {
        pool.push((format!("{name}/H"), trivial_fs(&c, Direction::H)));
        pool.push((format!("{name}/V"), trivial_fs(&c, Direction::V)));
    }
    pool
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{check_fs, validate_category};

    #[test]
    fn sizes() {
        let hv = sq_as_fscat(&"hv".parse().unwrap());
        assert_eq!((hv.num_objects(), hv.num_morphisms()), (4, 9));
        let vh = sq_as_fscat(&"vh".parse().unwrap());
        assert_eq!((vh.num_objects(), vh.num_morphisms()), (3, 6));
        let pt = sq_as_fscat(&FString::empty());
        assert_eq!((pt.num_objects(), pt.num_morphisms()), (1, 1));
        assert_eq!(chaotic(2).num_morphisms(), 9);
        assert_eq!(arrow(3).num_morphisms(), 10);
    }

    #[test]
    fn the_pool_is_valid_and_small() {
        let pool = fixture_pool();
        assert!(pool.len() > 20);
        for (name, f) in &pool {
            assert_eq!(validate_category(f.cat()), Ok(()), "{name}");
            assert_eq!(check_fs(f), Ok(()), "{name}");
            assert!(f.num_objects() <= 4 && f.num_morphisms() <= 14, "{name}");
        }
    }

    #[test]
    fn product_with_terminal_is_all_horizontal() {
        let f = product_fs(&arrow(2), &terminal());
        assert!((0..f.num_morphisms()).all(|k| f.is_h(k)));
        assert_eq!(check_fs(&product_fs(&chaotic(1), &chaotic(1))), Ok(()));
    }
}
