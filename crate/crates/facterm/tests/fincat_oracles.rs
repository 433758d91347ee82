use facterm::fincat::fixtures::{chaotic, fixture_pool, product_fs, sq_as_fscat, terminal, trivial_fs, Direction};
use facterm::fincat::{
    check_fs, check_fs_functor, complete, core_groupoid, enumerate_fs_functors, factorize_morphism,
    find_isomorphism, is_complete, FSCategory, FSFunctor, FinCat,
};

fn tiny_pool(max_objects: usize, max_morphisms: usize) -> Vec<(String, FSCategory)> {
    fixture_pool()
        .into_iter()
        .filter(|(_, f)| f.num_objects() <= max_objects && f.num_morphisms() <= max_morphisms)
        .collect()
}

fn is_groupoid(c: &FinCat) -> bool {
    (0..c.num_morphisms()).all(|f| c.inverse(f).is_some())
}

#[test]
fn factorization_is_total_and_unique_on_the_pool() {
    for (name, f) in fixture_pool() {
        let c = f.cat();
        for m in 0..c.num_morphisms() {
            let pairs: Vec<(usize, usize)> = (0..c.num_morphisms())
                .flat_map(|v| (0..c.num_morphisms()).map(move |h| (v, h)))
                .filter(|&(v, h)| f.is_v(v) && f.is_h(h) && c.compose(h, v) == Some(m))
                .collect();
            assert_eq!(pairs.len(), 1, "{name}: {}", c.name(m));
            assert_eq!(factorize_morphism(&f, m).unwrap(), pairs[0], "{name}");
        }
    }
}

/// Every wide sub-factorization-system that is a groupoid sits inside the core.
#[test]
fn the_core_is_the_largest_groupoid() {
    for (name, f) in tiny_pool(3, 8) {
        let c = f.cat();
        let core = core_groupoid(&f);
        let in_core: Vec<bool> = (0..c.num_morphisms())
            .map(|m| core.cat().morphism_index(c.name(m)).is_some())
            .collect();
        assert!(is_groupoid(core.cat()), "{name}");
        assert_eq!(check_fs(&core), Ok(()), "{name}");

        let free: Vec<usize> = (0..c.num_morphisms()).filter(|&m| !c.is_identity(m)).collect();
        for mask in 0u32..(1 << free.len()) {
            let mut keep: Vec<bool> = (0..c.num_morphisms()).map(|m| c.is_identity(m)).collect();
            for (bit, &m) in free.iter().enumerate() {
                keep[m] = mask >> bit & 1 == 1;
            }
            let closed = (0..c.num_morphisms()).all(|g| {
                (0..c.num_morphisms()).all(|k| !(keep[g] && keep[k]) || c.compose(g, k).is_none_or(|gk| keep[gk]))
            });
            if !closed {
                continue;
            }
            let (sub, old) = c.subcategory(&keep);
            let h = old.iter().map(|&m| f.is_h(m)).collect();
            let v = old.iter().map(|&m| f.is_v(m)).collect();
            let sub = FSCategory::new_unchecked(sub, h, v);
            if check_fs(&sub).is_ok() && is_groupoid(sub.cat()) {
                assert!(old.iter().all(|&m| in_core[m]), "{name}: mask {mask:b} escapes the core");
            }
        }
    }
}

#[test]
fn completeness_means_invertible_squares_are_constant() {
    let square = product_fs(&chaotic(1), &chaotic(1));
    for (name, f) in tiny_pool(4, 14) {
        let all_constant = enumerate_fs_functors(&square, &f).iter().all(|p| p.is_constant(&f));
        assert_eq!(is_complete(&f), all_constant, "{name}");
    }
}

#[test]
fn completion_is_complete_idempotent_and_functorial() {
    for (name, f) in fixture_pool() {
        let (q, p) = complete(&f).unwrap();
        assert_eq!(check_fs(&q), Ok(()), "{name}");
        assert!(is_complete(&q), "{name}");
        assert_eq!(check_fs_functor(&f, &q, &p), Ok(()), "{name}");
        let (qq, pp) = complete(&q).unwrap();
        assert_eq!(pp, FSFunctor::identity(&q), "{name}");
        assert!(find_isomorphism(&q, &qq).is_some(), "{name}");
        if is_complete(&f) {
            assert_eq!(p, FSFunctor::identity(&f), "{name}");
        }
    }
}

#[test]
fn completion_examples() {
    let point = trivial_fs(&terminal(), Direction::H);
    for f in [trivial_fs(&chaotic(1), Direction::H), trivial_fs(&chaotic(2), Direction::V), product_fs(&chaotic(1), &chaotic(1))] {
        let (q, _) = complete(&f).unwrap();
        assert!(find_isomorphism(&q, &point).is_some());
    }
    let (q, _) = complete(&product_fs(&chaotic(1), &facterm::fincat::fixtures::arrow(1))).unwrap();
    assert!(find_isomorphism(&q, &trivial_fs(&facterm::fincat::fixtures::arrow(1), Direction::V)).is_some());
}

/// Precomposition with the quotient map is a bijection onto functors into
/// complete targets.
#[test]
fn completion_universal_property() {
    let targets: Vec<(String, FSCategory)> = fixture_pool().into_iter().filter(|(_, g)| is_complete(g)).collect();
    assert!(targets.len() > 5);
    for (name, f) in tiny_pool(4, 9) {
        let (q, p) = complete(&f).unwrap();
        for (gname, g) in &targets {
            let from_q = enumerate_fs_functors(&q, g);
            let mut pulled: Vec<FSFunctor> = from_q.iter().map(|r| r.after(&p)).collect();
            pulled.sort();
            let before = pulled.len();
            pulled.dedup();
            assert_eq!(pulled.len(), before, "{name} -> {gname}: not injective");
            assert_eq!(pulled, enumerate_fs_functors(&f, g), "{name} -> {gname}");
        }
    }
}

/// Every composable `h ∘ v` extends uniquely to an invertible square exactly
/// when the underlying category is a groupoid.
#[test]
fn groupoid_criterion() {
    let corner = sq_as_fscat(&"vh".parse().unwrap());
    let square = product_fs(&chaotic(1), &chaotic(1));
    let (sc, qc) = (corner.cat(), square.cat());
    // (x, y) in the corner goes to the object (x, y) of c1 × c1.
    let object_of = |k: usize| {
        let name = sc.object_name(k).trim_matches(|c| c == '(' || c == ')').to_string();
        qc.object_index(&format!("({name})")).unwrap()
    };
    let mut i = FSFunctor { objects: (0..sc.num_objects()).map(object_of).collect(), morphisms: Vec::new() };
    i.morphisms = (0..sc.num_morphisms())
        .map(|m| qc.hom(i.objects[sc.dom(m)], i.objects[sc.cod(m)])[0])
        .collect();
    assert_eq!(check_fs_functor(&corner, &square, &i), Ok(()));

    let mut seen = [false; 2];
    for (name, f) in tiny_pool(4, 14) {
        let extensions: Vec<FSFunctor> = enumerate_fs_functors(&square, &f);
        let unique = enumerate_fs_functors(&corner, &f)
            .iter()
            .all(|a| extensions.iter().filter(|b| b.after(&i) == *a).count() == 1);
        assert_eq!(unique, is_groupoid(f.cat()), "{name}");
        seen[unique as usize] = true;
    }
    assert_eq!(seen, [true, true]);
}
