use std::collections::BTreeMap;

use facterm::fincat::fixtures::fixture_pool;
use facterm::fincat::{enumerate_fs_functors, find_isomorphism, FSCategory, FSFunctor, FunctorSearch};
use facterm::spans::{
    check_beck, compose_spans, distlaw_from_fs, fiber_pairs, fs_from_distlaw, functor_from_lax_data,
    lax_data_from_functor, BaseDistLaw, Span,
};

fn spans(left: usize, right: usize, max_apex: usize) -> Vec<Span> {
    let mut out = Vec::new();
    for apex in 0..=max_apex {
        let legs = (left * right).pow(apex as u32);
        for code in 0..legs {
            let (mut l, mut r, mut c) = (Vec::new(), Vec::new(), code);
            for _ in 0..apex {
                l.push(c % (left * right) / right);
                r.push(c % right);
                c /= left * right;
            }
            out.push(Span::new(left, right, l, r).unwrap());
        }
    }
    out
}

#[test]
fn span_units() {
    for left in 1..=3 {
        for right in 1..=3 {
            for s in spans(left, right, 2) {
                assert!(compose_spans(&Span::identity(right), &s).unwrap().is_isomorphic(&s));
                assert!(compose_spans(&s, &Span::identity(left)).unwrap().is_isomorphic(&s));
            }
        }
    }
}

/// `((a1, a2), a3) -> (a1, (a2, a3))` is a bijection of apexes over the legs.
#[test]
fn span_associativity() {
    for sizes in 0..16u32 {
        let n: Vec<usize> = (0..4).map(|k| 1 + (sizes >> k & 1) as usize).collect();
        let (xs, ys, zs) = (spans(n[0], n[1], 2), spans(n[1], n[2], 2), spans(n[2], n[3], 2));
        for s1 in &xs {
            for s2 in &ys {
                let s21 = compose_spans(s2, s1).unwrap();
                let p21 = fiber_pairs(s2, s1).unwrap();
                for s3 in &zs {
                    let s32 = compose_spans(s3, s2).unwrap();
                    let p32 = fiber_pairs(s3, s2).unwrap();
                    let left = fiber_pairs(s3, &s21).unwrap();
                    let right = fiber_pairs(&s32, s1).unwrap();
                    let mut a: Vec<(usize, usize, usize)> =
                        left.iter().map(|&(k, a3)| (p21[k].0, p21[k].1, a3)).collect();
                    let mut b: Vec<(usize, usize, usize)> =
                        right.iter().map(|&(a1, k)| (a1, p32[k].0, p32[k].1)).collect();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b);
                    let l = compose_spans(s3, &s21).unwrap();
                    let r = compose_spans(&s32, s1).unwrap();
                    assert!(l.is_isomorphic(&r));
                }
            }
        }
    }
}

#[test]
fn laws_from_the_pool_round_trip() {
    for (name, f) in fixture_pool() {
        let d = distlaw_from_fs(&f).unwrap();
        assert_eq!(check_beck(&d), Ok(()), "{name}");
        let back = fs_from_distlaw(&d).unwrap();
        assert!(find_isomorphism(&back, &f).is_some(), "{name}");
        let again = distlaw_from_fs(&back).unwrap();
        assert_eq!(again.canonical_form(), d.canonical_form(), "{name}");
    }
}

/// Over the point, reconstruction succeeds exactly when the Beck
/// conditions hold, including after corrupting one swap.
#[test]
fn graded_validity_over_the_point_is_beck() {
    let mut seen = [0usize; 2];
    for (name, f) in fixture_pool().into_iter().filter(|(_, f)| f.num_morphisms() <= 9) {
        let d = distlaw_from_fs(&f).unwrap();
        let entries: Vec<((usize, usize), (usize, usize))> = (0..d.h().num_morphisms())
            .flat_map(|a| (0..d.v().num_morphisms()).map(move |b| (a, b)))
            .filter_map(|(a, b)| d.gamma(a, b).map(|out| ((a, b), out)))
            .collect();
        let mut variants = vec![d.clone()];
        for &((a, b), out) in &entries {
            for vp in (0..d.v().num_morphisms()).filter(|&vp| d.v().dom(vp) == d.h().dom(a)) {
                for hp in (0..d.h().num_morphisms()).filter(|&hp| d.h().dom(hp) == d.v().cod(vp)) {
                    if (vp, hp) != out && d.h().cod(hp) == d.v().cod(b) {
                        let mut e = d.clone();
                        e.set_gamma(a, b, (vp, hp));
                        variants.push(e);
                    }
                }
            }
        }
        for e in variants {
            let beck = check_beck(&e).is_ok();
            let graded = functor_from_lax_data(&BaseDistLaw::over_point(&e)).is_ok();
            assert_eq!(beck, graded, "{name}");
            seen[beck as usize] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

fn iso_over_base(g2: &FSCategory, p2: &FSFunctor, g: &FSCategory, p: &FSFunctor) -> bool {
    !FunctorSearch::new(g2, g)
        .bijective()
        .objects_where(|x, y| p2.objects[x] == p.objects[y])
        .morphisms_where(|m, n| p2.morphisms[m] == p.morphisms[n])
        .limit(1)
        .run()
        .is_empty()
}

#[test]
fn graded_data_round_trips_over_fixture_functors() {
    let pool: Vec<(String, FSCategory)> =
        fixture_pool().into_iter().filter(|(_, f)| f.num_objects() <= 4 && f.num_morphisms() <= 9).collect();
    let mut checked = 0;
    for (gname, g) in &pool {
        for (bname, base) in &pool {
            for p in enumerate_fs_functors(g, base).into_iter().take(6) {
                let b = lax_data_from_functor(g, base, &p).unwrap();
                let (g2, p2) = functor_from_lax_data(&b).unwrap();
                assert!(iso_over_base(&g2, &p2, g, &p), "{gname} over {bname}");
                let again = lax_data_from_functor(&g2, base, &p2).unwrap();
                assert_eq!(again.objects.iter().map(Vec::len).collect::<Vec<_>>(), b.objects.iter().map(Vec::len).collect::<Vec<_>>());
                checked += 1;
            }
        }
    }
    assert!(checked > 200, "{checked}");
}

#[test]
fn graded_json_round_trip_and_broken_data() {
    let g = facterm::fincat::sq_as_fscat(&"hv".parse().unwrap());
    let p = FSFunctor::identity(&g);
    let b = lax_data_from_functor(&g, &g, &p).unwrap();
    let text = serde_json::to_string(&b).unwrap();
    let back: BaseDistLaw = serde_json::from_str(&text).unwrap();
    assert_eq!(back, b);

    let mut broken = b.clone();
    broken.compose_h.pop();
    assert!(functor_from_lax_data(&broken).is_err());
    let mut broken = b.clone();
    broken.swap.clear();
    assert!(functor_from_lax_data(&broken).is_err());
    let mut broken = b;
    broken.unit_v[0][0] = usize::MAX;
    assert!(functor_from_lax_data(&broken).is_err());
}

#[test]
fn projections_have_constant_fibers() {
    use facterm::fincat::fixtures::{arrow, chaotic, product_fs, trivial_fs, Direction};
    let (c, d) = (arrow(1), chaotic(1));
    let g = product_fs(&c, &d);
    let base = trivial_fs(&c, Direction::H);
    let names: BTreeMap<String, usize> = (0..c.num_objects()).map(|x| (c.object_name(x).to_string(), x)).collect();
    let p = FunctorSearch::new(&g, &base)
        .objects_where(|x, y| {
            let n = g.cat().object_name(x);
            names[&n[1..n.find(',').unwrap()]] == y
        })
        .morphisms_where(|m, n| !g.is_h(m) || g.is_v(m) || !base.cat().is_identity(n))
        .run();
    assert_eq!(p.len(), 1);
    let b = lax_data_from_functor(&g, &base, &p[0]).unwrap();
    assert!(b.objects.iter().all(|f| f.len() == d.num_objects()));
    let (g2, p2) = functor_from_lax_data(&b).unwrap();
    assert!(iso_over_base(&g2, &p2, &g, &p[0]));
}
