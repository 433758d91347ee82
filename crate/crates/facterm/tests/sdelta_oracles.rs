use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use facterm::fincat::fixtures::sq_as_fscat;
use facterm::sdelta::{
    homology, nondegenerate, simplices, smith_normal_form, ChainComplex, SparseMatrix, SqSimplex,
};
use facterm::FString;

#[test]
fn every_string_up_to_five_is_acyclic() {
    for s in FString::all_up_to(5) {
        let h = homology(&s);
        assert_eq!((h[0].rank, h[0].torsion.len()), (1, 0), "{s}");
        assert!(h[1..].iter().all(|g| g.is_zero()), "{s}: {h:?}");
    }
}

/// Independent of the SNF: the Euler characteristic of a contractible
/// complex is one.
#[test]
fn euler_characteristic_is_one() {
    for s in FString::all_up_to(5) {
        let chi: i64 = (0..=s.n() + s.m())
            .map(|m| {
                let c = nondegenerate(&s, m).len() as i64;
                if m % 2 == 0 { c } else { -c }
            })
            .sum();
        assert_eq!(chi, 1, "{s}");
        assert!(nondegenerate(&s, s.n() + s.m() + 1).is_empty());
    }
}

#[test]
fn boundaries_square_to_zero() {
    for s in FString::all_up_to(4) {
        assert!(ChainComplex::of(&s).squares_vanish(), "{s}");
    }
}

/// Chains of `m` composable morphisms in the grid category, counted by
/// walking its composition table.
fn nerve_count(s: &FString, m: usize) -> u64 {
    let c = sq_as_fscat(s).cat().clone();
    let mut ending = vec![1u64; c.num_objects()];
    for _ in 0..m {
        let mut next = vec![0u64; c.num_objects()];
        for f in 0..c.num_morphisms() {
            next[c.cod(f)] += ending[c.dom(f)];
        }
        ending = next;
    }
    ending.iter().sum()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn full_rectangles_match_the_nerve_of_the_poset() {
    for n in 0..=3 {
        for l in 0..=3 {
            let s = FString::rectangle(n, l);
            assert_eq!(s.region().len(), (n + 1) * (l + 1));
            for m in 0..=5u64 {
                let count = simplices(&s, m as usize).len() as u64;
                assert_eq!(count, nerve_count(&s, m as usize), "{n}x{l} m={m}");
                assert_eq!(count, binomial(m + 1 + n as u64, n as u64) * binomial(m + 1 + l as u64, l as u64));
            }
        }
    }
    assert_eq!(simplices(&FString::rectangle(1, 1), 3).len(), 25);
}

#[test]
fn simplicial_identities() {
    for s in FString::all_up_to(4) {
        for m in 0..=3 {
            for x in simplices(&s, m) {
                for j in 0..=m {
                    let sj = x.degeneracy(j);
                    assert!(sj.is_valid_in(&s) && sj.is_degenerate());
                    for i in 0..=j {
                        assert_eq!(sj.degeneracy(i), x.degeneracy(i).degeneracy(j + 1));
                    }
                    for i in 0..=m + 1 {
                        let lhs = sj.face(i);
                        if i == j || i == j + 1 {
                            assert_eq!(lhs, x);
                        } else if i < j {
                            assert_eq!(lhs, x.face(i).degeneracy(j - 1));
                        } else {
                            assert_eq!(lhs, x.face(i - 1).degeneracy(j));
                        }
                    }
                }
                if m == 0 {
                    continue;
                }
                for j in 0..=m {
                    assert!(x.face(j).is_valid_in(&s));
                    for i in 0..j {
                        assert_eq!(x.face(j).face(i), x.face(i).face(j - 1));
                    }
                }
            }
        }
    }
}

/// Invariant factors via determinantal divisors: `d_1 ... d_k` is the gcd
/// of the `k × k` minors.
fn determinantal_factors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::one();
        }
        (0..m.len())
            .map(|c| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][c] * det(&minor);
                if c % 2 == 0 { term } else { -term }
            })
            .sum()
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
    }
    let (r, c) = (rows.len(), rows[0].len());
    let mut divisors = vec![BigInt::one()];
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(rows[i][j])).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

fn sparse(rows: &[Vec<i64>]) -> SparseMatrix {
    let mut m = SparseMatrix::zero(rows.len(), rows[0].len());
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            m.add_to(r, c, BigInt::from(v));
        }
    }
    m
}

fn simplex_in(s: FString) -> impl Strategy<Value = (FString, SqSimplex)> {
    let all: Vec<SqSimplex> = (0..=3).flat_map(|m| simplices(&s, m)).collect();
    (0..all.len()).prop_map(move |i| (s.clone(), all[i].clone()))
}

proptest! {
    #[test]
    fn smith_matches_determinantal_divisors(
        rows in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
    ) {
        prop_assert_eq!(smith_normal_form(&sparse(&rows)), determinantal_factors(&rows));
    }

    #[test]
    fn faces_and_degeneracies_stay_inside(
        (s, x) in (0usize..=6).prop_flat_map(|len| prop::collection::vec(prop::bool::ANY, len))
            .prop_map(|bits| bits.iter().map(|&b| if b { 'h' } else { 'v' }).collect::<String>())
            .prop_flat_map(|w| simplex_in(if w.is_empty() { FString::empty() } else { w.parse().unwrap() }))
    ) {
        prop_assert!(x.is_valid_in(&s));
        for i in 0..=x.dim() {
            prop_assert!(x.degeneracy(i).is_valid_in(&s));
            if x.dim() > 0 {
                prop_assert!(x.face(i).is_valid_in(&s));
            }
        }
    }
}
