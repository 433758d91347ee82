//! Canonical words.
//!
//! Every morphism is written, in application order, as
//! vertical degeneracies, horizontal degeneracies, interior vertical faces,
//! interior horizontal faces, boundary faces, and finally corner swaps.
//!
//! - Degeneracies delete collapsed segments from left to right.
//! - Interior faces add the missed coordinates in increasing order.
//! - Boundary faces grow the active image to the lowest path through the
//!   target that contains it: first the prefix (prepended back to front), then
//!   the suffix (appended front to back).
//! - Swaps push that path down onto the target, always taking the applicable
//!   corner with the largest `j`, and among those the smallest `i`.

use crate::fmor::{factor_active_inert, FMorphism, GeneratorToken};
use crate::fstring::{FString, Letter};

/// Degeneracy indices realising a monotone surjection, applied in order.
fn degeneracies(map: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for k in 0..map.len().saturating_sub(1) {
        if map[k] == map[k + 1] {
            out.push(k - out.len());
        }
    }
    out
}

/// Interior face indices realising the injection that a monotone map
/// factors through.
fn faces(map: &[usize], max: usize) -> Vec<usize> {
    (0..=max).filter(|v| !map.contains(v)).collect()
}

/// Corner swaps taking `from` down onto `to`; `from` must lie above `to`.
fn swaps(from: &FString, to: &FString) -> Vec<GeneratorToken> {
    let ht = to.heights();
    let mut word = from.letters().to_vec();
    let mut out = Vec::new();
    loop {
        let (mut x, mut y) = (0, 0);
        let mut best: Option<(usize, usize, usize)> = None;
        for p in 0..word.len() {
            match word[p] {
                Letter::H => x += 1,
                Letter::V => {
                    y += 1;
                    let turn = p + 1 < word.len() && word[p + 1] == Letter::H;
                    if turn && y - 1 >= ht[x + 1] {
                        let better = match best {
                            None => true,
                            Some((bj, bi, _)) => y > bj || (y == bj && x < bi),
                        };
                        if better {
                            best = Some((y, x, p));
                        }
                    }
                }
            }
        }
        match best {
            None => break,
            Some((j, i, p)) => {
                word.swap(p, p + 1);
                out.push(GeneratorToken::Gamma { j, i });
            }
        }
    }
    debug_assert_eq!(&FString::new(word), to);
    out
}

pub fn canonical_word(f: &FMorphism) -> Vec<GeneratorToken> {
    let (act, inert) = factor_active_inert(f);
    let mid = act.target();
    let mut word = Vec::new();

    word.extend(degeneracies(act.b()).into_iter().map(GeneratorToken::SigmaV));
    word.extend(degeneracies(act.a()).into_iter().map(GeneratorToken::SigmaH));
    word.extend(faces(act.b(), mid.m()).into_iter().map(GeneratorToken::DeltaV));
    word.extend(faces(act.a(), mid.n()).into_iter().map(GeneratorToken::DeltaH));

    let target = f.target();
    let path = target.path_vertices();
    let o = inert.origin();
    let e = inert.end();

    // Prefix: follow the target to the column of the origin, then climb.
    let first_in_column = path.iter().position(|q| q.x == o.x).unwrap();
    let mut prefix = target.letters()[..first_in_column].to_vec();
    prefix.extend(std::iter::repeat(Letter::V).take(o.y - path[first_in_column].y));
    // Suffix: walk right along the end's row to the path, then follow it.
    let last_in_row = path.iter().rposition(|q| q.y == e.y).unwrap();
    let mut suffix = vec![Letter::H; path[last_in_row].x - e.x];
    suffix.extend_from_slice(&target.letters()[last_in_row..]);

    for &l in prefix.iter().rev() {
        word.push(match l {
            Letter::H => GeneratorToken::DeltaH(0),
            Letter::V => GeneratorToken::DeltaV(0),
        });
    }
    let prefix_h = prefix.iter().filter(|&&l| l == Letter::H).count();
    let mut n = prefix_h + mid.n();
    let mut m = prefix.len() - prefix_h + mid.m();
    for &l in &suffix {
        word.push(match l {
            Letter::H => {
                n += 1;
                GeneratorToken::DeltaH(n)
            }
            Letter::V => {
                m += 1;
                GeneratorToken::DeltaV(m)
            }
        });
    }

    let mut lowest = prefix;
    lowest.extend_from_slice(mid.letters());
    lowest.extend_from_slice(&suffix);
    word.extend(swaps(&FString::new(lowest), target));
    word
}
