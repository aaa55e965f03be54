//! Lyndon words on the alphabet `X` and the associated free Lie algebra
//! basis, used as deterministic coordinates by the solver.

use crate::cyclic::CyclicElem;
use crate::series::{Letter, SeriesX, Word};

fn alphabet(n: u32) -> Vec<Letter> {
    let mut letters = vec![Letter::X0];
    for g in 0..n {
        letters.push(Letter::Xg(CyclicElem::new(n, g as i64)));
    }
    letters
}

fn is_lyndon(w: &[Letter]) -> bool {
    // strictly smaller than every proper suffix
    (1..w.len()).all(|i| w < &w[i..])
}

/// All Lyndon words of length `1..=max_len`, ordered by length then
/// lexicographically.
pub fn lyndon_words(n: u32, max_len: usize) -> Vec<Word> {
    let letters = alphabet(n);
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in &letters {
                let mut v = w.clone();
                v.push(*l);
                next.push(v);
            }
        }
        for w in &next {
            if is_lyndon(w) {
                out.push(Word(w.clone()));
            }
        }
        layer = next;
    }
    out.sort();
    out
}

/// The standard (right) factorization of a Lyndon word of length >= 2:
/// `w = uv` with `v` the longest proper Lyndon suffix.
fn standard_factorization(w: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
    debug_assert!(w.len() >= 2 && is_lyndon(w));
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (w[..i].to_vec(), w[i..].to_vec());
        }
    }
    unreachable!("a Lyndon word of length >= 2 has a proper Lyndon suffix");
}

/// The bracketing of a Lyndon word as a Lie series: letters map to
/// themselves, and `b(uv) = [b(u), b(v)]` along the standard factorization.
pub fn lyndon_bracket(n: u32, d: usize, w: &Word) -> SeriesX {
    assert!(!w.is_empty(), "no bracketing of the empty word");
    if w.len() == 1 {
        return SeriesX::letter(n, d, w.0[0]);
    }
    let (u, v) = standard_factorization(&w.0);
    let bu = lyndon_bracket(n, d, &Word(u));
    let bv = lyndon_bracket(n, d, &Word(v));
    bu.mul(&bv)
        .expect("same window")
        .sub(&bv.mul(&bu).expect("same window"))
}

/// Basis of the degree-`k` component of the free Lie algebra on `X`.
pub fn lie_basis(n: u32, k: usize, d: usize) -> Vec<SeriesX> {
    lyndon_words(n, k)
        .into_iter()
        .filter(|w| w.len() == k)
        .map(|w| lyndon_bracket(n, d, &w))
        .collect()
}
