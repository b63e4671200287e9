#![allow(dead_code)]

use fcm_core::{sym, Derivation, Symbol};
use rand::Rng;

pub const ALPHABET: [&str; 3] = ["a", "b", "c"];

/// Depth of a well-formed tree is its list length plus one, so this bounds
/// generated trees to depth 8.
pub const MAX_LEN: usize = 7;

pub fn random_list(rng: &mut impl Rng, max_len: usize) -> Vec<Symbol> {
    let n = rng.random_range(0..=max_len);
    (0..n)
        .map(|_| sym(ALPHABET[rng.random_range(0..ALPHABET.len())]))
        .collect()
}

/// A random well-formed derivation whose left endpoint is `lhs`.
pub fn gen_with_lhs(rng: &mut impl Rng, lhs: &[Symbol]) -> Derivation {
    let Some((a, rest)) = lhs.split_first() else {
        return Derivation::Nil;
    };
    if rest.is_empty() || rng.random_bool(0.5) {
        return Derivation::cons(a.clone(), gen_with_lhs(rng, rest));
    }
    // comm(d1 : rest ≈ b :: cs, d2 : a :: cs ≈ bs) proves a :: rest ≈ b :: bs.
    let left = gen_with_lhs(rng, rest);
    let (_, mid) = left.endpoints().expect("generated trees are well formed");
    let mut a_cs = vec![a.clone()];
    a_cs.extend_from_slice(&mid[1..]);
    let right = gen_with_lhs(rng, &a_cs);
    Derivation::comm(left, right)
}

pub fn gen_tree(rng: &mut impl Rng) -> Derivation {
    let lhs = random_list(rng, MAX_LEN);
    gen_with_lhs(rng, &lhs)
}

pub fn list_literal(xs: &[Symbol]) -> String {
    let items: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
    format!("[{}]", items.join(","))
}

/// Every list of length at most `max_len` over the first `k` letters.
pub fn all_lists(k: usize, max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Symbol>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|xs| {
                ALPHABET[..k].iter().map(move |c| {
                    let mut ys = xs.clone();
                    ys.push(sym(c));
                    ys
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
