//! The degree-truncated exponential `!A` and its structure maps.
//!
//! `!A` holds the multisets over `A` with at most `K` occurrences, in
//! graded-lexicographic order. Elements are multisets of base indices.
//! Nested objects (`!!A`, `!!!A`) are truncated deeply: besides the outer
//! bound, the flattening of every element must lie in the inner object.
//! This keeps `δ` and `!δ` landing in the same fragment.

use std::collections::HashMap;

use crate::multiset::Multiset;

use super::structure::ProductFragment;
use super::{FinRel, FinSet, RelError};

#[derive(Clone)]
pub struct BangObject {
    base: FinSet,
    degree: usize,
    elems: Vec<Multiset<usize>>,
    index: HashMap<Multiset<usize>, usize>,
    set: FinSet,
}

impl BangObject {
    /// All multisets over `base` with at most `degree` occurrences.
    pub fn new(base: &FinSet, degree: usize) -> Self {
        let alphabet: Vec<usize> = (0..base.len()).collect();
        BangObject::from_elems(base, degree, Multiset::all_up_to(&alphabet, degree))
    }

    /// `!X` over the carrier of `inner`, keeping the multisets with at most
    /// `degree` blocks whose union belongs to `inner`.
    pub fn nested(inner: &BangObject, degree: usize) -> Self {
        // Every block costs its own size against the inner degree, so the
        // search is bounded even though `[]` may repeat.
        let weights: Vec<usize> = inner.elems.iter().map(Multiset::len).collect();
        let mut found = Vec::new();
        let mut current = Vec::new();
        collect_weighted(&weights, degree, inner.degree, 0, &mut current, &mut found);
        let mut elems: Vec<Multiset<usize>> = found
            .into_iter()
            .map(Multiset::from_list)
            .filter(|s| inner.flatten(s).is_some())
            .collect();
        elems.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        BangObject::from_elems(&inner.set, degree, elems)
    }

    fn from_elems(base: &FinSet, degree: usize, elems: Vec<Multiset<usize>>) -> Self {
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let names = elems
            .iter()
            .map(|s| {
                let parts: Vec<&str> = s.iter().map(|&i| base.name(i)).collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        BangObject {
            base: base.clone(),
            degree,
            elems,
            index,
            set: FinSet::from_distinct(names),
        }
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Multiset<usize>] {
        &self.elems
    }

    pub fn elem(&self, i: usize) -> &Multiset<usize> {
        &self.elems[i]
    }

    pub fn index_of(&self, s: &Multiset<usize>) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// For `s` a multiset of indices of `self`, the index of the union of
    /// the named elements, if it lies in `self`.
    pub fn flatten(&self, s: &Multiset<usize>) -> Option<usize> {
        let union = Multiset::from_list(s.iter().flat_map(|&i| self.elems[i].iter().copied()));
        self.index_of(&union)
    }

    /// Index of the singleton `[a]`, if the degree allows it.
    pub fn singleton(&self, a: usize) -> Option<usize> {
        self.index_of(&Multiset::singleton(a))
    }

    /// Pairs `(x, y)` of elements whose total size fits the degree.
    pub fn degree_fragment(&self, other: &BangObject, degree: usize) -> ProductFragment {
        ProductFragment::filtered(&self.set, &other.set, |i, j| {
            self.elems[i].len() + other.elems[j].len() <= degree
        })
    }
}

/// Non-decreasing index sequences with at most `max_len` entries and total
/// weight at most `budget`. Weights must be non-decreasing.
fn collect_weighted(
    weights: &[usize],
    max_len: usize,
    budget: usize,
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    out.push(current.clone());
    if current.len() == max_len {
        return;
    }
    for i in start..weights.len() {
        if weights[i] > budget {
            break;
        }
        current.push(i);
        collect_weighted(weights, max_len, budget - weights[i], i, current, out);
        current.pop();
    }
}

pub fn enumerate_bang(a: &FinSet, degree: usize) -> BangObject {
    BangObject::new(a, degree)
}

/// `m : X ⊗ X ⇸ X`, relating `(xs, ys)` to `xs ++ ys` when it fits.
pub fn multiplication(x: &BangObject) -> FinRel {
    let n = x.len();
    FinRel::from_images(&x.set.product(&x.set), &x.set, |k| {
        x.index_of(&x.elems[k / n].append(&x.elems[k % n]))
    })
}

/// `e : 1 ⇸ X`, relating `*` to `[]`.
pub fn unit(x: &BangObject) -> FinRel {
    FinRel::from_images(&FinSet::unit(), &x.set, |_| x.index_of(&Multiset::empty()))
}

/// `ε : !A ⇸ A`, relating `[a]` to `a`.
pub fn counit(x: &BangObject) -> FinRel {
    FinRel::from_images(&x.set, &x.base, |i| x.elems[i].is_singleton().copied())
}

/// `η : A ⇸ !A`, relating `a` to `[a]`.
pub fn creation(x: &BangObject) -> FinRel {
    FinRel::from_images(&x.base, &x.set, |a| x.singleton(a))
}

/// `δ : X ⇸ Y` for `Y` nested over `X`, relating `x` to every `s` with
/// union `x`.
pub fn delta(inner: &BangObject, outer: &BangObject) -> Result<FinRel, RelError> {
    inner.set.expect_same(&outer.base)?;
    let mut r = FinRel::empty(&inner.set, &outer.set);
    for (j, s) in outer.elems.iter().enumerate() {
        if let Some(i) = inner.flatten(s) {
            r.set(i, j);
        }
    }
    Ok(r)
}

/// `φ : !A ⊗ !B ⇸ !(A ⊗ B)`, relating `(as, bs)` to each `ps` whose
/// projections are `as` and `bs`.
pub fn phi(xa: &BangObject, xb: &BangObject, xab: &BangObject) -> Result<FinRel, RelError> {
    xa.base.product(&xb.base).expect_same(&xab.base)?;
    let nb = xb.base.len();
    let src = xa.set.product(&xb.set);
    let mut r = FinRel::empty(&src, &xab.set);
    for (j, ps) in xab.elems.iter().enumerate() {
        let fst = ps.map(|&p| p / nb);
        let snd = ps.map(|&p| p % nb);
        if let (Some(i), Some(k)) = (xa.index_of(&fst), xb.index_of(&snd)) {
            r.set(i * xb.len() + k, j);
        }
    }
    Ok(r)
}

/// `1 ⇸ !1`, relating `*` to every element.
pub fn phi_unit(x: &BangObject) -> Result<FinRel, RelError> {
    FinSet::unit().expect_same(&x.base)?;
    Ok(FinRel::full(&FinSet::unit(), &x.set))
}

/// `!A ⊗ !B ⇸ !(A + B)` on the pairs of total size at most the degree of
/// `xs`: tags both sides and appends.
pub fn seely_merge(
    xa: &BangObject,
    xb: &BangObject,
    xs: &BangObject,
) -> Result<(ProductFragment, FinRel), RelError> {
    xa.base.sum(&xb.base).expect_same(&xs.base)?;
    let na = xa.base.len();
    let frag = xa.degree_fragment(xb, xs.degree);
    let r = FinRel::from_images(frag.set(), &xs.set, |k| {
        let (i, j) = frag.pair(k);
        let tagged = xa.elems[i].append(&xb.elems[j].map(|&b| na + b));
        xs.index_of(&tagged)
    });
    Ok((frag, r))
}

/// `!r : !A ⇸ !B`, relating multisets of equal size whose occurrences can
/// be paired off through `r`.
pub fn bang_functor(r: &FinRel, src: &BangObject, dst: &BangObject) -> Result<FinRel, RelError> {
    src.base.expect_same(r.src())?;
    dst.base.expect_same(r.dst())?;
    let mut by_len: Vec<Vec<usize>> = vec![Vec::new(); dst.degree.max(src.degree) + 1];
    for (j, t) in dst.elems.iter().enumerate() {
        if t.len() < by_len.len() {
            by_len[t.len()].push(j);
        }
    }
    let mut out = FinRel::empty(&src.set, &dst.set);
    for (i, s) in src.elems.iter().enumerate() {
        let Some(candidates) = by_len.get(s.len()) else {
            continue;
        };
        for &j in candidates {
            let t = dst.elems[j].as_slice();
            let mut used = vec![false; t.len()];
            if perfect_matching(r, s.as_slice(), t, &mut used) {
                out.set(i, j);
            }
        }
    }
    Ok(out)
}

/// Backtracking search pairing each of `s` with a distinct unused slot of
/// `t` related to it.
fn perfect_matching(r: &FinRel, s: &[usize], t: &[usize], used: &mut [bool]) -> bool {
    let Some((&x, rest)) = s.split_first() else {
        return true;
    };
    for j in 0..t.len() {
        // Equal unused slots are interchangeable; try only the first.
        if used[j] || (j > 0 && t[j] == t[j - 1] && !used[j - 1]) || !r.get(x, t[j]) {
            continue;
        }
        used[j] = true;
        if perfect_matching(r, rest, t, used) {
            used[j] = false;
            return true;
        }
        used[j] = false;
    }
    false
}

/// The structure maps on the truncated objects built from `A`, `B` and a
/// degree bound.
pub struct BangMaps {
    pub bang_a: BangObject,
    pub bang_bang_a: BangObject,
    pub bang_b: BangObject,
    pub bang_ab: BangObject,
    pub bang_unit: BangObject,
    /// `!A ⊗ !A ⇸ !A`.
    pub m: FinRel,
    /// `1 ⇸ !A`.
    pub e: FinRel,
    /// `!A ⇸ !A ⊗ !A`.
    pub w: FinRel,
    /// `!A ⇸ 1`.
    pub k: FinRel,
    /// `!A ⇸ !!A`.
    pub delta: FinRel,
    /// `!A ⇸ A`.
    pub epsilon: FinRel,
    /// `A ⇸ !A`.
    pub eta_cr: FinRel,
    /// `!A ⊗ !B ⇸ !(A ⊗ B)`.
    pub phi_ab: FinRel,
    /// `1 ⇸ !1`.
    pub phi_unit: FinRel,
}

pub fn bang_maps(a: &FinSet, b: &FinSet, degree: usize) -> BangMaps {
    let bang_a = BangObject::new(a, degree);
    let bang_bang_a = BangObject::nested(&bang_a, degree);
    let bang_b = BangObject::new(b, degree);
    let bang_ab = BangObject::new(&a.product(b), degree);
    let bang_unit = BangObject::new(&FinSet::unit(), degree);
    let m = multiplication(&bang_a);
    let e = unit(&bang_a);
    let epsilon = counit(&bang_a);
    BangMaps {
        w: m.dagger(),
        k: e.dagger(),
        eta_cr: epsilon.dagger(),
        delta: delta(&bang_a, &bang_bang_a).expect("nested over bang_a"),
        phi_ab: phi(&bang_a, &bang_b, &bang_ab).expect("matching bases"),
        phi_unit: phi_unit(&bang_unit).expect("unit base"),
        m,
        e,
        epsilon,
        bang_a,
        bang_bang_a,
        bang_b,
        bang_ab,
        bang_unit,
    }
}
