//! Canonical finite multisets: the free commutative monoid on an ordered
//! alphabet, with its monad, strength and monoidal structure and the
//! structural facts about empty and singleton multisets.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::literal::{self, Cursor, Literal, LiteralError};
use crate::symbol::Symbol;

/// A finite multiset stored as its non-decreasing sequence of occurrences.
///
/// Two multisets are equal exactly when their sorted sequences are, so the
/// derived `Eq`, `Ord` and `Hash` are those of the quotient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset<T = Symbol> {
    elems: Vec<T>,
}

/// A pair `(fst, snd)`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair<A, B> {
    pub fst: A,
    pub snd: B,
}

impl<A, B> Pair<A, B> {
    pub fn new(fst: A, snd: B) -> Self {
        Pair { fst, snd }
    }
}

/// An element of a disjoint union. `Left` values sort before `Right` ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tagged<A, B> {
    Left(A),
    Right(B),
}

pub type PairSymbol = Pair<Symbol, Symbol>;
pub type TaggedSymbol = Tagged<Symbol, Symbol>;

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset::empty()
    }
}

impl<T: Ord> Multiset<T> {
    pub fn empty() -> Self {
        Multiset { elems: Vec::new() }
    }

    pub fn singleton(x: T) -> Self {
        Multiset { elems: vec![x] }
    }

    /// The quotient map from lists: sorts the occurrences.
    pub fn from_list(xs: impl IntoIterator<Item = T>) -> Self {
        let mut elems: Vec<T> = xs.into_iter().collect();
        elems.sort();
        Multiset { elems }
    }

    /// Number of occurrences.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The unique element of a length-one multiset.
    pub fn is_singleton(&self) -> Option<&T> {
        match self.elems.as_slice() {
            [x] => Some(x),
            _ => None,
        }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.elems.iter()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.elems
    }

    pub fn multiplicity(&self, x: &T) -> usize {
        let lo = self.elems.partition_point(|y| y < x);
        let hi = self.elems.partition_point(|y| y <= x);
        hi - lo
    }

    /// Distinct elements with their multiplicities, in order.
    pub fn counts(&self) -> Vec<(&T, usize)> {
        self.elems
            .iter()
            .chunk_by(|x| *x)
            .into_iter()
            .map(|(x, group)| (x, group.count()))
            .collect()
    }

    /// Adds one occurrence of `x` (the `cons` of the quotient).
    pub fn insert(mut self, x: T) -> Self {
        let at = self.elems.partition_point(|y| *y <= x);
        self.elems.insert(at, x);
        self
    }

    /// Functorial action; re-sorts because `f` need not be monotone.
    pub fn map<U: Ord>(&self, f: impl FnMut(&T) -> U) -> Multiset<U> {
        Multiset::from_list(self.elems.iter().map(f))
    }
}

impl<T: Ord + Clone> Multiset<T> {
    /// Multiset union: multiplicities add.
    pub fn append(&self, other: &Multiset<T>) -> Multiset<T> {
        let elems = self
            .elems
            .iter()
            .merge(other.elems.iter())
            .cloned()
            .collect();
        Multiset { elems }
    }

    /// Pointwise minimum of multiplicities.
    pub fn intersection(&self, other: &Multiset<T>) -> Multiset<T> {
        let mut elems = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.elems.len() && j < other.elems.len() {
            match self.elems[i].cmp(&other.elems[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    elems.push(self.elems[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        Multiset { elems }
    }

    /// `self - other`, defined when `other` is a sub-multiset of `self`.
    pub fn checked_sub(&self, other: &Multiset<T>) -> Option<Multiset<T>> {
        let mut elems = Vec::with_capacity(self.elems.len());
        let mut j = 0;
        for x in &self.elems {
            if j < other.elems.len() && other.elems[j] == *x {
                j += 1;
            } else if j < other.elems.len() && other.elems[j] < *x {
                return None;
            } else {
                elems.push(x.clone());
            }
        }
        (j == other.elems.len()).then_some(Multiset { elems })
    }

    pub fn is_sub_multiset(&self, of: &Multiset<T>) -> bool {
        of.checked_sub(self).is_some()
    }

    /// Every sub-multiset, each once, in graded order of the chosen counts.
    pub fn sub_multisets(&self) -> Vec<Multiset<T>> {
        let counts = self.counts();
        counts
            .iter()
            .map(|&(_, n)| 0..=n)
            .multi_cartesian_product()
            .map(|choice| {
                let elems = counts
                    .iter()
                    .zip(choice)
                    .flat_map(|(&(x, _), k)| std::iter::repeat_n(x.clone(), k))
                    .collect();
                Multiset { elems }
            })
            .collect()
    }

    /// All multisets over `alphabet` with at most `max_len` occurrences,
    /// ordered by size and then lexicographically by alphabet position.
    pub fn all_up_to(alphabet: &[T], max_len: usize) -> Vec<Multiset<T>> {
        (0..=max_len)
            .flat_map(|k| {
                (0..alphabet.len())
                    .combinations_with_replacement(k)
                    .map(|idx| Multiset::from_list(idx.into_iter().map(|i| alphabet[i].clone())))
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

impl<T: Ord + Clone> Multiset<Multiset<T>> {
    /// Monad multiplication: union of the inner multisets.
    pub fn mu(&self) -> Multiset<T> {
        Multiset::from_list(
            self.elems
                .iter()
                .flat_map(|inner| inner.elems.iter().cloned()),
        )
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Multiset::from_list(iter)
    }
}

impl<'a, T> IntoIterator for &'a Multiset<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// Pairs every occurrence of `xs` with `b`.
pub fn strength_l<A: Ord + Clone, B: Ord + Clone>(xs: &Multiset<A>, b: &B) -> Multiset<Pair<A, B>> {
    xs.map(|a| Pair::new(a.clone(), b.clone()))
}

/// Pairs `a` with every occurrence of `ys`.
pub fn strength_r<A: Ord + Clone, B: Ord + Clone>(a: &A, ys: &Multiset<B>) -> Multiset<Pair<A, B>> {
    ys.map(|b| Pair::new(a.clone(), b.clone()))
}

/// The bilinear pairing `M(A) × M(B) → M(A × B)`, computed as the extension
/// of the right strength after the left strength.
pub fn bilinear_pair<A: Ord + Clone, B: Ord + Clone>(
    xs: &Multiset<A>,
    ys: &Multiset<B>,
) -> Multiset<Pair<A, B>> {
    strength_l(xs, ys).map(|p| strength_r(&p.fst, &p.snd)).mu()
}

/// The other composite order: extension of the left strength after the
/// right strength. Equal to [`bilinear_pair`] because the monad is commutative.
pub fn bilinear_pair_rl<A: Ord + Clone, B: Ord + Clone>(
    xs: &Multiset<A>,
    ys: &Multiset<B>,
) -> Multiset<Pair<A, B>> {
    strength_r(xs, ys).map(|p| strength_l(&p.fst, &p.snd)).mu()
}

/// `M(A + B) → M(A) × M(B)`.
pub fn seely_split<A: Ord + Clone, B: Ord + Clone>(
    xs: &Multiset<Tagged<A, B>>,
) -> (Multiset<A>, Multiset<B>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for x in xs {
        match x {
            Tagged::Left(a) => left.push(a.clone()),
            Tagged::Right(b) => right.push(b.clone()),
        }
    }
    // Tagging preserves order within each side, so both halves stay sorted.
    (Multiset { elems: left }, Multiset { elems: right })
}

/// `M(A) × M(B) → M(A + B)`: injects both sides and appends.
pub fn seely_merge<A: Ord + Clone, B: Ord + Clone>(
    xs: &Multiset<A>,
    ys: &Multiset<B>,
) -> Multiset<Tagged<A, B>> {
    xs.map(|a| Tagged::Left(a.clone()))
        .append(&ys.map(|b| Tagged::Right(b.clone())))
}

/// Whether `xs ++ ys` is empty. When it is, both summands are empty.
pub fn conical_split<T: Ord + Clone>(xs: &Multiset<T>, ys: &Multiset<T>) -> bool {
    let empty = xs.append(ys).is_empty();
    debug_assert!(!empty || (xs.is_empty() && ys.is_empty()));
    empty
}

/// Which summand carries the single occurrence in `xs ++ ys = [a]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingletonSide {
    LeftHolds,
    RightHolds,
}

pub fn singleton_append_split<T: Ord + Clone>(
    xs: &Multiset<T>,
    ys: &Multiset<T>,
    a: &T,
) -> Option<SingletonSide> {
    match (xs.is_singleton(), ys.is_singleton()) {
        (Some(x), None) if x == a && ys.is_empty() => Some(SingletonSide::LeftHolds),
        (None, Some(y)) if y == a && xs.is_empty() => Some(SingletonSide::RightHolds),
        _ => None,
    }
}

/// For `mu(s) = [a]`, the remainder `t` of `s` after removing one `[a]`
/// block. `mu(t)` is then empty and `t` with `[a]` inserted is `s`.
pub fn singleton_mu_witness<T: Ord + Clone>(
    s: &Multiset<Multiset<T>>,
    a: &T,
) -> Option<Multiset<Multiset<T>>> {
    if s.mu().is_singleton() != Some(a) {
        return None;
    }
    s.checked_sub(&Multiset::singleton(Multiset::singleton(a.clone())))
}

/// For `M(fst)(t) = [a]`, the second component `b` with `t = [(a,b)]`.
pub fn singleton_proj_witness<A: Ord + Clone, B: Ord + Clone>(
    t: &Multiset<Pair<A, B>>,
    a: &A,
) -> Option<B> {
    t.is_singleton()
        .filter(|p| p.fst == *a)
        .map(|p| p.snd.clone())
}

/// A 2×2 refinement of `as ++ bs = cs ++ ds`: `as = xs1 ++ xs2`,
/// `bs = ys1 ++ ys2`, `cs = xs1 ++ ys1`, `ds = xs2 ++ ys2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementSquare<T = Symbol> {
    pub xs1: Multiset<T>,
    pub xs2: Multiset<T>,
    pub ys1: Multiset<T>,
    pub ys2: Multiset<T>,
}

impl<T: Ord + Clone> RefinementSquare<T> {
    pub fn satisfies(
        &self,
        as_: &Multiset<T>,
        bs: &Multiset<T>,
        cs: &Multiset<T>,
        ds: &Multiset<T>,
    ) -> bool {
        self.xs1.append(&self.xs2) == *as_
            && self.ys1.append(&self.ys2) == *bs
            && self.xs1.append(&self.ys1) == *cs
            && self.xs2.append(&self.ys2) == *ds
    }
}

impl<T: fmt::Display> fmt::Display for RefinementSquare<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.xs1, self.xs2, self.ys1, self.ys2)
    }
}

/// Riesz refinement. Takes `xs1` as the pointwise minimum of `as` and `cs`;
/// the remaining three corners are then forced.
pub fn refine<T: Ord + Clone>(
    as_: &Multiset<T>,
    bs: &Multiset<T>,
    cs: &Multiset<T>,
    ds: &Multiset<T>,
) -> Option<RefinementSquare<T>> {
    if as_.append(bs) != cs.append(ds) {
        return None;
    }
    let xs1 = as_.intersection(cs);
    let xs2 = as_.checked_sub(&xs1)?;
    let ys1 = cs.checked_sub(&xs1)?;
    let ys2 = bs.checked_sub(&ys1)?;
    let square = RefinementSquare { xs1, xs2, ys1, ys2 };
    debug_assert!(square.satisfies(as_, bs, cs, ds));
    Some(square)
}

impl<T: fmt::Display> fmt::Display for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::write_seq(f, '[', ']', &self.elems)
    }
}

impl<T: Literal + Ord> Literal for Multiset<T> {
    fn read(cursor: &mut Cursor<'_>) -> Result<Self, LiteralError> {
        literal::read_seq(cursor, '[', ']').map(Multiset::from_list)
    }
}

impl<T: Literal + Ord> FromStr for Multiset<T> {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        literal::parse(s)
    }
}

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Pair<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.fst, self.snd)
    }
}

impl<A: Literal, B: Literal> Literal for Pair<A, B> {
    fn read(cursor: &mut Cursor<'_>) -> Result<Self, LiteralError> {
        cursor.expect('(')?;
        let fst = A::read(cursor)?;
        cursor.expect(',')?;
        let snd = B::read(cursor)?;
        cursor.expect(')')?;
        Ok(Pair { fst, snd })
    }
}

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Tagged<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tagged::Left(a) => write!(f, "L:{a}"),
            Tagged::Right(b) => write!(f, "R:{b}"),
        }
    }
}

impl<A: Literal, B: Literal> Literal for Tagged<A, B> {
    fn read(cursor: &mut Cursor<'_>) -> Result<Self, LiteralError> {
        if cursor.looking_at("L:") {
            cursor.bump(2);
            A::read(cursor).map(Tagged::Left)
        } else if cursor.looking_at("R:") {
            cursor.bump(2);
            B::read(cursor).map(Tagged::Right)
        } else {
            Err(LiteralError::new(cursor.offset(), "expected L: or R: tag"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::sym;
    use proptest::prelude::*;

    fn ms(text: &str) -> Multiset {
        text.parse().unwrap()
    }

    fn nested(text: &str) -> Multiset<Multiset> {
        text.parse().unwrap()
    }

    fn pairs(text: &str) -> Multiset<PairSymbol> {
        text.parse().unwrap()
    }

    #[test]
    fn from_list_sorts() {
        assert_eq!(Multiset::<Symbol>::from_list([]), Multiset::empty());
        let m = Multiset::from_list([sym("b"), sym("a"), sym("b")]);
        assert_eq!(m.as_slice(), &[sym("a"), sym("b"), sym("b")]);
        assert_eq!(m.to_string(), "[a,b,b]");
    }

    #[test]
    fn from_list_identifies_all_permutations() {
        let base = vec![sym("a"), sym("b"), sym("c")];
        let target = Multiset::from_list(base.clone());
        for perm in base.iter().cloned().permutations(3) {
            assert_eq!(Multiset::from_list(perm), target);
        }
        assert_eq!(
            Multiset::from_list([sym("a"), sym("b"), sym("c")]),
            Multiset::from_list([sym("c"), sym("b"), sym("a")])
        );
    }

    #[test]
    fn singleton_is_injective() {
        assert_eq!(Multiset::singleton(sym("a")), Multiset::singleton(sym("a")));
        assert_ne!(Multiset::singleton(sym("a")), Multiset::singleton(sym("b")));
        assert_eq!(Multiset::singleton(sym("a")).len(), 1);
    }

    #[test]
    fn append_examples() {
        assert_eq!(Multiset::empty().append(&ms("[a]")), ms("[a]"));
        assert_eq!(ms("[a,b]").append(&ms("[a]")), ms("[a,a,b]"));
        assert_eq!(ms("[a,b,a]").len(), 3);
        assert_eq!(ms("[]").len(), 0);
    }

    #[test]
    fn map_examples() {
        let xs = ms("[a,b,b]");
        assert_eq!(xs.map(|s| s.clone()), xs);
        assert_eq!(ms("[a,b]").map(|_| sym("c")), ms("[c,c]"));
        // Non-monotone maps need re-sorting.
        let flip = |s: &Symbol| if *s == sym("a") { sym("z") } else { sym("a") };
        assert_eq!(ms("[a,b,b]").map(flip), ms("[a,a,z]"));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(Multiset::<Multiset>::empty().mu(), Multiset::empty());
        assert_eq!(nested("[[a],[],[a,b]]").mu(), ms("[a,a,b]"));
        let xs = ms("[a,b]");
        assert_eq!(Multiset::singleton(xs.clone()).mu(), xs);
    }

    #[test]
    fn strength_examples() {
        let b = sym("b");
        assert_eq!(strength_l(&ms("[]"), &b), pairs("[]"));
        assert_eq!(strength_l(&ms("[a,a]"), &b), pairs("[(a,b),(a,b)]"));
        assert_eq!(strength_r(&sym("a"), &ms("[b,c]")), pairs("[(a,b),(a,c)]"));
    }

    #[test]
    fn bilinear_examples() {
        assert_eq!(bilinear_pair(&ms("[]"), &ms("[a,b]")), pairs("[]"));
        assert_eq!(
            bilinear_pair(&ms("[a]"), &ms("[b,c]")),
            pairs("[(a,b),(a,c)]")
        );
        assert_eq!(
            bilinear_pair(&ms("[a,a]"), &ms("[b]")),
            pairs("[(a,b),(a,b)]")
        );
    }

    #[test]
    fn seely_examples() {
        let (l, r) = seely_split::<Symbol, Symbol>(&Multiset::empty());
        assert!(l.is_empty() && r.is_empty());
        let merged = seely_merge(&ms("[a]"), &ms("[b,b]"));
        assert_eq!(merged.to_string(), "[L:a,R:b,R:b]");
        assert_eq!(seely_split(&merged), (ms("[a]"), ms("[b,b]")));
    }

    #[test]
    fn subsingleton_examples() {
        assert_eq!(ms("[a]").is_singleton(), Some(&sym("a")));
        assert_eq!(ms("[a,b]").is_singleton(), None);
        assert!(conical_split(&ms("[]"), &ms("[]")));
        assert!(!conical_split(&ms("[a]"), &ms("[]")));
        let a = sym("a");
        assert_eq!(
            singleton_append_split(&ms("[a]"), &ms("[]"), &a),
            Some(SingletonSide::LeftHolds)
        );
        assert_eq!(
            singleton_append_split(&ms("[]"), &ms("[a]"), &a),
            Some(SingletonSide::RightHolds)
        );
        assert_eq!(singleton_append_split(&ms("[a]"), &ms("[b]"), &a), None);
        assert_eq!(singleton_append_split(&ms("[b]"), &ms("[]"), &a), None);
    }

    #[test]
    fn singleton_witness_examples() {
        let a = sym("a");
        assert_eq!(
            singleton_mu_witness(&nested("[[a]]"), &a),
            Some(nested("[]"))
        );
        assert_eq!(
            singleton_mu_witness(&nested("[[a],[],[]]"), &a),
            Some(nested("[[],[]]"))
        );
        assert_eq!(singleton_mu_witness(&nested("[[a,b]]"), &a), None);
        assert_eq!(singleton_mu_witness(&nested("[[b]]"), &a), None);
        assert_eq!(
            singleton_proj_witness(&pairs("[(a,b)]"), &a),
            Some(sym("b"))
        );
        assert_eq!(singleton_proj_witness(&pairs("[(c,b)]"), &a), None);
        assert_eq!(singleton_proj_witness(&pairs("[(a,b),(a,c)]"), &a), None);
    }

    #[test]
    fn refine_examples() {
        let sq = refine(&ms("[a]"), &ms("[]"), &ms("[a]"), &ms("[]")).unwrap();
        assert_eq!(sq.to_string(), "[a] [] [] []");
        let sq = refine(&ms("[a,b]"), &ms("[c]"), &ms("[a]"), &ms("[b,c]")).unwrap();
        assert_eq!(sq.to_string(), "[a] [b] [] [c]");
        assert_eq!(refine(&ms("[a]"), &ms("[]"), &ms("[b]"), &ms("[]")), None);
    }

    #[test]
    fn refine_square_matches_exhaustive_search() {
        // Independent oracle: every 4-tuple of sub-multisets satisfying the
        // four equations, found by brute force.
        let (as_, bs, cs, ds) = (ms("[a,b]"), ms("[c]"), ms("[a]"), ms("[b,c]"));
        let mut solutions = Vec::new();
        for xs1 in as_.sub_multisets() {
            for ys1 in bs.sub_multisets() {
                let xs2 = as_.checked_sub(&xs1).unwrap();
                let ys2 = bs.checked_sub(&ys1).unwrap();
                let sq = RefinementSquare {
                    xs1: xs1.clone(),
                    xs2,
                    ys1,
                    ys2,
                };
                if sq.satisfies(&as_, &bs, &cs, &ds) {
                    solutions.push(sq);
                }
            }
        }
        assert_eq!(solutions.len(), 1);
        assert_eq!(refine(&as_, &bs, &cs, &ds).unwrap(), solutions[0]);
    }

    #[test]
    fn sub_multiset_operations() {
        let xs = ms("[a,a,b]");
        assert_eq!(xs.sub_multisets().len(), 6);
        assert_eq!(xs.checked_sub(&ms("[a,b]")), Some(ms("[a]")));
        assert_eq!(xs.checked_sub(&ms("[b,b]")), None);
        assert_eq!(xs.checked_sub(&ms("[c]")), None);
        assert_eq!(xs.intersection(&ms("[a,b,b,c]")), ms("[a,b]"));
        assert_eq!(xs.multiplicity(&sym("a")), 2);
        assert_eq!(xs.clone().insert(sym("a")), ms("[a,a,a,b]"));
    }

    #[test]
    fn enumeration_is_graded_lex() {
        let alphabet = [sym("a"), sym("b")];
        let all = Multiset::all_up_to(&alphabet, 2);
        let shown: Vec<String> = all.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["[]", "[a]", "[b]", "[a,a]", "[a,b]", "[b,b]"]);
    }

    fn symbol_list(max: usize) -> impl Strategy<Value = Vec<Symbol>> {
        prop::collection::vec(
            prop::sample::select(vec![sym("a"), sym("b"), sym("c")]),
            0..=max,
        )
    }

    proptest! {
        #[test]
        fn append_is_commutative_monoid(x in symbol_list(4), y in symbol_list(4), z in symbol_list(4)) {
            let (x, y, z) = (Multiset::from_list(x), Multiset::from_list(y), Multiset::from_list(z));
            prop_assert_eq!(x.append(&y), y.append(&x));
            prop_assert_eq!(x.append(&y).append(&z), x.append(&y.append(&z)));
            prop_assert_eq!(x.append(&Multiset::empty()), x.clone());
            prop_assert_eq!(x.append(&y).len(), x.len() + y.len());
        }

        #[test]
        fn multiplicities_add(x in symbol_list(5), y in symbol_list(5)) {
            let (mx, my) = (Multiset::from_list(x), Multiset::from_list(y));
            let sum = mx.append(&my);
            for s in ["a", "b", "c"].map(sym) {
                prop_assert_eq!(sum.multiplicity(&s), mx.multiplicity(&s) + my.multiplicity(&s));
            }
        }

        #[test]
        fn map_composes(x in symbol_list(6)) {
            let f = |s: &Symbol| if *s == sym("a") { sym("c") } else { sym("a") };
            let g = |s: &Symbol| if *s == sym("c") { sym("b") } else { s.clone() };
            let xs = Multiset::from_list(x.clone());
            let oracle = Multiset::from_list(x.iter().map(|s| g(&f(s))));
            prop_assert_eq!(xs.map(|s| g(&f(s))), oracle.clone());
            prop_assert_eq!(xs.map(f).map(g), oracle);
        }

        #[test]
        fn refine_is_sound(a in symbol_list(3), b in symbol_list(3), c in symbol_list(3)) {
            let (a, b, c) = (Multiset::from_list(a), Multiset::from_list(b), Multiset::from_list(c));
            // Choose ds so the sums agree when c fits inside a ++ b.
            let total = a.append(&b);
            if let Some(d) = total.checked_sub(&c) {
                let sq = refine(&a, &b, &c, &d).expect("sums agree");
                prop_assert!(sq.satisfies(&a, &b, &c, &d));
            }
        }
    }
}
