//! Relations between finite enumerated sets, stored as bit matrices.
//!
//! Composition is written both ways: `compose(g, f)` is `g ∘ f`, and
//! `f.then(&g)` is the same relation read left to right.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

pub mod bang;
pub mod convolution;
pub mod laws;
pub mod structure;

pub use bang::{bang_functor, bang_maps, enumerate_bang, BangMaps, BangObject};
pub use convolution::{
    coextend, convolution_monoid, rel_hom_extend, rel_monoid_fixtures, Convolution, RelMonoid,
    POWER_CARRIER_LIMIT,
};
pub use laws::{law_suite, refinement_transfer_check, LawOutcome, LawReport, Suite};
pub use structure::{
    biproduct, codiag, curry_bijection_check, diag, tensor, tensor_unit, Biproduct, ProductFragment,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("carrier mismatch: expected {expected}, found {found}")]
    CarrierMismatch { expected: String, found: String },
    #[error("map is not total: no image for {0}")]
    NonTotal(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("law {law} fails: {detail}")]
    LawViolation { law: String, detail: String },
    #[error("cost guard exceeded: {0}")]
    CostGuardExceeded(String),
    #[error("unknown law suite {0}")]
    UnknownSuite(String),
    #[error("suite {0} needs a degree of at least 1")]
    DegreeRequired(String),
}

/// A finite set of named elements; index order is fixed at construction.
#[derive(Clone)]
pub struct FinSet {
    data: Arc<SetData>,
}

struct SetData {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl FinSet {
    pub fn new(names: Vec<String>) -> Result<Self, RelError> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(RelError::DuplicateElement(name.clone()));
            }
        }
        Ok(FinSet {
            data: Arc::new(SetData { names, index }),
        })
    }

    /// For names known to be distinct.
    pub(crate) fn from_distinct(names: Vec<String>) -> Self {
        FinSet::new(names).expect("element names are distinct")
    }

    pub fn empty() -> Self {
        FinSet::from_distinct(Vec::new())
    }

    /// The one-element set `{*}`.
    pub fn unit() -> Self {
        FinSet::from_distinct(vec!["*".to_string()])
    }

    /// `n` consecutive letters starting at `first`.
    pub fn letters(first: char, n: usize) -> Self {
        let names = (0..n)
            .map(|i| {
                char::from_u32(first as u32 + i as u32)
                    .expect("letter")
                    .to_string()
            })
            .collect();
        FinSet::from_distinct(names)
    }

    /// Elements named `0..n`.
    pub fn numbered(n: usize) -> Self {
        FinSet::from_distinct((0..n).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.data.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.data.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.data.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.data.index.get(name).copied()
    }

    /// All elements of `self × other`; `(i, j)` sits at `i * |other| + j`.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut names = Vec::with_capacity(self.len() * other.len());
        for x in self.names() {
            for y in other.names() {
                names.push(format!("({x},{y})"));
            }
        }
        FinSet::from_distinct(names)
    }

    /// `self + other`, left summand first, names tagged `L:` and `R:`.
    pub fn sum(&self, other: &FinSet) -> FinSet {
        let names = self
            .names()
            .iter()
            .map(|x| format!("L:{x}"))
            .chain(other.names().iter().map(|y| format!("R:{y}")))
            .collect();
        FinSet::from_distinct(names)
    }

    /// All subsets, in bitmask order, named like `{a,c}`.
    pub fn power(&self) -> FinSet {
        assert!(
            self.len() < 16,
            "power set of a set with {} elements",
            self.len()
        );
        let names = (0..1usize << self.len())
            .map(|mask| self.subset_name(mask))
            .collect();
        FinSet::from_distinct(names)
    }

    fn subset_name(&self, mask: usize) -> String {
        let members: Vec<&str> = (0..self.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.name(i))
            .collect();
        format!("{{{}}}", members.join(","))
    }

    fn same(&self, other: &FinSet) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.names == other.data.names
    }

    fn describe(&self) -> String {
        const SHOWN: usize = 6;
        let mut parts: Vec<&str> = self
            .names()
            .iter()
            .take(SHOWN)
            .map(String::as_str)
            .collect();
        if self.len() > SHOWN {
            parts.push("...");
        }
        format!("{{{}}} ({} elements)", parts.join(","), self.len())
    }

    pub(crate) fn expect_same(&self, found: &FinSet) -> Result<(), RelError> {
        if self.same(found) {
            Ok(())
        } else {
            Err(RelError::CarrierMismatch {
                expected: self.describe(),
                found: found.describe(),
            })
        }
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A relation `src ⇸ dst` as a row-major bit matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct FinRel {
    src: FinSet,
    dst: FinSet,
    words: usize,
    bits: Vec<u64>,
}

impl FinRel {
    pub fn empty(src: &FinSet, dst: &FinSet) -> Self {
        let words = dst.len().div_ceil(64);
        FinRel {
            src: src.clone(),
            dst: dst.clone(),
            words,
            bits: vec![0; words * src.len()],
        }
    }

    pub fn full(src: &FinSet, dst: &FinSet) -> Self {
        FinRel::from_fn(src, dst, |_, _| true)
    }

    pub fn identity(a: &FinSet) -> Self {
        FinRel::graph(a, a, |i| i)
    }

    pub fn from_fn(
        src: &FinSet,
        dst: &FinSet,
        mut related: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        let mut r = FinRel::empty(src, dst);
        for i in 0..src.len() {
            for j in 0..dst.len() {
                if related(i, j) {
                    r.set(i, j);
                }
            }
        }
        r
    }

    /// Row `i` relates to every index yielded by `images(i)`.
    pub fn from_images<I>(src: &FinSet, dst: &FinSet, mut images: impl FnMut(usize) -> I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        let mut r = FinRel::empty(src, dst);
        for i in 0..src.len() {
            for j in images(i) {
                r.set(i, j);
            }
        }
        r
    }

    /// Graph of a function given on indices.
    pub fn graph(src: &FinSet, dst: &FinSet, mut f: impl FnMut(usize) -> usize) -> Self {
        FinRel::from_images(src, dst, |i| Some(f(i)))
    }

    /// Graph of a function given on names.
    pub fn func_to_rel(
        f: &BTreeMap<String, String>,
        src: &FinSet,
        dst: &FinSet,
    ) -> Result<Self, RelError> {
        let mut r = FinRel::empty(src, dst);
        for (i, x) in src.names().iter().enumerate() {
            let y = f.get(x).ok_or_else(|| RelError::NonTotal(x.clone()))?;
            let j = dst
                .index_of(y)
                .ok_or_else(|| RelError::UnknownElement(y.clone()))?;
            r.set(i, j);
        }
        Ok(r)
    }

    /// Relation number `code` in the enumeration of all `2^(|src|·|dst|)`;
    /// bit `i * |dst| + j` of `code` is cell `(i, j)`.
    pub fn from_code(src: &FinSet, dst: &FinSet, code: u64) -> Self {
        let n = dst.len();
        FinRel::from_fn(src, dst, |i, j| code >> (i * n + j) & 1 == 1)
    }

    /// Every relation `src ⇸ dst`; at most 2^20 of them.
    pub fn all(src: &FinSet, dst: &FinSet) -> impl Iterator<Item = FinRel> + use<> {
        let cells = src.len() * dst.len();
        assert!(cells <= 20, "{cells} cells is too many to enumerate");
        let (src, dst) = (src.clone(), dst.clone());
        (0..1u64 << cells).map(move |code| FinRel::from_code(&src, &dst, code))
    }

    pub fn random(src: &FinSet, dst: &FinSet, rng: &mut impl Rng) -> Self {
        FinRel::from_fn(src, dst, |_, _| rng.random_bool(0.5))
    }

    pub fn src(&self) -> &FinSet {
        &self.src
    }

    pub fn dst(&self) -> &FinSet {
        &self.dst
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Indices related to `i`, ascending.
    pub fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bit_indices(self.row_words(i))
    }

    /// All related pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.src.len()).flat_map(move |i| self.row(i).map(move |j| (i, j)))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Diagrammatic composite `self ; g`, i.e. `g ∘ self`.
    pub fn then(&self, g: &FinRel) -> Result<FinRel, RelError> {
        compose(g, self)
    }

    pub fn dagger(&self) -> FinRel {
        let mut r = FinRel::empty(&self.dst, &self.src);
        for (i, j) in self.pairs() {
            r.set(j, i);
        }
        r
    }

    pub fn union(&self, other: &FinRel) -> Result<FinRel, RelError> {
        self.src.expect_same(&other.src)?;
        self.dst.expect_same(&other.dst)?;
        let mut r = self.clone();
        for (w, o) in r.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        Ok(r)
    }

    /// The sub-matrix on the given rows and columns, re-indexed onto
    /// `src` and `dst`.
    pub fn submatrix(&self, rows: &[usize], src: &FinSet, cols: &[usize], dst: &FinSet) -> FinRel {
        assert_eq!(rows.len(), src.len());
        assert_eq!(cols.len(), dst.len());
        FinRel::from_fn(src, dst, |i, j| self.get(rows[i], cols[j]))
    }

    /// First cell (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &FinRel) -> Option<(usize, usize)> {
        if self.src.len() != other.src.len() || self.dst.len() != other.dst.len() {
            return Some((0, 0));
        }
        (0..self.src.len()).find_map(|i| {
            let diff: Vec<u64> = self
                .row_words(i)
                .iter()
                .zip(other.row_words(i))
                .map(|(a, b)| a ^ b)
                .collect();
            let j = bit_indices(&diff).next();
            j.map(|j| (i, j))
        })
    }
}

impl fmt::Debug for FinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} ⇸ {:?}", self.src, self.dst)?;
        for i in 0..self.src.len() {
            let row: String = (0..self.dst.len())
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

pub(crate) fn bit_indices(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

pub fn rel_id(a: &FinSet) -> FinRel {
    FinRel::identity(a)
}

/// `g ∘ f`: relates `x` to `z` when some `y` has `f(x, y)` and `g(y, z)`.
pub fn compose(g: &FinRel, f: &FinRel) -> Result<FinRel, RelError> {
    f.dst.expect_same(&g.src)?;
    let mut r = FinRel::empty(&f.src, &g.dst);
    for i in 0..f.src.len() {
        let out = &mut r.bits[i * r.words..(i + 1) * r.words];
        for y in bit_indices(f.row_words(i)) {
            for (o, w) in out.iter_mut().zip(g.row_words(y)) {
                *o |= w;
            }
        }
    }
    Ok(r)
}

/// Left-to-right composite of a non-empty chain.
pub fn chain(rels: &[&FinRel]) -> Result<FinRel, RelError> {
    let (first, rest) = rels.split_first().expect("non-empty chain");
    rest.iter().try_fold((*first).clone(), |acc, r| acc.then(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> FinSet {
        FinSet::letters('a', 2)
    }

    /// Composite by the defining existential, cell by cell.
    fn naive_compose(g: &FinRel, f: &FinRel) -> FinRel {
        FinRel::from_fn(f.src(), g.dst(), |i, k| {
            (0..f.dst().len()).any(|j| f.get(i, j) && g.get(j, k))
        })
    }

    #[test]
    fn finset_basics() {
        assert!(FinSet::new(vec!["a".into(), "a".into()]).is_err());
        let a = two();
        assert_eq!(a.index_of("b"), Some(1));
        assert_eq!(a.product(&FinSet::unit()).names(), &["(a,*)", "(b,*)"]);
        assert_eq!(a.sum(&a).names(), &["L:a", "L:b", "R:a", "R:b"]);
        assert_eq!(a.power().names(), &["{}", "{a}", "{b}", "{a,b}"]);
        assert_eq!(a, FinSet::letters('a', 2));
        assert_ne!(a, FinSet::letters('p', 2));
    }

    #[test]
    fn matrix_product_example() {
        let a = two();
        let id = FinRel::identity(&a);
        let swap = FinRel::from_fn(&a, &a, |i, j| i != j);
        assert_eq!(compose(&swap, &id).unwrap(), swap);
        assert_eq!(compose(&id, &swap).unwrap(), swap);
    }

    #[test]
    fn compose_checks_carriers() {
        let a = two();
        let p = FinSet::letters('p', 2);
        let f = FinRel::full(&a, &p);
        assert!(matches!(
            compose(&f, &f),
            Err(RelError::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn compose_agrees_with_existential_on_all_pairs() {
        let a = two();
        for f in FinRel::all(&a, &a) {
            for g in FinRel::all(&a, &a) {
                assert_eq!(compose(&g, &f).unwrap(), naive_compose(&g, &f));
            }
        }
    }

    #[test]
    fn associativity_on_all_triples() {
        let a = two();
        let all: Vec<FinRel> = FinRel::all(&a, &a).collect();
        for f in &all {
            for g in &all {
                let gf = naive_compose(g, f);
                for h in &all {
                    let left = compose(h, &compose(g, f).unwrap()).unwrap();
                    let right = compose(&compose(h, g).unwrap(), f).unwrap();
                    assert_eq!(left, right);
                    assert_eq!(left, naive_compose(h, &gf));
                }
            }
        }
    }

    #[test]
    fn func_to_rel_examples() {
        let a = two();
        let id: BTreeMap<String, String> = [("a", "a"), ("b", "b")]
            .into_iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        assert_eq!(FinRel::func_to_rel(&id, &a, &a).unwrap(), rel_id(&a));
        let constant: BTreeMap<String, String> = [("a", "b"), ("b", "b")]
            .into_iter()
            .map(|(x, y)| (x.into(), y.into()))
            .collect();
        let r = FinRel::func_to_rel(&constant, &a, &a).unwrap();
        assert_eq!(r, FinRel::from_fn(&a, &a, |_, j| j == 1));
        let partial: BTreeMap<String, String> = [("a".to_string(), "a".to_string())].into();
        assert!(matches!(
            FinRel::func_to_rel(&partial, &a, &a),
            Err(RelError::NonTotal(_))
        ));
    }

    #[test]
    fn graph_functoriality_up_to_three() {
        for n in 0..=3 {
            let a = FinSet::numbered(n);
            let funcs: Vec<Vec<usize>> = (0..n.pow(n as u32))
                .map(|mut code| {
                    (0..n)
                        .map(|_| {
                            let v = code % n;
                            code /= n;
                            v
                        })
                        .collect()
                })
                .collect();
            for f in &funcs {
                for g in &funcs {
                    let gf = FinRel::graph(&a, &a, |i| g[f[i]]);
                    let composite = compose(
                        &FinRel::graph(&a, &a, |i| g[i]),
                        &FinRel::graph(&a, &a, |i| f[i]),
                    );
                    assert_eq!(composite.unwrap(), gf);
                }
            }
        }
    }

    #[test]
    fn dagger_examples() {
        let a = two();
        assert_eq!(rel_id(&a).dagger(), rel_id(&a));
        let r = FinRel::from_fn(&a, &a, |i, _| i == 0);
        assert_eq!(r.dagger(), FinRel::from_fn(&a, &a, |_, j| j == 0));
        for f in FinRel::all(&a, &a) {
            assert_eq!(f.dagger().dagger(), f);
            for g in FinRel::all(&a, &a) {
                let left = compose(&g, &f).unwrap().dagger();
                assert_eq!(left, naive_compose(&f.dagger(), &g.dagger()));
            }
        }
    }

    #[test]
    fn wide_rows_use_several_words() {
        let big = FinSet::numbered(130);
        let one = FinSet::unit();
        let r = FinRel::from_fn(&one, &big, |_, j| j % 63 == 0);
        assert_eq!(r.row(0).collect::<Vec<_>>(), vec![0, 63, 126]);
        let back = compose(&r.dagger(), &r).unwrap();
        assert!(back.get(0, 0));
        assert_eq!(r.first_difference(&FinRel::empty(&one, &big)), Some((0, 0)));
        assert_eq!(r.first_difference(&r), None);
    }
}
