//! Permutation witnesses and the translation between them and derivations.
//!
//! A witness `(f, g, φ)` asserts `f[i] = g[φ(i)]` for every index `i`.
//! `eval` turns a derivation into a witness; `quote` builds a derivation
//! back from any witness.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derivation::{Derivation, DerivationError};
use crate::symbol::{SymList, Symbol};

/// Largest list length `oracle_perm_search` will enumerate.
pub const ORACLE_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("map is not a bijection on 0..{n}")]
    NotBijection { n: usize },
    #[error("index {t} out of range for hat on {i}")]
    OutOfRange { t: usize, i: usize },
    #[error("permutation of size {n} is too small (need at least {min})")]
    TooSmall { n: usize, min: usize },
    #[error("size {n} exceeds enumeration limit {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("witness equation fails at index {index}")]
    WitnessEquation { index: usize },
    #[error("malformed permutation file: {0}")]
    Parse(String),
}

/// A bijection on `0..n`, stored as `map[i] = φ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn new(map: Vec<usize>) -> Result<Self, PermError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &j in &map {
            if j >= n || seen[j] {
                return Err(PermError::NotBijection { n });
            }
            seen[j] = true;
        }
        Ok(Perm { map })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            map: (0..n).collect(),
        }
    }

    /// Swaps 0 and 1, fixes everything else.
    pub fn transpose01(n: usize) -> Result<Self, PermError> {
        if n < 2 {
            return Err(PermError::TooSmall { n, min: 2 });
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(0, 1);
        Ok(Perm { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `q ∘ p`: apply `p`, then `q`.
    pub fn compose(q: &Perm, p: &Perm) -> Result<Perm, PermError> {
        if q.len() != p.len() {
            return Err(PermError::SizeMismatch {
                left: q.len(),
                right: p.len(),
            });
        }
        Ok(Perm {
            map: p.map.iter().map(|&j| q.map[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0; self.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Perm { map }
    }

    /// `self ⊕ other`, acting on `0..n` and `n..n+m` separately.
    pub fn block_sum(&self, other: &Perm) -> Perm {
        let n = self.len();
        let map = self
            .map
            .iter()
            .copied()
            .chain(other.map.iter().map(|&j| j + n))
            .collect();
        Perm { map }
    }

    /// `1 ⊕ self`: fixes 0 and shifts.
    pub fn shift(&self) -> Perm {
        Perm::identity(1).block_sum(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PermFile {
            n: self.len(),
            map: self.map.clone(),
        })
        .expect("permutations always serialize")
    }

    pub fn from_json(text: &str) -> Result<Perm, PermError> {
        let file: PermFile =
            serde_json::from_str(text).map_err(|e| PermError::Parse(e.to_string()))?;
        if file.map.len() != file.n {
            return Err(PermError::SizeMismatch {
                left: file.n,
                right: file.map.len(),
            });
        }
        Perm::new(file.map)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.map.iter().join(","))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PermFile {
    n: usize,
    map: Vec<usize>,
}

/// A list viewed as a length with an index function.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VecList {
    at: Vec<Symbol>,
}

impl VecList {
    pub fn n(&self) -> usize {
        self.at.len()
    }

    pub fn at(&self, i: usize) -> &Symbol {
        &self.at[i]
    }

    pub fn concat(&self, other: &VecList) -> VecList {
        VecList {
            at: self.at.iter().chain(&other.at).cloned().collect(),
        }
    }
}

pub fn vectorise(xs: &[Symbol]) -> VecList {
    VecList { at: xs.to_vec() }
}

pub fn listify(v: &VecList) -> SymList {
    SymList(v.at.clone())
}

/// `lhs` and `rhs` related by `lhs.at(i) = rhs.at(phi(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermWitness {
    lhs: VecList,
    rhs: VecList,
    phi: Perm,
}

impl PermWitness {
    pub fn new(lhs: VecList, rhs: VecList, phi: Perm) -> Result<Self, PermError> {
        if lhs.n() != rhs.n() || lhs.n() != phi.len() {
            return Err(PermError::SizeMismatch {
                left: lhs.n(),
                right: rhs.n().max(phi.len()),
            });
        }
        if let Some(index) = (0..lhs.n()).find(|&i| lhs.at(i) != rhs.at(phi.apply(i))) {
            return Err(PermError::WitnessEquation { index });
        }
        Ok(PermWitness { lhs, rhs, phi })
    }

    pub fn lhs(&self) -> &VecList {
        &self.lhs
    }

    pub fn rhs(&self) -> &VecList {
        &self.rhs
    }

    pub fn phi(&self) -> &Perm {
        &self.phi
    }
}

/// The increasing injection `0..i → 0..=i` that skips `t`.
pub fn hat(t: usize, i: usize) -> Result<Vec<usize>, PermError> {
    if t > i {
        return Err(PermError::OutOfRange { t, i });
    }
    Ok((0..i).map(|j| hat_at(t, j)).collect())
}

fn hat_at(t: usize, j: usize) -> usize {
    if j < t {
        j
    } else {
        j + 1
    }
}

/// Left inverse of `hat_at(t, _)`; `j` must differ from `t`.
fn hat_inv(t: usize, j: usize) -> usize {
    if j < t {
        j
    } else {
        j - 1
    }
}

pub fn eval(d: &Derivation) -> Result<PermWitness, DerivationError> {
    let (lhs, rhs) = d.endpoints()?;
    let phi = eval_perm(d);
    Ok(PermWitness::new(vectorise(&lhs), vectorise(&rhs), phi)
        .expect("eval produces a witness for the endpoints"))
}

/// Assumes `d` is well formed.
fn eval_perm(d: &Derivation) -> Perm {
    match d {
        Derivation::Nil => Perm::identity(0),
        Derivation::Cons { tail, .. } => eval_perm(tail).shift(),
        Derivation::Comm { left, right } => {
            let p1 = eval_perm(left).shift();
            let p2 = eval_perm(right).shift();
            let swap = Perm::transpose01(p1.len()).expect("comm conclusions have length >= 2");
            let first = Perm::compose(&swap, &p1).expect("same length");
            Perm::compose(&p2, &first).expect("same length")
        }
    }
}

pub fn quote(w: &PermWitness) -> Derivation {
    quote_parts(&w.lhs.at, &w.rhs.at, &w.phi.map)
}

fn quote_parts(f: &[Symbol], g: &[Symbol], phi: &[usize]) -> Derivation {
    let n = f.len();
    if n == 0 {
        return Derivation::Nil;
    }
    if phi[0] == 0 {
        let rest: Vec<usize> = phi[1..].iter().map(|&j| j - 1).collect();
        return Derivation::cons(f[0].clone(), quote_parts(&f[1..], &g[1..], &rest));
    }
    let t = phi[0];
    let k = t - 1;

    // f[1..] ≈ g with index t removed.
    let g_minus_t: Vec<Symbol> = (0..n - 1).map(|i| g[hat_at(t, i)].clone()).collect();
    let psi1: Vec<usize> = phi[1..].iter().map(|&j| hat_inv(t, j)).collect();
    let left = quote_parts(&f[1..], &g_minus_t, &psi1);

    // f[0] :: (g[1..] with index k removed) ≈ g[1..].
    let mut lhs2 = Vec::with_capacity(n - 1);
    lhs2.push(f[0].clone());
    lhs2.extend((0..n - 2).map(|i| g[1 + hat_at(k, i)].clone()));
    let mut psi2 = Vec::with_capacity(n - 1);
    psi2.push(k);
    psi2.extend((0..n - 2).map(|i| hat_at(k, i)));
    let right = quote_parts(&lhs2, &g[1..], &psi2);

    Derivation::comm(left, right)
}

/// Pairs equal symbols in left-to-right order of occurrence.
pub fn stable_matching(lhs: &[Symbol], rhs: &[Symbol]) -> Option<Perm> {
    if lhs.len() != rhs.len() {
        return None;
    }
    let mut used = vec![false; rhs.len()];
    let mut map = Vec::with_capacity(lhs.len());
    for x in lhs {
        let j = (0..rhs.len()).find(|&j| !used[j] && rhs[j] == *x)?;
        used[j] = true;
        map.push(j);
    }
    Perm::new(map).ok()
}

/// A derivation of `lhs ≈ rhs` if the two lists are permutations of each other.
pub fn decide(lhs: &[Symbol], rhs: &[Symbol]) -> Option<Derivation> {
    let phi = stable_matching(lhs, rhs)?;
    let w = PermWitness::new(vectorise(lhs), vectorise(rhs), phi).ok()?;
    Some(quote(&w))
}

/// Every `φ` with `lhs = rhs ∘ φ`, in lexicographic order. Walks the tree
/// of all `n!` partial maps and cuts a branch at its first mismatch.
pub fn oracle_perm_search(lhs: &[Symbol], rhs: &[Symbol]) -> Result<Vec<Perm>, PermError> {
    let n = lhs.len();
    if n > ORACLE_LIMIT || rhs.len() > ORACLE_LIMIT {
        return Err(PermError::SizeLimitExceeded {
            n: n.max(rhs.len()),
            limit: ORACLE_LIMIT,
        });
    }
    if n != rhs.len() {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_search(lhs, rhs, &mut map, &mut used, &mut found);
    Ok(found)
}

fn extend_search(
    lhs: &[Symbol],
    rhs: &[Symbol],
    map: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut Vec<Perm>,
) {
    let i = map.len();
    if i == lhs.len() {
        found.push(Perm { map: map.clone() });
        return;
    }
    for j in 0..rhs.len() {
        if !used[j] && lhs[i] == rhs[j] {
            used[j] = true;
            map.push(j);
            extend_search(lhs, rhs, map, used, found);
            map.pop();
            used[j] = false;
        }
    }
}
