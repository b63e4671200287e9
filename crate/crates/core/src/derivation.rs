//! Derivation trees for the commutation relation on symbol lists.
//!
//! ```text
//!                       l ≈ r                 as ≈ b::cs    a::cs ≈ bs
//!   ─────── nil     ─────────── cons h      ────────────────────────── comm
//!   [] ≈ []          h::l ≈ h::r                  a::as ≈ b::bs
//! ```
//!
//! A `comm` node stores only its two premises; `a`, `b` and `cs` are read
//! off their endpoints when the tree is checked.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nbe::{self, Perm, PermWitness};
use crate::symbol::{SymList, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("malformed comm rule: {0}")]
    MalformedComm(String),
    #[error("endpoints do not compose: {left} vs {right}")]
    EndpointMismatch { left: SymList, right: SymList },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase", from = "Node")]
pub enum Derivation {
    Nil,
    Cons {
        head: Symbol,
        tail: Box<Derivation>,
    },
    Comm {
        left: Box<Derivation>,
        right: Box<Derivation>,
    },
}

/// Reading mirror of `Derivation`. A unit variant would silently accept
/// extra fields, an empty struct variant does not.
#[derive(Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase", deny_unknown_fields)]
enum Node {
    Nil {},
    Cons {
        head: Symbol,
        tail: Box<Derivation>,
    },
    Comm {
        left: Box<Derivation>,
        right: Box<Derivation>,
    },
}

impl From<Node> for Derivation {
    fn from(node: Node) -> Self {
        match node {
            Node::Nil {} => Derivation::Nil,
            Node::Cons { head, tail } => Derivation::Cons { head, tail },
            Node::Comm { left, right } => Derivation::Comm { left, right },
        }
    }
}

impl Derivation {
    pub fn cons(head: Symbol, tail: Derivation) -> Self {
        Derivation::Cons {
            head,
            tail: Box::new(tail),
        }
    }

    pub fn comm(left: Derivation, right: Derivation) -> Self {
        Derivation::Comm {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// The judged equation `lhs ≈ rhs`.
    pub fn endpoints(&self) -> Result<(SymList, SymList), DerivationError> {
        let (lhs, rhs) = self.endpoint_vecs()?;
        Ok((SymList(lhs), SymList(rhs)))
    }

    fn endpoint_vecs(&self) -> Result<(Vec<Symbol>, Vec<Symbol>), DerivationError> {
        match self {
            Derivation::Nil => Ok((Vec::new(), Vec::new())),
            Derivation::Cons { head, tail } => {
                let (mut l, mut r) = tail.endpoint_vecs()?;
                l.insert(0, head.clone());
                r.insert(0, head.clone());
                Ok((l, r))
            }
            Derivation::Comm { left, right } => {
                let (as_, b_cs) = left.endpoint_vecs()?;
                let (a_cs, bs) = right.endpoint_vecs()?;
                let (a, b) = comm_heads(&b_cs, &a_cs)?;
                let mut lhs = as_;
                lhs.insert(0, a);
                let mut rhs = bs;
                rhs.insert(0, b);
                Ok((lhs, rhs))
            }
        }
    }

    /// True iff the tree is well formed and judges exactly `lhs ≈ rhs`.
    pub fn check(&self, lhs: &[Symbol], rhs: &[Symbol]) -> bool {
        match self.endpoint_vecs() {
            Ok((l, r)) => l == lhs && r == rhs,
            Err(_) => false,
        }
    }

    /// The cons-chain proving `xs ≈ xs`.
    pub fn refl(xs: &[Symbol]) -> Self {
        xs.iter()
            .rev()
            .fold(Derivation::Nil, |tail, h| Derivation::cons(h.clone(), tail))
    }

    /// Proves the reversed judgment. Structural, so malformed inputs give
    /// malformed outputs rather than an error here.
    pub fn symm(&self) -> Self {
        match self {
            Derivation::Nil => Derivation::Nil,
            Derivation::Cons { head, tail } => Derivation::cons(head.clone(), tail.symm()),
            Derivation::Comm { left, right } => Derivation::comm(right.symm(), left.symm()),
        }
    }

    /// From `l1 ≈ r1` and `l2 ≈ r2`, proves `l1 ++ l2 ≈ r1 ++ r2` by
    /// quoting the block sum of the two evaluated permutations.
    pub fn cong_append(&self, other: &Derivation) -> Result<Derivation, DerivationError> {
        let w1 = nbe::eval(self)?;
        let w2 = nbe::eval(other)?;
        let phi = w1.phi().block_sum(w2.phi());
        let lhs = w1.lhs().concat(w2.lhs());
        let rhs = w1.rhs().concat(w2.rhs());
        let witness = PermWitness::new(lhs, rhs, phi).expect("block sum of witnesses is a witness");
        Ok(nbe::quote(&witness))
    }

    /// From `l ≈ m` and `m ≈ r`, proves `l ≈ r`: evaluates both trees,
    /// composes the permutations and quotes the result.
    pub fn trans(&self, other: &Derivation) -> Result<Derivation, DerivationError> {
        let w1 = nbe::eval(self)?;
        let w2 = nbe::eval(other)?;
        if w1.rhs() != w2.lhs() {
            return Err(DerivationError::EndpointMismatch {
                left: nbe::listify(w1.rhs()),
                right: nbe::listify(w2.lhs()),
            });
        }
        let phi = Perm::compose(w2.phi(), w1.phi()).expect("equal lengths");
        let witness = PermWitness::new(w1.lhs().clone(), w2.rhs().clone(), phi)
            .expect("composite of witnesses is a witness");
        Ok(nbe::quote(&witness))
    }

    pub fn depth(&self) -> usize {
        match self {
            Derivation::Nil => 1,
            Derivation::Cons { tail, .. } => 1 + tail.depth(),
            Derivation::Comm { left, right } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Derivation::Nil => 1,
            Derivation::Cons { tail, .. } => 1 + tail.size(),
            Derivation::Comm { left, right } => 1 + left.size() + right.size(),
        }
    }

    /// Compact JSON: `{"rule":"nil"}`, `{"rule":"cons","head":..,"tail":..}`,
    /// `{"rule":"comm","left":..,"right":..}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("derivations always serialize")
    }

    pub fn from_json(text: &str) -> Result<Derivation, DerivationError> {
        serde_json::from_str(text).map_err(|e| DerivationError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

/// Side conditions of `comm`: the left premise ends in `b::cs`, the right
/// premise starts from `a::cs`. Returns `(a, b)`.
fn comm_heads(b_cs: &[Symbol], a_cs: &[Symbol]) -> Result<(Symbol, Symbol), DerivationError> {
    let Some((b, cs)) = b_cs.split_first() else {
        return Err(DerivationError::MalformedComm(
            "left premise has an empty right-hand side".into(),
        ));
    };
    let Some((a, cs2)) = a_cs.split_first() else {
        return Err(DerivationError::MalformedComm(
            "right premise has an empty left-hand side".into(),
        ));
    };
    if cs != cs2 {
        return Err(DerivationError::MalformedComm(format!(
            "premise tails differ: {} vs {}",
            SymList(cs.to_vec()),
            SymList(cs2.to_vec())
        )));
    }
    Ok((a.clone(), b.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::Multiset;
    use crate::symbol::sym;
    use proptest::prelude::*;

    fn list(text: &str) -> SymList {
        text.parse().unwrap()
    }

    fn leaf(s: &str) -> Derivation {
        Derivation::refl(&[sym(s)])
    }

    /// `a::b::cs ≈ b::a::cs` built from two reflexivity leaves.
    fn swap_tree(a: &str, b: &str, cs: &[Symbol]) -> Derivation {
        let b_cs = SymList::cons(sym(b), cs);
        let a_cs = SymList::cons(sym(a), cs);
        Derivation::comm(Derivation::refl(&b_cs), Derivation::refl(&a_cs))
    }

    #[test]
    fn endpoint_examples() {
        assert_eq!(
            Derivation::Nil.endpoints().unwrap(),
            (list("[]"), list("[]"))
        );
        assert_eq!(leaf("a").endpoints().unwrap(), (list("[a]"), list("[a]")));
        let swap = Derivation::comm(leaf("b"), leaf("a"));
        assert_eq!(swap.endpoints().unwrap(), (list("[a,b]"), list("[b,a]")));
    }

    #[test]
    fn three_element_reversal() {
        let ds = [sym("d")];
        let inner_left = swap_tree("b", "c", &ds);
        let inner_right = swap_tree("a", "b", &ds);
        let tree = Derivation::comm(inner_left, inner_right);
        assert!(tree.check(&list("[a,b,c,d]"), &list("[c,b,a,d]")));
        let tree_no_tail = Derivation::comm(swap_tree("b", "c", &[]), swap_tree("a", "b", &[]));
        assert!(tree_no_tail.check(&list("[a,b,c]"), &list("[c,b,a]")));
    }

    #[test]
    fn two_distinct_proofs_of_aa() {
        let by_cons = Derivation::refl(&list("[a,a]"));
        let by_comm = Derivation::comm(leaf("a"), leaf("a"));
        assert_ne!(by_cons, by_comm);
        assert!(by_cons.check(&list("[a,a]"), &list("[a,a]")));
        assert!(by_comm.check(&list("[a,a]"), &list("[a,a]")));
    }

    #[test]
    fn malformed_comm_is_rejected() {
        // Left premise ends in [], so there is no b.
        let no_b = Derivation::comm(Derivation::Nil, leaf("a"));
        assert!(matches!(
            no_b.endpoints(),
            Err(DerivationError::MalformedComm(_))
        ));
        // Right premise starts from [], so there is no a.
        let no_a = Derivation::comm(leaf("a"), Derivation::Nil);
        assert!(matches!(
            no_a.endpoints(),
            Err(DerivationError::MalformedComm(_))
        ));
        // Tails differ: [b] vs [a,c].
        let tails = Derivation::comm(leaf("b"), Derivation::refl(&list("[a,c]")));
        assert!(matches!(
            tails.endpoints(),
            Err(DerivationError::MalformedComm(_))
        ));
        assert!(!tails.check(&list("[a,b]"), &list("[b,a,c]")));
    }

    #[test]
    fn check_examples() {
        assert!(Derivation::Nil.check(&[], &[]));
        assert!(!Derivation::Nil.check(&list("[a]"), &list("[a]")));
        let swap = Derivation::comm(leaf("b"), leaf("a"));
        assert!(!swap.check(&list("[b,a]"), &list("[a,b]")));
    }

    #[test]
    fn refl_examples() {
        assert_eq!(Derivation::refl(&[]), Derivation::Nil);
        assert_eq!(
            Derivation::refl(&[sym("a")]),
            Derivation::cons(sym("a"), Derivation::Nil)
        );
        let xs = list("[a,b,c]");
        assert!(Derivation::refl(&xs).check(&xs, &xs));
        assert_eq!(Derivation::refl(&xs).depth(), 4);
    }

    #[test]
    fn symm_examples() {
        assert_eq!(Derivation::Nil.symm(), Derivation::Nil);
        let swap = Derivation::comm(leaf("b"), leaf("a"));
        assert!(swap.symm().check(&list("[b,a]"), &list("[a,b]")));
        assert_eq!(swap.symm().symm(), swap);
    }

    #[test]
    fn cong_append_examples() {
        let swap = Derivation::comm(leaf("b"), leaf("a"));
        let d = Derivation::Nil.cong_append(&swap).unwrap();
        assert!(d.check(&list("[a,b]"), &list("[b,a]")));
        let d = leaf("a").cong_append(&swap).unwrap();
        assert!(d.check(&list("[a,a,b]"), &list("[a,b,a]")));
        let d = swap.cong_append(&Derivation::refl(&list("[c,d]"))).unwrap();
        let (l, r) = d.endpoints().unwrap();
        assert_eq!((l.len(), r.len()), (4, 4));
        assert!(d.check(&list("[a,b,c,d]"), &list("[b,a,c,d]")));
    }

    #[test]
    fn trans_examples() {
        let xs = list("[a,b,c]");
        let r = Derivation::refl(&xs);
        assert!(r.trans(&r).unwrap().check(&xs, &xs));

        let swap = Derivation::comm(leaf("b"), leaf("a"));
        let back = swap.trans(&swap.symm()).unwrap();
        assert!(back.check(&list("[a,b]"), &list("[a,b]")));

        // [a,b,c] -> [b,a,c] -> [b,c,a]: a 3-cycle.
        let first = swap_tree("a", "b", &[sym("c")]);
        let second = Derivation::refl(&[sym("b")])
            .cong_append(&swap_tree("a", "c", &[]))
            .unwrap();
        assert!(second.check(&list("[b,a,c]"), &list("[b,c,a]")));
        let cycle = first.trans(&second).unwrap();
        assert!(cycle.check(&list("[a,b,c]"), &list("[b,c,a]")));
        // Oracle: composing the index maps by hand gives 0->2, 1->0, 2->1.
        assert_eq!(nbe::eval(&cycle).unwrap().phi().as_slice(), &[2, 0, 1]);

        let err = swap.trans(&swap).unwrap_err();
        assert!(matches!(err, DerivationError::EndpointMismatch { .. }));
    }

    #[test]
    fn json_encoding() {
        assert_eq!(Derivation::Nil.to_json(), r#"{"rule":"nil"}"#);
        assert_eq!(
            leaf("a").to_json(),
            r#"{"rule":"cons","head":"a","tail":{"rule":"nil"}}"#
        );
        let swap = Derivation::comm(leaf("b"), leaf("a"));
        assert_eq!(
            swap.to_json(),
            concat!(
                r#"{"rule":"comm","left":{"rule":"cons","head":"b","tail":{"rule":"nil"}},"#,
                r#""right":{"rule":"cons","head":"a","tail":{"rule":"nil"}}}"#
            )
        );
        assert_eq!(Derivation::from_json(&swap.to_json()).unwrap(), swap);
    }

    #[test]
    fn json_rejects_bad_input() {
        for bad in [
            r#"{"rule":"nil","extra":1}"#,
            r#"{"rule":"cons","head":"a"}"#,
            r#"{"rule":"swap"}"#,
            r#"{"rule":"cons","head":"a b","tail":{"rule":"nil"}}"#,
            r#"{"rule":"cons","head":"a","tail":{"rule":"nil"},"x":0}"#,
        ] {
            assert!(Derivation::from_json(bad).is_err(), "{bad} accepted");
        }
        match Derivation::from_json("{\n  \"rule\": 3\n}") {
            Err(DerivationError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    /// Random well-formed trees proving something about `lhs`.
    fn tree_from(lhs: Vec<Symbol>, depth: u32) -> BoxedStrategy<Derivation> {
        if lhs.is_empty() {
            return Just(Derivation::Nil).boxed();
        }
        let (a, rest) = (lhs[0].clone(), lhs[1..].to_vec());
        let cons = tree_from(rest.clone(), depth.saturating_sub(1))
            .prop_map({
                let a = a.clone();
                move |t| Derivation::cons(a.clone(), t)
            })
            .boxed();
        if rest.is_empty() || depth <= lhs.len() as u32 {
            return cons;
        }
        let comm = tree_from(rest, depth - 1)
            .prop_flat_map(move |left| {
                let (_, b_cs) = left.endpoints().unwrap();
                let a_cs = SymList::cons(a.clone(), &b_cs[1..]);
                tree_from(a_cs.0, depth - 1)
                    .prop_map(move |right| Derivation::comm(left.clone(), right))
            })
            .boxed();
        prop_oneof![cons, comm].boxed()
    }

    fn arb_tree() -> impl Strategy<Value = Derivation> {
        prop::collection::vec(
            prop::sample::select(vec![sym("a"), sym("b"), sym("c")]),
            0..=5,
        )
        .prop_flat_map(|lhs| tree_from(lhs, 7))
    }

    proptest! {
        #[test]
        fn well_formed_trees_are_sound(d in arb_tree()) {
            let (l, r) = d.endpoints().unwrap();
            prop_assert_eq!(Multiset::from_list(l.0), Multiset::from_list(r.0));
        }

        #[test]
        fn symm_reverses(d in arb_tree()) {
            let (l, r) = d.endpoints().unwrap();
            prop_assert!(d.symm().check(&r, &l));
            prop_assert_eq!(d.symm().symm(), d);
        }

        #[test]
        fn json_round_trip(d in arb_tree()) {
            prop_assert_eq!(Derivation::from_json(&d.to_json()).unwrap(), d);
        }
    }
}
