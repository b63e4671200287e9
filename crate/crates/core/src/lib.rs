//! Free commutative monoids as canonical finite multisets, with
//! proof-carrying equality and an exhaustive checker for the relational
//! model of (differential) linear logic on finite fragments.

pub mod cli;
pub mod cmon;
pub mod derivation;
pub mod literal;
pub mod multiset;
pub mod nbe;
pub mod rel;
pub mod symbol;

pub use derivation::Derivation;
pub use multiset::{Multiset, Pair, PairSymbol, Tagged, TaggedSymbol};
pub use symbol::{sym, SymList, Symbol};
