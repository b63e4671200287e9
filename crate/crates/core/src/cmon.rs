//! Finite commutative monoids given by multiplication tables, homomorphic
//! extension along the generators, and exhaustive checks of the universal
//! property on bounded fragments.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::multiset::{self, Multiset, Pair};
use crate::symbol::{sym, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CmonError {
    #[error("malformed monoid: {0}")]
    Shape(String),
    #[error("{law} fails at {detail}")]
    LawViolation { law: &'static str, detail: String },
    #[error("symbol {0} is outside the generator map's domain")]
    Domain(Symbol),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A commutative monoid on an enumerated carrier. `table[i][j]` is the index
/// of the product of elements `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCMon {
    carrier: Vec<String>,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl FinCMon {
    /// Builds a table after checking only its shape. Use [`FinCMon::validate`]
    /// (or [`FinCMon::new`]) for the monoid laws.
    pub fn from_table(
        carrier: Vec<String>,
        unit: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, CmonError> {
        let n = carrier.len();
        if n == 0 {
            return Err(CmonError::Shape("empty carrier".into()));
        }
        if carrier.iter().collect::<HashSet<_>>().len() != n {
            return Err(CmonError::Shape("duplicate carrier names".into()));
        }
        if unit >= n {
            return Err(CmonError::Shape(format!("unit index {unit} out of range")));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(CmonError::Shape(format!("table is not {n}x{n}")));
        }
        if table.iter().flatten().any(|&k| k >= n) {
            return Err(CmonError::Shape("table entry out of range".into()));
        }
        Ok(FinCMon {
            carrier,
            unit,
            table,
        })
    }

    /// Builds a table and rejects it unless every law instance holds.
    pub fn new(
        carrier: Vec<String>,
        unit: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, CmonError> {
        let m = FinCMon::from_table(carrier, unit, table)?;
        match m.first_violation() {
            Some(err) => Err(err),
            None => Ok(m),
        }
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.carrier.iter().position(|c| c == name)
    }

    /// True iff all unit, associativity and commutativity instances hold.
    pub fn validate(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn first_violation(&self) -> Option<CmonError> {
        let n = self.size();
        let e = self.unit;
        let name = |i: usize| &self.carrier[i];
        for x in 0..n {
            if self.mul(x, e) != x || self.mul(e, x) != x {
                return Some(CmonError::LawViolation {
                    law: "unit",
                    detail: format!("x = {}", name(x)),
                });
            }
        }
        for (x, y) in (0..n).cartesian_product(0..n) {
            if self.mul(x, y) != self.mul(y, x) {
                return Some(CmonError::LawViolation {
                    law: "commutativity",
                    detail: format!("x = {}, y = {}", name(x), name(y)),
                });
            }
        }
        for ((x, y), z) in (0..n).cartesian_product(0..n).cartesian_product(0..n) {
            if self.mul(x, self.mul(y, z)) != self.mul(self.mul(x, y), z) {
                return Some(CmonError::LawViolation {
                    law: "associativity",
                    detail: format!("x = {}, y = {}, z = {}", name(x), name(y), name(z)),
                });
            }
        }
        None
    }

    /// The trivial monoid on one element.
    pub fn trivial() -> Self {
        FinCMon::new(vec!["0".into()], 0, vec![vec![0]]).unwrap()
    }

    /// Integers modulo `n` under addition.
    pub fn z_mod(n: usize) -> Self {
        let carrier = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FinCMon::new(carrier, 0, table).unwrap()
    }

    /// `({0,1}, or, 0)`.
    pub fn or_monoid() -> Self {
        FinCMon::new(
            vec!["0".into(), "1".into()],
            0,
            vec![vec![0, 1], vec![1, 1]],
        )
        .unwrap()
    }

    /// `({0..n-1}, min, n-1)`.
    pub fn min_monoid(n: usize) -> Self {
        let carrier = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| i.min(j)).collect()).collect();
        FinCMon::new(carrier, n - 1, table).unwrap()
    }

    /// Every commutative monoid on `{0, .., n-1}` with unit `0`. Each
    /// isomorphism class of size-`n` commutative monoids appears at least once.
    pub fn all_of_size(n: usize) -> Vec<Self> {
        if n == 0 {
            return Vec::new();
        }
        let carrier: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        // Free entries: products x*y with 1 <= x <= y.
        let slots: Vec<(usize, usize)> = (1..n)
            .tuple_combinations()
            .chain((1..n).map(|x| (x, x)))
            .collect();
        slots
            .iter()
            .map(|_| 0..n)
            .multi_cartesian_product()
            .filter_map(|values| {
                let mut table: Vec<Vec<usize>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                if i == 0 {
                                    j
                                } else if j == 0 {
                                    i
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect();
                for (&(x, y), &v) in slots.iter().zip(&values) {
                    table[x][y] = v;
                    table[y][x] = v;
                }
                FinCMon::new(carrier.clone(), 0, table).ok()
            })
            .collect()
    }

    /// Textual format: carrier names, unit name, then one table row per line.
    pub fn to_text(&self) -> String {
        let mut out = self.carrier.join(" ");
        out.push('\n');
        out.push_str(&self.carrier[self.unit]);
        out.push('\n');
        for row in &self.table {
            out.push_str(&row.iter().map(|&k| self.carrier[k].as_str()).join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for FinCMon {
    type Err = CmonError;

    /// Parses the textual format. Laws are checked; shape errors and law
    /// violations are both reported.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_err = |line, message: &str| CmonError::Parse {
            line,
            message: message.to_owned(),
        };
        let (_, first) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing carrier line"))?;
        let carrier: Vec<String> = first.split_whitespace().map(str::to_owned).collect();
        let lookup = |line: usize, name: &str| {
            carrier
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| parse_err(line, &format!("unknown element {name:?}")))
        };
        let (unit_line, unit_name) = lines
            .next()
            .ok_or_else(|| parse_err(2, "missing unit line"))?;
        let unit = lookup(unit_line, unit_name)?;
        let mut table = Vec::new();
        for (line, row) in lines {
            table.push(
                row.split_whitespace()
                    .map(|name| lookup(line, name))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        FinCMon::new(carrier, unit, table)
    }
}

impl fmt::Display for FinCMon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// An assignment of carrier elements to generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorMap(pub BTreeMap<Symbol, usize>);

impl GeneratorMap {
    pub fn new(pairs: impl IntoIterator<Item = (Symbol, usize)>) -> Self {
        GeneratorMap(pairs.into_iter().collect())
    }

    pub fn get(&self, a: &Symbol) -> Option<usize> {
        self.0.get(a).copied()
    }

    /// Every map from `alphabet` into a carrier of size `n`.
    pub fn all(alphabet: &[Symbol], n: usize) -> Vec<GeneratorMap> {
        alphabet
            .iter()
            .map(|_| 0..n)
            .multi_cartesian_product()
            .map(|values| GeneratorMap::new(alphabet.iter().cloned().zip(values)))
            .collect()
    }
}

/// The homomorphic extension of a generator map into a finite monoid.
#[derive(Clone, Copy, Debug)]
pub struct Extension<'a> {
    generators: &'a GeneratorMap,
    monoid: &'a FinCMon,
}

pub fn hom_extend<'a>(f: &'a GeneratorMap, m: &'a FinCMon) -> Extension<'a> {
    Extension {
        generators: f,
        monoid: m,
    }
}

impl Extension<'_> {
    /// Folds the generator images left to right over the canonical sequence.
    pub fn apply(&self, xs: &Multiset) -> Result<usize, CmonError> {
        xs.iter().try_fold(self.monoid.unit(), |acc, a| {
            let image = self
                .generators
                .get(a)
                .ok_or_else(|| CmonError::Domain(a.clone()))?;
            Ok(self.monoid.mul(acc, image))
        })
    }
}

/// Checks that `candidate` is the unique homomorphic extension of `f` on the
/// fragment of multisets over `alphabet` of size at most `max_size`:
/// it is a homomorphism there, it restricts to `f` along the generators, and
/// extending that restriction again reproduces it.
pub fn check_extension(
    alphabet: &[Symbol],
    m: &FinCMon,
    f: &GeneratorMap,
    max_size: usize,
    candidate: impl Fn(&Multiset) -> Option<usize>,
) -> bool {
    if !m.validate() {
        return false;
    }
    let fragment = Multiset::all_up_to(alphabet, max_size);
    let values: Option<Vec<usize>> = fragment.iter().map(&candidate).collect();
    let Some(values) = values else {
        return false;
    };

    if candidate(&Multiset::empty()) != Some(m.unit()) {
        return false;
    }
    for (i, xs) in fragment.iter().enumerate() {
        for (j, ys) in fragment.iter().enumerate() {
            if candidate(&xs.append(ys)) != Some(m.mul(values[i], values[j])) {
                return false;
            }
        }
    }

    let mut restricted = GeneratorMap::default();
    for a in alphabet {
        let image = candidate(&Multiset::singleton(a.clone()));
        if image.is_none() || image != f.get(a) {
            return false;
        }
        restricted.0.insert(a.clone(), image.unwrap());
    }
    let again = hom_extend(&restricted, m);
    fragment
        .iter()
        .zip(&values)
        .all(|(xs, &v)| again.apply(xs).ok() == Some(v))
}

/// Universal-property check for the extension built by [`hom_extend`].
pub fn universal_check(
    alphabet: &[Symbol],
    m: &FinCMon,
    f: &GeneratorMap,
    max_size: usize,
) -> bool {
    let ext = hom_extend(f, m);
    check_extension(alphabet, m, f, max_size, |xs| ext.apply(xs).ok())
}

/// Checks that multisets over a one-letter alphabet are the natural numbers:
/// `length` is a bijection onto `0..=max_size`, and the product induced by
/// the strength (`extend(snd) ∘ strength_l`) multiplies lengths with `[*]`
/// as its unit.
pub fn nat_structure_check(max_size: usize) -> bool {
    let star = sym("*");
    let fragment = Multiset::all_up_to(std::slice::from_ref(&star), max_size);
    let lengths: Vec<usize> = fragment.iter().map(Multiset::len).collect();
    if lengths != (0..=max_size).collect::<Vec<_>>() {
        return false;
    }
    let one = Multiset::singleton(star);
    fragment.iter().all(|xs| {
        fragment.iter().all(|ys| {
            let product = induced_product(xs, ys);
            product.len() == xs.len() * ys.len() && product == induced_product(ys, xs)
        }) && induced_product(&one, xs) == *xs
            && induced_product(xs, &one) == *xs
    })
}

/// `extend(snd) ∘ strength_l` on `M(1) × M(1)`.
pub fn induced_product(xs: &Multiset, ys: &Multiset) -> Multiset {
    multiset::strength_l(xs, ys)
        .map(|p: &Pair<Symbol, Multiset>| p.snd.clone())
        .mu()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    /// Independent law checker over explicit triples, used as an oracle.
    fn naive_is_cmon(table: &[Vec<usize>], unit: usize) -> bool {
        let n = table.len();
        let mut ok = true;
        for x in 0..n {
            ok &= table[x][unit] == x && table[unit][x] == x;
            for y in 0..n {
                ok &= table[x][y] == table[y][x];
                for z in 0..n {
                    ok &= table[table[x][y]][z] == table[x][table[y][z]];
                }
            }
        }
        ok
    }

    #[test]
    fn validate_examples() {
        assert!(FinCMon::from_table(names(1), 0, vec![vec![0]])
            .unwrap()
            .validate());
        assert!(FinCMon::z_mod(2).validate());
        let bad = FinCMon::from_table(names(2), 0, vec![vec![0, 0], vec![1, 0]]).unwrap();
        assert!(!bad.validate());
        let bad = FinCMon::from_table(names(2), 0, vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert!(!bad.validate());
    }

    #[test]
    fn shape_errors() {
        assert!(FinCMon::from_table(vec![], 0, vec![]).is_err());
        assert!(FinCMon::from_table(names(2), 2, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(FinCMon::from_table(names(2), 0, vec![vec![0, 1]]).is_err());
        assert!(FinCMon::from_table(names(2), 0, vec![vec![0, 1], vec![1, 5]]).is_err());
        assert!(FinCMon::from_table(
            vec!["x".into(), "x".into()],
            0,
            vec![vec![0, 1], vec![1, 0]]
        )
        .is_err());
    }

    #[test]
    fn single_entry_mutations_are_caught() {
        let fixtures = [
            FinCMon::z_mod(3),
            FinCMon::min_monoid(3),
            FinCMon::or_monoid(),
        ];
        for m in fixtures {
            let n = m.size();
            for (x, y, v) in itertools::iproduct!(0..n, 0..n, 0..n) {
                let mut table = m.table().to_vec();
                table[x][y] = v;
                let mutated =
                    FinCMon::from_table(m.carrier().to_vec(), m.unit(), table.clone()).unwrap();
                assert_eq!(mutated.validate(), naive_is_cmon(&table, m.unit()));
            }
        }
    }

    #[test]
    fn enumeration_by_size() {
        assert_eq!(FinCMon::all_of_size(1).len(), 1);
        // {0,1} with unit 0: 1*1 = 0 (Z/2) or 1*1 = 1 (or-monoid).
        assert_eq!(FinCMon::all_of_size(2).len(), 2);
        let three = FinCMon::all_of_size(3);
        assert!(three.iter().all(FinCMon::validate));
        let z3 = FinCMon::z_mod(3);
        assert!(three
            .iter()
            .any(|m| m.table() == z3.table() && m.unit() == 0));
    }

    #[test]
    fn text_format_round_trip() {
        let m = FinCMon::min_monoid(3);
        let text = m.to_text();
        assert_eq!(text, "0 1 2\n2\n0 0 0\n0 1 1\n0 1 2\n");
        assert_eq!(text.parse::<FinCMon>().unwrap(), m);
        let err = "0 1\n0\n0 1\n1 x\n".parse::<FinCMon>().unwrap_err();
        assert_eq!(
            err,
            CmonError::Parse {
                line: 4,
                message: "unknown element \"x\"".into()
            }
        );
        assert!(matches!(
            "0 1\n0\n0 0\n1 0\n".parse::<FinCMon>(),
            Err(CmonError::LawViolation { .. })
        ));
    }

    #[test]
    fn hom_extend_examples() {
        let z3 = FinCMon::z_mod(3);
        let f = GeneratorMap::new([(sym("a"), 1)]);
        let h = hom_extend(&f, &z3);
        assert_eq!(h.apply(&Multiset::empty()), Ok(z3.unit()));
        assert_eq!(h.apply(&"[a,a]".parse().unwrap()), Ok(2));
        assert_eq!(h.apply(&"[a,a,a,a]".parse().unwrap()), Ok(1));
        assert_eq!(
            h.apply(&"[b]".parse().unwrap()),
            Err(CmonError::Domain(sym("b")))
        );
    }

    #[test]
    fn hom_extend_is_order_independent() {
        // Oracle: fold the raw list in every order.
        let alphabet = [sym("a"), sym("b")];
        let m = FinCMon::min_monoid(3);
        let f = GeneratorMap::new([(sym("a"), 0), (sym("b"), 1)]);
        let h = hom_extend(&f, &m);
        for xs in Multiset::all_up_to(&alphabet, 4) {
            let expected = h.apply(&xs).unwrap();
            for order in xs.iter().permutations(xs.len()) {
                let folded = order
                    .iter()
                    .fold(m.unit(), |acc, a| m.mul(acc, f.get(a).unwrap()));
                assert_eq!(folded, expected);
            }
        }
        for (xs, ys) in Multiset::all_up_to(&alphabet, 2)
            .iter()
            .tuple_combinations()
        {
            assert_eq!(
                h.apply(&xs.append(ys)).unwrap(),
                m.mul(h.apply(xs).unwrap(), h.apply(ys).unwrap())
            );
        }
    }

    #[test]
    fn universal_examples() {
        let alphabet = [sym("a"), sym("b")];
        let trivial = FinCMon::trivial();
        for f in GeneratorMap::all(&alphabet, 1) {
            assert!(universal_check(&alphabet, &trivial, &f, 3));
        }
        let z2 = FinCMon::z_mod(2);
        let f = GeneratorMap::new([(sym("a"), 1), (sym("b"), 0)]);
        assert!(universal_check(&alphabet, &z2, &f, 4));
        // Oracle: parity of the multiplicity of a.
        let h = hom_extend(&f, &z2);
        for xs in Multiset::all_up_to(&alphabet, 4) {
            assert_eq!(h.apply(&xs).unwrap(), xs.multiplicity(&sym("a")) % 2);
        }
    }

    #[test]
    fn corrupted_extensions_are_rejected() {
        let alphabet = [sym("a"), sym("b")];
        let z3 = FinCMon::z_mod(3);
        let f = GeneratorMap::new([(sym("a"), 1), (sym("b"), 2)]);
        let h = hom_extend(&f, &z3);
        let wrong_unit = |xs: &Multiset| {
            if xs.is_empty() {
                Some(1)
            } else {
                h.apply(xs).ok()
            }
        };
        assert!(!check_extension(&alphabet, &z3, &f, 3, wrong_unit));
        let wrong_generator = |xs: &Multiset| Some(xs.len() % 3);
        assert!(!check_extension(&alphabet, &z3, &f, 3, wrong_generator));
        let not_hom = |xs: &Multiset| {
            if xs.len() == 2 {
                Some(0)
            } else {
                h.apply(xs).ok()
            }
        };
        assert!(!check_extension(&alphabet, &z3, &f, 3, not_hom));
    }

    #[test]
    fn natural_numbers() {
        assert!(nat_structure_check(0));
        assert!(nat_structure_check(5));
        let two: Multiset = "[*,*]".parse().unwrap();
        let three: Multiset = "[*,*,*]".parse().unwrap();
        assert_eq!(induced_product(&two, &three).len(), 2 * 3);
    }
}
