//! Monoids in Rel, their convolution monoids on subsets, and the
//! homomorphic extension / coextension through them.

use crate::cmon::FinCMon;

use super::bang::BangObject;
use super::{bit_indices, FinRel, FinSet, RelError};

/// Largest carrier whose full subset monoid [`convolution_monoid`] builds.
pub const POWER_CARRIER_LIMIT: usize = 6;

/// A monoid in Rel: `mult : M ⊗ M ⇸ M` and `unit : 1 ⇸ M`. Laws are not
/// checked on construction.
#[derive(Clone, Debug)]
pub struct RelMonoid {
    carrier: FinSet,
    mult: FinRel,
    unit: FinRel,
}

impl RelMonoid {
    pub fn new(carrier: &FinSet, mult: FinRel, unit: FinRel) -> Result<Self, RelError> {
        carrier.product(carrier).expect_same(mult.src())?;
        carrier.expect_same(mult.dst())?;
        FinSet::unit().expect_same(unit.src())?;
        carrier.expect_same(unit.dst())?;
        Ok(RelMonoid {
            carrier: carrier.clone(),
            mult,
            unit,
        })
    }

    /// Graph of an ordinary commutative monoid.
    pub fn from_cmon(m: &FinCMon) -> Self {
        let carrier = FinSet::from_distinct(m.carrier().to_vec());
        let n = m.size();
        let mult = FinRel::graph(&carrier.product(&carrier), &carrier, |k| {
            m.mul(k / n, k % n)
        });
        let unit = FinRel::graph(&FinSet::unit(), &carrier, |_| m.unit());
        RelMonoid {
            carrier,
            mult,
            unit,
        }
    }

    /// Multiplication given as a set-valued table on `0..n`.
    pub fn from_table(
        n: usize,
        unit: &[usize],
        table: impl Fn(usize, usize) -> Vec<usize>,
    ) -> Self {
        let carrier = FinSet::numbered(n);
        let mult = FinRel::from_images(&carrier.product(&carrier), &carrier, |k| {
            table(k / n, k % n)
        });
        let unit = FinRel::from_images(&FinSet::unit(), &carrier, |_| unit.to_vec());
        RelMonoid {
            carrier,
            mult,
            unit,
        }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn mult(&self) -> &FinRel {
        &self.mult
    }

    pub fn unit(&self) -> &FinRel {
        &self.unit
    }

    fn product_row(&self, x: usize, y: usize) -> &[u64] {
        self.mult.row_words(x * self.carrier.len() + y)
    }

    /// Unit, commutativity and associativity, compared as sets of outputs
    /// for every input tuple.
    pub fn laws_check(&self) -> Result<(), RelError> {
        let conv = Convolution::new(self);
        let n = self.carrier.len();
        let name = |i: usize| self.carrier.name(i).to_string();
        let unit = conv.unit_set();
        for x in 0..n {
            let single = Subset::singleton(n, x);
            if conv.product(&unit, &single) != single {
                return Err(violation("unit", format!("x = {}", name(x))));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.product_row(x, y) != self.product_row(y, x) {
                    return Err(violation(
                        "commutativity",
                        format!("x = {}, y = {}", name(x), name(y)),
                    ));
                }
            }
        }
        let words = n.div_ceil(64);
        let (mut left, mut right) = (vec![0u64; words], vec![0u64; words]);
        for x in 0..n {
            for y in 0..n {
                let xy = self.product_row(x, y);
                for z in 0..n {
                    left.fill(0);
                    for u in bit_indices(xy) {
                        or_into(&mut left, self.product_row(u, z));
                    }
                    right.fill(0);
                    for v in bit_indices(self.product_row(y, z)) {
                        or_into(&mut right, self.product_row(x, v));
                    }
                    if left != right {
                        return Err(violation(
                            "associativity",
                            format!("x = {}, y = {}, z = {}", name(x), name(y), name(z)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn or_into(acc: &mut [u64], row: &[u64]) {
    for (a, w) in acc.iter_mut().zip(row) {
        *a |= w;
    }
}

fn violation(law: &str, detail: String) -> RelError {
    RelError::LawViolation {
        law: law.to_string(),
        detail,
    }
}

/// A subset of a carrier as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subset(Vec<u64>);

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset(vec![0; n.div_ceil(64)])
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        let mut s = Subset::empty(n);
        s.insert(x);
        s
    }

    pub fn from_mask(n: usize, mask: usize) -> Self {
        let mut s = Subset::empty(n);
        (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .for_each(|i| s.insert(i));
        s
    }

    pub fn insert(&mut self, x: usize) {
        self.0[x / 64] |= 1 << (x % 64);
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        bit_indices(&self.0)
    }

    fn mask(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }
}

/// `p ⊛ q = { x | ∃ y ∈ p, z ∈ q. mult((y, z), x) }` with unit the image
/// of the unit relation.
pub struct Convolution<'a> {
    monoid: &'a RelMonoid,
}

impl<'a> Convolution<'a> {
    pub fn new(monoid: &'a RelMonoid) -> Self {
        Convolution { monoid }
    }

    pub fn unit_set(&self) -> Subset {
        Subset(self.monoid.unit.row_words(0).to_vec())
    }

    pub fn product(&self, p: &Subset, q: &Subset) -> Subset {
        let mut out = Subset::empty(self.monoid.carrier.len());
        for y in p.iter() {
            for z in q.iter() {
                or_into(&mut out.0, self.monoid.product_row(y, z));
            }
        }
        out
    }
}

/// The convolution monoid on all subsets of the carrier, in bitmask order.
pub fn convolution_monoid(mr: &RelMonoid) -> Result<FinCMon, RelError> {
    mr.laws_check()?;
    let n = mr.carrier.len();
    if n > POWER_CARRIER_LIMIT {
        return Err(RelError::CostGuardExceeded(format!(
            "power carrier of a {n}-element monoid"
        )));
    }
    let conv = Convolution::new(mr);
    let subsets: Vec<Subset> = (0..1usize << n)
        .map(|mask| Subset::from_mask(n, mask))
        .collect();
    let table = subsets
        .iter()
        .map(|p| subsets.iter().map(|q| conv.product(p, q).mask()).collect())
        .collect();
    let names = mr.carrier.power().names().to_vec();
    FinCMon::new(names, conv.unit_set().mask(), table)
        .map_err(|e| violation("convolution", e.to_string()))
}

/// Extension of `f : A ⇸ M` to `!A ⇸ M`: `[a1, .., an]` relates to every
/// element of `f(a1) ⊛ .. ⊛ f(an)`.
pub fn rel_hom_extend(f: &FinRel, mr: &RelMonoid, bang: &BangObject) -> Result<FinRel, RelError> {
    mr.laws_check()?;
    extend_unchecked(f, mr, bang)
}

fn extend_unchecked(f: &FinRel, mr: &RelMonoid, bang: &BangObject) -> Result<FinRel, RelError> {
    bang.base().expect_same(f.src())?;
    mr.carrier.expect_same(f.dst())?;
    let conv = Convolution::new(mr);
    let images: Vec<Subset> = (0..f.src().len())
        .map(|a| Subset(f.row_words(a).to_vec()))
        .collect();
    let rows: Vec<Subset> = bang
        .elems()
        .iter()
        .map(|s| {
            s.iter()
                .fold(conv.unit_set(), |acc, &a| conv.product(&acc, &images[a]))
        })
        .collect();
    Ok(FinRel::from_images(bang.set(), &mr.carrier, |i| {
        rows[i].iter().collect::<Vec<_>>()
    }))
}

/// Coextension of `r : X ⇸ A` along a commutative comonoid `(w, k)` on `X`:
/// the dagger of the extension of `r†` through the monoid `(w†, k†)`.
pub fn coextend(r: &FinRel, w: &FinRel, k: &FinRel, bang: &BangObject) -> Result<FinRel, RelError> {
    let x = r.src().clone();
    let monoid = RelMonoid::new(&x, w.dagger(), k.dagger())?;
    monoid.laws_check().map_err(|e| match e {
        RelError::LawViolation { law, detail } => violation(&format!("comonoid {law}"), detail),
        other => other,
    })?;
    Ok(extend_unchecked(&r.dagger(), &monoid, bang)?.dagger())
}

/// Relational monoids used as test fixtures: graphs of every commutative
/// monoid of size at most three, two partial monoids and a hypergroup.
pub fn rel_monoid_fixtures() -> Vec<(String, RelMonoid)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for (i, m) in FinCMon::all_of_size(n).iter().enumerate() {
            out.push((format!("cmon{n}.{i}"), RelMonoid::from_cmon(m)));
        }
    }
    out.push(("or".into(), RelMonoid::from_cmon(&FinCMon::or_monoid())));
    out.push(("min3".into(), RelMonoid::from_cmon(&FinCMon::min_monoid(3))));
    out.push((
        "partial-or".into(),
        RelMonoid::from_table(
            2,
            &[0],
            |x, y| if x + y <= 1 { vec![x + y] } else { vec![] },
        ),
    ));
    out.push((
        "truncated-add".into(),
        RelMonoid::from_table(
            3,
            &[0],
            |x, y| if x + y <= 2 { vec![x + y] } else { vec![] },
        ),
    ));
    out.push((
        "hypergroup".into(),
        RelMonoid::from_table(2, &[0], |x, y| match (x, y) {
            (1, 1) => vec![0, 1],
            _ => vec![x + y],
        }),
    ));
    out
}
