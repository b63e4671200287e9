//! Exhaustive and sampled law checks on finite fragments.
//!
//! Laws quantified over relations try every tuple of relations when the
//! carriers have at most two elements, and a fixed pseudo-random sample
//! otherwise. Each law id is reported once, with the first failing cell.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::multiset::{self, Multiset, Pair, Tagged};

use super::bang::{self, bang_functor, BangObject};
use super::convolution::{coextend, RelMonoid};
use super::structure::{
    associator, biproduct, cap, codiag, cup, curry, curry_bijection_check, diag, direct_sum,
    extend, kleisli_of, left_unitor, right_unitor, singleton_map, sum_associator, sum_middle_swap,
    sum_swap, symmetry, tensor, tensor_middle_swap, tensor_on, ProductFragment,
};
use super::{chain, compose, FinRel, FinSet, RelError};

/// Largest carrier size and degree accepted by [`law_suite`].
pub const SUITE_LIMIT: usize = 3;
/// Sampled tuples per relation-quantified law on three-element carriers.
pub const SAMPLES: usize = 200;
/// Sampled tuples for laws that apply `!` to each sampled relation.
pub const BANG_SAMPLES: usize = 20;

const SEED: u64 = 0x5eed_0f1a_75a7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Kleisli,
    DaggerCompact,
    Bialgebra,
    Comonad,
    Comonoid,
    Seely,
    Differential,
    Singletons,
    RefinementTransfer,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Kleisli,
        Suite::DaggerCompact,
        Suite::Bialgebra,
        Suite::Comonad,
        Suite::Comonoid,
        Suite::Seely,
        Suite::Differential,
        Suite::Singletons,
        Suite::RefinementTransfer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kleisli => "kleisli",
            Suite::DaggerCompact => "dagger_compact",
            Suite::Bialgebra => "bialgebra",
            Suite::Comonad => "comonad",
            Suite::Comonoid => "comonoid",
            Suite::Seely => "seely",
            Suite::Differential => "differential",
            Suite::Singletons => "singletons",
            Suite::RefinementTransfer => "refinement_transfer",
        }
    }

    /// Suites that work on `!A` need a positive degree: at degree 0 the
    /// creation map is empty and the differential laws fail trivially.
    pub fn uses_degree(self) -> bool {
        !matches!(
            self,
            Suite::Kleisli | Suite::DaggerCompact | Suite::Bialgebra
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = RelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // Alternative name for the singleton suite.
        if s == "prop57" {
            return Ok(Suite::Singletons);
        }
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| RelError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawOutcome {
    pub instances: usize,
    pub counterexample: Option<(String, String)>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Per-law results, sorted by law id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    laws: BTreeMap<String, LawOutcome>,
}

impl LawReport {
    pub fn new() -> Self {
        LawReport::default()
    }

    pub fn laws(&self) -> &BTreeMap<String, LawOutcome> {
        &self.laws
    }

    pub fn get(&self, id: &str) -> Option<&LawOutcome> {
        self.laws.get(id)
    }

    pub fn all_pass(&self) -> bool {
        self.laws.values().all(LawOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&String, &LawOutcome)> {
        self.laws.iter().filter(|(_, o)| !o.passed())
    }

    pub fn merge(&mut self, other: LawReport) {
        for (id, outcome) in other.laws {
            let entry = self.laws.entry(id).or_default();
            entry.instances += outcome.instances;
            if entry.counterexample.is_none() {
                entry.counterexample = outcome.counterexample;
            }
        }
    }

    /// Records one instance of `id`; `cex` names the failing cell.
    pub fn check(&mut self, id: &str, ok: bool, cex: impl FnOnce() -> (String, String)) {
        let entry = self.laws.entry(id.to_string()).or_default();
        entry.instances += 1;
        if !ok && entry.counterexample.is_none() {
            entry.counterexample = Some(cex());
        }
    }

    /// Records one instance of `id` comparing two relations exactly.
    pub fn check_eq(&mut self, id: &str, lhs: &FinRel, rhs: &FinRel) {
        let diff = if lhs.src() == rhs.src() && lhs.dst() == rhs.dst() {
            lhs.first_difference(rhs)
        } else {
            Some((usize::MAX, usize::MAX))
        };
        self.check(id, diff.is_none(), || match diff {
            Some((i, j)) if i != usize::MAX => {
                (lhs.src().name(i).to_string(), lhs.dst().name(j).to_string())
            }
            _ => (format!("{:?}", lhs.src()), format!("{:?}", rhs.dst())),
        });
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, outcome) in &self.laws {
            match &outcome.counterexample {
                None => writeln!(f, "LAW {id} PASS")?,
                Some((src, dst)) => writeln!(f, "LAW {id} FAIL counterexample: {src} , {dst}")?,
            }
        }
        Ok(())
    }
}

/// Runs one suite on carriers of `size` elements and degree bound `degree`.
pub fn law_suite(suite: Suite, size: usize, degree: usize) -> Result<LawReport, RelError> {
    if size > SUITE_LIMIT || degree > SUITE_LIMIT {
        return Err(RelError::CostGuardExceeded(format!(
            "size {size}, degree {degree} (limit {SUITE_LIMIT})"
        )));
    }
    if suite.uses_degree() && degree == 0 {
        return Err(RelError::DegreeRequired(suite.to_string()));
    }
    match suite {
        Suite::Kleisli => kleisli(size),
        Suite::DaggerCompact => dagger_compact(size),
        Suite::Bialgebra => bialgebra(size),
        Suite::Comonad => comonad(size, degree),
        Suite::Comonoid => comonoid(size, degree),
        Suite::Seely => seely(size, degree),
        Suite::Differential => differential(size, degree),
        Suite::Singletons => singletons(size, degree),
        Suite::RefinementTransfer => refinement_transfer(size, degree),
    }
}

/// Every tuple of relations of the given shapes when all carriers have at
/// most two elements, otherwise `samples` seeded random tuples.
fn for_each_tuple(
    shapes: &[(&FinSet, &FinSet)],
    samples: usize,
    mut body: impl FnMut(&[FinRel]) -> Result<(), RelError>,
) -> Result<(), RelError> {
    let small = shapes.iter().all(|(s, d)| s.len() <= 2 && d.len() <= 2);
    if small {
        let all: Vec<Vec<FinRel>> = shapes
            .iter()
            .map(|(s, d)| FinRel::all(s, d).collect())
            .collect();
        let mut idx = vec![0; shapes.len()];
        loop {
            let tuple: Vec<FinRel> = idx.iter().zip(&all).map(|(&i, rs)| rs[i].clone()).collect();
            body(&tuple)?;
            // Odometer step.
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Ok(());
                }
                idx[pos] += 1;
                if idx[pos] < all[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..samples {
            let tuple: Vec<FinRel> = shapes
                .iter()
                .map(|(s, d)| FinRel::random(s, d, &mut rng))
                .collect();
            body(&tuple)?;
        }
        Ok(())
    }
}

fn carriers(n: usize) -> (FinSet, FinSet, FinSet, FinSet) {
    (
        FinSet::letters('a', n),
        FinSet::letters('p', n),
        FinSet::letters('u', n),
        FinSet::letters('x', n),
    )
}

fn functions(n: usize) -> Vec<Vec<usize>> {
    (0..n.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = code % n;
                    code /= n;
                    v
                })
                .collect()
        })
        .collect()
}

fn kleisli(n: usize) -> Result<LawReport, RelError> {
    let (a, b, c, d) = carriers(n);
    let mut report = LawReport::new();
    let id_a = FinRel::identity(&a);
    let id_b = FinRel::identity(&b);

    for_each_tuple(&[(&a, &b)], SAMPLES, |rs| {
        let f = &rs[0];
        report.check_eq("kleisli.left_identity", &compose(&id_b, f)?, f);
        report.check_eq("kleisli.right_identity", &compose(f, &id_a)?, f);
        let k = kleisli_of(f);
        report.check_eq(
            "kleisli.ext_after_unit",
            &compose(&extend(&k, &a, &b)?, &singleton_map(&a))?,
            &k,
        );
        Ok(())
    })?;
    for_each_tuple(&[(&a, &b), (&b, &c), (&c, &d)], SAMPLES, |rs| {
        let (f, g, h) = (&rs[0], &rs[1], &rs[2]);
        let lhs = compose(h, &compose(g, f)?)?;
        let rhs = compose(&compose(h, g)?, f)?;
        report.check_eq("kleisli.assoc", &lhs, &rhs);
        Ok(())
    })?;
    for_each_tuple(&[(&a, &b), (&b, &c)], SAMPLES, |rs| {
        let (f, g) = (&rs[0], &rs[1]);
        let (kf, kg) = (kleisli_of(f), kleisli_of(g));
        let ext_g = extend(&kg, &b, &c)?;
        let lhs = extend(&compose(&ext_g, &kf)?, &a, &c)?;
        let rhs = compose(&ext_g, &extend(&kf, &a, &b)?)?;
        report.check_eq("kleisli.ext_compose", &lhs, &rhs);
        report.check_eq(
            "kleisli.composition_is_extension",
            &kleisli_of(&compose(g, f)?),
            &compose(&ext_g, &kf)?,
        );
        Ok(())
    })?;
    report.check_eq(
        "kleisli.ext_unit",
        &extend(&singleton_map(&a), &a, &a)?,
        &FinRel::identity(&a.power()),
    );

    let fs = functions(n);
    report.check_eq(
        "kleisli.graph_identity",
        &FinRel::graph(&a, &a, |i| i),
        &id_a,
    );
    for f in &fs {
        for g in &fs {
            let whole = FinRel::graph(&a, &c, |i| g[f[i]]);
            let parts = compose(
                &FinRel::graph(&b, &c, |i| g[i]),
                &FinRel::graph(&a, &b, |i| f[i]),
            )?;
            report.check_eq("kleisli.graph_functor", &whole, &parts);
        }
    }
    Ok(report)
}

fn dagger_compact(n: usize) -> Result<LawReport, RelError> {
    let (a, b, c, d) = carriers(n);
    let mut report = LawReport::new();
    let one = FinSet::unit();
    let id_a = FinRel::identity(&a);

    report.check_eq("dagger.identity", &id_a.dagger(), &id_a);
    report.check_eq(
        "tensor.identity",
        &tensor(&id_a, &FinRel::identity(&b)),
        &FinRel::identity(&a.product(&b)),
    );
    for_each_tuple(&[(&a, &b)], SAMPLES, |rs| {
        let r = &rs[0];
        report.check_eq("dagger.involution", &r.dagger().dagger(), r);
        let lhs = chain(&[
            &left_unitor(&a).dagger(),
            &tensor(&FinRel::identity(&one), r),
            &left_unitor(&b),
        ])?;
        report.check_eq("tensor.left_unitor_natural", &lhs, r);
        let lhs = chain(&[
            &right_unitor(&a).dagger(),
            &tensor(r, &FinRel::identity(&one)),
            &right_unitor(&b),
        ])?;
        report.check_eq("tensor.right_unitor_natural", &lhs, r);
        Ok(())
    })?;
    for_each_tuple(&[(&a, &b), (&b, &c)], SAMPLES, |rs| {
        let (f, g) = (&rs[0], &rs[1]);
        report.check_eq(
            "dagger.contravariant",
            &compose(g, f)?.dagger(),
            &compose(&f.dagger(), &g.dagger())?,
        );
        Ok(())
    })?;
    for_each_tuple(&[(&a, &b), (&c, &d)], SAMPLES, |rs| {
        let (r, s) = (&rs[0], &rs[1]);
        report.check_eq(
            "dagger.tensor",
            &tensor(r, s).dagger(),
            &tensor(&r.dagger(), &s.dagger()),
        );
        let lhs = compose(&symmetry(&b, &d), &tensor(r, s))?;
        let rhs = compose(&tensor(s, r), &symmetry(&a, &c))?;
        report.check_eq("symmetry.natural", &lhs, &rhs);
        Ok(())
    })?;
    for_each_tuple(&[(&a, &b), (&b, &c), (&c, &d), (&d, &a)], SAMPLES, |rs| {
        let (f, g, f2, g2) = (&rs[0], &rs[1], &rs[2], &rs[3]);
        let lhs = tensor(&compose(g, f)?, &compose(g2, f2)?);
        let rhs = compose(&tensor(g, g2), &tensor(f, f2))?;
        report.check_eq("tensor.interchange", &lhs, &rhs);
        Ok(())
    })?;
    for_each_tuple(&[(&a, &b), (&b, &c), (&c, &d)], SAMPLES, |rs| {
        let (r, s, t) = (&rs[0], &rs[1], &rs[2]);
        let lhs = compose(&associator(&b, &c, &d), &tensor(&tensor(r, s), t))?;
        let rhs = compose(&tensor(r, &tensor(s, t)), &associator(&a, &b, &c))?;
        report.check_eq("tensor.associator_natural", &lhs, &rhs);
        Ok(())
    })?;

    let sigma = symmetry(&a, &b);
    report.check_eq(
        "symmetry.involution",
        &compose(&symmetry(&b, &a), &sigma)?,
        &FinRel::identity(&a.product(&b)),
    );
    report.check_eq("symmetry.unitary", &sigma.dagger(), &symmetry(&b, &a));
    let alpha = associator(&a, &b, &c);
    report.check_eq(
        "tensor.associator_unitary",
        &compose(&alpha.dagger(), &alpha)?,
        &FinRel::identity(alpha.src()),
    );
    // (A ⊗ 1) ⊗ B ⇸ A ⊗ (1 ⊗ B) ⇸ A ⊗ B equals ρ ⊗ id.
    let triangle = compose(&tensor(&id_a, &left_unitor(&b)), &associator(&a, &one, &b))?;
    report.check_eq(
        "tensor.triangle",
        &triangle,
        &tensor(&right_unitor(&a), &FinRel::identity(&b)),
    );

    let snake_left = chain(&[
        &right_unitor(&a).dagger(),
        &tensor(&id_a, &cap(&a)),
        &associator(&a, &a, &a).dagger(),
        &tensor(&cup(&a), &id_a),
        &left_unitor(&a),
    ])?;
    report.check_eq("compact.snake_left", &snake_left, &id_a);
    let snake_right = chain(&[
        &left_unitor(&a).dagger(),
        &tensor(&cap(&a), &id_a),
        &associator(&a, &a, &a),
        &tensor(&id_a, &cup(&a)),
        &right_unitor(&a),
    ])?;
    report.check_eq("compact.snake_right", &snake_right, &id_a);
    report.check_eq("compact.cup_is_dagger_cap", &cup(&a), &cap(&a).dagger());
    report.check_eq(
        "compact.cap_symmetric",
        &compose(&symmetry(&a, &a), &cap(&a))?,
        &cap(&a),
    );

    report.check("curry.bijection", curry_bijection_check(&a, &b, &c), || {
        (format!("{:?}", c.product(&a)), format!("{:?}", b))
    });
    for_each_tuple(&[(&c.product(&a), &b)], SAMPLES, |rs| {
        let r = &rs[0];
        let curried = curry(r, &c, &a)?;
        let categorical = super::structure::curry_via_cap(r, &c, &a)?;
        report.check_eq("curry.categorical", &curried, &categorical);
        Ok(())
    })?;
    Ok(report)
}

fn bialgebra(n: usize) -> Result<LawReport, RelError> {
    let (a, b, c, d) = carriers(n);
    let mut report = LawReport::new();
    let zero = FinSet::empty();
    let id_a = FinRel::identity(&a);

    let bp = biproduct(&a, &b);
    report.check_eq(
        "biproduct.proj_inj_left",
        &compose(&bp.outl, &bp.inl)?,
        &id_a,
    );
    report.check_eq(
        "biproduct.proj_inj_right",
        &compose(&bp.outr, &bp.inr)?,
        &FinRel::identity(&b),
    );
    report.check_eq(
        "biproduct.proj_inj_zero",
        &compose(&bp.outr, &bp.inl)?,
        &FinRel::empty(&a, &b),
    );
    report.check_eq(
        "biproduct.proj_inj_zero",
        &compose(&bp.outl, &bp.inr)?,
        &FinRel::empty(&b, &a),
    );
    let sum = compose(&bp.inl, &bp.outl)?.union(&compose(&bp.inr, &bp.outr)?)?;
    report.check_eq("biproduct.sum_id", &sum, &FinRel::identity(&bp.set));

    let nabla = codiag(&a);
    let delta = diag(&a);
    let aa = biproduct(&a, &a);
    report.check_eq(
        "biproduct.codiag_copairs",
        &compose(&nabla, &aa.inl)?,
        &id_a,
    );
    report.check_eq(
        "biproduct.codiag_copairs",
        &compose(&nabla, &aa.inr)?,
        &id_a,
    );
    report.check_eq("biproduct.diag_dagger", &delta, &nabla.dagger());

    let lhs = compose(&delta, &nabla)?;
    let rhs = chain(&[
        &direct_sum(&delta, &delta),
        &sum_middle_swap(&a, &a, &a, &a),
        &direct_sum(&nabla, &nabla),
    ])?;
    report.check_eq("bialgebra.diagram", &lhs, &rhs);

    // Unit and counit are the empty relations through the zero object.
    let u = FinRel::empty(&zero, &a);
    let counit = FinRel::empty(&a, &zero);
    let left_zero = FinRel::graph(&zero.sum(&a), &a, |k| k);
    report.check_eq(
        "bialgebra.unit",
        &compose(&nabla, &direct_sum(&u, &id_a))?,
        &left_zero,
    );
    report.check_eq(
        "bialgebra.counit",
        &compose(&direct_sum(&counit, &id_a), &delta)?,
        &left_zero.dagger(),
    );
    report.check_eq(
        "bialgebra.unit_counit",
        &compose(&counit, &u)?,
        &FinRel::identity(&zero),
    );
    report.check_eq(
        "bialgebra.codiag_assoc",
        &compose(&nabla, &direct_sum(&nabla, &id_a))?,
        &chain(&[
            &sum_associator(&a, &a, &a),
            &direct_sum(&id_a, &nabla),
            &nabla,
        ])?,
    );
    report.check_eq(
        "bialgebra.codiag_comm",
        &compose(&nabla, &sum_swap(&a, &a))?,
        &nabla,
    );

    for_each_tuple(&[(&a, &b)], SAMPLES, |rs| {
        let r = &rs[0];
        report.check_eq(
            "biproduct.codiag_natural",
            &compose(r, &nabla)?,
            &compose(&codiag(&b), &direct_sum(r, r))?,
        );
        report.check_eq(
            "biproduct.diag_natural",
            &compose(&diag(&b), r)?,
            &compose(&direct_sum(r, r), &delta)?,
        );
        Ok(())
    })?;
    for_each_tuple(&[(&a, &b), (&c, &d)], SAMPLES, |rs| {
        let (r, s) = (&rs[0], &rs[1]);
        report.check_eq(
            "biproduct.dagger_sum",
            &direct_sum(r, s).dagger(),
            &direct_sum(&r.dagger(), &s.dagger()),
        );
        Ok(())
    })?;
    for_each_tuple(&[(&a, &b), (&b, &c), (&c, &d), (&d, &a)], SAMPLES, |rs| {
        let (f, g, f2, g2) = (&rs[0], &rs[1], &rs[2], &rs[3]);
        let lhs = direct_sum(&compose(g, f)?, &compose(g2, f2)?);
        let rhs = compose(&direct_sum(g, g2), &direct_sum(f, f2))?;
        report.check_eq("biproduct.sum_functor", &lhs, &rhs);
        Ok(())
    })?;
    Ok(report)
}

/// `(w, k)` on `!A ⊗ !B` built from the comonoids on each side.
fn tensor_comonoid(xa: &BangObject, xb: &BangObject) -> Result<(FinRel, FinRel), RelError> {
    let wa = bang::multiplication(xa).dagger();
    let wb = bang::multiplication(xb).dagger();
    let ka = bang::unit(xa).dagger();
    let kb = bang::unit(xb).dagger();
    let w = compose(
        &tensor_middle_swap(xa.set(), xa.set(), xb.set(), xb.set()),
        &tensor(&wa, &wb),
    )?;
    let k = compose(&left_unitor(&FinSet::unit()), &tensor(&ka, &kb))?;
    Ok((w, k))
}

fn comonad(n: usize, degree: usize) -> Result<LawReport, RelError> {
    let (a, b, c, _) = carriers(n);
    let mut report = LawReport::new();
    let xa = BangObject::new(&a, degree);
    let xaa = BangObject::nested(&xa, degree);
    let xaaa = BangObject::nested(&xaa, degree);
    let xb = BangObject::new(&b, degree);
    let xbb = BangObject::nested(&xb, degree);
    let xc = BangObject::new(&c, degree);
    let id = FinRel::identity(xa.set());

    let delta = bang::delta(&xa, &xaa)?;
    let delta2 = bang::delta(&xaa, &xaaa)?;
    let eps = bang::counit(&xa);
    report.check_eq(
        "comonad.counit_left",
        &delta.then(&bang::counit(&xaa))?,
        &id,
    );
    report.check_eq(
        "comonad.counit_right",
        &delta.then(&bang_functor(&eps, &xaa, &xa)?)?,
        &id,
    );
    report.check_eq(
        "comonad.coassoc",
        &delta.then(&delta2)?,
        &delta.then(&bang_functor(&delta, &xaa, &xaaa)?)?,
    );
    report.check_eq(
        "comonad.functor_identity",
        &bang_functor(&FinRel::identity(&a), &xa, &xa)?,
        &id,
    );

    let delta_b = bang::delta(&xb, &xbb)?;
    let eps_b = bang::counit(&xb);
    for_each_tuple(&[(&a, &b)], BANG_SAMPLES, |rs| {
        let r = &rs[0];
        let br = bang_functor(r, &xa, &xb)?;
        report.check_eq("comonad.counit_natural", &br.then(&eps_b)?, &eps.then(r)?);
        let lhs = br.then(&delta_b)?;
        let rhs = delta.then(&bang_functor(&br, &xaa, &xbb)?)?;
        report.check_eq("comonad.delta_natural", &lhs, &rhs);
        Ok(())
    })?;
    for_each_tuple(&[(&a, &b), (&b, &c)], BANG_SAMPLES, |rs| {
        let (f, g) = (&rs[0], &rs[1]);
        let whole = bang_functor(&compose(g, f)?, &xa, &xc)?;
        let parts = bang_functor(f, &xa, &xb)?.then(&bang_functor(g, &xb, &xc)?)?;
        report.check_eq("comonad.functor_compose", &whole, &parts);
        Ok(())
    })?;

    // φ defined through projections versus φ as the coextension of ε ⊗ ε.
    let xab = BangObject::new(&a.product(&b), degree);
    let phi = bang::phi(&xa, &xb, &xab)?;
    let (w, k) = tensor_comonoid(&xa, &xb)?;
    let co = coextend(&tensor(&eps, &eps_b), &w, &k, &xab)?;
    report.check_eq("comonad.phi_coextension", &phi, &co);

    let one = FinSet::unit();
    let x1 = BangObject::new(&one, degree);
    let co_unit = coextend(
        &FinRel::identity(&one),
        &left_unitor(&one).dagger(),
        &FinRel::identity(&one),
        &x1,
    )?;
    report.check_eq("comonad.phi_unit", &bang::phi_unit(&x1)?, &co_unit);

    let wa = bang::multiplication(&xa).dagger();
    let ka = bang::unit(&xa).dagger();
    report.check_eq(
        "comonad.coextend_counit",
        &coextend(&eps, &wa, &ka, &xa)?,
        &id,
    );
    Ok(report)
}

fn comonoid(n: usize, degree: usize) -> Result<LawReport, RelError> {
    let (a, b, _, _) = carriers(n);
    let mut report = LawReport::new();
    let xa = BangObject::new(&a, degree);
    let x = xa.set();
    let id = FinRel::identity(x);
    let m = bang::multiplication(&xa);
    let e = bang::unit(&xa);
    let w = m.dagger();
    let k = e.dagger();

    report.check_eq(
        "comonoid.counit_left",
        &chain(&[&w, &tensor(&k, &id), &left_unitor(x)])?,
        &id,
    );
    report.check_eq(
        "comonoid.counit_right",
        &chain(&[&w, &tensor(&id, &k), &right_unitor(x)])?,
        &id,
    );
    report.check_eq(
        "comonoid.coassoc",
        &chain(&[&w, &tensor(&w, &id), &associator(x, x, x)])?,
        &chain(&[&w, &tensor(&id, &w)])?,
    );
    report.check_eq("comonoid.cocomm", &w.then(&symmetry(x, x))?, &w);

    report.check_eq(
        "monoid.unit_left",
        &tensor(&e, &id).then(&m)?,
        &left_unitor(x),
    );
    report.check_eq(
        "monoid.unit_right",
        &tensor(&id, &e).then(&m)?,
        &right_unitor(x),
    );
    report.check_eq(
        "monoid.assoc",
        &tensor(&m, &id).then(&m)?,
        &chain(&[&associator(x, x, x), &tensor(&id, &m), &m])?,
    );
    report.check_eq("monoid.comm", &symmetry(x, x).then(&m)?, &m);
    let laws = RelMonoid::new(x, m.clone(), e.clone())?.laws_check();
    report.check("monoid.pointwise", laws.is_ok(), || match laws {
        Err(RelError::LawViolation { law, detail }) => (law, detail),
        _ => (String::new(), String::new()),
    });

    report.check_eq(
        "comonoid.coextend_counit",
        &coextend(&bang::counit(&xa), &w, &k, &xa)?,
        &id,
    );

    let xb = BangObject::new(&b, degree);
    let wb = bang::multiplication(&xb).dagger();
    let kb = bang::unit(&xb).dagger();
    for_each_tuple(&[(&a, &b)], BANG_SAMPLES, |rs| {
        let br = bang_functor(&rs[0], &xa, &xb)?;
        report.check_eq(
            "comonoid.natural_split",
            &br.then(&wb)?,
            &w.then(&tensor(&br, &br))?,
        );
        report.check_eq("comonoid.natural_erase", &br.then(&kb)?, &k);
        Ok(())
    })?;
    Ok(report)
}

fn seely(n: usize, degree: usize) -> Result<LawReport, RelError> {
    let (a, b, _, _) = carriers(n);
    let mut report = LawReport::new();
    let xa = BangObject::new(&a, degree);
    let xb = BangObject::new(&b, degree);
    let ab = a.sum(&b);
    let xs = BangObject::new(&ab, degree);
    let (frag, merge) = bang::seely_merge(&xa, &xb, &xs)?;
    let split = merge.dagger();

    // (!ι₁ ⊗ !ι₂) ; m on the full tensor, then cut down to the fragment.
    let bp = biproduct(&a, &b);
    let composite = tensor(
        &bang_functor(&bp.inl, &xa, &xs)?,
        &bang_functor(&bp.inr, &xb, &xs)?,
    )
    .then(&bang::multiplication(&xs))?;
    let cols: Vec<usize> = (0..xs.len()).collect();
    let composite = composite.submatrix(&frag.embedding(), frag.set(), &cols, xs.set());
    report.check_eq("seely.merge_matches_composite", &merge, &composite);

    report.check_eq(
        "seely.iso_left",
        &merge.then(&split)?,
        &FinRel::identity(frag.set()),
    );
    report.check_eq(
        "seely.iso_right",
        &split.then(&merge)?,
        &FinRel::identity(xs.set()),
    );

    let na = a.len();
    for (z, elem) in xs.elems().iter().enumerate() {
        let tagged: Multiset<Tagged<usize, usize>> = elem.map(|&i| {
            if i < na {
                Tagged::Left(i)
            } else {
                Tagged::Right(i - na)
            }
        });
        let (left, right) = multiset::seely_split(&tagged);
        let expected = xa
            .index_of(&left)
            .zip(xb.index_of(&right))
            .and_then(|(i, j)| frag.index_of(i, j));
        let row: Vec<usize> = split.row(z).collect();
        report.check(
            "seely.split_matches_elementwise",
            expected.is_some() && row == expected.into_iter().collect::<Vec<_>>(),
            || (xs.set().name(z).to_string(), format!("{row:?}")),
        );
    }

    let x0 = BangObject::new(&FinSet::empty(), degree);
    let one = FinSet::unit();
    let u = FinRel::graph(&one, x0.set(), |_| 0);
    report.check_eq(
        "seely.unit_iso",
        &u.then(&u.dagger())?,
        &FinRel::identity(&one),
    );
    report.check_eq(
        "seely.unit_iso",
        &u.dagger().then(&u)?,
        &FinRel::identity(x0.set()),
    );

    for_each_tuple(&[(&a, &a), (&b, &b)], BANG_SAMPLES, |rs| {
        let (f, g) = (&rs[0], &rs[1]);
        let lhs = merge.then(&bang_functor(&direct_sum(f, g), &xs, &xs)?)?;
        let rhs = tensor_on(
            &bang_functor(f, &xa, &xa)?,
            &bang_functor(g, &xb, &xb)?,
            &frag,
            &frag,
        )?
        .then(&merge)?;
        report.check_eq("seely.natural", &lhs, &rhs);
        Ok(())
    })?;
    Ok(report)
}

/// The right-hand side of the second differential law:
/// `A ≅ A ⊗ 1 ⇸ !A ⊗ !A ⇸ !!A ⊗ !!A ⇸ !!A`.
fn creation_delta_composite(
    a: &FinSet,
    xa: &BangObject,
    xaa: &BangObject,
) -> Result<FinRel, RelError> {
    chain(&[
        &right_unitor(a).dagger(),
        &tensor(&bang::creation(xa), &bang::unit(xa)),
        &tensor(&bang::creation(xaa), &bang::delta(xa, xaa)?),
        &bang::multiplication(xaa),
    ])
}

fn differential(n: usize, degree: usize) -> Result<LawReport, RelError> {
    let (a, b, _, _) = carriers(n);
    let mut report = LawReport::new();
    let xa = BangObject::new(&a, degree);
    let xaa = BangObject::nested(&xa, degree);
    let xb = BangObject::new(&b, degree);
    let xab = BangObject::new(&a.product(&b), degree);
    let eta = bang::creation(&xa);
    let eps = bang::counit(&xa);

    report.check_eq(
        "differential.creation_counit",
        &eta.then(&eps)?,
        &FinRel::identity(&a),
    );
    report.check_eq(
        "differential.creation_delta",
        &eta.then(&bang::delta(&xa, &xaa)?)?,
        &creation_delta_composite(&a, &xa, &xaa)?,
    );
    let phi = bang::phi(&xa, &xb, &xab)?;
    report.check_eq(
        "differential.creation_phi",
        &tensor(&eta, &FinRel::identity(xb.set())).then(&phi)?,
        &tensor(&FinRel::identity(&a), &bang::counit(&xb)).then(&bang::creation(&xab))?,
    );
    report.check_eq(
        "differential.creation_is_dagger_counit",
        &eta,
        &eps.dagger(),
    );

    let eta_b = bang::creation(&xb);
    for_each_tuple(&[(&a, &b)], BANG_SAMPLES, |rs| {
        let r = &rs[0];
        report.check_eq(
            "differential.creation_natural",
            &r.then(&eta_b)?,
            &eta.then(&bang_functor(r, &xa, &xb)?)?,
        );
        Ok(())
    })?;
    Ok(report)
}

fn singletons(n: usize, degree: usize) -> Result<LawReport, RelError> {
    let (a, b, _, _) = carriers(n);
    let mut report = LawReport::new();
    let xa = BangObject::new(&a, degree);
    let xaa = BangObject::nested(&xa, degree);
    let xb = BangObject::new(&b, degree);
    let xab = BangObject::new(&a.product(&b), degree);
    let eta = bang::creation(&xa);

    // a = a' iff [a] = [a'].
    let embed = eta.then(&eta.dagger())?;
    for x in 0..a.len() {
        for y in 0..a.len() {
            let by_multiset = Multiset::singleton(x) == Multiset::singleton(y);
            let ok = embed.get(x, y) == by_multiset && by_multiset == (x == y);
            report.check("singletons.embedding", ok, || {
                (a.name(x).to_string(), a.name(y).to_string())
            });
        }
    }

    // [a] = μ(s) iff s = [a] :: t with μ(t) = [].
    let lhs = eta.then(&bang::delta(&xa, &xaa)?)?;
    let rhs = creation_delta_composite(&a, &xa, &xaa)?;
    for x in 0..a.len() {
        for (j, s) in xaa.elems().iter().enumerate() {
            let blocks: Multiset<Multiset<usize>> = s.map(|&i| xa.elem(i).clone());
            let direct = blocks.mu() == Multiset::singleton(x);
            let witnessed = match multiset::singleton_mu_witness(&blocks, &x) {
                Some(t) => t.mu().is_empty() && t.insert(Multiset::singleton(x)) == blocks,
                None => false,
            };
            let ok = lhs.get(x, j) == direct && rhs.get(x, j) == direct && witnessed == direct;
            report.check("singletons.mu", ok, || {
                (a.name(x).to_string(), xaa.set().name(j).to_string())
            });
        }
    }

    // [a] = M(π₁)(ps) and bs = M(π₂)(ps) iff bs = [b] and ps = [(a, b)].
    let phi = bang::phi(&xa, &xb, &xab)?;
    let lhs = tensor(&eta, &FinRel::identity(xb.set())).then(&phi)?;
    let rhs = tensor(&FinRel::identity(&a), &bang::counit(&xb)).then(&bang::creation(&xab))?;
    let nb = b.len();
    for x in 0..a.len() {
        for (i, bs) in xb.elems().iter().enumerate() {
            let row = x * xb.len() + i;
            for (j, ps) in xab.elems().iter().enumerate() {
                let pairs: Multiset<Pair<usize, usize>> = ps.map(|&p| Pair::new(p / nb, p % nb));
                let fst = pairs.map(|p| p.fst);
                let snd = pairs.map(|p| p.snd);
                let left_reading = fst == Multiset::singleton(x) && snd == *bs;
                let right_reading = bs
                    .is_singleton()
                    .is_some_and(|&y| pairs == Multiset::singleton(Pair::new(x, y)));
                let witnessed = match multiset::singleton_proj_witness(&pairs, &x) {
                    Some(y) => {
                        *bs == Multiset::singleton(y)
                            && pairs == Multiset::singleton(Pair::new(x, y))
                    }
                    None => false,
                };
                let ok = left_reading == right_reading
                    && witnessed == left_reading
                    && lhs.get(row, j) == left_reading
                    && rhs.get(row, j) == right_reading;
                report.check("singletons.projection", ok, || {
                    (
                        lhs.src().name(row).to_string(),
                        xab.set().name(j).to_string(),
                    )
                });
            }
        }
    }
    Ok(report)
}

fn refinement_transfer(n: usize, degree: usize) -> Result<LawReport, RelError> {
    refinement_transfer_check(n, degree)
}

/// `m ; w = (w ⊗ w) ; (id ⊗ c ⊗ id) ; (m ⊗ m)` on the pairs of `!A ⊗ !A`
/// with total size at most `degree`, plus a cell-by-cell comparison with
/// [`multiset::refine`]. Not bounded by [`SUITE_LIMIT`].
pub fn refinement_transfer_check(n: usize, degree: usize) -> Result<LawReport, RelError> {
    let a = FinSet::letters('a', n);
    let mut report = LawReport::new();
    let xa = BangObject::new(&a, degree);
    let full = ProductFragment::full(xa.set(), xa.set());
    let frag = xa.degree_fragment(&xa, degree);
    let size = |k: usize| {
        let (i, j) = full.pair(k);
        xa.elem(i).len() + xa.elem(j).len()
    };
    let four =
        ProductFragment::filtered(full.set(), full.set(), |u, v| size(u) + size(v) <= degree);

    let m = bang::multiplication(&xa);
    let w = m.dagger();
    let all: Vec<usize> = (0..xa.len()).collect();
    let emb = frag.embedding();
    let m_frag = m.submatrix(&emb, frag.set(), &all, xa.set());
    let w_frag = w.submatrix(&all, xa.set(), &emb, frag.set());
    let lhs = m_frag.then(&w_frag)?;

    let ww = tensor_on(&w, &w, &frag, &four)?;
    let middle = FinRel::from_images(four.set(), four.set(), |k| {
        let (u, v) = four.pair(k);
        let ((x1, x2), (y1, y2)) = (full.pair(u), full.pair(v));
        let left = full.index_of(x1, y1).expect("full product");
        let right = full.index_of(x2, y2).expect("full product");
        four.index_of(left, right)
    });
    let mm = tensor_on(&m, &m, &four, &frag)?;
    let rhs = chain(&[&ww, &middle, &mm])?;
    report.check_eq("refinement.bialgebra", &lhs, &rhs);

    for u in 0..frag.len() {
        let (ia, ib) = frag.pair(u);
        let (as_, bs) = (xa.elem(ia), xa.elem(ib));
        for v in 0..frag.len() {
            let (ic, id) = frag.pair(v);
            let (cs, ds) = (xa.elem(ic), xa.elem(id));
            let square = multiset::refine(as_, bs, cs, ds);
            let sum_equal = as_.append(bs) == cs.append(ds);
            let ok = square
                .as_ref()
                .is_some_and(|sq| sq.satisfies(as_, bs, cs, ds))
                == sum_equal
                && square.is_some() == sum_equal
                && rhs.get(u, v) == sum_equal;
            report.check("refinement.cells_match_refine", ok, || {
                (
                    frag.set().name(u).to_string(),
                    frag.set().name(v).to_string(),
                )
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!(matches!(
            "nope".parse::<Suite>(),
            Err(RelError::UnknownSuite(_))
        ));
    }

    #[test]
    fn cost_guard() {
        assert!(matches!(
            law_suite(Suite::Kleisli, 4, 1),
            Err(RelError::CostGuardExceeded(_))
        ));
        assert!(matches!(
            law_suite(Suite::Comonad, 1, 4),
            Err(RelError::CostGuardExceeded(_))
        ));
        assert!(matches!(
            law_suite(Suite::Seely, 1, 0),
            Err(RelError::DegreeRequired(_))
        ));
        assert!(law_suite(Suite::Kleisli, 1, 0).is_ok());
    }

    #[test]
    fn report_format() {
        let mut report = LawReport::new();
        let a = FinSet::letters('a', 2);
        report.check_eq("z.same", &FinRel::identity(&a), &FinRel::identity(&a));
        report.check_eq("a.differs", &FinRel::identity(&a), &FinRel::full(&a, &a));
        assert!(!report.all_pass());
        assert_eq!(
            report.to_string(),
            "LAW a.differs FAIL counterexample: a , b\nLAW z.same PASS\n"
        );
        assert_eq!(report.get("z.same").unwrap().instances, 1);
    }

    #[test]
    fn exhaustive_tuples_cover_everything() {
        let a = FinSet::letters('a', 2);
        let b = FinSet::letters('p', 1);
        let mut seen = 0;
        for_each_tuple(&[(&a, &b), (&b, &a)], SAMPLES, |_| {
            seen += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(seen, 16);
        let c = FinSet::letters('x', 3);
        let mut sampled = 0;
        for_each_tuple(&[(&c, &c)], SAMPLES, |_| {
            sampled += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(sampled, SAMPLES);
    }

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Kleisli, Suite::DaggerCompact, Suite::Bialgebra] {
            for n in 0..=2 {
                let report = law_suite(suite, n, 0).unwrap();
                assert!(report.all_pass(), "{suite} at {n}:\n{report}");
            }
        }
        for suite in [
            Suite::Comonad,
            Suite::Comonoid,
            Suite::Seely,
            Suite::Differential,
            Suite::Singletons,
            Suite::RefinementTransfer,
        ] {
            let report = law_suite(suite, 1, 2).unwrap();
            assert!(report.all_pass(), "{suite}:\n{report}");
        }
    }

    #[test]
    fn broken_relation_is_caught() {
        // Dropping one cell of δ must break the counit law with a concrete cell.
        let a = FinSet::letters('a', 1);
        let xa = BangObject::new(&a, 2);
        let xaa = BangObject::nested(&xa, 2);
        let delta = bang::delta(&xa, &xaa).unwrap();
        let target = xaa.set().index_of("[[a]]").unwrap();
        let row = xa.set().index_of("[a]").unwrap();
        let broken = FinRel::from_fn(xa.set(), xaa.set(), |i, j| {
            delta.get(i, j) && !(i == row && j == target)
        });
        let mut report = LawReport::new();
        report.check_eq(
            "comonad.counit_left",
            &broken.then(&bang::counit(&xaa)).unwrap(),
            &FinRel::identity(xa.set()),
        );
        assert_eq!(
            report.get("comonad.counit_left").unwrap().counterexample,
            Some(("[a]".to_string(), "[a]".to_string()))
        );
    }

    #[test]
    fn refinement_beyond_the_suite_guard() {
        let report = refinement_transfer_check(2, 4).unwrap();
        assert!(report.all_pass(), "{report}");
    }
}
