//! Monoidal, compact and biproduct structure of finite relations.
//!
//! Duals are self-duals: the cap `1 ⇸ A ⊗ A` relates `*` to every `(a, a)`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FinRel, FinSet, RelError};

pub fn tensor_unit() -> FinSet {
    FinSet::unit()
}

/// `r ⊗ s : A ⊗ C ⇸ B ⊗ D`.
pub fn tensor(r: &FinRel, s: &FinRel) -> FinRel {
    let src = r.src().product(s.src());
    let dst = r.dst().product(s.dst());
    let (nc, nd) = (s.src().len(), s.dst().len());
    FinRel::from_images(&src, &dst, |row| {
        let (i, k) = (row / nc.max(1), row % nc.max(1));
        let rs: Vec<usize> = r.row(i).collect();
        let ss: Vec<usize> = s.row(k).collect();
        rs.into_iter()
            .flat_map(move |j| ss.clone().into_iter().map(move |l| j * nd + l))
    })
}

/// A subset of `left × right` with its own index order (row-major among
/// the kept pairs).
#[derive(Clone)]
pub struct ProductFragment {
    left: FinSet,
    right: FinSet,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    set: FinSet,
}

impl ProductFragment {
    pub fn full(left: &FinSet, right: &FinSet) -> Self {
        ProductFragment::filtered(left, right, |_, _| true)
    }

    pub fn filtered(
        left: &FinSet,
        right: &FinSet,
        mut keep: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        let mut pairs = Vec::new();
        for i in 0..left.len() {
            for j in 0..right.len() {
                if keep(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        let index = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let names = pairs
            .iter()
            .map(|&(i, j)| format!("({},{})", left.name(i), right.name(j)))
            .collect();
        ProductFragment {
            left: left.clone(),
            right: right.clone(),
            pairs,
            index,
            set: FinSet::from_distinct(names),
        }
    }

    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn left(&self) -> &FinSet {
        &self.left
    }

    pub fn right(&self) -> &FinSet {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    /// Positions of the kept pairs inside the full product `left.product(right)`.
    pub fn embedding(&self) -> Vec<usize> {
        let n = self.right.len();
        self.pairs.iter().map(|&(i, j)| i * n + j).collect()
    }
}

/// `r ⊗ s` restricted to the given fragments of its source and target.
pub fn tensor_on(
    r: &FinRel,
    s: &FinRel,
    src: &ProductFragment,
    dst: &ProductFragment,
) -> Result<FinRel, RelError> {
    src.left.expect_same(r.src())?;
    src.right.expect_same(s.src())?;
    dst.left.expect_same(r.dst())?;
    dst.right.expect_same(s.dst())?;
    Ok(FinRel::from_images(&src.set, &dst.set, |k| {
        let (i, j) = src.pair(k);
        let mut out = Vec::new();
        for x in r.row(i) {
            for y in s.row(j) {
                if let Some(t) = dst.index_of(x, y) {
                    out.push(t);
                }
            }
        }
        out
    }))
}

/// `σ : A ⊗ B ⇸ B ⊗ A`.
pub fn symmetry(a: &FinSet, b: &FinSet) -> FinRel {
    let (na, nb) = (a.len(), b.len());
    FinRel::graph(&a.product(b), &b.product(a), |k| {
        let (i, j) = (k / nb, k % nb);
        j * na + i
    })
}

/// `α : (A ⊗ B) ⊗ C ⇸ A ⊗ (B ⊗ C)`.
pub fn associator(a: &FinSet, b: &FinSet, c: &FinSet) -> FinRel {
    let src = a.product(b).product(c);
    let dst = a.product(&b.product(c));
    let (nb, nc) = (b.len(), c.len());
    FinRel::graph(&src, &dst, |k| {
        let (ab, z) = (k / nc, k % nc);
        let (x, y) = (ab / nb, ab % nb);
        x * nb * nc + y * nc + z
    })
}

/// `λ : 1 ⊗ A ⇸ A`.
pub fn left_unitor(a: &FinSet) -> FinRel {
    FinRel::graph(&tensor_unit().product(a), a, |k| k)
}

/// `ρ : A ⊗ 1 ⇸ A`.
pub fn right_unitor(a: &FinSet) -> FinRel {
    FinRel::graph(&a.product(&tensor_unit()), a, |k| k)
}

/// `(A ⊗ B) ⊗ (C ⊗ D) ⇸ (A ⊗ C) ⊗ (B ⊗ D)`.
pub fn tensor_middle_swap(a: &FinSet, b: &FinSet, c: &FinSet, d: &FinSet) -> FinRel {
    let src = a.product(b).product(&c.product(d));
    let dst = a.product(c).product(&b.product(d));
    let (nb, nc, nd) = (b.len(), c.len(), d.len());
    FinRel::graph(&src, &dst, |k| {
        let (ab, cd) = (k / (nc * nd), k % (nc * nd));
        let (x, y) = (ab / nb, ab % nb);
        let (z, w) = (cd / nd, cd % nd);
        (x * nc + z) * (nb * nd) + (y * nd + w)
    })
}

/// `1 ⇸ A ⊗ A`, relating `*` to each diagonal pair.
pub fn cap(a: &FinSet) -> FinRel {
    let n = a.len();
    FinRel::from_images(&tensor_unit(), &a.product(a), |_| {
        (0..n).map(move |i| i * n + i)
    })
}

/// `A ⊗ A ⇸ 1`, the dagger of the cap.
pub fn cup(a: &FinSet) -> FinRel {
    let n = a.len();
    FinRel::from_fn(&a.product(a), &tensor_unit(), |k, _| k / n == k % n)
}

/// Moves `A` across: `(C ⊗ A ⇸ B)` to `(C ⇸ A ⊗ B)`.
pub fn curry(r: &FinRel, c: &FinSet, a: &FinSet) -> Result<FinRel, RelError> {
    c.product(a).expect_same(r.src())?;
    let b = r.dst().clone();
    let (na, nb) = (a.len(), b.len());
    Ok(FinRel::from_images(c, &a.product(&b), |x| {
        let mut out = Vec::new();
        for y in 0..na {
            for z in r.row(x * na + y) {
                out.push(y * nb + z);
            }
        }
        out
    }))
}

/// Inverse of [`curry`].
pub fn uncurry(r: &FinRel, a: &FinSet, b: &FinSet) -> Result<FinRel, RelError> {
    a.product(b).expect_same(r.dst())?;
    let c = r.src().clone();
    let nb = b.len();
    Ok(FinRel::from_fn(&c.product(a), b, |k, z| {
        let (x, y) = (k / a.len(), k % a.len());
        r.get(x, y * nb + z)
    }))
}

/// `curry` through the cap: `C ≅ C ⊗ 1 ⇸ C ⊗ (A ⊗ A) ≅ (C ⊗ A) ⊗ A ⇸ B ⊗ A ≅ A ⊗ B`.
pub fn curry_via_cap(r: &FinRel, c: &FinSet, a: &FinSet) -> Result<FinRel, RelError> {
    let b = r.dst();
    let id_c = FinRel::identity(c);
    let id_a = FinRel::identity(a);
    super::chain(&[
        &right_unitor(c).dagger(),
        &tensor(&id_c, &cap(a)),
        &associator(c, a, a).dagger(),
        &tensor(r, &id_a),
        &symmetry(b, a),
    ])
}

/// Checks that re-indexing `Rel(C ⊗ A, B) → Rel(C, A ⊗ B)` is a bijection
/// agreeing with the cap construction. Every matrix is tried when there
/// are at most 16 cells, otherwise a fixed sample of 256.
pub fn curry_bijection_check(a: &FinSet, b: &FinSet, c: &FinSet) -> bool {
    let (na, nb, nc) = (a.len(), b.len(), c.len());
    let cells = na * nb * nc;

    // Cell ((x, y), z) goes to cell (x, (y, z)); every target cell is hit once.
    let mut hit = vec![false; cells];
    for x in 0..nc {
        for y in 0..na {
            for z in 0..nb {
                let target = x * (na * nb) + (y * nb + z);
                if hit[target] {
                    return false;
                }
                hit[target] = true;
            }
        }
    }
    if !hit.iter().all(|&h| h) {
        return false;
    }

    let src = c.product(a);
    let round_trip = |r: &FinRel| -> bool {
        let Ok(curried) = curry(r, c, a) else {
            return false;
        };
        let Ok(back) = uncurry(&curried, a, b) else {
            return false;
        };
        let Ok(categorical) = curry_via_cap(r, c, a) else {
            return false;
        };
        back == *r && categorical == curried && curried.count() == r.count()
    };
    if cells <= 16 {
        FinRel::all(&src, b).all(|r| round_trip(&r))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6375_7272);
        (0..256).all(|_| round_trip(&FinRel::random(&src, b, &mut rng)))
    }
}

/// `A + B` with its injections and projections.
pub struct Biproduct {
    pub set: FinSet,
    pub inl: FinRel,
    pub inr: FinRel,
    pub outl: FinRel,
    pub outr: FinRel,
}

pub fn biproduct(a: &FinSet, b: &FinSet) -> Biproduct {
    let set = a.sum(b);
    let inl = FinRel::graph(a, &set, |i| i);
    let inr = FinRel::graph(b, &set, |j| a.len() + j);
    Biproduct {
        outl: inl.dagger(),
        outr: inr.dagger(),
        set,
        inl,
        inr,
    }
}

/// `∇ : A + A ⇸ A`, the copairing of two identities.
pub fn codiag(a: &FinSet) -> FinRel {
    let n = a.len();
    FinRel::graph(&a.sum(a), a, |k| k % n.max(1))
}

/// `Δ : A ⇸ A + A`.
pub fn diag(a: &FinSet) -> FinRel {
    codiag(a).dagger()
}

/// `r + s : A + C ⇸ B + D`.
pub fn direct_sum(r: &FinRel, s: &FinRel) -> FinRel {
    let src = r.src().sum(s.src());
    let dst = r.dst().sum(s.dst());
    let (na, nb) = (r.src().len(), r.dst().len());
    FinRel::from_images(&src, &dst, |k| -> Vec<usize> {
        if k < na {
            r.row(k).collect()
        } else {
            s.row(k - na).map(|j| nb + j).collect()
        }
    })
}

/// `A + B ⇸ B + A`.
pub fn sum_swap(a: &FinSet, b: &FinSet) -> FinRel {
    let (na, nb) = (a.len(), b.len());
    FinRel::graph(
        &a.sum(b),
        &b.sum(a),
        |k| if k < na { nb + k } else { k - na },
    )
}

/// `(A + B) + C ⇸ A + (B + C)`; indices line up.
pub fn sum_associator(a: &FinSet, b: &FinSet, c: &FinSet) -> FinRel {
    FinRel::graph(&a.sum(b).sum(c), &a.sum(&b.sum(c)), |k| k)
}

/// `(A + B) + (C + D) ⇸ (A + C) + (B + D)`.
pub fn sum_middle_swap(a: &FinSet, b: &FinSet, c: &FinSet, d: &FinSet) -> FinRel {
    let (na, nb, nc) = (a.len(), b.len(), c.len());
    let src = a.sum(b).sum(&c.sum(d));
    let dst = a.sum(c).sum(&b.sum(d));
    FinRel::graph(&src, &dst, |k| {
        if k < na {
            k
        } else if k < na + nb {
            na + nc + (k - na)
        } else if k < na + nb + nc {
            na + (k - na - nb)
        } else {
            k
        }
    })
}

/// `a ↦ {a}` as a map `A ⇸ P(A)`.
pub fn singleton_map(a: &FinSet) -> FinRel {
    FinRel::graph(a, &a.power(), |i| 1 << i)
}

/// A relation read as a function `A → P(B)`, given by its graph.
pub fn kleisli_of(r: &FinRel) -> FinRel {
    FinRel::graph(r.src(), &r.dst().power(), |i| {
        r.row(i).map(|j| 1 << j).sum()
    })
}

/// Extension of a function `k : A → P(B)` (given by its graph) to
/// `P(A) → P(B)`, taking unions of images.
pub fn extend(k: &FinRel, a: &FinSet, b: &FinSet) -> Result<FinRel, RelError> {
    a.expect_same(k.src())?;
    b.power().expect_same(k.dst())?;
    let images: Vec<usize> = (0..a.len())
        .map(|i| k.row(i).next().expect("Kleisli maps are total functions"))
        .collect();
    Ok(FinRel::graph(&a.power(), &b.power(), |mask| {
        (0..a.len())
            .filter(|i| mask >> i & 1 == 1)
            .fold(0, |acc, i| acc | images[i])
    }))
}
