//! Oracles shared by the integration tests. Each one recomputes a library
//! result from definitions, by a route that shares no code with the
//! function under test beyond basic subspace arithmetic.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;

use wwcat_core::factor::canonical_split;
use wwcat_core::linalg::{intersect, sum, Rational, Subspace};
use wwcat_core::{CanRel, FinRelation, FinSet, RelationProfile, SymplecticSpace};

// --- finite relations ----------------------------------------------------

/// Every relation `target ← source`, in a fixed order.
pub fn all_relations(target: &FinSet, source: &FinSet) -> Vec<FinRelation> {
    let cells: Vec<(String, String)> = target
        .elements()
        .iter()
        .flat_map(|x| {
            source
                .elements()
                .iter()
                .map(move |y| (x.clone(), y.clone()))
        })
        .collect();
    (0u32..1 << cells.len())
        .map(|mask| {
            let pairs = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, c)| c.clone());
            FinRelation::new(target.clone(), source.clone(), pairs).unwrap()
        })
        .collect()
}

pub fn sets_up_to(max: usize, name: &str, prefix: &str) -> Vec<FinSet> {
    (0..=max)
        .map(|n| wwcat_core::sample::finset(name, prefix, n))
        .collect()
}

/// Profile evaluated by quantifying over elements.
pub fn profile_oracle(f: &FinRelation) -> RelationProfile {
    let xs = f.target().elements();
    let ys = f.source().elements();
    let related = |x: &String, y: &String| f.contains(x, y);
    let surjective = xs.iter().all(|x| ys.iter().any(|y| related(x, y)));
    let cosurjective = ys.iter().all(|y| xs.iter().any(|x| related(x, y)));
    let injective = xs.iter().all(|x| {
        ys.iter().all(|y1| {
            ys.iter()
                .all(|y2| !(related(x, y1) && related(x, y2)) || y1 == y2)
        })
    });
    let coinjective = ys.iter().all(|y| {
        xs.iter().all(|x1| {
            xs.iter()
                .all(|x2| !(related(x1, y) && related(x2, y)) || x1 == x2)
        })
    });
    RelationProfile::new(surjective, cosurjective, injective, coinjective)
}

pub fn compose_oracle(f: &FinRelation, g: &FinRelation) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for x in f.target().elements() {
        for z in g.source().elements() {
            if f.source()
                .elements()
                .iter()
                .any(|y| f.contains(x, y) && g.contains(y, z))
            {
                out.insert((x.clone(), z.clone()));
            }
        }
    }
    out
}

/// Every related `(x, z)` has exactly one middle witness.
pub fn monic_oracle(f: &FinRelation, g: &FinRelation) -> bool {
    f.target().elements().iter().all(|x| {
        g.source().elements().iter().all(|z| {
            let witnesses = f
                .source()
                .elements()
                .iter()
                .filter(|y| f.contains(x, y) && g.contains(y, z))
                .count();
            witnesses <= 1
        })
    })
}

// --- linear relations ----------------------------------------------------

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// `f ⊕ g` inside `X ⊕ Y ⊕ Y ⊕ Z`.
pub fn direct_sum(f: &CanRel, g: &CanRel) -> Subspace {
    let (x, y, z) = (f.target().dim(), f.source().dim(), g.source().dim());
    let n = x + 2 * y + z;
    let mut rows = Vec::new();
    for r in f.graph().basis().row_iter() {
        let mut v = vec![Rational::zero(); n];
        v[..x + y].clone_from_slice(r);
        rows.push(v);
    }
    for r in g.graph().basis().row_iter() {
        let mut v = vec![Rational::zero(); n];
        v[x + y..].clone_from_slice(r);
        rows.push(v);
    }
    Subspace::from_rows(n, rows).unwrap()
}

/// `X ⊕ Δ_Y ⊕ Z`, spelled out with unit vectors.
pub fn diagonal_constraint(x: usize, y: usize, z: usize) -> Subspace {
    let n = x + 2 * y + z;
    let mut rows: Vec<Vec<Rational>> = (0..x).map(|i| unit(n, i)).collect();
    for i in 0..y {
        let mut v = unit(n, x + i);
        v[x + y + i] = Rational::one();
        rows.push(v);
    }
    rows.extend((0..z).map(|i| unit(n, x + 2 * y + i)));
    Subspace::from_rows(n, rows).unwrap()
}

/// `0 ⊕ Δ_Y ⊕ 0`.
pub fn middle_diagonal(x: usize, y: usize, z: usize) -> Subspace {
    let n = x + 2 * y + z;
    let rows = (0..y)
        .map(|i| {
            let mut v = unit(n, x + i);
            v[x + y + i] = Rational::one();
            v
        })
        .collect();
    Subspace::from_rows(n, rows).unwrap()
}

/// Composite by intersecting with the diagonal and projecting.
pub fn compose_oracle_lin(f: &CanRel, g: &CanRel) -> Subspace {
    let (x, y, z) = (f.target().dim(), f.source().dim(), g.source().dim());
    let fiber = intersect(&direct_sum(f, g), &diagonal_constraint(x, y, z)).unwrap();
    let outer: Vec<usize> = (0..x).chain(x + 2 * y..x + 2 * y + z).collect();
    fiber.project(&outer)
}

/// Codimension of the literal sum `(f ⊕ g) + (X ⊕ Δ_Y ⊕ Z)`.
pub fn transversality_oracle(f: &CanRel, g: &CanRel) -> usize {
    let (x, y, z) = (f.target().dim(), f.source().dim(), g.source().dim());
    sum(&direct_sum(f, g), &diagonal_constraint(x, y, z))
        .unwrap()
        .codim()
}

/// Dimension of the part of the fibre product that projects to zero.
pub fn monicity_oracle(f: &CanRel, g: &CanRel) -> usize {
    let (x, y, z) = (f.target().dim(), f.source().dim(), g.source().dim());
    intersect(&direct_sum(f, g), &middle_diagonal(x, y, z))
        .unwrap()
        .dim()
}

/// Profile from intersections with the coordinate summands.
pub fn profile_oracle_lin(f: &CanRel) -> RelationProfile {
    let (x, y) = (f.target().dim(), f.source().dim());
    let n = x + y;
    let target_axis = Subspace::from_rows(n, (0..x).map(|i| unit(n, i)).collect()).unwrap();
    let source_axis = Subspace::from_rows(n, (x..n).map(|i| unit(n, i)).collect()).unwrap();
    let target_cols: Vec<usize> = (0..x).collect();
    let source_cols: Vec<usize> = (x..n).collect();
    RelationProfile::new(
        f.graph().project(&target_cols).is_full(),
        f.graph().project(&source_cols).is_full(),
        intersect(f.graph(), &source_axis).unwrap().is_zero(),
        intersect(f.graph(), &target_axis).unwrap().is_zero(),
    )
}

/// `ω(u, v)` from the block description, written out independently.
pub fn omega_oracle(s: &SymplecticSpace, u: &[Rational], v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    let mut offset = 0;
    for b in s.blocks() {
        let n = b.half_dim;
        let sign = Rational::from_integer(b.sign.as_i64().into());
        for i in 0..n {
            let (q, p) = (offset + i, offset + n + i);
            acc += &sign * (&u[q] * &v[p] - &u[p] * &v[q]);
        }
        offset += 2 * n;
    }
    acc
}

/// Isotropic of half dimension, checked pairwise on a basis.
pub fn is_lagrangian_oracle(s: &SymplecticSpace, l: &Subspace) -> bool {
    if 2 * l.dim() != s.dim() {
        return false;
    }
    let rows: Vec<&[Rational]> = l.basis().row_iter().collect();
    rows.iter()
        .all(|u| rows.iter().all(|v| omega_oracle(s, u, v).is_zero()))
}

pub fn is_lagrangian_relation(f: &CanRel) -> bool {
    is_lagrangian_oracle(&f.ambient_space(), f.graph())
}

// --- random paths --------------------------------------------------------

/// A composable finrel word over sets of size at most 3, with identities
/// and reductions mixed in so that some pairs collapse.
pub fn fin_word<R: Rng>(rng: &mut R, len: usize) -> Vec<FinRelation> {
    let sets: Vec<FinSet> = (0..=len)
        .map(|i| {
            wwcat_core::sample::finset(&format!("S{i}"), &format!("s{i}_"), rng.random_range(0..=3))
        })
        .collect();
    let mut word = Vec::with_capacity(len);
    for i in 0..len {
        let (t, s) = (&sets[i], &sets[i + 1]);
        let f = if t == s && rng.random_bool(0.15) {
            FinRelation::identity(t)
        } else if rng.random_bool(0.3) {
            // A partial function s → t: coinjective, often a reduction.
            let mut pairs = Vec::new();
            for y in s.elements() {
                if !t.is_empty() && rng.random_bool(0.8) {
                    let x = &t.elements()[rng.random_range(0..t.len())];
                    pairs.push((x.clone(), y.clone()));
                }
            }
            FinRelation::new(t.clone(), s.clone(), pairs).unwrap()
        } else {
            wwcat_core::sample::finrel(rng, t, s, 0.4)
        };
        word.push(f);
    }
    word
}

/// A composable symplin word mixing random relations, symplectomorphism
/// graphs and identities.
pub fn lin_word<R: Rng>(rng: &mut R, len: usize, max_half_dim: usize) -> Vec<CanRel> {
    let objects: Vec<SymplecticSpace> = (0..=len)
        .map(|_| wwcat_core::sample::space(rng, max_half_dim))
        .collect();
    let mut word = Vec::with_capacity(len);
    for i in 0..len {
        let (t, s) = (&objects[i], &objects[i + 1]);
        let f = if t == s && !t.is_point() && rng.random_bool(0.5) {
            if rng.random_bool(0.3) {
                CanRel::identity(t)
            } else {
                let m = wwcat_core::sample::symplectic_matrix(rng, t, 2);
                wwcat_core::symplin::graph_of_map(&m, t, t).unwrap()
            }
        } else {
            let density = [0.2, 0.5, 0.9][rng.random_range(0..3)];
            wwcat_core::sample::canrel(rng, t, s, 5, density)
        };
        word.push(f);
    }
    word
}

/// A random coreduction with the given source, from a canonical split.
pub fn coreduction_into<R: Rng>(rng: &mut R, source: &SymplecticSpace) -> CanRel {
    let x = wwcat_core::sample::space(rng, 1);
    let h = wwcat_core::sample::canrel(rng, &x, source, 5, 0.5);
    canonical_split(&h).1
}

/// A random reduction with the given target, from a canonical split.
pub fn reduction_from<R: Rng>(rng: &mut R, target: &SymplecticSpace) -> CanRel {
    // The split of h: X ← Y has reduction part with target X.
    let y = wwcat_core::sample::space(rng, 1);
    let h = wwcat_core::sample::canrel(rng, target, &y, 5, 0.5);
    canonical_split(&h).0
}
