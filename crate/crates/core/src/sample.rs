//! Random fixtures for property tests, the acceptance suite and benchmarks.
//!
//! Lagrangians are drawn as graphs of symmetric matrices over a randomly
//! chosen coordinate lagrangian, which reaches every lagrangian subspace.
//! Sparse symmetric matrices are used on purpose so that degenerate,
//! non-transversal pairs show up regularly.

// Symmetric matrices read more clearly with explicit index loops.
#![allow(clippy::needless_range_loop)]

use num_traits::Zero;
use rand::Rng;

use crate::finrel::{FinRelation, FinSet};
use crate::linalg::{ratio, Matrix, Rational, Subspace};
use crate::symplin::{dual_space, product_space, Block, CanRel, Sign, SymplecticSpace};

/// Rational with numerator in `[-bound, bound]` and denominator in `[1, bound]`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    ratio(
        rng.random_range(-bound..=bound),
        rng.random_range(1..=bound),
    )
}

/// Like [`rational`] but zero with probability `1 - density`.
pub fn sparse_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64, density: f64) -> Rational {
    if rng.random_bool(density) {
        rational(rng, bound)
    } else {
        Rational::zero()
    }
}

/// A space of total half dimension at most `max_half_dim`, split into
/// blocks of random size and sign. May be the point.
pub fn space<R: Rng + ?Sized>(rng: &mut R, max_half_dim: usize) -> SymplecticSpace {
    let mut remaining = rng.random_range(0..=max_half_dim);
    let mut blocks = Vec::new();
    while remaining > 0 {
        let half_dim = rng.random_range(1..=remaining);
        let sign = if rng.random_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        blocks.push(Block { half_dim, sign });
        remaining -= half_dim;
    }
    SymplecticSpace::new(blocks).expect("blocks are nonempty")
}

/// Same as [`space`] but never the point.
pub fn nonpoint_space<R: Rng + ?Sized>(rng: &mut R, max_half_dim: usize) -> SymplecticSpace {
    loop {
        let s = space(rng, max_half_dim);
        if !s.is_point() {
            return s;
        }
    }
}

/// `(q, p, sign)` coordinate pairs of a space.
fn darboux_pairs(s: &SymplecticSpace) -> Vec<(usize, usize, i64)> {
    let mut pairs = Vec::new();
    let mut offset = 0;
    for b in s.blocks() {
        let n = b.half_dim;
        for i in 0..n {
            pairs.push((offset + i, offset + n + i, b.sign.as_i64()));
        }
        offset += 2 * n;
    }
    pairs
}

/// A random lagrangian subspace of `s`; `density` controls how many entries
/// of the generating symmetric matrix are nonzero.
pub fn lagrangian<R: Rng + ?Sized>(
    rng: &mut R,
    s: &SymplecticSpace,
    bound: i64,
    density: f64,
) -> Subspace {
    let pairs = darboux_pairs(s);
    let n = pairs.len();
    let mut sym = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let x = sparse_rational(rng, bound, density);
            sym[i][j] = x.clone();
            sym[j][i] = x;
        }
    }
    let swapped: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let rows = (0..n)
        .map(|j| {
            let mut v = vec![Rational::zero(); s.dim()];
            for (k, &(q, p, sign)) in pairs.iter().enumerate() {
                let unit = if k == j {
                    ratio(1, 1)
                } else {
                    Rational::zero()
                };
                let dependent = &sym[k][j] * Rational::from_integer(sign.into());
                if swapped[k] {
                    v[p] = unit;
                    v[q] = -dependent;
                } else {
                    v[q] = unit;
                    v[p] = dependent;
                }
            }
            v
        })
        .collect();
    Subspace::from_rows(s.dim(), rows).expect("rows have ambient width")
}

/// A random canonical relation `target ← source`.
pub fn canrel<R: Rng + ?Sized>(
    rng: &mut R,
    target: &SymplecticSpace,
    source: &SymplecticSpace,
    bound: i64,
    density: f64,
) -> CanRel {
    let ambient = product_space(target, &dual_space(source));
    let graph = lagrangian(rng, &ambient, bound, density);
    CanRel::new(target.clone(), source.clone(), graph).expect("generated graph is lagrangian")
}

/// A composable word of `len` random relations over random spaces.
pub fn word<R: Rng + ?Sized>(
    rng: &mut R,
    len: usize,
    max_half_dim: usize,
    bound: i64,
    density: f64,
) -> Vec<CanRel> {
    let objects: Vec<SymplecticSpace> = (0..=len).map(|_| space(rng, max_half_dim)).collect();
    objects
        .windows(2)
        .map(|w| canrel(rng, &w[0], &w[1], bound, density))
        .collect()
}

/// A word over the given object sequence `X_0, …, X_r`.
pub fn word_over<R: Rng + ?Sized>(
    rng: &mut R,
    objects: &[SymplecticSpace],
    bound: i64,
    density: f64,
) -> Vec<CanRel> {
    objects
        .windows(2)
        .map(|w| canrel(rng, &w[0], &w[1], bound, density))
        .collect()
}

/// Random symmetric `n × n` matrix with small integer entries.
fn symmetric_int<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.random_range(-bound..=bound);
            m[i][j] = x;
            m[j][i] = x;
        }
    }
    m
}

/// A random linear symplectomorphism of `s`: a product of shears
/// `[[I, S], [0, I]]` and `[[I, 0], [S, I]]` on each block.
pub fn symplectic_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    s: &SymplecticSpace,
    factors: usize,
) -> Matrix {
    let mut m = Matrix::identity(s.dim());
    let mut offset = 0;
    for b in s.blocks() {
        let n = b.half_dim;
        for _ in 0..factors {
            let sym = symmetric_int(rng, n, 2);
            let upper = rng.random_bool(0.5);
            let mut shear = Matrix::identity(s.dim());
            for i in 0..n {
                for j in 0..n {
                    let (r, c) = if upper {
                        (offset + i, offset + n + j)
                    } else {
                        (offset + n + i, offset + j)
                    };
                    shear[(r, c)] = ratio(sym[i][j], 1);
                }
            }
            m = m.mul(&shear).expect("square matrices of one size");
        }
        offset += 2 * n;
    }
    m
}

/// Random finite relation; each pair is present with probability `p`.
pub fn finrel<R: Rng + ?Sized>(
    rng: &mut R,
    target: &FinSet,
    source: &FinSet,
    p: f64,
) -> FinRelation {
    let mut pairs = Vec::new();
    for x in target.elements() {
        for y in source.elements() {
            if rng.random_bool(p) {
                pairs.push((x.clone(), y.clone()));
            }
        }
    }
    FinRelation::new(target.clone(), source.clone(), pairs).expect("labels come from the sets")
}

/// `{prefix0, …, prefix(n-1)}`.
pub fn finset(name: &str, prefix: &str, n: usize) -> FinSet {
    FinSet::new(name, (0..n).map(|i| format!("{prefix}{i}"))).expect("distinct labels")
}
