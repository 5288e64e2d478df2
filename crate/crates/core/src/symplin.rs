//! Linear canonical relations between rational symplectic vector spaces.
//!
//! A space is a list of signed standard blocks. A canonical relation
//! `X ← Y` is a lagrangian subspace of `X ⊕ Y` with the form
//! `ω_X ⊕ (−ω_Y)`, coordinates ordered target first.
//!
//! The smooth-category conditions specialize cleanly here: the differential
//! of a linear relation is the relation itself, and properness and
//! embeddedness hold automatically, so a pair is strongly transversal
//! exactly when it is transversal and monic.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, Subspace};
use crate::profile::RelationProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One standard block: coordinates `q_1..q_n, p_1..p_n` with
/// `ω(q_i, p_i) = sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub half_dim: usize,
    pub sign: Sign,
}

/// A symplectic vector space presented as a direct sum of signed standard
/// blocks. The empty block list is the point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymplecticSpace {
    blocks: Vec<Block>,
}

impl SymplecticSpace {
    pub fn new(blocks: Vec<Block>) -> Result<SymplecticSpace> {
        if let Some(i) = blocks.iter().position(|b| b.half_dim == 0) {
            return Err(Error::InvalidSpace(format!(
                "block {i} has half dimension 0"
            )));
        }
        Ok(SymplecticSpace { blocks })
    }

    /// Builds from `(half_dim, ±1)` pairs.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Result<SymplecticSpace> {
        let blocks = pairs
            .iter()
            .enumerate()
            .map(|(i, &(half_dim, s))| {
                let sign = Sign::from_i64(s).ok_or_else(|| {
                    Error::InvalidSpace(format!("block {i} has sign {s}, expected 1 or -1"))
                })?;
                Ok(Block { half_dim, sign })
            })
            .collect::<Result<Vec<_>>>()?;
        SymplecticSpace::new(blocks)
    }

    /// The point, unit object for products.
    pub fn point() -> SymplecticSpace {
        SymplecticSpace::default()
    }

    /// A single positive block of half dimension `n`.
    pub fn standard(n: usize) -> SymplecticSpace {
        SymplecticSpace::new(vec![Block {
            half_dim: n,
            sign: Sign::Plus,
        }])
        .expect("positive half dimension")
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| 2 * b.half_dim).sum()
    }

    pub fn is_point(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `ω(u, v)` evaluated blockwise.
    pub fn omega(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        let mut offset = 0;
        for b in &self.blocks {
            let n = b.half_dim;
            let mut part = Rational::zero();
            for i in 0..n {
                let (q, p) = (offset + i, offset + n + i);
                if !u[q].is_zero() && !v[p].is_zero() {
                    part += &u[q] * &v[p];
                }
                if !u[p].is_zero() && !v[q].is_zero() {
                    part -= &u[p] * &v[q];
                }
            }
            match b.sign {
                Sign::Plus => acc += part,
                Sign::Minus => acc -= part,
            }
            offset += 2 * n;
        }
        acc
    }
}

impl fmt::Display for SymplecticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "1");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            let s = if b.sign == Sign::Plus { '+' } else { '-' };
            write!(f, "({},{s})", b.half_dim)?;
        }
        Ok(())
    }
}

/// Matrix of the form: block diagonal with blocks `sign · [[0, I], [−I, 0]]`.
pub fn form_matrix(s: &SymplecticSpace) -> Matrix {
    let mut m = Matrix::zeros(s.dim(), s.dim());
    let mut offset = 0;
    for b in &s.blocks {
        let n = b.half_dim;
        let one = Rational::from_integer(b.sign.as_i64().into());
        for i in 0..n {
            m[(offset + i, offset + n + i)] = one.clone();
            m[(offset + n + i, offset + i)] = -one.clone();
        }
        offset += 2 * n;
    }
    m
}

pub fn dual_space(s: &SymplecticSpace) -> SymplecticSpace {
    SymplecticSpace {
        blocks: s
            .blocks
            .iter()
            .map(|b| Block {
                half_dim: b.half_dim,
                sign: b.sign.flip(),
            })
            .collect(),
    }
}

pub fn product_space(a: &SymplecticSpace, b: &SymplecticSpace) -> SymplecticSpace {
    let mut blocks = a.blocks.clone();
    blocks.extend_from_slice(&b.blocks);
    SymplecticSpace { blocks }
}

/// Isotropy check only: every pair of basis vectors pairs to zero.
fn is_isotropic(s: &SymplecticSpace, sub: &Subspace) -> bool {
    let b = sub.basis();
    (0..b.rows()).all(|i| (i + 1..b.rows()).all(|j| s.omega(b.row(i), b.row(j)).is_zero()))
}

/// Lagrangian = isotropic of half the ambient dimension. Total on
/// subspaces: odd ambient dimensions simply answer `false`.
pub fn is_lagrangian(s: &SymplecticSpace, sub: &Subspace) -> Result<bool> {
    if sub.ambient_dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            context: "is_lagrangian",
            left: s.dim(),
            right: sub.ambient_dim(),
        });
    }
    Ok(2 * sub.dim() == s.dim() && is_isotropic(s, sub))
}

/// A linear canonical relation `target ← source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanRel {
    target: SymplecticSpace,
    source: SymplecticSpace,
    graph: Subspace,
}

impl CanRel {
    /// Validates that `graph` is lagrangian in `target × dual(source)`.
    pub fn new(
        target: SymplecticSpace,
        source: SymplecticSpace,
        graph: Subspace,
    ) -> Result<CanRel> {
        let ambient = product_space(&target, &dual_space(&source));
        if graph.ambient_dim() != ambient.dim() {
            return Err(Error::DimensionMismatch {
                context: "canonical relation graph",
                left: ambient.dim(),
                right: graph.ambient_dim(),
            });
        }
        if 2 * graph.dim() != ambient.dim() {
            return Err(Error::NotLagrangian(format!(
                "dimension {} is not half of {}",
                graph.dim(),
                ambient.dim()
            )));
        }
        if !is_isotropic(&ambient, &graph) {
            return Err(Error::NotLagrangian(
                "basis is not isotropic for ω_target ⊕ (−ω_source)".into(),
            ));
        }
        Ok(CanRel {
            target,
            source,
            graph,
        })
    }

    pub fn from_rows(
        target: SymplecticSpace,
        source: SymplecticSpace,
        rows: Vec<Vec<Rational>>,
    ) -> Result<CanRel> {
        let n = target.dim() + source.dim();
        let graph = Subspace::from_rows(n, rows)?;
        CanRel::new(target, source, graph)
    }

    /// For results whose lagrangian property is known by construction.
    pub(crate) fn new_unchecked(
        target: SymplecticSpace,
        source: SymplecticSpace,
        graph: Subspace,
    ) -> CanRel {
        debug_assert_eq!(graph.ambient_dim(), target.dim() + source.dim());
        CanRel {
            target,
            source,
            graph,
        }
    }

    pub fn identity(space: &SymplecticSpace) -> CanRel {
        let n = space.dim();
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![Rational::zero(); 2 * n];
                v[i] = Rational::one();
                v[n + i] = Rational::one();
                v
            })
            .collect();
        let graph = Subspace::from_rows(2 * n, rows).unwrap();
        CanRel::new_unchecked(space.clone(), space.clone(), graph)
    }

    pub fn target(&self) -> &SymplecticSpace {
        &self.target
    }

    pub fn source(&self) -> &SymplecticSpace {
        &self.source
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    /// `target × dual(source)`, the space the graph is lagrangian in.
    pub fn ambient_space(&self) -> SymplecticSpace {
        product_space(&self.target, &dual_space(&self.source))
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source && *self == CanRel::identity(&self.target)
    }

    fn target_cols(&self) -> Vec<usize> {
        (0..self.target.dim()).collect()
    }

    fn source_cols(&self) -> Vec<usize> {
        let t = self.target.dim();
        (t..t + self.source.dim()).collect()
    }
}

impl fmt::Display for CanRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ← {}: {}",
            self.target,
            self.source,
            self.graph.basis()
        )
    }
}

/// The graph `{(m·v, v)}` of a linear map `source → target`.
pub fn graph_of_map(
    m: &Matrix,
    target: &SymplecticSpace,
    source: &SymplecticSpace,
) -> Result<CanRel> {
    if m.rows() != target.dim() || m.cols() != source.dim() {
        return Err(Error::ShapeMismatch {
            context: "graph_of_map",
            expected: (target.dim(), source.dim()),
            found: (m.rows(), m.cols()),
        });
    }
    let (t, s) = (target.dim(), source.dim());
    let rows = (0..s)
        .map(|j| {
            let mut v = vec![Rational::zero(); t + s];
            for i in 0..t {
                v[i] = m[(i, j)].clone();
            }
            v[t + j] = Rational::one();
            v
        })
        .collect();
    CanRel::from_rows(target.clone(), source.clone(), rows)
}

/// The diagonal of `Y × Ȳ`, seen as a morphism to the point from `Ȳ × Y`.
pub fn epsilon_rel(y: &SymplecticSpace) -> CanRel {
    let n = y.dim();
    let rows = (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); 2 * n];
            v[i] = Rational::one();
            v[n + i] = Rational::one();
            v
        })
        .collect();
    let source = product_space(&dual_space(y), y);
    CanRel::new_unchecked(
        SymplecticSpace::point(),
        source,
        Subspace::from_rows(2 * n, rows).unwrap(),
    )
}

/// Embeds a lagrangian `L` of `X` as the morphism `X ← 1`.
pub fn state(space: &SymplecticSpace, lagrangian: Subspace) -> Result<CanRel> {
    CanRel::new(space.clone(), SymplecticSpace::point(), lagrangian)
}

/// Coefficient vectors `(a, b)` with `a·F_Y = b·G_Y`; their rows
/// parametrize the fibre product.
fn fiber_coefficients(f: &CanRel, g: &CanRel) -> Matrix {
    let fy = f.graph.basis().select_columns(&f.source_cols());
    let gy = g.graph.basis().select_columns(&g.target_cols());
    // Columns of this matrix are the relations a·F_Y − b·G_Y = 0.
    let mut stacked = Matrix::zeros(fy.rows() + gy.rows(), fy.cols());
    for i in 0..fy.rows() {
        for j in 0..fy.cols() {
            stacked[(i, j)] = fy[(i, j)].clone();
        }
    }
    for i in 0..gy.rows() {
        for j in 0..gy.cols() {
            stacked[(fy.rows() + i, j)] = -gy[(i, j)].clone();
        }
    }
    crate::linalg::kernel(&stacked.transpose()).basis().clone()
}

/// `coeffs · (F_X ⊕ G_Z)`: the projection of the fibre product to `X ⊕ Z`.
fn project_outer(f: &CanRel, g: &CanRel, coeffs: &Matrix) -> Matrix {
    let fx = f.graph.basis().select_columns(&f.target_cols());
    let gz = g.graph.basis().select_columns(&g.source_cols());
    let (kf, x, z) = (fx.rows(), fx.cols(), gz.cols());
    let mut out = Matrix::zeros(coeffs.rows(), x + z);
    for r in 0..coeffs.rows() {
        for i in 0..kf {
            let c = &coeffs[(r, i)];
            if c.is_zero() {
                continue;
            }
            for j in 0..x {
                if !fx[(i, j)].is_zero() {
                    out[(r, j)] += c * &fx[(i, j)];
                }
            }
        }
        for i in 0..gz.rows() {
            let c = &coeffs[(r, kf + i)];
            if c.is_zero() {
                continue;
            }
            for j in 0..z {
                if !gz[(i, j)].is_zero() {
                    out[(r, x + j)] += c * &gz[(i, j)];
                }
            }
        }
    }
    out
}

fn check_composable(f: &CanRel, g: &CanRel) -> Result<()> {
    if f.source != g.target {
        return Err(Error::NotComposable(format!(
            "source {} of the first relation differs from target {} of the second",
            f.source, g.target
        )));
    }
    Ok(())
}

/// Composite `f ∘ g : X ← Z`: intersect `f ⊕ g` with `X ⊕ Δ_Y ⊕ Z`, then
/// project to `X ⊕ Z`.
pub fn compose_lin(f: &CanRel, g: &CanRel) -> Result<CanRel> {
    check_composable(f, g)?;
    let coeffs = fiber_coefficients(f, g);
    let graph = Subspace::span(&project_outer(f, g, &coeffs));
    Ok(CanRel::new_unchecked(
        f.target.clone(),
        g.source.clone(),
        graph,
    ))
}

pub fn transpose_lin(f: &CanRel) -> CanRel {
    let mut cols = f.source_cols();
    cols.extend(f.target_cols());
    CanRel::new_unchecked(f.source.clone(), f.target.clone(), f.graph.project(&cols))
}

/// `f × g : X₁ × X₂ ← Y₁ × Y₂`, coordinates `X₁, X₂, Y₁, Y₂`.
pub fn product_rel(f: &CanRel, g: &CanRel) -> CanRel {
    let (x1, y1) = (f.target.dim(), f.source.dim());
    let (x2, y2) = (g.target.dim(), g.source.dim());
    let n = x1 + x2 + y1 + y2;
    let mut rows = Vec::with_capacity(f.graph.dim() + g.graph.dim());
    for r in f.graph.basis().row_iter() {
        let mut v = vec![Rational::zero(); n];
        v[..x1].clone_from_slice(&r[..x1]);
        v[x1 + x2..x1 + x2 + y1].clone_from_slice(&r[x1..]);
        rows.push(v);
    }
    for r in g.graph.basis().row_iter() {
        let mut v = vec![Rational::zero(); n];
        v[x1..x1 + x2].clone_from_slice(&r[..x2]);
        v[x1 + x2 + y1..].clone_from_slice(&r[x2..]);
        rows.push(v);
    }
    CanRel::new_unchecked(
        product_space(&f.target, &g.target),
        product_space(&f.source, &g.source),
        Subspace::from_rows(n, rows).unwrap(),
    )
}

pub fn classify_lin(f: &CanRel) -> RelationProfile {
    let k = f.graph.dim();
    let target_rank = f.graph.basis().select_columns(&f.target_cols()).rank();
    let source_rank = f.graph.basis().select_columns(&f.source_cols()).rank();
    RelationProfile::new(
        target_rank == f.target.dim(),
        source_rank == f.source.dim(),
        // graph ∩ (0 ⊕ source) = 0 iff projecting to the target loses nothing
        target_rank == k,
        source_rank == k,
    )
}

/// Transversality and monicity diagnostics for a composable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAnalysis {
    pub transversal: bool,
    pub monic: bool,
    pub strongly_transversal: bool,
    /// Codimension of `(f ⊕ g) + (X ⊕ Δ_Y ⊕ Z)` in `X ⊕ Y ⊕ Y ⊕ Z`.
    pub transversality_defect: usize,
    /// Dimension of the kernel of the fibre product's projection to `X ⊕ Z`.
    pub monicity_defect: usize,
    /// `f ×_Y g` inside `X ⊕ Y ⊕ Y ⊕ Z`.
    pub fiber_product: Subspace,
    pub composite: CanRel,
}

pub fn analyze_pair(f: &CanRel, g: &CanRel) -> Result<PairAnalysis> {
    check_composable(f, g)?;
    let (x, y, z) = (f.target.dim(), f.source.dim(), g.source.dim());

    // (X ⊕ Δ_Y ⊕ Z) is the kernel of (x, y₁, y₂, z) ↦ y₁ − y₂, so the sum
    // fills the ambient space iff f ⊕ g maps onto Y under that quotient.
    let fy = f.graph.basis().select_columns(&f.source_cols());
    let gy = g.graph.basis().select_columns(&g.target_cols());
    let quotient_rank = fy.vstack(&gy)?.rank();
    let transversality_defect = y - quotient_rank;

    let coeffs = fiber_coefficients(f, g);
    let outer = Subspace::span(&project_outer(f, g, &coeffs));
    let monicity_defect = coeffs.rows() - outer.dim();

    let n = x + 2 * y + z;
    let (kf, fw) = (f.graph.dim(), x + y);
    let mut fiber = Matrix::zeros(coeffs.rows(), n);
    for r in 0..coeffs.rows() {
        for (i, row) in f.graph.basis().row_iter().enumerate() {
            let c = &coeffs[(r, i)];
            if c.is_zero() {
                continue;
            }
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    fiber[(r, j)] += c * e;
                }
            }
        }
        for (i, row) in g.graph.basis().row_iter().enumerate() {
            let c = &coeffs[(r, kf + i)];
            if c.is_zero() {
                continue;
            }
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    fiber[(r, fw + j)] += c * e;
                }
            }
        }
    }

    let transversal = transversality_defect == 0;
    let monic = monicity_defect == 0;
    Ok(PairAnalysis {
        transversal,
        monic,
        strongly_transversal: transversal && monic,
        transversality_defect,
        monicity_defect,
        fiber_product: Subspace::span(&fiber),
        composite: CanRel::new_unchecked(f.target.clone(), g.source.clone(), outer),
    })
}
