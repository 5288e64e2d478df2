//! Exact linear algebra over the rationals.
//!
//! Vectors are rows. A [`Matrix`] acts on column vectors, so the image of a
//! row vector `v` under `m` is `(m · vᵀ)ᵀ = v · mᵀ`. Subspaces are kept in
//! reduced row echelon form with no zero rows, which makes equality of
//! subspaces plain structural equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `numer / denom` as a [`Rational`]. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Wire form of a rational: `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational `{}`", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p"` or `"p/q"` exactly. Whitespace around the parts is not allowed.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| err())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from explicit rows. `cols` is needed to give an
    /// empty row list a shape.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer rows; panics if ragged.
    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Matrix::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "vertical stack",
                left: self.cols,
                right: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(i, c)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        row_reduce(self.to_rows(), self.cols).len()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rational(x))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination. Returns only the nonzero rows of the reduced
/// row echelon form.
///
/// Row operations skip zero entries of the pivot row, which keeps the very
/// sparse matrices produced by product constructions cheap to reduce.
fn row_reduce(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);

        let inv = rows[rank][c].recip();
        if !inv.is_one() {
            for x in rows[rank][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&k| !rows[rank][k].is_zero()).collect();
        let pivot = std::mem::take(&mut rows[rank]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &k in &support {
                row[k] -= &factor * &pivot[k];
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// The unique reduced row echelon form of `m`, same shape, zero rows last.
pub fn rref(m: &Matrix) -> Matrix {
    let reduced = row_reduce(m.to_rows(), m.cols);
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (i, row) in reduced.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    out
}

/// Column index of the leading entry of each row of an echelon basis.
fn pivot_columns(basis: &Matrix) -> Vec<usize> {
    basis
        .row_iter()
        .map(|row| {
            row.iter()
                .position(|x| !x.is_zero())
                .expect("canonical basis has no zero rows")
        })
        .collect()
}

/// A linear subspace of `Q^n`, stored by its canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// Span of the rows of `generators`, which may be dependent.
    pub fn span(generators: &Matrix) -> Subspace {
        let rows = row_reduce(generators.to_rows(), generators.cols);
        let basis =
            Matrix::from_rows(generators.cols, rows).expect("reduced rows keep their width");
        Subspace {
            ambient_dim: generators.cols,
            basis,
        }
    }

    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<Rational>>) -> Result<Subspace> {
        Ok(Subspace::span(&Matrix::from_rows(ambient_dim, rows)?))
    }

    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Membership test by reduction against the canonical basis.
    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut v = v.to_vec();
        for (row, &c) in self.basis.row_iter().zip(pivot_columns(&self.basis).iter()) {
            if v[c].is_zero() {
                continue;
            }
            let factor = v[c].clone();
            for (x, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &factor * b;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.row_iter().all(|r| other.contains(r))
    }

    /// Restriction to a subset of coordinates (a coordinate projection).
    pub fn project(&self, cols: &[usize]) -> Subspace {
        Subspace::span(&self.basis.select_columns(cols))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{} in Q^{}", self.basis, self.ambient_dim)
    }
}

/// Null space of `m` acting on column vectors.
pub fn kernel(m: &Matrix) -> Subspace {
    let reduced = row_reduce(m.to_rows(), m.cols);
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    let mut gens = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        gens.push(v);
    }
    Subspace::from_rows(m.cols, gens).expect("kernel vectors have matrix width")
}

fn check_same_ambient(context: &'static str, a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch {
            context,
            left: a.ambient_dim,
            right: b.ambient_dim,
        });
    }
    Ok(())
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_same_ambient("intersection", a, b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Subspace::zero(a.ambient_dim));
    }
    // Coefficient pairs (α, β) with αA = βB; the intersection is span{αA}.
    let stacked = a.basis.vstack(&b.basis)?;
    let relations = kernel(&stacked.transpose());
    let alphas = relations
        .basis()
        .select_columns(&(0..a.dim()).collect::<Vec<_>>());
    Ok(Subspace::span(&alphas.mul(&a.basis)?))
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_same_ambient("sum", a, b)?;
    Ok(Subspace::span(&a.basis.vstack(&b.basis)?))
}

/// Image of `s` under the linear map `m` (acting on column vectors).
pub fn apply_map(m: &Matrix, s: &Subspace) -> Result<Subspace> {
    if m.cols != s.ambient_dim {
        return Err(Error::DimensionMismatch {
            context: "apply_map",
            left: m.cols,
            right: s.ambient_dim,
        });
    }
    Ok(Subspace::span(&s.basis.mul(&m.transpose())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(n: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(&Matrix::from_i64(n, rows))
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Matrix::from_i64(2, &[&[2, 4], &[1, 2]]);
        assert_eq!(rref(&m), Matrix::from_i64(2, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_identity_and_swap() {
        let id = Matrix::identity(3);
        assert_eq!(rref(&id), id);
        let m = Matrix::from_i64(2, &[&[0, 1], &[1, 0]]);
        assert_eq!(rref(&m), Matrix::identity(2));
    }

    #[test]
    fn rref_with_fractions() {
        let m = Matrix::from_i64(3, &[&[2, 1, 0], &[0, 3, 1]]);
        let r = rref(&m);
        assert_eq!(r.row(0), &[int(1), int(0), ratio(-1, 6)]);
        assert_eq!(r.row(1), &[int(0), int(1), ratio(1, 3)]);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::zeros(2, 2)).is_full());
        assert!(kernel(&Matrix::identity(3)).is_zero());
        let k = kernel(&Matrix::from_i64(2, &[&[1, 2]]));
        assert_eq!(k, sub(2, &[&[-2, 1]]));
        assert_eq!(k.basis().row(0), &[int(1), ratio(-1, 2)]);
    }

    #[test]
    fn intersect_examples() {
        let a = sub(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sub(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(intersect(&a, &a).unwrap(), a);
        assert_eq!(intersect(&a, &b).unwrap(), sub(3, &[&[0, 1, 0]]));
        let l1 = sub(2, &[&[1, 1]]);
        let l2 = sub(2, &[&[1, -1]]);
        assert!(intersect(&l1, &l2).unwrap().is_zero());
        assert!(matches!(
            intersect(&l1, &a),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sum_examples() {
        let a = sub(3, &[&[1, 2, 3]]);
        assert_eq!(sum(&a, &Subspace::zero(3)).unwrap(), a);
        assert!(sum(&sub(2, &[&[1, 0]]), &sub(2, &[&[0, 1]]))
            .unwrap()
            .is_full());
        assert!(sum(&sub(2, &[&[1, 0]]), &sub(2, &[&[1, 1]]))
            .unwrap()
            .is_full());
        assert!(sum(&a, &Subspace::zero(2)).is_err());
    }

    #[test]
    fn apply_map_examples() {
        let s = sub(3, &[&[1, 2, 0], &[0, 0, 1]]);
        assert_eq!(apply_map(&Matrix::identity(3), &s).unwrap(), s);

        let proj = Matrix::from_i64(2, &[&[1, 0]]);
        let diag = sub(2, &[&[1, 1]]);
        assert!(apply_map(&proj, &diag).unwrap().is_full());

        let m = Matrix::from_i64(4, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
        let line = sub(4, &[&[1, 2, 2, 3]]);
        assert_eq!(apply_map(&m, &line).unwrap(), sub(2, &[&[1, 3]]));
        assert!(apply_map(&m, &diag).is_err());
    }

    #[test]
    fn rational_wire_format() {
        assert_eq!(format_rational(&ratio(2, 6)), "1/3");
        assert_eq!(format_rational(&ratio(-4, 2)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
        assert_eq!(parse_rational("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational(" 1").is_err());
    }

    #[test]
    fn membership() {
        let s = sub(3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert!(s.contains(&[int(1), int(0), int(-1)]));
        assert!(!s.contains(&[int(1), int(0), int(0)]));
        assert!(!s.contains(&[int(1), int(0)]));
    }
}
