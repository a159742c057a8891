//! Dense matrices over an exact [`Ring`].

use std::collections::HashMap;
use std::fmt;

use super::{Rational, RationalAlgebra, Ring};
use crate::error::{Error, Result};

/// Largest size for which `det` uses memoized cofactor expansion instead of
/// Bareiss elimination. Expansion never divides, so sparse
/// polynomial entries stay small.
const COFACTOR_LIMIT: usize = 12;

#[derive(Clone, PartialEq)]
pub struct RingMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

/// Outcome of fraction-free row echelon reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonPivots {
    /// Original indices of the rows that received a pivot, in pivot order.
    pub rows: Vec<usize>,
    /// Pivot column of each of those rows.
    pub cols: Vec<usize>,
}

impl EchelonPivots {
    pub fn rank(&self) -> usize {
        self.cols.len()
    }
}

impl<R: Ring> RingMatrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(RingMatrix { rows, cols, data })
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RingMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RingMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { R::one() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> RingMatrix<S> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl FnMut(&R) -> Result<S>) -> Result<RingMatrix<S>> {
        Ok(RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Submatrix on the given (zero-based) row and column indices, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * rhs.cols + c;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", R::add)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", R::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg)
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(R::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant: cofactor expansion up to `COFACTOR_LIMIT`, Bareiss above.
    pub fn det(&self) -> Result<R> {
        self.require_square()?;
        if self.rows <= COFACTOR_LIMIT {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Fraction-free Bareiss elimination; every division is exact. Pivots
    /// are the lowest-index nonzero entry of the current column.
    pub fn det_bareiss(&self) -> Result<R> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut m = self.data.clone();
        let mut negate = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&r| !m[r * n + k].is_zero()) else {
                return Ok(R::zero());
            };
            if p != k {
                for c in 0..n {
                    m.swap(p * n + c, k * n + c);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                let lead = m[i * n + k].clone();
                for j in k + 1..n {
                    let upper = &m[k * n + j];
                    let mut v = m[i * n + j].mul(&pivot);
                    if !lead.is_zero() && !upper.is_zero() {
                        v = v.sub(&lead.mul(upper));
                    }
                    m[i * n + j] = v.div_exact(&prev).expect("Bareiss division must be exact");
                }
                m[i * n + k] = R::zero();
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Laplace expansion along rows, memoized over column subsets. Uses no
    /// division at all, so it serves as an independent check on Bareiss.
    pub fn det_cofactor(&self) -> Result<R> {
        self.require_square()?;
        let n = self.rows;
        assert!(n < 32, "cofactor expansion supports at most 31 rows");
        // minors[S] = det of rows 0..k and the columns in bitmask S, |S| = k.
        let mut minors: HashMap<u32, R> = HashMap::from([(0u32, R::one())]);
        for k in 0..n {
            let mut next: HashMap<u32, R> = HashMap::new();
            for (&mask, minor) in &minors {
                for j in 0..n {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let a = self.get(k, j);
                    if a.is_zero() {
                        continue;
                    }
                    // Column j sits after the columns of `mask` that are above it.
                    let after = (mask >> j).count_ones();
                    let term = a.mul(minor);
                    let term = if after % 2 == 1 { term.neg() } else { term };
                    let slot = next.entry(mask | (1 << j)).or_insert_with(R::zero);
                    *slot = slot.add(&term);
                }
            }
            next.retain(|_, v| !v.is_zero());
            minors = next;
        }
        Ok(minors
            .remove(&((1u64 << n) as u32).wrapping_sub(1))
            .unwrap_or_else(R::zero))
    }

    /// Fraction-free row echelon reduction with lowest-index pivoting. The
    /// rank is taken over the fraction field of the ring.
    pub fn echelon_pivots(&self) -> EchelonPivots {
        let (rows, cols) = self.shape();
        let mut m = self.data.clone();
        let mut order: Vec<usize> = (0..rows).collect();
        let mut pivots = EchelonPivots {
            rows: Vec::new(),
            cols: Vec::new(),
        };
        let mut prev = R::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(p * cols + j, r * cols + j);
                }
                order.swap(p, r);
            }
            let pivot = m[r * cols + c].clone();
            for i in r + 1..rows {
                let lead = m[i * cols + c].clone();
                for j in c + 1..cols {
                    let upper = &m[r * cols + j];
                    let mut v = m[i * cols + j].mul(&pivot);
                    if !lead.is_zero() && !upper.is_zero() {
                        v = v.sub(&lead.mul(upper));
                    }
                    m[i * cols + j] = v.div_exact(&prev).expect("fraction-free division must be exact");
                }
                m[i * cols + c] = R::zero();
            }
            prev = pivot;
            pivots.rows.push(order[r]);
            pivots.cols.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon_pivots().rank()
    }

    /// Null-space basis over the fraction field, written with ring entries.
    ///
    /// With pivot rows `P_r` and pivot columns `P_c`, each free column `f`
    /// yields the generalized cross product of the rows `P_r` restricted to
    /// `P_c ∪ {f}`: entry `j` is the signed maximal minor omitting column `j`.
    /// Its `f` entry is `±det(M[P_r, P_c]) ≠ 0`, so the vectors are independent.
    pub fn null_basis_fraction_free(&self) -> Vec<Vec<R>> {
        let piv = self.echelon_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.cols.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut support = piv.cols.clone();
                support.push(f);
                support.sort_unstable();
                let mut v = vec![R::zero(); self.cols];
                for (pos, &j) in support.iter().enumerate() {
                    let others: Vec<usize> = support.iter().copied().filter(|&x| x != j).collect();
                    let minor = self
                        .submatrix(&piv.rows, &others)
                        .det()
                        .expect("square by construction");
                    v[j] = if pos % 2 == 1 { minor.neg() } else { minor };
                }
                v
            })
            .collect()
    }
}

impl RingMatrix<Rational> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !Ring::is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    m.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = Rational::from_integer(1.into()) / m.get(r, c);
            for j in c..self.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if Ring::is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Exact rank and a null-space basis read off the reduced echelon form:
    /// one vector per free column, with a 1 in that column.
    pub fn rank_and_nullspace(&self) -> (usize, Vec<Vec<Rational>>) {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![<Rational as Ring>::zero(); self.cols];
                v[f] = <Rational as Ring>::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -reduced.get(row, f);
                }
                v
            })
            .collect();
        (pivots.len(), basis)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let augmented = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                <Rational as Ring>::one()
            } else {
                <Rational as Ring>::zero()
            }
        });
        let (reduced, pivots) = augmented.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| reduced.get(r, n + c).clone()))
    }

    /// Embeds into any ring containing the rationals.
    pub fn lift<S: RationalAlgebra>(&self) -> RingMatrix<S> {
        self.map(S::from_rational)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|s| s.chars().count()).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", cells[r * self.cols + c]))
                .collect();
            writeln!(f, "[{}]", line.join("  "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &self.to_rows())
            .finish()
    }
}
