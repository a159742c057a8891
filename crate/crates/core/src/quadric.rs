//! Determinant and rank of the generic fixed quadric, each computed twice:
//! once by the closed-form statement and once by a direct oracle.
//!
//! * determinant: product of the leading principal minors `det P_i` of the
//!   corner matrix `P`, against a direct symbolic determinant;
//! * corank: the degeneracy number `d(λ)`, against elimination at random
//!   points and exact fraction-field elimination;
//! * rank certificates: `d(λ)` explicit null vectors (upper bound on rank)
//!   and a nonzero `(n − d(λ))`-minor (lower bound).

use crate::algebra::{Rational, Ring, RingMatrix, ZPoly, DEFAULT_SPECIALIZATION_BOUND};
use crate::error::{Error, Result};
use crate::fixed_space::GenericFixedMatrix;
use crate::partitions::Partition;

/// Default bound on `n` for direct symbolic determinants.
pub const DEFAULT_SYMBOLIC_BOUND: usize = 9;
/// Default bound on `n` for exact generic rank by fraction-field elimination.
pub const DEFAULT_EXACT_RANK_BOUND: usize = 8;

/// The `k × k` matrix of upper-right corners of the blocks of the
/// λ-decomposition: `P[i][j] = M[first row of block i][last column of block j]`.
pub fn upper_right_matrix(generic: &GenericFixedMatrix) -> RingMatrix<ZPoly> {
    let grid = generic.grid();
    let k = grid.blocks();
    let m = generic.matrix();
    RingMatrix::from_fn(k, k, |i, j| m.get(grid.range(i).start, grid.range(j).end - 1).clone())
}

#[derive(Clone, Debug)]
pub struct DetFactorization {
    pub p: RingMatrix<ZPoly>,
    /// Sizes `μ_i` of the leading blocks, one per factor.
    pub sizes: Vec<usize>,
    /// `det P_i` for `i = 1..λ_1`.
    pub factors: Vec<ZPoly>,
    pub product: ZPoly,
}

/// `det M = Π_i det P_i`, where `P_i` is the leading `μ_i × μ_i` block of
/// `P` and `μ` is the conjugate partition.
pub fn det_by_formula(generic: &GenericFixedMatrix) -> DetFactorization {
    let p = upper_right_matrix(generic);
    let mu = generic.partition().conjugate();
    let sizes = mu.parts().to_vec();
    let factors: Vec<ZPoly> = sizes
        .iter()
        .map(|&s| {
            let idx: Vec<usize> = (0..s).collect();
            p.submatrix(&idx, &idx).det().expect("square")
        })
        .collect();
    let product = factors.iter().fold(<ZPoly as Ring>::one(), |acc, f| &acc * f);
    DetFactorization {
        p,
        sizes,
        factors,
        product,
    }
}

/// Symbolic determinant of the full generic matrix.
pub fn det_direct(generic: &GenericFixedMatrix, bound: usize) -> Result<ZPoly> {
    let n = generic.n();
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    generic.matrix().det()
}

/// Factors `det P_i`, expanded only when `μ_i ≤ bound`.
pub fn det_factors_bounded(generic: &GenericFixedMatrix, bound: usize) -> Vec<Option<ZPoly>> {
    let p = upper_right_matrix(generic);
    generic
        .partition()
        .conjugate()
        .parts()
        .iter()
        .map(|&s| {
            let idx: Vec<usize> = (0..s).collect();
            (s <= bound).then(|| p.submatrix(&idx, &idx).det().expect("square"))
        })
        .collect()
}

/// Numeric check of the determinant identity at `trials` seeded random
/// points: `det M(x)` against `Π det P_i(x)`. Nothing is expanded.
pub fn det_formula_consistent_at_points(generic: &GenericFixedMatrix, trials: usize, seed: u64) -> bool {
    let sizes = generic.partition().conjugate().parts().to_vec();
    let grid = generic.grid();
    let k = grid.blocks();
    (0..trials as u64).all(|t| {
        let m = generic.specialize_random(seed.wrapping_add(t), DEFAULT_SPECIALIZATION_BOUND);
        let p = RingMatrix::from_fn(k, k, |i, j| m.get(grid.range(i).start, grid.range(j).end - 1).clone());
        let rhs = sizes.iter().fold(<Rational as Ring>::one(), |acc, &s| {
            let idx: Vec<usize> = (0..s).collect();
            acc.mul(&p.submatrix(&idx, &idx).det_bareiss().expect("square"))
        });
        m.det_bareiss().expect("square") == rhs
    })
}

/// Whether `Π det P_i` is identically zero. Expanded factors are read
/// directly. A deferred factor is nonzero if it is nonzero at one of
/// `trials` random points; otherwise it is expanded to decide exactly.
pub fn formula_vanishes(generic: &GenericFixedMatrix, factors: &[Option<ZPoly>], trials: usize, seed: u64) -> bool {
    let sizes = generic.partition().conjugate().parts().to_vec();
    let p = upper_right_matrix(generic);
    factors.iter().zip(sizes).any(|(factor, s)| match factor {
        Some(f) => f.is_zero(),
        None => {
            let idx: Vec<usize> = (0..s).collect();
            let minor = p.submatrix(&idx, &idx);
            let nonzero_somewhere = (0..trials as u64).any(|t| {
                let point = crate::algebra::random_specialization(
                    generic.catalog(),
                    seed.wrapping_add(t),
                    DEFAULT_SPECIALIZATION_BOUND,
                );
                let value = minor.try_map(|x| x.evaluate(&point)).expect("every variable assigned");
                !Ring::is_zero(&value.det_bareiss().expect("square"))
            });
            !nonzero_somewhere && minor.det().expect("square").is_zero()
        }
    })
}

/// The corank predicted by the degeneracy number.
pub fn corank_expected(partition: &Partition) -> usize {
    partition.degeneracy()
}

/// Randomized corank: `n` minus the largest rank seen over `trials` seeded
/// specializations with entries bounded by `10^6`.
pub fn corank_computed(generic: &GenericFixedMatrix, trials: usize, seed: u64) -> usize {
    assert!(trials >= 1, "at least one trial");
    let best = (0..trials as u64)
        .map(|t| {
            generic
                .specialize_random(seed.wrapping_add(t), DEFAULT_SPECIALIZATION_BOUND)
                .rank_and_nullspace()
                .0
        })
        .max()
        .unwrap_or(0);
    generic.n() - best
}

/// Upper bound on the probability that `trials` independent specializations
/// all under-report the rank, by the Schwartz–Zippel bound on the degree-`≤ n`
/// witness minor over `2·10^6` sample values.
pub fn corank_false_pass_bound(n: usize, trials: usize) -> f64 {
    let per_trial = n as f64 / (2.0 * DEFAULT_SPECIALIZATION_BOUND as f64);
    per_trial.powi(trials as i32)
}

/// Exact corank over the fraction field of the polynomial ring.
///
/// Pivot rows and columns are read off a random specialization, then
/// certified symbolically: the pivot minor must be nonzero (rank at least
/// `r`) and each free column must yield a Cramer vector in the kernel of `M`
/// (rank at most `r`). The answer is exact whichever seed is used. If no
/// attempt certifies, fraction-free elimination decides.
pub fn corank_exact(generic: &GenericFixedMatrix) -> usize {
    let m = generic.matrix();
    let n = generic.n();
    if !m.det().expect("square").is_zero() {
        return 0;
    }
    for seed in 0..EXACT_RANK_ATTEMPTS {
        let sample = generic.specialize_random(seed, DEFAULT_SPECIALIZATION_BOUND);
        let (_, cols) = sample.rref();
        let (_, rows) = sample.transpose().rref();
        if certified_rank(m, &rows, &cols) {
            return n - cols.len();
        }
    }
    n - m.echelon_pivots().rank()
}

const EXACT_RANK_ATTEMPTS: u64 = 4;

fn certified_rank(m: &RingMatrix<ZPoly>, rows: &[usize], cols: &[usize]) -> bool {
    if rows.len() != cols.len() {
        return false;
    }
    let a = m.submatrix(rows, cols);
    let minor = a.det().expect("square");
    if minor.is_zero() {
        return false;
    }
    (0..m.cols()).filter(|j| !cols.contains(j)).all(|j| {
        let mut v = vec![<ZPoly as Ring>::zero(); m.cols()];
        v[j] = minor.clone();
        for (k, &c) in cols.iter().enumerate() {
            let replaced = RingMatrix::from_fn(a.rows(), a.cols(), |r, s| {
                if s == k {
                    m.get(rows[r], j).clone()
                } else {
                    a.get(r, s).clone()
                }
            });
            v[c] = -replaced.det().expect("square");
        }
        m.mul_vec(&v).expect("conformable").iter().all(Ring::is_zero)
    })
}

/// Column and row selections of the rank upper-bound argument.
#[derive(Clone, Debug)]
pub struct RestrictedMatrices {
    /// Zero-based columns of `M` kept in `M'`: the last `d_p(λ)` columns of
    /// each column block with part `p`.
    pub columns: Vec<usize>,
    /// Zero-based rows of `M` kept in `M''`: the first `d_p(λ)` rows of each
    /// row block with part `p`.
    pub rows: Vec<usize>,
    pub m_prime: RingMatrix<ZPoly>,
    pub m_double_prime: RingMatrix<ZPoly>,
}

impl RestrictedMatrices {
    /// Whether the rows of `M'` dropped when forming `M''` are all zero.
    pub fn deleted_rows_are_zero(&self) -> bool {
        (0..self.m_prime.rows())
            .filter(|r| !self.rows.contains(r))
            .all(|r| self.m_prime.row(r).iter().all(Ring::is_zero))
    }
}

pub fn restricted_matrices(generic: &GenericFixedMatrix) -> RestrictedMatrices {
    let lam = generic.partition();
    let grid = generic.grid();
    let mut columns = Vec::new();
    let mut rows = Vec::new();
    for (b, &part) in lam.parts().iter().enumerate() {
        let d = lam.partial_degeneracy(part).expect("part is within range");
        let range = grid.range(b);
        columns.extend(range.end - d..range.end);
        rows.extend(range.start..range.start + d);
    }
    let all_rows: Vec<usize> = (0..generic.n()).collect();
    let m_prime = generic.matrix().submatrix(&all_rows, &columns);
    let m_double_prime = generic.matrix().submatrix(&rows, &columns);
    RestrictedMatrices {
        columns,
        rows,
        m_prime,
        m_double_prime,
    }
}

/// Symbolic null vectors of `M`, found from the null space of `M''` and
/// padded with zeros outside the selected columns.
pub fn null_basis(generic: &GenericFixedMatrix) -> Vec<Vec<ZPoly>> {
    let restricted = restricted_matrices(generic);
    let n = generic.n();
    restricted
        .m_double_prime
        .null_basis_fraction_free()
        .into_iter()
        .map(|small| {
            let mut v = vec![<ZPoly as Ring>::zero(); n];
            for (k, &c) in restricted.columns.iter().enumerate() {
                v[c] = small[k].clone();
            }
            v
        })
        .collect()
}

/// How a witness minor was certified nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// The minor was expanded symbolically.
    Symbolic,
    /// The minor is nonzero at a random integer point.
    Specialization,
}

#[derive(Clone, Debug)]
pub struct MinorWitness {
    /// Zero-based row indices.
    pub rows: Vec<usize>,
    /// Zero-based column indices.
    pub cols: Vec<usize>,
    /// The expanded minor, when computed symbolically.
    pub minor_det: Option<ZPoly>,
    /// Product of the entries along the constructed transversal, if the
    /// construction (rather than the fallback search) produced the witness.
    pub transversal_product: Option<ZPoly>,
    pub certification: Certification,
    pub from_construction: bool,
}

impl MinorWitness {
    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// Row/column selection and transversal from the coarsened decomposition.
///
/// Equal parts are merged into one diagonal group block. Each group
/// contributes its main antidiagonal, except that for an even part with odd
/// multiplicity the last row and column of the middle block are dropped and
/// that block uses the antidiagonal just above its main antidiagonal.
/// Returns the kept indices and the column matched to each kept row.
pub fn constructed_selection(partition: &Partition) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut kept = Vec::new();
    let mut transversal = Vec::new();
    let mut offset = 0;
    for (&part, &mult) in partition.multiplicities().iter().rev() {
        let size = part * mult;
        let degenerate = part % 2 == 0 && mult % 2 == 1;
        let middle = mult / 2;
        for r in 0..size {
            let block = r / part;
            if degenerate && block == middle {
                let local = r % part;
                if local == part - 1 {
                    continue;
                }
                transversal.push((offset + r, offset + middle * part + (part - 2 - local)));
            } else {
                transversal.push((offset + r, offset + size - 1 - r));
            }
            kept.push(offset + r);
        }
        offset += size;
    }
    (kept, transversal)
}

/// A verified nonzero minor of size `n − d(λ)`.
///
/// The constructed selection is tried first; if it cannot be verified, a
/// pivot search on random specializations supplies the certificate.
pub fn witness_minor(
    generic: &GenericFixedMatrix,
    symbolic_bound: usize,
    seed: u64,
    trials: usize,
) -> Result<MinorWitness> {
    let n = generic.n();
    let target = n - generic.partition().degeneracy();
    let (kept, transversal) = constructed_selection(generic.partition());
    let m = generic.matrix();

    let transversal_product = transversal
        .iter()
        .fold(<ZPoly as Ring>::one(), |acc, &(r, c)| &acc * m.get(r, c));
    if let Some(w) = certify(generic, &kept, &kept, symbolic_bound, seed, trials) {
        return Ok(MinorWitness {
            transversal_product: Some(transversal_product),
            from_construction: true,
            ..w
        });
    }

    for t in 0..trials as u64 {
        let sample = generic.specialize_random(seed.wrapping_add(t), DEFAULT_SPECIALIZATION_BOUND);
        let (_, pivot_cols) = sample.rref();
        let (_, pivot_rows) = sample.transpose().rref();
        if pivot_cols.len() < target {
            continue;
        }
        let rows = pivot_rows[..target].to_vec();
        let cols = pivot_cols[..target].to_vec();
        if let Some(w) = certify(generic, &rows, &cols, symbolic_bound, seed, trials) {
            return Ok(w);
        }
    }
    Err(Error::WitnessNotFound { size: target, trials })
}

fn certify(
    generic: &GenericFixedMatrix,
    rows: &[usize],
    cols: &[usize],
    symbolic_bound: usize,
    seed: u64,
    trials: usize,
) -> Option<MinorWitness> {
    let sub = generic.matrix().submatrix(rows, cols);
    let witness = |minor_det, certification| MinorWitness {
        rows: rows.to_vec(),
        cols: cols.to_vec(),
        minor_det,
        transversal_product: None,
        certification,
        from_construction: false,
    };
    if generic.n() <= symbolic_bound {
        let det = sub.det().expect("square");
        return (!det.is_zero()).then(|| witness(Some(det), Certification::Symbolic));
    }
    (0..trials as u64)
        .any(|t| {
            let sample = generic
                .specialize_random(seed.wrapping_add(t), DEFAULT_SPECIALIZATION_BOUND)
                .submatrix(rows, cols);
            !Ring::is_zero(&sample.det_bareiss().expect("square"))
        })
        .then(|| witness(None, Certification::Specialization))
}

/// Null vectors and a nonzero minor that together pin the rank to `n − d(λ)`.
#[derive(Clone, Debug)]
pub struct RankWitness {
    pub corank: usize,
    pub restricted: RestrictedMatrices,
    pub null_vectors: Vec<Vec<ZPoly>>,
    pub minor: MinorWitness,
}

pub fn rank_witness(
    generic: &GenericFixedMatrix,
    symbolic_bound: usize,
    seed: u64,
    trials: usize,
) -> Result<RankWitness> {
    Ok(RankWitness {
        corank: corank_expected(generic.partition()),
        restricted: restricted_matrices(generic),
        null_vectors: null_basis(generic),
        minor: witness_minor(generic, symbolic_bound, seed, trials)?,
    })
}

impl RankWitness {
    /// Every null vector is annihilated by `M`, the vectors are independent,
    /// there are exactly `d(λ)` of them, and the minor has size `n − d(λ)`.
    pub fn verify(&self, generic: &GenericFixedMatrix) -> bool {
        let n = generic.n();
        let m = generic.matrix();
        let annihilated = self
            .null_vectors
            .iter()
            .all(|v| m.mul_vec(v).map(|out| out.iter().all(Ring::is_zero)).unwrap_or(false));
        let independent = self.null_vectors.is_empty()
            || RingMatrix::from_rows(self.null_vectors.clone()).rank() == self.null_vectors.len();
        annihilated
            && independent
            && self.null_vectors.len() == self.corank
            && self.minor.size() == n - self.corank
            && self.restricted.deleted_rows_are_zero()
    }
}

/// Whether two families of vectors span the same space, tested by ranks of
/// the stacked matrices at a random specialization.
pub fn same_span_at_point(a: &[Vec<ZPoly>], b: &[Vec<ZPoly>], catalog: &crate::algebra::Catalog, seed: u64) -> bool {
    let point = crate::algebra::random_specialization(catalog, seed, DEFAULT_SPECIALIZATION_BOUND);
    let eval = |vs: &[Vec<ZPoly>]| -> Vec<Vec<Rational>> {
        vs.iter()
            .map(|v| v.iter().map(|x| x.evaluate(&point).expect("assigned")).collect())
            .collect()
    };
    let (ea, eb) = (eval(a), eval(b));
    let rank = |rows: Vec<Vec<Rational>>| {
        if rows.is_empty() {
            0
        } else {
            RingMatrix::from_rows(rows).rank_and_nullspace().0
        }
    };
    let ra = rank(ea.clone());
    let rb = rank(eb.clone());
    let stacked = rank(ea.into_iter().chain(eb).collect());
    ra == rb && ra == stacked
}
