//! The space `S^λ` of symmetric matrices `A` with `N_λ A + A N_λᵀ = 0`.
//!
//! Two independent descriptions live here: the closed-form generic element
//! assembled from the `A_p` and `B_{p,q}` blocks, and a brute-force basis
//! obtained by solving the linear fixed-point condition over ℚ.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{random_specialization, Catalog, QPoly, Rational, RationalAlgebra, Ring, RingMatrix, ZPoly};
use crate::error::{Error, Result};
use crate::partitions::{BlockGrid, Partition};

/// Default bound on `n` for the brute-force linear solve.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 12;

/// Where a variable of the generic element comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VariableOrigin {
    /// 1-based block coordinates `(i, j)` with `i ≤ j`.
    pub block: (usize, usize),
    /// 1-based index of the variable inside its block.
    pub index: usize,
}

/// The generic element of `S^λ`: one fresh variable per free parameter.
#[derive(Clone, Debug)]
pub struct GenericFixedMatrix {
    partition: Partition,
    grid: BlockGrid,
    catalog: Catalog,
    matrix: RingMatrix<ZPoly>,
    provenance: Vec<VariableOrigin>,
}

/// Sign and 1-based variable index of entry `(r, c)` of `A_size`.
fn a_entry(size: usize, r: usize, c: usize) -> Option<(usize, bool)> {
    let s = r + c;
    (s % 2 == 0 && s / 2 <= size.div_ceil(2)).then_some((s / 2, r % 2 == 0))
}

/// Sign and 1-based variable index of entry `(r, c)` of `B_{p,q}`.
fn b_entry(q: usize, r: usize, c: usize) -> Option<(usize, bool)> {
    (r + c - 1 <= q).then_some((r + c - 1, r % 2 == 0))
}

fn signed(v: &ZPoly, negative: bool) -> ZPoly {
    if negative {
        -v
    } else {
        v.clone()
    }
}

fn fresh_variables(prefix: &str, count: usize) -> Vec<ZPoly> {
    let catalog = Catalog::new((1..=count).map(|t| format!("{prefix}{t}")));
    (0..count).map(|t| ZPoly::var(&catalog, t)).collect()
}

/// The symmetric block `A_size` over fresh variables `{prefix}1, {prefix}2, …`.
pub fn block_a(size: usize, prefix: &str) -> RingMatrix<ZPoly> {
    let vars = fresh_variables(prefix, size.div_ceil(2));
    RingMatrix::from_fn(size, size, |r, c| match a_entry(size, r + 1, c + 1) {
        Some((t, neg)) => signed(&vars[t - 1], neg),
        None => ZPoly::zero(),
    })
}

/// The `p × q` block `B_{p,q}` over fresh variables `{prefix}1, …, {prefix}q`.
pub fn block_b(p: usize, q: usize, prefix: &str) -> Result<RingMatrix<ZPoly>> {
    if q == 0 || p < q {
        return Err(Error::BadShape { p, q });
    }
    let vars = fresh_variables(prefix, q);
    Ok(RingMatrix::from_fn(p, q, |r, c| match b_entry(q, r + 1, c + 1) {
        Some((t, neg)) => signed(&vars[t - 1], neg),
        None => ZPoly::zero(),
    }))
}

/// Block-diagonal nilpotent Jordan matrix `N_λ`.
pub fn jordan_nilpotent<R: Ring>(partition: &Partition) -> RingMatrix<R> {
    let grid = partition.block_grid();
    let n = grid.n();
    RingMatrix::from_fn(n, n, |r, c| {
        if c == r + 1 && grid.block_of(r) == grid.block_of(c) {
            R::one()
        } else {
            R::zero()
        }
    })
}

/// `exp(N) = Σ_{k<n} N^k / k!`, after checking that `N^n = 0`.
pub fn exp_nilpotent(n_mat: &RingMatrix<Rational>) -> Result<RingMatrix<Rational>> {
    if !n_mat.is_square() {
        return Err(Error::NotSquare {
            rows: n_mat.rows(),
            cols: n_mat.cols(),
        });
    }
    let n = n_mat.rows();
    let mut sum = RingMatrix::<Rational>::identity(n);
    let mut power = RingMatrix::<Rational>::identity(n);
    let mut factorial = BigInt::one();
    for k in 1..=n {
        power = power.mul(n_mat)?;
        if power.is_zero() {
            return Ok(sum);
        }
        if k == n {
            break;
        }
        factorial *= BigInt::from(k);
        let inv = Rational::new(BigInt::one(), factorial.clone());
        sum = sum.add(&power.scale(&inv))?;
    }
    Err(Error::NotNilpotent)
}

/// `N·A + A·Nᵀ`.
pub fn lie_residual<R: Ring>(n_mat: &RingMatrix<R>, a: &RingMatrix<R>) -> Result<RingMatrix<R>> {
    if !n_mat.is_square() || n_mat.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            op: "lie_residual",
            left: n_mat.shape(),
            right: a.shape(),
        });
    }
    n_mat.mul(a)?.add(&a.mul(&n_mat.transpose())?)
}

/// `dim S^λ = Σ ⌊(λ_i+1)/2⌋ + Σ (i−1) λ_i`.
pub fn dim_s(partition: &Partition) -> usize {
    partition
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p.div_ceil(2) + i * p)
        .sum()
}

/// Dimension of the projective space `Q^λ = P(S^λ)`.
pub fn dim_q(partition: &Partition) -> usize {
    dim_s(partition) - 1
}

impl GenericFixedMatrix {
    /// Assembles `A_{λ_i}` on the diagonal and `B_{λ_i,λ_j}` above it.
    ///
    /// Blocks are visited column-major over the upper triangle (for
    /// `j = 1..k`, for `i = 1..j`), which fixes the catalog order. Variables
    /// are named `v{i}_{j}_{t}`.
    pub fn new(partition: &Partition) -> Self {
        let grid = partition.block_grid();
        let k = partition.len();
        let parts = partition.parts();

        let mut names = Vec::new();
        let mut provenance = Vec::new();
        let mut first_var = BTreeMap::new();
        for j in 1..=k {
            for i in 1..=j {
                let count = if i == j { parts[i - 1].div_ceil(2) } else { parts[j - 1] };
                first_var.insert((i, j), names.len());
                for t in 1..=count {
                    names.push(format!("v{i}_{j}_{t}"));
                    provenance.push(VariableOrigin {
                        block: (i, j),
                        index: t,
                    });
                }
            }
        }
        let catalog = Catalog::new(names);
        let vars: Vec<ZPoly> = (0..catalog.len()).map(|v| ZPoly::var(&catalog, v)).collect();

        let n = grid.n();
        let matrix = RingMatrix::from_fn(n, n, |r, c| {
            let (bi, bj) = (grid.block_of(r), grid.block_of(c));
            let (lo, hi) = (bi.min(bj), bi.max(bj));
            // Entries below the block diagonal are read from the transposed upper block.
            let (rr, cc) = if bi <= bj {
                (r - grid.offsets()[bi] + 1, c - grid.offsets()[bj] + 1)
            } else {
                (c - grid.offsets()[bj] + 1, r - grid.offsets()[bi] + 1)
            };
            let entry = if lo == hi {
                a_entry(parts[lo], rr, cc)
            } else {
                b_entry(parts[hi], rr, cc)
            };
            match entry {
                Some((t, neg)) => signed(&vars[first_var[&(lo + 1, hi + 1)] + t - 1], neg),
                None => ZPoly::zero(),
            }
        });

        GenericFixedMatrix {
            partition: partition.clone(),
            grid,
            catalog,
            matrix,
            provenance,
        }
    }

    /// Same matrix with variables renamed `a, b, c, …` in catalog order.
    pub fn with_letters(&self) -> Result<Self> {
        let count = self.catalog.len();
        if count > 26 {
            return Err(Error::TooManyVariables { count });
        }
        let letters = Catalog::new((0..count).map(|i| ((b'a' + i as u8) as char).to_string()));
        Ok(GenericFixedMatrix {
            catalog: letters.clone(),
            matrix: self.matrix.map(|p| p.renamed(&letters)),
            ..self.clone()
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn grid(&self) -> &BlockGrid {
        &self.grid
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn matrix(&self) -> &RingMatrix<ZPoly> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_variables(&self) -> usize {
        self.catalog.len()
    }

    pub fn provenance(&self) -> &[VariableOrigin] {
        &self.provenance
    }

    /// Specialization at values given by catalog position.
    pub fn specialize_indexed(&self, values: &[Rational]) -> RingMatrix<Rational> {
        self.matrix.map(|p| p.evaluate_indexed(values))
    }

    /// Specialization at a named point.
    pub fn specialize(&self, point: &BTreeMap<String, Rational>) -> Result<RingMatrix<Rational>> {
        self.matrix.try_map(|p| p.evaluate(point))
    }

    /// Specialization at the seeded random point with the given bound.
    pub fn specialize_random(&self, seed: u64, bound: u64) -> RingMatrix<Rational> {
        let point = random_specialization(&self.catalog, seed, bound);
        let values: Vec<Rational> = self.catalog.names().iter().map(|n| point[n].clone()).collect();
        self.specialize_indexed(&values)
    }

    /// The matrix with variable `v` set to 1 and all others to 0.
    pub fn coordinate_matrix(&self, v: usize) -> RingMatrix<Rational> {
        let values: Vec<Rational> = (0..self.catalog.len())
            .map(|i| {
                if i == v {
                    <Rational as One>::one()
                } else {
                    <Rational as Zero>::zero()
                }
            })
            .collect();
        self.specialize_indexed(&values)
    }

    /// Whether `b` is a specialization of this pattern: every zero entry of
    /// the pattern is zero in `b`, and all occurrences of each variable
    /// imply the same value.
    pub fn pattern_contains(&self, b: &RingMatrix<Rational>) -> bool {
        if b.shape() != self.matrix.shape() {
            return false;
        }
        let mut implied: Vec<Option<Rational>> = vec![None; self.catalog.len()];
        for r in 0..self.n() {
            for c in 0..self.n() {
                let value = b.get(r, c);
                let entry = self.matrix.get(r, c);
                if entry.is_zero() {
                    if !Ring::is_zero(value) {
                        return false;
                    }
                    continue;
                }
                let (v, neg) = entry
                    .as_signed_variable()
                    .expect("generic entries are ±single variables");
                let x = if neg { -value } else { value.clone() };
                match &implied[v] {
                    Some(prev) if *prev != x => return false,
                    Some(_) => {}
                    None => implied[v] = Some(x),
                }
            }
        }
        true
    }
}

/// A basis of `S^λ` found by solving the fixed-point condition directly.
#[derive(Clone, Debug)]
pub struct FixedSpaceBasis {
    pub partition: Partition,
    pub basis: Vec<RingMatrix<Rational>>,
    pub dim: usize,
}

/// Solves `N_λ A + A N_λᵀ = 0` over ℚ with the `n(n+1)/2` upper-triangle
/// entries of `A` (row-major) as unknowns.
pub fn brute_force_fixed_basis(partition: &Partition) -> Result<FixedSpaceBasis> {
    brute_force_fixed_basis_bounded(partition, DEFAULT_BRUTE_FORCE_BOUND)
}

pub fn brute_force_fixed_basis_bounded(partition: &Partition, bound: usize) -> Result<FixedSpaceBasis> {
    let n = partition.n();
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let nmat: RingMatrix<Rational> = jordan_nilpotent(partition);
    let unknown = |r: usize, c: usize| {
        let (r, c) = (r.min(c), r.max(c));
        r * n - r * (r + 1) / 2 + c
    };
    let num_unknowns = n * (n + 1) / 2;
    let mut equations = Vec::new();
    for i in 0..n {
        for j in i..n {
            // (N A)_{ij} + (A Nᵀ)_{ij} = Σ_k N_{ik} A_{kj} + Σ_k A_{ik} N_{jk}
            let mut row = vec![<Rational as Zero>::zero(); num_unknowns];
            for k in 0..n {
                let nik = nmat.get(i, k);
                if !Ring::is_zero(nik) {
                    row[unknown(k, j)] += nik;
                }
                let njk = nmat.get(j, k);
                if !Ring::is_zero(njk) {
                    row[unknown(i, k)] += njk;
                }
            }
            equations.push(row);
        }
    }
    let system = RingMatrix::from_rows(equations);
    let (_, null) = system.rank_and_nullspace();
    let basis: Vec<RingMatrix<Rational>> = null
        .iter()
        .map(|v| RingMatrix::from_fn(n, n, |r, c| v[unknown(r, c)].clone()))
        .collect();
    Ok(FixedSpaceBasis {
        partition: partition.clone(),
        dim: basis.len(),
        basis,
    })
}

/// Both inclusions between the brute-force solution space and the closed
/// form: every basis matrix specializes the pattern, and every coordinate
/// matrix of the pattern satisfies the fixed-point condition.
pub fn spans_agree(generic: &GenericFixedMatrix, brute: &FixedSpaceBasis) -> bool {
    let nmat: RingMatrix<Rational> = jordan_nilpotent(generic.partition());
    let brute_in_pattern = brute.basis.iter().all(|b| generic.pattern_contains(b));
    let pattern_in_space = (0..generic.num_variables()).all(|v| {
        lie_residual(&nmat, &generic.coordinate_matrix(v))
            .map(|res| res.is_zero())
            .unwrap_or(false)
    });
    brute_in_pattern && pattern_in_space
}

/// Whether `N_λ M + M N_λᵀ` vanishes as a polynomial matrix.
pub fn symbolic_membership(generic: &GenericFixedMatrix) -> bool {
    let nmat: RingMatrix<ZPoly> = jordan_nilpotent(generic.partition());
    lie_residual(&nmat, generic.matrix())
        .map(|res| res.is_zero())
        .unwrap_or(false)
}

/// Whether `u M uᵀ = M` for `u = exp(N_λ)`, as polynomial matrices.
pub fn exp_fixes(generic: &GenericFixedMatrix) -> Result<bool> {
    let u = exp_nilpotent(&jordan_nilpotent(generic.partition()))?;
    let u_poly: RingMatrix<QPoly> = u.lift();
    let m = generic.matrix().map(ZPoly::to_rational_coefficients);
    let moved = u_poly.mul(&m)?.mul(&u_poly.transpose())?;
    Ok(moved == m)
}

/// Change of basis by an invertible `S`: `N' = S N_λ S⁻¹` and `A ↦ S A Sᵀ`.
#[derive(Clone, Debug)]
pub struct ConjugationTransport {
    pub s: RingMatrix<Rational>,
    pub s_inverse: RingMatrix<Rational>,
    pub n_prime: RingMatrix<Rational>,
}

pub fn conjugation_transport(s: &RingMatrix<Rational>, partition: &Partition) -> Result<ConjugationTransport> {
    let n = partition.n();
    if s.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "conjugation_transport",
            left: s.shape(),
            right: (n, n),
        });
    }
    let s_inverse = s.inverse().ok_or(Error::SingularS)?;
    let nmat: RingMatrix<Rational> = jordan_nilpotent(partition);
    let n_prime = s.mul(&nmat)?.mul(&s_inverse)?;
    Ok(ConjugationTransport {
        s: s.clone(),
        s_inverse,
        n_prime,
    })
}

impl ConjugationTransport {
    pub fn apply<R: RationalAlgebra>(&self, a: &RingMatrix<R>) -> Result<RingMatrix<R>> {
        let s: RingMatrix<R> = self.s.lift();
        s.mul(a)?.mul(&s.transpose())
    }

    /// `N' (S A Sᵀ) + (S A Sᵀ) N'ᵀ`.
    pub fn residual<R: RationalAlgebra>(&self, a: &RingMatrix<R>) -> Result<RingMatrix<R>> {
        lie_residual(&self.n_prime.lift(), &self.apply(a)?)
    }
}

/// A seeded random invertible integer matrix with entries in `[-3, 3]`.
pub fn random_invertible(n: usize, seed: u64) -> RingMatrix<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let s = RingMatrix::from_fn(n, n, |_, _| Rational::from_integer(rng.random_range(-3i64..=3).into()));
        if !Ring::is_zero(&s.det_bareiss().expect("square")) {
            return s;
        }
    }
}

/// Checks equivariance on `count` seeded random changes of basis, applied to
/// a random specialization of the generic element.
pub fn conjugation_equivariance(generic: &GenericFixedMatrix, seed: u64, count: usize) -> Result<bool> {
    let n = generic.n();
    for trial in 0..count as u64 {
        let s = random_invertible(n, seed.wrapping_add(trial));
        let transport = conjugation_transport(&s, generic.partition())?;
        let a = generic.specialize_random(seed.wrapping_add(trial), 100);
        if !transport.residual(&a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::partitions::enumerate_partitions;

    fn p(parts: &[usize]) -> Partition {
        Partition::normalize(parts).unwrap()
    }

    fn poly_rows(m: &RingMatrix<ZPoly>) -> Vec<Vec<String>> {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    fn strs(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    fn qm(rows: &[&[i64]]) -> RingMatrix<Rational> {
        RingMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn jordan_examples() {
        let one: RingMatrix<Rational> = jordan_nilpotent(&p(&[1]));
        assert_eq!(one, qm(&[&[0]]));
        let two: RingMatrix<Rational> = jordan_nilpotent(&p(&[2]));
        assert_eq!(two, qm(&[&[0, 1], &[0, 0]]));
        let two_one: RingMatrix<Rational> = jordan_nilpotent(&p(&[2, 1]));
        assert_eq!(two_one, qm(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
    }

    #[test]
    fn exp_examples() {
        let n2: RingMatrix<Rational> = jordan_nilpotent(&p(&[2]));
        assert_eq!(exp_nilpotent(&n2).unwrap(), qm(&[&[1, 1], &[0, 1]]));
        let n3: RingMatrix<Rational> = jordan_nilpotent(&p(&[3]));
        let u3 = exp_nilpotent(&n3).unwrap();
        let half = rational(1, 2);
        let expected = RingMatrix::from_rows(vec![
            vec![rational(1, 1), rational(1, 1), half],
            vec![rational(0, 1), rational(1, 1), rational(1, 1)],
            vec![rational(0, 1), rational(0, 1), rational(1, 1)],
        ]);
        assert_eq!(u3, expected);
        let zero = RingMatrix::<Rational>::zeros(3, 3);
        assert_eq!(exp_nilpotent(&zero).unwrap(), RingMatrix::identity(3));
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        assert_eq!(exp_nilpotent(&qm(&[&[1, 0], &[0, 0]])), Err(Error::NotNilpotent));
        assert!(matches!(exp_nilpotent(&qm(&[&[0, 1]])), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn unipotence_of_exp() {
        for n in 1..=6 {
            for lam in enumerate_partitions(n).unwrap() {
                let u = exp_nilpotent(&jordan_nilpotent(&lam)).unwrap();
                let shifted = u.sub(&RingMatrix::identity(n)).unwrap();
                assert!(shifted.pow(n as u32).unwrap().is_zero());
                assert_eq!(u.det().unwrap(), <Rational as One>::one());
            }
        }
    }

    #[test]
    fn block_a_examples() {
        assert_eq!(poly_rows(&block_a(2, "a")), strs(&[&["a1", "0"], &["0", "0"]]));
        assert_eq!(
            poly_rows(&block_a(3, "a")),
            strs(&[&["a1", "0", "a2"], &["0", "-a2", "0"], &["a2", "0", "0"]])
        );
        assert_eq!(
            poly_rows(&block_a(4, "a")),
            strs(&[
                &["a1", "0", "a2", "0"],
                &["0", "-a2", "0", "0"],
                &["a2", "0", "0", "0"],
                &["0", "0", "0", "0"]
            ])
        );
    }

    #[test]
    fn block_a_matches_displayed_odd_form() {
        // A_5: first row a1 0 a2 0 a3, second row 0 -a2 0 -a3 0, last row a3 0 0 0 0.
        let a5 = poly_rows(&block_a(5, "a"));
        assert_eq!(a5[0], vec!["a1", "0", "a2", "0", "a3"]);
        assert_eq!(a5[1], vec!["0", "-a2", "0", "-a3", "0"]);
        assert_eq!(a5[4], vec!["a3", "0", "0", "0", "0"]);
        assert!(block_a(5, "a").is_symmetric());
        // Even sizes pad the previous odd block with a zero row and column.
        let a6 = block_a(6, "a");
        assert_eq!(a6.submatrix(&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4]), block_a(5, "a"));
        assert!(a6.row(5).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn block_b_examples() {
        assert_eq!(
            poly_rows(&block_b(2, 2, "a").unwrap()),
            strs(&[&["a1", "a2"], &["-a2", "0"]])
        );
        assert_eq!(
            poly_rows(&block_b(3, 2, "a").unwrap()),
            strs(&[&["a1", "a2"], &["-a2", "0"], &["0", "0"]])
        );
        assert_eq!(
            poly_rows(&block_b(4, 1, "a").unwrap()),
            strs(&[&["a1"], &["0"], &["0"], &["0"]])
        );
        // (q,1) entry is a_q for q odd and -a_q for q even
        assert_eq!(block_b(3, 3, "a").unwrap().get(2, 0).to_string(), "a3");
        assert_eq!(block_b(4, 4, "a").unwrap().get(3, 0).to_string(), "-a4");
        assert_eq!(block_b(1, 2, "a"), Err(Error::BadShape { p: 1, q: 2 }));
    }

    #[test]
    fn generic_two_two_one_one_matches_display() {
        let g = GenericFixedMatrix::new(&p(&[2, 2, 1, 1])).with_letters().unwrap();
        assert_eq!(
            poly_rows(g.matrix()),
            strs(&[
                &["a", "0", "b", "c", "e", "h"],
                &["0", "0", "-c", "0", "0", "0"],
                &["b", "-c", "d", "0", "f", "i"],
                &["c", "0", "0", "0", "0", "0"],
                &["e", "0", "f", "0", "g", "j"],
                &["h", "0", "i", "0", "j", "k"],
            ])
        );
    }

    #[test]
    fn generic_three_two_one_matches_display() {
        let g = GenericFixedMatrix::new(&p(&[3, 2, 1])).with_letters().unwrap();
        assert_eq!(
            poly_rows(g.matrix()),
            strs(&[
                &["a", "0", "b", "c", "d", "f"],
                &["0", "-b", "0", "-d", "0", "0"],
                &["b", "0", "0", "0", "0", "0"],
                &["c", "-d", "0", "e", "0", "g"],
                &["d", "0", "0", "0", "0", "0"],
                &["f", "0", "0", "g", "0", "h"],
            ])
        );
    }

    #[test]
    fn generic_all_ones_is_full_symmetric() {
        let g = GenericFixedMatrix::new(&p(&[1, 1])).with_letters().unwrap();
        assert_eq!(poly_rows(g.matrix()), strs(&[&["a", "b"], &["b", "c"]]));
    }

    #[test]
    fn canonical_names_and_provenance() {
        let g = GenericFixedMatrix::new(&p(&[3, 2, 1]));
        assert_eq!(g.catalog().names()[0], "v1_1_1");
        assert_eq!(g.catalog().names()[2], "v1_2_1");
        assert_eq!(
            g.provenance()[2],
            VariableOrigin {
                block: (1, 2),
                index: 1
            }
        );
        assert_eq!(
            g.provenance()[7],
            VariableOrigin {
                block: (3, 3),
                index: 1
            }
        );
    }

    #[test]
    fn letters_refused_beyond_26() {
        let g = GenericFixedMatrix::new(&p(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(g.num_variables(), 28);
        assert_eq!(g.with_letters().unwrap_err(), Error::TooManyVariables { count: 28 });
    }

    #[test]
    fn lie_residual_examples() {
        let g = GenericFixedMatrix::new(&p(&[3, 2, 1]));
        assert!(symbolic_membership(&g));
        let zero = RingMatrix::<Rational>::zeros(2, 2);
        let any = qm(&[&[1, 2], &[2, 5]]);
        assert!(lie_residual(&zero, &any).unwrap().is_zero());
        let n2: RingMatrix<Rational> = jordan_nilpotent(&p(&[2]));
        assert_eq!(
            lie_residual(&n2, &RingMatrix::identity(2)).unwrap(),
            qm(&[&[0, 1], &[1, 0]])
        );
        assert!(lie_residual(&n2, &RingMatrix::identity(3)).is_err());
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_fixed_basis(&p(&[2, 2, 1, 1])).unwrap().dim, 11);
        for n in 1..=7 {
            assert_eq!(brute_force_fixed_basis(&p(&[n])).unwrap().dim, n.div_ceil(2));
            let ones = vec![1; n];
            assert_eq!(brute_force_fixed_basis(&p(&ones)).unwrap().dim, n * (n + 1) / 2);
        }
        assert_eq!(
            brute_force_fixed_basis(&p(&[13])).unwrap_err(),
            Error::BoundExceeded { n: 13, bound: 12 }
        );
    }

    #[test]
    fn dim_formula_examples() {
        assert_eq!((dim_s(&p(&[2, 2, 1, 1])), dim_q(&p(&[2, 2, 1, 1]))), (11, 10));
        for m in 1..6 {
            assert_eq!(dim_s(&p(&[2 * m - 1])), m);
        }
        assert_eq!((dim_s(&p(&[1, 1])), dim_q(&p(&[1, 1]))), (3, 2));
    }

    #[test]
    fn dimension_triple_match_and_spans() {
        for n in 1..=6 {
            for lam in enumerate_partitions(n).unwrap() {
                let g = GenericFixedMatrix::new(&lam);
                let brute = brute_force_fixed_basis(&lam).unwrap();
                assert_eq!(brute.dim, g.num_variables(), "{lam}");
                assert_eq!(dim_s(&lam), g.num_variables(), "{lam}");
                assert!(g.matrix().is_symmetric());
                assert!(spans_agree(&g, &brute), "{lam}");
            }
        }
    }

    #[test]
    fn pattern_rejects_foreign_matrix() {
        let g = GenericFixedMatrix::new(&p(&[2]));
        assert!(g.pattern_contains(&qm(&[&[3, 0], &[0, 0]])));
        assert!(!g.pattern_contains(&qm(&[&[3, 0], &[0, 1]])));
        let g = GenericFixedMatrix::new(&p(&[3]));
        // a2 appears as +a2 at (1,3) and -a2 at (2,2)
        assert!(g.pattern_contains(&qm(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]])));
        assert!(!g.pattern_contains(&qm(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])));
    }

    #[test]
    fn conjugation_examples() {
        let lam = p(&[2]);
        let t = conjugation_transport(&RingMatrix::identity(2), &lam).unwrap();
        let a = qm(&[&[4, 0], &[0, 0]]);
        assert_eq!(t.apply(&a).unwrap(), a);

        let s = qm(&[&[1, 0], &[0, 2]]);
        let t = conjugation_transport(&s, &lam).unwrap();
        assert_eq!(t.apply(&a).unwrap(), a);
        let expected_n = RingMatrix::from_rows(vec![
            vec![rational(0, 1), rational(1, 2)],
            vec![rational(0, 1), rational(0, 1)],
        ]);
        assert_eq!(t.n_prime, expected_n);
        assert!(t.residual(&a).unwrap().is_zero());

        let singular = qm(&[&[1, 1], &[1, 1]]);
        assert_eq!(conjugation_transport(&singular, &lam).unwrap_err(), Error::SingularS);
    }

    #[test]
    fn conjugation_random_three_two_one() {
        let g = GenericFixedMatrix::new(&p(&[3, 2, 1]));
        assert!(conjugation_equivariance(&g, 0, 5).unwrap());
        // A non-fixed matrix stays non-fixed after transport.
        let s = random_invertible(6, 3);
        let t = conjugation_transport(&s, g.partition()).unwrap();
        assert!(!t.residual(&RingMatrix::<Rational>::identity(6)).unwrap().is_zero());
    }

    #[test]
    fn exp_fixes_generic_elements() {
        for n in 1..=5 {
            for lam in enumerate_partitions(n).unwrap() {
                assert!(exp_fixes(&GenericFixedMatrix::new(&lam)).unwrap(), "{lam}");
            }
        }
    }
}
