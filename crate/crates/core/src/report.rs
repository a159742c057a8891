//! Per-partition verification reports and sweeps over all partitions of `n`.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Ring, RingMatrix, ZPoly};
use crate::error::{Error, Result};
use crate::fixed_space::{
    brute_force_fixed_basis_bounded, conjugation_equivariance, dim_q, dim_s, exp_fixes, spans_agree,
    symbolic_membership, FixedSpaceBasis, GenericFixedMatrix, DEFAULT_BRUTE_FORCE_BOUND,
};
use crate::partitions::{enumerate_partitions, Partition};
use crate::quadric::{
    corank_computed, corank_exact, corank_expected, corank_false_pass_bound, det_direct, det_factors_bounded,
    det_formula_consistent_at_points, formula_vanishes, null_basis, restricted_matrices, witness_minor, Certification,
    DEFAULT_EXACT_RANK_BOUND, DEFAULT_SYMBOLIC_BOUND,
};

/// Largest `n` for which the equivariance checks run by default.
pub const DEFAULT_EQUIVARIANCE_BOUND: usize = 8;
/// Number of random invertible `S` tried by the conjugation check.
pub const DEFAULT_CONJUGATION_COUNT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    pub trials: usize,
    pub symbolic_bound: usize,
    pub brute_force_bound: usize,
    pub exact_rank_bound: usize,
    pub equivariance_bound: usize,
    pub conjugation_count: usize,
    /// Name variables `a, b, c, …`.
    pub letters: bool,
    /// Record wall-clock milliseconds per check. Off by default so that
    /// output is reproducible byte for byte.
    pub timings: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            trials: 5,
            symbolic_bound: DEFAULT_SYMBOLIC_BOUND,
            brute_force_bound: DEFAULT_BRUTE_FORCE_BOUND,
            exact_rank_bound: DEFAULT_EXACT_RANK_BOUND,
            equivariance_bound: DEFAULT_EQUIVARIANCE_BOUND,
            conjugation_count: DEFAULT_CONJUGATION_COUNT,
            letters: false,
            timings: false,
        }
    }
}

impl Config {
    /// The generic element, lettered if requested.
    pub fn generic(&self, partition: &Partition) -> Result<GenericFixedMatrix> {
        let generic = GenericFixedMatrix::new(partition);
        if self.letters {
            generic.with_letters()
        } else {
            Ok(generic)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(status: Status, detail: Option<String>) -> Self {
        CheckResult {
            status,
            millis: None,
            detail,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        CheckResult::new(if ok { Status::Pass } else { Status::Fail }, None)
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        CheckResult::new(Status::Skipped, Some(reason.into()))
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub partition: Partition,
    pub n: usize,
    #[serde(rename = "dim_S")]
    pub dim_s: usize,
    #[serde(rename = "dim_Q")]
    pub dim_q: usize,
    pub degeneracy: usize,
    /// `det P_i` in canonical form, `null` where the minor is larger than
    /// the symbolic bound.
    pub det_factors: Vec<Option<String>>,
    /// The expanded product, `null` if any factor is unexpanded.
    pub det: Option<String>,
    /// Corank measured at random specializations.
    pub corank: usize,
    pub checks: BTreeMap<String, CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| c.status == Status::Fail)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// One verification that can appear in a [`Report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    LieMembership,
    Dimension,
    Span,
    ExpFixed,
    Conjugation,
    DetFormula,
    Vanishing,
    CorankRandom,
    CorankExact,
    NullWitness,
    MinorWitness,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::LieMembership,
        Check::Dimension,
        Check::Span,
        Check::ExpFixed,
        Check::Conjugation,
        Check::DetFormula,
        Check::Vanishing,
        Check::CorankRandom,
        Check::CorankExact,
        Check::NullWitness,
        Check::MinorWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::LieMembership => "lie_membership",
            Check::Dimension => "dimension",
            Check::Span => "span",
            Check::ExpFixed => "exp_fixed",
            Check::Conjugation => "conjugation",
            Check::DetFormula => "det_formula",
            Check::Vanishing => "vanishing",
            Check::CorankRandom => "corank_random",
            Check::CorankExact => "corank_exact",
            Check::NullWitness => "null_witness",
            Check::MinorWitness => "minor_witness",
        }
    }
}

/// Shared state for the checks on one partition.
pub struct Verifier<'a> {
    cfg: &'a Config,
    generic: GenericFixedMatrix,
    factors: Vec<Option<ZPoly>>,
    product: Option<ZPoly>,
    corank: usize,
    brute: OnceLock<Option<FixedSpaceBasis>>,
}

impl<'a> Verifier<'a> {
    pub fn new(partition: &Partition, cfg: &'a Config) -> Result<Self> {
        let generic = cfg.generic(partition)?;
        let factors = det_factors_bounded(&generic, cfg.symbolic_bound);
        let product = factors
            .iter()
            .try_fold(<ZPoly as Ring>::one(), |acc, f| f.as_ref().map(|f| &acc * f));
        let corank = corank_computed(&generic, cfg.trials, cfg.seed);
        Ok(Verifier {
            cfg,
            generic,
            factors,
            product,
            corank,
            brute: OnceLock::new(),
        })
    }

    pub fn generic(&self) -> &GenericFixedMatrix {
        &self.generic
    }

    pub fn factors(&self) -> &[Option<ZPoly>] {
        &self.factors
    }

    pub fn product(&self) -> Option<&ZPoly> {
        self.product.as_ref()
    }

    fn brute(&self) -> Option<&FixedSpaceBasis> {
        self.brute
            .get_or_init(|| {
                let partition = self.generic.partition();
                (partition.n() <= self.cfg.brute_force_bound)
                    .then(|| brute_force_fixed_basis_bounded(partition, self.cfg.brute_force_bound).ok())
                    .flatten()
            })
            .as_ref()
    }

    /// Run one check, timing it if the configuration asks for it.
    pub fn run(&self, check: Check) -> CheckResult {
        let start = Instant::now();
        let mut result = self.evaluate(check);
        if self.cfg.timings && result.status != Status::Skipped {
            result.millis = Some(start.elapsed().as_millis() as u64);
        }
        result
    }

    fn evaluate(&self, check: Check) -> CheckResult {
        let cfg = self.cfg;
        let generic = &self.generic;
        let partition = generic.partition();
        let n = generic.n();
        let d = partition.degeneracy();
        let equivariant = n <= cfg.equivariance_bound;
        match check {
            Check::LieMembership => CheckResult::from_bool(symbolic_membership(generic)),
            Check::Dimension => {
                let vars = generic.num_variables();
                let formula = dim_s(partition);
                match self.brute() {
                    Some(b) => CheckResult::from_bool(vars == formula && b.dim == formula)
                        .with_detail(format!("variables {vars}, formula {formula}, brute force {}", b.dim)),
                    None => CheckResult::from_bool(vars == formula)
                        .with_detail(format!("variables {vars}, formula {formula}, brute force skipped")),
                }
            }
            Check::Span => match self.brute() {
                Some(b) => CheckResult::from_bool(spans_agree(generic, b)),
                None => CheckResult::skipped(format!("n > {}", cfg.brute_force_bound)),
            },
            Check::ExpFixed if equivariant => CheckResult::from_bool(exp_fixes(generic).unwrap_or(false)),
            Check::Conjugation if equivariant => CheckResult::from_bool(
                conjugation_equivariance(generic, cfg.seed, cfg.conjugation_count).unwrap_or(false),
            )
            .with_detail(format!("{} random S", cfg.conjugation_count)),
            Check::ExpFixed | Check::Conjugation => CheckResult::skipped(format!("n > {}", cfg.equivariance_bound)),
            Check::DetFormula => match (&self.product, n <= cfg.symbolic_bound) {
                (Some(product), true) => {
                    let direct = det_direct(generic, cfg.symbolic_bound);
                    CheckResult::from_bool(direct.is_ok_and(|det| det == *product)).with_detail("symbolic")
                }
                _ => CheckResult::from_bool(det_formula_consistent_at_points(generic, cfg.trials, cfg.seed))
                    .with_detail(format!("{} random points", cfg.trials)),
            },
            Check::Vanishing => {
                CheckResult::from_bool(formula_vanishes(generic, &self.factors, cfg.trials, cfg.seed) == (d > 0))
            }
            Check::CorankRandom => CheckResult::from_bool(self.corank == corank_expected(partition)).with_detail(
                format!("false-pass bound {:.3e}", corank_false_pass_bound(n, cfg.trials)),
            ),
            Check::CorankExact if n <= cfg.exact_rank_bound => CheckResult::from_bool(corank_exact(generic) == d),
            Check::CorankExact => CheckResult::skipped(format!("n > {}", cfg.exact_rank_bound)),
            Check::NullWitness => CheckResult::from_bool(null_witness_holds(generic)),
            Check::MinorWitness => match witness_minor(generic, cfg.symbolic_bound, cfg.seed, cfg.trials) {
                Ok(w) => {
                    let how = match w.certification {
                        Certification::Symbolic => "symbolic",
                        Certification::Specialization => "specialization",
                    };
                    let source = if w.from_construction { "construction" } else { "search" };
                    CheckResult::from_bool(w.size() == n - d).with_detail(format!("size {}, {how}, {source}", w.size()))
                }
                Err(e) => CheckResult::from_bool(false).with_detail(e.to_string()),
            },
        }
    }

    /// A report carrying the requested checks.
    pub fn report(&self, checks: &[Check]) -> Report {
        let partition = self.generic.partition();
        Report {
            partition: partition.clone(),
            n: self.generic.n(),
            dim_s: dim_s(partition),
            dim_q: dim_q(partition),
            degeneracy: partition.degeneracy(),
            det_factors: self
                .factors
                .iter()
                .map(|f| f.as_ref().map(ToString::to_string))
                .collect(),
            det: self.product.as_ref().map(ToString::to_string),
            corank: self.corank,
            checks: checks.iter().map(|&c| (c.name().to_string(), self.run(c))).collect(),
        }
    }
}

/// Run every check for one partition.
pub fn verify(partition: &Partition, cfg: &Config) -> Result<Report> {
    Ok(Verifier::new(partition, cfg)?.report(&Check::ALL))
}

/// `d(λ)` null vectors, each annihilated by `M`, jointly independent, with
/// the rows dropped from `M'` all zero.
fn null_witness_holds(generic: &GenericFixedMatrix) -> bool {
    let vectors = null_basis(generic);
    let annihilated = vectors.iter().all(|v| {
        generic
            .matrix()
            .mul_vec(v)
            .is_ok_and(|out| out.iter().all(Ring::is_zero))
    });
    let independent = vectors.is_empty() || RingMatrix::from_rows(vectors.clone()).rank() == vectors.len();
    vectors.len() == generic.partition().degeneracy()
        && annihilated
        && independent
        && restricted_matrices(generic).deleted_rows_are_zero()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    pub partitions: usize,
    pub failed: usize,
    pub reports: Vec<Report>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Verify every partition of `n`. With `threads = Some(k)` the partitions
/// run on a pool of `k` workers; reports always come back in enumeration
/// order.
pub fn sweep(n: usize, cfg: &Config, threads: Option<usize>) -> Result<SweepReport> {
    let partitions = enumerate_partitions(n)?;
    let reports = match threads {
        Some(k) if k > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?
            .install(|| {
                partitions
                    .par_iter()
                    .map(|p| verify(p, cfg))
                    .collect::<Result<Vec<_>>>()
            })?,
        _ => partitions.iter().map(|p| verify(p, cfg)).collect::<Result<Vec<_>>>()?,
    };
    let failed = reports.iter().filter(|r| !r.passed()).count();
    Ok(SweepReport {
        n,
        partitions: reports.len(),
        failed,
        reports,
    })
}
