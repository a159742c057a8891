use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Catalog;
use super::rational::Rational;

/// Default magnitude bound for random integer specializations.
pub const DEFAULT_SPECIALIZATION_BOUND: u64 = 1_000_000;

/// Seeded assignment of nonzero integers in `[-bound, bound]` to every
/// catalog variable. The same seed always gives the same assignment.
pub fn random_specialization(catalog: &Catalog, seed: u64, bound: u64) -> BTreeMap<String, Rational> {
    assert!(bound >= 2, "specialization bound must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    catalog
        .names()
        .iter()
        .map(|name| {
            let magnitude = rng.random_range(1..=bound) as i64;
            let value = if rng.random_bool(0.5) { -magnitude } else { magnitude };
            (name.clone(), Rational::from_integer(value.into()))
        })
        .collect()
}
