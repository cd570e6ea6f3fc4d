//! Seeded sampling helpers shared by the integration suites. Every draw
//! goes through a fixed-seed ChaCha stream so reruns see identical cases.
//! Each suite compiles its own copy and uses its own subset.
#![allow(dead_code)]

use mu3perm::{family_hypothesis, FamilyForm, FieldElement, FieldSpec, Mu3Context};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One deterministic stream per call site; `tag` keeps sites independent.
pub fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6d75_3370_6572_6d ^ tag)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime orders q = 1 mod 3 up to `limit`, ascending.
pub fn cubic_primes(limit: u64) -> Vec<u64> {
    (7..=limit)
        .filter(|&q| q % 3 == 1 && mu3perm::arith::is_prime(q))
        .collect()
}

/// Up to `count` distinct seeded exponents with gcd(r, q-1) = 1. The pool
/// extends past q - 1 (exponents reduce mod q - 1) so small orders still
/// offer `count` choices.
pub fn seeded_coprime_exponents(rng: &mut ChaCha8Rng, q: u64, count: usize) -> Vec<u64> {
    let pool: Vec<u64> = (1..3 * (q - 1)).filter(|&r| gcd(r, q - 1) == 1).collect();
    pool.choose_multiple(rng, count).copied().collect()
}

/// Every gamma whose family hypothesis holds, in rank order. Zero is a
/// legitimate gamma; only 1 and -2 degenerate the family.
pub fn admissible_gammas(ctx: &Mu3Context) -> Vec<FieldElement> {
    let spec = ctx.spec();
    (0..spec.q())
        .map(|rank| spec.unrank(rank))
        .filter(|g| {
            matches!(
                family_hypothesis(ctx, &FamilyForm::Gamma(g.clone())),
                Ok(report) if report.holds
            )
        })
        .collect()
}

/// Up to `count` distinct seeded picks from `items`.
pub fn seeded_sample<T: Clone>(rng: &mut ChaCha8Rng, items: &[T], count: usize) -> Vec<T> {
    items.choose_multiple(rng, count).cloned().collect()
}

/// A seeded element, uniform over the full field.
pub fn seeded_element(rng: &mut ChaCha8Rng, spec: &FieldSpec) -> FieldElement {
    spec.unrank(rng.gen_range(0..spec.q()))
}
