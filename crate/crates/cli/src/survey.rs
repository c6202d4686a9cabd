//! Batch survey over moduli. Counts are closed-form over the divisors of n
//! — no orbit is ever materialized — so the survey scales far past what
//! per-coset enumeration could cover. Records come back ordered by modulus
//! regardless of worker count.

use cyclo::cosets::CosetContext;
use cyclo::equal_difference::global_mer_exponents;
use cyclo::numtheory::{factorize, gcd, multiplicative_order, radical};
use cyclo::{Error, Result};
use rayon::prelude::*;

use crate::output::SurveyPayload;

/// Closed-form equal-difference test at one primitive modulus: the radical
/// divides q - 1, and q = 1 (mod 4) whenever 8 divides the modulus.
fn criterion_holds(q: u64, m: u64) -> Result<bool> {
    Ok((q - 1).is_multiple_of(radical(m)?) && (!m.is_multiple_of(8) || q % 4 == 1))
}

/// Survey one modulus. Cosets with primitive modulus m come
/// phi(m) / ord_m(q) at a time, all equal-difference or all not, so both
/// counts reduce to a sum over divisors.
pub fn survey_one(q: u64, n: u64) -> Result<SurveyPayload> {
    let ctx = CosetContext::new(n, q)?;
    let mut coset_count = 0u64;
    let mut ed_count = 0u64;
    for m in factorize(n)?.divisors() {
        let orbits = factorize(m)?.euler_phi() / multiplicative_order(q, m)?;
        coset_count += orbits;
        if criterion_holds(q, m)? {
            ed_count += orbits;
        }
    }
    let exponents = global_mer_exponents(&ctx);
    Ok(SurveyPayload {
        coset_count,
        ed_count,
        coarsest_exponent: exponents.coarsest,
        admissible_exponent_count: exponents.members.len() as u64,
        // binomial splitting at t = 1 is exactly "every coset ED"
        all_binomial_at_1: criterion_holds(q, n)?,
    })
}

pub struct RangeOutcome {
    /// One record per eligible modulus, ascending.
    pub records: Vec<(u64, SurveyPayload)>,
    /// (n, gcd(n, q)) for the skipped moduli, ascending.
    pub skipped: Vec<(u64, u64)>,
}

pub fn survey_range(q: u64, n_from: u64, n_to: u64, workers: usize) -> Result<RangeOutcome> {
    let mut eligible = Vec::new();
    let mut skipped = Vec::new();
    for n in n_from..=n_to {
        let g = gcd(n, q);
        if g == 1 {
            eligible.push(n);
        } else {
            skipped.push((n, g));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvariantViolation(format!("worker pool: {e}")))?;
    // indexed collect preserves input order, so output is identical for any
    // worker count
    let records: Result<Vec<(u64, SurveyPayload)>> = pool.install(|| {
        eligible
            .par_iter()
            .map(|&n| survey_one(q, n).map(|p| (n, p)))
            .collect()
    });
    Ok(RangeOutcome {
        records: records?,
        skipped,
    })
}
