//! Coset leaders. The brute-force route walks the whole orbit; the fast
//! route reads the leader off a window of at most `coarsest_exponent`
//! residues reduced modulo omega * n / tau, and collapses to a single
//! closed-form reduction for equal-difference cosets.

use crate::cosets::{CosetContext, CyclotomicCoset};
use crate::equal_difference::{coarsest_exponent, is_equal_difference_direct};
use crate::numtheory::{gcd, modpow, mulmod, multiplicative_order};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeaderMethod {
    EdClosedForm,
    OmegaWindow,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaderResult {
    pub leader: u64,
    pub method: LeaderMethod,
    /// omega * n / tau; present for the window method.
    pub window_modulus: Option<u64>,
    /// The candidate residues examined, in window order (empty for the
    /// brute-force method).
    pub window_values: Vec<u64>,
    /// Number of window reductions performed: exactly omega for the window
    /// method, 1 for the closed form, 0 for brute force.
    pub reductions: u64,
}

/// Minimum over the materialized orbit.
pub fn leader_bruteforce(c: &CyclotomicCoset) -> LeaderResult {
    LeaderResult {
        leader: *c.elements().iter().min().expect("orbit nonempty"),
        method: LeaderMethod::BruteForce,
        window_modulus: None,
        window_values: Vec::new(),
        reductions: 0,
    }
}

/// Closed form for equal-difference cosets: the leader is any
/// representative reduced mod n / tau. Rejects non-ED cosets.
pub fn leader_ed(c: &CyclotomicCoset) -> Result<LeaderResult> {
    if !is_equal_difference_direct(c).is_ed {
        return Err(Error::NotEqualDifference {
            leader: c.leader(),
            modulus: c.context().n(),
        });
    }
    // size divides n for an ED coset, and every representative reduces to
    // the same value mod the common difference
    let d = c.context().n() / c.size();
    Ok(LeaderResult {
        leader: c.elements()[0] % d,
        method: LeaderMethod::EdClosedForm,
        window_modulus: None,
        window_values: Vec::new(),
        reductions: 1,
    })
}

/// Window computation of the leader of the coset of gamma, without
/// materializing the orbit: the minimum of gamma * q^j mod (omega * n /
/// tau) over j < omega, where omega is the coarsest exponent. Falls back
/// to a full walk (flagging the fallback) if the window invariant is
/// somehow violated; the theory says it cannot be.
pub fn leader_of(ctx: &CosetContext, gamma: u64) -> Result<LeaderResult> {
    let n = ctx.n();
    let gamma = gamma % n;
    let g = gcd(gamma, n);
    let m = n / g;
    let tau = multiplicative_order(ctx.q(), m)?;
    let omega = {
        let rad = crate::numtheory::radical(m)?;
        let r = multiplicative_order(ctx.q(), rad)?;
        let doubled = m.is_multiple_of(8) && modpow(ctx.q(), r, 4) == 3;
        if doubled {
            2 * r
        } else {
            r
        }
    };
    window_leader(ctx, gamma, tau, omega)
}

/// As [`leader_of`], starting from an already materialized coset; the
/// result is identical and the window bookkeeping is the same.
pub fn leader_fast(c: &CyclotomicCoset) -> LeaderResult {
    let omega = coarsest_exponent(c);
    window_leader(c.context(), c.leader(), c.size(), omega)
        .expect("window modulus exists for a well-formed coset")
}

fn window_leader(ctx: &CosetContext, gamma: u64, tau: u64, omega: u64) -> Result<LeaderResult> {
    let n = ctx.n();
    if omega > tau || !(omega as u128 * n as u128).is_multiple_of(tau as u128) {
        // Unreachable: omega divides tau and tau divides omega * n for
        // every coset. Keep an honest safety net anyway.
        return Ok(theory_violation_fallback(ctx, gamma));
    }
    let window_modulus = ((omega as u128 * n as u128) / tau as u128) as u64;
    let mut window_values = Vec::with_capacity(omega as usize);
    let mut x = gamma;
    let mut best = u64::MAX;
    for _ in 0..omega {
        let reduced = x % window_modulus.max(1);
        window_values.push(reduced);
        best = best.min(reduced);
        x = mulmod(x, ctx.q(), n);
    }
    Ok(LeaderResult {
        leader: best,
        method: LeaderMethod::OmegaWindow,
        window_modulus: Some(window_modulus),
        window_values,
        reductions: omega,
    })
}

fn theory_violation_fallback(ctx: &CosetContext, gamma: u64) -> LeaderResult {
    let c = ctx.coset_of(gamma);
    LeaderResult {
        leader: c.leader(),
        method: LeaderMethod::BruteForce,
        window_modulus: None,
        window_values: Vec::new(),
        reductions: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_3888() {
        let ctx = CosetContext::new(3888, 5).unwrap();

        let r = leader_of(&ctx, 2187).unwrap();
        assert_eq!(r.leader, 243);
        assert_eq!(r.window_modulus, Some(972));
        assert_eq!(r.reductions, 1);

        let r = leader_of(&ctx, 1001).unwrap();
        assert_eq!(r.leader, 13);
        assert_eq!(r.window_modulus, Some(24));
        assert_eq!(r.window_values, vec![17, 13]);
        assert_eq!(r.reductions, 2);
    }

    #[test]
    fn fast_matches_bruteforce_small() {
        for q in [2u64, 3, 5, 7, 9] {
            for n in 1..=300u64 {
                if crate::numtheory::gcd(n, q) != 1 {
                    continue;
                }
                let ctx = CosetContext::new(n, q).unwrap();
                for c in ctx.cosets() {
                    let brute = leader_bruteforce(&c);
                    let fast = leader_fast(&c);
                    assert_eq!(fast.leader, brute.leader, "n={n} q={q}");
                    let unbuilt = leader_of(&ctx, c.leader()).unwrap();
                    assert_eq!(unbuilt, fast);
                }
            }
        }
    }

    #[test]
    fn ed_closed_form() {
        let ctx = CosetContext::new(3888, 5).unwrap();
        let c = ctx.coset_of(2187);
        let r = leader_ed(&c).unwrap();
        assert_eq!(r.leader, 243);
        assert_eq!(r.method, LeaderMethod::EdClosedForm);

        let bad = CosetContext::new(32, 3).unwrap().coset_of(1);
        assert!(matches!(
            leader_ed(&bad),
            Err(Error::NotEqualDifference { .. })
        ));
    }

    #[test]
    fn ed_closed_form_agrees_with_window() {
        for q in [3u64, 5, 7] {
            for n in 1..=200u64 {
                if crate::numtheory::gcd(n, q) != 1 {
                    continue;
                }
                let ctx = CosetContext::new(n, q).unwrap();
                for c in ctx.cosets() {
                    if let Ok(r) = leader_ed(&c) {
                        assert_eq!(r.leader, leader_fast(&c).leader);
                    }
                }
            }
        }
    }

    #[test]
    fn window_reduction_count_is_omega() {
        let ctx = CosetContext::new(3888, 5).unwrap();
        for gamma in [0u64, 1, 2, 3, 17, 243, 1001, 2187] {
            let c = ctx.coset_of(gamma);
            let r = leader_fast(&c);
            assert_eq!(r.reductions, coarsest_exponent(&c), "gamma={gamma}");
            assert_eq!(r.window_values.len() as u64, r.reductions);
        }
    }
}
