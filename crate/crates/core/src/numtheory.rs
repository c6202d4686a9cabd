//! Exact elementary number theory on `u64`: certified factorization,
//! multiplicative orders, p-adic valuations, and the lift-the-exponent
//! closed forms.
//!
//! Everything here is deterministic. Primality is decided by Miller-Rabin
//! with a base set proven complete for 64-bit inputs, and composites are
//! split by Brent's cycle-finding variant of the rho method with a fixed
//! parameter schedule.

use crate::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// (a * b) mod n without overflow. n must be nonzero.
pub fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// base^exp mod n. Returns 0 when n = 1.
pub fn modpow(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, n);
        }
        base = mulmod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The witness set below is known to be exact
/// for every input < 3.3 * 10^24, which covers all of u64.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for w in WITNESSES {
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'next: for w in WITNESSES {
        let mut x = modpow(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'next;
            }
        }
        return false;
    }
    true
}

/// One rho walk x -> x^2 + c with Floyd cycle detection. With `batched`,
/// gcds are taken every 128 steps; a batch can overshoot to n, in which case
/// the caller retries unbatched.
fn rho_walk(n: u64, c: u64, batched: bool) -> u64 {
    let f = |x: u64| (mulmod(x, x, n) + c) % n;
    let (mut x, mut y) = (2u64, 2u64);
    let mut saved = 1u64;
    let mut count = 0u32;
    let window = if batched { 128 } else { 1 };
    loop {
        x = f(x);
        y = f(f(y));
        if x == y {
            return gcd(saved, n);
        }
        saved = mulmod(saved, x.abs_diff(y), n);
        count += 1;
        if count == window {
            let d = gcd(saved, n);
            if d != 1 {
                return d;
            }
            saved = 1;
            count = 0;
        }
    }
}

/// Deterministic rho splitting; only ever called on odd composites with no
/// factor below the trial-division bound.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && !is_prime(n));
    for c in 1..256 {
        let mut d = rho_walk(n, c, true);
        if d == n {
            d = rho_walk(n, c, false);
        }
        if d > 1 && d < n {
            return d;
        }
    }
    unreachable!("rho schedule exhausted on {n}")
}

/// A positive integer as a product of certified primes, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// (prime, exponent) pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Reassembles the factored integer, with overflow detection.
    pub fn value(&self) -> Result<u64> {
        let mut v: u64 = 1;
        for &(p, k) in &self.factors {
            for _ in 0..k {
                v = v.checked_mul(p).ok_or(Error::Overflow("factorization value"))?;
            }
        }
        Ok(v)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn euler_phi(&self) -> u64 {
        let mut v: u64 = 1;
        for &(p, k) in &self.factors {
            v *= p - 1;
            for _ in 1..k {
                v *= p;
            }
        }
        v
    }

    /// All divisors, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, k) in &self.factors {
            let len = out.len();
            let mut pw = 1u64;
            for _ in 0..k {
                pw *= p;
                for i in 0..len {
                    out.push(out[i] * pw);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Factors n >= 1 into certified primes. Trial division below 2^10, then
/// recursive rho splitting with Miller-Rabin certification of every part.
pub fn factorize(n: u64) -> Result<PrimeFactorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    let mut push = |p: u64, k: u32| {
        if k > 0 {
            factors.push((p, k));
        }
    };
    for p in 2..1024u64 {
        if p * p > rest {
            break;
        }
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        push(p, k);
    }
    if rest > 1 {
        let mut stack = vec![rest];
        let mut found: Vec<u64> = Vec::new();
        while let Some(m) = stack.pop() {
            if is_prime(m) {
                found.push(m);
            } else {
                let d = pollard_rho(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
        found.sort_unstable();
        let mut i = 0;
        while i < found.len() {
            let p = found[i];
            let mut k = 0;
            while i < found.len() && found[i] == p {
                k += 1;
                i += 1;
            }
            push(p, k);
        }
    }
    factors.sort_unstable();
    debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
    Ok(PrimeFactorization { factors })
}

/// rad(n): the product of the distinct primes dividing n; rad(1) = 1.
pub fn radical(n: u64) -> Result<u64> {
    Ok(factorize(n)?.radical())
}

/// The exponent of the largest power of the prime `ell` dividing n >= 1.
pub fn padic_valuation(ell: u64, n: u64) -> Result<u32> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut v = 0;
    let mut m = n;
    while m.is_multiple_of(ell) {
        m /= ell;
        v += 1;
    }
    Ok(v)
}

/// Carmichael function of n from its factorization: the exponent of the
/// multiplicative group mod n.
fn carmichael(f: &PrimeFactorization) -> u64 {
    let mut lam = 1u64;
    for &(p, k) in f.factors() {
        let part = if p == 2 {
            match k {
                1 => 1,
                2 => 2,
                _ => 1u64 << (k - 2),
            }
        } else {
            let mut pw = p - 1;
            for _ in 1..k {
                pw *= p;
            }
            pw
        };
        lam = lcm(lam, part);
    }
    lam
}

/// ord_n(m): least e >= 1 with m^e = 1 (mod n). Requires gcd(m, n) = 1;
/// ord mod 1 is 1 by convention. Found by dividing primes out of the group
/// exponent, never by stepping through powers one at a time.
pub fn multiplicative_order(m: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if n == 1 {
        return Ok(1);
    }
    let m = m % n;
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime { a: m, b: n });
    }
    let lam = carmichael(&factorize(n)?);
    let mut e = lam;
    for p in factorize(lam)?.primes() {
        while e.is_multiple_of(p) && modpow(m, e / p, n) == 1 {
            e /= p;
        }
    }
    debug_assert_eq!(modpow(m, e, n), 1);
    Ok(e)
}

/// v_ell(m^d - 1) by the lift-the-exponent closed forms; m^d is never
/// formed. Requires d >= 1, m >= 2, and the usual hypotheses: ell | m - 1
/// for odd ell, and odd m for ell = 2.
pub fn lte_valuation(ell: u64, m: u64, d: u64) -> Result<u32> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if d == 0 {
        return Err(Error::ZeroInput);
    }
    if m < 2 {
        return Err(Error::LteDegenerateBase { m });
    }
    if ell == 2 {
        if m.is_multiple_of(2) {
            return Err(Error::LteEvenBase { m });
        }
        return Ok(match (m % 4, d % 2) {
            (1, _) => padic_valuation(2, m - 1)? + padic_valuation(2, d)?,
            (3, 1) => 1,
            // m = 3 (mod 4), even d: v2(m^2 - 1) = v2(m+1) + 1, then the
            // even-exponent form takes over.
            (3, 0) => {
                let vp1 = (m as u128 + 1).trailing_zeros();
                vp1 + padic_valuation(2, d)?
            }
            _ => unreachable!(),
        });
    }
    if !(m - 1).is_multiple_of(ell) {
        return Err(Error::LteNotDividing { ell, m });
    }
    Ok(padic_valuation(ell, m - 1)? + padic_valuation(ell, d)?)
}
