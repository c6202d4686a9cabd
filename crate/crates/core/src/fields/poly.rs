//! Dense univariate polynomials over a prime field, coefficients stored
//! lowest degree first with no trailing zeros (the zero polynomial is the
//! empty vector). Characteristic mismatches between operands are
//! programmer errors and are rejected by assertion.

use std::fmt;

use crate::numtheory::{is_prime, modpow, mulmod};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl DensePoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(is_prime(p), "characteristic {p} must be prime");
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut out = DensePoly { p, coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        DensePoly::new(p, Vec::new())
    }

    pub fn constant(p: u64, c: u64) -> Self {
        DensePoly::new(p, vec![c])
    }

    pub fn one(p: u64) -> Self {
        DensePoly::constant(p, 1)
    }

    pub fn x(p: u64) -> Self {
        DensePoly::new(p, vec![0, 1])
    }

    pub fn monomial(p: u64, c: u64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        DensePoly::new(p, coeffs)
    }

    pub fn xn_minus_1(p: u64, n: u64) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![0; n as usize + 1];
        coeffs[0] = p - 1;
        coeffs[n as usize] = 1;
        DensePoly::new(p, coeffs)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn assert_compat(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "characteristic mismatch: {} vs {}",
            self.p, other.p
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compat(other);
        let mut coeffs = vec![0; self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *c = (a + b) % self.p;
        }
        let mut out = DensePoly { p: self.p, coeffs };
        out.trim();
        out
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        DensePoly { p: self.p, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, s: u64) -> Self {
        let s = s % self.p;
        let coeffs = self.coeffs.iter().map(|&c| mulmod(c, s, self.p)).collect();
        let mut out = DensePoly { p: self.p, coeffs };
        out.trim();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compat(other);
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero(self.p);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![0u64; n];
        if self.p < (1 << 32) {
            // products fit u64 and the convolution sums fit u128
            let mut acc = vec![0u128; n];
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.coeffs.iter().enumerate() {
                    acc[i + j] += (a * b) as u128;
                }
            }
            for (c, a) in coeffs.iter_mut().zip(acc) {
                *c = (a % self.p as u128) as u64;
            }
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.coeffs.iter().enumerate() {
                    coeffs[i + j] = (coeffs[i + j] + mulmod(a, b, self.p)) % self.p;
                }
            }
        }
        let mut out = DensePoly { p: self.p, coeffs };
        out.trim();
        out
    }

    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        self.assert_compat(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.deg().unwrap();
        if self.deg().is_none_or(|dr| dr < dd) {
            return (DensePoly::zero(self.p), self.clone());
        }
        let p = self.p;
        let inv_lead = modpow(divisor.leading(), p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mulmod(rem[k + dd], inv_lead, p);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let t = mulmod(c, dc, p);
                rem[k + i] = (rem[k + i] + p - t) % p;
            }
        }
        let mut r = DensePoly { p, coeffs: rem };
        r.trim();
        (DensePoly::new(p, quot), r)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        self.assert_compat(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = modpow(a.leading(), self.p - 2, self.p);
        a.mul_scalar(inv)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        self.assert_compat(modulus);
        assert!(
            modulus.deg().is_some_and(|d| d >= 1),
            "pow_mod needs a nonconstant modulus"
        );
        let mut base = self.rem(modulus);
        let mut acc = DensePoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    /// Distinct-degree test: f of degree d is irreducible iff it shares no
    /// root with X^{p^i} - X for i up to d/2 (any proper factorization has
    /// a factor of such a degree), finished with the containment check
    /// X^{p^d} = X mod f.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.deg() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let x = DensePoly::x(self.p);
        let mut h = x.rem(self);
        for i in 1..=d {
            h = h.pow_mod(self.p, self);
            if i <= d / 2 {
                let g = self.gcd(&h.sub(&x));
                if g.deg() != Some(0) {
                    return false;
                }
            }
        }
        h == x.rem(self)
    }

    /// The lexicographically smallest monic irreducible of the given degree
    /// (coefficient tuples compared lowest degree first). Deterministic.
    pub fn smallest_irreducible(p: u64, degree: usize) -> Self {
        assert!(degree >= 1);
        assert!(is_prime(p));
        if degree == 1 {
            return DensePoly::x(p);
        }
        // constant term 0 would make X a factor, so start at 1
        let mut c = vec![0u64; degree];
        c[0] = 1;
        loop {
            let mut coeffs = c.clone();
            coeffs.push(1);
            let f = DensePoly { p, coeffs };
            if f.is_irreducible() {
                return f;
            }
            let mut i = degree - 1;
            loop {
                c[i] += 1;
                if c[i] < p {
                    break;
                }
                c[i] = 0;
                assert!(i > 0, "no irreducible of degree {degree} found");
                i -= 1;
            }
        }
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{c}*X")?,
                (_, 1) => write!(f, "X^{k}")?,
                (_, _) => write!(f, "{c}*X^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u64, coeffs: &[u64]) -> DensePoly {
        DensePoly::new(p, coeffs.to_vec())
    }

    #[test]
    fn normalization() {
        assert_eq!(poly(3, &[4, 3, 3]), poly(3, &[1]));
        assert!(poly(5, &[0, 0]).is_zero());
        assert_eq!(poly(7, &[1, 2, 3]).deg(), Some(2));
        assert_eq!(DensePoly::zero(7).deg(), None);
    }

    #[test]
    fn product_example() {
        // (X+1)(X-1) = X^2 - 1 over F_3
        let a = poly(3, &[1, 1]);
        let b = poly(3, &[2, 1]);
        assert_eq!(a.mul(&b), poly(3, &[2, 0, 1]));
    }

    #[test]
    fn gcd_example() {
        let a = DensePoly::xn_minus_1(3, 8);
        let b = DensePoly::xn_minus_1(3, 2);
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn divrem_example() {
        let a = DensePoly::xn_minus_1(5, 4);
        let b = poly(5, &[4, 1]); // X - 1
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q.mul(&b), a);
        assert_eq!(q, poly(5, &[1, 1, 1, 1]));
    }

    #[test]
    fn irreducibility_known_cases() {
        assert!(poly(3, &[1, 0, 1]).is_irreducible()); // X^2+1, no root mod 3
        assert!(!poly(5, &[1, 0, 1]).is_irreducible()); // 2^2 = -1 mod 5
        assert!(poly(2, &[1, 1, 1]).is_irreducible());
        assert!(poly(2, &[1, 1, 0, 1]).is_irreducible());
        assert!(!poly(2, &[1, 0, 1, 0, 1]).is_irreducible()); // (X^2+X+1)^2
        assert!(!poly(7, &[1]).is_irreducible());
        assert!(!DensePoly::zero(7).is_irreducible());
        assert!(poly(7, &[3, 1]).is_irreducible());
    }

    #[test]
    fn smallest_irreducible_small() {
        assert_eq!(DensePoly::smallest_irreducible(2, 1), DensePoly::x(2));
        assert_eq!(DensePoly::smallest_irreducible(2, 2), poly(2, &[1, 1, 1]));
        assert_eq!(DensePoly::smallest_irreducible(3, 2), poly(3, &[1, 0, 1]));
        // candidate order fixes X^3 + X^2 + 1 over its reverse X^3 + X + 1
        assert_eq!(DensePoly::smallest_irreducible(2, 3), poly(2, &[1, 0, 1, 1]));
        // deterministic and actually irreducible at a nontrivial size
        let f = DensePoly::smallest_irreducible(2, 64);
        assert_eq!(f, DensePoly::smallest_irreducible(2, 64));
        assert!(f.is_monic() && f.is_irreducible());
        assert_eq!(f.deg(), Some(64));
    }

    #[test]
    fn display() {
        assert_eq!(poly(3, &[1, 0, 1]).to_string(), "X^2 + 1");
        assert_eq!(poly(3, &[2, 1]).to_string(), "X + 2");
        assert_eq!(poly(5, &[0, 3, 0, 1]).to_string(), "X^3 + 3*X");
        assert_eq!(DensePoly::zero(5).to_string(), "0");
    }

    #[test]
    fn eval_matches_rem_by_linear() {
        let f = poly(13, &[5, 0, 7, 1, 11]);
        for x in 0..13 {
            // f(x) = f mod (X - x)
            let lin = poly(13, &[13 - x, 1]);
            let r = f.rem(&lin);
            assert_eq!(f.eval(x), r.coeffs().first().copied().unwrap_or(0));
        }
    }

    fn arb_poly(p: u64, max_deg: usize) -> impl Strategy<Value = DensePoly> {
        proptest::collection::vec(0..p, 0..=max_deg + 1)
            .prop_map(move |c| DensePoly::new(p, c))
    }

    proptest! {
        #[test]
        fn prop_divrem_roundtrip(a in arb_poly(7, 12), b in arb_poly(7, 6)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.deg().unwrap_or(0) < b.deg().unwrap() || r.is_zero());
        }

        #[test]
        fn prop_gcd_divides_both(a in arb_poly(5, 10), b in arb_poly(5, 10)) {
            let g = a.gcd(&b);
            if !g.is_zero() {
                prop_assert!(a.rem(&g).is_zero());
                prop_assert!(b.rem(&g).is_zero());
            } else {
                prop_assert!(a.is_zero() && b.is_zero());
            }
        }

        #[test]
        fn prop_mul_matches_bigp_path(a in arb_poly(3, 8), b in arb_poly(3, 8)) {
            // the u128-accumulator fast path agrees with per-term modular arithmetic
            let pa = DensePoly::new((1 << 32) + 15, a.coeffs().to_vec());
            let pb = DensePoly::new((1 << 32) + 15, b.coeffs().to_vec());
            let wide = pa.mul(&pb);
            let narrow: Vec<u64> = wide.coeffs().iter().map(|&c| c % 3).collect();
            prop_assert_eq!(DensePoly::new(3, narrow), a.mul(&b));
        }
    }
}
