//! Extension fields F_{p^m} as residues modulo the deterministic
//! (lexicographically smallest) monic irreducible of degree m. Elements
//! are fixed-length coefficient vectors; the element with index k has the
//! base-p digits of k as coefficients, which fixes a deterministic scan
//! order for generator and root searches.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::numtheory::{factorize, is_prime, mulmod, PrimeFactorization};
use crate::{Error, Result};

use super::poly::DensePoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtElem {
    coeffs: Vec<u64>,
}

impl ExtElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct ExtensionField {
    p: u64,
    degree: usize,
    modulus: DensePoly,
    generator: Option<ExtElem>,
    unit_group_factors: Option<PrimeFactorization>,
}

impl ExtensionField {
    /// Field without a certified generator; sufficient for arithmetic and
    /// scan-based root searches.
    pub fn new(p: u64, degree: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(ExtensionField {
            p,
            degree,
            modulus: DensePoly::smallest_irreducible(p, degree),
            generator: None,
            unit_group_factors: None,
        })
    }

    /// Field together with the smallest-index element of full multiplicative
    /// order p^degree - 1. Requires the element count to stay within
    /// `max_elements` (and a machine word), since certification factors the
    /// unit-group order.
    pub fn new_certified(p: u64, degree: usize, max_elements: u128) -> Result<Self> {
        let size = (p as u128)
            .checked_pow(u32::try_from(degree).map_err(|_| Error::DegreeGuard {
                degree: degree as u64,
                cap: u32::MAX as u64,
            })?)
            .ok_or(Error::SizeGuard {
                p,
                degree: degree as u64,
            })?;
        if size > max_elements || size > 1 << 64 {
            return Err(Error::SizeGuard {
                p,
                degree: degree as u64,
            });
        }
        let mut field = ExtensionField::new(p, degree)?;
        let order = (size - 1) as u64;
        let factors = factorize(order)?;
        if order == 1 {
            // F_2: the unit group is trivial and 1 generates it
            field.generator = Some(field.one());
            field.unit_group_factors = Some(factors);
            return Ok(field);
        }
        let mut k = 2u64;
        loop {
            if (k as u128) >= size {
                return Err(Error::InvariantViolation(format!(
                    "no generator found in F_{p}^{degree}"
                )));
            }
            let e = field.elem_from_index(k);
            if field.has_exact_order(&e, order, &factors) {
                field.generator = Some(e);
                field.unit_group_factors = Some(factors);
                return Ok(field);
            }
            k += 1;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &DensePoly {
        &self.modulus
    }

    pub fn generator(&self) -> Option<&ExtElem> {
        self.generator.as_ref()
    }

    /// p^degree - 1 when it fits a machine word (certified fields only).
    pub fn unit_group_order(&self) -> Option<u64> {
        self.unit_group_factors.as_ref().map(|f| {
            f.value()
                .expect("certified unit-group order fits a machine word")
        })
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem {
            coeffs: vec![0; self.degree],
        }
    }

    pub fn one(&self) -> ExtElem {
        self.embed(1)
    }

    pub fn embed(&self, c: u64) -> ExtElem {
        let mut e = self.zero();
        e.coeffs[0] = c % self.p;
        e
    }

    /// Base-p digits of k, lowest first. Panics if k is out of range.
    pub fn elem_from_index(&self, mut k: u64) -> ExtElem {
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = k % self.p;
            k /= self.p;
        }
        assert_eq!(k, 0, "element index out of range");
        e
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &ExtElem) -> bool {
        a.coeffs[0] == 1 && a.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Some(c) when the element lies in the prime subfield.
    pub fn constant_of(&self, a: &ExtElem) -> Option<u64> {
        if a.coeffs[1..].iter().all(|&c| c == 0) {
            Some(a.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        ExtElem { coeffs }
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        ExtElem { coeffs }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let d = self.degree;
        let mut buf = vec![0u64; 2 * d - 1];
        if self.p < (1 << 32) {
            let mut acc = vec![0u128; 2 * d - 1];
            for (i, &x) in a.coeffs.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.coeffs.iter().enumerate() {
                    acc[i + j] += (x * y) as u128;
                }
            }
            for (c, v) in buf.iter_mut().zip(acc) {
                *c = (v % self.p as u128) as u64;
            }
        } else {
            for (i, &x) in a.coeffs.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.coeffs.iter().enumerate() {
                    buf[i + j] = (buf[i + j] + mulmod(x, y, self.p)) % self.p;
                }
            }
        }
        self.reduce(&mut buf);
        ExtElem { coeffs: buf }
    }

    /// Reduce a low-first product buffer by the monic modulus in place.
    fn reduce(&self, buf: &mut Vec<u64>) {
        let d = self.degree;
        let md = self.modulus.coeffs();
        for k in (d..buf.len()).rev() {
            let c = buf[k];
            if c != 0 {
                buf[k] = 0;
                for i in 0..d {
                    let t = mulmod(c, md[i], self.p);
                    buf[k - d + i] = (buf[k - d + i] + self.p - t) % self.p;
                }
            }
        }
        buf.truncate(d);
    }

    pub fn pow(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &ExtElem, e: &BigUint) -> ExtElem {
        let bits = e.bits();
        let mut acc = self.one();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        self.pow(a, self.p)
    }

    /// x -> x^{p^t}; the exponent is reduced mod the field degree, since
    /// Frobenius has that order on the whole field.
    pub fn frobenius_iter(&self, a: &ExtElem, t: u64) -> ExtElem {
        let steps = t % self.degree as u64;
        let mut x = a.clone();
        for _ in 0..steps {
            x = self.frobenius(&x);
        }
        x
    }

    /// Exact-order test given the factorization of the claimed order.
    pub fn has_exact_order(&self, a: &ExtElem, order: u64, factors: &PrimeFactorization) -> bool {
        if self.is_zero(a) {
            return false;
        }
        if !self.is_one(&self.pow(a, order)) {
            return false;
        }
        factors
            .primes()
            .all(|ell| !self.is_one(&self.pow(a, order / ell)))
    }

    /// Total number of elements as a big integer (always available).
    pub fn size_big(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree as u32)
    }

    pub fn format_elem(&self, a: &ExtElem) -> String {
        if let Some(c) = self.constant_of(a) {
            return c.to_string();
        }
        let mut parts = Vec::new();
        for (k, &c) in a.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            parts.push(match (k, c) {
                (0, _) => c.to_string(),
                (1, 1) => "Y".to_string(),
                (1, _) => format!("{c}*Y"),
                (_, 1) => format!("Y^{k}"),
                (_, _) => format!("{c}*Y^{k}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} = F_{}[Y]/({})", self.p, self.degree, self.p, {
            let mut s = self.modulus.to_string();
            s = s.replace('X', "Y");
            s
        })
    }
}

/// Dense polynomial with coefficients in an extension field, lowest degree
/// first, normalized. Carries its field so mixed-field operations can be
/// rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtPoly {
    field: Arc<ExtensionField>,
    coeffs: Vec<ExtElem>,
}

impl ExtPoly {
    pub fn one(field: Arc<ExtensionField>) -> Self {
        let coeffs = vec![field.one()];
        ExtPoly { field, coeffs }
    }

    pub fn from_coeffs(field: Arc<ExtensionField>, coeffs: Vec<ExtElem>) -> Self {
        let mut out = ExtPoly { field, coeffs };
        out.trim();
        out
    }

    /// Expand the product of (X - r) over the given roots.
    pub fn from_linear_roots(field: Arc<ExtensionField>, roots: &[ExtElem]) -> Self {
        let mut poly = ExtPoly::one(field);
        for r in roots {
            poly.mul_linear(r);
        }
        poly
    }

    fn trim(&mut self) {
        while self
            .coeffs
            .last()
            .is_some_and(|c| self.field.is_zero(c))
        {
            self.coeffs.pop();
        }
    }

    /// Multiply in place by (X - r).
    pub fn mul_linear(&mut self, r: &ExtElem) {
        let f = &self.field;
        let neg_r = f.neg(r);
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(f.mul(&self.coeffs[0], &neg_r));
        for i in 1..self.coeffs.len() {
            out.push(f.add(&self.coeffs[i - 1], &f.mul(&self.coeffs[i], &neg_r)));
        }
        out.push(self.coeffs.last().unwrap().clone());
        self.coeffs = out;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "mixed-field polynomial product");
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return ExtPoly {
                field: self.field.clone(),
                coeffs: Vec::new(),
            };
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        let mut out = ExtPoly {
            field: self.field.clone(),
            coeffs,
        };
        out.trim();
        out
    }

    pub fn field(&self) -> &Arc<ExtensionField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[ExtElem] {
        &self.coeffs
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| self.field.is_one(c))
    }

    pub fn nonzero_terms(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|c| !self.field.is_zero(c))
            .count()
    }

    /// Projection to a base-field polynomial when every coefficient lies in
    /// the prime subfield.
    pub fn to_base(&self) -> Option<DensePoly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(self.field.constant_of(c)?);
        }
        Some(DensePoly::new(self.field.p(), coeffs))
    }

    /// True when every coefficient is fixed by the t-th Frobenius power,
    /// i.e. lies in the subfield F_{p^gcd(t, degree)}.
    pub fn frobenius_fixed(&self, t: u64) -> bool {
        self.coeffs
            .iter()
            .all(|c| self.field.frobenius_iter(c, t) == *c)
    }
}

impl fmt::Display for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_unit = self.field.is_one(c);
            let cs = self.field.format_elem(c);
            match (k, is_unit) {
                (0, _) => write!(f, "({cs})")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "({cs})*X")?,
                (_, true) => write!(f, "X^{k}")?,
                (_, false) => write!(f, "({cs})*X^{k}")?,
            }
        }
        Ok(())
    }
}
