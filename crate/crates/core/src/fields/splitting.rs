//! Splitting data for X^n - 1: an extension field containing all n-th
//! roots of unity together with a deterministic primitive n-th root, and
//! the minimal polynomials of cyclotomic cosets computed against such a
//! root (by direct expansion, or by Krylov linear algebra when the orbit
//! is long and the field is large).

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cosets::{CosetContext, CyclotomicCoset};
use crate::numtheory::{factorize, modpow, mulmod};
use crate::{Error, Result};

use super::extension::{ExtElem, ExtPoly, ExtensionField};
use super::poly::DensePoly;
use super::FieldConfig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnity {
    field: Arc<ExtensionField>,
    n: u64,
    zeta: ExtElem,
}

impl RootOfUnity {
    /// zeta = generator^{(p^degree - 1)/n}; requires a certified field.
    pub fn from_certified(field: Arc<ExtensionField>, n: u64) -> Result<Self> {
        let order = field.unit_group_order().ok_or_else(|| {
            Error::InvariantViolation("root construction from an uncertified field".into())
        })?;
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        if order % n != 0 && n != 1 {
            return Err(Error::NotADivisor(n, order));
        }
        let g = field.generator().expect("certified field has a generator");
        let zeta = if n == 1 {
            field.one()
        } else {
            field.pow(g, order / n)
        };
        let root = RootOfUnity { field, n, zeta };
        debug_assert!(root.verify());
        Ok(root)
    }

    /// Deterministic scan: the first element index (2, 3, ...) whose
    /// (p^degree - 1)/n power has exact multiplicative order n. Works for
    /// fields too large to certify a generator; n must still divide the
    /// unit-group order, which callers guarantee by choosing the degree as
    /// a multiple of the order of p mod n.
    pub fn by_scan(field: Arc<ExtensionField>, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        if n == 1 {
            let zeta = field.one();
            return Ok(RootOfUnity { field, n, zeta });
        }
        let group = field.size_big() - BigUint::one();
        if !(&group % n).is_zero() {
            return Err(Error::InvariantViolation(format!(
                "{n} does not divide the unit-group order of {field}"
            )));
        }
        let exp = &group / n;
        let primes: Vec<u64> = factorize(n)?.primes().collect();
        for k in 2..(1u64 << 20) {
            let z = field.elem_from_index(k);
            let w = field.pow_big(&z, &exp);
            if Self::order_is(&field, &w, n, &primes) {
                return Ok(RootOfUnity { field, n, zeta: w });
            }
        }
        Err(Error::InvariantViolation(format!(
            "no primitive {n}-th root found by scan in {field}"
        )))
    }

    fn order_is(field: &ExtensionField, w: &ExtElem, n: u64, primes: &[u64]) -> bool {
        if field.is_zero(w) || !field.is_one(&field.pow(w, n)) {
            return false;
        }
        primes.iter().all(|&ell| !field.is_one(&field.pow(w, n / ell)))
    }

    fn verify(&self) -> bool {
        let primes: Vec<u64> = factorize(self.n).expect("n >= 1").primes().collect();
        Self::order_is(&self.field, &self.zeta, self.n, &primes)
    }

    pub fn field(&self) -> &Arc<ExtensionField> {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn zeta(&self) -> &ExtElem {
        &self.zeta
    }

    /// zeta^e with the exponent taken mod n.
    pub fn pow(&self, e: u64) -> ExtElem {
        self.field.pow(&self.zeta, e % self.n)
    }

    /// The compatible root of order m for a divisor m of n: zeta^{n/m}.
    pub fn subroot(&self, m: u64) -> Result<RootOfUnity> {
        if m == 0 {
            return Err(Error::ZeroInput);
        }
        if !self.n.is_multiple_of(m) {
            return Err(Error::NotADivisor(m, self.n));
        }
        let root = RootOfUnity {
            field: self.field.clone(),
            n: m,
            zeta: self.field.pow(&self.zeta, self.n / m),
        };
        debug_assert!(root.verify());
        Ok(root)
    }
}

/// A splitting field for X^n - 1 over F_q (q = p prime): the certified
/// field F_{p^L} with L the order of p mod n, plus its deterministic
/// primitive n-th root.
#[derive(Debug, PartialEq, Eq)]
pub struct SplittingContext {
    field: Arc<ExtensionField>,
    root: RootOfUnity,
}

impl SplittingContext {
    pub fn build(ctx: &CosetContext, config: &FieldConfig) -> Result<Self> {
        if ctx.prime_power_exponent() > 1 {
            return Err(Error::NonPrimeBase { q: ctx.q() });
        }
        let p = ctx.q();
        let degree = ctx.ord();
        if degree > config.max_degree {
            return Err(Error::DegreeGuard {
                degree,
                cap: config.max_degree,
            });
        }
        let field = Arc::new(ExtensionField::new_certified(
            p,
            degree as usize,
            config.max_generator_elements,
        )?);
        let root = RootOfUnity::from_certified(field.clone(), ctx.n())?;
        Ok(SplittingContext { field, root })
    }

    pub fn field(&self) -> &Arc<ExtensionField> {
        &self.field
    }

    pub fn root(&self) -> &RootOfUnity {
        &self.root
    }
}

/// Shorthand used by the operations below.
fn check_compat(c: &CyclotomicCoset, root: &RootOfUnity) -> Result<()> {
    if c.context().prime_power_exponent() > 1 {
        return Err(Error::NonPrimeBase {
            q: c.context().q(),
        });
    }
    if root.n() != c.context().n() {
        return Err(Error::RootModulusMismatch {
            expected: c.context().n(),
            got: root.n(),
        });
    }
    if root.field().p() != c.context().char_p() {
        return Err(Error::CharacteristicMismatch {
            a: c.context().char_p(),
            b: root.field().p(),
        });
    }
    Ok(())
}

/// Product of (X - zeta^e) over the coset's exponents, kept in the
/// extension field. Coefficients land in the subfield fixed by the
/// Frobenius power that generates the orbit.
pub fn minimal_polynomial_ext(c: &CyclotomicCoset, root: &RootOfUnity) -> Result<ExtPoly> {
    check_compat(c, root)?;
    let roots: Vec<ExtElem> = c.elements().iter().map(|&e| root.pow(e)).collect();
    Ok(ExtPoly::from_linear_roots(root.field().clone(), &roots))
}

/// The minimal polynomial of the coset over the prime field, by direct
/// expansion. The theory puts every coefficient in the base field; that is
/// asserted, not assumed.
pub fn minimal_polynomial(c: &CyclotomicCoset, root: &RootOfUnity) -> Result<DensePoly> {
    let ext = minimal_polynomial_ext(c, root)?;
    let poly = ext.to_base().ok_or_else(|| {
        Error::InvariantViolation(format!(
            "coefficients of the minimal polynomial of the coset of {} escaped F_{}",
            c.leader(),
            c.context().char_p()
        ))
    })?;
    debug_assert!(
        DensePoly::xn_minus_1(poly.p(), c.context().n())
            .rem(&poly)
            .is_zero(),
        "minimal polynomial must divide X^n - 1"
    );
    Ok(poly)
}

/// Krylov route: the coset's minimal polynomial has degree tau, so the
/// powers 1, eta, ..., eta^tau of eta = zeta^leader satisfy exactly one
/// monic dependency over the prime field. Solving for it costs
/// O(tau D^2 + tau^2 D) base operations instead of the O(tau^2 D^2) of
/// expanding a product of tau linear factors, which matters for long
/// orbits in large fields.
pub fn minimal_polynomial_krylov(c: &CyclotomicCoset, root: &RootOfUnity) -> Result<DensePoly> {
    check_compat(c, root)?;
    let field = root.field();
    let p = field.p();
    let dim = field.degree();
    let tau = c.size() as usize;
    let eta = root.pow(c.leader());

    // rows indexed by field coordinate, columns by Krylov power, augmented
    // with eta^tau
    let mut powers = Vec::with_capacity(tau + 1);
    let mut x = field.one();
    for _ in 0..tau {
        powers.push(x.clone());
        x = field.mul(&x, &eta);
    }
    powers.push(x);

    let mut matrix = vec![vec![0u64; tau + 1]; dim];
    for (j, v) in powers.iter().enumerate() {
        for (i, &coord) in v.coeffs().iter().enumerate() {
            matrix[i][j] = coord;
        }
    }
    let solution = solve_unique(&mut matrix, tau, p).ok_or_else(|| {
        Error::InvariantViolation(format!(
            "Krylov system for the coset of {} is singular",
            c.leader()
        ))
    })?;

    let mut coeffs: Vec<u64> = solution.iter().map(|&a| (p - a) % p).collect();
    coeffs.push(1);
    let poly = DensePoly::new(p, coeffs);
    debug_assert_eq!(poly.deg(), Some(tau));
    Ok(poly)
}

/// Gauss elimination for an overdetermined system with a unique solution:
/// rows x (cols + 1) augmented matrix, returns the solution vector or None
/// if the system is inconsistent or underdetermined.
fn solve_unique(matrix: &mut [Vec<u64>], cols: usize, p: u64) -> Option<Vec<u64>> {
    let rows = matrix.len();
    let mut pivot_rows = Vec::with_capacity(cols);
    let mut r = 0usize;
    for col in 0..cols {
        let pivot = (r..rows).find(|&i| matrix[i][col] != 0)?;
        matrix.swap(r, pivot);
        let inv = modpow(matrix[r][col], p - 2, p);
        for c in matrix[r][col..=cols].iter_mut() {
            *c = mulmod(*c, inv, p);
        }
        let pivot_row = matrix[r].clone();
        for (i, row) in matrix.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = row[col];
                for (c, &pv) in row[col..=cols].iter_mut().zip(&pivot_row[col..=cols]) {
                    let t = mulmod(f, pv, p);
                    *c = (*c + p - t) % p;
                }
            }
        }
        pivot_rows.push(r);
        r += 1;
    }
    // consistency: all remaining rows must have vanished
    for row in matrix.iter().skip(r) {
        if row[cols] != 0 {
            return None;
        }
    }
    Some(pivot_rows.iter().enumerate().map(|(col, &pr)| {
        debug_assert_eq!(col, pr);
        matrix[pr][cols]
    }).collect())
}
