//! Factor X^n - 1 over F_{q^t}: one irreducible factor per orbit of q^t
//! on Z/nZ, binomial exactly when the orbit is equal-difference. Concrete
//! coefficients are computed per primitive class — every orbit shares its
//! minimal polynomial with its primitive form, so the engine builds one
//! modest field per reduced modulus instead of a single splitting field
//! for n, and caches the class data across calls.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::cosets::{CosetContext, CyclotomicCoset};
use crate::equal_difference::{
    global_coarsest_exponent, global_mer_exponents, is_equal_difference_direct, mer_exponents,
};
use crate::numtheory::{gcd, multiplicative_order, mulmod};
use crate::{Error, Result};

use super::extension::{ExtElem, ExtPoly, ExtensionField};
use super::poly::DensePoly;
use super::splitting::{minimal_polynomial_krylov, RootOfUnity};
use super::FieldConfig;

/// X^degree - sign * zeta^constant_exponent, where zeta is a primitive
/// root of unity of order `modulus`. Field-independent: expanding against
/// any concrete root reproduces the dense factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicBinomial {
    pub degree: u64,
    pub constant_exponent: u64,
    /// +1 or -1; the sign the subtracted constant carries. Vacuous in
    /// characteristic 2.
    pub sign: i8,
    /// Order of the root of unity the exponent refers to.
    pub modulus: u64,
}

impl fmt::Display for SymbolicBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = if self.degree == 1 {
            "X".to_string()
        } else {
            format!("X^{}", self.degree)
        };
        let op = if self.sign >= 0 { '-' } else { '+' };
        if self.constant_exponent == 0 {
            write!(f, "{x} {op} 1")
        } else {
            write!(f, "{x} {op} z^{}", self.constant_exponent)
        }
    }
}

/// The binomial form of an equal-difference orbit: degree tau and constant
/// exponent leader * (1 + Q + ... + Q^{tau-1}) mod n for the acting
/// multiplier Q, with the sign (-1)^{tau+1} the expanded root product
/// carries. Rejects orbits that are not equal-difference, where no
/// binomial form exists.
pub fn binomial_of_ed_coset(c: &CyclotomicCoset) -> Result<SymbolicBinomial> {
    if !is_equal_difference_direct(c).is_ed {
        return Err(Error::NotEqualDifference {
            leader: c.leader(),
            modulus: c.context().n(),
        });
    }
    let n = c.context().n();
    let mult = c.multiplier_mod(n);
    let tau = c.size();
    let mut sum = 0u64;
    let mut pw = 1 % n;
    for _ in 0..tau {
        sum = (sum + pw) % n;
        pw = mulmod(pw, mult, n);
    }
    Ok(SymbolicBinomial {
        degree: tau,
        constant_exponent: mulmod(c.leader(), sum, n),
        sign: if tau.is_multiple_of(2) { -1 } else { 1 },
        modulus: n,
    })
}

/// Concrete form of a symbolic binomial against a root of order
/// `b.modulus`, or of any order m dividing it as long as the exponent
/// stays integral after rescaling.
pub fn expand_binomial(b: &SymbolicBinomial, root: &RootOfUnity) -> Result<ExtPoly> {
    let e = if root.n() == b.modulus {
        b.constant_exponent
    } else if b.modulus != 0 && b.modulus.is_multiple_of(root.n()) {
        let ratio = b.modulus / root.n();
        if !b.constant_exponent.is_multiple_of(ratio) {
            return Err(Error::RootModulusMismatch {
                expected: b.modulus,
                got: root.n(),
            });
        }
        b.constant_exponent / ratio
    } else {
        return Err(Error::RootModulusMismatch {
            expected: b.modulus,
            got: root.n(),
        });
    };
    let field = root.field();
    let mut constant = root.pow(e);
    if b.sign >= 0 {
        constant = field.neg(&constant);
    }
    let mut coeffs = vec![field.zero(); b.degree as usize + 1];
    coeffs[0] = constant;
    coeffs[b.degree as usize] = field.one();
    Ok(ExtPoly::from_coeffs(field.clone(), coeffs))
}

/// One irreducible factor. `base_poly` is present when the coefficients
/// lie in the prime field (always the case at t = 1); otherwise
/// `ext_poly` holds the factor over the class field it was computed in.
/// Both are absent only in symbolic-only reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub leader: u64,
    pub degree: u64,
    pub binomial: Option<SymbolicBinomial>,
    pub base_poly: Option<DensePoly>,
    pub ext_poly: Option<ExtPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub n: u64,
    pub q: u64,
    pub t: u64,
    /// Every factor has exactly two terms; equivalent to the global
    /// coarsest exponent dividing t (asserted, not assumed).
    pub all_binomial: bool,
    /// The factors were multiplied back together and compared with
    /// X^n - 1 coefficient-for-coefficient. False only for symbolic-only
    /// reports, where no concrete field is constructed.
    pub verified: bool,
    /// Prime-power (non-prime) base: factors carry only symbolic
    /// binomials.
    pub symbolic_only: bool,
    /// Sorted by leader.
    pub factors: Vec<Factor>,
}

impl FactorReport {
    pub fn binomial_count(&self) -> usize {
        self.factors.iter().filter(|f| f.binomial.is_some()).count()
    }
}

struct ClassData {
    tau: u64,
    field: Arc<ExtensionField>,
    root: RootOfUnity,
    /// Primitive-coset leader -> minimal polynomial over F_p.
    base_factors: BTreeMap<u64, DensePoly>,
}

/// Factors X^n - 1 with per-class caching: repeated calls (surveys,
/// sweeps over n sharing divisors) reuse fields, roots, and minimal
/// polynomials keyed by the reduced modulus.
pub struct FactorEngine {
    config: FieldConfig,
    fields: HashMap<(u64, u64), Arc<ExtensionField>>,
    classes: HashMap<(u64, u64), Arc<ClassData>>,
}

impl Default for FactorEngine {
    fn default() -> Self {
        FactorEngine::new(FieldConfig::default())
    }
}

impl FactorEngine {
    pub fn new(config: FieldConfig) -> Self {
        FactorEngine {
            config,
            fields: HashMap::new(),
            classes: HashMap::new(),
        }
    }

    fn field(&mut self, p: u64, degree: u64) -> Result<Arc<ExtensionField>> {
        if degree > self.config.max_degree {
            return Err(Error::DegreeGuard {
                degree,
                cap: self.config.max_degree,
            });
        }
        if let Some(f) = self.fields.get(&(p, degree)) {
            return Ok(f.clone());
        }
        let field = match ExtensionField::new_certified(
            p,
            degree as usize,
            self.config.max_generator_elements,
        ) {
            Ok(f) => f,
            // too large to certify a generator: plain field, roots by scan
            Err(Error::SizeGuard { .. }) => ExtensionField::new(p, degree as usize)?,
            Err(e) => return Err(e),
        };
        let field = Arc::new(field);
        self.fields.insert((p, degree), field.clone());
        Ok(field)
    }

    fn class(&mut self, p: u64, m: u64) -> Result<Arc<ClassData>> {
        if let Some(c) = self.classes.get(&(p, m)) {
            return Ok(c.clone());
        }
        let tau = multiplicative_order(p, m)?;
        let field = self.field(p, tau)?;
        let root = if field.generator().is_some() {
            RootOfUnity::from_certified(field.clone(), m)?
        } else {
            RootOfUnity::by_scan(field.clone(), m)?
        };
        let ctx = CosetContext::new(m, p)?;
        let mut base_factors = BTreeMap::new();
        for c in ctx.cosets_streaming() {
            if gcd(c.leader(), m) != 1 {
                continue;
            }
            let poly = minimal_polynomial_krylov(&c, &root)?;
            base_factors.insert(c.leader(), poly);
        }
        let data = Arc::new(ClassData {
            tau,
            field,
            root,
            base_factors,
        });
        self.classes.insert((p, m), data.clone());
        Ok(data)
    }

    pub fn factor(&mut self, ctx: &CosetContext, t: u64) -> Result<FactorReport> {
        if t == 0 {
            return Err(Error::ZeroInput);
        }
        let n = ctx.n();
        let q = ctx.q();
        let omega = global_coarsest_exponent(ctx);
        let expect_binomial = t.is_multiple_of(omega);
        let components = cosets_under_power(ctx, t);

        if ctx.prime_power_exponent() > 1 {
            if !expect_binomial {
                return Err(Error::NonPrimeBase { q });
            }
            return symbolic_report(ctx, t, &components);
        }

        let mut factors = Vec::with_capacity(components.len());
        for c in &components {
            let class = self.class(q, c.primitive_modulus())?;
            let prim = c.primitive_form();
            let (base_poly, ext_poly) = if gcd(t, class.tau) == 1 {
                // the orbit of q^t mod the reduced modulus coincides with
                // the orbit of q, so the cached factor applies verbatim
                let poly = class
                    .base_factors
                    .get(&prim.leader())
                    .expect("primitive leader present in class cache")
                    .clone();
                (Some(poly), None)
            } else {
                let roots: Vec<ExtElem> =
                    prim.elements().iter().map(|&e| class.root.pow(e)).collect();
                let poly = ExtPoly::from_linear_roots(class.field.clone(), &roots);
                if !poly.frobenius_fixed(t) {
                    return Err(Error::InvariantViolation(format!(
                        "factor of the orbit of {} has coefficients outside the \
                         degree-{t} coefficient field",
                        c.leader()
                    )));
                }
                match poly.to_base() {
                    Some(b) => (Some(b), None),
                    None => (None, Some(poly)),
                }
            };

            let binomial = match binomial_of_ed_coset(c) {
                Ok(b) => Some(b),
                Err(Error::NotEqualDifference { .. }) => None,
                Err(e) => return Err(e),
            };
            let terms = base_poly
                .as_ref()
                .map(|p| p.nonzero_terms())
                .or_else(|| ext_poly.as_ref().map(|p| p.nonzero_terms()))
                .expect("concrete factor exists");
            if (terms == 2) != binomial.is_some() {
                return Err(Error::InvariantViolation(format!(
                    "orbit of {} yields a {terms}-term factor but is {}equal-difference",
                    c.leader(),
                    if binomial.is_some() { "" } else { "not " }
                )));
            }
            if let Some(b) = &binomial {
                check_binomial_against_concrete(
                    b,
                    &class,
                    n,
                    base_poly.as_ref(),
                    ext_poly.as_ref(),
                )?;
            }

            factors.push(Factor {
                leader: c.leader(),
                degree: c.size(),
                binomial,
                base_poly,
                ext_poly,
            });
        }

        let verified = verify_product(q, n, &components, &factors)?;
        let all_binomial = factors.iter().all(|f| f.binomial.is_some());
        if all_binomial != expect_binomial {
            return Err(Error::InvariantViolation(format!(
                "binomial split at t={t} is {all_binomial} but the coarsest exponent {omega} \
                 predicts {expect_binomial}"
            )));
        }
        Ok(FactorReport {
            n,
            q,
            t,
            all_binomial,
            verified,
            symbolic_only: false,
            factors,
        })
    }
}

/// All orbits of q^t on Z/nZ, ordered by leader.
fn cosets_under_power(ctx: &CosetContext, t: u64) -> Vec<CyclotomicCoset> {
    let n = ctx.n();
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for gamma in 0..n {
        if seen[gamma as usize] {
            continue;
        }
        let c = CyclotomicCoset::build(ctx.clone(), t, gamma);
        for &e in c.elements() {
            seen[e as usize] = true;
        }
        out.push(c);
    }
    out
}

/// Prime-power base: the combinatorial layer still knows the factor
/// shapes, so emit the symbolic binomials without a concrete field. Only
/// valid when every orbit is equal-difference.
fn symbolic_report(ctx: &CosetContext, t: u64, components: &[CyclotomicCoset]) -> Result<FactorReport> {
    let mut factors = Vec::with_capacity(components.len());
    for c in components {
        let b = binomial_of_ed_coset(c).map_err(|_| {
            Error::InvariantViolation(format!(
                "orbit of {} is not equal-difference although the coarsest exponent divides {t}",
                c.leader()
            ))
        })?;
        factors.push(Factor {
            leader: c.leader(),
            degree: c.size(),
            binomial: Some(b),
            base_poly: None,
            ext_poly: None,
        });
    }
    Ok(FactorReport {
        n: ctx.n(),
        q: ctx.q(),
        t,
        all_binomial: true,
        verified: false,
        symbolic_only: true,
        factors,
    })
}

/// The symbolic binomial and the concrete factor must agree: the constant
/// term is -sign * zeta^e rescaled into the class field.
fn check_binomial_against_concrete(
    b: &SymbolicBinomial,
    class: &ClassData,
    n: u64,
    base_poly: Option<&DensePoly>,
    ext_poly: Option<&ExtPoly>,
) -> Result<()> {
    let m = class.root.n();
    let ratio = n / m; // the reduced modulus divides n, so ratio >= 1
    if !b.constant_exponent.is_multiple_of(ratio) {
        return Err(Error::InvariantViolation(format!(
            "binomial exponent {} is not a multiple of {ratio}",
            b.constant_exponent
        )));
    }
    let field = &class.field;
    let mut constant = class.root.pow(b.constant_exponent / ratio);
    if b.sign >= 0 {
        constant = field.neg(&constant);
    }
    let ok = if let Some(poly) = base_poly {
        field.constant_of(&constant).is_some_and(|c0| {
            poly.coeffs().first().copied().unwrap_or(0) == c0
                && poly.deg() == Some(b.degree as usize)
                && poly.nonzero_terms() == 2
        })
    } else {
        let poly = ext_poly.expect("one concrete form exists");
        poly.deg() == Some(b.degree as usize)
            && poly.nonzero_terms() == 2
            && poly.coeffs()[0] == constant
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantViolation(format!(
            "symbolic binomial {b} disagrees with the expanded factor"
        )))
    }
}

/// Multiply all factors back together and compare with X^n - 1. Factors
/// with extension coefficients are folded per class first; those partial
/// products always descend to the prime field.
fn verify_product(
    p: u64,
    n: u64,
    components: &[CyclotomicCoset],
    factors: &[Factor],
) -> Result<bool> {
    let mut overall = DensePoly::one(p);
    let mut ext_groups: BTreeMap<u64, Vec<&ExtPoly>> = BTreeMap::new();
    for (c, f) in components.iter().zip(factors) {
        if let Some(b) = &f.base_poly {
            overall = overall.mul(b);
        } else if let Some(e) = &f.ext_poly {
            ext_groups.entry(c.primitive_modulus()).or_default().push(e);
        }
    }
    for (m, polys) in ext_groups {
        let mut prod = ExtPoly::one(polys[0].field().clone());
        for e in polys {
            prod = prod.mul(e);
        }
        let base = prod.to_base().ok_or_else(|| {
            Error::InvariantViolation(format!(
                "product of the class-{m} factors has coefficients outside the prime field"
            ))
        })?;
        overall = overall.mul(&base);
    }
    if overall == DensePoly::xn_minus_1(p, n) {
        Ok(true)
    } else {
        Err(Error::InvariantViolation(
            "factor product does not reproduce X^n - 1".into(),
        ))
    }
}

/// One-shot convenience over a fresh engine.
pub fn factor_xn_minus_1(ctx: &CosetContext, t: u64) -> Result<FactorReport> {
    FactorEngine::default().factor(ctx, t)
}

/// The exponents t over which this coset's factor is an irreducible
/// binomial: divisors of tau that are multiples of the coarsest
/// equal-difference exponent.
pub fn binomial_splitting_exponents(c: &CyclotomicCoset) -> Vec<u64> {
    mer_exponents(c).members
}

/// The exponents t over which X^n - 1 splits into irreducible binomials:
/// divisors of ord_n(q) that are multiples of the global coarsest
/// exponent.
pub fn global_binomial_splitting_exponents(ctx: &CosetContext) -> Vec<u64> {
    global_mer_exponents(ctx).members
}
