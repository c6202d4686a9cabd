//! Concrete finite-field arithmetic: dense polynomials over prime fields,
//! deterministic extension fields, primitive roots of unity, minimal
//! polynomials of cosets, and verified (binomial where possible)
//! factorization of X^n - 1.

mod extension;
mod factor;
mod poly;
mod splitting;

pub use extension::{ExtElem, ExtPoly, ExtensionField};
pub use factor::{
    binomial_of_ed_coset, binomial_splitting_exponents, expand_binomial, factor_xn_minus_1,
    global_binomial_splitting_exponents, Factor, FactorEngine, FactorReport, SymbolicBinomial,
};
pub use poly::DensePoly;
pub use splitting::{
    minimal_polynomial, minimal_polynomial_ext, minimal_polynomial_krylov, RootOfUnity,
    SplittingContext,
};

/// Resource guards for field construction. `max_generator_elements` bounds
/// the field size for which a certified multiplicative generator is found
/// (this requires factoring the unit-group order, so it must fit a machine
/// word); larger fields are built with an uncertified scan for roots of
/// unity instead. `max_degree` caps the extension degree outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldConfig {
    pub max_generator_elements: u128,
    pub max_degree: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            max_generator_elements: 1u128 << 64,
            max_degree: 512,
        }
    }
}
