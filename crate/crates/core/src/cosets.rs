//! q-cyclotomic cosets modulo n: orbits of residues under multiplication
//! by q (or by a power q^t, which is how decomposition components are
//! represented).

use crate::numtheory::{factorize, gcd, modpow, mulmod, multiplicative_order};
use crate::{Error, Result};

/// The pair (n, q) with gcd(n, q) = 1 and q = p^k a prime power >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetContext {
    n: u64,
    q: u64,
    p: u64,
    k: u32,
}

impl CosetContext {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let f = factorize(q)?;
        if f.factors().len() != 1 {
            return Err(Error::NotPrimePower(q));
        }
        let (p, k) = f.factors()[0];
        if gcd(n, q) != 1 {
            return Err(Error::NotCoprime { a: n, b: q });
        }
        Ok(CosetContext { n, q, p, k })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The characteristic p of q = p^k.
    pub fn char_p(&self) -> u64 {
        self.p
    }

    /// The exponent k of q = p^k.
    pub fn prime_power_exponent(&self) -> u32 {
        self.k
    }

    pub fn q_factorization(&self) -> crate::PrimeFactorization {
        factorize(self.q).expect("q validated at construction")
    }

    /// ord_n(q), the size of the coset of any residue coprime to n.
    pub fn ord(&self) -> u64 {
        multiplicative_order(self.q, self.n).expect("gcd(n, q) = 1 by construction")
    }

    /// The coset containing gamma (any integer; reduced mod n).
    pub fn coset_of(&self, gamma: u64) -> CyclotomicCoset {
        CyclotomicCoset::build(self.clone(), 1, gamma)
    }

    /// All cosets, ordered by leader. Walks a visited mask of n bytes, so
    /// memory is O(n); for n too large for that, see
    /// [`CosetContext::cosets_streaming`].
    pub fn cosets(&self) -> Vec<CyclotomicCoset> {
        let n = self.n as usize;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for gamma in 0..self.n {
            if seen[gamma as usize] {
                continue;
            }
            let c = self.coset_of(gamma);
            for &e in c.elements() {
                seen[e as usize] = true;
            }
            out.push(c);
        }
        out
    }

    /// The same sequence as [`CosetContext::cosets`] (ordered by leader),
    /// but holding only one orbit at a time: a residue is emitted exactly
    /// when the walk of its orbit finds no smaller element.
    pub fn cosets_streaming(&self) -> impl Iterator<Item = CyclotomicCoset> + '_ {
        (0..self.n).filter_map(move |gamma| {
            let mut x = mulmod(gamma, self.q, self.n);
            while x != gamma {
                if x < gamma {
                    return None;
                }
                x = mulmod(x, self.q, self.n);
            }
            Some(self.coset_of(gamma))
        })
    }
}

/// One orbit, stored sorted. `base_exponent` is 1 for plain q-cosets and t
/// for the q^t-cosets that appear as decomposition components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicCoset {
    context: CosetContext,
    base_exponent: u64,
    elements: Vec<u64>,
    primitive_modulus: u64,
    primitive_seed: u64,
}

impl CyclotomicCoset {
    pub(crate) fn build(context: CosetContext, base_exponent: u64, gamma: u64) -> Self {
        let n = context.n;
        let gamma = gamma % n;
        let mult = modpow(context.q, base_exponent, n);
        let mut elements = vec![gamma];
        let mut x = mulmod(gamma, mult, n);
        while x != gamma {
            elements.push(x);
            x = mulmod(x, mult, n);
        }
        elements.sort_unstable();

        // gcd(x, n) is shared by the whole orbit (q is a unit), so reducing
        // by the leader keeps the value independent of the seed chosen.
        let g = gcd(elements[0], n); // gcd(0, n) = n
        let primitive_modulus = n / g;
        let primitive_seed = (elements[0] / g) % primitive_modulus.max(1);

        let coset = CyclotomicCoset {
            context,
            base_exponent,
            elements,
            primitive_modulus,
            primitive_seed,
        };
        debug_assert_eq!(coset.size(), coset.expected_size(), "orbit size law");
        coset
    }

    /// Size law: |c| = ord over the reduced modulus of the acting power.
    fn expected_size(&self) -> u64 {
        let ord = multiplicative_order(self.context.q, self.primitive_modulus)
            .expect("gcd(q, n_reduced) = 1");
        ord / gcd(self.base_exponent, ord)
    }

    pub fn context(&self) -> &CosetContext {
        &self.context
    }

    /// t such that the orbit is taken under multiplication by q^t.
    pub fn base_exponent(&self) -> u64 {
        self.base_exponent
    }

    /// Strictly increasing residues.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Smallest element: the canonical representative.
    pub fn leader(&self) -> u64 {
        self.elements[0]
    }

    /// n / gcd(gamma, n) - the modulus of the primitive form.
    pub fn primitive_modulus(&self) -> u64 {
        self.primitive_modulus
    }

    /// gamma / gcd(gamma, n) - the seed of the primitive form.
    pub fn primitive_seed(&self) -> u64 {
        self.primitive_seed
    }

    /// Whether the coset is already in primitive form (seed coprime to
    /// modulus).
    pub fn is_primitive(&self) -> bool {
        self.primitive_modulus == self.context.n
    }

    /// The multiplier q^{base_exponent} reduced mod `modulus`.
    pub fn multiplier_mod(&self, modulus: u64) -> u64 {
        modpow(self.context.q, self.base_exponent, modulus)
    }

    /// Elements in orbit order starting from the leader:
    /// leader * q^{t j} for j = 0, 1, ...
    pub fn orbit_from_leader(&self) -> Vec<u64> {
        let n = self.context.n;
        let mult = self.multiplier_mod(n);
        let mut out = Vec::with_capacity(self.elements.len());
        let mut x = self.leader();
        for _ in 0..self.elements.len() {
            out.push(x);
            x = mulmod(x, mult, n);
        }
        debug_assert_eq!(x, self.leader());
        out
    }

    pub fn contains(&self, e: u64) -> bool {
        self.elements.binary_search(&(e % self.context.n)).is_ok()
    }

    /// The same orbit structure transported to the reduced modulus: the
    /// coset of gamma/g modulo n/g where g = gcd(gamma, n). Idempotent, and
    /// an element-for-element bijection x -> x/g.
    pub fn primitive_form(&self) -> CyclotomicCoset {
        let ctx = CosetContext::new(self.primitive_modulus, self.context.q)
            .expect("reduced modulus stays coprime to q");
        let prim = CyclotomicCoset::build(ctx, self.base_exponent, self.primitive_seed);
        debug_assert_eq!(prim.size(), self.size());
        prim
    }
}

/// Convenience: size of the coset of gamma without materializing the orbit.
pub fn coset_size(ctx: &CosetContext, gamma: u64) -> Result<u64> {
    let g = gcd(gamma % ctx.n, ctx.n);
    multiplicative_order(ctx.q, ctx.n / g)
}

/// Number of cosets, by class counting: residues with gcd(gamma, n) = n/m
/// biject with units mod m, and split into phi(m)/ord_m(q) cosets.
pub fn coset_count(ctx: &CosetContext) -> Result<u64> {
    let mut total = 0u64;
    for m in factorize(ctx.n)?.divisors() {
        let phi = factorize(m)?.euler_phi();
        total += phi / multiplicative_order(ctx.q, m)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn sets(cs: &[CyclotomicCoset]) -> Vec<Vec<u64>> {
        cs.iter().map(|c| c.elements().to_vec()).collect()
    }

    #[test]
    fn context_validation() {
        assert!(CosetContext::new(32, 5).is_ok());
        assert!(CosetContext::new(32, 9).is_ok()); // 3^2
        assert_eq!(CosetContext::new(0, 5), Err(Error::ZeroInput));
        assert_eq!(CosetContext::new(32, 1), Err(Error::NotPrimePower(1)));
        assert_eq!(CosetContext::new(32, 6), Err(Error::NotPrimePower(6)));
        assert_eq!(
            CosetContext::new(32, 2),
            Err(Error::NotCoprime { a: 32, b: 2 })
        );
    }

    #[test]
    fn enumerate_q5_n32() {
        let ctx = CosetContext::new(32, 5).unwrap();
        let expected: Vec<Vec<u64>> = vec![
            vec![0],
            vec![1, 5, 9, 13, 17, 21, 25, 29],
            vec![2, 10, 18, 26],
            vec![3, 7, 11, 15, 19, 23, 27, 31],
            vec![4, 20],
            vec![6, 14, 22, 30],
            vec![8],
            vec![12, 28],
            vec![16],
            vec![24],
        ];
        assert_eq!(sets(&ctx.cosets()), expected);
    }

    #[test]
    fn enumerate_q3_n32() {
        let ctx = CosetContext::new(32, 3).unwrap();
        let expected: Vec<Vec<u64>> = vec![
            vec![0],
            vec![1, 3, 9, 11, 17, 19, 25, 27],
            vec![2, 6, 18, 22],
            vec![4, 12],
            vec![5, 7, 13, 15, 21, 23, 29, 31],
            vec![8, 24],
            vec![10, 14, 26, 30],
            vec![16],
            vec![20, 28],
        ];
        assert_eq!(sets(&ctx.cosets()), expected);
    }

    #[test]
    fn trivial_modulus() {
        let ctx = CosetContext::new(1, 7).unwrap();
        let cs = ctx.cosets();
        assert_eq!(sets(&cs), vec![vec![0]]);
        assert_eq!(cs[0].primitive_modulus(), 1);
    }

    #[test]
    fn representative_independence() {
        let ctx = CosetContext::new(3888, 5).unwrap();
        let c = ctx.coset_of(1001);
        for &e in c.elements().iter().take(10) {
            assert_eq!(ctx.coset_of(e), c);
        }
    }

    #[test]
    fn primitive_form_examples() {
        let ctx = CosetContext::new(3888, 5).unwrap();
        let c = ctx.coset_of(2187);
        assert_eq!(c.size(), 4);
        assert_eq!(c.primitive_modulus(), 16);
        // leader 243 reduces by gcd 243; the seed 2187/243 = 9 lands in the
        // same orbit (9 = 5^2 mod 16)
        assert_eq!(c.primitive_seed(), 1);
        let p = c.primitive_form();
        assert_eq!(p.elements(), &[1, 5, 9, 13]);
        assert_eq!(p.context().n(), 16);
        assert_eq!(p.primitive_form(), p); // idempotent

        let ctx32 = CosetContext::new(32, 3).unwrap();
        let c8 = ctx32.coset_of(8);
        let p8 = c8.primitive_form();
        assert_eq!(p8.context().n(), 4);
        assert_eq!(p8.elements(), &[1, 3]);
    }

    #[test]
    fn zero_coset_primitive_form() {
        let ctx = CosetContext::new(32, 5).unwrap();
        let c = ctx.coset_of(0);
        assert_eq!(c.primitive_modulus(), 1);
        assert_eq!(c.primitive_seed(), 0);
        assert_eq!(c.primitive_form().elements(), &[0]);
    }

    #[test]
    fn orbit_from_leader_matches_elements() {
        let ctx = CosetContext::new(32, 3).unwrap();
        let c = ctx.coset_of(1);
        let orbit = c.orbit_from_leader();
        assert_eq!(orbit[0], 1);
        let mut sorted = orbit.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, c.elements());
    }

    #[test]
    fn coset_count_matches_enumeration() {
        for (n, q) in [(32, 5), (32, 3), (3888, 5), (100, 3), (63, 2), (1, 11)] {
            let ctx = CosetContext::new(n, q).unwrap();
            assert_eq!(
                coset_count(&ctx).unwrap(),
                ctx.cosets().len() as u64,
                "n={n} q={q}"
            );
        }
    }

    proptest! {
        #[test]
        fn prop_cosets_partition(n in 1u64..400, qsel in 0usize..5) {
            let q = [2u64, 3, 5, 7, 9][qsel];
            prop_assume!(gcd(n, q) == 1);
            let ctx = CosetContext::new(n, q).unwrap();
            let cs = ctx.cosets();
            let mut seen = HashSet::new();
            let mut prev_leader = None;
            for c in &cs {
                prop_assert!(prev_leader < Some(c.leader()));
                prev_leader = Some(c.leader());
                for &e in c.elements() {
                    prop_assert!(e < n);
                    prop_assert!(seen.insert(e));
                }
                prop_assert_eq!(c.leader(), c.elements()[0]);
            }
            prop_assert_eq!(seen.len() as u64, n);
        }

        #[test]
        fn prop_streaming_matches_mask(n in 1u64..200, qsel in 0usize..4) {
            let q = [2u64, 3, 5, 7][qsel];
            prop_assume!(gcd(n, q) == 1);
            let ctx = CosetContext::new(n, q).unwrap();
            let streamed: Vec<_> = ctx.cosets_streaming().collect();
            prop_assert_eq!(streamed, ctx.cosets());
        }

        #[test]
        fn prop_size_law(n in 1u64..500, gamma in 0u64..500, qsel in 0usize..4) {
            let q = [2u64, 3, 5, 7][qsel];
            prop_assume!(gcd(n, q) == 1);
            let ctx = CosetContext::new(n, q).unwrap();
            let c = ctx.coset_of(gamma);
            prop_assert_eq!(c.size(), coset_size(&ctx, gamma).unwrap());
            // size = ord of q mod the reduced modulus
            prop_assert_eq!(
                c.size(),
                multiplicative_order(q, c.primitive_modulus()).unwrap()
            );
        }
    }
}
