//! The twisted polynomial ring `K[s; sigma; u]` and the generic abelian
//! crossed product `A = (K(X)/F(X), z, u, bX)`.
//!
//! Polynomials keep unbounded exponents. [`GenericCrossedProduct::reduce`]
//! substitutes `s_i^{n_i} = b_i X_i`, landing in `A` where every term is
//! `c z^g X^w` with `g` in canonical range and `w` a Laurent exponent of the
//! central indeterminates `X_i = b_i^{-1} s_i^{n_i}`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::crossed_product::{
    monomial_label, right_mul_generator, search_strong_degeneracy, CrossedProduct, Exhausted, SearchOutcome,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisExtension};
use crate::group::{is_prime, GroupExponent};

/// A finitely supported sum `sum a_m s^m` over `m` in `N^r`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistedPolynomial {
    terms: BTreeMap<Vec<usize>, FieldElement>,
}

impl TwistedPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, ext: &GaloisExtension, m: Vec<usize>, value: FieldElement) {
        accumulate(&mut self.terms, ext, m, value);
    }
}

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, FieldElement>, ext: &GaloisExtension, key: K, value: FieldElement) {
    if value.is_zero() {
        return;
    }
    match terms.remove(&key) {
        Some(old) => {
            let sum = ext.add(&old, &value);
            if !sum.is_zero() {
                terms.insert(key, sum);
            }
        }
        None => {
            terms.insert(key, value);
        }
    }
}

/// Right-to-left lexicographic order: the last coordinate decides first.
pub fn right_to_left_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// An element of `A`: terms `c z^g X^w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedElement {
    terms: BTreeMap<(GroupExponent, Vec<i64>), FieldElement>,
}

impl ReducedElement {
    pub fn terms(&self) -> &BTreeMap<(GroupExponent, Vec<i64>), FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A monomial `l s^m` whose `p`-th power is central in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCentralMonomial {
    pub l: FieldElement,
    pub m: GroupExponent,
    pub p: usize,
}

/// `K[s; sigma; u]` and `A` built over a crossed product `(K/F, z, u, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericCrossedProduct {
    base: CrossedProduct,
}

impl GenericCrossedProduct {
    pub fn new(base: CrossedProduct) -> Self {
        GenericCrossedProduct { base }
    }

    pub fn base(&self) -> &CrossedProduct {
        &self.base
    }

    pub fn ext(&self) -> &GaloisExtension {
        self.base.ext()
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn check(&self, t: &TwistedPolynomial) -> Result<()> {
        for (m, a) in &t.terms {
            if m.len() != self.rank() || a.dim() != self.ext().dim() {
                return Err(Error::Domain("polynomial belongs to a different ring".into()));
            }
        }
        Ok(())
    }

    pub fn monomial(&self, coeff: FieldElement, m: Vec<usize>) -> TwistedPolynomial {
        let mut t = TwistedPolynomial::zero();
        t.accumulate(self.ext(), m, coeff);
        t
    }

    pub fn scalar(&self, a: FieldElement) -> TwistedPolynomial {
        self.monomial(a, vec![0; self.rank()])
    }

    pub fn one(&self) -> TwistedPolynomial {
        self.scalar(self.ext().one())
    }

    /// The variable `s_i` (zero-based).
    pub fn s(&self, i: usize) -> TwistedPolynomial {
        let mut m = vec![0; self.rank()];
        m[i] = 1;
        self.monomial(self.ext().one(), m)
    }

    pub fn add(&self, x: &TwistedPolynomial, y: &TwistedPolynomial) -> TwistedPolynomial {
        let mut out = x.clone();
        for (m, a) in &y.terms {
            out.accumulate(self.ext(), m.clone(), a.clone());
        }
        out
    }

    /// `s^m s^n = c(m, n) s^{m+n}` without any carry.
    fn free_cocycle(&self, m: &[usize], n: &[usize]) -> FieldElement {
        let ext = self.ext();
        let mut coeff = ext.one();
        let mut exps = m.to_vec();
        for (j, &nj) in n.iter().enumerate() {
            for _ in 0..nj {
                right_mul_generator(ext, self.base.cocycle_data(), self.base.twists(), &mut coeff, &mut exps, j, false);
            }
        }
        coeff
    }

    pub fn mul(&self, x: &TwistedPolynomial, y: &TwistedPolynomial) -> Result<TwistedPolynomial> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    fn mul_unchecked(&self, x: &TwistedPolynomial, y: &TwistedPolynomial) -> TwistedPolynomial {
        let ext = self.ext();
        let mut out = TwistedPolynomial::zero();
        for (m, a) in &x.terms {
            for (n, b) in &y.terms {
                let c = self.free_cocycle(m, n);
                let coeff = ext.mul(&ext.mul(a, &ext.act_raw(m, b)), &c);
                let sum = m.iter().zip(n).map(|(p, q)| p + q).collect();
                out.accumulate(ext, sum, coeff);
            }
        }
        out
    }

    pub fn pow(&self, x: &TwistedPolynomial, e: u32) -> Result<TwistedPolynomial> {
        self.check(x)?;
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul_unchecked(&acc, x);
        }
        Ok(acc)
    }

    /// `t^v`: the term whose exponent is least in right-to-left order.
    pub fn leading_monomial(&self, t: &TwistedPolynomial) -> Result<(Vec<usize>, FieldElement)> {
        self.check(t)?;
        t.terms
            .iter()
            .min_by(|a, b| right_to_left_cmp(a.0, b.0))
            .map(|(m, a)| (m.clone(), a.clone()))
            .ok_or_else(|| Error::Domain("the zero polynomial has no leading monomial".into()))
    }

    /// Does `(t^v)^q = (t^q)^v` hold for this `t`?
    pub fn leading_monomial_power_property(&self, t: &TwistedPolynomial, q: u32) -> Result<bool> {
        let (m, a) = self.leading_monomial(t)?;
        let lhs = self.pow(&self.monomial(a, m), q)?;
        let (mq, aq) = self.leading_monomial(&self.pow(t, q)?)?;
        Ok(lhs == self.monomial(aq, mq))
    }

    /// Substitutes `s_i^{n_i} = b_i X_i` throughout.
    pub fn reduce(&self, t: &TwistedPolynomial) -> Result<ReducedElement> {
        self.check(t)?;
        let ext = self.ext();
        let orders = ext.orders();
        let mut out = ReducedElement::default();
        for (m, a) in &t.terms {
            let mut coeff = a.clone();
            let mut prefix = vec![0; m.len()];
            let mut g = vec![0; m.len()];
            let mut w = vec![0i64; m.len()];
            for (i, &mi) in m.iter().enumerate() {
                let (q, r) = (mi / orders[i], mi % orders[i]);
                prefix[i] = r;
                if q > 0 {
                    let b = ext.pow(&self.base.cocycle_data().b[i], q as u64);
                    coeff = ext.mul(&coeff, &ext.act_raw(&prefix, &b));
                }
                g[i] = r;
                w[i] = q as i64;
            }
            accumulate(&mut out.terms, ext, (GroupExponent(g), w), coeff);
        }
        Ok(out)
    }

    fn check_reduced(&self, x: &ReducedElement) -> Result<()> {
        for ((g, w), a) in &x.terms {
            if !self.ext().group().contains(g) || w.len() != self.rank() || a.dim() != self.ext().dim() {
                return Err(Error::Domain("element belongs to a different algebra".into()));
            }
        }
        Ok(())
    }

    pub fn reduced_monomial(&self, coeff: FieldElement, g: GroupExponent, w: Vec<i64>) -> ReducedElement {
        let mut out = ReducedElement::default();
        accumulate(&mut out.terms, self.ext(), (g, w), coeff);
        out
    }

    /// The product in `A`: `z^g z^h = c(g, h) X^{carry(g, h)} z^{g+h}`, where
    /// `carry(g, h)_i = 1` exactly when `g_i + h_i >= n_i`.
    pub fn reduced_mul(&self, x: &ReducedElement, y: &ReducedElement) -> Result<ReducedElement> {
        self.check_reduced(x)?;
        self.check_reduced(y)?;
        let ext = self.ext();
        let grp = ext.group();
        let mut out = ReducedElement::default();
        for ((g, w), a) in &x.terms {
            for ((h, v), b) in &y.terms {
                let coeff = ext.mul(&ext.mul(a, &ext.act(g, b)), self.base.cocycle(g, h));
                let exps = (0..self.rank())
                    .map(|i| w[i] + v[i] + i64::from(g.0[i] + h.0[i] >= grp.orders()[i]))
                    .collect();
                accumulate(&mut out.terms, ext, (grp.add(g, h), exps), coeff);
            }
        }
        Ok(out)
    }

    /// Central in `A` iff every term has `g = 0` and a `G`-fixed coefficient.
    pub fn reduced_is_central(&self, x: &ReducedElement) -> Result<bool> {
        self.check_reduced(x)?;
        Ok(x.terms.iter().all(|((g, _), a)| g.is_zero() && self.ext().is_fixed(a)))
    }

    /// Centrality by brute force: commutes with the basis of `K` and every `z_i`.
    pub fn reduced_commutes_with_generators(&self, x: &ReducedElement) -> Result<bool> {
        let ext = self.ext();
        let grp = ext.group();
        let zero_w = vec![0; self.rank()];
        let mut gens: Vec<ReducedElement> =
            (0..ext.dim()).map(|k| self.reduced_monomial(ext.basis(k), grp.identity(), zero_w.clone())).collect();
        gens.extend((0..self.rank()).map(|i| self.reduced_monomial(ext.one(), grp.generator(i), zero_w.clone())));
        for y in &gens {
            if self.reduced_mul(x, y)? != self.reduced_mul(y, x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Is `t^p` in the center `F[X]`?
    pub fn is_p_power_central(&self, t: &TwistedPolynomial, p: u32) -> Result<bool> {
        self.reduced_is_central(&self.reduce(&self.pow(t, p)?)?)
    }

    /// `t - t_c`, dropping the monomials of `t` that are central in `A`.
    pub fn strip_central(&self, t: &TwistedPolynomial) -> Result<TwistedPolynomial> {
        self.check(t)?;
        let mut out = TwistedPolynomial::zero();
        for (m, a) in &t.terms {
            let single = self.monomial(a.clone(), m.clone());
            if !self.reduced_is_central(&self.reduce(&single)?)? {
                out.accumulate(self.ext(), m.clone(), a.clone());
            }
        }
        Ok(out)
    }

    /// `(is l s^m p-power central in A, is l z^m p-power central in the base)`
    /// for `sigma^m` of prime order `p`.
    pub fn monomial_equivalence(&self, l: &FieldElement, m: &GroupExponent) -> Result<(bool, bool)> {
        let p = self.base.prime_order(m)? as u32;
        let in_generic = self.is_p_power_central(&self.monomial(l.clone(), m.0.clone()), p)?;
        let y = self.base.monomial(l.clone(), m.clone());
        let in_base = self.base.is_central(&self.base.pow(&y, p)?)?;
        Ok((in_generic, in_base))
    }

    /// Looks for a `p`-power central monomial `l s^m`. With `use_search`, the
    /// strong degeneracy search runs first and its witness gives the monomial;
    /// otherwise (or if it finds nothing) each order-`p` exponent is tried
    /// against each candidate directly.
    pub fn monomial_p_central_search(
        &self,
        candidates: &[FieldElement],
        use_search: bool,
    ) -> Result<SearchOutcome<PowerCentralMonomial>> {
        let grp = self.ext().group();
        let p = p_group_prime(grp.orders())
            .ok_or_else(|| Error::Precondition("G must be a p-group".into()))?;
        if grp.is_cyclic() {
            return Err(Error::Precondition("G must be noncyclic".into()));
        }
        if use_search {
            if let SearchOutcome::Found(w) = search_strong_degeneracy(&self.base, candidates)? {
                let mono = self.monomial(w.l.clone(), w.m.0.clone());
                if !self.is_p_power_central(&mono, p as u32)? {
                    return Err(Error::Internal("image of a strong degeneracy witness is not p-power central".into()));
                }
                return Ok(SearchOutcome::Found(PowerCentralMonomial { l: w.l, m: w.m, p }));
            }
        }
        let exponents: Vec<GroupExponent> =
            grp.prime_order_elements().into_iter().filter(|(_, q)| *q == p).map(|(m, _)| m).collect();
        for m in &exponents {
            for l in candidates.iter().filter(|l| !l.is_zero()) {
                if self.is_p_power_central(&self.monomial(l.clone(), m.0.clone()), p as u32)? {
                    return Ok(SearchOutcome::Found(PowerCentralMonomial { l: l.clone(), m: m.clone(), p }));
                }
            }
        }
        Ok(SearchOutcome::Exhausted(Exhausted { exponents: exponents.len(), candidates: candidates.len() }))
    }

    pub fn display(&self, t: &TwistedPolynomial) -> String {
        if t.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = t
            .terms
            .iter()
            .map(|(m, a)| {
                let mono = monomial_label(&GroupExponent(m.clone())).replace('z', "s");
                term(&self.ext().display(a), &mono, a)
            })
            .collect();
        parts.join(" + ")
    }

    pub fn display_reduced(&self, x: &ReducedElement) -> String {
        if x.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = x
            .terms
            .iter()
            .map(|((g, w), a)| {
                let mut mono = monomial_label(g);
                for (i, &e) in w.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => mono.push_str(&alloc::format!("X{}", i + 1)),
                        _ => mono.push_str(&alloc::format!("X{}^{e}", i + 1)),
                    }
                }
                term(&self.ext().display(a), &mono, a)
            })
            .collect();
        parts.join(" + ")
    }
}

fn term(coeff: &str, mono: &str, a: &FieldElement) -> String {
    let compound = a.coords().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() > 1;
    match (coeff, mono.is_empty()) {
        (_, true) => String::from(coeff),
        ("1", false) => String::from(mono),
        _ if compound => alloc::format!("({coeff})*{mono}"),
        _ => alloc::format!("{coeff}*{mono}"),
    }
}

/// The prime `p` when every order is a power of `p`.
fn p_group_prime(orders: &[usize]) -> Option<usize> {
    let p = (2..=orders[0]).find(|&d| orders[0] % d == 0)?;
    let is_power = |mut n: usize| {
        while n % p == 0 {
            n /= p;
        }
        n == 1
    };
    (is_prime(p) && orders.iter().all(|&n| is_power(n))).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;
    use proptest::prelude::*;

    fn ring() -> GenericCrossedProduct {
        GenericCrossedProduct::new(instance_b())
    }

    #[test]
    fn twisting_examples() {
        let a = ring();
        let ext = a.ext();
        let r2 = ext.basis(1);
        let lhs = a.mul(&a.s(0), &a.scalar(r2.clone())).unwrap();
        assert_eq!(lhs, a.monomial(ext.neg(&r2), vec![1, 0]));
        let t = a.add(&a.s(1), &a.scalar(ext.basis(3)));
        assert_eq!(a.mul(&a.one(), &t).unwrap(), t);
        let s21 = a.mul(&a.s(1), &a.s(0)).unwrap();
        assert_eq!(s21, a.monomial(ext.from_int(-1), vec![1, 1]));
        // No carry in the polynomial ring.
        assert_eq!(a.pow(&a.s(0), 2).unwrap(), a.monomial(ext.one(), vec![2, 0]));
        assert!(matches!(a.mul(&a.s(0), &GenericCrossedProduct::new(instance_b3()).s(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn leading_monomial_examples() {
        let a = ring();
        let ext = a.ext();
        let (x, y) = (ext.from_int(2), ext.from_int(7));
        let t = a.add(&a.monomial(x.clone(), vec![1, 0]), &a.monomial(y.clone(), vec![1, 1]));
        assert_eq!(a.leading_monomial(&t).unwrap(), (vec![1, 0], x.clone()));
        let t = a.add(&a.monomial(x.clone(), vec![0, 1]), &a.monomial(y.clone(), vec![1, 0]));
        assert_eq!(a.leading_monomial(&t).unwrap(), (vec![1, 0], y));
        let single = a.monomial(x.clone(), vec![3, 2]);
        assert_eq!(a.leading_monomial(&single).unwrap(), (vec![3, 2], x));
        assert!(matches!(a.leading_monomial(&TwistedPolynomial::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn reduction_examples() {
        let a = ring();
        let ext = a.ext();
        let sq = a.reduce(&a.pow(&a.s(0), 2).unwrap()).unwrap();
        assert_eq!(sq, a.reduced_monomial(ext.from_int(3), g(&[0, 0]), vec![1, 0]));
        assert_eq!(a.display_reduced(&sq), "3*X1");
        let t = a.monomial(ext.basis(2), vec![1, 1]);
        assert_eq!(a.reduce(&t).unwrap(), a.reduced_monomial(ext.basis(2), g(&[1, 1]), vec![0, 0]));
        // s1 s2 s1 s2 = s1 (u21 s1 s2) s2 = sigma_1(-1) s1^2 s2^2 = -b1 b2 X1 X2.
        let s12 = a.mul(&a.s(0), &a.s(1)).unwrap();
        let sq = a.reduce(&a.pow(&s12, 2).unwrap()).unwrap();
        assert_eq!(sq, a.reduced_monomial(ext.from_int(-15), g(&[0, 0]), vec![1, 1]));
        assert_eq!(a.display_reduced(&sq), "-15*X1X2");
    }

    #[test]
    fn power_central_examples() {
        let a = ring();
        let ext = a.ext();
        let center = a.monomial(ext.from_int(4), vec![2, 4]);
        assert!(a.is_p_power_central(&center, 2).unwrap());
        let w = a.monomial(ext.basis(1), vec![1, 1]);
        assert!(a.is_p_power_central(&w, 2).unwrap());
        let sq = a.reduce(&a.pow(&w, 2).unwrap()).unwrap();
        assert_eq!(sq, a.reduced_monomial(ext.from_int(30), g(&[0, 0]), vec![1, 1]));
        assert!(a.reduced_commutes_with_generators(&sq).unwrap());
        assert!(a.is_p_power_central(&a.s(0), 2).unwrap());
        // (sqrt2 s1 + s2)^2 = -6 X1 + 5 X2: the cross terms cancel.
        let cancelling = a.add(&a.monomial(ext.basis(1), vec![1, 0]), &a.s(1));
        let sq = a.reduce(&a.pow(&cancelling, 2).unwrap()).unwrap();
        let expected = ReducedElement {
            terms: [((g(&[0, 0]), vec![1, 0]), ext.from_int(-6)), ((g(&[0, 0]), vec![0, 1]), ext.from_int(5))]
                .into_iter()
                .collect(),
        };
        assert_eq!(sq, expected);
        // (sqrt3 s1 + s2)^2 = 9 X1 + 2 sqrt3 s1 s2 + 5 X2.
        let mixed = a.add(&a.monomial(ext.basis(2), vec![1, 0]), &a.s(1));
        assert!(!a.is_p_power_central(&mixed, 2).unwrap());
        let stripped = a.strip_central(&a.add(&center, &w)).unwrap();
        assert_eq!(stripped, w);
    }

    #[test]
    fn search_examples() {
        let a = ring();
        let ext = a.ext();
        let basis: Vec<_> = (0..4).map(|k| ext.basis(k)).collect();
        let found = a.monomial_p_central_search(&basis, true).unwrap().found().unwrap();
        assert!(a.is_p_power_central(&a.monomial(found.l.clone(), found.m.0.clone()), 2).unwrap());
        let only_r2 = [ext.basis(1)];
        let found = a.monomial_p_central_search(&only_r2, false).unwrap().found().unwrap();
        assert_eq!(found.l, ext.basis(1));
        assert!(matches!(a.monomial_p_central_search(&[], false).unwrap(), SearchOutcome::Exhausted(_)));

        let triv = GenericCrossedProduct::new(instance_b_trivial());
        for (m, _) in ext.group().prime_order_elements() {
            assert!(triv.is_p_power_central(&triv.monomial(ext.one(), m.0), 2).unwrap());
        }
    }

    #[test]
    fn witness_images_are_power_central() {
        for (alg, w) in [(instance_b(), instance_b_witness()), (instance_b3(), instance_b3_witness())] {
            let a = GenericCrossedProduct::new(alg);
            let q = a.base().prime_order(&w.m).unwrap() as u32;
            let mono = a.monomial(w.l.clone(), w.m.0.clone());
            let power = a.reduce(&a.pow(&mono, q).unwrap()).unwrap();
            assert!(a.reduced_is_central(&power).unwrap());
            assert!(a.reduced_commutes_with_generators(&power).unwrap());
        }
    }

    #[test]
    fn monomial_equivalence_on_candidates() {
        for alg in [instance_b(), instance_b3()] {
            let a = GenericCrossedProduct::new(alg);
            let candidates = crate::crossed_product::default_candidates(a.ext());
            for (m, _) in a.ext().group().prime_order_elements() {
                for l in candidates.iter().take(10) {
                    let (generic, base) = a.monomial_equivalence(l, &m).unwrap();
                    assert_eq!(generic, base);
                }
            }
        }
    }

    #[test]
    fn p_group_detection() {
        assert_eq!(p_group_prime(&[2, 4]), Some(2));
        assert_eq!(p_group_prime(&[3, 3]), Some(3));
        assert_eq!(p_group_prime(&[2, 3]), None);
        let b3 = GenericCrossedProduct::new(instance_b3());
        assert!(b3.monomial_p_central_search(&[], false).is_ok());
    }

    fn poly(a: &GenericCrossedProduct, raw: &[(Vec<usize>, Vec<i64>)]) -> TwistedPolynomial {
        raw.iter().fold(TwistedPolynomial::zero(), |acc, (m, c)| a.add(&acc, &a.monomial(el(a.ext(), c), m.clone())))
    }

    fn raw_poly(dim: usize, terms: usize) -> impl Strategy<Value = Vec<(Vec<usize>, Vec<i64>)>> {
        prop::collection::vec(
            (prop::collection::vec(0usize..4, 2), prop::collection::vec(-2i64..=2, dim)),
            1..=terms,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ring_laws(x in raw_poly(4, 3), y in raw_poly(4, 3), z in raw_poly(4, 2)) {
            let a = ring();
            let (x, y, z) = (poly(&a, &x), poly(&a, &y), poly(&a, &z));
            let left = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
            let right = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(a.mul(&x, &a.one()).unwrap(), x.clone());
            let rx = a.reduce(&x).unwrap();
            let ry = a.reduce(&y).unwrap();
            prop_assert_eq!(a.reduce(&a.mul(&x, &y).unwrap()).unwrap(), a.reduced_mul(&rx, &ry).unwrap());
        }

        #[test]
        fn leading_monomial_is_multiplicative(x in raw_poly(4, 3), q in 2u32..=3) {
            let a = ring();
            let x = poly(&a, &x);
            prop_assume!(!x.is_zero());
            prop_assert!(a.leading_monomial_power_property(&x, q).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn reduce_is_multiplicative_b3(x in raw_poly(9, 2), y in raw_poly(9, 2)) {
            let a = GenericCrossedProduct::new(instance_b3());
            let (x, y) = (poly(&a, &x), poly(&a, &y));
            let lhs = a.reduce(&a.mul(&x, &y).unwrap()).unwrap();
            let rhs = a.reduced_mul(&a.reduce(&x).unwrap(), &a.reduce(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
