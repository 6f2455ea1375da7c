//! The graded skeleton of the power series generic crossed product.
//!
//! Homogeneous elements are `a g(z^m) g(x^w)` with `a` in `K`, `m` a group
//! exponent and `w` in `Z^r`. The value is `w + sum m_i / n_i e_i`, since
//! `z_i^{n_i} = b_i x_i` and `v(x_i) = e_i`. Multiplication follows the
//! crossed product table with the carries landing on the `x_i`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::crossed_product::{CocycleData, CrossedProduct, DegeneracyPairWitness, StrongDegeneracyWitness};
use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisExtension};
use crate::group::GroupExponent;
use crate::report::ValidationReport;

/// `w + sum m_i / n_i e_i` with `0 <= m_i < n_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueVector {
    pub w: Vec<i64>,
    pub m: Vec<usize>,
    pub orders: Vec<usize>,
}

impl ValueVector {
    /// Is the value in `Gamma_F = Z^r`?
    pub fn in_gamma_f(&self) -> bool {
        self.m.iter().all(|&m| m == 0)
    }

    /// Each coordinate as a reduced fraction `(numerator, denominator)`.
    pub fn fractions(&self) -> Vec<(i64, i64)> {
        self.w
            .iter()
            .zip(&self.m)
            .zip(&self.orders)
            .map(|((&w, &m), &n)| {
                let (num, den) = (w * n as i64 + m as i64, n as i64);
                let g = num.gcd(&den);
                (num / g, den / g)
            })
            .collect()
    }

    pub fn add(&self, other: &ValueVector) -> ValueVector {
        let mut w = Vec::with_capacity(self.w.len());
        let mut m = Vec::with_capacity(self.m.len());
        for i in 0..self.w.len() {
            let n = self.orders[i];
            let sum = self.m[i] + other.m[i];
            w.push(self.w[i] + other.w[i] + (sum / n) as i64);
            m.push(sum % n);
        }
        ValueVector { w, m, orders: self.orders.clone() }
    }
}

impl fmt::Display for ValueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (num, den)) in self.fractions().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if den == 1 {
                write!(f, "{num}")?;
            } else {
                write!(f, "{num}/{den}")?;
            }
        }
        f.write_str(")")
    }
}

/// `coeff * g(z^m) * g(x^w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousElement {
    pub coeff: FieldElement,
    pub m: GroupExponent,
    pub w: Vec<i64>,
}

/// Outcome of the `q`-power centrality check on a homogeneous element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCentrality {
    pub central: bool,
    pub value: ValueVector,
    pub in_gamma_f: bool,
}

/// Outcome of the graded pair check; `witness` is set exactly when both
/// `noncyclic` and `commute` hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPair {
    pub noncyclic: bool,
    pub commute: bool,
    pub witness: Option<DegeneracyPairWitness>,
}

/// Residue data `(u-bar, b-bar)` with its relation report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCocycle {
    pub data: CocycleData,
    pub report: ValidationReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedContext {
    base: CrossedProduct,
}

impl GradedContext {
    pub fn new(base: CrossedProduct) -> Self {
        GradedContext { base }
    }

    pub fn base(&self) -> &CrossedProduct {
        &self.base
    }

    pub fn ext(&self) -> &GaloisExtension {
        self.base.ext()
    }

    pub fn element(&self, coeff: FieldElement, m: GroupExponent, w: Vec<i64>) -> Result<HomogeneousElement> {
        let h = HomogeneousElement { coeff, m, w };
        self.check(&h)?;
        Ok(h)
    }

    pub fn check(&self, h: &HomogeneousElement) -> Result<()> {
        self.ext().group().check(&h.m)?;
        self.ext().check(&h.coeff)?;
        if h.w.len() != self.base.rank() {
            return Err(Error::Malformed(alloc::format!("x-exponent has length {}", h.w.len())));
        }
        if h.coeff.is_zero() {
            return Err(Error::Domain("homogeneous elements have nonzero coefficients".into()));
        }
        Ok(())
    }

    /// `g(z_i)`.
    pub fn z(&self, i: usize) -> HomogeneousElement {
        self.monomial(self.ext().one(), self.ext().group().generator(i), 0)
    }

    /// `g(x_i)`.
    pub fn x(&self, i: usize) -> HomogeneousElement {
        let mut w = alloc::vec![0; self.base.rank()];
        w[i] = 1;
        HomogeneousElement { coeff: self.ext().one(), m: self.ext().group().identity(), w }
    }

    /// `coeff g(z^m)` with every `x`-exponent equal to `w`.
    pub fn monomial(&self, coeff: FieldElement, m: GroupExponent, w: i64) -> HomogeneousElement {
        HomogeneousElement { coeff, m, w: alloc::vec![w; self.base.rank()] }
    }

    pub fn scalar(&self, coeff: FieldElement) -> HomogeneousElement {
        self.monomial(coeff, self.ext().group().identity(), 0)
    }

    pub fn value_of(&self, h: &HomogeneousElement) -> ValueVector {
        ValueVector { w: h.w.clone(), m: h.m.0.clone(), orders: self.ext().orders().to_vec() }
    }

    /// `theta(gamma + Gamma_F) = sigma^m`, read off the fractional parts.
    pub fn theta(&self, gamma: &ValueVector) -> GroupExponent {
        GroupExponent(gamma.m.clone())
    }

    pub fn mul(&self, a: &HomogeneousElement, b: &HomogeneousElement) -> Result<HomogeneousElement> {
        self.check(a)?;
        self.check(b)?;
        let ext = self.ext();
        let grp = ext.group();
        let coeff = ext.mul(&ext.mul(&a.coeff, &ext.act(&a.m, &b.coeff)), self.base.cocycle(&a.m, &b.m));
        let w = (0..self.base.rank())
            .map(|i| a.w[i] + b.w[i] + i64::from(a.m.0[i] + b.m.0[i] >= grp.orders()[i]))
            .collect();
        Ok(HomogeneousElement { coeff, m: grp.add(&a.m, &b.m), w })
    }

    pub fn pow(&self, h: &HomogeneousElement, e: u32) -> Result<HomogeneousElement> {
        let mut acc = self.scalar(self.ext().one());
        for _ in 0..e {
            acc = self.mul(&acc, h)?;
        }
        Ok(acc)
    }

    pub fn inv(&self, h: &HomogeneousElement) -> Result<HomogeneousElement> {
        self.check(h)?;
        let ext = self.ext();
        let grp = ext.group();
        let neg = grp.neg(&h.m);
        let carry: Vec<i64> =
            (0..self.base.rank()).map(|i| i64::from(h.m.0[i] + neg.0[i] >= grp.orders()[i])).collect();
        let scale = ext.inv(&ext.mul(&h.coeff, self.base.cocycle(&h.m, &neg)))?;
        let coeff = ext.act(&neg, &scale);
        let w = (0..self.base.rank()).map(|i| -h.w[i] - carry[i]).collect();
        Ok(HomogeneousElement { coeff, m: neg, w })
    }

    pub fn commute(&self, a: &HomogeneousElement, b: &HomogeneousElement) -> Result<bool> {
        Ok(self.mul(a, b)? == self.mul(b, a)?)
    }

    /// The scalar `c` with `a b = c b a` (both sides have the same value).
    pub fn commutator_scalar(&self, a: &HomogeneousElement, b: &HomogeneousElement) -> Result<FieldElement> {
        let (ab, ba) = (self.mul(a, b)?, self.mul(b, a)?);
        self.ext().div(&ab.coeff, &ba.coeff)
    }

    /// Central iff it commutes with the residues of the `K`-basis and every `g(z_i)`.
    pub fn is_central(&self, h: &HomogeneousElement) -> Result<bool> {
        for k in 0..self.ext().dim() {
            if !self.commute(h, &self.scalar(self.ext().basis(k)))? {
                return Ok(false);
            }
        }
        for i in 0..self.base.rank() {
            if !self.commute(h, &self.z(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn qpower_central_homog_check(&self, h: &HomogeneousElement, q: u32) -> Result<PowerCentrality> {
        let central = self.is_central(&self.pow(h, q)?)?;
        let value = self.value_of(h);
        let in_gamma_f = value.in_gamma_f();
        Ok(PowerCentrality { central, value, in_gamma_f })
    }

    /// For `h1 = a g(z^m)..., h2 = b g(z^n)...` commuting with a noncyclic
    /// `theta`-span, `u_{m,n} = sigma^n(a)/a * b/sigma^m(b)`, which is the pair
    /// witness `(m, n, b^{-1}, a)`.
    pub fn graded_pair_degeneracy_check(&self, h1: &HomogeneousElement, h2: &HomogeneousElement) -> Result<GradedPair> {
        let grp = self.ext().group();
        let m = self.theta(&self.value_of(h1));
        let n = self.theta(&self.value_of(h2));
        let noncyclic = !grp.span_is_cyclic(&[m.clone(), n.clone()]);
        let commute = self.commute(h1, h2)?;
        let witness = if noncyclic && commute {
            let w = DegeneracyPairWitness { m, n, a: self.ext().inv(&h2.coeff)?, b: h1.coeff.clone() };
            if !self.base.check_pair_witness(&w)? {
                return Err(Error::Internal("graded pair witness failed its check".into()));
            }
            Some(w)
        } else {
            None
        };
        Ok(GradedPair { noncyclic, commute, witness })
    }

    /// The commuting pair `(b g(z^m), a^{-1} g(z^n))` of a pair witness.
    pub fn pair_witness_to_homogeneous(
        &self,
        w: &DegeneracyPairWitness,
    ) -> Result<(HomogeneousElement, HomogeneousElement)> {
        let h1 = self.element(w.b.clone(), w.m.clone(), alloc::vec![0; self.base.rank()])?;
        let h2 = self.element(self.ext().inv(&w.a)?, w.n.clone(), alloc::vec![0; self.base.rank()])?;
        Ok((h1, h2))
    }

    /// `l g(z^m)`, checked to be `q`-power central with value outside `Gamma_F`.
    pub fn witness_to_homogeneous(&self, w: &StrongDegeneracyWitness) -> Result<HomogeneousElement> {
        if !self.base.check_strong_witness(w)? {
            return Err(Error::InvalidWitness(alloc::format!("strong degeneracy fails at m = {}", w.m)));
        }
        let q = self.base.prime_order(&w.m)? as u32;
        let h = self.monomial(w.l.clone(), w.m.clone(), 0);
        let check = self.qpower_central_homog_check(&h, q)?;
        if !check.central || check.in_gamma_f {
            return Err(Error::Internal("witness image is not a q-power central element off Gamma_F".into()));
        }
        Ok(h)
    }

    /// Back from a `q`-power central homogeneous element to a witness; the
    /// `x`-part is central and plays no role.
    pub fn homog_to_witness(&self, h: &HomogeneousElement) -> Result<StrongDegeneracyWitness> {
        self.check(h)?;
        let q = self.base.prime_order(&h.m)? as u32;
        if !self.is_central(&self.pow(h, q)?)? {
            return Err(Error::Precondition("h^q is not central".into()));
        }
        self.base.central_element_to_witness(&h.coeff, &h.m)
    }

    /// Residues `u-bar_ij` of `pi_i pi_j pi_i^{-1} pi_j^{-1}` and `b-bar_i` of
    /// `pi_i^{n_i} f_i^{-1}`, where `theta(v(pi_i)) = e_i`, `f_i` is central
    /// and `v(f_i) = v(pi_i^{n_i})`.
    pub fn residue_cocycle(&self, pi: &[HomogeneousElement], f: &[HomogeneousElement]) -> Result<ResidueCocycle> {
        let r = self.base.rank();
        let ext = self.ext();
        if pi.len() != r || f.len() != r {
            return Err(Error::Malformed(alloc::format!("need {r} choices of pi_i and f_i")));
        }
        for (i, p) in pi.iter().enumerate() {
            self.check(p)?;
            if self.theta(&self.value_of(p)) != ext.group().generator(i) {
                return Err(Error::Precondition(alloc::format!("theta(v(pi_{})) is not sigma_{}", i + 1, i + 1)));
            }
        }
        let mut b = Vec::with_capacity(r);
        for (i, (p, fi)) in pi.iter().zip(f).enumerate() {
            self.check(fi)?;
            let power = self.pow(p, ext.orders()[i] as u32)?;
            if self.value_of(fi) != self.value_of(&power) {
                return Err(Error::Precondition(alloc::format!(
                    "v(f_{}) = {} differs from v(pi_{}^{}) = {}",
                    i + 1,
                    self.value_of(fi),
                    i + 1,
                    ext.orders()[i],
                    self.value_of(&power)
                )));
            }
            if !fi.m.is_zero() || !ext.is_fixed(&fi.coeff) {
                return Err(Error::Precondition(alloc::format!("f_{} is not central", i + 1)));
            }
            let unit = self.mul(&power, &self.inv(fi)?)?;
            b.push(unit.coeff);
        }
        let mut u = Vec::with_capacity(r);
        for pi_i in pi {
            let row = pi.iter().map(|pi_j| self.commutator_scalar(pi_i, pi_j)).collect::<Result<Vec<_>>>()?;
            u.push(row);
        }
        let data = CocycleData { u, b };
        let report = crate::crossed_product::validate_relations(ext, &data)?;
        Ok(ResidueCocycle { data, report })
    }

    /// The standard choices `pi_i = g(z_i)`, `f_i = g(x_i)`.
    pub fn standard_residue_cocycle(&self) -> Result<ResidueCocycle> {
        let r = self.base.rank();
        let pi: Vec<_> = (0..r).map(|i| self.z(i)).collect();
        let f: Vec<_> = (0..r).map(|i| self.x(i)).collect();
        self.residue_cocycle(&pi, &f)
    }

    /// `(m, value of g(z^m), theta)` for every group element.
    pub fn theta_table(&self) -> Vec<(GroupExponent, ValueVector, GroupExponent)> {
        self.ext()
            .group()
            .elements()
            .map(|m| {
                let v = self.value_of(&self.monomial(self.ext().one(), m.clone(), 0));
                let t = self.theta(&v);
                (m, v, t)
            })
            .collect()
    }

    /// `[D-bar : F-bar] = |Gamma_D : Gamma_F| = sqrt [D : F]`, plus `theta`
    /// being an isomorphism. Cyclic `G` is rejected.
    pub fn semiramification_report(&self) -> Result<ValidationReport> {
        let ext = self.ext();
        let grp = ext.group();
        if grp.is_cyclic() {
            return Err(Error::Precondition("G must be noncyclic for degeneracy audits".into()));
        }
        let mut report = ValidationReport::new();
        let table = self.theta_table();
        let classes: alloc::collections::BTreeSet<Vec<usize>> = table.iter().map(|(_, v, _)| v.m.clone()).collect();
        let index = classes.len();
        let residue_degree = ext.dim() / ext.base_degree();
        let degree = residue_degree * grp.size();
        report.record(
            "value group index",
            index == grp.orders().iter().product::<usize>(),
            alloc::format!("|Gamma_D : Gamma_F| = {index}"),
        );
        report.record(
            "semi-ramified",
            index == residue_degree && index * index == degree,
            alloc::format!("[D:F] = {degree}, residue degree {residue_degree}, index {index}"),
        );
        let bijective = table.iter().all(|(m, _, t)| m == t) && classes.len() == grp.size();
        let mut additive = true;
        for (m, vm, _) in &table {
            for (n, vn, _) in &table {
                additive &= self.theta(&vm.add(vn)) == grp.add(m, n);
            }
        }
        report.record(
            "theta isomorphism",
            bijective && additive,
            String::from(if bijective && additive { "bijective and additive" } else { "theta fails to be an isomorphism" }),
        );
        report.advise("defectless", true, "assumed: the power series model is defectless");
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn ctx() -> GradedContext {
        GradedContext::new(instance_b())
    }

    #[test]
    fn value_examples() {
        let c = ctx();
        let ext = c.ext();
        assert_eq!(c.value_of(&c.z(0)).to_string(), "(1/2,0)");
        assert!(c.value_of(&c.x(0)).in_gamma_f());
        assert_eq!(c.value_of(&c.x(0)).to_string(), "(1,0)");
        let h = c.monomial(ext.basis(1), g(&[1, 1]), 0);
        assert_eq!(c.value_of(&h).to_string(), "(1/2,1/2)");
        assert!(!c.value_of(&h).in_gamma_f());
    }

    #[test]
    fn theta_examples() {
        let c = ctx();
        let v = |w: Vec<i64>, m: Vec<usize>| ValueVector { w, m, orders: vec![2, 2] };
        assert_eq!(c.theta(&v(vec![4, -1], vec![0, 0])), g(&[0, 0]));
        assert_eq!(c.theta(&v(vec![0, 0], vec![1, 0])), g(&[1, 0]));
        let gamma = v(vec![1, 0], vec![1, 1]);
        assert_eq!(gamma.to_string(), "(3/2,1/2)");
        assert_eq!(c.theta(&gamma), g(&[1, 1]));
    }

    #[test]
    fn commute_examples() {
        let c = ctx();
        let ext = c.ext();
        let central = c.element(ext.from_int(7), g(&[0, 0]), vec![2, -1]).unwrap();
        assert!(c.commute(&central, &c.z(0)).unwrap());
        assert!(!c.commute(&c.z(0), &c.z(1)).unwrap());
        assert_eq!(c.commutator_scalar(&c.z(0), &c.z(1)).unwrap(), ext.from_int(-1));
        let h1 = c.monomial(ext.basis(2), g(&[1, 0]), 0);
        let h2 = c.monomial(ext.basis(1), g(&[0, 1]), 0);
        assert_eq!(c.commutator_scalar(&h1, &h2).unwrap(), ext.from_int(-1));
    }

    #[test]
    fn power_central_examples() {
        let c = ctx();
        let ext = c.ext();
        let h = c.monomial(ext.basis(1), g(&[1, 1]), 0);
        assert_eq!(c.pow(&h, 2).unwrap(), c.element(ext.from_int(30), g(&[0, 0]), vec![1, 1]).unwrap());
        let check = c.qpower_central_homog_check(&h, 2).unwrap();
        assert!(check.central && !check.in_gamma_f);
        let x = c.x(1);
        let check = c.qpower_central_homog_check(&x, 3).unwrap();
        assert!(check.central && check.in_gamma_f);
        let check = c.qpower_central_homog_check(&c.z(0), 2).unwrap();
        assert!(check.central && !check.in_gamma_f);
        let w = c.homog_to_witness(&c.z(0)).unwrap();
        assert!(c.base().check_strong_witness(&w).unwrap());
    }

    #[test]
    fn pair_examples() {
        let c = ctx();
        let ext = c.ext();
        let h2 = c.monomial(ext.basis(1), g(&[0, 1]), 0);
        let out = c.graded_pair_degeneracy_check(&c.z(0), &h2).unwrap();
        assert!(out.noncyclic && out.commute);
        let w = out.witness.unwrap();
        assert_eq!((w.m.clone(), w.n.clone()), (g(&[1, 0]), g(&[0, 1])));
        let (a, b) = c.pair_witness_to_homogeneous(&w).unwrap();
        assert!(c.commute(&a, &b).unwrap());

        let h = c.monomial(ext.basis(1), g(&[1, 1]), 0);
        let same = c.graded_pair_degeneracy_check(&h, &h).unwrap();
        assert!(!same.noncyclic && same.witness.is_none());
        let cyclic = c.graded_pair_degeneracy_check(&c.z(0), &c.x(1)).unwrap();
        assert!(!cyclic.noncyclic);
    }

    #[test]
    fn pair_correspondence_on_all_small_pairs() {
        for alg in [instance_b(), instance_b3()] {
            let c = GradedContext::new(alg);
            let ext = c.ext();
            let coeffs: Vec<FieldElement> = (0..ext.dim()).map(|k| ext.basis(k)).take(4).collect();
            let grp = ext.group();
            let gens = [grp.generator(0), grp.generator(1)];
            for a in &coeffs {
                for b in &coeffs {
                    let h1 = c.monomial(a.clone(), gens[0].clone(), 0);
                    let h2 = c.monomial(b.clone(), gens[1].clone(), 1);
                    let out = c.graded_pair_degeneracy_check(&h1, &h2).unwrap();
                    assert_eq!(out.witness.is_some(), out.commute);
                    if let Some(w) = out.witness {
                        assert!(c.base().check_pair_witness(&w).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_map_to_power_central_elements() {
        for (alg, w) in [(instance_b(), instance_b_witness()), (instance_b3(), instance_b3_witness())] {
            let c = GradedContext::new(alg);
            let h = c.witness_to_homogeneous(&w).unwrap();
            let back = c.homog_to_witness(&h).unwrap();
            assert!(c.base().check_strong_witness(&back).unwrap());
        }
    }

    #[test]
    fn residue_examples() {
        let c = ctx();
        let ext = c.ext();
        let res = c.standard_residue_cocycle().unwrap();
        assert_eq!(&res.data, c.base().cocycle_data());
        assert!(res.report.passed());

        let pi = vec![c.z(0), c.z(1)];
        let f = vec![
            c.element(ext.from_int(3), g(&[0, 0]), vec![1, 0]).unwrap(),
            c.element(ext.from_int(5), g(&[0, 0]), vec![0, 1]).unwrap(),
        ];
        let res = c.residue_cocycle(&pi, &f).unwrap();
        assert_eq!(res.data.b, vec![ext.one(), ext.one()]);

        let bad = vec![c.x(1), c.x(1)];
        assert!(matches!(c.residue_cocycle(&pi, &bad), Err(Error::Precondition(_))));

        let c3 = GradedContext::new(instance_b3());
        let res = c3.standard_residue_cocycle().unwrap();
        assert_eq!(&res.data, c3.base().cocycle_data());
    }

    #[test]
    fn semiramification_examples() {
        let report = ctx().semiramification_report().unwrap();
        assert!(report.passed(), "{}", report.summary());
        assert_eq!(report.get("semi-ramified").unwrap().detail, "[D:F] = 16, residue degree 4, index 4");
        let report = GradedContext::new(instance_b3()).semiramification_report().unwrap();
        assert!(report.passed());
        assert_eq!(report.get("semi-ramified").unwrap().detail, "[D:F] = 81, residue degree 9, index 9");
    }

    #[test]
    fn values_add_and_inverses_cancel() {
        let c = GradedContext::new(instance_b3());
        let ext = c.ext();
        let grp = ext.group();
        for m in grp.elements() {
            for n in grp.elements() {
                let a = c.element(el(ext, &[1, 0, 0, 1, 0, 0, 0, 0, 2]), m.clone(), vec![1, -2]).unwrap();
                let b = c.element(el(ext, &[0, 1, 1, 0, 0, 0, 0, 0, 0]), n.clone(), vec![0, 3]).unwrap();
                let p = c.mul(&a, &b).unwrap();
                assert_eq!(c.value_of(&p), c.value_of(&a).add(&c.value_of(&b)));
            }
            let a = c.element(el(ext, &[2, 0, 1, 0, 0, 0, 1, 0, 0]), m, vec![1, 1]).unwrap();
            assert_eq!(c.mul(&a, &c.inv(&a).unwrap()).unwrap(), c.scalar(ext.one()));
        }
    }
}
