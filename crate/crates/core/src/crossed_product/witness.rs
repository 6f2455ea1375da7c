//! Degeneracy witnesses and the passage between strong degeneracy and
//! `q`-power central monomials `l z^m`.

use alloc::vec::Vec;

use super::{AlgebraElement, CocycleData, CrossedProduct};
use crate::error::{Error, Result};
use crate::field::{FieldElement, Hilbert90};
use crate::group::{is_prime, GroupExponent};

/// `m` of prime order `q`, `l` and `x_1..x_r` with
/// `u_{i,m} = sigma^m(x_i)/x_i * l/sigma_i(l)` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDegeneracyWitness {
    pub m: GroupExponent,
    pub l: FieldElement,
    pub x: Vec<FieldElement>,
}

/// `<sigma^m, sigma^n>` noncyclic and
/// `u_{m,n} = sigma^m(a)/a * sigma^n(b)/b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyPairWitness {
    pub m: GroupExponent,
    pub n: GroupExponent,
    pub a: FieldElement,
    pub b: FieldElement,
}

impl CrossedProduct {
    /// The order of `sigma^m`, which must be prime.
    pub fn prime_order(&self, m: &GroupExponent) -> Result<usize> {
        self.ext.group().check(m)?;
        let q = self.ext.order_of(m);
        if is_prime(q) {
            Ok(q)
        } else {
            Err(Error::Precondition(alloc::format!("sigma^{m} has order {q}, which is not prime")))
        }
    }

    /// `sigma^g(x) / x`.
    fn coboundary(&self, g: &GroupExponent, x: &FieldElement) -> Result<FieldElement> {
        self.ext.div(&self.ext.act(g, x), x)
    }

    /// `sigma_i(l) l^{-1} u_{i,m}`, whose norm along `m` is 1 exactly when
    /// the `i`-th condition of strong degeneracy can be solved.
    pub fn strong_condition(&self, i: usize, m: &GroupExponent, l: &FieldElement) -> Result<FieldElement> {
        let ratio = self.ext.div(&self.ext.act_generator(i, l), l)?;
        Ok(self.ext.mul(&ratio, &self.commutator_row(i, m)?))
    }

    fn check_shapes(&self, w: &StrongDegeneracyWitness) -> Result<()> {
        if w.x.len() != self.rank() {
            return Err(Error::Malformed(alloc::format!(
                "witness has {} x-values for rank {}",
                w.x.len(),
                self.rank()
            )));
        }
        self.ext.check(&w.l)?;
        for x in &w.x {
            self.ext.check(x)?;
        }
        Ok(())
    }

    pub fn check_strong_witness(&self, w: &StrongDegeneracyWitness) -> Result<bool> {
        self.check_shapes(w)?;
        self.prime_order(&w.m)?;
        if w.l.is_zero() || w.x.iter().any(FieldElement::is_zero) {
            return Ok(false);
        }
        for (i, xi) in w.x.iter().enumerate() {
            let lhs = self.commutator_row(i, &w.m)?;
            let twist = self.ext.div(&w.l, &self.ext.act_generator(i, &w.l))?;
            let rhs = self.ext.mul(&self.coboundary(&w.m, xi)?, &twist);
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn check_pair_witness(&self, w: &DegeneracyPairWitness) -> Result<bool> {
        let grp = self.ext.group();
        grp.check(&w.m)?;
        grp.check(&w.n)?;
        self.ext.check(&w.a)?;
        self.ext.check(&w.b)?;
        if grp.span_is_cyclic(&[w.m.clone(), w.n.clone()]) || w.a.is_zero() || w.b.is_zero() {
            return Ok(false);
        }
        let rhs = self.ext.mul(&self.coboundary(&w.m, &w.a)?, &self.coboundary(&w.n, &w.b)?);
        Ok(self.commutator_u(&w.m, &w.n)? == rhs)
    }

    fn require_strong(&self, w: &StrongDegeneracyWitness) -> Result<()> {
        if self.check_strong_witness(w)? {
            Ok(())
        } else {
            Err(Error::InvalidWitness(alloc::format!("strong degeneracy fails at m = {}", w.m)))
        }
    }

    /// `(e_i, m, l^{-1}, x_i)` for the least `i` with `<sigma_i, sigma^m>`
    /// noncyclic.
    pub fn strong_to_pair_witness(&self, w: &StrongDegeneracyWitness) -> Result<DegeneracyPairWitness> {
        self.require_strong(w)?;
        let grp = self.ext.group();
        let i = (0..self.rank())
            .find(|&i| !grp.span_is_cyclic(&[grp.generator(i), w.m.clone()]))
            .ok_or_else(|| Error::Precondition("every <sigma_i, sigma^m> is cyclic".into()))?;
        let pair = DegeneracyPairWitness {
            m: grp.generator(i),
            n: w.m.clone(),
            a: self.ext.inv(&w.l)?,
            b: w.x[i].clone(),
        };
        if !self.check_pair_witness(&pair)? {
            return Err(Error::Internal("derived pair witness failed its check".into()));
        }
        Ok(pair)
    }

    /// `l z^m`, after confirming that its `q`-th power is central and that it
    /// is not central itself.
    pub fn witness_to_central_element(&self, w: &StrongDegeneracyWitness) -> Result<AlgebraElement> {
        self.require_strong(w)?;
        let q = self.prime_order(&w.m)?;
        let y = self.monomial(w.l.clone(), w.m.clone());
        if !self.is_central(&self.pow(&y, q as u32)?)? {
            return Err(Error::Internal(alloc::format!("(l z^{})^{q} is not central", w.m)));
        }
        if self.is_central(&y)? {
            return Err(Error::Internal(alloc::format!("l z^{} is already central", w.m)));
        }
        Ok(y)
    }

    /// Solves `sigma^m(x_i)/x_i = sigma_i(l) l^{-1} u_{i,m}` for every `i`,
    /// assuming each right side has norm 1 along `m`. `None` if some norm
    /// differs from 1.
    pub(crate) fn solve_strong(&self, m: &GroupExponent, l: &FieldElement) -> Result<Option<StrongDegeneracyWitness>> {
        let mut conditions = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let c = self.strong_condition(i, m, l)?;
            if self.ext.norm_along(m, &c)? != self.ext.one() {
                return Ok(None);
            }
            conditions.push(c);
        }
        let mut x = Vec::with_capacity(self.rank());
        for c in &conditions {
            match self.ext.hilbert90_solve(m, c)? {
                Hilbert90::Solution(xi) => x.push(xi),
                Hilbert90::NoSolution { .. } => {
                    return Err(Error::Internal("norm 1 element without a Hilbert 90 solution".into()))
                }
            }
        }
        let w = StrongDegeneracyWitness { m: m.clone(), l: l.clone(), x };
        if !self.check_strong_witness(&w)? {
            return Err(Error::Internal("extracted witness failed its check".into()));
        }
        Ok(Some(w))
    }

    /// From a monomial `l z^m` with central `q`-th power back to a witness.
    pub fn central_element_to_witness(&self, l: &FieldElement, m: &GroupExponent) -> Result<StrongDegeneracyWitness> {
        let q = self.prime_order(m)?;
        self.ext.check(l)?;
        if l.is_zero() {
            return Err(Error::Domain("l must be nonzero".into()));
        }
        let y = self.monomial(l.clone(), m.clone());
        if !self.is_central(&self.pow(&y, q as u32)?)? {
            return Err(Error::Precondition(alloc::format!("(l z^{m})^{q} is not central")));
        }
        self.solve_strong(m, l)?.ok_or_else(|| {
            Error::Internal(alloc::format!("(l z^{m})^{q} is central but a norm condition fails"))
        })
    }

    /// For `G = C_p x C_p`: does `u_12 = sigma_1(a)/a * sigma_2(b)/b`?
    pub fn rank2_igk_witness_check(&self, a: &FieldElement, b: &FieldElement) -> Result<bool> {
        let orders = self.ext.orders();
        if orders.len() != 2 || orders[0] != orders[1] {
            return Err(Error::Precondition(alloc::format!("needs G = C_p x C_p, got orders {orders:?}")));
        }
        self.ext.check(a)?;
        self.ext.check(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(false);
        }
        let grp = self.ext.group();
        let rhs = self.ext.mul(&self.coboundary(&grp.generator(0), a)?, &self.coboundary(&grp.generator(1), b)?);
        Ok(self.data.u[0][1] == rhs)
    }

    /// The presentation `(K/F, w, v, d)` for which `z_i -> a_i w_i` is an
    /// isomorphism:
    /// `v_ij = u_ij a_j sigma_j(a_i) / (a_i sigma_i(a_j))`, `d_i = b_i / N_i(a_i)`.
    pub fn rescale(&self, images: &[FieldElement]) -> Result<CrossedProduct> {
        CrossedProduct::new(self.ext.clone(), self.rescaled_data(images)?)
    }

    fn rescaled_data(&self, images: &[FieldElement]) -> Result<CocycleData> {
        let r = self.rank();
        if images.len() != r {
            return Err(Error::Malformed(alloc::format!("{} images for rank {r}", images.len())));
        }
        for a in images {
            self.ext.check(a)?;
            if a.is_zero() {
                return Err(Error::Domain("isomorphism images must be nonzero".into()));
            }
        }
        let ext = &self.ext;
        let mut u = Vec::with_capacity(r);
        for i in 0..r {
            let mut row = Vec::with_capacity(r);
            for j in 0..r {
                let num = ext.mul(&ext.mul(&self.data.u[i][j], &images[j]), &ext.act_generator(j, &images[i]));
                let den = ext.mul(&images[i], &ext.act_generator(i, &images[j]));
                row.push(ext.div(&num, &den)?);
            }
            u.push(row);
        }
        let b = (0..r)
            .map(|i| ext.div(&self.data.b[i], &ext.norm_generator(i, &images[i])))
            .collect::<Result<_>>()?;
        Ok(CocycleData { u, b })
    }

    /// `a_m` with `phi(z^m) = a_m w^m`, where `phi(z_i) = a_i w_i` and `self`
    /// is the target algebra.
    pub fn image_coefficient(&self, images: &[FieldElement], m: &GroupExponent) -> Result<FieldElement> {
        self.ext.group().check(m)?;
        let mut acc = self.one();
        for (i, &mi) in m.0.iter().enumerate() {
            let gen = self.monomial(images[i].clone(), self.ext.group().generator(i));
            for _ in 0..mi {
                acc = self.mul_unchecked(&acc, &gen);
            }
        }
        acc.coefficient(m)
            .cloned()
            .ok_or_else(|| Error::Internal("image of a monomial is not a monomial".into()))
    }
}

/// Moves a witness along the isomorphism `z_i -> a_i w_i` from `source` to
/// `target`. The target's data must be exactly the rescaled data; otherwise
/// the images do not define an isomorphism fixing `K`. The new witness is
/// `l' = l a_m`, `x'_i = x_i a_i`, whose central element is `l a_m w^m`.
pub fn transport_witness(
    source: &CrossedProduct,
    target: &CrossedProduct,
    w: &StrongDegeneracyWitness,
    images: &[FieldElement],
) -> Result<StrongDegeneracyWitness> {
    if source.ext != target.ext {
        return Err(Error::InvalidIsomorphism("source and target are over different presentations".into()));
    }
    source.require_strong(w)?;
    let expected = source.rescaled_data(images)?;
    if expected != target.data {
        let which = if expected.b != target.data.b { "z_i^{n_i} = b_i" } else { "z_i z_j = u_ij z_j z_i" };
        return Err(Error::InvalidIsomorphism(alloc::format!("the images do not preserve {which}")));
    }
    let ext = &target.ext;
    let a_m = target.image_coefficient(images, &w.m)?;
    let moved = StrongDegeneracyWitness {
        m: w.m.clone(),
        l: ext.mul(&w.l, &a_m),
        x: w.x.iter().zip(images).map(|(x, a)| ext.mul(x, a)).collect(),
    };
    if !target.check_strong_witness(&moved)? {
        return Err(Error::Internal("transported witness failed the target check".into()));
    }
    Ok(moved)
}
