//! The abelian crossed product `(K/F, z, u, b)`.
//!
//! The algebra is `sum K z^m` over canonical exponents `0 <= m_i < n_i`, with
//! `z_i a = sigma_i(a) z_i`, `z_i z_j = u_ij z_j z_i` and `z_i^{n_i} = b_i`.
//! Products are normalized to the order `z_1^{m_1} ... z_r^{m_r}`. The 2-cocycle
//! `c(g, h)` defined by `z^g z^h = c(g, h) z^{g+h}` is computed once by symbolic
//! reduction and every product afterwards is a table lookup.

mod search;
mod witness;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use search::{
    default_candidates, search_degeneracy, search_strong_degeneracy, Exhausted, SearchOutcome,
};
pub use witness::{transport_witness, DegeneracyPairWitness, StrongDegeneracyWitness};

use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisExtension};
use crate::group::GroupExponent;
use crate::report::ValidationReport;

/// The twisting data `u` (an `r x r` matrix) and `b` (an `r`-vector) in `K*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleData {
    pub u: Vec<Vec<FieldElement>>,
    pub b: Vec<FieldElement>,
}

impl CocycleData {
    /// `u = 1`, with the given `b`.
    pub fn trivial(ext: &GaloisExtension, b: Vec<FieldElement>) -> Self {
        let r = ext.rank();
        CocycleData { u: (0..r).map(|_| (0..r).map(|_| ext.one()).collect()).collect(), b }
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    fn check_shape(&self, ext: &GaloisExtension) -> Result<()> {
        let r = ext.rank();
        if self.b.len() != r || self.u.len() != r || self.u.iter().any(|row| row.len() != r) {
            return Err(Error::Malformed(alloc::format!(
                "cocycle data must be an {r}x{r} matrix and an {r}-vector"
            )));
        }
        for x in self.u.iter().flatten().chain(&self.b) {
            ext.check(x)?;
        }
        if self.u.iter().flatten().chain(&self.b).any(FieldElement::is_zero) {
            return Err(Error::Domain("u and b must have nonzero entries".into()));
        }
        Ok(())
    }
}

/// Checks relations (1), (2), (4) and reports (3) separately as advisory:
///
/// 1. `u_ii = 1`, `u_ji = u_ij^{-1}`
/// 2. `sigma_k(b_i) = N_i(u_ki) b_i`
/// 3. `N_ik(u_ik) = 1`
/// 4. `sigma_i(u_jk) sigma_j(u_ki) sigma_k(u_ij) = u_jk u_ki u_ij`
pub fn validate_relations(ext: &GaloisExtension, data: &CocycleData) -> Result<ValidationReport> {
    data.check_shape(ext)?;
    let r = ext.rank();
    let u = &data.u;
    let mut report = ValidationReport::new();

    let mut fail1 = None;
    'one: for i in 0..r {
        if u[i][i] != ext.one() {
            fail1 = Some(alloc::format!("u_{0}{0} != 1", i + 1));
            break;
        }
        for j in 0..r {
            if ext.mul(&u[i][j], &u[j][i]) != ext.one() {
                fail1 = Some(alloc::format!("u_{}{} != u_{}{}^-1", j + 1, i + 1, i + 1, j + 1));
                break 'one;
            }
        }
    }
    report.record("relation (1)", fail1.is_none(), fail1.unwrap_or_else(|| "u_ii = 1 and u_ji = u_ij^-1".into()));

    let mut fail2 = None;
    'two: for i in 0..r {
        for k in 0..r {
            let lhs = ext.act_generator(k, &data.b[i]);
            let rhs = ext.mul(&ext.norm_generator(i, &u[k][i]), &data.b[i]);
            if lhs != rhs {
                fail2 = Some(alloc::format!("sigma_{}(b_{}) != N_{}(u_{}{}) b_{}", k + 1, i + 1, i + 1, k + 1, i + 1, i + 1));
                break 'two;
            }
        }
    }
    report.record("relation (2)", fail2.is_none(), fail2.unwrap_or_else(|| "sigma_k(b_i) = N_i(u_ki) b_i".into()));

    let mut fail3 = None;
    'three: for i in 0..r {
        for k in 0..r {
            if i == k {
                continue;
            }
            let gens = [ext.group().generator(i), ext.group().generator(k)];
            if ext.norm_over(&gens, &u[i][k]) != ext.one() {
                fail3 = Some(alloc::format!("N_{}{}(u_{}{}) != 1", i + 1, k + 1, i + 1, k + 1));
                break 'three;
            }
        }
    }
    report.advise("relation (3)", fail3.is_none(), fail3.unwrap_or_else(|| "N_ik(u_ik) = 1".into()));

    let mut fail4 = None;
    'four: for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let lhs = ext.mul(
                    &ext.mul(&ext.act_generator(i, &u[j][k]), &ext.act_generator(j, &u[k][i])),
                    &ext.act_generator(k, &u[i][j]),
                );
                let rhs = ext.mul(&ext.mul(&u[j][k], &u[k][i]), &u[i][j]);
                if lhs != rhs {
                    fail4 = Some(alloc::format!("fails for (i, j, k) = ({}, {}, {})", i + 1, j + 1, k + 1));
                    break 'four;
                }
            }
        }
    }
    report.record(
        "relation (4)",
        fail4.is_none(),
        fail4.unwrap_or_else(|| "sigma_i(u_jk) sigma_j(u_ki) sigma_k(u_ij) = u_jk u_ki u_ij".into()),
    );
    Ok(report)
}

/// Entrywise powers `(u^t, b^t)`.
pub fn power_cocycle(ext: &GaloisExtension, data: &CocycleData, t: u64) -> Result<CocycleData> {
    if t == 0 {
        return Err(Error::Domain("cocycle power must be positive".into()));
    }
    Ok(CocycleData {
        u: data.u.iter().map(|row| row.iter().map(|x| ext.pow(x, t)).collect()).collect(),
        b: data.b.iter().map(|x| ext.pow(x, t)).collect(),
    })
}

/// `swaps[k][j][t] = prod_{s<t} sigma_k^s(u_kj)` for `t <= n_k`: the scalar
/// produced when `z_j` moves left past `z_k^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Twists {
    swaps: Vec<Vec<Vec<FieldElement>>>,
}

impl Twists {
    pub(crate) fn new(ext: &GaloisExtension, data: &CocycleData) -> Self {
        let r = ext.rank();
        let swaps = (0..r)
            .map(|k| {
                (0..r)
                    .map(|j| {
                        let mut row = vec![ext.one()];
                        let mut conj = data.u[k][j].clone();
                        for t in 0..ext.orders()[k] {
                            if t > 0 {
                                conj = ext.act_generator(k, &conj);
                            }
                            row.push(ext.mul(&row[t], &conj));
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        Twists { swaps }
    }

    /// `prod_{s<a} sigma_k^s(u_kj)` for any `a`, using `sigma_k^{n_k} = 1`.
    fn swap(&self, ext: &GaloisExtension, k: usize, j: usize, a: usize) -> FieldElement {
        let n = ext.orders()[k];
        let row = &self.swaps[k][j];
        if a < n {
            row[a].clone()
        } else {
            ext.mul(&ext.pow(&row[n], (a / n) as u64), &row[a % n])
        }
    }
}

/// Multiplies `coeff * z^exps` on the right by `z_j`, normalizing back to
/// `z_1^{m_1} ... z_r^{m_r}`. Moving `z_j` left past `z_k^{a}` (`k > j`)
/// produces `prod_{t<a} sigma_k^t(u_kj)`, which is then carried to the front
/// through the prefix. With `carry`, a completed `z_j^{n_j}` becomes `b_j`;
/// the return value says whether that happened. Without it exponents grow
/// freely, as in the twisted polynomial ring.
pub(crate) fn right_mul_generator(
    ext: &GaloisExtension,
    data: &CocycleData,
    twists: &Twists,
    coeff: &mut FieldElement,
    exps: &mut [usize],
    j: usize,
    carry: bool,
) -> bool {
    let r = exps.len();
    let mut prefix: Vec<usize> = exps.to_vec();
    for k in (j + 1..r).rev() {
        let a = exps[k];
        prefix[k] = 0;
        if a == 0 {
            continue;
        }
        let swap = twists.swap(ext, k, j, a);
        *coeff = ext.mul(coeff, &ext.act_raw(&prefix, &swap));
    }
    exps[j] += 1;
    if carry && exps[j] == ext.orders()[j] {
        for p in prefix.iter_mut().skip(j) {
            *p = 0;
        }
        *coeff = ext.mul(coeff, &ext.act_raw(&prefix, &data.b[j]));
        exps[j] = 0;
        return true;
    }
    false
}

/// A finitely supported sum `sum_g a_g z^g`, zero coefficients absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<GroupExponent, FieldElement>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &BTreeMap<GroupExponent, FieldElement> {
        &self.terms
    }

    pub fn coefficient(&self, g: &GroupExponent) -> Option<&FieldElement> {
        self.terms.get(g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single `(exponent, coefficient)` pair of a monomial.
    pub fn as_monomial(&self) -> Option<(&GroupExponent, &FieldElement)> {
        if self.terms.len() == 1 { self.terms.iter().next() } else { None }
    }

    fn accumulate(&mut self, ext: &GaloisExtension, g: GroupExponent, value: FieldElement) {
        if value.is_zero() {
            return;
        }
        match self.terms.remove(&g) {
            Some(old) => {
                let sum = ext.add(&old, &value);
                if !sum.is_zero() {
                    self.terms.insert(g, sum);
                }
            }
            None => {
                self.terms.insert(g, value);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedProduct {
    ext: GaloisExtension,
    data: CocycleData,
    twists: Twists,
    table: Vec<FieldElement>,
    relations: ValidationReport,
}

impl CrossedProduct {
    /// Validates `(u, b)` against relations (1), (2), (4) and materializes the
    /// cocycle table.
    pub fn new(ext: GaloisExtension, data: CocycleData) -> Result<Self> {
        let relations = validate_relations(&ext, &data)?;
        if !relations.passed() {
            return Err(Error::Validation(relations));
        }
        let twists = Twists::new(&ext, &data);
        let size = ext.group().size();
        let mut table = Vec::with_capacity(size * size);
        for g in ext.group().elements() {
            for h in ext.group().elements() {
                let mut coeff = ext.one();
                let mut exps = g.0.clone();
                for (j, &hj) in h.0.iter().enumerate() {
                    for _ in 0..hj {
                        right_mul_generator(&ext, &data, &twists, &mut coeff, &mut exps, j, true);
                    }
                }
                debug_assert_eq!(GroupExponent(exps), ext.group().add(&g, &h));
                table.push(coeff);
            }
        }
        Ok(CrossedProduct { ext, data, twists, table, relations })
    }

    pub fn ext(&self) -> &GaloisExtension {
        &self.ext
    }

    pub fn cocycle_data(&self) -> &CocycleData {
        &self.data
    }

    /// The relation report computed at construction, including relation (3).
    pub fn relations(&self) -> &ValidationReport {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.ext.rank()
    }

    pub(crate) fn twists(&self) -> &Twists {
        &self.twists
    }

    pub fn u(&self, i: usize, j: usize) -> &FieldElement {
        &self.data.u[i][j]
    }

    /// `c(g, h)` with `z^g z^h = c(g, h) z^{g+h}`.
    pub fn cocycle(&self, g: &GroupExponent, h: &GroupExponent) -> &FieldElement {
        let grp = self.ext.group();
        &self.table[grp.index_of(g) * grp.size() + grp.index_of(h)]
    }

    /// The whole table, row `g`, column `h`, both in lexicographic order.
    pub fn cocycle_table(&self) -> &[FieldElement] {
        &self.table
    }

    /// Triples on which `c(g,h) c(gh,k) = g(c(h,k)) c(g,hk)` fails.
    pub fn cocycle_identity_violations(&self) -> Vec<[GroupExponent; 3]> {
        let grp = self.ext.group();
        let mut bad = Vec::new();
        for g in grp.elements() {
            for h in grp.elements() {
                let gh = grp.add(&g, &h);
                let c_gh = self.cocycle(&g, &h);
                for k in grp.elements() {
                    let lhs = self.ext.mul(c_gh, self.cocycle(&gh, &k));
                    let rhs = self.ext.mul(
                        &self.ext.act(&g, self.cocycle(&h, &k)),
                        self.cocycle(&g, &grp.add(&h, &k)),
                    );
                    if lhs != rhs {
                        bad.push([g.clone(), h.clone(), k]);
                    }
                }
            }
        }
        bad
    }

    pub fn check_element(&self, x: &AlgebraElement) -> Result<()> {
        for (g, a) in &x.terms {
            if !self.ext.group().contains(g) || a.dim() != self.ext.dim() {
                return Err(Error::Domain(String::from("element belongs to a different algebra")));
            }
        }
        Ok(())
    }

    pub fn monomial(&self, coeff: FieldElement, g: GroupExponent) -> AlgebraElement {
        let mut x = AlgebraElement::zero();
        x.accumulate(&self.ext, g, coeff);
        x
    }

    pub fn scalar(&self, a: FieldElement) -> AlgebraElement {
        self.monomial(a, self.ext.group().identity())
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(self.ext.one())
    }

    /// The generator `z_i` (zero-based).
    pub fn z(&self, i: usize) -> AlgebraElement {
        self.monomial(self.ext.one(), self.ext.group().generator(i))
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = x.clone();
        for (g, a) in &y.terms {
            out.accumulate(&self.ext, g.clone(), a.clone());
        }
        out
    }

    pub fn neg(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { terms: x.terms.iter().map(|(g, a)| (g.clone(), self.ext.neg(a))).collect() }
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.add(x, &self.neg(y))
    }

    /// `(a z^g)(b z^h) = a sigma^g(b) c(g,h) z^{g+h}`, extended bilinearly.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let grp = self.ext.group();
        let mut out = AlgebraElement::zero();
        for (g, a) in &x.terms {
            for (h, b) in &y.terms {
                let coeff = self.ext.mul(&self.ext.mul(a, &self.ext.act(g, b)), self.cocycle(g, h));
                out.accumulate(&self.ext, grp.add(g, h), coeff);
            }
        }
        out
    }

    pub fn pow(&self, x: &AlgebraElement, e: u32) -> Result<AlgebraElement> {
        self.check_element(x)?;
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul_unchecked(&acc, x);
        }
        Ok(acc)
    }

    /// Commutes with every basis element of `K` and every `z_i`.
    pub fn is_central(&self, x: &AlgebraElement) -> Result<bool> {
        self.check_element(x)?;
        let commutes = |y: &AlgebraElement| self.mul_unchecked(x, y) == self.mul_unchecked(y, x);
        Ok((0..self.ext.dim()).all(|k| commutes(&self.scalar(self.ext.basis(k))))
            && (0..self.rank()).all(|i| commutes(&self.z(i))))
    }

    /// `u_{m,n}`, the scalar with `z^m z^n = u_{m,n} z^n z^m`.
    pub fn commutator_u(&self, m: &GroupExponent, n: &GroupExponent) -> Result<FieldElement> {
        let grp = self.ext.group();
        grp.check(m)?;
        grp.check(n)?;
        let zm = self.monomial(self.ext.one(), m.clone());
        let zn = self.monomial(self.ext.one(), n.clone());
        let sum = grp.add(m, n);
        let left = self.mul_unchecked(&zm, &zn);
        let right = self.mul_unchecked(&zn, &zm);
        match (left.coefficient(&sum), right.coefficient(&sum)) {
            (Some(a), Some(b)) => self.ext.div(a, b),
            _ => Err(Error::Internal("monomial product vanished".into())),
        }
    }

    /// `u_{i,m} = u_{e_i, m}` for zero-based `i`.
    pub fn commutator_row(&self, i: usize, m: &GroupExponent) -> Result<FieldElement> {
        self.commutator_u(&self.ext.group().generator(i), m)
    }

    /// The cocycle data `(u^t, b^t)` as a new algebra over the same field.
    pub fn power(&self, t: u64) -> Result<CrossedProduct> {
        CrossedProduct::new(self.ext.clone(), power_cocycle(&self.ext, &self.data, t)?)
    }

    pub fn display(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = x
            .terms
            .iter()
            .map(|(g, a)| {
                let coeff = self.ext.display(a);
                let mono = monomial_label(g);
                match (coeff.as_str(), mono.is_empty()) {
                    (_, true) => coeff,
                    ("1", false) => mono,
                    _ if a.coords().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() > 1 => {
                        alloc::format!("({coeff})*{mono}")
                    }
                    _ => alloc::format!("{coeff}*{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `z1^2 z3` style label of a group exponent; empty for the identity.
pub fn monomial_label(g: &GroupExponent) -> String {
    let mut parts = Vec::new();
    for (i, &m) in g.0.iter().enumerate() {
        match m {
            0 => {}
            1 => parts.push(alloc::format!("z{}", i + 1)),
            _ => parts.push(alloc::format!("z{}^{m}", i + 1)),
        }
    }
    parts.join("")
}

#[cfg(test)]
mod tests;
