//! Prime-to-`p` composites `KE` and the norm descent of witnesses.
//!
//! A composite is supplied, never discovered: the field `E` of degree `t`
//! over `Q`, the field `KE` with the action of `G` (now `Gal(KE/E)`), the
//! embeddings of `K` and `E`, and optionally generators of `Gal(KE/K)`.
//! `build` checks all of it. The norm `N_{KE/K}` is the determinant over `K`
//! of multiplication on `KE`, which needs no Galois closure; when the given
//! automorphisms generate a group of order `t`, the product of conjugates is
//! computed as well and the two must agree.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::One;

use crate::build::{kron, tensor};
use crate::crossed_product::{validate_relations, CocycleData, CrossedProduct, StrongDegeneracyWitness};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldPresentation, GaloisExtension};
use crate::matrix::Matrix;
use crate::report::ValidationReport;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeExtension {
    k: GaloisExtension,
    e: FieldPresentation,
    ke: GaloisExtension,
    embed_k: Matrix,
    embed_e: Matrix,
    rel_gal: Vec<Matrix>,
    /// Every element of the group generated by `rel_gal`.
    rel_group: Vec<Matrix>,
    /// Inverse of `(a, b) -> embed_k(k_a) embed_e(e_b)`, column `b * dim K + a`.
    tensor_inverse: Matrix,
    report: ValidationReport,
}

fn apply(m: &Matrix, x: &FieldElement) -> FieldElement {
    FieldElement::new(m.mul_vec(x.coords()))
}

/// Failure message of the first failing homomorphism condition, if any.
fn homomorphism_failure(src: &FieldPresentation, dst: &FieldPresentation, map: &Matrix) -> Option<String> {
    if apply(map, &src.one()) != dst.one() {
        return Some(String::from("does not send 1 to 1"));
    }
    for a in 0..src.dim() {
        for b in a..src.dim() {
            let lhs = apply(map, &src.mul(&src.basis(a), &src.basis(b)));
            let rhs = dst.mul(&apply(map, &src.basis(a)), &apply(map, &src.basis(b)));
            if lhs != rhs {
                return Some(alloc::format!("fails on {} * {}", src.labels()[a], src.labels()[b]));
            }
        }
    }
    None
}

/// Determinant of a square matrix over a field given by a presentation.
pub fn det_over(field: &FieldPresentation, mut rows: Vec<Vec<FieldElement>>) -> Result<FieldElement> {
    let n = rows.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Ok(field.zero());
        };
        if p != col {
            rows.swap(p, col);
            det = field.neg(&det);
        }
        let pivot = rows[col][col].clone();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot)?;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = field.mul(&rows[r][col], &inv);
            for c in col..n {
                let sub = field.mul(&factor, &rows[col][c]);
                rows[r][c] = field.sub(&rows[r][c], &sub);
            }
        }
    }
    Ok(det)
}

impl CompositeExtension {
    /// Verifies a supplied composite. `ke_sigma[i]` is the action of
    /// `sigma_i` on `KE`; `embed_k` and `embed_e` are `dim KE x dim K` and
    /// `dim KE x dim E` matrices; `rel_gal` are automorphisms of `KE` over `K`.
    pub fn build(
        k: &GaloisExtension,
        e: FieldPresentation,
        ke_field: FieldPresentation,
        ke_sigma: Vec<Matrix>,
        embed_k: Matrix,
        embed_e: Matrix,
        rel_gal: Vec<Matrix>,
    ) -> Result<Self> {
        let t = e.dim();
        let (nk, nke) = (k.dim(), ke_field.dim());
        let shape = |m: &Matrix, rows: usize, cols: usize| m.rows() == rows && m.cols() == cols;
        if !shape(&embed_k, nke, nk) || !shape(&embed_e, nke, t) || rel_gal.iter().any(|m| !shape(m, nke, nke)) {
            return Err(Error::Malformed("embedding or automorphism matrix has the wrong shape".into()));
        }
        let ke = GaloisExtension::new_relative(ke_field, k.orders().to_vec(), ke_sigma, t)
            .map_err(|err| Error::Rejected(alloc::format!("[KE:E] != |G|: {err}")))?;

        let mut report = ValidationReport::new();
        let mut e_report = ValidationReport::new();
        e.validate_algebra(&[], &mut e_report);
        report.record("E is a field", e_report.passed(), e_report.summary());
        let ke_report = ke.validate(&[])?;
        report.record("KE/E is Galois with group G", ke_report.passed(), ke_report.summary());

        let fail = homomorphism_failure(k, &ke, &embed_k);
        report.record("embed_K ring homomorphism", fail.is_none(), fail.unwrap_or_else(|| "ok".into()));
        let fail = homomorphism_failure(&e, &ke, &embed_e);
        report.record("embed_E ring homomorphism", fail.is_none(), fail.unwrap_or_else(|| "ok".into()));

        let equivariant = (0..k.rank()).all(|i| embed_k.mul(&k.sigma()[i]) == ke.sigma()[i].mul(&embed_k));
        report.record("embed_K commutes with G", equivariant, "sigma_i embed_K = embed_K sigma_i");
        let fixes_e = ke.sigma().iter().all(|s| s.mul(&embed_e) == embed_e);
        report.record("G fixes E", fixes_e, "sigma_i embed_E = embed_E");

        let mut rel_fail = None;
        for (j, tau) in rel_gal.iter().enumerate() {
            if let Some(msg) = homomorphism_failure(&ke, &ke, tau) {
                rel_fail = Some(alloc::format!("tau_{} {msg}", j + 1));
            } else if !tau.is_invertible() {
                rel_fail = Some(alloc::format!("tau_{} is singular", j + 1));
            } else if tau.mul(&embed_k) != embed_k {
                rel_fail = Some(alloc::format!("tau_{} does not fix K", j + 1));
            } else if ke.sigma().iter().any(|s| s.mul(tau) != tau.mul(s)) {
                rel_fail = Some(alloc::format!("tau_{} does not commute with G", j + 1));
            }
            if rel_fail.is_some() {
                break;
            }
        }
        report.record("rel_gal fixes K", rel_fail.is_none(), rel_fail.unwrap_or_else(|| "ok".into()));

        let mut cols = Vec::with_capacity(nke);
        for b in 0..t {
            let eb = apply(&embed_e, &e.basis(b));
            for a in 0..nk {
                cols.push(ke.mul(&apply(&embed_k, &k.basis(a)), &eb).into_coords());
            }
        }
        let tensor_map = Matrix::from_columns(&cols, nke);
        let tensor_inverse = if nke == nk * t { tensor_map.inverse() } else { None };
        report.record(
            "K (x) E -> KE bijective",
            tensor_inverse.is_some(),
            alloc::format!("dim KE = {nke}, dim K * t = {}", nk * t),
        );
        let size = k.group().size();
        report.record("t prime to |G|", t.gcd(&size) == 1, alloc::format!("t = {t}, |G| = {size}"));

        if !report.passed() {
            let failed: Vec<String> =
                report.failures().map(|c| alloc::format!("{}: {}", c.name, c.detail)).collect();
            return Err(Error::Rejected(failed.join("; ")));
        }
        let rel_group = generate_group(&rel_gal, nke);
        Ok(CompositeExtension {
            k: k.clone(),
            e,
            ke,
            embed_k,
            embed_e,
            rel_gal,
            rel_group,
            tensor_inverse: tensor_inverse.expect("checked above"),
            report,
        })
    }

    /// `E = Q`, `KE = K`.
    pub fn trivial(k: &GaloisExtension) -> Result<Self> {
        let q = FieldPresentation::new(vec![String::from("1")], vec![vec![vec![Scalar::one()]]], vec![Scalar::one()])?;
        let embed_e = Matrix::from_columns(&[k.one().into_coords()], k.dim());
        Self::build(k, q, k.field().clone(), k.sigma().to_vec(), Matrix::identity(k.dim()), embed_e, Vec::new())
    }

    /// `KE = K (x) E` with basis `k_a (x) e_b` at `a * dim E + b`, for `E` of
    /// degree prime to `|G|` (which makes the tensor product a field).
    /// `e_autos` are automorphisms of `E`, extended to `KE` over `K`.
    pub fn tensor(k: &GaloisExtension, e: FieldPresentation, e_autos: &[Matrix]) -> Result<Self> {
        let (nk, t) = (k.dim(), e.dim());
        let ke = tensor(k, &e)?;
        let id_e = Matrix::identity(t);
        let sigma = k.sigma().iter().map(|s| kron(s, &id_e)).collect();
        let unit_e = Matrix::from_columns(&[e.one().into_coords()], t);
        let unit_k = Matrix::from_columns(&[k.one().into_coords()], nk);
        let embed_k = kron(&Matrix::identity(nk), &unit_e);
        let embed_e = kron(&unit_k, &id_e);
        let rel_gal = e_autos.iter().map(|m| kron(&Matrix::identity(nk), m)).collect();
        Self::build(k, e, ke, sigma, embed_k, embed_e, rel_gal)
    }

    pub fn t(&self) -> usize {
        self.e.dim()
    }

    pub fn k(&self) -> &GaloisExtension {
        &self.k
    }

    pub fn e(&self) -> &FieldPresentation {
        &self.e
    }

    pub fn ke(&self) -> &GaloisExtension {
        &self.ke
    }

    pub fn embed_k_matrix(&self) -> &Matrix {
        &self.embed_k
    }

    pub fn embed_e_matrix(&self) -> &Matrix {
        &self.embed_e
    }

    pub fn rel_gal(&self) -> &[Matrix] {
        &self.rel_gal
    }

    /// Is `Gal(KE/K)` fully available (generated group of order `t`)?
    pub fn rel_gal_complete(&self) -> bool {
        self.rel_group.len() == self.t()
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn embed_k(&self, x: &FieldElement) -> FieldElement {
        apply(&self.embed_k, x)
    }

    pub fn embed_e(&self, x: &FieldElement) -> FieldElement {
        apply(&self.embed_e, x)
    }

    /// `y = sum_b c_b embed_E(e_b)` with `c_b` in `K`.
    pub fn k_coordinates(&self, y: &FieldElement) -> Result<Vec<FieldElement>> {
        self.ke.check(y)?;
        let flat = self.tensor_inverse.mul_vec(y.coords());
        let nk = self.k.dim();
        Ok((0..self.t()).map(|b| FieldElement::new(flat[b * nk..(b + 1) * nk].to_vec())).collect())
    }

    /// `N_{KE/K}(y)` as an element of `K`.
    pub fn norm_to_k(&self, y: &FieldElement) -> Result<FieldElement> {
        self.ke.check(y)?;
        let t = self.t();
        // Column j holds the K-coordinates of y * eps_j.
        let mut rows = vec![vec![self.k.zero(); t]; t];
        for j in 0..t {
            let eps = self.embed_e(&self.e.basis(j));
            for (i, c) in self.k_coordinates(&self.ke.mul(y, &eps))?.into_iter().enumerate() {
                rows[i][j] = c;
            }
        }
        let n = det_over(&self.k, rows)?;
        if self.rel_gal_complete() {
            let product = self.rel_group.iter().fold(self.ke.one(), |acc, tau| self.ke.mul(&acc, &apply(tau, y)));
            if product != self.embed_k(&n) {
                return Err(Error::Internal("determinant norm and product of conjugates disagree".into()));
            }
        }
        Ok(n)
    }

    /// `u`, `b` pushed into `KE`; the relations are rechecked there.
    pub fn extend_cocycle(&self, data: &CocycleData) -> Result<CocycleData> {
        let out = CocycleData {
            u: data.u.iter().map(|row| row.iter().map(|x| self.embed_k(x)).collect()).collect(),
            b: data.b.iter().map(|x| self.embed_k(x)).collect(),
        };
        let report = validate_relations(&self.ke, &out)?;
        if !report.passed() {
            return Err(Error::InconsistentPresentation(alloc::format!(
                "extended cocycle fails over KE: {}",
                report.summary()
            )));
        }
        Ok(out)
    }

    /// The crossed product `(KE/E, z, u, b)`.
    pub fn extend(&self, base: &CrossedProduct) -> Result<CrossedProduct> {
        if base.ext() != &self.k {
            return Err(Error::Domain("algebra is not over the composite's K".into()));
        }
        CrossedProduct::new(self.ke.clone(), self.extend_cocycle(base.cocycle_data())?)
    }

    /// A witness written over `K` moved into `KE`.
    pub fn embed_witness(&self, w: &StrongDegeneracyWitness) -> StrongDegeneracyWitness {
        StrongDegeneracyWitness {
            m: w.m.clone(),
            l: self.embed_k(&w.l),
            x: w.x.iter().map(|x| self.embed_k(x)).collect(),
        }
    }

    /// Applies `N_{KE/K}` to `l` and every `x_i` of a witness over `KE`; the
    /// result is checked as a witness for `u^t` over `K`.
    pub fn norm_descend_witness(
        &self,
        base: &CrossedProduct,
        w: &StrongDegeneracyWitness,
    ) -> Result<StrongDegeneracyWitness> {
        let extended = self.extend(base)?;
        if !extended.check_strong_witness(w)? {
            return Err(Error::InvalidWitness(alloc::format!("not a witness over KE at m = {}", w.m)));
        }
        let descended = StrongDegeneracyWitness {
            m: w.m.clone(),
            l: self.norm_to_k(&w.l)?,
            x: w.x.iter().map(|x| self.norm_to_k(x)).collect::<Result<_>>()?,
        };
        if !base.power(self.t() as u64)?.check_strong_witness(&descended)? {
            return Err(Error::Internal("descended witness fails for u^t".into()));
        }
        Ok(descended)
    }
}

/// Raises `l` and every `x_i` to the `k`-th power: a witness for `u^t` becomes
/// one for `u^{tk}`. `power_alg` carries `u^t`.
pub fn power_witness(
    power_alg: &CrossedProduct,
    w: &StrongDegeneracyWitness,
    k: i64,
) -> Result<(CrossedProduct, StrongDegeneracyWitness)> {
    if k <= 0 {
        return Err(Error::Domain(alloc::format!("witness power must be positive, got {k}")));
    }
    if !power_alg.check_strong_witness(w)? {
        return Err(Error::InvalidWitness(alloc::format!("not a witness at m = {}", w.m)));
    }
    let ext = power_alg.ext();
    let k = k as u64;
    let out = StrongDegeneracyWitness {
        m: w.m.clone(),
        l: ext.pow(&w.l, k),
        x: w.x.iter().map(|x| ext.pow(x, k)).collect(),
    };
    let target = power_alg.power(k)?;
    if !target.check_strong_witness(&out)? {
        return Err(Error::Internal("powered witness fails its check".into()));
    }
    Ok((target, out))
}

/// `(k, l)` with `t k + e l = 1` and `k` the least positive such value.
pub fn bezout_certificate(t: i64, e: i64) -> Result<(i64, i64)> {
    if t <= 0 || e <= 0 {
        return Err(Error::Domain("t and e must be positive".into()));
    }
    let ext = t.extended_gcd(&e);
    if ext.gcd != 1 {
        return Err(Error::Domain(alloc::format!("gcd({t}, {e}) = {} != 1", ext.gcd)));
    }
    let mut k = ext.x.rem_euclid(e);
    if k == 0 {
        k = e;
    }
    let l = (1 - t * k) / e;
    debug_assert_eq!(t * k + e * l, 1);
    Ok((k, l))
}

fn generate_group(gens: &[Matrix], n: usize) -> Vec<Matrix> {
    let mut group = vec![Matrix::identity(n)];
    let mut frontier = vec![Matrix::identity(n)];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let next = s.mul(&g);
            if !group.contains(&next) {
                group.push(next.clone());
                frontier.push(next);
            }
        }
    }
    group
}
