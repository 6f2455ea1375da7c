//! Explicitly presented abelian Galois extensions `K/F` over the rationals.
//!
//! `K` is a finite-dimensional commutative `Q`-algebra given by structure
//! constants in a fixed basis. The Galois group `G = <sigma_1> x ... x <sigma_r>`
//! acts through matrices on coordinate column vectors. Every operation below
//! reduces to exact linear algebra over `Q`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{is_prime, AbelianGroup, GroupExponent};
use crate::matrix::{IntMatrix, Matrix};
use crate::report::ValidationReport;
use crate::scalar::{self, Scalar};

/// An element of `K`, as coordinates in the presentation's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: Vec<Scalar>,
}

impl FieldElement {
    pub fn new(coords: Vec<Scalar>) -> Self {
        FieldElement { coords }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// A commutative unital `Q`-algebra with a basis and structure constants,
/// intended to be a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPresentation {
    labels: Vec<String>,
    /// `structure[(i * n + j) * n + k]` is the `e_k` coordinate of `e_i e_j`.
    structure: Vec<Scalar>,
    /// Nonzero structure constants per `(i, j)` as numerators over `sparse_den`.
    sparse: Vec<Vec<(usize, BigInt)>>,
    sparse_den: BigInt,
    unit: Vec<Scalar>,
}

impl FieldPresentation {
    pub fn new(labels: Vec<String>, structure: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Malformed("empty basis".into()));
        }
        if unit.len() != n {
            return Err(Error::Malformed(alloc::format!(
                "unit has {} coordinates, basis has {n}",
                unit.len()
            )));
        }
        if structure.len() != n
            || structure.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(Error::Malformed(alloc::format!(
                "structure constants must be a {n}x{n}x{n} array"
            )));
        }
        let flat: Vec<Scalar> = structure.into_iter().flatten().flatten().collect();
        let (nums, sparse_den) = scalar::common_denominator(&flat);
        let sparse = (0..n * n)
            .map(|ij| {
                (0..n)
                    .filter(|&k| !nums[ij * n + k].is_zero())
                    .map(|k| (k, nums[ij * n + k].clone()))
                    .collect()
            })
            .collect();
        Ok(FieldPresentation { labels, structure: flat, sparse, sparse_den, unit })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.structure[(i * n + j) * n + k]
    }

    /// The structure constants as a nested `n x n x n` array.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.structure_constant(i, j, k).clone()).collect()).collect())
            .collect()
    }

    pub fn unit_coords(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<FieldElement> {
        if coords.len() != self.dim() {
            return Err(Error::Malformed(alloc::format!(
                "element has {} coordinates, field has dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(FieldElement::new(coords))
    }

    pub fn check(&self, x: &FieldElement) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::Malformed(alloc::format!(
                "element has {} coordinates, field has dimension {}",
                x.dim(),
                self.dim()
            )))
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::new(vec![Scalar::zero(); self.dim()])
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::new(self.unit.clone())
    }

    pub fn basis(&self, k: usize) -> FieldElement {
        let mut c = vec![Scalar::zero(); self.dim()];
        c[k] = Scalar::one();
        FieldElement::new(c)
    }

    pub fn from_scalar(&self, s: &Scalar) -> FieldElement {
        self.scale(&self.one(), s)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_scalar(&scalar::int(n))
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement::new(x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement::new(x.coords.iter().zip(&y.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement::new(x.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, x: &FieldElement, s: &Scalar) -> FieldElement {
        FieldElement::new(x.coords.iter().map(|a| a * s).collect())
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let n = self.dim();
        let (xs, xd) = scalar::common_denominator(&x.coords);
        let (ys, yd) = scalar::common_denominator(&y.coords);
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in xs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in ys.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.sparse[i * n + j] {
                    out[*k] += &ab * c;
                }
            }
        }
        FieldElement::new(scalar::over(out, &(xd * yd * &self.sparse_den)))
    }

    pub fn pow(&self, x: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer powers, negative exponents through [`Self::inv`].
    pub fn pow_signed(&self, x: &FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(x, e as u64))
        } else {
            Ok(self.pow(&self.inv(x)?, e.unsigned_abs()))
        }
    }

    /// Matrix of `y -> x y` on coordinate vectors.
    pub fn mul_matrix(&self, x: &FieldElement) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in &self.sparse[i * n + j] {
                    m[(*k, j)] += a * Scalar::new(c.clone(), self.sparse_den.clone());
                }
            }
        }
        m
    }

    /// Inverse, found by solving `x * y = 1` as a linear system in `y`.
    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.mul_matrix(x).solve(&self.unit).map(FieldElement::new).ok_or_else(|| {
            Error::InconsistentPresentation(alloc::format!(
                "multiplication by {} is singular",
                self.display(x)
            ))
        })
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// `Tr_{K/Q}(x)`, the trace of multiplication by `x`.
    pub fn trace(&self, x: &FieldElement) -> Scalar {
        let m = self.mul_matrix(x);
        (0..self.dim()).map(|i| m[(i, i)].clone()).sum()
    }

    /// Is `x` a rational multiple of the unit?
    pub fn as_scalar(&self, x: &FieldElement) -> Option<Scalar> {
        let k = self.unit.iter().position(|u| !u.is_zero())?;
        let s = &x.coords[k] / &self.unit[k];
        (self.scale(&self.one(), &s) == *x).then_some(s)
    }

    /// Human-readable `c*label` sum.
    pub fn display(&self, x: &FieldElement) -> String {
        let mut out = String::new();
        for (c, label) in x.coords.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let negative = *c < Scalar::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let plain = label == "1";
            if mag.is_one() && !plain {
                out.push_str(label);
            } else {
                out.push_str(&scalar::format(&mag));
                if !plain {
                    out.push('*');
                    out.push_str(label);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Ring-axiom checks on the basis plus invertibility and trace-form tests.
    /// Infinite fields cannot be certified this way; callers supply a sample
    /// of elements to probe invertibility on.
    pub fn validate_algebra(&self, samples: &[FieldElement], report: &mut ValidationReport) {
        let n = self.dim();
        let basis: Vec<FieldElement> = (0..n).map(|k| self.basis(k)).collect();

        let mut assoc_failure = None;
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = self.mul(&basis[a], &basis[b]);
                for c in 0..n {
                    let bc = self.mul(&basis[b], &basis[c]);
                    if self.mul(&ab, &basis[c]) != self.mul(&basis[a], &bc) {
                        assoc_failure = Some((a, b, c));
                        break 'assoc;
                    }
                }
            }
        }
        report.record(
            "associative",
            assoc_failure.is_none(),
            match assoc_failure {
                None => String::from("(e_a e_b) e_c = e_a (e_b e_c) on all basis triples"),
                Some((a, b, c)) => alloc::format!(
                    "fails on ({}, {}, {})",
                    self.labels[a], self.labels[b], self.labels[c]
                ),
            },
        );

        let comm_failure = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(&basis[a], &basis[b]) != self.mul(&basis[b], &basis[a]));
        report.record(
            "commutative",
            comm_failure.is_none(),
            match comm_failure {
                None => String::from("e_a e_b = e_b e_a on all basis pairs"),
                Some((a, b)) => alloc::format!("fails on ({}, {})", self.labels[a], self.labels[b]),
            },
        );

        let unit_failure = (0..n).find(|&k| self.mul(&self.one(), &basis[k]) != basis[k]);
        report.record(
            "unit",
            unit_failure.is_none(),
            match unit_failure {
                None => String::from("1 * e_k = e_k for every basis element"),
                Some(k) => alloc::format!("1 * {} differs from {}", self.labels[k], self.labels[k]),
            },
        );

        let singular_basis = (0..n).find(|&k| !self.mul_matrix(&basis[k]).is_invertible());
        report.record(
            "basis invertible",
            singular_basis.is_none(),
            match singular_basis {
                None => String::from("every basis element has an inverse"),
                Some(k) => alloc::format!("{} is a zero divisor", self.labels[k]),
            },
        );

        let nonzero: Vec<&FieldElement> = samples.iter().filter(|s| !s.is_zero()).collect();
        let singular_sample = nonzero.iter().find(|s| !self.mul_matrix(s).is_invertible());
        report.record(
            "sample invertible",
            singular_sample.is_none(),
            match singular_sample {
                None => alloc::format!("{} sampled nonzero elements are invertible", nonzero.len()),
                Some(s) => alloc::format!("{} is a zero divisor", self.display(s)),
            },
        );

        let mut gram = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                gram[(a, b)] = self.trace(&self.mul(&basis[a], &basis[b]));
            }
        }
        let rank = gram.rank();
        report.record(
            "trace form nondegenerate",
            rank == n,
            alloc::format!("trace form has rank {rank} of {n}"),
        );
    }
}

/// Result of a Hilbert-90 solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hilbert90 {
    /// `x != 0` with `c = sigma(x) / x`.
    Solution(FieldElement),
    /// No such `x`; the norm of `c`, which is then different from 1.
    NoSolution { norm: FieldElement },
}

/// `K` together with the action of `G = <sigma_1> x ... x <sigma_r>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisExtension {
    field: FieldPresentation,
    group: AbelianGroup,
    sigma: Vec<Matrix>,
    /// Matrix of `sigma^g` for every group element, by group index.
    actions: Vec<Matrix>,
    fast_actions: Vec<IntMatrix>,
    base_degree: usize,
}

impl Deref for GaloisExtension {
    type Target = FieldPresentation;

    fn deref(&self) -> &FieldPresentation {
        &self.field
    }
}

impl GaloisExtension {
    /// `K/Q` with `[K:Q] = |G|`.
    pub fn new(field: FieldPresentation, orders: Vec<usize>, sigma: Vec<Matrix>) -> Result<Self> {
        Self::new_relative(field, orders, sigma, 1)
    }

    /// `K/E` presented over `Q`, where `E` is the joint fixed field of degree
    /// `base_degree` over `Q`. Used for composites `KE/E`.
    pub fn new_relative(
        field: FieldPresentation,
        orders: Vec<usize>,
        sigma: Vec<Matrix>,
        base_degree: usize,
    ) -> Result<Self> {
        let group = AbelianGroup::new(orders)?;
        let n = field.dim();
        if sigma.len() != group.rank() {
            return Err(Error::Malformed(alloc::format!(
                "{} automorphism matrices for {} cyclic factors",
                sigma.len(),
                group.rank()
            )));
        }
        if base_degree == 0 || n != base_degree * group.size() {
            return Err(Error::Malformed(alloc::format!(
                "dimension {n} is not {base_degree} * |G| = {}",
                base_degree * group.size()
            )));
        }
        if let Some(i) = sigma.iter().position(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Malformed(alloc::format!("sigma_{} is not {n}x{n}", i + 1)));
        }
        let powers: Vec<Vec<Matrix>> = sigma
            .iter()
            .zip(group.orders())
            .map(|(s, &order)| {
                let mut p = vec![Matrix::identity(n)];
                for k in 1..order {
                    p.push(s.mul(&p[k - 1]));
                }
                p
            })
            .collect();
        let actions = group
            .elements()
            .map(|g| {
                g.0.iter()
                    .zip(&powers)
                    .fold(Matrix::identity(n), |acc, (&m, p)| if m == 0 { acc } else { p[m].mul(&acc) })
            })
            .collect();
        let actions: Vec<Matrix> = actions;
        let fast_actions = actions.iter().map(IntMatrix::new).collect();
        Ok(GaloisExtension { field, group, sigma, actions, fast_actions, base_degree })
    }

    pub fn field(&self) -> &FieldPresentation {
        &self.field
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn orders(&self) -> &[usize] {
        self.group.orders()
    }

    pub fn sigma(&self) -> &[Matrix] {
        &self.sigma
    }

    pub fn base_degree(&self) -> usize {
        self.base_degree
    }

    pub fn action_matrix(&self, g: &GroupExponent) -> &Matrix {
        &self.actions[self.group.index_of(g)]
    }

    /// `sigma^g(x)`.
    pub fn act(&self, g: &GroupExponent, x: &FieldElement) -> FieldElement {
        FieldElement::new(self.fast_actions[self.group.index_of(g)].mul_vec(x.coords()))
    }

    /// `sigma^g(x)` for an exponent vector that may be out of canonical range.
    pub fn act_raw(&self, exps: &[usize], x: &FieldElement) -> FieldElement {
        self.act(&self.group.reduce(exps), x)
    }

    pub fn act_generator(&self, i: usize, x: &FieldElement) -> FieldElement {
        self.act(&self.group.generator(i), x)
    }

    pub fn order_of(&self, g: &GroupExponent) -> usize {
        self.group.order_of(g)
    }

    /// `N_g(x) = prod_{k < q} (sigma^g)^k (x)` where `q` is the order of `g`.
    pub fn norm_along(&self, g: &GroupExponent, x: &FieldElement) -> Result<FieldElement> {
        self.group.check(g)?;
        if g.is_zero() {
            return Err(Error::DegenerateNorm);
        }
        let q = self.order_of(g);
        let mut acc = x.clone();
        let mut conj = x.clone();
        for _ in 1..q {
            conj = self.act(g, &conj);
            acc = self.mul(&acc, &conj);
        }
        Ok(acc)
    }

    /// `N_i`, the norm from `K` to the fixed field of `sigma_i`.
    pub fn norm_generator(&self, i: usize, x: &FieldElement) -> FieldElement {
        self.norm_along(&self.group.generator(i), x).expect("generators are nonzero")
    }

    /// Norm down to the fixed field of the subgroup generated by `gens`:
    /// the product of `h(x)` over every `h` in the span.
    pub fn norm_over(&self, gens: &[GroupExponent], x: &FieldElement) -> FieldElement {
        self.group.span(gens).iter().fold(self.one(), |acc, h| self.mul(&acc, &self.act(h, x)))
    }

    /// A `Q`-basis of `K^g`, the kernel of `sigma^g - 1`.
    pub fn fixed_subspace(&self, g: &GroupExponent) -> Vec<FieldElement> {
        let n = self.dim();
        self.action_matrix(g).sub(&Matrix::identity(n)).kernel().into_iter().map(FieldElement::new).collect()
    }

    /// A `Q`-basis of the joint fixed field of all generators.
    pub fn fixed_field_basis(&self) -> Vec<FieldElement> {
        let n = self.dim();
        let id = Matrix::identity(n);
        let mut rows = Vec::new();
        for s in &self.sigma {
            rows.extend(s.sub(&id).to_rows());
        }
        if rows.is_empty() {
            return (0..n).map(|k| self.basis(k)).collect();
        }
        Matrix::from_rows(rows).expect("square blocks").kernel().into_iter().map(FieldElement::new).collect()
    }

    /// Is `x` fixed by every generator?
    pub fn is_fixed(&self, x: &FieldElement) -> bool {
        (0..self.rank()).all(|i| self.act_generator(i, x) == *x)
    }

    /// Solves `c = sigma^g(x) / x` by computing the kernel of
    /// `x -> sigma^g(x) - c x`. The returned solution is verified.
    pub fn hilbert90_solve(&self, g: &GroupExponent, c: &FieldElement) -> Result<Hilbert90> {
        self.group.check(g)?;
        self.check(c)?;
        if g.is_zero() {
            return Err(Error::DegenerateNorm);
        }
        if c.is_zero() {
            return Err(Error::Domain("Hilbert 90 needs a nonzero element".into()));
        }
        let map = self.action_matrix(g).sub(&self.mul_matrix(c));
        match map.kernel().into_iter().next() {
            Some(v) => {
                let x = FieldElement::new(v);
                if self.act(g, &x) != self.mul(c, &x) {
                    return Err(Error::Internal("Hilbert 90 kernel vector failed verification".into()));
                }
                Ok(Hilbert90::Solution(x))
            }
            None => Ok(Hilbert90::NoSolution { norm: self.norm_along(g, c)? }),
        }
    }

    /// Checks every invariant of the presentation. Shape problems are errors;
    /// mathematical failures are reported, naming the failing check.
    pub fn validate(&self, samples: &[FieldElement]) -> Result<ValidationReport> {
        for s in samples {
            self.check(s)?;
        }
        let mut report = ValidationReport::new();
        self.field.validate_algebra(samples, &mut report);
        let n = self.dim();
        let basis: Vec<FieldElement> = (0..n).map(|k| self.basis(k)).collect();

        for (i, s) in self.sigma.iter().enumerate() {
            let label = i + 1;
            let apply = |x: &FieldElement| FieldElement::new(s.mul_vec(x.coords()));
            let mut failure = None;
            if apply(&self.one()) != self.one() {
                failure = Some(String::from("does not fix 1"));
            } else if !s.is_invertible() {
                failure = Some(String::from("matrix is singular"));
            } else {
                'pairs: for a in 0..n {
                    for b in a..n {
                        let lhs = apply(&self.mul(&basis[a], &basis[b]));
                        let rhs = self.mul(&apply(&basis[a]), &apply(&basis[b]));
                        if lhs != rhs {
                            failure = Some(alloc::format!(
                                "sigma_{label}({} {}) differs from the product of images",
                                self.labels()[a],
                                self.labels()[b]
                            ));
                            break 'pairs;
                        }
                    }
                }
            }
            report.record(
                alloc::format!("sigma_{label} ring automorphism"),
                failure.is_none(),
                failure.unwrap_or_else(|| String::from("multiplicative, unital, invertible")),
            );

            let order = self.group.orders()[i];
            let order_ok = s.pow(order).is_identity()
                && (2..=order).filter(|&p| is_prime(p) && order % p == 0).all(|p| !s.pow(order / p).is_identity());
            report.record(
                alloc::format!("sigma_{label} order"),
                order_ok,
                if order_ok {
                    alloc::format!("sigma_{label} has order {order}")
                } else {
                    alloc::format!("sigma_{label} order != {order}")
                },
            );
        }

        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                let ok = self.sigma[i].mul(&self.sigma[j]) == self.sigma[j].mul(&self.sigma[i]);
                report.record(
                    alloc::format!("sigma_{} sigma_{} commute", i + 1, j + 1),
                    ok,
                    if ok { "commuting" } else { "generators do not commute" },
                );
            }
        }

        let fixed = self.fixed_field_basis().len();
        report.record(
            "fixed field",
            fixed == self.base_degree,
            alloc::format!("joint fixed subspace has dimension {fixed}, expected {}", self.base_degree),
        );
        Ok(report)
    }
}
