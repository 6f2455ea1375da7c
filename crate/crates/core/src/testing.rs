//! Hand-built fixtures shared by the unit tests.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::build::{kron, power_basis, power_basis_map, relabel, tensor};
use crate::crossed_product::{CocycleData, CrossedProduct, StrongDegeneracyWitness};
use crate::field::{FieldElement, FieldPresentation, GaloisExtension};
use crate::group::GroupExponent;
use crate::matrix::Matrix;
use crate::scalar::{int, Scalar};

pub fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn el(k: &FieldPresentation, coords: &[i64]) -> FieldElement {
    k.element(ints(coords)).unwrap()
}

pub fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| String::from(*s)).collect()
}

pub fn g(v: &[usize]) -> GroupExponent {
    GroupExponent(v.to_vec())
}

/// `Q(sqrt 2, sqrt 3)` with basis `1, √2, √3, √6`; `sigma_1` negates `√2`,
/// `sigma_2` negates `√3`.
pub fn instance_b_field() -> GaloisExtension {
    let q3 = power_basis(&ints(&[-3, 0, 1]), labels(&["1", "√3"])).unwrap();
    let q2 = power_basis(&ints(&[-2, 0, 1]), labels(&["1", "√2"])).unwrap();
    let k = relabel(&tensor(&q3, &q2).unwrap(), labels(&["1", "√2", "√3", "√6"])).unwrap();
    let conj2 = power_basis_map(&q2, &q2.neg(&q2.basis(1)));
    let conj3 = power_basis_map(&q3, &q3.neg(&q3.basis(1)));
    let sigma = vec![kron(&Matrix::identity(2), &conj2), kron(&conj3, &Matrix::identity(2))];
    GaloisExtension::new(k, vec![2, 2], sigma).unwrap()
}

/// `u_12 = -1`, `b = (3, 5)`.
pub fn instance_b() -> CrossedProduct {
    let k = instance_b_field();
    let minus = k.from_int(-1);
    let data = CocycleData {
        u: vec![vec![k.one(), minus.clone()], vec![minus, k.one()]],
        b: vec![k.from_int(3), k.from_int(5)],
    };
    CrossedProduct::new(k, data).unwrap()
}

pub fn instance_b_witness() -> StrongDegeneracyWitness {
    let k = instance_b_field();
    StrongDegeneracyWitness { m: g(&[1, 1]), l: k.basis(1), x: vec![k.one(), k.basis(1)] }
}

/// `u = 1`, `b = (3, 5)` over the same field.
pub fn instance_b_trivial() -> CrossedProduct {
    let k = instance_b_field();
    let b = vec![k.from_int(3), k.from_int(5)];
    CrossedProduct::new(k.clone(), CocycleData::trivial(&k, b)).unwrap()
}

/// `Q(a) (x) Q(b)` with `a^3 + a^2 - 2a - 1 = 0` and `b^3 - 3b + 1 = 0`,
/// cyclic cubic fields with `sigma_1: a -> a^2 - 2`, `sigma_2: b -> b^2 - 2`.
pub fn instance_b3_field() -> GaloisExtension {
    let qa = power_basis(&ints(&[-1, -2, 1, 1]), labels(&["1", "α", "α²"])).unwrap();
    let qb = power_basis(&ints(&[1, -3, 0, 1]), labels(&["1", "β", "β²"])).unwrap();
    let k = tensor(&qa, &qb).unwrap();
    let sa = power_basis_map(&qa, &qa.sub(&qa.basis(2), &qa.from_int(2)));
    let sb = power_basis_map(&qb, &qb.sub(&qb.basis(2), &qb.from_int(2)));
    let sigma = vec![kron(&sa, &Matrix::identity(3)), kron(&Matrix::identity(3), &sb)];
    GaloisExtension::new(k, vec![3, 3], sigma).unwrap()
}

/// `l = a + b` (index 1 is `b`, index 3 is `a`).
pub fn instance_b3_l(k: &GaloisExtension) -> FieldElement {
    el(k, &[0, 1, 0, 1, 0, 0, 0, 0, 0])
}

/// The crossed product with `u = 1`, `b = (3, 2)` rewritten in the basis
/// `w_1 = l^{-1} z_1`, `w_2 = z_2`.
pub fn instance_b3() -> CrossedProduct {
    let k = instance_b3_field();
    let l = instance_b3_l(&k);
    let u12 = k.div(&k.act_generator(1, &l), &l).unwrap();
    let u21 = k.inv(&u12).unwrap();
    let b1 = k.div(&k.from_int(3), &k.norm_generator(0, &l)).unwrap();
    let data = CocycleData { u: vec![vec![k.one(), u12], vec![u21, k.one()]], b: vec![b1, k.from_int(2)] };
    CrossedProduct::new(k, data).unwrap()
}

pub fn instance_b3_witness() -> StrongDegeneracyWitness {
    let k = instance_b3_field();
    let l = instance_b3_l(&k);
    StrongDegeneracyWitness { m: g(&[1, 0]), l: l.clone(), x: vec![l, k.one()] }
}
