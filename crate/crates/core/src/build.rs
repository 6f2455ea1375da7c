//! Constructing presentations: simple extensions `Q[t]/(f)` in their power
//! basis, tensor products, and automorphisms given by the image of `t`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldPresentation};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `Q[t]/(f)` with basis `1, t, ..., t^{d-1}`. `coeffs` lists `f` from the
/// constant term up and must be monic of degree at least 1.
pub fn power_basis(coeffs: &[Scalar], labels: Vec<String>) -> Result<FieldPresentation> {
    let d = coeffs.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
        Error::Malformed("minimal polynomial must have degree at least 1".into())
    })?;
    if !coeffs[d].is_one() {
        return Err(Error::Malformed("minimal polynomial must be monic".into()));
    }
    if labels.len() != d {
        return Err(Error::Malformed(alloc::format!("{} labels for degree {d}", labels.len())));
    }
    // powers[k] = coordinates of t^k for k < 2d - 1
    let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * d);
    for k in 0..2 * d - 1 {
        if k < d {
            let mut v = vec![Scalar::zero(); d];
            v[k] = Scalar::one();
            powers.push(v);
        } else {
            // t^k = t * t^{k-1}; shift and fold the overflow through f.
            let prev = &powers[k - 1];
            let mut v = vec![Scalar::zero(); d];
            for i in 0..d - 1 {
                v[i + 1] = prev[i].clone();
            }
            let top = &prev[d - 1];
            if !top.is_zero() {
                for (i, c) in coeffs[..d].iter().enumerate() {
                    v[i] -= top * c;
                }
            }
            powers.push(v);
        }
    }
    let structure = (0..d)
        .map(|i| (0..d).map(|j| powers[i + j].clone()).collect())
        .collect();
    let mut unit = vec![Scalar::zero(); d];
    unit[0] = Scalar::one();
    FieldPresentation::new(labels, structure, unit)
}

/// Matrix of the endomorphism of a power-basis field sending `t` to `image`.
/// Column `k` holds the coordinates of `image^k`.
pub fn power_basis_map(field: &FieldPresentation, image: &FieldElement) -> Matrix {
    let d = field.dim();
    let mut cols = Vec::with_capacity(d);
    let mut p = field.one();
    for _ in 0..d {
        cols.push(p.coords().to_vec());
        p = field.mul(&p, image);
    }
    Matrix::from_columns(&cols, d)
}

/// `A (x) B` with basis `a_i (x) b_j` at index `i * dim(B) + j`.
pub fn tensor(a: &FieldPresentation, b: &FieldPresentation) -> Result<FieldPresentation> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let labels = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| tensor_label(la, lb)))
        .collect();
    let mut structure = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..na {
        for k in 0..na {
            for p in 0..na {
                let ca = a.structure_constant(i, k, p);
                if ca.is_zero() {
                    continue;
                }
                for j in 0..nb {
                    for l in 0..nb {
                        for q in 0..nb {
                            let cb = b.structure_constant(j, l, q);
                            if !cb.is_zero() {
                                structure[i * nb + j][k * nb + l][p * nb + q] = ca * cb;
                            }
                        }
                    }
                }
            }
        }
    }
    let unit = kron_vec(a.unit_coords(), b.unit_coords());
    FieldPresentation::new(labels, structure, unit)
}

fn tensor_label(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => String::from(b),
        (_, "1") => String::from(a),
        _ => alloc::format!("{a}{b}"),
    }
}

pub fn kron_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Kronecker product, matching the index convention of [`tensor`].
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut m = Matrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    m[(i * rb + k, j * cb + l)] = x * &b[(k, l)];
                }
            }
        }
    }
    m
}

/// Replaces the basis labels.
pub fn relabel(field: &FieldPresentation, labels: Vec<String>) -> Result<FieldPresentation> {
    FieldPresentation::new(labels, field.structure_constants(), field.unit_coords().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cube_root_of_two() {
        let e = power_basis(&ints(&[-2, 0, 0, 1]), vec!["1".into(), "c".into(), "c^2".into()]).unwrap();
        let c = e.basis(1);
        assert_eq!(e.pow(&c, 3), e.from_int(2));
        assert_eq!(e.mul(&e.basis(2), &e.basis(2)), e.scale(&c, &int(2)));
    }

    #[test]
    fn conjugation_on_quadratic_field() {
        let q = power_basis(&ints(&[-5, 0, 1]), vec!["1".into(), "r5".into()]).unwrap();
        let m = power_basis_map(&q, &q.neg(&q.basis(1)));
        assert!(m.pow(2).is_identity());
        assert!(!m.is_identity());
    }

    #[test]
    fn tensor_of_quadratics_is_biquadratic() {
        let a = power_basis(&ints(&[-3, 0, 1]), vec!["1".into(), "√3".into()]).unwrap();
        let b = power_basis(&ints(&[-2, 0, 1]), vec!["1".into(), "√2".into()]).unwrap();
        let k = tensor(&a, &b).unwrap();
        assert_eq!(k.labels(), &["1", "√2", "√3", "√3√2"]);
        assert_eq!(k.mul(&k.basis(1), &k.basis(2)), k.basis(3));
        assert_eq!(k.mul(&k.basis(3), &k.basis(3)), k.from_int(6));
    }

    #[test]
    fn rejects_non_monic() {
        assert!(power_basis(&ints(&[1, 2]), vec!["1".into()]).is_err());
        assert!(power_basis(&ints(&[1]), vec![]).is_err());
    }
}
