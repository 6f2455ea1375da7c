use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::field::GaloisExtension;
use crate::build::{power_basis, power_basis_map};
use crate::scalar::ratio;
use crate::testing::*;

#[test]
fn relation_examples() {
    let alg = instance_b();
    let ext = alg.ext().clone();
    assert!(validate_relations(&ext, alg.cocycle_data()).unwrap().passed());
    assert!(instance_b_trivial().relations().passed());

    let mut bad = alg.cocycle_data().clone();
    bad.u[0][1] = ext.basis(1);
    bad.u[1][0] = ext.inv(&ext.basis(1)).unwrap();
    let report = validate_relations(&ext, &bad).unwrap();
    assert!(!report.passed());
    assert!(!report.get("relation (2)").unwrap().passed || !report.get("relation (3)").unwrap().passed);
    assert!(matches!(CrossedProduct::new(ext.clone(), bad), Err(Error::Validation(_))));

    let mut zero = alg.cocycle_data().clone();
    zero.b[1] = ext.zero();
    assert!(matches!(validate_relations(&ext, &zero), Err(Error::Domain(_))));
}

#[test]
fn single_entry_perturbations_name_a_relation() {
    let alg = instance_b3();
    let ext = alg.ext();
    let mut data = alg.cocycle_data().clone();
    data.b[1] = ext.from_int(3);
    data.b[0] = ext.mul(&data.b[0], &ext.basis(1));
    let report = validate_relations(ext, &data).unwrap();
    assert!(!report.get("relation (2)").unwrap().passed);

    let mut data = alg.cocycle_data().clone();
    data.u[0][0] = ext.from_int(2);
    let report = validate_relations(ext, &data).unwrap();
    assert_eq!(report.get("relation (1)").unwrap().detail, "u_11 != 1");
}

#[test]
fn table_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    let (e1, e2) = (g(&[1, 0]), g(&[0, 1]));
    assert_eq!(alg.cocycle(&e1, &e1), &ext.from_int(3));
    assert_eq!(alg.cocycle(&e2, &e1), &ext.from_int(-1));
    assert_eq!(alg.cocycle(&e1, &e2), &ext.one());
    for h in ext.group().elements() {
        assert_eq!(alg.cocycle(&ext.group().identity(), &h), &ext.one());
    }
}

#[test]
fn tables_are_cocycles() {
    for alg in [instance_b(), instance_b_trivial(), instance_b3()] {
        assert!(alg.cocycle_identity_violations().is_empty());
    }
}

#[test]
fn multiplication_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    let r2 = ext.basis(1);
    let lhs = alg.mul(&alg.z(0), &alg.scalar(r2.clone())).unwrap();
    assert_eq!(lhs, alg.monomial(ext.neg(&r2), g(&[1, 0])));

    let y = alg.add(&alg.z(1), &alg.scalar(ext.basis(2)));
    assert_eq!(alg.mul(&alg.one(), &y).unwrap(), y);

    let w = alg.monomial(r2, g(&[1, 1]));
    let square = alg.pow(&w, 2).unwrap();
    assert_eq!(square, alg.scalar(ext.from_int(30)));
    assert!(alg.is_central(&square).unwrap());
    assert!(!alg.is_central(&alg.z(0)).unwrap());
    assert!(alg.is_central(&alg.scalar(ext.from_scalar(&ratio(7, 3)))).unwrap());
}

#[test]
fn mixed_algebras_are_rejected() {
    let b = instance_b();
    let b3 = instance_b3();
    assert!(matches!(b.mul(&b.z(0), &b3.z(0)), Err(Error::Domain(_))));
}

#[test]
fn commutator_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    for i in 0..2 {
        let e = ext.group().generator(i);
        assert_eq!(alg.commutator_u(&e, &e).unwrap(), ext.one());
    }
    assert_eq!(alg.commutator_u(&g(&[1, 0]), &g(&[1, 1])).unwrap(), ext.from_int(-1));
    assert_eq!(alg.commutator_u(&g(&[1, 1]), &g(&[0, 0])).unwrap(), ext.one());
}

#[test]
fn commutators_are_antisymmetric() {
    for alg in [instance_b(), instance_b3()] {
        let ext = alg.ext();
        for m in ext.group().elements() {
            for n in ext.group().elements() {
                let p = ext.mul(&alg.commutator_u(&m, &n).unwrap(), &alg.commutator_u(&n, &m).unwrap());
                assert_eq!(p, ext.one());
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                let (ei, ej) = (ext.group().generator(i), ext.group().generator(j));
                assert_eq!(&alg.commutator_u(&ei, &ej).unwrap(), alg.u(i, j));
            }
        }
    }
}

#[test]
fn strong_witness_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    assert!(alg.check_strong_witness(&instance_b_witness()).unwrap());
    let bad = StrongDegeneracyWitness { m: g(&[1, 1]), l: ext.one(), x: vec![ext.one(), ext.one()] };
    assert!(!alg.check_strong_witness(&bad).unwrap());

    let triv = instance_b_trivial();
    for (m, _) in ext.group().prime_order_elements() {
        let w = StrongDegeneracyWitness { m, l: ext.one(), x: vec![ext.one(), ext.one()] };
        assert!(triv.check_strong_witness(&w).unwrap());
    }
    assert!(alg.check_strong_witness(&instance_b3_witness()).is_err());
    assert!(instance_b3().check_strong_witness(&instance_b3_witness()).unwrap());
}

/// `Q(zeta_5)` with `sigma: zeta -> zeta^2`, cyclic of order 4.
fn cyclic_quartic() -> CrossedProduct {
    let f = power_basis(&ints(&[1, 1, 1, 1, 1]), labels(&["1", "ζ", "ζ²", "ζ³"])).unwrap();
    let s = power_basis_map(&f, &f.basis(2));
    let k = GaloisExtension::new(f, vec![4], vec![s]).unwrap();
    let b = vec![k.from_int(2)];
    CrossedProduct::new(k.clone(), CocycleData::trivial(&k, b)).unwrap()
}

#[test]
fn composite_order_is_a_precondition_error() {
    let alg = cyclic_quartic();
    let ext = alg.ext();
    let w = StrongDegeneracyWitness { m: g(&[1]), l: ext.one(), x: vec![ext.one()] };
    assert!(matches!(alg.check_strong_witness(&w), Err(Error::Precondition(_))));
    let w = StrongDegeneracyWitness { m: g(&[2]), l: ext.one(), x: vec![ext.one()] };
    assert!(alg.check_strong_witness(&w).unwrap());
    // G cyclic: no pair witness can exist.
    assert!(matches!(alg.strong_to_pair_witness(&w), Err(Error::Precondition(_))));
}

#[test]
fn pair_witness_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    let w = DegeneracyPairWitness { m: g(&[1, 0]), n: g(&[0, 1]), a: ext.basis(1), b: ext.one() };
    assert!(alg.check_pair_witness(&w).unwrap());
    let cyclic = DegeneracyPairWitness { m: g(&[1, 1]), n: g(&[1, 1]), a: ext.one(), b: ext.one() };
    assert!(!alg.check_pair_witness(&cyclic).unwrap());
    let trivial = DegeneracyPairWitness { m: g(&[1, 0]), n: g(&[0, 1]), a: ext.one(), b: ext.one() };
    assert!(instance_b_trivial().check_pair_witness(&trivial).unwrap());
    assert!(!alg.check_pair_witness(&trivial).unwrap());
}

#[test]
fn strong_to_pair_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    let pair = alg.strong_to_pair_witness(&instance_b_witness()).unwrap();
    assert_eq!(pair.m, g(&[1, 0]));
    assert_eq!(pair.n, g(&[1, 1]));
    assert_eq!(pair.a, ext.scale(&ext.basis(1), &ratio(1, 2)));
    assert_eq!(pair.b, ext.one());

    let b3 = instance_b3();
    let pair = b3.strong_to_pair_witness(&instance_b3_witness()).unwrap();
    assert!(b3.check_pair_witness(&pair).unwrap());
    assert_eq!(pair.m, g(&[0, 1]));
}

#[test]
fn central_element_round_trips() {
    let alg = instance_b();
    let ext = alg.ext();
    let y = alg.witness_to_central_element(&instance_b_witness()).unwrap();
    assert_eq!(y, alg.monomial(ext.basis(1), g(&[1, 1])));
    assert_eq!(alg.pow(&y, 2).unwrap(), alg.scalar(ext.from_int(30)));
    let w = alg.central_element_to_witness(&ext.basis(1), &g(&[1, 1])).unwrap();
    assert!(alg.check_strong_witness(&w).unwrap());
    assert!(ext.is_fixed(&ext.div(&ext.act(&g(&[1, 1]), &w.x[0]), &w.x[0]).unwrap()));

    let b3 = instance_b3();
    let y = b3.witness_to_central_element(&instance_b3_witness()).unwrap();
    let (m, l) = y.as_monomial().unwrap();
    let back = b3.central_element_to_witness(l, m).unwrap();
    assert!(b3.check_strong_witness(&back).unwrap());

    let triv = instance_b_trivial();
    let w = triv.central_element_to_witness(&ext.one(), &g(&[0, 1])).unwrap();
    assert_eq!(w.x, vec![ext.one(), ext.one()]);
}

#[test]
fn non_central_powers_are_refused() {
    // w_1^3 = 3 / N_1(a + b) is not fixed by sigma_2.
    let alg = instance_b3();
    let ext = alg.ext();
    assert!(matches!(alg.central_element_to_witness(&ext.one(), &g(&[1, 0])), Err(Error::Precondition(_))));
    assert!(matches!(alg.central_element_to_witness(&ext.zero(), &g(&[1, 0])), Err(Error::Domain(_))));
}

#[test]
fn every_prime_order_monomial_agrees_with_the_norm_criterion() {
    for alg in [instance_b(), instance_b3()] {
        let ext = alg.ext();
        let candidates = default_candidates(ext);
        for (m, q) in ext.group().prime_order_elements() {
            for l in candidates.iter().take(12) {
                let y = alg.monomial(l.clone(), m.clone());
                let central = alg.is_central(&alg.pow(&y, q as u32).unwrap()).unwrap();
                let solvable = alg.solve_strong(&m, l).unwrap().is_some();
                assert_eq!(central, solvable, "m = {m}, l = {}", ext.display(l));
                if central {
                    let w = alg.central_element_to_witness(l, &m).unwrap();
                    assert!(alg.check_strong_witness(&w).unwrap());
                }
            }
        }
    }
}

#[test]
fn search_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    let basis: Vec<_> = (0..4).map(|k| ext.basis(k)).collect();
    // z_2^2 = 5 is central, so l = 1 already works at m = (0,1).
    let w = search_strong_degeneracy(&alg, &basis).unwrap().found().unwrap();
    assert_eq!((w.m.clone(), w.l.clone()), (g(&[0, 1]), ext.one()));
    assert!(alg.check_strong_witness(&w).unwrap());
    let w = search_strong_degeneracy(&alg, &basis[..1]).unwrap().found().unwrap();
    assert_eq!(w.m, g(&[0, 1]));

    let triv = instance_b_trivial();
    let w = search_strong_degeneracy(&triv, &[ext.one()]).unwrap().found().unwrap();
    assert_eq!(w.x, vec![ext.one(), ext.one()]);

    match search_strong_degeneracy(&alg, &[]).unwrap() {
        SearchOutcome::Exhausted(e) => assert_eq!(e.candidates, 0),
        other => panic!("unexpected {other:?}"),
    }
}

fn twisted_b() -> (CrossedProduct, Vec<FieldElement>) {
    let alg = instance_b();
    let ext = alg.ext();
    let a1 = el(ext, &[1, 1, 1, 0]);
    let a2 = el(ext, &[1, 1, 0, 0]);
    let images = vec![a1, a2];
    (alg.rescale(&images).unwrap(), images)
}

#[test]
fn rescaled_instance_exhausts_default_candidates() {
    let (target, _) = twisted_b();
    let candidates = default_candidates(target.ext());
    match search_strong_degeneracy(&target, &candidates).unwrap() {
        SearchOutcome::Exhausted(e) => {
            assert_eq!(e.exponents, 3);
            assert_eq!(e.candidates, candidates.len());
        }
        other => panic!("unexpected {other:?}"),
    }
    // Still degenerate: (e_1, e_2, sqrt 2 / a_2, a_1) moves over from the source.
    let ext = target.ext();
    let (_, images) = twisted_b();
    let a = ext.div(&ext.basis(1), &images[1]).unwrap();
    let pair = DegeneracyPairWitness { m: g(&[1, 0]), n: g(&[0, 1]), a, b: images[0].clone() };
    assert!(target.check_pair_witness(&pair).unwrap());
    assert!(target.rank2_igk_witness_check(&pair.a, &pair.b).unwrap());
}

#[test]
fn degeneracy_search_finds_rank2_witness() {
    let alg = instance_b();
    let ext = alg.ext();
    let w = search_degeneracy(&alg, &default_candidates(ext)).unwrap().found().unwrap();
    assert_eq!((w.m.clone(), w.n.clone()), (g(&[1, 0]), g(&[0, 1])));
    assert!(alg.rank2_igk_witness_check(&w.a, &w.b).unwrap());
    let b3 = instance_b3();
    let w = search_degeneracy(&b3, &default_candidates(b3.ext())).unwrap().found().unwrap();
    assert!(b3.check_pair_witness(&w).unwrap());
}

#[test]
fn rank2_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    assert!(alg.rank2_igk_witness_check(&ext.basis(1), &ext.one()).unwrap());
    assert!(!alg.rank2_igk_witness_check(&ext.one(), &ext.one()).unwrap());
    assert!(instance_b_trivial().rank2_igk_witness_check(&ext.one(), &ext.one()).unwrap());
    let quartic = cyclic_quartic();
    let one = quartic.ext().one();
    assert!(matches!(quartic.rank2_igk_witness_check(&one, &one), Err(Error::Precondition(_))));
}

#[test]
fn power_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    let data = alg.cocycle_data();
    assert_eq!(&power_cocycle(ext, data, 1).unwrap(), data);
    let sq = power_cocycle(ext, data, 2).unwrap();
    assert_eq!(sq.u, vec![vec![ext.one(), ext.one()], vec![ext.one(), ext.one()]]);
    assert_eq!(sq.b, vec![ext.from_int(9), ext.from_int(25)]);
    let cube = power_cocycle(ext, data, 3).unwrap();
    assert_eq!(cube.u, data.u);
    assert_eq!(cube.b, vec![ext.from_int(27), ext.from_int(125)]);
    assert!(matches!(power_cocycle(ext, data, 0), Err(Error::Domain(_))));
}

#[test]
fn power_tables_are_entrywise_powers() {
    for alg in [instance_b(), instance_b3()] {
        let ext = alg.ext();
        for t in [2u64, 3] {
            let powered = alg.power(t).unwrap();
            for (c, d) in alg.cocycle_table().iter().zip(powered.cocycle_table()) {
                assert_eq!(&ext.pow(c, t), d);
            }
        }
    }
}

#[test]
fn transport_examples() {
    let alg = instance_b();
    let ext = alg.ext();
    let w = instance_b_witness();
    let ones = vec![ext.one(), ext.one()];
    assert_eq!(transport_witness(&alg, &alg, &w, &ones).unwrap(), w);

    let images = vec![ext.basis(2), ext.one()];
    let target = alg.rescale(&images).unwrap();
    let moved = transport_witness(&alg, &target, &w, &images).unwrap();
    assert!(target.check_strong_witness(&moved).unwrap());
    // Wrong target: the images do not give an isomorphism onto alg itself.
    assert!(matches!(transport_witness(&alg, &alg, &w, &images), Err(Error::InvalidIsomorphism(_))));

    let triv = instance_b_trivial();
    let images = vec![el(ext, &[1, 0, 1, 0]), el(ext, &[2, 1, 0, 0])];
    let target = triv.rescale(&images).unwrap();
    let tw = StrongDegeneracyWitness { m: g(&[1, 0]), l: ext.one(), x: ones };
    let moved = transport_witness(&triv, &target, &tw, &images).unwrap();
    assert!(target.check_strong_witness(&moved).unwrap());

    let (target, images) = twisted_b();
    let moved = transport_witness(&alg, &target, &w, &images).unwrap();
    let y = target.witness_to_central_element(&moved).unwrap();
    assert!(target.is_central(&target.pow(&y, 2).unwrap()).unwrap());
}

fn sparse_element(alg: &CrossedProduct, raw: &[(usize, Vec<i64>)]) -> AlgebraElement {
    let ext = alg.ext();
    raw.iter().fold(AlgebraElement::zero(), |acc, (idx, coords)| {
        let term = alg.monomial(el(ext, coords), ext.group().element(idx % ext.group().size()));
        alg.add(&acc, &term)
    })
}

fn raw_element(dim: usize) -> impl Strategy<Value = Vec<(usize, Vec<i64>)>> {
    prop::collection::vec((0usize..9, prop::collection::vec(-3i64..=3, dim)), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn instance_b_is_associative(a in raw_element(4), b in raw_element(4), c in raw_element(4)) {
        let alg = instance_b();
        let (x, y, z) = (sparse_element(&alg, &a), sparse_element(&alg, &b), sparse_element(&alg, &c));
        let left = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
        let right = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let dist = alg.mul(&x, &alg.add(&y, &z)).unwrap();
        prop_assert_eq!(dist, alg.add(&alg.mul(&x, &y).unwrap(), &alg.mul(&x, &z).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn instance_b3_is_associative(a in raw_element(9), b in raw_element(9), c in raw_element(9)) {
        let alg = instance_b3();
        let (x, y, z) = (sparse_element(&alg, &a), sparse_element(&alg, &b), sparse_element(&alg, &c));
        let left = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
        let right = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
