//! Quaternion orders: algebra laws, norm-one unit enumeration against the
//! classical counts, recognition of the unit groups, and the integral
//! conjugation action.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swdual_core::error::Error;
use swdual_core::group::FiniteGroup;
use swdual_core::order::{
    cube_root_unit_order, four_dim_rep_order, hurwitz_order, lipschitz_order, QuatAlgebra,
    StructOrder,
};

fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Count elements by order: [(order, how many)] sorted.
fn order_profile(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for x in 0..g.order {
        *counts.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

fn involutions(g: &FiniteGroup) -> usize {
    (0..g.order).filter(|&x| g.element_order(x) == 2).count()
}

#[test]
fn unit_counts_match_the_classical_values() {
    assert_eq!(cube_root_unit_order().norm_one_elements().unwrap().len(), 12);
    assert_eq!(hurwitz_order().norm_one_elements().unwrap().len(), 24);
    assert_eq!(lipschitz_order().norm_one_elements().unwrap().len(), 8);
    assert_eq!(four_dim_rep_order().norm_one_elements().unwrap().len(), 4);
}

#[test]
fn cube_root_units_form_the_dicyclic_group() {
    let (g, elems) = cube_root_unit_order().finite_units().unwrap();
    assert_eq!(g.order, 12);
    assert!(!g.is_abelian());
    assert_eq!(involutions(&g), 1);
    assert_eq!(g.exponent(), 12);
    assert_eq!(order_profile(&g), vec![(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)]);
    assert_eq!(elems.len(), 12);
    // norm-one elements listed in coordinates really have norm one
    let ord = cube_root_unit_order();
    for e in &elems {
        assert_eq!(ord.norm_coords(e), BigInt::from(1));
    }
}

#[test]
fn hurwitz_units_form_the_binary_tetrahedral_group() {
    let (g, _) = hurwitz_order().finite_units().unwrap();
    assert_eq!(g.order, 24);
    assert!(!g.is_abelian());
    assert_eq!(involutions(&g), 1);
    assert_eq!(order_profile(&g), vec![(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]);
    // 7 conjugacy classes: the fingerprint of the order-24 group with a
    // unique involution
    assert_eq!(g.conjugacy_classes().len(), 7);
    assert_eq!(g.center().len(), 2);
}

#[test]
fn lipschitz_units_form_the_quaternion_group() {
    let (g, _) = lipschitz_order().finite_units().unwrap();
    assert_eq!(g.order, 8);
    assert!(!g.is_abelian());
    assert_eq!(involutions(&g), 1);
    assert_eq!(g.exponent(), 4);
    assert_eq!(g.conjugacy_classes().len(), 5);
}

#[test]
fn four_dim_sublattice_units_are_cyclic_of_order_four() {
    let (g, _) = four_dim_rep_order().finite_units().unwrap();
    assert_eq!(g.order, 4);
    assert!(g.is_abelian());
    assert_eq!(g.exponent(), 4);
}

#[test]
fn norm_is_multiplicative_and_conjugation_reverses_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0_4D3);
    for ord in [hurwitz_order(), cube_root_unit_order(), lipschitz_order()] {
        for _ in 0..25 {
            let x: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
            let y: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
            let xy = ord.mul_coords(&x, &y);
            assert_eq!(ord.norm_coords(&xy), ord.norm_coords(&x) * ord.norm_coords(&y));
            // bar(xy) = bar(y) bar(x)
            assert_eq!(ord.conj_coords(&xy), ord.mul_coords(&ord.conj_coords(&y), &ord.conj_coords(&x)));
            // trace form is symmetric
            let n = ord.norm_coords(&x);
            assert!(n >= BigInt::from(0), "definite norm");
        }
        // the multiplicative identity
        let one = ord.one_coords().unwrap();
        assert_eq!(ord.norm_coords(&one), BigInt::from(1));
        let z: Vec<BigInt> = bigs(&[1, 2, 0, -1]);
        assert_eq!(ord.mul_coords(&one, &z), z);
        assert_eq!(ord.mul_coords(&z, &one), z);
    }
}

#[test]
fn conjugation_action_is_integral_with_determinant_one() {
    let ord = hurwitz_order();
    let units = ord.norm_one_elements().unwrap();
    for u in &units {
        // conj_action_matrix verifies order stability and determinant 1
        let m = ord.conj_action_matrix(u).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::from(1));
    }
    // x -> u x u^{-1} reverses nothing but composes contravariantly on
    // row vectors: M(uv) = M(v) M(u)
    let u = &units[3];
    let v = &units[7];
    let uv = ord.mul_coords(u, v);
    let m_uv = ord.conj_action_matrix(&uv).unwrap();
    let m_u = ord.conj_action_matrix(u).unwrap();
    let m_v = ord.conj_action_matrix(v).unwrap();
    assert_eq!(m_uv, m_v.mul(&m_u).unwrap());

    // non-units are rejected
    assert!(matches!(ord.conj_action_matrix(&bigs(&[2, 0, 0, 0])), Err(Error::NotUnit)));
    assert!(matches!(ord.conj_action_matrix(&bigs(&[0, 0, 0, 0])), Err(Error::NotUnit)));
}

#[test]
fn indefinite_forms_are_rejected() {
    let alg = QuatAlgebra::new(1, -1);
    let one = |k: usize| {
        let mut q = [
            num_rational::BigRational::from(BigInt::from(0)),
            num_rational::BigRational::from(BigInt::from(0)),
            num_rational::BigRational::from(BigInt::from(0)),
            num_rational::BigRational::from(BigInt::from(0)),
        ];
        q[k] = num_rational::BigRational::from(BigInt::from(1));
        q
    };
    let basis = vec![one(0), one(1), one(2), one(3)];
    let names = ["1", "i", "j", "k"].map(String::from).to_vec();
    let ord = StructOrder::new(alg, basis, names).unwrap();
    assert!(matches!(ord.norm_one_elements(), Err(Error::NormNotDefinite)));
}

#[test]
fn pretty_names_are_reduced_coordinates() {
    let ord = hurwitz_order();
    assert_eq!(ord.pretty_name(&bigs(&[1, 0, 0, 0])), "1");
    assert_eq!(ord.pretty_name(&bigs(&[0, 1, 0, 0])), "i");
    assert_eq!(ord.pretty_name(&bigs(&[0, -1, 0, 0])), "-i");
    assert_eq!(ord.pretty_name(&bigs(&[0, 0, 0, 1])), "(1+i+j+k)/2");
    assert_eq!(ord.pretty_name(&bigs(&[-1, 0, 0, 1])), "(-1+i+j+k)/2");
    assert_eq!(ord.pretty_name(&bigs(&[0, 0, 0, 0])), "0");
    // a denominator-free combination through the half-unit basis vector:
    // 1 + i + j - 2 (1+i+j+k)/2 = -k
    assert_eq!(ord.pretty_name(&bigs(&[1, 1, 1, -2])), "-k");
}
