//! Finite group constructors and structural queries on the multiplication
//! tables: orders, centers, conjugacy classes, subgroup closure,
//! automorphism checking.

use swdual_core::error::Error;
use swdual_core::group::{
    binary_tetrahedral, dicyclic_twelve, make_cyclic, make_semidirect, metacyclic_maximal,
    quaternion, FiniteGroup,
};

fn order_profile(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for x in 0..g.order {
        *counts.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

#[test]
fn cyclic_groups() {
    let c6 = make_cyclic(6).unwrap();
    assert_eq!(c6.order, 6);
    assert!(c6.is_abelian());
    assert_eq!(c6.exponent(), 6);
    assert_eq!(c6.conjugacy_classes().len(), 6);
    assert!(matches!(make_cyclic(513), Err(Error::TooLarge(_))));
    assert!(make_cyclic(512).is_ok());
}

#[test]
fn semidirect_products() {
    // C4 x| C2 with inversion: the dihedral group of order 8
    let d4 = make_semidirect(4, 2, 3).unwrap();
    assert_eq!(d4.order, 8);
    assert!(!d4.is_abelian());
    assert_eq!(d4.center().len(), 2);
    let profile = order_profile(&d4);
    assert_eq!(profile, vec![(1, 1), (2, 5), (4, 2)]);

    // trivial action gives the direct product
    let c6 = make_semidirect(3, 2, 1).unwrap();
    assert!(c6.is_abelian());
    assert_eq!(c6.exponent(), 6);

    // 2 has order 4 mod 5, not 2: the twist is no homomorphism from C2
    assert!(matches!(make_semidirect(5, 2, 2), Err(Error::NotHomomorphism)));
    // alpha must be a unit mod a
    assert!(matches!(make_semidirect(4, 2, 2), Err(Error::NotHomomorphism)));
    assert!(matches!(make_semidirect(0, 3, 1), Err(Error::NotAGroup(_))));
}

#[test]
fn quaternion_structure() {
    let q8 = quaternion();
    assert_eq!(q8.order, 8);
    assert_eq!(q8.exponent(), 4);
    assert_eq!(q8.conjugacy_classes().len(), 5);
    assert_eq!(q8.center().len(), 2);
    assert_eq!(order_profile(&q8), vec![(1, 1), (2, 1), (4, 6)]);
    // the unique involution is central
    let minus_one = q8.index_of_name("-1").unwrap();
    assert!(q8.center().contains(&minus_one));
    // negative powers invert
    for x in 0..q8.order {
        assert_eq!(q8.pow(x, -1), q8.inv(x));
        assert_eq!(q8.pow(x, -3), q8.inv(q8.pow(x, 3)));
        assert_eq!(q8.pow(x, 0), 0);
    }
}

#[test]
fn binary_tetrahedral_structure() {
    let g = binary_tetrahedral();
    assert_eq!(g.order, 24);
    assert_eq!(g.conjugacy_classes().len(), 7);
    assert_eq!(g.center().len(), 2);
    assert_eq!(g.exponent(), 12);
    assert_eq!(order_profile(&g), vec![(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]);
}

#[test]
fn dicyclic_and_metacyclic() {
    let g12 = dicyclic_twelve();
    assert_eq!(g12.order, 12);
    assert_eq!(g12.conjugacy_classes().len(), 6);
    assert_eq!(g12.exponent(), 12);
    assert_eq!(order_profile(&g12), vec![(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)]);

    // the maximal-order metacyclic group at p = 3 is the same table
    let m3 = metacyclic_maximal(3, 2).unwrap();
    assert_eq!(m3.order, 12);
    assert_eq!(order_profile(&m3), order_profile(&g12));

    let m5 = metacyclic_maximal(5, 2).unwrap();
    assert_eq!(m5.order, 80);
    assert_eq!(m5.center().len(), 4);
    assert!(metacyclic_maximal(5, 3).is_ok());
    assert!(matches!(metacyclic_maximal(5, 4), Err(Error::OrderMismatch(_))));

    let m7 = metacyclic_maximal(7, 3).unwrap();
    assert_eq!(m7.order, 252);
    assert_eq!(m7.center().len(), 6);
}

#[test]
fn subgroup_closure_and_embedding() {
    let q8 = quaternion();
    let i = q8.index_of_name("i").unwrap();
    let j = q8.index_of_name("j").unwrap();

    let ci = q8.subgroup(&[i]).unwrap();
    assert_eq!(ci.h.order, 4);
    assert_eq!(ci.index_in_parent(q8.order), 2);
    assert!(ci.h.is_abelian());
    // embedding respects multiplication
    for a in 0..ci.h.order {
        for b in 0..ci.h.order {
            assert_eq!(ci.embed[ci.h.mul(a, b)], q8.mul(ci.embed[a], ci.embed[b]));
        }
    }

    // i and j together generate everything
    let full = q8.subgroup(&[i, j]).unwrap();
    assert_eq!(full.h.order, 8);

    let trivial = q8.subgroup(&[]).unwrap();
    assert_eq!(trivial.h.order, 1);
}

#[test]
fn automorphism_checks() {
    let q8 = quaternion();
    let identity: Vec<usize> = (0..8).collect();
    assert!(q8.is_automorphism(&identity));
    // cycle i -> j -> k -> i, preserving signs
    assert!(q8.is_automorphism(&[0, 1, 4, 5, 6, 7, 2, 3]));
    // i -> -i alone breaks i*j = k
    assert!(!q8.is_automorphism(&[0, 1, 3, 2, 4, 5, 6, 7]));
    // not a permutation
    assert!(!q8.is_automorphism(&[0, 0, 2, 3, 4, 5, 6, 7]));
    assert!(!q8.is_automorphism(&[0, 1, 2]));

    // conjugation is always an automorphism
    for h in 0..q8.order {
        let perm: Vec<usize> = (0..q8.order).map(|x| q8.conj(x, h)).collect();
        assert!(q8.is_automorphism(&perm));
    }
}

#[test]
fn table_validation() {
    // Z/2 is fine
    let names2 = vec!["e".to_string(), "g".to_string()];
    assert!(FiniteGroup::from_table(vec![0, 1, 1, 0], names2.clone()).is_ok());
    // g*g = g has no identity behavior
    assert!(matches!(
        FiniteGroup::from_table(vec![0, 1, 1, 1], names2.clone()),
        Err(Error::NotAGroup(_))
    ));
    // wrong table size
    assert!(matches!(
        FiniteGroup::from_table(vec![0, 1, 1], names2),
        Err(Error::NotAGroup(_))
    ));
    // non-associative magma on 3 points with identity: 1*1=1 forced bad
    let names3: Vec<String> = ["e", "a", "b"].iter().map(|s| s.to_string()).collect();
    let bad = vec![0, 1, 2, 1, 0, 0, 2, 0, 0];
    assert!(FiniteGroup::from_table(bad, names3).is_err());
}

#[test]
fn class_partition() {
    let g = binary_tetrahedral();
    let classes = g.conjugacy_classes();
    // classes partition the group
    let total: usize = classes.iter().map(|c| c.len()).sum();
    assert_eq!(total, g.order);
    let byelt = g.class_of(&classes);
    assert_eq!(byelt.len(), g.order);
    for (ci, class) in classes.iter().enumerate() {
        for &x in class {
            assert_eq!(byelt[x], ci);
        }
    }
    // conjugate elements share a class; orders are class functions
    for x in 0..g.order {
        for h in 0..g.order {
            let y = g.conj(x, h);
            assert_eq!(byelt[x], byelt[y]);
            assert_eq!(g.element_order(x), g.element_order(y));
        }
    }
}
