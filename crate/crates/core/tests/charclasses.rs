use num_bigint::BigInt;
use swdual_core::charcls::{
    chern_character_at_class, chern_character_on_multipliers, chern_on_cyclic, lambda_at_class,
    lambda_on_cyclic, lambda_on_group, lambda_table_order_twelve, lambda_table_order_twentyfour,
    render_e_expansion, sw_table_q8, total_sw, wu_congruence_check, ChernData, Provenance,
    SwClass,
};
use swdual_core::error::Error;
use swdual_core::group::{
    binary_tetrahedral, dicyclic_twelve, make_cyclic, make_semidirect, quaternion,
};
use swdual_core::rep::{
    adjoint_conjugation_rep, character_table, decompose_real, real_irreducibles, RealRepClass,
};

fn sw(coeffs: [u8; 7]) -> SwClass {
    SwClass::from_coeffs(coeffs)
}

#[test]
fn chern_coefficients_on_cyclic_groups() {
    // a single line with multiplier 2 on C_5
    let c = chern_on_cyclic(5, &[2]).unwrap();
    assert_eq!(c.coeffs, vec![2]);
    // quaternionic line on C_4, multipliers 1 and 3: c_1 = 0, c_2 = 3
    let c = chern_on_cyclic(4, &[1, 3]).unwrap();
    assert_eq!(c.coeffs, vec![0, 3]);
    // reduced regular representation of C_3: c_1 = 1 + 2 = 0 mod 3
    let c = chern_on_cyclic(3, &[1, 2]).unwrap();
    assert_eq!(c.coeffs, vec![0, 2]);
    assert!(chern_on_cyclic(7, &[]).unwrap().coeffs.is_empty());
    assert!(matches!(chern_on_cyclic(0, &[1]), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn lambda_from_chern_data() {
    // trivial class
    assert_eq!(lambda_on_cyclic(&ChernData { order: 12, coeffs: vec![] }).unwrap(), 0);
    // the faithful line on C_3: d = 2, lambda = 2*1 - 0 = 2 = -1
    assert_eq!(lambda_on_cyclic(&ChernData { order: 3, coeffs: vec![1] }).unwrap(), 2);
    // the quaternionic character on C_4: lambda = -3 = 1
    assert_eq!(lambda_on_cyclic(&ChernData { order: 4, coeffs: vec![0, 3] }).unwrap(), 1);
    // odd c_1 on an even cyclic group admits no halving
    assert!(matches!(
        lambda_on_cyclic(&ChernData { order: 4, coeffs: vec![1] }),
        Err(Error::NotSpinnable)
    ));
    assert!(matches!(
        lambda_on_cyclic(&ChernData { order: 2, coeffs: vec![1, 0] }),
        Err(Error::NotSpinnable)
    ));
    // both halvings of an even c_1 agree
    assert_eq!(lambda_on_cyclic(&ChernData { order: 12, coeffs: vec![6, 5] }).unwrap(), 1);
    // odd order: unique halving
    assert_eq!(lambda_on_cyclic(&ChernData { order: 5, coeffs: vec![3, 1] }).unwrap(), 1);
}

#[test]
fn lambda_at_classes_of_small_groups() {
    // C_3: the rank-2 rotation summand has lambda = -1
    let g = make_cyclic(3).unwrap();
    let t = character_table(&g).unwrap();
    let b = real_irreducibles(&t).unwrap();
    let class3 = (0..t.class_count()).find(|&k| t.data.orders[k] == 3).unwrap();
    let rot = b.irreducibles.iter().find(|ri| ri.dim == 2).unwrap();
    assert_eq!(lambda_at_class(&t, &rot.character, class3).unwrap(), 2);
    assert_eq!(lambda_at_class(&t, &t.trivial(), class3).unwrap(), 0);

    // quaternion group: lambda of the 4-dimensional class is 1 mod 4
    let g = quaternion();
    let t = character_table(&g).unwrap();
    let b = real_irreducibles(&t).unwrap();
    let class4 = (0..t.class_count()).find(|&k| t.data.orders[k] == 4).unwrap();
    let quat = b.irreducibles.iter().find(|ri| ri.endo_degree == 4).unwrap();
    assert_eq!(lambda_at_class(&t, &quat.character, class4).unwrap(), 1);
    // a line acting by -1 at the detector is not spin
    let minus_one = swdual_core::cyclotomic::CyclotomicValue::from_int(t.exponent, -1);
    let line = b
        .irreducibles
        .iter()
        .find(|ri| ri.dim == 1 && ri.character.values[class4].equals(&minus_one))
        .unwrap();
    assert!(matches!(
        lambda_at_class(&t, &line.character, class4),
        Err(Error::NotSpinnable)
    ));
}

#[test]
fn lambda_table_of_the_order_twelve_group() {
    let g = dicyclic_twelve();
    let t = character_table(&g).unwrap();
    let b = real_irreducibles(&t).unwrap();
    let lt = lambda_table_order_twelve(&t, &b).unwrap();
    assert_eq!(lt.modulus, 3);
    assert_eq!(lt.values, vec![0, 0, 0, 2, 1]);
    assert!(lt.seeds.is_empty());
    assert!(lt.provenance.iter().all(|&p| p == Provenance::Computed));

    // the regular class evaluates to -1
    let reg = decompose_real(&t, &b, &t.regular()).unwrap();
    assert_eq!(lambda_on_group(&lt, &b, &reg).unwrap(), 2);

    // wrong groups are rejected
    let c12 = make_cyclic(12).unwrap();
    let tc = character_table(&c12).unwrap();
    let bc = real_irreducibles(&tc).unwrap();
    assert!(matches!(lambda_table_order_twelve(&tc, &bc), Err(Error::WrongGroup)));
}

#[test]
fn lambda_table_of_the_order_twentyfour_group() {
    let g = binary_tetrahedral();
    let t = character_table(&g).unwrap();
    let b = real_irreducibles(&t).unwrap();
    let lt = lambda_table_order_twentyfour(&t, &b).unwrap();
    assert_eq!(lt.modulus, 8);
    assert_eq!(lt.values, vec![0, 0, 2, 1, 1]);
    assert_eq!(lt.seeds.len(), 2);
    assert_eq!(lt.seeds[0].value, 1);
    assert_eq!(lt.seeds[1].value, 2);
    let given = lt.provenance.iter().filter(|&&p| p == Provenance::Given).count();
    assert_eq!(given, 3); // trace-zero summand and both 4-dimensional classes
    assert_eq!(lt.provenance[0], Provenance::Computed);
    assert_eq!(lt.provenance[1], Provenance::Computed);

    // regular class: 0 + 0 + 3*2 + 2*1 + 1*1 = 9 = 1 mod 8
    let reg = decompose_real(&t, &b, &t.regular()).unwrap();
    assert_eq!(lambda_on_group(&lt, &b, &reg).unwrap(), 1);

    // the conjugation class 1 + trace-zero has lambda 2
    let mut had = RealRepClass::zero(&b);
    had.coeffs[0] = BigInt::from(1);
    had.coeffs[2] = BigInt::from(1);
    assert_eq!(lambda_on_group(&lt, &b, &had).unwrap(), 2);

    // virtual classes: 3 quaternionic - regular
    let quat_idx = b.irreducibles.iter().position(|ri| ri.endo_degree == 4).unwrap();
    let mut v = RealRepClass::zero(&b);
    v.coeffs[quat_idx] = BigInt::from(3);
    let virt = v.sub(&reg).unwrap();
    assert_eq!(lambda_on_group(&lt, &b, &virt).unwrap(), 2);

    let g12 = dicyclic_twelve();
    let t12 = character_table(&g12).unwrap();
    let b12 = real_irreducibles(&t12).unwrap();
    assert!(matches!(lambda_table_order_twentyfour(&t12, &b12), Err(Error::WrongGroup)));
    // cross-group evaluation is rejected
    let reg12 = decompose_real(&t12, &b12, &t12.regular()).unwrap();
    assert!(matches!(lambda_on_group(&lt, &b, &reg12), Err(Error::WrongGroup)));
}

#[test]
fn chern_character_coefficients() {
    // c_1 of the reduced regular representation of C_3 vanishes
    assert_eq!(chern_character_on_multipliers(3, 1, &[1, 2]).unwrap(), 0);
    // ch_2 of C(2) + C(3) on C_5: (4 + 9)/2 = 4 mod 5
    assert_eq!(chern_character_on_multipliers(5, 2, &[2, 3]).unwrap(), 4);
    // Wilson: ch_{p-1}(C(1)) = 1/(p-1)! = -1 mod p
    for p in [3u64, 5, 7, 11, 13] {
        assert_eq!(chern_character_on_multipliers(p, (p - 1) as u32, &[1]).unwrap(), p - 1);
        // Fermat makes every unit multiplier agree there
        for m in 1..p {
            assert_eq!(
                chern_character_on_multipliers(p, (p - 1) as u32, &[m]).unwrap(),
                p - 1
            );
        }
    }
    assert!(matches!(
        chern_character_on_multipliers(5, 5, &[1]),
        Err(Error::IndexOutOfRange(_))
    ));
    assert!(matches!(
        chern_character_on_multipliers(5, 0, &[1]),
        Err(Error::IndexOutOfRange(_))
    ));
    assert!(matches!(chern_character_on_multipliers(6, 1, &[1]), Err(Error::NotPrime(6))));
}

#[test]
fn chern_character_on_real_classes() {
    // metacyclic group at p = 3: detector ch_2 of the conjugation lattice
    // representation is -n(n-1)/2 = -1, of the regular one -n/2 = -1
    let ar = adjoint_conjugation_rep(3, 2).unwrap();
    let t = character_table(&ar.group).unwrap();
    let class = (0..t.class_count()).find(|&k| t.data.orders[k] == 3).unwrap();
    assert_eq!(chern_character_at_class(&t, &ar.character, class, 2, 3).unwrap(), 2);
    assert_eq!(chern_character_at_class(&t, &t.regular(), class, 2, 3).unwrap(), 2);
    // additivity
    let sum = ar.character.add(&t.regular()).unwrap();
    assert_eq!(chern_character_at_class(&t, &sum, class, 2, 3).unwrap(), 1);
    // odd coefficients of real classes are rejected rather than lied about
    assert!(matches!(
        chern_character_at_class(&t, &ar.character, class, 1, 3),
        Err(Error::IndexOutOfRange(_))
    ));
    // the detector class must have order exactly p
    let wrong = (0..t.class_count()).find(|&k| t.data.orders[k] == 4).unwrap();
    assert!(matches!(
        chern_character_at_class(&t, &ar.character, wrong, 2, 3),
        Err(Error::IndexOutOfRange(_))
    ));
    assert!(matches!(
        chern_character_at_class(&t, &ar.character, class, 2, 2),
        Err(Error::NotPrime(2))
    ));
}

#[test]
fn stiefel_whitney_ring_relations() {
    let one = SwClass::one();
    let a = sw([0, 1, 0, 0, 0, 0, 0]);
    let b = sw([0, 0, 1, 0, 0, 0, 0]);
    let a2 = sw([0, 0, 0, 1, 0, 0, 0]);
    let ab = sw([0, 0, 0, 0, 1, 0, 0]);
    let a2b = sw([0, 0, 0, 0, 0, 1, 0]);
    let p = sw([0, 0, 0, 0, 0, 0, 1]);

    assert_eq!(a.mul(&a), a2);
    assert_eq!(a.mul(&b), ab);
    // b^2 = a^2 + ab
    assert_eq!(b.mul(&b), a2.add(&ab));
    // a^3 = 0, b^3 = 0
    assert_eq!(a.mul(&a2), sw([0; 7]));
    assert_eq!(b.mul(&b.mul(&b)), sw([0; 7]));
    // all three degree-3 products collapse to a^2 b
    assert_eq!(a.mul(&ab), a2b);
    assert_eq!(b.mul(&a2), a2b);
    assert_eq!(b.mul(&ab), a2b);
    // the degree-4 part of the nilpotent algebra vanishes
    assert_eq!(a2.mul(&a2), sw([0; 7]));
    assert_eq!(ab.mul(&ab), sw([0; 7]));
    assert_eq!(a.mul(&a2b), sw([0; 7]));
    // P is truncated against positive degrees
    assert_eq!(p.mul(&a), sw([0; 7]));
    assert_eq!(p.mul(&p), sw([0; 7]));
    assert_eq!(one.mul(&p), p);

    // the product of the three line classes is trivial
    let w1 = one.add(&a);
    let w2 = one.add(&b);
    let w3 = one.add(&a).add(&b);
    assert_eq!(w1.mul(&w2).mul(&w3), one);

    // inverses and powers
    let x = one.add(&b).add(&p);
    assert_eq!(x.mul(&x.inverse().unwrap()), one);
    assert!(sw([0, 1, 0, 0, 0, 0, 0]).inverse().is_err());
    let y = one.add(&a);
    assert_eq!(y.pow(&BigInt::from(4)), one);
    assert_eq!(y.pow(&BigInt::from(-1)), y.inverse().unwrap());
    assert_eq!(y.pow(&BigInt::from(2)), one.add(&a2));
    assert_eq!(x.pretty(), "1 + b + P");
}

#[test]
fn stiefel_whitney_table_of_the_quaternion_group() {
    let g = quaternion();
    let t = character_table(&g).unwrap();
    let b = real_irreducibles(&t).unwrap();
    let table = sw_table_q8(&t, &b).unwrap();

    let one = SwClass::one();
    let wa = sw([1, 1, 0, 0, 0, 0, 0]);
    let wb = sw([1, 0, 1, 0, 0, 0, 0]);
    let wab = sw([1, 1, 1, 0, 0, 0, 0]);
    let wq = sw([1, 0, 0, 0, 0, 0, 1]);
    // basis order puts the three sign lines first, then the trivial line,
    // then the quaternionic class
    assert_eq!(table.classes, vec![wab, wa, wb, one.clone(), wq.clone()]);

    // the 4-dimensional conjugation summand block: line sum has trivial
    // total class
    let mut had = RealRepClass::zero(&b);
    for i in 0..4 {
        had.coeffs[i] = BigInt::from(1);
    }
    assert_eq!(total_sw(&b, &table, &had).unwrap(), one);

    // regular class: w = 1 + P
    let reg = decompose_real(&t, &b, &t.regular()).unwrap();
    assert_eq!(reg.coeffs, vec![BigInt::from(1); 5]);
    assert_eq!(total_sw(&b, &table, &reg).unwrap(), wq);

    // virtual class: regular - 2 quaternionic inverts the top class
    let mut two_quat = RealRepClass::zero(&b);
    two_quat.coeffs[4] = BigInt::from(2);
    let virt = reg.sub(&two_quat).unwrap();
    assert_eq!(total_sw(&b, &table, &virt).unwrap(), wq); // (1+P)^{-1} = 1+P

    // convention independence: the product of the three line classes is 1
    // whichever order-4 classes the generators were attached to
    let triple = table.classes[0].mul(&table.classes[1]).mul(&table.classes[2]);
    assert_eq!(triple, one);

    // the dihedral group of order 8 has the same character degrees but five
    // involutions, and is rejected
    let d4 = make_semidirect(4, 2, 3).unwrap();
    let td = character_table(&d4).unwrap();
    let bd = real_irreducibles(&td).unwrap();
    assert_eq!(td.dims(), vec![1, 1, 1, 1, 2]);
    assert!(matches!(sw_table_q8(&td, &bd), Err(Error::WrongGroup)));
}

#[test]
fn wu_congruence_grid() {
    for (p, n) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
        let rep = wu_congruence_check(p, n).unwrap();
        assert!(rep.holds, "wu congruence must hold at p = {p}, n = {n}");
        assert_eq!(rep.nvars, (rep.r * n as u64) as usize);
        assert_eq!(rep.reduced, rep.target);
    }

    // q_1 at p = 5 is the full power sum p_2 = e_1^2 - 2 e_2
    let rep = wu_congruence_check(5, 1).unwrap();
    let e1sq: Vec<u32> = vec![2, 0];
    let e2: Vec<u32> = vec![0, 1];
    assert_eq!(rep.expansion.get(&e1sq), Some(&1));
    assert_eq!(rep.expansion.get(&e2), Some(&3)); // -2 mod 5
    assert_eq!(rep.reduced.get(&e2), Some(&3));
    assert_eq!(render_e_expansion(&rep.reduced), vec!["3 e2"]);

    // q_2 at p = 3 is exactly e_2
    let rep = wu_congruence_check(3, 2).unwrap();
    assert_eq!(rep.expansion.len(), 1);
    assert_eq!(rep.expansion.get(&vec![0, 1]), Some(&1));

    assert!(matches!(wu_congruence_check(7, 3), Err(Error::TooManyVariables(_))));
    assert!(matches!(wu_congruence_check(11, 2), Err(Error::TooManyVariables(_))));
    assert!(matches!(wu_congruence_check(9, 1), Err(Error::NotPrime(9))));
    assert!(matches!(wu_congruence_check(2, 1), Err(Error::NotPrime(2))));
    assert!(matches!(wu_congruence_check(3, 0), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn wu_congruence_larger_inputs() {
    // not on the required grid, but the congruence is a theorem: spot-check
    // sizes beyond it
    for (p, n) in [(5u64, 3u32), (7, 2), (11, 1), (13, 1)] {
        let rep = wu_congruence_check(p, n).unwrap();
        assert!(rep.holds, "wu congruence must hold at p = {p}, n = {n}");
    }
}
