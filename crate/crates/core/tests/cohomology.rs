//! Bar-complex cohomology against independent oracles: periodic-resolution
//! dimensions for cyclic groups, monomial counts for elementary abelian ones,
//! explicit carry cocycles, and the classical transfer identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swdual_core::cohomology::*;
use swdual_core::error::Error;
use swdual_core::group::*;

/// H^k(C_m; F_p) from the 2-periodic resolution: the dual complex alternates
/// multiplication by 0 and by m, so every degree contributes F_p iff p | m.
fn cyclic_dims_oracle(m: u64, p: u64, maxdeg: usize) -> Vec<usize> {
    (0..=maxdeg).map(|k| if k == 0 || m % p == 0 { 1 } else { 0 }).collect()
}

/// Graded dimensions of Lambda(x_1..x_d) tensor F_p[y_1..y_d], deg x_i = 1,
/// deg y_i = 2: the mod-p cohomology of (C_p)^d for odd p.
fn exterior_tensor_poly_dims(d: usize, maxdeg: usize) -> Vec<usize> {
    let choose = |n: usize, k: usize| -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    };
    (0..=maxdeg)
        .map(|deg| {
            (0..=d.min(deg))
                .filter(|e| (deg - e) % 2 == 0)
                .map(|e| choose(d, e) * choose((deg - e) / 2 + d - 1, d - 1))
                .sum()
        })
        .collect()
}

/// Monomials of each degree in F_2[x_1..x_d], deg x_i = 1: mod-2 cohomology
/// of (C_2)^d.
fn poly_dims_mod2(d: usize, maxdeg: usize) -> Vec<usize> {
    let choose = |n: usize, k: usize| -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    };
    (0..=maxdeg).map(|deg| choose(deg + d - 1, d - 1)).collect()
}

/// The exponent cochain a -> a mod p on C_m, a 1-cocycle whenever p | m.
fn exponent_cocycle(m: usize, p: u64) -> Cochain {
    Cochain { degree: 1, values: (0..m).map(|a| (a as u64 % p) as u8).collect() }
}

/// The carry 2-cocycle (a, b) -> floor((a+b)/m) mod p on C_m, classifying the
/// extension by C_p; not a coboundary when p | m.
fn carry_cocycle(m: usize, p: u64) -> Cochain {
    let mut values = vec![0u8; m * m];
    for a in 0..m {
        for b in 0..m {
            values[a + m * b] = (((a + b) / m) as u64 % p) as u8;
        }
    }
    Cochain { degree: 2, values }
}

fn rand_combo(space: &CocycleSpace, p: u64, rng: &mut ChaCha8Rng) -> Cochain {
    let mut out = Cochain::zero(space.dim, space.degree);
    for b in &space.basis {
        let c = rng.gen_range(0..p) as u32;
        for (o, &v) in out.values.iter_mut().zip(&b.values) {
            *o = ((*o as u32 + c * v as u32) % p as u32) as u8;
        }
    }
    out
}

fn order_three_element(g: &FiniteGroup) -> usize {
    (0..g.order).find(|&x| g.element_order(x) == 3).expect("order-3 element")
}

#[test]
fn cyclic_groups_match_periodic_resolution_oracle() {
    for (m, p, maxdeg) in [(2, 2, 4), (3, 3, 4), (4, 2, 3), (5, 5, 3), (6, 3, 3), (5, 3, 3), (9, 3, 3)] {
        let g = make_cyclic(m).unwrap();
        let bar = bar_cohomology(&g, p, maxdeg).unwrap();
        assert_eq!(bar.dims, cyclic_dims_oracle(m as u64, p, maxdeg), "C_{m} mod {p}");
        for reps in &bar.basis {
            for x in reps {
                assert!(differential(&g, p, x).unwrap().is_zero(), "basis rep is a cocycle");
            }
        }
    }
}

#[test]
fn c9_dims_through_degree_four() {
    let g = make_cyclic(9).unwrap();
    let bar = bar_cohomology(&g, 3, 4).unwrap();
    assert_eq!(bar.dims, vec![1, 1, 1, 1, 1]);
    for reps in &bar.basis {
        assert_eq!(reps.len(), 1);
        assert!(differential(&g, 3, &reps[0]).unwrap().is_zero());
    }
}

#[test]
fn quaternion_mod_two_dims_through_degree_four() {
    let g = quaternion();
    let bar = bar_cohomology(&g, 2, 4).unwrap();
    assert_eq!(bar.dims, vec![1, 2, 2, 1, 1]);
    for reps in &bar.basis {
        for x in reps {
            assert!(differential(&g, 2, x).unwrap().is_zero());
        }
    }
}

#[test]
fn elementary_abelian_matches_monomial_count() {
    // (C_3)^2 mod 3 against Lambda tensor P; (C_2)^2 mod 2 against the
    // polynomial count; C_3 itself is the d = 1 column.
    let c3xc3 = make_semidirect(3, 3, 1).unwrap();
    let bar = bar_cohomology(&c3xc3, 3, 3).unwrap();
    assert_eq!(bar.dims, exterior_tensor_poly_dims(2, 3));
    assert_eq!(bar.dims, vec![1, 2, 3, 4]);

    let c3 = make_cyclic(3).unwrap();
    assert_eq!(bar_cohomology(&c3, 3, 3).unwrap().dims, exterior_tensor_poly_dims(1, 3));

    let c2xc2 = make_semidirect(2, 2, 1).unwrap();
    assert_eq!(bar_cohomology(&c2xc2, 2, 3).unwrap().dims, poly_dims_mod2(2, 3));
}

#[test]
fn size_cap_is_enforced() {
    let g = make_cyclic(100).unwrap();
    match bar_cohomology(&g, 2, 4) {
        Err(Error::TooLarge(_)) => {}
        other => panic!("expected TooLarge, got {other:?}"),
    }
    match bar_cohomology(&make_cyclic(4).unwrap(), 6, 2) {
        Err(Error::NotPrime(6)) => {}
        other => panic!("expected NotPrime, got {other:?}"),
    }
}

#[test]
fn differential_squares_to_zero_on_random_cochains() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_0001);
    for (g, p) in [(make_cyclic(6).unwrap(), 3), (quaternion(), 2)] {
        for _ in 0..5 {
            let dim = g.order;
            let phi = Cochain {
                degree: 1,
                values: (0..dim).map(|_| rng.gen_range(0..p) as u8).collect(),
            };
            let d1 = differential(&g, p, &phi).unwrap();
            let d2 = differential(&g, p, &d1).unwrap();
            assert!(d2.is_zero());
        }
    }
}

#[test]
fn cup_products_on_cochains() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_0002);
    // Degree-1 generator of C_p squares to zero in cohomology at odd p.
    for p in [3u64, 5] {
        let g = make_cyclic(p as usize).unwrap();
        let y = exponent_cocycle(p as usize, p);
        let yy = cup(&g, p, &y, &y).unwrap();
        assert!(is_coboundary(&g, p, &yy).unwrap(), "y^2 ~ 0 mod {p}");
    }
    // a.b ~ b.a mod 2 on the quaternion group.
    let q8 = quaternion();
    let a = Cochain { degree: 1, values: vec![0, 0, 1, 1, 0, 0, 1, 1] };
    let b = Cochain { degree: 1, values: vec![0, 0, 0, 0, 1, 1, 1, 1] };
    assert!(differential(&q8, 2, &a).unwrap().is_zero());
    assert!(differential(&q8, 2, &b).unwrap().is_zero());
    let ab = cup(&q8, 2, &a, &b).unwrap();
    let ba = cup(&q8, 2, &b, &a).unwrap();
    assert!(!is_coboundary(&q8, 2, &ab).unwrap(), "a.b is a nonzero class");
    assert!(cohomologous(&q8, 2, &ab, &ba).unwrap());
    // Strict associativity and bilinearity at the cochain level.
    let c3 = make_cyclic(3).unwrap();
    for _ in 0..5 {
        let rnd = |rng: &mut ChaCha8Rng| Cochain {
            degree: 1,
            values: (0..3).map(|_| rng.gen_range(0..3) as u8).collect(),
        };
        let (x, y, z) = (rnd(&mut rng), rnd(&mut rng), rnd(&mut rng));
        let left = cup(&c3, 3, &cup(&c3, 3, &x, &y).unwrap(), &z).unwrap();
        let right = cup(&c3, 3, &x, &cup(&c3, 3, &y, &z).unwrap()).unwrap();
        assert_eq!(left, right);
        let mut xp = x.clone();
        for (v, &w) in xp.values.iter_mut().zip(&y.values) {
            *v = (*v + w) % 3;
        }
        let lhs = cup(&c3, 3, &xp, &z).unwrap();
        let mut rhs = cup(&c3, 3, &x, &z).unwrap();
        for (v, &w) in rhs.values.iter_mut().zip(&cup(&c3, 3, &y, &z).unwrap().values) {
            *v = (*v + w) % 3;
        }
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn cup_is_graded_commutative_on_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_0003);
    let g = make_semidirect(3, 3, 1).unwrap();
    let z1 = cocycle_space(&g, 3, 1).unwrap();
    let z2 = cocycle_space(&g, 3, 2).unwrap();
    for _ in 0..10 {
        let x = rand_combo(&z1, 3, &mut rng);
        let y = rand_combo(&z1, 3, &mut rng);
        // odd.odd: x.y ~ -y.x, so the sum must die.
        let xy = cup(&g, 3, &x, &y).unwrap();
        let yx = cup(&g, 3, &y, &x).unwrap();
        let mut sum = xy.clone();
        for (v, &w) in sum.values.iter_mut().zip(&yx.values) {
            *v = (*v + w) % 3;
        }
        assert!(is_coboundary(&g, 3, &sum).unwrap());
        // odd.even: x.z ~ z.x.
        let z = rand_combo(&z2, 3, &mut rng);
        let xz = cup(&g, 3, &x, &z).unwrap();
        let zx = cup(&g, 3, &z, &x).unwrap();
        assert!(cohomologous(&g, 3, &xz, &zx).unwrap());
    }
}

#[test]
fn restriction_to_index_p_subgroup_by_degree() {
    // C_9 -> C_3 mod 3 and C_4 -> C_2 mod 2.  The exterior generator and its
    // odd-degree multiples die (degree-1 classes factor through the Frattini
    // quotient), but the even part is generated by the reduction of the
    // integral character class, and a faithful character restricts to a
    // faithful character: degree 2 restricts isomorphically.  The carry
    // cocycle makes that exact on the nose.
    for (m, p) in [(9usize, 3u64), (4, 2)] {
        let g = make_cyclic(m).unwrap();
        let h = g.subgroup(&[p as usize]).unwrap();
        let sub = m / p as usize;
        assert_eq!(h.h.order, sub);
        let bar = bar_cohomology(&g, p, 3).unwrap();
        for k in [1, 3] {
            for x in &bar.basis[k] {
                assert!(!is_coboundary(&g, p, x).unwrap());
                let r = restriction(&g, &h, p, x).unwrap();
                assert!(differential(&h.h, p, &r).unwrap().is_zero());
                assert!(is_coboundary(&h.h, p, &r).unwrap(), "res dies in degree {k} (m={m})");
            }
        }
        // Degree 2: restriction of the ambient carry cocycle is exactly the
        // subgroup carry cocycle, and both classes are nonzero.
        let carry_g = carry_cocycle(m, p);
        assert!(!is_coboundary(&g, p, &carry_g).unwrap());
        let r = restriction(&g, &h, p, &carry_g).unwrap();
        assert_eq!(r, carry_cocycle(sub, p));
        assert!(!is_coboundary(&h.h, p, &r).unwrap(), "degree 2 restricts to a nonzero class");
        let x = &bar.basis[2][0];
        let r2 = restriction(&g, &h, p, x).unwrap();
        assert!(!is_coboundary(&h.h, p, &r2).unwrap());
    }
}

#[test]
fn restriction_to_identity_and_ring_property() {
    let g = make_cyclic(9).unwrap();
    let e = g.subgroup(&[0]).unwrap();
    assert_eq!(e.h.order, 1);
    let bar = bar_cohomology(&g, 3, 2).unwrap();
    for k in 1..=2 {
        for x in &bar.basis[k] {
            let r = restriction(&g, &e, 3, x).unwrap();
            assert!(is_coboundary(&e.h, 3, &r).unwrap());
        }
    }
    // res(x.y) = res(x).res(y) exactly on cochains.
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_0004);
    let h = g.subgroup(&[3]).unwrap();
    for _ in 0..5 {
        let x = Cochain { degree: 1, values: (0..9).map(|_| rng.gen_range(0..3) as u8).collect() };
        let y = Cochain { degree: 1, values: (0..9).map(|_| rng.gen_range(0..3) as u8).collect() };
        let lhs = restriction(&g, &h, 3, &cup(&g, 3, &x, &y).unwrap()).unwrap();
        let rhs = cup(&h.h, 3, &restriction(&g, &h, 3, &x).unwrap(), &restriction(&g, &h, 3, &y).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn dicyclic_restriction_to_sylow_two_is_iso_below_degree_three() {
    let g = dicyclic_twelve();
    let t = (0..g.order).find(|&x| g.element_order(x) == 4).expect("order-4 element");
    let c4 = g.subgroup(&[t]).unwrap();
    assert_eq!(c4.h.order, 4);
    let bar_g = bar_cohomology(&g, 2, 2).unwrap();
    let bar_h = bar_cohomology(&c4.h, 2, 2).unwrap();
    for k in 1..=2 {
        assert_eq!(bar_g.dims[k], 1, "H^{k} of the order-12 group mod 2");
        assert_eq!(bar_h.dims[k], 1);
        let r = restriction(&g, &c4, 2, &bar_g.basis[k][0]).unwrap();
        assert!(!is_coboundary(&c4.h, 2, &r).unwrap(), "restriction stays nonzero in degree {k}");
    }
}

#[test]
fn transfer_basics_and_section_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_0005);
    let g = make_cyclic(9).unwrap();
    let h = g.subgroup(&[3]).unwrap();
    // Transfer of 1 in degree 0 is the index.
    let one = Cochain { degree: 0, values: vec![1] };
    let up = transfer(&g, &h, 3, &one).unwrap();
    assert_eq!(up.values, vec![3 % 3]);
    let up2 = transfer(&g, &h, 2, &one).unwrap();
    assert_eq!(up2.values, vec![3 % 2]);
    // Transfer commutes with the differential on arbitrary cochains.
    for _ in 0..5 {
        let phi = Cochain { degree: 1, values: (0..3).map(|_| rng.gen_range(0..3) as u8).collect() };
        let lhs = differential(&g, 3, &transfer(&g, &h, 3, &phi).unwrap()).unwrap();
        let rhs = transfer(&g, &h, 3, &differential(&h.h, 3, &phi).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
    // The class of the transfer does not depend on the coset section.
    let reps_min = coset_section(&g, &h).unwrap();
    assert_eq!(reps_min, vec![0, 1, 2]);
    let reps_alt = vec![0, 4, 8];
    let z2 = cocycle_space(&h.h, 3, 2).unwrap();
    for _ in 0..5 {
        let y = rand_combo(&z2, 3, &mut rng);
        let t1 = transfer(&g, &h, 3, &y).unwrap();
        let t2 = transfer_with_section(&g, &h, 3, &y, &reps_alt).unwrap();
        assert!(cohomologous(&g, 3, &t1, &t2).unwrap());
    }
    // Transfer of the degree-2 generator of the subgroup dies upstairs.
    let carry3 = carry_cocycle(3, 3);
    assert!(!is_coboundary(&h.h, 3, &carry3).unwrap());
    let t = transfer(&g, &h, 3, &carry3).unwrap();
    assert!(differential(&g, 3, &t).unwrap().is_zero());
    assert!(is_coboundary(&g, 3, &t).unwrap(), "transfer H^2(C_3) -> H^2(C_9) is zero");
    // Upstairs the carry cocycle itself is the nonzero class.
    let carry9 = carry_cocycle(9, 3);
    assert!(!is_coboundary(&g, 3, &carry9).unwrap());
}

#[test]
fn transfer_after_restriction_is_the_index() {
    // Index 4 = 1 mod 3 on the order-12 group: tr.res is the identity.
    let g = dicyclic_twelve();
    let z = order_three_element(&g);
    let c3 = g.subgroup(&[z]).unwrap();
    assert_eq!(c3.h.order, 3);
    let bar = bar_cohomology(&g, 3, 3).unwrap();
    assert_eq!(bar.dims, vec![1, 0, 0, 1]);
    let x = &bar.basis[3][0];
    let tr = transfer(&g, &c3, 3, &restriction(&g, &c3, 3, x).unwrap()).unwrap();
    assert!(cohomologous(&g, 3, &tr, x).unwrap());
    // Index 2 = 0 mod 2 on the quaternion group: tr.res kills everything.
    let q8 = quaternion();
    let c4 = q8.subgroup(&[2]).unwrap();
    assert_eq!(c4.h.order, 4);
    let bar2 = bar_cohomology(&q8, 2, 2).unwrap();
    for k in 1..=2 {
        for x in &bar2.basis[k] {
            let tr = transfer(&q8, &c4, 2, &restriction(&q8, &c4, 2, x).unwrap()).unwrap();
            assert!(is_coboundary(&q8, 2, &tr).unwrap());
        }
    }
}

/// tr(res(x).y) ~ x.tr(y), sampled on >= 100 class pairs per inclusion.
fn frobenius_samples(
    g: &FiniteGroup,
    h: &Subgroup,
    p: u64,
    deg_pairs: &[(usize, usize, usize)], // (deg x, deg y, samples)
    seed: u64,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0;
    for &(dx, dy, count) in deg_pairs {
        let zx = cocycle_space(g, p, dx).unwrap();
        let zy = cocycle_space(&h.h, p, dy).unwrap();
        assert!(!zx.basis.is_empty() && !zy.basis.is_empty(), "degenerate sample degrees");
        let mut space = coboundary_space(g, p, dx + dy).unwrap();
        for _ in 0..count {
            let x = rand_combo(&zx, p, &mut rng);
            let y = rand_combo(&zy, p, &mut rng);
            let lhs = transfer(g, h, p, &cup(&h.h, p, &restriction(g, h, p, &x).unwrap(), &y).unwrap())
                .unwrap();
            let rhs = cup(g, p, &x, &transfer(g, h, p, &y).unwrap()).unwrap();
            assert!(space.contains(&lhs.sub(&rhs, p).unwrap()).unwrap(), "frobenius at ({dx},{dy})");
            total += 1;
        }
    }
    assert!(total >= 100, "sampled {total} pairs");
}

#[test]
fn frobenius_reciprocity_cyclic() {
    let g = make_cyclic(9).unwrap();
    let h = g.subgroup(&[3]).unwrap();
    frobenius_samples(&g, &h, 3, &[(1, 1, 25), (1, 2, 25), (2, 1, 25), (2, 2, 25)], 0xF0_0001);
}

#[test]
fn frobenius_reciprocity_quaternion() {
    let g = quaternion();
    let h = g.subgroup(&[2]).unwrap();
    frobenius_samples(&g, &h, 2, &[(1, 1, 25), (1, 2, 25), (2, 1, 25), (2, 2, 25)], 0xF0_0002);
}

#[test]
fn frobenius_reciprocity_dicyclic() {
    let g = dicyclic_twelve();
    let z = order_three_element(&g);
    let h = g.subgroup(&[z]).unwrap();
    // Z^1 of the ambient group mod 3 is zero (abelianization C_4), so the
    // degree-2 cocycles carry the sampling.
    frobenius_samples(&g, &h, 3, &[(2, 1, 100)], 0xF0_0003);
}

#[test]
fn conjugation_acts_trivially_and_outer_action_cycles() {
    let q8 = quaternion();
    let bar = bar_cohomology(&q8, 2, 2).unwrap();
    for u in 0..q8.order {
        for k in 1..=2 {
            for x in &bar.basis[k] {
                let c = conjugation_action(&q8, u, x).unwrap();
                assert!(cohomologous(&q8, 2, &c, x).unwrap());
            }
        }
    }
    // Identity element acts as the identity on the nose.
    let x = &bar.basis[2][0];
    assert_eq!(&conjugation_action(&q8, q8.identity, x).unwrap(), x);

    // The order-3 outer symmetry cycling i -> j -> k permutes the three
    // nonzero degree-1 classes a -> b -> a+b.
    let perm = vec![0, 1, 4, 5, 6, 7, 2, 3];
    let a = Cochain { degree: 1, values: vec![0, 0, 1, 1, 0, 0, 1, 1] };
    let b = Cochain { degree: 1, values: vec![0, 0, 0, 0, 1, 1, 1, 1] };
    let ab = a.sub(&b, 2).unwrap(); // a+b mod 2
    let pa = automorphism_pullback(&q8, &perm, &a).unwrap();
    assert_eq!(pa, b);
    let pb = automorphism_pullback(&q8, &perm, &b).unwrap();
    assert_eq!(pb, ab);
    let pab = automorphism_pullback(&q8, &perm, &ab).unwrap();
    assert_eq!(pab, a);
    // Three applications come back to the start.
    let round = automorphism_pullback(
        &q8,
        &perm,
        &automorphism_pullback(&q8, &perm, &automorphism_pullback(&q8, &perm, &a).unwrap()).unwrap(),
    )
    .unwrap();
    assert_eq!(round, a);
}

#[test]
fn invariant_subring_models() {
    // Multiplier -1 at p = 3: invariants generated by z0^2 in degree 4.
    let m = invariants_model(3, -1).unwrap();
    assert_eq!((m.multiplier_order, m.generator_power, m.generator_degree), (2, 2, 4));
    assert_eq!(m.torsion, 3);
    // An order-4 multiplier at p = 5: generator z0^4 in degree 8.
    let m = invariants_model(5, 2).unwrap();
    assert_eq!((m.multiplier_order, m.generator_power, m.generator_degree), (4, 4, 8));
    // Trivial action: the full ring, generator z0 itself.
    let m = invariants_model(5, 1).unwrap();
    assert_eq!((m.generator_power, m.generator_degree), (1, 2));
    assert!(matches!(invariants_model(3, 3), Err(Error::BadMultiplier)));
    assert!(matches!(invariants_model(8, 3), Err(Error::NotPrime(8))));
}

#[test]
fn cyclic_model_products() {
    // z0 . z0^{p-2} = z0^{p-1}, the invariant generator for a primitive
    // multiplier.
    for p in [3u64, 5, 7] {
        let z0 = CyclicClass { torsion: p, power: 1 };
        let rest = CyclicClass { torsion: p, power: p as usize - 2 };
        let z = cyclic_cup(z0, rest).unwrap();
        assert_eq!(z.power, p as usize - 1);
        assert_eq!(z.degree(), 2 * (p as usize - 1));
        let inv = invariants_model(p, swdual_core::fp::primitive_root(p) as i64).unwrap();
        assert_eq!(inv.generator_power, z.power);
    }
    let a = CyclicClass { torsion: 3, power: 1 };
    let b = CyclicClass { torsion: 5, power: 1 };
    assert!(matches!(cyclic_cup(a, b), Err(Error::MixedGroups)));
}

#[test]
fn subgroup_validation_rejects_foreign_subgroups() {
    let g = make_cyclic(9).unwrap();
    let other = make_cyclic(8).unwrap();
    let h = other.subgroup(&[2]).unwrap();
    let x = Cochain { degree: 1, values: vec![0; 9] };
    assert!(matches!(restriction(&g, &h, 3, &x), Err(Error::NotSubgroup)));
}
