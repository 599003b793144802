//! Lattice saturation and stability: pinned examples plus randomized
//! property instances, and the conjugation stability of the unit actions on
//! the orders themselves.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use swdual_core::error::Error;
use swdual_core::lattice::{check_stability, Lattice};
use swdual_core::matrix::IntMatrix;
use swdual_core::order::{cube_root_unit_order, hurwitz_order};
use swdual_core::rep::adjoint_conjugation_rep;

fn from_i64(rows: &[&[i64]]) -> Lattice {
    Lattice::new(IntMatrix::from_i64(rows))
}

fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn saturation_examples() {
    // index-2 sublattice of Z^2 saturates to the full lattice
    let l = from_i64(&[&[2, 0], &[0, 1]]);
    let sat2 = l.saturate_at_p(2).unwrap();
    assert!(sat2.equals(&Lattice::standard(2)).unwrap());
    // saturation at a prime not dividing the index changes nothing
    let sat3 = l.saturate_at_p(3).unwrap();
    assert!(sat3.equals(&l).unwrap());

    // a rank-1 example in ambient dimension 2: p-part of the content only
    let l = from_i64(&[&[6, 10]]);
    let sat = l.saturate_at_p(2).unwrap();
    assert!(sat.contains(&bigs(&[3, 5])).unwrap());
    assert!(!sat.contains(&bigs(&[1, 1])).unwrap());
    assert_eq!(sat.rank(), 1);
}

#[test]
fn index_and_membership() {
    let full = Lattice::standard(2);
    let sub = from_i64(&[&[2, 0], &[0, 3]]);
    assert_eq!(full.index_of_sublattice(&sub).unwrap(), BigInt::from(6));
    assert!(full.contains_lattice(&sub).unwrap());
    assert!(!sub.contains_lattice(&full).unwrap());
    assert!(matches!(sub.index_of_sublattice(&full), Err(Error::NotContained)));

    // canonical basis does not depend on the presentation
    let a = from_i64(&[&[2, 0], &[0, 1]]);
    let b = from_i64(&[&[0, 1], &[2, 0], &[2, 1]]);
    assert_eq!(a.canonical_basis().unwrap(), b.canonical_basis().unwrap());
}

#[test]
fn stability_checks() {
    // the rotation fixes Z^2 but not the index-2 sublattice with a short
    // second axis
    let rot = IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
    assert!(Lattice::standard(2).is_stable_under(&rot).unwrap());
    let skew = from_i64(&[&[1, 0], &[0, 2]]);
    assert!(!skew.is_stable_under(&rot).unwrap());
    check_stability(&Lattice::standard(2), &[rot]).unwrap();
}

#[test]
fn unit_conjugation_stabilizes_the_orders() {
    // the order lattice on its own basis, under every norm-one unit
    for (ord, count) in [(hurwitz_order(), 24), (cube_root_unit_order(), 12)] {
        let units = ord.norm_one_elements().unwrap();
        assert_eq!(units.len(), count);
        let lat = Lattice::standard(4);
        let actions: Vec<IntMatrix> =
            units.iter().map(|u| ord.conj_action_matrix(u).unwrap()).collect();
        check_stability(&lat, &actions).unwrap();
        for m in &actions {
            assert_eq!(m.det().unwrap(), BigInt::from(1));
        }
    }
}

#[test]
fn adjoint_action_stabilizes_the_cyclotomic_lattice() {
    for (p, e) in [(3u64, 2u64), (5, 2)] {
        let ar = adjoint_conjugation_rep(p, e).unwrap();
        let n = (p - 1) as usize;
        let lat = Lattice::standard(n * n);
        check_stability(&lat, &ar.matrices).unwrap();
        for m in &ar.matrices {
            assert_eq!(m.det().unwrap(), BigInt::from(1), "p = {p}");
        }
        // the lattice basis is genuinely full rank against the ambient order
        assert!(!lat.gens.det().unwrap().is_zero());
    }
}

/// c I + sum_t v_t^T w_t with every w_t in the lattice: stabilizes it by
/// construction, giving nontrivial stability instances.
fn stabilizing_endomorphism(
    l: &Lattice,
    c: i64,
    vs: &[Vec<i64>],
    combos: &[Vec<i64>],
) -> IntMatrix {
    let d = l.ambient_dim();
    let mut m = IntMatrix::zero(d, d);
    for i in 0..d {
        m.set(i, i, BigInt::from(c));
    }
    for (v, combo) in vs.iter().zip(combos) {
        // w = integer combination of the generators
        let mut w = vec![BigInt::zero(); d];
        for (r, &coef) in combo.iter().enumerate() {
            if r >= l.gens.rows {
                break;
            }
            for j in 0..d {
                w[j] += BigInt::from(coef) * l.gens.get(r, j);
            }
        }
        for i in 0..d {
            for j in 0..d {
                let add = BigInt::from(v[i]) * &w[j];
                let cur = m.get(i, j).clone();
                m.set(i, j, cur + add);
            }
        }
    }
    m
}

fn is_p_power(mut x: BigInt, p: u64) -> bool {
    let pb = BigInt::from(p);
    while (&x % &pb).is_zero() {
        x /= &pb;
    }
    x.abs() == BigInt::from(1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(224))]

    // saturation: contains the original, same rank, idempotent, p-power
    // index, and preserves stability of constructed endomorphisms
    #[test]
    fn saturation_properties(
        dim in 1usize..=5,
        nrows in 1usize..=5,
        entries in prop::collection::vec(-6i64..=6, 25),
        p in prop::sample::select(vec![2u64, 3, 5]),
        c in -3i64..=3,
        vflat in prop::collection::vec(-2i64..=2, 10),
        combos in prop::collection::vec(-2i64..=2, 10),
    ) {
        let rows: Vec<Vec<BigInt>> = (0..nrows)
            .map(|r| (0..dim).map(|c| BigInt::from(entries[r * 5 + c])).collect())
            .collect();
        let l = Lattice::new(IntMatrix::from_rows(rows).unwrap());
        let sat = l.saturate_at_p(p).unwrap();

        prop_assert!(sat.contains_lattice(&l).unwrap());
        prop_assert_eq!(sat.rank(), l.rank());
        let again = sat.saturate_at_p(p).unwrap();
        prop_assert!(again.equals(&sat).unwrap());

        if l.rank() > 0 {
            let idx = sat.index_of_sublattice(&l).unwrap();
            prop_assert!(is_p_power(idx, p));
        }

        // an endomorphism stabilizing l also stabilizes the saturation
        let vs: Vec<Vec<i64>> = (0..2).map(|t| {
            (0..dim).map(|i| vflat[t * 5 + i]).collect()
        }).collect();
        let cs: Vec<Vec<i64>> = (0..2).map(|t| {
            (0..5).map(|i| combos[t * 5 + i]).collect()
        }).collect();
        let m = stabilizing_endomorphism(&l, c, &vs, &cs);
        prop_assert!(l.is_stable_under(&m).unwrap());
        prop_assert!(sat.is_stable_under(&m).unwrap());
    }
}
