mod common;

use common::strategies::{hurwitz, rational_quaternion};
use proptest::prelude::*;

use orthomod::matrices::vee;
use orthomod::rings::{is_squarefree, IdealBasis, QuadField, F4};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hurwitz_integrality_is_closed(x in hurwitz(20), y in hurwitz(20)) {
        prop_assert!((x.clone() + y.clone()).is_hurwitz());
        prop_assert!((x.clone() * y.clone()).is_hurwitz());
        prop_assert!(x.conjugate().is_hurwitz());
    }

    #[test]
    fn norm_is_multiplicative(x in rational_quaternion(), y in rational_quaternion()) {
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
    }

    #[test]
    fn vee_is_multiplicative(x in rational_quaternion(), y in rational_quaternion()) {
        prop_assert_eq!(vee(&(x.clone() * y.clone())), &vee(&x) * &vee(&y));
    }

    #[test]
    fn reduction_mod_p_is_a_ring_homomorphism(x in hurwitz(20), y in hurwitz(20)) {
        let (rx, ry) = (F4::reduce(&x).unwrap(), F4::reduce(&y).unwrap());
        prop_assert_eq!(F4::reduce(&(x.clone() + y.clone())).unwrap(), rx + ry);
        prop_assert_eq!(F4::reduce(&(x * y)).unwrap(), rx * ry);
    }
}

#[test]
fn ideal_of_norm_n_squares_to_n() {
    let mut checked = 0;
    for m in (1..=30u32).filter(|&m| is_squarefree(m as u64)) {
        let k = QuadField::new(m).unwrap();
        let d = k.discriminant().unsigned_abs() as i64;
        for n in (1..=d).filter(|&n| d % n == 0 && is_squarefree(n as u64)) {
            let i = IdealBasis::quad_ideal_of_norm(k, n).unwrap();
            let sq = i.product(&i).unwrap();
            assert!(sq.same_module(&IdealBasis::quad_multiple(k, n)), "m = {m}, N = {n}");
            checked += 1;
        }
    }
    assert!(checked > 40);
}

#[test]
fn omega_k_lies_in_the_ideal_of_norm_five() {
    let k = QuadField::new(5).unwrap();
    let i = IdealBasis::quad_ideal_of_norm(k, 5).unwrap();
    assert!(i.contains_quad(&k.omega()).unwrap());
    assert!(!i.contains_quad(&k.one()).unwrap());
}
