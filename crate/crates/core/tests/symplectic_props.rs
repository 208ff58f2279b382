use proptest::prelude::*;

use orthomod::matrices::Mat;
use orthomod::rings::{Quad, Quaternion, Rational, F4};
use orthomod::symplectic::{
    cocycle, det_mod_wp, mobius, point_rng, rotation, sample_point, sample_word_indexed, GroupElem, GroupKind, ModularRing,
};

fn hermitian_kinds() -> Vec<GroupKind> {
    [1, 2, 3, 5, 7, 11, 15].iter().map(|&m| GroupKind::hermitian(m).unwrap()).collect()
}

const QUAT_KINDS: [GroupKind; 3] = [GroupKind::QuatSp, GroupKind::QuatSpecial, GroupKind::QuatExtended];

fn closed<T: ModularRing>(kind: &GroupKind, seed: u64, len: usize) -> Result<(), TestCaseError> {
    let g1 = sample_word_indexed::<T>(kind, len, seed, 0).unwrap();
    let g2 = sample_word_indexed::<T>(kind, len, seed, 1).unwrap();
    let p = g1.mul(&g2);
    prop_assert!(GroupElem::is_member(kind, &p.m, p.half_turn).ok);
    let inv = g1.inverse();
    prop_assert!(GroupElem::is_member(kind, &inv.m, inv.half_turn).ok);
    prop_assert_eq!(g1.mul(&inv), GroupElem::identity(*kind).unwrap());
    Ok(())
}

fn cocycle_chain<T: ModularRing + orthomod::rings::Commutative>(kind: &GroupKind, seed: u64, len: usize) -> Result<(), TestCaseError> {
    let g1 = sample_word_indexed::<T>(kind, len, seed, 0).unwrap();
    let g2 = sample_word_indexed::<T>(kind, len, seed, 1).unwrap();
    let z = sample_point(&T::proto_for(kind).unwrap(), &mut point_rng(seed, 2), 6);
    let Ok(w) = mobius(&g2, &z) else { return Ok(()) };
    let (Ok(a), Ok(b)) = (cocycle(&g1, &w), cocycle(&g2, &z)) else { return Ok(()) };
    prop_assert_eq!(cocycle(&g1.mul(&g2), &z).unwrap(), a * b);
    Ok(())
}

fn action_chain<T: ModularRing>(kind: &GroupKind, seed: u64, len: usize) -> Result<(), TestCaseError> {
    let g1 = sample_word_indexed::<T>(kind, len, seed, 0).unwrap();
    let g2 = sample_word_indexed::<T>(kind, len, seed, 1).unwrap();
    let z = sample_point(&T::proto_for(kind).unwrap(), &mut point_rng(seed, 2), 6);
    let Ok(w) = mobius(&g2, &z) else { return Ok(()) };
    let Ok(outer) = mobius(&g1, &w) else { return Ok(()) };
    prop_assert_eq!(mobius(&g1.mul(&g2), &z).unwrap(), outer);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn products_and_inverses_stay_in_the_group(seed in any::<u64>(), len in 1usize..14, pick in 0usize..11) {
        match pick {
            0 => closed::<Rational>(&GroupKind::Siegel, seed, len)?,
            1..=7 => closed::<Quad>(&hermitian_kinds()[pick - 1], seed, len)?,
            _ => closed::<Quaternion>(&QUAT_KINDS[pick - 8], seed, len)?,
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cocycle_is_multiplicative(seed in any::<u64>(), len in 1usize..10, pick in 0usize..8) {
        match pick {
            0 => cocycle_chain::<Rational>(&GroupKind::Siegel, seed, len)?,
            _ => cocycle_chain::<Quad>(&hermitian_kinds()[pick - 1], seed, len)?,
        }
    }

    #[test]
    fn action_is_compatible_with_products(seed in any::<u64>(), len in 1usize..10, pick in 0usize..11) {
        match pick {
            0 => action_chain::<Rational>(&GroupKind::Siegel, seed, len)?,
            1..=7 => action_chain::<Quad>(&hermitian_kinds()[pick - 1], seed, len)?,
            _ => action_chain::<Quaternion>(&QUAT_KINDS[pick - 8], seed, len)?,
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn det_mod_p_classifies_the_cosets(seed in any::<u64>(), len in 1usize..14) {
        let kind = GroupKind::QuatSp;
        let g = sample_word_indexed::<Quaternion>(&kind, len, seed, 0).unwrap();
        let d = det_mod_wp(&g.m).unwrap();
        prop_assert!(d != F4::Zero);
        let w = Quaternion::omega();
        let omega_i = GroupElem::new(kind, rotation(&Mat::diag(&[w.clone(), w])), false).unwrap();
        prop_assert_eq!(det_mod_wp(&omega_i.mul(&g).m).unwrap(), d * F4::Omega);
        let special = GroupElem::is_member(&GroupKind::QuatSpecial, &g.m, false).ok;
        prop_assert_eq!(special, d == F4::One);
    }
}
