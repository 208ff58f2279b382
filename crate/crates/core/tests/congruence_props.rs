use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

use orthomod::congruence::{
    construct_member, default_grid, in_subgroup, paired_kernel_test, verify_theorem, SubgroupSpec, TheoremId, Witness,
};
use orthomod::element::{AnyElem, ElemRing};
use orthomod::isogeny::lift;
use orthomod::matrices::Mat;
use orthomod::rings::{Quad, Quaternion, Rational, F4};
use orthomod::symplectic::{rotation, sample_word_indexed, GroupElem, GroupKind, ModularRing};

const THEOREMS: [TheoremId; 7] =
    [TheoremId::Thm1b, TheoremId::Thm1c, TheoremId::Thm2b, TheoremId::Thm2c, TheoremId::Thm3, TheoremId::Cor1, TheoremId::Cor2];

fn all_specs() -> Vec<SubgroupSpec> {
    THEOREMS.iter().flat_map(|&t| default_grid(t)).collect()
}

fn even_quat_level(spec: &SubgroupSpec) -> bool {
    matches!(spec, SubgroupSpec::QuatLevel { level } if level % 2 == 0)
}

fn member(spec: &SubgroupSpec, seed: u64, index: u64) -> AnyElem {
    fn go<T: ElemRing>(spec: &SubgroupSpec, seed: u64, index: u64) -> AnyElem {
        T::wrap(construct_member::<T>(spec, seed, index).unwrap())
    }
    match spec.ambient().unwrap() {
        GroupKind::Siegel => go::<Rational>(spec, seed, index),
        GroupKind::Hermitian(_) => go::<Quad>(spec, seed, index),
        _ => go::<Quaternion>(spec, seed, index),
    }
}

fn is_one_mod(x: &BigInt, n: u32) -> bool {
    (x * x - BigInt::one()).is_multiple_of(&BigInt::from(n))
}

fn integral(x: &Rational) -> BigInt {
    assert!(x.is_integer());
    x.to_integer()
}

fn divisible(x: &Rational, n: u32) -> bool {
    integral(x).is_multiple_of(&BigInt::from(n))
}

fn siegel_level_one(m: &Mat<Rational>, level: u32) -> bool {
    let det = |i: usize| m[(i, i)].clone() * m[(i + 1, i + 1)].clone() - m[(i, i + 1)].clone() * m[(i + 1, i)].clone();
    let c_vanishes = (2..4).all(|i| (0..2).all(|j| divisible(&m[(i, j)], level)));
    c_vanishes && divisible(&(det(0) - Rational::one()), level) && divisible(&(det(2) - Rational::one()), level)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn witnesses_are_units(spec in prop::sample::select(all_specs()), seed in any::<u64>(), index in 0u64..1000) {
        let c = in_subgroup(&spec, &member(&spec, seed, index)).unwrap();
        prop_assert!(c.member, "{:?}", c);
        match (&spec, c.witness.unwrap()) {
            (SubgroupSpec::SiegelLevel { n, .. }, Witness::Int(e)) => prop_assert!(is_one_mod(&e, *n)),
            (SubgroupSpec::PrincipalSiegel { level }
            | SubgroupSpec::PrincipalHermitian { level, .. }
            | SubgroupSpec::IdealPrincipal { level, .. }
            | SubgroupSpec::QuatLevel { level }, Witness::Int(e)) => prop_assert!(is_one_mod(&e, *level)),
            (SubgroupSpec::HermitianLevel { n, .. }, Witness::Quad(e)) => {
                let norm = e.clone() * e.conjugate() - e.field.one();
                prop_assert!(norm.order_coords().iter().all(|c| divisible(c, *n)));
            }
            (SubgroupSpec::WpPrincipal, Witness::F4(e)) => prop_assert!([F4::One, F4::Omega, F4::OmegaBar].contains(&e)),
            (s, w) => prop_assert!(false, "witness {} for {}", w, s),
        }
    }

    #[test]
    fn members_lift_into_the_paired_kernel(spec in prop::sample::select(all_specs()), seed in any::<u64>(), index in 0u64..1000) {
        let g = member(&spec, seed, index);
        prop_assert!(paired_kernel_test(&spec, &g.lift().unwrap()).unwrap());
    }

    #[test]
    fn principal_siegel_witness_is_the_scalar(level in prop::sample::select(vec![2u32, 3, 4, 6, 12]), seed in any::<u64>(), index in 0u64..1000) {
        let spec = SubgroupSpec::PrincipalSiegel { level };
        let AnyElem::Siegel(g) = member(&spec, seed, index) else { unreachable!() };
        let Some(Witness::Int(e)) = in_subgroup(&spec, &AnyElem::Siegel(g.clone())).unwrap().witness else { unreachable!() };
        let e = Rational::from_integer(e);
        for i in 0..4 {
            for j in 0..4 {
                let x = if i == j { g.m[(i, j)].clone() - e.clone() } else { g.m[(i, j)].clone() };
                prop_assert!(divisible(&x, level));
            }
        }
    }

    #[test]
    fn principal_level_refines_the_siegel_level(
        (n, level) in prop::sample::select(vec![(1u32, 2u32), (2, 2), (2, 4), (3, 6), (3, 3)]),
        seed in any::<u64>(),
        index in 0u64..1000,
    ) {
        let g = member(&SubgroupSpec::PrincipalSiegel { level: n * level }, seed, index);
        let target = SubgroupSpec::SiegelLevel { n, level };
        prop_assert!(in_subgroup(&target, &g).unwrap().member);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn level_one_divisor_matches_the_entry_conditions(
        level in prop::sample::select(vec![2u32, 3, 4, 5, 6]),
        seed in any::<u64>(),
        len in 0usize..3,
    ) {
        let spec = SubgroupSpec::SiegelLevel { n: 1, level };
        let AnyElem::Siegel(g) = member(&spec, seed, 0) else { unreachable!() };
        let g = g.mul(&sample_word_indexed::<Rational>(&GroupKind::Siegel, len, seed, 1).unwrap());
        let expected = siegel_level_one(&g.m, level);
        prop_assert_eq!(in_subgroup(&spec, &AnyElem::Siegel(g)).unwrap().member, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn kernel_elements_satisfy_the_congruences(
        spec in prop::sample::select(all_specs().into_iter().filter(|s| !even_quat_level(s)).collect::<Vec<_>>()),
        seed in any::<u64>(),
    ) {
        let r = verify_theorem(&spec, 24, seed).unwrap();
        prop_assert!(r.passed(), "{}: {:?}", spec, r.failures.first().map(|f| &f.reason));
    }
}

#[test]
fn even_quaternionic_kernel_admits_non_members() {
    let r = GroupElem::new(GroupKind::QuatSpecial, rotation(&Mat::diag(&[Quaternion::one(), -Quaternion::one()])), false).unwrap();
    let mt = lift(&r).unwrap();
    for level in [2, 4] {
        let spec = SubgroupSpec::QuatLevel { level };
        let c = in_subgroup(&spec, &AnyElem::Quat(r.clone())).unwrap();
        assert_eq!(c.member, false);
        assert_eq!(paired_kernel_test(&spec, &mt).unwrap(), level == 2);
    }
    let odd = SubgroupSpec::QuatLevel { level: 3 };
    assert!(!in_subgroup(&odd, &AnyElem::Quat(r)).unwrap().member);
    assert!(!paired_kernel_test(&odd, &mt).unwrap());
}
