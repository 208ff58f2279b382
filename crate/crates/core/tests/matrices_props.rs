mod common;

use common::strategies::{field, hurwitz, quad};
use num_bigint::BigInt;
use proptest::prelude::*;

use orthomod::matrices::{adjoint2, det2, det_vee, hurwitz_elementary_divisors, lemma2_checks, z_lattice_image, Mat};
use orthomod::rings::{rat, ratio, Quaternion, Rational};
use orthomod::symplectic::{sample_word_indexed, GroupKind};

fn unimodular(u: &Mat<Quaternion>) -> bool {
    u.is_integral() && u.inverse().map(|w| w.is_integral()).unwrap_or(false)
}

fn rational_matrix() -> impl Strategy<Value = Mat<Rational>> {
    (proptest::array::uniform4(-20i64..=20), 1i64..=5)
        .prop_map(|(c, d)| Mat::from_rows(vec![vec![ratio(c[0], d), ratio(c[1], d)], vec![ratio(c[2], d), ratio(c[3], d)]]))
}

/// Row operations `rᵢ += k·rⱼ` and swaps applied to `S`.
fn row_ops(s: &Mat<BigInt>, ops: &[(usize, usize, i64)]) -> Mat<BigInt> {
    let mut rows = s.to_rows();
    let n = rows.len();
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        if k == 0 {
            rows.swap(i, j);
        } else {
            let add: Vec<BigInt> = rows[j].iter().map(|x| x * k).collect();
            for (a, b) in rows[i].iter_mut().zip(add) {
                *a += b;
            }
        }
    }
    Mat::from_rows(rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_adjoint_identity(x in rational_matrix()) {
        let d = det2(&x).unwrap();
        prop_assert_eq!(&x * &adjoint2(&x).unwrap(), Mat::diag(&[d.clone(), d]));
    }

    #[test]
    fn quadratic_adjoint_identity(e in field().prop_flat_map(|k| proptest::collection::vec(quad(k, 30), 4))) {
        let x = Mat::from_rows(vec![vec![e[0].clone(), e[1].clone()], vec![e[2].clone(), e[3].clone()]]);
        let d = det2(&x).unwrap();
        prop_assert_eq!(&x * &adjoint2(&x).unwrap(), Mat::diag(&[d.clone(), d]));
    }

    #[test]
    fn hermitian_determinant_squares_to_vee_determinant(a in -30i64..=30, c in -30i64..=30, b in hurwitz(10)) {
        let x = Mat::from_rows(vec![
            vec![Quaternion::from_rational(rat(a)), b.clone()],
            vec![b.conjugate(), Quaternion::from_rational(rat(c))],
        ]);
        let det = rat(a * c) - b.norm();
        prop_assert_eq!(det_vee(&x).unwrap(), det.clone() * det);
    }

    #[test]
    fn lattice_image_ignores_unimodular_row_operations(
        entries in proptest::collection::vec(-12i64..=12, 9),
        ops in proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..12),
    ) {
        let s = Mat::<BigInt>::from_i64(&entries.chunks(3).map(|r| r.to_vec()).collect::<Vec<_>>());
        let t = row_ops(&s, &ops);
        prop_assert_eq!(z_lattice_image(&s, None, None).lattice, z_lattice_image(&t, None, None).lattice);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn elementary_divisors_reconstruct(e in proptest::collection::vec(hurwitz(6), 4)) {
        let x = Mat::from_rows(vec![vec![e[0].clone(), e[1].clone()], vec![e[2].clone(), e[3].clone()]]);
        prop_assume!(det_vee(&x).unwrap() != rat(0));
        let ed = hurwitz_elementary_divisors(&x).unwrap();
        prop_assert!(unimodular(&ed.u) && unimodular(&ed.v));
        prop_assert_eq!(&(&ed.u * &x) * &ed.v, ed.d.clone());
        prop_assert!(ed.d[(0, 1)].is_zero() && ed.d[(1, 0)].is_zero());
    }

    #[test]
    fn symplectic_blocks_satisfy_the_block_lemma(seed in any::<u64>(), len in 1usize..16) {
        let g = sample_word_indexed::<Quaternion>(&GroupKind::QuatSp, len, seed, 0).unwrap();
        for x in g.blocks() {
            if det_vee(&x).unwrap() != rat(0) {
                let r = lemma2_checks(&x).unwrap();
                prop_assert!(r.passed(), "{:?}", r);
            }
        }
    }
}
