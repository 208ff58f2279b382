mod common;

use common::{equal_up_to_sign, oracle_lift};
use orthomod::isogeny::{lift, Liftable};
use orthomod::rings::{Quad, Quaternion, Rational};
use orthomod::symplectic::{sample_word_indexed, GroupElem, GroupKind};

fn agree<T: Liftable>(g: &GroupElem<T>, seed: u64) {
    let expected = oracle_lift(g, seed).expect("oracle determines the image");
    let mt = lift(g).unwrap();
    assert!(equal_up_to_sign(&expected, mt.matrix()), "{g}\nlift {}\noracle {}", mt.matrix(), expected);
}

#[test]
fn siegel_lifts_match_the_mobius_action() {
    for i in 0..25 {
        agree(&sample_word_indexed::<Rational>(&GroupKind::Siegel, 8, 11, i).unwrap(), i);
    }
}

#[test]
fn hermitian_lifts_match_the_mobius_action() {
    for m in [1, 2, 3, 5, 7, 11, 15] {
        let kind = GroupKind::hermitian(m).unwrap();
        for i in 0..6 {
            agree(&sample_word_indexed::<Quad>(&kind, 8, 12, i).unwrap(), i);
        }
    }
}

#[test]
fn quaternionic_lifts_match_the_mobius_action() {
    for kind in [GroupKind::QuatSp, GroupKind::QuatSpecial, GroupKind::QuatExtended] {
        for i in 0..8 {
            agree(&sample_word_indexed::<Quaternion>(&kind, 8, 13, i).unwrap(), i);
        }
    }
}

#[test]
fn half_turn_lifts_match_the_mobius_action() {
    let kind = GroupKind::QuatExtended;
    let mut seen = 0;
    for i in 0..40 {
        let g = sample_word_indexed::<Quaternion>(&kind, 6, 14, i).unwrap();
        if g.half_turn {
            agree(&g, i);
            seen += 1;
        }
    }
    assert!(seen > 0);
}
