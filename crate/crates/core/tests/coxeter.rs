mod common;

use common::{j, sys, w};
use wonderful::{CartanDatum, CoxeterSystem, DiagramAutomorphism, SimpleSubset};

#[test]
fn build_small_types() {
    for (label, roots, order) in [("A1", 1, 2), ("A2", 3, 6), ("B2", 4, 8)] {
        let s = sys(label);
        assert_eq!(s.positive_roots().len(), roots, "{label}");
        assert_eq!(s.order(), order, "{label}");
    }
}

#[test]
fn bad_input_rejected() {
    assert!(CartanDatum::from_label("Z9").is_err());
    let affine = CartanDatum::new(vec![vec![2, -2], vec![-2, 2]], None).unwrap();
    assert!(CoxeterSystem::build(affine).is_err());
}

#[test]
fn multiplication() {
    let s = sys("A2");
    let x = w(&s, &[0, 1]);
    assert_eq!(s.mul(&s.identity(), &x), x);
    assert!(s.mul(&w(&s, &[0]), &w(&s, &[0])).is_identity());
    assert!(s.mul(&x, &w(&s, &[1, 0])).is_identity());
    let b2 = sys("B2");
    assert!(b2.checked_mul(&x, &b2.identity()).is_err());
}

#[test]
fn lengths() {
    let s = sys("A2");
    assert_eq!(s.identity().length(), 0);
    assert_eq!(s.longest().length(), 3);
    assert_eq!(w(&s, &[0, 1]).length(), 2);
}

#[test]
fn reduced_words() {
    let s = sys("A2");
    assert!(s.reduced_word(&s.identity()).is_empty());
    assert_eq!(s.reduced_word(&s.longest()), vec![0, 1, 0]);
    assert_eq!(s.reduced_word(&w(&s, &[1, 0])), vec![1, 0]);
}

#[test]
fn bruhat() {
    let s = sys("A2");
    assert!(s.elements().iter().all(|x| s.bruhat_leq(&s.identity(), x)));
    assert!(s.bruhat_leq(&w(&s, &[0]), &w(&s, &[1, 0])));
    assert!(!s.bruhat_leq(&w(&s, &[0]), &w(&s, &[1])));
}

#[test]
fn longest_parabolic() {
    let s = sys("A2");
    assert!(s.longest_element(SimpleSubset::EMPTY).is_identity());
    assert_eq!(s.longest_element(j(&[0])), w(&s, &[0]));
    assert_eq!(s.longest_element(s.full_subset()), w(&s, &[0, 1, 0]));
}

#[test]
fn automorphisms() {
    let s = sys("A2");
    let x = w(&s, &[0, 1]);
    assert_eq!(DiagramAutomorphism::identity(2).apply(&x), x);
    let flip = DiagramAutomorphism::parse(s.cartan(), "1,0").unwrap();
    assert_eq!(flip.apply(&x), w(&s, &[1, 0]));
    for label in ["A2", "A3", "B2", "A1xA1"] {
        let s = sys(label);
        for d in DiagramAutomorphism::all(s.cartan()) {
            assert_eq!(d.apply(&s.longest()), s.longest());
        }
    }
    assert!(DiagramAutomorphism::parse(sys("B2").cartan(), "1,0").is_err());
}

#[test]
fn inverses() {
    let s = sys("A2");
    assert!(s.identity().inverse().is_identity());
    assert_eq!(w(&s, &[0, 1]).inverse(), w(&s, &[1, 0]));
    assert_eq!(s.longest().inverse(), s.longest());
}
