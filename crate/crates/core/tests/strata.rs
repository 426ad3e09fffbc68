mod common;

use common::{j, sys, w};
use wonderful::strata::Measure;
use wonderful::{DiagramAutomorphism, QuadrupleShadow, SimpleSubset, StratumKind, StratumRef, WonderfulContext};

fn a2() -> WonderfulContext {
    WonderfulContext::untwisted(sys("A2"))
}

fn a2_flip() -> WonderfulContext {
    let s = sys("A2");
    let flip = DiagramAutomorphism::parse(s.cartan(), "1,0").unwrap();
    WonderfulContext::new(s, flip).unwrap()
}

#[test]
fn quadruple_of_orbit() {
    let c = a2();
    let s = c.sys();
    let q = c.wonderful_quadruple(SimpleSubset::EMPTY);
    assert!(q.j.is_empty() && q.jp.is_empty() && q.c.iter().all(Option::is_none));
    let q = c.wonderful_quadruple(s.full_subset());
    assert_eq!((q.j, q.jp), (s.full_subset(), s.full_subset()));
    assert_eq!(q.c, vec![Some(0), Some(1)]);
    let q = c.wonderful_quadruple(j(&[0]));
    assert_eq!((q.j, q.jp), (j(&[1]), j(&[0])));
}

#[test]
fn counts() {
    let c = a2();
    assert_eq!(c.enumerate_strata(StratumKind::GxG).len(), 4);
    assert_eq!(c.enumerate_strata(StratumKind::BB).len(), 78);
    assert_eq!(c.enumerate_strata(StratumKind::Piece).len(), 13);
}

#[test]
fn codimensions() {
    let c = a2();
    let s = c.sys();
    let piece = StratumRef::piece(s, j(&[0]), w(s, &[1]));
    assert_eq!(c.codim(&piece).unwrap(), Measure::Codim(1));
    let bb = StratumRef::pair(StratumKind::BB, SimpleSubset::EMPTY, w(s, &[0]), w(s, &[1]));
    assert_eq!(c.codim(&bb).unwrap(), Measure::Codim(3));
    let bmb = StratumRef::pair(StratumKind::BmB, s.full_subset(), s.identity(), s.identity());
    assert_eq!(c.codim(&bmb).unwrap(), Measure::Codim(0));
    assert_eq!(c.codim(&StratumRef::orbit(s, SimpleSubset::EMPTY)).unwrap(), Measure::Dim(6));
    assert!(c.codim(&StratumRef::fpiece(s, SimpleSubset::EMPTY, s.identity())).is_err());
}

#[test]
fn closures() {
    let c = a2();
    let s = c.sys();
    for kind in [StratumKind::BB, StratumKind::Piece, StratumKind::GxG] {
        for x in c.enumerate_strata(kind) {
            assert!(c.closure_leq(&x, &x).unwrap());
        }
    }
    let big = StratumRef::pair(StratumKind::BB, j(&[0]), w(s, &[1]), s.identity());
    let small = StratumRef::pair(StratumKind::BB, SimpleSubset::EMPTY, w(s, &[1, 0]), w(s, &[0]));
    assert!(c.closure_leq(&big, &small).unwrap());
    let small = StratumRef::pair(StratumKind::BB, SimpleSubset::EMPTY, s.identity(), s.longest());
    assert!(!c.closure_leq(&big, &small).unwrap());
}

#[test]
fn twisted_classes() {
    let c = a2();
    let s = c.sys();
    for x in s.elements() {
        let (class, mins) = c.min_twisted_class(SimpleSubset::EMPTY, x, &c.delta);
        assert_eq!((class, mins), (vec![x.clone()], vec![x.clone()]));
    }
    let (class, mins) = c.min_twisted_class(j(&[0]), &w(s, &[1]), &c.delta);
    assert_eq!(class, vec![w(s, &[1]), s.longest()]);
    assert_eq!(mins, vec![w(s, &[1])]);
    let f = a2_flip();
    let (class, mins) = f.min_twisted_class(s.full_subset(), &s.identity(), &f.delta);
    assert_eq!(class, vec![s.identity(), w(s, &[0, 1]), w(s, &[1, 0])]);
    assert_eq!(mins, vec![s.identity()]);
}

#[test]
fn compactification_criteria() {
    let c = a2();
    let s = c.sys();
    let (e, s1, s2) = (s.identity(), w(s, &[0]), w(s, &[1]));
    let j1 = j(&[0]);
    assert!(c.nonempty_bb_bmbm(j1, &e, &e, &e, &e).unwrap());
    assert!(!c.nonempty_bb_bmbm(j1, &s2, &e, &e, &e).unwrap());
    for jj in SimpleSubset::all(2) {
        for u in s.min_right_reps(jj) {
            for v in s.elements() {
                assert!(c.nonempty_bb_bmbm(jj, &e, &s.longest(), &u, v).unwrap());
            }
        }
        for x in s.min_right_reps(jj) {
            for y in s.elements() {
                assert!(c.nonempty_piece_bmb(jj, &e, &x, y).unwrap());
            }
        }
    }
    assert!(c.nonempty_piece_bmb(j1, &s2, &s2, &e).unwrap());
    assert!(!c.nonempty_piece_bmb(j1, &s2, &e, &e).unwrap());
    assert!(c.nonempty_piece_bmb(j1, &s1, &e, &e).is_err());
}

#[test]
fn quadruple_criteria() {
    let c = a2();
    let s = c.sys();
    let (e, s1, s2) = (s.identity(), w(s, &[0]), w(s, &[1]));
    let q = QuadrupleShadow::diagonal(s, j(&[0]), c.delta.clone());
    for x in s.min_right_reps(q.j) {
        for y in s.elements() {
            assert!(q.nonempty_bb_bmbm(s, &x, y, &e, &e).unwrap());
        }
    }
    assert!(!q.nonempty_bb_bmbm(s, &e, &e, &s2, &e).unwrap());
    assert!(q.nonempty_bb_bmbm(s, &s2, &e, &e, &s1).unwrap());
    assert!(q.nonempty_piece_bmb(s, &s2, &e, &e).unwrap());
    assert!(!q.nonempty_piece_bmb(s, &e, &s2, &e).unwrap());
    let q0 = QuadrupleShadow::diagonal(s, SimpleSubset::EMPTY, c.delta.clone());
    for x in s.elements() {
        for y in s.elements() {
            assert!(q0.nonempty_piece_bmb(s, &s.longest(), x, y).unwrap());
        }
    }
}

#[test]
fn w_xy_examples() {
    let c = a2();
    let s = c.sys();
    let (e, s2) = (s.identity(), w(s, &[1]));
    let q = QuadrupleShadow::diagonal(s, j(&[0]), c.delta.clone());
    assert_eq!(q.w_xy(s, &e, &e), e);
    assert_eq!(q.w_xy(s, &s2, &e), s2);
    assert_eq!(q.w_xy(s, &s2, &s2), e);
}

#[test]
fn flag_projection() {
    let c = a2();
    let s = c.sys();
    let (e, s2) = (s.identity(), w(s, &[1]));
    let q = QuadrupleShadow::diagonal(s, j(&[0]), c.delta.clone());
    assert!(!q.flag_projection_nonempty(s, &e, &s2, &e).unwrap());
    assert!(q.flag_projection_nonempty(s, &s2, &s2, &e).unwrap());
    let q0 = QuadrupleShadow::diagonal(s, SimpleSubset::EMPTY, c.delta.clone());
    for x in s.elements() {
        for y in s.elements() {
            assert!(q0.flag_projection_nonempty(s, &s.longest(), x, y).unwrap());
        }
    }
}

#[test]
fn shadows() {
    let c = a2();
    assert_eq!(QuadrupleShadow::all(c.sys(), &c.delta).len(), 7);
    let b = WonderfulContext::untwisted(sys("B2"));
    assert_eq!(QuadrupleShadow::all(b.sys(), &b.delta).len(), 4);
    let s = c.sys();
    assert!(QuadrupleShadow::new(s, j(&[0]), j(&[1]), vec![Some(1), None], c.delta.clone()).is_ok());
    assert!(QuadrupleShadow::new(b.sys(), j(&[0]), j(&[1]), vec![Some(1), None], b.delta.clone()).is_err());
}
