mod common;

use common::{sys, w};
use wonderful::oracle::{brute_demazure_family, run_suite, BruhatTable, SuiteConfig};

#[test]
fn bruhat_tables() {
    let t = BruhatTable::build(&sys("A1")).unwrap();
    assert_eq!(t.strict_relations(), 1);
    assert!(t.leq(0, 1) && !t.leq(1, 0));
    assert_eq!(BruhatTable::build(&sys("A2")).unwrap().strict_relations(), 13);
    let s = sys("B2");
    let t = BruhatTable::build(&s).unwrap();
    for (a, x) in s.elements().iter().enumerate() {
        for (b, y) in s.elements().iter().enumerate() {
            assert_eq!(t.leq(a, b), s.bruhat_leq(x, y));
        }
    }
}

#[test]
fn demazure_family() {
    let s = sys("A2");
    let t = BruhatTable::build(&s).unwrap();
    for b in 0..s.order() {
        assert_eq!(brute_demazure_family(&t, 0, b).unwrap(), (b, b, 0));
    }
    let x = s.index_of(&w(&s, &[0, 1])).unwrap();
    let y = s.index_of(&w(&s, &[1, 0])).unwrap();
    let w0 = s.index_of(&s.longest()).unwrap();
    assert_eq!(brute_demazure_family(&t, x, y).unwrap().0, w0);
    let s = sys("A3");
    let t = BruhatTable::build(&s).unwrap();
    for (a, x) in s.elements().iter().enumerate() {
        for (b, y) in s.elements().iter().enumerate() {
            let (star, tl, tr) = brute_demazure_family(&t, a, b).unwrap();
            assert_eq!(s.elements()[star], s.demazure(x, y));
            assert_eq!(s.elements()[tl], s.tri_left(x, y));
            assert_eq!(s.elements()[tr], s.tri_right(x, y));
        }
    }
}

#[test]
fn suites() {
    let r = run_suite("appendix", &SuiteConfig::new(sys("A2"))).unwrap();
    assert!(r.passed());
    assert_eq!(r.cases, 4059);
    let r = run_suite("monoid", &SuiteConfig::new(sys("B3"))).unwrap();
    assert!(r.passed());
    assert_eq!(r.tally(|c| c == "demazure").cases, 48 * 48);
    let r = run_suite("all", &SuiteConfig::new(sys("A1"))).unwrap();
    assert!(r.passed());
    assert!(r.wall_time_us.unwrap() < 1_000_000);
}
