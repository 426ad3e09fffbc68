mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use wonderful::wire::StratumRecord;
use wonderful::{CoxeterSystem, DiagramAutomorphism, Side, SimpleSubset, StratumKind, StratumRef, WonderfulContext};

fn systems() -> &'static [Arc<CoxeterSystem>] {
    static S: OnceLock<Vec<Arc<CoxeterSystem>>> = OnceLock::new();
    S.get_or_init(|| ["A4", "B3", "D4", "G2"].iter().map(|l| common::sys(l)).collect())
}

/// A system and element indices into it.
fn pick(k: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..systems().len()).prop_flat_map(move |i| {
        let n = systems()[i].order();
        (Just(i), proptest::collection::vec(0..n, k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduced_words_round_trip((i, e) in pick(1)) {
        let s = &systems()[i];
        let x = &s.elements()[e[0]];
        let word = s.reduced_word(x);
        prop_assert_eq!(word.len(), x.length());
        prop_assert_eq!(&s.from_word(&word), x);
    }

    #[test]
    fn demazure_bounds((i, e) in pick(3)) {
        let s = &systems()[i];
        let (x, y, z) = (&s.elements()[e[0]], &s.elements()[e[1]], &s.elements()[e[2]]);
        let st = s.demazure(x, y);
        prop_assert!(s.bruhat_leq(x, &st) && s.bruhat_leq(y, &st));
        prop_assert!(st.length() <= x.length() + y.length());
        prop_assert!(st.length() >= s.mul(x, y).length());
        prop_assert_eq!(s.demazure(&st, z), s.demazure(x, &s.demazure(y, z)));
    }

    #[test]
    fn triangle_products((i, e) in pick(2)) {
        let s = &systems()[i];
        let (x, y) = (&s.elements()[e[0]], &s.elements()[e[1]]);
        let tl = s.tri_left(x, y);
        let tr = s.tri_right(x, y);
        prop_assert!(s.bruhat_leq(&tl, y));
        prop_assert!(s.bruhat_leq(&tr, x));
        prop_assert_eq!(tr.inverse(), s.tri_left(&y.inverse(), &x.inverse()));
        prop_assert_eq!(s.tri_left(&s.longest(), y), s.identity());
    }

    #[test]
    fn bruhat_symmetries((i, e) in pick(2)) {
        let s = &systems()[i];
        let (x, y) = (&s.elements()[e[0]], &s.elements()[e[1]]);
        let w0 = s.longest();
        let leq = s.bruhat_leq(x, y);
        prop_assert_eq!(leq, s.bruhat_leq(&x.inverse(), &y.inverse()));
        prop_assert_eq!(leq, s.bruhat_leq(&s.mul(&w0, y), &s.mul(&w0, x)));
        prop_assert_eq!(leq, s.bruhat_leq(&s.mul(y, &w0), &s.mul(x, &w0)));
        for d in DiagramAutomorphism::all(s.cartan()) {
            prop_assert_eq!(leq, s.bruhat_leq(&d.apply(x), &d.apply(y)));
        }
    }

    #[test]
    fn cosets((i, e) in pick(1), bits in any::<u32>()) {
        let s = &systems()[i];
        let x = &s.elements()[e[0]];
        let j = SimpleSubset::from_bits(bits).intersection(s.full_subset());
        let d = s.coset_decompose(x, j);
        prop_assert_eq!(&s.mul(&d.minimal_part, &d.parabolic_part), x);
        prop_assert_eq!(d.minimal_part.length() + d.parabolic_part.length(), x.length());
        prop_assert!(s.is_min_right(&d.minimal_part, j));
        let top = s.coset_max(x, j, Side::Right);
        prop_assert_eq!(top.length(), d.minimal_part.length() + s.longest_element(j).length());
        let lmin = s.coset_min(x, j, Side::Left);
        prop_assert_eq!(lmin.inverse(), s.coset_min(&x.inverse(), j, Side::Right));
    }

    #[test]
    fn strata_round_trip((i, e) in pick(2), bits in any::<u32>(), k in 0usize..4) {
        let s = systems()[i].clone();
        let ctx = WonderfulContext::untwisted(s.clone());
        let j = SimpleSubset::from_bits(bits).intersection(s.full_subset());
        let x = s.coset_min(&s.elements()[e[0]], j, Side::Right);
        let y = s.elements()[e[1]].clone();
        let st = match k {
            0 => StratumRef::orbit(&s, j),
            1 => StratumRef::piece(&s, j, x),
            2 => StratumRef::pair(StratumKind::BB, j, x, y),
            _ => StratumRef::pair(StratumKind::BmBm, j, x, y),
        };
        let rec = StratumRecord::new(&ctx, &st);
        let text = serde_json::to_string(&rec).unwrap();
        let back: StratumRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(back.to_stratum(&ctx).unwrap(), st);
    }
}
