#![allow(dead_code)]

use std::sync::Arc;

use wonderful::{CartanDatum, CoxeterSystem, SimpleSubset, WElem};

pub fn sys(label: &str) -> Arc<CoxeterSystem> {
    Arc::new(CoxeterSystem::build(CartanDatum::from_label(label).unwrap()).unwrap())
}

pub fn w(s: &CoxeterSystem, word: &[usize]) -> WElem {
    s.from_word(word)
}

pub fn j(ids: &[usize]) -> SimpleSubset {
    ids.iter().copied().collect()
}
