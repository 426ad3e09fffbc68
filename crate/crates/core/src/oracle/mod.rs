//! Brute-force reference implementations. Nothing here calls the fast
//! Bruhat test or the word scans: the order comes from subword products of
//! reduced words, and the monoid operations from downset extrema.

mod suites;

pub use suites::{brute_refined_count, run_suite, SuiteConfig, SweepFailure, SweepResult, Tally, SUITES};

use fixedbitset::FixedBitSet;

use crate::coxeter::{CoxeterSystem, WElem};
use crate::error::{Error, Result};
use crate::subset::SimpleSubset;

/// Largest group the oracle tabulates.
pub const ORACLE_CAP: usize = 2000;

/// Bruhat order of a whole group, indexed by position in the ShortLex
/// enumeration, together with a full multiplication table.
#[derive(Debug, Clone)]
pub struct BruhatTable {
    /// `downsets[y]` holds every `x <= y`.
    downsets: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    lengths: Vec<usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl BruhatTable {
    pub fn build(sys: &CoxeterSystem) -> Result<Self> {
        let n = sys.order();
        if n > ORACLE_CAP {
            return Err(Error::GroupTooLarge { cap: ORACLE_CAP });
        }
        let elems = sys.elements();
        let idx = |w: &WElem| sys.index_of(w).expect("closed under multiplication") as u32;
        let mut mul = vec![0u32; n * n];
        for (a, x) in elems.iter().enumerate() {
            for (b, y) in elems.iter().enumerate() {
                mul[a * n + b] = idx(&sys.mul(x, y));
            }
        }
        let gens: Vec<usize> = (0..sys.rank()).map(|i| idx(sys.generator(i)) as usize).collect();
        let inv: Vec<u32> = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).expect("identity is element 0") as u32)
            .collect();
        let lengths: Vec<usize> = elems.iter().map(WElem::length).collect();
        let downsets: Vec<FixedBitSet> = elems
            .iter()
            .map(|y| {
                let mut set = FixedBitSet::with_capacity(n);
                set.insert(0);
                for &s in &sys.reduced_word(y) {
                    let cur: Vec<usize> = set.ones().collect();
                    for a in cur {
                        set.insert(mul[a * n + gens[s]] as usize);
                    }
                }
                set
            })
            .collect();
        let mut covers = Vec::new();
        for y in 0..n {
            for x in downsets[y].ones() {
                if lengths[x] + 1 == lengths[y] {
                    covers.push((x, y));
                }
            }
        }
        Ok(BruhatTable { downsets, covers, lengths, mul, inv })
    }

    pub fn order(&self) -> usize {
        self.downsets.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.downsets[y].contains(x)
    }

    pub fn downset(&self, y: usize) -> &FixedBitSet {
        &self.downsets[y]
    }

    /// Covering pairs `(x, y)` with `x < y`, `l(y) = l(x) + 1`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn length(&self, x: usize) -> usize {
        self.lengths[x]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Number of strict relations `x < y`.
    pub fn strict_relations(&self) -> usize {
        self.downsets.iter().map(|d| d.count_ones(..) - 1).sum()
    }

    /// The unique maximum of a set, if it exists.
    pub fn unique_max(&self, set: &[usize]) -> Option<usize> {
        let m = *set.iter().max_by_key(|&&a| self.lengths[a])?;
        set.iter().all(|&a| self.leq(a, m)).then_some(m)
    }

    pub fn unique_min(&self, set: &[usize]) -> Option<usize> {
        let m = *set.iter().min_by_key(|&&a| self.lengths[a])?;
        set.iter().all(|&a| self.leq(m, a)).then_some(m)
    }

    /// Indices of `W_J`.
    pub fn parabolic(&self, sys: &CoxeterSystem, j: SimpleSubset) -> Vec<usize> {
        (0..self.order()).filter(|&a| sys.in_parabolic(&sys.elements()[a], j)).collect()
    }
}

/// `(x * y, x ▷ y, x ◁ y)` as downset extrema. Errors if an extremum is not
/// unique.
pub fn brute_demazure_family(table: &BruhatTable, x: usize, y: usize) -> Result<(usize, usize, usize)> {
    let left: Vec<usize> = table.downset(x).ones().map(|u| table.mul(u, y)).collect();
    let right: Vec<usize> = table.downset(y).ones().map(|v| table.mul(x, v)).collect();
    let star = table
        .unique_max(&left)
        .ok_or_else(|| Error::Falsified(format!("no unique maximum of u y (x={x}, y={y})")))?;
    let star_r = table
        .unique_max(&right)
        .ok_or_else(|| Error::Falsified(format!("no unique maximum of x v (x={x}, y={y})")))?;
    if star != star_r {
        return Err(Error::Falsified(format!("left and right maxima differ (x={x}, y={y})")));
    }
    let tl = table
        .unique_min(&left)
        .ok_or_else(|| Error::Falsified(format!("no unique minimum of u y (x={x}, y={y})")))?;
    let tr = table
        .unique_min(&right)
        .ok_or_else(|| Error::Falsified(format!("no unique minimum of x v (x={x}, y={y})")))?;
    Ok((star, tl, tr))
}

/// `(min, max)` of `W_{left} x W_{right}` by enumeration.
pub fn brute_double_coset(table: &BruhatTable, x: usize, left: &[usize], right: &[usize]) -> Result<(usize, usize)> {
    let mut coset: Vec<usize> = left
        .iter()
        .flat_map(|&a| right.iter().map(move |&b| (a, b)))
        .map(|(a, b)| table.mul(table.mul(a, x), b))
        .collect();
    coset.sort_unstable();
    coset.dedup();
    let lo = table.unique_min(&coset).ok_or_else(|| Error::Falsified(format!("double coset of {x} has no minimum")))?;
    let hi = table.unique_max(&coset).ok_or_else(|| Error::Falsified(format!("double coset of {x} has no maximum")))?;
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    fn sys(label: &str) -> CoxeterSystem {
        CoxeterSystem::build(CartanDatum::from_label(label).unwrap()).unwrap()
    }

    #[test]
    fn a1_table() {
        let t = BruhatTable::build(&sys("A1")).unwrap();
        assert!(t.leq(0, 1) && !t.leq(1, 0));
        assert_eq!(t.strict_relations(), 1);
        assert_eq!(t.covers(), &[(0, 1)]);
    }

    #[test]
    fn table_matches_fast_order() {
        for label in ["A2", "B2", "G2", "A3"] {
            let s = sys(label);
            let t = BruhatTable::build(&s).unwrap();
            for (a, x) in s.elements().iter().enumerate() {
                for (b, y) in s.elements().iter().enumerate() {
                    assert_eq!(t.leq(a, b), s.bruhat_leq(x, y), "{label}");
                }
            }
        }
    }

    #[test]
    fn identity_row() {
        let s = sys("A2");
        let t = BruhatTable::build(&s).unwrap();
        let y = s.index_of(&s.from_word(&[0, 1])).unwrap();
        let (star, tl, tr) = brute_demazure_family(&t, 0, y).unwrap();
        assert_eq!((star, tl, tr), (y, y, 0));
    }
}
