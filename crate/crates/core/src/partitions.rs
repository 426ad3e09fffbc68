//! Admissible partitions of the compactification and the refined partitions
//! cut out by non-empty intersections.
//!
//! Component sets of closures and the Frobenius-orbit layer live here too.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{DiagramAutomorphism, WElem};
use crate::error::{Error, Result};
use crate::monoid::Side;
use crate::strata::{QuadrupleShadow, StratumKind, StratumRef, WonderfulContext};
use crate::subset::SimpleSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartitionKind {
    GxG,
    BB,
    BmB,
    BmBm,
    Piece,
    /// Non-empty intersections `[J, x, y] ∩ [J, u, v]^{-,-}`.
    RefinedBBxBmBm,
    /// Non-empty intersections `Z_{J,delta,w} ∩ [J, x, y]^{-,+}`.
    RefinedPiecexBmB,
}

impl PartitionKind {
    pub const ALL: [PartitionKind; 7] = [
        PartitionKind::GxG,
        PartitionKind::BB,
        PartitionKind::BmB,
        PartitionKind::BmBm,
        PartitionKind::Piece,
        PartitionKind::RefinedBBxBmBm,
        PartitionKind::RefinedPiecexBmB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PartitionKind::GxG => "gxg",
            PartitionKind::BB => "bb",
            PartitionKind::BmB => "bmb",
            PartitionKind::BmBm => "bmbm",
            PartitionKind::Piece => "piece",
            PartitionKind::RefinedBBxBmBm => "bb-bmbm",
            PartitionKind::RefinedPiecexBmB => "piece-bmb",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// Stratum kinds of the factors of a cell.
    pub fn factors(self) -> &'static [StratumKind] {
        match self {
            PartitionKind::GxG => &[StratumKind::GxG],
            PartitionKind::BB => &[StratumKind::BB],
            PartitionKind::BmB => &[StratumKind::BmB],
            PartitionKind::BmBm => &[StratumKind::BmBm],
            PartitionKind::Piece => &[StratumKind::Piece],
            PartitionKind::RefinedBBxBmBm => &[StratumKind::BB, StratumKind::BmBm],
            PartitionKind::RefinedPiecexBmB => &[StratumKind::Piece, StratumKind::BmB],
        }
    }

    pub fn is_refined(self) -> bool {
        self.factors().len() == 2
    }

    /// Whether `delta` enters the partition.
    pub fn uses_delta(self) -> bool {
        matches!(self, PartitionKind::Piece | PartitionKind::RefinedPiecexBmB)
    }
}

impl fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every stratum of one kind with codimensions and the full closure relation
/// precomputed as bit rows.
#[derive(Debug)]
pub struct StrataTable {
    kind: StratumKind,
    strata: Vec<StratumRef>,
    codims: Vec<usize>,
    index: HashMap<StratumRef, usize>,
    ranges: BTreeMap<SimpleSubset, Range<usize>>,
    /// `closure[a][b]` iff stratum `b` lies in the closure of stratum `a`.
    closure: Vec<FixedBitSet>,
}

impl StrataTable {
    pub fn build(ctx: &WonderfulContext, kind: StratumKind) -> Result<Self> {
        if kind == StratumKind::FPiece {
            return Err(Error::IncompatibleKinds("F-pieces do not partition the compactification".into()));
        }
        let mut strata = Vec::new();
        let mut ranges = BTreeMap::new();
        for j in SimpleSubset::all(ctx.rank()) {
            let start = strata.len();
            strata.extend(ctx.strata_over(kind, j));
            ranges.insert(j, start..strata.len());
        }
        let codims = strata
            .iter()
            .map(|s| match kind {
                StratumKind::GxG => Ok(0),
                _ => ctx.codim(s).map(|m| m.value()),
            })
            .collect::<Result<Vec<_>>>()?;
        let index = strata.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let n = strata.len();
        let closure = strata
            .par_iter()
            .map(|big| {
                let mut row = FixedBitSet::with_capacity(n);
                for k in big.j.subsets() {
                    for b in ranges[&k].clone() {
                        if ctx.closure_leq_unchecked(big, &strata[b]) {
                            row.insert(b);
                        }
                    }
                }
                row
            })
            .collect();
        Ok(StrataTable { kind, strata, codims, index, ranges, closure })
    }

    pub fn kind(&self) -> StratumKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn strata(&self) -> &[StratumRef] {
        &self.strata
    }

    pub fn stratum(&self, i: usize) -> &StratumRef {
        &self.strata[i]
    }

    pub fn codim(&self, i: usize) -> usize {
        self.codims[i]
    }

    pub fn index_of(&self, s: &StratumRef) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Indices of the strata over `j`.
    pub fn over(&self, j: SimpleSubset) -> Range<usize> {
        self.ranges.get(&j).cloned().unwrap_or(0..0)
    }

    pub fn contains(&self, big: usize, small: usize) -> bool {
        self.closure[big].contains(small)
    }

    pub fn closure_row(&self, big: usize) -> &FixedBitSet {
        &self.closure[big]
    }
}

/// One cell of a partition: a single stratum, or the intersection of two
/// strata over the same `J`. Parts index into the factor tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub j: SimpleSubset,
    pub first: usize,
    pub second: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct PartitionSpec {
    pub ctx: WonderfulContext,
    pub kind: PartitionKind,
    tables: Vec<Arc<StrataTable>>,
    cells: Vec<Cell>,
    ranges: BTreeMap<SimpleSubset, Range<usize>>,
    index: HashMap<(usize, Option<usize>), usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Refinement {
    BBxBmBm,
    PiecexBmB,
}

impl From<Refinement> for PartitionKind {
    fn from(r: Refinement) -> Self {
        match r {
            Refinement::BBxBmBm => PartitionKind::RefinedBBxBmBm,
            Refinement::PiecexBmB => PartitionKind::RefinedPiecexBmB,
        }
    }
}

/// Builds any of the seven partitions.
pub fn build_partition(ctx: &WonderfulContext, kind: PartitionKind) -> Result<PartitionSpec> {
    let tables = kind
        .factors()
        .iter()
        .map(|&k| StrataTable::build(ctx, k).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    PartitionSpec::from_tables(ctx.clone(), kind, tables)
}

/// The refined partition indexed by `𝒥` or `𝒦`.
pub fn build_refined(ctx: &WonderfulContext, which: Refinement) -> Result<PartitionSpec> {
    build_partition(ctx, which.into())
}

/// Whether two strata over the same `J` meet, for the pairs
/// (`bb`, `bmbm`) and (`piece`, `bmb`).
pub fn intersects(ctx: &WonderfulContext, a: &StratumRef, b: &StratumRef) -> Result<bool> {
    ctx.validate(a)?;
    ctx.validate(b)?;
    if a.j != b.j {
        return Err(Error::IncompatibleKinds(format!("strata lie over {} and {}", a.j, b.j)));
    }
    match (a.kind, b.kind) {
        (StratumKind::BB, StratumKind::BmBm) | (StratumKind::Piece, StratumKind::BmB) => Ok(intersects_unchecked(ctx, a, b)),
        (StratumKind::BmBm, StratumKind::BB) | (StratumKind::BmB, StratumKind::Piece) => Ok(intersects_unchecked(ctx, b, a)),
        (x, y) => Err(Error::IncompatibleKinds(format!("no intersection criterion for {x} and {y}"))),
    }
}

fn intersects_unchecked(ctx: &WonderfulContext, a: &StratumRef, b: &StratumRef) -> bool {
    match a.kind {
        StratumKind::BB => ctx.nonempty_bb_bmbm_unchecked(a.j, &a.x, &a.y, &b.x, &b.y),
        _ => ctx.nonempty_piece_bmb_unchecked(a.j, &a.x, &b.x, &b.y),
    }
}

impl PartitionSpec {
    fn from_tables(ctx: WonderfulContext, kind: PartitionKind, tables: Vec<Arc<StrataTable>>) -> Result<Self> {
        let mut cells = Vec::new();
        let mut ranges = BTreeMap::new();
        for j in SimpleSubset::all(ctx.rank()) {
            let start = cells.len();
            match tables.as_slice() {
                [t] => cells.extend(t.over(j).map(|a| Cell { j, first: a, second: None })),
                [t1, t2] => {
                    let pairs: Vec<Cell> = t1
                        .over(j)
                        .into_par_iter()
                        .flat_map_iter(|a| {
                            let ctx = &ctx;
                            t2.over(j)
                                .filter(move |&b| intersects_unchecked(ctx, t1.stratum(a), t2.stratum(b)))
                                .map(move |b| Cell { j, first: a, second: Some(b) })
                        })
                        .collect();
                    cells.extend(pairs);
                }
                _ => return Err(Error::Internal("a cell has one or two factors".into())),
            }
            ranges.insert(j, start..cells.len());
        }
        let index = cells.iter().enumerate().map(|(i, c)| ((c.first, c.second), i)).collect();
        Ok(PartitionSpec { ctx, kind, tables, cells, ranges, index })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn tables(&self) -> &[Arc<StrataTable>] {
        &self.tables
    }

    pub fn over(&self, j: SimpleSubset) -> Range<usize> {
        self.ranges.get(&j).cloned().unwrap_or(0..0)
    }

    /// The strata whose intersection is cell `i`.
    pub fn cell_strata(&self, i: usize) -> Vec<StratumRef> {
        let c = &self.cells[i];
        let mut out = vec![self.tables[0].stratum(c.first).clone()];
        if let Some(b) = c.second {
            out.push(self.tables[1].stratum(b).clone());
        }
        out
    }

    pub fn cell_codim(&self, i: usize) -> usize {
        let c = &self.cells[i];
        self.tables[0].codim(c.first) + c.second.map_or(0, |b| self.tables[1].codim(b))
    }

    /// Index of the cell with the given strata, if it is one.
    pub fn find_cell(&self, parts: &[StratumRef]) -> Option<usize> {
        let first = self.tables.first()?.index_of(parts.first()?)?;
        let second = match (self.tables.get(1), parts.get(1)) {
            (Some(t), Some(s)) => Some(t.index_of(s)?),
            (None, None) => None,
            _ => return None,
        };
        self.index.get(&(first, second)).copied()
    }

    /// Component-wise closure containment of cells.
    pub fn cell_contains(&self, big: usize, small: usize) -> bool {
        let (a, b) = (&self.cells[big], &self.cells[small]);
        self.tables[0].contains(a.first, b.first)
            && match (a.second, b.second) {
                (Some(x), Some(y)) => self.tables[1].contains(x, y),
                _ => true,
            }
    }

    /// Cell counts keyed by `J`.
    pub fn counts(&self) -> BTreeMap<String, usize> {
        self.ranges.iter().map(|(j, r)| (j.to_string(), r.len())).collect()
    }

    fn describe(&self, i: usize) -> String {
        let sys = self.ctx.sys();
        self.cell_strata(i).iter().map(|s| s.describe(sys)).collect::<Vec<_>>().join(" & ")
    }

    /// The cell over `k` produced by the explicit boundary construction for
    /// cell `i` (the witness that its closure meets `Z_k`).
    pub fn constructive_witness(&self, i: usize, k: SimpleSubset) -> Vec<StratumRef> {
        let ctx = &self.ctx;
        let sys = ctx.sys();
        let parts = self.cell_strata(i);
        let j = parts[0].j;
        let shift = |s: &StratumRef| {
            let n = sys.mul(&sys.longest_element(j), &sys.longest_element(k));
            StratumRef::pair(s.kind, k, sys.mul(&s.x, &n), sys.mul(&s.y, &n))
        };
        match self.kind {
            PartitionKind::GxG => vec![StratumRef::orbit(sys, k)],
            PartitionKind::BB => vec![StratumRef::pair(StratumKind::BB, k, parts[0].x.clone(), parts[0].y.clone())],
            PartitionKind::BmB | PartitionKind::BmBm => vec![shift(&parts[0])],
            PartitionKind::Piece => vec![StratumRef::piece(sys, k, parts[0].x.clone())],
            PartitionKind::RefinedBBxBmBm | PartitionKind::RefinedPiecexBmB => {
                let (a, b) = (&parts[0], &parts[1]);
                let y = if self.kind == PartitionKind::RefinedBBxBmBm { &a.y } else { &b.y };
                let z = sys.mul(&y.inverse(), &sys.coset_max(y, j, Side::Right));
                let zp = sys.coset_min(&z, k, Side::Right);
                let m = |w: &WElem| sys.mul(w, &zp);
                if self.kind == PartitionKind::RefinedBBxBmBm {
                    vec![
                        StratumRef::pair(StratumKind::BB, k, m(&a.x), m(&a.y)),
                        StratumRef::pair(StratumKind::BmBm, k, m(&b.x), m(&b.y)),
                    ]
                } else {
                    vec![StratumRef::piece(sys, k, a.x.clone()), StratumRef::pair(StratumKind::BmB, k, m(&b.x), m(&b.y))]
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Violation {
    /// A boundary cell in the closure has smaller codimension.
    CodimDrop,
    /// The closure misses a boundary orbit.
    MissesBoundary,
    /// The explicit boundary construction is not a cell in the closure.
    WitnessRejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub cell: String,
    pub k: SimpleSubset,
    pub other: Option<String>,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub kind: PartitionKind,
    pub admissible: bool,
    pub strongly_admissible: bool,
    pub witnesses_agree: bool,
    pub cells: usize,
    pub containments_checked: u64,
    pub counts: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks admissibility, strong admissibility and the explicit boundary
/// witnesses of every cell against every `K ⊂ J`.
pub fn verify_partition(spec: &PartitionSpec) -> Result<PartitionReport> {
    check_complete(spec)?;
    let results: Vec<(Vec<Failure>, u64)> = (0..spec.len())
        .into_par_iter()
        .map(|i| {
            let cell = spec.cells[i];
            let codim = spec.cell_codim(i);
            let mut fails = Vec::new();
            let mut checked = 0u64;
            for k in cell.j.subsets() {
                let mut found = false;
                for b in spec.over(k) {
                    checked += 1;
                    if !spec.cell_contains(i, b) {
                        continue;
                    }
                    found = true;
                    if spec.cell_codim(b) < codim {
                        fails.push(Failure {
                            cell: spec.describe(i),
                            k,
                            other: Some(spec.describe(b)),
                            violation: Violation::CodimDrop,
                        });
                    }
                }
                if !found {
                    fails.push(Failure { cell: spec.describe(i), k, other: None, violation: Violation::MissesBoundary });
                }
                let witness = spec.constructive_witness(i, k);
                let ok = spec.find_cell(&witness).is_some_and(|b| spec.cell_contains(i, b));
                if !ok {
                    let sys = spec.ctx.sys();
                    let desc = witness.iter().map(|s| s.describe(sys)).collect::<Vec<_>>().join(" & ");
                    fails.push(Failure { cell: spec.describe(i), k, other: Some(desc), violation: Violation::WitnessRejected });
                }
            }
            (fails, checked)
        })
        .collect();
    let mut failures = Vec::new();
    let mut containments_checked = 0;
    for (f, c) in results {
        failures.extend(f);
        containments_checked += c;
    }
    let has = |v: Violation| failures.iter().any(|f| f.violation == v);
    let admissible = !has(Violation::CodimDrop);
    Ok(PartitionReport {
        kind: spec.kind,
        admissible,
        strongly_admissible: admissible && !has(Violation::MissesBoundary),
        witnesses_agree: !has(Violation::WitnessRejected),
        cells: spec.len(),
        containments_checked,
        counts: spec.counts(),
        failures,
    })
}

fn check_complete(spec: &PartitionSpec) -> Result<()> {
    if spec.index.len() != spec.cells.len() {
        return Err(Error::IncompletePartition("duplicate cells".into()));
    }
    let expected: usize = match spec.tables.as_slice() {
        [t] => t.len(),
        [t1, t2] => SimpleSubset::all(spec.ctx.rank())
            .map(|j| {
                t1.over(j)
                    .map(|a| {
                        t2.over(j)
                            .filter(|&b| intersects_unchecked(&spec.ctx, t1.stratum(a), t2.stratum(b)))
                            .count()
                    })
                    .sum::<usize>()
            })
            .sum(),
        _ => return Err(Error::IncompletePartition("no factor tables".into())),
    };
    if expected != spec.cells.len() {
        return Err(Error::IncompletePartition(format!("{} cells, expected {expected}", spec.cells.len())));
    }
    Ok(())
}

/// Strata over `K` of the same kind as `x`, in its closure, with the same
/// codimension.
pub fn equal_codim_set(ctx: &WonderfulContext, x: &StratumRef, k: SimpleSubset) -> Result<Vec<StratumRef>> {
    ctx.validate(x)?;
    if !k.is_subset(x.j) {
        return Err(Error::NotSubset { inner: k.to_string(), outer: x.j.to_string() });
    }
    if x.kind == StratumKind::GxG {
        return Ok(vec![StratumRef::orbit(ctx.sys(), k)]);
    }
    let c = ctx.codim(x)?.value();
    let mut out = Vec::new();
    for s in ctx.strata_over(x.kind, k) {
        if ctx.closure_leq_unchecked(x, &s) && ctx.codim(&s)?.value() == c {
            out.push(s);
        }
    }
    Ok(out)
}

/// Irreducible components of `closure(x) ∩ closure(Z_K)`, as strata over `J ∩ K`.
pub fn components_with_orbit_closure(ctx: &WonderfulContext, x: &StratumRef, k: SimpleSubset) -> Result<Vec<StratumRef>> {
    ctx.validate(x)?;
    let out = equal_codim_set(ctx, x, x.j.intersection(k))?;
    if out.is_empty() {
        return Err(Error::Internal(format!("no components for {} and K={k}", x.describe(ctx.sys()))));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossComponents {
    /// The closures do not meet.
    Disjoint,
    /// Pairs `(x', y')` over `J ∩ K`, one per irreducible component of the
    /// intersection of closures.
    Components(Vec<(StratumRef, StratumRef)>),
}

/// Whether `closure(x)` and `closure(y)` meet: some stratum pair over a common
/// `I` inside both closures intersects.
pub fn closures_meet(ctx: &WonderfulContext, x: &StratumRef, y: &StratumRef) -> Result<bool> {
    let (x, y) = cross_order(x, y)?;
    ctx.validate(x)?;
    ctx.validate(y)?;
    for i in x.j.intersection(y.j).subsets() {
        let xs: Vec<StratumRef> = ctx.strata_over(x.kind, i).into_iter().filter(|s| ctx.closure_leq_unchecked(x, s)).collect();
        let ys: Vec<StratumRef> = ctx.strata_over(y.kind, i).into_iter().filter(|s| ctx.closure_leq_unchecked(y, s)).collect();
        if xs.iter().any(|a| ys.iter().any(|b| intersects_unchecked(ctx, a, b))) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn cross_order<'a>(x: &'a StratumRef, y: &'a StratumRef) -> Result<(&'a StratumRef, &'a StratumRef)> {
    match (x.kind, y.kind) {
        (StratumKind::BB, StratumKind::BmBm) | (StratumKind::Piece, StratumKind::BmB) => Ok((x, y)),
        (StratumKind::BmBm, StratumKind::BB) | (StratumKind::BmB, StratumKind::Piece) => Ok((y, x)),
        (a, b) => Err(Error::IncompatibleKinds(format!("no compatible partitions for {a} and {b}"))),
    }
}

/// Irreducible components of `closure(x) ∩ closure(y)` for a compatible
/// pair of kinds. Results are ordered with the `bb`/`piece` stratum first.
pub fn components_cross(ctx: &WonderfulContext, x: &StratumRef, y: &StratumRef) -> Result<CrossComponents> {
    let (x, y) = cross_order(x, y)?;
    if !closures_meet(ctx, x, y)? {
        return Ok(CrossComponents::Disjoint);
    }
    let i = x.j.intersection(y.j);
    let xs = equal_codim_set(ctx, x, i)?;
    let ys = equal_codim_set(ctx, y, i)?;
    let mut out = Vec::new();
    for a in &xs {
        for b in &ys {
            if intersects_unchecked(ctx, a, b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(CrossComponents::Components(out))
}

/// Components of `closure(Z_{J,delta,w}) ∩ closure(Z_K)` by the explicit
/// parametrization `w' ∈ W^{J∩K} ∩ Min(C_J(w))`.
pub fn piece_components_explicit(ctx: &WonderfulContext, j: SimpleSubset, w: &WElem, k: SimpleSubset) -> Vec<StratumRef> {
    let sys = ctx.sys();
    let i = j.intersection(k);
    let (_, mins) = ctx.min_twisted_class(j, w, &ctx.delta);
    mins.into_iter().filter(|m| sys.is_min_right(m, i)).map(|m| StratumRef::piece(sys, i, m)).collect()
}

/// Components of `closure([J, x, y]) ∩ closure(Z_K)` for the three orbit
/// kinds, by moving to `B x B` indices `(a, b)`, taking
/// `[J∩K, a u, b u]` for `u ∈ W_J ∩ W^{J∩K}` with `l(b u) = l(b) + l(u)`, and
/// moving back.
pub fn pair_components_explicit(ctx: &WonderfulContext, x: &StratumRef, k: SimpleSubset) -> Result<Vec<StratumRef>> {
    let sys = ctx.sys();
    let (j, i) = (x.j, x.j.intersection(k));
    let (w0, w0j, w0i) = (sys.longest(), sys.longest_element(j), sys.longest_element(i));
    let (a, b) = match x.kind {
        StratumKind::BB => (x.x.clone(), x.y.clone()),
        StratumKind::BmB => (sys.mul(&sys.mul(&w0, &x.x), &w0j), sys.mul(&x.y, &w0j)),
        StratumKind::BmBm => (sys.mul(&sys.mul(&w0, &x.x), &w0j), sys.mul(&sys.mul(&w0, &x.y), &w0j)),
        other => return Err(Error::IncompatibleKinds(format!("{other} is not an orbit pair kind"))),
    };
    let mut out: Vec<StratumRef> = sys
        .parabolic_elements(j)
        .into_iter()
        .filter(|u| sys.is_min_right(u, i))
        .filter(|u| sys.mul(&b, u).length() == b.length() + u.length())
        .map(|u| {
            let (au, bu) = (sys.mul(&a, &u), sys.mul(&b, &u));
            let (p, q) = match x.kind {
                StratumKind::BB => (au, bu),
                StratumKind::BmB => (sys.mul(&sys.mul(&w0, &au), &w0i), sys.mul(&bu, &w0i)),
                _ => (sys.mul(&sys.mul(&w0, &au), &w0i), sys.mul(&sys.mul(&w0, &bu), &w0i)),
            };
            StratumRef::pair(x.kind, i, p, q)
        })
        .collect();
    out.sort_by_key(|s| (sys.index_of(&s.x), sys.index_of(&s.y)));
    out.dedup();
    Ok(out)
}

/// How `u` is constrained in the explicit `B^- x B` component parametrization
/// `[J∩K, xu, yu]^{-,+}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentReading {
    /// `u ∈ W_J ∩ W^{J∩K}` with `l(yu) = l(y) + l(u)`.
    Literal,
    /// As literal, with `u` of maximal length `l(w0^J) - l(w0^{J∩K})`.
    MaximalLength,
    /// The literal conditions applied to the `B x B` indices
    /// `(w0 x w0^J, y w0^J)` of the same orbit, then moved back: components
    /// `[J∩K, x w0^J u w0^{J∩K}, y w0^J u w0^{J∩K}]^{-,+}` with
    /// `l(y w0^J u) = l(y w0^J) + l(u)`.
    ThroughBB,
}

pub fn bmb_components_explicit(
    ctx: &WonderfulContext,
    x: &StratumRef,
    k: SimpleSubset,
    reading: ComponentReading,
) -> Vec<StratumRef> {
    let sys = ctx.sys();
    let j = x.j;
    let i = j.intersection(k);
    let top = sys.longest_element(j).length() - sys.longest_element(i).length();
    let candidates = sys.parabolic_elements(j).into_iter().filter(|u| sys.is_min_right(u, i));
    let mut out: Vec<StratumRef> = if reading == ComponentReading::ThroughBB {
        let (w0j, w0i) = (sys.longest_element(j), sys.longest_element(i));
        let (xb, yb) = (sys.mul(&x.x, &w0j), sys.mul(&x.y, &w0j));
        candidates
            .filter(|u| sys.mul(&yb, u).length() == yb.length() + u.length())
            .map(|u| {
                let t = sys.mul(&u, &w0i);
                StratumRef::pair(StratumKind::BmB, i, sys.mul(&xb, &t), sys.mul(&yb, &t))
            })
            .collect()
    } else {
        candidates
            .filter(|u| sys.mul(&x.y, u).length() == x.y.length() + u.length())
            .filter(|u| reading == ComponentReading::Literal || u.length() == top)
            .map(|u| StratumRef::pair(StratumKind::BmB, i, sys.mul(&x.x, &u), sys.mul(&x.y, &u)))
            .collect()
    };
    out.sort_by_key(|s| (sys.index_of(&s.x), sys.index_of(&s.y)));
    out.dedup();
    out
}

/// Which explicit readings reproduce the equal-codimension component set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingMatch {
    pub literal: bool,
    pub maximal_length: bool,
    pub through_bb: bool,
}

pub fn compare_bmb_readings(ctx: &WonderfulContext, x: &StratumRef, k: SimpleSubset) -> Result<ReadingMatch> {
    let mut truth = components_with_orbit_closure(ctx, x, k)?;
    let sys = ctx.sys();
    truth.sort_by_key(|s| (sys.index_of(&s.x), sys.index_of(&s.y)));
    Ok(ReadingMatch {
        literal: bmb_components_explicit(ctx, x, k, ComponentReading::Literal) == truth,
        maximal_length: bmb_components_explicit(ctx, x, k, ComponentReading::MaximalLength) == truth,
        through_bb: bmb_components_explicit(ctx, x, k, ComponentReading::ThroughBB) == truth,
    })
}

/// Components of `closure(a ∩ b) ∩ closure(Z_K)` for a refined cell: the
/// intersecting pairs of components of the two factors.
pub fn refined_components(ctx: &WonderfulContext, a: &StratumRef, b: &StratumRef, k: SimpleSubset) -> Result<Vec<(StratumRef, StratumRef)>> {
    let (a, b) = cross_order(a, b)?;
    let xs = components_with_orbit_closure(ctx, a, k)?;
    let ys = components_with_orbit_closure(ctx, b, k)?;
    let mut out = Vec::new();
    for p in &xs {
        for q in &ys {
            if intersects_unchecked(ctx, p, q) {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DlViolation {
    NotReflexive,
    NotAntisymmetric,
    NotTransitive,
    BaseOutsideClosure,
    PosetMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DlFailure {
    pub quadruple: String,
    pub relation: String,
    pub elements: Vec<String>,
    pub violation: DlViolation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DlReport {
    pub partial_order: bool,
    pub base_containment: bool,
    /// `None` when the twist differs from `delta^{-1}`.
    pub twist_coincidence: Option<bool>,
    pub quadruples: usize,
    pub failures: Vec<DlFailure>,
}

impl DlReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Closure relation among F-pieces at the quadruple level:
/// `exists u in W_J: twist(u) w' u^{-1} <= w`.
pub fn fpiece_closure_leq(ctx: &WonderfulContext, q: &QuadrupleShadow, twist: &DiagramAutomorphism, w: &WElem, w_small: &WElem) -> bool {
    let sys = ctx.sys();
    sys.parabolic_elements(q.j)
        .iter()
        .any(|u| sys.bruhat_leq(&sys.mul(&sys.mul(&twist.apply(u), w_small), &u.inverse()), w))
}

/// The combinatorial layer of the Frobenius-orbit picture: partial-order
/// axioms of the F-piece and piece closures, the base index `e` in every
/// closure, and coincidence of the two posets when `twist = delta^{-1}`.
/// Runs on `(J, J, id)` and on the orbit quadruples `C_J`.
pub fn dl_consistency(ctx: &WonderfulContext, twist: &DiagramAutomorphism) -> Result<DlReport> {
    let twist = DiagramAutomorphism::new(ctx.sys().cartan(), twist.perm().to_vec())?;
    let coincide = twist == ctx.delta.inverse();
    let mut quads = Vec::new();
    for j in SimpleSubset::all(ctx.rank()) {
        quads.push((QuadrupleShadow::diagonal(ctx.sys(), j, ctx.delta.clone()), true));
        quads.push((ctx.wonderful_quadruple(j), false));
    }
    let failures: Vec<DlFailure> = quads
        .par_iter()
        .flat_map_iter(|(q, diagonal)| dl_check_quadruple(ctx, q, &twist, coincide && *diagonal))
        .collect();
    let has = |v: &[DlViolation]| failures.iter().any(|f| v.contains(&f.violation));
    Ok(DlReport {
        partial_order: !has(&[DlViolation::NotReflexive, DlViolation::NotAntisymmetric, DlViolation::NotTransitive]),
        base_containment: !has(&[DlViolation::BaseOutsideClosure]),
        twist_coincidence: coincide.then(|| !has(&[DlViolation::PosetMismatch])),
        quadruples: quads.len(),
        failures,
    })
}

fn dl_check_quadruple(ctx: &WonderfulContext, q: &QuadrupleShadow, twist: &DiagramAutomorphism, compare: bool) -> Vec<DlFailure> {
    let sys = ctx.sys();
    let reps = sys.min_right_reps(q.j);
    let n = reps.len();
    let label = format!("({}, {}, c)", q.j, q.jp);
    let fpiece: Vec<Vec<bool>> = reps.iter().map(|w| reps.iter().map(|v| fpiece_closure_leq(ctx, q, twist, w, v)).collect()).collect();
    let piece: Vec<Vec<bool>> = reps.iter().map(|w| reps.iter().map(|v| q.piece_closure_leq(sys, w, v)).collect()).collect();
    let mut out = Vec::new();
    let mut fail = |relation: &str, idx: &[usize], violation| {
        out.push(DlFailure {
            quadruple: label.clone(),
            relation: relation.to_string(),
            elements: idx.iter().map(|&i| sys.word_string(&reps[i])).collect(),
            violation,
        })
    };
    let base = reps.iter().position(WElem::is_identity).expect("e is in every W^J");
    for (name, rel) in [("fpiece", &fpiece), ("piece", &piece)] {
        for a in 0..n {
            if !rel[a][a] {
                fail(name, &[a], DlViolation::NotReflexive);
            }
            if !rel[a][base] {
                fail(name, &[a], DlViolation::BaseOutsideClosure);
            }
            for b in 0..n {
                if a != b && rel[a][b] && rel[b][a] {
                    fail(name, &[a, b], DlViolation::NotAntisymmetric);
                }
                if !rel[a][b] {
                    continue;
                }
                for c in (0..n).filter(|&c| rel[b][c]) {
                    if !rel[a][c] {
                        fail(name, &[a, b, c], DlViolation::NotTransitive);
                    }
                }
            }
        }
    }
    if compare {
        for a in 0..n {
            for b in 0..n {
                if fpiece[a][b] != piece[a][b] {
                    fail("fpiece-vs-piece", &[a, b], DlViolation::PosetMismatch);
                }
            }
        }
    }
    out
}
