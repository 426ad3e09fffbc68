use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{brute_demazure_family, brute_double_coset, BruhatTable};
use crate::coxeter::{CoxeterSystem, DiagramAutomorphism, WElem};
use crate::error::{Error, Result};
use crate::monoid::Side;
use crate::partitions::{
    build_partition, compare_bmb_readings, components_cross, components_with_orbit_closure, dl_consistency,
    pair_components_explicit, piece_components_explicit, refined_components, verify_partition, CrossComponents,
    PartitionKind, StrataTable,
};
use crate::strata::{QuadrupleShadow, StratumKind, StratumRef, WonderfulContext};
use crate::subset::SimpleSubset;

pub const SUITES: [&str; 8] = ["monoid", "appendix", "criteria", "closure", "partitions", "components", "dl", "all"];

/// Stored witnesses per suite; the count is always exact.
const MAX_STORED_FAILURES: usize = 50;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub system: Arc<CoxeterSystem>,
    /// Automorphisms used as `delta`; all diagram automorphisms by default.
    pub deltas: Vec<DiagramAutomorphism>,
    /// Tuple loops are exhaustive while the loop range stays below this many
    /// cases and sampled above it.
    pub exhaustive_limit: u64,
    pub samples: u64,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(system: impl Into<Arc<CoxeterSystem>>) -> Self {
        let system = system.into();
        let deltas = DiagramAutomorphism::all(system.cartan());
        SuiteConfig { system, deltas, exhaustive_limit: 400_000, samples: 50_000, seed: 0x5eed }
    }

    pub fn with_deltas(mut self, deltas: Vec<DiagramAutomorphism>) -> Self {
        self.deltas = deltas;
        self
    }

    fn contexts(&self) -> Result<Vec<WonderfulContext>> {
        self.deltas.iter().map(|d| WonderfulContext::new(self.system.clone(), d.clone())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub check: String,
    pub witness: String,
}

/// Cases and failures of one named check.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub cases: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub suite: String,
    pub type_label: String,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<SweepFailure>,
    pub checks: BTreeMap<String, Tally>,
    /// Observations that are not pass/fail, such as which reading of a
    /// parametrization matched.
    pub notes: BTreeMap<String, u64>,
    /// Left out of serialized reports unless set, so that reruns are
    /// byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u64>,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Combined tally of the checks whose name satisfies `pred`.
    pub fn tally(&self, pred: impl Fn(&str) -> bool) -> Tally {
        self.checks.iter().filter(|(k, _)| pred(k)).fold(Tally::default(), |t, (_, v)| Tally {
            cases: t.cases + v.cases,
            failures: t.failures + v.failures,
        })
    }
}

#[derive(Default)]
struct Acc {
    cases: u64,
    failure_count: u64,
    failures: Vec<SweepFailure>,
    checks: BTreeMap<String, Tally>,
    notes: BTreeMap<String, u64>,
}

impl Acc {
    fn check(&mut self, ok: bool, check: &str, witness: impl FnOnce() -> String) {
        self.cases += 1;
        self.tally(check, 1, 0);
        if !ok {
            self.fail(check, witness());
        }
    }

    fn tally(&mut self, check: &str, cases: u64, failures: u64) {
        let t = self.checks.entry(check.to_string()).or_default();
        t.cases += cases;
        t.failures += failures;
    }

    fn fail(&mut self, check: &str, witness: String) {
        self.failure_count += 1;
        self.tally(check, 0, 1);
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(SweepFailure { check: check.to_string(), witness });
        }
    }

    fn note(&mut self, key: &str, n: u64) {
        *self.notes.entry(key.to_string()).or_default() += n;
    }

    fn merge(&mut self, other: Acc) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_STORED_FAILURES {
                self.failures.push(f);
            }
        }
        for (k, v) in other.checks {
            self.tally(&k, v.cases, v.failures);
        }
        for (k, v) in other.notes {
            *self.notes.entry(k).or_default() += v;
        }
    }

    fn result<T>(&mut self, r: Result<T>, check: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.tally(check, 1, 0);
                self.fail(check, e.to_string());
                None
            }
        }
    }
}

/// Runs `f` on every item in parallel and merges in item order.
fn sweep<T: Sync>(items: &[T], f: impl Fn(&T, &mut Acc) + Sync) -> Acc {
    let parts: Vec<Acc> = items
        .par_iter()
        .map(|it| {
            let mut acc = Acc::default();
            f(it, &mut acc);
            acc
        })
        .collect();
    let mut acc = Acc::default();
    for p in parts {
        acc.merge(p);
    }
    acc
}

/// Index tuples over `0..n` of the given arity: all of them when there are
/// at most `limit`, otherwise a seeded sample.
fn tuples(n: usize, arity: u32, cfg: &SuiteConfig, salt: u64) -> Vec<Vec<usize>> {
    let total = (n as u64).checked_pow(arity).unwrap_or(u64::MAX);
    if total <= cfg.exhaustive_limit {
        (0..total)
            .map(|mut t| {
                (0..arity)
                    .map(|_| {
                        let d = (t % n as u64) as usize;
                        t /= n as u64;
                        d
                    })
                    .rev()
                    .collect()
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ salt);
        (0..cfg.samples).map(|_| (0..arity).map(|_| rng.gen_range(0..n)).collect()).collect()
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SweepResult> {
    let start = Instant::now();
    let acc = match name {
        "monoid" => monoid(cfg)?,
        "appendix" => appendix(cfg)?,
        "criteria" => criteria(cfg)?,
        "closure" => closure(cfg)?,
        "partitions" => partitions(cfg)?,
        "components" => components(cfg)?,
        "dl" => dl(cfg)?,
        "all" => {
            let mut acc = Acc::default();
            for s in &SUITES[..SUITES.len() - 1] {
                let r = run_suite(s, cfg)?;
                acc.cases += r.cases;
                acc.failure_count += r.failure_count;
                for f in r.failures {
                    if acc.failures.len() < MAX_STORED_FAILURES {
                        acc.failures.push(SweepFailure { check: format!("{s}/{}", f.check), witness: f.witness });
                    }
                }
                for (k, v) in r.checks {
                    acc.checks.insert(format!("{s}/{k}"), v);
                }
                for (k, v) in r.notes {
                    acc.notes.insert(format!("{s}/{k}"), v);
                }
            }
            acc
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let sys = &cfg.system;
    Ok(SweepResult {
        suite: name.to_string(),
        type_label: sys.cartan().to_string(),
        cases: acc.cases,
        failure_count: acc.failure_count,
        failures: acc.failures,
        checks: acc.checks,
        notes: acc.notes,
        wall_time_us: Some(start.elapsed().as_micros() as u64),
    })
}

fn words(sys: &CoxeterSystem, ws: &[&WElem]) -> String {
    ws.iter().map(|w| sys.word_string(w)).collect::<Vec<_>>().join(", ")
}

/// Fast operations against the oracle: Bruhat order, the three monoid
/// operations, one-sided and two-sided coset extremes.
fn monoid(cfg: &SuiteConfig) -> Result<Acc> {
    let sys = &*cfg.system;
    let table = BruhatTable::build(sys)?;
    let el = sys.elements();
    let n = el.len();
    let pairs = tuples(n, 2, cfg, 1);
    let mut acc = sweep(&pairs, |p, acc| {
        let (a, b) = (p[0], p[1]);
        let (x, y) = (&el[a], &el[b]);
        acc.check(table.leq(a, b) == sys.bruhat_leq(x, y), "bruhat", || words(sys, &[x, y]));
        match brute_demazure_family(&table, a, b) {
            Ok((star, tl, tr)) => {
                acc.check(sys.demazure(x, y) == el[star], "demazure", || words(sys, &[x, y]));
                acc.check(sys.tri_left(x, y) == el[tl], "tri-left", || words(sys, &[x, y]));
                acc.check(sys.tri_right(x, y) == el[tr], "tri-right", || words(sys, &[x, y]));
            }
            Err(e) => acc.fail("unique-extremum", format!("{}: {e}", words(sys, &[x, y]))),
        }
    });
    for &(x, y) in table.covers() {
        acc.check(table.length(y) == table.length(x) + 1, "cover-length", || format!("{x} {y}"));
    }
    let subsets: Vec<SimpleSubset> = SimpleSubset::all(sys.rank()).collect();
    let parabolics: Vec<Vec<usize>> = subsets.iter().map(|&j| table.parabolic(sys, j)).collect();
    let one_sided = sweep(&subsets.iter().enumerate().collect::<Vec<_>>(), |(k, j), acc| {
        let j = **j;
        let id = [0usize];
        for (a, x) in el.iter().enumerate() {
            let Some((rmin, rmax)) = acc.result(brute_double_coset(&table, a, &id, &parabolics[*k]), "coset") else { continue };
            let Some((lmin, lmax)) = acc.result(brute_double_coset(&table, a, &parabolics[*k], &id), "coset") else { continue };
            acc.check(sys.coset_min(x, j, Side::Right) == el[rmin], "coset-min-right", || format!("{} J={j}", words(sys, &[x])));
            acc.check(sys.coset_max(x, j, Side::Right) == el[rmax], "coset-max-right", || format!("{} J={j}", words(sys, &[x])));
            acc.check(sys.coset_min(x, j, Side::Left) == el[lmin], "coset-min-left", || format!("{} J={j}", words(sys, &[x])));
            acc.check(sys.coset_max(x, j, Side::Left) == el[lmax], "coset-max-left", || format!("{} J={j}", words(sys, &[x])));
            let d = sys.coset_decompose(x, j);
            acc.check(
                d.minimal_part == el[rmin]
                    && sys.in_parabolic(&d.parabolic_part, j)
                    && sys.mul(&d.minimal_part, &d.parabolic_part) == *x
                    && d.minimal_part.length() + d.parabolic_part.length() == x.length(),
                "coset-decompose",
                || format!("{} J={j}", words(sys, &[x])),
            );
        }
    });
    acc.merge(one_sided);
    Ok(acc)
}

/// Coset identities and the equivalent descriptions of double coset extremes.
fn appendix(cfg: &SuiteConfig) -> Result<Acc> {
    let sys = &*cfg.system;
    let table = BruhatTable::build(sys)?;
    let el = sys.elements();
    let n = el.len();
    let w0 = sys.longest();
    let idx = |w: &WElem| sys.index_of(w).expect("element of the system");

    let pairs = tuples(n, 2, cfg, 2);
    let mut acc = sweep(&pairs, |p, acc| {
        let (x, y) = (&el[p[0]], &el[p[1]]);
        let w = || words(sys, &[x, y]);
        let star = sys.demazure(x, y);
        let tl = sys.tri_left(x, y);
        let tr = sys.tri_right(x, y);
        // decompositions with additive lengths
        let x1 = sys.mul(&star, &y.inverse());
        let y1 = sys.mul(&x.inverse(), &star);
        acc.check(
            table.leq(idx(&x1), p[0]) && star.length() == x1.length() + y.length(),
            "demazure-left-factor",
            w,
        );
        acc.check(
            table.leq(idx(&y1), p[1]) && star.length() == x.length() + y1.length(),
            "demazure-right-factor",
            w,
        );
        let x2 = sys.mul(&tl, &y.inverse());
        acc.check(
            table.leq(idx(&x2), p[0]) && tl.length() + x2.length() == y.length(),
            "tri-left-factor",
            w,
        );
        let y2 = sys.mul(&x.inverse(), &tr);
        acc.check(
            table.leq(idx(&y2), p[1]) && tr.length() + y2.length() == x.length(),
            "tri-right-factor",
            w,
        );
        // reflections through w0 and inversion
        acc.check(tl == sys.mul(&sys.demazure(x, &sys.mul(y, &w0)), &w0), "tri-left-via-w0", w);
        acc.check(tr == sys.mul(&w0, &sys.demazure(&sys.mul(&w0, x), y)), "tri-right-via-w0", w);
        acc.check(tr.inverse() == sys.tri_left(&y.inverse(), &x.inverse()), "tri-inverse", w);
        acc.check(star.inverse() == sys.demazure(&y.inverse(), &x.inverse()), "demazure-inverse", w);
        // unit
        acc.check(sys.demazure(&sys.identity(), x) == *x && sys.demazure(x, &sys.identity()) == *x, "unit", w);
        for j in SimpleSubset::all(sys.rank()) {
            if sys.is_min_right(y, j) {
                acc.check(sys.is_min_right(&tl, j), "tri-left-keeps-min-right", || format!("{} J={j}", w()));
            }
            if sys.is_min_left(x, j) {
                acc.check(sys.is_min_left(&tr, j), "tri-right-keeps-min-left", || format!("{} J={j}", w()));
            }
            let lhs = sys.bruhat_leq(x, &sys.coset_max(y, j, Side::Right));
            let rhs = sys.bruhat_leq(&sys.coset_min(x, j, Side::Right), y);
            acc.check(lhs == rhs, "max-min-coset-swap", || format!("{} J={j}", w()));
        }
    });

    let triples = tuples(n, 3, cfg, 3);
    acc.merge(sweep(&triples, |p, acc| {
        let (x, y, z) = (&el[p[0]], &el[p[1]], &el[p[2]]);
        let w = || words(sys, &[x, y, z]);
        acc.check(
            sys.bruhat_leq(&sys.tri_left(x, y), z) == sys.bruhat_leq(y, &sys.demazure(&x.inverse(), z)),
            "tri-left-adjunction",
            w,
        );
        acc.check(
            sys.bruhat_leq(&sys.tri_right(y, x), z) == sys.bruhat_leq(y, &sys.demazure(z, &x.inverse())),
            "tri-right-adjunction",
            w,
        );
        acc.check(
            sys.tri_right(&sys.tri_left(x, y), z) == sys.tri_left(x, &sys.tri_right(y, z)),
            "tri-associativity",
            w,
        );
        acc.check(
            sys.demazure(&sys.demazure(x, y), z) == sys.demazure(x, &sys.demazure(y, z)),
            "demazure-associativity",
            w,
        );
    }));

    // monotonicity over comparable pairs
    let comparable: Vec<(usize, usize)> = (0..n).flat_map(|b| table.downset(b).ones().map(move |a| (a, b))).collect();
    let quads = tuples(comparable.len(), 2, cfg, 4);
    acc.merge(sweep(&quads, |p, acc| {
        let ((a, a2), (b, b2)) = (comparable[p[0]], comparable[p[1]]);
        let (x, x2, y, y2) = (&el[a], &el[a2], &el[b], &el[b2]);
        let w = || words(sys, &[x, x2, y, y2]);
        acc.check(sys.bruhat_leq(&sys.demazure(x, y), &sys.demazure(x2, y2)), "demazure-monotone", w);
        acc.check(sys.bruhat_leq(&sys.tri_left(x2, y), &sys.tri_left(x, y2)), "tri-left-monotone", w);
        acc.check(sys.bruhat_leq(&sys.tri_right(x, y2), &sys.tri_right(x2, y)), "tri-right-monotone", w);
    }));

    // double cosets for every pair of subsets
    let subsets: Vec<SimpleSubset> = SimpleSubset::all(sys.rank()).collect();
    let parabolics: Vec<Vec<usize>> = subsets.iter().map(|&j| table.parabolic(sys, j)).collect();
    let jj: Vec<(usize, usize)> = (0..subsets.len()).flat_map(|a| (0..subsets.len()).map(move |b| (a, b))).collect();
    acc.merge(sweep(&jj, |&(l, r), acc| {
        let (jl, jr) = (subsets[l], subsets[r]);
        for (a, x) in el.iter().enumerate() {
            let Some((lo, hi)) = acc.result(brute_double_coset(&table, a, &parabolics[l], &parabolics[r]), "double-coset") else {
                continue;
            };
            let (mn, mx) = sys.double_coset_extremes(x, jl, jr);
            acc.check(mn == el[lo] && mx == el[hi], "double-coset-extremes", || format!("{} {jl} {jr}", words(sys, &[x])));
            acc.check(sys.is_min_left(&mn, jl) && sys.is_min_right(&mn, jr), "double-coset-min-shape", || {
                format!("{} {jl} {jr}", words(sys, &[x]))
            });
        }
    }));

    // opposite cell criterion, forms 5 and 6
    let quads = tuples(n, 4, cfg, 5);
    acc.merge(sweep(&quads, |p, acc| {
        let (x, y, u, v) = (&el[p[0]], &el[p[1]], &el[p[2]], &el[p[3]]);
        let (f5, f6) = sys.opposite_cells_meet_forms(x, y, u, v);
        acc.check(f5 == f6, "opposite-cells-forms", || words(sys, &[x, y, u, v]));
    }));
    Ok(acc)
}

/// Quadruple-level criterion equivalences and the orbit translation.
fn criteria(cfg: &SuiteConfig) -> Result<Acc> {
    let sys = &*cfg.system;
    let el = sys.elements();
    let mut acc = Acc::default();
    for ctx in cfg.contexts()? {
        let shadows = QuadrupleShadow::all(sys, &ctx.delta);
        acc.merge(sweep(&shadows, |q, acc| quadruple_criteria(sys, q, cfg, acc)));
        let subsets: Vec<SimpleSubset> = SimpleSubset::all(sys.rank()).collect();
        acc.merge(sweep(&subsets, |&j, acc| {
            let q = ctx.wonderful_quadruple(j);
            let reps = sys.min_right_reps(j);
            let shift = |w: &WElem| ctx.to_quadruple_index(j, w);
            let label = |ws: &[&WElem]| format!("delta={} J={j} {}", ctx.delta.spec_string(), words(sys, ws));
            for t in tuples(reps.len(), 2, cfg, 6) {
                let (x, u) = (&reps[t[0]], &reps[t[1]]);
                let (xs, us) = (shift(x), shift(u));
                acc.check(sys.is_min_right(&xs, q.j), "translation-lands-in-min-reps", || label(&[x]));
                for (yi, y) in el.iter().enumerate() {
                    for v in el {
                        let lhs = ctx.nonempty_bb_bmbm_unchecked(j, x, y, u, v);
                        let (rhs, _) = q.bb_bmbm_forms(sys, &xs, y, &us, v);
                        acc.check(lhs == rhs, "translated-bb-bmbm", || label(&[x, y, u, v]));
                    }
                    // pieces: x plays w, u plays x
                    let lhs = ctx.nonempty_piece_bmb_unchecked(j, x, u, y);
                    let (rhs, _) = q.piece_bmb_forms(sys, &xs, &us, y);
                    acc.check(lhs == rhs, "translated-piece-bmb", || label(&[x, u, &el[yi]]));
                }
            }
        }));
    }
    Ok(acc)
}

fn quadruple_criteria(sys: &CoxeterSystem, q: &QuadrupleShadow, cfg: &SuiteConfig, acc: &mut Acc) {
    let el = sys.elements();
    let n = el.len();
    let reps = sys.min_right_reps(q.j);
    let dj = q.delta.inverse().apply_subset(q.jp);
    let label = |ws: &[&WElem]| format!("q=({}, {}, {:?}) delta={} {}", q.j, q.jp, q.c, q.delta.spec_string(), words(sys, ws));
    let m = reps.len();
    for t in tuples(m * n, 2, cfg, 7) {
        let (x, y) = (&reps[t[0] / n], &el[t[0] % n]);
        let (u, v) = (&reps[t[1] / n], &el[t[1] % n]);
        let (f2, f3) = q.bb_bmbm_forms(sys, x, y, u, v);
        acc.check(f2 == f3, "bb-bmbm-forms", || label(&[x, y, u, v]));
    }
    for t in tuples(m * m * n, 1, cfg, 8) {
        let k = t[0];
        let (w, x, y) = (&reps[k / (m * n)], &reps[(k / n) % m], &el[k % n]);
        let (f2, f3) = q.piece_bmb_forms(sys, w, x, y);
        acc.check(f2 == f3, "piece-bmb-forms", || label(&[w, x, y]));
        let wxy = q.w_xy(sys, x, y);
        acc.check(sys.is_min_right(&wxy, q.j) && sys.is_min_left(&wxy, dj), "w-xy-shape", || label(&[x, y]));
        acc.check(q.piece_closure_leq(sys, w, &wxy) == f2, "w-xy-closure", || label(&[w, x, y]));
        let ymin = sys.coset_min(y, q.jp, Side::Right);
        let wmin = sys.coset_min(w, dj, Side::Left);
        match q.flag_projection_nonempty(sys, &wmin, x, &ymin) {
            Ok(p) => acc.check(p == f2, "flag-projection", || label(&[w, x, y])),
            Err(e) => acc.fail("flag-projection", format!("{}: {e}", label(&[w, x, y]))),
        }
    }
}

/// Partial-order axioms of every closure relation, and the open strata.
fn closure(cfg: &SuiteConfig) -> Result<Acc> {
    let sys = &*cfg.system;
    let mut acc = Acc::default();
    let mut jobs: Vec<(WonderfulContext, StratumKind)> = Vec::new();
    for (k, ctx) in cfg.contexts()?.into_iter().enumerate() {
        for kind in [StratumKind::GxG, StratumKind::BB, StratumKind::BmB, StratumKind::BmBm, StratumKind::Piece] {
            if k == 0 || kind == StratumKind::Piece {
                jobs.push((ctx.clone(), kind));
            }
        }
    }
    for (ctx, kind) in &jobs {
        let table = StrataTable::build(ctx, *kind)?;
        let n = table.len();
        let label = |i: usize| format!("delta={} {}", ctx.delta.spec_string(), table.stratum(i).describe(sys));
        let idx: Vec<usize> = (0..n).collect();
        acc.merge(sweep(&idx, |&a, acc| {
            acc.check(table.contains(a, a), "reflexive", || label(a));
            let row = table.closure_row(a);
            for b in row.ones() {
                if b != a {
                    acc.check(!table.contains(b, a), "antisymmetric", || format!("{} / {}", label(a), label(b)));
                    acc.check(table.codim(b) >= table.codim(a) || table.stratum(b).j != table.stratum(a).j, "codim-grows", || {
                        format!("{} / {}", label(a), label(b))
                    });
                }
                acc.check(table.closure_row(b).is_subset(row), "transitive", || format!("{} / {}", label(a), label(b)));
            }
        }));
        let top = ctx.open_stratum(*kind, sys.full_subset())?;
        let t = table.index_of(&top).expect("open stratum is enumerated");
        acc.check(table.codim(t) == 0, "open-codim", || label(t));
        for b in 0..n {
            acc.check(table.contains(t, b), "open-stratum-dense", || label(b));
        }
    }
    // the same relations at the quadruple level
    for ctx in cfg.contexts()? {
        let shadows = QuadrupleShadow::all(sys, &ctx.delta);
        acc.merge(sweep(&shadows, |q, acc| {
            let reps = sys.min_right_reps(q.j);
            let rel: Vec<Vec<bool>> = reps.iter().map(|w| reps.iter().map(|v| q.piece_closure_leq(sys, w, v)).collect()).collect();
            order_axioms(&rel, acc, &|a: &[usize]| {
                format!("q=({}, {}, {:?}) delta={} {:?}", q.j, q.jp, q.c, q.delta.spec_string(), a)
            });
        }));
        // orbit-to-quadruple translation of closures inside one orbit
        let subsets: Vec<SimpleSubset> = SimpleSubset::all(sys.rank()).collect();
        acc.merge(sweep(&subsets, |&j, acc| {
            let q = ctx.wonderful_quadruple(j);
            let reps = sys.min_right_reps(j);
            let n = |w: &WElem| ctx.to_quadruple_index(j, w);
            for w in &reps {
                for v in &reps {
                    let big = StratumRef::piece(sys, j, w.clone());
                    let small = StratumRef::piece(sys, j, v.clone());
                    let lhs = ctx.closure_leq_unchecked(&big, &small);
                    acc.check(lhs == q.piece_closure_leq(sys, &n(w), &n(v)), "translated-piece-closure", || {
                        format!("delta={} J={j} {}", ctx.delta.spec_string(), words(sys, &[w, v]))
                    });
                }
            }
        }));
    }
    Ok(acc)
}

fn order_axioms(rel: &[Vec<bool>], acc: &mut Acc, label: &dyn Fn(&[usize]) -> String) {
    let n = rel.len();
    for a in 0..n {
        acc.check(rel[a][a], "reflexive", || label(&[a]));
        for b in 0..n {
            if a != b && rel[a][b] {
                acc.check(!rel[b][a], "antisymmetric", || label(&[a, b]));
            }
            if rel[a][b] {
                for c in (0..n).filter(|&c| rel[b][c]) {
                    acc.check(rel[a][c], "transitive", || label(&[a, b, c]));
                }
            }
        }
    }
}

/// Every partition verified, refined index sets recounted by brute force,
/// and closures of same-orbit pairs tested against intersections.
fn partitions(cfg: &SuiteConfig) -> Result<Acc> {
    let mut acc = Acc::default();
    for (k, ctx) in cfg.contexts()?.into_iter().enumerate() {
        for kind in PartitionKind::ALL {
            if k > 0 && !kind.uses_delta() {
                continue;
            }
            let spec = build_partition(&ctx, kind)?;
            let report = verify_partition(&spec)?;
            let check = format!("partition/{kind}");
            acc.cases += report.containments_checked;
            acc.tally(&check, report.containments_checked, 0);
            for f in &report.failures {
                acc.fail(
                    &check,
                    format!(
                        "{:?} delta={} {} K={} {}",
                        f.violation,
                        ctx.delta.spec_string(),
                        f.cell,
                        f.k,
                        f.other.clone().unwrap_or_default()
                    ),
                );
            }
            if kind.is_refined() {
                let brute = brute_refined_count(&ctx, kind)?;
                acc.check(brute == spec.len() as u64, "refined-count", || {
                    format!("{kind} delta={}: {} cells vs {brute}", ctx.delta.spec_string(), spec.len())
                });
                acc.note(&format!("{kind}-cells-delta-{}", ctx.delta.spec_string()), spec.len() as u64);
                closure_intersection_consistency(&ctx, kind, &mut acc)?;
            }
        }
    }
    Ok(acc)
}

/// `|𝒥|` or `|𝒦|` from a loop over the oracle's Bruhat table and
/// enumerated cosets.
pub fn brute_refined_count(ctx: &WonderfulContext, kind: PartitionKind) -> Result<u64> {
    let sys = ctx.sys();
    let table = BruhatTable::build(sys)?;
    let n = sys.order();
    let idx = |w: &WElem| sys.index_of(w).expect("element of the system");
    let mut count = 0u64;
    for j in SimpleSubset::all(sys.rank()) {
        let par = table.parabolic(sys, j);
        let coset = |a: usize, left: bool| -> Vec<usize> {
            par.iter().map(|&u| if left { table.mul(u, a) } else { table.mul(a, u) }).collect()
        };
        let mins: Vec<usize> = (0..n).filter(|&a| table.unique_min(&coset(a, false)) == Some(a)).collect();
        match kind {
            PartitionKind::RefinedBBxBmBm => {
                for &x in &mins {
                    for &u in &mins {
                        if !table.leq(x, u) {
                            continue;
                        }
                        for y in 0..n {
                            let top = table.unique_max(&coset(y, false)).expect("coset maximum");
                            count += (0..n).filter(|&v| table.leq(v, top)).count() as u64;
                        }
                    }
                }
            }
            PartitionKind::RefinedPiecexBmB => {
                for &w in &mins {
                    let dw = idx(&ctx.delta.apply(&sys.elements()[w]));
                    let low = table.unique_min(&coset(dw, true)).expect("coset minimum");
                    for &x in &mins {
                        let dx = idx(&ctx.delta.apply(&sys.elements()[x]));
                        for y in 0..n {
                            let yi = table.inv(y);
                            let set: Vec<usize> = table.downset(yi).ones().map(|u| table.mul(u, dx)).collect();
                            let star = table.unique_max(&set).expect("unique maximum");
                            if table.leq(low, star) {
                                count += 1;
                            }
                        }
                    }
                }
            }
            _ => return Err(Error::Internal("not a refined partition".into())),
        }
    }
    Ok(count)
}

/// For every pair of strata over one `J`, they meet iff some pair of strata
/// over a common `K ⊂ J` inside the two closures meets.
fn closure_intersection_consistency(ctx: &WonderfulContext, kind: PartitionKind, acc: &mut Acc) -> Result<()> {
    let sys = ctx.sys();
    let [ka, kb] = [kind.factors()[0], kind.factors()[1]];
    let ta = StrataTable::build(ctx, ka)?;
    let tb = StrataTable::build(ctx, kb)?;
    let meets = |a: usize, b: usize| crate::partitions::intersects(ctx, ta.stratum(a), tb.stratum(b)).unwrap_or(false);
    let subsets: Vec<SimpleSubset> = SimpleSubset::all(ctx.rank()).collect();
    // meet[K] rows: for each a over K, the b over K meeting it
    let meet: BTreeMap<SimpleSubset, Vec<Vec<usize>>> = subsets
        .iter()
        .map(|&k| (k, ta.over(k).map(|a| tb.over(k).filter(|&b| meets(a, b)).collect()).collect()))
        .collect();
    let jobs: Vec<(SimpleSubset, usize)> = subsets.iter().flat_map(|&j| ta.over(j).map(move |a| (j, a))).collect();
    acc.merge(sweep(&jobs, |&(j, a), acc| {
        for b in tb.over(j) {
            let direct = meets(a, b);
            let via = j.subsets().any(|k| {
                let base_a = ta.over(k).start;
                ta.over(k)
                    .filter(|&a2| ta.contains(a, a2))
                    .any(|a2| meet[&k][a2 - base_a].iter().any(|&b2| tb.contains(b, b2)))
            });
            acc.check(direct == via, "closure-intersection", || {
                format!("delta={} {} & {}", ctx.delta.spec_string(), ta.stratum(a).describe(sys), tb.stratum(b).describe(sys))
            });
        }
    }));
    Ok(())
}

/// Component sets of boundary intersections, their explicit
/// parametrizations, and components of closures of pairs.
fn components(cfg: &SuiteConfig) -> Result<Acc> {
    let sys = &*cfg.system;
    let mut acc = Acc::default();
    for (k, ctx) in cfg.contexts()?.into_iter().enumerate() {
        for kind in [StratumKind::BB, StratumKind::BmB, StratumKind::BmBm, StratumKind::Piece] {
            if k > 0 && kind != StratumKind::Piece {
                continue;
            }
            let strata = ctx.enumerate_strata(kind);
            acc.merge(sweep(&strata, |x, acc| {
                let label = |k: SimpleSubset| format!("delta={} {} K={k}", ctx.delta.spec_string(), x.describe(sys));
                let Some(cx) = acc.result(ctx.codim(x), "codim") else { return };
                for kk in SimpleSubset::all(sys.rank()) {
                    let Some(comps) = acc.result(components_with_orbit_closure(&ctx, x, kk), "components") else { continue };
                    let i = x.j.intersection(kk);
                    let mut distinct = comps.clone();
                    distinct.dedup();
                    acc.check(distinct.len() == comps.len(), "components-distinct", || label(kk));
                    for c in &comps {
                        let ok = c.j == i
                            && ctx.codim(c).map(|m| m.value()) == Ok(cx.value())
                            && ctx.closure_leq(x, c).unwrap_or(false)
                            && ctx.closure_leq(&StratumRef::orbit(sys, kk), c).unwrap_or(false);
                        acc.check(ok, "component-shape", || format!("{} -> {}", label(kk), c.describe(sys)));
                    }
                    match kind {
                        StratumKind::Piece => {
                            let explicit = piece_components_explicit(&ctx, x.j, &x.x, kk);
                            acc.check(explicit == comps, "piece-components-explicit", || label(kk));
                        }
                        _ => {
                            if let Some(mut explicit) = acc.result(pair_components_explicit(&ctx, x, kk), "pair-components") {
                                let mut truth = comps.clone();
                                truth.sort_by_key(|s| (sys.index_of(&s.x), sys.index_of(&s.y)));
                                explicit.sort_by_key(|s| (sys.index_of(&s.x), sys.index_of(&s.y)));
                                acc.check(explicit == truth, "pair-components-explicit", || label(kk));
                            }
                        }
                    }
                    if kind == StratumKind::BmB {
                        {
                            if let Some(m) = acc.result(compare_bmb_readings(&ctx, x, kk), "bmb-readings") {
                                acc.note("bmb-readings-cases", 1);
                                acc.note("bmb-readings-literal-match", m.literal as u64);
                                acc.note("bmb-readings-maximal-length-match", m.maximal_length as u64);
                                acc.note("bmb-readings-through-bb-match", m.through_bb as u64);
                            }
                        }
                    }
                }
            }));
        }
        cross_components(&ctx, &mut acc)?;
        refined_component_sets(&ctx, &mut acc)?;
    }
    Ok(acc)
}

/// For each compatible pair `(X, Y)`: disjointness agrees with the
/// closure-level scan, component pairs are non-empty when closures meet,
/// and codimensions add up.
fn cross_components(ctx: &WonderfulContext, acc: &mut Acc) -> Result<()> {
    let sys = ctx.sys();
    for (ka, kb) in [(StratumKind::BB, StratumKind::BmBm), (StratumKind::Piece, StratumKind::BmB)] {
        let xs = ctx.enumerate_strata(ka);
        let ys = ctx.enumerate_strata(kb);
        let stride = ((xs.len() * ys.len()) as u64 / 20_000).max(1) as usize;
        let pairs: Vec<(usize, usize)> = (0..xs.len())
            .flat_map(|a| (0..ys.len()).map(move |b| (a, b)))
            .step_by(stride)
            .collect();
        acc.merge(sweep(&pairs, |&(a, b), acc| {
            let (x, y) = (&xs[a], &ys[b]);
            let label = || format!("delta={} {} & {}", ctx.delta.spec_string(), x.describe(sys), y.describe(sys));
            let Some(res) = acc.result(components_cross(ctx, x, y), "components-cross") else { return };
            match res {
                CrossComponents::Disjoint => acc.note("cross-disjoint", 1),
                CrossComponents::Components(pairs) => {
                    acc.check(!pairs.is_empty(), "cross-nonempty", label);
                    let total = ctx.codim(x).map(|m| m.value()).unwrap_or(0) + ctx.codim(y).map(|m| m.value()).unwrap_or(0);
                    for (p, q) in &pairs {
                        let sum = ctx.codim(p).map(|m| m.value()).unwrap_or(0) + ctx.codim(q).map(|m| m.value()).unwrap_or(0);
                        acc.check(sum == total, "cross-codim", label);
                    }
                    if x.j == y.j {
                        acc.check(pairs == vec![(x.clone(), y.clone())], "cross-same-orbit", label);
                    }
                    acc.note("cross-components", pairs.len() as u64);
                }
            }
        }));
    }
    Ok(())
}

/// Components of `closure(cell) ∩ closure(Z_K)` for refined cells equal the
/// equal-codimension cells over `J ∩ K` inside the closure.
fn refined_component_sets(ctx: &WonderfulContext, acc: &mut Acc) -> Result<()> {
    let sys = ctx.sys();
    for kind in [PartitionKind::RefinedBBxBmBm, PartitionKind::RefinedPiecexBmB] {
        let spec = build_partition(ctx, kind)?;
        let stride = (spec.len() / 400).max(1);
        let cells: Vec<usize> = (0..spec.len()).step_by(stride).collect();
        acc.merge(sweep(&cells, |&i, acc| {
            let parts = spec.cell_strata(i);
            let codim = spec.cell_codim(i);
            for kk in SimpleSubset::all(sys.rank()) {
                let inter = parts[0].j.intersection(kk);
                let Some(mut got) = acc.result(refined_components(ctx, &parts[0], &parts[1], kk), "refined-components") else {
                    continue;
                };
                let mut want: Vec<(StratumRef, StratumRef)> = spec
                    .over(inter)
                    .filter(|&b| spec.cell_contains(i, b) && spec.cell_codim(b) == codim)
                    .map(|b| {
                        let s = spec.cell_strata(b);
                        (s[0].clone(), s[1].clone())
                    })
                    .collect();
                let key = |p: &(StratumRef, StratumRef)| {
                    (sys.index_of(&p.0.x), sys.index_of(&p.0.y), sys.index_of(&p.1.x), sys.index_of(&p.1.y))
                };
                got.sort_by_key(key);
                want.sort_by_key(key);
                acc.check(!got.is_empty() && got == want, "refined-components", || {
                    format!("{kind} delta={} {} K={kk}", ctx.delta.spec_string(), parts.iter().map(|s| s.describe(sys)).collect::<Vec<_>>().join(" & "))
                });
            }
        }));
    }
    Ok(())
}

/// The Frobenius-orbit layer for each `delta`, with the matching twist and
/// with the identity twist.
fn dl(cfg: &SuiteConfig) -> Result<Acc> {
    let mut acc = Acc::default();
    for ctx in cfg.contexts()? {
        let mut twists = vec![ctx.delta.inverse()];
        if !ctx.delta.is_identity() {
            twists.push(DiagramAutomorphism::identity(ctx.rank()));
        }
        for t in twists {
            let r = dl_consistency(&ctx, &t)?;
            acc.cases += r.quadruples as u64;
            acc.tally("dl", r.quadruples as u64, 0);
            if r.twist_coincidence.is_some() {
                acc.note("twist-coincidence-checked", 1);
            }
            for f in r.failures {
                acc.fail(
                    "dl",
                    format!("{:?} delta={} twist={} {} {} {:?}",
                        f.violation, ctx.delta.spec_string(), t.spec_string(), f.quadruple, f.relation, f.elements),
                );
            }
        }
    }
    Ok(acc)
}
