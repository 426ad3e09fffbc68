//! Strata of the wonderful compactification and of the homogeneous spaces
//! `Z_C`, described purely by Weyl group indices.
//!
//! Two levels live here. The compactification level works with the
//! `G x G`-orbit `Z_J`, cut into Borel orbits or into stable pieces. The quadruple level works with a shadow `(J, J', c)` of an
//! admissible quadruple; orbit `Z_J` is identified with the quadruple level
//! for `(J*, J, c)` through `x -> x w0^J w0`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, DiagramAutomorphism, WElem};
use crate::error::{Error, Result};
use crate::monoid::Side;
use crate::subset::SimpleSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StratumKind {
    /// `G x G`-orbit `Z_J`.
    GxG,
    /// `B x B`-orbit `[J, x, y]`.
    BB,
    /// `B^- x B`-orbit `[J, x, y]^{-,+}`.
    BmB,
    /// `B^- x B^-`-orbit `[J, x, y]^{-,-}`.
    BmBm,
    /// Stable piece `Z_{J, delta, w}`.
    Piece,
    /// Frobenius-graph orbit `Z_{C, F, w}` (quadruple level only).
    FPiece,
}

impl StratumKind {
    pub const ALL: [StratumKind; 6] =
        [StratumKind::GxG, StratumKind::BB, StratumKind::BmB, StratumKind::BmBm, StratumKind::Piece, StratumKind::FPiece];

    pub fn name(self) -> &'static str {
        match self {
            StratumKind::GxG => "gxg",
            StratumKind::BB => "bb",
            StratumKind::BmB => "bmb",
            StratumKind::BmBm => "bmbm",
            StratumKind::Piece => "piece",
            StratumKind::FPiece => "fpiece",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// Indexed by a pair `(x, y)` with `x` in `W^J`.
    pub fn is_orbit_pair(self) -> bool {
        matches!(self, StratumKind::BB | StratumKind::BmB | StratumKind::BmBm)
    }

    pub fn is_piece(self) -> bool {
        matches!(self, StratumKind::Piece | StratumKind::FPiece)
    }
}

impl fmt::Display for StratumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One stratum. For pieces the index `w` is stored in `x` and `y` is the
/// identity; for `G x G`-orbits both are the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StratumRef {
    pub kind: StratumKind,
    pub j: SimpleSubset,
    pub x: WElem,
    pub y: WElem,
}

impl StratumRef {
    pub fn orbit(sys: &CoxeterSystem, j: SimpleSubset) -> Self {
        StratumRef { kind: StratumKind::GxG, j, x: sys.identity(), y: sys.identity() }
    }

    pub fn pair(kind: StratumKind, j: SimpleSubset, x: WElem, y: WElem) -> Self {
        debug_assert!(kind.is_orbit_pair());
        StratumRef { kind, j, x, y }
    }

    pub fn piece(sys: &CoxeterSystem, j: SimpleSubset, w: WElem) -> Self {
        StratumRef { kind: StratumKind::Piece, j, x: w, y: sys.identity() }
    }

    pub fn fpiece(sys: &CoxeterSystem, j: SimpleSubset, w: WElem) -> Self {
        StratumRef { kind: StratumKind::FPiece, j, x: w, y: sys.identity() }
    }

    /// Index of a piece.
    pub fn w(&self) -> &WElem {
        &self.x
    }

    pub fn describe(&self, sys: &CoxeterSystem) -> String {
        match self.kind {
            StratumKind::GxG => format!("Z_{}", self.j),
            k if k.is_piece() => format!("{k} J={} w={}", self.j, sys.word_string(&self.x)),
            k => format!("{k} J={} x={} y={}", self.j, sys.word_string(&self.x), sys.word_string(&self.y)),
        }
    }
}

/// Dimension of a `G x G`-orbit, or codimension of a stratum inside its orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Dim(usize),
    Codim(usize),
}

impl Measure {
    pub fn value(self) -> usize {
        match self {
            Measure::Dim(d) | Measure::Codim(d) => d,
        }
    }
}

/// The compactification-level universe: a Weyl group, the twisting
/// automorphism `delta` of the stable pieces, and the twist used by
/// Frobenius-graph orbits.
#[derive(Debug, Clone)]
pub struct WonderfulContext {
    pub system: Arc<CoxeterSystem>,
    pub delta: DiagramAutomorphism,
    /// Automorphism `tau` in the F-piece closure rule `tau(u) w' u^{-1} <= w`.
    pub twist: DiagramAutomorphism,
    pub dim_g: usize,
}

impl WonderfulContext {
    pub fn new(system: impl Into<Arc<CoxeterSystem>>, delta: DiagramAutomorphism) -> Result<Self> {
        let system = system.into();
        let delta = DiagramAutomorphism::new(system.cartan(), delta.perm().to_vec())?;
        let dim_g = 2 * system.positive_roots().len() + system.rank();
        let twist = DiagramAutomorphism::identity(system.rank());
        Ok(WonderfulContext { system, delta, twist, dim_g })
    }

    pub fn untwisted(system: impl Into<Arc<CoxeterSystem>>) -> Self {
        let system = system.into();
        let id = DiagramAutomorphism::identity(system.rank());
        Self::new(system, id).expect("identity is always an automorphism")
    }

    pub fn with_twist(mut self, twist: DiagramAutomorphism) -> Result<Self> {
        self.twist = DiagramAutomorphism::new(self.system.cartan(), twist.perm().to_vec())?;
        Ok(self)
    }

    pub fn sys(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    fn check_subset(&self, j: SimpleSubset) -> Result<()> {
        if j.fits(self.rank()) {
            Ok(())
        } else {
            Err(Error::MalformedStratum(format!("subset {j} exceeds rank {}", self.rank())))
        }
    }

    fn require_min(&self, what: &'static str, w: &WElem, j: SimpleSubset) -> Result<()> {
        self.system.check(w)?;
        if self.system.is_min_right(w, j) {
            Ok(())
        } else {
            Err(Error::NotMinimalRep { what, subset: j.to_string() })
        }
    }

    /// Checks the indexing invariants of a stratum.
    pub fn validate(&self, s: &StratumRef) -> Result<()> {
        self.check_subset(s.j)?;
        self.system.check(&s.x)?;
        self.system.check(&s.y)?;
        match s.kind {
            StratumKind::GxG => {
                if !s.x.is_identity() || !s.y.is_identity() {
                    return Err(Error::MalformedStratum("G x G-orbits carry no Weyl group index".into()));
                }
            }
            k if k.is_piece() => {
                self.require_min("w", &s.x, s.j)?;
                if !s.y.is_identity() {
                    return Err(Error::MalformedStratum("pieces carry a single index".into()));
                }
            }
            _ => self.require_min("x", &s.x, s.j)?,
        }
        Ok(())
    }

    /// Shadow of the quadruple `C_J = (J*, J, c)` with `J* = -w0(J)` and
    /// `c` sending `alpha` in `J*` to `w0^J w0 (alpha)`.
    pub fn wonderful_quadruple(&self, j: SimpleSubset) -> QuadrupleShadow {
        let sys = self.sys();
        let w0 = sys.longest();
        let star: SimpleSubset = j
            .iter()
            .map(|i| sys.neg_simple_image(&w0, i).expect("-w0 permutes the simple roots"))
            .collect();
        let n = sys.mul(&sys.longest_element(j), &w0);
        let mut c = vec![None; self.rank()];
        for k in star.iter() {
            c[k] = Some(sys.simple_image(&n, k).expect("w0^J w0 maps J* onto J"));
        }
        QuadrupleShadow { j: star, jp: j, c, delta: self.delta.clone() }
    }

    /// `x -> x w0^J w0`: index translation from `Z_J` to the quadruple level.
    pub fn to_quadruple_index(&self, j: SimpleSubset, x: &WElem) -> WElem {
        let sys = self.sys();
        sys.mul(&sys.mul(x, &sys.longest_element(j)), &sys.longest())
    }

    /// Every stratum of `kind` over `J`, in ShortLex order of indices.
    pub fn strata_over(&self, kind: StratumKind, j: SimpleSubset) -> Vec<StratumRef> {
        let sys = self.sys();
        match kind {
            StratumKind::GxG => vec![StratumRef::orbit(sys, j)],
            StratumKind::Piece => sys.min_right_reps(j).into_iter().map(|w| StratumRef::piece(sys, j, w)).collect(),
            StratumKind::FPiece => sys.min_right_reps(j).into_iter().map(|w| StratumRef::fpiece(sys, j, w)).collect(),
            k => {
                let mut out = Vec::new();
                for x in sys.min_right_reps(j) {
                    for y in sys.elements() {
                        out.push(StratumRef::pair(k, j, x.clone(), y.clone()));
                    }
                }
                out
            }
        }
    }

    /// The full index set of a partition of the compactification.
    pub fn enumerate_strata(&self, kind: StratumKind) -> Vec<StratumRef> {
        SimpleSubset::all(self.rank()).flat_map(|j| self.strata_over(kind, j)).collect()
    }

    /// Dimension of `Z_J` for orbits, codimension in `Z_J` otherwise.
    pub fn codim(&self, s: &StratumRef) -> Result<Measure> {
        let sys = self.sys();
        let l0 = sys.longest().length() as i64;
        let lx = s.x.length() as i64;
        let ly = s.y.length() as i64;
        let w0j = || sys.longest_element(s.j);
        let v = match s.kind {
            StratumKind::GxG => {
                return Ok(Measure::Dim(self.dim_g - self.rank() + s.j.len()));
            }
            StratumKind::BB => l0 + lx - ly,
            StratumKind::Piece => lx,
            StratumKind::BmB => {
                let w = w0j();
                2 * l0 - sys.mul(&s.x, &w).length() as i64 - sys.mul(&s.y, &w).length() as i64
            }
            StratumKind::BmBm => {
                let w = w0j();
                l0 - sys.mul(&s.x, &w).length() as i64 + sys.mul(&s.y, &w).length() as i64
            }
            StratumKind::FPiece => {
                return Err(Error::IncompatibleKinds("codimension of F-pieces is not defined on the compactification".into()))
            }
        };
        usize::try_from(v).map(Measure::Codim).map_err(|_| Error::Internal(format!("negative codimension {v}")))
    }

    /// `C_J(w) = { twist^{-1}(u) w u^{-1} : u in W_J }` and its minimal-length elements.
    pub fn min_twisted_class(&self, j: SimpleSubset, w: &WElem, twist: &DiagramAutomorphism) -> (Vec<WElem>, Vec<WElem>) {
        let sys = self.sys();
        let tinv = twist.inverse();
        let mut class: Vec<WElem> = sys
            .parabolic_elements(j)
            .iter()
            .map(|u| sys.mul(&sys.mul(&tinv.apply(u), w), &u.inverse()))
            .collect();
        class.sort_by_key(|v| sys.index_of(v));
        class.dedup();
        let min_len = class.iter().map(WElem::length).min().unwrap_or(0);
        let mins = class.iter().filter(|v| v.length() == min_len).cloned().collect();
        (class, mins)
    }

    /// Whether `small` lies in the closure of `big`.
    ///
    /// Same kinds use the kind's closure rule (`false` when `J(small)` is not
    /// inside `J(big)`). A `G x G`-orbit as `big` contains every stratum over a
    /// subset of its `J`; a `G x G`-orbit `Z_K` as `small` is contained in the
    /// closure of `big` exactly when the open stratum of `Z_K` of the same
    /// kind is.
    pub fn closure_leq(&self, big: &StratumRef, small: &StratumRef) -> Result<bool> {
        self.validate(big)?;
        self.validate(small)?;
        if big.kind == StratumKind::GxG {
            return Ok(small.j.is_subset(big.j));
        }
        if small.kind == StratumKind::GxG {
            let open = self.open_stratum(big.kind, small.j)?;
            return self.closure_leq(big, &open);
        }
        if big.kind != small.kind {
            return Err(Error::IncompatibleKinds(format!("{} vs {}", big.kind, small.kind)));
        }
        if big.kind == StratumKind::FPiece {
            if big.j != small.j {
                return Err(Error::IncompatibleKinds("F-piece closures are only defined inside one orbit".into()));
            }
            return Ok(self.fpiece_closure_leq(big.j, &big.x, &small.x));
        }
        if !small.j.is_subset(big.j) {
            return Ok(false);
        }
        Ok(self.closure_leq_unchecked(big, small))
    }

    /// Closure rule without validation; `small.j` must be a subset of `big.j`
    /// and kinds must agree (pieces, orbit pairs).
    pub(crate) fn closure_leq_unchecked(&self, big: &StratumRef, small: &StratumRef) -> bool {
        let sys = self.sys();
        let (j, k) = (big.j, small.j);
        match big.kind {
            StratumKind::GxG => k.is_subset(j),
            StratumKind::Piece => {
                let (_, mins) = self.min_twisted_class(j, &big.x, &self.delta);
                mins.iter().any(|w1| sys.bruhat_leq(w1, &small.x))
            }
            StratumKind::FPiece => j == k && self.fpiece_closure_leq(j, &big.x, &small.x),
            kind => {
                let w0k = sys.longest_element(k);
                let (xs, ys) = match kind {
                    StratumKind::BB => (small.x.clone(), small.y.clone()),
                    _ => (sys.mul(&small.x, &w0k), sys.mul(&small.y, &w0k)),
                };
                sys.parabolic_elements(j).iter().any(|u| {
                    let xu = sys.mul(&big.x, u);
                    let yu = sys.mul(&big.y, u);
                    match kind {
                        StratumKind::BB => sys.bruhat_leq(&xu, &xs) && sys.bruhat_leq(&ys, &yu),
                        StratumKind::BmB => sys.bruhat_leq(&xs, &xu) && sys.bruhat_leq(&ys, &yu),
                        _ => sys.bruhat_leq(&xs, &xu) && sys.bruhat_leq(&yu, &ys),
                    }
                })
            }
        }
    }

    /// `exists u in W_J: twist(u) w' u^{-1} <= w`.
    pub fn fpiece_closure_leq(&self, j: SimpleSubset, w: &WElem, w_small: &WElem) -> bool {
        let sys = self.sys();
        sys.parabolic_elements(j)
            .iter()
            .any(|u| sys.bruhat_leq(&sys.mul(&sys.mul(&self.twist.apply(u), w_small), &u.inverse()), w))
    }

    /// The unique codimension-zero stratum of `kind` over `J`.
    pub fn open_stratum(&self, kind: StratumKind, j: SimpleSubset) -> Result<StratumRef> {
        let sys = self.sys();
        let w0 = sys.longest();
        Ok(match kind {
            StratumKind::GxG => StratumRef::orbit(sys, j),
            StratumKind::BB => StratumRef::pair(kind, j, sys.identity(), w0),
            StratumKind::BmB => {
                let m = sys.mul(&w0, &sys.longest_element(j));
                StratumRef::pair(kind, j, m.clone(), m)
            }
            StratumKind::BmBm => {
                let w0j = sys.longest_element(j);
                StratumRef::pair(kind, j, sys.mul(&w0, &w0j), w0j)
            }
            StratumKind::Piece => StratumRef::piece(sys, j, sys.identity()),
            StratumKind::FPiece => {
                return Err(Error::IncompatibleKinds("F-pieces have no compactification-level open stratum".into()))
            }
        })
    }

    /// `[J, x, y]` meets `[J, u, v]^{-,-}` iff `x <= u` and `v <= max(y W_J)`.
    pub fn nonempty_bb_bmbm(&self, j: SimpleSubset, x: &WElem, y: &WElem, u: &WElem, v: &WElem) -> Result<bool> {
        self.check_subset(j)?;
        self.require_min("x", x, j)?;
        self.require_min("u", u, j)?;
        self.system.check(y)?;
        self.system.check(v)?;
        Ok(self.nonempty_bb_bmbm_unchecked(j, x, y, u, v))
    }

    pub(crate) fn nonempty_bb_bmbm_unchecked(&self, j: SimpleSubset, x: &WElem, y: &WElem, u: &WElem, v: &WElem) -> bool {
        let sys = self.sys();
        sys.bruhat_leq(x, u) && sys.bruhat_leq(v, &sys.coset_max(y, j, Side::Right))
    }

    /// `Z_{J,delta,w}` meets `[J, x, y]^{-,+}` iff
    /// `min(W_J delta(w)) <= y^{-1} * delta(x)`.
    pub fn nonempty_piece_bmb(&self, j: SimpleSubset, w: &WElem, x: &WElem, y: &WElem) -> Result<bool> {
        self.check_subset(j)?;
        self.require_min("w", w, j)?;
        self.require_min("x", x, j)?;
        self.system.check(y)?;
        Ok(self.nonempty_piece_bmb_unchecked(j, w, x, y))
    }

    pub(crate) fn nonempty_piece_bmb_unchecked(&self, j: SimpleSubset, w: &WElem, x: &WElem, y: &WElem) -> bool {
        let (lhs, rhs) = self.piece_bmb_sides(j, w, x, y);
        self.sys().bruhat_leq(&lhs, &rhs)
    }

    /// Both sides of the piece/opposite-orbit inequality.
    pub fn piece_bmb_sides(&self, j: SimpleSubset, w: &WElem, x: &WElem, y: &WElem) -> (WElem, WElem) {
        let sys = self.sys();
        let lhs = sys.coset_min(&self.delta.apply(w), j, Side::Left);
        let rhs = sys.demazure(&y.inverse(), &self.delta.apply(x));
        (lhs, rhs)
    }

    /// Both sides of `v <= max(y W_J)` (the `x <= u` half is reported separately).
    pub fn bb_bmbm_sides(&self, j: SimpleSubset, y: &WElem, v: &WElem) -> (WElem, WElem) {
        (v.clone(), self.sys().coset_max(y, j, Side::Right))
    }
}

/// The combinatorial part `(J, J', c)` of an admissible quadruple, plus the
/// automorphism `delta` of the stable pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleShadow {
    pub j: SimpleSubset,
    pub jp: SimpleSubset,
    /// `c[i] = Some(c(i))` for `i` in `J`, `None` elsewhere.
    pub c: Vec<Option<usize>>,
    pub delta: DiagramAutomorphism,
}

impl QuadrupleShadow {
    pub fn new(
        sys: &CoxeterSystem,
        j: SimpleSubset,
        jp: SimpleSubset,
        c: Vec<Option<usize>>,
        delta: DiagramAutomorphism,
    ) -> Result<Self> {
        let n = sys.rank();
        let cartan = sys.cartan();
        if !j.fits(n) || !jp.fits(n) || c.len() != n {
            return Err(Error::InvalidQuadruple("subsets or map exceed the rank".into()));
        }
        let image: Vec<usize> = c.iter().flatten().copied().collect();
        let domain: SimpleSubset = c.iter().enumerate().filter(|(_, t)| t.is_some()).map(|(i, _)| i).collect();
        if domain != j {
            return Err(Error::InvalidQuadruple(format!("c is defined on {domain}, expected {j}")));
        }
        let img_set: SimpleSubset = image.iter().copied().collect();
        if img_set != jp || image.len() != jp.len() {
            return Err(Error::InvalidQuadruple(format!("c does not map {j} bijectively onto {jp}")));
        }
        let lengths = cartan.root_lengths();
        if j.iter().any(|a| lengths[a] != lengths[c[a].unwrap()]) {
            return Err(Error::InvalidQuadruple("c does not preserve root lengths".into()));
        }
        for a in j.iter() {
            for b in j.iter() {
                let (ca, cb) = (c[a].unwrap(), c[b].unwrap());
                if cartan.entry(ca, cb) != cartan.entry(a, b) {
                    return Err(Error::InvalidQuadruple(format!("c does not preserve the pairing of {a} and {b}")));
                }
            }
        }
        DiagramAutomorphism::new(cartan, delta.perm().to_vec())?;
        Ok(QuadrupleShadow { j, jp, c, delta })
    }

    /// `(J, J, id)`.
    pub fn diagonal(sys: &CoxeterSystem, j: SimpleSubset, delta: DiagramAutomorphism) -> Self {
        let c = (0..sys.rank()).map(|i| j.contains(i).then_some(i)).collect();
        QuadrupleShadow { j, jp: j, c, delta }
    }

    /// Every shadow `(J, J', c)` for the given `delta`.
    pub fn all(sys: &CoxeterSystem, delta: &DiagramAutomorphism) -> Vec<Self> {
        let n = sys.rank();
        let mut out = Vec::new();
        for j in SimpleSubset::all(n) {
            for jp in SimpleSubset::all(n).filter(|jp| jp.len() == j.len()) {
                let dom: Vec<usize> = j.iter().collect();
                let cod: Vec<usize> = jp.iter().collect();
                for perm in permutations(cod.len()) {
                    let mut c = vec![None; n];
                    for (k, &a) in dom.iter().enumerate() {
                        c[a] = Some(cod[perm[k]]);
                    }
                    if let Ok(q) = QuadrupleShadow::new(sys, j, jp, c, delta.clone()) {
                        out.push(q);
                    }
                }
            }
        }
        out
    }

    /// `c(u)` for `u` in `W_J`, letter by letter.
    pub fn apply_c(&self, sys: &CoxeterSystem, u: &WElem) -> WElem {
        let word: Vec<usize> = sys
            .reduced_word(u)
            .into_iter()
            .map(|i| self.c[i].expect("element outside W_J"))
            .collect();
        sys.from_word(&word)
    }

    fn require_min(&self, sys: &CoxeterSystem, what: &'static str, w: &WElem, j: SimpleSubset) -> Result<()> {
        sys.check(w)?;
        if sys.is_min_right(w, j) {
            Ok(())
        } else {
            Err(Error::NotMinimalRep { what, subset: j.to_string() })
        }
    }

    /// `[C, x, y]` meets `[C, u, v]^{-,-}`. Evaluates both
    /// `u <= x, min(v W_J') <= y` and `u <= x, v <= max(y W_J')` and reports
    /// disagreement as an internal error.
    pub fn nonempty_bb_bmbm(&self, sys: &CoxeterSystem, x: &WElem, y: &WElem, u: &WElem, v: &WElem) -> Result<bool> {
        self.require_min(sys, "x", x, self.j)?;
        self.require_min(sys, "u", u, self.j)?;
        sys.check(y)?;
        sys.check(v)?;
        let (a, b) = self.bb_bmbm_forms(sys, x, y, u, v);
        if a != b {
            return Err(Error::Internal("opposite-orbit criterion forms disagree".into()));
        }
        Ok(a)
    }

    pub fn bb_bmbm_forms(&self, sys: &CoxeterSystem, x: &WElem, y: &WElem, u: &WElem, v: &WElem) -> (bool, bool) {
        let ux = sys.bruhat_leq(u, x);
        let f2 = ux && sys.bruhat_leq(&sys.coset_min(v, self.jp, Side::Right), y);
        let f3 = ux && sys.bruhat_leq(v, &sys.coset_max(y, self.jp, Side::Right));
        (f2, f3)
    }

    /// `Z_{C,delta,w}` meets `[C, x, y]^{-,+}`; both equivalent forms are
    /// evaluated and must agree.
    pub fn nonempty_piece_bmb(&self, sys: &CoxeterSystem, w: &WElem, x: &WElem, y: &WElem) -> Result<bool> {
        self.require_min(sys, "w", w, self.j)?;
        self.require_min(sys, "x", x, self.j)?;
        sys.check(y)?;
        let (a, b) = self.piece_bmb_forms(sys, w, x, y);
        if a != b {
            return Err(Error::Internal("piece criterion forms disagree".into()));
        }
        Ok(a)
    }

    /// `(y^{-1} ▷ delta(x) <= max(W_J' delta(w)), min(W_J' (y^{-1} ▷ delta(x))) <= delta(w))`.
    pub fn piece_bmb_forms(&self, sys: &CoxeterSystem, w: &WElem, x: &WElem, y: &WElem) -> (bool, bool) {
        let t = sys.tri_left(&y.inverse(), &self.delta.apply(x));
        let dw = self.delta.apply(w);
        let f2 = sys.bruhat_leq(&t, &sys.coset_max(&dw, self.jp, Side::Left));
        let f3 = sys.bruhat_leq(&sys.coset_min(&t, self.jp, Side::Left), &dw);
        (f2, f3)
    }

    /// `w_{x,y} = min(W_{delta^{-1}(J')} (delta^{-1}(y^{-1}) ▷ x))`.
    pub fn w_xy(&self, sys: &CoxeterSystem, x: &WElem, y: &WElem) -> WElem {
        let dinv = self.delta.inverse();
        let t = sys.tri_left(&dinv.apply(&y.inverse()), x);
        sys.coset_min(&t, dinv.apply_subset(self.jp), Side::Left)
    }

    /// Closure of stable pieces at the quadruple level:
    /// `exists u in W_J: delta^{-1}(c(u)) w' u^{-1} <= w`.
    pub fn piece_closure_leq(&self, sys: &CoxeterSystem, w: &WElem, w_small: &WElem) -> bool {
        let dinv = self.delta.inverse();
        sys.parabolic_elements(self.j).iter().any(|u| {
            let left = dinv.apply(&self.apply_c(sys, u));
            sys.bruhat_leq(&sys.mul(&sys.mul(&left, w_small), &u.inverse()), w)
        })
    }

    /// Orbit closures at the quadruple level: whether `(xs, ys)` indexes a
    /// stratum in the closure of the one indexed by `(x, y)`.
    pub fn orbit_closure_leq(
        &self,
        sys: &CoxeterSystem,
        kind: StratumKind,
        (x, y): (&WElem, &WElem),
        (xs, ys): (&WElem, &WElem),
    ) -> Result<bool> {
        if !kind.is_orbit_pair() {
            return Err(Error::IncompatibleKinds(format!("{kind} is not an orbit kind")));
        }
        let xw = sys.mul(x, &sys.longest_element(self.j));
        let yw = sys.mul(y, &sys.longest_element(self.jp));
        Ok(sys.parabolic_elements(self.j).iter().any(|u| {
            let xu = sys.mul(xs, u);
            let yc = sys.mul(ys, &self.apply_c(sys, u));
            match kind {
                StratumKind::BB => sys.bruhat_leq(&xu, x) && sys.bruhat_leq(&yc, y),
                StratumKind::BmB => sys.bruhat_leq(&xw, &xu) && sys.bruhat_leq(&yc, &yw),
                _ => sys.bruhat_leq(&xw, &xu) && sys.bruhat_leq(&yw, &yc),
            }
        }))
    }

    /// Projection criterion to `(G x G)/(P_J x P_J')`:
    /// `y^{-1} ▷ delta(x) <= max(W_J' delta(w))`, for
    /// `w` in `^{delta^{-1}(J')}W^J`, `x` in `W^J`, `y` in `W^{J'}`.
    pub fn flag_projection_nonempty(&self, sys: &CoxeterSystem, w: &WElem, x: &WElem, y: &WElem) -> Result<bool> {
        self.require_min(sys, "w", w, self.j)?;
        let dj = self.delta.inverse().apply_subset(self.jp);
        if !sys.is_min_left(w, dj) {
            return Err(Error::NotMinimalRep { what: "w (left)", subset: dj.to_string() });
        }
        self.require_min(sys, "x", x, self.j)?;
        self.require_min(sys, "y", y, self.jp)?;
        let t = sys.tri_left(&y.inverse(), &self.delta.apply(x));
        Ok(sys.bruhat_leq(&t, &sys.coset_max(&self.delta.apply(w), self.jp, Side::Left)))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    fn ctx(label: &str) -> WonderfulContext {
        WonderfulContext::untwisted(CoxeterSystem::build(CartanDatum::from_label(label).unwrap()).unwrap())
    }

    fn flip_ctx() -> WonderfulContext {
        let c = CartanDatum::from_label("A2").unwrap();
        let s = CoxeterSystem::build(c.clone()).unwrap();
        WonderfulContext::new(s, DiagramAutomorphism::parse(&c, "1,0").unwrap()).unwrap()
    }

    fn j(v: &[usize]) -> SimpleSubset {
        v.iter().copied().collect()
    }

    #[test]
    fn quadruple_of_orbit() {
        let c = ctx("A2");
        let q = c.wonderful_quadruple(SimpleSubset::EMPTY);
        assert_eq!((q.j, q.jp), (SimpleSubset::EMPTY, SimpleSubset::EMPTY));
        assert!(q.c.iter().all(Option::is_none));
        let q = c.wonderful_quadruple(j(&[0]));
        assert_eq!(q.j, j(&[1]));
        assert_eq!(q.c, vec![None, Some(0)]);
        let q = c.wonderful_quadruple(j(&[0, 1]));
        assert_eq!(q.j, j(&[0, 1]));
        assert_eq!(q.c, vec![Some(0), Some(1)]);
    }

    #[test]
    fn stratum_counts_a2() {
        let c = ctx("A2");
        assert_eq!(c.enumerate_strata(StratumKind::GxG).len(), 4);
        assert_eq!(c.enumerate_strata(StratumKind::BB).len(), 78);
        assert_eq!(c.enumerate_strata(StratumKind::BmBm).len(), 78);
        assert_eq!(c.enumerate_strata(StratumKind::Piece).len(), 13);
    }

    #[test]
    fn codim_examples() {
        let c = ctx("A2");
        let s = c.sys();
        let p = StratumRef::piece(s, j(&[0]), s.from_word(&[1]));
        assert_eq!(c.codim(&p).unwrap(), Measure::Codim(1));
        let bb = StratumRef::pair(StratumKind::BB, SimpleSubset::EMPTY, s.from_word(&[0]), s.from_word(&[1]));
        assert_eq!(c.codim(&bb).unwrap(), Measure::Codim(3));
        let bmb = StratumRef::pair(StratumKind::BmB, s.full_subset(), s.identity(), s.identity());
        assert_eq!(c.codim(&bmb).unwrap(), Measure::Codim(0));
        // dim G = 8 for A2
        assert_eq!(c.codim(&StratumRef::orbit(s, s.full_subset())).unwrap(), Measure::Dim(8));
        assert_eq!(c.codim(&StratumRef::orbit(s, SimpleSubset::EMPTY)).unwrap(), Measure::Dim(6));
    }

    #[test]
    fn closure_examples() {
        let c = ctx("A2");
        let s = c.sys();
        let big = StratumRef::pair(StratumKind::BB, j(&[0]), s.from_word(&[1]), s.identity());
        assert!(c.closure_leq(&big, &big).unwrap());
        let small = StratumRef::pair(StratumKind::BB, SimpleSubset::EMPTY, s.from_word(&[1, 0]), s.from_word(&[0]));
        assert!(c.closure_leq(&big, &small).unwrap());
        let small = StratumRef::pair(StratumKind::BB, SimpleSubset::EMPTY, s.identity(), s.longest());
        assert!(!c.closure_leq(&big, &small).unwrap());
        // K not inside J
        let other = StratumRef::pair(StratumKind::BB, j(&[1]), s.identity(), s.identity());
        assert!(!c.closure_leq(&big, &other).unwrap());
        // mixed kinds
        let piece = StratumRef::piece(s, j(&[0]), s.identity());
        assert!(c.closure_leq(&big, &piece).is_err());
    }

    #[test]
    fn closure_with_orbits() {
        let c = ctx("A2");
        let s = c.sys();
        let zg = StratumRef::orbit(s, s.full_subset());
        let open = c.open_stratum(StratumKind::Piece, s.full_subset()).unwrap();
        assert!(c.closure_leq(&zg, &open).unwrap());
        assert!(c.closure_leq(&open, &StratumRef::orbit(s, SimpleSubset::EMPTY)).unwrap());
        let closed = StratumRef::piece(s, j(&[0]), s.from_word(&[0, 1]));
        assert!(!c.closure_leq(&closed, &StratumRef::orbit(s, SimpleSubset::EMPTY)).unwrap());
    }

    #[test]
    fn twisted_classes() {
        let c = ctx("A2");
        let s = c.sys();
        let w = s.from_word(&[1]);
        let (cl, mins) = c.min_twisted_class(SimpleSubset::EMPTY, &w, &c.delta);
        assert_eq!((cl, mins), (vec![w.clone()], vec![w.clone()]));
        let (cl, mins) = c.min_twisted_class(j(&[0]), &w, &c.delta);
        assert_eq!(cl, vec![w.clone(), s.longest()]);
        assert_eq!(mins, vec![w]);
        let f = flip_ctx();
        let (cl, mins) = f.min_twisted_class(s.full_subset(), &s.identity(), &f.delta);
        assert_eq!(cl, vec![s.identity(), s.from_word(&[0, 1]), s.from_word(&[1, 0])]);
        assert_eq!(mins, vec![s.identity()]);
    }

    #[test]
    fn compactification_criteria_examples() {
        let c = ctx("A2");
        let s = c.sys();
        let (e, s2, w0) = (s.identity(), s.from_word(&[1]), s.longest());
        let j1 = j(&[0]);
        assert!(c.nonempty_bb_bmbm(j1, &e, &e, &e, &e).unwrap());
        assert!(!c.nonempty_bb_bmbm(j1, &s2, &e, &e, &e).unwrap());
        for jj in SimpleSubset::all(2) {
            for u in s.min_right_reps(jj) {
                for v in s.elements() {
                    assert!(c.nonempty_bb_bmbm(jj, &e, &w0, &u, v).unwrap());
                }
            }
        }
        assert!(c.nonempty_piece_bmb(j1, &s2, &s2, &e).unwrap());
        assert!(!c.nonempty_piece_bmb(j1, &s2, &e, &e).unwrap());
        for x in s.min_right_reps(j1) {
            for y in s.elements() {
                assert!(c.nonempty_piece_bmb(j1, &e, &x, y).unwrap());
            }
        }
        let bad = s.from_word(&[0]);
        assert!(matches!(c.nonempty_piece_bmb(j1, &bad, &e, &e), Err(Error::NotMinimalRep { .. })));
        assert!(matches!(c.nonempty_bb_bmbm(j1, &e, &e, &bad, &e), Err(Error::NotMinimalRep { .. })));
    }

    #[test]
    fn quadruple_criteria_examples() {
        let c = ctx("A2");
        let s = c.sys();
        let (e, s1, s2) = (s.identity(), s.from_word(&[0]), s.from_word(&[1]));
        let q = QuadrupleShadow::diagonal(s, j(&[0]), c.delta.clone());
        assert!(q.nonempty_bb_bmbm(s, &e, &e, &e, &e).unwrap());
        assert!(!q.nonempty_bb_bmbm(s, &e, &e, &s2, &e).unwrap());
        assert!(q.nonempty_bb_bmbm(s, &s2, &e, &e, &s1).unwrap());
        assert!(q.nonempty_piece_bmb(s, &s2, &e, &e).unwrap());
        assert!(!q.nonempty_piece_bmb(s, &e, &s2, &e).unwrap());
        assert_eq!(q.w_xy(s, &e, &e), e);
        assert_eq!(q.w_xy(s, &s2, &e), s2);
        assert_eq!(q.w_xy(s, &s2, &s2), e);
        assert!(!q.flag_projection_nonempty(s, &e, &s2, &e).unwrap());
        assert!(q.flag_projection_nonempty(s, &s2, &s2, &e).unwrap());
    }

    #[test]
    fn shadows_enumerated() {
        let c = ctx("A2");
        assert_eq!(QuadrupleShadow::all(c.sys(), &c.delta).len(), 7);
        let b = ctx("B2");
        // the two simple roots of B2 have different lengths
        assert_eq!(QuadrupleShadow::all(b.sys(), &b.delta).len(), 1 + 2 + 1);
        let s = c.sys();
        assert!(QuadrupleShadow::new(s, j(&[0]), j(&[0, 1]), vec![Some(0), None], c.delta.clone()).is_err());
    }
}
