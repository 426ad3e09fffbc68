//! JSON-facing records. Weyl group elements travel as ShortLex reduced words
//! and subsets as sorted index lists.

use serde::{Deserialize, Serialize};

use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::partitions::intersects;
use crate::strata::{Measure, StratumKind, StratumRef, WonderfulContext};
use crate::subset::SimpleSubset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub kind: StratumKind,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

impl StratumRecord {
    /// Record without measure fields.
    pub fn bare(sys: &CoxeterSystem, s: &StratumRef) -> Self {
        let word = |w| Some(sys.reduced_word(w));
        let (w, x, y) = match s.kind {
            StratumKind::GxG => (None, None, None),
            k if k.is_piece() => (word(&s.x), None, None),
            _ => (None, word(&s.x), word(&s.y)),
        };
        StratumRecord { kind: s.kind, j: s.j.iter().collect(), w, x, y, codim: None, dim: None }
    }

    /// Record with its dimension or codimension filled in where defined.
    pub fn new(ctx: &WonderfulContext, s: &StratumRef) -> Self {
        let mut r = Self::bare(ctx.sys(), s);
        match ctx.codim(s) {
            Ok(Measure::Dim(d)) => r.dim = Some(d),
            Ok(Measure::Codim(c)) => r.codim = Some(c),
            Err(_) => {}
        }
        r
    }

    pub fn to_stratum(&self, ctx: &WonderfulContext) -> Result<StratumRef> {
        let sys = ctx.sys();
        let mut j = SimpleSubset::EMPTY;
        for &i in &self.j {
            if i >= sys.rank() {
                return Err(Error::MalformedStratum(format!("index {i} out of range in J")));
            }
            j = j.union(SimpleSubset::singleton(i));
        }
        let elem = |name: &str, word: &Option<Vec<usize>>| match word {
            Some(word) if word.iter().all(|&i| i < sys.rank()) => Ok(sys.from_word(word)),
            Some(_) => Err(Error::MalformedStratum(format!("letter out of range in {name}"))),
            None => Err(Error::MalformedStratum(format!("{} stratum needs {name}", self.kind))),
        };
        let s = match self.kind {
            StratumKind::GxG => StratumRef::orbit(sys, j),
            StratumKind::Piece => StratumRef::piece(sys, j, elem("w", &self.w)?),
            StratumKind::FPiece => StratumRef::fpiece(sys, j, elem("w", &self.w)?),
            k => StratumRef::pair(k, j, elem("x", &self.x)?, elem("y", &self.y)?),
        };
        ctx.validate(&s)?;
        Ok(s)
    }
}

/// Outcome of an intersection query, with both sides of the inequalities
/// that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectVerdict {
    pub nonempty: bool,
    pub criterion_lhs: Vec<Vec<usize>>,
    pub criterion_rhs: Vec<Vec<usize>>,
    pub codim_sum: Option<usize>,
}

impl IntersectVerdict {
    /// `lhs[i] <= rhs[i]` for all `i` decides non-emptiness. For
    /// (`bb`, `bmbm`) the two inequalities are `x <= u` and
    /// `v <= max(y W_J)`; for (`piece`, `bmb`) the single one is
    /// `min(W_J delta(w)) <= y^{-1} * delta(x)`.
    pub fn compute(ctx: &WonderfulContext, a: &StratumRef, b: &StratumRef) -> Result<Self> {
        let nonempty = intersects(ctx, a, b)?;
        let (a, b) = if matches!(a.kind, StratumKind::BB | StratumKind::Piece) { (a, b) } else { (b, a) };
        let sys = ctx.sys();
        let word = |w| sys.reduced_word(w);
        let (lhs, rhs) = if a.kind == StratumKind::BB {
            let (v, top) = ctx.bb_bmbm_sides(a.j, &a.y, &b.y);
            (vec![word(&a.x), word(&v)], vec![word(&b.x), word(&top)])
        } else {
            let (l, r) = ctx.piece_bmb_sides(a.j, &a.x, &b.x, &b.y);
            (vec![word(&l)], vec![word(&r)])
        };
        let codim_sum = nonempty.then(|| ctx.codim(a).map(Measure::value).unwrap_or(0) + ctx.codim(b).map(Measure::value).unwrap_or(0));
        Ok(IntersectVerdict { nonempty, criterion_lhs: lhs, criterion_rhs: rhs, codim_sum })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    fn ctx() -> WonderfulContext {
        WonderfulContext::untwisted(CoxeterSystem::build(CartanDatum::from_label("A2").unwrap()).unwrap())
    }

    #[test]
    fn piece_record_shape() {
        let c = ctx();
        let s = StratumRef::piece(c.sys(), SimpleSubset::singleton(0), c.sys().from_word(&[1]));
        let r = StratumRecord::new(&c, &s);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"kind":"piece","J":[0],"w":[1],"codim":1}"#);
        assert_eq!(r.to_stratum(&c).unwrap(), s);
    }

    #[test]
    fn rejects_non_minimal() {
        let c = ctx();
        let r: StratumRecord = serde_json::from_str(r#"{"kind":"piece","J":[0],"w":[0]}"#).unwrap();
        assert!(r.to_stratum(&c).is_err());
    }

    #[test]
    fn verdicts() {
        let c = ctx();
        let sys = c.sys();
        let j = SimpleSubset::singleton(0);
        let e = sys.identity();
        let piece = StratumRef::piece(sys, j, e.clone());
        let bmb = StratumRef::pair(StratumKind::BmB, j, e.clone(), e.clone());
        assert!(IntersectVerdict::compute(&c, &piece, &bmb).unwrap().nonempty);
        let piece = StratumRef::piece(sys, j, sys.from_word(&[1]));
        let v = IntersectVerdict::compute(&c, &bmb, &piece).unwrap();
        assert!(!v.nonempty && v.codim_sum.is_none());
        let bb = StratumRef::pair(StratumKind::BB, j, e.clone(), e.clone());
        let bmbm = StratumRef::pair(StratumKind::BmBm, j, e.clone(), e.clone());
        assert!(IntersectVerdict::compute(&c, &bb, &bmbm).unwrap().nonempty);
        assert!(IntersectVerdict::compute(&c, &bb, &bmb).is_err());
    }
}
