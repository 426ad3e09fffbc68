//! The Demazure product `x * y` and its two minimal companions `x ▷ y`,
//! `x ◁ y`, plus the parabolic coset extremes built from them.
//!
//! All three operations are linear scans over a reduced word: `*` and `◁`
//! act on the right one letter at a time, `▷` acts on the left reading the
//! word of `x` backwards.

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, WElem};
use crate::subset::SimpleSubset;

/// Which side of `x` the parabolic subgroup multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Cosets `x W_J`.
    Right,
    /// Cosets `W_J x`.
    Left,
}

/// `x = minimal_part * parabolic_part` with lengths adding up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    pub minimal_part: WElem,
    pub parabolic_part: WElem,
}

impl CoxeterSystem {
    /// Demazure product: the maximum of `{u y : u <= x}`.
    pub fn demazure(&self, x: &WElem, y: &WElem) -> WElem {
        let mut z = x.clone();
        for i in self.reduced_word(y) {
            if !z.has_right_descent(i) {
                z = self.rmul_gen(&z, i);
            }
        }
        z
    }

    /// `x ▷ y`: the minimum of `{u y : u <= x}`.
    pub fn tri_left(&self, x: &WElem, y: &WElem) -> WElem {
        let mut z = y.clone();
        for i in self.reduced_word(x).into_iter().rev() {
            if z.has_left_descent(i) {
                z = self.lmul_gen(i, &z);
            }
        }
        z
    }

    /// `x ◁ y`: the minimum of `{x v : v <= y}`.
    pub fn tri_right(&self, x: &WElem, y: &WElem) -> WElem {
        let mut z = x.clone();
        for i in self.reduced_word(y) {
            if z.has_right_descent(i) {
                z = self.rmul_gen(&z, i);
            }
        }
        z
    }

    /// Shortest element of `x W_J` (right) or `W_J x` (left).
    pub fn coset_min(&self, x: &WElem, j: SimpleSubset, side: Side) -> WElem {
        let w0j = self.longest_element(j);
        match side {
            Side::Right => self.tri_right(x, &w0j),
            Side::Left => self.tri_left(&w0j, x),
        }
    }

    /// Longest element of `x W_J` (right) or `W_J x` (left).
    pub fn coset_max(&self, x: &WElem, j: SimpleSubset, side: Side) -> WElem {
        let w0j = self.longest_element(j);
        match side {
            Side::Right => self.demazure(x, &w0j),
            Side::Left => self.demazure(&w0j, x),
        }
    }

    /// `(min, max)` of the double coset `W_{J_left} x W_{J_right}`.
    pub fn double_coset_extremes(&self, x: &WElem, left: SimpleSubset, right: SimpleSubset) -> (WElem, WElem) {
        let wl = self.longest_element(left);
        let wr = self.longest_element(right);
        let min = self.tri_left(&wl, &self.tri_right(x, &wr));
        let max = self.demazure(&self.demazure(&wl, x), &wr);
        (min, max)
    }

    /// `x = x^J x_J` with `x^J` in `W^J` and `x_J` in `W_J`.
    pub fn coset_decompose(&self, x: &WElem, j: SimpleSubset) -> CosetDecomposition {
        let minimal_part = self.coset_min(x, j, Side::Right);
        let parabolic_part = self.mul(&minimal_part.inverse(), x);
        CosetDecomposition { minimal_part, parabolic_part }
    }

    /// Whether `B x B y B` meets `B^- u B v B`, in the form
    /// `u <= x * y * v^{-1}`.
    pub fn opposite_cells_meet(&self, x: &WElem, y: &WElem, u: &WElem, v: &WElem) -> bool {
        let rhs = self.demazure(&self.demazure(x, y), &v.inverse());
        self.bruhat_leq(u, &rhs)
    }

    /// Both equivalent forms of [`opposite_cells_meet`](Self::opposite_cells_meet):
    /// `(u ◁ v <= x * y, u <= x * y * v^{-1})`.
    pub fn opposite_cells_meet_forms(&self, x: &WElem, y: &WElem, u: &WElem, v: &WElem) -> (bool, bool) {
        let xy = self.demazure(x, y);
        let via_tri = self.bruhat_leq(&self.tri_right(u, v), &xy);
        (via_tri, self.opposite_cells_meet(x, y, u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::build(CartanDatum::from_label("A2").unwrap()).unwrap()
    }

    #[test]
    fn demazure_examples() {
        let s = a2();
        let e = s.identity();
        let s1 = s.from_word(&[0]);
        for x in s.elements() {
            assert_eq!(&s.demazure(x, &e), x);
        }
        assert_eq!(s.demazure(&s1, &s1), s1);
        assert_eq!(s.demazure(&s.from_word(&[0, 1]), &s.from_word(&[1, 0])), s.longest());
    }

    #[test]
    fn tri_examples() {
        let s = a2();
        let e = s.identity();
        let w0 = s.longest();
        for y in s.elements() {
            assert_eq!(&s.tri_left(&e, y), y);
            assert!(s.tri_left(&w0, y).is_identity());
            assert_eq!(&s.tri_right(y, &e), y);
        }
        assert_eq!(s.tri_left(&s.from_word(&[0]), &s.from_word(&[0, 1])), s.from_word(&[1]));
        assert!(s.tri_right(&w0, &w0).is_identity());
        assert!(s.tri_right(&s.from_word(&[0, 1]), &s.from_word(&[1, 0])).is_identity());
    }

    #[test]
    fn coset_examples() {
        let s = a2();
        let j1 = SimpleSubset::singleton(0);
        let w0 = s.longest();
        assert!(s.coset_min(&s.identity(), j1, Side::Right).is_identity());
        assert_eq!(s.coset_min(&w0, j1, Side::Right), s.from_word(&[0, 1]));
        assert_eq!(s.coset_min(&s.from_word(&[1]), j1, Side::Left), s.from_word(&[1]));
        let s2 = s.from_word(&[1]);
        assert_eq!(s.coset_max(&s2, SimpleSubset::EMPTY, Side::Right), s2);
        assert_eq!(s.coset_max(&s2, j1, Side::Right), s.from_word(&[1, 0]));
        assert_eq!(s.coset_max(&s.identity(), s.full_subset(), Side::Right), w0);
    }

    #[test]
    fn double_coset_examples() {
        let s = a2();
        let w0 = s.longest();
        let (mn, mx) = s.double_coset_extremes(&w0, SimpleSubset::singleton(1), SimpleSubset::singleton(0));
        assert_eq!(mn, s.from_word(&[0, 1]));
        assert_eq!(mx, w0);
        for x in s.elements() {
            assert_eq!(s.double_coset_extremes(x, SimpleSubset::EMPTY, SimpleSubset::EMPTY), (x.clone(), x.clone()));
            let g = s.full_subset();
            assert_eq!(s.double_coset_extremes(x, g, g), (s.identity(), w0.clone()));
        }
    }

    #[test]
    fn decomposition_examples() {
        let s = a2();
        let j1 = SimpleSubset::singleton(0);
        let d = s.coset_decompose(&s.identity(), j1);
        assert!(d.minimal_part.is_identity() && d.parabolic_part.is_identity());
        let d = s.coset_decompose(&s.longest(), j1);
        assert_eq!(d.minimal_part, s.from_word(&[0, 1]));
        assert_eq!(d.parabolic_part, s.from_word(&[0]));
        let d = s.coset_decompose(&s.from_word(&[0]), j1);
        assert!(d.minimal_part.is_identity());
        assert_eq!(d.parabolic_part, s.from_word(&[0]));
    }
}
