//! Finite crystallographic Coxeter systems and exact Weyl group arithmetic.
//!
//! Elements are stored as integer matrices acting on the simple-root basis
//! (column `j` is the image of `alpha_j`). The inverse matrix rides along so
//! that both left and right descents are sign checks on a single column.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::subset::SimpleSubset;

/// Limits applied while building a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Root closure aborts (type is declared infinite) past this many positive roots.
    pub root_cap: usize,
    /// Largest Weyl group that will be enumerated.
    pub group_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { root_cap: 10_000, group_cap: 100_000 }
    }
}

/// An element of the Weyl group.
#[derive(Clone)]
pub struct WElem {
    rank: usize,
    mat: Box<[i32]>,
    inv: Box<[i32]>,
    len: u32,
}

impl PartialEq for WElem {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for WElem {}

impl Hash for WElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl fmt::Debug for WElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WElem").field("len", &self.len).field("mat", &self.mat).finish()
    }
}

impl WElem {
    fn identity(rank: usize) -> Self {
        let mut mat = vec![0; rank * rank].into_boxed_slice();
        for i in 0..rank {
            mat[i * rank + i] = 1;
        }
        WElem { rank, inv: mat.clone(), mat, len: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn length(&self) -> usize {
        self.len as usize
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// Row-major action matrix on the simple-root basis.
    pub fn matrix(&self) -> &[i32] {
        &self.mat
    }

    /// Image of `alpha_j`, in simple-root coordinates.
    pub fn column(&self, j: usize) -> impl Iterator<Item = i32> + '_ {
        (0..self.rank).map(move |r| self.mat[r * self.rank + j])
    }

    fn col_sum(m: &[i32], rank: usize, j: usize) -> i32 {
        (0..rank).map(|r| m[r * rank + j]).sum()
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        Self::col_sum(&self.mat, self.rank, i) < 0
    }

    /// `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        Self::col_sum(&self.inv, self.rank, i) < 0
    }

    pub fn inverse(&self) -> WElem {
        WElem { rank: self.rank, mat: self.inv.clone(), inv: self.mat.clone(), len: self.len }
    }
}

fn matmul(a: &[i32], b: &[i32], n: usize) -> Box<[i32]> {
    let mut out = vec![0; n * n].into_boxed_slice();
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// A finite Weyl group together with its root system.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    cartan: CartanDatum,
    positive_roots: Vec<Vec<i32>>,
    generators: Vec<WElem>,
    elements: Vec<WElem>,
    supports: Vec<SimpleSubset>,
    index: HashMap<WElem, usize>,
}

impl CoxeterSystem {
    pub fn build(cartan: CartanDatum) -> Result<Self> {
        Self::build_with(cartan, BuildOptions::default())
    }

    pub fn build_with(cartan: CartanDatum, opts: BuildOptions) -> Result<Self> {
        let n = cartan.rank();
        let positive_roots = root_closure(&cartan, opts.root_cap)?;

        let mut generators = Vec::with_capacity(n);
        for i in 0..n {
            let mut mat = vec![0; n * n].into_boxed_slice();
            for c in 0..n {
                mat[c * n + c] = 1;
                mat[i * n + c] -= cartan.entry(i, c);
            }
            generators.push(WElem { rank: n, inv: mat.clone(), mat, len: 1 });
        }

        let mut sys = CoxeterSystem {
            cartan,
            positive_roots,
            generators,
            elements: Vec::new(),
            supports: Vec::new(),
            index: HashMap::new(),
        };
        for g in &sys.generators {
            if sys.mul(g, g) != WElem::identity(n) {
                return Err(Error::Internal("simple reflection is not an involution".into()));
            }
        }
        sys.enumerate(opts.group_cap)?;
        if sys.longest().length() != sys.positive_roots.len() {
            return Err(Error::Internal("length of w0 differs from the number of positive roots".into()));
        }
        Ok(sys)
    }

    /// Fills `elements` in ShortLex order of canonical reduced words.
    ///
    /// Each element of length k+1 is produced exactly once, from `s_i v` where
    /// `i` is its smallest left descent; sorting a level by (i, rank of the
    /// shorter element) therefore sorts it by normal form.
    fn enumerate(&mut self, cap: usize) -> Result<()> {
        let n = self.rank();
        let mut level = vec![(WElem::identity(n), SimpleSubset::EMPTY)];
        let mut all = Vec::new();
        while !level.is_empty() {
            let mut next: Vec<(usize, usize, WElem, SimpleSubset)> = Vec::new();
            for (pos, (w, supp)) in level.iter().enumerate() {
                for i in 0..n {
                    if w.has_left_descent(i) {
                        continue;
                    }
                    let v = self.lmul_gen(i, w);
                    if (0..i).all(|k| !v.has_left_descent(k)) {
                        next.push((i, pos, v, supp.union(SimpleSubset::singleton(i))));
                    }
                }
            }
            next.sort_by_key(|&(i, pos, _, _)| (i, pos));
            all.append(&mut level);
            if all.len() + next.len() > cap {
                return Err(Error::GroupTooLarge { cap });
            }
            level = next.into_iter().map(|(_, _, v, supp)| (v, supp)).collect();
        }
        self.index = all.iter().enumerate().map(|(k, (w, _))| (w.clone(), k)).collect();
        let (elements, supports) = all.into_iter().unzip();
        self.elements = elements;
        self.supports = supports;
        Ok(())
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    /// |W|.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Every element, in ShortLex order of canonical reduced words.
    pub fn elements(&self) -> &[WElem] {
        &self.elements
    }

    /// Position of `w` in [`elements`](Self::elements), or `None` if foreign.
    pub fn index_of(&self, w: &WElem) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &WElem) -> bool {
        w.rank == self.rank() && self.index.contains_key(w)
    }

    pub fn identity(&self) -> WElem {
        WElem::identity(self.rank())
    }

    pub fn generator(&self, i: usize) -> &WElem {
        &self.generators[i]
    }

    pub fn full_subset(&self) -> SimpleSubset {
        SimpleSubset::full(self.rank())
    }

    pub fn mul(&self, a: &WElem, b: &WElem) -> WElem {
        assert_eq!(a.rank, b.rank, "elements from systems of different rank");
        let n = a.rank;
        let mat = matmul(&a.mat, &b.mat, n);
        let inv = matmul(&b.inv, &a.inv, n);
        let len = self.count_inversions(&mat);
        WElem { rank: n, mat, inv, len }
    }

    /// Group law with a membership check on both factors.
    pub fn checked_mul(&self, a: &WElem, b: &WElem) -> Result<WElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn check(&self, w: &WElem) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::SystemMismatch)
        }
    }

    fn count_inversions(&self, mat: &[i32]) -> u32 {
        let n = self.rank();
        self.positive_roots
            .iter()
            .filter(|beta| {
                // sign of the image is the sign of its coordinate sum
                let s: i32 = (0..n)
                    .map(|r| (0..n).map(|c| mat[r * n + c] * beta[c]).sum::<i32>())
                    .sum();
                s < 0
            })
            .count() as u32
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WElem) -> usize {
        w.length()
    }

    pub fn inverse(&self, w: &WElem) -> WElem {
        w.inverse()
    }

    /// `w s_i`.
    pub fn rmul_gen(&self, w: &WElem, i: usize) -> WElem {
        let n = w.rank;
        let a = self.cartan.matrix();
        let mut mat = w.mat.clone();
        for r in 0..n {
            let wi = w.mat[r * n + i];
            if wi != 0 {
                for c in 0..n {
                    mat[r * n + c] -= wi * a[i][c];
                }
            }
        }
        let mut inv = w.inv.clone();
        for c in 0..n {
            let s: i32 = (0..n).map(|k| a[i][k] * w.inv[k * n + c]).sum();
            inv[i * n + c] -= s;
        }
        let len = if w.has_right_descent(i) { w.len - 1 } else { w.len + 1 };
        WElem { rank: n, mat, inv, len }
    }

    /// `s_i w`.
    pub fn lmul_gen(&self, i: usize, w: &WElem) -> WElem {
        let t = self.rmul_gen(&w.inverse(), i);
        t.inverse()
    }

    /// Product of the generators in `word`, left to right.
    pub fn from_word(&self, word: &[usize]) -> WElem {
        word.iter().fold(self.identity(), |w, &i| self.rmul_gen(&w, i))
    }

    /// Canonical (ShortLex-minimal) reduced word: repeatedly strip the
    /// smallest left descent.
    pub fn reduced_word(&self, w: &WElem) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while !cur.is_identity() {
            let i = (0..self.rank()).find(|&i| cur.has_left_descent(i)).expect("nontrivial element has a left descent");
            word.push(i);
            cur = self.lmul_gen(i, &cur);
        }
        word
    }

    /// Bruhat order via the lifting property, peeling right descents of `y`.
    pub fn bruhat_leq(&self, x: &WElem, y: &WElem) -> bool {
        let mut x = x.clone();
        let mut y = y.clone();
        loop {
            if x.len > y.len {
                return false;
            }
            if x.len == y.len {
                return x == y;
            }
            if x.len == 0 {
                return true;
            }
            let i = (0..self.rank()).find(|&i| y.has_right_descent(i)).expect("nontrivial element has a right descent");
            y = self.rmul_gen(&y, i);
            if x.has_right_descent(i) {
                x = self.rmul_gen(&x, i);
            }
        }
    }

    pub fn checked_bruhat_leq(&self, x: &WElem, y: &WElem) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bruhat_leq(x, y))
    }

    /// Longest element of the parabolic subgroup `W_J`.
    pub fn longest_element(&self, j: SimpleSubset) -> WElem {
        let mut w = self.identity();
        while let Some(i) = j.iter().find(|&i| !w.has_right_descent(i)) {
            w = self.rmul_gen(&w, i);
        }
        w
    }

    /// `w0`.
    pub fn longest(&self) -> WElem {
        self.longest_element(self.full_subset())
    }

    /// Simple reflections occurring in any reduced word of `w`.
    pub fn support(&self, w: &WElem) -> SimpleSubset {
        match self.index_of(w) {
            Some(k) => self.supports[k],
            None => self.reduced_word(w).into_iter().collect(),
        }
    }

    pub fn in_parabolic(&self, w: &WElem, j: SimpleSubset) -> bool {
        self.support(w).is_subset(j)
    }

    /// `w` is in `W^J` (minimal in `w W_J`).
    pub fn is_min_right(&self, w: &WElem, j: SimpleSubset) -> bool {
        j.iter().all(|i| !w.has_right_descent(i))
    }

    /// `w` is in `^J W` (minimal in `W_J w`).
    pub fn is_min_left(&self, w: &WElem, j: SimpleSubset) -> bool {
        j.iter().all(|i| !w.has_left_descent(i))
    }

    /// Elements of `W_J`, in ShortLex order.
    pub fn parabolic_elements(&self, j: SimpleSubset) -> Vec<WElem> {
        self.elements
            .iter()
            .zip(&self.supports)
            .filter(|(_, s)| s.is_subset(j))
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// `W^J`, in ShortLex order.
    pub fn min_right_reps(&self, j: SimpleSubset) -> Vec<WElem> {
        self.elements.iter().filter(|w| self.is_min_right(w, j)).cloned().collect()
    }

    /// `^J W`, in ShortLex order.
    pub fn min_left_reps(&self, j: SimpleSubset) -> Vec<WElem> {
        self.elements.iter().filter(|w| self.is_min_left(w, j)).cloned().collect()
    }

    /// Simple-root index of `w(alpha_i)` when that image is a simple root.
    pub fn simple_image(&self, w: &WElem, i: usize) -> Option<usize> {
        let col: Vec<i32> = w.column(i).collect();
        let pos = col.iter().position(|&c| c != 0)?;
        (col[pos] == 1 && col.iter().filter(|&&c| c != 0).count() == 1).then_some(pos)
    }

    /// Simple-root index of `-w(alpha_i)` when that image is a negative simple root.
    pub fn neg_simple_image(&self, w: &WElem, i: usize) -> Option<usize> {
        let col: Vec<i32> = w.column(i).map(|c| -c).collect();
        let pos = col.iter().position(|&c| c != 0)?;
        (col[pos] == 1 && col.iter().filter(|&&c| c != 0).count() == 1).then_some(pos)
    }

    /// Renders `w` as a product of generators, `e` for the identity.
    pub fn word_string(&self, w: &WElem) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("")
        }
    }
}

/// Positive roots by closure of the simple roots under simple reflections.
///
/// In finite type every non-simple positive root is reached from a shorter
/// one, so keeping only positive images suffices.
fn root_closure(cartan: &CartanDatum, cap: usize) -> Result<Vec<Vec<i32>>> {
    let n = cartan.rank();
    let mut roots: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut seen: std::collections::HashSet<Vec<i32>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        for i in 0..n {
            let beta = &roots[k];
            let pairing: i32 = (0..n).map(|j| cartan.entry(i, j) * beta[j]).sum();
            if pairing >= 0 {
                continue;
            }
            let mut img = beta.clone();
            img[i] -= pairing;
            // no finite root system has a coefficient above 6
            if img[i] > 6 {
                return Err(Error::NotFiniteType { cap });
            }
            if seen.insert(img.clone()) {
                roots.push(img);
                if roots.len() > cap {
                    return Err(Error::NotFiniteType { cap });
                }
            }
        }
        k += 1;
    }
    roots.sort_by(|a, b| a.iter().sum::<i32>().cmp(&b.iter().sum::<i32>()).then_with(|| a.cmp(b)));
    Ok(roots)
}

/// A permutation of the simple roots that preserves the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism { perm: (0..rank).collect() }
    }

    pub fn new(cartan: &CartanDatum, perm: Vec<usize>) -> Result<Self> {
        let n = cartan.rank();
        if perm.len() != n {
            return Err(Error::InvalidAutomorphism(format!("expected {n} images, got {}", perm.len())));
        }
        let mut hit = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidAutomorphism(format!("{perm:?} is not a permutation of 0..{n}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if cartan.entry(perm[i], perm[j]) != cartan.entry(i, j) {
                    return Err(Error::InvalidAutomorphism(format!(
                        "{perm:?} does not preserve Cartan entry ({i},{j})"
                    )));
                }
            }
        }
        Ok(DiagramAutomorphism { perm })
    }

    /// Parses a comma-separated image list such as `1,0`.
    pub fn parse(cartan: &CartanDatum, spec: &str) -> Result<Self> {
        let perm = spec
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidAutomorphism(format!("`{spec}`: {e}")))?;
        Self::new(cartan, perm)
    }

    /// Every automorphism of the Dynkin diagram, identity first.
    pub fn all(cartan: &CartanDatum) -> Vec<Self> {
        let n = cartan.rank();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(c: &CartanDatum, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<DiagramAutomorphism>) {
            let n = c.rank();
            let i = perm.len();
            if i == n {
                out.push(DiagramAutomorphism { perm: perm.clone() });
                return;
            }
            for p in 0..n {
                if used[p] || c.entry(p, p) != c.entry(i, i) {
                    continue;
                }
                if (0..i).any(|j| c.entry(perm[j], p) != c.entry(j, i) || c.entry(p, perm[j]) != c.entry(i, j)) {
                    continue;
                }
                used[p] = true;
                perm.push(p);
                rec(c, perm, used, out);
                perm.pop();
                used[p] = false;
            }
        }
        rec(cartan, &mut perm, &mut used, &mut out);
        out
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAutomorphism { perm: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        DiagramAutomorphism { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn apply_subset(&self, j: SimpleSubset) -> SimpleSubset {
        j.map(&self.perm)
    }

    /// Image of `w` under the group automorphism `s_i -> s_perm(i)`.
    pub fn apply(&self, w: &WElem) -> WElem {
        let n = w.rank;
        let mut mat = vec![0; n * n].into_boxed_slice();
        let mut inv = vec![0; n * n].into_boxed_slice();
        for r in 0..n {
            for c in 0..n {
                mat[self.perm[r] * n + self.perm[c]] = w.mat[r * n + c];
                inv[self.perm[r] * n + self.perm[c]] = w.inv[r * n + c];
            }
        }
        WElem { rank: n, mat, inv, len: w.len }
    }

    pub fn spec_string(&self) -> String {
        self.perm.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(label: &str) -> CoxeterSystem {
        CoxeterSystem::build(CartanDatum::from_label(label).unwrap()).unwrap()
    }

    #[test]
    fn group_orders_and_root_counts() {
        for (label, roots, order) in [
            ("A1", 1, 2),
            ("A2", 3, 6),
            ("B2", 4, 8),
            ("G2", 6, 12),
            ("A3", 6, 24),
            ("B3", 9, 48),
            ("C3", 9, 48),
            ("A1xA1", 2, 4),
            ("D4", 12, 192),
            ("F4", 24, 1152),
        ] {
            let s = sys(label);
            assert_eq!(s.positive_roots().len(), roots, "{label}");
            assert_eq!(s.order(), order, "{label}");
            assert_eq!(s.longest().length(), roots, "{label}");
        }
    }

    #[test]
    fn affine_type_rejected() {
        let affine = CartanDatum::new(vec![vec![2, -2], vec![-2, 2]], None).unwrap();
        let err = CoxeterSystem::build_with(affine, BuildOptions { root_cap: 200, group_cap: 1000 }).unwrap_err();
        assert_eq!(err, Error::NotFiniteType { cap: 200 });
        let hyper = CartanDatum::new(vec![vec![2, -3], vec![-3, 2]], None).unwrap();
        assert!(CoxeterSystem::build(hyper).is_err());
    }

    #[test]
    fn group_cap_enforced() {
        let c = CartanDatum::from_label("A3").unwrap();
        let err = CoxeterSystem::build_with(c, BuildOptions { root_cap: 100, group_cap: 10 }).unwrap_err();
        assert_eq!(err, Error::GroupTooLarge { cap: 10 });
    }

    #[test]
    fn a2_products() {
        let s = sys("A2");
        let e = s.identity();
        let s1 = s.generator(0).clone();
        let s2 = s.generator(1).clone();
        assert_eq!(s.mul(&e, &s1), s1);
        assert_eq!(s.mul(&s1, &s1), e);
        let s12 = s.mul(&s1, &s2);
        let s21 = s.mul(&s2, &s1);
        assert_eq!(s.mul(&s12, &s21), e);
        assert_eq!(s12.length(), 2);
        assert_eq!(s.inverse(&s12), s21);
        let w0 = s.longest();
        assert_eq!(s.inverse(&w0), w0);
        assert_eq!(s.mul(&w0, &w0), e);
    }

    #[test]
    fn reduced_words_are_shortlex() {
        let s = sys("A2");
        assert_eq!(s.reduced_word(&s.identity()), Vec::<usize>::new());
        assert_eq!(s.reduced_word(&s.longest()), vec![0, 1, 0]);
        assert_eq!(s.reduced_word(&s.from_word(&[1, 0])), vec![1, 0]);
        assert_eq!(s.reduced_word(&s.from_word(&[1, 0, 1])), vec![0, 1, 0]);
        // ShortLex enumeration order
        let words: Vec<Vec<usize>> = s.elements().iter().map(|w| s.reduced_word(w)).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn bruhat_small_cases() {
        let s = sys("A2");
        let e = s.identity();
        let s1 = s.from_word(&[0]);
        let s2 = s.from_word(&[1]);
        for w in s.elements() {
            assert!(s.bruhat_leq(&e, w));
        }
        assert!(s.bruhat_leq(&s1, &s.from_word(&[1, 0])));
        assert!(!s.bruhat_leq(&s1, &s2));
        assert!(!s.bruhat_leq(&s.longest(), &s1));
    }

    #[test]
    fn mismatched_systems_reported() {
        let a2 = sys("A2");
        let b3 = sys("B3");
        let x = b3.generator(0).clone();
        assert_eq!(a2.checked_mul(&x, a2.generator(0)).unwrap_err(), Error::SystemMismatch);
        assert!(a2.checked_bruhat_leq(&x, &x).is_err());
        let b2 = sys("B2");
        // same rank, different group: -1 is not in W(A2)
        assert_eq!(a2.check(&b2.longest()).unwrap_err(), Error::SystemMismatch);
    }

    #[test]
    fn longest_parabolic() {
        let s = sys("A2");
        assert!(s.longest_element(SimpleSubset::EMPTY).is_identity());
        assert_eq!(s.longest_element(SimpleSubset::singleton(0)), s.from_word(&[0]));
        assert_eq!(s.longest_element(s.full_subset()), s.from_word(&[0, 1, 0]));
    }

    #[test]
    fn automorphisms() {
        let c = CartanDatum::from_label("A2").unwrap();
        let s = CoxeterSystem::build(c.clone()).unwrap();
        let flip = DiagramAutomorphism::parse(&c, "1,0").unwrap();
        assert_eq!(flip.apply(&s.from_word(&[0, 1])), s.from_word(&[1, 0]));
        assert_eq!(flip.apply(&s.longest()), s.longest());
        let id = DiagramAutomorphism::identity(2);
        let w = s.from_word(&[0, 1]);
        assert_eq!(id.apply(&w), w);
        assert_eq!(DiagramAutomorphism::all(&c).len(), 2);
        let b2 = CartanDatum::from_label("B2").unwrap();
        assert_eq!(DiagramAutomorphism::all(&b2).len(), 1);
        assert!(DiagramAutomorphism::parse(&b2, "1,0").is_err());
        assert!(DiagramAutomorphism::parse(&c, "0,0").is_err());
        assert!(DiagramAutomorphism::parse(&c, "0").is_err());
        assert_eq!(DiagramAutomorphism::all(&CartanDatum::from_label("D4").unwrap()).len(), 6);
    }

    #[test]
    fn simple_root_images() {
        let s = sys("A2");
        let w0 = s.longest();
        assert_eq!(s.neg_simple_image(&w0, 0), Some(1));
        assert_eq!(s.neg_simple_image(&w0, 1), Some(0));
        assert_eq!(s.simple_image(&s.identity(), 1), Some(1));
        assert_eq!(s.simple_image(&s.generator(0).clone(), 1), None);
    }
}
