//! Weyl group elements as signed permutations of the positive roots.
//!
//! An element `w` is stored as the list of codes `w(β_j)` for every positive
//! root `β_j`. Composition and inversion are table lookups, and the length
//! is the number of positive roots sent to negative ones.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::rootsys::{lex_compare, Root, RootCode, RootSystem, SimpleOrder};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    images: Box<[RootCode]>,
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElt(l={}, {:?})", self.length(), &self.images)
    }
}

/// A word in the simple reflections, 0-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based indices, as used in every external format.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn from_one_based(idx: &[usize]) -> Result<Word> {
        idx.iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or(Error::IndexOutOfRange { index: i, rank: 0 })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Parses `"1 2 1"`, `"1,2,1"` or `"121"` (single digits only in the last form).
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::default());
        }
        let idx: Vec<usize> = if s.contains(|c: char| c == ' ' || c == ',') {
            s.split(|c: char| c == ' ' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Invalid(format!("bad letter {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Invalid(format!("bad letter {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::from_one_based(&idx)
    }

    /// Compact `s_2s_4s_3` rendering.
    pub fn to_s_string(&self) -> String {
        if self.0.is_empty() {
            return "id".to_string();
        }
        self.0.iter().map(|i| format!("s_{}", i + 1)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl WeylElt {
    fn n_pos(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn act_code(&self, c: RootCode) -> RootCode {
        let n = self.images.len() as RootCode;
        if c < n {
            self.images[c as usize]
        } else {
            let img = self.images[(c - n) as usize];
            if img < n {
                img + n
            } else {
                img - n
            }
        }
    }

    /// Images of the positive roots.
    pub fn images(&self) -> &[RootCode] {
        &self.images
    }

    pub fn length(&self) -> usize {
        let n = self.n_pos() as RootCode;
        self.images.iter().filter(|&&c| c >= n).count()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &c)| c as usize == j)
    }

    /// `w(α_i) < 0`, i.e. `l(w s_i) < l(w)`.
    #[inline]
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i] as usize >= self.n_pos()
    }

    /// Positive roots `β` with `w(β) < 0`.
    pub fn inversions(&self) -> Vec<usize> {
        let n = self.n_pos();
        (0..n).filter(|&j| self.images[j] as usize >= n).collect()
    }

    pub fn try_mul(&self, rhs: &WeylElt) -> Result<WeylElt> {
        if self.n_pos() != rhs.n_pos() {
            return Err(Error::MismatchedSystems);
        }
        Ok(self.mul(rhs))
    }

    /// `(self · rhs)(β) = self(rhs(β))`. Panics on mismatched systems.
    pub fn mul(&self, rhs: &WeylElt) -> WeylElt {
        assert_eq!(self.n_pos(), rhs.n_pos(), "elements of different Weyl groups");
        let images = rhs.images.iter().map(|&c| self.act_code(c)).collect();
        WeylElt { images }
    }

    pub fn inverse(&self) -> WeylElt {
        let n = self.n_pos();
        let mut inv = vec![0 as RootCode; n];
        for (j, &c) in self.images.iter().enumerate() {
            let c = c as usize;
            if c < n {
                inv[c] = j as RootCode;
            } else {
                inv[c - n] = (j + n) as RootCode;
            }
        }
        WeylElt { images: inv.into() }
    }

    pub fn is_involution(&self) -> bool {
        self.mul(self).is_identity()
    }
}

impl RootSystem {
    pub fn identity(&self) -> WeylElt {
        WeylElt { images: (0..self.n_pos() as RootCode).collect() }
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElt> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange { index: i + 1, rank: self.rank() });
        }
        Ok(WeylElt { images: self.reflection_table()[i].clone().into() })
    }

    /// `w · s_i`.
    pub fn mul_simple_right(&self, w: &WeylElt, i: usize) -> WeylElt {
        let images = self.reflection_table()[i].iter().map(|&c| w.act_code(c)).collect();
        WeylElt { images }
    }

    /// `s_i · w`.
    pub fn mul_simple_left(&self, i: usize, w: &WeylElt) -> WeylElt {
        let table = &self.reflection_table()[i];
        let images = w
            .images
            .iter()
            .map(|&c| {
                let j = self.base_index(c);
                let img = table[j];
                if self.is_negative_code(c) {
                    self.negate_code(img)
                } else {
                    img
                }
            })
            .collect();
        WeylElt { images }
    }

    /// Product of the letters, reduced or not.
    pub fn eval_word(&self, word: &Word) -> Result<WeylElt> {
        let mut w = self.identity();
        for &i in &word.0 {
            if i >= self.rank() {
                return Err(Error::IndexOutOfRange { index: i + 1, rank: self.rank() });
            }
            w = self.mul_simple_right(&w, i);
        }
        Ok(w)
    }

    /// Product of a word that must be reduced; reports the first bad prefix.
    pub fn eval_reduced_word(&self, word: &Word) -> Result<WeylElt> {
        let mut w = self.identity();
        for (k, &i) in word.0.iter().enumerate() {
            if i >= self.rank() {
                return Err(Error::IndexOutOfRange { index: i + 1, rank: self.rank() });
            }
            if w.has_right_descent(i) {
                return Err(Error::NotReduced { prefix: word.0[..=k].iter().map(|x| x + 1).collect() });
            }
            w = self.mul_simple_right(&w, i);
        }
        Ok(w)
    }

    pub fn act_on_root(&self, w: &WeylElt, root: &Root) -> Result<Root> {
        if w.n_pos() != self.n_pos() {
            return Err(Error::MismatchedSystems);
        }
        let c = self.code_of(&root.b)?;
        Ok(self.root_of_code(w.act_code(c)))
    }

    /// Canonical reduced word: repeatedly strip the smallest left descent.
    pub fn reduced_word(&self, w: &WeylElt) -> Word {
        let mut inv = w.inverse();
        let mut word = Vec::with_capacity(w.length());
        // left descents of the remaining element are right descents of `inv`
        while let Some(i) = (0..self.rank()).find(|&i| inv.has_right_descent(i)) {
            word.push(i);
            inv = self.mul_simple_right(&inv, i);
        }
        Word(word)
    }

    /// Sort key used wherever elements are listed: (length, canonical word).
    pub fn canonical_key(&self, w: &WeylElt) -> (usize, Word) {
        (w.length(), self.reduced_word(w))
    }

    /// Bruhat order via the lifting property: for a right descent `s` of `w`,
    /// `v ≤ w` iff `min(v, vs) ≤ ws`. One branch per step, so no search.
    pub fn bruhat_leq(&self, v: &WeylElt, w: &WeylElt) -> bool {
        if v.length() > w.length() {
            return false;
        }
        self.bruhat_leq_word(v, &self.reduced_word(w))
    }

    /// [`Self::bruhat_leq`] against a fixed reduced word of `w`, peeling
    /// letters from the right.
    pub fn bruhat_leq_word(&self, v: &WeylElt, w_word: &Word) -> bool {
        let mut lv = v.length();
        let mut v = v.clone();
        for (k, &s) in w_word.0.iter().enumerate().rev() {
            let lw = k + 1;
            if lv > lw {
                return false;
            }
            if lv == 0 {
                return true;
            }
            if v.has_right_descent(s) {
                v = self.mul_simple_right(&v, s);
                lv -= 1;
            }
        }
        lv == 0
    }

    /// The lower Bruhat interval of `w` straight from the subword definition:
    /// every reduced subword of one fixed reduced word. Exponential; oracle use.
    pub fn lower_interval_by_subwords(&self, w: &WeylElt) -> HashSet<WeylElt> {
        let word = self.reduced_word(w);
        let l = word.len();
        assert!(l <= 24, "subword enumeration is exponential");
        let mut out = HashSet::new();
        for mask in 0u32..(1u32 << l) {
            let sub = Word((0..l).filter(|k| mask >> k & 1 == 1).map(|k| word.0[k]).collect());
            if let Ok(e) = self.eval_reduced_word(&sub) {
                out.insert(e);
            }
        }
        out
    }

    /// `w = u·v` with `v ∈ W_I` and `u` minimal in its coset `u W_I`.
    pub fn parabolic_factorize(&self, w: &WeylElt, parabolic: &[usize]) -> (WeylElt, WeylElt) {
        let mut u = w.clone();
        let mut v = self.identity();
        while let Some(&i) = parabolic.iter().find(|&&i| u.has_right_descent(i)) {
            u = self.mul_simple_right(&u, i);
            v = self.mul_simple_left(i, &v);
        }
        (u, v)
    }

    /// The reflection `s_β` for a positive root index.
    pub fn reflection(&self, beta: usize) -> WeylElt {
        WeylElt { images: self.reflection_table()[beta].clone().into() }
    }

    /// Greedy support of an involution: repeatedly split off the ≺-maximal
    /// positive root negated by the remaining element.
    pub fn support(&self, w: &WeylElt, order: &SimpleOrder) -> Result<SupportSet> {
        if w.n_pos() != self.n_pos() {
            return Err(Error::MismatchedSystems);
        }
        if !w.is_involution() {
            return Err(Error::NotInvolution);
        }
        let n = self.n_pos();
        let mut cur = w.clone();
        let mut roots = Vec::new();
        while !cur.is_identity() {
            let beta = (0..n)
                .filter(|&j| cur.images[j] as usize == j + n)
                .max_by(|&x, &y| lex_compare(order, self.positive_root(x), self.positive_root(y)))
                .ok_or(Error::NotInvolution)?;
            roots.push(beta);
            cur = self.reflection(beta).mul(&cur);
            if roots.len() > self.rank() {
                return Err(Error::NotInvolution);
            }
        }
        Ok(SupportSet(roots))
    }

    /// All elements of length at most `max_len`, sorted by [`Self::canonical_key`].
    pub fn ball(&self, max_len: usize) -> Vec<WeylElt> {
        let mut layer = vec![self.identity()];
        let mut all = layer.clone();
        for _ in 0..max_len {
            let mut next: HashSet<WeylElt> = HashSet::new();
            for w in &layer {
                for i in 0..self.rank() {
                    if !w.has_right_descent(i) {
                        next.insert(self.mul_simple_right(w, i));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next.into_iter().collect();
            all.extend(layer.iter().cloned());
        }
        self.sort_canonical(&mut all);
        all
    }

    pub fn sort_canonical(&self, elts: &mut [WeylElt]) {
        let mut keyed: Vec<((usize, Word), WeylElt)> =
            elts.iter().map(|w| (self.canonical_key(w), w.clone())).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        for (slot, (_, w)) in elts.iter_mut().zip(keyed) {
            *slot = w;
        }
    }

    /// Involutions of length at most `max_len`, by length-capped breadth-first closure.
    pub fn enumerate_involutions(&self, max_len: usize) -> Vec<WeylElt> {
        self.ball(max_len).into_iter().filter(|w| w.is_involution()).collect()
    }

    /// Every element of the group; only for small test systems.
    pub fn all_elements(&self) -> Vec<WeylElt> {
        self.ball(self.n_pos())
    }
}

/// Mutually orthogonal positive roots whose reflections multiply to an involution.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SupportSet(pub Vec<usize>);

impl SupportSet {
    pub fn roots(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, beta: usize) -> bool {
        self.0.contains(&beta)
    }

    pub fn is_subset_of(&self, other: &SupportSet) -> bool {
        self.0.iter().all(|b| other.contains(*b))
    }
}

/// Cache of canonical words; reduced-word extraction is the hot part of sorting.
#[derive(Default)]
pub struct WordCache(HashMap<WeylElt, Word>);

impl WordCache {
    pub fn get(&mut self, rs: &RootSystem, w: &WeylElt) -> Word {
        self.0.entry(w.clone()).or_insert_with(|| rs.reduced_word(w)).clone()
    }
}

pub fn cmp_canonical(rs: &RootSystem, a: &WeylElt, b: &WeylElt) -> Ordering {
    rs.canonical_key(a).cmp(&rs.canonical_key(b))
}
