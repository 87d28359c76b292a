//! The nil-Hecke ring over the field of rational functions on the Cartan
//! subalgebra: elements `Σ f_v δ_v`, the generators `x_i`, the expansions
//! `x_w = Σ c_{w,v} δ_v`, and the Kostant–Kumar polynomials
//! `d_w = (-1)^{l(w)} c_{w,id} ∏_{α>0} α`.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dashmap::DashMap;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyring::{FactoredPoly, MPoly, RatFn, RootRing};
use crate::rat::Rat;
use crate::rootsys::{RootCode, RootSystem, TypeTag};
use crate::weyl::{WeylElt, Word};

pub const DEFAULT_TERM_BUDGET: usize = 2_000_000;
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 12;

/// Finite sum `Σ f_v δ_v`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NHElt {
    terms: HashMap<WeylElt, RatFn>,
}

impl NHElt {
    pub fn zero() -> NHElt {
        NHElt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v: &WeylElt) -> Option<&RatFn> {
        self.terms.get(v)
    }

    pub fn support(&self) -> impl Iterator<Item = &WeylElt> {
        self.terms.keys()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeylElt, &RatFn)> {
        self.terms.iter()
    }

    /// Sum of numerator term counts over the support.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(RatFn::n_terms).sum()
    }

    pub fn insert(&mut self, v: WeylElt, f: RatFn) {
        if f.is_zero() {
            self.terms.remove(&v);
        } else {
            self.terms.insert(v, f);
        }
    }
}

/// Result of a Kostant–Kumar computation.
#[derive(Clone, Debug)]
pub struct KKResult {
    pub w: WeylElt,
    pub c_w: RatFn,
    /// `d_w` in canonical factored form; see [`FactoredPoly::expand`].
    pub d_w: FactoredPoly,
    /// Numerator terms summed over the support of `x_w`.
    pub term_count: usize,
    pub elapsed: Duration,
}

/// Nil-Hecke computations for one root system, with a shared cache of the
/// expansions `x_w` keyed by group element.
pub struct NilHecke {
    ring: RootRing,
    budget: usize,
    cache: DashMap<WeylElt, Arc<NHElt>>,
}

impl NilHecke {
    pub fn new(rs: Arc<RootSystem>) -> NilHecke {
        Self::with_budget(rs, DEFAULT_TERM_BUDGET)
    }

    pub fn with_budget(rs: Arc<RootSystem>, budget: usize) -> NilHecke {
        NilHecke { ring: RootRing::new(rs), budget, cache: DashMap::new() }
    }

    pub fn ring(&self) -> &RootRing {
        &self.ring
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        self.ring.system()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    pub fn delta(&self, w: &WeylElt) -> NHElt {
        let mut e = NHElt::zero();
        e.insert(w.clone(), self.ring.one());
        e
    }

    /// `f δ_v`.
    pub fn monomial(&self, f: RatFn, v: &WeylElt) -> NHElt {
        let mut e = NHElt::zero();
        e.insert(v.clone(), f);
        e
    }

    pub fn add(&self, a: &NHElt, b: &NHElt) -> NHElt {
        let mut out = a.clone();
        for (v, g) in &b.terms {
            let sum = match out.terms.get(v) {
                Some(f) => self.ring.add(f, g),
                None => g.clone(),
            };
            out.insert(v.clone(), sum);
        }
        out
    }

    /// `x_i = α_i^{-1}(δ_{s_i} - δ_id)`, `i` 0-based.
    pub fn x_gen(&self, i: usize) -> Result<NHElt> {
        let rs = self.system();
        let s = rs.simple_reflection(i)?;
        let inv = self.ring.inv_root(i as RootCode);
        let mut e = NHElt::zero();
        e.insert(rs.identity(), self.ring.neg(&inv));
        e.insert(s, inv);
        Ok(e)
    }

    /// Product under `f δ_v · g δ_w = f v(g) δ_{vw}`.
    pub fn nh_mul(&self, a: &NHElt, b: &NHElt) -> NHElt {
        let parts: Vec<(WeylElt, RatFn)> = a
            .terms
            .par_iter()
            .flat_map_iter(|(v, f)| {
                b.terms.iter().map(move |(w, g)| {
                    let vg = self.ring.weyl_act_ratfn(v, g);
                    (v.mul(w), self.ring.mul(f, &vg))
                })
            })
            .collect();
        let mut acc: HashMap<WeylElt, RatFn> = HashMap::new();
        for (u, f) in parts {
            let sum = match acc.remove(&u) {
                Some(g) => self.ring.add(&g, &f),
                None => f,
            };
            acc.insert(u, sum);
        }
        acc.retain(|_, f| !f.is_zero());
        NHElt { terms: acc }
    }

    /// `a · x_i`, using `c'_u = -(c_u + c_{u s_i}) / u(α_i)`.
    pub fn mul_x_right(&self, a: &NHElt, i: usize) -> NHElt {
        let rs = self.system();
        let mut targets: Vec<WeylElt> = Vec::with_capacity(2 * a.terms.len());
        for v in a.terms.keys() {
            targets.push(v.clone());
            targets.push(rs.mul_simple_right(v, i));
        }
        targets.sort_unstable();
        targets.dedup();
        let zero = self.ring.zero();
        let terms: HashMap<WeylElt, RatFn> = targets
            .into_par_iter()
            .filter_map(|u| {
                let us = rs.mul_simple_right(&u, i);
                let c0 = a.terms.get(&u).unwrap_or(&zero);
                let c1 = a.terms.get(&us).unwrap_or(&zero);
                let sum = self.ring.add(c0, c1);
                if sum.is_zero() {
                    return None;
                }
                let inv = self.ring.inv_root(u.act_code(i as RootCode));
                let f = self.ring.neg(&self.ring.mul(&sum, &inv));
                Some((u, f))
            })
            .collect();
        NHElt { terms }
    }

    /// `x_{i_1} ⋯ x_{i_l}` for a reduced word, computed directly without the cache.
    pub fn x_word(&self, word: &Word) -> Result<NHElt> {
        let rs = self.system();
        rs.eval_reduced_word(word)?;
        let mut acc = self.delta(&rs.identity());
        for &i in &word.0 {
            acc = self.mul_x_right(&acc, i);
            self.check_budget(&acc)?;
        }
        Ok(acc)
    }

    fn check_budget(&self, e: &NHElt) -> Result<()> {
        let terms = e.term_count();
        if terms > self.budget {
            return Err(Error::BudgetExceeded { terms, budget: self.budget });
        }
        Ok(())
    }

    /// `x_w`, built along the canonical reduced word with every prefix cached.
    pub fn x_w(&self, w: &WeylElt) -> Result<Arc<NHElt>> {
        if let Some(hit) = self.cache.get(w) {
            return Ok(hit.clone());
        }
        let rs = self.system();
        let word = rs.reduced_word(w);
        // Walk back to the longest cached prefix, then extend.
        let mut prefixes = Vec::with_capacity(word.len() + 1);
        prefixes.push(rs.identity());
        for &i in &word.0 {
            let next = rs.mul_simple_right(prefixes.last().unwrap(), i);
            prefixes.push(next);
        }
        let mut k = word.len();
        let mut acc = loop {
            if let Some(hit) = self.cache.get(&prefixes[k]) {
                break hit.clone();
            }
            if k == 0 {
                break Arc::new(self.delta(&prefixes[0]));
            }
            k -= 1;
        };
        for j in k..word.len() {
            let next = self.mul_x_right(&acc, word.0[j]);
            self.check_budget(&next)?;
            acc = self.cache.entry(prefixes[j + 1].clone()).or_insert_with(|| Arc::new(next)).clone();
        }
        Ok(acc)
    }

    /// `x_w` for a word that must be reduced.
    pub fn x_w_word(&self, word: &Word) -> Result<Arc<NHElt>> {
        let w = self.system().eval_reduced_word(word)?;
        self.x_w(&w)
    }

    pub fn c_wv(&self, w: &WeylElt, v: &WeylElt) -> Result<RatFn> {
        Ok(self.x_w(w)?.coeff(v).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    pub fn c_w(&self, w: &WeylElt) -> Result<RatFn> {
        self.c_wv(w, &self.system().identity())
    }

    /// Every coefficient of `x_w` from the sum over 0/1 sequences.
    pub fn bruteforce_all(&self, word: &Word, cap: usize) -> Result<NHElt> {
        let rs = self.system();
        rs.eval_reduced_word(word)?;
        let l = word.len();
        if l > cap {
            return Err(Error::CapExceeded { len: l, cap });
        }
        // Group the terms by endpoint; each is ±1 over a product of roots.
        let mut groups: HashMap<WeylElt, Vec<RatFn>> = HashMap::new();
        for mask in 0u64..(1u64 << l) {
            let mut prefix = rs.identity();
            let mut den: Vec<u16> = Vec::with_capacity(l);
            let mut negative = l % 2 == 1;
            for (k, &i) in word.0.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    prefix = rs.mul_simple_right(&prefix, i);
                }
                let root = prefix.act_code(i as RootCode);
                if rs.is_negative_code(root) {
                    negative = !negative;
                }
                den.push(rs.base_index(root) as u16);
            }
            den.sort_unstable();
            let sign = if negative { -Rat::ONE } else { Rat::ONE };
            let term = RatFn { num: MPoly::constant(rs.rank(), sign), den };
            groups.entry(prefix).or_default().push(term);
        }
        let mut out = NHElt::zero();
        for (v, terms) in groups {
            let sum = terms.iter().fold(self.ring.zero(), |acc, t| self.ring.add(&acc, t));
            out.insert(v, sum);
        }
        Ok(out)
    }

    pub fn c_wv_bruteforce(&self, word: &Word, v: &WeylElt, cap: usize) -> Result<RatFn> {
        Ok(self.bruteforce_all(word, cap)?.coeff(v).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    /// `d_w = (-1)^{l(w)} c_w ∏_{α>0} α`.
    pub fn kk_poly(&self, w: &WeylElt) -> Result<KKResult> {
        let start = Instant::now();
        let x = self.x_w(w)?;
        let c_w = x.coeff(&self.system().identity()).cloned().unwrap_or_else(|| self.ring.zero());
        let d_w = self.d_from_c(&c_w, w.length())?;
        Ok(KKResult { w: w.clone(), c_w, d_w, term_count: x.term_count(), elapsed: start.elapsed() })
    }

    fn d_from_c(&self, c: &RatFn, len: usize) -> Result<FactoredPoly> {
        let n_pos = self.system().n_pos();
        let mut seen = vec![false; n_pos];
        let mut residual = Vec::new();
        for &r in &c.den {
            if std::mem::replace(&mut seen[r as usize], true) {
                residual.push(r as usize);
            }
        }
        if !residual.is_empty() {
            return Err(Error::ResidualDenominator(residual));
        }
        let roots: Vec<u16> = (0..n_pos as u16).filter(|&r| !seen[r as usize]).collect();
        let cofactor = if len % 2 == 1 { c.num.neg() } else { c.num.clone() };
        Ok(FactoredPoly::with_roots(&self.ring, cofactor, roots))
    }

    /// Checks `c_{w,v} = -v(α_i)^{-1}(c_{ws_i,v} + c_{ws_i,vs_i})` when `l(ws_i) < l(w)`.
    pub fn recursion_check_b(&self, w: &WeylElt, v: &WeylElt, i: usize) -> Result<bool> {
        let rs = self.system();
        if !w.has_right_descent(i) {
            return Err(Error::Invalid(format!("s_{} is not a right descent of w", i + 1)));
        }
        let ws = rs.mul_simple_right(w, i);
        let vs = rs.mul_simple_right(v, i);
        let sum = self.ring.add(&self.c_wv(&ws, v)?, &self.c_wv(&ws, &vs)?);
        let rhs = self.ring.neg(&self.ring.mul(&sum, &self.ring.inv_root(v.act_code(i as RootCode))));
        Ok(self.c_wv(w, v)? == rhs)
    }

    /// Checks `c_{w,v} = α_i^{-1}(s_i(c_{s_iw,s_iv}) - c_{s_iw,v})` when `l(s_iw) < l(w)`.
    pub fn recursion_check_c(&self, w: &WeylElt, v: &WeylElt, i: usize) -> Result<bool> {
        let rs = self.system();
        let sw = rs.mul_simple_left(i, w);
        if sw.length() >= w.length() {
            return Err(Error::Invalid(format!("s_{} is not a left descent of w", i + 1)));
        }
        let sv = rs.mul_simple_left(i, v);
        let si = rs.simple_reflection(i)?;
        let moved = self.ring.weyl_act_ratfn(&si, &self.c_wv(&sw, &sv)?);
        let diff = self.ring.sub(&moved, &self.c_wv(&sw, v)?);
        let rhs = self.ring.mul(&diff, &self.ring.inv_root(i as RootCode));
        Ok(self.c_wv(w, v)? == rhs)
    }

    /// Denominator of `c_{w,v}` is a set of roots `α` with `s_α v ≤ w`.
    pub fn dyer_check(&self, w: &WeylElt, v: &WeylElt) -> Result<bool> {
        let rs = self.system();
        let c = self.c_wv(w, v)?;
        let w_word = rs.reduced_word(w);
        let mut prev = None;
        for &r in &c.den {
            if prev == Some(r) {
                return Ok(false);
            }
            prev = Some(r);
            let sv = rs.reflection(r as usize).mul(v);
            if !rs.bruhat_leq_word(&sv, &w_word) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Line-per-term rendering `v_word : num / ∏den`, ordered by `(l(v), word)`.
    pub fn render(&self, e: &NHElt) -> String {
        let rs = self.system();
        let mut rows: Vec<((usize, Word), &RatFn)> =
            e.terms.iter().map(|(v, f)| (rs.canonical_key(v), f)).collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        rows.iter()
            .map(|((_, word), f)| {
                let w = if word.is_empty() { "e".to_string() } else { word.to_string() };
                format!("{w} : {}\n", self.ring.fmt_ratfn(f))
            })
            .collect()
    }
}

/// Checks `d_{w_1 w_2} = d_{w_1} d_{w_2}` in a direct sum, the factor
/// polynomials embedded by shifting the second factor's variables.
/// `w1`, `w2` are elements of the two factors.
pub fn product_formula_check(rs_sum: &Arc<RootSystem>, w1: &WeylElt, w2: &WeylElt) -> Result<bool> {
    let (a, b) = match rs_sum.tag() {
        TypeTag::DirectSum(a, b) => (a.clone(), b.clone()),
        _ => return Err(Error::Invalid("not a direct sum".into())),
    };
    let (ra, n) = (a.rank(), rs_sum.rank());
    let word1 = a.reduced_word(w1);
    let word2 = b.reduced_word(w2);
    let mut joined = word1.0.clone();
    joined.extend(word2.0.iter().map(|i| i + ra));
    let w = rs_sum.eval_reduced_word(&Word(joined))?;
    let nh_sum = NilHecke::new(rs_sum.clone());
    let d_sum = nh_sum.kk_poly(&w)?.d_w;
    let embed = |part: &RootSystem, d: &FactoredPoly, offset: usize| -> Result<(MPoly, Vec<u16>)> {
        let roots = d
            .roots
            .iter()
            .map(|&r| {
                let mut b = vec![0; n];
                b[offset..offset + part.rank()].copy_from_slice(&part.positive_root(r as usize).b);
                rs_sum.index_of(&b).map(|k| k as u16).ok_or(Error::NotARoot(b))
            })
            .collect::<Result<_>>()?;
        Ok((d.cofactor.shift_vars(offset, n), roots))
    };
    let (c1, mut r1) = embed(&a, &NilHecke::new(a.clone()).kk_poly(w1)?.d_w, 0)?;
    let (c2, r2) = embed(&b, &NilHecke::new(b.clone()).kk_poly(w2)?.d_w, ra)?;
    r1.extend(r2);
    Ok(d_sum == FactoredPoly::with_roots(nh_sum.ring(), c1.mul(&c2), r1))
}
