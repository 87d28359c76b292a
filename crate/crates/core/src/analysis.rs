//! Factorizations of first-column reflections, the `u`-tables, and good
//! pairs of involutions with certificates that their Kostant–Kumar
//! polynomials differ.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nilhecke::{KKResult, NilHecke};
use crate::polyring::{FactoredPoly, MPoly, MOD_P};
use crate::rootsys::{lex_compare, Root, RootSystem, SimpleOrder, TypeTag};
use crate::weyl::{WeylElt, Word};

/// `s_β = u·v` with `v` in the parabolic subgroup fixing the column node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorRow {
    pub beta: usize,
    pub root: Root,
    pub u: WeylElt,
    pub u_word: Word,
    pub v: WeylElt,
    pub v_word: Word,
    /// Whether `u = v⁻¹ s_c`, the shape needed for the non-divisibility argument.
    pub premise_ok: bool,
}

/// Simple indices other than the column node.
fn parabolic_set(rs: &RootSystem, order: &SimpleOrder) -> Vec<usize> {
    (0..rs.rank()).filter(|&i| i != order.distinguished).collect()
}

pub fn prop35_factor(rs: &RootSystem, order: &SimpleOrder, beta: usize) -> Result<FactorRow> {
    let c = order.distinguished;
    if beta >= rs.n_pos() || rs.positive_root(beta).b[c] == 0 {
        return Err(Error::NotInFirstColumn(beta));
    }
    let parabolic = parabolic_set(rs, order);
    let s_beta = rs.reflection(beta);
    let (u, v) = rs.parabolic_factorize(&s_beta, &parabolic);
    if u.mul(&v) != s_beta {
        return Err(Error::Invalid(format!("factorization of root {beta} does not recompose")));
    }
    if u.length() + v.length() != s_beta.length() {
        return Err(Error::Invalid(format!("factorization of root {beta} is not length-additive")));
    }
    if parabolic.iter().any(|&i| u.has_right_descent(i)) {
        return Err(Error::Invalid(format!("u for root {beta} is not a minimal coset representative")));
    }
    let premise_ok = u == rs.mul_simple_right(&v.inverse(), c);
    Ok(FactorRow {
        beta,
        root: rs.positive_root(beta).clone(),
        u_word: rs.reduced_word(&u),
        v_word: rs.reduced_word(&v),
        u,
        v,
        premise_ok,
    })
}

/// One row per first-column root, in canonical order.
pub fn gen_table(rs: &RootSystem, order: &SimpleOrder) -> Result<Vec<FactorRow>> {
    rs.first_column(order)
        .into_par_iter()
        .map(|beta| prop35_factor(rs, order, beta))
        .collect()
}

/// The ≺-maximal root of the first column.
pub fn first_column_max(rs: &RootSystem, order: &SimpleOrder) -> Option<usize> {
    rs.first_column(order)
        .into_iter()
        .max_by(|&x, &y| lex_compare(order, rs.positive_root(x), rs.positive_root(y)))
}

/// Which non-comparability clauses hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `s_{β1} ≰ w2` only.
    First,
    /// `s_{β2} ≰ w1` only.
    Second,
    Both,
}

/// A divisibility claim: `root` divides `d` of `divides` (1 or 2) but not
/// of `not_divides`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivEvidence {
    pub root: usize,
    pub divides: u8,
    pub not_divides: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// `Supp(w_k) ∩ C1` has the given size instead of one.
    SupportMeetsC1 { which: u8, count: usize },
    SameRoot,
    /// `β_k` is the maximal first-column root of E8.
    MaximalRoot { which: u8 },
    /// Both `s_{β1} ≤ w2` and `s_{β2} ≤ w1`.
    Comparable,
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::SupportMeetsC1 { which, count } => {
                write!(f, "support of w{which} meets C1 in {count} roots, not 1")
            }
            Rejection::SameRoot => f.write_str("both supports meet C1 in the same root"),
            Rejection::MaximalRoot { which } => write!(f, "beta{which} is maximal in C1"),
            Rejection::Comparable => f.write_str("s_beta1 <= w2 and s_beta2 <= w1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPairCertificate {
    pub w1: WeylElt,
    pub w2: WeylElt,
    pub beta1: usize,
    pub beta2: usize,
    pub direction: Direction,
    pub evidence: Vec<DivEvidence>,
    /// `Some(true)` once both polynomials were computed and found different.
    pub direct_inequality: Option<bool>,
    /// Whether the divisibility claims were verified on computed polynomials.
    pub computed: bool,
}

/// The unique root of `Supp(w) ∩ C1`, or how many there were.
fn c1_root(rs: &RootSystem, order: &SimpleOrder, w: &WeylElt) -> Result<std::result::Result<usize, usize>> {
    let c = order.distinguished;
    let supp = rs.support(w, order)?;
    let hits: Vec<usize> = supp.roots().iter().copied().filter(|&r| rs.positive_root(r).b[c] != 0).collect();
    Ok(if hits.len() == 1 { Ok(hits[0]) } else { Err(hits.len()) })
}

/// Checks the four clauses of a good pair; `Err` only for non-involutions.
pub fn is_good_pair(
    w1: &WeylElt,
    w2: &WeylElt,
    rs: &RootSystem,
    order: &SimpleOrder,
) -> Result<std::result::Result<GoodPairCertificate, Rejection>> {
    let b1 = match c1_root(rs, order, w1)? {
        Ok(b) => b,
        Err(count) => return Ok(Err(Rejection::SupportMeetsC1 { which: 1, count })),
    };
    let b2 = match c1_root(rs, order, w2)? {
        Ok(b) => b,
        Err(count) => return Ok(Err(Rejection::SupportMeetsC1 { which: 2, count })),
    };
    Ok(pair_from_roots(w1, w2, b1, b2, rs, order))
}

fn pair_from_roots(
    w1: &WeylElt,
    w2: &WeylElt,
    b1: usize,
    b2: usize,
    rs: &RootSystem,
    order: &SimpleOrder,
) -> std::result::Result<GoodPairCertificate, Rejection> {
    if b1 == b2 {
        return Err(Rejection::SameRoot);
    }
    if matches!(rs.tag(), TypeTag::E8) {
        let top = first_column_max(rs, order);
        if top == Some(b1) {
            return Err(Rejection::MaximalRoot { which: 1 });
        }
        if top == Some(b2) {
            return Err(Rejection::MaximalRoot { which: 2 });
        }
    }
    let first = !rs.bruhat_leq(&rs.reflection(b1), w2);
    let second = !rs.bruhat_leq(&rs.reflection(b2), w1);
    let direction = match (first, second) {
        (true, true) => Direction::Both,
        (true, false) => Direction::First,
        (false, true) => Direction::Second,
        (false, false) => return Err(Rejection::Comparable),
    };
    let mut evidence = Vec::new();
    if first {
        evidence.push(DivEvidence { root: b1, divides: 2, not_divides: 1 });
    }
    if second {
        evidence.push(DivEvidence { root: b2, divides: 1, not_divides: 2 });
    }
    Ok(GoodPairCertificate {
        w1: w1.clone(),
        w2: w2.clone(),
        beta1: b1,
        beta2: b2,
        direction,
        evidence,
        direct_inequality: None,
        computed: false,
    })
}

/// Limits on direct computation of Kostant–Kumar polynomials.
#[derive(Clone, Copy, Debug)]
pub struct ComputeCaps {
    pub max_len: usize,
}

impl Default for ComputeCaps {
    fn default() -> Self {
        ComputeCaps { max_len: 8 }
    }
}

/// Kostant–Kumar polynomials shared across many certificates.
pub struct KKCache {
    nh: NilHecke,
    results: dashmap::DashMap<WeylElt, Arc<KKResult>>,
}

impl KKCache {
    pub fn new(nh: NilHecke) -> KKCache {
        KKCache { nh, results: dashmap::DashMap::new() }
    }

    pub fn nilhecke(&self) -> &NilHecke {
        &self.nh
    }

    pub fn get(&self, w: &WeylElt) -> Result<Arc<KKResult>> {
        if let Some(hit) = self.results.get(w) {
            return Ok(hit.clone());
        }
        let r = Arc::new(self.nh.kk_poly(w)?);
        Ok(self.results.entry(w.clone()).or_insert(r).clone())
    }
}

/// Value of a factored polynomial at a pseudo-random point of `F_p^n`.
fn eval_factored(kk: &KKCache, d: &FactoredPoly, seed: u64) -> Option<u64> {
    let n = kk.nh.system().rank();
    let point: Vec<u64> = (0..n as u64)
        .map(|i| (seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407 * (i + 1))) % MOD_P)
        .collect();
    let ring = kk.nh.ring();
    let mut acc = d.cofactor.eval_mod(&point)?;
    for &r in &d.roots {
        let v = ring.form(r as usize).eval_mod(&point)?;
        acc = ((acc as u128 * v as u128) % MOD_P as u128) as u64;
    }
    Some(acc)
}

fn divides(kk: &KKCache, d: &FactoredPoly, root: usize) -> bool {
    d.divisible_by_root(kk.nh.ring(), root)
}

/// Verifies the divisibility evidence and compares the two polynomials
/// directly, when both elements are within the caps.
pub fn certify_distinct(
    mut cert: GoodPairCertificate,
    kk: &KKCache,
    caps: ComputeCaps,
) -> Result<GoodPairCertificate> {
    if cert.w1.length() > caps.max_len || cert.w2.length() > caps.max_len {
        cert.computed = false;
        cert.direct_inequality = None;
        return Ok(cert);
    }
    let d1 = kk.get(&cert.w1)?;
    let d2 = kk.get(&cert.w2)?;
    let pick = |k: u8| if k == 1 { &d1.d_w } else { &d2.d_w };
    let mut ok = !divides(kk, &d1.d_w, cert.beta1) && !divides(kk, &d2.d_w, cert.beta2);
    for ev in &cert.evidence {
        ok &= divides(kk, pick(ev.divides), ev.root) && !divides(kk, pick(ev.not_divides), ev.root);
    }
    if !ok {
        return Err(Error::Invalid(format!(
            "divisibility evidence fails for roots {} and {}",
            cert.beta1, cert.beta2
        )));
    }
    let differ_factored = d1.d_w != d2.d_w;
    let differ_eval = (1..=3u64).any(|s| eval_factored(kk, &d1.d_w, s) != eval_factored(kk, &d2.d_w, s));
    cert.computed = true;
    cert.direct_inequality = Some(differ_factored && differ_eval);
    Ok(cert)
}

/// All good pairs `(w1, w2)` of involutions of length at most `max_len`,
/// each emitted once with `w1` before `w2` in canonical order.
pub fn scan_good_pairs(
    rs: &RootSystem,
    order: &SimpleOrder,
    max_len: usize,
    kk: Option<&KKCache>,
    caps: ComputeCaps,
) -> Result<Vec<GoodPairCertificate>> {
    let invs = rs.enumerate_involutions(max_len);
    let roots: Vec<Option<usize>> = invs
        .par_iter()
        .map(|w| c1_root(rs, order, w).map(|r| r.ok()))
        .collect::<Result<_>>()?;
    let cands: Vec<(usize, usize)> = roots.iter().enumerate().filter_map(|(k, r)| r.map(|b| (k, b))).collect();
    let pairs: Vec<GoodPairCertificate> = (0..cands.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let cands = &cands;
            let invs = &invs;
            (a + 1..cands.len()).filter_map(move |b| {
                let (i, b1) = cands[a];
                let (j, b2) = cands[b];
                pair_from_roots(&invs[i], &invs[j], b1, b2, rs, order).ok()
            })
        })
        .collect();
    match kk {
        None => Ok(pairs),
        Some(kk) => pairs.into_par_iter().map(|c| certify_distinct(c, kk, caps)).collect(),
    }
}

/// Re-derives every claim of a certificate from scratch.
pub fn recheck(cert: &GoodPairCertificate, rs: &RootSystem, order: &SimpleOrder, kk: Option<&KKCache>) -> Result<bool> {
    if !cert.w1.is_involution() || !cert.w2.is_involution() {
        return Ok(false);
    }
    let fresh = match is_good_pair(&cert.w1, &cert.w2, rs, order)? {
        Ok(c) => c,
        Err(_) => return Ok(false),
    };
    if (fresh.beta1, fresh.beta2, fresh.direction, &fresh.evidence)
        != (cert.beta1, cert.beta2, cert.direction, &cert.evidence)
    {
        return Ok(false);
    }
    if !cert.computed {
        return Ok(true);
    }
    let Some(kk) = kk else { return Ok(false) };
    let d1 = kk.get(&cert.w1)?.d_w.clone();
    let d2 = kk.get(&cert.w2)?.d_w.clone();
    let mut ok = !divides(kk, &d1, cert.beta1) && !divides(kk, &d2, cert.beta2);
    for ev in &cert.evidence {
        let (yes, no) = if ev.divides == 1 { (&d1, &d2) } else { (&d2, &d1) };
        ok &= divides(kk, yes, ev.root) && !divides(kk, no, ev.root);
    }
    Ok(ok && cert.direct_inequality == Some(d1 != d2))
}

/// Sorting helper for rows: canonical (height, ≺) order of the roots.
pub fn cmp_rows(rs: &RootSystem, order: &SimpleOrder, a: &FactorRow, b: &FactorRow) -> Ordering {
    rs.canonical_cmp(order, a.beta, b.beta)
}

/// Expanded `d_w` grouped by whether it is divisible by each positive root;
/// used by reports.
pub fn root_divisibility(kk: &KKCache, w: &WeylElt) -> Result<HashMap<usize, bool>> {
    let d = kk.get(w)?;
    Ok((0..kk.nh.system().n_pos()).map(|r| (r, divides(kk, &d.d_w, r))).collect())
}

/// Convenience: expanded `d_w`.
pub fn expanded_d(kk: &KKCache, w: &WeylElt) -> Result<MPoly> {
    Ok(kk.get(w)?.d_w.expand(kk.nh.ring()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6() -> RootSystem {
        RootSystem::build_e(6).unwrap()
    }

    #[test]
    fn simple_row() {
        let rs = e6();
        let order = SimpleOrder::natural(6);
        let row = prop35_factor(&rs, &order, 0).unwrap();
        assert_eq!(row.u, rs.simple_reflection(0).unwrap());
        assert!(row.premise_ok);
        assert_eq!(prop35_factor(&rs, &order, 1), Err(Error::NotInFirstColumn(1)));
        let beta = rs.index_of(&[1, 0, 1, 0, 0, 0]).unwrap();
        let row = prop35_factor(&rs, &order, beta).unwrap();
        assert_eq!(row.u_word, Word::from_one_based(&[3, 1]).unwrap());
    }

    #[test]
    fn table_rows_valid() {
        let rs = e6();
        for name in SimpleOrder::names_for(&rs) {
            let order = SimpleOrder::named(&rs, name).unwrap();
            let rows = gen_table(&rs, &order).unwrap();
            assert_eq!(rows.len(), 16);
            assert!(rows.iter().all(|r| r.premise_ok));
            assert_eq!(gen_table(&rs, &order).unwrap(), rows);
        }
    }

    #[test]
    fn pair_rejections() {
        let rs = e6();
        let order = SimpleOrder::natural(6);
        let s = rs.reflection(0);
        assert_eq!(is_good_pair(&s, &s, &rs, &order).unwrap(), Err(Rejection::SameRoot));
        let id = rs.identity();
        assert_eq!(
            is_good_pair(&id, &s, &rs, &order).unwrap(),
            Err(Rejection::SupportMeetsC1 { which: 1, count: 0 })
        );
        let w = rs.simple_reflection(0).unwrap().mul(&rs.simple_reflection(2).unwrap());
        assert_eq!(is_good_pair(&w, &s, &rs, &order), Err(Error::NotInvolution));
    }
}
