//! Exact polynomials in the simple-root variables `x_1..x_n`, and rational
//! functions whose denominators are products of positive roots.
//!
//! Every coefficient of the nil-Hecke ring has the shape `g / ∏ α` with
//! `α` running over positive roots, so a [`RatFn`] stores its denominator as
//! a multiset of positive-root indices. Keeping both numerator and
//! denominator reduced (no denominator root divides the numerator) makes the
//! representation canonical: two reduced forms of the same function are
//! identical, because distinct positive roots are non-associate primes of
//! the polynomial ring.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::rootsys::{Root, RootCode, RootSystem, MAX_RANK};
use crate::weyl::WeylElt;

/// Exponent vector packed one byte per variable, `x_1` in the low byte.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(i: usize) -> Mono {
        debug_assert!(i < MAX_RANK);
        Mono(1u64 << (8 * i))
    }

    pub fn from_exponents(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_RANK);
        let mut m = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent too large");
            m |= (e as u64) << (8 * i);
        }
        Mono(m)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_RANK).map(|i| self.exp(i)).sum()
    }

    /// Caller guarantees no per-variable overflow (total degree < 256).
    #[inline]
    fn mul(self, other: Mono) -> Mono {
        Mono(self.0 + other.0)
    }

    #[inline]
    fn div_var(self, i: usize) -> Mono {
        debug_assert!(self.exp(i) > 0);
        Mono(self.0 - (1u64 << (8 * i)))
    }
}

/// Sparse polynomial over ℚ; terms sorted by monomial, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: Vec<(Mono, Rat)>,
}

fn merge_add(a: &[(Mono, Rat)], b: &[(Mono, Rat)]) -> Vec<(Mono, Rat)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let s = &a[i].1 + &b[j].1;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> MPoly {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Mono::ONE, c)] };
        MPoly { nvars, terms }
    }

    pub fn one(nvars: usize) -> MPoly {
        Self::constant(nvars, Rat::ONE)
    }

    pub fn var(nvars: usize, i: usize) -> MPoly {
        assert!(i < nvars);
        MPoly { nvars, terms: vec![(Mono::var(i), Rat::ONE)] }
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[i32]) -> MPoly {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (Mono::var(i), Rat::from(c)))
            .collect::<Vec<_>>();
        let mut p = MPoly { nvars: coeffs.len(), terms };
        p.terms.sort_by(|a, b| a.0.cmp(&b.0));
        p
    }

    /// Builds from arbitrary (monomial, coefficient) pairs, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Rat)>) -> MPoly {
        let mut v: Vec<(Mono, Rat)> = terms.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, Rat)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MPoly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Mono::ONE)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coeff(&self, m: Mono) -> Rat {
        match self.terms.binary_search_by(|t| t.0.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::ZERO,
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        MPoly { nvars: self.nvars.max(other.nvars), terms: merge_add(&self.terms, &other.terms) }
    }

    pub fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Multiplies every monomial by `m` and the coefficients by `c`.
    fn shift_scale(&self, m: Mono, c: &Rat) -> Vec<(Mono, Rat)> {
        self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect()
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let nvars = self.nvars.max(other.nvars);
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(nvars);
        }
        let deg = self.degree().unwrap_or(0) + other.degree().unwrap_or(0);
        assert!(deg < 256, "degree {deg} exceeds the packed monomial range");
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        // Adding a fixed monomial preserves the order of `large`, so each
        // partial product is already sorted; combine them by pairwise merging.
        let mut parts: Vec<Vec<(Mono, Rat)>> =
            small.terms.iter().map(|(m, c)| large.shift_scale(*m, c)).collect();
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(merge_add(&a, &b)),
                    None => next.push(a),
                }
            }
            parts = next;
        }
        MPoly { nvars, terms: parts.pop().unwrap_or_default() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading variable of a linear form: lowest index with a nonzero coefficient.
    fn linear_leading(&self) -> Result<(usize, Rat)> {
        if self.is_zero() || self.terms.iter().any(|(m, _)| m.degree() != 1) {
            return Err(Error::NotLinear);
        }
        (0..self.nvars.max(1))
            .find_map(|i| {
                let c = self.coeff(Mono::var(i));
                (!c.is_zero()).then_some((i, c))
            })
            .ok_or(Error::NotLinear)
    }

    /// `self = q·divisor + r` where no monomial of `r` involves the leading
    /// variable of the linear form `divisor`; divisibility iff `r = 0`.
    pub fn divide_by_linear(&self, divisor: &MPoly) -> Result<(MPoly, MPoly)> {
        let (k, lead) = divisor.linear_leading()?;
        let inv = lead.recip();
        let nvars = self.nvars.max(divisor.nvars);
        let mut rem = self.clone();
        let mut quot = MPoly::zero(nvars);
        loop {
            let top = rem.terms.iter().map(|(m, _)| m.exp(k)).max().unwrap_or(0);
            if top == 0 {
                break;
            }
            let chunk = MPoly::from_terms(
                nvars,
                rem.terms
                    .iter()
                    .filter(|(m, _)| m.exp(k) == top)
                    .map(|(m, c)| (m.div_var(k), c * &inv)),
            );
            rem = rem.sub(&chunk.mul(divisor));
            quot = quot.add(&chunk);
        }
        rem.nvars = nvars;
        Ok((quot, rem))
    }

    /// Exact quotient by a linear form, `None` if it does not divide.
    pub fn exact_div_linear(&self, divisor: &MPoly) -> Result<Option<MPoly>> {
        let (q, r) = self.divide_by_linear(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Substitutes `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        let nvars = images.first().map_or(self.nvars, |p| p.nvars);
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(nvars), p.clone()]).collect();
        let mut acc: Vec<(Mono, Rat)> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(nvars, c.clone());
            for (i, pw) in powers.iter_mut().enumerate().take(self.nvars) {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&images[i]);
                    pw.push(next);
                }
                t = t.mul(&pw[e]);
            }
            acc.extend(t.terms);
        }
        MPoly::from_terms(nvars, acc)
    }

    /// Re-indexes variables: `x_i ↦ x_{i + offset}` in a ring with `nvars` variables.
    pub fn shift_vars(&self, offset: usize, nvars: usize) -> MPoly {
        assert!(self.nvars + offset <= nvars && nvars <= MAX_RANK);
        MPoly {
            nvars,
            terms: self.terms.iter().map(|(m, c)| (Mono(m.0 << (8 * offset)), c.clone())).collect(),
        }
    }
}

/// Canonical text: terms by descending total degree, then descending
/// exponent vector read from `x1`; coefficients as exact `p/q`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let n = self.nvars.max(1);
        let mut terms: Vec<&(Mono, Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            b.0.degree()
                .cmp(&a.0.degree())
                .then_with(|| b.0.exponents(n).cmp(&a.0.exponents(n)))
        });
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = (0..n)
                .filter(|&i| m.exp(i) > 0)
                .map(|i| match m.exp(i) {
                    1 => format!("x{}", i + 1),
                    e => format!("x{}^{}", i + 1, e),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Prime used for modular evaluation, `2^61 - 1`.
pub const MOD_P: u64 = 2_305_843_009_213_693_951;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn add_mod(a: u64, b: u64) -> u64 {
    (a + b) % MOD_P
}

fn pow_mod(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MOD_P - 2)
}

fn int_mod(x: i64) -> u64 {
    x.rem_euclid(MOD_P as i64) as u64
}

/// Image of a rational in `F_p`; `None` if `p` divides the denominator.
pub fn rat_mod(c: &Rat) -> Option<u64> {
    let p = num_bigint::BigInt::from(MOD_P);
    let reduce = |x: num_bigint::BigInt| -> u64 {
        let r = ((x % &p) + &p) % &p;
        u64::try_from(r).expect("reduced below the modulus")
    };
    let d = reduce(c.denom());
    if d == 0 {
        return None;
    }
    Some(mul_mod(reduce(c.numer()), inv_mod(d)))
}

impl MPoly {
    /// Value modulo [`MOD_P`] at a point of `F_p^n`; `None` if a
    /// coefficient denominator vanishes mod p.
    pub fn eval_mod(&self, point: &[u64]) -> Option<u64> {
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let mut v = match c.to_i64() {
                Some(x) => int_mod(x),
                None => rat_mod(c)?,
            };
            for (i, &x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    v = mul_mod(v, pow_mod(x, e as u64));
                }
            }
            total = add_mod(total, v);
        }
        Some(total)
    }
}

/// `num / ∏_{r ∈ den} β_r` with `den` a sorted multiset of positive-root indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub num: MPoly,
    pub den: Vec<u16>,
}

impl RatFn {
    pub fn zero(nvars: usize) -> RatFn {
        RatFn { num: MPoly::zero(nvars), den: Vec::new() }
    }

    pub fn from_poly(p: MPoly) -> RatFn {
        RatFn { num: p, den: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// Number of numerator terms, the unit of the work budget.
    pub fn n_terms(&self) -> usize {
        self.num.n_terms()
    }
}

/// Multiset intersection of two sorted lists.
fn sorted_common(a: &[u16], b: &[u16]) -> Vec<u16> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `a ∖ b` as multisets, both sorted.
fn sorted_minus(a: &[u16], b: &[u16]) -> Vec<u16> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() {
        if j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        } else {
            out.push(a[i]);
            i += 1;
        }
    }
    out
}

fn sorted_union(a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut v: Vec<u16> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

/// Polynomial ring `ℚ[x_1..x_n]` attached to a root system, with the linear
/// forms of its roots precomputed.
#[derive(Debug)]
pub struct RootRing {
    rs: Arc<RootSystem>,
    forms: Vec<MPoly>,
}

/// The linear polynomial `Σ b_i x_i` of a root.
pub fn root_linear_form(root: &Root) -> MPoly {
    MPoly::linear(&root.b)
}

impl RootRing {
    pub fn new(rs: Arc<RootSystem>) -> RootRing {
        let forms = rs.positive_roots().iter().map(root_linear_form).collect();
        RootRing { rs, forms }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn nvars(&self) -> usize {
        self.rs.rank()
    }

    /// Linear form of the positive root with the given index.
    pub fn form(&self, idx: usize) -> &MPoly {
        &self.forms[idx]
    }

    pub fn zero(&self) -> RatFn {
        RatFn::zero(self.nvars())
    }

    pub fn one(&self) -> RatFn {
        RatFn::from_poly(MPoly::one(self.nvars()))
    }

    pub fn constant(&self, c: Rat) -> RatFn {
        RatFn::from_poly(MPoly::constant(self.nvars(), c))
    }

    /// `1 / root` for a signed root code; the sign moves into the numerator.
    pub fn inv_root(&self, code: RootCode) -> RatFn {
        let sign = if self.rs.is_negative_code(code) { -Rat::ONE } else { Rat::ONE };
        RatFn {
            num: MPoly::constant(self.nvars(), sign),
            den: vec![self.rs.base_index(code) as u16],
        }
    }

    /// Cancels every denominator root in `candidates` that divides `num`.
    fn reduce(&self, mut num: MPoly, mut den: Vec<u16>, candidates: &[u16]) -> RatFn {
        if num.is_zero() {
            return self.zero();
        }
        let mut cands: Vec<u16> = candidates.to_vec();
        cands.dedup();
        for r in cands {
            while let Ok(pos) = den.binary_search(&r) {
                if !self.may_divide(&num, r as usize) {
                    break;
                }
                match num.exact_div_linear(&self.forms[r as usize]).expect("root forms are linear") {
                    Some(q) => {
                        num = q;
                        den.remove(pos);
                    }
                    None => break,
                }
            }
        }
        RatFn { num, den }
    }

    /// Cheap necessary condition for `root | p`: `p` vanishes at a point of
    /// the hyperplane `root = 0`, evaluated modulo a prime.
    fn may_divide(&self, p: &MPoly, root: usize) -> bool {
        let b = &self.rs.positive_root(root).b;
        let k = match b.iter().position(|&x| x != 0) {
            Some(k) => k,
            None => return false,
        };
        let mut point = vec![0u64; self.nvars()];
        let mut s = 0u64;
        for j in 0..point.len() {
            if j != k {
                point[j] = 1_000_003 + 7919 * j as u64;
                s = add_mod(s, mul_mod(int_mod(b[j] as i64), point[j]));
            }
        }
        point[k] = mul_mod(MOD_P - s, inv_mod(int_mod(b[k] as i64)));
        p.eval_mod(&point).is_none_or(|v| v == 0)
    }

    /// Full normalization: cancel any denominator root dividing the numerator.
    pub fn normalize(&self, f: RatFn) -> RatFn {
        let mut den = f.den;
        den.sort_unstable();
        let cands = den.clone();
        self.reduce(f.num, den, &cands)
    }

    pub fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        // For reduced inputs only roots with equal multiplicity on both sides can cancel.
        let common = sorted_common(&a.den, &b.den);
        let only_a = sorted_minus(&a.den, &common);
        let only_b = sorted_minus(&b.den, &common);
        let na = only_b.iter().fold(a.num.clone(), |p, &r| p.mul(&self.forms[r as usize]));
        let nb = only_a.iter().fold(b.num.clone(), |p, &r| p.mul(&self.forms[r as usize]));
        let num = na.add(&nb);
        let den = sorted_union(&sorted_union(&common, &only_a), &only_b);
        self.reduce(num, den, &common)
    }

    pub fn neg(&self, a: &RatFn) -> RatFn {
        RatFn { num: a.num.neg(), den: a.den.clone() }
    }

    pub fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &RatFn, c: &Rat) -> RatFn {
        if c.is_zero() {
            return self.zero();
        }
        RatFn { num: a.num.scale(c), den: a.den.clone() }
    }

    pub fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let num = a.num.mul(&b.num);
        let den = sorted_union(&a.den, &b.den);
        let cands = den.clone();
        self.reduce(num, den, &cands)
    }

    /// `a / b`, defined when `b` is a nonzero scalar times a product of roots
    /// over a product of roots (the only shape arising here).
    pub fn div(&self, a: &RatFn, b: &RatFn) -> Result<RatFn> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let fb = FactoredPoly::factor(self, &b.num);
        if !fb.cofactor.is_constant() {
            return Err(Error::Invalid("divisor numerator is not a product of roots".into()));
        }
        let scalar = fb.cofactor.coeff(Mono::ONE);
        let num = b.den.iter().fold(a.num.scale(&scalar.recip()), |p, &r| p.mul(&self.forms[r as usize]));
        let den = sorted_union(&a.den, &fb.roots);
        Ok(self.normalize(RatFn { num, den }))
    }

    /// `w(p)`: substitute `x_i ↦` linear form of `w(α_i)`.
    pub fn weyl_act_poly(&self, w: &WeylElt, p: &MPoly) -> MPoly {
        if p.is_constant() {
            return p.clone();
        }
        let images: Vec<MPoly> = (0..self.nvars())
            .map(|i| root_linear_form(&self.rs.root_of_code(w.act_code(i as RootCode))))
            .collect();
        p.substitute(&images)
    }

    /// `w(f)`. The action is a field automorphism, so reducedness is preserved.
    pub fn weyl_act_ratfn(&self, w: &WeylElt, f: &RatFn) -> RatFn {
        let mut num = self.weyl_act_poly(w, &f.num);
        let mut den = Vec::with_capacity(f.den.len());
        let mut negative = false;
        for &r in &f.den {
            let img = w.act_code(r);
            if self.rs.is_negative_code(img) {
                negative = !negative;
            }
            den.push(self.rs.base_index(img) as u16);
        }
        if negative {
            num = num.neg();
        }
        den.sort_unstable();
        RatFn { num, den }
    }

    /// Product of the linear forms of all positive roots.
    pub fn all_roots_product(&self) -> MPoly {
        self.forms.iter().fold(MPoly::one(self.nvars()), |p, f| p.mul(f))
    }

    pub fn fmt_den(&self, den: &[u16]) -> String {
        if den.is_empty() {
            return "1".to_string();
        }
        den.iter()
            .map(|&r| format!("({})", self.forms[r as usize]))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// `num / ∏den` rendering used in golden output.
    pub fn fmt_ratfn(&self, f: &RatFn) -> String {
        format!("{} / {}", f.num, self.fmt_den(&f.den))
    }
}

/// A polynomial written as `cofactor · ∏ roots`, with every positive-root
/// linear factor pulled out of the cofactor. This form is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredPoly {
    pub cofactor: MPoly,
    /// Sorted multiset of positive-root indices.
    pub roots: Vec<u16>,
}

impl FactoredPoly {
    /// Extracts every positive-root factor of `p`.
    pub fn factor(ring: &RootRing, p: &MPoly) -> FactoredPoly {
        Self::with_roots(ring, p.clone(), Vec::new())
    }

    /// Canonical form of `cofactor · ∏ roots`.
    pub fn with_roots(ring: &RootRing, mut cofactor: MPoly, mut roots: Vec<u16>) -> FactoredPoly {
        if cofactor.is_zero() {
            return FactoredPoly { cofactor, roots: Vec::new() };
        }
        for r in 0..ring.rs.n_pos() {
            while !cofactor.is_constant() && ring.may_divide(&cofactor, r) {
                match cofactor.exact_div_linear(ring.form(r)).expect("linear") {
                    Some(q) => {
                        cofactor = q;
                        roots.push(r as u16);
                    }
                    None => break,
                }
            }
        }
        roots.sort_unstable();
        FactoredPoly { cofactor, roots }
    }

    pub fn is_zero(&self) -> bool {
        self.cofactor.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.cofactor.degree().map(|d| d + self.roots.len() as u32)
    }

    /// Whether the positive root `beta` divides the polynomial.
    pub fn divisible_by_root(&self, ring: &RootRing, beta: usize) -> bool {
        if self.is_zero() || self.roots.contains(&(beta as u16)) {
            return true;
        }
        let (_, r) = self.cofactor.divide_by_linear(ring.form(beta)).expect("linear");
        r.is_zero()
    }

    pub fn expand(&self, ring: &RootRing) -> MPoly {
        self.roots
            .iter()
            .fold(self.cofactor.clone(), |p, &r| p.mul(ring.form(r as usize)))
    }

    /// Total number of terms once expanded would be expensive; this is the
    /// sum of factor sizes, a cheap proxy.
    pub fn n_terms(&self) -> usize {
        self.cofactor.n_terms() + self.roots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MPoly {
        MPoly::constant(n, Rat::from_int(v))
    }

    fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, terms: usize, deg: u32) -> MPoly {
        MPoly::from_terms(
            nvars,
            (0..terms).map(|_| {
                let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=deg)).collect();
                (Mono::from_exponents(&exps), Rat::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
            }),
        )
    }

    fn a2_ring() -> RootRing {
        RootRing::new(Arc::new(RootSystem::type_a(2).unwrap()))
    }

    #[test]
    fn ring_basics() {
        let n = 2;
        let p = x(n, 0).add(&c(n, 3));
        assert_eq!(p.add(&MPoly::zero(n)), p);
        let lhs = x(n, 0).add(&x(n, 1)).mul(&x(n, 0).sub(&x(n, 1)));
        let rhs = x(n, 0).pow(2).sub(&x(n, 1).pow(2));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x1^2 - x2^2");
        assert_eq!(MPoly::zero(n).to_string(), "0");
        let q = x(n, 0).scale(&Rat::new(-1, 2)).add(&c(n, 3));
        assert_eq!(q.to_string(), "-1/2*x1 + 3");
    }

    #[test]
    fn distributivity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = random_poly(&mut rng, 4, 5, 3);
            let b = random_poly(&mut rng, 4, 5, 3);
            let cc = random_poly(&mut rng, 4, 5, 3);
            assert_eq!(a.mul(&b.add(&cc)), a.mul(&b).add(&a.mul(&cc)));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&cc), a.mul(&b.mul(&cc)));
        }
    }

    #[test]
    fn linear_division() {
        let n = 2;
        let l = x(n, 0).add(&x(n, 1));
        let p = l.mul(&x(n, 0).add(&c(n, 3)));
        let (q, r) = p.divide_by_linear(&l).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, x(n, 0).add(&c(n, 3)));
        let (_, r) = x(n, 0).divide_by_linear(&l).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r, x(n, 1).neg());
        assert_eq!(x(n, 0).divide_by_linear(&x(n, 0).mul(&x(n, 1))), Err(Error::NotLinear));
        assert_eq!(x(n, 0).divide_by_linear(&MPoly::zero(n)), Err(Error::NotLinear));
        assert_eq!(x(n, 0).divide_by_linear(&x(n, 0).add(&c(n, 1))), Err(Error::NotLinear));
    }

    #[test]
    fn division_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let q = random_poly(&mut rng, 5, 6, 3);
            let coeffs: Vec<i32> = (0..5).map(|_| rng.gen_range(-2..=3)).collect();
            if coeffs.iter().all(|&x| x == 0) {
                continue;
            }
            let l = MPoly::linear(&coeffs);
            let (q2, r) = q.mul(&l).divide_by_linear(&l).unwrap();
            assert!(r.is_zero());
            assert_eq!(q2, q);
            // p = q·L + r always, with r free of the leading variable
            let p = random_poly(&mut rng, 5, 6, 3);
            let (q3, r3) = p.divide_by_linear(&l).unwrap();
            assert_eq!(q3.mul(&l).add(&r3), p);
            let k = coeffs.iter().position(|&x| x != 0).unwrap();
            assert!(r3.terms().iter().all(|(m, _)| m.exp(k) == 0));
        }
    }

    #[test]
    fn linear_forms_of_roots() {
        let ring = a2_ring();
        assert_eq!(*ring.form(0), x(2, 0));
        assert_eq!(*ring.form(2), x(2, 0).add(&x(2, 1)));
        let e6 = RootSystem::build_e(6).unwrap();
        let top = e6.positive_root(e6.index_of(&[1, 2, 2, 3, 2, 1]).unwrap());
        assert_eq!(root_linear_form(top).to_string(), "x1 + 2*x2 + 2*x3 + 3*x4 + 2*x5 + x6");
    }

    #[test]
    fn weyl_action() {
        let ring = a2_ring();
        let rs = ring.system().clone();
        let s1 = rs.simple_reflection(0).unwrap();
        assert_eq!(ring.weyl_act_poly(&s1, &x(2, 0)), x(2, 0).neg());
        assert_eq!(ring.weyl_act_poly(&s1, &x(2, 1)), x(2, 0).add(&x(2, 1)));
        let p = x(2, 0).mul(&x(2, 1)).add(&c(2, 5));
        assert_eq!(ring.weyl_act_poly(&rs.identity(), &p), p);
    }

    #[test]
    fn weyl_action_axioms_e6() {
        let rs = Arc::new(RootSystem::build_e(6).unwrap());
        let ring = RootRing::new(rs.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rand_elt = |rng: &mut ChaCha8Rng| {
            let mut w = rs.identity();
            for _ in 0..10 {
                w = rs.mul_simple_right(&w, rng.gen_range(0..6));
            }
            w
        };
        for _ in 0..30 {
            let v = rand_elt(&mut rng);
            let w = rand_elt(&mut rng);
            let p = random_poly(&mut rng, 6, 4, 2);
            let lhs = ring.weyl_act_poly(&v.mul(&w), &p);
            let rhs = ring.weyl_act_poly(&v, &ring.weyl_act_poly(&w, &p));
            assert_eq!(lhs, rhs);
            assert_eq!(ring.weyl_act_poly(&w.inverse(), &ring.weyl_act_poly(&w, &p)), p);
            assert_eq!(ring.weyl_act_poly(&w, &p).degree(), p.degree());
            let f = RatFn { num: p.clone(), den: vec![0, 3, 7] };
            let f = ring.normalize(f);
            let back = ring.weyl_act_ratfn(&w.inverse(), &ring.weyl_act_ratfn(&w, &f));
            assert_eq!(back, f);
        }
    }

    #[test]
    fn ratfn_arithmetic() {
        let ring = a2_ring();
        let f = ring.inv_root(0);
        assert_eq!(ring.add(&f, &ring.zero()), f);
        let g = RatFn { num: x(2, 0).mul(&x(2, 1)), den: vec![0] };
        assert_eq!(ring.normalize(g), RatFn::from_poly(x(2, 1)));
        let sum = ring.add(&ring.inv_root(0), &ring.inv_root(1));
        assert_eq!(sum, RatFn { num: x(2, 0).add(&x(2, 1)), den: vec![0, 1] });
        // 1/x1 − 1/(x1+x2) = x2 / (x1 (x1+x2))
        let d = ring.sub(&ring.inv_root(0), &ring.inv_root(2));
        assert_eq!(d, RatFn { num: x(2, 1), den: vec![0, 2] });
        // negative root code carries the sign
        let neg = ring.inv_root(3);
        assert_eq!(neg, RatFn { num: c(2, -1), den: vec![0] });
        assert!(ring.add(&f, &ring.neg(&f)).is_zero());
        let q = ring.div(&ring.one(), &ring.inv_root(2)).unwrap();
        assert_eq!(q, RatFn::from_poly(x(2, 0).add(&x(2, 1))));
        assert_eq!(ring.div(&f, &ring.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn normalization_confluent() {
        let rs = Arc::new(RootSystem::type_a(3).unwrap());
        let ring = RootRing::new(rs);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let core = random_poly(&mut rng, 3, 3, 2);
            let k = rng.gen_range(0..4);
            let mut num = core.clone();
            let mut den: Vec<u16> = Vec::new();
            for _ in 0..k {
                let r = rng.gen_range(0..6u16);
                num = num.mul(ring.form(r as usize));
                den.push(r);
            }
            for _ in 0..rng.gen_range(0..3) {
                den.push(rng.gen_range(0..6u16));
            }
            let f = ring.normalize(RatFn { num: num.clone(), den: den.clone() });
            let mut shuffled = den.clone();
            shuffled.reverse();
            // cancel in a different order by hand, then normalize the rest
            let mut num2 = num;
            let mut rest = Vec::new();
            for r in shuffled {
                match num2.exact_div_linear(ring.form(r as usize)).unwrap() {
                    Some(q) => num2 = q,
                    None => rest.push(r),
                }
            }
            let g = ring.normalize(RatFn { num: num2, den: rest });
            assert_eq!(f, g);
        }
    }

    #[test]
    fn factored_form() {
        let ring = a2_ring();
        let p = ring.all_roots_product();
        let fp = FactoredPoly::factor(&ring, &p);
        assert_eq!(fp.roots, vec![0, 1, 2]);
        assert!(fp.cofactor.is_constant());
        assert_eq!(fp.expand(&ring), p);
        assert!(fp.divisible_by_root(&ring, 2));
        let q = x(2, 0).pow(2).add(&x(2, 1).pow(2));
        let fq = FactoredPoly::factor(&ring, &q);
        assert!(fq.roots.is_empty());
        assert!(!fq.divisible_by_root(&ring, 0));
    }

    proptest! {
        #[test]
        fn shift_vars_is_a_ring_map(a in 0i64..5, b in -3i64..3) {
            let p = x(2, 0).scale(&Rat::from_int(a)).add(&x(2, 1).scale(&Rat::from_int(b)));
            let q = p.mul(&p);
            prop_assert_eq!(q.shift_vars(1, 3), p.shift_vars(1, 3).mul(&p.shift_vars(1, 3)));
        }
    }
}
