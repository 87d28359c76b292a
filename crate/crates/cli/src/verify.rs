//! Property suite run by `kkpoly verify`.

use std::collections::HashSet;
use std::sync::Arc;

use kkpoly::nilhecke::product_formula_check;
use kkpoly::{NilHecke, RootSystem, SimpleOrder, TypeTag, WeylElt};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Serialize, Clone, Debug)]
pub struct Instance {
    pub property: &'static str,
    pub w: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub struct PropertyResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// First failure in canonical order of the elements involved.
    pub failure: Option<Instance>,
}

pub struct Suite<'a> {
    rs: &'a Arc<RootSystem>,
    nh: NilHecke,
    order: SimpleOrder,
    ball: Vec<WeylElt>,
    max_len: usize,
    bf_cap: usize,
}

type Check = (bool, Option<Instance>);

impl<'a> Suite<'a> {
    pub fn new(rs: &'a Arc<RootSystem>, order: SimpleOrder, max_len: usize, bf_cap: usize, budget: usize) -> Self {
        Suite {
            rs,
            nh: NilHecke::with_budget(rs.clone(), budget),
            order,
            ball: rs.ball(max_len),
            max_len,
            bf_cap,
        }
    }

    pub fn elements(&self) -> usize {
        self.ball.len()
    }

    fn word(&self, w: &WeylElt) -> Vec<usize> {
        self.rs.reduced_word(w).one_based()
    }

    fn instance(&self, property: &'static str, w: &WeylElt, v: Option<&WeylElt>, i: Option<usize>) -> Instance {
        Instance { property, w: self.word(w), v: v.map(|v| self.word(v)), i: i.map(|i| i + 1), detail: None }
    }

    /// Runs `f` on every element of the ball in parallel and tallies the
    /// individual checks, keeping the first failure in ball order.
    fn tally<F>(&self, name: &'static str, f: F) -> PropertyResult
    where
        F: Fn(&WeylElt) -> Vec<Check> + Sync + Send,
    {
        let per: Vec<Vec<Check>> = self.ball.par_iter().map(f).collect();
        let mut res = PropertyResult { name, passed: 0, total: 0, failure: None };
        for (ok, inst) in per.into_iter().flatten() {
            res.total += 1;
            if ok {
                res.passed += 1;
            } else if res.failure.is_none() {
                res.failure = inst;
            }
        }
        res
    }

    pub fn run(&self) -> Vec<PropertyResult> {
        let rs = self.rs;
        let nh = &self.nh;
        let mut out = Vec::new();

        out.push(self.tally("bruhat-vs-subwords", |w| {
            let interval = rs.lower_interval_by_subwords(w);
            self.ball
                .iter()
                .map(|v| {
                    let ok = rs.bruhat_leq(v, w) == interval.contains(v);
                    (ok, (!ok).then(|| self.instance("bruhat-vs-subwords", w, Some(v), None)))
                })
                .collect()
        }));

        out.push(self.tally("support-law", |w| {
            let interval = rs.lower_interval_by_subwords(w);
            let ok = match nh.x_w(w) {
                Ok(x) => x.support().cloned().collect::<HashSet<_>>() == interval,
                Err(_) => false,
            };
            vec![(ok, (!ok).then(|| self.instance("support-law", w, None, None)))]
        }));

        out.push(self.tally("product-law", |v| {
            self.ball
                .iter()
                .filter(|w| v.length() + w.length() <= self.max_len)
                .map(|w| {
                    let ok = match (nh.x_w(v), nh.x_w(w)) {
                        (Ok(xv), Ok(xw)) => {
                            let prod = nh.nh_mul(&xv, &xw);
                            let vw = v.mul(w);
                            if vw.length() == v.length() + w.length() {
                                nh.x_w(&vw).map(|x| *x == prod).unwrap_or(false)
                            } else {
                                prod.is_zero()
                            }
                        }
                        _ => false,
                    };
                    (ok, (!ok).then(|| self.instance("product-law", v, Some(w), None)))
                })
                .collect()
        }));

        let neighbours = |w: &WeylElt| -> Vec<WeylElt> {
            let mut vs: Vec<WeylElt> = match nh.x_w(w) {
                Ok(x) => x.support().cloned().collect(),
                Err(_) => Vec::new(),
            };
            let extra: Vec<WeylElt> =
                vs.iter().flat_map(|v| (0..rs.rank()).map(move |i| rs.mul_simple_right(v, i))).collect();
            vs.extend(extra);
            rs.sort_canonical(&mut vs);
            vs.dedup();
            vs
        };

        out.push(self.tally("recursion-right", |w| {
            let vs = neighbours(w);
            (0..rs.rank())
                .filter(|&i| w.has_right_descent(i))
                .flat_map(|i| vs.iter().map(move |v| (i, v)))
                .map(|(i, v)| {
                    let ok = nh.recursion_check_b(w, v, i).unwrap_or(false);
                    (ok, (!ok).then(|| self.instance("recursion-right", w, Some(v), Some(i))))
                })
                .collect()
        }));

        out.push(self.tally("recursion-left", |w| {
            let vs = neighbours(w);
            (0..rs.rank())
                .filter(|&i| rs.mul_simple_left(i, w).length() < w.length())
                .flat_map(|i| vs.iter().map(move |v| (i, v)))
                .map(|(i, v)| {
                    let ok = nh.recursion_check_c(w, v, i).unwrap_or(false);
                    (ok, (!ok).then(|| self.instance("recursion-left", w, Some(v), Some(i))))
                })
                .collect()
        }));

        out.push(self.tally("denominator-shape", |w| match nh.x_w(w) {
            Ok(x) => x
                .support()
                .map(|v| {
                    let ok = nh.dyer_check(w, v).unwrap_or(false);
                    (ok, (!ok).then(|| self.instance("denominator-shape", w, Some(v), None)))
                })
                .collect(),
            Err(_) => vec![(false, Some(self.instance("denominator-shape", w, None, None)))],
        }));

        out.push(self.tally("sequence-oracle", |w| {
            if w.length() > self.bf_cap {
                return Vec::new();
            }
            let word = rs.reduced_word(w);
            let ok = match (nh.bruteforce_all(&word, self.bf_cap), nh.x_w(w)) {
                (Ok(bf), Ok(x)) => bf == *x,
                _ => false,
            };
            vec![(ok, (!ok).then(|| self.instance("sequence-oracle", w, None, None)))]
        }));

        out.push(self.tally("polynomiality", |w| {
            let r = nh.kk_poly(w);
            let ok = r.is_ok();
            let inst = r.err().map(|e| Instance { detail: Some(e.to_string()), ..self.instance("polynomiality", w, None, None) });
            vec![(ok, inst)]
        }));

        out.push(self.support_inclusion());
        out.push(self.product_formula());
        out
    }

    /// Involutions with nested supports are Bruhat-comparable.
    fn support_inclusion(&self) -> PropertyResult {
        let rs = self.rs;
        let invs: Vec<(WeylElt, Vec<usize>)> = self
            .ball
            .iter()
            .filter(|w| w.is_involution())
            .map(|w| {
                let mut s = rs.support(w, &self.order).expect("involution").0;
                s.sort_unstable();
                (w.clone(), s)
            })
            .collect();
        let mut res = PropertyResult { name: "nested-supports", passed: 0, total: 0, failure: None };
        for (w1, s1) in &invs {
            for (w2, s2) in &invs {
                if s1.len() < s2.len() && s1.iter().all(|r| s2.binary_search(r).is_ok()) {
                    res.total += 1;
                    if rs.bruhat_leq(w1, w2) {
                        res.passed += 1;
                    } else if res.failure.is_none() {
                        res.failure = Some(self.instance("nested-supports", w1, Some(w2), None));
                    }
                }
            }
        }
        res
    }

    /// `d_{w1 w2} = d_{w1} d_{w2}` in a direct sum: the system itself when it
    /// is one, otherwise the system plus a copy of A1 (rank permitting).
    fn product_formula(&self) -> PropertyResult {
        let mut res = PropertyResult { name: "direct-sum-product", passed: 0, total: 0, failure: None };
        let sum = match self.rs.tag() {
            TypeTag::DirectSum(..) => self.rs.clone(),
            _ if self.rs.rank() < 8 => {
                let a1 = Arc::new(RootSystem::type_a(1).expect("A1"));
                Arc::new(RootSystem::direct_sum(self.rs, &a1).expect("rank checked"))
            }
            _ => return res,
        };
        let TypeTag::DirectSum(a, b) = sum.tag() else { unreachable!() };
        let left = a.ball(self.max_len);
        let right = b.ball(self.max_len);
        let pairs: Vec<(&WeylElt, &WeylElt)> = left
            .iter()
            .flat_map(|x| right.iter().map(move |y| (x, y)))
            .filter(|(x, y)| x.length() + y.length() <= self.max_len)
            .collect();
        let checks: Vec<bool> = pairs
            .par_iter()
            .map(|(x, y)| product_formula_check(&sum, x, y).unwrap_or(false))
            .collect();
        for ((x, y), ok) in pairs.iter().zip(checks) {
            res.total += 1;
            if ok {
                res.passed += 1;
            } else if res.failure.is_none() {
                res.failure = Some(Instance {
                    property: "direct-sum-product",
                    w: a.reduced_word(x).one_based(),
                    v: Some(b.reduced_word(y).one_based()),
                    i: None,
                    detail: Some(format!("in {}", sum.name())),
                });
            }
        }
        res
    }
}
