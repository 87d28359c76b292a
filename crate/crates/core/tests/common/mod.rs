//! Independent oracles for the integration tests: a Weyl group realised as
//! integer matrices on simple-root coordinates, Bruhat intervals from the
//! subword definition, and modular evaluation of the sum over 0/1 sequences.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use kkpoly::{MPoly, Rat, RatFn, RootRing, RootSystem, WeylElt, Word};
use num_bigint::BigInt;

pub const P: u64 = (1 << 61) - 1;

pub fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn addm(a: u64, b: u64) -> u64 {
    (a + b) % P
}

pub fn powm(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b);
        }
        b = mulm(b, b);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64) -> u64 {
    assert_ne!(a, 0, "division by zero mod p");
    powm(a, P - 2)
}

pub fn intm(x: i64) -> u64 {
    x.rem_euclid(P as i64) as u64
}

fn bigm(x: &BigInt) -> u64 {
    let p = BigInt::from(P);
    u64::try_from(((x % &p) + &p) % &p).unwrap()
}

pub fn ratm(c: &Rat) -> u64 {
    mulm(bigm(&c.numer()), invm(bigm(&c.denom())))
}

/// Square integer matrix acting on column vectors of simple-root coordinates.
pub type Mat = Vec<i64>;

pub struct MatGroup {
    pub n: usize,
    gens: Vec<Mat>,
}

impl MatGroup {
    /// `s_i(α_j) = α_j − a_{ij} α_i`.
    pub fn from_cartan(cartan: &[Vec<i32>]) -> MatGroup {
        let n = cartan.len();
        let gens = (0..n)
            .map(|i| {
                let mut m = identity(n);
                for j in 0..n {
                    m[i * n + j] -= cartan[i][j] as i64;
                }
                m
            })
            .collect();
        MatGroup { n, gens }
    }

    pub fn one(&self) -> Mat {
        identity(self.n)
    }

    pub fn gen(&self, i: usize) -> &Mat {
        &self.gens[i]
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let mut c = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x != 0 {
                    for j in 0..n {
                        c[i * n + j] += x * b[k * n + j];
                    }
                }
            }
        }
        c
    }

    pub fn word(&self, word: &[usize]) -> Mat {
        word.iter().fold(self.one(), |m, &i| self.mul(&m, &self.gens[i]))
    }

    pub fn apply(&self, m: &Mat, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum()).collect()
    }

    /// Matrix of a library element, read off its action on the simple roots.
    pub fn of_elt(&self, rs: &RootSystem, w: &WeylElt) -> Mat {
        let n = self.n;
        let mut m = vec![0; n * n];
        for j in 0..n {
            let b = rs.root_of_code(w.act_code(j as u16)).b;
            for i in 0..n {
                m[i * n + j] = b[i] as i64;
            }
        }
        m
    }

    /// `{products of all subwords}` of a reduced word: the lower Bruhat interval.
    pub fn interval(&self, word: &[usize]) -> HashSet<Mat> {
        let l = word.len();
        assert!(l <= 20);
        let mut out = HashSet::new();
        for mask in 0u32..(1 << l) {
            let sub: Vec<usize> = (0..l).filter(|k| mask >> k & 1 == 1).map(|k| word[k]).collect();
            out.insert(self.word(&sub));
        }
        out
    }
}

fn identity(n: usize) -> Mat {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub fn point(seed: u64, n: usize) -> Vec<u64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(1..P)).collect()
}

pub fn linear_at(b: &[i64], pt: &[u64]) -> u64 {
    b.iter().zip(pt).fold(0, |acc, (&c, &x)| addm(acc, mulm(intm(c), x)))
}

/// `c_{w,v}(pt)` for every `v`, from the signed sum over 0/1 sequences,
/// keyed by the matrix of `v`.
pub fn bruteforce_at(g: &MatGroup, word: &[usize], pt: &[u64]) -> HashMap<Mat, u64> {
    let l = word.len();
    let n = g.n;
    let mut out: HashMap<Mat, u64> = HashMap::new();
    for mask in 0u32..(1 << l) {
        let mut prefix = g.one();
        let mut val = 1u64;
        for (k, &i) in word.iter().enumerate() {
            if mask >> k & 1 == 1 {
                prefix = g.mul(&prefix, g.gen(i));
            }
            let mut e = vec![0; n];
            e[i] = 1;
            let root = g.apply(&prefix, &e);
            val = mulm(val, invm(linear_at(&root, pt)));
        }
        if l % 2 == 1 {
            val = (P - val) % P;
        }
        let slot = out.entry(prefix).or_insert(0);
        *slot = addm(*slot, val);
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn poly_at(p: &MPoly, pt: &[u64]) -> u64 {
    let mut total = 0;
    for (m, c) in p.terms() {
        let mut v = ratm(c);
        for (i, &x) in pt.iter().enumerate() {
            v = mulm(v, powm(x, m.exp(i) as u64));
        }
        total = addm(total, v);
    }
    total
}

pub fn ratfn_at(ring: &RootRing, f: &RatFn, pt: &[u64]) -> u64 {
    let rs = ring.system();
    let den = f.den.iter().fold(1, |acc, &r| {
        let b: Vec<i64> = rs.positive_root(r as usize).b.iter().map(|&x| x as i64).collect();
        mulm(acc, linear_at(&b, pt))
    });
    mulm(poly_at(&f.num, pt), invm(den))
}

/// `∏_{α>0} α (pt)` from the b-vectors.
pub fn all_roots_at(rs: &RootSystem, pt: &[u64]) -> u64 {
    rs.positive_roots().iter().fold(1, |acc, r| {
        let b: Vec<i64> = r.b.iter().map(|&x| x as i64).collect();
        mulm(acc, linear_at(&b, pt))
    })
}

/// `d_w(pt)` straight from the sequence sum.
pub fn d_at(rs: &RootSystem, g: &MatGroup, word: &Word, pt: &[u64]) -> u64 {
    let c = bruteforce_at(g, &word.0, pt).get(&g.one()).copied().unwrap_or(0);
    let mut d = mulm(c, all_roots_at(rs, pt));
    if word.len() % 2 == 1 {
        d = (P - d) % P;
    }
    d
}

/// Product of the linear forms of the given positive roots, built term by term.
pub fn product_of_roots(rs: &RootSystem, roots: impl IntoIterator<Item = usize>) -> MPoly {
    roots.into_iter().fold(MPoly::one(rs.rank()), |acc, r| acc.mul(&MPoly::linear(&rs.positive_root(r).b)))
}

/// Rows of the published tables: `(type, order, b, eps, word)`.
pub struct PublishedRow {
    pub ty: String,
    pub order: String,
    pub b: Vec<i32>,
    pub eps: Vec<String>,
    pub word: Vec<usize>,
}

pub fn published_rows() -> Vec<PublishedRow> {
    let text = include_str!("../data/published_tables.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            PublishedRow {
                ty: f[0].to_string(),
                order: f[1].to_string(),
                b: f[2].chars().map(|c| c.to_digit(10).unwrap() as i32).collect(),
                eps: f[3].split(',').map(str::to_string).collect(),
                word: f[4].chars().map(|c| c.to_digit(10).unwrap() as usize).collect(),
            }
        })
        .collect()
}
