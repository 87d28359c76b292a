//! Simply-laced root systems.
//!
//! E6, E7 and E8 are built in ε-coordinates of ℝ⁸ (Bourbaki conventions for
//! the simple roots); small systems for testing come from a Cartan matrix by
//! closing the simple roots under simple reflections. Every root also carries
//! its coefficient vector over the simple roots, which is what the rest of
//! the crate works with.
//!
//! Positive roots are indexed `0..N` in ascending `(height, b descending)`
//! order, so the simple root `α_i` (0-based `i`) sits at index `i`. A signed
//! reference to a root is a [`RootCode`]: `j` for the positive root `j`,
//! `j + N` for its negative.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Signed index of a root: `< N` positive, `>= N` the negative of `code - N`.
pub type RootCode = u16;

/// Maximal rank; monomials pack one byte per variable into a `u64`.
pub const MAX_RANK: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    /// Ambient coordinates; present for E-types and type-A Cartan systems.
    pub eps: Option<Vec<Rat>>,
    /// Coefficients over the simple roots.
    pub b: Vec<i32>,
    pub positive: bool,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.b.iter().sum()
    }

    pub fn negated(&self) -> Root {
        Root {
            eps: self.eps.as_ref().map(|e| e.iter().map(|x| -x).collect()),
            b: self.b.iter().map(|x| -x).collect(),
            positive: !self.positive,
        }
    }

    /// `b` as a digit string, e.g. `122321`.
    pub fn b_string(&self) -> String {
        self.b.iter().map(|x| x.to_string()).collect()
    }
}

#[derive(Clone, Debug)]
pub enum TypeTag {
    E6,
    E7,
    E8,
    Cartan,
    DirectSum(Arc<RootSystem>, Arc<RootSystem>),
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    tag: TypeTag,
    name: String,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    lookup: HashMap<Vec<i32>, usize>,
    /// `reflection_table[k][j]` is the code of `s_{β_k}(β_j)`; the first
    /// `rank` rows are the simple reflections.
    reflection_table: Vec<Vec<RootCode>>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan && self.positive == other.positive
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn half(n: i64) -> Rat {
    Rat::new(n, 2)
}

fn eps_vec(entries: &[(usize, i64)]) -> Vec<Rat> {
    let mut v = vec![Rat::ZERO; 8];
    for &(i, c) in entries {
        v[i - 1] = Rat::from_int(c);
    }
    v
}

/// `½(sign_8 ε8 + sign_7 ε7 + … )` from a full sign vector.
fn half_vec(signs: &[i64; 8]) -> Vec<Rat> {
    signs.iter().map(|&s| half(s)).collect()
}

fn e_simple_roots(rank: usize) -> Vec<Vec<Rat>> {
    let mut simple = Vec::with_capacity(rank);
    simple.push(half_vec(&[1, -1, -1, -1, -1, -1, -1, 1]));
    simple.push(eps_vec(&[(1, 1), (2, 1)]));
    for k in 3..=rank {
        // α_k = ε_{k-1} − ε_{k-2}
        simple.push(eps_vec(&[(k - 1, 1), (k - 2, -1)]));
    }
    simple
}

/// Candidate positive roots in ε-coordinates.
fn e_positive_eps(rank: usize) -> Vec<Vec<Rat>> {
    let m = match rank {
        6 => 5,
        7 => 6,
        _ => 8,
    };
    let mut out = Vec::new();
    for j in 1..=m {
        for i in 1..j {
            out.push(eps_vec(&[(i, 1), (j, 1)]));
            out.push(eps_vec(&[(i, -1), (j, 1)]));
        }
    }
    match rank {
        6 => {
            // ½(ε8 − ε7 − ε6 + Σ_{i≤5} ±εi), even number of minus signs among i ≤ 5.
            for mask in 0u32..32 {
                if mask.count_ones() % 2 == 0 {
                    let mut s = [1i64; 8];
                    for (i, si) in s.iter_mut().enumerate().take(5) {
                        if mask >> i & 1 == 1 {
                            *si = -1;
                        }
                    }
                    s[5] = -1;
                    s[6] = -1;
                    out.push(half_vec(&s));
                }
            }
        }
        7 => {
            out.push(eps_vec(&[(7, -1), (8, 1)]));
            // ½(ε8 − ε7 + Σ_{i≤6} ±εi), odd number of minus signs among i ≤ 6.
            for mask in 0u32..64 {
                if mask.count_ones() % 2 == 1 {
                    let mut s = [1i64; 8];
                    for (i, si) in s.iter_mut().enumerate().take(6) {
                        if mask >> i & 1 == 1 {
                            *si = -1;
                        }
                    }
                    s[6] = -1;
                    out.push(half_vec(&s));
                }
            }
        }
        _ => {
            // ½(ε8 + Σ_{i≤7} ±εi), even number of minus signs.
            for mask in 0u32..128 {
                if mask.count_ones() % 2 == 0 {
                    let mut s = [1i64; 8];
                    for (i, si) in s.iter_mut().enumerate().take(7) {
                        if mask >> i & 1 == 1 {
                            *si = -1;
                        }
                    }
                    out.push(half_vec(&s));
                }
            }
        }
    }
    out
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::ZERO, |acc, (x, y)| acc + x * y)
}

/// Inverse of a nonsingular square matrix over ℚ by Gauss–Jordan.
fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Sylvester's criterion with exact arithmetic.
fn positive_definite(c: &[Vec<i32>]) -> bool {
    let n = c.len();
    let mut a: Vec<Vec<Rat>> = c
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from(x)).collect())
        .collect();
    for k in 0..n {
        if a[k][k] <= Rat::ZERO {
            return false;
        }
        for r in k + 1..n {
            let f = &a[r][k] / &a[k][k];
            for col in k..n {
                let v = &a[r][col] - &(&f * &a[k][col]);
                a[r][col] = v;
            }
        }
    }
    true
}

fn validate_cartan(c: &[Vec<i32>]) -> Result<()> {
    let n = c.len();
    let bad = |m: &str| Err(Error::InvalidCartan(m.to_string()));
    if n == 0 {
        return bad("empty matrix");
    }
    if n > MAX_RANK {
        return bad("rank above 8 is not supported");
    }
    if c.iter().any(|r| r.len() != n) {
        return bad("matrix is not square");
    }
    for i in 0..n {
        if c[i][i] != 2 {
            return bad("diagonal entries must be 2");
        }
        for j in 0..n {
            if i != j && !(c[i][j] == 0 || c[i][j] == -1) {
                return bad("off-diagonal entries must be 0 or -1 (simply laced)");
            }
            if c[i][j] != c[j][i] {
                return bad("matrix is not symmetric");
            }
        }
    }
    if !positive_definite(c) {
        return bad("matrix is not of finite type");
    }
    Ok(())
}

/// Orthogonal ε-embedding when every Dynkin component is a path (type A).
fn synthesize_eps(cartan: &[Vec<i32>]) -> Option<Vec<Vec<Rat>>> {
    let n = cartan.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && cartan[i][j] != 0).collect())
        .collect();
    if adj.iter().any(|a| a.len() > 2) {
        return None;
    }
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for start in 0..n {
        if seen[start] || adj[start].len() == 2 {
            continue;
        }
        let mut path = vec![start];
        seen[start] = true;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&x| !seen[x]) {
            seen[next] = true;
            path.push(next);
            cur = next;
        }
        paths.push(path);
    }
    if seen.iter().any(|s| !s) {
        // a cycle; cannot happen for finite type
        return None;
    }
    let dim: usize = paths.iter().map(|p| p.len() + 1).sum();
    let mut eps = vec![vec![Rat::ZERO; dim]; n];
    let mut offset = 0;
    for path in &paths {
        for (k, &node) in path.iter().enumerate() {
            eps[node][offset + k] = Rat::ONE;
            eps[node][offset + k + 1] = -Rat::ONE;
        }
        offset += path.len() + 1;
    }
    Some(eps)
}

impl RootSystem {
    /// E6, E7 or E8 in ε-coordinates.
    pub fn build_e(rank: usize) -> Result<RootSystem> {
        let tag = match rank {
            6 => TypeTag::E6,
            7 => TypeTag::E7,
            8 => TypeTag::E8,
            _ => return Err(Error::UnknownType(format!("E{rank}"))),
        };
        let simple = e_simple_roots(rank);
        let cartan: Vec<Vec<i32>> = simple
            .iter()
            .map(|a| {
                simple
                    .iter()
                    .map(|b| dot(a, b).to_i64().expect("integral Cartan entry") as i32)
                    .collect()
            })
            .collect();
        let gram: Vec<Vec<Rat>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from(x)).collect())
            .collect();
        let gram_inv = invert(&gram).expect("Cartan matrix of E is nonsingular");
        let mut roots = Vec::new();
        for eps in e_positive_eps(rank) {
            let g: Vec<Rat> = simple.iter().map(|a| dot(&eps, a)).collect();
            let b: Vec<Rat> = gram_inv.iter().map(|row| dot(row, &g)).collect();
            let mut recon = vec![Rat::ZERO; 8];
            for (bi, a) in b.iter().zip(&simple) {
                for (r, x) in recon.iter_mut().zip(a) {
                    *r = &*r + &(bi * x);
                }
            }
            assert_eq!(recon, eps, "candidate root outside the span of the simple roots");
            let b: Vec<i32> = b
                .iter()
                .map(|x| x.to_i64().expect("integral simple-root coefficient") as i32)
                .collect();
            assert!(b.iter().all(|&x| x >= 0), "candidate root is not positive");
            roots.push(Root { eps: Some(eps), b, positive: true });
        }
        Ok(Self::assemble(tag, format!("E{rank}"), cartan, roots))
    }

    /// Closure of the simple roots of a simply-laced Cartan matrix.
    pub fn build_from_cartan(cartan: Vec<Vec<i32>>) -> Result<RootSystem> {
        Self::build_from_cartan_named(cartan, "Cartan".to_string())
    }

    fn build_from_cartan_named(cartan: Vec<Vec<i32>>, name: String) -> Result<RootSystem> {
        validate_cartan(&cartan)?;
        let n = cartan.len();
        let simple_eps = synthesize_eps(&cartan);
        let mut found: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut b = vec![0; n];
            b[i] = 1;
            found.insert(b.clone(), ());
            queue.push_back(b);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let pairing: i32 = (0..n).map(|j| b[j] * cartan[j][i]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut nb = b.clone();
                nb[i] -= pairing;
                if nb.iter().all(|&x| x >= 0) && !found.contains_key(&nb) {
                    found.insert(nb.clone(), ());
                    queue.push_back(nb);
                }
            }
            if found.len() > 10_000 {
                return Err(Error::InvalidCartan("root closure does not terminate".into()));
            }
        }
        let roots = found
            .into_keys()
            .map(|b| {
                let eps = simple_eps.as_ref().map(|se| {
                    let mut e = vec![Rat::ZERO; se[0].len()];
                    for (bi, a) in b.iter().zip(se) {
                        for (x, y) in e.iter_mut().zip(a) {
                            *x = &*x + &(&Rat::from(*bi) * y);
                        }
                    }
                    e
                });
                Root { eps, b, positive: true }
            })
            .collect();
        Ok(Self::assemble(TypeTag::Cartan, name, cartan, roots))
    }

    /// Type `A_n` from its Cartan matrix.
    pub fn type_a(n: usize) -> Result<RootSystem> {
        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Self::build_from_cartan_named(cartan, format!("A{n}"))
    }

    /// Orthogonal direct sum; simple roots of `b` are numbered after those of `a`.
    pub fn direct_sum(a: &Arc<RootSystem>, b: &Arc<RootSystem>) -> Result<RootSystem> {
        let (ra, rb) = (a.rank, b.rank);
        let n = ra + rb;
        if n > MAX_RANK {
            return Err(Error::InvalidCartan("rank above 8 is not supported".into()));
        }
        let mut cartan = vec![vec![0; n]; n];
        for i in 0..ra {
            cartan[i][..ra].copy_from_slice(&a.cartan[i]);
        }
        for i in 0..rb {
            cartan[ra + i][ra..].copy_from_slice(&b.cartan[i]);
        }
        let dim_a = a.positive[0].eps.as_ref().map(|e| e.len());
        let dim_b = b.positive[0].eps.as_ref().map(|e| e.len());
        let embed = |r: &Root, first: bool| -> Root {
            let mut bv = vec![0; n];
            let eps = match (dim_a, dim_b, &r.eps) {
                (Some(da), Some(db), Some(e)) => {
                    let mut v = vec![Rat::ZERO; da + db];
                    let off = if first { 0 } else { da };
                    v[off..off + e.len()].clone_from_slice(e);
                    Some(v)
                }
                _ => None,
            };
            if first {
                bv[..ra].copy_from_slice(&r.b);
            } else {
                bv[ra..].copy_from_slice(&r.b);
            }
            Root { eps, b: bv, positive: true }
        };
        let roots = a
            .positive
            .iter()
            .map(|r| embed(r, true))
            .chain(b.positive.iter().map(|r| embed(r, false)))
            .collect();
        let name = format!("{}+{}", a.name, b.name);
        Ok(Self::assemble(
            TypeTag::DirectSum(a.clone(), b.clone()),
            name,
            cartan,
            roots,
        ))
    }

    /// Parses `E6`, `E7`, `E8`, `A<n>` and `+`-separated direct sums such as `A2+A1`.
    pub fn from_name(name: &str) -> Result<RootSystem> {
        let parts: Vec<&str> = name.split('+').map(str::trim).collect();
        if parts.len() > 1 {
            let mut acc = Arc::new(Self::from_name(parts[0])?);
            for p in &parts[1..] {
                let next = Arc::new(Self::from_name(p)?);
                acc = Arc::new(Self::direct_sum(&acc, &next)?);
            }
            return Ok(Arc::try_unwrap(acc).unwrap_or_else(|a| (*a).clone()));
        }
        let upper = name.to_ascii_uppercase();
        let bad = || Error::UnknownType(name.to_string());
        let (letter, digits) = upper.split_at(1.min(upper.len()));
        let rank: usize = digits.parse().map_err(|_| bad())?;
        match letter {
            "E" => Self::build_e(rank).map_err(|_| bad()),
            "A" if (1..=MAX_RANK).contains(&rank) => Self::type_a(rank),
            _ => Err(bad()),
        }
    }

    fn assemble(tag: TypeTag, name: String, cartan: Vec<Vec<i32>>, mut roots: Vec<Root>) -> Self {
        roots.sort_by(|x, y| x.height().cmp(&y.height()).then_with(|| y.b.cmp(&x.b)));
        let rank = cartan.len();
        let lookup: HashMap<Vec<i32>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.b.clone(), i)).collect();
        let mut rs = RootSystem {
            tag,
            name,
            rank,
            cartan,
            positive: roots,
            lookup,
            reflection_table: Vec::new(),
        };
        let table = (0..rs.positive.len())
            .map(|i| {
                (0..rs.positive.len())
                    .map(|j| {
                        rs.reflect_code(i as RootCode, j as RootCode)
                            .expect("reflection permutes roots")
                    })
                    .collect()
            })
            .collect();
        rs.reflection_table = table;
        rs
    }

    pub fn tag(&self) -> &TypeTag {
        &self.tag
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Number of positive roots.
    pub fn n_pos(&self) -> usize {
        self.positive.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.positive[..self.rank]
    }

    pub fn positive_root(&self, idx: usize) -> &Root {
        &self.positive[idx]
    }

    pub fn reflection_table(&self) -> &[Vec<RootCode>] {
        &self.reflection_table
    }

    /// The ≺-free index of a positive root given by its coefficient vector.
    pub fn index_of(&self, b: &[i32]) -> Option<usize> {
        self.lookup.get(b).copied()
    }

    /// Code of an arbitrary root given by its coefficient vector.
    pub fn code_of(&self, b: &[i32]) -> Result<RootCode> {
        if let Some(i) = self.lookup.get(b) {
            return Ok(*i as RootCode);
        }
        let neg: Vec<i32> = b.iter().map(|x| -x).collect();
        match self.lookup.get(&neg) {
            Some(i) => Ok((*i + self.n_pos()) as RootCode),
            None => Err(Error::NotARoot(b.to_vec())),
        }
    }

    #[inline]
    pub fn is_negative_code(&self, c: RootCode) -> bool {
        c as usize >= self.positive.len()
    }

    #[inline]
    pub fn negate_code(&self, c: RootCode) -> RootCode {
        let n = self.positive.len() as RootCode;
        if c >= n {
            c - n
        } else {
            c + n
        }
    }

    /// Positive index underlying a code.
    #[inline]
    pub fn base_index(&self, c: RootCode) -> usize {
        let n = self.positive.len();
        let c = c as usize;
        if c >= n {
            c - n
        } else {
            c
        }
    }

    pub fn root_of_code(&self, c: RootCode) -> Root {
        let r = &self.positive[self.base_index(c)];
        if self.is_negative_code(c) {
            r.negated()
        } else {
            r.clone()
        }
    }

    /// The symmetric bilinear form in simple-root coordinates.
    pub fn inner(&self, a: &[i32], b: &[i32]) -> i32 {
        let n = self.rank;
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.cartan[i][j] * b[j];
            }
        }
        s
    }

    pub(crate) fn reflect_code(&self, beta: RootCode, gamma: RootCode) -> Result<RootCode> {
        let b = &self.root_of_code(beta).b;
        let g = &self.root_of_code(gamma).b;
        let p = self.inner(g, b);
        let out: Vec<i32> = g.iter().zip(b).map(|(x, y)| x - p * y).collect();
        self.code_of(&out)
    }

    /// `s_β(γ) = γ − (γ,β)β` (all roots have squared length 2).
    pub fn reflect(&self, beta: &Root, gamma: &Root) -> Result<Root> {
        let p = self.inner(&gamma.b, &beta.b);
        let b: Vec<i32> = gamma.b.iter().zip(&beta.b).map(|(x, y)| x - p * y).collect();
        let code = self.code_of(&b)?;
        let eps = match (&gamma.eps, &beta.eps) {
            (Some(g), Some(e)) => {
                let pr = Rat::from(p);
                Some(g.iter().zip(e).map(|(x, y)| x - &(&pr * y)).collect())
            }
            _ => None,
        };
        let out = Root { eps, b, positive: !self.is_negative_code(code) };
        Ok(out)
    }

    /// `{β ∈ Φ+ : b_c(β) ≠ 0}` for the distinguished node, sorted by (height, ≺).
    pub fn first_column(&self, order: &SimpleOrder) -> Vec<usize> {
        let c = order.distinguished;
        let mut col: Vec<usize> = (0..self.n_pos()).filter(|&j| self.positive[j].b[c] != 0).collect();
        col.sort_by(|&x, &y| self.canonical_cmp(order, x, y));
        col
    }

    /// Canonical row order: ascending height, ties broken by ≺.
    pub fn canonical_cmp(&self, order: &SimpleOrder, x: usize, y: usize) -> Ordering {
        let (a, b) = (&self.positive[x], &self.positive[y]);
        a.height()
            .cmp(&b.height())
            .then_with(|| lex_compare(order, a, b))
    }
}

/// Comparison order on simple roots together with the column node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleOrder {
    /// 0-based simple indices in comparison order.
    pub sequence: Vec<usize>,
    /// 0-based index of the distinguished simple root.
    pub distinguished: usize,
}

impl SimpleOrder {
    pub fn new(sequence: Vec<usize>, distinguished: usize) -> Result<Self> {
        let n = sequence.len();
        let mut seen = vec![false; n];
        for &i in &sequence {
            if i >= n || seen[i] {
                return Err(Error::InvalidOrder(format!("{sequence:?} is not a permutation")));
            }
            seen[i] = true;
        }
        if distinguished >= n {
            return Err(Error::InvalidOrder(format!(
                "distinguished node {distinguished} outside rank {n}"
            )));
        }
        Ok(SimpleOrder { sequence, distinguished })
    }

    /// `α_1, …, α_n` with column node `α_1`.
    pub fn natural(rank: usize) -> Self {
        SimpleOrder { sequence: (0..rank).collect(), distinguished: 0 }
    }

    /// Names accepted by [`SimpleOrder::named`] for a system, default first.
    pub fn names_for(rs: &RootSystem) -> &'static [&'static str] {
        match rs.tag() {
            TypeTag::E6 => &["natural", "alt"],
            TypeTag::E7 | TypeTag::E8 => &["standard"],
            _ => &["natural"],
        }
    }

    pub fn named(rs: &RootSystem, name: &str) -> Result<Self> {
        let one_based = |seq: &[usize], c: usize| SimpleOrder {
            sequence: seq.iter().map(|x| x - 1).collect(),
            distinguished: c - 1,
        };
        let bad = || Error::InvalidOrder(format!("unknown order {name:?} for {}", rs.name()));
        match (rs.tag(), name) {
            (TypeTag::E6, "natural") => Ok(one_based(&[1, 2, 3, 4, 5, 6], 1)),
            (TypeTag::E6, "alt") => Ok(one_based(&[2, 6, 3, 5, 4, 1], 6)),
            (TypeTag::E7, "standard") => Ok(one_based(&[3, 7, 4, 6, 5, 2, 1], 7)),
            (TypeTag::E8, "standard") => Ok(one_based(&[4, 8, 5, 7, 6, 3, 2, 1], 8)),
            (TypeTag::E6 | TypeTag::E7 | TypeTag::E8, _) => Err(bad()),
            (_, "natural") => Ok(Self::natural(rs.rank())),
            _ => Err(bad()),
        }
    }

    pub fn default_for(rs: &RootSystem) -> Self {
        Self::named(rs, Self::names_for(rs)[0]).expect("default order exists")
    }
}

/// Lexicographic comparison of coefficient vectors read in `order`.
pub fn lex_compare(order: &SimpleOrder, a: &Root, b: &Root) -> Ordering {
    for &i in &order.sequence {
        match a.b[i].cmp(&b.b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(rank: usize) -> RootSystem {
        RootSystem::build_e(rank).unwrap()
    }

    fn closure_b_vectors(rs: &RootSystem) -> Vec<Vec<i32>> {
        let mut v: Vec<Vec<i32>> = RootSystem::build_from_cartan(rs.cartan().to_vec())
            .unwrap()
            .positive_roots()
            .iter()
            .map(|r| r.b.clone())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn e_counts_norms_and_closure() {
        for (rank, count) in [(6, 36), (7, 63), (8, 120)] {
            let rs = e(rank);
            assert_eq!(rs.n_pos(), count);
            for r in rs.positive_roots() {
                let eps = r.eps.as_ref().unwrap();
                assert_eq!(dot(eps, eps), Rat::from_int(2));
                assert_eq!(rs.inner(&r.b, &r.b), 2);
                assert!(r.b.iter().all(|&x| x >= 0));
            }
            let mut ours: Vec<Vec<i32>> = rs.positive_roots().iter().map(|r| r.b.clone()).collect();
            ours.sort();
            assert_eq!(ours, closure_b_vectors(&rs));
        }
    }

    #[test]
    fn simple_roots_match_listing() {
        let rs = e(6);
        let a2 = rs.simple_roots()[1].eps.clone().unwrap();
        assert_eq!(a2, eps_vec(&[(1, 1), (2, 1)]));
        for (i, r) in rs.simple_roots().iter().enumerate() {
            let mut b = vec![0; 6];
            b[i] = 1;
            assert_eq!(r.b, b);
        }
    }

    #[test]
    fn e8_root_from_b_vector() {
        let rs = e(8);
        let idx = rs.index_of(&[2, 3, 4, 6, 5, 4, 3, 1]).unwrap();
        assert_eq!(
            rs.positive_root(idx).eps.clone().unwrap(),
            eps_vec(&[(6, 1), (8, 1)])
        );
    }

    #[test]
    fn cartan_systems() {
        let a2 = RootSystem::build_from_cartan(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let mut bs: Vec<_> = a2.positive_roots().iter().map(|r| r.b.clone()).collect();
        bs.sort();
        assert_eq!(bs, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(RootSystem::type_a(1).unwrap().n_pos(), 1);
        assert_eq!(RootSystem::type_a(3).unwrap().n_pos(), 6);
        for r in RootSystem::type_a(3).unwrap().positive_roots() {
            let e = r.eps.as_ref().unwrap();
            assert_eq!(dot(e, e), Rat::from_int(2));
        }
    }

    #[test]
    fn cartan_rejections() {
        assert!(RootSystem::build_from_cartan(vec![]).is_err());
        assert!(RootSystem::build_from_cartan(vec![vec![2, -2], vec![-2, 2]]).is_err());
        assert!(RootSystem::build_from_cartan(vec![vec![2, -1], vec![0, 2]]).is_err());
        // affine Ã2: cycle of three nodes
        let cyc = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(RootSystem::build_from_cartan(cyc).is_err());
        assert!(RootSystem::build_from_cartan(vec![vec![2, -1, 0]]).is_err());
    }

    #[test]
    fn d4_has_no_eps_but_works() {
        let d4 = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        let rs = RootSystem::build_from_cartan(d4).unwrap();
        assert_eq!(rs.n_pos(), 12);
        assert!(rs.positive_root(0).eps.is_none());
    }

    #[test]
    fn direct_sums() {
        let a1 = Arc::new(RootSystem::type_a(1).unwrap());
        let a2 = Arc::new(RootSystem::type_a(2).unwrap());
        let s = RootSystem::direct_sum(&a1, &a1).unwrap();
        assert_eq!(s.n_pos(), 2);
        assert_eq!(s.cartan(), &[vec![2, 0], vec![0, 2]]);
        let t = RootSystem::direct_sum(&a2, &a1).unwrap();
        assert_eq!(t.n_pos(), 4);
        assert_eq!(t.rank(), 3);
        assert_eq!(t.name(), "A2+A1");
        let parsed = RootSystem::from_name("A2+A1").unwrap();
        assert_eq!(parsed, t);
        for r in t.positive_roots() {
            let e = r.eps.as_ref().unwrap();
            assert_eq!(e.len(), 5);
            assert_eq!(dot(e, e), Rat::from_int(2));
        }
    }

    #[test]
    fn lex_examples() {
        let rs = e(6);
        let o = SimpleOrder::natural(6);
        let a1 = rs.positive_root(rs.index_of(&[1, 0, 0, 0, 0, 0]).unwrap());
        let a13 = rs.positive_root(rs.index_of(&[1, 0, 1, 0, 0, 0]).unwrap());
        assert_eq!(lex_compare(&o, a1, a1), Ordering::Equal);
        assert_eq!(lex_compare(&o, a1, a13), Ordering::Less);
    }

    #[test]
    fn lex_is_total_order_on_e6() {
        let rs = e(6);
        for name in ["natural", "alt"] {
            let o = SimpleOrder::named(&rs, name).unwrap();
            let roots = rs.positive_roots();
            for a in roots {
                for b in roots {
                    let ab = lex_compare(&o, a, b);
                    assert_eq!(ab, lex_compare(&o, b, a).reverse());
                    assert_eq!(ab == Ordering::Equal, a == b);
                    if ab != Ordering::Less {
                        continue;
                    }
                    for c in roots {
                        if lex_compare(&o, b, c) == Ordering::Less {
                            assert_eq!(lex_compare(&o, a, c), Ordering::Less);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lex_antisymmetric_on_a3() {
        let rs = RootSystem::type_a(3).unwrap();
        let o = SimpleOrder::natural(3);
        let all: Vec<Root> = (0..2 * rs.n_pos()).map(|c| rs.root_of_code(c as RootCode)).collect();
        for a in &all {
            for b in &all {
                assert_eq!(
                    lex_compare(&o, a, b) == Ordering::Less,
                    lex_compare(&o, b, a) == Ordering::Greater
                );
            }
        }
    }

    #[test]
    fn first_columns() {
        let e6 = e(6);
        let nat = SimpleOrder::named(&e6, "natural").unwrap();
        let alt = SimpleOrder::named(&e6, "alt").unwrap();
        let c_nat = e6.first_column(&nat);
        let c_alt = e6.first_column(&alt);
        assert_eq!(c_nat.len(), 16);
        assert_eq!(c_alt.len(), 16);
        assert_eq!(c_nat[0], 0);
        assert_eq!(c_alt[0], 5);
        // α_c is the ≺-minimum under the order that defines the column
        for (o, col) in [(&nat, &c_nat), (&alt, &c_alt)] {
            let min = *col
                .iter()
                .min_by(|&&x, &&y| lex_compare(o, e6.positive_root(x), e6.positive_root(y)))
                .unwrap();
            assert_eq!(min, o.distinguished);
        }
        let e7 = e(7);
        let o7 = SimpleOrder::named(&e7, "standard").unwrap();
        let c7 = e7.first_column(&o7);
        assert_eq!(c7.len(), 27);
        assert!(c7.iter().all(|&j| *e7.positive_root(j).b.last().unwrap() == 1));
        let e8 = e(8);
        let c8 = e8.first_column(&SimpleOrder::default_for(&e8));
        assert_eq!(c8.len(), 57);
    }

    #[test]
    fn reflections() {
        let a2 = RootSystem::type_a(2).unwrap();
        let a1 = a2.simple_roots()[0].clone();
        let a2r = a2.simple_roots()[1].clone();
        assert_eq!(a2.reflect(&a1, &a1).unwrap(), a1.negated());
        let r = a2.reflect(&a1, &a2r).unwrap();
        assert_eq!(r.b, vec![1, 1]);
        assert!(r.positive);
        let e6 = e(6);
        let x = e6.simple_roots()[0].clone();
        let y = e6.simple_roots()[1].clone();
        assert_eq!(e6.reflect(&x, &y).unwrap(), y);
    }

    #[test]
    fn reflection_table_matches_reflect() {
        for rs in [e(6), e(7), RootSystem::type_a(3).unwrap()] {
            let n = rs.n_pos();
            for i in 0..rs.rank() {
                let ai = rs.simple_roots()[i].clone();
                for j in 0..n {
                    let img = rs.reflect(&ai, rs.positive_root(j)).unwrap();
                    let code = rs.reflection_table()[i][j];
                    assert_eq!(rs.root_of_code(code), img);
                    assert_eq!(rs.is_negative_code(code), j == i);
                }
            }
        }
    }

    #[test]
    fn unknown_names() {
        assert!(RootSystem::from_name("E5").is_err());
        assert!(RootSystem::from_name("B2").is_err());
        assert!(RootSystem::from_name("").is_err());
        assert!(SimpleOrder::named(&e(7), "natural").is_err());
    }
}
