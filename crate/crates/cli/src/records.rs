//! Serialized forms of tables, Kostant–Kumar results and certificates.

use kkpoly::analysis::{DivEvidence, Direction, FactorRow, GoodPairCertificate};
use kkpoly::{Error, KKResult, Rat, RootRing, RootSystem, Word};
use serde::{Deserialize, Serialize};

#[derive(Serialize)]
pub struct TableRow {
    pub eps: Vec<String>,
    pub b: Vec<i32>,
    pub u_word: Vec<usize>,
    pub u_len: usize,
    pub premise_ok: bool,
}

impl TableRow {
    pub fn new(row: &FactorRow) -> TableRow {
        let eps = match &row.root.eps {
            Some(e) => e.iter().map(Rat::to_pq_string).collect(),
            None => Vec::new(),
        };
        TableRow {
            eps,
            b: row.root.b.clone(),
            u_word: row.u_word.one_based(),
            u_len: row.u.length(),
            premise_ok: row.premise_ok,
        }
    }

    pub fn b_digits(&self) -> String {
        self.b.iter().map(|d| d.to_string()).collect()
    }
}

#[derive(Serialize)]
pub struct CsvTableRow {
    pub eps: String,
    pub b: String,
    pub u_word: String,
    pub u_len: usize,
    pub premise_ok: bool,
}

impl From<&TableRow> for CsvTableRow {
    fn from(r: &TableRow) -> Self {
        CsvTableRow {
            eps: r.eps.join(" "),
            b: r.b_digits(),
            u_word: r.u_word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
            u_len: r.u_len,
            premise_ok: r.premise_ok,
        }
    }
}

#[derive(Serialize)]
pub struct KKRecord {
    pub system: String,
    pub word: Vec<usize>,
    pub length: usize,
    pub c_num: String,
    /// Denominator roots as simple-root coefficient strings.
    pub c_den: Vec<String>,
    pub d: String,
    pub term_count: usize,
}

impl KKRecord {
    pub fn new(rs: &RootSystem, ring: &RootRing, word: &Word, kk: &KKResult, d: String) -> KKRecord {
        KKRecord {
            system: rs.name().to_string(),
            word: word.one_based(),
            length: kk.w.length(),
            c_num: kk.c_w.num.to_string(),
            c_den: kk.c_w.den.iter().map(|&r| ring.system().positive_root(r as usize).b_string()).collect(),
            d,
            term_count: kk.term_count,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct EvidenceRecord {
    pub root: String,
    pub divides: String,
    pub not_divides: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
    pub beta1: String,
    pub beta2: String,
    pub direction: String,
    pub evidence: Vec<EvidenceRecord>,
    pub computed: bool,
    pub distinct: Option<bool>,
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::First => "first",
        Direction::Second => "second",
        Direction::Both => "both",
    }
}

fn parse_direction(s: &str) -> Option<Direction> {
    match s {
        "first" => Some(Direction::First),
        "second" => Some(Direction::Second),
        "both" => Some(Direction::Both),
        _ => None,
    }
}

fn which(k: u8) -> String {
    format!("w{k}")
}

fn parse_which(s: &str) -> Option<u8> {
    match s {
        "w1" => Some(1),
        "w2" => Some(2),
        _ => None,
    }
}

fn parse_root(rs: &RootSystem, s: &str) -> Result<usize, Error> {
    let b: Vec<i32> = s
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as i32))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Invalid(format!("bad root {s:?}")))?;
    rs.index_of(&b).ok_or(Error::NotARoot(b))
}

impl PairRecord {
    pub fn new(rs: &RootSystem, c: &GoodPairCertificate) -> PairRecord {
        let root = |r: usize| rs.positive_root(r).b_string();
        PairRecord {
            w1: rs.reduced_word(&c.w1).one_based(),
            w2: rs.reduced_word(&c.w2).one_based(),
            beta1: root(c.beta1),
            beta2: root(c.beta2),
            direction: direction_name(c.direction).to_string(),
            evidence: c
                .evidence
                .iter()
                .map(|e| EvidenceRecord {
                    root: root(e.root),
                    divides: which(e.divides),
                    not_divides: which(e.not_divides),
                })
                .collect(),
            computed: c.computed,
            distinct: c.direct_inequality,
        }
    }

    pub fn to_certificate(&self, rs: &RootSystem) -> Result<GoodPairCertificate, Error> {
        let elt = |w: &[usize]| rs.eval_reduced_word(&Word::from_one_based(w)?);
        let bad = |what: &str| Error::Invalid(format!("bad {what} in certificate"));
        let evidence = self
            .evidence
            .iter()
            .map(|e| {
                Ok(DivEvidence {
                    root: parse_root(rs, &e.root)?,
                    divides: parse_which(&e.divides).ok_or_else(|| bad("evidence"))?,
                    not_divides: parse_which(&e.not_divides).ok_or_else(|| bad("evidence"))?,
                })
            })
            .collect::<Result<_, Error>>()?;
        Ok(GoodPairCertificate {
            w1: elt(&self.w1)?,
            w2: elt(&self.w2)?,
            beta1: parse_root(rs, &self.beta1)?,
            beta2: parse_root(rs, &self.beta2)?,
            direction: parse_direction(&self.direction).ok_or_else(|| bad("direction"))?,
            evidence,
            direct_inequality: self.distinct,
            computed: self.computed,
        })
    }
}
