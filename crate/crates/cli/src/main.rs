mod records;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use kkpoly::analysis::{self, ComputeCaps, KKCache};
use kkpoly::nilhecke::{DEFAULT_BRUTE_FORCE_CAP, DEFAULT_TERM_BUDGET};
use kkpoly::{Error, FactoredPoly, NilHecke, RootRing, RootSystem, SimpleOrder, Word};

use records::{CsvTableRow, KKRecord, PairRecord, TableRow};

const EXIT_PREMISE: u8 = 2;
const EXIT_PROPERTY: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATAERR: u8 = 65;
const EXIT_UNAVAILABLE: u8 = 69;
const EXIT_IO: u8 = 1;

#[derive(Parser)]
#[command(name = "kkpoly", version, about = "Kostant–Kumar polynomials in simply-laced Weyl groups")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "KKPOLY_WORKERS", default_value_t = 0)]
    workers: usize,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Factorization tables s_β = u·v for the first-column roots.
    GenTables {
        #[arg(long = "type")]
        ty: String,
        /// Order name, or `all`.
        #[arg(long, default_value = "all")]
        order: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output directory; one file per (type, order). Stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// c_w and d_w for a reduced word given as 1-based indices.
    Kk {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
        budget: usize,
        /// Print d_w as cofactor times root factors.
        #[arg(long)]
        factored: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// e.g. "1 2 1", "1,2,1" or "121".
        #[arg(default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Good pairs of involutions, optionally compared directly.
    GoodPairs {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Compare d_w directly when both lengths are at most this (0 = never).
        #[arg(long, default_value_t = 0)]
        compute_len: usize,
        #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-validate certificates from a JSON file instead of scanning.
        #[arg(long)]
        recheck: Option<PathBuf>,
    },
    /// Property suite over all elements up to a length.
    Verify {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        order: Option<String>,
        /// Defaults to the whole group for rank ≤ 3, otherwise 4.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        bf_cap: usize,
        #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
        budget: usize,
    },
}

#[derive(Debug)]
enum Fail {
    Usage(String),
    Data(String),
    Budget(String),
    Io(String),
    Domain(u8),
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::Io(e.to_string())
    }
}

impl From<csv::Error> for Fail {
    fn from(e: csv::Error) -> Self {
        Fail::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail::Io(e.to_string())
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownType(_) | Error::InvalidOrder(_) | Error::IndexOutOfRange { .. } => {
                Fail::Usage(e.to_string())
            }
            Error::BudgetExceeded { .. } => Fail::Budget(e.to_string()),
            _ => Fail::Data(e.to_string()),
        }
    }
}

type CmdResult = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.workers > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global().ok();
    }
    let res = match cli.cmd {
        Command::GenTables { ty, order, format, out } => gen_tables(&ty, &order, format, out.as_deref()),
        Command::Kk { ty, budget, factored, format, word } => kk(&ty, budget, factored, format, &word),
        Command::GoodPairs { ty, order, max_len, compute_len, budget, format, out, recheck } => {
            let sys = load(&ty);
            match (sys, recheck) {
                (Err(e), _) => Err(e),
                (Ok(rs), Some(path)) => recheck_file(&rs, order.as_deref(), &path, budget),
                (Ok(rs), None) => good_pairs(&rs, order.as_deref(), max_len, compute_len, budget, format, out.as_deref()),
            }
        }
        Command::Verify { ty, order, max_len, bf_cap, budget } => run_verify(&ty, order.as_deref(), max_len, bf_cap, budget),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (code, msg) = match f {
                Fail::Usage(m) => (EXIT_USAGE, m),
                Fail::Data(m) => (EXIT_DATAERR, m),
                Fail::Budget(m) => (EXIT_UNAVAILABLE, m),
                Fail::Io(m) => (EXIT_IO, m),
                Fail::Domain(c) => return ExitCode::from(c),
            };
            eprintln!("kkpoly: {msg}");
            ExitCode::from(code)
        }
    }
}

fn load(ty: &str) -> Result<Arc<RootSystem>, Fail> {
    Ok(Arc::new(RootSystem::from_name(ty)?))
}

fn order_for(rs: &RootSystem, name: Option<&str>) -> Result<SimpleOrder, Fail> {
    match name {
        None => Ok(SimpleOrder::default_for(rs)),
        Some(n) if n.trim().is_empty() => Err(Fail::Usage("empty order name".into())),
        Some(n) => Ok(SimpleOrder::named(rs, n)?),
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            fs::write(p, bytes)
        }
        None => io::stdout().lock().write_all(bytes),
    }
}

fn json_lines<T: serde::Serialize>(items: &[T]) -> Result<Vec<u8>, Fail> {
    let mut buf = serde_json::to_vec_pretty(items)?;
    buf.push(b'\n');
    Ok(buf)
}

fn csv_bytes<T: serde::Serialize>(items: impl IntoIterator<Item = T>) -> Result<Vec<u8>, Fail> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for it in items {
        w.serialize(it)?;
    }
    w.into_inner().map_err(|e| Fail::Io(e.to_string()))
}

fn extension(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "txt",
    }
}

fn gen_tables(ty: &str, order: &str, format: Format, out: Option<&Path>) -> CmdResult {
    let rs = load(ty)?;
    let names: Vec<String> = match order.trim() {
        "" => return Err(Fail::Usage("empty order name".into())),
        "all" => SimpleOrder::names_for(&rs).iter().map(|s| s.to_string()).collect(),
        n => vec![n.to_string()],
    };
    let orders = names
        .iter()
        .map(|n| Ok((n, order_for(&rs, Some(n))?)))
        .collect::<Result<Vec<_>, Fail>>()?;
    let mut code = 0;
    for (name, order) in orders {
        let rows: Vec<TableRow> = analysis::gen_table(&rs, &order)?.iter().map(TableRow::new).collect();
        if rows.iter().any(|r| !r.premise_ok) {
            code = EXIT_PREMISE;
        }
        let bytes = match format {
            Format::Json => json_lines(&rows)?,
            Format::Csv => csv_bytes(rows.iter().map(CsvTableRow::from))?,
            Format::Text => {
                let mut s = format!("# {} {}\n", rs.name(), name);
                for r in &rows {
                    let u: Vec<String> = r.u_word.iter().map(|i| i.to_string()).collect();
                    s += &format!("{} ({}) {}\n", r.b_digits(), r.eps.join(","), u.join(" "));
                }
                s.into_bytes()
            }
        };
        match out {
            Some(dir) => emit(Some(&dir.join(format!("{}_{}.{}", rs.name(), name, extension(format)))), &bytes)?,
            None => emit(None, &bytes)?,
        }
    }
    Ok(code)
}

fn fmt_factored(ring: &RootRing, d: &FactoredPoly) -> String {
    let one = d.cofactor == kkpoly::MPoly::one(ring.nvars());
    match (one, d.roots.is_empty()) {
        (_, true) => d.cofactor.to_string(),
        (true, false) => ring.fmt_den(&d.roots),
        (false, false) => format!("({}) * {}", d.cofactor, ring.fmt_den(&d.roots)),
    }
}

fn kk(ty: &str, budget: usize, factored: bool, format: Format, word: &str) -> CmdResult {
    let rs = load(ty)?;
    let word = Word::parse(word)?;
    if let Some(&i) = word.0.iter().find(|&&i| i >= rs.rank()) {
        return Err(Fail::Usage(Error::IndexOutOfRange { index: i + 1, rank: rs.rank() }.to_string()));
    }
    let w = rs.eval_reduced_word(&word)?;
    let nh = NilHecke::with_budget(rs.clone(), budget);
    let res = nh.kk_poly(&w)?;
    let ring = nh.ring();
    let d = if factored { fmt_factored(ring, &res.d_w) } else { res.d_w.expand(ring).to_string() };
    let bytes = match format {
        Format::Text => format!("c_w = {}\nd_w = {}\n", ring.fmt_ratfn(&res.c_w), d).into_bytes(),
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(&KKRecord::new(&rs, ring, &word, &res, d))?;
            b.push(b'\n');
            b
        }
        Format::Csv => csv_bytes([KKRecord::new(&rs, ring, &word, &res, d)].iter().map(|r| {
            (r.system.clone(), r.length, r.c_num.clone(), r.c_den.join(" "), r.d.clone(), r.term_count)
        }))?,
    };
    emit(None, &bytes)?;
    Ok(0)
}

fn good_pairs(
    rs: &Arc<RootSystem>,
    order: Option<&str>,
    max_len: usize,
    compute_len: usize,
    budget: usize,
    format: Format,
    out: Option<&Path>,
) -> CmdResult {
    if max_len == 0 {
        return Err(Fail::Usage("--max-len must be positive".into()));
    }
    let order = order_for(rs, order)?;
    let cache = (compute_len > 0).then(|| KKCache::new(NilHecke::with_budget(rs.clone(), budget)));
    let certs = analysis::scan_good_pairs(rs, &order, max_len, cache.as_ref(), ComputeCaps { max_len: compute_len })?;
    let recs: Vec<PairRecord> = certs.iter().map(|c| PairRecord::new(rs, c)).collect();
    let bytes = match format {
        Format::Json => json_lines(&recs)?,
        Format::Csv | Format::Text => {
            let join = |w: &[usize]| w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
            let sep = if format == Format::Csv { "," } else { "\t" };
            let mut s = ["w1", "w2", "beta1", "beta2", "direction", "distinct"].join(sep) + "\n";
            for r in &recs {
                let distinct = r.distinct.map(|b| b.to_string()).unwrap_or_default();
                s += &[join(&r.w1), join(&r.w2), r.beta1.clone(), r.beta2.clone(), r.direction.clone(), distinct].join(sep);
                s.push('\n');
            }
            s.into_bytes()
        }
    };
    emit(out, &bytes)?;
    if certs.iter().any(|c| c.direct_inequality == Some(false)) {
        return Ok(EXIT_PROPERTY);
    }
    Ok(0)
}

fn recheck_file(rs: &Arc<RootSystem>, order: Option<&str>, path: &Path, budget: usize) -> CmdResult {
    let order = order_for(rs, order)?;
    let text = fs::read_to_string(path)?;
    let recs: Vec<PairRecord> = serde_json::from_str(&text).map_err(|e| Fail::Data(e.to_string()))?;
    let cache = KKCache::new(NilHecke::with_budget(rs.clone(), budget));
    let mut bad = 0;
    for (k, r) in recs.iter().enumerate() {
        let cert = r.to_certificate(rs)?;
        let kk = if cert.computed { Some(&cache) } else { None };
        if !analysis::recheck(&cert, rs, &order, kk)? {
            bad += 1;
            eprintln!("certificate {k} fails: {}", serde_json::to_string(r)?);
        }
    }
    println!("{} certificates, {} valid", recs.len(), recs.len() - bad);
    Ok(if bad == 0 { 0 } else { EXIT_PROPERTY })
}

fn run_verify(ty: &str, order: Option<&str>, max_len: Option<usize>, bf_cap: usize, budget: usize) -> CmdResult {
    let rs = load(ty)?;
    let order = order_for(&rs, order)?;
    let max_len = max_len.unwrap_or(if rs.rank() <= 3 { rs.n_pos() } else { 4 });
    if max_len == 0 || bf_cap == 0 {
        return Err(Fail::Usage("caps must be positive".into()));
    }
    let suite = verify::Suite::new(&rs, order, max_len, bf_cap, budget);
    println!("{}: {} elements of length <= {}", rs.name(), suite.elements(), max_len);
    let results = suite.run();
    let mut first = None;
    for r in &results {
        let status = if r.passed == r.total { "PASS" } else { "FAIL" };
        println!("{status} {:<20} {}/{}", r.name, r.passed, r.total);
        if first.is_none() {
            first = r.failure.clone();
        }
    }
    match first {
        None => Ok(0),
        Some(inst) => {
            println!("{}", serde_json::to_string(&inst)?);
            Err(Fail::Domain(EXIT_PROPERTY))
        }
    }
}
