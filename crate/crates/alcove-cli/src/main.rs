//! Command line front end: element inspection, Kazhdan-Lusztig queries,
//! interval enumeration, verification sweeps, the thin-wall conjecture
//! checker, and SVG rendering of the alcove picture.
//!
//! Exit codes: 0 on success, 1 when a verification finds a mismatch (or
//! on an I/O failure), 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use alcove::closedforms::{check_thin_conjecture, kl_closed, Source};
use alcove::coxeter::{from_word, lower_interval_levels, Side};
use alcove::families::{classify, interval_size};
use alcove::tessellate::{ColorMode, Scene};
use alcove::verify::{
    verify_big, verify_coatoms, verify_intervals, verify_mult_lemmas, verify_thick, verify_thin,
    IdentityRecord,
};
use alcove::{Element, KlTable, Word};

#[derive(Parser)]
#[command(name = "alcove", version, about = "Exact Kazhdan-Lusztig combinatorics for affine B2")]
struct Cli {
    /// Accept words in dotted form, e.g. 1.2.1.2
    #[arg(long, global = true)]
    sep: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect one element: length, descents, family, alcove
    Element { word: String },
    /// One coefficient of the KL basis element of w
    Kl { x: String, w: String },
    /// The full KL basis element of w
    Basis { w: String },
    /// Coefficient of v of h_{x,w}
    Mu { x: String, w: String },
    /// The lower Bruhat interval of w
    Interval {
        w: String,
        /// List every element, one per line by length
        #[arg(long)]
        list: bool,
    },
    /// Run a verification suite against the recursive oracle
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Length bound for the sweep (default depends on the suite)
        #[arg(long)]
        max_len: Option<i64>,
        /// Also write the full report as a JSON array
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Check the conjectured thin-wall decompositions for k = 1..max_k
    Conjecture {
        #[arg(long, default_value_t = 3)]
        max_k: i64,
    },
    /// Render the ball of a given radius as an SVG alcove picture
    Tessellate {
        #[arg(long)]
        radius: u32,
        /// "region" or "interval:<word>"
        #[arg(long = "color-by", default_value = "region", value_name = "MODE")]
        color_by: String,
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum Suite {
    Big,
    Thick,
    Thin,
    Intervals,
    Coatoms,
    MultLemmas,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    // die quietly when a pipe closes instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Element { word } => cmd_element(&parse_word(&word, cli.sep)?),
        Cmd::Kl { x, w } => cmd_kl(&parse_word(&x, cli.sep)?, &parse_word(&w, cli.sep)?),
        Cmd::Basis { w } => cmd_basis(&parse_word(&w, cli.sep)?),
        Cmd::Mu { x, w } => cmd_mu(&parse_word(&x, cli.sep)?, &parse_word(&w, cli.sep)?),
        Cmd::Interval { w, list } => cmd_interval(&parse_word(&w, cli.sep)?, list),
        Cmd::Verify { suite, max_len, json } => cmd_verify(suite, max_len, json.as_deref()),
        Cmd::Conjecture { max_k } => cmd_conjecture(max_k),
        Cmd::Tessellate { radius, color_by, out } => {
            let mode = parse_mode(&color_by, cli.sep)?;
            cmd_tessellate(radius, mode, &out)
        }
    }
}

fn parse_word(text: &str, sep: bool) -> Result<Word, Failure> {
    if !sep && text.contains('.') {
        return Err(usage(format!(
            "word {text:?} contains separators; pass --sep to accept dotted words"
        )));
    }
    Word::parse(text).map_err(|e| usage(e.to_string()))
}

fn word_str(w: &Word) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.to_string_sep(None)
    }
}

fn descent_str(w: &Element, side: Side) -> String {
    let ds = w.descents(side);
    if ds.is_empty() {
        "-".to_string()
    } else {
        ds.iter().map(|g| g.to_char()).collect()
    }
}

fn cmd_element(word: &Word) -> Result<u8, Failure> {
    let w = from_word(word);
    let tag = classify(&w);
    println!("word       {}", word_str(word));
    println!("canonical  {}", word_str(&w.canonical_word()));
    println!("length     {}", w.length());
    println!(
        "descents   left {}  right {}",
        descent_str(&w, Side::Left),
        descent_str(&w, Side::Right)
    );
    println!("family     {tag}  ({})", tag.region());
    let [a, b, c] = w.alcove_vertices();
    println!(
        "alcove     ({},{}) ({},{}) ({},{})",
        a[0], a[1], b[0], b[1], c[0], c[1]
    );
    Ok(0)
}

fn source_str(source: Source) -> &'static str {
    match source {
        Source::Closed => "closed",
        Source::Fallback => "recursion",
    }
}

fn cmd_kl(x: &Word, w: &Word) -> Result<u8, Failure> {
    let xe = from_word(x);
    let we = from_word(w);
    let mut table = KlTable::new();
    let (basis, source) = kl_closed(&we, &mut table);
    let h = basis.g_coeff(&xe);
    println!("{h}");
    let report = serde_json::json!({
        "x": word_str(&xe.canonical_word()),
        "w": word_str(&we.canonical_word()),
        "h": h,
        "source": source_str(source),
    });
    println!("{report}");
    Ok(0)
}

fn cmd_basis(w: &Word) -> Result<u8, Failure> {
    let we = from_word(w);
    let mut table = KlTable::new();
    let (basis, source) = kl_closed(&we, &mut table);
    let mut terms: Vec<_> = basis.terms().collect();
    terms.sort_by_key(|(x, _)| x.sort_key());
    println!(
        "basis      {}  ({} terms, {})",
        word_str(&we.canonical_word()),
        terms.len(),
        source_str(source)
    );
    let width = terms
        .iter()
        .map(|(x, _)| word_str(&x.canonical_word()).len())
        .max()
        .unwrap_or(1);
    for (x, h) in terms {
        println!("{:width$}  {h}", word_str(&x.canonical_word()));
    }
    Ok(0)
}

fn cmd_mu(x: &Word, w: &Word) -> Result<u8, Failure> {
    let mut table = KlTable::new();
    println!("{}", table.mu(&from_word(x), &from_word(w)));
    Ok(0)
}

fn cmd_interval(w: &Word, list: bool) -> Result<u8, Failure> {
    let we = from_word(w);
    let levels = lower_interval_levels(&we);
    let total: usize = levels.iter().map(Vec::len).sum();
    let tag = classify(&we);
    match interval_size(&tag) {
        Ok(formula) => println!(
            "interval   {}  {total} elements (formula for {tag}: {formula})",
            word_str(&we.canonical_word())
        ),
        Err(_) => println!("interval   {}  {total} elements", word_str(&we.canonical_word())),
    }
    if list {
        for level in &levels {
            let mut row = level.clone();
            row.sort_by_key(Element::sort_key);
            for x in row {
                println!("{}", word_str(&x.canonical_word()));
            }
        }
    }
    Ok(0)
}

fn print_records(records: &[IdentityRecord]) {
    for r in records {
        let status = if r.passed() { "ok  " } else { "FAIL" };
        println!("{status}  {}  {}", r.identity, r.params);
        if !r.passed() {
            if let Ok(diff) = serde_json::to_string(&r.first_diff) {
                println!("      first diff: {diff}");
            }
        }
    }
}

fn write_json(records: &[IdentityRecord], path: &std::path::Path) -> Result<(), Failure> {
    let body = serde_json::to_string_pretty(records)
        .map_err(|e| Failure::Runtime(format!("serializing report: {e}")))?;
    fs::write(path, body + "\n")
        .map_err(|e| Failure::Runtime(format!("writing {}: {e}", path.display())))
}

fn cmd_verify(
    suite: Suite,
    max_len: Option<i64>,
    json: Option<&std::path::Path>,
) -> Result<u8, Failure> {
    let (name, default_len) = match suite {
        Suite::Big => ("big", 20),
        Suite::Thick => ("thick", 24),
        Suite::Thin => ("thin", 12),
        Suite::Intervals => ("intervals", 24),
        Suite::Coatoms => ("coatoms", 24),
        Suite::MultLemmas => ("mult-lemmas", 22),
    };
    let max_len = max_len.unwrap_or(default_len);
    if max_len < 1 {
        return Err(usage("--max-len must be at least 1"));
    }
    let mut table = KlTable::new();
    let records = match suite {
        Suite::Big => verify_big(max_len, &mut table),
        Suite::Thick => verify_thick(max_len, &mut table),
        Suite::Thin => verify_thin(max_len, &mut table),
        Suite::Intervals => verify_intervals(max_len),
        Suite::Coatoms => verify_coatoms(max_len),
        Suite::MultLemmas => verify_mult_lemmas(max_len),
    };
    print_records(&records);
    let failures = records.iter().filter(|r| !r.passed()).count();
    println!(
        "suite {name}: {} checks, {failures} failures (max len {max_len})",
        records.len()
    );
    if let Some(path) = json {
        write_json(&records, path)?;
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn cmd_conjecture(max_k: i64) -> Result<u8, Failure> {
    if max_k < 1 {
        return Err(usage("--max-k must be at least 1"));
    }
    let mut table = KlTable::new();
    let mut failures = 0;
    for k in 1..=max_k {
        let records = check_thin_conjecture(k, &mut table);
        print_records(&records);
        let bad = records.iter().filter(|r| !r.passed()).count();
        failures += bad;
        println!("k = {k}: {}/{} identities hold", records.len() - bad, records.len());
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn parse_mode(text: &str, sep: bool) -> Result<ColorMode, Failure> {
    if text == "region" {
        return Ok(ColorMode::Region);
    }
    if let Some(rest) = text.strip_prefix("interval:") {
        return Ok(ColorMode::Interval(from_word(&parse_word(rest, sep)?)));
    }
    Err(usage(format!(
        "unknown --color-by mode {text:?}; expected \"region\" or \"interval:<word>\""
    )))
}

fn cmd_tessellate(radius: u32, mode: ColorMode, out: &std::path::Path) -> Result<u8, Failure> {
    let scene = Scene::build(radius, mode);
    let n = scene.triangles.len();
    fs::write(out, scene.svg())
        .map_err(|e| Failure::Runtime(format!("writing {}: {e}", out.display())))?;
    println!("wrote {} ({n} alcoves, radius {radius})", out.display());
    Ok(0)
}
