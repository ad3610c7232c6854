//! Command implementations. Every function returns the full output text so
//! that output is deterministic and easy to compare against golden files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use assf_core::assf::AssfContext;
use assf_core::cartan::Family;
use assf_core::nilcox::NilCoxContext;
use assf_core::partition::format_partition;
use assf_core::pieri::factor_table;
use assf_core::symfun::{SymFunc, SymFuncJson};
use assf_core::weyl::{format_word, WeylElement};
use assf_core::{Error, Rational, Result};
use num_traits::{One, Signed};
use serde::Serialize;

use crate::suites::SuiteReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Tsv,
}

/// Environment variable naming the cache directory when `--cache-dir` is absent.
pub const CACHE_ENV: &str = "AFFINE_STANLEY_CACHE";

#[derive(Debug, Clone)]
pub struct AssfRequest {
    pub family: Family,
    pub n: usize,
    /// `None` means every Grassmannian element up to `max_degree`.
    pub word: Option<String>,
    pub dual: bool,
    pub schur_p: bool,
    pub max_degree: usize,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
struct AssfRecord {
    w: String,
    family: String,
    n: usize,
    #[serde(flatten)]
    assf: SymFuncJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual: Option<SymFuncJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    schur_p: Option<SymFuncJson>,
}

struct Row {
    w: WeylElement,
    assf: SymFunc,
    dual: Option<SymFunc>,
    schur_p: Option<std::result::Result<SymFunc, String>>,
}

fn grassmannian_cached(cx: &AssfContext, max: usize, dir: Option<&Path>) -> Result<()> {
    let Some(dir) = dir else { return Ok(()) };
    let group = cx.nilcox().group();
    let path = dir.join(format!("grassmannian-{}{}.txt", cx.family(), cx.rank()));
    if group.load_grassmannian_cache(&path, max)?.is_none() {
        std::fs::create_dir_all(dir).map_err(|e| Error::Unsupported(format!("cache dir: {e}")))?;
        group
            .save_grassmannian_cache(&path, max)
            .map_err(|e| Error::Unsupported(format!("cache write: {e}")))?;
    }
    Ok(())
}

pub fn cmd_assf(req: &AssfRequest) -> Result<String> {
    let cx = AssfContext::new(req.family, req.n)?;
    let elements: Vec<WeylElement> = match &req.word {
        Some(word) => {
            let w = cx.parse(word)?;
            if req.dual && !w.is_grassmannian() {
                return Err(Error::NotGrassmannian(w.to_string()));
            }
            vec![w]
        }
        None => {
            grassmannian_cached(&cx, req.max_degree, req.cache_dir.as_deref())?;
            (1..=req.max_degree).flat_map(|d| cx.grassmannian(d)).collect()
        }
    };
    let mut rows = Vec::new();
    for w in elements {
        let assf = cx.assf(&w)?.value;
        let dual = if req.dual { Some(cx.kschur_dual(&w)?.schur_q) } else { None };
        let schur_p = req.schur_p.then(|| cx.engine().expand_schur_p(&assf).map_err(|e| e.to_string()));
        rows.push(Row { w, assf, dual, schur_p });
    }
    let single = req.word.is_some();
    Ok(match req.format {
        Format::Table => {
            let mut out = String::new();
            if !single {
                let mut head = vec!["w", "F"];
                if req.dual {
                    head.push("kS");
                }
                if req.schur_p {
                    head.push("P");
                }
                writeln!(out, "{}", head.join(" | ")).ok();
            }
            for r in &rows {
                let mut cols = Vec::new();
                if !single {
                    cols.push(format_word(r.w.canonical_word()));
                }
                cols.push(r.assf.to_string());
                if let Some(d) = &r.dual {
                    cols.push(d.to_string());
                }
                if let Some(p) = &r.schur_p {
                    cols.push(p.as_ref().map(|f| f.to_string()).unwrap_or_else(|_| "not in the span of P".into()));
                }
                writeln!(out, "{}", cols.join(" | ")).ok();
            }
            out
        }
        Format::Json => {
            let recs: Vec<AssfRecord> = rows
                .iter()
                .map(|r| AssfRecord {
                    w: format_word(r.w.canonical_word()),
                    family: req.family.to_string(),
                    n: req.n,
                    assf: r.assf.to_json(),
                    dual: r.dual.as_ref().map(|d| d.to_json()),
                    schur_p: r.schur_p.as_ref().and_then(|p| p.as_ref().ok()).map(|f| f.to_json()),
                })
                .collect();
            serde_json::to_string_pretty(&recs).expect("serializable") + "\n"
        }
        Format::Tsv => {
            let mut out = String::from("w\tcolumn\tpartition\tcoefficient\n");
            for r in &rows {
                let w = format_word(r.w.canonical_word());
                let mut cols = vec![("F", &r.assf)];
                if let Some(d) = &r.dual {
                    cols.push(("kS", d));
                }
                if let Some(Ok(p)) = &r.schur_p {
                    cols.push(("P", p));
                }
                for (name, f) in cols {
                    for (l, c) in f.terms() {
                        writeln!(out, "{w}\t{name}\t{}\t{c}", format_partition(l)).ok();
                    }
                }
            }
            out
        }
    })
}

/// Which of the two Pieri variants to use in type D at `i = n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoVariant {
    First,
    Second,
}

fn format_xi(terms: &[(WeylElement, Rational)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (w, c)) in terms.iter().enumerate() {
        let a = c.abs();
        match (k, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !a.is_one() {
            write!(out, "{a} * ").ok();
        }
        write!(out, "xi[{}]", format_word(w.canonical_word())).ok();
    }
    out
}

/// `xi_{rho_i} xi_w` in the Schubert basis.
pub fn cmd_pieri(family: Family, n: usize, i: usize, word: &str, variant: Option<RhoVariant>, format: Format) -> Result<String> {
    let ctx = NilCoxContext::new(family, n)?;
    let w = ctx.group().parse_reduced(word)?;
    if !w.is_grassmannian() {
        return Err(Error::NotGrassmannian(w.to_string()));
    }
    let top = ctx.max_pieri_index();
    if i == 0 || i > top {
        return Err(Error::OutOfRange { index: i, lo: 1, hi: top });
    }
    let p = match variant {
        None => ctx.pieri_element(i)?,
        Some(v) => {
            if family != Family::D || i + 1 != n {
                return Err(Error::Unsupported("--rho1/--rho2 apply to type D at i = n-1".into()));
            }
            let (a, b) = ctx.rho_pair()?;
            if v == RhoVariant::First {
                a
            } else {
                b
            }
        }
    };
    let prod = ctx.homology_product_with(&p, &w)?;
    let terms: Vec<(WeylElement, Rational)> = prod.into_iter().collect();
    Ok(match format {
        Format::Table => format_xi(&terms) + "\n",
        Format::Json => {
            #[derive(Serialize)]
            struct T {
                w: String,
                coefficient: String,
            }
            let v: Vec<T> =
                terms.iter().map(|(w, c)| T { w: format_word(w.canonical_word()), coefficient: c.to_string() }).collect();
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Tsv => terms.iter().map(|(w, c)| format!("{c}\t{}\n", format_word(w.canonical_word()))).collect(),
    })
}

/// Pieri factors with their statistics.
pub fn cmd_factors(family: Family, n: usize, format: Format) -> Result<String> {
    let ctx = NilCoxContext::new(family, n)?;
    let table = factor_table(ctx.factors());
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct T {
                length: usize,
                word: String,
                cc: usize,
                c: usize,
            }
            let v: Vec<T> = table.into_iter().map(|(length, w, cc, c)| T { length, word: format_word(&w), cc, c }).collect();
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        _ => {
            let mut out = String::from("length\tword\tcc\tc\n");
            for (l, w, cc, c) in table {
                writeln!(out, "{l}\t{}\t{cc}\t{c}", format_word(&w)).ok();
            }
            out
        }
    })
}

/// The sign element of type D, one `coefficient word` pair per line.
pub fn cmd_epsilon(n: usize) -> Result<String> {
    let ctx = NilCoxContext::new(Family::D, n)?;
    Ok(ctx.epsilon()?.to_tsv())
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutput {
    pub passed: bool,
    pub reports: Vec<SuiteReport>,
}

pub fn render_reports(reports: Vec<SuiteReport>, format: Format) -> (bool, String) {
    let passed = reports.iter().all(|r| r.passed);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&VerifyOutput { passed, reports }).expect("serializable") + "\n",
        Format::Table | Format::Tsv => {
            let mut out = String::new();
            for r in &reports {
                writeln!(out, "{} {}{}: {}", r.suite, r.family, r.n, if r.passed { "PASS" } else { "FAIL" }).ok();
                for c in &r.checks {
                    let mut line = format!("  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
                    if let Some(w) = &c.witness {
                        write!(line, "; witness {w}").ok();
                    }
                    if let Some(d) = &c.detail {
                        write!(line, "; {d}").ok();
                    }
                    writeln!(out, "{line}").ok();
                }
            }
            out
        }
    };
    (passed, text)
}

/// Exit code for a library error: internal inconsistencies are check failures,
/// everything else is a usage error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => 1,
        _ => 2,
    }
}
